"""
Essential Connectivity Graph Γ_r

顶点是沿本质曲线切开的区域（A = V 内，B = V 外），边是本质曲线。
每条本质曲线都把球面分成两块，所以 Γ_r 是树；trunk(r) 是端点数。
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import networkx as nx

from core.errors import NotATree, NoWitness
from plugins.levelgraph.sphere import LevelSphere, Side

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ConnectivityGraph:
    graph: nx.Graph

    def side(self, v: str) -> Side:
        return self.graph.nodes[v]["side"]

    def endpoints(self) -> Tuple[str, ...]:
        if self.graph.number_of_nodes() == 1:
            return ()
        return tuple(v for v, d in self.graph.degree() if d == 1)

    def endpoints_in_a(self) -> bool:
        """每个端点都在 V 内"""
        return all(self.side(v) is Side.A for v in self.endpoints())

    def is_bipartite(self) -> bool:
        """每条边连接 A 与 B"""
        return all(self.side(u) is not self.side(v) for u, v in self.graph.edges())

    def to_dot(self, name: str = "level") -> str:
        lines = [f"graph {name} {{"]
        for v, data in self.graph.nodes(data=True):
            lines.append(f'  "{v}" [label="{data["side"].value} {data["k_points"]}"];')
        for u, v, data in self.graph.edges(data=True):
            lines.append(f'  "{u}" -- "{v}" [label="{data["curve"]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_graph(s: LevelSphere) -> ConnectivityGraph:
    """
    Raises:
        NotATree: 曲线嵌套数据不一致
    """
    g = nx.Graph()
    for region in s.regions():
        g.add_node(region.name, side=region.side, k_points=region.k_points, signed=region.signed)

    essential = s.essential_curves()
    for c in essential:
        g.add_edge(c.name, s.region_of(c.parent), curve=c.name)

    if g.number_of_edges() != len(essential) or not nx.is_tree(g):
        raise NotATree(
            f"{g.number_of_nodes()} regions and {len(essential)} essential curves do not form a tree"
        )
    return ConnectivityGraph(g)


def trunk_r(g: ConnectivityGraph) -> int:
    """端点（度为 1 的顶点）数；只有一个顶点时为 0"""
    return len(g.endpoints())


def lemma5_bound(m: int, n: int) -> int:
    """trunk(r) = m、绕数 n 时层上 K 的点数下界"""
    return n * m if m % 2 == 0 else n * (m + 1)


def audit_level(s: LevelSphere, n: int) -> bool:
    """端点区域至少含 n 个 K 的点，且总点数不低于 lemma5_bound"""
    g = build_graph(s)
    for v in g.endpoints():
        k = g.graph.nodes[v]["k_points"]
        if k < n:
            logger.debug(f"Endpoint region {v} carries {k} < {n} points")
            return False
    return s.total_points >= lemma5_bound(trunk_r(g), n)


def nontrivial_levels(levels: Sequence[LevelSphere]) -> Tuple[int, ...]:
    """Γ_r 至少有一条边的层"""
    return tuple(i for i, s in enumerate(levels) if s.essential_curves())


def corollary1_witness(levels: Sequence[LevelSphere]) -> int:
    """
    返回 trunk(r) 最大（且 ≥ 3）的第一个层下标。

    Raises:
        NoWitness: 所有层的 trunk(r) ≤ 2
    """
    trunks = [trunk_r(build_graph(s)) for s in levels]
    best = max(trunks, default=0)
    if best < 3:
        raise NoWitness(f"every level has trunk(r) <= {best}; the companion tube looks unknotted")
    return trunks.index(best)
