"""
Reports - CLI 与 HTTP 共用的报告模型

同一输入总是得到逐字节相同的 JSON（model_dump + json.dumps）。
"""

import json
import logging
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel

from core.errors import InvariantMismatch, NoWitness
from plugins.bounds.audit import BoundReport, audit, render_table
from plugins.foliation.induced import induced_foliation
from plugins.levelgraph.graph import (
    audit_level,
    build_graph,
    corollary1_witness,
    lemma5_bound,
    trunk_r,
)
from plugins.levelgraph.sphere import LevelSphere, sweep_levels
from plugins.morse.presentation import (
    MorsePresentation,
    bridge_count,
    thick_thin,
    trunk_of,
    width,
)
from plugins.satellite.braid import BraidWord, load_braid, parse_braid
from plugins.satellite.cable import SatelliteSpec, cable, canonical_invariants

logger = logging.getLogger(__name__)


class InvariantsReport(BaseModel):
    events: int
    width: int
    bridge: int
    trunk: int
    level_counts: List[int]
    thick: List[int]
    thin: List[int]
    bounds: BoundReport


class SatelliteReport(BaseModel):
    winding: int
    framing_twists: int
    insertion_site: int
    events: int
    width: int
    bridge: int
    trunk: int
    bounds: BoundReport


class LevelRow(BaseModel):
    level: int
    points: int
    essential_curves: int
    regions: int
    trunk: int
    bound: int
    passed: bool


class SweepReport(BaseModel):
    winding: int
    levels: List[LevelRow]
    witness: Optional[int] = None
    witness_trunk: Optional[int] = None


def to_json(report: BaseModel) -> str:
    return json.dumps(report.model_dump(mode="json"), indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def resolve_braid(ref: str) -> BraidWord:
    """.braid 文件路径或内联形式（`index 2; s+ 1`）"""
    path = Path(ref)
    if not ref.lstrip().startswith("index") and path.exists():
        return load_braid(path)
    return parse_braid(ref)


def invariants_report(p: MorsePresentation) -> InvariantsReport:
    tt = thick_thin(p)
    return InvariantsReport(
        events=len(p),
        width=width(p),
        bridge=bridge_count(p),
        trunk=trunk_of(p),
        level_counts=list(p.level_counts),
        thick=list(tt.thick),
        thin=list(tt.thin),
        bounds=audit(p),
    )


def satellite_report(spec: SatelliteSpec) -> Tuple[MorsePresentation, SatelliteReport]:
    word = cable(spec)
    invariants = canonical_invariants(spec)
    report = SatelliteReport(
        winding=spec.winding,
        framing_twists=spec.framing_twists,
        insertion_site=spec.insertion_site,
        events=len(word),
        width=invariants.width,
        bridge=invariants.bridge,
        trunk=invariants.trunk,
        bounds=audit(word, spec),
    )
    return word, report


def sweep(spec: SatelliteSpec) -> Tuple[LevelSphere, ...]:
    return sweep_levels(induced_foliation(spec), spec)


def sweep_report(spec: SatelliteSpec, levels: Optional[Tuple[LevelSphere, ...]] = None) -> SweepReport:
    """
    逐层检查 Γ_r 的树结构、二部性、端点在 A 中以及 lemma5 下界。

    Raises:
        InvariantMismatch: 某一层的 Γ_r 不满足结构性质
    """
    n = spec.winding
    if levels is None:
        levels = sweep(spec)

    rows = []
    for i, s in enumerate(levels):
        g = build_graph(s)
        if not g.is_bipartite() or not g.endpoints_in_a():
            raise InvariantMismatch(f"level {i}: connectivity graph violates the A/B structure")
        m = trunk_r(g)
        rows.append(LevelRow(
            level=i,
            points=s.total_points,
            essential_curves=len(s.essential_curves()),
            regions=g.graph.number_of_nodes(),
            trunk=m,
            bound=lemma5_bound(m, n),
            passed=audit_level(s, n),
        ))

    report = SweepReport(winding=n, levels=rows)
    try:
        witness = corollary1_witness(levels)
        report.witness = witness
        report.witness_trunk = rows[witness].trunk
    except NoWitness as e:
        logger.warning(f"No level with trunk(r) >= 3: {e}")
    return report


def render_sweep(report: SweepReport) -> str:
    lines = [f"{'level':>5}{'|K∩S|':>8}{'trunk':>7}{'bound':>7}  status"]
    for row in report.levels:
        lines.append(f"{row.level:>5}{row.points:>8}{row.trunk:>7}{row.bound:>7}  {'pass' if row.passed else 'FAIL'}")
    lines.append("")
    if report.witness is not None:
        lines.append(f"witness level {report.witness}: trunk(r) = {report.witness_trunk}")
    else:
        lines.append("witness: none")
    return "\n".join(lines) + "\n"


def render_invariants(report: InvariantsReport) -> str:
    lines = [
        f"events  {report.events}",
        f"levels  {' '.join(str(c) for c in report.level_counts)}",
        f"thick   {' '.join(str(a) for a in report.thick)}",
        f"thin    {' '.join(str(b) for b in report.thin) or '-'}",
    ]
    return "\n".join(lines) + "\n" + render_table(report.bounds)
