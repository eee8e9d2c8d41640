"""
Level Spheres - 正则层球面 h⁻¹(r) 上的曲线与区域

h⁻¹(r) ∩ T 是球面上的一组简单闭曲线。每条曲线记录：
本质性、外侧曲线（parent，None 表示最外层区域）、内侧小块的边（A = V 内，B = V 外）、
内侧小块中 K 的点数与带号和，以及非本质曲线对应的极值类型。

区域只沿本质曲线切开；非本质曲线两侧的小块合并到外侧区域里。

层球面文本格式（夹具用）：

    root <A|B> <k_points> <signed>
    curve <name> <e|i> <parent|root> <A|B> <k_points> <signed> [min|max]
"""

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from core.errors import InvariantMismatch, NotATree, ParseError
from plugins.foliation.word import FoliationWord, LevelState, TorusEventKind
from plugins.morse.codec import strip_comment
from plugins.morse.presentation import EventKind, orientations, trunk_of
from plugins.satellite.cable import SatelliteSpec, cable

logger = logging.getLogger(__name__)

ROOT = "root"


class Side(Enum):
    A = "A"     # InV
    B = "B"     # OutV

    @property
    def opposite(self) -> "Side":
        return Side.B if self is Side.A else Side.A


@dataclass(frozen=True)
class LevelCurve:
    name: str
    essential: bool
    parent: Optional[str]
    side: Side
    k_points: int
    signed: int
    extremum: Optional[str] = None


@dataclass(frozen=True)
class Region:
    """沿本质曲线切开后的一个连通区域（以围出它的本质曲线命名，最外层为 root）"""
    name: str
    side: Side
    k_points: int
    signed: int


@dataclass(frozen=True)
class LevelSphere:
    curves: Tuple[LevelCurve, ...] = ()
    root_side: Side = Side.B
    root_k_points: int = 0
    root_signed: int = 0

    def curve(self, name: str) -> LevelCurve:
        for c in self.curves:
            if c.name == name:
                return c
        raise KeyError(name)

    def region_of(self, name: Optional[str]) -> str:
        """
        曲线内侧小块所属的区域名。

        Raises:
            NotATree: parent 引用成环或指向不存在的曲线
        """
        by_name = {c.name: c for c in self.curves}
        seen = set()
        while name is not None:
            if name in seen or name not in by_name:
                raise NotATree(f"curve nesting is not a forest at {name!r}")
            seen.add(name)
            c = by_name[name]
            if c.essential:
                return c.name
            name = c.parent
        return ROOT

    def regions(self) -> Tuple[Region, ...]:
        k: Dict[str, int] = {ROOT: self.root_k_points}
        signed: Dict[str, int] = {ROOT: self.root_signed}
        sides: Dict[str, Side] = {ROOT: self.root_side}
        for c in self.curves:
            if c.essential:
                k.setdefault(c.name, 0)
                signed.setdefault(c.name, 0)
                sides[c.name] = c.side
        for c in self.curves:
            r = self.region_of(c.name)
            k[r] = k.get(r, 0) + c.k_points
            signed[r] = signed.get(r, 0) + c.signed
        return tuple(Region(name, sides[name], k[name], signed[name]) for name in sides)

    def essential_curves(self) -> Tuple[LevelCurve, ...]:
        return tuple(c for c in self.curves if c.essential)

    @property
    def total_points(self) -> int:
        return self.root_k_points + sum(c.k_points for c in self.curves)

    @property
    def total_signed(self) -> int:
        return self.root_signed + sum(c.signed for c in self.curves)


# ==================== 扫描 ====================

def _cable_signs(spec: SatelliteSpec) -> List[Tuple[int, int]]:
    """标准卫星表示中每个临界事件涉及的两股方向（cup 取事件后，cap 取事件前）"""
    word = cable(spec)
    dirs = orientations(word)
    signs = []
    for idx in word.critical_indices:
        ev = word.events[idx]
        q = ev.position
        snapshot = dirs[idx] if ev.kind is EventKind.CUP else dirs[idx - 1]
        signs.append((snapshot[q], snapshot[q + 1]))
    return signs


def _sphere_from_state(state: LevelState, fw: FoliationWord) -> LevelSphere:
    curves = []
    for c in state.curves:
        extremum = None
        if not c.essential:
            if c.born_at_min:
                extremum = "min"
            elif fw.histories[c.name].death_kind is TorusEventKind.TMAX:
                extremum = "max"
        curves.append(LevelCurve(c.name, c.essential, None, Side.A, c.k_points, sum(c.points), extremum))
    return LevelSphere(tuple(curves), Side.B, len(state.outer_points), sum(state.outer_points))


def sweep_levels(fw: FoliationWord, spec: SatelliteSpec) -> Tuple[LevelSphere, ...]:
    """
    自下而上扫描伴随环面，每个正则区间给出一个层球面（含最底层和最顶层的空球面）。

    管子的子午线都在最外层区域（V 外）中，内侧是 V 内的子午盘。

    Raises:
        InvariantMismatch: 扫描结果与 morse-core 计算不一致
    """
    n = spec.winding
    signs = _cable_signs(spec)
    if len(signs) != len(fw.k_critical()):
        raise InvariantMismatch(
            f"foliation has {len(fw.k_critical())} K critical events, cable has {len(signs)}"
        )

    spheres = tuple(_sphere_from_state(state, fw) for state in fw.replay(signs))

    for i, s in enumerate(spheres):
        if s.total_signed != 0:
            raise InvariantMismatch(f"level {i}: algebraic intersection {s.total_signed} != 0")
        for c in s.essential_curves():
            if abs(c.signed) != n:
                raise InvariantMismatch(f"level {i}: tube {c.name} carries signed count {c.signed}, expected ±{n}")

    widest = max(s.total_points for s in spheres)
    expected = trunk_of(cable(spec))
    if widest != expected:
        raise InvariantMismatch(f"widest swept level has {widest} points, trunk of the cable is {expected}")

    logger.debug(f"Swept {len(spheres)} levels, widest carries {widest} points")
    return spheres


# ==================== 文本格式 ====================

def dump_level_sphere(s: LevelSphere) -> str:
    lines = [f"root {s.root_side.value} {s.root_k_points} {s.root_signed}"]
    for c in s.curves:
        parts = [
            "curve", c.name, "e" if c.essential else "i", c.parent or ROOT,
            c.side.value, str(c.k_points), str(c.signed),
        ]
        if c.extremum:
            parts.append(c.extremum)
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def _int(token: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line_no)


def _side(token: str, line_no: int) -> Side:
    if token not in ("A", "B"):
        raise ParseError(f"side must be A or B, got {token!r}", line_no)
    return Side(token)


def parse_level_sphere(text: str) -> LevelSphere:
    root: Optional[Tuple[Side, int, int]] = None
    curves: List[LevelCurve] = []
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = strip_comment(raw)
        if not line:
            continue
        parts = line.split()
        if parts[0] == "root" and len(parts) == 4:
            if root is not None:
                raise ParseError("duplicate root line", line_no)
            root = (_side(parts[1], line_no), _int(parts[2], line_no), _int(parts[3], line_no))
        elif parts[0] == "curve" and len(parts) in (7, 8):
            name, flag, parent = parts[1], parts[2], parts[3]
            if name == ROOT or any(c.name == name for c in curves):
                raise ParseError(f"curve name {name!r} is reserved or repeated", line_no)
            if flag not in ("e", "i"):
                raise ParseError(f"curve class must be e or i, got {flag!r}", line_no)
            extremum = parts[7] if len(parts) == 8 else None
            if extremum not in (None, "min", "max"):
                raise ParseError(f"extremum must be min or max, got {extremum!r}", line_no)
            curves.append(LevelCurve(
                name=name,
                essential=flag == "e",
                parent=None if parent == ROOT else parent,
                side=_side(parts[4], line_no),
                k_points=_int(parts[5], line_no),
                signed=_int(parts[6], line_no),
                extremum=extremum,
            ))
        else:
            raise ParseError(f"unrecognised level-sphere line {raw.strip()!r}", line_no)

    if root is None:
        raise ParseError("missing root line", 1)
    names = {c.name for c in curves}
    for c in curves:
        if c.parent is not None and c.parent not in names:
            raise ParseError(f"curve {c.name!r} names unknown parent {c.parent!r}")
    return LevelSphere(tuple(curves), *root)


def load_level_sphere(path: Path) -> LevelSphere:
    return parse_level_sphere(Path(path).read_text(encoding="utf-8"))


def dump_levels(levels: Sequence[LevelSphere]) -> str:
    return "".join(f"# level {i}\n{dump_level_sphere(s)}" for i, s in enumerate(levels))
