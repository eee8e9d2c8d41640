"""
Morse Presentation - 纽结的 Morse 表示与宽度不变量

纽结用自下而上的事件词表示：cup（极小）、cap（极大）和交叉。
交叉不是 h|K 的临界点，正则层只放在相邻的 cup/cap 之间。

    w(h)     = Σ |K ∩ h⁻¹(r_i)|
    b(h)     = cup 的个数
    trunk(h) = max |K ∩ h⁻¹(r_i)|
    w(h)     = ½(Σ a_i² − Σ b_j²)   （厚/薄层公式）
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, Tuple

from networkx.utils import UnionFind

from core.errors import (
    EmptyPresentation,
    InvalidPosition,
    MultiComponent,
    NegativeStrands,
    NonZeroEnd,
)

logger = logging.getLogger(__name__)


class EventKind(Enum):
    """事件类型（取值即 .morse 文件中的关键字）"""
    CUP = "cup"
    CAP = "cap"
    CROSS_POS = "x+"
    CROSS_NEG = "x-"

    @property
    def is_critical(self) -> bool:
        return self in (EventKind.CUP, EventKind.CAP)

    @property
    def is_crossing(self) -> bool:
        return self in (EventKind.CROSS_POS, EventKind.CROSS_NEG)


# 每类事件消耗 / 产生的股数
_IN_COUNT = {EventKind.CUP: 0, EventKind.CAP: 2, EventKind.CROSS_POS: 2, EventKind.CROSS_NEG: 2}
_OUT_COUNT = {EventKind.CUP: 2, EventKind.CAP: 0, EventKind.CROSS_POS: 2, EventKind.CROSS_NEG: 2}


@dataclass(frozen=True)
class MorseEvent:
    """单个事件：类型 + 0 起始的股位置"""
    kind: EventKind
    position: int

    @property
    def in_count(self) -> int:
        return _IN_COUNT[self.kind]

    @property
    def out_count(self) -> int:
        return _OUT_COUNT[self.kind]

    @property
    def delta(self) -> int:
        """事件前后股数的变化"""
        return self.out_count - self.in_count

    def sort_key(self) -> Tuple[str, int]:
        return (self.kind.value, self.position)

    def __str__(self) -> str:
        return f"{self.kind.value} {self.position}"


def cup(p: int) -> MorseEvent:
    return MorseEvent(EventKind.CUP, p)


def cap(p: int) -> MorseEvent:
    return MorseEvent(EventKind.CAP, p)


def crossing(p: int, sign: int = 1) -> MorseEvent:
    return MorseEvent(EventKind.CROSS_POS if sign > 0 else EventKind.CROSS_NEG, p)


@dataclass(frozen=True)
class MorsePresentation:
    """
    已校验的 Morse 表示（只应通过 validate() 构造）

    events 自下而上排列；派生量按需缓存。
    """
    events: Tuple[MorseEvent, ...]

    @cached_property
    def strand_profile(self) -> Tuple[int, ...]:
        """每个事件之后的股数 k_1, …, k_m（k_m = 0）"""
        counts = []
        k = 0
        for ev in self.events:
            k += ev.delta
            counts.append(k)
        return tuple(counts)

    @cached_property
    def critical_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, ev in enumerate(self.events) if ev.kind.is_critical)

    @cached_property
    def level_counts(self) -> Tuple[int, ...]:
        profile = self.strand_profile
        # 最后一个临界事件之后没有正则层
        return tuple(profile[i] for i in self.critical_indices[:-1])

    def sort_key(self) -> Tuple[Tuple[str, int], ...]:
        return tuple(ev.sort_key() for ev in self.events)

    def __len__(self) -> int:
        return len(self.events)


@dataclass(frozen=True)
class ThickThinDecomposition:
    """厚层计数 a_1 > b_1 < a_2 > … 与薄层计数交替"""
    thick: Tuple[int, ...]
    thin: Tuple[int, ...]

    @property
    def width(self) -> int:
        return (sum(a * a for a in self.thick) - sum(b * b for b in self.thin)) // 2


# ==================== 校验 ====================

def trace_components(events: Iterable[MorseEvent]) -> int:
    """
    沿 cup/cap/交叉追踪股的连接关系，返回分支数。

    交叉只交换两股的位置（正负号影响纽结类型，不影响分支数）。
    位置或股数不合法时抛出对应的 ValidationError。
    """
    uf = UnionFind()
    strands: List[int] = []
    next_id = 0

    for i, ev in enumerate(events):
        k = len(strands)
        p = ev.position
        if ev.kind is EventKind.CUP:
            if not 0 <= p <= k:
                raise InvalidPosition(f"cup at {p} with {k} strands", event_index=i)
            a, b = next_id, next_id + 1
            next_id += 2
            uf.union(a, b)
            strands[p:p] = [a, b]
        elif ev.kind is EventKind.CAP:
            if k < 2:
                raise NegativeStrands(f"cap with only {k} strands", event_index=i)
            if not 0 <= p <= k - 2:
                raise InvalidPosition(f"cap at {p} with {k} strands", event_index=i)
            uf.union(strands[p], strands[p + 1])
            del strands[p:p + 2]
        else:
            if not 0 <= p <= k - 2:
                raise InvalidPosition(f"crossing at {p} with {k} strands", event_index=i)
            strands[p], strands[p + 1] = strands[p + 1], strands[p]

    if strands:
        raise NonZeroEnd(f"word ends with {len(strands)} open strands")

    return sum(1 for _ in uf.to_sets())


def validate(events: Iterable[MorseEvent]) -> MorsePresentation:
    """
    校验原始事件序列，返回 MorsePresentation。

    Raises:
        EmptyPresentation / NegativeStrands / InvalidPosition / NonZeroEnd / MultiComponent
    """
    events = tuple(events)
    if not events:
        raise EmptyPresentation("presentation has no events")

    components = trace_components(events)
    if components != 1:
        raise MultiComponent(components=components)

    return MorsePresentation(events)


# ==================== 不变量 ====================

def level_counts(p: MorsePresentation) -> Tuple[int, ...]:
    """相邻临界值之间每个正则层与 K 的交点数"""
    return p.level_counts


def width(p: MorsePresentation) -> int:
    return sum(p.level_counts)


def bridge_count(p: MorsePresentation) -> int:
    return sum(1 for ev in p.events if ev.kind is EventKind.CUP)


def trunk_of(p: MorsePresentation) -> int:
    return max(p.level_counts)


def thick_thin(p: MorsePresentation) -> ThickThinDecomposition:
    """
    提取厚层（局部极大）和薄层（局部极小）。

    两端补 0：K 在最低临界点之下、最高临界点之上都不与层面相交。
    相邻正则层的计数恰好相差 2，因此不存在平台。
    """
    counts = (0,) + p.level_counts + (0,)
    thick = []
    thin = []
    for i in range(1, len(counts) - 1):
        here = counts[i]
        if here > counts[i - 1] and here > counts[i + 1]:
            thick.append(here)
        elif here < counts[i - 1] and here < counts[i + 1]:
            thin.append(here)
    return ThickThinDecomposition(tuple(thick), tuple(thin))


def is_bridge_position(p: MorsePresentation) -> bool:
    """所有极大都在所有极小之上"""
    last_cup = max(i for i, ev in enumerate(p.events) if ev.kind is EventKind.CUP)
    first_cap = min(i for i, ev in enumerate(p.events) if ev.kind is EventKind.CAP)
    return last_cup < first_cap


def orientations(p: MorsePresentation) -> Tuple[Tuple[int, ...], ...]:
    """
    给纽结定向后，返回每个事件之后各股的方向（+1 向上，−1 向下）。

    每股线段从一个 cup 出发、到一个 cap 结束；沿纽结走时，
    经过 cup 或 cap 都会反转上下方向，所以方向在配对关系上交替。
    """
    cup_partner: Dict[int, int] = {}
    cap_partner: Dict[int, int] = {}
    strands: List[int] = []
    snapshots: List[Tuple[int, ...]] = []
    next_id = 0

    for ev in p.events:
        q = ev.position
        if ev.kind is EventKind.CUP:
            a, b = next_id, next_id + 1
            next_id += 2
            cup_partner[a], cup_partner[b] = b, a
            strands[q:q] = [a, b]
        elif ev.kind is EventKind.CAP:
            a, b = strands[q], strands[q + 1]
            cap_partner[a], cap_partner[b] = b, a
            del strands[q:q + 2]
        else:
            strands[q], strands[q + 1] = strands[q + 1], strands[q]
        snapshots.append(tuple(strands))

    direction: Dict[int, int] = {0: 1}
    current, sign = 0, 1
    # 向上走到 cap，换到 cap 的另一侧向下走到 cup，如此循环
    while True:
        partner = cap_partner[current] if sign > 0 else cup_partner[current]
        if partner in direction:
            break
        sign = -sign
        direction[partner] = sign
        current = partner

    if len(direction) != next_id:
        logger.warning(f"Orientation trace covered {len(direction)} of {next_id} segments")

    return tuple(tuple(direction[s] for s in snap) for snap in snapshots)
