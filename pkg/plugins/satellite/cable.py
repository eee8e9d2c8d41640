"""
Satellite Cabling - 用辫子式样缠绕伴随纽结

把伴随纽结 J 的每一股加粗成 n 股平行线（黑板标架），
在插入位置的 cup 块之后放入辫子字母和 f 个全扭转：

    cup  p  →  n 个嵌套 cup，位置 n·p, …, n·p+n−1
    cap  p  →  n 个嵌套 cap，位置 n·p+n−1, …, n·p
    交叉 p  →  n² 个同号交叉，交换相邻的两个 n-块（块内顺序不变）
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

from core.errors import InvalidSite, InvariantMismatch, MultiComponent, NotAKnot
from plugins.morse.presentation import (
    EventKind,
    MorseEvent,
    MorsePresentation,
    bridge_count,
    cap,
    crossing,
    cup,
    trunk_of,
    validate,
    width,
)
from plugins.satellite.braid import BraidLetter, BraidWord, cycle_count, full_twist

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SatelliteSpec:
    """伴随纽结 J + 辫子式样 K̂ + 标架扭转 f + 插入位置"""
    companion: MorsePresentation
    pattern: BraidWord
    framing_twists: int = 0
    insertion_site: int = 0

    @property
    def winding(self) -> int:
        return self.pattern.index

    def pattern_letters(self) -> Tuple[BraidLetter, ...]:
        return self.pattern.letters + full_twist(self.pattern.index, self.framing_twists)


@dataclass(frozen=True)
class CanonicalInvariants:
    width: int
    bridge: int
    trunk: int


def check_spec(spec: SatelliteSpec):
    """
    检查缠绕前提。

    Raises:
        InvalidSite: 插入位置超出伴随纽结 cup 的个数
        NotAKnot: 式样总置换不是 n-轮换（缠绕结果会是链环）
    """
    cups = bridge_count(spec.companion)
    if not 0 <= spec.insertion_site < cups:
        raise InvalidSite(f"insertion site {spec.insertion_site} not in [0, {cups})")

    pattern = BraidWord(spec.pattern.index, spec.pattern_letters())
    cycles = cycle_count(pattern.permutation())
    if cycles != 1:
        raise NotAKnot(
            f"pattern permutation has {cycles} cycles; the satellite would be a {cycles}-component link"
        )


def block_transposition(p: int, n: int, sign: int) -> List[MorseEvent]:
    """交换块 [n·p, n·p+n) 与 [n·p+n, n·p+2n) 的 n² 个交叉"""
    events = []
    for k in range(n):
        start = n * p + n - 1 - k
        events.extend(crossing(start + j, sign) for j in range(n))
    return events


def cable(spec: SatelliteSpec) -> MorsePresentation:
    """构造卫星纽结的标准 Morse 表示"""
    check_spec(spec)

    n = spec.pattern.index
    letters = spec.pattern_letters()
    events: List[MorseEvent] = []
    cups_seen = 0

    for ev in spec.companion.events:
        p = ev.position
        if ev.kind is EventKind.CUP:
            events.extend(cup(n * p + i) for i in range(n))
            if cups_seen == spec.insertion_site:
                events.extend(crossing(n * p + letter.generator - 1, letter.sign) for letter in letters)
            cups_seen += 1
        elif ev.kind is EventKind.CAP:
            events.extend(cap(n * p + i) for i in range(n - 1, -1, -1))
        else:
            sign = 1 if ev.kind is EventKind.CROSS_POS else -1
            events.extend(block_transposition(p, n, sign))

    try:
        result = validate(events)
    except MultiComponent as e:
        raise InvariantMismatch(f"cable of a valid satellite traced {e.components} components")

    logger.debug(f"Cabled companion ({len(spec.companion)} events) with index {n}: {len(result)} events")
    return result


def canonical_invariants(spec: SatelliteSpec) -> CanonicalInvariants:
    """
    标准卫星表示的不变量：w = n²·w(J)，b = n·b(J)，trunk = n·trunk(J)。

    同时用 morse-core 在 cable(spec) 上重新计算并核对。
    """
    n = spec.winding
    companion = spec.companion
    predicted = CanonicalInvariants(
        width=n * n * width(companion),
        bridge=n * bridge_count(companion),
        trunk=n * trunk_of(companion),
    )

    word = cable(spec)
    computed = CanonicalInvariants(width(word), bridge_count(word), trunk_of(word))
    if computed != predicted:
        raise InvariantMismatch(f"cable invariants {computed} differ from scaling prediction {predicted}")
    return predicted
