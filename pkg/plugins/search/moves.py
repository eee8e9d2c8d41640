"""
Morse Moves - 保持纽结类型的局部移动

  far_commute     交换两个支撑不相交的相邻事件（同为临界事件或同为交叉）
  slide_crossing  交叉滑过相邻的 cup/cap（支撑不相交）
  cancel_pair     消去相邻的 cup p / cap p±1（同一股上的 Z 字形）
  create_pair     在某一层的第 s 股上插入 Z 字形

相邻事件 A（位置 p）、B（位置 q，A 之后的坐标）交换后：
    B 在 A 左侧 (q + in_B ≤ p)：  B' = q,              A' = p + (out_B − in_B)
    B 在 A 右侧 (q ≥ p + out_A)： B' = q − out_A + in_A, A' = p
否则支撑相交，不能交换。
"""

import logging
import random
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from core.errors import IllegalMove, ValidationError
from plugins.morse.presentation import (
    EventKind,
    MorseEvent,
    MorsePresentation,
    cap,
    cup,
    validate,
)

logger = logging.getLogger(__name__)


class MoveKind(Enum):
    FAR_COMMUTE = "far_commute"
    SLIDE_CROSSING = "slide_crossing"
    CANCEL_PAIR = "cancel_pair"
    CREATE_PAIR = "create_pair"


@dataclass(frozen=True)
class Move:
    """
    index: 交换 / 消去时为第一个事件的下标；create_pair 时为插入的间隙下标
    position: create_pair 的股下标 s
    left: create_pair 用 cup s+1 / cap s（否则 cup s / cap s+1）
    """
    kind: MoveKind
    index: int
    position: int = 0
    left: bool = False

    def __str__(self) -> str:
        if self.kind is MoveKind.CREATE_PAIR:
            return f"{self.kind.value} {self.index} {self.position}{' left' if self.left else ''}"
        return f"{self.kind.value} {self.index}"


def commuted(a: MorseEvent, b: MorseEvent) -> Optional[Tuple[MorseEvent, MorseEvent]]:
    """支撑不相交时返回交换后的 (B', A')，否则 None"""
    p, q = a.position, b.position
    if q + b.in_count <= p:
        return MorseEvent(b.kind, q), MorseEvent(a.kind, p + b.out_count - b.in_count)
    if q >= p + a.out_count:
        return MorseEvent(b.kind, q - a.out_count + a.in_count), MorseEvent(a.kind, p)
    return None


def _commute_kind(a: MorseEvent, b: MorseEvent) -> MoveKind:
    if a.kind.is_crossing != b.kind.is_crossing:
        return MoveKind.SLIDE_CROSSING
    return MoveKind.FAR_COMMUTE


def _is_zigzag(a: MorseEvent, b: MorseEvent) -> bool:
    return (
        a.kind is EventKind.CUP
        and b.kind is EventKind.CAP
        and b.position in (a.position - 1, a.position + 1)
    )


def _strands_at_gap(p: MorsePresentation, i: int) -> int:
    """第 i 个事件之前的股数"""
    return p.strand_profile[i - 1] if i > 0 else 0


def zigzag(s: int, left: bool) -> Tuple[MorseEvent, MorseEvent]:
    return (cup(s + 1), cap(s)) if left else (cup(s), cap(s + 1))


def is_applicable(p: MorsePresentation, m: Move) -> bool:
    events = p.events
    if m.kind is MoveKind.CREATE_PAIR:
        if not 0 < m.index < len(events):
            return False
        return 0 <= m.position < _strands_at_gap(p, m.index)
    if not 0 <= m.index < len(events) - 1:
        return False
    a, b = events[m.index], events[m.index + 1]
    if m.kind is MoveKind.CANCEL_PAIR:
        return len(events) > 2 and _is_zigzag(a, b)
    return commuted(a, b) is not None and _commute_kind(a, b) is m.kind


def legal_moves(p: MorsePresentation) -> List[Move]:
    """所有可用移动，顺序确定"""
    moves = []
    events = p.events
    for i in range(len(events) - 1):
        a, b = events[i], events[i + 1]
        if commuted(a, b) is not None:
            moves.append(Move(_commute_kind(a, b), i))
        if len(events) > 2 and _is_zigzag(a, b):
            moves.append(Move(MoveKind.CANCEL_PAIR, i))
    for i in range(1, len(events)):
        for s in range(_strands_at_gap(p, i)):
            moves.append(Move(MoveKind.CREATE_PAIR, i, s, False))
            moves.append(Move(MoveKind.CREATE_PAIR, i, s, True))
    return moves


def predicted_delta(p: MorsePresentation, m: Move) -> int:
    """移动造成的宽度变化（由股数剖面直接算出）"""
    if m.kind is MoveKind.CREATE_PAIR:
        return 2 * _strands_at_gap(p, m.index) + 2
    if m.kind is MoveKind.CANCEL_PAIR:
        return -(2 * _strands_at_gap(p, m.index) + 2)
    a, b = p.events[m.index], p.events[m.index + 1]
    if a.kind.is_critical and b.kind.is_critical:
        # 只有两事件之间的那一层改变
        return b.delta - a.delta
    return 0


def apply_move(p: MorsePresentation, m: Move) -> MorsePresentation:
    """
    Raises:
        IllegalMove: 移动对 p 不适用（下标过期或条件不满足）
    """
    if not is_applicable(p, m):
        raise IllegalMove(f"move {m} does not apply to a word of {len(p)} events")

    events = list(p.events)
    i = m.index
    if m.kind is MoveKind.CREATE_PAIR:
        events[i:i] = zigzag(m.position, m.left)
    elif m.kind is MoveKind.CANCEL_PAIR:
        del events[i:i + 2]
    else:
        events[i:i + 2] = commuted(events[i], events[i + 1])

    try:
        return validate(events)
    except ValidationError as e:
        raise IllegalMove(f"move {m} produced an invalid word: {e}")


def propose_move(
    p: MorsePresentation,
    rng: random.Random,
    max_events: Optional[int] = None,
) -> Optional[Move]:
    """
    随机抽取一个移动（O(1)）；抽到的移动不适用时返回 None。
    """
    n = len(p)
    roll = rng.random()
    if roll < 0.1:
        if max_events is not None and n + 2 > max_events:
            return None
        i = rng.randint(1, n - 1)
        k = _strands_at_gap(p, i)
        if k < 1:
            return None
        return Move(MoveKind.CREATE_PAIR, i, rng.randrange(k), rng.random() < 0.5)

    if n < 2:
        return None
    i = rng.randrange(n - 1)
    a, b = p.events[i], p.events[i + 1]
    if roll < 0.4:
        if n > 2 and _is_zigzag(a, b):
            return Move(MoveKind.CANCEL_PAIR, i)
        return None
    if commuted(a, b) is None:
        return None
    return Move(_commute_kind(a, b), i)
