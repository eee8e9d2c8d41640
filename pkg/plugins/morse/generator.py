"""
随机 Morse 词生成（属性测试与验收语料用）

不需要拒绝采样：生成过程中用并查集跟踪每股所属的开放弧，
cap 只连接属于不同弧的两股（或最后剩下的两股），
因此结果总是单分支的合法纽结词。
"""

import random
from typing import List

from networkx.utils import UnionFind

from plugins.morse.presentation import (
    EventKind,
    MorseEvent,
    MorsePresentation,
    cap,
    cup,
    validate,
)


def random_presentation(rng: random.Random, max_events: int = 40) -> MorsePresentation:
    """
    生成一个随机合法纽结词，事件数不超过 max_events（至少为 2）。

    Args:
        rng: 随机数生成器（决定性种子）
        max_events: 事件数上限
    """
    max_events = max(2, max_events)
    uf = UnionFind()
    strands: List[int] = []
    events: List[MorseEvent] = []
    next_id = 0

    def add_cup(p: int):
        nonlocal next_id
        a, b = next_id, next_id + 1
        next_id += 2
        uf.union(a, b)
        strands[p:p] = [a, b]
        events.append(cup(p))

    def add_cap(p: int):
        uf.union(strands[p], strands[p + 1])
        del strands[p:p + 2]
        events.append(cap(p))

    def joinable() -> List[int]:
        return [p for p in range(len(strands) - 1) if uf[strands[p]] != uf[strands[p + 1]]]

    add_cup(0)
    # 收尾需要 k/2 个 cap，预留出来
    while len(events) + len(strands) // 2 + 1 < max_events:
        k = len(strands)
        roll = rng.random()
        if roll < 0.35:
            add_cup(rng.randint(0, k))
        elif roll < 0.6 and k >= 4 and joinable():
            add_cap(rng.choice(joinable()))
        else:
            p = rng.randint(0, k - 2)
            kind = EventKind.CROSS_POS if rng.random() < 0.5 else EventKind.CROSS_NEG
            strands[p], strands[p + 1] = strands[p + 1], strands[p]
            events.append(MorseEvent(kind, p))

    while len(strands) > 2:
        add_cap(rng.choice(joinable()))
    add_cap(0)

    return validate(events)
