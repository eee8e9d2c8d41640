"""
非本质鞍点的消去

非本质鞍点的一侧圆盘里只有一个极值时，鞍点与该极值可以成对消去：

  - 合并手指：TMin x … sad i (x, y) → z，x 的圆盘里只有 K 临界事件；
    删除两事件，x 中的 K 事件改记在 y 上，之后的 z 改名为 y
  - 分裂手指：sad i z → (x, y) … TMax y；删除两事件，
    y 中的 K 事件改记在 z 上，之后的 x 改名为 z

不涉及被消去曲线的事件与它们独立、可任意交换，因此不需要显式地移动事件；
K 临界事件的顺序保持不变，每次消去恰好少两个事件。
"""

import logging
from typing import List, Optional, Tuple

from core.errors import MalformedFoliation, NonCancelable, PreconditionFailed
from plugins.foliation.word import (
    FoliationWord,
    TorusEvent,
    TorusEventKind,
    validate_foliation,
)

logger = logging.getLogger(__name__)


def detect_inessential(fw: FoliationWord) -> Tuple[int, ...]:
    """所有非本质鞍点的下标（自下而上）"""
    return tuple(
        i for i, ev in enumerate(fw.events)
        if ev.kind is TorusEventKind.SADDLE and not ev.essential
    )


def _cancel_merge(fw: FoliationWord, i: int) -> Optional[List[TorusEvent]]:
    events = fw.events
    hist = fw.histories
    ev = events[i]
    z = ev.outputs[0]

    candidates = []
    for x, y in (ev.inputs, ev.inputs[::-1]):
        if hist[x].birth_kind is not TorusEventKind.TMIN:
            continue
        j = hist[x].birth
        moved = [idx for idx in range(j + 1, i) if events[idx].curve == x]
        # x 里的 K 事件必须发生在 y 出现之后才能改记到 y 上
        if any(idx < hist[y].birth for idx in moved):
            continue
        candidates.append((len(moved), x, y, j))
    if not candidates:
        return None

    # 改记的 K 事件越少越好
    _, x, y, j = min(candidates, key=lambda c: c[0])
    out = []
    for idx, e in enumerate(events):
        if idx in (j, i):
            continue
        if j < idx < i and e.curve == x:
            e = e.renamed({x: y})
        elif idx > i:
            e = e.renamed({z: y})
        out.append(e)
    return out


def _cancel_split(fw: FoliationWord, i: int) -> Optional[List[TorusEvent]]:
    events = fw.events
    hist = fw.histories
    ev = events[i]
    z = ev.inputs[0]
    before, after = fw.levels[i], fw.levels[i + 1]

    candidates = []
    for y, x in (ev.outputs, ev.outputs[::-1]):
        if hist[y].death_kind is not TorusEventKind.TMAX:
            continue
        if after.curve(x).essential != before.curve(z).essential:
            continue
        d = hist[y].death
        moved = [idx for idx in range(i + 1, d) if events[idx].curve == y]
        if any(idx > hist[x].death for idx in moved):
            continue
        candidates.append((len(moved), x, y, d))
    if not candidates:
        return None

    _, x, y, d = min(candidates, key=lambda c: c[0])
    out = []
    for idx, e in enumerate(events):
        if idx in (i, d):
            continue
        if i < idx < d and e.curve == y:
            e = e.renamed({y: z})
        elif idx > i:
            e = e.renamed({x: z})
        out.append(e)
    return out


def cancel_saddle(fw: FoliationWord, i: int) -> Optional[FoliationWord]:
    """尝试消去下标 i 处的非本质鞍点；不满足消去形式时返回 None"""
    ev = fw.events[i]
    rewrite = _cancel_merge if len(ev.inputs) == 2 else _cancel_split
    events = rewrite(fw, i)
    if events is None:
        return None
    try:
        return validate_foliation(events)
    except MalformedFoliation as e:
        logger.debug(f"Cancelling saddle {i} gives a malformed word: {e}")
        return None


def eliminate_inessential_saddles(fw: FoliationWord) -> FoliationWord:
    """
    反复消去非本质鞍点，直到没有为止。

    Raises:
        NonCancelable: 剩余的非本质鞍点都不具备手指形式
    """
    current = fw
    eliminated = 0
    while True:
        pending = detect_inessential(current)
        if not pending:
            break
        for i in pending:
            rewritten = cancel_saddle(current, i)
            if rewritten is not None:
                logger.debug(f"Cancelled inessential saddle at event {i}: {current.events[i]}")
                current = rewritten
                eliminated += 1
                break
        else:
            raise NonCancelable(
                f"none of the inessential saddles at {list(pending)} bounds a disk with a single extremum"
            )

    if eliminated:
        logger.info(f"Eliminated {eliminated} inessential saddle(s): {len(fw)} -> {len(current)} events")
    return current


def disk_extremum_audit(fw: FoliationWord) -> bool:
    """
    每条非本质曲线在 T 上围出的圆盘恰好含一个极值：
    它要么直接由 TMin 产生，要么直接在 TMax 处消失。

    Raises:
        PreconditionFailed: 词中仍有非本质鞍点
    """
    pending = detect_inessential(fw)
    if pending:
        raise PreconditionFailed(f"word still has inessential saddles at {list(pending)}")

    for name, h in fw.histories.items():
        if fw.levels[h.birth + 1].curve(name).essential:
            continue
        if h.birth_kind is not TorusEventKind.TMIN and h.death_kind is not TorusEventKind.TMAX:
            logger.debug(f"Inessential curve {name} is neither born at a minimum nor dies at a maximum")
            return False
    return True
