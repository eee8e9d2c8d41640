"""
标准缆管的叶状结构

伴随纽结的每个 cup 产生一段管子的底部，每个 cap 产生顶部：

    cup  p  →  TMin c, n × kcup c, 本质分裂 c → (左, 右)
    cap  p  →  本质合并 (左, 右) → c, n × kcap c, TMax c

伴随交叉只交换两根管子的位置；辫子字母发生在管子内部，对 T 不产生事件。
"""

import itertools
import logging
from typing import List

from plugins.foliation.word import (
    FoliationWord,
    TorusEvent,
    kcap,
    kcup,
    saddle,
    tmax,
    tmin,
    validate_foliation,
)
from plugins.morse.presentation import EventKind
from plugins.satellite.cable import SatelliteSpec, check_spec

logger = logging.getLogger(__name__)


def induced_foliation(spec: SatelliteSpec) -> FoliationWord:
    """
    生成标准卫星表示中伴随环面的叶状结构。

    Raises:
        InvalidSite / NotAKnot: 与 cable() 相同
    """
    check_spec(spec)
    n = spec.winding
    counter = itertools.count()

    def fresh() -> str:
        return f"t{next(counter)}"

    tubes: List[str] = []           # 每个伴随股位置上的管子子午线
    events: List[TorusEvent] = []

    for ev in spec.companion.events:
        p = ev.position
        if ev.kind is EventKind.CUP:
            bottom, left, right = fresh(), fresh(), fresh()
            events.append(tmin(bottom))
            events.extend(kcup(bottom) for _ in range(n))
            events.append(saddle(True, [bottom], [left, right]))
            tubes[p:p] = [left, right]
        elif ev.kind is EventKind.CAP:
            top = fresh()
            events.append(saddle(True, tubes[p:p + 2], [top]))
            events.extend(kcap(top) for _ in range(n))
            events.append(tmax(top))
            del tubes[p:p + 2]
        else:
            tubes[p], tubes[p + 1] = tubes[p + 1], tubes[p]

    fw = validate_foliation(events)
    logger.debug(f"Induced foliation: {len(fw)} events for winding {n}")
    return fw
