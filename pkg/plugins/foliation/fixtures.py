"""
手指（finger）夹具：在干净的叶状结构里拼接一个可消去的非本质鞍点

  merge：TMin x 插在 extremum_at 之前，sad i (x, curve) → z 插在 saddle_at 之前
  split：sad i curve → (z, x) 插在 saddle_at 之前，TMax x 插在 extremum_at 之前

下标都指原词中的插入位置；拼接点之后对 curve 的引用改为 z。
"""

import itertools
from typing import List

from core.errors import MalformedFoliation
from plugins.foliation.word import FoliationWord, TorusEvent, saddle, tmax, tmin, validate_foliation


def _fresh(fw: FoliationWord, stem: str, count: int = 1) -> List[str]:
    used = {c for ev in fw.events for c in ev.support}
    names = (f"{stem}{k}" for k in itertools.count())
    return list(itertools.islice((name for name in names if name not in used), count))


def splice_finger(
    fw: FoliationWord,
    curve: str,
    saddle_at: int,
    extremum_at: int,
    kind: str = "merge",
) -> FoliationWord:
    """
    Raises:
        MalformedFoliation: 插入位置不合法或 curve 在鞍点处不存在
    """
    if kind not in ("merge", "split"):
        raise ValueError(f"finger kind must be 'merge' or 'split', got {kind!r}")
    if not (0 <= saddle_at <= len(fw) and 0 <= extremum_at <= len(fw)):
        raise MalformedFoliation(f"insertion points must lie in [0, {len(fw)}]")
    if kind == "merge" and extremum_at > saddle_at:
        raise MalformedFoliation("the finger's minimum must sit below its saddle")
    if kind == "split" and extremum_at < saddle_at:
        raise MalformedFoliation("the finger's maximum must sit above its saddle")

    bubble, renamed = _fresh(fw, "finger", 2)
    if kind == "merge":
        extremum = tmin(bubble)
        sad = saddle(False, [bubble, curve], [renamed])
    else:
        extremum = tmax(bubble)
        sad = saddle(False, [curve], [renamed, bubble])

    events: List[TorusEvent] = []
    for idx in range(len(fw) + 1):
        if kind == "merge" and idx == extremum_at:
            events.append(extremum)
        if idx == saddle_at:
            events.append(sad)
        if kind == "split" and idx == extremum_at:
            events.append(extremum)
        if idx < len(fw):
            ev = fw.events[idx]
            events.append(ev.renamed({curve: renamed}) if idx >= saddle_at else ev)

    return validate_foliation(events)
