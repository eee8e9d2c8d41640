"""
Foliation Words - 伴随环面 T 的奇异叶状结构

h|T 的临界事件（极小、极大、鞍点）与 h|K 的临界事件交错成一个事件词。
每条层曲线有一次出生、一次死亡；重放（replay）逐层给出曲线状态。

鞍点的本质性规则（环面同调）：
  - 本质鞍点：一条非本质曲线分裂成两条本质曲线，或两条本质曲线合并成一条非本质曲线
  - 非本质合并：输出本质当且仅当某个输入本质
  - 非本质分裂：第一个输出继承输入的类，其余输出非本质
  - TMax 消耗一条非本质曲线，且其圆盘区域内不含 K 的点

.fol 格式：`tmin <c>`、`tmax <c>`、`sad <e|i> <in...> -> <out...>`、
`kcup [<c>]`、`kcap [<c>]`（省略曲线表示最外层区域）。
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from core.errors import MalformedFoliation, ParseError
from plugins.morse.codec import strip_comment

logger = logging.getLogger(__name__)


class TorusEventKind(Enum):
    TMIN = "tmin"
    TMAX = "tmax"
    SADDLE = "sad"
    KCUP = "kcup"
    KCAP = "kcap"

    @property
    def is_k_critical(self) -> bool:
        return self in (TorusEventKind.KCUP, TorusEventKind.KCAP)


@dataclass(frozen=True)
class TorusEvent:
    kind: TorusEventKind
    inputs: Tuple[str, ...] = ()
    outputs: Tuple[str, ...] = ()
    essential: bool = False
    curve: Optional[str] = None     # K 临界事件所在的曲线圆盘区域

    @property
    def support(self) -> Tuple[str, ...]:
        extra = (self.curve,) if self.curve is not None else ()
        return self.inputs + self.outputs + extra

    def renamed(self, mapping: Dict[str, str]) -> "TorusEvent":
        def rn(name):
            return mapping.get(name, name)
        return TorusEvent(
            self.kind,
            tuple(rn(c) for c in self.inputs),
            tuple(rn(c) for c in self.outputs),
            self.essential,
            rn(self.curve) if self.curve is not None else None,
        )

    def __str__(self) -> str:
        if self.kind is TorusEventKind.SADDLE:
            flag = "e" if self.essential else "i"
            return f"sad {flag} {' '.join(self.inputs)} -> {' '.join(self.outputs)}"
        if self.kind is TorusEventKind.TMIN:
            return f"tmin {self.outputs[0]}"
        if self.kind is TorusEventKind.TMAX:
            return f"tmax {self.inputs[0]}"
        if self.curve is None:
            return self.kind.value
        return f"{self.kind.value} {self.curve}"


def tmin(c: str) -> TorusEvent:
    return TorusEvent(TorusEventKind.TMIN, outputs=(c,))


def tmax(c: str) -> TorusEvent:
    return TorusEvent(TorusEventKind.TMAX, inputs=(c,))


def saddle(essential: bool, inputs: Sequence[str], outputs: Sequence[str]) -> TorusEvent:
    return TorusEvent(TorusEventKind.SADDLE, tuple(inputs), tuple(outputs), essential)


def kcup(c: Optional[str] = None) -> TorusEvent:
    return TorusEvent(TorusEventKind.KCUP, curve=c)


def kcap(c: Optional[str] = None) -> TorusEvent:
    return TorusEvent(TorusEventKind.KCAP, curve=c)


@dataclass(frozen=True)
class CurveState:
    """某一正则层上一条曲线的状态"""
    name: str
    essential: bool
    points: Tuple[int, ...]          # 曲线圆盘区域内 K 的点（带方向 ±1）
    born_at_min: bool                # 直接由 TMin 产生

    @property
    def k_points(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class LevelState:
    """两个相邻事件之间的正则层"""
    curves: Tuple[CurveState, ...]
    outer_points: Tuple[int, ...] = ()

    def curve(self, name: str) -> CurveState:
        for c in self.curves:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def total_points(self) -> int:
        return len(self.outer_points) + sum(c.k_points for c in self.curves)


@dataclass(frozen=True)
class CurveHistory:
    birth: int
    death: int
    birth_kind: TorusEventKind
    death_kind: TorusEventKind


@dataclass(frozen=True)
class FoliationWord:
    events: Tuple[TorusEvent, ...] = field(default_factory=tuple)

    def replay(self, signs: Optional[Sequence[Tuple[int, int]]] = None) -> Tuple[LevelState, ...]:
        """
        逐层重放事件，返回 len(events)+1 个层状态（第 0 层在所有事件之下）。

        Args:
            signs: 与 K 临界事件一一对应的 (左, 右) 方向；省略时取 (+1, −1)

        Raises:
            MalformedFoliation: 曲线引用、鞍点本质性或 K 点计数不一致
        """
        return _replay(self.events, signs)

    @cached_property
    def levels(self) -> Tuple[LevelState, ...]:
        return self.replay()

    @cached_property
    def histories(self) -> Dict[str, CurveHistory]:
        births: Dict[str, Tuple[int, TorusEventKind]] = {}
        deaths: Dict[str, Tuple[int, TorusEventKind]] = {}
        for i, ev in enumerate(self.events):
            for c in ev.outputs:
                births[c] = (i, ev.kind)
            for c in ev.inputs:
                deaths[c] = (i, ev.kind)
        return {
            c: CurveHistory(births[c][0], deaths[c][0], births[c][1], deaths[c][1])
            for c in births
        }

    def k_critical(self) -> Tuple[TorusEventKind, ...]:
        """K 临界事件的子序列（类型与顺序）"""
        return tuple(ev.kind for ev in self.events if ev.kind.is_k_critical)

    def counts(self) -> Counter:
        return Counter(ev.kind for ev in self.events)

    def __len__(self) -> int:
        return len(self.events)


def _split_points(points: Tuple[int, ...], essential: bool, outputs: int) -> List[Tuple[int, ...]]:
    if essential:
        half = len(points) // 2
        return [points[:half], points[half:]]
    return [points] + [()] * (outputs - 1)


def _replay(events: Sequence[TorusEvent], signs: Optional[Sequence[Tuple[int, int]]]) -> Tuple[LevelState, ...]:
    alive: Dict[str, CurveState] = {}
    seen = set()
    outer: List[int] = []
    levels = [LevelState(())]
    k_index = 0

    def fail(i, msg):
        raise MalformedFoliation(f"event {i}: {msg}")

    for i, ev in enumerate(events):
        if len(set(ev.inputs)) != len(ev.inputs):
            fail(i, f"curve named twice among inputs {list(ev.inputs)}")
        for c in ev.inputs:
            if c not in alive:
                fail(i, f"curve {c!r} is not present at this level")
        for c in ev.outputs:
            if c in seen:
                fail(i, f"curve {c!r} is not fresh")
            seen.add(c)

        if ev.kind is TorusEventKind.TMIN:
            if len(ev.outputs) != 1 or ev.inputs:
                fail(i, "tmin produces exactly one curve")
            alive[ev.outputs[0]] = CurveState(ev.outputs[0], False, (), True)

        elif ev.kind is TorusEventKind.TMAX:
            if len(ev.inputs) != 1 or ev.outputs:
                fail(i, "tmax consumes exactly one curve")
            dying = alive.pop(ev.inputs[0])
            if dying.essential:
                fail(i, f"tmax consumes essential curve {dying.name!r}")
            if dying.points:
                fail(i, f"tmax closes curve {dying.name!r} around {dying.k_points} K points")

        elif ev.kind is TorusEventKind.SADDLE:
            if sorted((len(ev.inputs), len(ev.outputs))) != [1, 2]:
                fail(i, "a saddle merges two curves into one or splits one into two")
            ins = [alive.pop(c) for c in ev.inputs]
            if len(ins) == 2:
                merged = ins[0].points + ins[1].points
                if ev.essential:
                    if not (ins[0].essential and ins[1].essential):
                        fail(i, "essential merge needs two essential curves")
                    out_class = False
                else:
                    if ins[0].essential and ins[1].essential:
                        fail(i, "inessential merge of two essential curves")
                    out_class = ins[0].essential or ins[1].essential
                alive[ev.outputs[0]] = CurveState(ev.outputs[0], out_class, merged, False)
            else:
                source = ins[0]
                if ev.essential:
                    if source.essential:
                        fail(i, "essential split of an essential curve")
                    classes = [True, True]
                else:
                    classes = [source.essential, False]
                parts = _split_points(source.points, ev.essential, 2)
                for name, cls, pts in zip(ev.outputs, classes, parts):
                    alive[name] = CurveState(name, cls, pts, False)

        else:
            if ev.curve is not None and ev.curve not in alive:
                fail(i, f"K event in absent curve {ev.curve!r}")
            if signs is not None:
                if k_index >= len(signs):
                    fail(i, "more K critical events than orientation data")
                left, right = signs[k_index]
            else:
                left, right = 1, -1
            k_index += 1

            pts = list(alive[ev.curve].points) if ev.curve is not None else outer
            mid = len(pts) // 2
            if ev.kind is TorusEventKind.KCUP:
                pts[mid:mid] = [left, right]
            else:
                if len(pts) < 2:
                    fail(i, "kcap with fewer than two K points in its region")
                del pts[mid - 1:mid + 1]
            if ev.curve is not None:
                old = alive[ev.curve]
                alive[ev.curve] = CurveState(old.name, old.essential, tuple(pts), old.born_at_min)

        levels.append(LevelState(tuple(alive.values()), tuple(outer)))

    if alive:
        raise MalformedFoliation(f"word ends with open curves {sorted(alive)}")
    if outer:
        raise MalformedFoliation("word ends with K points in the outer region")
    return tuple(levels)


def validate_foliation(events: Sequence[TorusEvent]) -> FoliationWord:
    """
    校验并构造 FoliationWord：曲线一致性 + 欧拉示性数 #TMin + #TMax = #TSaddle。
    """
    fw = FoliationWord(tuple(events))
    fw.levels  # noqa: B018  触发重放校验
    counts = fw.counts()
    extrema = counts[TorusEventKind.TMIN] + counts[TorusEventKind.TMAX]
    if extrema != counts[TorusEventKind.SADDLE]:
        raise MalformedFoliation(
            f"Euler characteristic does not close: {extrema} extrema vs "
            f"{counts[TorusEventKind.SADDLE]} saddles"
        )
    return fw


# ==================== .fol 格式 ====================

def parse_foliation(text: str) -> FoliationWord:
    events = []
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = strip_comment(raw)
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head in ("tmin", "tmax") and len(parts) == 2:
            events.append(tmin(parts[1]) if head == "tmin" else tmax(parts[1]))
        elif head in ("kcup", "kcap") and len(parts) <= 2:
            curve = parts[1] if len(parts) == 2 else None
            events.append(kcup(curve) if head == "kcup" else kcap(curve))
        elif head == "sad" and len(parts) >= 5 and parts[1] in ("e", "i") and "->" in parts:
            arrow = parts.index("->")
            events.append(saddle(parts[1] == "e", parts[2:arrow], parts[arrow + 1:]))
        else:
            raise ParseError(f"unrecognised foliation event {raw.strip()!r}", line_no)
    return validate_foliation(events)


def serialize_foliation(fw: FoliationWord) -> str:
    return "".join(f"{ev}\n" for ev in fw.events)


def load_foliation(path: Path) -> FoliationWord:
    return parse_foliation(Path(path).read_text(encoding="utf-8"))
