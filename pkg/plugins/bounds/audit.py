"""
Bounds - 宽度 / 桥数 / trunk 的下界公式与审计

    trunk 下界       w(K) ≥ trunk²/2
    卫星宽度下界     w(K) ≥ 8n²          （伴随纽结非平凡）
    卫星 trunk 下界  trunk(h) ≥ 4n
    Schubert         b(K) ≥ n·b(J)
    宽度猜想         w(K) ≥ n²·w(J)      （只报告，不强制）

伴随纽结的 w(J)、b(J) 取自其 Morse 表示的计算值（是真实最小值的上界），
报告中称为"表示不变量"。
"""

import logging
from typing import List, Optional

from pydantic import BaseModel

from core.errors import BoundViolation
from plugins.morse.presentation import (
    MorsePresentation,
    bridge_count,
    is_bridge_position,
    trunk_of,
    width,
)
from plugins.satellite.cable import SatelliteSpec

logger = logging.getLogger(__name__)


def trunk_width_bound(t: int) -> int:
    return t * t // 2


def satellite_width_bound(n: int) -> int:
    return 8 * n * n


def satellite_trunk_bound(n: int) -> int:
    return 4 * n


def schubert_bridge_bound(n: int, bJ: int) -> int:
    return n * bJ


def conjectured_width_bound(n: int, wJ: int) -> int:
    return n * n * wJ


class BoundCheck(BaseModel):
    name: str
    bound: int
    value: int
    satisfied: bool
    tight: bool
    conjectural: bool = False


class BoundReport(BaseModel):
    width: int
    bridge: int
    trunk: int
    winding: Optional[int] = None
    companion_width: Optional[int] = None
    companion_bridge: Optional[int] = None
    checks: List[BoundCheck] = []
    bridge_position: bool
    thin_certified: bool = False

    def failed(self) -> List[BoundCheck]:
        """未通过的强制检查（猜想不计入）"""
        return [c for c in self.checks if not c.satisfied and not c.conjectural]


def _check(name: str, bound: int, value: int, conjectural: bool = False) -> BoundCheck:
    return BoundCheck(
        name=name,
        bound=bound,
        value=value,
        satisfied=value >= bound,
        tight=value == bound,
        conjectural=conjectural,
    )


def audit(
    p: MorsePresentation,
    spec: Optional[SatelliteSpec] = None,
    *,
    winding: Optional[int] = None,
) -> BoundReport:
    """
    用所有适用的下界审计 p 的不变量。

    Args:
        p: 待审计的 Morse 表示
        spec: p 来自卫星构造时的参数（提供伴随纽结不变量）
        winding: 没有卫星描述但已知是绕数 n 的非平凡卫星时使用（搜索过程）

    Raises:
        BoundViolation: 任一已证明的下界不成立（说明实现有 bug）
    """
    w, b, t = width(p), bridge_count(p), trunk_of(p)
    checks = [_check("trunk_width", trunk_width_bound(t), w)]

    n = spec.winding if spec is not None else winding
    companion_width = companion_bridge = None
    satellite_applies = winding is not None

    if spec is not None:
        companion_width = width(spec.companion)
        companion_bridge = bridge_count(spec.companion)
        satellite_applies = companion_bridge >= 2
        if not satellite_applies:
            logger.warning("Companion presentation is trivial; skipping satellite width and trunk bounds")
        checks.append(_check("schubert_bridge", schubert_bridge_bound(n, companion_bridge), b))

    if satellite_applies:
        checks.append(_check("satellite_width", satellite_width_bound(n), w))
        checks.append(_check("satellite_trunk", satellite_trunk_bound(n), t))

    if spec is not None and satellite_applies:
        checks.append(_check(
            "conjectured_width", conjectured_width_bound(n, companion_width), w, conjectural=True,
        ))

    report = BoundReport(
        width=w,
        bridge=b,
        trunk=t,
        winding=n,
        companion_width=companion_width,
        companion_bridge=companion_bridge,
        checks=checks,
        bridge_position=is_bridge_position(p),
        thin_certified=satellite_applies and w == satellite_width_bound(n),
    )

    failed = report.failed()
    if failed:
        detail = ", ".join(f"{c.name}: {c.value} < {c.bound}" for c in failed)
        raise BoundViolation(f"proven lower bound violated ({detail})")
    return report


def render_table(report: BoundReport) -> str:
    """人类可读的表格"""
    lines = [
        f"width   {report.width}",
        f"bridge  {report.bridge}",
        f"trunk   {report.trunk}",
    ]
    if report.winding is not None:
        lines.append(f"winding {report.winding}")
    if report.companion_width is not None:
        lines.append(f"companion width {report.companion_width} bridge {report.companion_bridge} (presentation invariants)")
    lines.append("")
    lines.append(f"{'check':<20}{'bound':>8}{'value':>8}  status")
    for c in report.checks:
        if c.conjectural:
            status = "conjectural, holds" if c.satisfied else "conjectural, fails"
        else:
            status = "ok" if c.satisfied else "VIOLATED"
        if c.tight:
            status += ", tight"
        lines.append(f"{c.name:<20}{c.bound:>8}{c.value:>8}  {status}")
    lines.append("")
    lines.append(f"bridge position: {'yes' if report.bridge_position else 'no'}")
    if report.thin_certified:
        lines.append("thin position: certified by the satellite width bound")
    return "\n".join(lines) + "\n"
