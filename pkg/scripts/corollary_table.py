#!/usr/bin/env python3
"""
卫星宽度复现表

对目录中每个 2-桥伴随纽结和 n = 1..N，用 n-股缆（σ1 σ2 … σ_{n−1}）构造标准卫星表示，
打印 w、b、trunk 与 8n²、2n、4n 的对照。
"""

import argparse
import sys
from pathlib import Path

# 添加项目根目录到路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from plugins.bounds.audit import satellite_trunk_bound, satellite_width_bound
from plugins.catalog.manager import KnotCatalog
from plugins.satellite.braid import BraidLetter, BraidWord
from plugins.satellite.cable import SatelliteSpec, canonical_invariants


def cable_pattern(n: int) -> BraidWord:
    """(n,1)-缆式样 σ1 σ2 … σ_{n−1}，置换是 n-轮换"""
    return BraidWord(n, tuple(BraidLetter(j, 1) for j in range(1, n)))


def rows(catalog: KnotCatalog, max_n: int):
    for entry in catalog.two_bridge():
        companion = catalog.load(entry.name)
        for n in range(1, max_n + 1):
            inv = canonical_invariants(SatelliteSpec(companion, cable_pattern(n)))
            yield entry.name, n, inv


def main():
    parser = argparse.ArgumentParser(description="2-桥伴随纽结的卫星宽度复现表")
    parser.add_argument('--max-n', type=int, default=4, help='最大绕数')
    parser.add_argument('--catalog', type=str, default='catalog', help='目录路径')
    args = parser.parse_args()

    catalog = KnotCatalog(catalog_dir=Path(args.catalog))
    print(f"{'companion':<14}{'n':>3}{'width':>8}{'8n²':>6}{'bridge':>8}{'2n':>5}{'trunk':>7}{'4n':>5}")
    ok = True
    for name, n, inv in rows(catalog, args.max_n):
        match = (inv.width, inv.bridge, inv.trunk) == (satellite_width_bound(n), 2 * n, satellite_trunk_bound(n))
        ok = ok and match
        print(
            f"{name:<14}{n:>3}{inv.width:>8}{satellite_width_bound(n):>6}"
            f"{inv.bridge:>8}{2 * n:>5}{inv.trunk:>7}{satellite_trunk_bound(n):>5}"
            f"{'' if match else '  MISMATCH'}"
        )
    return 0 if ok else 4


if __name__ == "__main__":
    sys.exit(main())
