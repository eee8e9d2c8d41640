"""
Satellite Width Toolkit - 命令行入口

子命令：validate、invariants、satellite、sweep、search、foliation、catalog list、serve。
退出码：0 成功，1 用法错误，2 解析/校验错误，3 领域错误，4 内部一致性错误。
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from core.config import load_app_config
from core.errors import BoundViolation, NoWitness, SatWidthError
from core.registry import get_registry

logger = logging.getLogger(__name__)


class UsageParser(argparse.ArgumentParser):
    """用法错误统一以退出码 1 结束"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _satellite_args(sub: argparse.ArgumentParser):
    sub.add_argument('companion', help='目录中的纽结名或 .morse 文件')
    sub.add_argument('--braid', required=True, help=".braid 文件或内联形式，如 'index 2; s+ 1'")
    sub.add_argument('--framing', type=int, default=0, help='全扭转数 f')
    sub.add_argument('--site', type=int, default=0, help='插入式样的伴随 cup 序号')


def build_parser() -> argparse.ArgumentParser:
    parser = UsageParser(prog='satwidth', description='卫星纽结宽度工具箱')
    parser.add_argument('--config', type=str, default='config/config.yaml', help='配置文件路径')
    parser.add_argument('--json', action='store_true', help='输出 JSON 报告')
    parser.add_argument('--verbose', '-v', action='store_true', help='输出 INFO 日志')
    commands = parser.add_subparsers(dest='command', required=True, parser_class=UsageParser)

    sub = commands.add_parser('validate', help='校验 .morse 文件')
    sub.add_argument('input')

    sub = commands.add_parser('invariants', help='宽度、桥数、trunk 与下界审计')
    sub.add_argument('input', help='目录中的纽结名或 .morse 文件')

    sub = commands.add_parser('satellite', help='构造标准卫星表示')
    _satellite_args(sub)
    sub.add_argument('--out', type=str, help='写出缆的 .morse 文件')

    sub = commands.add_parser('sweep', help='逐层构造 Γ_r 并检查 trunk(r) 下界')
    _satellite_args(sub)
    sub.add_argument('--dot', type=str, help='每层写一个 dot 文件的目录')

    sub = commands.add_parser('foliation', help='输出伴随环面的叶状结构词')
    sub.add_argument('companion', nargs='?', help='目录中的纽结名或 .morse 文件')
    sub.add_argument('--braid', help=".braid 文件或内联形式")
    sub.add_argument('--framing', type=int, default=0)
    sub.add_argument('--site', type=int, default=0)
    sub.add_argument('--fol', type=str, help='改为读取 .fol 文件')
    sub.add_argument('--eliminate', action='store_true', help='消去非本质鞍点')

    sub = commands.add_parser('search', help='模拟退火搜索更薄的表示')
    sub.add_argument('input', help='目录中的纽结名或 .morse 文件')
    sub.add_argument('--seed', type=int)
    sub.add_argument('--iters', type=int)
    sub.add_argument('--chains', type=int)
    sub.add_argument('--workers', type=int)
    sub.add_argument('--winding', type=int, help='输入是绕数 n 的非平凡卫星时断言 w ≥ 8n²')
    sub.add_argument('--out', type=str, help='写出最优 .morse 文件')
    sub.add_argument('--trace', action='store_true', help='输出搜索轨迹')

    sub = commands.add_parser('catalog', help='内置纽结目录')
    sub.add_argument('action', choices=['list'])

    commands.add_parser('serve', help='启动 FastAPI 服务 (port 8000)')
    return parser


class Toolkit:
    """命令实现；目录与搜索服务从 Registry 获取"""

    def __init__(self, config_path=None):
        self.config = load_app_config(config_path)
        self._registry = get_registry()
        self._registry.auto_discover(['plugins'])
        # 目录在启动时构建并自检，声明与计算不符时任何命令都以 CatalogMismatch 中止
        self._catalog = self._registry.get_instance('knot_catalog', self.config)

    @property
    def catalog(self):
        return self._catalog

    @property
    def search(self):
        return self._registry.get_instance('width_search', self.config)

    def _spec(self, args):
        from plugins.catalog.reports import resolve_braid
        from plugins.satellite.cable import SatelliteSpec

        return SatelliteSpec(
            companion=self.catalog.resolve(args.companion),
            pattern=resolve_braid(args.braid),
            framing_twists=args.framing,
            insertion_site=args.site,
        )

    def validate(self, args, as_json: bool) -> str:
        from plugins.morse.codec import load_morse

        p = load_morse(Path(args.input))
        if as_json:
            return json.dumps({"valid": True, "events": len(p)}, indent=2) + "\n"
        return f"ok: {len(p)} events\n"

    def invariants(self, args, as_json: bool) -> str:
        from plugins.catalog.reports import invariants_report, render_invariants, to_json

        report = invariants_report(self.catalog.resolve(args.input))
        return to_json(report) if as_json else render_invariants(report)

    def satellite(self, args, as_json: bool) -> str:
        from plugins.bounds.audit import render_table
        from plugins.catalog.reports import satellite_report, to_json
        from plugins.morse.codec import save_morse

        word, report = satellite_report(self._spec(args))
        if args.out:
            save_morse(word, Path(args.out))
        if as_json:
            return to_json(report)
        header = f"satellite: winding {report.winding}, framing {report.framing_twists}, {report.events} events\n"
        return header + render_table(report.bounds)

    def sweep(self, args, as_json: bool) -> str:
        from plugins.catalog.reports import render_sweep, sweep, sweep_report, to_json
        from plugins.levelgraph.graph import build_graph

        spec = self._spec(args)
        levels = sweep(spec)
        report = sweep_report(spec, levels)

        if args.dot:
            dot_dir = Path(args.dot)
            dot_dir.mkdir(parents=True, exist_ok=True)
            for i, s in enumerate(levels):
                (dot_dir / f"level_{i:03d}.dot").write_text(build_graph(s).to_dot(f"level_{i}"), encoding="utf-8")
            logger.info(f"Wrote {len(levels)} dot files to {dot_dir}")

        out = to_json(report) if as_json else render_sweep(report)
        if report.witness is None:
            sys.stdout.write(out)
            raise NoWitness("no swept level has trunk(r) >= 3")
        failed = [row.level for row in report.levels if not row.passed]
        if failed:
            sys.stdout.write(out)
            raise BoundViolation(f"levels {failed} fail the trunk(r) point bound")
        return out

    def foliation(self, args, as_json: bool) -> str:
        from plugins.foliation.elimination import disk_extremum_audit, eliminate_inessential_saddles
        from plugins.foliation.induced import induced_foliation
        from plugins.foliation.word import load_foliation, serialize_foliation

        if args.fol:
            fw = load_foliation(Path(args.fol))
        elif args.companion and args.braid:
            fw = induced_foliation(self._spec(args))
        else:
            raise SatWidthError("foliation needs either --fol or a companion with --braid")

        if args.eliminate:
            fw = eliminate_inessential_saddles(fw)
        if as_json:
            data = {"events": [str(ev) for ev in fw.events]}
            if args.eliminate:
                data["disk_extremum_audit"] = disk_extremum_audit(fw)
            return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
        return serialize_foliation(fw)

    def run_search(self, args, as_json: bool) -> str:
        from plugins.bounds.audit import audit, render_table
        from plugins.morse.codec import save_morse, serialize_morse
        from plugins.search.annealer import SearchResult
        from plugins.morse.presentation import width

        p = self.catalog.resolve(args.input)
        if args.iters == 0:
            result = SearchResult(best=p, width=width(p), initial_width=width(p), iterations=0, accepted=0, chain=0)
        else:
            result = self.search.run(
                p,
                seed=args.seed,
                max_iterations=args.iters,
                chains=args.chains,
                workers=args.workers,
                winding=args.winding,
            )

        report = audit(result.best, winding=args.winding)
        if args.out:
            save_morse(result.best, Path(args.out))

        if as_json:
            data = {
                "initial_width": result.initial_width,
                "width": result.width,
                "chain": result.chain,
                "accepted": result.accepted,
                "bounds": report.model_dump(mode="json"),
                "morse": serialize_morse(result.best),
            }
            if args.trace:
                data["trace"] = list(result.trace)
            return json.dumps(data, indent=2, ensure_ascii=False) + "\n"

        lines = [f"width {result.initial_width} -> {result.width} (chain {result.chain}, {result.accepted} accepted moves)"]
        if args.trace:
            lines.extend(result.trace)
        return "\n".join(lines) + "\n" + render_table(report) + "\n" + serialize_morse(result.best)

    def list_catalog(self, args, as_json: bool) -> str:
        entries = [self.catalog.entry(name) for name in self.catalog.names()]
        if as_json:
            return json.dumps({"knots": [e.to_dict() for e in entries]}, indent=2) + "\n"
        lines = [f"{'name':<14}{'bridge':>7}{'width':>7}  flags"]
        for e in entries:
            flags = [f for f, on in (("2-bridge", e.two_bridge), ("nontrivial", e.nontrivial)) if on]
            lines.append(f"{e.name:<14}{e.bridge:>7}{e.width:>7}  {', '.join(flags) or '-'}")
        return "\n".join(lines) + "\n"

    def start_server(self):
        """启动 FastAPI 服务"""
        import uvicorn
        uvicorn.run("backend.main:app", host="0.0.0.0", port=8000, reload=True)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.getLogger().setLevel(logging.INFO if args.verbose else logging.WARNING)

    config_path = Path(args.config)
    if not config_path.exists() and config_path.name != 'config.yaml':
        logger.warning(f"Config file not found: {config_path}, using defaults")

    as_json = args.json or False
    try:
        toolkit = Toolkit(config_path)
        as_json = as_json or bool(toolkit.config['output'].get('json'))
        if args.command == 'serve':
            toolkit.start_server()
            return 0
        handler = {
            'validate': toolkit.validate,
            'invariants': toolkit.invariants,
            'satellite': toolkit.satellite,
            'sweep': toolkit.sweep,
            'foliation': toolkit.foliation,
            'search': toolkit.run_search,
            'catalog': toolkit.list_catalog,
        }[args.command]
        sys.stdout.write(handler(args, as_json))
    except SatWidthError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
