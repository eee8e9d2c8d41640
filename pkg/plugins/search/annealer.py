"""
Width Search - 模拟退火寻找更薄的 Morse 表示

每条链从同一个初始词出发，用各自的决定性种子随机游走；
接受概率 exp(−Δw / T)，T 每轮乘以 decay。
各链的最优结果按 (宽度, 词长, 字典序, 链号) 合并，
并行与串行运行结果一致。

移动集合保持纽结类型，但不保证能到达所有表示：结果只是 w(K) 的上界。
"""

import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

from tqdm import tqdm

from core.errors import BoundViolation, InvariantMismatch
from plugins.bounds.audit import satellite_width_bound
from plugins.morse.presentation import MorsePresentation, width
from plugins.search.moves import apply_move, predicted_delta, propose_move

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    max_iterations: int = 10_000
    initial_temperature: float = 2.0
    decay: float = 0.999
    chains: int = 1
    max_events: int = 200
    workers: int = 1
    show_progress: bool = False
    winding: Optional[int] = None     # 已知为非平凡卫星时，搜索中断言 w ≥ 8n²

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if not 0 < self.decay < 1:
            raise ValueError(f"decay must lie in (0, 1), got {self.decay}")
        if self.chains < 1:
            raise ValueError(f"chains must be >= 1, got {self.chains}")
        if self.initial_temperature <= 0:
            raise ValueError(f"initial_temperature must be positive, got {self.initial_temperature}")


@dataclass(frozen=True)
class SearchResult:
    best: MorsePresentation
    width: int
    initial_width: int
    iterations: int
    accepted: int
    chain: int
    trace: Tuple[str, ...] = ()

    def rank(self) -> tuple:
        return (self.width, len(self.best), self.best.sort_key(), self.chain)


def chain_seed(seed: int, chain: int) -> int:
    return seed * 1_000_003 + chain


def run_chain(p: MorsePresentation, cfg: SearchConfig, chain: int = 0) -> SearchResult:
    """
    运行一条退火链。

    trace 记录该链最优宽度每次下降时的一行：`iter <k> width <w> move <kind>`。

    Raises:
        BoundViolation: 卫星的某个可达状态宽度低于 8n²
    """
    rng = random.Random(chain_seed(cfg.seed, chain))
    floor = satellite_width_bound(cfg.winding) if cfg.winding else None

    current = p
    current_w = width(p)
    best, best_w = current, current_w
    temperature = cfg.initial_temperature
    accepted = 0
    trace: List[str] = []

    iterations = tqdm(
        range(1, cfg.max_iterations + 1),
        desc=f"chain {chain}",
        disable=not cfg.show_progress,
        leave=False,
    )
    for it in iterations:
        move = propose_move(current, rng, cfg.max_events)
        if move is not None:
            delta = predicted_delta(current, move)
            if delta <= 0 or rng.random() < math.exp(-delta / temperature):
                current = apply_move(current, move)
                accepted += 1
                actual = width(current)
                if actual != current_w + delta:
                    raise InvariantMismatch(f"move {move} changed width by {actual - current_w}, predicted {delta}")
                current_w = actual
                if floor is not None and current_w < floor:
                    raise BoundViolation(f"reached width {current_w} below the satellite bound {floor}")

                if (current_w, len(current), current.sort_key()) < (best_w, len(best), best.sort_key()):
                    best, best_w = current, current_w
                    trace.append(f"iter {it} width {best_w} move {move.kind.value}")
                    logger.debug(f"chain {chain}: {trace[-1]}")
        temperature = max(temperature * cfg.decay, 1e-9)

    return SearchResult(
        best=best,
        width=best_w,
        initial_width=width(p),
        iterations=cfg.max_iterations,
        accepted=accepted,
        chain=chain,
        trace=tuple(trace),
    )


def minimize_width(p: MorsePresentation, cfg: SearchConfig) -> SearchResult:
    """
    多链退火，返回合并后的最优结果（预算耗尽时返回当前最优）。
    """
    chains = range(cfg.chains)
    if cfg.workers > 1 and cfg.chains > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(run_chain, [p] * cfg.chains, [cfg] * cfg.chains, chains))
    else:
        results = [run_chain(p, cfg, c) for c in chains]

    best = min(results, key=SearchResult.rank)
    logger.info(f"Width search: {best.initial_width} -> {best.width} (chain {best.chain} of {cfg.chains})")
    return best


class WidthSearch:
    """宽度搜索服务：从 search.* 配置构造 SearchConfig"""

    from core.registry import ModuleRegistration, ModuleType, Capability, ConstructorParam
    REGISTRATION = ModuleRegistration(
        name="width_search",
        module_type=ModuleType.CORE_SERVICE,
        display_name="宽度搜索",
        description="对 Morse 表示做模拟退火，寻找宽度更小的表示",
        constructor_params=[
            ConstructorParam(name="seed", from_config="search.seed", default=0, cast=int),
            ConstructorParam(name="max_iterations", from_config="search.max_iterations", default=10_000, cast=int),
            ConstructorParam(name="initial_temperature", from_config="search.initial_temperature", default=2.0, cast=float),
            ConstructorParam(name="decay", from_config="search.decay", default=0.999, cast=float),
            ConstructorParam(name="chains", from_config="search.chains", default=1, cast=int),
            ConstructorParam(name="max_events", from_config="search.max_events", default=200, cast=int),
            ConstructorParam(name="workers", from_config="search.workers", default=1, cast=int),
            ConstructorParam(name="show_progress", from_config="search.show_progress", default=False),
        ],
        capabilities=[
            Capability(name="minimize_width", description="搜索更薄的 Morse 表示", tags=["search", "width"], expensive=True),
        ],
    )
    del ModuleRegistration, ModuleType, Capability, ConstructorParam

    def __init__(self, **params):
        self.defaults = SearchConfig(**params)

    def config(self, **overrides) -> SearchConfig:
        """在配置默认值上覆盖非 None 的参数"""
        values = {k: v for k, v in overrides.items() if v is not None}
        return replace(self.defaults, **values)

    def run(self, p: MorsePresentation, **overrides) -> SearchResult:
        return minimize_width(p, self.config(**overrides))
