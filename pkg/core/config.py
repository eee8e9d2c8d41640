"""
Shared config loader - 统一配置加载

加载 config.yaml 并应用环境变量覆盖。
CLI (main.py) 和 FastAPI (backend/main.py) 均使用此函数。

优先级：环境变量 > config.yaml > 内置默认值
"""
import copy
import os
from pathlib import Path
from typing import Optional
import logging

logger = logging.getLogger(__name__)

_DEFAULTS = {
    'search': {
        'seed': 0,
        'max_iterations': 10000,
        'initial_temperature': 2.0,
        'decay': 0.999,
        'chains': 1,
        'max_events': 200,
        'workers': 1,
        'show_progress': False,
    },
    'catalog': {
        'dir': 'catalog',
    },
    'output': {
        'dot_dir': 'output/dot',
        'json': False,
    },
}

# 环境变量 -> (section, key, 类型)
_ENV_MAP = {
    'SATWIDTH_SEED': ('search', 'seed', int),
    'SATWIDTH_ITERATIONS': ('search', 'max_iterations', int),
    'SATWIDTH_CHAINS': ('search', 'chains', int),
    'SATWIDTH_CATALOG_DIR': ('catalog', 'dir', str),
}

_cached_config: Optional[dict] = None


def load_app_config(config_path: Optional[Path] = None) -> dict:
    """
    加载应用配置：config.yaml + 环境变量覆盖。

    Args:
        config_path: 配置文件路径，默认为 config/config.yaml

    Returns:
        合并后的配置字典
    """
    global _cached_config

    config = {}

    if config_path is None:
        config_path = Path("config/config.yaml")
    config_path = Path(config_path)

    if config_path.exists():
        try:
            import yaml
            with open(config_path, 'r', encoding='utf-8') as f:
                config = yaml.safe_load(f) or {}
        except Exception as e:
            logger.warning(f"Failed to load config from {config_path}: {e}")

    # 每个 section 补齐默认值
    for section, defaults in _DEFAULTS.items():
        current = config.setdefault(section, {})
        for key, default_value in defaults.items():
            current.setdefault(key, copy.deepcopy(default_value))

    # Environment variable overrides (highest priority)
    _apply_env_overrides(config)

    _cached_config = config
    return config


def _apply_env_overrides(config: dict):
    """应用环境变量覆盖"""
    for env_var, (section, key, cast) in _ENV_MAP.items():
        value = os.environ.get(env_var)
        if not value:
            continue
        try:
            config[section][key] = cast(value)
        except ValueError:
            logger.warning(f"Ignoring {env_var}={value!r}: expected {cast.__name__}")


def get_app_config() -> dict:
    """获取已加载的应用配置（lazy load）"""
    global _cached_config
    if _cached_config is None:
        _cached_config = load_app_config()
    return _cached_config
