import pytest

import core.config as config_module
from core.config import get_app_config, load_app_config
from core.registry import ModuleType, get_registry
from plugins.catalog.manager import KnotCatalog
from plugins.search.annealer import WidthSearch
from tests.conftest import PROJECT_ROOT


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch):
    monkeypatch.setattr(config_module, "_cached_config", None)
    for var in ("SATWIDTH_SEED", "SATWIDTH_ITERATIONS", "SATWIDTH_CHAINS", "SATWIDTH_CATALOG_DIR"):
        monkeypatch.delenv(var, raising=False)


def test_defaults_without_a_file(tmp_path):
    config = load_app_config(tmp_path / "missing.yaml")
    assert config["search"]["seed"] == 0
    assert config["search"]["max_iterations"] == 10000
    assert config["catalog"]["dir"] == "catalog"
    assert config["output"]["json"] is False
    assert get_app_config() is config


def test_yaml_values_fill_in_over_defaults(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("search:\n  chains: 3\noutput:\n  json: true\n", encoding="utf-8")
    config = load_app_config(path)
    assert config["search"]["chains"] == 3
    assert config["search"]["decay"] == 0.999
    assert config["output"]["json"] is True


def test_environment_overrides(tmp_path, monkeypatch):
    path = tmp_path / "config.yaml"
    path.write_text("search:\n  seed: 1\n", encoding="utf-8")
    monkeypatch.setenv("SATWIDTH_SEED", "7")
    monkeypatch.setenv("SATWIDTH_CHAINS", "many")
    config = load_app_config(path)
    assert config["search"]["seed"] == 7
    # 不能转换的值被忽略
    assert config["search"]["chains"] == 1


def test_example_config_loads():
    config = load_app_config(PROJECT_ROOT / "config" / "config.example.yaml")
    assert set(config) >= {"search", "catalog", "output"}


@pytest.fixture
def registry():
    reg = get_registry()
    reg.auto_discover(["plugins"])
    yield reg
    # 丢弃测试里按自定义配置创建的实例
    reg.unregister("width_search")
    reg.auto_discover(["plugins.search"])


def test_registrations_are_discovered(registry):
    catalog = registry.get_registration("knot_catalog")
    assert catalog.module_type is ModuleType.MANAGER
    assert catalog.cls is KnotCatalog

    search = registry.get_registration("width_search")
    assert search.module_type is ModuleType.CORE_SERVICE
    assert search.cls is WidthSearch

    router = registry.get_registration("knots_router")
    assert router.module_type is ModuleType.TOOL
    assert router.api_prefix == "/api/knots"
    assert registry.find_by_capability("sweep_levels") is router
    assert "  - sweep_levels:" in registry.describe_capabilities()


def test_constructor_params_come_from_config(registry):
    registry.unregister("width_search")
    registry.auto_discover(["plugins.search"])
    service = registry.get_instance("width_search", {"search": {"max_iterations": 50, "chains": 2}})
    assert service.defaults.max_iterations == 50
    assert service.defaults.chains == 2
    assert service.defaults.seed == 0


def test_unconvertible_config_value_is_rejected(registry):
    registry.unregister("width_search")
    registry.auto_discover(["plugins.search"])
    with pytest.raises(ValueError, match="search.chains"):
        registry.get_instance("width_search", {"search": {"chains": "many"}})
    # 失败的构造不留下缓存
    service = registry.get_instance("width_search", {"search": {"chains": "3"}})
    assert service.defaults.chains == 3
