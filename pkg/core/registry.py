"""
Module Registry - 插件注册中心

plugins/ 下的目录管理器、宽度搜索服务和 /api/knots 路由通过 REGISTRATION
（类属性）或 ROUTER_REGISTRATION（模块级）声明自己；后端和 CLI 只通过注册名取实例，
构造参数按 ConstructorParam.from_config 从 search.* / catalog.* 配置读取。
"""

import importlib
import inspect
import logging
import pkgutil
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Type

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class ModuleType(Enum):
    """模块类型"""
    CORE_SERVICE = "core_service"   # 无状态计算服务，如 width_search
    MANAGER = "manager"             # 持有文件数据，如 knot_catalog
    ROUTER = "router"
    TOOL = "tool"                   # 带 API 的领域模块


# 后端只从这两类模块收集 router 和 get_stats
TOOL_PROVIDING_TYPES = {ModuleType.ROUTER, ModuleType.TOOL}


@dataclass
class InputSchema:
    """能力的输入字段"""
    name: str
    type: str = "str"
    description: str = ""
    required: bool = True


@dataclass
class Capability:
    """能力声明"""
    name: str                    # 如 "sweep_levels"，全局唯一
    description: str = ""
    input_schema: List[InputSchema] = field(default_factory=list)
    tags: List[str] = field(default_factory=list)
    expensive: bool = False      # 随输入规模明显变慢（扫描、退火）


@dataclass
class ConstructorParam:
    """
    从配置读取的构造参数

    from_config 是点分路径（如 "search.chains"）；cast 非空时对读到的值做类型转换，
    转换失败抛 ValueError，CLI 以退出码 1 结束。
    """
    name: str
    from_config: str = ""
    default: Any = None
    cast: Optional[Callable[[Any], Any]] = None


@dataclass
class ModuleRegistration:
    """模块注册元数据"""
    name: str
    module_type: ModuleType
    display_name: str = ""
    description: str = ""
    capabilities: List[Capability] = field(default_factory=list)
    constructor_params: List[ConstructorParam] = field(default_factory=list)

    # 仅路由
    api_prefix: Optional[str] = None
    api_tags: List[str] = field(default_factory=list)

    cls: Optional[Type] = None   # auto_discover 时绑定


class Registry:
    """模块注册中心"""

    def __init__(self):
        self._registrations: Dict[str, ModuleRegistration] = {}
        self._instances: Dict[str, Any] = {}
        self._capability_index: Dict[str, str] = {}   # capability -> module
        self._source_modules: Dict[str, Any] = {}

    def register(self, reg: ModuleRegistration):
        existing = self._registrations.get(reg.name)
        if existing is not None and existing.cls is not None and existing.cls is reg.cls:
            return

        for cap in reg.capabilities:
            owner = self._capability_index.get(cap.name)
            if owner is not None and owner != reg.name:
                logger.warning(f"Capability {cap.name} of {reg.name} shadows the one from {owner}")
            self._capability_index[cap.name] = reg.name

        self._registrations[reg.name] = reg
        logger.debug(f"Registered module: {reg.name} ({reg.module_type.value})")

    def unregister(self, name: str):
        """注销模块并丢弃缓存的实例"""
        reg = self._registrations.pop(name, None)
        if reg is None:
            return
        for cap in reg.capabilities:
            if self._capability_index.get(cap.name) == name:
                del self._capability_index[cap.name]
        self._instances.pop(name, None)
        self._source_modules.pop(name, None)
        logger.debug(f"Unregistered module: {name}")

    def get_registration(self, name: str) -> Optional[ModuleRegistration]:
        return self._registrations.get(name)

    def get_all_registrations(self, module_type: Optional[ModuleType] = None) -> List[ModuleRegistration]:
        regs = list(self._registrations.values())
        if module_type is not None:
            regs = [r for r in regs if r.module_type == module_type]
        return regs

    def find_by_capability(self, name: str) -> Optional[ModuleRegistration]:
        module_name = self._capability_index.get(name)
        return self._registrations.get(module_name) if module_name else None

    def describe_capabilities(self) -> str:
        """人类可读的能力清单，按模块类型分节"""
        sections: Dict[ModuleType, List[str]] = {}
        for reg in self._registrations.values():
            if not reg.capabilities:
                continue
            lines = [f"\n### {reg.display_name or reg.name}"]
            if reg.description:
                lines.append(f"  {reg.description}")
            for cap in reg.capabilities:
                suffix = " [耗时]" if cap.expensive else ""
                lines.append(f"  - {cap.name}: {cap.description}{suffix}")
                for field_ in cap.input_schema:
                    optional = "" if field_.required else ", 可选"
                    lines.append(f"      {field_.name} ({field_.type}{optional}) {field_.description}")
            sections.setdefault(reg.module_type, []).append("\n".join(lines))

        out = []
        for module_type, items in sections.items():
            out.append(f"\n## {module_type.value}")
            out.extend(items)
        return "\n".join(out)

    def get_instance(self, name: str, config: Optional[dict] = None) -> Any:
        """
        获取或创建实例，实例按注册名缓存

        Args:
            name: 注册名
            config: 应用配置，用来解析 constructor_params

        Raises:
            KeyError: 未注册
            ValueError: 没有绑定类，或配置值无法转换
        """
        if name in self._instances:
            return self._instances[name]

        reg = self._registrations.get(name)
        if reg is None:
            raise KeyError(f"Module not registered: {name}")
        if reg.cls is None:
            raise ValueError(f"Module {name} is module-level and cannot be instantiated")

        kwargs = {param.name: _resolve_param(param, config or {}) for param in reg.constructor_params}
        instance = reg.cls(**kwargs)
        self._instances[name] = instance
        logger.info(f"Created {name} with {kwargs}")
        return instance

    def auto_discover(self, package_paths: List[str]):
        """
        扫描包及其子模块，注册 REGISTRATION / ROUTER_REGISTRATION

        Args:
            package_paths: 如 ['plugins'] 或 ['plugins.search']
        """
        for package_path in package_paths:
            try:
                package = importlib.import_module(package_path)
            except ImportError as e:
                logger.warning(f"Cannot import package {package_path}: {e}")
                continue

            package_dir = getattr(package, '__path__', None)
            if not package_dir:
                self._scan_module(package)
                continue

            for _, modname, _ in pkgutil.walk_packages(package_dir, prefix=package_path + "."):
                try:
                    self._scan_module(importlib.import_module(modname))
                except ImportError as e:
                    logger.warning(f"Cannot import module {modname}: {e}")

    def _scan_module(self, module):
        for attr_name, obj in vars(module).items():
            if inspect.isclass(obj) and isinstance(getattr(obj, 'REGISTRATION', None), ModuleRegistration):
                # 只认本模块定义的类
                if obj.__module__ != module.__name__:
                    continue
                reg = obj.REGISTRATION
                if reg.cls is None:
                    reg.cls = obj
                self.register(reg)
                self._source_modules[reg.name] = module
            elif attr_name == 'ROUTER_REGISTRATION' and isinstance(obj, ModuleRegistration):
                self.register(obj)
                self._source_modules[obj.name] = module

    def get_router_objects(self) -> list:
        """[(reg, router), ...]：带模块级 router 的路由模块"""
        result = []
        for reg in self.get_all_registrations():
            module = self._source_modules.get(reg.name)
            if reg.module_type in TOOL_PROVIDING_TYPES and module is not None and hasattr(module, 'router'):
                result.append((reg, module.router))
        return result

    def get_stats_handlers(self) -> Dict[str, Callable]:
        """注册名去掉 _router 后缀 -> 该模块的 get_stats"""
        handlers = {}
        for reg, _ in self.get_router_objects():
            module = self._source_modules[reg.name]
            if hasattr(module, 'get_stats'):
                handlers[reg.name.removesuffix('_router')] = module.get_stats
        return handlers


def _resolve_param(param: ConstructorParam, config: dict) -> Any:
    value = param.default
    if param.from_config:
        current: Any = config
        for key in param.from_config.split("."):
            if not isinstance(current, dict) or key not in current:
                current = param.default
                break
            current = current[key]
        value = current
    if param.cast is not None and value is not None:
        try:
            value = param.cast(value)
        except (TypeError, ValueError) as e:
            raise ValueError(f"config {param.from_config or param.name}: cannot convert {value!r}: {e}") from e
    return value


_registry = Registry()


def get_registry() -> Registry:
    """进程内唯一的 Registry"""
    return _registry
