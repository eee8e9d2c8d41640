"""
Knot Catalog - 内置纽结目录

catalog.yaml 列出每个纽结的 .morse 文件和声明的桥数、宽度；
启动时逐项核对（声明值 vs 计算值），不一致即中止。
"""

import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, List

import yaml

from core.errors import CatalogMismatch, UnknownKnot
from plugins.morse.codec import load_morse
from plugins.morse.presentation import MorsePresentation, bridge_count, width

logger = logging.getLogger(__name__)

_PROJECT_ROOT = Path(__file__).resolve().parents[2]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    file: str
    bridge: int
    width: int
    two_bridge: bool = False
    nontrivial: bool = True

    def to_dict(self) -> Dict:
        return asdict(self)


class KnotCatalog:
    """纽结目录管理器"""

    from core.registry import ModuleRegistration, ModuleType, Capability, ConstructorParam
    REGISTRATION = ModuleRegistration(
        name="knot_catalog",
        module_type=ModuleType.MANAGER,
        display_name="纽结目录",
        description="内置伴随纽结（三叶结、8 字结、平凡结）的 Morse 表示",
        constructor_params=[
            ConstructorParam(name="catalog_dir", from_config="catalog.dir", default="catalog", cast=Path),
        ],
        capabilities=[
            Capability(name="list_knots", description="列出目录中的纽结", tags=["catalog", "list"]),
            Capability(name="load_knot", description="按名称读取纽结的 Morse 表示", tags=["catalog", "knot"]),
        ],
    )
    del ModuleRegistration, ModuleType, Capability, ConstructorParam

    def __init__(self, catalog_dir: Path = Path("catalog")):
        """
        初始化目录并执行自检

        Args:
            catalog_dir: 含 catalog.yaml 的目录；相对路径找不到时相对项目根目录解析
        """
        catalog_dir = Path(catalog_dir)
        if not catalog_dir.is_absolute() and not catalog_dir.exists():
            catalog_dir = _PROJECT_ROOT / catalog_dir
        self.catalog_dir = catalog_dir

        index_path = self.catalog_dir / "catalog.yaml"
        if not index_path.exists():
            raise CatalogMismatch(f"catalog index not found: {index_path}")
        with open(index_path, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f) or {}

        self.entries: Dict[str, CatalogEntry] = {}
        for item in data.get("knots", []):
            entry = CatalogEntry(**item)
            self.entries[entry.name] = entry

        self._words: Dict[str, MorsePresentation] = {}
        self.self_check()
        logger.info(f"Knot catalog loaded: {len(self.entries)} knots from {self.catalog_dir}")

    def self_check(self):
        """
        Raises:
            CatalogMismatch: 声明的桥数/宽度与计算值不一致，或 2-桥纽结的声明值不是 (2, 8)
        """
        for entry in self.entries.values():
            word = load_morse(self.catalog_dir / entry.file)
            computed = (bridge_count(word), width(word))
            if computed != (entry.bridge, entry.width):
                raise CatalogMismatch(
                    f"{entry.name}: declared bridge/width {(entry.bridge, entry.width)}, computed {computed}"
                )
            if entry.two_bridge and computed != (2, 8):
                raise CatalogMismatch(f"{entry.name} is declared 2-bridge but has bridge/width {computed}")
            self._words[entry.name] = word

    def names(self) -> List[str]:
        return list(self.entries)

    def entry(self, name: str) -> CatalogEntry:
        if name not in self.entries:
            raise UnknownKnot(f"no catalog knot named {name!r} (known: {', '.join(self.entries)})")
        return self.entries[name]

    def load(self, name: str) -> MorsePresentation:
        self.entry(name)
        return self._words[name]

    def resolve(self, ref: str) -> MorsePresentation:
        """目录名或 .morse 文件路径"""
        if ref in self.entries:
            return self._words[ref]
        path = Path(ref)
        if path.exists():
            return load_morse(path)
        raise UnknownKnot(f"{ref!r} is neither a catalog knot nor a readable .morse file")

    def two_bridge(self) -> List[CatalogEntry]:
        return [e for e in self.entries.values() if e.two_bridge]
