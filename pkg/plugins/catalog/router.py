"""纽结目录与不变量 API"""
from functools import lru_cache
from typing import Optional

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel

from core.config import get_app_config
from core.errors import DomainError, InternalError, SatWidthError
from core.registry import ModuleRegistration, ModuleType, Capability, InputSchema
from plugins.catalog.manager import KnotCatalog
from plugins.catalog.reports import invariants_report, resolve_braid, satellite_report, sweep_report
from plugins.morse.codec import parse_morse, serialize_morse
from plugins.satellite.cable import SatelliteSpec

router = APIRouter(prefix="/api/knots", tags=["knots"])


@lru_cache(maxsize=1)
def get_catalog() -> KnotCatalog:
    return KnotCatalog(catalog_dir=get_app_config()["catalog"]["dir"])


class InvariantsRequest(BaseModel):
    knot: Optional[str] = None      # 目录名
    morse: Optional[str] = None     # .morse 文本


class SatelliteRequest(BaseModel):
    companion: str
    braid: str                      # 内联形式，如 "index 2; s+ 1"
    framing: int = 0
    site: int = 0


def _status(e: SatWidthError) -> int:
    if isinstance(e, InternalError):
        return 500
    if isinstance(e, DomainError):
        return 422
    return 400


def _spec(req: SatelliteRequest) -> SatelliteSpec:
    return SatelliteSpec(
        companion=get_catalog().load(req.companion),
        pattern=resolve_braid(req.braid),
        framing_twists=req.framing,
        insertion_site=req.site,
    )


@router.get("/catalog")
async def list_catalog():
    catalog = get_catalog()
    return {"knots": [catalog.entry(name).to_dict() for name in catalog.names()]}


@router.post("/invariants")
async def invariants(req: InvariantsRequest):
    try:
        if req.knot is not None:
            p = get_catalog().load(req.knot)
        elif req.morse is not None:
            p = parse_morse(req.morse)
        else:
            raise HTTPException(status_code=400, detail="either knot or morse is required")
        return invariants_report(p).model_dump(mode="json")
    except SatWidthError as e:
        raise HTTPException(status_code=_status(e), detail=e.message)


@router.post("/satellite")
async def satellite(req: SatelliteRequest):
    try:
        word, report = satellite_report(_spec(req))
    except SatWidthError as e:
        raise HTTPException(status_code=_status(e), detail=e.message)
    return {"report": report.model_dump(mode="json"), "morse": serialize_morse(word)}


@router.post("/sweep")
async def sweep(req: SatelliteRequest):
    try:
        return sweep_report(_spec(req)).model_dump(mode="json")
    except SatWidthError as e:
        raise HTTPException(status_code=_status(e), detail=e.message)


# Router 注册元数据
ROUTER_REGISTRATION = ModuleRegistration(
    name="knots_router",
    module_type=ModuleType.TOOL,
    display_name="纽结不变量 API",
    description="纽结目录、宽度/桥数/trunk、卫星缆构造与层球面扫描",
    api_prefix="/api/knots",
    api_tags=["knots"],
    capabilities=[
        Capability(name="list_catalog", description="列出内置纽结", tags=["catalog", "list"]),
        Capability(
            name="compute_invariants",
            description="计算 Morse 表示的宽度、桥数、trunk 与下界审计",
            input_schema=[
                InputSchema(name="knot", type="str", description="目录中的纽结名", required=False),
                InputSchema(name="morse", type="str", description=".morse 文本", required=False),
            ],
            tags=["invariants"],
        ),
        Capability(
            name="build_satellite",
            description="用辫子式样缠绕伴随纽结并审计下界",
            input_schema=[
                InputSchema(name="companion", type="str", description="伴随纽结（目录名）"),
                InputSchema(name="braid", type="str", description="内联辫子式样"),
                InputSchema(name="framing", type="int", description="全扭转数", required=False),
                InputSchema(name="site", type="int", description="插入位置", required=False),
            ],
            tags=["satellite"],
        ),
        Capability(
            name="sweep_levels",
            description="逐层构造连通图 Γ_r 并检查 trunk(r) 下界",
            input_schema=[
                InputSchema(name="companion", type="str", description="伴随纽结（目录名）"),
                InputSchema(name="braid", type="str", description="内联辫子式样"),
            ],
            tags=["satellite", "sweep"],
            expensive=True,
        ),
    ],
)


async def get_stats():
    catalog = get_catalog()
    return {"knots": len(catalog.names()), "two_bridge": len(catalog.two_bridge())}
