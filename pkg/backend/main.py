"""
Satellite Width API

启动时加载配置、扫描 plugins/ 并挂载所有 ROUTER_REGISTRATION 路由。
路由内部没有接住的 SatWidthError 由全局处理器按异常层级转成 400 / 422 / 500。
"""
import logging
import sys
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

sys.path.insert(0, str(Path(__file__).parent.parent))

from core.config import load_app_config
from core.errors import DomainError, InternalError, SatWidthError
from core.registry import TOOL_PROVIDING_TYPES, get_registry

logger = logging.getLogger(__name__)

API_VERSION = "1.0.0"

app = FastAPI(
    title="Satellite Width API",
    description="Morse 表示的宽度 / 桥数 / trunk、卫星缆构造与层球面审计",
    version=API_VERSION,
)


@app.exception_handler(SatWidthError)
async def satwidth_error_handler(request: Request, exc: SatWidthError):
    if isinstance(exc, InternalError):
        status = 500
        logger.error(f"{request.url.path}: {type(exc).__name__}: {exc.message}")
    elif isinstance(exc, DomainError):
        status = 422
    else:
        status = 400
    return JSONResponse(
        status_code=status,
        content={"error": type(exc).__name__, "detail": exc.message, "exit_code": exc.exit_code},
    )


def _mount_routers():
    config = load_app_config()
    registry = get_registry()
    registry.auto_discover(['plugins'])

    for reg, router_obj in registry.get_router_objects():
        app.include_router(router_obj)
        logger.info(f"Mounted {reg.name} at {reg.api_prefix}")
    logger.info(f"Catalog dir: {config['catalog']['dir']}, search seed: {config['search']['seed']}")


_mount_routers()


@app.get("/")
async def root():
    """API 名称与挂载的路由前缀"""
    regs = get_registry().get_all_registrations()
    endpoints = sorted(
        [r.api_prefix for r in regs if r.module_type in TOOL_PROVIDING_TYPES and r.api_prefix] + ["/docs"]
    )
    return {
        "name": "Satellite Width API",
        "version": API_VERSION,
        "registered_modules": len(regs),
        "endpoints": endpoints,
    }


@app.get("/api/stats")
async def global_stats():
    """各路由模块 get_stats 的汇总，键为去掉 _router 的注册名"""
    return {domain: await handler() for domain, handler in get_registry().get_stats_handlers().items()}


@app.get("/api/registry")
async def registry_info():
    registry = get_registry()
    regs = registry.get_all_registrations()
    return {
        "total_modules": len(regs),
        "modules": [
            {
                "name": reg.name,
                "type": reg.module_type.value,
                "display_name": reg.display_name,
                "capabilities": [cap.name for cap in reg.capabilities],
                "expensive": [cap.name for cap in reg.capabilities if cap.expensive],
                "config_keys": [p.from_config for p in reg.constructor_params if p.from_config],
            }
            for reg in regs
        ],
        "capabilities_description": registry.describe_capabilities(),
    }


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
