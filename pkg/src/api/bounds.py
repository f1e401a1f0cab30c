from fastapi import APIRouter, Query

from src.exceptions import (
    ConfigurationException,
    ConfigurationHTTPException,
    ContractViolationException,
    ContractViolationHTTPException,
)
from src.models.types import Regularity
from src.schemas.bounds import CertificateRequest, LowerBoundRequest
from src.services.tools import BoundsService

router = APIRouter(prefix="/bounds", tags=["Оценки регрета"])


@router.get("/tv-regret", summary="Эталонная верхняя оценка регрета через полную вариацию")
def get_tv_regret(
    regime: Regularity = Query(description="Класс потерь"),
    V: float = Query(ge=0, description="Полная вариация пути"),
    N: int = Query(ge=1, description="Горизонт"),
    d: int = Query(1, ge=1),
    B: int = Query(1, ge=1),
):
    return {"status": "OK", "data": BoundsService().tv_regret(regime, V, N, d, B)}


@router.post("/lower", summary="Нижняя оценка регрета для класса с кусками и скачками")
def get_lower_bound(data: LowerBoundRequest):
    try:
        value = BoundsService().lower(data)
    except ConfigurationException as ex:
        raise ConfigurationHTTPException(detail=ex.detail) from ex
    return {"status": "OK", "data": value}


@router.post("/certificate", summary="Сертификат верхней оценки регрета по разбиению")
def get_certificate(data: CertificateRequest):
    try:
        certificate = BoundsService().certificate(data)
    except ConfigurationException as ex:
        raise ConfigurationHTTPException(detail=ex.detail) from ex
    except ContractViolationException as ex:
        raise ContractViolationHTTPException(detail=ex.detail) from ex
    return {"status": "OK", "data": certificate}
