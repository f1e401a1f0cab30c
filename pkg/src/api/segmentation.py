from fastapi import APIRouter

from src.exceptions import (
    ConfigurationException,
    ConfigurationHTTPException,
    ContractViolationException,
    ContractViolationHTTPException,
)
from src.schemas.segmentation import LipschitzSegmentationRequest, StronglyConvexSegmentationRequest
from src.services.tools import SegmentationService

router = APIRouter(prefix="/segmentation", tags=["Разбиение на куски"])


@router.post("/strongly-convex", summary="Жадное разбиение по пути минимизаторов")
def segment_strongly_convex(data: StronglyConvexSegmentationRequest):
    try:
        segmentation = SegmentationService().strongly_convex(data)
    except ConfigurationException as ex:
        raise ConfigurationHTTPException(detail=ex.detail) from ex
    except ContractViolationException as ex:
        raise ContractViolationHTTPException(detail=ex.detail) from ex
    return {"status": "OK", "data": segmentation}


@router.post("/lipschitz", summary="Жадное разбиение по sup-расстояниям между функциями")
def segment_lipschitz(data: LipschitzSegmentationRequest):
    try:
        segmentation = SegmentationService().lipschitz(data)
    except ConfigurationException as ex:
        raise ConfigurationHTTPException(detail=ex.detail) from ex
    except ContractViolationException as ex:
        raise ContractViolationHTTPException(detail=ex.detail) from ex
    return {"status": "OK", "data": segmentation}
