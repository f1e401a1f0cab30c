from fastapi import APIRouter, Body

from src.exceptions import ContractViolationException, ContractViolationHTTPException
from src.schemas.closeness import ClosenessRequest, SufficientRequest
from src.services.tools import ClosenessService

router = APIRouter(prefix="/closeness", tags=["Близость функций"])


@router.post("", summary="Минимальное δ* и проверка (ε, δ)-близости двух функций")
def compare_functions(
    data: ClosenessRequest = Body(
        openapi_examples={
            "1": {
                "summary": "Две параболы",
                "value": {
                    "f": {"grid": [0.0, 0.5, 1.0], "values": [0.0, 0.125, 0.5]},
                    "g": {"grid": [0.0, 0.5, 1.0], "values": [0.5, 0.125, 0.0]},
                    "epsilon": 0.0,
                    "delta": 0.5,
                },
            }
        }
    ),
):
    try:
        result = ClosenessService().compare(data)
    except ContractViolationException as ex:
        raise ContractViolationHTTPException(detail=ex.detail) from ex
    return {"status": "OK", "data": result}


@router.post("/sufficient", summary="Параметры близости из достаточного условия")
def closeness_from_condition(data: SufficientRequest):
    try:
        params = ClosenessService().from_sufficient(data)
    except ContractViolationException as ex:
        raise ContractViolationHTTPException(detail=ex.detail) from ex
    return {"status": "OK", "data": params}
