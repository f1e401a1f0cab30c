from fastapi import APIRouter

from src.api.dependencies import ResultsDep
from src.exceptions import (
    ConfigurationException,
    ConfigurationHTTPException,
    ConfigValidationException,
    ConfigValidationHTTPException,
    UnknownBaselineException,
    UnknownBaselineHTTPException,
)
from src.schemas.experiments import ExperimentRequest
from src.services.harness import HarnessService

router = APIRouter(prefix="/experiments", tags=["Эксперименты"])


@router.post("", summary="Запуск небольшого эксперимента и сводка регрета")
def run_experiment(data: ExperimentRequest, results: ResultsDep):
    service = HarnessService(results if data.write else None)
    try:
        summary = service.run(data.config)
    except ConfigValidationException as ex:
        raise ConfigValidationHTTPException(detail=ex.errors) from ex
    except UnknownBaselineException as ex:
        raise UnknownBaselineHTTPException(detail=ex.detail) from ex
    except ConfigurationException as ex:
        raise ConfigurationHTTPException(detail=ex.detail) from ex
    return {"status": "OK", "data": summary}
