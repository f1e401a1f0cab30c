from typing import Annotated

from fastapi import Depends

from src.config import settings
from src.utils.results_manager import ResultsManager


def get_results_manager():
    return ResultsManager(settings.RESULTS_PATH)


def get_results():
    with get_results_manager() as results:
        yield results


ResultsDep = Annotated[ResultsManager, Depends(get_results)]
