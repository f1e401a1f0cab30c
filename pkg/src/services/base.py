from src.utils.results_manager import ResultsManager


class BaseService:
    def __init__(self, results: ResultsManager | None = None) -> None:
        self.results = results
