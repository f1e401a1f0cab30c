from fastapi import HTTPException


class SawsException(Exception):
    detail = "Неожиданная ошибка"

    def __init__(self, detail: str | None = None):
        if detail is not None:
            self.detail = detail
        super().__init__(self.detail)


class SawsHTTPException(HTTPException):
    status_code = 500
    detail = None

    def __init__(self, detail: str | list[str] | None = None):
        super().__init__(status_code=self.status_code, detail=detail or self.detail)


class ContractViolationException(SawsException):
    detail = "Нарушено предусловие операции"


class DimensionMismatchException(ContractViolationException):
    detail = "Размерность вектора не совпадает с размерностью задачи"


class GridMismatchException(ContractViolationException):
    detail = "Функции заданы на разных сетках"


class EmptyCandidatesException(ContractViolationException):
    detail = "Список окон-кандидатов пуст"


class WindowOutOfRangeException(SawsException):
    detail = "Окно должно удовлетворять 1 ≤ k ≤ n−1"


class ConfigurationException(SawsException):
    detail = "Параметр вне допустимой области"


class MonteCarloSeedException(ConfigurationException):
    detail = "Для оценки Монте-Карло нужен seed"


class ConfigValidationException(ConfigurationException):
    detail = "Конфигурация эксперимента не прошла проверку"

    def __init__(self, errors: list[str]):
        self.errors = errors
        super().__init__(f"{self.detail}: " + "; ".join(errors))


class UnknownBaselineException(SawsException):
    detail = "Неизвестный тип базового алгоритма"


class UnwritablePathException(SawsException):
    detail = "Невозможно записать результаты по указанному пути"


class ContractViolationHTTPException(SawsHTTPException):
    status_code = 422
    detail = "Нарушено предусловие операции"


class ConfigurationHTTPException(SawsHTTPException):
    status_code = 400
    detail = "Параметр вне допустимой области"


class UnknownBaselineHTTPException(SawsHTTPException):
    status_code = 404
    detail = "Неизвестный тип базового алгоритма"


class ConfigValidationHTTPException(SawsHTTPException):
    status_code = 422
    detail = "Конфигурация эксперимента не прошла проверку"
