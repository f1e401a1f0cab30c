import logging
from pathlib import Path

import pandas as pd

from src.exceptions import ConfigurationException, UnwritablePathException
from src.repositories.mappers.base import DataMapper


class BaseRepository:
    """Доступ к плоским файлам результатов внутри одного каталога"""

    mapper: DataMapper = None

    def __init__(self, directory: Path):
        self.directory = Path(directory)

    def target(self, name: str, subdir: str = "") -> Path:
        return self.directory / subdir / name

    def write_frame(self, frame: pd.DataFrame, name: str, subdir: str = "") -> Path:
        path = self.target(name, subdir)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            frame.to_csv(path, index=False, lineterminator="\n")
        except OSError as ex:
            raise UnwritablePathException(f"Не удалось записать {path}: {ex}") from ex
        return path

    def write_text(self, text: str, name: str, subdir: str = "") -> Path:
        path = self.target(name, subdir)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        except OSError as ex:
            raise UnwritablePathException(f"Не удалось записать {path}: {ex}") from ex
        return path

    @staticmethod
    def read_frame(path: Path | str) -> pd.DataFrame:
        try:
            return pd.read_csv(path)
        except FileNotFoundError as ex:
            raise ConfigurationException(f"Файл {path} не найден") from ex
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as ex:
            logging.error(f"❌ Не удалось разобрать CSV {path}: {ex}")
            raise ConfigurationException(f"Файл {path} не является корректным CSV") from ex
