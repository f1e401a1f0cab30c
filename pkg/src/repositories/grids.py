from pathlib import Path

import pandas as pd

from src.exceptions import ConfigurationException
from src.repositories.base import BaseRepository
from src.services.closeness import GridFunction


class GridsRepository(BaseRepository):
    """Функции на сетке в CSV: x_1..x_g, value"""

    def add(self, function: GridFunction, name: str, subdir: str = "") -> Path:
        frame = pd.DataFrame(
            function.grid, columns=[f"x_{i}" for i in range(1, function.grid.shape[1] + 1)]
        )
        frame["value"] = function.values
        return self.write_frame(frame, name, subdir)

    def get_one(self, source: Path | str) -> GridFunction:
        frame = self.read_frame(source)
        axes = [column for column in frame.columns if column != "value"]
        if "value" not in frame.columns or not axes:
            raise ConfigurationException(f"В {source} нужны столбцы x_1..x_g и value")
        return GridFunction(frame[axes].to_numpy(dtype=float), frame["value"].to_numpy(dtype=float))
