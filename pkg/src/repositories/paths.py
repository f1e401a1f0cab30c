from pathlib import Path

import numpy as np
import pandas as pd

from src.exceptions import ConfigurationException
from src.repositories.base import BaseRepository
from src.services.envgen import ParameterPath, PathMetric


class PathsRepository(BaseRepository):
    """Пути параметров в CSV: n, theta_1..theta_d"""

    def add(self, path: ParameterPath, name: str = "path.csv", subdir: str = "") -> Path:
        frame = pd.DataFrame(
            path.values, columns=[f"theta_{i}" for i in range(1, path.dimension + 1)]
        )
        frame.insert(0, "n", np.arange(1, path.horizon + 1))
        return self.write_frame(frame, name, subdir)

    def get_one(self, source: Path | str, metric: PathMetric = PathMetric.L2) -> ParameterPath:
        frame = self.read_frame(source)
        coordinates = [column for column in frame.columns if column != "n"]
        if "n" not in frame.columns or not coordinates:
            raise ConfigurationException(f"В {source} нужны столбцы n, theta_1..theta_d")
        periods = frame["n"].to_numpy()
        if not np.array_equal(periods, np.arange(1, len(frame) + 1)):
            raise ConfigurationException(f"Столбец n в {source} должен идти подряд с 1")
        values = frame[coordinates].to_numpy(dtype=np.float64)
        if not np.all(np.isfinite(values)):
            raise ConfigurationException(f"Путь в {source} содержит пропуски или бесконечности")
        return ParameterPath.from_values(values, "csv", metric=metric)
