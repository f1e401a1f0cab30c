import logging
import shutil
import tempfile
from pathlib import Path

from src.exceptions import UnwritablePathException
from src.repositories.configs import ConfigsRepository
from src.repositories.grids import GridsRepository
from src.repositories.paths import PathsRepository
from src.repositories.traces import TracesRepository


class ResultsManager:
    """Каталог результатов: запись идёт во временный каталог и переносится в root при commit"""

    def __init__(self, root: Path | str):
        self.root = Path(root)

    def __enter__(self):
        try:
            self.root.mkdir(parents=True, exist_ok=True)
            self.staging = Path(tempfile.mkdtemp(prefix=".staging-", dir=self.root))
        except OSError as ex:
            raise UnwritablePathException(f"Каталог {self.root} недоступен для записи: {ex}") from ex

        self.paths = PathsRepository(self.staging)
        self.grids = GridsRepository(self.staging)
        self.traces = TracesRepository(self.staging)
        self.configs = ConfigsRepository(self.staging)

        return self

    def __exit__(self, *args):
        shutil.rmtree(self.staging, ignore_errors=True)

    def commit(self) -> list[Path]:
        written = []
        try:
            for source in sorted(p for p in self.staging.rglob("*") if p.is_file()):
                target = self.root / source.relative_to(self.staging)
                target.parent.mkdir(parents=True, exist_ok=True)
                shutil.move(source, target)
                written.append(target)
        except OSError as ex:
            raise UnwritablePathException(f"Не удалось перенести результаты в {self.root}: {ex}") from ex
        logging.info(f"✅ Записано файлов: {len(written)} в {self.root}")
        return written
