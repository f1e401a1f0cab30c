from collections.abc import Sequence
from pathlib import Path

import pandas as pd

from src.exceptions import ContractViolationException
from src.repositories.base import BaseRepository
from src.repositories.mappers.mappers import LearnerSummaryDataMapper, RegretTraceDataMapper
from src.schemas.traces import ExperimentSummary, RegretTrace, SweepPoint


def _ordered(traces: Sequence[RegretTrace]) -> list[RegretTrace]:
    return sorted(traces, key=lambda trace: (trace.replication, trace.learner))


class TracesRepository(BaseRepository):
    mapper = RegretTraceDataMapper

    def add(self, trace: RegretTrace, subdir: str = "") -> Path:
        name = f"{trace.learner}_rep{trace.replication}.csv"
        return self.write_frame(
            self.mapper.map_to_persistence_entity(trace), name, str(Path(subdir, "traces"))
        )

    def add_bulk(self, traces: Sequence[RegretTrace], subdir: str = "") -> list[Path]:
        if not traces:
            raise ContractViolationException("Нет траекторий для записи")
        return [self.add(trace, subdir) for trace in _ordered(traces)]

    def add_plot_data(self, traces: Sequence[RegretTrace], subdir: str = "") -> Path:
        """Длинная таблица с ключом (learner, replication, n)"""
        if not traces:
            raise ContractViolationException("Нет траекторий для записи")
        frame = pd.concat(
            [self.mapper.map_to_plot_rows(trace) for trace in _ordered(traces)], ignore_index=True
        )
        return self.write_frame(frame, "plot_data.csv", subdir)

    def add_summary(self, summary: ExperimentSummary, subdir: str = "") -> Path:
        return self.write_text(summary.model_dump_json(indent=2) + "\n", "summary.json", subdir)

    def add_sweep(self, points: Sequence[SweepPoint], subdir: str = "") -> Path:
        frames = []
        for point in points:
            frame = LearnerSummaryDataMapper.map_to_persistence_entity(point.summary.learners)
            frame.insert(0, "value", point.value)
            frame.insert(0, "parameter", point.parameter)
            frames.append(frame)
        return self.write_frame(pd.concat(frames, ignore_index=True), "sweep_summary.csv", subdir)

    def get_one(self, source: Path | str) -> pd.DataFrame:
        return self.read_frame(source)
