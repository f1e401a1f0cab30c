import numpy as np
import pandas as pd

from src.repositories.mappers.base import DataMapper
from src.schemas.bounds import BoundCertificateOut
from src.schemas.closeness import ClosenessParamsOut
from src.schemas.segmentation import SegmentationOut
from src.schemas.traces import LearnerSummary, RegretTrace


class SegmentationDataMapper(DataMapper):
    schema = SegmentationOut


class BoundCertificateDataMapper(DataMapper):
    schema = BoundCertificateOut


class ClosenessParamsDataMapper(DataMapper):
    schema = ClosenessParamsOut


class LearnerSummaryDataMapper(DataMapper):
    schema = LearnerSummary
    columns = ("learner", "replications", "median", "q10", "q25", "q75", "q90", "mean")


class RegretTraceDataMapper(DataMapper):
    schema = RegretTrace
    columns = ("n", "K_n", "excess", "excess_se", "cum_regret")

    @classmethod
    def map_to_persistence_entity(cls, data: RegretTrace) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "n": np.arange(1, data.horizon + 1),
                "K_n": data.windows,
                "excess": data.excess,
                "excess_se": data.excess_se,
                "cum_regret": data.cum_regret,
            },
            columns=list(cls.columns),
        )

    @classmethod
    def map_to_plot_rows(cls, data: RegretTrace) -> pd.DataFrame:
        frame = cls.map_to_persistence_entity(data)
        frame.insert(0, "replication", data.replication)
        frame.insert(0, "learner", data.learner)
        return frame
