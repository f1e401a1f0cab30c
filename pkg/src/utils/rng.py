from enum import IntEnum

import numpy as np


class Stream(IntEnum):
    BATCHES = 0
    EVALUATION = 1


class RngManager:
    """Расщепляемый генератор: каждый поток однозначно задаётся (seed, stream, *key)"""

    def __init__(self, seed: int):
        self.seed = seed

    def generator(self, stream: Stream, *key: int) -> np.random.Generator:
        sequence = np.random.SeedSequence(self.seed, spawn_key=(int(stream), *map(int, key)))
        return np.random.default_rng(sequence)

    def batch_generator(self, replication: int, period: int) -> np.random.Generator:
        return self.generator(Stream.BATCHES, replication, period)

    def evaluation_generator(self, replication: int) -> np.random.Generator:
        return self.generator(Stream.EVALUATION, replication)
