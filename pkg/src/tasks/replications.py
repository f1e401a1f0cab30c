import logging
from concurrent.futures import ProcessPoolExecutor

from src.config import settings
from src.schemas.experiments import ExperimentConfig
from src.schemas.traces import RegretTrace
from src.services.simulation import run_replication


def run_replications(
    config: ExperimentConfig, parallel: bool = False, workers: int | None = None
) -> list[RegretTrace]:
    """Все репликации эксперимента; порядок результата не зависит от режима запуска"""
    replications = range(config.replications)
    if parallel and config.replications > 1:
        workers = min(workers or settings.PARALLEL_WORKERS, config.replications)
        logging.info(f"Запуск {config.replications} репликаций в {workers} процессах")
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(run_replication, [config] * len(replications), replications))
    else:
        batches = [run_replication(config, replication) for replication in replications]
    traces = [trace for batch in batches for trace in batch]
    return sorted(traces, key=lambda trace: (trace.replication, trace.learner))
