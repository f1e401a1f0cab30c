# ruff: noqa: E402
import logging
import sys
from functools import wraps
from pathlib import Path
from typing import Annotated, Optional

import typer
from rich.console import Console
from rich.table import Table

sys.path.append(str(Path(__file__).parent.parent))

from src.config import settings

logging.basicConfig(level=settings.LOG_LEVEL)

from src.exceptions import ConfigurationException, ConfigValidationException, SawsException
from src.models.types import Regularity
from src.schemas.traces import ExperimentSummary
from src.services.harness import HarnessService
from src.services.segmentation import SegmentCriterion
from src.services.tools import ClosenessService, SegmentationService
from src.utils.results_manager import ResultsManager

app = typer.Typer(help="Адаптивный выбор окна (SAWS): эксперименты и инструменты анализа")
console = Console()

ConfigArg = Annotated[Path, typer.Argument(help="YAML-файл конфигурации эксперимента")]
SeedOpt = Annotated[Optional[int], typer.Option("--seed", help="Переопределить seed")]
RepsOpt = Annotated[Optional[int], typer.Option("--reps", min=1, help="Число репликаций")]
OutDirOpt = Annotated[Optional[str], typer.Option("--out-dir", help="Каталог результатов")]
ParallelOpt = Annotated[bool, typer.Option("--parallel", help="Репликации в отдельных процессах")]


def handle_errors(command):
    """Ошибки конфигурации завершают работу с кодом 2, прочие ошибки предметной области - с кодом 1"""

    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except ConfigValidationException as ex:
            console.print(f"[red]{ConfigValidationException.detail}:[/red]")
            for error in ex.errors:
                console.print(f"  • {error}")
            raise typer.Exit(code=2)
        except ConfigurationException as ex:
            console.print(f"[red]{ex.detail}[/red]")
            raise typer.Exit(code=2)
        except SawsException as ex:
            console.print(f"[red]{ex.detail}[/red]")
            raise typer.Exit(code=1)

    return wrapper


def print_summary(summary: ExperimentSummary) -> None:
    table = Table(title=f"{summary.name} (N={summary.horizon}, seed={summary.seed})")
    for column in ("алгоритм", "R", "медиана", "q10", "q90", "среднее"):
        table.add_column(column)
    for item in summary.learners:
        table.add_row(
            item.learner,
            str(item.replications),
            f"{item.median:.4g}",
            f"{item.q10:.4g}",
            f"{item.q90:.4g}",
            f"{item.mean:.4g}",
        )
    console.print(table)


@app.command()
@handle_errors
def run(
    config: ConfigArg,
    seed: SeedOpt = None,
    reps: RepsOpt = None,
    out_dir: OutDirOpt = None,
    parallel: ParallelOpt = False,
):
    """Запуск эксперимента: SAWS и базовые алгоритмы, траектории регрета и сводка"""
    experiment = HarnessService().load_config(config, seed, reps, out_dir)
    with ResultsManager(experiment.output_dir) as results:
        summary = HarnessService(results).run(experiment, parallel=parallel)
    print_summary(summary)


@app.command()
@handle_errors
def sweep(
    config: ConfigArg,
    seed: SeedOpt = None,
    reps: RepsOpt = None,
    out_dir: OutDirOpt = None,
    parallel: ParallelOpt = False,
):
    """Перебор V, u или C_τ по сетке из раздела sweep"""
    experiment = HarnessService().load_config(config, seed, reps, out_dir)
    with ResultsManager(experiment.output_dir) as results:
        points = HarnessService(results).run_sweep(experiment, parallel=parallel)
    for point in points:
        console.print(f"[bold]{point.parameter} = {point.value:g}[/bold]")
        print_summary(point.summary)


@app.command()
@handle_errors
def segment(
    path: Annotated[Path, typer.Argument(help="CSV пути: n, theta_1..theta_d")],
    regime: Annotated[Regularity, typer.Option(help="Класс потерь")] = Regularity.STRONGLY_CONVEX,
    sigma: Annotated[float, typer.Option(help="Масштаб шума σ")] = 1.0,
    rho: Annotated[float, typer.Option(help="Сильная выпуклость ρ")] = 1.0,
    M: Annotated[float, typer.Option("--M", help="Диаметр Ω")] = 1.0,
    r: Annotated[float, typer.Option(help="Радиус локальной сильной выпуклости")] = 1.0,
    B: Annotated[int, typer.Option("--B", min=1, help="Размер пакета")] = 1,
    criterion: Annotated[SegmentCriterion, typer.Option()] = SegmentCriterion.MAX_DISTANCE,
):
    """Жадное разбиение пути параметров на квазистационарные куски"""
    segmentation = SegmentationService().segment_file(path, regime, sigma, B, rho, M, r, criterion)
    console.print(f"J = {segmentation.J}")
    console.print("Границы: " + ", ".join(str(b) for b in segmentation.boundaries))


@app.command()
@handle_errors
def closeness(
    f: Annotated[Path, typer.Argument(help="CSV функции f: x_1..x_g, value")],
    g: Annotated[Path, typer.Argument(help="CSV функции g на той же сетке")],
    eps: Annotated[float, typer.Option("--eps", min=0.0, help="ε")] = 0.0,
    delta: Annotated[Optional[float], typer.Option("--delta", min=0.0, help="Проверить δ")] = None,
):
    """Минимальное δ*, при котором f и g (ε, δ*)-близки на сетке"""
    result = ClosenessService().compare_files(f, g, eps, delta)
    console.print(f"ε = {result.epsilon:g}, δ* = {result.delta_star:.6g}")
    if result.close is not None:
        console.print("близки" if result.close else "[red]не близки[/red]")


@app.command()
@handle_errors
def bounds(config: ConfigArg, seed: SeedOpt = None, out_dir: OutDirOpt = None):
    """Эталонные кривые оценок регрета для класса из конфигурации"""
    experiment = HarnessService().load_config(config, seed, None, out_dir)
    with ResultsManager(experiment.output_dir) as results:
        report = HarnessService(results).reference_curves(experiment)
    table = Table(title=f"Оценки регрета ({report.regime})")
    for column in ("n", "V", "верхняя TV", "нижняя TV"):
        table.add_column(column)
    for point in report.curve:
        table.add_row(str(point.n), f"{point.V:.4g}", f"{point.tv_upper:.4g}", f"{point.tv_lower:.4g}")
    console.print(table)
    if report.certificate is not None:
        console.print(f"Сертификат: J = {report.J}, итог = {report.certificate.total:.4g}")
    if report.class_lower is not None:
        console.print(f"Нижняя оценка класса: {report.class_lower:.4g}")


if __name__ == "__main__":
    app()
