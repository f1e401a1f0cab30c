import hashlib
from pathlib import Path

import yaml
from pydantic import ValidationError

from src.exceptions import ConfigValidationException
from src.repositories.base import BaseRepository
from src.schemas.experiments import ExperimentConfig


def validation_messages(ex: ValidationError) -> list[str]:
    return [
        f"{'.'.join(str(part) for part in error['loc']) or 'config'}: {error['msg']}"
        for error in ex.errors()
    ]


def config_hash(config: ExperimentConfig) -> str:
    return hashlib.sha256(
        config.model_dump_json(exclude={"output_dir"}).encode()
    ).hexdigest()[:16]


class ConfigsRepository(BaseRepository):
    """Конфигурации экспериментов в YAML"""

    def get_one(self, source: Path | str) -> ExperimentConfig:
        try:
            with open(source, encoding="utf-8") as file:
                data = yaml.safe_load(file)
        except FileNotFoundError:
            raise ConfigValidationException([f"файл конфигурации {source} не найден"])
        except yaml.YAMLError as ex:
            raise ConfigValidationException([f"{source}: некорректный YAML ({ex})"])
        if not isinstance(data, dict):
            raise ConfigValidationException([f"{source}: ожидался словарь ключей верхнего уровня"])
        try:
            return ExperimentConfig.model_validate(data)
        except ValidationError as ex:
            raise ConfigValidationException(validation_messages(ex)) from ex

    def add(self, config: ExperimentConfig, subdir: str = "") -> Path:
        text = yaml.safe_dump(config.model_dump(mode="json"), allow_unicode=True, sort_keys=False)
        return self.write_text(text, "config.yaml", subdir)
