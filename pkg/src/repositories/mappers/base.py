from typing import TypeVar

import pandas as pd
from pydantic import BaseModel

SchemaType = TypeVar("SchemaType", bound=BaseModel)


class DataMapper:
    schema: type[SchemaType] = None
    columns: tuple[str, ...] | None = None

    @classmethod
    def map_to_domain_entity(cls, data):
        """Принимаем доменный объект (dataclass) и превращаем его в Pydantic схему"""
        return cls.schema.model_validate(data, from_attributes=True)

    @classmethod
    def map_to_persistence_entity(cls, data) -> pd.DataFrame:
        """Принимаем Pydantic схему (или их список) и превращаем в таблицу для записи в CSV"""
        rows = data if isinstance(data, list) else [data]
        frame = pd.DataFrame([row.model_dump() for row in rows])
        return frame if cls.columns is None else frame.reindex(columns=list(cls.columns))
