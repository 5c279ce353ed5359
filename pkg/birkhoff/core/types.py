from dataclasses import fields
from typing import Any, ClassVar, Dict, Type, TypeVar

import marshmallow
import marshmallow_dataclass
from marshmallow.decorators import pre_load

from birkhoff.core import ui


T = TypeVar("T", bound="FilteredConfig")


@marshmallow_dataclass.dataclass
class FilteredConfig:
    """
    Base class for configuration dataclasses. Subclasses set `SCHEMA` after their
    definition with `marshmallow_dataclass.class_schema()`.
    """

    SCHEMA: ClassVar[marshmallow.Schema]

    @classmethod
    @pre_load(pass_many=False)
    def filter_fields(cls, data: Dict[str, Any], **kwargs: Any) -> Dict[str, Any]:
        """
        Remove and alert on unknown fields.
        """
        field_names = {field_.name for field_ in fields(cls)}
        filtered_fields = {}
        for key, item in data.items():
            if key in field_names:
                filtered_fields[key] = item
            else:
                ui.display_warning(f"Unrecognized key in config: {key}")

        return filtered_fields

    @classmethod
    def from_dict(cls: Type[T], data: Dict[str, Any]) -> T:
        return cls.SCHEMA.load(data)  # type: ignore

    def to_dict(self) -> Dict[str, Any]:
        return self.SCHEMA.dump(self)  # type: ignore
