# -*- coding: utf-8 -*-

"""
Base Classes and field validators that are used in the arith, discriminant, charsum,
resonator and resonance modules.
"""

import typing

import pydantic
import numpy as np
import pandas as pd


def readonly_array(value) -> np.ndarray:
    """
    Convert to a numpy array and lock it against writes.

    Arrays stored in quadres models are shared read-only (possibly between
    worker processes), any modification has to be done on a copy.
    """
    if isinstance(value, np.ndarray):
        value = value.view()
    else:
        value = np.asarray(value)
    value.flags.writeable = False
    return value


def serialize_array(value: typing.Optional[np.ndarray]) -> typing.Optional[list]:
    """
    Serialize numpy arrays into (JSON-compatible) lists.
    """
    if value is None:
        return None
    return value.tolist()


locked_array = typing.Annotated[np.ndarray,
                                pydantic.BeforeValidator(readonly_array),
                                pydantic.PlainSerializer(serialize_array, return_type=typing.Optional[list])]


class BaseModel(pydantic.BaseModel):
    """
    Base class of the quadres data classes.
    """
    model_config = pydantic.ConfigDict(
        validate_assignment=True,
        extra='forbid',
        arbitrary_types_allowed=True)


class FrozenModel(pydantic.BaseModel):
    """
    Base class for immutable data classes (may be shared between workers).
    """
    model_config = pydantic.ConfigDict(
        frozen=True,
        extra='forbid',
        arbitrary_types_allowed=True)


class BaseTable:
    """
    Base for classes exposing tabular results.

    Child classes provide ``_table_columns``, the mapping from DataFrame column names
    to the attribute names of the rows returned by ``_table_rows``.
    """
    _table_columns: typing.Dict[str, str] = {}

    def _table_rows(self) -> typing.Iterable:
        raise NotImplementedError

    def to_dataframe(self) -> pd.DataFrame:
        """
        The results in the form of a pandas DataFrame.
        """
        rows = list(self._table_rows())
        data = {col: [getattr(r, attr) for r in rows] for col, attr in self._table_columns.items()}
        return pd.DataFrame(data, columns=list(self._table_columns.keys()))
