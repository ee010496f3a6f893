# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-02
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Data methods.
"""


from typing import Any
from decimal import Decimal
from enum import Enum
from json import dumps as json_dumps, loads as json_loads, JSONDecodeError

from .rbase import InputError, throw


__all__ = (
    'to_json',
    'from_json',
)


def to_json(
    data: Any,
    compact: bool = True
) -> str:
    """
    Convert data to JSON format string.

    Parameters
    ----------
    data : Data.
    compact : Whether compact content.

    Returns
    -------
    JSON format string.
    """

    # Parameter.
    if compact:
        indent = None
        separators = (',', ':')
    else:
        indent = 4
        separators = None

    # Convert.
    def default(value: Any) -> Any:
        match value:
            case Decimal():
                return value.__float__()
            case Enum():
                return value.value
            case set() | frozenset():
                return sorted(value)
            case _:
                return repr(value)

    string = json_dumps(
        data,
        ensure_ascii=False,
        indent=indent,
        separators=separators,
        default=default
    )

    return string


def from_json(text: str) -> Any:
    """
    Convert JSON format string to data, when decode fail, then throw `InputError`.

    Parameters
    ----------
    text : JSON format string.

    Returns
    -------
    Data.
    """

    # Convert.
    try:
        data = json_loads(text)
    except JSONDecodeError as exc:
        throw(InputError, text='invalid JSON, %s' % exc)

    return data
