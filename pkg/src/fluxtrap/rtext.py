# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-02
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Text methods.
"""


from typing import Any
from pprint import pformat as pprint_pformat


__all__ = (
    'to_text',
)


def to_text(data: Any, width: int = 100) -> str:
    """
    Format data to log text, containers are pretty printed.

    Parameters
    ----------
    data : Data.
    width : Format width.

    Returns
    -------
    Formatted text.
    """

    # Format.
    match data:

        ## Replace tab.
        case str():
            text = data.replace('\t', '    ')

        ## Format contents.
        case list() | tuple() | dict() | set():
            text = pprint_pformat(data, width=width, sort_dicts=False)

        ## Other.
        case _:
            text = str(data)

    return text
