# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-02
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Table methods.
"""


from collections.abc import Iterable, Mapping, Sequence
from pandas import DataFrame

from .rbase import Base
from .ros import File, make_dir


__all__ = (
    'Table',
)


class Table(Base):
    """
    Table type, rows with fixed column order.
    """


    def __init__(self, rows: Iterable[Mapping], columns: Sequence[str]) -> None:
        """
        Build instance attributes.

        Parameters
        ----------
        rows : Row dictionaries, missing keys are empty cells.
        columns : Column order, kept when no rows.
        """

        # Set attribute.
        self.rows = [dict(row) for row in rows]
        self.columns = tuple(columns)


    def to_df(self) -> DataFrame:
        """
        Convert to `DataFrame` object.

        Returns
        -------
        DataFrame object.
        """

        return DataFrame(self.rows, columns=list(self.columns))


    def to_csv(self, path: str) -> str:
        """
        Save CSV file, overwrite existed.

        Parameters
        ----------
        path : File save path.

        Returns
        -------
        File absolute path.
        """

        # Save.
        file = File(path)
        make_dir(file.dir)
        self.to_df().to_csv(file.path, index=False)

        return file.path
