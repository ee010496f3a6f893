# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-02
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Operation system methods.
"""


from typing import Any, Literal, overload
from os import makedirs as os_makedirs
from os.path import dirname as os_dirname, splitext as os_splitext
from pathlib import Path
from tomllib import loads as tomllib_loads, TOMLDecodeError

from .rbase import Base, InputError, throw, check_file_found
from .rdata import to_json, from_json


__all__ = (
    'format_path',
    'make_dir',
    'File',
    'read_toml',
    'read_json',
    'read_config'
)


def format_path(path: str) -> str:
    """
    Resolve path to absolute forward slash form.

    Parameters
    ----------
    path : Path.

    Returns
    -------
    Formatted path.
    """

    return Path(path).resolve().as_posix()


def make_dir(*paths: str) -> None:
    """
    Make directories, skip existed and empty.

    Parameters
    ----------
    paths : Folder paths.
    """

    # Create.
    for path in paths:
        if path:
            os_makedirs(path, exist_ok=True)


class File(Base):
    """
    File type, input descriptions and output artifacts.
    """


    def __init__(self, path: str) -> None:
        """
        Build instance attributes.

        Parameters
        ----------
        path : File path.
        """

        # Set attribute.
        self.path = format_path(path)


    @overload
    def read(self, type_: Literal['bytes'] = 'bytes') -> bytes: ...

    @overload
    def read(self, type_: Literal['str']) -> str: ...

    def read(self, type_: Literal['str', 'bytes'] = 'bytes') -> bytes | str:
        """
        Read file data, missing file throw `InputError`.

        Parameters
        ----------
        type\\_ : File data type.

        Returns
        -------
        File data.
        """

        # Check.
        check_file_found(self.path)

        # Read.
        match type_:
            case 'bytes':
                with open(self.path, 'rb') as file:
                    content = file.read()
            case 'str':
                with open(self.path, encoding='utf-8') as file:
                    content = file.read()

        return content


    def write(self, data: Any = '', append: bool = False) -> None:
        """
        Write file data, make parent directory when not exist.

        Parameters
        ----------
        data : Write data.
            - `str`: File text.
            - `Any`: Pretty JSON text.
        append : Whether append data, otherwise overwrite data.
        """

        # Parameter.
        mode = 'a' if append else 'w'
        if type(data) != str:
            data = to_json(data, False)

        # Write.
        make_dir(self.dir)
        with open(self.path, mode, encoding='utf-8') as file:
            file.write(data)


    @property
    def dir(self) -> str:
        """
        Get parent directory.

        Returns
        -------
        Directory path.
        """

        return os_dirname(self.path)


    @property
    def suffix(self) -> str:
        """
        Get suffix, lower case with dot.

        Returns
        -------
        File suffix.
        """

        # Get.
        _, suffix = os_splitext(self.path)
        suffix = suffix.lower()

        return suffix


def read_toml(file: File) -> dict[str, Any]:
    """
    Read and parse TOML file, `nan` float is `None`.

    Parameters
    ----------
    file : File.

    Returns
    -------
    Parameter dictionary.
    """

    # Parse.
    parse_float = lambda float_str: None if float_str == 'nan' else float(float_str)
    try:
        params = tomllib_loads(file.read('str'), parse_float=parse_float)
    except TOMLDecodeError as exc:
        throw(InputError, text='invalid TOML "%s", %s' % (file.path, exc))

    return params


def read_json(file: File) -> Any:
    """
    Read and parse JSON file.

    Parameters
    ----------
    file : File.

    Returns
    -------
    Data.
    """

    return from_json(file.read('str'))


def read_config(path: str) -> dict[str, Any]:
    """
    Read config file, TOML by suffix `.toml`, otherwise JSON.

    Parameters
    ----------
    path : File path.

    Returns
    -------
    Parameter dictionary.
    """

    # Read.
    file = File(path)
    match file.suffix:
        case '.toml':
            params = read_toml(file)
        case _:
            params = read_json(file)

    # Check.
    if type(params) != dict:
        throw(InputError, text='config "%s" must be an object' % file.path)

    return params
