# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-02
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Random methods.
"""


from typing import Self, overload
from collections.abc import Sequence
from random import Random
from secrets import SystemRandom
from threading import get_ident as threading_get_ident

from .rbase import T, Base, Config, throw


__all__ = (
    'RandomConfig',
    'RandomSeed',
    'get_random',
    'randf',
    'randi',
    'randsort'
)


class RandomConfig(Config):
    """
    Random config type.
    """

    # RRandom.
    _rrandom_dict: dict[int, 'RandomSeed'] = {}

    # Unseeded generator.
    _system_random: Random = SystemRandom()


class RandomSeed(Base):
    """
    Random seed type. set random seed of current thread.
    If set, based on `random` package.
    If not set, based on `secrets` package.

    Examples
    --------
    Use `with` syntax.
    >>> with RandomSeed(seed):
    >>>     circuit = gen_qaoa(8)
    """


    def __init__(self, seed: int | str | None = None) -> None:
        """
        Build instance attributes.

        Parameters
        ----------
        seed : Random seed.
            - `None`: Clear seed.
            - `int | str`: Set seed.
        """

        # Set attribute.
        self.seed = seed
        self.random = None
        self.previous: RandomSeed | None = None
        thread_id = threading_get_ident()

        # Clear.
        if seed is None:
            RandomConfig._rrandom_dict.pop(thread_id, None)

        # Build.
        else:
            self.random = Random(seed)

            ## Record.
            self.previous = RandomConfig._rrandom_dict.get(thread_id)
            RandomConfig._rrandom_dict[thread_id] = self


    def close(self) -> None:
        """
        Unregister seed, restore previous seed of current thread.
        """

        # Restore.
        thread_id = threading_get_ident()
        if RandomConfig._rrandom_dict.get(thread_id) is self:
            if self.previous is None:
                del RandomConfig._rrandom_dict[thread_id]
            else:
                RandomConfig._rrandom_dict[thread_id] = self.previous


    def __enter__(self) -> Self:
        """
        Enter syntax `with`.

        Returns
        -------
        Self.
        """

        return self


    def __exit__(
        self,
        *_
    ) -> None:
        """
        Exit syntax `with`.
        """

        # Delete.
        self.close()


def get_random() -> Random:
    """
    Get random generator of current thread.

    Returns
    -------
    Seeded generator, or system generator when not set seed.
    """

    # Get.
    thread_id = threading_get_ident()
    seed = RandomConfig._rrandom_dict.get(thread_id)
    if seed is None:
        return RandomConfig._system_random

    return seed.random


def randf(low: float = 0.0, high: float = 1.0) -> float:
    """
    Random float.

    Parameters
    ----------
    low : Low threshold.
    high : High threshold.

    Returns
    -------
    Random float.
    """

    # Random.
    number = get_random().uniform(low, high)

    return number


@overload
def randi(data: Sequence[T], multi: None = None) -> T: ...

@overload
def randi(data: Sequence[T], multi: int) -> list[T]: ...

def randi(data: Sequence[T], multi: int | None = None) -> T | list[T]:
    """
    Random index data element.

    Parameters
    ----------
    data : Sequence data.
    multi : Whether index multiple unique data elements.
        - `None`: Return a value.
        - `int`: Return multiple values.

    Returns
    -------
    Element.
    """

    # Random.
    match multi:

        ## One.
        case None:
            result = get_random().choice(data)

        ## Multiple.
        case _:
            if multi > len(data):
                throw(IndexError, multi)
            result = get_random().sample(list(data), multi)

    return result


def randsort(data: Sequence[T]) -> list[T]:
    """
    Random sorting data.

    Parameters
    ----------
    data : Sequence data.

    Returns
    -------
    Sorted data.
    """

    # Random.
    data_randsort = randi(data, len(data))

    return data_randsort
