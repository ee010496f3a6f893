# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-02
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Task methods.
"""


from typing import Any
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor, Future as CFuture

from .rbase import Base


__all__ = (
    'ThreadPool',
)


class ThreadPool(Base):
    """
    Thread pool type, run sweep points.

    Examples
    --------
    >>> pool = ThreadPool(compile_point, arch, _max_workers=4)
    >>> for circuit in circuits:
    >>>     pool.one(circuit)
    >>> results = pool.results()
    """


    def __init__(
        self,
        task: Callable,
        *args: Any,
        _max_workers: int | None = None,
        **kwargs: Any
    ) -> None:
        """
        Build instance attributes.

        Parameters
        ----------
        task : Thread task.
        args : Task default position arguments.
        _max_workers : Maximum number of threads.
            - `None`: Number of CPU + 4, 32 maximum.
            - `int`: Use this value, no maximum limit.
        kwargs : Task default keyword arguments.
        """

        # Set attribute.
        self.task = task
        self.args = args
        self.kwargs = kwargs
        self.pool = ThreadPoolExecutor(
            _max_workers,
            task.__name__
        )
        self.futures: list[CFuture] = []


    def one(
        self,
        *args: Any,
        **kwargs: Any
    ) -> CFuture:
        """
        Start a task.

        Parameters
        ----------
        args : Task position arguments, after default position arguments.
        kwargs : Task keyword arguments, after default keyword arguments.

        Returns
        -------
        Future instance.
        """

        # Parameter.
        func_args = (
            *self.args,
            *args
        )
        func_kwargs = {
            **self.kwargs,
            **kwargs
        }

        # Add.
        future = self.pool.submit(
            self.task,
            *func_args,
            **func_kwargs
        )

        # Save.
        self.futures.append(future)

        return future


    def results(self) -> list:
        """
        Block until all tasks are done, and return results by submit order.
        Task exception is raised here.

        Returns
        -------
        Task results.
        """

        # Get.
        results = [
            future.result()
            for future in self.futures
        ]
        self.futures.clear()

        return results


    def __del__(self) -> None:
        """
        Delete instance, shutdown pool.
        """

        # Shutdown.
        self.pool.shutdown(wait=False)


    __call__ = one
