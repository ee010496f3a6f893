# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-02
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Log methods.
"""


from typing import Any, Literal, Final
from os import environ as os_environ
from re import compile as re_compile
from logging import (
    getLogger,
    Handler,
    StreamHandler,
    Formatter,
    LogRecord,
    DEBUG as LDEBUG,
    INFO as LINFO,
    WARNING as LWARNING,
    ERROR as LERROR,
    CRITICAL as LCRITICAL
)
from concurrent_log_handler import ConcurrentRotatingFileHandler, ConcurrentTimedRotatingFileHandler

from .rbase import Base, Config, throw, catch_exc
from .rtext import to_text
from .rtime import now


__all__ = (
    'LogConfig',
    'Log',
    'get_log'
)


class LogConfig(Config):
    """
    Log config type.
    """

    # Environment variable of print level.
    env_level: Final[str] = 'FLUXTRAP_LOG'

    # Default print level name.
    default_level: str = 'WARNING'

    # Valid print level names.
    level_names: Final[tuple[str, ...]] = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')

    # Package logger name.
    name: Final[str] = 'fluxtrap'

    # Record format.
    format_: str = '%(log_time)s | %(log_level)s | %(log_path)s | %(log_message)s'

    # Message format width of containers.
    width: int = 100

    # Whether print colour.
    colour: bool = True

    # Rotated file backup count.
    backups: int = 100

    # Package log instance.
    _log: 'Log | None' = None


# ANSI code of level.
LEVEL_COLOURS: Final[dict[int, str]] = {
    LDEBUG: '\033[1;34m',
    LINFO: '\033[1;37m',
    LWARNING: '\033[1;33m',
    LERROR: '\033[1;31m',
    LCRITICAL: '\033[1;37;41m'
}

# Pattern of ANSI code.
ANSI_PATTERN = re_compile('\033\\[[\\d;]+?m')


class Log(Base):
    """
    Log type, package logger with coloured print and rotated file handlers.
    """

    # Level.
    DEBUG = LDEBUG
    INFO = LINFO
    WARNING = LWARNING
    ERROR = LERROR
    CRITICAL = LCRITICAL


    def __init__(self, name: str) -> None:
        """
        Build instance attributes.

        Parameters
        ----------
        name : Logger name, existing logger is shared.
        """

        # Set attribute.
        self.name: Final[str] = name
        self.stopped = False
        self.logger = getLogger(name)
        self.logger.setLevel(self.DEBUG)
        self.logger.propagate = False


    @staticmethod
    def get_filter(mode: Literal['print', 'file']):
        """
        Get handler filter, fill record fields of format.

        Parameters
        ----------
        mode : Handler mode.
            - `Literal['print']`: Colour fields when config `colour` is true.
            - `Literal['file']`: Strip colour of message.

        Returns
        -------
        Filter method.
        """


        def fill(record: LogRecord) -> Literal[True]:
            """
            Fill record fields.

            Parameters
            ----------
            record : Log record.

            Returns
            -------
            Always pass.
            """

            # Plain.
            time_ = now().strftime('%Y-%m-%d %H:%M:%S.%f')[:-3]
            level = record.levelname.ljust(8)
            path = '%s:%s' % (record.pathname, record.lineno)
            message = record.getMessage()

            # Colour.
            match mode:
                case 'print' if LogConfig.colour:
                    colour = LEVEL_COLOURS.get(record.levelno, '')
                    time_ = '\033[32m%s\033[0m' % time_
                    level = '%s%s\033[0m' % (colour, level)
                    path = '\033[36m%s\033[0m' % path
                    if ANSI_PATTERN.search(message) is None:
                        message = '%s%s\033[0m' % (colour, message)
                case 'file':
                    message = ANSI_PATTERN.sub('', message)
            record.log_time = time_
            record.log_level = level
            record.log_path = path
            record.log_message = message

            return True


        return fill


    def _add(self, handler: Handler, level: int, mode: Literal['print', 'file']) -> None:
        """
        Set level, format and filter of handler, then add.

        Parameters
        ----------
        handler : Handler.
        level : Handler level.
        mode : Handler mode.
        """

        # Set.
        handler.setLevel(level)
        handler.setFormatter(Formatter(LogConfig.format_))
        handler.addFilter(self.get_filter(mode))

        # Add.
        self.logger.addHandler(handler)


    def add_print(self, level: int = DEBUG) -> StreamHandler:
        """
        Add print handler, output to standard error.

        Parameters
        ----------
        level : Handler level.

        Returns
        -------
        Handler.
        """

        # Add.
        handler = StreamHandler()
        self._add(handler, level, 'print')

        return handler


    def add_file(
        self,
        path: str,
        mb: float | None = None,
        hours: float | Literal['midnight'] | None = None,
        level: int = DEBUG
    ) -> ConcurrentRotatingFileHandler | ConcurrentTimedRotatingFileHandler:
        """
        Add file handler, safe for parallel sweep processes, can rotate by size or time.

        Parameters
        ----------
        path : File path.
        mb : Rotate size in megabyte, conflict with `hours`.
        hours : Rotate interval hours, conflict with `mb`.
            - `Literal['midnight']`: Rotate everyday midnight.
        level : Handler level.

        Returns
        -------
        Handler.
        """

        # Check.
        if mb is not None and hours is not None:
            throw(ValueError, mb, hours, text='parameter "mb" and "hours" cannot be used together')
        if mb is not None and mb <= 0:
            throw(ValueError, mb)

        # Handler.
        match mb, hours:
            case None, None:
                handler = ConcurrentRotatingFileHandler(path, 'a', delay=True)
            case _, None:
                handler = ConcurrentRotatingFileHandler(path, 'a', int(mb * 1024 * 1024), LogConfig.backups, delay=True)
            case None, 'midnight':
                handler = ConcurrentTimedRotatingFileHandler(path, 'MIDNIGHT', backupCount=LogConfig.backups, delay=True)
            case None, int() | float():
                handler = ConcurrentTimedRotatingFileHandler(path, 'S', int(hours * 3600), LogConfig.backups, delay=True)
            case _:
                throw(ValueError, hours)
        self._add(handler, level, 'file')

        return handler


    def delete_handler(self, handler: Handler) -> None:
        """
        Delete handler and close it.

        Parameters
        ----------
        handler : Handler.
        """

        # Delete.
        self.logger.removeHandler(handler)
        handler.close()


    def clear_handler(self) -> None:
        """
        Delete all handlers.
        """

        # Delete.
        for handler in list(self.logger.handlers):
            self.delete_handler(handler)


    def log(self, *messages: Any, level: int = INFO) -> None:
        """
        Record log, inside `except` syntax the traceback is appended.

        Parameters
        ----------
        messages : Record content, containers are pretty printed.
        level : Record level.
        """

        # Break.
        if self.stopped or not self.logger.isEnabledFor(level):
            return

        # Message.
        text = '\n'.join(to_text(message, LogConfig.width) for message in messages)
        if '\n' in text:
            text = '\n' + text
        exc_text, exc, _ = catch_exc()
        if exc is not None:
            text = '%s\n%s' % (text, exc_text)

        # Record.
        self.logger.log(level, text, stacklevel=3)


    def debug(self, *messages: Any) -> None:
        """
        Record `debug` level log.
        """

        self.log(*messages, level=self.DEBUG)


    def info(self, *messages: Any) -> None:
        """
        Record `info` level log.
        """

        self.log(*messages, level=self.INFO)


    def warning(self, *messages: Any) -> None:
        """
        Record `warning` level log.
        """

        self.log(*messages, level=self.WARNING)


    def error(self, *messages: Any) -> None:
        """
        Record `error` level log.
        """

        self.log(*messages, level=self.ERROR)


    def critical(self, *messages: Any) -> None:
        """
        Record `critical` level log.
        """

        self.log(*messages, level=self.CRITICAL)


    def stop(self) -> None:
        """
        Stop record.
        """

        self.stopped = True


    def start(self) -> None:
        """
        Start stopped record.
        """

        self.stopped = False


    __call__ = log


def get_log() -> Log:
    """
    Get package log instance, print level from environment variable `FLUXTRAP_LOG`.

    Returns
    -------
    Log instance.
    """

    # Cache.
    if LogConfig._log is not None:
        return LogConfig._log

    # Level.
    level_name = os_environ.get(LogConfig.env_level, LogConfig.default_level).upper()
    invalid = level_name not in LogConfig.level_names
    if invalid:
        level = getattr(Log, LogConfig.default_level)
    else:
        level = getattr(Log, level_name)

    # Build.
    log = Log(LogConfig.name)
    log.clear_handler()
    log.add_print(level)
    LogConfig._log = log
    if invalid:
        log.warning('invalid %s value "%s", use %s' % (LogConfig.env_level, level_name, LogConfig.default_level))

    return log
