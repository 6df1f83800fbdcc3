"""
Decorators for logging and timing engine operations.
"""

import functools
import logging
import reprlib
import time
from typing import Any, Callable, TypeVar

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])

_short = reprlib.Repr()
_short.maxstring = 80
_short.maxother = 80
_short.maxlist = 8
_short.maxtuple = 8


def log_method(func: F) -> F:
    """
    Decorator to log calls, arguments, return values, and execution time.

    Only coarse operations are decorated (enumeration, group construction,
    reports); inner loops stay undecorated.

    Usage:
        @log_method
        def bk_group(poset):
            ...
    """

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        name = func.__qualname__
        if not logger.isEnabledFor(logging.DEBUG):
            return func(*args, **kwargs)

        logger.debug(f"{'=' * 60}")
        logger.debug(f"🔵 ENTERING: {name}()")
        if args:
            logger.debug(f"   📥 Args: {_short.repr(args)}")
        if kwargs:
            logger.debug(f"   📥 Kwargs: {_short.repr(kwargs)}")

        start_time = time.perf_counter()
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            execution_time = time.perf_counter() - start_time
            logger.error(f"   ❌ FAILED: {name}()")
            logger.error(f"   💥 Error: {type(e).__name__}: {e}")
            logger.error(f"   ⏱️  Time: {execution_time:.3f}s")
            logger.error(f"{'=' * 60}")
            raise

        execution_time = time.perf_counter() - start_time
        logger.debug("   ✅ SUCCESS")
        if result is not None:
            logger.debug(f"   📤 Return: {_short.repr(result)}")
        logger.debug(f"   ⏱️  Time: {execution_time:.3f}s")
        logger.debug(f"{'=' * 60}")
        return result

    return wrapper  # type: ignore[return-value]


def log_check(func: F) -> F:
    """
    Decorator for boolean checks: logs PASS or FAIL with timing.

    Usage:
        @log_check
        def butterfly_graph() -> bool:
            ...
    """

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        start_time = time.perf_counter()
        outcome = func(*args, **kwargs)
        execution_time = time.perf_counter() - start_time
        if outcome:
            logger.info(f"✅ PASS {func.__name__} ({execution_time:.3f}s)")
        else:
            logger.warning(f"❌ FAIL {func.__name__} ({execution_time:.3f}s)")
        return outcome

    return wrapper  # type: ignore[return-value]
