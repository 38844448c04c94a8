"""Floating-point formats, directed rounding, and its exact reference."""

from .arith import *  # noqa: F401,F403
from .arith import __all__ as _arith_all
from .exact import *  # noqa: F401,F403
from .exact import __all__ as _exact_all
from .formats import *  # noqa: F401,F403
from .formats import __all__ as _formats_all

__all__ = _formats_all + _arith_all + _exact_all
