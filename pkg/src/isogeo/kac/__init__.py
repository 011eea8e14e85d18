"""Exact tau-Kac algebra: polynomials, matrices and the coefficient recurrences."""
from .bipoly import *  # noqa: F401,F403
from .exact import *  # noqa: F401,F403
from .recurrences import *  # noqa: F401,F403
