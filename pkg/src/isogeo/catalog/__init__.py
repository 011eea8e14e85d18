"""Catalog of isoparametric families and their numerical geometry."""
from .families import *  # noqa: F401,F403
from .geometry import *  # noqa: F401,F403
from .homogeneity import *  # noqa: F401,F403
