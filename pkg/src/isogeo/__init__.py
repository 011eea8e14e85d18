"""Isoparametric hypersurfaces in products of space forms.

Subpackages and modules
-----------------------
spaceforms
    Points, tangent vectors and geodesics in spheres and hyperbolic spaces.
clifford
    Symmetric Clifford systems and their exact verification.
catalog
    The isoparametric families with their numerical geometry.
flows
    Normal flows, focal distances, Jacobi fields and the V-flow.
kac
    Exact tau-Kac algebra and coefficient recurrences.
series
    Exact Laurent expansions behind the rigidity argument.
report
    Deterministic JSON/CSV verification reports.
battery
    The check battery used by the command line tool.
"""
from . import battery, catalog, clifford, flows, kac, report, series, spaceforms  # noqa: F401
from .catalog import GraphSH, MHat, MT, MTF, family_from_dict, family_to_dict  # noqa: F401
from .report import CheckResult  # noqa: F401

__version__ = "0.1.0"
