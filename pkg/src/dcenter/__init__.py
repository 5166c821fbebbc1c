"""Exact invariants of Drinfeld centers of pointed fusion categories.

The package computes, over a finite group with a 3-cocycle, the modular
data (S, T) and the rank-3 Borromean tensor B of the center category,
cross-checks them against a categorical braid-trace evaluator, and
decides whether two invariant bundles agree up to a relabeling of the
simple objects.
"""

from .cyclotomic import Cyclotomic, RootOfUnityExponent, parse, render, root_of_unity
from .groups import FiniteGroup, cyclic_group, pq_group
from .cocycles import ThreeCocycle, alpha, inflate, pq_cocycle, solve_coboundary, trivial_cocycle

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic",
    "FiniteGroup",
    "RootOfUnityExponent",
    "ThreeCocycle",
    "alpha",
    "cyclic_group",
    "inflate",
    "parse",
    "pq_cocycle",
    "pq_group",
    "render",
    "root_of_unity",
    "solve_coboundary",
    "trivial_cocycle",
]
