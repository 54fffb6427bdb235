"""Exact-arithmetic parabolic restriction on GL_n over Q_p, at desk scale.

Everything is computed over Q (or Q(sqrt p), or Z/q): no floating point,
no truncated p-adic expansions.  The package has four layers:

* scalars and matrices: `exactnum`, `matrices`
* structure theory of GL_n and its block parabolics: `groups`
* measures on G and the restriction maps to Levi subgroups, their pairings
  against unramified characters and split orbital integrals: `measures`,
  `characters`, `orbital`
* the finite-field model of induced unipotent classes and the saturation
  operator on constructible sets: `unipotent`, `saturation`

`cli` exposes every verification suite as a subcommand.
"""

from cocenter.exactnum import (
    DomainError,
    LevelError,
    ResourceGuardError,
    RootP,
    padic_norm_halfpower,
    padic_valuation,
)
from cocenter.matrices import PrimeContext, QMat

__all__ = [
    "DomainError",
    "LevelError",
    "ResourceGuardError",
    "RootP",
    "padic_norm_halfpower",
    "padic_valuation",
    "PrimeContext",
    "QMat",
]
