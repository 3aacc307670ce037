"""Universal bounds on the potential energy of spherical codes."""

from ._core import (
    Potential,
    QuadratureRule,
    IntervalIndex,
    certificate,
    code_energy,
    code_separation,
    ez_separation,
    find_interval,
    gegenbauer,
    generate,
    lev_value,
    levenshtein_function,
    quadrature,
    strip,
    test_functions,
    ulb,
    uub,
    verify,
    __version__,
)

__all__ = [
    "Potential",
    "QuadratureRule",
    "IntervalIndex",
    "certificate",
    "code_energy",
    "code_separation",
    "ez_separation",
    "find_interval",
    "gegenbauer",
    "generate",
    "lev_value",
    "levenshtein_function",
    "quadrature",
    "strip",
    "test_functions",
    "ulb",
    "uub",
    "verify",
]
