"""The defining equation suite of the interval algebra.

Each law is provided twice: as a pair of terms (for the decision engine and
anything else that wants syntax) and as a direct check over
:class:`~imv.core.Interval` values (for fast exhaustive and randomized
sweeps).  A unit test keeps the two representations in sync.
"""

from __future__ import annotations

from .core import Interval
from .terms import Var, ZERO, ONE, IOTA, Delta, Nabla

__all__ = ["AXIOM_EQUATIONS", "AXIOM_CHECKS", "NON_THEOREMS", "axiom_terms"]

_x = Var("x")
_y = Var("y")
_z = Var("z")

# name, left-hand term, right-hand term
AXIOM_EQUATIONS = [
    ("oplus_assoc", _x + (_y + _z), (_x + _y) + _z),
    ("oplus_comm", _x + _y, _y + _x),
    ("oplus_zero", _x + ZERO, _x),
    ("oplus_coneutral", _x + ~ZERO, ~ZERO),
    ("neg_involution", ~~_x, _x),
    (
        "collapse_mangani",
        ~(~Delta(_x) + Delta(_y)) + Delta(_y),
        ~(~Delta(_y) + Delta(_x)) + Delta(_x),
    ),
    ("odot_def", _x * _y, ~(~_x + ~_y)),
    ("one_def", ONE, ~ZERO),
    ("nabla_def", Nabla(_x), ~Delta(~_x)),
    ("neg_iota", ~IOTA, IOTA),
    ("delta_zero", Delta(ZERO), ZERO),
    ("delta_one", Delta(ONE), ONE),
    ("delta_iota", Delta(IOTA), ZERO),
    ("delta_idem", Delta(Delta(_x)), Delta(_x)),
    ("delta_nabla", Delta(Nabla(_x)), Nabla(_x)),
    ("delta_oplus", Delta(_x + _y), Delta(_x) + Delta(_y)),
    ("delta_odot", Delta(_x * _y), Delta(_x) * Delta(_y)),
    ("collapse_order", Delta(_x) * ~Nabla(_x), ZERO),
    ("reconstruction", Delta(_x) + (IOTA * Nabla(_x) * ~Delta(_x)), _x),
]

_I = Interval.iota
_0 = Interval.zero
_1 = Interval.one

# name, arity, check(x, y, z, ...) -> (lhs, rhs); all checks are pure.
AXIOM_CHECKS = [
    ("oplus_assoc", 3, lambda x, y, z: (x.oplus(y.oplus(z)), x.oplus(y).oplus(z))),
    ("oplus_comm", 2, lambda x, y: (x.oplus(y), y.oplus(x))),
    ("oplus_zero", 1, lambda x: (x.oplus(_0()), x)),
    ("oplus_coneutral", 1, lambda x: (x.oplus(_0().neg()), _0().neg())),
    ("neg_involution", 1, lambda x: (x.neg().neg(), x)),
    (
        "collapse_mangani",
        2,
        lambda x, y: (
            x.delta().neg().oplus(y.delta()).neg().oplus(y.delta()),
            y.delta().neg().oplus(x.delta()).neg().oplus(x.delta()),
        ),
    ),
    ("odot_def", 2, lambda x, y: (x.odot(y), x.neg().oplus(y.neg()).neg())),
    ("one_def", 0, lambda: (_1(), _0().neg())),
    ("nabla_def", 1, lambda x: (x.nabla(), x.neg().delta().neg())),
    ("neg_iota", 0, lambda: (_I().neg(), _I())),
    ("delta_zero", 0, lambda: (_0().delta(), _0())),
    ("delta_one", 0, lambda: (_1().delta(), _1())),
    ("delta_iota", 0, lambda: (_I().delta(), _0())),
    ("delta_idem", 1, lambda x: (x.delta().delta(), x.delta())),
    ("delta_nabla", 1, lambda x: (x.nabla().delta(), x.nabla())),
    ("delta_oplus", 2, lambda x, y: (x.oplus(y).delta(), x.delta().oplus(y.delta()))),
    ("delta_odot", 2, lambda x, y: (x.odot(y).delta(), x.delta().odot(y.delta()))),
    ("collapse_order", 1, lambda x: (x.delta().odot(x.nabla().neg()), _0())),
    (
        "reconstruction",
        1,
        lambda x: (x.delta().oplus(_I().odot(x.nabla()).odot(x.delta().neg())), x),
    ),
]

# Scalar laws that fail over intervals, with the witnessing assignment.
# Each entry: (name, lhs term, rhs term, valuation, expected lhs, expected rhs).
NON_THEOREMS = [
    (
        "excluded_middle",
        _x + ~_x,
        ONE,
        {"x": Interval(0, 1)},
        Interval(0, 1),
        Interval(1, 1),
    ),
    (
        "mangani_plain",
        ~(~_x + _y) + _y,
        ~(~_y + _x) + _x,
        {"x": Interval(0, 1), "y": Interval(1, 1)},
        Interval(1, 1),
        Interval(0, 1),
    ),
]


def axiom_terms(name):
    """Look up an equation of the suite by name."""
    for n, lhs, rhs in AXIOM_EQUATIONS:
        if n == name:
            return lhs, rhs
    raise KeyError(name)
