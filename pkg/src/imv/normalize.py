"""Rewriting of collapse operators into two scalar-readable legs.

Any term can be split into a lower leg and an upper leg: push the collapse
operators through every connective until they sit directly on variables,
then read ``D X_j`` as a fresh variable ``Y_j`` and ``N X_j`` as ``Z_j``.
Both legs are plain monoidal terms, and together (with the side conditions
``Y_j <= Z_j``) they capture the interval semantics of the original term
exactly.  This module implements that rewrite system, the two reductions
built on it, the equation-to-tautology translation, and the translation to
and from the implicative signature (i, ~, D, ->).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Interval
from .terms import (
    Term,
    Var,
    Const0,
    Const1,
    ConstIota,
    Neg,
    Delta,
    Nabla,
    Oplus,
    Odot,
    Arrow,
    ZERO,
    ONE,
    desugar,
    is_mv_term,
    term_size,
    variable_order,
    NonMvTermError,
)

__all__ = [
    "REWRITE_RULE_NAMES",
    "rewrite_step",
    "rewrite_fixpoint",
    "collapse_measure",
    "NormalizedLeg",
    "normalize_leg",
    "delta_closure_psi",
    "ConsequenceInstance",
    "equation_to_mv_consequences_chi",
    "chang_distance_term",
    "equation_to_tautology",
    "ImpTerm",
    "ImpVar",
    "ImpIota",
    "ImpNeg",
    "ImpDelta",
    "ImpArrow",
    "to_implicative",
    "from_implicative",
    "eval_implicative",
    "IMPLICATIVE_EQUATIONS",
    "fresh_leg_names",
]

REWRITE_RULE_NAMES = (
    "D-oplus", "D-odot", "D-neg", "D-D", "D-N", "D-0", "D-1", "D-i",
    "N-oplus", "N-odot", "N-neg", "N-D", "N-N", "N-0", "N-1", "N-i",
)


def _step_at_root(t):
    """Apply one rewrite rule at the root, or return None."""
    if isinstance(t, Delta):
        a = t.arg
        if isinstance(a, Oplus):
            return Oplus(Delta(a.left), Delta(a.right))
        if isinstance(a, Odot):
            return Odot(Delta(a.left), Delta(a.right))
        if isinstance(a, Neg):
            return Neg(Nabla(a.arg))
        if isinstance(a, Delta):
            return Delta(a.arg)
        if isinstance(a, Nabla):
            return Nabla(a.arg)
        if isinstance(a, Const0):
            return ZERO
        if isinstance(a, Const1):
            return ONE
        if isinstance(a, ConstIota):
            return ZERO
    elif isinstance(t, Nabla):
        a = t.arg
        if isinstance(a, Oplus):
            return Oplus(Nabla(a.left), Nabla(a.right))
        if isinstance(a, Odot):
            return Odot(Nabla(a.left), Nabla(a.right))
        if isinstance(a, Neg):
            return Neg(Delta(a.arg))
        if isinstance(a, Delta):
            return Delta(a.arg)
        if isinstance(a, Nabla):
            return Nabla(a.arg)
        if isinstance(a, Const0):
            return ZERO
        if isinstance(a, Const1):
            return ONE
        if isinstance(a, ConstIota):
            return ONE
    return None


def rewrite_step(t):
    """One leftmost-outermost rewrite step; None if the term is normal."""
    res = _step_at_root(t)
    if res is not None:
        return res
    if isinstance(t, Neg):
        sub = rewrite_step(t.arg)
        return None if sub is None else Neg(sub)
    if isinstance(t, Delta):
        sub = rewrite_step(t.arg)
        return None if sub is None else Delta(sub)
    if isinstance(t, Nabla):
        sub = rewrite_step(t.arg)
        return None if sub is None else Nabla(sub)
    if isinstance(t, (Oplus, Odot)):
        sub = rewrite_step(t.left)
        if sub is not None:
            return type(t)(sub, t.right)
        sub = rewrite_step(t.right)
        if sub is not None:
            return type(t)(t.left, sub)
    return None


def collapse_measure(t):
    """Sum, over collapse-operator occurrences, of their argument size.

    Every rewrite rule strictly decreases this measure, which is why
    :func:`rewrite_fixpoint` terminates.
    """
    if isinstance(t, (Delta, Nabla)):
        return term_size(t.arg) + collapse_measure(t.arg)
    if isinstance(t, Neg):
        return collapse_measure(t.arg)
    if isinstance(t, (Oplus, Odot, Arrow)):
        return collapse_measure(t.left) + collapse_measure(t.right)
    return 0


def rewrite_fixpoint(t):
    """Apply rewrite steps until none fires."""
    while True:
        nxt = rewrite_step(t)
        if nxt is None:
            return t
        t = nxt


def fresh_leg_names(names):
    """Deterministic fresh variable pair (Y_j, Z_j) for each original name."""
    return {name: (f"Y_{j}", f"Z_{j}") for j, name in enumerate(names, start=1)}


@dataclass(frozen=True)
class NormalizedLeg:
    """One leg of a term: a plain monoidal term over fresh paired variables.

    ``var_map`` sends each original variable to its (lower, upper) pair.
    """

    leg: str  # "delta" | "nabla"
    mv_term: Term
    var_map: dict

    def scalar_valuation(self, interval_valuation):
        """Turn an interval valuation for the original variables into a
        scalar valuation for the fresh ones."""
        out = {}
        for name, (y, z) in self.var_map.items():
            iv = interval_valuation[name]
            out[y] = iv.lo
            out[z] = iv.hi
        return out


def _rename_collapsed_atoms(t, var_map):
    if isinstance(t, Delta):
        assert isinstance(t.arg, Var)
        return Var(var_map[t.arg.name][0])
    if isinstance(t, Nabla):
        assert isinstance(t.arg, Var)
        return Var(var_map[t.arg.name][1])
    if isinstance(t, Neg):
        return Neg(_rename_collapsed_atoms(t.arg, var_map))
    if isinstance(t, (Oplus, Odot)):
        return type(t)(
            _rename_collapsed_atoms(t.left, var_map),
            _rename_collapsed_atoms(t.right, var_map),
        )
    if isinstance(t, Var):
        raise AssertionError(f"bare variable {t.name!r} survived normalization")
    return t


def normalize_leg(term, leg, var_names=None):
    """Compute the lower ("delta") or upper ("nabla") leg of a term.

    The collapse operator is applied on top of the term, pushed down to a
    fixpoint of the rewrite system, and the resulting ``D X_j`` / ``N X_j``
    atoms are renamed to ``Y_j`` / ``Z_j``.  ``var_names`` fixes the variable
    numbering (useful to share one numbering across several terms); it
    defaults to first-occurrence order within ``term``.
    """
    if leg not in ("delta", "nabla"):
        raise ValueError(f"leg must be 'delta' or 'nabla', not {leg!r}")
    body = desugar(term)
    wrapped = Delta(body) if leg == "delta" else Nabla(body)
    normal = rewrite_fixpoint(wrapped)
    if var_names is None:
        var_names = variable_order(term)
    var_map = fresh_leg_names(var_names)
    mv = _rename_collapsed_atoms(normal, var_map)
    if not is_mv_term(mv):
        raise AssertionError("normalization left a collapse operator behind")
    return NormalizedLeg(leg=leg, mv_term=mv, var_map=var_map)


def delta_closure_psi(term):
    """Replace every variable occurrence X by D X.

    Maps a scalar term to an interval term with the same zero-set: the
    transformed term vanishes on all interval valuations exactly when the
    original vanishes on all scalar valuations.
    """
    if not is_mv_term(term):
        raise NonMvTermError("the variable-collapse translation expects a plain term")

    def walk(t):
        if isinstance(t, Var):
            return Delta(t)
        if isinstance(t, Neg):
            return Neg(walk(t.arg))
        if isinstance(t, (Oplus, Odot, Arrow)):
            return type(t)(walk(t.left), walk(t.right))
        return t

    return walk(term)


@dataclass(frozen=True)
class ConsequenceInstance:
    """A scalar consequence problem.

    ``order_premises`` is a tuple of (y, z) variable pairs read as y <= z;
    ``unit_premises`` are terms required to take value 1; the goal is either
    a term (to be forced to 1) or a pair of terms (to be forced equal).
    ``var_map`` records, when the instance came from an interval problem,
    which fresh pair encodes each original variable.
    """

    order_premises: tuple
    unit_premises: tuple
    goal: object
    var_map: dict | None = None


def equation_to_mv_consequences_chi(lhs, rhs):
    """Split an interval equation into its two scalar consequence instances.

    Both instances share a single variable numbering taken from scanning
    ``lhs`` then ``rhs``.
    """
    names = variable_order(lhs, rhs)
    var_map = fresh_leg_names(names)
    order = tuple(var_map[n] for n in names)
    instances = []
    for leg in ("delta", "nabla"):
        l_leg = normalize_leg(lhs, leg, var_names=names)
        r_leg = normalize_leg(rhs, leg, var_names=names)
        instances.append(
            ConsequenceInstance(
                order_premises=order,
                unit_premises=(),
                goal=(l_leg.mv_term, r_leg.mv_term),
                var_map=var_map,
            )
        )
    return instances[0], instances[1]


def chang_distance_term(s, t):
    """The distance term (s * ~t) + (t * ~s)."""
    return Oplus(Odot(s, Neg(t)), Odot(t, Neg(s)))


def equation_to_tautology(lhs, rhs):
    """Turn an equation into a single term that is a tautology exactly when
    the equation holds everywhere: ~d(D lhs, D rhs) * ~d(N lhs, N rhs)."""
    return Odot(
        Neg(chang_distance_term(Delta(lhs), Delta(rhs))),
        Neg(chang_distance_term(Nabla(lhs), Nabla(rhs))),
    )


# ---------------------------------------------------------------------------
# The implicative signature (i, ~, D, ->)


class ImpTerm:
    """Base class for terms of the implicative signature."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class ImpVar(ImpTerm):
    name: str


@dataclass(frozen=True, slots=True)
class ImpIota(ImpTerm):
    pass


@dataclass(frozen=True, slots=True)
class ImpNeg(ImpTerm):
    arg: ImpTerm


@dataclass(frozen=True, slots=True)
class ImpDelta(ImpTerm):
    arg: ImpTerm


@dataclass(frozen=True, slots=True)
class ImpArrow(ImpTerm):
    left: ImpTerm
    right: ImpTerm


_IMP_IOTA = ImpIota()


def to_implicative(t):
    """Translate into the (i, ~, D, ->) signature, preserving semantics.

    0 becomes D i, 1 becomes ~D i, N x becomes ~D ~x, u + v becomes ~u -> v,
    and u * v becomes ~(u -> ~v).
    """
    if isinstance(t, Var):
        return ImpVar(t.name)
    if isinstance(t, Const0):
        return ImpDelta(_IMP_IOTA)
    if isinstance(t, Const1):
        return ImpNeg(ImpDelta(_IMP_IOTA))
    if isinstance(t, ConstIota):
        return _IMP_IOTA
    if isinstance(t, Neg):
        return ImpNeg(to_implicative(t.arg))
    if isinstance(t, Delta):
        return ImpDelta(to_implicative(t.arg))
    if isinstance(t, Nabla):
        return ImpNeg(ImpDelta(ImpNeg(to_implicative(t.arg))))
    if isinstance(t, Oplus):
        return ImpArrow(ImpNeg(to_implicative(t.left)), to_implicative(t.right))
    if isinstance(t, Odot):
        return ImpNeg(ImpArrow(to_implicative(t.left), ImpNeg(to_implicative(t.right))))
    if isinstance(t, Arrow):
        return ImpArrow(to_implicative(t.left), to_implicative(t.right))
    raise TypeError(f"not a translatable term node: {t!r}")


def from_implicative(t):
    """Translate back into the monoidal signature (via Arrow sugar)."""
    if isinstance(t, ImpVar):
        return Var(t.name)
    if isinstance(t, ImpIota):
        return ConstIota()
    if isinstance(t, ImpNeg):
        return Neg(from_implicative(t.arg))
    if isinstance(t, ImpDelta):
        return Delta(from_implicative(t.arg))
    if isinstance(t, ImpArrow):
        return Arrow(from_implicative(t.left), from_implicative(t.right))
    raise TypeError(f"not an implicative term node: {t!r}")


def eval_implicative(t, valuation):
    """Evaluate an implicative term over intervals, with u -> v = ~u + v."""
    if isinstance(t, ImpVar):
        try:
            return valuation[t.name]
        except KeyError:
            raise KeyError(f"no value for variable {t.name!r}") from None
    if isinstance(t, ImpIota):
        return Interval.iota()
    if isinstance(t, ImpNeg):
        return eval_implicative(t.arg, valuation).neg()
    if isinstance(t, ImpDelta):
        return eval_implicative(t.arg, valuation).delta()
    if isinstance(t, ImpArrow):
        return (
            eval_implicative(t.left, valuation)
            .neg()
            .oplus(eval_implicative(t.right, valuation))
        )
    raise TypeError(f"not an implicative term node: {t!r}")


def _iv(name):
    return ImpVar(name)


def _arr(a, b):
    return ImpArrow(a, b)


def _n(a):
    return ImpNeg(a)


def _d(a):
    return ImpDelta(a)


_ix, _iy, _iz = _iv("x"), _iv("y"), _iv("z")
_zero_imp = _d(_IMP_IOTA)

# The thirteen laws of the implicative signature: (name, lhs, rhs).
IMPLICATIVE_EQUATIONS = [
    ("exchange", _arr(_ix, _arr(_iy, _iz)), _arr(_iy, _arr(_ix, _iz))),
    ("contraposition", _arr(_ix, _iy), _arr(_n(_iy), _n(_ix))),
    ("neg_def", _n(_ix), _arr(_ix, _zero_imp)),
    ("ex_falso", _n(_zero_imp), _arr(_zero_imp, _ix)),
    ("neg_involution", _n(_n(_ix)), _ix),
    (
        "collapse_mangani",
        _arr(_arr(_d(_ix), _d(_iy)), _d(_iy)),
        _arr(_arr(_d(_iy), _d(_ix)), _d(_ix)),
    ),
    ("neg_iota", _n(_IMP_IOTA), _IMP_IOTA),
    ("delta_idem", _d(_d(_ix)), _d(_ix)),
    ("delta_neg_delta", _d(_n(_d(_ix))), _n(_d(_ix))),
    (
        "delta_oplus",
        _d(_arr(_n(_ix), _iy)),
        _arr(_n(_d(_ix)), _d(_iy)),
    ),
    (
        "delta_odot",
        _n(_d(_n(_arr(_ix, _iy)))),
        _arr(_d(_ix), _n(_d(_n(_iy)))),
    ),
    ("collapse_order", _arr(_d(_n(_ix)), _n(_d(_ix))), _n(_zero_imp)),
    (
        "reconstruction",
        _arr(_arr(_IMP_IOTA, _arr(_n(_d(_n(_ix))), _d(_ix))), _d(_ix)),
        _ix,
    ),
]
