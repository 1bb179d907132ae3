"""Decision procedures for scalar and interval validity and consequence.

The scalar fragment is decided by compiling terms into an exact-rational
mixed-integer program (one binary per monoidal connective) and optimizing;
interval problems reduce to scalar consequence through the two-leg
normalization.  A finite-chain sweep acts as a fast refutation oracle: any
counterexample it finds is a genuine one (the chains embed into the unit
rationals), while validity itself is always established by the optimizer.

Every invalid verdict is re-checked against the pure evaluator before it is
returned; a mismatch raises :class:`DecisionSoundnessError` instead of
surfacing a bogus answer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

from gmpy2 import mpq

from .core import Interval, ONE as Q1, ZERO as Q0
from .milp import MilpProblem, optimize, LEQ, EQ
from .normalize import (
    ConsequenceInstance,
    chang_distance_term,
    equation_to_mv_consequences_chi,
    fresh_leg_names,
    normalize_leg,
)
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
    eval_imv,
    eval_mv,
    free_vars,
    is_mv_term,
    print_term,
    variable_order,
    NonMvTermError,
)

__all__ = [
    "Verdict",
    "DecisionSoundnessError",
    "EnumerationBudgetError",
    "DEFAULT_BUDGET",
    "compile_mv",
    "is_mv_tautology",
    "mv_consequence",
    "imv_equation_valid",
    "is_imv_tautology",
    "imv_consequence",
    "find_local_deduction_k",
    "chain_refute_tautology",
    "chain_refute_equation",
    "chain_refute_consequence",
    "chain_oracle",
]

DEFAULT_BUDGET = 10_000_000


class DecisionSoundnessError(RuntimeError):
    """Internal error: a counterexample failed its re-evaluation."""


class EnumerationBudgetError(RuntimeError):
    """An exhaustive sweep would exceed the enumeration budget."""

    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(
            f"sweep needs {required} valuations, over the budget of {budget}"
        )


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision: valid, or invalid with a checked witness."""

    valid: bool
    counterexample: dict | None = None
    optimum: object = None

    @property
    def status(self):
        return "valid" if self.valid else "invalid"


# ---------------------------------------------------------------------------
# Compilation into a mixed-integer program


class _Compiler:
    """Accumulates node encodings for several terms into one problem."""

    def __init__(self):
        self.problem = MilpProblem()
        self._known = set()
        self._count = 0

    def _fresh(self, prefix, *, ub_implied=False):
        self._count += 1
        name = f".{prefix}{self._count}"
        self.problem.add_continuous(name, ub_implied=ub_implied)
        return name

    def declare(self, name):
        if name not in self._known:
            self._known.add(name)
            self.problem.add_continuous(name)
        return name

    def _neg_of(self, u):
        v = self._fresh("n", ub_implied=True)
        self.problem.add_constraint(_acc({}, v, 1, u, 1), EQ, 1)
        return v

    def _oplus_gadget(self, u, v):
        # z = min(1, u + v), with one binary flag for the truncated branch.
        z = self._fresh("s")
        b = f".b{len(self.problem.binaries) + 1}"
        self.problem.add_binary(b)
        add = self.problem.add_constraint
        add(_acc({}, z, 1, b, -1), ">=", 0)                 # z >= b
        add(_acc({}, z, 1, u, -1, v, -1, b, 1), ">=", 0)    # z >= u + v - b
        add(_acc({}, z, 1, u, -1, v, -1), LEQ, 0)           # z <= u + v
        add(_acc({}, u, 1, v, 1, b, -1), LEQ, 1)            # u + v <= 1 + b
        add(_acc({}, u, 1, v, 1, b, -1), ">=", 0)           # u + v >= b
        return z

    def compile(self, t):
        """Encode a plain monoidal term; returns its output variable."""
        if isinstance(t, Var):
            return self.declare(t.name)
        if isinstance(t, Const0):
            v = self._fresh("c", ub_implied=True)
            self.problem.add_constraint({v: 1}, EQ, 0)
            return v
        if isinstance(t, Const1):
            v = self._fresh("c", ub_implied=True)
            self.problem.add_constraint({v: 1}, EQ, 1)
            return v
        if isinstance(t, Neg):
            return self._neg_of(self.compile(t.arg))
        if isinstance(t, Oplus):
            return self._oplus_gadget(self.compile(t.left), self.compile(t.right))
        if isinstance(t, Odot):
            # u * v by its definition ~(~u + ~v); one binary, as for +.
            p = self._neg_of(self.compile(t.left))
            q = self._neg_of(self.compile(t.right))
            return self._neg_of(self._oplus_gadget(p, q))
        if isinstance(t, Arrow):
            return self.compile(Oplus(Neg(t.left), t.right))
        raise NonMvTermError(f"{type(t).__name__} cannot be compiled")


def _acc(d, *pairs):
    """Accumulate (var, coeff) pairs into a dict, summing duplicates."""
    it = iter(pairs)
    for var in it:
        c = next(it)
        d[var] = d.get(var, 0) + c
    return d


def compile_mv(term):
    """Compile one plain monoidal term; returns (problem, output variable)."""
    if not is_mv_term(term):
        raise NonMvTermError("only plain monoidal terms can be compiled")
    comp = _Compiler()
    out = comp.compile(desugar(term))
    return comp.problem, out


# ---------------------------------------------------------------------------
# Constant folding (term-level, exact identities only)


def _spine(t, cls):
    if isinstance(t, cls):
        yield from _spine(t.left, cls)
        yield from _spine(t.right, cls)
    else:
        yield t


def _rebuild(leaves, cls, empty):
    if not leaves:
        return empty
    leaves = sorted(leaves, key=print_term)
    return reduce(cls, leaves)


def _fold(t):
    """Normalize a monoidal term with exact identities: constants are
    propagated, units and absorbing elements removed, and the arguments of
    the two associative-commutative connectives are flattened and sorted.
    The result evaluates identically to the input on every valuation."""
    if isinstance(t, Neg):
        a = _fold(t.arg)
        if isinstance(a, Const0):
            return ONE
        if isinstance(a, Const1):
            return ZERO
        if isinstance(a, Neg):
            return a.arg
        return Neg(a)
    if isinstance(t, Oplus):
        left, right = _fold(t.left), _fold(t.right)
        leaves = []
        for leaf in itertools.chain(_spine(left, Oplus), _spine(right, Oplus)):
            if isinstance(leaf, Const1):
                return ONE
            if not isinstance(leaf, Const0):
                leaves.append(leaf)
        return _rebuild(leaves, Oplus, ZERO)
    if isinstance(t, Odot):
        left, right = _fold(t.left), _fold(t.right)
        leaves = []
        for leaf in itertools.chain(_spine(left, Odot), _spine(right, Odot)):
            if isinstance(leaf, Const0):
                return ZERO
            if not isinstance(leaf, Const1):
                leaves.append(leaf)
        return _rebuild(leaves, Odot, ONE)
    if isinstance(t, Arrow):
        return _fold(Oplus(Neg(t.left), t.right))
    return t


# ---------------------------------------------------------------------------
# Finite-chain sweeps (vectorized over blocks of valuations)


def _interval_count(k):
    return (k + 1) * (k + 2) // 2


def _vec_eval_pairs(t, env, k):
    """Evaluate over a block of interval valuations with denominator k.

    ``env`` maps names to (los, his) integer tuples; returns the same shape.
    """
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Neg):
        lo, hi = _vec_eval_pairs(t.arg, env, k)
        return tuple(k - h for h in hi), tuple(k - l for l in lo)
    if isinstance(t, Oplus):
        a, b = _vec_eval_pairs(t.left, env, k)
        c, d = _vec_eval_pairs(t.right, env, k)
        return (
            tuple(s if (s := x + y) < k else k for x, y in zip(a, c)),
            tuple(s if (s := x + y) < k else k for x, y in zip(b, d)),
        )
    if isinstance(t, Odot):
        a, b = _vec_eval_pairs(t.left, env, k)
        c, d = _vec_eval_pairs(t.right, env, k)
        return (
            tuple(s if (s := x + y - k) > 0 else 0 for x, y in zip(a, c)),
            tuple(s if (s := x + y - k) > 0 else 0 for x, y in zip(b, d)),
        )
    if isinstance(t, Delta):
        lo, _hi = _vec_eval_pairs(t.arg, env, k)
        return lo, lo
    if isinstance(t, Nabla):
        _lo, hi = _vec_eval_pairs(t.arg, env, k)
        return hi, hi
    if isinstance(t, Arrow):
        a, b = _vec_eval_pairs(t.left, env, k)
        c, d = _vec_eval_pairs(t.right, env, k)
        return (
            tuple(s if (s := k - x + y) < k else k for x, y in zip(b, c)),
            tuple(s if (s := k - x + y) < k else k for x, y in zip(a, d)),
        )
    width = len(next(iter(env.values()))[0]) if env else 1
    if isinstance(t, Const0):
        v = (0,) * width
        return v, v
    if isinstance(t, Const1):
        v = (k,) * width
        return v, v
    if isinstance(t, ConstIota):
        return (0,) * width, (k,) * width
    raise TypeError(f"not an evaluable term node: {t!r}")


def _interval_blocks(names, k, block=2048):
    """Yield (columns, env) blocks covering all chain-interval valuations."""
    pairs = [(a, b) for a in range(k + 1) for b in range(a, k + 1)]
    cols_iter = itertools.product(pairs, repeat=len(names))
    while True:
        cols = list(itertools.islice(cols_iter, block))
        if not cols:
            return
        env = {
            name: (
                tuple(c[i][0] for c in cols),
                tuple(c[i][1] for c in cols),
            )
            for i, name in enumerate(names)
        }
        yield cols, env


def _interval_from_pair(pair, k):
    return Interval(mpq(pair[0], k), mpq(pair[1], k))


def _guard(total, budget):
    if total > budget:
        raise EnumerationBudgetError(total, budget)


def chain_refute_tautology(term, k, budget=DEFAULT_BUDGET):
    """Search all chain-interval valuations for one where term != 1.

    Returns the first counterexample valuation, or None.  Finding nothing
    proves nothing; any hit is exact.
    """
    names = variable_order(term)
    _guard(_interval_count(k) ** len(names), budget)
    for cols, env in _interval_blocks(names, k):
        los, his = _vec_eval_pairs(term, env, k)
        for i in range(len(cols)):
            if los[i] != k or his[i] != k:
                return {
                    n: _interval_from_pair(cols[i][j], k)
                    for j, n in enumerate(names)
                }
    return None


def chain_refute_equation(lhs, rhs, k, budget=DEFAULT_BUDGET):
    """Search all chain-interval valuations for one where lhs != rhs."""
    names = variable_order(lhs, rhs)
    _guard(_interval_count(k) ** len(names), budget)
    for cols, env in _interval_blocks(names, k):
        llo, lhi = _vec_eval_pairs(lhs, env, k)
        rlo, rhi = _vec_eval_pairs(rhs, env, k)
        for i in range(len(cols)):
            if llo[i] != rlo[i] or lhi[i] != rhi[i]:
                return {
                    n: _interval_from_pair(cols[i][j], k)
                    for j, n in enumerate(names)
                }
    return None


def chain_refute_consequence(premises, goal, k, budget=DEFAULT_BUDGET):
    """Search for a chain-interval valuation satisfying every premise
    (value 1) but not the goal."""
    premises = list(premises)
    names = variable_order(*premises, goal)
    _guard(_interval_count(k) ** len(names), budget)
    for cols, env in _interval_blocks(names, k):
        width = len(cols)
        alive = [True] * width
        for p in premises:
            plo, phi = _vec_eval_pairs(p, env, k)
            alive = [
                a and plo[i] == k and phi[i] == k for i, a in enumerate(alive)
            ]
        glo, ghi = _vec_eval_pairs(goal, env, k)
        for i in range(width):
            if alive[i] and (glo[i] != k or ghi[i] != k):
                return {
                    n: _interval_from_pair(cols[i][j], k)
                    for j, n in enumerate(names)
                }
    return None


def chain_oracle(target, k, budget=DEFAULT_BUDGET):
    """Refutation sweep over the chain with k + 1 levels.

    ``target`` may be a term (checked as a tautology), a pair of terms
    (checked as an equation), or a (premises, goal) pair (checked as a
    consequence).  Returns a counterexample valuation or None.
    """
    if isinstance(target, Term):
        return chain_refute_tautology(target, k, budget)
    if isinstance(target, tuple) and len(target) == 2:
        first, second = target
        if isinstance(first, Term) and isinstance(second, Term):
            return chain_refute_equation(first, second, k, budget)
        if isinstance(second, Term):
            return chain_refute_consequence(list(first), second, k, budget)
    raise TypeError(f"cannot interpret oracle target {target!r}")


def _probe_ks(nvars, count, cap=4096):
    ks = [k for k in range(1, 7) if count(k) ** nvars <= cap]
    if not ks and 3 ** nvars <= 200_000:
        ks = [1]
    return ks[:1] if nvars == 0 else ks


def _probe_equation(lhs, rhs, names):
    """Small chain sweep; returns an interval counterexample or None."""
    for k in _probe_ks(len(names), _interval_count):
        for cols, env in _interval_blocks(names, k):
            llo, lhi = _vec_eval_pairs(lhs, env, k)
            rlo, rhi = _vec_eval_pairs(rhs, env, k)
            for i in range(len(cols)):
                if llo[i] != rlo[i] or lhi[i] != rhi[i]:
                    return {
                        n: _interval_from_pair(cols[i][j], k)
                        for j, n in enumerate(names)
                    }
    return None


# scalar sweep for the plain-term tautology probe
def _vec_eval_scalar(t, env, k):
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Neg):
        return tuple(k - a for a in _vec_eval_scalar(t.arg, env, k))
    if isinstance(t, Oplus):
        left = _vec_eval_scalar(t.left, env, k)
        right = _vec_eval_scalar(t.right, env, k)
        return tuple(s if (s := x + y) < k else k for x, y in zip(left, right))
    if isinstance(t, Odot):
        left = _vec_eval_scalar(t.left, env, k)
        right = _vec_eval_scalar(t.right, env, k)
        return tuple(s if (s := x + y - k) > 0 else 0 for x, y in zip(left, right))
    if isinstance(t, Arrow):
        left = _vec_eval_scalar(t.left, env, k)
        right = _vec_eval_scalar(t.right, env, k)
        return tuple(s if (s := k - x + y) < k else k for x, y in zip(left, right))
    width = len(next(iter(env.values()))) if env else 1
    if isinstance(t, Const0):
        return (0,) * width
    if isinstance(t, Const1):
        return (k,) * width
    raise TypeError(f"not a scalar term node: {t!r}")


def _scalar_blocks(names, k, block=2048):
    cols_iter = itertools.product(range(k + 1), repeat=len(names))
    while True:
        cols = list(itertools.islice(cols_iter, block))
        if not cols:
            return
        env = {
            name: tuple(c[i] for c in cols) for i, name in enumerate(names)
        }
        yield cols, env


def _probe_scalar_tautology(term, names):
    for k in _probe_ks(len(names), lambda kk: kk + 1):
        for cols, env in _scalar_blocks(names, k):
            vals = _vec_eval_scalar(term, env, k)
            for i, v in enumerate(vals):
                if v != k:
                    return {n: mpq(cols[i][j], k) for j, n in enumerate(names)}
    return None


# ---------------------------------------------------------------------------
# Scalar deciders


def is_mv_tautology(term, *, quick_refute=True):
    """Decide whether a plain monoidal term takes value 1 everywhere.

    The minimum of the term over all scalar valuations is attained (the
    semantics is continuous piecewise-linear on a compact box), so the
    optimizer's exact minimum settles the question.  With ``quick_refute``
    a finite-chain sweep may return early with a (checked, exact)
    counterexample; validity always comes from the optimizer.
    """
    if not is_mv_term(term):
        raise NonMvTermError("is_mv_tautology expects a plain monoidal term")
    names = variable_order(term)
    body = desugar(term)
    if quick_refute:
        hit = _probe_scalar_tautology(body, names)
        if hit is not None:
            value = eval_mv(term, hit)
            if value == 1:
                raise DecisionSoundnessError("probe counterexample re-evaluated to 1")
            return Verdict(False, hit, value)
    folded = _fold(body)
    if isinstance(folded, Const1):
        return Verdict(True, None, Q1)
    comp = _Compiler()
    out = comp.compile(folded)
    comp.problem.set_objective({out: 1}, "min")
    res = optimize(comp.problem, stop_threshold=1)
    if res.status != "optimal":
        raise DecisionSoundnessError("tautology relaxation reported infeasible")
    if res.optimum == 1:
        return Verdict(True, None, Q1)
    cx = {n: res.assignment.get(n, Q0) for n in names}
    value = eval_mv(term, cx)
    if value != res.optimum or value == 1:
        raise DecisionSoundnessError("optimizer witness failed re-evaluation")
    return Verdict(False, cx, res.optimum)


def _instance_names(inst):
    names = []
    seen = set()
    for y, z in inst.order_premises:
        for n in (y, z):
            if n not in seen:
                seen.add(n)
                names.append(n)
    for t in list(inst.unit_premises) + (
        list(inst.goal) if isinstance(inst.goal, tuple) else [inst.goal]
    ):
        for n in variable_order(t):
            if n not in seen:
                seen.add(n)
                names.append(n)
    return names


def _declare_premises(comp, inst):
    for y, z in inst.order_premises:
        comp.declare(y)
        comp.declare(z)
        comp.problem.add_constraint({y: 1, z: -1}, LEQ, 0)
    for p in inst.unit_premises:
        out = comp.compile(_fold(desugar(p)))
        comp.problem.add_constraint({out: 1}, EQ, 1)


def _complete_witness(inst, names, assignment):
    cx = {}
    for n in names:
        cx[n] = assignment.get(n, Q0) if assignment else Q0
    for y, z in inst.order_premises:
        if cx[z] < cx[y]:
            cx[z] = cx[y]
    return cx


def _check_scalar_witness(inst, cx):
    for y, z in inst.order_premises:
        if not cx[y] <= cx[z]:
            return False
    for p in inst.unit_premises:
        if eval_mv(p, cx) != 1:
            return False
    if isinstance(inst.goal, tuple):
        s, t = inst.goal
        return eval_mv(s, cx) != eval_mv(t, cx)
    return eval_mv(inst.goal, cx) != 1


_consequence_cache = {}
_CACHE_LIMIT = 150_000


def _cache_key(inst):
    goal = inst.goal
    goal_key = (
        (print_term(goal[0]), print_term(goal[1]))
        if isinstance(goal, tuple)
        else print_term(goal)
    )
    return (
        inst.order_premises,
        tuple(print_term(p) for p in inst.unit_premises),
        goal_key,
    )


def mv_consequence(inst):
    """Decide a scalar consequence instance exactly.

    Order premises become rows y <= z; every unit premise is compiled and
    its output pinned to 1 (jointly unsatisfiable premises make the program
    infeasible, which counts as vacuously valid).  A term goal is minimized
    and must reach 1; an equality goal is decided through the distance term,
    whose maximum must be 0.
    """
    key = _cache_key(inst)
    cached = _consequence_cache.get(key)
    if cached is not None:
        return cached
    verdict = _mv_consequence_uncached(inst)
    if len(_consequence_cache) >= _CACHE_LIMIT:
        _consequence_cache.clear()
    _consequence_cache[key] = verdict
    return verdict


def _mv_consequence_uncached(inst):
    names = _instance_names(inst)

    if isinstance(inst.goal, tuple):
        s = _fold(desugar(inst.goal[0]))
        t = _fold(desugar(inst.goal[1]))
        if s == t:
            return Verdict(True, None, Q0)
        # Sufficient check first: both one-sided implications reach 1, which
        # is equivalent to the distance maximum being 0 over the same
        # feasible set, but prunes far better under minimization.
        comp = _Compiler()
        _declare_premises(comp, inst)
        both_valid = True
        for direction in (Oplus(Neg(s), t), Oplus(Neg(t), s)):
            d = _fold(direction)
            if isinstance(d, Const1):
                continue
            out = comp.compile(d)
            comp.problem.set_objective({out: 1}, "min")
            res = optimize(comp.problem, stop_threshold=1)
            if res.status != "optimal":
                return Verdict(True, None, None)  # premises unsatisfiable
            if res.optimum != 1:
                both_valid = False
                break
        if both_valid:
            return Verdict(True, None, Q0)
        # Refute through the distance program, stopping at the first
        # positive witness.
        comp = _Compiler()
        _declare_premises(comp, inst)
        out = comp.compile(_fold(chang_distance_term(s, t)))
        comp.problem.set_objective({out: 1}, "max")
        res = optimize(comp.problem, stop_threshold=0)
        if res.status != "optimal" or res.optimum == 0:
            raise DecisionSoundnessError(
                "distance program disagrees with the one-sided bounds"
            )
        cx = _complete_witness(inst, names, res.assignment)
        if not _check_scalar_witness(inst, cx):
            raise DecisionSoundnessError("equality witness failed re-evaluation")
        return Verdict(False, cx, res.optimum)

    goal = _fold(desugar(inst.goal))
    comp = _Compiler()
    _declare_premises(comp, inst)
    if isinstance(goal, Const1):
        return Verdict(True, None, Q1)
    out = comp.compile(goal)
    comp.problem.set_objective({out: 1}, "min")
    res = optimize(comp.problem, stop_threshold=1)
    if res.status != "optimal":
        return Verdict(True, None, None)  # premises unsatisfiable
    if res.optimum == 1:
        return Verdict(True, None, Q1)
    cx = _complete_witness(inst, names, res.assignment)
    if not _check_scalar_witness(inst, cx):
        raise DecisionSoundnessError("consequence witness failed re-evaluation")
    return Verdict(False, cx, res.optimum)


# ---------------------------------------------------------------------------
# Interval deciders


def _interval_witness(inst, leg_verdict):
    witness = leg_verdict.counterexample
    cx = {}
    for name, (y, z) in inst.var_map.items():
        lo = witness.get(y, Q0)
        hi = witness.get(z, lo)
        if hi < lo:
            hi = lo
        cx[name] = Interval(lo, hi)
    return cx


def imv_equation_valid(lhs, rhs, *, quick_refute=True):
    """Decide whether an interval equation holds in every model.

    The equation is split into its two scalar legs; each leg is decided as
    a consequence under the endpoint-order premises.  An invalid leg yields
    an interval counterexample, reassembled from the leg witness and
    re-checked by evaluation.
    """
    names = variable_order(lhs, rhs)
    if quick_refute:
        hit = _probe_equation(lhs, rhs, names)
        if hit is not None:
            if eval_imv(lhs, hit) == eval_imv(rhs, hit):
                raise DecisionSoundnessError("probe witness failed re-evaluation")
            return Verdict(False, hit, None)
    for inst in equation_to_mv_consequences_chi(lhs, rhs):
        leg = mv_consequence(inst)
        if not leg.valid:
            cx = _interval_witness(inst, leg)
            if eval_imv(lhs, cx) == eval_imv(rhs, cx):
                raise DecisionSoundnessError("leg witness failed re-evaluation")
            return Verdict(False, cx, leg.optimum)
    return Verdict(True, None, Q0)


def is_imv_tautology(term, *, quick_refute=True):
    """Decide whether an interval term takes value [1, 1] everywhere."""
    return imv_equation_valid(term, ONE, quick_refute=quick_refute)


def imv_consequence(premises, goal, *, quick_refute=True):
    """Decide whether every interval valuation satisfying all premises
    (value [1, 1]) also satisfies the goal.

    Reduces to one scalar consequence instance over the lower legs: a term
    takes value [1, 1] exactly when its lower leg takes value 1.
    """
    premises = list(premises)
    names = variable_order(*premises, goal)
    if quick_refute:
        for k in _probe_ks(len(names), _interval_count):
            hit = chain_refute_consequence(premises, goal, k)
            if hit is not None:
                if eval_imv(goal, hit) == Interval.one() or any(
                    eval_imv(p, hit) != Interval.one() for p in premises
                ):
                    raise DecisionSoundnessError("probe witness failed re-evaluation")
                return Verdict(False, hit, None)
    var_map = fresh_leg_names(names)
    inst = ConsequenceInstance(
        order_premises=tuple(var_map[n] for n in names),
        unit_premises=tuple(
            normalize_leg(p, "delta", var_names=names).mv_term for p in premises
        ),
        goal=normalize_leg(goal, "delta", var_names=names).mv_term,
        var_map=var_map,
    )
    leg = mv_consequence(inst)
    if leg.valid:
        return Verdict(True, None, leg.optimum)
    cx = _interval_witness(inst, leg)
    if eval_imv(goal, cx) == Interval.one() or any(
        eval_imv(p, cx) != Interval.one() for p in premises
    ):
        raise DecisionSoundnessError("consequence witness failed re-evaluation")
    return Verdict(False, cx, leg.optimum)


def find_local_deduction_k(premises, goal, k_max, *, quick_refute=True):
    """Smallest k <= k_max making the k-fold premise power imply the goal.

    The antecedent weakens as k grows, so the first k that yields a
    tautology is the minimal one.  Returns None when no k <= k_max works.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    premises = list(premises)
    if premises:
        base = reduce(Odot, [Delta(p) for p in premises])
    else:
        base = ONE
    power = base
    for k in range(1, k_max + 1):
        candidate = Arrow(power, Delta(goal))
        if is_imv_tautology(candidate, quick_refute=quick_refute).valid:
            return k
        power = Odot(power, base)
    return None
