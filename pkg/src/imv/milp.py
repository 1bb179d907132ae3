"""Exact mixed-integer linear programming over rationals.

A small, self-contained engine: dense two-phase simplex with Bland's
pivoting rule (so termination is guaranteed even under degeneracy, with no
floating point and no perturbation), plus depth-first branch-and-bound over
the binary variables with exact best-bound pruning.

All variables live in [0, 1]: the lower bound is implicit in the simplex
standard form, the upper bound is a row (omitted for variables whose
defining constraints already imply it).
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

__all__ = [
    "LEQ",
    "EQ",
    "GEQ",
    "LinearConstraint",
    "MilpProblem",
    "MilpResult",
    "optimize",
]

LEQ = "<="
EQ = "=="
GEQ = ">="

_Q0 = mpq(0)
_Q1 = mpq(1)


@dataclass(frozen=True)
class LinearConstraint:
    """A row: sum(coeffs[v] * v) REL constant, with exact coefficients."""

    coeffs: dict
    rel: str
    constant: object

    def __post_init__(self):
        if self.rel not in (LEQ, EQ, GEQ):
            raise ValueError(f"unknown relation {self.rel!r}")


class MilpProblem:
    """Continuous [0, 1] variables, binary variables, rows, one objective."""

    def __init__(self):
        self.continuous = []
        self.binaries = []
        self.constraints = []
        self.objective = None
        self.sense = None
        self._declared = set()
        self._implied_ub = set()

    def add_continuous(self, name, *, ub_implied=False):
        if name in self._declared:
            raise ValueError(f"variable {name!r} declared twice")
        self._declared.add(name)
        self.continuous.append(name)
        if ub_implied:
            self._implied_ub.add(name)
        return name

    def add_binary(self, name):
        if name in self._declared:
            raise ValueError(f"variable {name!r} declared twice")
        self._declared.add(name)
        self.binaries.append(name)
        return name

    def add_constraint(self, coeffs, rel, constant):
        clean = {}
        for var, c in coeffs.items():
            if var not in self._declared:
                raise ValueError(f"constraint references undeclared variable {var!r}")
            q = mpq(c)
            if q != 0:
                clean[var] = q
        self.constraints.append(LinearConstraint(clean, rel, mpq(constant)))

    def set_objective(self, coeffs, sense):
        if sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', not {sense!r}")
        for var in coeffs:
            if var not in self._declared:
                raise ValueError(f"objective references undeclared variable {var!r}")
        self.objective = {v: mpq(c) for v, c in coeffs.items()}
        self.sense = sense


@dataclass(frozen=True)
class MilpResult:
    status: str  # "optimal" | "infeasible"
    optimum: object
    assignment: dict | None

    @property
    def feasible(self):
        return self.status == "optimal"


def _simplex(nvars, rows, costs):
    """Minimize costs . x over {x >= 0 : rows}, two phases, Bland's rule.

    ``rows`` is a list of (coefficient list, rel, constant).  Returns
    (feasible, value, x) where x covers the first ``nvars`` columns.
    """
    # Normalize to b >= 0 and attach slack/surplus columns.
    prepared = []
    nslack = 0
    for coefs, rel, const in rows:
        coefs = list(coefs)
        if const < 0:
            coefs = [-c for c in coefs]
            const = -const
            rel = LEQ if rel == GEQ else (GEQ if rel == LEQ else EQ)
        slack = 0
        if rel == LEQ:
            nslack += 1
            slack = 1
        elif rel == GEQ:
            nslack += 1
            slack = -1
        prepared.append((coefs, slack, const))

    ncols = nvars + nslack
    tab = []
    rhs = []
    basis = []
    artificial_rows = []
    slack_at = nvars
    art_cols = []
    for coefs, slack, const in prepared:
        row = coefs + [_Q0] * nslack
        if slack != 0:
            row[slack_at] = mpq(slack)
            this_slack = slack_at
            slack_at += 1
        else:
            this_slack = None
        if slack == 1:
            basis.append(this_slack)
        else:
            # needs an artificial variable; column appended later
            basis.append(None)
            artificial_rows.append(len(tab))
        tab.append(row)
        rhs.append(const)

    nart = len(artificial_rows)
    if nart:
        for j, i in enumerate(artificial_rows):
            for r, row in enumerate(tab):
                row.append(_Q1 if r == i else _Q0)
            basis[i] = ncols + j
            art_cols.append(ncols + j)
    total = ncols + nart

    def pivot(cost, r, j):
        row = tab[r]
        piv = row[j]
        if piv != 1:
            inv = 1 / piv
            row = [a * inv for a in row]
            tab[r] = row
            rhs[r] *= inv
        for rr in range(len(tab)):
            if rr == r:
                continue
            f = tab[rr][j]
            if f:
                other = tab[rr]
                tab[rr] = [a - f * b for a, b in zip(other, row)]
                rhs[rr] -= f * rhs[r]
        f = cost[j]
        if f:
            cost[:] = [a - f * b for a, b in zip(cost, row)]
        basis[r] = j

    def run(cost, limit):
        # Bland: entering = lowest-index negative reduced cost; leaving =
        # min ratio, ties broken by lowest basis index.
        while True:
            enter = -1
            for j in range(limit):
                if cost[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return True
            best = None
            leave = -1
            for i, row in enumerate(tab):
                a = row[enter]
                if a > 0:
                    ratio = rhs[i] / a
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                return False  # unbounded
            pivot(cost, leave, enter)

    if nart:
        cost1 = [_Q0] * total
        for j in art_cols:
            cost1[j] = _Q1
        for i in artificial_rows:
            row = tab[i]
            cost1 = [c - a for c, a in zip(cost1, row)]
        if not run(cost1, total):
            raise RuntimeError("phase-1 objective unbounded; this cannot happen")
        infeas = sum((rhs[i] for i in range(len(tab)) if basis[i] >= ncols), _Q0)
        if infeas != 0:
            return False, None, None
        # Drive remaining artificials out of the basis, dropping redundant rows.
        for i in reversed(range(len(tab))):
            if basis[i] < ncols:
                continue
            row = tab[i]
            for j in range(ncols):
                if row[j] != 0:
                    pivot(cost1, i, j)
                    break
            else:
                del tab[i]
                del rhs[i]
                del basis[i]
        for r in range(len(tab)):
            del tab[r][ncols:]

    cost = list(costs) + [_Q0] * (ncols - nvars)
    for i, b in enumerate(basis):
        f = cost[b]
        if f:
            row = tab[i]
            cost = [a - f * c for a, c in zip(cost, row)]
    if not run(cost, ncols):
        raise RuntimeError(
            "objective unbounded over a [0,1]-box polytope; check bound rows"
        )

    x = [_Q0] * nvars
    for i, b in enumerate(basis):
        if b < nvars:
            x[b] = rhs[i]
    value = sum((c * v for c, v in zip(costs, x) if c), _Q0)
    return True, value, x


def _base_rows(problem):
    order = list(problem.continuous) + list(problem.binaries)
    index = {name: i for i, name in enumerate(order)}
    nvars = len(order)
    rows = []
    for con in problem.constraints:
        coefs = [_Q0] * nvars
        for var, c in con.coeffs.items():
            coefs[index[var]] = c
        rows.append((coefs, con.rel, con.constant))
    for name in order:
        if name in problem._implied_ub:
            continue
        coefs = [_Q0] * nvars
        coefs[index[name]] = _Q1
        rows.append((coefs, LEQ, _Q1))
    return order, index, nvars, rows


def optimize(problem, *, stop_threshold=None):
    """Solve to exact optimality by branch-and-bound on the binaries.

    Depth-first, branching on the first fractional binary in creation
    order (the 0-branch is explored first), pruning nodes whose relaxation
    bound cannot beat the incumbent.  With ``stop_threshold`` the search
    stops as soon as the incumbent is strictly better than the threshold;
    the reported optimum is then the incumbent's (attained) value rather
    than the global optimum.
    """
    if problem.objective is None:
        raise ValueError("problem has no objective")
    order, index, nvars, rows = _base_rows(problem)
    minimize = problem.sense == "min"
    costs = [_Q0] * nvars
    for var, c in problem.objective.items():
        costs[index[var]] = c if minimize else -c
    if stop_threshold is not None:
        stop_threshold = mpq(stop_threshold)
        if not minimize:
            stop_threshold = -stop_threshold

    bin_indices = [index[name] for name in problem.binaries]

    best_value = None
    best_x = None
    stack = [()]  # tuples of (binary column, fixed value)
    while stack:
        fixings = stack.pop()
        node_rows = [(list(c), rel, const) for c, rel, const in rows]
        for col, val in fixings:
            coefs = [_Q0] * nvars
            coefs[col] = _Q1
            node_rows.append((coefs, EQ, mpq(val)))
        feasible, value, x = _simplex(nvars, node_rows, costs)
        if not feasible:
            continue
        if best_value is not None and value >= best_value:
            continue
        branch_col = -1
        for col in bin_indices:
            v = x[col]
            if v != 0 and v != 1:
                branch_col = col
                break
        if branch_col < 0:
            best_value = value
            best_x = x
            if stop_threshold is not None and best_value < stop_threshold:
                break
            continue
        stack.append(fixings + ((branch_col, 1),))
        stack.append(fixings + ((branch_col, 0),))

    if best_value is None:
        return MilpResult("infeasible", None, None)
    assignment = {name: best_x[index[name]] for name in order}
    optimum = best_value if minimize else -best_value
    return MilpResult("optimal", optimum, assignment)
