"""Interval algebras of finite partially ordered algebras.

Any operation on an ordered carrier that is monotone or antitone in each
argument extends to intervals endpoint-wise: monotone arguments read
(lo, hi), antitone arguments read (hi, lo).  Adding the two collapse
operators, the full interval as a constant, and the componentwise order
turns the set of intervals of a finite bounded ordered algebra into an
algebra of the same kind.  This module builds those interval algebras,
validates the inputs, relates the construction back to its base (center
and the two canonical maps), lifts homomorphisms, generates the axiom
schema of the interval class, and checks the center-generates criterion
that decides whether the construction is lossless.

Everything here is finite and exhaustive; enumeration guards protect
against accidentally huge sweeps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .decide import EnumerationBudgetError, DEFAULT_BUDGET
from .terms import (
    Term,
    Var,
    Const0,
    Const1,
    ConstIota,
    Delta,
    Nabla,
)

__all__ = [
    "OpSymbol",
    "Signature",
    "ValidationReport",
    "FinitePoalgebra",
    "validate_poalgebra",
    "InvalidAlgebraError",
    "HomomorphismError",
    "InternalStructureError",
    "IntervalAlgebra",
    "build_interval_algebra",
    "center",
    "iota_map",
    "GammaResult",
    "gamma_map",
    "lift_homomorphism",
    "find_homomorphisms",
    "App",
    "algebra_term_text",
    "parse_algebra_term",
    "Quasiequation",
    "generate_axioms",
    "check_quasiequation",
    "order_equations_determine",
    "EquivalenceReport",
    "check_equivalence",
    "pointwise_image",
    "godel_chain",
    "hilbert_chain3",
    "lukasiewicz_chain",
    "LATTICE_ORDER_EQUATIONS",
    "MV_ORDER_EQUATIONS",
    "HILBERT_ORDER_EQUATIONS",
    "lattice_reconstruction_term",
    "mv_reconstruction_term",
]


class InvalidAlgebraError(ValueError):
    """The input failed validation (order, bounds, totality, or polarity)."""


class HomomorphismError(ValueError):
    """A map claimed to be a homomorphism is not one."""


class InternalStructureError(RuntimeError):
    """A structural fact that must hold by construction failed; this
    signals a bug, not bad input."""


@dataclass(frozen=True, slots=True)
class App(Term):
    """Application of a named signature symbol (used in algebra terms)."""

    name: str
    args: tuple


@dataclass(frozen=True)
class OpSymbol:
    name: str
    arity: int
    polarity: tuple

    def __post_init__(self):
        if len(self.polarity) != self.arity:
            raise ValueError(
                f"operation {self.name!r}: polarity length {len(self.polarity)} "
                f"does not match arity {self.arity}"
            )
        for p in self.polarity:
            if p not in ("+", "-"):
                raise ValueError(f"operation {self.name!r}: bad polarity entry {p!r}")


class Signature:
    """Named operation symbols with polarities; 0 and 1 are implicit."""

    def __init__(self, symbols):
        self.symbols = {}
        for sym in symbols:
            if sym.name in self.symbols:
                raise ValueError(f"duplicate operation name {sym.name!r}")
            self.symbols[sym.name] = sym

    def __iter__(self):
        return iter(self.symbols.values())

    def __contains__(self, name):
        return name in self.symbols

    def __getitem__(self, name):
        return self.symbols[name]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple

    def __bool__(self):
        return self.ok


def _transitive_reflexive_closure(elements, pairs):
    leq = {a: {a} for a in elements}
    for a, b in pairs:
        leq[a].add(b)
    changed = True
    while changed:
        changed = False
        for a in elements:
            extra = set()
            for b in leq[a]:
                extra |= leq[b]
            if not extra <= leq[a]:
                leq[a] |= extra
                changed = True
    return leq


class FinitePoalgebra:
    """Finite carrier, partial order, bounds, polarity-tagged tables.

    The constructor is permissive about the mathematical conditions (use
    :meth:`validate` to get a report); it only rejects structurally broken
    input such as duplicate carrier entries or unknown elements.
    """

    def __init__(self, carrier, leq, zero, one, ops):
        self.carrier = list(carrier)
        if len(set(self.carrier)) != len(self.carrier):
            raise ValueError("carrier contains duplicate elements")
        known = set(self.carrier)
        for a, b in leq:
            if a not in known or b not in known:
                raise ValueError(f"order pair ({a!r}, {b!r}) mentions unknown elements")
        if zero not in known or one not in known:
            raise ValueError("bounds must be carrier elements")
        self.zero = zero
        self.one = one
        self._up = _transitive_reflexive_closure(self.carrier, leq)
        self.ops = {}
        for name, (polarity, table) in ops.items():
            sym = OpSymbol(name, len(tuple(polarity)), tuple(polarity))
            self.ops[name] = (sym, dict(table))

    # -- basic queries ------------------------------------------------------

    def leq(self, a, b):
        return b in self._up[a]

    def leq_pairs(self):
        return [(a, b) for a in self.carrier for b in self.carrier if self.leq(a, b)]

    def apply(self, name, *args):
        return self.ops[name][1][tuple(args)]

    def signature(self):
        return Signature(sym for sym, _table in self.ops.values())

    # -- validation ----------------------------------------------------------

    def validate(self):
        violations = []
        for a in self.carrier:
            for b in self._up[a]:
                if a != b and self.leq(b, a):
                    violations.append(f"antisymmetry fails on {a!r} and {b!r}")
        for a in self.carrier:
            if not self.leq(self.zero, a):
                violations.append(f"bound 0 = {self.zero!r} is not below {a!r}")
            if not self.leq(a, self.one):
                violations.append(f"bound 1 = {self.one!r} is not above {a!r}")
        for name, (sym, table) in self.ops.items():
            total = True
            for args in itertools.product(self.carrier, repeat=sym.arity):
                if args not in table:
                    violations.append(f"{name}{args!r} is missing from the table")
                    total = False
                elif table[args] not in self._up:
                    violations.append(
                        f"{name}{args!r} = {table[args]!r} is not a carrier element"
                    )
                    total = False
            if not total:
                continue
            for k in range(sym.arity):
                expected = sym.polarity[k]
                rest = [self.carrier] * (sym.arity - 1)
                for a in self.carrier:
                    for b in self._up[a]:
                        if a == b:
                            continue
                        for ctx in itertools.product(*rest):
                            lo_args = ctx[:k] + (a,) + ctx[k:]
                            hi_args = ctx[:k] + (b,) + ctx[k:]
                            lo_val = table[lo_args]
                            hi_val = table[hi_args]
                            fine = (
                                self.leq(lo_val, hi_val)
                                if expected == "+"
                                else self.leq(hi_val, lo_val)
                            )
                            if not fine:
                                violations.append(
                                    f"{name} is not {expected}-monotone in argument "
                                    f"{k}: {name}{lo_args!r} = {lo_val!r} vs "
                                    f"{name}{hi_args!r} = {hi_val!r}"
                                )
        return ValidationReport(not violations, tuple(violations))

    # -- term evaluation ------------------------------------------------------

    def eval(self, term, env):
        if isinstance(term, Var):
            return env[term.name]
        if isinstance(term, Const0):
            return self.zero
        if isinstance(term, Const1):
            return self.one
        if isinstance(term, App):
            args = tuple(self.eval(a, env) for a in term.args)
            return self.apply(term.name, *args)
        raise TypeError(f"term node {type(term).__name__} has no meaning here")

    # -- serialization ---------------------------------------------------------

    def to_json(self):
        return {
            "carrier": list(self.carrier),
            "leq": [[a, b] for a, b in self.leq_pairs() if a != b],
            "bounds": {"zero": self.zero, "one": self.one},
            "ops": {
                name: {
                    "arity": sym.arity,
                    "polarity": list(sym.polarity),
                    "table": {
                        ",".join(args): value for args, value in sorted(table.items())
                    },
                }
                for name, (sym, table) in self.ops.items()
            },
        }

    @classmethod
    def from_json(cls, obj):
        carrier = list(obj["carrier"])
        for el in carrier:
            if "," in el:
                raise ValueError(f"carrier element {el!r} may not contain a comma")
        leq = [tuple(p) for p in obj.get("leq", [])]
        bounds = obj["bounds"]
        ops = {}
        for name, spec in obj.get("ops", {}).items():
            if name in ("D", "N", "i", "0", "1"):
                raise ValueError(f"operation name {name!r} is reserved")
            arity = int(spec["arity"])
            polarity = tuple(spec["polarity"])
            table = {}
            for key, value in spec["table"].items():
                args = tuple(key.split(",")) if key else ()
                if len(args) != arity:
                    raise ValueError(
                        f"table key {key!r} of {name!r} has {len(args)} arguments, "
                        f"expected {arity}"
                    )
                table[args] = value
            ops[name] = (polarity, table)
        return cls(carrier, leq, bounds["zero"], bounds["one"], ops)


def validate_poalgebra(algebra):
    """Full validation report: order, bounds, totality, polarity."""
    return algebra.validate()


class IntervalAlgebra:
    """The algebra of intervals of a finite ordered algebra.

    Elements are pairs (lo, hi) of base elements with lo <= hi; operations
    of the base act endpoint-wise according to their polarities, and the
    structure carries the two collapse operators, the full interval
    constant, and the componentwise order.
    """

    def __init__(self, base, elements, op_tables, delta_table, nabla_table):
        self.base = base
        self.elements = list(elements)
        self._members = set(self.elements)
        self.ops = op_tables  # name -> (OpSymbol, table over pairs)
        self.delta = delta_table
        self.nabla = nabla_table
        self.zero = (base.zero, base.zero)
        self.one = (base.one, base.one)
        self.iota = (base.zero, base.one)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._members

    def leq(self, x, y):
        return self.base.leq(x[0], y[0]) and self.base.leq(x[1], y[1])

    def apply(self, name, *args):
        return self.ops[name][1][tuple(args)]

    def format_element(self, x):
        return f"[{x[0]},{x[1]}]"

    def eval(self, term, env):
        if isinstance(term, Var):
            return env[term.name]
        if isinstance(term, Const0):
            return self.zero
        if isinstance(term, Const1):
            return self.one
        if isinstance(term, ConstIota):
            return self.iota
        if isinstance(term, Delta):
            return self.delta[self.eval(term.arg, env)]
        if isinstance(term, Nabla):
            return self.nabla[self.eval(term.arg, env)]
        if isinstance(term, App):
            args = tuple(self.eval(a, env) for a in term.args)
            return self.apply(term.name, *args)
        raise TypeError(f"term node {type(term).__name__} has no meaning here")

    def center_elements(self):
        return [
            x for x in self.elements if self.delta[x] == x and self.nabla[x] == x
        ]

    def as_poalgebra(self):
        """Repackage over the product order, with the collapse operators and
        the full-interval constant as ordinary signature symbols."""
        ops = {
            name: (sym.polarity, table) for name, (sym, table) in self.ops.items()
        }
        ops["D"] = (("+",), {(x,): self.delta[x] for x in self.elements})
        ops["N"] = (("+",), {(x,): self.nabla[x] for x in self.elements})
        ops["i"] = ((), {(): self.iota})
        pairs = [
            (x, y) for x in self.elements for y in self.elements if self.leq(x, y)
        ]
        return FinitePoalgebra(self.elements, pairs, self.zero, self.one, ops)

    def subalgebra(self, universe):
        """Restrict to a subset, checking closure under every operation."""
        subset = [x for x in self.elements if x in set(universe)]
        members = set(subset)
        for required in (self.zero, self.one, self.iota):
            if required not in members:
                raise ValueError(
                    f"subuniverse is missing the constant {self.format_element(required)}"
                )
        tables = {}
        for name, (sym, table) in self.ops.items():
            sub = {}
            for args in itertools.product(subset, repeat=sym.arity):
                value = table[args]
                if value not in members:
                    raise ValueError(
                        f"subuniverse is not closed under {name} at "
                        f"{tuple(map(self.format_element, args))}"
                    )
                sub[args] = value
            tables[name] = (sym, sub)
        for x in subset:
            if self.delta[x] not in members or self.nabla[x] not in members:
                raise ValueError("subuniverse is not closed under the collapses")
        sub_delta = {x: self.delta[x] for x in subset}
        sub_nabla = {x: self.nabla[x] for x in subset}
        result = IntervalAlgebra(self.base, subset, tables, sub_delta, sub_nabla)
        return result

    def generated_closure(self, seed, order="forward"):
        """Smallest subuniverse containing ``seed`` and the constants.

        ``order`` picks the op application order per round; the fixpoint is
        the same either way (asserted by callers), only the path differs.
        """
        members = set(seed)
        members.update((self.zero, self.one, self.iota))
        op_items = list(self.ops.items())
        if order == "reversed":
            op_items = op_items[::-1]
        elif order != "forward":
            raise ValueError(f"unknown closure order {order!r}")
        changed = True
        while changed:
            changed = False
            current = [x for x in self.elements if x in members]
            if order == "reversed":
                current = current[::-1]
            for x in current:
                for img in (self.delta[x], self.nabla[x]):
                    if img not in members:
                        members.add(img)
                        changed = True
            for name, (sym, table) in op_items:
                for args in itertools.product(current, repeat=sym.arity):
                    img = table[args]
                    if img not in members:
                        members.add(img)
                        changed = True
        return members


def build_interval_algebra(algebra, *, revalidate=True):
    """Construct the interval algebra of a validated finite ordered algebra.

    Rejects input that fails validation.  The result is checked to be a
    well-formed ordered algebra for the product order (every lifted
    operation keeps its polarity).
    """
    report = algebra.validate()
    if not report.ok:
        raise InvalidAlgebraError(
            "refusing to build intervals over an invalid algebra:\n"
            + "\n".join(report.violations)
        )
    carrier = algebra.carrier
    elements = [
        (a, b) for a in carrier for b in carrier if algebra.leq(a, b)
    ]
    op_tables = {}
    for name, (sym, table) in algebra.ops.items():
        lifted = {}
        for args in itertools.product(elements, repeat=sym.arity):
            lo_args = []
            hi_args = []
            for (a, b), p in zip(args, sym.polarity):
                if p == "+":
                    lo_args.append(a)
                    hi_args.append(b)
                else:
                    lo_args.append(b)
                    hi_args.append(a)
            lifted[args] = (table[tuple(lo_args)], table[tuple(hi_args)])
        op_tables[name] = (sym, lifted)
    delta_table = {(a, b): (a, a) for (a, b) in elements}
    nabla_table = {(a, b): (b, b) for (a, b) in elements}
    result = IntervalAlgebra(algebra, elements, op_tables, delta_table, nabla_table)
    if revalidate:
        check = result.as_poalgebra().validate()
        if not check.ok:
            raise InternalStructureError(
                "interval algebra failed its own validation:\n"
                + "\n".join(check.violations)
            )
    return result


def center(J):
    """The sub-poalgebra of elements fixed by both collapses.

    Closure of the center under every lifted operation is forced by the
    construction; a violation is a bug, not a property of the input.
    """
    elems = J.center_elements()
    members = set(elems)
    ops = {}
    for name, (sym, table) in J.ops.items():
        sub = {}
        for args in itertools.product(elems, repeat=sym.arity):
            value = table[args]
            if value not in members:
                raise InternalStructureError(
                    f"center is not closed under {name}; this cannot happen"
                )
            sub[args] = value
        ops[name] = (sym.polarity, sub)
    pairs = [(x, y) for x in elems for y in elems if J.leq(x, y)]
    return FinitePoalgebra(elems, pairs, J.zero, J.one, ops)


def iota_map(algebra, J=None):
    """The canonical embedding a -> [a, a], verified to be an isomorphism
    of the base onto the center of its interval algebra."""
    if J is None:
        J = build_interval_algebra(algebra)
    mapping = {a: (a, a) for a in algebra.carrier}
    centre = center(J)
    if set(mapping.values()) != set(centre.carrier):
        raise InternalStructureError("degenerate intervals do not exhaust the center")
    for name, (sym, table) in algebra.ops.items():
        for args in itertools.product(algebra.carrier, repeat=sym.arity):
            expected = mapping[table[args]]
            got = J.apply(name, *(mapping[a] for a in args))
            if expected != got:
                raise InternalStructureError(
                    f"embedding does not commute with {name} at {args!r}"
                )
    for a in algebra.carrier:
        for b in algebra.carrier:
            if algebra.leq(a, b) != J.leq(mapping[a], mapping[b]):
                raise InternalStructureError("embedding is not an order isomorphism")
    return mapping


@dataclass(frozen=True)
class GammaResult:
    mapping: dict
    center_algebra: FinitePoalgebra
    codomain: IntervalAlgebra
    injective: bool
    surjective: bool


def gamma_map(J):
    """The canonical map x -> [delta x, nabla x] into the intervals of the
    center; always an injective homomorphism, surjective exactly when the
    center generates."""
    centre = center(J)
    codomain = build_interval_algebra(centre, revalidate=False)
    mapping = {x: (J.delta[x], J.nabla[x]) for x in J.elements}
    for x, img in mapping.items():
        if img not in codomain:
            raise InternalStructureError(
                f"gamma image {img!r} is not an interval of the center"
            )
    for name, (sym, table) in J.ops.items():
        for args in itertools.product(J.elements, repeat=sym.arity):
            if mapping[table[args]] != codomain.apply(
                name, *(mapping[a] for a in args)
            ):
                raise InternalStructureError(
                    f"gamma does not commute with {name} at {args!r}"
                )
    for x in J.elements:
        if mapping[J.delta[x]] != codomain.delta[mapping[x]]:
            raise InternalStructureError("gamma does not commute with the lower collapse")
        if mapping[J.nabla[x]] != codomain.nabla[mapping[x]]:
            raise InternalStructureError("gamma does not commute with the upper collapse")
    if mapping[J.iota] != codomain.iota or mapping[J.zero] != codomain.zero \
            or mapping[J.one] != codomain.one:
        raise InternalStructureError("gamma does not preserve the constants")
    injective = len(set(mapping.values())) == len(J.elements)
    if not injective:
        raise InternalStructureError("gamma is not injective; this cannot happen")
    surjective = set(mapping.values()) == set(codomain.elements)
    return GammaResult(mapping, centre, codomain, injective, surjective)


def _same_signature(A, B):
    if A.ops.keys() != B.ops.keys():
        return False
    return all(
        A.ops[name][0] == B.ops[name][0] for name in A.ops
    )


def _verify_base_hom(h, A, B):
    if not _same_signature(A, B):
        raise HomomorphismError("the two algebras have different signatures")
    for a in A.carrier:
        if a not in h:
            raise HomomorphismError(f"map is not total: no image for {a!r}")
        if h[a] not in B._up:
            raise HomomorphismError(f"image {h[a]!r} is not an element of the codomain")
    if h[A.zero] != B.zero or h[A.one] != B.one:
        raise HomomorphismError("map does not preserve the bounds")
    for name, (sym, table) in A.ops.items():
        for args in itertools.product(A.carrier, repeat=sym.arity):
            if h[table[args]] != B.apply(name, *(h[a] for a in args)):
                raise HomomorphismError(f"map does not commute with {name} at {args!r}")
    for a in A.carrier:
        for b in A.carrier:
            if A.leq(a, b) and not B.leq(h[a], h[b]):
                raise HomomorphismError("map is not order-preserving")


def lift_homomorphism(h, A, B, *, JA=None, JB=None):
    """Lift a homomorphism h: A -> B to intervals, [a, b] -> [h a, h b].

    ``h`` must preserve the bounds, commute with every operation, and be
    order-preserving; anything else is rejected.  The lifted map is checked
    to be a homomorphism of the interval algebras (including collapses and
    the full-interval constant) before being returned.
    """
    _verify_base_hom(h, A, B)
    if JA is None:
        JA = build_interval_algebra(A, revalidate=False)
    if JB is None:
        JB = build_interval_algebra(B, revalidate=False)
    lifted = {(a, b): (h[a], h[b]) for (a, b) in JA.elements}
    for x, img in lifted.items():
        if img not in JB:
            raise InternalStructureError("lifted image is not an interval")
    for name, (sym, table) in JA.ops.items():
        for args in itertools.product(JA.elements, repeat=sym.arity):
            if lifted[table[args]] != JB.apply(name, *(lifted[x] for x in args)):
                raise InternalStructureError(
                    f"lifted map does not commute with {name}"
                )
    for x in JA.elements:
        if lifted[JA.delta[x]] != JB.delta[lifted[x]]:
            raise InternalStructureError("lifted map breaks the lower collapse")
        if lifted[JA.nabla[x]] != JB.nabla[lifted[x]]:
            raise InternalStructureError("lifted map breaks the upper collapse")
    if lifted[JA.iota] != JB.iota:
        raise InternalStructureError("lifted map breaks the full-interval constant")
    return lifted


def find_homomorphisms(A, B):
    """All homomorphisms between two small algebras, by brute force."""
    if not _same_signature(A, B):
        return []
    names = list(A.carrier)
    homs = []
    for images in itertools.product(B.carrier, repeat=len(names)):
        h = dict(zip(names, images))
        try:
            _verify_base_hom(h, A, B)
        except HomomorphismError:
            continue
        homs.append(h)
    return homs


# ---------------------------------------------------------------------------
# Algebra terms, quasiequations, the generated axiom schema


def algebra_term_text(t):
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const0):
        return "0"
    if isinstance(t, Const1):
        return "1"
    if isinstance(t, ConstIota):
        return "i"
    if isinstance(t, Delta):
        return f"D({algebra_term_text(t.arg)})"
    if isinstance(t, Nabla):
        return f"N({algebra_term_text(t.arg)})"
    if isinstance(t, App):
        inner = ", ".join(algebra_term_text(a) for a in t.args)
        return f"{t.name}({inner})"
    raise TypeError(f"not an algebra term node: {t!r}")


def parse_algebra_term(text, signature):
    """Parse ``name(arg, ...)`` style terms over a signature.

    ``D`` and ``N`` are the collapses, ``i``/``0``/``1`` the constants;
    any other bare identifier is a variable; identifiers naming a signature
    symbol must be applied with the right number of arguments.
    """
    import re

    tokens = re.findall(r"[A-Za-z_][A-Za-z0-9_]*|\(|\)|,|\S", text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def advance(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(
                f"algebra term {text!r}: expected {expected or 'a token'}, "
                f"found {tok!r}"
            )
        pos += 1
        return tok

    def parse_one():
        tok = advance()
        if tok == "0":
            return Const0()
        if tok == "1":
            return Const1()
        if tok == "i":
            return ConstIota()
        if tok in ("D", "N"):
            advance("(")
            arg = parse_one()
            advance(")")
            return Delta(arg) if tok == "D" else Nabla(arg)
        if not tok[0].isalpha() and tok[0] != "_":
            raise ValueError(f"algebra term {text!r}: unexpected {tok!r}")
        if tok in signature:
            sym = signature[tok]
            args = []
            if sym.arity:
                advance("(")
                args.append(parse_one())
                while peek() == ",":
                    advance(",")
                    args.append(parse_one())
                advance(")")
            elif peek() == "(":
                advance("(")
                advance(")")
            if len(args) != sym.arity:
                raise ValueError(
                    f"algebra term {text!r}: {tok} expects {sym.arity} arguments, "
                    f"got {len(args)}"
                )
            return App(tok, tuple(args))
        return Var(tok)

    result = parse_one()
    if peek() is not None:
        raise ValueError(f"algebra term {text!r}: trailing input {peek()!r}")
    return result


@dataclass(frozen=True)
class Quasiequation:
    """premises => conclusion, over the signature plus D, N, i."""

    name: str
    premises: tuple  # of (Term, Term)
    conclusion: tuple  # (Term, Term)

    def __str__(self):
        prem = ", ".join(
            f"{algebra_term_text(s)} = {algebra_term_text(t)}"
            for s, t in self.premises
        )
        s, t = self.conclusion
        body = f"{algebra_term_text(s)} = {algebra_term_text(t)}"
        return f"{prem} => {body}" if prem else body


def _term_vars(t, acc):
    if isinstance(t, Var):
        if t.name not in acc:
            acc.append(t.name)
    elif isinstance(t, (Delta, Nabla)):
        _term_vars(t.arg, acc)
    elif isinstance(t, App):
        for a in t.args:
            _term_vars(a, acc)


def quasiequation_vars(q):
    acc = []
    for s, t in list(q.premises) + [q.conclusion]:
        _term_vars(s, acc)
        _term_vars(t, acc)
    return acc


def generate_axioms(M, E, signature):
    """The quasiequation schema of the interval class.

    Built from: per-operation center-closure quasiequations, the input
    axioms ``M`` relativized to central elements, the determination
    quasiequation, the order equations of ``E`` instantiated at the two
    collapses, the collapse-distribution equations steered by polarity,
    and the constant laws.
    """
    axioms = []
    x = Var("x")
    y = Var("y")

    for sym in signature:
        xs = tuple(Var(f"x{i + 1}") for i in range(sym.arity))
        fx = App(sym.name, xs)
        axioms.append(
            Quasiequation(
                f"center_closed_{sym.name}",
                tuple((Delta(v), v) for v in xs),
                (Delta(fx), fx),
            )
        )

    for q in M:
        names = quasiequation_vars(q)
        relativized = tuple((Delta(Var(n)), Var(n)) for n in names) + tuple(
            q.premises
        )
        axioms.append(
            Quasiequation(f"relativized_{q.name}", relativized, q.conclusion)
        )

    axioms.append(
        Quasiequation(
            "determination",
            ((Delta(x), Delta(y)), (Nabla(x), Nabla(y))),
            (x, y),
        )
    )

    for idx, (t, s) in enumerate(E, start=1):
        sub = {"x": Delta(x), "y": Nabla(x)}
        axioms.append(
            Quasiequation(
                f"order_equation_{idx}",
                (),
                (_substitute_algebra(t, sub), _substitute_algebra(s, sub)),
            )
        )

    for sym in signature:
        xs = tuple(Var(f"x{i + 1}") for i in range(sym.arity))
        lo_args = tuple(
            Delta(v) if p == "+" else Nabla(v) for v, p in zip(xs, sym.polarity)
        )
        hi_args = tuple(
            Nabla(v) if p == "+" else Delta(v) for v, p in zip(xs, sym.polarity)
        )
        axioms.append(
            Quasiequation(
                f"delta_dist_{sym.name}",
                (),
                (Delta(App(sym.name, xs)), App(sym.name, lo_args)),
            )
        )
        axioms.append(
            Quasiequation(
                f"nabla_dist_{sym.name}",
                (),
                (Nabla(App(sym.name, xs)), App(sym.name, hi_args)),
            )
        )

    iota = ConstIota()
    axioms.extend(
        [
            Quasiequation("delta_iota", (), (Delta(iota), Const0())),
            Quasiequation("nabla_iota", (), (Nabla(iota), Const1())),
            Quasiequation("delta_idem", (), (Delta(Delta(x)), Delta(x))),
            Quasiequation("nabla_delta", (), (Nabla(Delta(x)), Delta(x))),
            Quasiequation("nabla_idem", (), (Nabla(Nabla(x)), Nabla(x))),
            Quasiequation("delta_nabla", (), (Delta(Nabla(x)), Nabla(x))),
        ]
    )
    return axioms


def _substitute_algebra(t, sub):
    if isinstance(t, Var):
        return sub.get(t.name, t)
    if isinstance(t, Delta):
        return Delta(_substitute_algebra(t.arg, sub))
    if isinstance(t, Nabla):
        return Nabla(_substitute_algebra(t.arg, sub))
    if isinstance(t, App):
        return App(t.name, tuple(_substitute_algebra(a, sub) for a in t.args))
    return t


def check_quasiequation(algebra, q, budget=DEFAULT_BUDGET):
    """Exhaustively check a quasiequation; returns a counterexample
    assignment or None.  ``algebra`` may be a base algebra or an interval
    algebra; terms are evaluated by its own ``eval``."""
    names = quasiequation_vars(q)
    universe = algebra.elements if isinstance(algebra, IntervalAlgebra) else algebra.carrier
    total = len(universe) ** len(names)
    if total > budget:
        raise EnumerationBudgetError(total, budget)
    for values in itertools.product(universe, repeat=len(names)):
        env = dict(zip(names, values))
        if all(algebra.eval(s, env) == algebra.eval(t, env) for s, t in q.premises):
            s, t = q.conclusion
            if algebra.eval(s, env) != algebra.eval(t, env):
                return env
    return None


def order_equations_determine(algebra, E):
    """Check that joint satisfaction of E at (a, b) is equivalent to a <= b."""
    violations = []
    for a in algebra.carrier:
        for b in algebra.carrier:
            env = {"x": a, "y": b}
            holds = all(
                algebra.eval(t, env) == algebra.eval(s, env) for t, s in E
            )
            if holds != algebra.leq(a, b):
                violations.append((a, b, holds))
    return ValidationReport(not violations, tuple(violations))


@dataclass(frozen=True)
class EquivalenceReport:
    center_generates: bool  # criterion: degenerates + iota generate everything
    generated_size: int
    total_size: int
    missing: tuple
    reconstruction_ok: object  # None when no term was supplied
    reconstruction_failures: tuple

    @property
    def equivalent(self):
        if self.reconstruction_ok is None:
            return self.center_generates
        return self.center_generates and self.reconstruction_ok


def check_equivalence(algebra, term=None):
    """Check the two effective criteria for the construction being lossless.

    First, whether the degenerate intervals together with the full interval
    generate the whole interval algebra (computed by worklist closure, run
    under two different application orders as a self-check).  Second, when a
    two-variable reconstruction term t(y, z) is supplied, whether
    t(delta x, nabla x) = x holds for every interval x.
    """
    J = build_interval_algebra(algebra)
    seed = set(J.center_elements())
    seed.add(J.iota)
    generated = J.generated_closure(seed, "forward")
    again = J.generated_closure(seed, "reversed")
    if generated != again:
        raise InternalStructureError("closure depends on application order")
    missing = tuple(x for x in J.elements if x not in generated)
    recon_ok = None
    failures = []
    if term is not None:
        for x in J.elements:
            env = {"y": J.delta[x], "z": J.nabla[x]}
            if J.eval(term, env) != x:
                failures.append(x)
        recon_ok = not failures
    return EquivalenceReport(
        center_generates=not missing,
        generated_size=len(generated),
        total_size=len(J.elements),
        missing=missing,
        reconstruction_ok=recon_ok,
        reconstruction_failures=tuple(failures),
    )


def pointwise_image(algebra, opname, *interval_args):
    """The raw set {f(e1, ..., en) : ei in the i-th interval}.

    In general this set is smaller than the endpoint-computed interval;
    comparing the two exhibits why interval operations are defined
    endpoint-wise rather than as set images.
    """
    sym, table = algebra.ops[opname]
    ranges = []
    for lo, hi in interval_args:
        ranges.append(
            [e for e in algebra.carrier if algebra.leq(lo, e) and algebra.leq(e, hi)]
        )
    return {table[args] for args in itertools.product(*ranges)}


# ---------------------------------------------------------------------------
# Built-in algebras


def godel_chain(n):
    """The n-element chain with min, max, and the chain implication."""
    if n < 2:
        raise ValueError("a bounded chain needs at least two elements")
    letters = [chr(ord("a") + i) for i in range(n - 2)]
    carrier = ["0"] + letters + ["1"]
    rank = {e: i for i, e in enumerate(carrier)}
    pairs = [
        (a, b) for a in carrier for b in carrier if rank[a] <= rank[b]
    ]
    meet = {(a, b): a if rank[a] <= rank[b] else b for a in carrier for b in carrier}
    join = {(a, b): b if rank[a] <= rank[b] else a for a in carrier for b in carrier}
    imp = {
        (a, b): "1" if rank[a] <= rank[b] else b for a in carrier for b in carrier
    }
    ops = {
        "meet": (("+", "+"), meet),
        "join": (("+", "+"), join),
        "imp": (("-", "+"), imp),
    }
    return FinitePoalgebra(carrier, pairs, "0", "1", ops)


def hilbert_chain3():
    """The three-element chain with implication only."""
    carrier = ["0", "a", "1"]
    rank = {e: i for i, e in enumerate(carrier)}
    pairs = [(a, b) for a in carrier for b in carrier if rank[a] <= rank[b]]
    imp = {
        (a, b): "1" if rank[a] <= rank[b] else b for a in carrier for b in carrier
    }
    return FinitePoalgebra(carrier, pairs, "0", "1", {"imp": (("-", "+"), imp)})


def lukasiewicz_chain(k):
    """The chain {0, 1/k, ..., 1} with its three standard operations."""
    from gmpy2 import mpq

    if k < 1:
        raise ValueError("chain resolution must be >= 1")
    carrier = [str(mpq(j, k)) for j in range(k + 1)]
    num = {name: j for j, name in enumerate(carrier)}
    pairs = [(a, b) for a in carrier for b in carrier if num[a] <= num[b]]
    neg = {(a,): carrier[k - num[a]] for a in carrier}
    oplus = {
        (a, b): carrier[min(k, num[a] + num[b])] for a in carrier for b in carrier
    }
    odot = {
        (a, b): carrier[max(0, num[a] + num[b] - k)]
        for a in carrier
        for b in carrier
    }
    ops = {
        "neg": (("-",), neg),
        "oplus": (("+", "+"), oplus),
        "odot": (("+", "+"), odot),
    }
    return FinitePoalgebra(carrier, pairs, carrier[0], carrier[k], ops)


_x = Var("x")
_y = Var("y")

LATTICE_ORDER_EQUATIONS = [(App("meet", (_x, _y)), _x)]
MV_ORDER_EQUATIONS = [(App("oplus", (App("neg", (_x,)), _y)), Const1())]
HILBERT_ORDER_EQUATIONS = [(App("imp", (_x, _y)), Const1())]


def lattice_reconstruction_term():
    """t(y, z) = meet(join(i, y), z), for signatures with lattice ops."""
    return App("meet", (App("join", (ConstIota(), Var("y"))), Var("z")))


def mv_reconstruction_term():
    """t(y, z) = y (+) (i (.) z (.) ~y), for the three-operation chains."""
    return App(
        "oplus",
        (
            Var("y"),
            App(
                "odot",
                (App("odot", (ConstIota(), Var("z"))), App("neg", (Var("y"),))),
            ),
        ),
    )
