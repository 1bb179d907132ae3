"""Syntax trees for the connective language, plus parser, printer, evaluators.

The term grammar (whitespace-insensitive)::

    term   := impl
    impl   := sum ( "->" impl )?
    sum    := prod ( "+" prod )*
    prod   := unary ( "*" unary )*
    unary  := ("~" | "D" | "N") unary | atom
    atom   := "0" | "1" | "i" | IDENT | "(" term ")"
    IDENT  := letter (letter | digit | "_")*   excluding the keywords D, N, i

``D`` and ``N`` are the lower/upper collapse operators, ``i`` the full
interval [0, 1].  ``->`` is right-associative sugar for ``~u + v``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import Interval, unit, mv_neg, mv_oplus, mv_odot, ChainElement

__all__ = [
    "Term",
    "Var",
    "Const0",
    "Const1",
    "ConstIota",
    "Neg",
    "Delta",
    "Nabla",
    "Oplus",
    "Odot",
    "Arrow",
    "ZERO",
    "ONE",
    "IOTA",
    "ParseError",
    "ReservedNameError",
    "UnboundVariableError",
    "NonMvTermError",
    "parse",
    "print_term",
    "free_vars",
    "variable_order",
    "term_size",
    "is_mv_term",
    "substitute",
    "desugar",
    "eval_imv",
    "eval_mv",
    "eval_imv_chain",
]

RESERVED_WORDS = frozenset({"D", "N", "i"})

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class ReservedNameError(ValueError):
    """A reserved word (D, N, i) was used where a variable is required."""


class UnboundVariableError(LookupError):
    """A valuation is missing one of the term's free variables."""


class NonMvTermError(ValueError):
    """A collapse operator or the constant i appeared where a plain
    monoidal term was required."""


class Term:
    """Base class for all term nodes.  Nodes are immutable and hashable."""

    __slots__ = ()

    def __add__(self, other):
        return Oplus(self, other)

    def __mul__(self, other):
        return Odot(self, other)

    def __invert__(self):
        return Neg(self)

    def __str__(self):
        return print_term(self)


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str

    def __post_init__(self):
        if self.name in RESERVED_WORDS:
            raise ReservedNameError(
                f"{self.name!r} is a reserved word and cannot name a variable"
            )
        if _IDENT_RE.fullmatch(self.name) is None:
            raise ValueError(f"{self.name!r} is not a legal variable name")


@dataclass(frozen=True, slots=True)
class Const0(Term):
    pass


@dataclass(frozen=True, slots=True)
class Const1(Term):
    pass


@dataclass(frozen=True, slots=True)
class ConstIota(Term):
    pass


@dataclass(frozen=True, slots=True)
class Neg(Term):
    arg: Term


@dataclass(frozen=True, slots=True)
class Delta(Term):
    arg: Term


@dataclass(frozen=True, slots=True)
class Nabla(Term):
    arg: Term


@dataclass(frozen=True, slots=True)
class Oplus(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Odot(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Arrow(Term):
    """Implication sugar: ``Arrow(u, v)`` abbreviates ``Oplus(Neg(u), v)``."""

    left: Term
    right: Term


ZERO = Const0()
ONE = Const1()
IOTA = ConstIota()


# ---------------------------------------------------------------------------
# Parsing


class ParseError(ValueError):
    """Syntax error with a byte offset and the set of expected tokens."""

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        suffix = ""
        if self.expected:
            suffix = " (expected " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(f"{message} at offset {offset}{suffix}")


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<arrow>->)"
    r"|(?P<plus>\+)"
    r"|(?P<star>\*)"
    r"|(?P<tilde>~)"
    r"|(?P<lparen>\()"
    r"|(?P<rparen>\))"
    r"|(?P<word>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<digits>\d+)"
)

_ATOM_EXPECTED = ("0", "1", "i", "identifier", "(", "~", "D", "N")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        value = m.group()
        if kind == "word":
            if value == "D":
                kind = "delta"
            elif value == "N":
                kind = "nabla"
            elif value == "i":
                kind = "iota"
            else:
                kind = "ident"
        elif kind == "digits":
            if value not in ("0", "1"):
                raise ParseError(
                    f"numeric literal {value!r} is not a truth constant", pos,
                    expected=("0", "1"),
                )
            kind = "zero" if value == "0" else "one"
        if kind != "ws":
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, expected):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(
                f"unexpected token {tok[1] or 'end of input'!r}", tok[2], expected
            )
        return self.advance()

    def parse_term(self):
        left = self.parse_sum()
        if self.peek()[0] == "arrow":
            self.advance()
            right = self.parse_term()
            return Arrow(left, right)
        return left

    def parse_sum(self):
        node = self.parse_prod()
        while self.peek()[0] == "plus":
            self.advance()
            node = Oplus(node, self.parse_prod())
        return node

    def parse_prod(self):
        node = self.parse_unary()
        while self.peek()[0] == "star":
            self.advance()
            node = Odot(node, self.parse_unary())
        return node

    def parse_unary(self):
        kind, _value, _pos = self.peek()
        if kind == "tilde":
            self.advance()
            return Neg(self.parse_unary())
        if kind == "delta":
            self.advance()
            return Delta(self.parse_unary())
        if kind == "nabla":
            self.advance()
            return Nabla(self.parse_unary())
        return self.parse_atom()

    def parse_atom(self):
        kind, value, pos = self.peek()
        if kind == "zero":
            self.advance()
            return ZERO
        if kind == "one":
            self.advance()
            return ONE
        if kind == "iota":
            self.advance()
            return IOTA
        if kind == "ident":
            self.advance()
            return Var(value)
        if kind == "lparen":
            self.advance()
            node = self.parse_term()
            self.expect("rparen", (")",))
            return node
        raise ParseError(
            f"unexpected token {value or 'end of input'!r}", pos, _ATOM_EXPECTED
        )


def parse(text):
    """Parse a term; raises ParseError with offset and expected-token set."""
    p = _Parser(text)
    node = p.parse_term()
    kind, value, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {value!r}", pos)
    return node


# ---------------------------------------------------------------------------
# Printing

_LVL_IMPL = 0
_LVL_SUM = 1
_LVL_PROD = 2
_LVL_UNARY = 3
_LVL_ATOM = 4


def _print(t, min_level, out):
    if isinstance(t, Var):
        out.append(t.name)
        return
    if isinstance(t, Const0):
        out.append("0")
        return
    if isinstance(t, Const1):
        out.append("1")
        return
    if isinstance(t, ConstIota):
        out.append("i")
        return
    if isinstance(t, Neg):
        if min_level > _LVL_UNARY:
            out.append("(~")
            _print(t.arg, _LVL_UNARY, out)
            out.append(")")
        else:
            out.append("~")
            _print(t.arg, _LVL_UNARY, out)
        return
    if isinstance(t, (Delta, Nabla)):
        op = "D" if isinstance(t, Delta) else "N"
        parens = min_level > _LVL_UNARY
        if parens:
            out.append("(")
        # A space keeps the keyword from fusing with a following identifier,
        # except when the operand brings its own parentheses.
        sub = []
        _print(t.arg, _LVL_UNARY, sub)
        out.append(op if sub[0].startswith("(") else op + " ")
        out.extend(sub)
        if parens:
            out.append(")")
        return
    if isinstance(t, Odot):
        parens = min_level > _LVL_PROD
        if parens:
            out.append("(")
        _print(t.left, _LVL_PROD, out)
        out.append(" * ")
        _print(t.right, _LVL_UNARY, out)
        if parens:
            out.append(")")
        return
    if isinstance(t, Oplus):
        parens = min_level > _LVL_SUM
        if parens:
            out.append("(")
        _print(t.left, _LVL_SUM, out)
        out.append(" + ")
        _print(t.right, _LVL_PROD, out)
        if parens:
            out.append(")")
        return
    if isinstance(t, Arrow):
        parens = min_level > _LVL_IMPL
        if parens:
            out.append("(")
        _print(t.left, _LVL_SUM, out)
        out.append(" -> ")
        _print(t.right, _LVL_IMPL, out)
        if parens:
            out.append(")")
        return
    raise TypeError(f"not a printable term node: {t!r}")


def print_term(t):
    """Minimal-parenthesis rendering; ``parse(print_term(t)) == t``."""
    out = []
    _print(t, _LVL_IMPL, out)
    return "".join(out)


# ---------------------------------------------------------------------------
# Structural helpers


def free_vars(t):
    """The set of variable names occurring in the term."""
    names = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            names.add(node.name)
        elif isinstance(node, (Neg, Delta, Nabla)):
            stack.append(node.arg)
        elif isinstance(node, (Oplus, Odot, Arrow)):
            stack.append(node.right)
            stack.append(node.left)
    return names


def variable_order(*terms):
    """Variable names in order of first occurrence, scanning left to right."""
    order = []
    seen = set()

    def walk(node):
        if isinstance(node, Var):
            if node.name not in seen:
                seen.add(node.name)
                order.append(node.name)
        elif isinstance(node, (Neg, Delta, Nabla)):
            walk(node.arg)
        elif isinstance(node, (Oplus, Odot, Arrow)):
            walk(node.left)
            walk(node.right)

    for t in terms:
        walk(t)
    return order


def term_size(t):
    """Number of nodes in the tree."""
    if isinstance(t, (Var, Const0, Const1, ConstIota)):
        return 1
    if isinstance(t, (Neg, Delta, Nabla)):
        return 1 + term_size(t.arg)
    return 1 + term_size(t.left) + term_size(t.right)


def is_mv_term(t):
    """True when the term uses no collapse operators and no constant i."""
    if isinstance(t, (Delta, Nabla, ConstIota)):
        return False
    if isinstance(t, Neg):
        return is_mv_term(t.arg)
    if isinstance(t, (Oplus, Odot, Arrow)):
        return is_mv_term(t.left) and is_mv_term(t.right)
    return True


def substitute(t, mapping):
    """Simultaneous substitution of terms for variables (no binders, so
    capture is impossible)."""
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Neg):
        return Neg(substitute(t.arg, mapping))
    if isinstance(t, Delta):
        return Delta(substitute(t.arg, mapping))
    if isinstance(t, Nabla):
        return Nabla(substitute(t.arg, mapping))
    if isinstance(t, Oplus):
        return Oplus(substitute(t.left, mapping), substitute(t.right, mapping))
    if isinstance(t, Odot):
        return Odot(substitute(t.left, mapping), substitute(t.right, mapping))
    if isinstance(t, Arrow):
        return Arrow(substitute(t.left, mapping), substitute(t.right, mapping))
    return t


def desugar(t):
    """Replace every Arrow(u, v) by Oplus(Neg(u), v)."""
    if isinstance(t, Arrow):
        return Oplus(Neg(desugar(t.left)), desugar(t.right))
    if isinstance(t, Neg):
        return Neg(desugar(t.arg))
    if isinstance(t, Delta):
        return Delta(desugar(t.arg))
    if isinstance(t, Nabla):
        return Nabla(desugar(t.arg))
    if isinstance(t, Oplus):
        return Oplus(desugar(t.left), desugar(t.right))
    if isinstance(t, Odot):
        return Odot(desugar(t.left), desugar(t.right))
    return t


# ---------------------------------------------------------------------------
# Evaluation


def eval_imv(t, valuation):
    """Evaluate over interval truth values.

    ``valuation`` maps variable names to :class:`Interval`; it must cover all
    free variables of the term.
    """
    if isinstance(t, Var):
        try:
            return valuation[t.name]
        except KeyError:
            raise UnboundVariableError(f"no value for variable {t.name!r}") from None
    if isinstance(t, Neg):
        return eval_imv(t.arg, valuation).neg()
    if isinstance(t, Oplus):
        return eval_imv(t.left, valuation).oplus(eval_imv(t.right, valuation))
    if isinstance(t, Odot):
        return eval_imv(t.left, valuation).odot(eval_imv(t.right, valuation))
    if isinstance(t, Delta):
        return eval_imv(t.arg, valuation).delta()
    if isinstance(t, Nabla):
        return eval_imv(t.arg, valuation).nabla()
    if isinstance(t, Arrow):
        return eval_imv(t.left, valuation).neg().oplus(eval_imv(t.right, valuation))
    if isinstance(t, Const0):
        return Interval.zero()
    if isinstance(t, Const1):
        return Interval.one()
    if isinstance(t, ConstIota):
        return Interval.iota()
    raise TypeError(f"not an evaluable term node: {t!r}")


def eval_mv(t, valuation):
    """Evaluate a plain monoidal term over scalar truth values.

    Raises :class:`NonMvTermError` on collapse operators or the constant i.
    """
    if isinstance(t, Var):
        try:
            return valuation[t.name]
        except KeyError:
            raise UnboundVariableError(f"no value for variable {t.name!r}") from None
    if isinstance(t, Neg):
        return mv_neg(eval_mv(t.arg, valuation))
    if isinstance(t, Oplus):
        return mv_oplus(eval_mv(t.left, valuation), eval_mv(t.right, valuation))
    if isinstance(t, Odot):
        return mv_odot(eval_mv(t.left, valuation), eval_mv(t.right, valuation))
    if isinstance(t, Arrow):
        return mv_oplus(mv_neg(eval_mv(t.left, valuation)), eval_mv(t.right, valuation))
    if isinstance(t, Const0):
        return unit(0)
    if isinstance(t, Const1):
        return unit(1)
    if isinstance(t, (Delta, Nabla, ConstIota)):
        raise NonMvTermError(
            f"{type(t).__name__} is not part of the scalar language"
        )
    raise TypeError(f"not an evaluable term node: {t!r}")


def eval_imv_chain(t, valuation, k=None):
    """Evaluate over interval values with endpoints on a finite chain.

    ``valuation`` maps names to (lo, hi) pairs of :class:`ChainElement`.
    ``k`` is only needed for closed terms; otherwise it is read off the
    valuation.  Mirrors :func:`eval_imv` through the chain embedding.
    """
    if k is None:
        for pair in valuation.values():
            k = pair[0].k
            break
        if k is None:
            raise ValueError("chain resolution k is required for closed terms")

    def ev(node):
        if isinstance(node, Var):
            try:
                return valuation[node.name]
            except KeyError:
                raise UnboundVariableError(
                    f"no value for variable {node.name!r}"
                ) from None
        if isinstance(node, Neg):
            lo, hi = ev(node.arg)
            return (hi.neg(), lo.neg())
        if isinstance(node, Oplus):
            a, b = ev(node.left)
            c, d = ev(node.right)
            return (a.oplus(c), b.oplus(d))
        if isinstance(node, Odot):
            a, b = ev(node.left)
            c, d = ev(node.right)
            return (a.odot(c), b.odot(d))
        if isinstance(node, Delta):
            lo, _hi = ev(node.arg)
            return (lo, lo)
        if isinstance(node, Nabla):
            _lo, hi = ev(node.arg)
            return (hi, hi)
        if isinstance(node, Arrow):
            a, b = ev(node.left)
            c, d = ev(node.right)
            return (b.neg().oplus(c), a.neg().oplus(d))
        if isinstance(node, Const0):
            z = ChainElement(k, 0)
            return (z, z)
        if isinstance(node, Const1):
            o = ChainElement(k, k)
            return (o, o)
        if isinstance(node, ConstIota):
            return (ChainElement(k, 0), ChainElement(k, k))
        raise TypeError(f"not an evaluable term node: {node!r}")

    return ev(t)
