"""Exact truth values: unit rationals, intervals, and finite chains.

Scalars are exact rationals in [0, 1], represented as ``gmpy2.mpq`` (always
in lowest terms, structural equality for free).  Interval truth values are
ordered pairs of scalars.  Everything here is immutable and pure, so values
can be shared freely between threads.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

__all__ = [
    "ZERO",
    "ONE",
    "unit",
    "parse_rational",
    "format_rational",
    "mv_neg",
    "mv_oplus",
    "mv_odot",
    "Interval",
    "zeta",
    "ChainMismatchError",
    "ChainElement",
    "chain_elements",
    "chain_intervals",
]

ZERO = mpq(0)
ONE = mpq(1)

_RATIONAL_RE = re.compile(r"(\d+)\s*(?:/\s*(\d+))?")


def unit(value, denominator=None):
    """Coerce to an exact rational and check it lies in [0, 1]."""
    q = mpq(value) if denominator is None else mpq(value, denominator)
    if q < 0 or q > 1:
        raise ValueError(f"truth value {q} is outside [0, 1]")
    return q


def parse_rational(text):
    """Parse ``p/q`` (or a bare nonnegative integer) into a unit rational.

    Decimal notation is rejected on purpose: the whole pipeline is exact.
    """
    s = text.strip()
    m = _RATIONAL_RE.fullmatch(s)
    if m is None:
        if "." in s:
            raise ValueError(
                f"{text!r}: decimal numbers are not accepted; "
                "write an exact fraction such as 3/10"
            )
        raise ValueError(f"{text!r} is not a rational of the form p/q")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"{text!r} has denominator zero")
    return unit(num, den)


def format_rational(q):
    """Render a rational as ``p/q``, or just ``p`` for integers."""
    return str(mpq(q))


def mv_neg(a):
    """Standard negation 1 - a."""
    return ONE - a


def mv_oplus(a, b):
    """Truncated sum min(1, a + b)."""
    s = a + b
    return s if s < 1 else ONE


def mv_odot(a, b):
    """Strong conjunction max(0, a + b - 1)."""
    s = a + b - 1
    return s if s > 0 else ZERO


class Interval:
    """Closed subinterval [lo, hi] of the rational unit interval.

    Degenerate intervals (lo == hi) are ordinary intervals; the library
    treats "being degenerate" as a predicate, not a separate type.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = unit(lo)
        hi = lo if hi is None else unit(hi)
        if lo > hi:
            raise ValueError(f"interval endpoints out of order: {lo} > {hi}")
        self.lo = lo
        self.hi = hi

    @classmethod
    def _make(cls, lo, hi):
        # Internal fast path: callers guarantee 0 <= lo <= hi <= 1.
        iv = object.__new__(cls)
        iv.lo = lo
        iv.hi = hi
        return iv

    @classmethod
    def zero(cls):
        return _ZERO_IV

    @classmethod
    def one(cls):
        return _ONE_IV

    @classmethod
    def iota(cls):
        """The full interval [0, 1]."""
        return _IOTA_IV

    @classmethod
    def parse(cls, text):
        """Parse ``[p/q, r/s]``; a bare ``p/q`` is the degenerate interval."""
        s = text.strip()
        if s.startswith("["):
            if not s.endswith("]"):
                raise ValueError(f"{text!r}: missing closing bracket")
            parts = s[1:-1].split(",")
            if len(parts) != 2:
                raise ValueError(f"{text!r}: expected two comma-separated endpoints")
            return cls(parse_rational(parts[0]), parse_rational(parts[1]))
        return cls(parse_rational(s))

    # -- basic operations -------------------------------------------------

    def neg(self):
        """Pointwise negation: [1 - hi, 1 - lo]."""
        return Interval._make(ONE - self.hi, ONE - self.lo)

    def oplus(self, other):
        """Truncated sum, computed endpoint-wise."""
        lo = self.lo + other.lo
        hi = self.hi + other.hi
        return Interval._make(lo if lo < 1 else ONE, hi if hi < 1 else ONE)

    def odot(self, other):
        """Strong conjunction, the negation-dual of the truncated sum."""
        lo = self.lo + other.lo - 1
        hi = self.hi + other.hi - 1
        return Interval._make(lo if lo > 0 else ZERO, hi if hi > 0 else ZERO)

    def delta(self):
        """Collapse to the lower endpoint: [lo, lo]."""
        return Interval._make(self.lo, self.lo)

    def nabla(self):
        """Collapse to the upper endpoint: [hi, hi]."""
        return Interval._make(self.hi, self.hi)

    def is_central(self):
        """True when the lower and the upper collapse agree (lo == hi)."""
        return self.lo == self.hi

    # -- derived operations ------------------------------------------------

    def bold_meet(self, other):
        """The term-defined meet: not(not(u) odot v) odot v."""
        return self.neg().odot(other).neg().odot(other)

    def bold_join(self, other):
        """The term-defined join: not(not(u) oplus v) oplus v."""
        return self.neg().oplus(other).neg().oplus(other)

    def product_meet(self, other):
        """Meet of the componentwise (product) order."""
        return Interval._make(min(self.lo, other.lo), min(self.hi, other.hi))

    def product_join(self, other):
        """Join of the componentwise (product) order."""
        return Interval._make(max(self.lo, other.lo), max(self.hi, other.hi))

    def inclusion_join(self, other):
        """Least common superinterval: [min lo, max hi]."""
        return Interval._make(min(self.lo, other.lo), max(self.hi, other.hi))

    def leq_product(self, other):
        """Componentwise order: lo <= lo' and hi <= hi'."""
        return self.lo <= other.lo and self.hi <= other.hi

    def leq_inclusion(self, other):
        """Set inclusion: [lo, hi] is a subinterval of [lo', hi']."""
        return other.lo <= self.lo and self.hi <= other.hi

    # -- plumbing ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Interval):
            return self.lo == other.lo and self.hi == other.hi
        return NotImplemented

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


_ZERO_IV = Interval._make(ZERO, ZERO)
_ONE_IV = Interval._make(ONE, ONE)
_IOTA_IV = Interval._make(ZERO, ONE)


def zeta(u, v):
    """Rebuild an interval from two central values.

    Computed literally as the defining term
    ``delta(u) oplus (iota odot nabla(v) odot not(delta(u)))``;
    for degenerate u = [a, a], v = [b, b] with a <= b this yields [a, b].
    """
    du = u.delta()
    return du.oplus(Interval.iota().odot(v.nabla()).odot(du.neg()))


class ChainMismatchError(ValueError):
    """Raised when elements of different finite chains are combined."""


class ChainElement:
    """Element ``num / k`` of the evenly spaced chain {0, 1/k, ..., 1}.

    The chain is closed under the three basic operations and embeds into the
    unit rationals via :meth:`to_unit`; the embedding preserves all of them.
    Elements remember their chain, and mixing chains raises rather than
    silently coercing.
    """

    __slots__ = ("k", "num")

    def __init__(self, k, num):
        if k < 1:
            raise ValueError(f"chain resolution must be >= 1, got {k}")
        if not 0 <= num <= k:
            raise ValueError(f"chain element {num}/{k} is outside [0, 1]")
        self.k = k
        self.num = num

    def _check(self, other):
        if self.k != other.k:
            raise ChainMismatchError(
                f"cannot combine elements of chains with k={self.k} and k={other.k}"
            )

    def neg(self):
        return ChainElement(self.k, self.k - self.num)

    def oplus(self, other):
        self._check(other)
        return ChainElement(self.k, min(self.k, self.num + other.num))

    def odot(self, other):
        self._check(other)
        return ChainElement(self.k, max(0, self.num + other.num - self.k))

    def to_unit(self):
        return mpq(self.num, self.k)

    def __eq__(self, other):
        if isinstance(other, ChainElement):
            return self.k == other.k and self.num == other.num
        return NotImplemented

    def __hash__(self):
        return hash((self.k, self.num))

    def __le__(self, other):
        self._check(other)
        return self.num <= other.num

    def __repr__(self):
        return f"ChainElement({self.k}, {self.num})"

    def __str__(self):
        return format_rational(mpq(self.num, self.k))


def chain_elements(k):
    """All k + 1 elements of the chain, in increasing order."""
    return [ChainElement(k, j) for j in range(k + 1)]


def chain_intervals(k):
    """All intervals with endpoints on the chain, as exact Intervals.

    There are (k + 1)(k + 2) / 2 of them.
    """
    return [
        Interval._make(mpq(a, k), mpq(b, k))
        for a in range(k + 1)
        for b in range(a, k + 1)
    ]
