"""Sparse multivariate polynomials over Q.

A polynomial is an immutable map from exponent tuples to nonzero
:class:`~fractions.Fraction` coefficients. Iteration is always in sorted
exponent order so that every printed form is deterministic.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import (
    ExpansionTooLarge,
    NotCertifiedPositive,
    PolynomialParseError,
    VarArityMismatch,
    ZeroPolynomial,
)
from .exact import format_rational

Exponent = tuple[int, ...]

DEFAULT_MAX_MONOMIALS = 10**6


def max_monomials() -> int:
    raw = os.environ.get("MZV_MAX_MONOMIALS")
    if raw is None:
        return DEFAULT_MAX_MONOMIALS
    try:
        return max(1, int(float(raw)))
    except ValueError:
        return DEFAULT_MAX_MONOMIALS


def _order(term):
    # graded, then lexicographic with X1 leading
    exp = term[0]
    return (sum(exp), tuple(-e for e in exp))


class MultiPoly:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | Iterable = ()):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise VarArityMismatch(f"exponent {exp} does not fit {nvars} variables")
            acc[exp] = acc.get(exp, Fraction(0)) + Fraction(c)
        self.nvars = nvars
        self._terms = tuple(sorted(((e, c) for e, c in acc.items() if c != 0), key=_order))
        self._hash = None

    @classmethod
    def constant(cls, c, nvars: int = 0) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> MultiPoly:
        """The variable X_{i+1} (0-based index i)."""
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def _from_sorted(cls, nvars: int, terms: dict[Exponent, Fraction]) -> MultiPoly:
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = tuple(sorted(((e, c) for e, c in terms.items() if c != 0), key=_order))
        obj._hash = None
        return obj

    # -- views -------------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e, _ in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms[0][1] if self._terms else Fraction(0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def degree(self) -> int:
        return max((sum(e) for e, _ in self._terms), default=0)

    def __call__(self, *point):
        if len(point) != self.nvars:
            raise VarArityMismatch(f"expected {self.nvars} values, got {len(point)}")
        total = 0
        for exp, c in self._terms:
            t = c
            for x, e in zip(point, exp):
                if e:
                    t = t * x**e
            total = total + t
        return total

    # -- ring operations -----------------------------------------------------

    def _check(self, other: MultiPoly):
        if other.nvars != self.nvars:
            raise VarArityMismatch(f"nvars {self.nvars} vs {other.nvars}")

    @staticmethod
    def _lift(x, nvars: int) -> MultiPoly:
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return MultiPoly.constant(x, nvars)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    def __add__(self, other):
        try:
            other = self._lift(other, self.nvars)
        except TypeError:
            return NotImplemented
        self._check(other)
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return MultiPoly._from_sorted(self.nvars, acc)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._from_sorted(self.nvars, {e: -c for e, c in self._terms})

    def __sub__(self, other):
        try:
            other = self._lift(other, self.nvars)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._lift(other, self.nvars)
        except TypeError:
            return NotImplemented
        self._check(other)
        acc: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return MultiPoly._from_sorted(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial exponent must be a non-negative integer")
        out = MultiPoly.constant(1, self.nvars)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self._terms))
        return self._hash

    # -- text ------------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self._terms:
            factors = []
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(f"X{i + 1}")
                elif e > 1:
                    factors.append(f"X{i + 1}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {str(self)!r})"

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> MultiPoly:
        return parse_poly(text, nvars)


# ---------------------------------------------------------------------------
# Parser: sum of "c*X1^e1*...*Xn^en" terms

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:/\d+)?)|(?P<var>X\d*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialParseError(f"unexpected character at offset {pos} in {text!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


def parse_poly(text: str, nvars: int | None = None) -> MultiPoly:
    """Parse the polynomial grammar. ``X`` is shorthand for ``X1``.

    When ``nvars`` is omitted the largest variable index seen is used.
    """
    if not isinstance(text, str) or not text.strip():
        raise PolynomialParseError("empty polynomial string")
    tokens = _tokenize(text)
    terms: list[tuple[Fraction, dict[int, int]]] = []
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    while True:
        sign = 1
        kind, val = peek()
        while kind == "op" and val in "+-":
            if val == "-":
                sign = -sign
            i += 1
            kind, val = peek()
        coeff = Fraction(sign)
        powers: dict[int, int] = {}
        expect_factor = True
        while expect_factor:
            kind, val = peek()
            if kind == "num":
                coeff *= Fraction(val)
                i += 1
            elif kind == "var":
                idx = int(val[1:]) if len(val) > 1 else 1
                if idx < 1:
                    raise PolynomialParseError(f"variable index must be >= 1 in {text!r}")
                i += 1
                e = 1
                if peek() == ("op", "^"):
                    i += 1
                    k2, v2 = peek()
                    if k2 != "num" or not v2.isdigit():
                        raise PolynomialParseError(f"exponent must be a non-negative integer in {text!r}")
                    e = int(v2)
                    i += 1
                powers[idx] = powers.get(idx, 0) + e
            else:
                raise PolynomialParseError(f"expected a coefficient or variable in {text!r}")
            if peek() == ("op", "*"):
                i += 1
            else:
                expect_factor = False
        terms.append((coeff, powers))
        kind, val = peek()
        if kind is None:
            break
        if not (kind == "op" and val in "+-"):
            raise PolynomialParseError(f"unexpected token {val!r} in {text!r}")

    top = max((max(p, default=0) for _, p in terms), default=0)
    if nvars is None:
        nvars = top
    elif top > nvars:
        raise VarArityMismatch(f"{text!r} uses X{top} but only {nvars} variables are allowed")
    acc: dict[Exponent, Fraction] = {}
    for coeff, powers in terms:
        exp = tuple(powers.get(j + 1, 0) for j in range(nvars))
        acc[exp] = acc.get(exp, Fraction(0)) + coeff
    return MultiPoly(nvars, acc)


# ---------------------------------------------------------------------------
# Operations used by the value formulas


def poly_add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p + q


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p * q


def poly_pow(p: MultiPoly, e: int) -> MultiPoly:
    return p**e


MonomialExpansion = MultiPoly


@lru_cache(maxsize=4096)
def _expand_cached(R: tuple[MultiPoly, ...], k: tuple[int, ...], nvars: int, cap: int) -> MultiPoly:
    out = MultiPoly.constant(1, nvars)
    for poly, e in zip(R, k):
        for _ in range(e):
            out = out * poly
            if len(out) > cap:
                raise ExpansionTooLarge(
                    f"expansion exceeds {cap} monomials; raise MZV_MAX_MONOMIALS to allow more"
                )
    return out


def expand_product_powers(R: Sequence[MultiPoly], k: Sequence[int], nvars: int | None = None) -> MultiPoly:
    """Monomial expansion of prod R[i]**k[i]; the empty product is 1."""
    if len(R) != len(k):
        raise VarArityMismatch(f"{len(R)} polynomials but {len(k)} exponents")
    if any(e < 0 for e in k):
        raise ValueError("exponents must be non-negative")
    if nvars is None:
        nvars = R[0].nvars if R else 0
    for p in R:
        if p.nvars != nvars:
            raise VarArityMismatch(f"nvars {p.nvars} vs {nvars}")
    return _expand_cached(tuple(R), tuple(int(e) for e in k), nvars, max_monomials())


def decompose_xn(P: MultiPoly) -> list[tuple[MultiPoly, int]]:
    """Write P = sum_j Q_j(X_1..X_{n-1}) X_n^{a_j} with a_0 < ... < a_d."""
    if P.nvars < 1:
        raise VarArityMismatch("decompose_xn needs at least one variable")
    if P.is_zero():
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    groups: dict[int, dict[Exponent, Fraction]] = {}
    for exp, c in P.items():
        groups.setdefault(exp[-1], {})[exp[:-1]] = c
    return [(MultiPoly(P.nvars - 1, groups[a]), a) for a in sorted(groups)]


def check_hdf_sufficient(P: MultiPoly) -> bool:
    """Certify the decay condition on derivatives: nonzero with nonnegative coefficients.

    False means "not certified", not "fails".
    """
    return not P.is_zero() and all(c > 0 for _, c in P.items())


def check_growth_condition(factors: Sequence[MultiPoly], nvars: int | None = None) -> bool:
    """Does the product of ``factors`` tend to infinity on [1, inf)^nvars?

    For nonnegative coefficients this holds iff every variable appears in
    some monomial of some factor.
    """
    for f in factors:
        if not check_hdf_sufficient(f):
            raise NotCertifiedPositive(f"factor {f} is not certified (needs nonnegative coefficients)")
    if nvars is None:
        nvars = factors[0].nvars if factors else 0
    seen = [False] * nvars
    for f in factors:
        if f.nvars != nvars:
            raise VarArityMismatch(f"nvars {f.nvars} vs {nvars}")
        for exp, _ in f.items():
            for i, e in enumerate(exp):
                if e:
                    seen[i] = True
    return all(seen)
