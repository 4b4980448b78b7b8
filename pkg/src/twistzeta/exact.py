"""Exact scalars: Bernoulli and Stirling numbers, Eulerian polynomials,
multinomials, Pochhammer products and cyclotomic field elements.

Rationals are :class:`fractions.Fraction` throughout.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import PartsMismatch

Scalar = Union[int, Fraction]

# ---------------------------------------------------------------------------
# Bernoulli numbers (B_1 = -1/2)

_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(m: int) -> Fraction:
    """B_m with B_1 = -1/2, so that zeta(-m) = -(-1)^(m+1) B_(m+1)/(m+1)."""
    if m < 0:
        raise ValueError("bernoulli index must be non-negative")
    if m > 1 and m % 2 == 1:
        return Fraction(0)
    with _bernoulli_lock:
        cache = _bernoulli_cache
        while len(cache) <= m:
            k = len(cache)
            # sum_{j<=k} C(k+1, j) B_j = 0
            acc = Fraction(0)
            for j in range(k):
                if cache[j]:
                    acc += math.comb(k + 1, j) * cache[j]
            cache.append(-acc / (k + 1))
        return cache[m]


def bernoulli_twisted(m: int) -> Fraction:
    return bernoulli(m) if m % 2 == 0 else -bernoulli(m)


# ---------------------------------------------------------------------------
# Combinatorial integers


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError("stirling2 arguments must be non-negative")
    if n == 0 or k == 0:
        return 1 if n == k else 0
    if k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def eulerian_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of A_n with sum_{m>=0} m^n x^m = A_n(x)/(1-x)^(n+1)."""
    if n < 0:
        raise ValueError("eulerian_poly index must be non-negative")
    if n == 0:
        return (1,)
    prev = eulerian_poly(n - 1)
    # A_n = x(1-x) A_{n-1}' + n x A_{n-1}
    out = [0] * (len(prev) + 1)
    for j, c in enumerate(prev):
        if j:
            out[j] += j * c
            out[j + 1] -= j * c
        out[j + 1] += n * c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def multinomial(N: int, parts: Sequence[int]) -> int:
    if any(p < 0 for p in parts) or sum(parts) != N:
        raise PartsMismatch(f"parts {list(parts)} do not sum to {N}")
    out = math.factorial(N)
    for p in parts:
        out //= math.factorial(p)
    return out


def pochhammer(x: Scalar, n: int) -> Fraction:
    """Rising product x (x+1) ... (x+n-1)."""
    if n < 0:
        raise ValueError("pochhammer length must be non-negative")
    out = Fraction(1)
    x = Fraction(x)
    for j in range(n):
        out *= x + j
    return out


def format_rational(q: Scalar) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Roots of unity


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """mu = exp(2 pi i num/den) with 0 < num < den and gcd(num, den) = 1."""

    num: int
    den: int

    def __post_init__(self):
        if not (0 < self.num < self.den) or math.gcd(self.num, self.den) != 1:
            raise ValueError(
                f"root of unity {self.num}/{self.den} must satisfy 0 < num < den, gcd = 1 "
                "(mu = 1 is excluded)"
            )

    @classmethod
    def parse(cls, text: str) -> RootOfUnity:
        q = Fraction(text.strip())
        q -= math.floor(q)
        return cls(q.numerator, q.denominator)

    @property
    def order(self) -> int:
        return self.den

    def to_complex(self) -> complex:
        return cmath.exp(2j * math.pi * self.num / self.den)

    def cyclotomic(self) -> Cyclotomic:
        return Cyclotomic.root(self.den, self.num)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


# ---------------------------------------------------------------------------
# Cyclotomic fields


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(b: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_b, low degree first."""
    num = [-1] + [0] * (b - 1) + [1]
    for d in _divisors(b)[:-1]:
        num = _exact_divide(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_divide(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dn]  # den is monic
        quot[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def _power_table(b: int) -> tuple[tuple[int, ...], ...]:
    """x^j mod Phi_b as coefficient vectors, for 0 <= j < b."""
    phi = cyclotomic_polynomial(b)
    deg = len(phi) - 1
    rows = []
    v = [1] + [0] * (deg - 1)
    for _ in range(b):
        rows.append(tuple(v))
        top = v[-1]
        v = [0] + v[:-1]
        if top:
            for i in range(deg):
                v[i] -= top * phi[i]
    return tuple(rows)


def _normalize(num: Sequence[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = den
    for c in num:
        g = math.gcd(g, c)
        if g == 1:
            break
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


def _solve_rational(columns: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve sum_j x_j columns[j] = rhs exactly; None if inconsistent."""
    nrows = len(rhs)
    ncols = len(columns)
    mat = [[columns[j][i] for j in range(ncols)] + [rhs[i]] for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    if any(mat[i][-1] != 0 for i in range(r, nrows)):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = mat[i][-1]
    return x


class Cyclotomic:
    """An element of Q(zeta_b), stored reduced modulo Phi_b.

    Coefficients are kept as an integer vector over a common positive
    denominator. Operands of different orders are lifted to the lcm order.
    """

    __slots__ = ("order", "_num", "_den", "_canon")

    def __init__(self, order: int, coeffs: Iterable[Scalar] = ()):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        phi = euler_phi(order)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > phi:
            # reduce an arbitrary-length power representation
            table = _power_table(order)
            red = [Fraction(0)] * phi
            for j, c in enumerate(cs):
                if c:
                    for i, t in enumerate(table[j % order]):
                        if t:
                            red[i] += c * t
            cs = red
        cs += [Fraction(0)] * (phi - len(cs))
        den = 1
        for c in cs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        self.order = order
        self._num, self._den = _normalize([int(c * den) for c in cs], den)
        self._canon = None

    @classmethod
    def _raw(cls, order: int, num: Sequence[int], den: int) -> Cyclotomic:
        obj = cls.__new__(cls)
        obj.order = order
        obj._num, obj._den = _normalize(num, den)
        obj._canon = None
        return obj

    @classmethod
    def rational(cls, q: Scalar) -> Cyclotomic:
        q = Fraction(q)
        return cls._raw(1, (q.numerator,), q.denominator)

    @classmethod
    def root(cls, order: int, k: int = 1) -> Cyclotomic:
        """zeta_order ** k."""
        return cls._raw(order, _power_table(order)[k % order], 1)

    @staticmethod
    def coerce(x) -> Cyclotomic:
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.rational(x)
        if isinstance(x, RootOfUnity):
            return x.cyclotomic()
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    # -- structure ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def lift(self, order: int) -> Cyclotomic:
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"Q(zeta_{self.order}) does not embed in Q(zeta_{order})")
        step = order // self.order
        table = _power_table(order)
        out = [0] * euler_phi(order)
        for j, c in enumerate(self._num):
            if c:
                for i, t in enumerate(table[(j * step) % order]):
                    if t:
                        out[i] += c * t
        return Cyclotomic._raw(order, out, self._den)

    def _common(self, other: Cyclotomic) -> tuple[Cyclotomic, Cyclotomic]:
        if self.order == other.order:
            return self, other
        L = self.order * other.order // math.gcd(self.order, other.order)
        return self.lift(L), other.lift(L)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._common(other)
        num = [x * b._den + y * a._den for x, y in zip(a._num, b._num)]
        return Cyclotomic._raw(a.order, num, a._den * b._den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, [-c for c in self._num], self._den)

    def __sub__(self, other):
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic._raw(
                self.order, [c * q.numerator for c in self._num], self._den * q.denominator
            )
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._common(other)
        if b.order == 1:
            return a * Fraction(b._num[0], b._den)
        if a.order == 1:
            return b * Fraction(a._num[0], a._den)
        n = len(a._num)
        conv = [0] * (2 * n - 1)
        for i, x in enumerate(a._num):
            if x:
                for j, y in enumerate(b._num):
                    if y:
                        conv[i + j] += x * y
        table = _power_table(a.order)
        out = list(conv[:n])
        for j in range(n, 2 * n - 1):
            c = conv[j]
            if c:
                for i, t in enumerate(table[j % a.order]):
                    if t:
                        out[i] += c * t
        return Cyclotomic._raw(a.order, out, a._den * b._den)

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.order == 1 or self.is_rational():
            q = 1 / Fraction(self._num[0], self._den)
            return Cyclotomic._raw(self.order, [q.numerator] + [0] * (len(self._num) - 1), q.denominator)
        n = len(self._num)
        cols = []
        for j in range(n):
            col = (self * Cyclotomic.root(self.order, j)).coeffs
            cols.append(list(col))
        rhs = [Fraction(1)] + [Fraction(0)] * (n - 1)
        x = _solve_rational(cols, rhs)
        return Cyclotomic(self.order, x)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = Cyclotomic._raw(self.order, [1] + [0] * (len(self._num) - 1), 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- comparison / canonical form ----------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return a._den == b._den and a._num == b._num

    def canonical(self) -> Cyclotomic:
        """The same element written in the smallest Q(zeta_d) containing it."""
        if self._canon is not None:
            return self._canon
        if self.is_rational():
            canon = Cyclotomic._raw(1, (self._num[0],), self._den)
        else:
            canon = self
            target = [Fraction(c) for c in self._num]
            for d in _divisors(self.order)[1:-1]:
                step = self.order // d
                table = _power_table(self.order)
                cols = [[Fraction(t) for t in table[(j * step) % self.order]] for j in range(euler_phi(d))]
                x = _solve_rational(cols, target)
                if x is not None:
                    canon = Cyclotomic(d, [c / self._den for c in x])
                    break
        self._canon = canon
        return canon

    def __hash__(self):
        c = self.canonical()
        if c.order == 1:
            return hash(Fraction(c._num[0], c._den))
        return hash((c.order, c._num, c._den))

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.order)
        acc = 0j
        p = 1 + 0j
        for c in self._num:
            if c:
                acc += c * p
            p *= z
        return acc / self._den

    def __complex__(self):
        return self.to_complex()

    def __str__(self) -> str:
        c = self.canonical()
        return "[" + f"{c.order}; " + ", ".join(format_rational(x) for x in c.coeffs) + "]"

    def __repr__(self) -> str:
        return f"Cyclotomic{self}"

    @classmethod
    def parse(cls, text: str) -> Cyclotomic:
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")) or ";" not in body:
            raise ValueError(f"not a cyclotomic literal: {text!r}")
        order_s, coeff_s = body[1:-1].split(";", 1)
        coeffs = [Fraction(c.strip()) for c in coeff_s.split(",") if c.strip()]
        return cls(int(order_s), coeffs)


def format_scalar(x: Cyclotomic | Scalar) -> str:
    """Rationals as 'p/q', genuine cyclotomic elements as '[b; c0, ...]'."""
    x = Cyclotomic.coerce(x)
    return format_rational(x.as_rational()) if x.is_rational() else str(x)


def parse_scalar(text: str) -> Cyclotomic:
    text = text.strip()
    if text.startswith("["):
        return Cyclotomic.parse(text)
    return Cyclotomic.rational(Fraction(text))


# function-style surface


def cyclo_make(mu: RootOfUnity) -> Cyclotomic:
    return mu.cyclotomic()


def cyclo_add(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a + b


def cyclo_mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a * b


def cyclo_neg(a: Cyclotomic) -> Cyclotomic:
    return -a


def cyclo_inv(a: Cyclotomic) -> Cyclotomic:
    return a.inverse()


def cyclo_eval(a: Cyclotomic) -> complex:
    return a.to_complex()
