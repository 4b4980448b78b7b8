"""Lerch and Riemann zeta values.

Exact values at non-positive integers come from two independent closed forms
(Stirling and Eulerian). Numeric values use an Euler-Maclaurin Hurwitz kernel;
for Re s < -1 the kernel is fed through Hurwitz's functional equation so that
no large power sums cancel in floating point.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from scipy.special import digamma, loggamma

from .errors import NearPole, UnsupportedArgument
from .exact import (
    Cyclotomic,
    RootOfUnity,
    bernoulli,
    bernoulli_twisted,
    eulerian_poly,
    stirling2,
)

# ---------------------------------------------------------------------------
# exact values


@lru_cache(maxsize=None)
def lerch_nonpos_stirling(mu: RootOfUnity, n: int) -> Cyclotomic:
    """zeta_mu(-n) = sum_k S(n,k) k! mu^k / (1-mu)^(k+1), and mu/(1-mu) at n = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    z = mu.cyclotomic()
    inv = (1 - z).inverse()
    if n == 0:
        return z * inv
    total = Cyclotomic.rational(0)
    zk = Cyclotomic.rational(1)
    ik = inv
    for k in range(1, n + 1):
        zk = zk * z
        ik = ik * inv
        total = total + zk * ik * (stirling2(n, k) * math.factorial(k))
    return total


@lru_cache(maxsize=None)
def lerch_nonpos_eulerian(mu: RootOfUnity, n: int) -> Cyclotomic:
    """zeta_mu(-n) = A_n(mu)/(1-mu)^(n+1) - [n = 0]."""
    if n < 0:
        raise ValueError("n must be non-negative")
    z = mu.cyclotomic()
    coeffs = eulerian_poly(n)
    num = Cyclotomic(mu.den, [0] * mu.den)
    zp = Cyclotomic.rational(1)
    for c in coeffs:
        if c:
            num = num + zp * c
        zp = zp * z
    value = num * (1 - z).inverse() ** (n + 1)
    return value - 1 if n == 0 else value


def lerch_nonpos(mu: RootOfUnity, n: int) -> Cyclotomic:
    return lerch_nonpos_stirling(mu, n)


def zeta_neg(m: int) -> Fraction:
    """Riemann zeta(-m) for m >= 0."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return -bernoulli_twisted(m + 1) / (m + 1)


def zeta_even_pi(k: int) -> Fraction:
    """The rational c with zeta(2k) = c * pi^(2k)."""
    if k < 1:
        raise ValueError("k must be positive")
    sign = 1 if k % 2 == 1 else -1
    return sign * bernoulli(2 * k) * Fraction(2 ** (2 * k), 2 * math.factorial(2 * k))


def eta_even_pi(k: int) -> Fraction:
    """The rational c with zeta_{-1}(2k) = c * pi^(2k)."""
    return -(1 - Fraction(2) ** (1 - 2 * k)) * zeta_even_pi(k)


# ---------------------------------------------------------------------------
# numeric kernels

_EM_TERMS = 12
_EM_COEFFS = [float(bernoulli(2 * j) / math.factorial(2 * j)) for j in range(1, 40)]


def _euler_maclaurin(s: complex, q: float, M: int, J: int) -> complex:
    total = 0j
    for m in range(M):
        total += (m + q) ** (-s)
    x = M + q
    xs = x ** (-s)
    total += x * xs / (s - 1) + xs / 2
    # (s)_{2j-1} x^{-s-2j+1}
    rising = s
    power = xs / x
    for j in range(1, J + 1):
        total += _EM_COEFFS[j - 1] * rising * power
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power /= x * x
    return total


def _as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    raise UnsupportedArgument("Hurwitz continuation to Re s < -1 needs a rational q")


def hurwitz_numeric(s: complex, q=1, tol: float = 1e-12) -> complex:
    """zeta(s, q) = sum_{m>=0} (m+q)^(-s), continued to s != 1."""
    s = complex(s)
    if abs(s - 1) < 1e-6:
        raise NearPole(f"s = {s} is within 1e-6 of the pole at 1")
    qf = float(q)
    if not 0 < qf <= 1:
        raise ValueError("q must lie in (0, 1]")
    if s.real >= -1:
        M = max(50, int(2 * abs(s)) + 10)
        J = _EM_TERMS if tol >= 1e-13 else 20
        return _euler_maclaurin(s, qf, M, J)
    # Hurwitz: zeta(1-u, h/k) = 2 Gamma(u)/(2 pi k)^u sum_r cos(pi u/2 - 2 pi r h/k) zeta(u, r/k)
    qq = _as_fraction(q)
    h, k = qq.numerator, qq.denominator
    u = 1 - s
    pref = 2 * cmath.exp(complex(loggamma(u)) - u * cmath.log(2 * math.pi * k))
    acc = 0j
    for r in range(1, k + 1):
        acc += cmath.cos(math.pi * u / 2 - 2 * math.pi * r * h / k) * hurwitz_numeric(u, Fraction(r, k), tol)
    return pref * acc


def riemann_numeric(s: complex, tol: float = 1e-12) -> complex:
    return hurwitz_numeric(s, 1, tol)


def _mu_powers(mu: RootOfUnity) -> list[complex]:
    b = mu.den
    return [cmath.exp(2j * math.pi * mu.num * r / b) for r in range(1, b + 1)]


def _lerch_at_one(mu: RootOfUnity) -> complex:
    b = mu.den
    return -sum(w * complex(digamma(r / b)) for r, w in zip(range(1, b + 1), _mu_powers(mu))) / b


def lerch_complex(mu: RootOfUnity, s: complex, tol: float = 1e-12) -> complex:
    """zeta_mu(s) for complex s via b^(-s) sum_r mu^r zeta(s, r/b)."""
    s = complex(s)
    b = mu.den
    if abs(s - 1) < 1e-4:
        # the function is entire; use value and a central difference at 1
        h = 1e-2
        slope = (lerch_complex(mu, 1 + h, tol) - lerch_complex(mu, 1 - h, tol)) / (2 * h)
        return _lerch_at_one(mu) + (s - 1) * slope
    acc = 0j
    for r, w in zip(range(1, b + 1), _mu_powers(mu)):
        acc += w * hurwitz_numeric(s, Fraction(r, b), tol)
    return acc * b ** (-s)


def lerch_numeric(mu: RootOfUnity, s: int, tol: float = 1e-12) -> complex:
    """zeta_mu(s) at a positive integer s."""
    if int(s) != s or s < 1:
        raise ValueError("lerch_numeric takes a positive integer argument")
    if s == 1:
        return _lerch_at_one(mu)
    return lerch_complex(mu, s, tol)
