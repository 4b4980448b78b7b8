"""Independent numeric checks.

None of these routines touch the exact value formulas: they continue or sum
the defining series directly, or verify the Mellin-Barnes integral identities
by quadrature.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.special import loggamma

from .errors import NotFactorizable, TailDivergent, UnsupportedDepth, VarArityMismatch
from .exact import RootOfUnity, _power_table
from .lerch import lerch_complex, riemann_numeric
from .poly import MultiPoly


class Method(str, Enum):
    BINOMIAL = "binomial_continuation"
    FACTORIZED = "factorized_series"
    DIRECT = "direct_box_sum"
    ABEL = "abel_extrapolation"


@dataclass
class OracleResult:
    value: complex
    est_error: float
    method: Method
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "est_error": self.est_error,
            "method": self.method.value,
            "params": self.params,
        }


# ---------------------------------------------------------------------------
# n = 1: sum_m P(m)^{-s} by binomial expansion around the leading term


def _binom_neg(s: complex, k: int) -> complex:
    """C(-s, k)."""
    out = 1 + 0j
    for i in range(k):
        out *= (-s - i) / (i + 1)
    return out


def _poly_powers_in_y(u: np.ndarray, kmax: int, emax: int) -> list[np.ndarray]:
    """Coefficient arrays of u(y)^k truncated at degree emax."""
    out = [np.zeros(emax + 1)]
    out[0][0] = 1.0
    for _ in range(kmax):
        nxt = np.convolve(out[-1], u)[: emax + 1]
        out.append(nxt)
    return out


def n1_binomial_continuation(
    P: MultiPoly, s: complex, M: int = 8, K: int = 40, tol: float = 1e-8
) -> OracleResult:
    """sum_{m>=1} P(m)^{-s} for a one-variable P with positive coefficients.

    Write P(m) = c_d m^{a_d} (1 + u(1/m)). For m >= M the factor (1+u)^{-s}
    is expanded binomially and each power m^{-(a_d s + e)} summed with the
    continued Riemann zeta function; the first M - 1 terms are summed directly.
    """
    if P.nvars != 1:
        raise VarArityMismatch("the binomial oracle takes a one-variable polynomial")
    terms = [(e[0], float(c)) for e, c in P.items()]
    if not terms or any(c <= 0 for _, c in terms):
        raise ValueError("the binomial oracle needs positive coefficients")
    s = complex(s)
    ad = max(e for e, _ in terms)
    cd = dict(terms)[ad]
    u = np.zeros(max(ad - e for e, _ in terms) + 1)
    for e, c in terms:
        if e != ad:
            u[ad - e] += c / cd
    # keep y = 1/m well inside the disc where (1 + u(y))^{-s} converges
    if len(u) > 1 and np.any(u[1:]):
        roots = np.roots((np.r_[1.0, u[1:]])[::-1])
        rho = float(np.min(np.abs(roots))) if len(roots) else math.inf
        M = max(M, int(math.ceil(4.0 / rho)) + 1)
    emax = K + 2
    powers = _poly_powers_in_y(u, emax, emax)

    def A(e: int, sv: complex) -> complex:
        return sum(_binom_neg(sv, k) * powers[k][e] for k in range(e + 1) if powers[k][e])

    head = sum(complex(P(m)) ** (-s) for m in range(1, M))
    ms = np.arange(1, M, dtype=float)

    def tail_term(e: int) -> complex:
        arg = ad * s + e
        if abs(arg - 1) < 1e-5:
            return _pole_limit(lambda sv: A(e, sv) * _zeta_tail(ad * sv + e, ms), s)
        coeff = A(e, s)
        if coeff == 0:
            return 0j
        return coeff * _zeta_tail(arg, ms)

    pref = cd ** (-s)
    total = head
    for e in range(K + 1):
        total += pref * tail_term(e)
    dropped = abs(pref * tail_term(K + 1)) + abs(pref * tail_term(K + 2))
    if not math.isfinite(dropped) or dropped > max(tol, 1e-300) * 1e6:
        raise TailDivergent(f"binomial expansion truncated at K={K} leaves error {dropped:.3g}")
    # rounding floor from the directly summed head
    est = dropped + 1e-15 * (1 + abs(head))
    return OracleResult(total, est, Method.BINOMIAL, {"M": M, "K": K})


def _zeta_tail(arg: complex, ms: np.ndarray) -> complex:
    """sum_{m >= M} m^{-arg} = zeta(arg) - sum_{m < M} m^{-arg}."""
    return riemann_numeric(arg) - complex(np.sum(ms ** (-arg)))


def _pole_limit(f, s: complex, eps: float = 1e-3) -> complex:
    """Removable singularity at s: symmetric offsets, then one Richardson step."""

    def sym(h):
        return (f(s + h) + f(s - h)) / 2

    return (4 * sym(eps / 2) - sym(eps)) / 3


# ---------------------------------------------------------------------------
# Mellin-Barnes identities by trapezoid quadrature


def mb_integral(s: complex, lam: complex, c: float, height: float = 40.0, step: float = 0.05) -> complex:
    y = np.arange(-height, height + step / 2, step)
    z = c + 1j * y
    lg = loggamma(s + z) + loggamma(-z) - loggamma(s) + z * np.log(complex(lam))
    f = np.exp(lg)
    integral = np.trapezoid(f, y) if hasattr(np, "trapezoid") else np.trapz(f, y)
    return complex(integral) / (2 * math.pi)


def mb_identity_check(s: complex, lam: complex, c: float, height: float = 40.0, step: float = 0.05) -> float:
    """|(1+lam)^{-s} - (1/2 pi i) int_(c) Gamma(s+z) Gamma(-z)/Gamma(s) lam^z dz|."""
    s = complex(s)
    if s.real <= 0:
        raise ValueError("need Re s > 0")
    if not -s.real < c < 0:
        raise ValueError("need -Re s < c < 0")
    target = (1 + complex(lam)) ** (-s)
    return abs(target - mb_integral(s, lam, c, height, step))


def mmb_integral(s: complex, lams: Sequence[complex], rhos: Sequence[float], height: float = 30.0, step: float = 0.1) -> complex:
    r = len(rhos)
    if len(lams) != r + 1:
        raise VarArityMismatch("need one more lambda than rho")
    if r > 2:
        raise UnsupportedDepth("iterated quadrature supports r <= 2")
    if r < 1:
        raise UnsupportedDepth("need at least one integration variable")
    s = complex(s)
    lam = [complex(x) for x in lams]
    y = np.arange(-height, height + step / 2, step)
    if r == 1:
        z1 = rhos[0] + 1j * y
        lg = loggamma(s - z1) + loggamma(z1) - loggamma(s) - (s - z1) * np.log(lam[0]) - z1 * np.log(lam[1])
        return complex(np.sum(np.exp(lg)) * step) / (2 * math.pi)
    Y1, Y2 = np.meshgrid(y, y, indexing="ij")
    z1 = rhos[0] + 1j * Y1
    z2 = rhos[1] + 1j * Y2
    lg = (
        loggamma(s - z1 - z2)
        + loggamma(z1)
        + loggamma(z2)
        - loggamma(s)
        - (s - z1 - z2) * np.log(lam[0])
        - z1 * np.log(lam[1])
        - z2 * np.log(lam[2])
    )
    return complex(np.sum(np.exp(lg)) * step * step) / (2 * math.pi) ** 2


def mmb_identity_check(s: complex, lams: Sequence[complex], rhos: Sequence[float], height: float = 30.0, step: float = 0.1) -> float:
    """Residual of the r-fold Mellin-Barnes identity for (lam_0 + ... + lam_r)^{-s}."""
    if any(complex(x).real <= 0 for x in lams):
        raise ValueError("need Re lambda_j > 0")
    if any(r <= 0 for r in rhos) or complex(s).real <= sum(rhos):
        raise ValueError("need rho_j > 0 and Re s > sum rho_j")
    target = sum(complex(x) for x in lams) ** (-complex(s))
    return abs(target - mmb_integral(s, lams, rhos, height, step))


# ---------------------------------------------------------------------------
# factorized multi-variable series


def _monomial(p: MultiPoly) -> tuple[tuple[int, ...], Fraction]:
    if not p.is_monomial():
        raise NotFactorizable(f"{p} is not a monomial")
    ((exp, c),) = p.items()
    return exp, c


def factorization_data(spec):
    """Split zeta_n into Lerch factors times a one-variable sum.

    Applies when every P_j is a monomial and P_T = X'^gamma R(X_n).
    Returns (coefficients, exponent vectors, gamma, R).
    """
    try:
        mons = [_monomial(p) for p in spec.P]
        gammas = set()
        ratio = {}
        for q, a in zip(spec.Q, spec.a):
            exp, c = _monomial(q)
            gammas.add(exp)
            ratio[(a,)] = c
    except NotFactorizable:
        raise NotFactorizable("the polynomials do not split variable by variable") from None
    if len(gammas) != 1:
        raise NotFactorizable("the X_n-coefficients of P_T do not share one monomial")
    (gamma,) = gammas
    return mons, gamma, MultiPoly(1, ratio)


def factorized_series_oracle(spec, s: Sequence[complex], K: int = 40, tol: float = 1e-8) -> OracleResult:
    """prod p_j^{-s_j} prod_i zeta_{mu_i}(e_i) * sum_m R(m)^{-s_T}."""
    mons, gamma, R = factorization_data(spec)
    s = [complex(x) for x in s]
    if len(s) != spec.T:
        raise VarArityMismatch(f"need {spec.T} arguments")
    value = 1 + 0j
    e = [0j] * (spec.n - 1)
    for (exp, c), sj in zip(mons, s[:-1]):
        value *= float(c) ** (-sj)
        for i, x in enumerate(exp):
            e[i] += x * sj
    for i, x in enumerate(gamma):
        e[i] += x * s[-1]
    for mu, ei in zip(spec.twists, e):
        value *= lerch_complex(mu, ei)
    inner = n1_binomial_continuation(R, s[-1], K=K, tol=tol)
    return OracleResult(value * inner.value, abs(value) * inner.est_error, Method.FACTORIZED, {"K": K, **inner.params})


def _neville_at_zero(hs: Sequence[float], vals: Sequence[complex]) -> tuple[complex, float]:
    """Polynomial extrapolation of vals(h) to h = 0; error from the last two orders."""
    table = list(vals)
    prev = table[-1]
    best = table[-1]
    n = len(hs)
    for level in range(1, n):
        new = []
        for i in range(n - level):
            h0, h1 = hs[i], hs[i + level]
            new.append((h0 * table[i + 1] - h1 * table[i]) / (h0 - h1))
        prev, best = best, new[-1]
        table = new
    return best, abs(best - prev)


def direct_series_sum(spec, s: Sequence[complex], M0: int = 32, levels: int = 5) -> OracleResult:
    """Box sums over [1, M]^n for M = M0 * 2^j, extrapolated in 1/M.

    Only meaningful where the series converges absolutely.
    """
    s = [complex(x) for x in s]
    n = spec.n
    hs, vals = [], []
    for j in range(levels):
        M = M0 * 2**j
        grids = np.meshgrid(*[np.arange(1, M + 1, dtype=float)] * n, indexing="ij")
        xs, xn = grids[:-1], grids[-1]
        term = np.ones_like(xn, dtype=complex)
        for mu, g in zip(spec.twists, xs):
            term *= np.exp(2j * math.pi * mu.num / mu.den * g)
        for p, sj in zip(spec.P, s[:-1]):
            term *= _eval_poly(p, xs) ** (-sj)
        term *= _eval_poly(spec.PT, list(xs) + [xn]) ** (-s[-1])
        hs.append(1.0 / M)
        vals.append(complex(term.sum()))
    value, err = _neville_at_zero(hs, vals)
    return OracleResult(value, err, Method.DIRECT, {"M0": M0, "levels": levels})


def _eval_poly(p: MultiPoly, xs: Sequence[np.ndarray]) -> np.ndarray:
    shape = xs[0].shape if xs else ()
    out = np.zeros(shape, dtype=complex) if shape else 0j
    for exp, c in p.items():
        t = float(c)
        for x, e in zip(xs, exp):
            if e:
                t = t * x**e
        out = out + t
    if not shape:
        return out
    return np.broadcast_to(out, shape) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# Abel summation of twisted power sums


_ABEL_BITS = 256


def abel_partial(mu: RootOfUnity, n: int, r: Fraction) -> complex:
    """sum_{m>=1} m^n (mu r)^m for rational 0 < r < 1.

    The sum is split by residue class of m mod b. Each class sum is positive
    and is accumulated in fixed point with big integers; the classes are then
    combined exactly in the power basis of Q(zeta_b), so the heavy cancellation
    between classes costs nothing. Only the final O(1) coordinates are rounded.
    """
    b = mu.den
    r = Fraction(r)
    if not 0 < r < 1:
        raise ValueError("need 0 < r < 1")
    one = 1 << _ABEL_BITS
    R = r.numerator * one // r.denominator
    floor = one >> 140  # stop once terms fall below about 1e-42
    acc = [0] * b
    rm = one
    m = 0
    peak = n / max(1e-12, 1 - float(r))
    while True:
        m += 1
        rm = rm * R >> _ABEL_BITS
        term = m**n * rm
        acc[m % b] += term
        if m > peak and term < floor:
            break
    table = _power_table(b)
    coords = [0] * len(table[0])
    for j, v in enumerate(acc):
        for i, t in enumerate(table[(mu.num * j) % b]):
            if t:
                coords[i] += t * v
    zeta = cmath.exp(2j * math.pi / b)
    return sum((c / one) * zeta**i for i, c in enumerate(coords))


def abel_numeric(mu: RootOfUnity, n: int, h0: float = 0.2, shrink: float = 0.7, levels: int = 10) -> OracleResult:
    """Radial limit r -> 1 of the Abel partial sums by extrapolation in h = 1 - r."""
    hs = [Fraction(h0).limit_denominator(10**6) * Fraction(shrink).limit_denominator(10**6) ** j for j in range(levels)]
    vals = [abel_partial(mu, n, 1 - h) for h in hs]
    value, err = _neville_at_zero([float(h) for h in hs], vals)
    return OracleResult(value, err, Method.ABEL, {"h0": h0, "shrink": shrink, "levels": levels})
