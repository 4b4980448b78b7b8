"""Values of the fully twisted multiple zeta-function

    Z(s; R; mu) = sum_{m >= 1} mu^m / prod_rho R_rho(m)^{s_rho}

at integer points. All-nonpositive points are exact elements of a cyclotomic
field; a few mixed-sign shapes reduce to Lerch values, and everything else is
kept as an opaque symbolic atom.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import CertificationFailed, ExpressionParseError, NotCertifiedPositive, UnsupportedArgument, VarArityMismatch
from .exact import Cyclotomic, RootOfUnity
from .expr import Atom, ValueExpr
from .lerch import lerch_nonpos
from .poly import MultiPoly, check_growth_condition, check_hdf_sufficient, expand_product_powers, parse_poly


class PointKind(str, Enum):
    ALL_NONPOSITIVE = "AllNonpositive"
    NVARS_ZERO = "MixedReducible(NVarsZero)"
    CONST_LEADING = "MixedReducible(ConstLeading)"
    MONOMIAL = "MixedReducible(Monomial)"
    OPAQUE = "MixedOpaque"


def _as_arg(x):
    q = Fraction(x)
    return int(q) if q.denominator == 1 else q


@dataclass(frozen=True)
class DCPoint:
    args: tuple
    polys: tuple[MultiPoly, ...]
    twists: tuple[RootOfUnity, ...]
    kind: PointKind = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(_as_arg(a) for a in self.args))
        object.__setattr__(self, "polys", tuple(self.polys))
        object.__setattr__(self, "twists", tuple(self.twists))
        if len(self.args) != len(self.polys):
            raise VarArityMismatch(f"{len(self.args)} arguments for {len(self.polys)} polynomials")
        for p in self.polys:
            if p.nvars != len(self.twists):
                raise VarArityMismatch(f"polynomial {p} has {p.nvars} variables, expected {len(self.twists)}")
        object.__setattr__(self, "kind", classify_mixed(self))

    @property
    def nvars(self) -> int:
        return len(self.twists)

    def __str__(self) -> str:
        s = ", ".join(str(a) for a in self.args)
        R = ", ".join(str(p) for p in self.polys)
        mu = ", ".join(str(m) for m in self.twists)
        return f"DC<n={self.nvars}; s=({s}); R=({R}); mu=({mu})>"

    _PATTERN = re.compile(r"DC<n=(\d+); s=\((.*?)\); R=\((.*?)\); mu=\((.*?)\)>$")

    @classmethod
    def parse(cls, text: str) -> DCPoint:
        m = cls._PATTERN.match(text.strip())
        if not m:
            raise ExpressionParseError(f"not a DC point: {text!r}")
        n = int(m.group(1))

        def items(g):
            return [x.strip() for x in g.split(",") if x.strip()]

        args = [Fraction(a) for a in items(m.group(2))]
        polys = [parse_poly(p, n) for p in items(m.group(3))]
        mus = [RootOfUnity.parse(x) for x in items(m.group(4))]
        return cls(tuple(args), tuple(polys), tuple(mus))


def classify_mixed(point: DCPoint) -> PointKind:
    if all(a <= 0 for a in point.args):
        return PointKind.ALL_NONPOSITIVE
    if point.nvars == 0:
        return PointKind.NVARS_ZERO
    positive = [p for p, a in zip(point.polys, point.args) if a > 0]
    if all(p.is_constant() and p.constant_value() > 0 for p in positive):
        return PointKind.CONST_LEADING
    if all(p.is_monomial() for p in point.polys):
        return PointKind.MONOMIAL
    return PointKind.OPAQUE


# ---------------------------------------------------------------------------
# exact values at non-positive integers


def certify(polys: Sequence[MultiPoly], nvars: int) -> None:
    for p in polys:
        if not check_hdf_sufficient(p):
            raise CertificationFailed(f"polynomial {p} is not certified (needs nonzero, nonnegative coefficients)")
    if nvars >= 1:
        try:
            grows = check_growth_condition(polys, nvars)
        except NotCertifiedPositive as exc:
            raise CertificationFailed(str(exc)) from exc
        if not grows:
            raise CertificationFailed("the product of the polynomials does not tend to infinity")


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


@lru_cache(maxsize=65536)
def _lerch_lifted(mu: RootOfUnity, n: int, order: int) -> Cyclotomic:
    return lerch_nonpos(mu, n).lift(order)


def contract_expansion(expansion: MultiPoly, twists: Sequence[RootOfUnity]) -> Cyclotomic:
    """sum_alpha a_alpha prod_j zeta_{mu_j}(-alpha_j), one variable at a time."""
    L = _lcm(mu.den for mu in twists)
    layer: dict[tuple, Cyclotomic | Fraction] = dict(expansion.items())
    for j in range(len(twists) - 1, -1, -1):
        mu = twists[j]
        nxt: dict[tuple, Cyclotomic] = {}
        for exp, c in layer.items():
            v = _lerch_lifted(mu, exp[j], L) * c
            key = exp[:j]
            nxt[key] = nxt[key] + v if key in nxt else v
        layer = nxt
    return Cyclotomic.coerce(layer.get((), Fraction(0))).canonical()


@lru_cache(maxsize=8192)
def _dc_nonpos_cached(polys: tuple[MultiPoly, ...], k: tuple[int, ...], twists: tuple[RootOfUnity, ...]) -> Cyclotomic:
    nvars = len(twists)
    if nvars == 0:
        out = Fraction(1)
        for p, e in zip(polys, k):
            out *= p.constant_value() ** e
        return Cyclotomic.rational(out)
    return contract_expansion(expand_product_powers(polys, k, nvars), twists)


def dc_value_nonpos(polys: Sequence[MultiPoly], k: Sequence[int], twists: Sequence[RootOfUnity]) -> Cyclotomic:
    """Exact value at s = -k with every k_rho >= 0."""
    polys = tuple(polys)
    k = tuple(int(e) for e in k)
    twists = tuple(twists)
    if len(polys) != len(k):
        raise VarArityMismatch(f"{len(polys)} polynomials but {len(k)} exponents")
    if any(e < 0 for e in k):
        raise ValueError("dc_value_nonpos needs non-negative k")
    for p in polys:
        if p.nvars != len(twists):
            raise VarArityMismatch(f"polynomial {p} has {p.nvars} variables, expected {len(twists)}")
    certify(polys, len(twists))
    return _dc_nonpos_cached(polys, k, twists)


# ---------------------------------------------------------------------------
# mixed-sign points


def dc_value_mixed(point: DCPoint) -> ValueExpr:
    if any(not isinstance(a, int) for a in point.args):
        raise UnsupportedArgument(f"non-integer argument in {point}")
    kind = point.kind
    if kind is PointKind.ALL_NONPOSITIVE:
        return ValueExpr.const(dc_value_nonpos(point.polys, [-a for a in point.args], point.twists))
    if kind is PointKind.NVARS_ZERO:
        out = Fraction(1)
        for p, a in zip(point.polys, point.args):
            c = p.constant_value()
            if c <= 0:
                raise CertificationFailed(f"constant {c} must be positive")
            out *= c ** (-a)
        return ValueExpr.const(out)
    if kind is PointKind.CONST_LEADING:
        factor = Fraction(1)
        polys, args = [], []
        for p, a in zip(point.polys, point.args):
            if a > 0:
                factor *= p.constant_value() ** (-a)
            else:
                polys.append(p)
                args.append(a)
        return ValueExpr.const(dc_value_nonpos(polys, [-a for a in args], point.twists) * factor)
    if kind is PointKind.MONOMIAL:
        return _monomial_value(point)
    return ValueExpr.opaque_atom(point)


def _monomial_value(point: DCPoint) -> ValueExpr:
    # prod c^{-s} * prod_j zeta_{mu_j}(sum_rho beta_{rho j} s_rho)
    certify(point.polys, point.nvars)
    coeff = Fraction(1)
    exps = [0] * point.nvars
    for p, a in zip(point.polys, point.args):
        ((beta, c),) = p.items()
        coeff *= c ** (-a)
        for j, b in enumerate(beta):
            exps[j] += b * a
    const = Cyclotomic.rational(coeff)
    factors = []
    for mu, e in zip(point.twists, exps):
        if e <= 0:
            const = const * lerch_nonpos(mu, -e)
        else:
            factors.append((mu, e))
    return ValueExpr({Atom(lerch=tuple(factors)): const})


# ---------------------------------------------------------------------------
# independent oracle: Abel sums as rational functions of r


def _poly_mul(a: list[Cyclotomic], b: list[Cyclotomic]) -> list[Cyclotomic]:
    out = [Cyclotomic.rational(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    zero = Cyclotomic.rational(0)
    return [(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) for i in range(n)]


@lru_cache(maxsize=None)
def abel_lerch_value(mu: RootOfUnity, n: int) -> Cyclotomic:
    """Abel limit of sum_{m>=1} (mu r)^m m^n at r = 1.

    G_0 = mu r / (1 - mu r) and G_n = r d/dr G_{n-1}, kept as N_n(r)/(1-mu r)^(n+1)
    with N_n in Q(mu)[r], then evaluated at r = 1.
    """
    z = mu.cyclotomic()
    zero = Cyclotomic.rational(0)
    num = [zero, z]  # mu r
    for p in range(1, n + 1):
        # r G' = r [N' (1 - mu r) + p mu N] / (1 - mu r)^(p+1)
        deriv = [num[i] * i for i in range(1, len(num))] or [zero]
        part = _poly_mul(deriv, [Cyclotomic.rational(1), -z])
        part = _poly_add(part, [c * z * p for c in num])
        num = [zero] + part
    at_one = zero
    for c in num:
        at_one = at_one + c
    return at_one / (1 - z) ** (n + 1)


def abel_sum_oracle(polys: Sequence[MultiPoly], k: Sequence[int], twists: Sequence[RootOfUnity]) -> Cyclotomic:
    twists = tuple(twists)
    if not twists:
        raise VarArityMismatch("the Abel oracle needs at least one variable")
    certify(polys, len(twists))
    expansion = expand_product_powers(list(polys), list(k), len(twists))
    total = Cyclotomic.rational(0)
    for exp, c in expansion.items():
        term = Cyclotomic.rational(c)
        for mu, e in zip(twists, exp):
            term = term * abel_lerch_value(mu, e)
        total = total + term
    return total
