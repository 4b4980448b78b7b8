"""Values of the partially twisted multiple zeta-function at non-positive integers.

The function is

    zeta_n(s; P; mu) = sum_{m >= 1} mu_1^{m_1} ... mu_{n-1}^{m_{n-1}}
                       / (P_1(m')^{s_1} ... P_{T-1}(m')^{s_{T-1}} P_T(m)^{s_T})

with P_T = sum_j Q_j(X_1..X_{n-1}) X_n^{a_j}. Every formula here reduces it to
the fully twisted function over (P_1, ..., P_{T-1}, Q_0, ..., Q_d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dc import DCPoint, dc_value_mixed, dc_value_nonpos
from .errors import (
    CertificationFailed,
    InternalPositivityViolation,
    NotCertifiedPositive,
    UnsupportedArgument,
    ValidationError,
    WrongShape,
)
from .exact import RootOfUnity, bernoulli, bernoulli_twisted, multinomial, pochhammer
from .expr import Atom, ValueExpr
from .lerch import eta_even_pi, zeta_neg
from .poly import MultiPoly, check_growth_condition, check_hdf_sufficient, decompose_xn, parse_poly

HALF = RootOfUnity(1, 2)


@dataclass(frozen=True)
class ProblemSpec:
    n: int
    T: int
    P: tuple[MultiPoly, ...]
    PT: MultiPoly
    twists: tuple[RootOfUnity, ...]
    Q: tuple[MultiPoly, ...] = field(init=False)
    a: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "P", tuple(self.P))
        object.__setattr__(self, "twists", tuple(self.twists))
        if self.PT.is_zero() or self.PT.nvars != self.n:
            object.__setattr__(self, "Q", ())
            object.__setattr__(self, "a", ())
            return
        parts = decompose_xn(self.PT)
        object.__setattr__(self, "Q", tuple(q for q, _ in parts))
        object.__setattr__(self, "a", tuple(e for _, e in parts))

    @classmethod
    def from_strings(cls, n: int, polynomials: Sequence[str], twists: Sequence[str] = ()) -> ProblemSpec:
        """``polynomials`` lists P_1, ..., P_T; the last one may use X_n."""
        if not polynomials:
            raise ValidationError(["at least one polynomial (P_T) is required"])
        P = tuple(parse_poly(p, n - 1) for p in polynomials[:-1])
        PT = parse_poly(polynomials[-1], n)
        return cls(n, len(polynomials), P, PT, tuple(RootOfUnity.parse(t) for t in twists))

    @property
    def d(self) -> int:
        return len(self.a) - 1

    @property
    def alpha(self) -> tuple[int, ...]:
        return tuple(x - self.a[0] for x in self.a[1:])

    @property
    def dc_polys(self) -> tuple[MultiPoly, ...]:
        """P(Q) = (P_1, ..., P_{T-1}, Q_0, ..., Q_d)."""
        return self.P + self.Q

    def dc_point(self, args) -> DCPoint:
        return DCPoint(tuple(args), self.dc_polys, self.twists)


@dataclass
class Validation:
    diagnostics: list[str]
    abscissa: Fraction | None

    @property
    def ok(self) -> bool:
        return not self.diagnostics

    def summary(self) -> str:
        if not self.ok:
            return "invalid; " + "; ".join(self.diagnostics)
        bound = self.abscissa
        text = str(bound.numerator) if bound.denominator == 1 else f"{bound.numerator}/{bound.denominator}"
        return f"valid; abscissa bound Re s_T > {text}"


def validate(spec: ProblemSpec) -> Validation:
    diags: list[str] = []
    if spec.n < 1:
        diags.append(f"n must be >= 1 (got {spec.n})")
    if spec.T < 1:
        diags.append(f"T must be >= 1 (got {spec.T})")
    if len(spec.P) != spec.T - 1:
        diags.append(f"expected {spec.T - 1} polynomials before P_T, got {len(spec.P)}")
    if len(spec.twists) != spec.n - 1:
        diags.append(f"expected {spec.n - 1} twists, got {len(spec.twists)}")
    for i, p in enumerate(spec.P, 1):
        if p.nvars != spec.n - 1:
            diags.append(f"P_{i} must use {spec.n - 1} variables")
        elif not check_hdf_sufficient(p):
            diags.append(f"CertificationFailed: P_{i} = {p} needs nonzero, nonnegative coefficients")
    if spec.PT.nvars != spec.n:
        diags.append(f"P_T must use {spec.n} variables")
    elif spec.PT.is_zero():
        diags.append("P_T is the zero polynomial")
    else:
        for j, (q, a) in enumerate(zip(spec.Q, spec.a)):
            if not check_hdf_sufficient(q):
                diags.append(f"CertificationFailed: Q_{j} = {q} (coefficient of X{spec.n}^{a}) needs nonnegative coefficients")
        if spec.a[-1] < 1:
            diags.append(f"P_T must involve X{spec.n} (a_d >= 1)")
    if not diags and spec.n >= 2:
        try:
            if not check_growth_condition(spec.dc_polys, spec.n - 1):
                diags.append("CertificationFailed: P_1...P_{T-1}(Q_0...Q_d) does not tend to infinity")
        except NotCertifiedPositive as exc:
            diags.append(f"CertificationFailed: {exc}")
    abscissa = None
    if spec.a and spec.a[-1] >= 1:
        abscissa = Fraction(len(spec.a), sum(spec.a))
    return Validation(diags, abscissa)


def require_valid(spec: ProblemSpec) -> None:
    report = validate(spec)
    if not report.ok:
        raise ValidationError(report.diagnostics)


def _check_point(spec: ProblemSpec, N: Sequence[int]) -> tuple[int, ...]:
    N = tuple(int(x) for x in N)
    if len(N) != spec.T:
        raise WrongShape(f"point has {len(N)} entries, expected T = {spec.T}")
    if any(x < 0 for x in N):
        raise WrongShape("evaluation point entries must be non-negative (the point is s = -N)")
    return N


# ---------------------------------------------------------------------------
# Diophantine enumeration for the second sum


def _compositions(weights: Sequence[int], target: int):
    """Non-negative l with sum w_j l_j = target, lexicographic order."""
    if not weights:
        if target == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    for l0 in range(target // w + 1):
        for tail in _compositions(rest, target - w * l0):
            yield (l0,) + tail


def enumerate_second_sum(N_T: int, a: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    a = tuple(a)
    d = len(a) - 1
    if d < 1:
        raise WrongShape("the second sum needs d >= 1")
    alpha_d = a[d] - a[0]
    weights = [a[d] - a[j] for j in range(1, d)]
    out = []
    for i in range((a[d] * N_T + 1) // alpha_d + 1):
        target = 1 + a[d] * N_T - i * alpha_d
        for ell in _compositions(weights, target):
            if sum(ell) + i - N_T < 1:
                raise InternalPositivityViolation(f"|l| + i - N_T < 1 for i={i}, l={ell}, N_T={N_T}, a={a}")
            out.append((i, ell))
    return out


# ---------------------------------------------------------------------------
# simplification of Lerch atoms


def simplify(e: ValueExpr) -> ValueExpr:
    """Move zeta_{-1}(2k) factors into powers of pi."""
    out = []
    for atom, c in e.terms.items():
        pi = atom.pi_power
        keep = []
        for mu, s in atom.lerch:
            if mu == HALF and s % 2 == 0:
                c = c * eta_even_pi(s // 2)
                pi += s
            else:
                keep.append((mu, s))
        out.append((Atom(pi, tuple(keep), atom.opaque), c))
    return ValueExpr(out)


# ---------------------------------------------------------------------------
# value formulas


class _Collector:
    def __init__(self, spec: ProblemSpec, trace: list | None):
        self.spec = spec
        self.trace = trace
        self.total = ValueExpr()

    def add(self, coeff: Fraction, args, label: str, index) -> None:
        if coeff == 0:
            return
        point = self.spec.dc_point(args)
        value = dc_value_mixed(point)
        self.total = self.total + value.scale(coeff)
        if self.trace is not None:
            self.trace.append(
                {
                    "term": len(self.trace),
                    "sum": label,
                    "index": index,
                    "coefficient": str(coeff),
                    "point": str(point),
                    "kind": point.kind.value,
                    "value": str(value),
                }
            )


def _finish(e: ValueExpr, do_simplify: bool) -> ValueExpr:
    return simplify(e) if do_simplify else e


def _first_sum_ks(d: int, N_T: int):
    def rec(j, left):
        if j == d:
            yield ()
            return
        for kj in range(left + 1):
            for tail in rec(j + 1, left - kj):
                yield (kj,) + tail

    return rec(0, N_T)


def value_general(spec: ProblemSpec, N: Sequence[int], *, simplify: bool = True, trace: list | None = None) -> ValueExpr:
    require_valid(spec)
    N = _check_point(spec, N)
    Np, N_T = N[:-1], N[-1]
    neg = [-x for x in Np]
    a, d = spec.a, spec.d
    col = _Collector(spec, trace)
    if d == 0:
        z = zeta_neg(spec.a[0] * N_T)
        col.add(z, neg + [-N_T], "d0", {"zeta": f"zeta({-spec.a[0] * N_T})"})
        return _finish(col.total, simplify)
    alpha = spec.alpha
    for k in _first_sum_ks(d, N_T):
        m = a[0] * N_T + sum(x * y for x, y in zip(alpha, k))
        coeff = -multinomial(N_T, list(k) + [N_T - sum(k)]) * bernoulli_twisted(m + 1) / (m + 1)
        col.add(coeff, neg + [-N_T + sum(k)] + [-x for x in k], "first", {"k": list(k)})
    for i, ell in enumerate_second_sum(N_T, a):
        L = sum(ell)
        coeff = Fraction(math.factorial(N_T), a[d]) * (-1) ** (L + i + N_T) * math.factorial(L + i - N_T - 1)
        coeff /= math.factorial(i) * math.prod(math.factorial(x) for x in ell)
        col.add(coeff, neg + [-i] + [-x for x in ell] + [L + i - N_T], "second", {"i": i, "l": list(ell)})
    return _finish(col.total, simplify)


def value_d1(spec: ProblemSpec, N: Sequence[int], *, simplify: bool = True, trace: list | None = None) -> ValueExpr:
    require_valid(spec)
    if spec.d != 1 or spec.a[0] != 0:
        raise WrongShape(f"the d = 1 formula needs a = (0, a_1); got a = {spec.a}")
    N = _check_point(spec, N)
    Np, N_T = N[:-1], N[-1]
    neg = [-x for x in Np]
    a1 = spec.a[1]
    col = _Collector(spec, trace)
    if a1 == 1:
        # s(z) = (s', s_T + z, -z) at s = -N, z = -1/a_1
        col.add(Fraction(-1, N_T + 1), neg + [-N_T - 1, 1], "delta", {"z": "-1/a_1"})
    for ell in range(N_T + 1):
        coeff = math.comb(N_T, ell) * zeta_neg(a1 * ell)
        col.add(coeff, neg + [-N_T + ell, -ell], "binomial", {"l": ell})
    return _finish(col.total, simplify)


def delta_point_d1(spec: ProblemSpec, N: Sequence[int]) -> DCPoint:
    """The point of the Kronecker-delta term, only integral when a_1 = 1."""
    N = _check_point(spec, N)
    a1 = spec.a[1]
    if a1 != 1:
        raise UnsupportedArgument(f"the delta term point has rational coordinate 1/{a1}")
    return spec.dc_point([-x for x in N[:-1]] + [-N[-1] - 1, 1])


def value_d2(
    spec: ProblemSpec,
    N: Sequence[int],
    *,
    variant: str = "pochhammer",
    simplify: bool = True,
    trace: list | None = None,
) -> ValueExpr:
    """``variant`` is "pochhammer" (general a_1 < a_2) or "simplified" (a = (0, 1, 2) only)."""
    require_valid(spec)
    if spec.d != 2 or spec.a[0] != 0:
        raise WrongShape(f"the d = 2 formula needs a = (0, a_1, a_2); got a = {spec.a}")
    N = _check_point(spec, N)
    Np, N_T = N[:-1], N[-1]
    neg = [-x for x in Np]
    _, a1, a2 = spec.a
    col = _Collector(spec, trace)
    if variant == "simplified":
        if (a1, a2) != (1, 2):
            raise WrongShape("the simplified d = 2 formula needs a = (0, 1, 2)")
        for k1, k2 in _first_sum_ks(2, N_T):
            m = k1 + 2 * k2
            coeff = multinomial(N_T, [N_T - k1 - k2, k1, k2]) * (-1) ** k1 * bernoulli(m + 1) / (m + 1)
            col.add(coeff, neg + [-N_T + k1 + k2, -k1, -k2], "first", {"k": [k1, k2]})
        for u in range(N_T + 1):
            coeff = -Fraction((-1) ** u * math.factorial(u) ** 2 * math.comb(N_T, u), 2 * math.factorial(2 * u + 1))
            col.add(coeff, neg + [-N_T + u, -2 * u - 1, u + 1], "second", {"u": u})
        return _finish(col.total, simplify)
    if variant != "pochhammer":
        raise ValueError(f"unknown variant {variant!r}")
    for k1, k2 in _first_sum_ks(2, N_T):
        m = a1 * k1 + a2 * k2
        coeff = multinomial(N_T, [N_T - k1 - k2, k1, k2]) * (-1) ** m * bernoulli(m + 1) / (m + 1)
        col.add(coeff, neg + [-N_T + k1 + k2, -k1, -k2], "first", {"k": [k1, k2]})
    for k2 in range(1, (a2 * N_T + 1) // (a2 - a1) + 1):
        if (a1 * k2 + 1) % a2:
            continue
        p = ((a2 - a1) * k2 - 1) // a2
        last = (a1 * k2 + 1) // a2
        poch = pochhammer(-N_T, p)
        if poch == 0:
            continue
        coeff = Fraction((-1) ** k2 * math.factorial(last - 1), math.factorial(k2) * a2) * poch
        col.add(coeff, neg + [-N_T + p, -k2, last], "second", {"k2": k2})
    return _finish(col.total, simplify)


def value_auto(spec: ProblemSpec, N: Sequence[int], *, simplify: bool = True, trace: list | None = None):
    """General formula plus, when the shape allows, the specialized cross-check.

    Returns (value, checks) where checks maps path name to agreement.
    """
    value = value_general(spec, N, simplify=True, trace=trace)
    checks = {}
    if spec.d == 1 and spec.a[0] == 0:
        checks["d1"] = value_d1(spec, N) == value
    if spec.d == 2 and spec.a[0] == 0:
        checks["d2"] = value_d2(spec, N) == value
        if spec.a[1:] == (1, 2):
            checks["d2-simplified"] = value_d2(spec, N, variant="simplified") == value
    if not simplify:
        value = value_general(spec, N, simplify=False)
    return value, checks
