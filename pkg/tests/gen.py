"""Random problem generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from twistzeta.exact import RootOfUnity
from twistzeta.partial import ProblemSpec
from twistzeta.poly import MultiPoly

COEFFS = [Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2), Fraction(3, 2)]


def rand_root(rng: random.Random, max_order: int = 6) -> RootOfUnity:
    b = rng.randint(2, max_order)
    a = rng.choice([x for x in range(1, b) if _gcd(x, b) == 1])
    return RootOfUnity(a, b)


def _gcd(x, y):
    while y:
        x, y = y, x % y
    return x


def rand_poly(rng: random.Random, nvars: int, max_deg: int = 2, max_terms: int = 3) -> MultiPoly:
    """Nonzero polynomial with positive coefficients."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exp = [0] * nvars
        for _ in range(rng.randint(0, max_deg)):
            if nvars:
                exp[rng.randrange(nvars)] += 1
        terms[tuple(exp)] = rng.choice(COEFFS)
    return MultiPoly(nvars, terms)


def ensure_growth(rng: random.Random, polys: list[MultiPoly], nvars: int) -> list[MultiPoly]:
    """Add X_i to some polynomial for each variable that never appears."""
    polys = list(polys)
    for i in range(nvars):
        if not any(e[i] for p in polys for e, _ in p.items()):
            j = rng.randrange(len(polys))
            polys[j] = polys[j] + MultiPoly.variable(i, nvars)
    return polys


def rand_spec(
    rng: random.Random,
    exponents: tuple[int, ...],
    max_n: int = 3,
    max_T: int = 3,
    max_deg: int = 2,
    max_order: int = 6,
    const_last: bool = False,
) -> ProblemSpec:
    n = rng.randint(1, max_n)
    T = rng.randint(1, max_T)
    k = n - 1
    P = [rand_poly(rng, k, max_deg) for _ in range(T - 1)]
    Q = [rand_poly(rng, k, max_deg) for _ in exponents]
    if const_last:
        Q[-1] = MultiPoly.constant(rng.choice(COEFFS), k)
    if k:
        fixed = ensure_growth(rng, P + Q[:-1] if const_last else P + Q, k)
        if const_last:
            P, Q = fixed[: T - 1], fixed[T - 1 :] + [Q[-1]]
        else:
            P, Q = fixed[: T - 1], fixed[T - 1 :]
    PT = MultiPoly(n, {})
    for q, a in zip(Q, exponents):
        PT = PT + MultiPoly(n, {e + (a,): c for e, c in q.items()})
    twists = [rand_root(rng, max_order) for _ in range(k)]
    return ProblemSpec(n, T, tuple(P), PT, tuple(twists))
