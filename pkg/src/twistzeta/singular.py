"""Candidate singular hyperplanes in the s_T direction.

Three families, each solved for s_T:

* S1(l, t):  a_0 s_T = 1 + sum_j alpha_j l_j + t alpha_d      (empty when a_0 = 0)
* S2(l, t):  a_d s_T = 1 - sum_j (a_d - a_j) l_j - t alpha_d
* S3(k):     a_0 s_T = 1 + <alpha | k>                         (empty when a_0 = 0)

where l ranges over N_0^{d-1}, t over N_0 and k over N_0^d.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .exact import format_rational


class Tier(str, Enum):
    CANDIDATE = "Candidate"
    CANCELLED = "CancelledByGammaZero"
    GENUINE = "GenuinePerPaper"


@dataclass(frozen=True)
class SingularEntry:
    sT: Fraction
    source: str
    tier: Tier
    witnesses: tuple[dict, ...] = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {
            "sT": format_rational(self.sT),
            "source": self.source,
            "tier": self.tier.value,
            "witness": dict(self.witnesses[0]) if self.witnesses else {},
        }


@dataclass
class SingularityReport:
    a: tuple[int, ...]
    window: tuple[Fraction, Fraction]
    entries: list[SingularEntry]

    def values(self, tier: Tier | None = None) -> list[Fraction]:
        return [e.sT for e in self.entries if tier is None or e.tier is tier]

    def tier_of(self, sT) -> Tier | None:
        sT = Fraction(sT)
        hits = [e.tier for e in self.entries if e.sT == sT]
        if not hits:
            return None
        for t in (Tier.GENUINE, Tier.CANDIDATE, Tier.CANCELLED):
            if t in hits:
                return t
        return None

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]


def _exponents(spec_or_a) -> tuple[int, ...]:
    a = getattr(spec_or_a, "a", spec_or_a)
    a = tuple(int(x) for x in a)
    if not a or any(x < 0 for x in a) or any(x >= y for x, y in zip(a, a[1:])):
        raise ValueError(f"exponents must satisfy 0 <= a_0 < ... < a_d, got {a}")
    if a[-1] < 1:
        raise ValueError("a_d must be at least 1")
    return a


def _is_nonpos_int(q: Fraction) -> bool:
    return q.denominator == 1 and q <= 0


def candidate_hyperplanes(spec_or_a, window: Sequence, max_index: int = 20) -> SingularityReport:
    """Enumerate S1, S2, S3 values of s_T in [lo, hi] with indices bounded by max_index."""
    a = _exponents(spec_or_a)
    lo, hi = Fraction(window[0]), Fraction(window[1])
    d = len(a) - 1
    raw: dict[Fraction, dict[str, list[dict]]] = {}

    def record(sT: Fraction, family: str, witness: dict):
        if lo <= sT <= hi:
            raw.setdefault(sT, {}).setdefault(family, []).append(witness)

    if d == 0:
        # zeta(a_0 s_T) times an entire function: pole at s_T = 1/a_0
        record(Fraction(1, a[0]), "S3", {"k": []})
    else:
        alpha = [x - a[0] for x in a[1:]]
        alpha_d = alpha[-1]
        idx = range(max_index + 1)
        for ell in itertools.product(idx, repeat=d - 1):
            for t in idx:
                if a[0] > 0:
                    s1 = Fraction(1 + sum(x * y for x, y in zip(alpha, ell)) + t * alpha_d, a[0])
                    record(s1, "S1", {"l": list(ell), "t": t})
                s2 = Fraction(1 - sum((a[d] - a[j]) * ell[j - 1] for j in range(1, d)) - t * alpha_d, a[d])
                record(s2, "S2", {"l": list(ell), "t": t})
        if a[0] > 0:
            for k in itertools.product(idx, repeat=d):
                record(Fraction(1 + sum(x * y for x, y in zip(alpha, k)), a[0]), "S3", {"k": list(k)})

    entries = []
    for sT in sorted(raw, reverse=True):
        fams = raw[sT]
        tier = _tier(a, sT, fams)
        source = "+".join(sorted(fams))
        witnesses = tuple({"family": f, **w} for f in sorted(fams) for w in fams[f])
        entries.append(SingularEntry(sT, source, tier, witnesses))
    return SingularityReport(a, (lo, hi), entries)


def _tier(a: tuple[int, ...], sT: Fraction, fams: dict[str, list[dict]]) -> Tier:
    d = len(a) - 1
    if _is_nonpos_int(sT):
        # both Gamma factors singular for the same l: a double pole against a simple zero
        s1 = {tuple(w["l"]) for w in fams.get("S1", [])}
        s2 = {tuple(w["l"]) for w in fams.get("S2", [])}
        if s1 & s2:
            return Tier.CANDIDATE
        return Tier.CANCELLED
    if d == 1 and a == (0, 1) and sT == 1:
        return Tier.GENUINE
    return Tier.CANDIDATE


def is_regular_point(spec_or_a, sT) -> bool:
    """False when s_T lies on a genuine or candidate hyperplane, true otherwise.

    ``sT`` may also be a full evaluation point, whose last entry is s_T.
    Non-positive integer s_T is always regular.
    """
    if isinstance(sT, (list, tuple)):
        sT = sT[-1]
    sT = Fraction(sT)
    if _is_nonpos_int(sT):
        return True
    a = _exponents(spec_or_a)
    # a value s_T is hit by an index of size about a_d |s_T| + 1
    bound = int(max(a) * (abs(sT) + 1)) + 2
    report = candidate_hyperplanes(a, (sT, sT), max_index=bound)
    tier = report.tier_of(sT)
    return tier is None or tier is Tier.CANCELLED
