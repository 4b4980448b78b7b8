"""Symbolic values: cyclotomic-linear combinations of atoms.

An atom is a product ``pi^p * zeta_{mu_1}(s_1) * ... * [DC point]`` where the
Lerch factors have positive integer arguments and at most one unevaluated
multiple-zeta point appears. The unit atom (p = 0, no factors) carries the
constant part.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Mapping

from .errors import ExpressionParseError, OpaqueValue
from .exact import Cyclotomic, RootOfUnity, format_rational, parse_scalar

if TYPE_CHECKING:
    from .dc import DCPoint

LerchFactor = tuple[RootOfUnity, int]


@dataclass(frozen=True)
class Atom:
    pi_power: int = 0
    lerch: tuple[LerchFactor, ...] = ()
    opaque: "DCPoint | None" = None

    def __post_init__(self):
        if self.pi_power < 0:
            raise ValueError("pi power must be non-negative")
        for mu, s in self.lerch:
            if s < 1:
                raise ValueError("Lerch atoms carry positive integer arguments")
        object.__setattr__(self, "lerch", tuple(sorted(self.lerch)))

    @property
    def is_unit(self) -> bool:
        return self.pi_power == 0 and not self.lerch and self.opaque is None

    def times(self, other: Atom) -> Atom:
        if self.opaque is not None and other.opaque is not None:
            raise ValueError("a product of two opaque points is not representable")
        return Atom(
            self.pi_power + other.pi_power,
            self.lerch + other.lerch,
            self.opaque if self.opaque is not None else other.opaque,
        )

    def sort_key(self):
        return (
            self.opaque is not None,
            bool(self.lerch),
            self.pi_power,
            tuple((mu.den, mu.num, s) for mu, s in self.lerch),
            str(self.opaque) if self.opaque is not None else "",
        )

    def render(self) -> str:
        parts = []
        if self.pi_power == 1:
            parts.append("pi")
        elif self.pi_power > 1:
            parts.append(f"pi^{self.pi_power}")
        parts.extend(f"zeta_{{{mu}}}({s})" for mu, s in self.lerch)
        if self.opaque is not None:
            parts.append(str(self.opaque))
        return "*".join(parts)


UNIT = Atom()


class ValueExpr:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Atom, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Atom, Cyclotomic] = {}
        for atom, c in items:
            c = Cyclotomic.coerce(c)
            acc[atom] = acc[atom] + c if atom in acc else c
        self._terms = {a: c for a, c in sorted(acc.items(), key=lambda t: t[0].sort_key()) if not c.is_zero()}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> ValueExpr:
        return cls()

    @classmethod
    def const(cls, c) -> ValueExpr:
        return cls({UNIT: c})

    @classmethod
    def pi_power(cls, p: int, c=1) -> ValueExpr:
        return cls({Atom(pi_power=p): c})

    @classmethod
    def lerch_atom(cls, mu: RootOfUnity, s: int, c=1) -> ValueExpr:
        return cls({Atom(lerch=((mu, s),)): c})

    @classmethod
    def opaque_atom(cls, point: "DCPoint", c=1) -> ValueExpr:
        return cls({Atom(opaque=point): c})

    # -- views -------------------------------------------------------------

    @property
    def terms(self) -> dict[Atom, Cyclotomic]:
        return dict(self._terms)

    @property
    def constant(self) -> Cyclotomic:
        return self._terms.get(UNIT, Cyclotomic.rational(0))

    @property
    def pi_terms(self) -> dict[int, Cyclotomic]:
        return {a.pi_power: c for a, c in self._terms.items() if a.pi_power and not a.lerch and a.opaque is None}

    @property
    def lerch_atoms(self) -> dict[Atom, Cyclotomic]:
        return {a: c for a, c in self._terms.items() if a.lerch and a.opaque is None}

    @property
    def opaque_atoms(self) -> dict[Atom, Cyclotomic]:
        return {a: c for a, c in self._terms.items() if a.opaque is not None}

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(a.is_unit for a in self._terms)

    # -- algebra -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ValueExpr):
            try:
                other = ValueExpr.const(other)
            except TypeError:
                return NotImplemented
        return ValueExpr(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return ValueExpr({a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, ValueExpr):
            other = ValueExpr.const(other)
        return self + (-other)

    def scale(self, c) -> ValueExpr:
        c = Cyclotomic.coerce(c)
        if c.is_zero():
            return ValueExpr()
        return ValueExpr({a: v * c for a, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, ValueExpr):
            out = []
            for a1, c1 in self._terms.items():
                for a2, c2 in other._terms.items():
                    out.append((a1.times(a2), c1 * c2))
            return ValueExpr(out)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ValueExpr):
            try:
                other = ValueExpr.const(other)
            except TypeError:
                return NotImplemented
        if self._terms.keys() != other._terms.keys():
            return False
        return all(self._terms[a] == other._terms[a] for a in self._terms)

    def __hash__(self):
        return hash(tuple((a, c) for a, c in self._terms.items()))

    # -- numeric -----------------------------------------------------------

    def numeric(self, tol: float = 1e-12) -> complex:
        from .lerch import lerch_numeric

        if self.opaque_atoms:
            raise OpaqueValue("expression contains unevaluated multiple-zeta points")
        total = 0j
        for atom, c in self._terms.items():
            v = c.to_complex() * math.pi**atom.pi_power
            for mu, s in atom.lerch:
                v *= lerch_numeric(mu, s, tol)
            total += v
        return total

    # -- text --------------------------------------------------------------

    def render(self, decimal: bool = False) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for atom, c in self._terms.items():
            if c.is_rational():
                q = c.as_rational()
                sign = "-" if q < 0 else "+"
                mag = abs(q)
                if decimal:
                    cs = repr(float(mag))
                else:
                    cs = format_rational(mag)
                if atom.is_unit:
                    body = cs
                elif mag == 1:
                    body = atom.render()
                else:
                    body = f"{cs}*{atom.render()}"
            else:
                sign = "+"
                if decimal:
                    z = c.to_complex()
                    cs = f"({z.real!r}{z.imag:+.17g}j)"
                else:
                    cs = str(c)
                body = cs if atom.is_unit else f"{cs}*{atom.render()}"
            pieces.append((sign, body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"ValueExpr({self.render()!r})"

    @classmethod
    def parse(cls, text: str) -> ValueExpr:
        return parse_value_expr(text)


# ---------------------------------------------------------------------------
# reader for the canonical form

_OPEN = "[(<{"
_CLOSE = "])>}"


def _split_top(text: str, seps: tuple[str, ...]) -> list[str]:
    """Split on any separator found at bracket depth zero; separators are kept as prefixes."""
    parts = []
    depth = 0
    start = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in _OPEN:
            depth += 1
        elif ch in _CLOSE:
            depth -= 1
        elif depth == 0:
            hit = next((s for s in seps if text.startswith(s, i)), None)
            if hit is not None:
                parts.append(text[start:i])
                start = i
                i += len(hit)
                continue
        i += 1
    parts.append(text[start:])
    return parts


_LERCH = re.compile(r"zeta_\{(\d+)/(\d+)\}\((\d+)\)$")
_PI = re.compile(r"pi(?:\^(\d+))?$")


def parse_value_expr(text: str) -> ValueExpr:
    from .dc import DCPoint

    text = text.strip()
    if not text:
        raise ExpressionParseError("empty expression")
    if text == "0":
        return ValueExpr()
    chunks = _split_top(text, (" + ", " - "))
    terms = []
    for idx, chunk in enumerate(chunks):
        neg = False
        if chunk.startswith(" + "):
            chunk = chunk[3:]
        elif chunk.startswith(" - "):
            chunk, neg = chunk[3:], True
        elif idx == 0 and chunk.startswith("-") and not chunk.startswith("-["):
            chunk, neg = chunk[1:], True
        factors = _split_top(chunk, ("*",))
        factors = [f.lstrip("*") for f in factors]
        coeff = Cyclotomic.rational(1)
        pi = 0
        lerch = []
        opaque = None
        for f in factors:
            if not f:
                raise ExpressionParseError(f"empty factor in {text!r}")
            try:
                if f.startswith("DC<"):
                    if opaque is not None:
                        raise ExpressionParseError("two opaque points in one term")
                    opaque = DCPoint.parse(f)
                elif m := _PI.match(f):
                    pi += int(m.group(1) or 1)
                elif m := _LERCH.match(f):
                    lerch.append((RootOfUnity(int(m.group(1)), int(m.group(2))), int(m.group(3))))
                else:
                    coeff = coeff * parse_scalar(f)
            except ExpressionParseError:
                raise
            except (ValueError, ZeroDivisionError) as exc:
                raise ExpressionParseError(f"bad factor {f!r}: {exc}") from exc
        if neg:
            coeff = -coeff
        terms.append((Atom(pi, tuple(lerch), opaque), coeff))
    return ValueExpr(terms)
