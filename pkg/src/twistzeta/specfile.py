"""JSON problem files.

A problem file looks like::

    {"n": 2, "T": 2,
     "polynomials": ["1", "1 + X2 + X1^2*X2^2"],
     "twists": ["1/2"],
     "options": {"simplify": true, "numeric": false, "tolerance": 1e-10}}

The last polynomial is P_T. Every error carries a pointer to the offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import PolynomialParseError, TwistZetaError, VarArityMismatch
from .exact import RootOfUnity
from .partial import ProblemSpec
from .poly import MultiPoly, parse_poly


class SpecParseError(TwistZetaError, ValueError):
    """The file is not well-formed; ``diagnostics`` lists every problem found."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


@dataclass
class SpecOptions:
    simplify: bool = True
    numeric: bool = False
    tolerance: float = 1e-10


@dataclass
class SpecFile:
    spec: ProblemSpec
    options: SpecOptions = field(default_factory=SpecOptions)


def _read_json(source) -> dict:
    if isinstance(source, dict):
        return source
    text = Path(source).read_text() if not str(source).lstrip().startswith("{") else str(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError([f"line {exc.lineno}, column {exc.colno}: {exc.msg}"]) from exc
    if not isinstance(doc, dict):
        raise SpecParseError(["top level: expected a JSON object"])
    return doc


def _int_field(doc: dict, key: str, diags: list[str]) -> int | None:
    v = doc.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        diags.append(f"{key}: expected an integer, got {v!r}")
        return None
    return v


def _twists(raw, expected: int | None, diags: list[str], key: str = "twists") -> list[RootOfUnity]:
    if not isinstance(raw, list):
        diags.append(f"{key}: expected a list of 'a/b' strings")
        return []
    out = []
    for i, t in enumerate(raw):
        try:
            out.append(RootOfUnity.parse(str(t)))
        except (ValueError, ZeroDivisionError) as exc:
            diags.append(f"{key}[{i}]: {exc}")
    if expected is not None and len(raw) != expected:
        diags.append(f"{key}: expected {expected} entries, got {len(raw)}")
    return out


def _polys(raw, nvars_of, diags: list[str], key: str) -> list[MultiPoly]:
    if not isinstance(raw, list) or not raw:
        diags.append(f"{key}: expected a non-empty list of polynomial strings")
        return []
    out = []
    for i, p in enumerate(raw):
        if not isinstance(p, str):
            diags.append(f"{key}[{i}]: expected a string, got {p!r}")
            continue
        try:
            out.append(parse_poly(p, nvars_of(i)))
        except (PolynomialParseError, VarArityMismatch) as exc:
            diags.append(f"{key}[{i}]: {exc}")
    return out


def load_spec(source) -> SpecFile:
    doc = _read_json(source)
    diags: list[str] = []
    n = _int_field(doc, "n", diags)
    T = _int_field(doc, "T", diags)
    if n is not None and n < 1:
        diags.append("n: must be >= 1")
    if T is not None and T < 1:
        diags.append("T: must be >= 1")
    raw_polys = doc.get("polynomials")
    if T is not None and isinstance(raw_polys, list) and len(raw_polys) != T:
        diags.append(f"polynomials: expected T = {T} entries, got {len(raw_polys)}")
    twists = _twists(doc.get("twists", []), None if n is None else n - 1, diags)
    polys = []
    if n is not None and n >= 1:
        last = len(raw_polys) - 1 if isinstance(raw_polys, list) else -1
        polys = _polys(raw_polys, lambda i: n if i == last else n - 1, diags, "polynomials")
    opts_raw = doc.get("options", {}) or {}
    opts = SpecOptions()
    if not isinstance(opts_raw, dict):
        diags.append("options: expected an object")
    else:
        for key, typ in (("simplify", bool), ("numeric", bool), ("tolerance", (int, float))):
            if key in opts_raw:
                if not isinstance(opts_raw[key], typ):
                    diags.append(f"options.{key}: wrong type {type(opts_raw[key]).__name__}")
                else:
                    setattr(opts, key, opts_raw[key])
    if diags:
        raise SpecParseError(diags)
    spec = ProblemSpec(n, T, tuple(polys[:-1]), polys[-1], tuple(twists))
    return SpecFile(spec, opts)


@dataclass
class DCRequest:
    polys: list[MultiPoly]
    twists: list[RootOfUnity]
    k: list[int] | None = None
    args: list | None = None


def load_dc_request(source) -> DCRequest:
    """{"polys": [...], "twists": [...], "k": [...]} or with "args" for signed points."""
    doc = _read_json(source)
    diags: list[str] = []
    twists = _twists(doc.get("twists", []), None, diags)
    nv = len(doc.get("twists", [])) if isinstance(doc.get("twists", []), list) else 0
    polys = _polys(doc.get("polys"), lambda i: nv, diags, "polys")
    k = doc.get("k")
    args = doc.get("args")
    if (k is None) == (args is None):
        diags.append("exactly one of 'k' (non-negative exponents) or 'args' (signed point) is required")
    for key, v in (("k", k), ("args", args)):
        if v is None:
            continue
        if not isinstance(v, list) or not all(isinstance(x, (int, str)) and not isinstance(x, bool) for x in v):
            diags.append(f"{key}: expected a list of integers")
        elif isinstance(doc.get("polys"), list) and len(v) != len(doc["polys"]):
            diags.append(f"{key}: expected {len(doc['polys'])} entries, got {len(v)}")
    if k is not None and isinstance(k, list) and any(isinstance(x, int) and x < 0 for x in k):
        diags.append("k: entries must be non-negative")
    if diags:
        raise SpecParseError(diags)
    return DCRequest(polys, twists, k=k, args=args)
