"""Orbit files and canonical report JSON.

An orbit file is a JSON object

    {"rank": 2, "weight": -1, "N": [[0, 0], [1, 0]],
     "F": {"0": [[{"re": "1", "im": "0"}, {"re": "0", "im": "0"}]]},
     "label": "..."}

with exact rational strings.  F lists spanning vectors per level; F^p is
spanned by everything listed at levels >= p, it is the whole space below
the lowest listed level and zero above the highest.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from fractions import Fraction

import numpy as np

from .exact import GMatrix, GScalar, Subspace
from .exact.scalar import format_gaussian
from .hodge import NilpotentOrbit

__all__ = [
    "OrbitFileError",
    "parse_orbit",
    "load_orbit",
    "orbit_to_dict",
    "dump_orbit",
    "orbit_digest",
    "canonical_json",
    "to_jsonable",
    "format_float",
    "render_text",
]

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


class OrbitFileError(ValueError):
    """Malformed orbit file; carries a 1-based line and column when known."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None,
                 source: str = "<orbit>"):
        self.line, self.col, self.source = line, col, source
        where = f"{source}:{line}:{col}: " if line is not None else f"{source}: "
        super().__init__(where + message)


def _locate(text: str, key: str) -> tuple[int | None, int | None]:
    """Line and column of the first occurrence of the JSON key ``key``."""
    idx = text.find(json.dumps(key))
    if idx < 0:
        return None, None
    line = text.count("\n", 0, idx) + 1
    col = idx - (text.rfind("\n", 0, idx) + 1) + 1
    return line, col


def _rational(s, where: str) -> Fraction:
    if isinstance(s, bool):
        raise ValueError(f"{where}: booleans are not numbers")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str) or not _RATIONAL.match(s):
        raise ValueError(f"{where}: expected an exact rational string like \"-3/4\", got {s!r}")
    num, _, den = s.replace(" ", "").partition("/")
    if den and int(den) == 0:
        raise ValueError(f"{where}: zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def _scalar(obj, where: str) -> GScalar:
    if isinstance(obj, dict):
        extra = set(obj) - {"re", "im"}
        if extra:
            raise ValueError(f"{where}: unexpected scalar keys {sorted(extra)}")
        return GScalar(_rational(obj.get("re", "0"), where + ".re"), _rational(obj.get("im", "0"), where + ".im"))
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return GScalar(_rational(obj, where))
    raise ValueError(f"{where}: expected {{\"re\": ..., \"im\": ...}}, got {obj!r}")


def parse_orbit(text: str, source: str = "<orbit>") -> NilpotentOrbit:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise OrbitFileError(exc.msg, exc.lineno, exc.colno, source) from None

    def fail(msg: str, key: str | None = None):
        line, col = _locate(text, key) if key else (None, None)
        if line is None:
            line, col = 1, 1
        raise OrbitFileError(msg, line, col, source)

    if not isinstance(doc, dict):
        fail("top level must be an object")
    for key in ("rank", "weight", "N", "F"):
        if key not in doc:
            fail(f"missing field {key!r}")
    extra = set(doc) - {"rank", "weight", "N", "F", "label"}
    if extra:
        fail(f"unknown fields {sorted(extra)}", sorted(extra)[0])
    rank, weight = doc["rank"], doc["weight"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        fail("rank must be a positive integer", "rank")
    if not isinstance(weight, int) or isinstance(weight, bool):
        fail("weight must be an integer", "weight")
    N = doc["N"]
    if (not isinstance(N, list) or len(N) != rank
            or any(not isinstance(r, list) or len(r) != rank for r in N)):
        fail(f"N must be a {rank}x{rank} list of integer rows", "N")
    if any(not isinstance(a, int) or isinstance(a, bool) for r in N for a in r):
        fail("N must have integer entries", "N")
    F = doc["F"]
    if not isinstance(F, dict):
        fail("F must map levels to lists of vectors", "F")
    spans = {}
    for p, vecs in F.items():
        try:
            level = int(p)
        except ValueError:
            fail(f"F level {p!r} is not an integer", p)
        if str(level) != p.strip():
            fail(f"F level {p!r} is not an integer", p)
        if not isinstance(vecs, list) or any(not isinstance(v, list) or len(v) != rank for v in vecs):
            fail(f"F[{p!r}] must be a list of length-{rank} vectors", p)
        try:
            spans[level] = [[_scalar(a, f"F[{p}][{i}][{j}]") for j, a in enumerate(v)]
                            for i, v in enumerate(vecs)]
        except ValueError as exc:
            fail(str(exc), p)
    label = doc.get("label", "")
    if not isinstance(label, str):
        fail("label must be a string", "label")
    try:
        return NilpotentOrbit.from_data(N, weight, spans, label)
    except ValueError as exc:
        fail(str(exc))


def load_orbit(path: str) -> NilpotentOrbit:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_orbit(text, path)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _scalar_dict(a: GScalar) -> dict:
    return {"im": _frac_str(Fraction(a.im)), "re": _frac_str(Fraction(a.re))}


def orbit_to_dict(orbit: NilpotentOrbit) -> dict:
    """Canonical form: every proper level F^p (neither 0 nor the whole space)
    listed by its reduced echelon basis; if there is none, the top full level."""
    n = orbit.rank
    F = {}
    lo, hi = orbit.F.lo, orbit.F.hi
    for p in range(lo, hi + 1):
        s = orbit.F[p]
        if not s.is_zero() and not s.is_full():
            F[str(p)] = [[_scalar_dict(a) for a in v] for v in s.basis]
    if not F:
        top = max(p for p in range(lo, hi + 1) if orbit.F[p].is_full())
        F[str(top)] = [[_scalar_dict(a) for a in v] for v in Subspace.full(n).basis]
    return {
        "F": F,
        "N": orbit.N.to_int_lists(),
        "label": orbit.label,
        "rank": n,
        "weight": orbit.weight,
    }


def dump_orbit(orbit: NilpotentOrbit) -> str:
    return canonical_json(orbit_to_dict(orbit))


def orbit_digest(orbit: NilpotentOrbit) -> str:
    return hashlib.sha256(dump_orbit(orbit).encode("utf-8")).hexdigest()


# -- reports -------------------------------------------------------------------

def format_float(x: float) -> str:
    """17 significant digits, so the value round-trips exactly."""
    return format(float(x), ".17g")


def to_jsonable(obj):
    """Plain JSON data: numpy scalars and arrays unwrapped, complex as [re, im],
    exact scalars as strings, non-finite floats as strings."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isfinite(x):
            return x
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_jsonable(obj.real), to_jsonable(obj.imag)]
    if isinstance(obj, GScalar):
        return format_gaussian(obj)
    if isinstance(obj, GMatrix):
        return [[format_gaussian(a) for a in r] for r in obj.rows]
    if isinstance(obj, Fraction):
        return _frac_str(obj)
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(obj, indent: int, out: list) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        if len(obj) <= 2 and all(not isinstance(v, (dict, list)) for v in obj.values()):
            out.append("{" + ", ".join(json.dumps(k) + ": " + _scalar_json(v)
                                       for k, v in sorted(obj.items())) + "}")
            return
        out.append("{\n")
        items = sorted(obj.items())
        for i, (k, v) in enumerate(items):
            out.append(pad + "  " + json.dumps(k) + ": ")
            _emit(v, indent + 1, out)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, list):
        if not obj:
            out.append("[]")
            return
        if all(not isinstance(v, (dict, list)) for v in obj):
            out.append("[" + ", ".join(_scalar_json(v) for v in obj) + "]")
            return
        if all(isinstance(v, dict) and len(v) <= 2
               and all(not isinstance(x, (dict, list)) for x in v.values()) for v in obj):
            parts = []
            for v in obj:
                sub: list[str] = []
                _emit(v, 0, sub)
                parts.append("".join(sub))
            out.append("[" + ", ".join(parts) + "]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad + "  ")
            _emit(v, indent + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "]")
    else:
        out.append(_scalar_json(obj))


def _scalar_json(v) -> str:
    if isinstance(v, float):
        return format_float(v)
    return json.dumps(v)


def canonical_json(obj) -> str:
    """Sorted keys, two-space indent, floats with 17 significant digits."""
    out: list[str] = []
    _emit(to_jsonable(obj), 0, out)
    return "".join(out) + "\n"


def render_text(obj, prefix: str = "") -> str:
    """One ``path = value`` line per leaf, values formatted as in the JSON."""
    data = to_jsonable(obj)
    lines: list[str] = []

    def walk(x, path):
        if isinstance(x, dict):
            if not x:
                lines.append(f"{path} = {{}}")
            for k in sorted(x):
                walk(x[k], f"{path}.{k}" if path else k)
        elif isinstance(x, list):
            if all(not isinstance(v, (dict, list)) for v in x):
                lines.append(f"{path} = [" + ", ".join(_scalar_json(v) for v in x) + "]")
            else:
                for i, v in enumerate(x):
                    walk(v, f"{path}[{i}]")
        else:
            lines.append(f"{path} = {_scalar_json(x)}")

    walk(data, prefix)
    return "\n".join(lines) + "\n"
