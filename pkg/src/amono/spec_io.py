"""Reading and writing system descriptions.

The input format is TOML. Rationals are written as strings ("p/q" or "n") so
nothing ever passes through a float::

    name = "g3"
    A = [[-1, 0, 1, 2], [2, 1, 0, -1]]
    alpha = ["-1/3", "-1/5"]
    # optional
    B = [[1, -2, 1, 0], [0, 1, -2, 1]]
    mb_thetas = [["-2/5", "0", "0", "-2/5"], ...]   # Theta_i / 2 pi
    mb_points = [["-9/10", "-2/5", "-1/2", "-7/10"], ...]

    [options]
    tolerance = 1e-8
    eig_tolerance = 1e-9
    skip_hermitian = false
    require_mb = false
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import ParseError, ValidationError

OPTION_DEFAULTS: Dict[str, Any] = {
    "tolerance": 1e-8,
    "eig_tolerance": 1e-9,
    "skip_hermitian": False,
    "require_mb": False,
}

_RAT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


@dataclass
class SystemSpec:
    name: str
    A: List[List[int]]
    alpha: List[Fraction]
    B: Optional[List[List[int]]] = None
    mb_thetas: Optional[List[List[Fraction]]] = None
    mb_points: Optional[List[List[Fraction]]] = None
    options: Dict[str, Any] = field(default_factory=dict)
    description: str = ""

    def option(self, key: str):
        return self.options.get(key, OPTION_DEFAULTS[key])


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError("%s: expected a rational, got a boolean" % where)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise ParseError('%s: floats are not accepted, write the rational as a string like "1/3"' % where)
    if not isinstance(value, str):
        raise ParseError("%s: expected a rational string, got %s" % (where, type(value).__name__))
    m = _RAT.match(value)
    if not m:
        raise ParseError("%s: %r is not a rational of the form p/q" % (where, value))
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError("%s: zero denominator in %r" % (where, value))
    return Fraction(num, den)


def _int_matrix(value, where: str) -> List[List[int]]:
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        raise ParseError("%s: expected a non-empty array of arrays of integers" % where)
    out = []
    for i, row in enumerate(value):
        if not row:
            raise ParseError("%s[%d]: empty row" % (where, i))
        cur = []
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ParseError("%s[%d][%d]: expected an integer, got %r" % (where, i, j, x))
            cur.append(x)
        out.append(cur)
    if len({len(r) for r in out}) != 1:
        raise ValidationError("%s: rows have different lengths" % where)
    return out


def _rat_vector(value, where: str) -> List[Fraction]:
    if not isinstance(value, list):
        raise ParseError("%s: expected an array" % where)
    return [parse_rational(x, "%s[%d]" % (where, i)) for i, x in enumerate(value)]


def _rat_matrix(value, where: str) -> List[List[Fraction]]:
    if not isinstance(value, list) or not value:
        raise ParseError("%s: expected a non-empty array of arrays" % where)
    return [_rat_vector(r, "%s[%d]" % (where, i)) for i, r in enumerate(value)]


def spec_from_mapping(doc: Dict[str, Any]) -> SystemSpec:
    known = {"name", "description", "A", "alpha", "B", "mb_thetas", "mb_points", "options"}
    extra = sorted(set(doc) - known)
    if extra:
        raise ParseError("unknown key(s): %s" % ", ".join(extra))
    for key in ("A", "alpha"):
        if key not in doc:
            raise ParseError("missing required key %r" % key)
    name = doc.get("name", "unnamed")
    if not isinstance(name, str):
        raise ParseError("name: expected a string")
    A = _int_matrix(doc["A"], "A")
    alpha = _rat_vector(doc["alpha"], "alpha")
    if len(alpha) != len(A):
        raise ValidationError("alpha: has length %d but A has %d rows" % (len(alpha), len(A)))
    B = _int_matrix(doc["B"], "B") if "B" in doc else None
    thetas = _rat_matrix(doc["mb_thetas"], "mb_thetas") if "mb_thetas" in doc else None
    points = _rat_matrix(doc["mb_points"], "mb_points") if "mb_points" in doc else None
    if thetas is not None and points is not None:
        raise ValidationError("give at most one of mb_thetas and mb_points")
    opts = doc.get("options", {})
    if not isinstance(opts, dict):
        raise ParseError("options: expected a table")
    for k, v in opts.items():
        if k not in OPTION_DEFAULTS:
            raise ParseError("options.%s: unknown option" % k)
        want = type(OPTION_DEFAULTS[k])
        if want is float and isinstance(v, int) and not isinstance(v, bool):
            v = float(v)
        if not isinstance(v, want) or (want is float and isinstance(v, bool)):
            raise ParseError("options.%s: expected %s" % (k, want.__name__))
        opts[k] = v
    return SystemSpec(
        name=name,
        A=A,
        alpha=alpha,
        B=B,
        mb_thetas=thetas,
        mb_points=points,
        options=dict(opts),
        description=str(doc.get("description", "")),
    )


def parse_spec(text: str) -> SystemSpec:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError("malformed input: %s" % exc) from exc
    return spec_from_mapping(doc)


def load_spec(path) -> SystemSpec:
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError("%s: not UTF-8 (byte %d)" % (path, exc.start)) from exc
    return parse_spec(text)


def _q(x: Fraction) -> str:
    return '"%s"' % x


def _toml_str(s: str) -> str:
    out = []
    for ch in s:
        if ch in '"\\':
            out.append("\\" + ch)
        elif ord(ch) < 0x20 or ord(ch) == 0x7F:
            out.append("\\u%04x" % ord(ch))
        else:
            out.append(ch)
    return '"%s"' % "".join(out)


def _int_rows(M) -> str:
    return "[\n" + "".join("  [%s],\n" % ", ".join(str(int(x)) for x in r) for r in M) + "]"


def _rat_rows(M) -> str:
    return "[\n" + "".join("  [%s],\n" % ", ".join(_q(Fraction(x)) for x in r) for r in M) + "]"


def _opt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(v)


def emit_spec(spec: SystemSpec) -> str:
    """TOML text that parses back to an equal spec."""
    lines = ["name = %s" % _toml_str(spec.name)]
    if spec.description:
        lines.append("description = %s" % _toml_str(spec.description))
    lines.append("A = " + _int_rows(spec.A))
    lines.append("alpha = [%s]" % ", ".join(_q(Fraction(x)) for x in spec.alpha))
    if spec.B is not None:
        lines.append("B = " + _int_rows(spec.B))
    if spec.mb_thetas is not None:
        lines.append("mb_thetas = " + _rat_rows(spec.mb_thetas))
    if spec.mb_points is not None:
        lines.append("mb_points = " + _rat_rows(spec.mb_points))
    if spec.options:
        lines.append("")
        lines.append("[options]")
        for k in sorted(spec.options):
            lines.append("%s = %s" % (k, _opt_value(spec.options[k])))
    return "\n".join(lines) + "\n"
