"""Structured verification reports and their JSON / CSV serialization.

Schema (documented, stable field order):

    {"lemma": str,
     "inputs": {...}, "quantities": {...},
     "assertions": [{"name", "lhs", "op", "rhs", "tol", "exact", "pass"}],
     "measured_ratios": {...},
     "flags": [...],
     "pass": bool}

Numbers serialize with 17 significant digits; exact rationals as "p/q".
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

__all__ = ["Assertion", "VerificationReport", "dumps_report", "loads_report",
           "write_csv", "to_jsonable"]


@dataclass
class Assertion:
    name: str
    lhs: object
    op: str
    rhs: object
    passed: bool
    exact: bool = False
    tol: float = 0.0

    @property
    def slack(self):
        try:
            return float(self.rhs) - float(self.lhs)
        except (TypeError, ValueError, OverflowError):
            return None


def _compare(lhs, op, rhs, tol):
    if tol:
        scale = max(1.0, abs(float(rhs)))
        if op == "<=":
            return float(lhs) <= float(rhs) + tol * scale
        if op == ">=":
            return float(lhs) >= float(rhs) - tol * scale
        if op == "==":
            return abs(float(lhs) - float(rhs)) <= tol * scale
    if op == "<=":
        return lhs <= rhs
    if op == ">=":
        return lhs >= rhs
    if op == "==":
        return lhs == rhs
    if op == "<":
        return lhs < rhs
    raise ValueError(f"unsupported comparison {op!r}")


@dataclass
class VerificationReport:
    lemma: str
    inputs: dict = dc_field(default_factory=dict)
    quantities: dict = dc_field(default_factory=dict)
    assertions: list = dc_field(default_factory=list)
    measured_ratios: dict = dc_field(default_factory=dict)
    flags: list = dc_field(default_factory=list)

    def check(self, name, lhs, op, rhs, tol: float = 0.0, exact: bool = False):
        """Record an assertion; exact ones must be int/Fraction comparisons."""
        if exact and tol:
            raise ValueError("exact assertions take no tolerance")
        ok = bool(_compare(lhs, op, rhs, tol))
        self.assertions.append(
            Assertion(name=name, lhs=lhs, op=op, rhs=rhs, passed=ok,
                      exact=exact, tol=tol)
        )
        return ok

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def failing(self):
        return [a for a in self.assertions if not a.passed]

    def summary(self) -> str:
        state = "pass" if self.passed else "FAIL"
        return f"[{state}] {self.lemma}: {len(self.assertions)} assertions"


# -- serialization ------------------------------------------------------------


def to_jsonable(obj):
    """Normalize values for the documented schema."""
    if hasattr(obj, "as_report_dict"):
        return to_jsonable(obj.as_report_dict())
    if isinstance(obj, VerificationReport):
        return {
            "lemma": obj.lemma,
            "inputs": to_jsonable(obj.inputs),
            "quantities": to_jsonable(obj.quantities),
            "assertions": [to_jsonable(a) for a in obj.assertions],
            "measured_ratios": to_jsonable(obj.measured_ratios),
            "flags": list(obj.flags),
            "pass": obj.passed,
        }
    if isinstance(obj, Assertion):
        return {
            "name": obj.name,
            "lhs": to_jsonable(obj.lhs),
            "op": obj.op,
            "rhs": to_jsonable(obj.rhs),
            "tol": obj.tol,
            "exact": obj.exact,
            "pass": obj.passed,
        }
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def _write_json(obj, parts: list, indent: int):
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            parts.append("{}")
            return
        parts.append("{\n")
        items = list(obj.items())
        for i, (k, v) in enumerate(items):
            parts.append(pad + "  " + _json_str(str(k)) + ": ")
            _write_json(v, parts, indent + 2)
            parts.append(",\n" if i + 1 < len(items) else "\n")
        parts.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            parts.append("[]")
            return
        parts.append("[\n")
        for i, v in enumerate(obj):
            parts.append(pad + "  ")
            _write_json(v, parts, indent + 2)
            parts.append(",\n" if i + 1 < len(obj) else "\n")
        parts.append(pad + "]")
    elif isinstance(obj, bool):
        parts.append("true" if obj else "false")
    elif obj is None:
        parts.append("null")
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, float):
        if np.isfinite(obj):
            parts.append(f"{obj:.17g}")
        else:
            parts.append(_json_str(repr(obj)))
    else:
        parts.append(_json_str(str(obj)))


def _json_str(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ch == "\n":
            out.append("\\n")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def dumps_report(obj) -> str:
    """Serialize to JSON text with 17-significant-digit floats."""
    parts: list = []
    _write_json(to_jsonable(obj), parts, 0)
    parts.append("\n")
    return "".join(parts)


def loads_report(text: str):
    """Parse the documented schema back into plain dicts (round-trip check)."""
    import json

    return json.loads(text)


def write_csv(path, header: list, rows: list):
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            cells = []
            for v in row:
                if isinstance(v, float):
                    cells.append(f"{v:.17g}")
                elif isinstance(v, Fraction):
                    cells.append(f"{v.numerator}/{v.denominator}")
                else:
                    cells.append(str(v))
            fh.write(",".join(cells) + "\n")
