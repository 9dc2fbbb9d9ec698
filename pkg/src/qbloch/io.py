"""Schema-validated term file parsing, canonical serialization, and output
emission (JSON / CSV) with atomic writes.

A term file is a JSON object; the presence of a "quads" key selects the
special-term schema (whose "factors" list must then be empty — the factor
structure of a special term is derived from its quadruples, never stored).
Validation aggregates every violation with its JSON-pointer location before
rejecting, so a bad file is diagnosed in one pass.  Structural invariants
enforced by the type constructors (symmetry, integrality, polytope
compactness) surface through the same channel, except the polytope check,
which keeps its own error type.
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
from fractions import Fraction

from .errors import PolytopeError, SchemaError
from .qterm import LinForm, QTerm, QuadForm, SpecialQTerm

__all__ = [
    "parse_qterm", "parse_qterm_obj", "serialize_qterm",
    "write_json_atomic", "write_csv_atomic", "load_cv_file",
]


class _Check:
    def __init__(self):
        self.violations = []

    def fail(self, pointer, message):
        self.violations.append(f"{pointer}: {message}")

    def raise_if_any(self):
        if self.violations:
            raise SchemaError("term file rejected", self.violations)


def _want_int(ck, obj, pointer):
    if isinstance(obj, bool) or not isinstance(obj, int):
        ck.fail(pointer, f"expected an integer, got {type(obj).__name__}")
        return 0
    return obj


def _want_list(ck, obj, pointer, length=None):
    if not isinstance(obj, list):
        ck.fail(pointer, f"expected an array, got {type(obj).__name__}")
        return None
    if length is not None and len(obj) != length:
        ck.fail(pointer, f"expected {length} entries, got {len(obj)}")
        return None
    return obj


def _parse_linform(ck, obj, pointer, nvars):
    if not isinstance(obj, dict):
        ck.fail(pointer, "expected an object with 'coeffs'")
        return LinForm((0,) * nvars, 0)
    coeffs = _want_list(ck, obj.get("coeffs"), pointer + "/coeffs", nvars)
    if coeffs is None:
        coeffs = [0] * nvars
    else:
        coeffs = [_want_int(ck, c, f"{pointer}/coeffs/{i}") for i, c in enumerate(coeffs)]
    constant = _want_int(ck, obj.get("constant", 0), pointer + "/constant")
    for key in obj:
        if key not in ("coeffs", "constant"):
            ck.fail(f"{pointer}/{key}", "unknown field")
    return LinForm(tuple(coeffs), constant)


def _parse_quadform(ck, obj, pointer, nvars):
    if not isinstance(obj, dict):
        ck.fail(pointer, "expected an object with 'matrix' and 'linear'")
        return QuadForm(((0,) * nvars,) * nvars, (0,) * nvars)
    rows = _want_list(ck, obj.get("matrix"), pointer + "/matrix", nvars)
    matrix = []
    if rows is None:
        matrix = [[0] * nvars for _ in range(nvars)]
    else:
        for i, row in enumerate(rows):
            r = _want_list(ck, row, f"{pointer}/matrix/{i}", nvars)
            if r is None:
                matrix.append([0] * nvars)
            else:
                matrix.append([_want_int(ck, x, f"{pointer}/matrix/{i}/{j}")
                               for j, x in enumerate(r)])
    lin = _want_list(ck, obj.get("linear"), pointer + "/linear", nvars)
    linear = []
    if lin is None:
        linear = [0] * nvars
    else:
        for i, x in enumerate(lin):
            try:
                linear.append(Fraction(x))
            except (ValueError, TypeError, ZeroDivisionError):
                ck.fail(f"{pointer}/linear/{i}", f"not a rational: {x!r}")
                linear.append(Fraction(0))
    for i in range(len(matrix)):
        for j in range(i + 1, len(matrix)):
            if matrix[i][j] != matrix[j][i]:
                ck.fail(f"{pointer}/matrix/{i}/{j}",
                        f"matrix is not symmetric: {matrix[i][j]} != {matrix[j][i]}")
    for i in range(min(len(matrix), len(linear))):
        t = matrix[i][i] + 2 * linear[i]
        if t.denominator != 1 or t.numerator % 2 != 0:
            ck.fail(f"{pointer}/linear/{i}",
                    f"integrality violated: M[{i}][{i}] + 2*QL[{i}] = {t} is not even")
    if ck.violations:
        # construction would re-raise; hand back a placeholder so later
        # checks can still accumulate
        return None
    return QuadForm(tuple(tuple(r) for r in matrix), tuple(linear))


def parse_qterm_obj(obj) -> "QTerm | SpecialQTerm":
    """Validate a decoded JSON object; raises SchemaError listing every
    violation with its JSON-pointer, or PolytopeError for a special term
    whose scaled admissible region is empty or unbounded."""
    ck = _Check()
    if not isinstance(obj, dict):
        ck.fail("", f"expected a JSON object, got {type(obj).__name__}")
        ck.raise_if_any()
    r = _want_int(ck, obj.get("r", None), "/r")
    if r < 0:
        ck.fail("/r", f"r must be >= 0, got {r}")
        r = 0
    nvars = r + 1
    Q = _parse_quadform(ck, obj.get("Q"), "/Q", nvars)
    L = _parse_linform(ck, obj.get("L"), "/L", nvars)
    eps = obj.get("epsilon")
    if eps not in (1, -1):
        ck.fail("/epsilon", f"epsilon must be 1 or -1, got {eps!r}")
        eps = 1
    is_special = "quads" in obj
    fobj = obj.get("factors")
    factors = []
    if fobj is None:
        ck.fail("/factors", "missing (use [] for a special term)")
    elif not isinstance(fobj, list):
        ck.fail("/factors", "expected an array")
    else:
        if is_special and fobj:
            ck.fail("/factors", "must be empty for a special term "
                                "(factors are derived from the quadruples)")
        for i, f in enumerate(fobj):
            if not isinstance(f, dict):
                ck.fail(f"/factors/{i}", "expected an object")
                continue
            a = _parse_linform(ck, f.get("A"), f"/factors/{i}/A", nvars)
            sgn = f.get("sign")
            if sgn not in (1, -1):
                ck.fail(f"/factors/{i}/sign", f"sign must be 1 or -1, got {sgn!r}")
                sgn = 1
            factors.append((a, sgn))
    quads = []
    if is_special:
        qobj = _want_list(ck, obj.get("quads"), "/quads")
        if qobj is not None:
            for i, qd in enumerate(qobj):
                if not isinstance(qd, dict):
                    ck.fail(f"/quads/{i}", "expected an object")
                    continue
                quads.append(tuple(
                    _parse_linform(ck, qd.get(name), f"/quads/{i}/{name}", nvars)
                    for name in ("B", "C", "D", "E")))
    known = {"r", "Q", "L", "epsilon", "factors"} | ({"quads"} if is_special else set())
    for key in obj:
        if key not in known:
            ck.fail(f"/{key}", "unknown field")
    ck.raise_if_any()
    if is_special:
        # PolytopeError from the constructor is the contract for bad regions
        return SpecialQTerm(r=r, Q=Q, L=L, epsilon=eps, quads=tuple(quads))
    try:
        return QTerm(r=r, Q=Q, L=L, epsilon=eps, factors=tuple(factors))
    except ValueError as exc:
        raise SchemaError("term file rejected", [f"/: {exc}"]) from exc


def parse_qterm(path) -> "QTerm | SpecialQTerm":
    """Load and validate a term file."""
    with open(path, "r") as f:
        try:
            obj = json.load(f)
        except json.JSONDecodeError as exc:
            raise SchemaError("term file rejected",
                              [f"/: invalid JSON: {exc}"]) from exc
    return parse_qterm_obj(obj)


def serialize_qterm(t) -> dict:
    return t.to_json_obj()


def write_json_atomic(path, obj):
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            json.dump(obj, f, indent=1, sort_keys=True)
            f.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv_atomic(path, rows, header):
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(header)
            w.writerows(rows)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_cv_file(path):
    """Critical values supplied externally: JSON array of [re, im] pairs
    (or bare reals)."""
    with open(path, "r") as f:
        obj = json.load(f)
    if not isinstance(obj, list):
        raise SchemaError("critical-value file rejected", ["/: expected an array"])
    out = []
    for i, v in enumerate(obj):
        if isinstance(v, (int, float)):
            out.append(complex(v))
        elif (isinstance(v, list) and len(v) == 2
              and all(isinstance(x, (int, float)) for x in v)):
            out.append(complex(v[0], v[1]))
        else:
            raise SchemaError("critical-value file rejected",
                              [f"/{i}: expected a real or an [re, im] pair"])
    return tuple(out)
