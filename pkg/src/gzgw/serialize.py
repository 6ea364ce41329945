"""JSON schemas for matrices, patterns and torus elements.

Floats go through Python's shortest round-trip repr, so files reproduce
the exact binary values on reload.

    matrix:  {"n": int, "entries": [[[re, im], ...] per row]}
    pattern: {"n": int, "levels": [[x], [x, x], ...]}
    torus:   {"n": int, "angles": [[t], [t, t], ...]}   (radians, (-pi, pi])
"""

import json

import numpy as np

from gzgw.errors import SchemaError
from gzgw.fiber import GZTorusElement, torus_from_angles
from gzgw.linalg import check_hermitian
from gzgw.pattern import GZPattern, make_pattern


def matrix_to_obj(a):
    a = np.asarray(a, dtype=np.complex128)
    return {
        "n": int(a.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in a],
    }


def matrix_from_obj(obj, hermitian_tol=1e-12):
    try:
        n = int(obj["n"])
        entries = obj["entries"]
        if len(entries) != n or any(len(row) != n for row in entries):
            raise SchemaError(f"entries must be {n}x{n}")
        a = np.array(
            [[complex(pair[0], pair[1]) for pair in row] for row in entries],
            dtype=np.complex128,
        )
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise SchemaError(f"malformed matrix object: {exc}") from exc
    try:
        return check_hermitian(a, hermitian_tol)
    except Exception as exc:
        raise SchemaError(str(exc)) from exc


def pattern_to_obj(p):
    return {"n": int(p.n), "levels": [[float(v) for v in lv] for lv in p.levels]}


def pattern_from_obj(obj):
    try:
        n = int(obj["n"])
        levels = obj["levels"]
        if len(levels) != n:
            raise SchemaError(f"expected {n} levels")
        return make_pattern(levels, ascending_tol=0.0)
    except SchemaError:
        raise
    except Exception as exc:
        raise SchemaError(f"malformed pattern object: {exc}") from exc


def torus_to_obj(t):
    return {
        "n": int(t.n),
        "angles": [[float(v) for v in lv] for lv in t.angles()],
    }


def torus_from_obj(obj):
    try:
        n = int(obj["n"])
        return torus_from_angles(n, obj["angles"])
    except Exception as exc:
        raise SchemaError(f"malformed torus object: {exc}") from exc


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc


def dump_json(obj, path=None):
    text = json.dumps(obj, indent=2)
    if path is None:
        return text
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")
    return text
