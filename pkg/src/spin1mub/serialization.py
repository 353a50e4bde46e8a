"""JSON and CSV forms of states, bases, circuits, counts and reports.

Complex numbers are written as [re, im] pairs; matrices as rows of pairs.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import json

import numpy as np

from .mub import Basis, MubSet
from .protocol import Circuit, Counts, Pulse
from .spin import Direction, normalize_state


def pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def unpair(p) -> complex:
    if not isinstance(p, (list, tuple)) or len(p) != 2:
        raise ValueError(f"complex numbers must be [re, im] pairs, got {p!r}")
    return complex(float(p[0]), float(p[1]))


def vector_to_json(v) -> list:
    return [pair(z) for z in np.asarray(v).ravel()]


def vector_from_json(obj) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise ValueError("a state must be a nonempty JSON array of [re, im] pairs")
    return np.array([unpair(p) for p in obj], dtype=complex)


def matrix_to_json(m) -> list:
    return [vector_to_json(row) for row in np.asarray(m)]


def matrix_from_json(obj) -> np.ndarray:
    rows = [vector_from_json(r) for r in obj]
    if len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    return np.array(rows)


def state_from_json(obj, dim: int | None = None) -> np.ndarray:
    """Parse and validate a state: unit norm within 1e-6 and, optionally, its length."""
    psi = vector_from_json(obj)
    if dim is not None and psi.size != dim:
        raise ValueError(f"state has length {psi.size}, expected {dim}")
    return normalize_state(psi)


def load_state(path, dim: int | None = None) -> np.ndarray:
    with open(path) as fh:
        return state_from_json(json.load(fh), dim)


def basis_to_json(b: Basis) -> dict:
    return {"dim": b.dim, "vectors": [vector_to_json(v) for v in b], "label": b.label}


def basis_from_json(obj) -> Basis:
    vecs = [vector_from_json(v) for v in obj["vectors"]]
    b = Basis(np.column_stack(vecs), obj.get("label", ""))
    if b.dim != obj["dim"]:
        raise ValueError("basis dim does not match its vectors")
    return b


def mubset_to_json(s: MubSet) -> dict:
    return {"dim": s.dim, "bases": [basis_to_json(b) for b in s]}


def mubset_from_json(obj) -> MubSet:
    s = MubSet([basis_from_json(b) for b in obj["bases"]])
    if s.dim != obj["dim"]:
        raise ValueError("set dim does not match its bases")
    return s


def pulse_to_json(p: Pulse) -> dict:
    out = {
        "kind": p.kind,
        "axis": None if p.axis is None else [p.axis.x, p.axis.y, p.axis.z],
        "duration": p.duration,
        "label": p.label,
    }
    if p.kind == "fixed-unitary":
        out["matrix"] = matrix_to_json(p.matrix)
    return out


def pulse_from_json(obj) -> Pulse:
    axis = None if obj.get("axis") is None else Direction(*obj["axis"])
    matrix = matrix_from_json(obj["matrix"]) if "matrix" in obj else None
    return Pulse(obj["kind"], axis, float(obj["duration"]), matrix, obj.get("label", ""))


def circuit_to_json(c: Circuit) -> dict:
    return {"pulses": [pulse_to_json(p) for p in c.pulses], "twist_count": c.twist_count}


def circuit_from_json(obj) -> Circuit:
    return Circuit([pulse_from_json(p) for p in obj["pulses"]], int(obj.get("twist_count", 0)))


def counts_to_json(counts: list[Counts], phi: float | None = None) -> dict:
    """{"shots": N, "seed": S, "counts": {"basis_b": [n0, n1, n2]}} for same-shot records."""
    shots = {c.shots for c in counts}
    seeds = {c.seed for c in counts}
    if len(shots) != 1 or len(seeds) != 1:
        raise ValueError("counts records must share shots and seed")
    out = {
        "shots": shots.pop(),
        "seed": seeds.pop(),
        "counts": {f"basis_{c.basis}": [int(n) for n in c.outcomes] for c in counts},
    }
    if phi is not None:
        out["phi"] = phi
    return out


def counts_from_json(obj) -> list[Counts]:
    try:
        shots, seed, table = int(obj["shots"]), obj.get("seed"), obj["counts"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed counts record: {exc}") from None
    out = []
    for key in sorted(table, key=lambda k: int(k.split("_")[1])):
        out.append(Counts(shots, table[key], seed, int(key.split("_")[1])))
    return out


def load_counts(path) -> tuple[list[Counts], float | None]:
    with open(path) as fh:
        obj = json.load(fh)
    return counts_from_json(obj), obj.get("phi")


def probabilities_to_csv(p) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in np.asarray(p, dtype=float):
        w.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def probabilities_from_csv(text: str) -> np.ndarray:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    try:
        return np.array([[float(x) for x in r] for r in rows])
    except ValueError as exc:
        raise ValueError(f"bad probability table: {exc}") from None


def to_jsonable(obj):
    """Recursively convert reports (dataclasses, numpy values, complex) to JSON types."""
    if isinstance(obj, Direction):
        return [obj.x, obj.y, obj.z]
    if isinstance(obj, Basis):
        return basis_to_json(obj)
    if isinstance(obj, MubSet):
        return mubset_to_json(obj)
    if isinstance(obj, Circuit):
        return circuit_to_json(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return vector_to_json(obj) if obj.ndim == 1 else matrix_to_json(obj)
        return obj.tolist()
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, complex):
        return pair(obj)
    return obj
