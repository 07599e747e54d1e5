"""JSON set documents, verdict documents and CSV point export."""

from __future__ import annotations

import csv
import dataclasses
import json
import math
from pathlib import Path

import numpy as np

from .core import ConPolyZonotope, validate

CONSTRAINT_KEYS = ("F", "theta", "R")


class SetDocumentError(ValueError):
    def __init__(self, source: str, problems: list[str]):
        self.source = source
        self.problems = problems
        super().__init__(f"{source}: " + "; ".join(problems))


def set_to_document(cpz: ConPolyZonotope) -> dict:
    doc = {}
    if cpz.name is not None:
        doc["name"] = cpz.name
    doc["c"] = cpz.c.tolist()
    doc["G"] = cpz.G.tolist()
    doc["E"] = cpz.E.tolist()
    if cpz.has_constraints:
        doc["F"] = cpz.F.tolist()
        doc["theta"] = cpz.theta.tolist()
        doc["R"] = cpz.R.tolist()
    return doc


def serialize_set(cpz: ConPolyZonotope) -> str:
    # json writes floats with repr(), which round-trips float64 exactly
    return json.dumps(set_to_document(cpz), indent=2) + "\n"


def write_set(path, cpz: ConPolyZonotope) -> None:
    Path(path).write_text(serialize_set(cpz), encoding="utf-8")


def _real_matrix(key, value, problems, ndim):
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError):
        problems.append(f"{key}: not a rectangular array of numbers")
        return None
    if ndim == 1 and arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != ndim and arr.size:
        problems.append(f"{key}: expected a {ndim}-d array, got {arr.ndim}-d")
        return None
    return arr


def _exponent_matrix(key, value, problems):
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        problems.append(f"{key}: expected an array of rows")
        return None
    bad = False
    rows = []
    for row in value:
        out = []
        for v in row:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                bad = True
            elif isinstance(v, float) and not (math.isfinite(v) and v.is_integer()):
                bad = True
            elif v < 0:
                bad = True
            else:
                out.append(int(v))
                continue
            out.append(0)
        rows.append(out)
    if bad:
        problems.append(f"{key}: exponent not a nonnegative integer")
        return None
    if len({len(r) for r in rows}) > 1:
        problems.append(f"{key}: rows have different lengths")
        return None
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(rows[0]) if rows else 0)


def document_to_set(doc: dict, source: str = "<document>") -> ConPolyZonotope:
    """Build and validate a set from a parsed document; raises SetDocumentError."""
    problems = []
    if not isinstance(doc, dict):
        raise SetDocumentError(source, ["top level is not an object"])
    for key in ("c", "G", "E"):
        if key not in doc:
            problems.append(f"missing required key {key!r}")
    present = [k for k in CONSTRAINT_KEYS if k in doc]
    if present and len(present) != len(CONSTRAINT_KEYS):
        missing = [k for k in CONSTRAINT_KEYS if k not in doc]
        problems.append(f"constraint block incomplete: missing {', '.join(missing)}")
    if problems:
        raise SetDocumentError(source, problems)
    c = _real_matrix("c", doc["c"], problems, 1)
    G = _real_matrix("G", doc["G"], problems, 2)
    E = _exponent_matrix("E", doc["E"], problems)
    F = theta = R = None
    if present:
        F = _real_matrix("F", doc["F"], problems, 2)
        theta = _real_matrix("theta", doc["theta"], problems, 1)
        R = _exponent_matrix("R", doc["R"], problems)
    if problems:
        raise SetDocumentError(source, problems)
    if G.size == 0:
        G = G.reshape(c.size, 0)
    if E.size == 0:
        E = E.reshape(E.shape[0], G.shape[1])
    name = doc.get("name")
    cpz = ConPolyZonotope(c, G, E, F, theta, R, name=name if isinstance(name, str) else None)
    problems = validate(cpz)
    if problems:
        raise SetDocumentError(source, problems)
    return cpz


def parse_set(path) -> ConPolyZonotope:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SetDocumentError(str(path), [f"JSON parse error at line {exc.lineno}, "
                                           f"column {exc.colno}: {exc.msg}"]) from exc
    cpz = document_to_set(doc, str(path))
    if cpz.name is None:
        cpz = dataclasses.replace(cpz, name=path.stem)
    return cpz


def load_matrix(path) -> np.ndarray:
    M = np.array(json.loads(Path(path).read_text(encoding="utf-8")), dtype=float)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    if M.ndim != 2:
        raise ValueError(f"{path}: expected an m x d array")
    return M


def write_points_csv(path, points: np.ndarray, d: int) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow([f"x{i + 1}" for i in range(d)])
        for row in points:
            w.writerow([repr(float(v)) for v in row])


def read_points_csv(path) -> np.ndarray:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    d = len(rows[0])
    return np.array(rows[1:], dtype=float).reshape(-1, d)


def _finite(x):
    x = float(x)
    return x if math.isfinite(x) else ("inf" if x > 0 else "-inf")


def verdict_document(inner: str, outer: str, method: str, status: str, wall_time: float,
                     outcome=None, witness=None, seed: int | None = None) -> dict:
    """Machine-readable result of one inclusion check.

    ``status`` is one of ``proven``, ``not_proven``, ``falsified``.
    """
    doc = {"inner": inner, "outer": outer, "method": method, "status": status,
           "wall_time_s": float(wall_time)}
    if seed is not None:
        doc["seed"] = seed
    if outcome is not None and outcome.feasible:
        cert = outcome.alpha if outcome.alpha is not None else outcome.certificate
        doc["certificate"] = cert.to_dict()
        doc["residuals"] = outcome.report.to_dict()
    elif outcome is not None:
        doc["residuals"] = {"best_violation": _finite(outcome.best_violation)}
    if witness is not None:
        doc["witness"] = witness.to_dict()
    return doc
