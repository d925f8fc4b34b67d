"""CSV/JSON readers and writers shared by the CLI (17 significant digits)."""
import csv
import json

import numpy as np

from ._reps import HermiteRep
from .errors import ContractError
from .profile import ARC, INTERVAL, ProfileW


def fmt(v):
    return f"{float(v):.17g}"


def write_rows(path, header, rows):
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")


def write_profile(path, w):
    head = ["t", "w", "dw"] if w.domain == INTERVAL else ["phi", "w", "dw"]
    write_rows(path, head, zip(w.nodes, w.w, w.dw))


def read_profile(path, beta):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    head = [h.strip() for h in rows[0]]
    if head[1:] != ["w", "dw"] or head[0] not in ("t", "phi"):
        raise ContractError("profile CSV needs columns t|phi, w, dw")
    data = np.array(rows[1:], dtype=float)
    order = np.argsort(data[:, 0])
    t, w, dw = data[order].T
    domain = INTERVAL if head[0] == "t" else ARC
    return ProfileW.from_rep(HermiteRep(t, w, dw), domain, float(beta))


def write_json(path, obj):
    text = json.dumps(obj, indent=2, sort_keys=True, default=_jsonable)
    with open(path, "w") as fh:
        fh.write(text + "\n")


def _jsonable(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def read_json(path):
    with open(path) as fh:
        return json.load(fh)
