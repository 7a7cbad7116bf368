"""Text serialization of phase-space grids.

CSV columns are `p,q,re,im` with p, q as symmetric residues, or
`re_alpha,im_alpha,re,im` for complex-plane grids.  The JSON envelope is
{"N": ..., "kind": ..., "data": [[p, q, re, im], ...]}.  Floats are
written with 17 significant digits so a round trip through text is
bit-exact.
"""

import csv
import io
import json

import numpy as np

from .lattice import make_space
from .weyl import PhaseSpaceFunction


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def grid_rows(F: PhaseSpaceFunction):
    """Rows (p_sym, q_sym, re, im) in ascending symmetric-residue order."""
    space = F.space
    N = space.modulus
    half = (N - 1) // 2
    for ps in range(-half, half + 1):
        for qs in range(-half, half + 1):
            z = F.grid[space.idx(ps), space.idx(qs)]
            yield ps, qs, z.real, z.imag


def grid_to_csv(F: PhaseSpaceFunction) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "q", "re", "im"])
    for ps, qs, re, im in grid_rows(F):
        w.writerow([ps, qs, _fmt(re), _fmt(im)])
    return buf.getvalue()


def grid_to_json(F: PhaseSpaceFunction) -> str:
    payload = {
        "N": F.space.modulus,
        "kind": F.kind,
        "data": [[ps, qs, re, im] for ps, qs, re, im in grid_rows(F)],
    }
    return json.dumps(payload, default=_json_float) + "\n"


def _json_float(x):
    raise TypeError(f"not serializable: {x!r}")


def grid_from_csv(text: str) -> PhaseSpaceFunction:
    rows = list(csv.reader(io.StringIO(text)))
    if rows[0] != ["p", "q", "re", "im"]:
        raise ValueError(f"unexpected CSV header {rows[0]}")
    entries = [(int(r[0]), int(r[1]), float(r[2]), float(r[3]))
               for r in rows[1:]]
    N = round(len(entries) ** 0.5)
    space = make_space(N)
    grid = np.zeros((N, N), dtype=complex)
    for ps, qs, re, im in entries:
        grid[space.idx(ps), space.idx(qs)] = complex(re, im)
    return PhaseSpaceFunction(space, grid, "Symbol")


def grid_from_json(text: str) -> PhaseSpaceFunction:
    payload = json.loads(text)
    space = make_space(payload["N"])
    grid = np.zeros((space.modulus, space.modulus), dtype=complex)
    for ps, qs, re, im in payload["data"]:
        grid[space.idx(int(ps)), space.idx(int(qs))] = complex(re, im)
    return PhaseSpaceFunction(space, grid, payload["kind"])


def alpha_grid_to_csv(alphas, values) -> str:
    """Complex-plane grid: `re_alpha,im_alpha,re,im`, row-major."""
    alphas = np.asarray(alphas, dtype=complex).ravel()
    values = np.asarray(values, dtype=complex).ravel()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["re_alpha", "im_alpha", "re", "im"])
    for a, v in zip(alphas, values):
        w.writerow([_fmt(a.real), _fmt(a.imag), _fmt(v.real), _fmt(v.imag)])
    return buf.getvalue()


def alpha_grid_to_json(alphas, values, kind: str, meta=None) -> str:
    alphas = np.asarray(alphas, dtype=complex).ravel()
    values = np.asarray(values, dtype=complex).ravel()
    payload = {
        "N": int(alphas.size),
        "kind": kind,
        "data": [[a.real, a.imag, v.real, v.imag]
                 for a, v in zip(alphas, values)],
    }
    if meta:
        payload.update(meta)
    return json.dumps(payload, default=_json_float) + "\n"
