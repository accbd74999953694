"""Lattice-point counters for vector-dilated polytopes.

Two independent routes are provided and must always agree:

* ``brute_force`` scans the integer bounding box of the exact vertex set;
* ``recursive`` applies a unimodular column reduction so the first row reads
  ``g * y1 <= t1``, sums over the integer slices ``y1 = k`` and recurses on the
  ``(n-1)``-dimensional slice systems down to intervals counted by floor
  division.

Strict inequalities are handled through integrality: ``a.x < t`` is the same
as ``a.x <= t - 1`` on the lattice.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidArgumentError
from .exact import Matrix, column_reduce, floor_div
from .polytope import (
    Dilation,
    GluedPolytope,
    HRep,
    facet,
    glued_dilate,
    require_chamber,
    vertices_of,
)

METHODS = ("brute_force", "recursive")


@dataclass(frozen=True)
class CountResult:
    closed: int
    interior: int
    dilation: Dilation
    method: str


def _normalize_method(method: str) -> str:
    if method == "brute":
        return "brute_force"
    if method not in METHODS:
        raise InvalidArgumentError(f"unknown counting method {method!r}")
    return method


# ---------------------------------------------------------------- brute force

def brute_count_system(A: Matrix, t: Sequence[int], strict: bool = False) -> int:
    """``#{x in Z^n : A x <= t}`` (or ``< t``) by scanning the vertex bounding box."""
    vs = vertices_of(A, t)
    if not vs:
        return 0
    n = len(A[0])
    lo = [math.floor(min(v.point[k] for v in vs)) for k in range(n)]
    hi = [math.floor(max(v.point[k] for v in vs)) for k in range(n)]
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    lhs = grid @ np.asarray(A, dtype=np.int64).T
    rhs = np.asarray(t, dtype=np.int64) - (1 if strict else 0)
    return int(np.all(lhs <= rhs, axis=1).sum())


# ------------------------------------------------------------------ recursion

def _interval(A: Matrix, t: Sequence[int], strict: bool) -> int:
    s = 1 if strict else 0
    lo = hi = None
    for (a,), ti in zip(A, t):
        r = ti - s
        if a > 0:
            v = floor_div(r, a)
            hi = v if hi is None else min(hi, v)
        elif a < 0:
            v = -floor_div(r, -a)
            lo = v if lo is None else max(lo, v)
        elif r < 0:
            return 0
    if lo is None or hi is None:
        raise InvalidArgumentError("interval system is unbounded")
    return max(0, hi - lo + 1)


@lru_cache(maxsize=4096)
def _level(A: Matrix):
    """Reduced matrix, its slice rows and slice matrix for one recursion level."""
    red = column_reduce(A)
    AU = red.transformed
    zero_rows, slice_rows = [], []
    for j in range(1, len(AU)):
        (slice_rows if any(AU[j][1:]) else zero_rows).append(j)
    B = tuple(AU[j][1:] for j in slice_rows)
    return AU, tuple(zero_rows), tuple(slice_rows), B


def recursive_count_system(A: Matrix, t: Sequence[int], strict: bool = False) -> int:
    """Count by summing over slices of the reduced first coordinate.

    ``A`` must describe a bounded system (every slice is then bounded too).
    """
    if len(A[0]) == 1:
        return _interval(A, t, strict)
    if not any(A[0]):
        k = next((j for j, row in enumerate(A) if any(row)), None)
        if k is None:
            raise InvalidArgumentError("system has no nonzero row")
        order = [k] + [j for j in range(len(A)) if j != k]
        A = tuple(A[j] for j in order)
        t = tuple(t[j] for j in order)
    AU, zero_rows, slice_rows, B = _level(A)
    vs = vertices_of(AU, t)
    if not vs:
        return 0
    g = AU[0][0]
    s = 1 if strict else 0
    lo = math.ceil(min(v.point[0] for v in vs))
    hi = floor_div(t[0] - s, g)
    total = 0
    for k in range(lo, hi + 1):
        if any(t[j] - AU[j][0] * k < s for j in zero_rows):
            continue
        if not B:
            total += 1
            continue
        total += recursive_count_system(B, tuple(t[j] - AU[j][0] * k for j in slice_rows), strict)
    return total


def count_system(A: Matrix, t: Sequence[int], strict: bool = False, method: str = "recursive") -> int:
    if _normalize_method(method) == "brute_force":
        return brute_count_system(A, t, strict)
    return recursive_count_system(A, t, strict)


# ------------------------------------------------------------------ operators

def count_brute(P: HRep, t: Sequence[int]) -> CountResult:
    t = require_chamber(P, t)
    return CountResult(brute_count_system(P.A, t), brute_count_system(P.A, t, True), t, "brute_force")


def count_recursive(P: HRep, t: Sequence[int]) -> CountResult:
    t = require_chamber(P, t)
    return CountResult(recursive_count_system(P.A, t), recursive_count_system(P.A, t, True), t, "recursive")


def count(P: HRep | GluedPolytope, t: Sequence[int], method: str = "recursive") -> CountResult:
    if isinstance(P, GluedPolytope):
        return count_glued(P, t, method)
    if _normalize_method(method) == "brute_force":
        return count_brute(P, t)
    return count_recursive(P, t)


def count_classical(P: HRep, s: int, method: str = "recursive") -> CountResult:
    """Classical dilation ``s * P`` for a positive integer ``s``."""
    if s < 1:
        raise InvalidArgumentError("classical dilation factor must be positive")
    return count(P, tuple(s * x for x in P.b), method)


def facet_system(P: HRep, i: int, t: Dilation, relint: bool) -> tuple[Matrix, Dilation]:
    F = facet(P, i)
    A = P.A + (tuple(-a for a in P.A[i]),)
    rhs = [tj - 1 if relint and j in F.boundary_rows else tj for j, tj in enumerate(t)]
    return A, tuple(rhs) + (-t[i],)


def count_facet_closed(P: HRep, i: int, t: Sequence[int], method: str = "recursive") -> int:
    """Lattice points with row ``i`` tight and every other row satisfied."""
    t = require_chamber(P, t)
    return count_system(*facet_system(P, i, t, False), method=method)


def count_facet_relint(P: HRep, i: int, t: Sequence[int], method: str = "recursive") -> int:
    """Lattice points in the relative interior of facet ``i``."""
    t = require_chamber(P, t)
    return count_system(*facet_system(P, i, t, True), method=method)


def count_removed(P: HRep, T: Iterable[int], t: Sequence[int], method: str = "recursive") -> tuple[int, int]:
    """``(j_T, i_T)``: closed count minus facets in ``T``; interior plus their relative interiors."""
    T = sorted(set(T))
    base = count(P, t, method)
    j_T = base.closed - sum(count_facet_closed(P, i, t, method) for i in T)
    i_T = base.interior + sum(count_facet_relint(P, i, t, method) for i in T)
    return j_T, i_T


# --------------------------------------------------------------------- glued

@lru_cache(maxsize=256)
def _shared_identity_rows(G: GluedPolytope, k: int) -> frozenset[int]:
    A, tb, _ = G.shared_system(k, G.b)
    vs = vertices_of(A, tb)
    return frozenset.intersection(*(v.tight for v in vs))


def shared_counts(G: GluedPolytope, k: int, t: Sequence[int], method: str = "recursive") -> tuple[int, int]:
    """(closed, relative-interior) lattice counts of the boundary shared along edge ``k``."""
    A, tt, _ = G.shared_system(k, t)
    keep = _shared_identity_rows(G, k)
    closed = count_system(A, tt, method=method)
    relint = count_system(A, tuple(x if j in keep else x - 1 for j, x in enumerate(tt)), method=method)
    return closed, relint


def count_glued(G: GluedPolytope, t: Sequence[int], method: str = "recursive") -> CountResult:
    method = _normalize_method(method)
    glued_dilate(G, t)
    parts = G.split(t)
    closed = interior = 0
    for p, tp in zip(G.pieces, parts):
        closed += count_system(p.A, tp, method=method)
        interior += count_system(p.A, tp, True, method=method)
    for k in range(len(G.edges)):
        c, r = shared_counts(G, k, t, method)
        closed -= c
        interior += r
    return CountResult(closed, interior, tuple(t), method)


def union_membership_counts(G: GluedPolytope, t: Sequence[int]) -> tuple[int, int]:
    """Direct scan: closed = in some piece; interior = in a piece's interior or a shared relative interior."""
    glued_dilate(G, t)
    parts = G.split(t)
    boxes = []
    for p, tp in zip(G.pieces, parts):
        vs = vertices_of(p.A, tp)
        boxes.append([(math.floor(min(v.point[k] for v in vs)), math.floor(max(v.point[k] for v in vs)))
                      for k in range(G.n)])
    lo = [min(b[k][0] for b in boxes) for k in range(G.n)]
    hi = [max(b[k][1] for b in boxes) for k in range(G.n)]
    shared = []
    for k in range(len(G.edges)):
        A, tt, _ = G.shared_system(k, t)
        keep = _shared_identity_rows(G, k)
        shared.append((A, tt, keep))

    def sat(A, tt, x, strict_rows=None):
        for j, (row, tj) in enumerate(zip(A, tt)):
            v = sum(a * c for a, c in zip(row, x))
            if v > tj or (strict_rows is not None and j in strict_rows and v == tj):
                return False
        return True

    closed = interior = 0
    for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if any(sat(p.A, tp, x) for p, tp in zip(G.pieces, parts)):
            closed += 1
            if any(sat(p.A, tp, x, set(range(p.m))) for p, tp in zip(G.pieces, parts)) or any(
                sat(A, tt, x, set(range(len(A))) - keep) for A, tt, keep in shared
            ):
                interior += 1
    return closed, interior


def classify_boundary(P: HRep, t: Sequence[int]) -> dict[frozenset[int], int]:
    """Lattice points of ``P^(t)`` grouped by their set of tight rows (the open face they lie in)."""
    t = require_chamber(P, t)
    vs = vertices_of(P.A, t)
    n = P.n
    lo = [math.floor(min(v.point[k] for v in vs)) for k in range(n)]
    hi = [math.floor(max(v.point[k] for v in vs)) for k in range(n)]
    out: dict[frozenset[int], int] = {}
    for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        vals = [sum(a * c for a, c in zip(row, x)) for row in P.A]
        if all(v <= tj for v, tj in zip(vals, t)):
            key = frozenset(j for j, (v, tj) in enumerate(zip(vals, t)) if v == tj)
            out[key] = out.get(key, 0) + 1
    return out
