"""H-representation polytopes under vector dilation.

A polytope is ``{x : A x <= b}`` with integer ``A`` and ``b``.  Replacing
``b`` by an arbitrary integer vector ``t`` moves every facet independently
along its normal.  The *chamber* of ``P`` is the set of ``t`` for which the
dilated polytope keeps the labeled vertex-facet incidences of ``P^(b)``.

Facet and row indices are 0-based throughout the Python API.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Sequence

from .errors import ChamberError, DimensionError, InvalidArgumentError, InvalidPolytopeError, SamplingError
from .exact import Matrix, as_matrix, det, rank

Dilation = tuple[int, ...]


@dataclass(frozen=True)
class Vertex:
    point: tuple[Fraction, ...]
    tight: frozenset[int]


@dataclass(frozen=True)
class Instance:
    """The system ``A x <= t`` for one dilation; may be empty or degenerate."""

    A: Matrix
    t: Dilation


@lru_cache(maxsize=1024)
def _bases(A: Matrix) -> tuple[tuple[tuple[int, ...], int, Matrix], ...]:
    """Nonsingular n-row subsets of ``A`` with determinant and adjugate.

    Depends on ``A`` only, so vertex enumeration for many right-hand sides
    reuses it.
    """
    n = len(A[0])
    out = []
    for rows in combinations(range(len(A)), n):
        sub = [A[i] for i in rows]
        d = det(sub)
        if d == 0:
            continue
        if n == 1:
            adj = ((1,),)
        else:
            # adj[j][i] = (-1)^(i+j) * minor(i, j)
            adj = tuple(
                tuple(
                    (-1) ** (i + j) * det([r[:j] + r[j + 1:] for k, r in enumerate(sub) if k != i])
                    for i in range(n)
                )
                for j in range(n)
            )
        out.append((rows, d, adj))
    return tuple(out)


def vertices_of(A: Matrix, t: Sequence[int]) -> tuple[Vertex, ...]:
    """All vertices of ``{x : A x <= t}`` by exhaustive basis solving."""
    # points are kept as (integer numerators, positive common denominator)
    found: dict[tuple[int, ...], frozenset[int]] = {}
    for rows, d, adj in _bases(A):
        rhs = [t[i] for i in rows]
        num = [sum(c * y for c, y in zip(arow, rhs)) for arow in adj]
        if d < 0:
            num, d = [-x for x in num], -d
        g = math.gcd(d, *num)
        key = tuple(x // g for x in num) + (d // g,)
        if key in found:
            continue
        tight = []
        for i, (row, ti) in enumerate(zip(A, t)):
            lhs = sum(a * x for a, x in zip(row, num))
            if lhs > ti * d:
                break
            if lhs == ti * d:
                tight.append(i)
        else:
            found[key] = frozenset(tight)
    return tuple(Vertex(tuple(Fraction(x, key[-1]) for x in key[:-1]), tight) for key, tight in found.items())


def _recession_is_trivial(A: Matrix) -> bool:
    """True iff ``A d <= 0`` has only the solution ``d = 0``."""
    n = len(A[0])
    if rank(A) < n:
        return False
    if n == 1:
        col = [r[0] for r in A]
        return any(c > 0 for c in col) and any(c < 0 for c in col)
    # a nonzero pointed cone has an extreme ray cut out by n-1 independent rows
    for rows in combinations(range(len(A)), n - 1):
        sub = [A[i] for i in rows]
        ray = [(-1) ** k * det([r[:k] + r[k + 1:] for r in sub]) for k in range(n)]
        if not any(ray):
            continue
        for sgn in (1, -1):
            if all(sgn * sum(a * x for a, x in zip(row, ray)) <= 0 for row in A):
                return False
    return True


def _affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    if not points:
        return -1
    p0 = points[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    return rank(diffs) if diffs else 0


def centroid(vs: Sequence[Vertex]) -> tuple[Fraction, ...]:
    k = len(vs)
    return tuple(sum(col, Fraction(0)) / k for col in zip(*(v.point for v in vs)))


def strictly_feasible(A: Matrix, t: Sequence[int], vs: Sequence[Vertex]) -> bool:
    """Whether some point satisfies every row strictly.

    The vertex centroid lies in the relative interior, so it is strict in
    every row unless some row is an implicit equality.
    """
    if not vs:
        return False
    c = centroid(vs)
    return all(sum(a * x for a, x in zip(row, c)) < ti for row, ti in zip(A, t))


@dataclass(frozen=True)
class HRep:
    """A bounded, full-dimensional, irredundant polytope ``{x : A x <= b}``."""

    A: Matrix
    b: Dilation
    name: str = field(default="", compare=False)

    def __post_init__(self):
        A = as_matrix(self.A)
        b = tuple(int(x) for x in self.b)
        if any(not isinstance(x, int) for r in A for x in r):
            raise InvalidPolytopeError("A must have integer entries")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        if len(b) != len(A):
            raise DimensionError(f"b has length {len(b)} but A has {len(A)} rows")
        if not _recession_is_trivial(A):
            raise InvalidPolytopeError("polytope is unbounded")
        vs = vertices_of(A, b)
        if not strictly_feasible(A, b, vs):
            raise InvalidPolytopeError("polytope is empty or not full-dimensional")
        n = len(A[0])
        seen = {}
        for i in range(len(A)):
            on = [v.point for v in vs if i in v.tight]
            if _affine_rank(on) != n - 1:
                raise InvalidPolytopeError(f"row {i} does not define a facet")
            key = frozenset(on)
            if key in seen:
                raise InvalidPolytopeError(f"rows {seen[key]} and {i} define the same facet")
            seen[key] = i

    @property
    def n(self) -> int:
        return len(self.A[0])

    @property
    def m(self) -> int:
        return len(self.A)

    @cached_property
    def base_vertices(self) -> tuple[Vertex, ...]:
        return vertices_of(self.A, self.b)

    @cached_property
    def base_incidence(self) -> tuple[tuple[int, ...], ...]:
        return incidence(self.base_vertices)


def _check_length(P: HRep, t: Sequence[int]) -> Dilation:
    t = tuple(int(x) for x in t)
    if len(t) != P.m:
        raise DimensionError(f"dilation has length {len(t)}, polytope has {P.m} facets")
    return t


def dilate(P: HRep, t: Sequence[int]) -> Instance:
    return Instance(P.A, _check_length(P, t))


def enumerate_vertices(P: HRep, t: Sequence[int]) -> tuple[Vertex, ...]:
    return vertices_of(P.A, _check_length(P, t))


def incidence(vs: Sequence[Vertex]) -> tuple[tuple[int, ...], ...]:
    """Canonical (sorted) tuple of the vertices' tight-row sets."""
    return tuple(sorted(tuple(sorted(v.tight)) for v in vs))


def is_chamber_point(P: HRep, t: Sequence[int]) -> bool:
    t = _check_length(P, t)
    vs = vertices_of(P.A, t)
    return incidence(vs) == P.base_incidence and strictly_feasible(P.A, t, vs)


def require_chamber(P: HRep, t: Sequence[int]) -> Dilation:
    t = _check_length(P, t)
    if not is_chamber_point(P, t):
        raise ChamberError(f"t = {t} is not in the chamber of {P.name or 'polytope'}")
    return t


@dataclass(frozen=True)
class Facet:
    """Facet ``index`` of ``P``: that row as an equality, all others as inequalities.

    ``boundary_rows`` are the other rows tight somewhere on the facet's
    relative boundary; making them strict yields the relative interior.
    """

    P: HRep
    index: int
    boundary_rows: frozenset[int]

    def vertices(self, t: Sequence[int] | None = None) -> tuple[Vertex, ...]:
        t = self.P.b if t is None else _check_length(self.P, t)
        return tuple(v for v in vertices_of(self.P.A, t) if self.index in v.tight)


def facet(P: HRep, i: int) -> Facet:
    if not 0 <= i < P.m:
        raise InvalidArgumentError(f"facet index {i} out of range 0..{P.m - 1}")
    rows = set()
    for v in P.base_vertices:
        if i in v.tight:
            rows |= v.tight
    rows.discard(i)
    return Facet(P, i, frozenset(rows))


def chamber_samples(
    P: HRep,
    count: int,
    radius: int,
    seed: int,
    spread: int | None = None,
    budget: int = 200,
) -> list[Dilation]:
    """``count`` distinct chamber dilations of the form ``s*b + e``.

    ``s`` ranges over ``1..radius`` and ``e`` over ``[-spread, spread]^m``
    (default spread: ``radius``).  Deterministic in ``seed``.
    """
    if count <= 0:
        return []
    if radius < 1:
        raise InvalidArgumentError("radius must be positive")
    spread = radius if spread is None else spread
    rng = random.Random(seed)
    out: dict[Dilation, None] = {}
    for _ in range(budget * count):
        s = rng.randint(1, radius)
        t = tuple(s * bi + rng.randint(-spread, spread) for bi in P.b)
        if t not in out and is_chamber_point(P, t):
            out[t] = None
            if len(out) == count:
                return list(out)
    raise SamplingError(f"found only {len(out)} of {count} chamber dilations within the search budget")


@dataclass(frozen=True)
class GlueEdge:
    """Piece ``i``'s facet ``facet_i`` lies on the same hyperplane as piece ``j``'s ``facet_j``."""

    i: int
    j: int
    facet_i: int
    facet_j: int


@dataclass(frozen=True)
class GluedPolytope:
    """Tree-glued union of convex pieces sharing (n-1)-dimensional boundaries.

    Dilations are concatenations of the per-piece dilation vectors.
    """

    pieces: tuple[HRep, ...]
    edges: tuple[GlueEdge, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "edges", tuple(self.edges))
        if not self.pieces:
            raise InvalidPolytopeError("a glued polytope needs at least one piece")
        if len({p.n for p in self.pieces}) != 1:
            raise DimensionError("pieces live in different ambient dimensions")
        r = len(self.pieces)
        if len(self.edges) != r - 1:
            raise InvalidPolytopeError("glue edges must form a spanning tree")
        parent = list(range(r))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            if not (0 <= e.i < r and 0 <= e.j < r) or e.i == e.j:
                raise InvalidPolytopeError(f"bad piece indices in {e}")
            ri, rj = find(e.i), find(e.j)
            if ri == rj:
                raise InvalidPolytopeError("glue edges contain a cycle")
            parent[ri] = rj
            if not (0 <= e.facet_i < self.pieces[e.i].m and 0 <= e.facet_j < self.pieces[e.j].m):
                raise InvalidPolytopeError(f"bad facet indices in {e}")
            _antiparallel_ratio(self.pieces[e.i].A[e.facet_i], self.pieces[e.j].A[e.facet_j])
        for k, e in enumerate(self.edges):
            if not self._edge_ok(k, self.b):
                raise InvalidPolytopeError(f"glue edge {e} does not share an (n-1)-dimensional boundary")

    @property
    def n(self) -> int:
        return self.pieces[0].n

    @property
    def m(self) -> int:
        return sum(p.m for p in self.pieces)

    @property
    def A(self) -> Matrix:
        return tuple(row for p in self.pieces for row in p.A)

    @property
    def b(self) -> Dilation:
        return tuple(x for p in self.pieces for x in p.b)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for p in self.pieces:
            out.append(acc)
            acc += p.m
        return tuple(out)

    def split(self, t: Sequence[int]) -> tuple[Dilation, ...]:
        t = tuple(int(x) for x in t)
        if len(t) != self.m:
            raise DimensionError(f"dilation has length {len(t)}, glued polytope has {self.m} facets")
        return tuple(t[o:o + p.m] for o, p in zip(self.offsets, self.pieces))

    def shared_system(self, k: int, t: Sequence[int]) -> tuple[Matrix, Dilation, int]:
        """Intersection of the two pieces of edge ``k``; returns (A, t, equality row)."""
        e = self.edges[k]
        parts = self.split(t)
        A = self.pieces[e.i].A + self.pieces[e.j].A
        return A, parts[e.i] + parts[e.j], e.facet_i

    @cached_property
    def _shared_base_incidence(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        return tuple(incidence(vertices_of(*self.shared_system(k, self.b)[:2])) for k in range(len(self.edges)))

    def _edge_ok(self, k: int, t: Sequence[int]) -> bool:
        e = self.edges[k]
        parts = self.split(t)
        lam = _antiparallel_ratio(self.pieces[e.i].A[e.facet_i], self.pieces[e.j].A[e.facet_j])
        if parts[e.i][e.facet_i] != -lam * parts[e.j][e.facet_j]:
            return False
        A, tt, _ = self.shared_system(k, t)
        vs = vertices_of(A, tt)
        if _affine_rank([v.point for v in vs]) != self.n - 1:
            return False
        return incidence(vs) == self._shared_base_incidence[k]

    @cached_property
    def _dependencies(self) -> dict[int, tuple[int, Fraction]]:
        out: dict[int, tuple[int, Fraction]] = {}
        for e in self.edges:
            Pi, Pj = self.pieces[e.i], self.pieces[e.j]
            lam = _antiparallel_ratio(Pi.A[e.facet_i], Pj.A[e.facet_j])
            out[self.offsets[e.j] + e.facet_j] = (self.offsets[e.i] + e.facet_i, -1 / lam)
            # walls of the two pieces lying on one hyperplane must move together
            for p, q in product(range(Pi.m), range(Pj.m)):
                if q == e.facet_j or self.offsets[e.j] + q in out:
                    continue
                mu = _parallel_ratio(Pi.A[p], Pj.A[q])
                if mu is not None and Pi.b[p] == mu * Pj.b[q]:
                    out[self.offsets[e.j] + q] = (self.offsets[e.i] + p, 1 / mu)
        return out

    def dependent_coordinates(self) -> dict[int, tuple[int, Fraction]]:
        """Coordinates tied by the gluing: index -> (source index, factor).

        Covers the two sides of each glued hyperplane and any pair of walls of
        adjacent pieces that lie on a common hyperplane at the base dilation.
        """
        return dict(self._dependencies)


def _antiparallel_ratio(a: Sequence[int], c: Sequence[int]) -> Fraction:
    """``lam > 0`` with ``a == -lam * c``; raises if the normals are not opposite."""
    k = next((idx for idx, x in enumerate(c) if x != 0), None)
    if k is None:
        raise InvalidPolytopeError("zero facet normal")
    lam = Fraction(-a[k], c[k])
    if lam <= 0 or any(x != -lam * y for x, y in zip(a, c)):
        raise InvalidPolytopeError(f"facet normals {tuple(a)} and {tuple(c)} are not opposite")
    return lam


def _parallel_ratio(a: Sequence[int], c: Sequence[int]) -> Fraction | None:
    """``mu > 0`` with ``a == mu * c``, or ``None``."""
    k = next((idx for idx, x in enumerate(c) if x != 0), None)
    if k is None:
        return None
    mu = Fraction(a[k], c[k])
    if mu <= 0 or any(x != mu * y for x, y in zip(a, c)):
        return None
    return mu


def glued(pieces: Sequence[HRep], glue_edges: Sequence[GlueEdge | tuple], name: str = "") -> GluedPolytope:
    edges = tuple(e if isinstance(e, GlueEdge) else GlueEdge(*e) for e in glue_edges)
    return GluedPolytope(tuple(pieces), edges, name)


def is_glued_chamber_point(G: GluedPolytope, t: Sequence[int]) -> bool:
    parts = G.split(t)
    if not all(is_chamber_point(p, tp) for p, tp in zip(G.pieces, parts)):
        return False
    return all(G._edge_ok(k, tuple(t)) for k in range(len(G.edges)))


def glued_dilate(G: GluedPolytope, t: Sequence[int]) -> tuple[Instance, ...]:
    """Per-piece instances; raises :class:`ChamberError` if the gluing breaks."""
    parts = G.split(t)
    if not is_glued_chamber_point(G, t):
        raise ChamberError(f"t = {tuple(t)} is not in the chamber of the glued polytope")
    return tuple(Instance(p.A, tp) for p, tp in zip(G.pieces, parts))


def glued_chamber_samples(G: GluedPolytope, count: int, radius: int, seed: int, spread: int | None = None,
                          budget: int = 200) -> list[Dilation]:
    """Like :func:`chamber_samples`, with glued coordinates tied to their partners."""
    if count <= 0:
        return []
    spread = radius if spread is None else spread
    deps = G.dependent_coordinates()
    rng = random.Random(seed)
    out: dict[Dilation, None] = {}
    for _ in range(budget * count):
        s = rng.randint(1, radius)
        t = [s * bi + rng.randint(-spread, spread) for bi in G.b]
        ok = True
        for idx, (src, factor) in deps.items():
            v = factor * t[src]
            if v.denominator != 1:
                ok = False
                break
            t[idx] = int(v)
        t = tuple(t)
        if ok and t not in out and is_glued_chamber_point(G, t):
            out[t] = None
            if len(out) == count:
                return list(out)
    raise SamplingError(f"found only {len(out)} of {count} glued chamber dilations within the search budget")
