"""Deterministic corpus of test polytopes."""

from __future__ import annotations

import random
from pathlib import Path

from .errors import EhrhartError, SingularMatrixError
from .exact import minors_lcm, solve_square
from .io import PolytopeDocument, dumps_document
from .polytope import HRep


def _cube_rows(n: int) -> list[list[int]]:
    rows = []
    for k in range(n):
        for s in (1, -1):
            r = [0] * n
            r[k] = s
            rows.append(r)
    return rows


FIXED: list[tuple[str, list[list[int]], list[int]]] = [
    ("interval", [[1], [-1]], [1, 1]),
    ("interval_skew", [[2], [-1]], [3, 1]),
    ("square", _cube_rows(2), [1, 1, 1, 1]),
    ("rectangle", _cube_rows(2), [2, 0, 1, 1]),
    ("triangle", [[-1, 0], [0, -1], [1, 1]], [0, 0, 1]),
    ("halfslope", [[-1, 0], [0, -1], [1, 2]], [0, 0, 1]),
    ("diamond", [[1, 1], [1, -1], [-1, 1], [-1, -1]], [1, 1, 1, 1]),
    ("hexagon", [[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]], [1, 1, 1, 1, 1, 1]),
    ("trapezoid", [[0, -1], [0, 1], [-1, -1], [1, -1]], [0, 1, 0, 2]),
    ("cube", _cube_rows(3), [1] * 6),
    ("box3", _cube_rows(3), [2, 0, 1, 0, 1, 0]),
    ("simplex3", [[-1, 0, 0], [0, -1, 0], [0, 0, -1], [1, 1, 1]], [0, 0, 0, 1]),
    ("prism", [[-1, 0, 0], [0, -1, 0], [1, 1, 0], [0, 0, 1], [0, 0, -1]], [0, 0, 1, 1, 0]),
]


def lshape_document() -> PolytopeDocument:
    p1 = {"A": tuple(map(tuple, _cube_rows(2))), "b": (2, 0, 1, 0)}
    p2 = {"A": tuple(map(tuple, _cube_rows(2))), "b": (1, 0, 2, -1)}
    return PolytopeDocument(
        "lshape",
        p1["A"] + p2["A"],
        p1["b"] + p2["b"],
        {"pieces": [p1, p2], "edges": [{"i": 0, "j": 1, "facet_i": 3, "facet_j": 4}]},
    )


def random_simplex(rng: random.Random, n: int, bound: int, max_period: int) -> tuple[list[list[int]], list[int]]:
    """Random rational simplex containing the origin, with small minors."""
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n + 1)]
        try:
            lam = solve_square([list(c) for c in zip(*rows[:n])], [-x for x in rows[n]])
        except SingularMatrixError:
            continue
        if any(x <= 0 for x in lam):
            continue
        b = [rng.randint(1, bound) for _ in range(n + 1)]
        try:
            HRep(rows, b)
        except EhrhartError:
            continue
        if minors_lcm(rows) <= max_period:
            return rows, b


def generate_corpus(seed: int = 0, max_dim: int = 3, max_facets: int = 8, coef_bound: int = 2) -> list[PolytopeDocument]:
    rng = random.Random(seed)
    docs = []
    for name, A, b in FIXED:
        if len(A[0]) <= max_dim and len(A) <= max_facets:
            docs.append(PolytopeDocument(name, tuple(map(tuple, A)), tuple(b)))
    if max_dim >= 2 and max_facets >= 4:
        docs.append(lshape_document())
    for n, count, max_period in ((2, 5, 3), (3, 2, 1)):
        if n > max_dim or n + 1 > max_facets:
            continue
        for k in range(count):
            A, b = random_simplex(rng, n, coef_bound, max_period)
            docs.append(PolytopeDocument(f"simplex{n}_r{k}", tuple(map(tuple, A)), tuple(b)))
    return docs


def write_corpus(out: str | Path, seed: int = 0, max_dim: int = 3, max_facets: int = 8, coef_bound: int = 2) -> list[Path]:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for doc in generate_corpus(seed, max_dim, max_facets, coef_bound):
        p = out / f"{doc.name}.json"
        p.write_text(dumps_document(doc))
        paths.append(p)
    return paths
