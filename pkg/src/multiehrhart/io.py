"""JSON polytope documents and quasipolynomial serialization.

Polytope document keys: ``name``, ``A``, ``b``, optional ``glue`` with
``pieces`` (each ``{"A", "b"}``) and ``edges`` (each ``{"i", "j", "facet_i",
"facet_j"}``), optional ``T``.  Piece indices are 0-based; facet labels in
``facet_i``, ``facet_j`` and ``T`` are 1-based row numbers.  For glued
documents ``A`` and ``b`` hold the stacked rows of all pieces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import EhrhartError, ParseError
from .polytope import GlueEdge, GluedPolytope, HRep
from .quasipoly import FitReport, MultiQuasiPolynomial


@dataclass(frozen=True)
class PolytopeDocument:
    name: str
    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    glue: dict | None = None
    T: tuple[int, ...] | None = None

    def build(self) -> HRep | GluedPolytope:
        """Construct the polytope; construction failures become :class:`ParseError`."""
        try:
            if self.glue is None:
                return HRep(self.A, self.b, self.name)
            pieces = [HRep(p["A"], p["b"], f"{self.name}[{k}]") for k, p in enumerate(self.glue["pieces"])]
            edges = [GlueEdge(e["i"], e["j"], e["facet_i"] - 1, e["facet_j"] - 1) for e in self.glue["edges"]]
            G = GluedPolytope(tuple(pieces), tuple(edges), self.name)
        except EhrhartError as exc:
            raise ParseError(f"{self.name}: {exc}") from exc
        if G.A != self.A or G.b != self.b:
            raise ParseError(f"{self.name}: top-level A/b must stack the glued pieces")
        return G

    @property
    def removed(self) -> tuple[int, ...]:
        """``T`` as 0-based facet indices."""
        return tuple(i - 1 for i in self.T or ())

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "A": [list(r) for r in self.A], "b": list(self.b)}
        if self.glue is not None:
            out["glue"] = {
                "pieces": [{"A": [list(r) for r in p["A"]], "b": list(p["b"])} for p in self.glue["pieces"]],
                "edges": [{k: e[k] for k in ("i", "j", "facet_i", "facet_j")} for e in self.glue["edges"]],
            }
        if self.T is not None:
            out["T"] = list(self.T)
        return out


def _int_matrix(x, what: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(x, list) or not x or not all(isinstance(r, list) for r in x):
        raise ParseError(f"{what} must be a nonempty array of integer rows")
    rows = tuple(_int_vector(r, what) for r in x)
    if len({len(r) for r in rows}) != 1 or not rows[0]:
        raise ParseError(f"{what} rows have inconsistent lengths")
    return rows


def _int_vector(x, what: str) -> tuple[int, ...]:
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise ParseError(f"{what} must be an array of integers")
    return tuple(x)


def document_from_dict(data: Any) -> PolytopeDocument:
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object")
    missing = {"name", "A", "b"} - data.keys()
    if missing:
        raise ParseError(f"missing keys: {sorted(missing)}")
    unknown = data.keys() - {"name", "A", "b", "glue", "T"}
    if unknown:
        raise ParseError(f"unknown keys: {sorted(unknown)}")
    if not isinstance(data["name"], str):
        raise ParseError("name must be a string")
    A = _int_matrix(data["A"], "A")
    b = _int_vector(data["b"], "b")
    if len(b) != len(A):
        raise ParseError(f"b has {len(b)} entries but A has {len(A)} rows")
    glue = None
    if "glue" in data:
        g = data["glue"]
        if not isinstance(g, dict) or set(g) != {"pieces", "edges"}:
            raise ParseError("glue must have exactly the keys 'pieces' and 'edges'")
        pieces = []
        for p in g["pieces"]:
            if not isinstance(p, dict) or set(p) != {"A", "b"}:
                raise ParseError("each glue piece needs exactly 'A' and 'b'")
            pa, pb = _int_matrix(p["A"], "piece A"), _int_vector(p["b"], "piece b")
            if len(pa) != len(pb):
                raise ParseError("piece A and b lengths differ")
            pieces.append({"A": pa, "b": pb})
        edges = []
        for e in g["edges"]:
            if not isinstance(e, dict) or set(e) != {"i", "j", "facet_i", "facet_j"}:
                raise ParseError("each glue edge needs exactly 'i', 'j', 'facet_i', 'facet_j'")
            if not all(isinstance(e[k], int) for k in e):
                raise ParseError("glue edge entries must be integers")
            edges.append(dict(e))
        glue = {"pieces": pieces, "edges": edges}
    T = None
    if "T" in data:
        T = _int_vector(data["T"], "T")
        if any(not 1 <= i <= len(A) for i in T):
            raise ParseError(f"T entries must lie in 1..{len(A)}")
    return PolytopeDocument(data["name"], A, b, glue, T)


def dumps_document(doc: PolytopeDocument) -> str:
    return json.dumps(doc.to_dict(), separators=(",", ":")) + "\n"


def loads_document(text: str) -> PolytopeDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return document_from_dict(data)


def load_document(path: str | Path) -> PolytopeDocument:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads_document(text)


# ---------------------------------------------------------- quasipolynomials

def _frac(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def quasipolynomial_to_dict(Q: MultiQuasiPolynomial) -> dict[str, Any]:
    """Canonical form: period, then residue classes in lexicographic order."""
    return {
        "period": list(Q.period),
        "degree": Q.degree,
        "classes": [
            {"residue": list(r), "terms": [[list(e), _frac(c)] for e, c in sorted(poly.items())]}
            for r, poly in sorted(Q.classes.items())
        ],
    }


def quasipolynomial_from_dict(data: Any) -> MultiQuasiPolynomial:
    try:
        classes = {}
        for cls in data["classes"]:
            classes[tuple(cls["residue"])] = {tuple(e): Fraction(c) for e, c in cls["terms"]}
        return MultiQuasiPolynomial(tuple(data["period"]), int(data["degree"]), classes)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed quasipolynomial: {exc}") from exc


def report_to_dict(r: FitReport) -> dict[str, Any]:
    return {
        "sample_count": r.sample_count,
        "holdout_count": r.holdout_count,
        "classes_covered": r.classes_covered,
        "exact_holdout": r.exact_holdout,
        "period_used": list(r.period_used),
        "monomial_set": r.monomial_set,
    }


def dumps_fit(name: str, dimension: int, Qi: MultiQuasiPolynomial, Qj: MultiQuasiPolynomial,
              reports: dict[str, FitReport] | None = None) -> str:
    doc: dict[str, Any] = {
        "name": name,
        "dimension": dimension,
        "interior": quasipolynomial_to_dict(Qi),
        "closed": quasipolynomial_to_dict(Qj),
    }
    if reports:
        doc["report"] = {k: report_to_dict(v) for k, v in sorted(reports.items())}
    return json.dumps(doc, separators=(",", ":")) + "\n"


def loads_fit(text: str) -> tuple[MultiQuasiPolynomial, MultiQuasiPolynomial, dict]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid fit file: {exc}") from exc
    if not isinstance(data, dict) or not {"interior", "closed"} <= data.keys():
        raise ParseError("fit file needs 'interior' and 'closed'")
    return quasipolynomial_from_dict(data["interior"]), quasipolynomial_from_dict(data["closed"]), data
