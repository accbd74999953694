"""Multivariate quasipolynomials fitted to lattice-point counts.

A :class:`MultiQuasiPolynomial` stores one exact polynomial per residue class
of the argument modulo a period vector.  Fitting interpolates counts sampled
inside the chamber, class by class, and accepts the result only if held-out
samples are reproduced exactly.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

from .counting import count_system, facet_system, shared_counts
from .errors import DependencyError, FitError, InvalidArgumentError, SamplingError
from .exact import minors_lcm, solve_least_free
from .polytope import (
    Dilation,
    GluedPolytope,
    HRep,
    is_chamber_point,
    is_glued_chamber_point,
)

Exponent = tuple[int, ...]
Residue = tuple[int, ...]
Polynomial = dict[Exponent, Fraction]

KINDS = ("closed", "interior")


# ----------------------------------------------------------- polynomial bits

def monomials(d: int, degree: int, variables: Sequence[int] | None = None, box: bool = False) -> list[Exponent]:
    """Exponent tuples over ``variables`` with total degree <= ``degree``.

    ``box=True`` gives the exponent box ``0 <= k_i <= degree`` instead.
    """
    variables = list(range(d)) if variables is None else sorted(variables)
    out = []
    for ks in product(range(degree + 1), repeat=len(variables)):
        if box or sum(ks) <= degree:
            e = [0] * d
            for v, k in zip(variables, ks):
                e[v] = k
            out.append(tuple(e))
    return sorted(out, key=lambda e: (sum(e), tuple(-x for x in e)))


def _poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    out: Polynomial = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _poly_eval(p: Mapping[Exponent, Fraction], t: Sequence[int]) -> Fraction:
    total = Fraction(0)
    for e, c in p.items():
        term = c
        for x, k in zip(t, e):
            if k:
                term *= x**k
        total += term
    return total


def _affine_substitute(p: Mapping[Exponent, Fraction], center: Sequence[int], scale: Sequence[int]) -> Polynomial:
    """Rewrite ``p(u)`` as a polynomial in ``t`` where ``u_i = (t_i - center_i) / scale_i``."""
    d = len(center)
    cache: dict[tuple[int, int], Polynomial] = {}

    def power(i: int, k: int) -> Polynomial:
        if (i, k) not in cache:
            poly: Polynomial = {}
            for j in range(k + 1):
                e = [0] * d
                e[i] = j
                poly[tuple(e)] = Fraction(comb(k, j) * (-center[i]) ** (k - j), scale[i] ** k)
            cache[(i, k)] = poly
        return cache[(i, k)]

    out: Polynomial = {}
    for e, c in p.items():
        term: Polynomial = {(0,) * d: Fraction(c)}
        for i, k in enumerate(e):
            if k:
                term = _poly_mul(term, power(i, k))
        for ee, cc in term.items():
            out[ee] = out.get(ee, 0) + cc
    return {e: c for e, c in out.items() if c}


# ------------------------------------------------------------------- the type

@dataclass(frozen=True)
class MultiQuasiPolynomial:
    """Period vector plus one polynomial (exponent -> coefficient) per residue class."""

    period: tuple[int, ...]
    degree: int
    classes: Mapping[Residue, Mapping[Exponent, Fraction]] = field(hash=False)

    def __post_init__(self):
        period = tuple(int(p) for p in self.period)
        if not period or any(p < 1 for p in period):
            raise InvalidArgumentError(f"invalid period {self.period}")
        classes = {}
        for r, poly in self.classes.items():
            r = tuple(r)
            if len(r) != len(period) or any(not 0 <= x < p for x, p in zip(r, period)):
                raise InvalidArgumentError(f"residue {r} incompatible with period {period}")
            clean = {tuple(e): Fraction(c) for e, c in poly.items() if c}
            if any(len(e) != len(period) for e in clean):
                raise InvalidArgumentError("exponent tuple has the wrong length")
            classes[r] = clean
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "classes", {r: classes[r] for r in sorted(classes)})

    @property
    def d(self) -> int:
        return len(self.period)

    def residue(self, t: Sequence[int]) -> Residue:
        return tuple(x % p for x, p in zip(t, self.period))

    def polynomial(self, t_or_residue: Sequence[int]) -> Mapping[Exponent, Fraction]:
        r = self.residue(t_or_residue)
        try:
            return self.classes[r]
        except KeyError:
            raise DependencyError(f"no polynomial stored for residue class {r}") from None

    def __call__(self, t: Sequence[int]) -> Fraction:
        return evaluate(self, t)

    def _combine(self, other: "MultiQuasiPolynomial", sign: int) -> "MultiQuasiPolynomial":
        if self.d != other.d:
            raise InvalidArgumentError("quasipolynomials in different numbers of variables")
        period = tuple(math.lcm(a, b) for a, b in zip(self.period, other.period))
        out = {}
        for r in product(*(range(p) for p in period)):
            ra, rb = self.residue(r), other.residue(r)
            if ra in self.classes and rb in other.classes:
                poly = dict(self.classes[ra])
                for e, c in other.classes[rb].items():
                    poly[e] = poly.get(e, 0) + sign * c
                out[r] = poly
        return MultiQuasiPolynomial(period, max(self.degree, other.degree), out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return MultiQuasiPolynomial(self.period, self.degree,
                                    {r: {e: -c for e, c in p.items()} for r, p in self.classes.items()})

    def __eq__(self, other):
        if not isinstance(other, MultiQuasiPolynomial):
            return NotImplemented
        return self.period == other.period and self.classes == other.classes

    __hash__ = None


def evaluate(Q: MultiQuasiPolynomial, t: Sequence[int]) -> Fraction:
    """Exact value at any integer point; the class is chosen by nonnegative residues."""
    if len(t) != Q.d:
        raise InvalidArgumentError(f"expected {Q.d} arguments, got {len(t)}")
    return _poly_eval(Q.polynomial(t), t)


def sum_quasipolynomials(qs: Iterable[MultiQuasiPolynomial], d: int) -> MultiQuasiPolynomial:
    total = MultiQuasiPolynomial((1,) * d, 0, {(0,) * d: {}})
    for q in qs:
        total = total + q
    return total


# ------------------------------------------------------------------- fitting

@dataclass(frozen=True)
class FitReport:
    sample_count: int
    holdout_count: int
    classes_covered: int
    exact_holdout: bool
    period_used: tuple[int, ...]
    monomial_set: str = "total"


def holdout_size(total: int) -> int:
    """Held-out samples per class: at least 3 and at least a quarter."""
    return max(3, -(-total // 4))


def samples_needed(n_monomials: int) -> int:
    total = n_monomials
    while total - holdout_size(total) < n_monomials:
        total += 1
    return total


def infer_period(P: HRep | GluedPolytope) -> tuple[int, ...]:
    """Candidate period ``(D, ..., D)`` with ``D`` the lcm of the maximal minors of ``A``."""
    D = minors_lcm(P.A)
    return (D,) * P.m


def free_variables(P: HRep | GluedPolytope) -> list[int]:
    if isinstance(P, GluedPolytope):
        deps = P.dependent_coordinates()
        return [i for i in range(P.m) if i not in deps]
    return list(range(P.m))


def _fit_class(
    rows: list[tuple[Dilation, int]],
    exps: list[Exponent],
    period: Sequence[int],
) -> Polynomial | None:
    train = rows[: len(rows) - holdout_size(len(rows))]
    center = [min(t[i] for t, _ in train) for i in range(len(period))]
    # solve in u = (t - center) / period, where entries stay small
    us = [[(x - c) // p for x, c, p in zip(t, center, period)] for t, _ in train]
    mat = [[math.prod(u[i] ** k for i, k in enumerate(e) if k) for e in exps] for u in us]
    sol = solve_least_free(mat, [y for _, y in train])
    if sol is None:
        return None
    poly = _affine_substitute({e: c for e, c in zip(exps, sol) if c}, center, period)
    if all(_poly_eval(poly, t) == y for t, y in rows):
        return poly
    return None


def fit(
    P: HRep | GluedPolytope,
    kind: str,
    samples: Sequence[tuple[Sequence[int], int]],
    *,
    degree: int | None = None,
    period: Sequence[int] | None = None,
    variables: Sequence[int] | None = None,
) -> tuple[MultiQuasiPolynomial, FitReport]:
    """Interpolate ``samples`` [(t, count), ...] by a quasipolynomial.

    Samples are grouped by residue class; within a class the trailing
    :func:`holdout_size` samples are held out.  Monomials of total degree
    ``<= degree`` are tried first, the exponent box second.
    """
    if kind not in KINDS + ("facet_closed", "facet_relint", "shared_closed", "shared_relint"):
        raise InvalidArgumentError(f"unknown count kind {kind!r}")
    period = tuple(period) if period is not None else infer_period(P)
    if degree is None:
        degree = P.n if kind in KINDS else P.n - 1
    variables = free_variables(P) if variables is None else list(variables)
    d = P.m
    by_class: dict[Residue, list[tuple[Dilation, int]]] = {}
    for t, y in samples:
        t = tuple(int(x) for x in t)
        if len(t) != d:
            raise InvalidArgumentError(f"sample {t} has the wrong length")
        by_class.setdefault(tuple(x % p for x, p in zip(t, period)), []).append((t, int(y)))

    total_exps = monomials(d, degree, variables)
    need = samples_needed(len(total_exps))
    for r, rows in sorted(by_class.items()):
        if len(rows) < need:
            raise SamplingError(f"residue class {r} has {len(rows)} samples, needs {need}")

    classes: dict[Residue, Polynomial] = {}
    used = "total"
    for r, rows in sorted(by_class.items()):
        poly = _fit_class(rows, total_exps, period)
        if poly is None:
            poly = _fit_class(rows, monomials(d, degree, variables, box=True), period)
            used = "box"
        if poly is None:
            raise FitError(f"holdout samples not reproduced in residue class {r} (period {period}, degree {degree})")
        classes[r] = poly
    Q = MultiQuasiPolynomial(period, degree, classes)
    n_hold = sum(holdout_size(len(rows)) for rows in by_class.values())
    report = FitReport(len(samples), n_hold, len(classes), True, period, used)
    return Q, report


# ------------------------------------------------------------------ sampling

def _principal_lattice(k: int, degree: int) -> list[tuple[int, ...]]:
    """Nonnegative integer points with coordinate sum <= degree (unisolvent for that degree)."""
    return sorted((u for u in product(range(degree + 1), repeat=k) if sum(u) <= degree),
                  key=lambda u: (sum(u), u))


def _in_chamber(P: HRep | GluedPolytope, t: Dilation) -> bool:
    if isinstance(P, GluedPolytope):
        return is_glued_chamber_point(P, t)
    return is_chamber_point(P, t)


def _complete(P: HRep | GluedPolytope, t: list[int]) -> Dilation | None:
    if isinstance(P, GluedPolytope):
        for idx, (src, factor) in P.dependent_coordinates().items():
            v = factor * t[src]
            if v.denominator != 1:
                return None
            t[idx] = int(v)
    return tuple(t)


def fit_dilations(
    P: HRep | GluedPolytope,
    seed: int = 0,
    *,
    degree: int | None = None,
    period: Sequence[int] | None = None,
    radius: int = 64,
    per_class: int | None = None,
) -> list[Dilation]:
    """Chamber dilations covering every residue class with enough samples to fit.

    Training points per class form a scaled simplex lattice around ``s * b``
    (guaranteed unisolvent), followed by random held-out points.  The
    smallest scale ``s <= radius`` that keeps every point in the chamber is
    used.  ``per_class`` caps the samples allowed per class.
    """
    period = tuple(period) if period is not None else infer_period(P)
    degree = P.n if degree is None else degree
    free = free_variables(P)
    train_u = _principal_lattice(len(free), degree)
    need = samples_needed(len(train_u))
    n_hold = need - len(train_u)
    residues = list(product(*(range(period[i]) for i in free)))
    if per_class is not None and per_class < need:
        raise SamplingError(
            f"residue class {tuple(residues[0])} needs {need} samples, budget allows {per_class}")
    hold_range = degree + 2
    for s in range(1, radius + 1):
        rng = random.Random(seed * 1_000_003 + s)
        base = [s * x for x in P.b]
        out: list[Dilation] = []
        ok = True
        for r in residues:
            center = list(base)
            for i, ri in zip(free, r):
                center[i] += (ri - base[i]) % period[i]
            us = list(train_u)
            seen = set(us)
            while len(us) < need:
                u = tuple(rng.randint(0, hold_range) for _ in free)
                if u not in seen:
                    seen.add(u)
                    us.append(u)
            for u in us:
                t = list(center)
                for i, x in zip(free, u):
                    t[i] += period[i] * x
                tt = _complete(P, t)
                if tt is None or not _in_chamber(P, tt):
                    ok = False
                    break
                out.append(tt)
            if not ok:
                break
            if len(us) - n_hold < len(train_u) or len(set(out)) != len(out):
                raise SamplingError(f"degenerate sample placement in residue class {r}")
        if ok:
            return out
    raise SamplingError(f"no scale up to radius {radius} keeps all fitting samples in the chamber")


# ------------------------------------------------------------ count functions

def counter(P: HRep | GluedPolytope, kind: str, index: int | None = None,
            method: str = "recursive") -> Callable[[Sequence[int]], int]:
    """Raw count function ``t -> int`` (no chamber check; samples are pre-validated).

    Kinds: ``closed``, ``interior``, ``facet_closed``/``facet_relint`` (needs
    ``index``) and, for glued polytopes, ``shared_closed``/``shared_relint``.
    """
    if isinstance(P, GluedPolytope):
        if kind in KINDS:
            def g(t):
                parts = P.split(t)
                strict = kind == "interior"
                total = sum(count_system(p.A, tp, strict, method) for p, tp in zip(P.pieces, parts))
                for k in range(len(P.edges)):
                    c, ri = shared_counts(P, k, t, method)
                    total += ri if strict else -c
                return total
            return g
        if kind in ("shared_closed", "shared_relint"):
            return lambda t: shared_counts(P, index, t, method)[kind == "shared_relint"]
        raise InvalidArgumentError(f"kind {kind!r} not supported for glued polytopes")
    if kind in KINDS:
        return lambda t: count_system(P.A, t, kind == "interior", method)
    if kind in ("facet_closed", "facet_relint"):
        if index is None:
            raise InvalidArgumentError("facet kinds need a facet index")
        relint = kind == "facet_relint"
        return lambda t: count_system(*facet_system(P, index, tuple(t), relint), method=method)
    raise InvalidArgumentError(f"unknown count kind {kind!r}")


def fit_kind(
    P: HRep | GluedPolytope,
    kind: str,
    *,
    index: int | None = None,
    seed: int = 0,
    period: Sequence[int] | None = None,
    radius: int = 64,
    per_class: int | None = None,
    dilations: Sequence[Dilation] | None = None,
    method: str = "recursive",
) -> tuple[MultiQuasiPolynomial, FitReport]:
    degree = P.n if kind in KINDS else P.n - 1
    if dilations is None:
        dilations = fit_dilations(P, seed, degree=degree, period=period, radius=radius, per_class=per_class)
    f = counter(P, kind, index, method)
    return fit(P, kind, [(t, f(t)) for t in dilations], degree=degree, period=period)


@dataclass(frozen=True)
class FitPair:
    interior: MultiQuasiPolynomial
    closed: MultiQuasiPolynomial
    interior_report: FitReport
    closed_report: FitReport


def fit_pair(P: HRep | GluedPolytope, seed: int = 0, **kw) -> FitPair:
    """Fit interior and closed counts on a shared set of sample dilations."""
    period = kw.pop("period", None)
    dil = fit_dilations(P, seed, period=period, radius=kw.pop("radius", 64), per_class=kw.pop("per_class", None))
    Qi, ri = fit_kind(P, "interior", dilations=dil, period=period, **kw)
    Qj, rj = fit_kind(P, "closed", dilations=dil, period=period, **kw)
    return FitPair(Qi, Qj, ri, rj)


def fit_facets(P: HRep, T: Iterable[int], seed: int = 0, **kw) -> dict[int, tuple[MultiQuasiPolynomial, MultiQuasiPolynomial]]:
    """(relative interior, closed) quasipolynomials for each facet in ``T``."""
    out = {}
    period = kw.pop("period", None)
    radius = kw.pop("radius", 64)
    dil = fit_dilations(P, seed, degree=P.n - 1, period=period, radius=radius)
    for i in sorted(set(T)):
        Qi, _ = fit_kind(P, "facet_relint", index=i, dilations=dil, period=period, **kw)
        Qj, _ = fit_kind(P, "facet_closed", index=i, dilations=dil, period=period, **kw)
        out[i] = (Qi, Qj)
    return out


# --------------------------------------------------------------- reciprocity

def reciprocity_violations(Qi: MultiQuasiPolynomial, Qj: MultiQuasiPolynomial, n: int,
                           testpoints: Iterable[Sequence[int]]) -> list[tuple[Dilation, Fraction, Fraction]]:
    """Points where ``Qi(-t) != (-1)^n Qj(t)``, with both sides."""
    bad = []
    sign = -1 if n % 2 else 1
    for t in testpoints:
        t = tuple(t)
        lhs = evaluate(Qi, tuple(-x for x in t))
        rhs = sign * evaluate(Qj, t)
        if lhs != rhs:
            bad.append((t, lhs, rhs))
    return bad


def check_reciprocity(Qi, Qj, n: int, testpoints) -> bool:
    return not reciprocity_violations(Qi, Qj, n, testpoints)


def removed_quasipolynomials(fits: Mapping, T: Iterable[int]) -> tuple[MultiQuasiPolynomial, MultiQuasiPolynomial]:
    """``(Q_{i,T}, Q_{j,T}) = (Q_i + sum Q_iF, Q_j - sum Q_jF)`` over facets in ``T``."""
    Qi, Qj = fits["interior"], fits["closed"]
    facets = fits.get("facets", {})
    for i in sorted(set(T)):
        if i not in facets:
            raise DependencyError(f"no facet fit for facet {i}")
        QiF, QjF = facets[i]
        Qi = Qi + QiF
        Qj = Qj - QjF
    return Qi, Qj


def check_removed_reciprocity(P: HRep, T: Iterable[int], fits: Mapping, testpoints) -> bool:
    QiT, QjT = removed_quasipolynomials(fits, T)
    return check_reciprocity(QiT, QjT, P.n, testpoints)


# ------------------------------------------------------------ specialization

def specialize(Q: MultiQuasiPolynomial, b: Sequence[int]) -> MultiQuasiPolynomial:
    """Single-variable quasipolynomial ``s -> Q(s * b)``; its period is ``lcm(period)``."""
    if len(b) != Q.d:
        raise InvalidArgumentError("direction has the wrong length")
    p = math.lcm(*Q.period)
    out = {}
    for r in range(p):
        res = Q.residue([r * x for x in b])
        if res not in Q.classes:
            continue
        poly: dict[Exponent, Fraction] = {}
        for e, c in Q.classes[res].items():
            k = sum(e)
            poly[(k,)] = poly.get((k,), 0) + c * math.prod(x**ki for x, ki in zip(b, e))
        out[(r,)] = poly
    return MultiQuasiPolynomial((p,), Q.degree, out)


def refines(fine: MultiQuasiPolynomial, coarse: MultiQuasiPolynomial) -> bool:
    """True iff every class of ``fine`` carries exactly the polynomial of its coarser class."""
    for r, poly in fine.classes.items():
        if coarse.residue(r) not in coarse.classes or coarse.polynomial(r) != poly:
            return False
    return True
