"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 chamber violation, 4 fit or
sampling failure, 5 violated identity.  Facet labels on the command line
(``--T``) are 1-based row numbers, as in polytope documents.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .counting import count
from .errors import ChamberError, EhrhartError, FitError, ParseError, SamplingError
from .io import dumps_fit, load_document, loads_fit
from .polytope import (
    GluedPolytope,
    chamber_samples,
    enumerate_vertices,
    glued_chamber_samples,
    is_chamber_point,
    is_glued_chamber_point,
)
from .quasipoly import (
    fit_facets,
    fit_pair,
    reciprocity_violations,
    removed_quasipolynomials,
    specialize,
)

EXIT_OK, EXIT_PARSE, EXIT_CHAMBER, EXIT_FIT, EXIT_VIOLATION = 0, 2, 3, 4, 5

CLASSICAL_RANGE = range(1, 21)


def _csv_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="multiehrhart", description="Lattice points of vector-dilated polytopes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_file(sp):
        sp.add_argument("file", help="polytope document (JSON)")

    def add_t(sp):
        sp.add_argument("--t", type=_csv_ints, default=None, help="dilation vector, e.g. --t=2,0,1,1 (default: b)")

    def add_sampling(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--radius", type=int, default=64, help="largest scale searched for fitting samples")
        sp.add_argument("--samples", type=int, default=None, help="sample budget per residue class")

    sp = sub.add_parser("count", help="count lattice points")
    add_file(sp)
    add_t(sp)
    sp.add_argument("--method", choices=("brute", "recursive"), default="recursive")

    sp = sub.add_parser("vertices", help="list vertices and tight rows")
    add_file(sp)
    add_t(sp)

    sp = sub.add_parser("chamber", help="test chamber membership")
    add_file(sp)
    add_t(sp)

    sp = sub.add_parser("fit", help="fit interior and closed quasipolynomials")
    add_file(sp)
    add_sampling(sp)
    sp.add_argument("--out", type=Path, default=None)

    sp = sub.add_parser("verify", help="check a reciprocity law")
    add_file(sp)
    add_sampling(sp)
    sp.add_argument("--theorem", choices=("recip", "removed", "classical"), default="recip")
    sp.add_argument("--T", type=_csv_ints, default=None, help="removed facets (1-based)")
    sp.add_argument("--fit", type=Path, default=None, help="fit file from 'fit --out'")
    sp.add_argument("--points", type=int, default=100, help="number of chamber test points")

    sp = sub.add_parser("suite", help="write the deterministic test corpus")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-dim", type=int, default=3)
    sp.add_argument("--max-facets", type=int, default=8)
    sp.add_argument("--coef-bound", type=int, default=2)
    sp.add_argument("--out", type=Path, required=True)
    return p


def _dilation(P, t):
    if t is None:
        return P.b
    if len(t) != P.m:
        raise ParseError(f"--t has {len(t)} entries, expected {P.m}")
    return t


def _testpoints(P, n_points: int, seed: int):
    sampler = glued_chamber_samples if isinstance(P, GluedPolytope) else chamber_samples
    return sampler(P, n_points, 8, seed + 1, spread=3)


def _fits(P, args):
    if args.fit is not None:
        try:
            Qi, Qj, _ = loads_fit(args.fit.read_text())
        except OSError as exc:
            raise ParseError(f"cannot read {args.fit}: {exc}") from exc
        if Qi.d != P.m or Qj.d != P.m:
            raise ParseError(f"fit file has {Qi.d} variables, polytope has {P.m} facets")
        return Qi, Qj
    fp = fit_pair(P, args.seed, radius=args.radius, per_class=args.samples)
    return fp.interior, fp.closed


def _report_violations(bad, out) -> int:
    if not bad:
        return EXIT_OK
    for t, lhs, rhs in bad:
        print(f"violation t={','.join(map(str, t))} lhs={lhs} rhs={rhs}", file=out)
    return EXIT_VIOLATION


def cmd_count(args, out) -> int:
    P = load_document(args.file).build()
    t = _dilation(P, args.t)
    r = count(P, t, args.method)
    print(f"closed={r.closed} interior={r.interior} method={r.method}", file=out)
    return EXIT_OK


def cmd_vertices(args, out) -> int:
    P = load_document(args.file).build()
    t = _dilation(P, args.t)
    pieces = [(p, tp) for p, tp in zip(P.pieces, P.split(t))] if isinstance(P, GluedPolytope) else [(P, t)]
    for k, (p, tp) in enumerate(pieces):
        for v in sorted(enumerate_vertices(p, tp), key=lambda v: v.point):
            tight = ",".join(str(i + 1) for i in sorted(v.tight))
            prefix = f"piece={k} " if isinstance(P, GluedPolytope) else ""
            print(f"{prefix}vertex=({', '.join(map(str, v.point))}) tight={tight}", file=out)
    return EXIT_OK


def cmd_chamber(args, out) -> int:
    P = load_document(args.file).build()
    t = _dilation(P, args.t)
    ok = is_glued_chamber_point(P, t) if isinstance(P, GluedPolytope) else is_chamber_point(P, t)
    print(f"chamber={'true' if ok else 'false'}", file=out)
    return EXIT_OK if ok else EXIT_CHAMBER


def cmd_fit(args, out) -> int:
    doc = load_document(args.file)
    P = doc.build()
    fp = fit_pair(P, args.seed, radius=args.radius, per_class=args.samples)
    text = dumps_fit(doc.name, P.n, fp.interior, fp.closed,
                     {"interior": fp.interior_report, "closed": fp.closed_report})
    if args.out is None:
        out.write(text)
    else:
        args.out.write_text(text)
        print(f"wrote {args.out} period={','.join(map(str, fp.closed.period))} "
              f"classes={len(fp.closed.classes)}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    doc = load_document(args.file)
    P = doc.build()
    Qi, Qj = _fits(P, args)
    n = P.n
    if args.theorem == "recip":
        pts = _testpoints(P, args.points, args.seed)
        bad = reciprocity_violations(Qi, Qj, n, pts)
    elif args.theorem == "removed":
        if isinstance(P, GluedPolytope):
            raise ParseError("removed-facet verification needs a convex polytope")
        T = tuple(i - 1 for i in args.T) if args.T is not None else doc.removed
        if any(not 0 <= i < P.m for i in T):
            raise ParseError(f"--T entries must lie in 1..{P.m}")
        facets = fit_facets(P, T, args.seed, radius=args.radius)
        QiT, QjT = removed_quasipolynomials({"interior": Qi, "closed": Qj, "facets": facets}, T)
        pts = _testpoints(P, args.points, args.seed)
        bad = reciprocity_violations(QiT, QjT, n, pts)
    else:
        Si, Sj = specialize(Qi, P.b), specialize(Qj, P.b)
        bad = reciprocity_violations(Si, Sj, n, [(s,) for s in CLASSICAL_RANGE])
        for s in CLASSICAL_RANGE:
            t = tuple(s * x for x in P.b)
            r = count(P, t, "brute")
            if Sj((s,)) != r.closed or Si((s,)) != r.interior:
                bad.append(((s,), f"fit={Sj((s,))}/{Si((s,))}", f"count={r.closed}/{r.interior}"))
    code = _report_violations(bad, out)
    if code == EXIT_OK:
        print(f"PASS theorem={args.theorem} name={doc.name}", file=out)
    else:
        first = ",".join(map(str, bad[0][0]))
        print(f"FAIL theorem={args.theorem} name={doc.name} violations={len(bad)} first={first}", file=out)
    return code


def cmd_suite(args, out) -> int:
    from .suite import write_corpus

    paths = write_corpus(args.out, args.seed, args.max_dim, args.max_facets, args.coef_bound)
    print(f"wrote {len(paths)} documents to {args.out}", file=out)
    return EXIT_OK


COMMANDS = {
    "count": cmd_count,
    "vertices": cmd_vertices,
    "chamber": cmd_chamber,
    "fit": cmd_fit,
    "verify": cmd_verify,
    "suite": cmd_suite,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ChamberError as exc:
        print(f"not in chamber: {exc}", file=sys.stderr)
        return EXIT_CHAMBER
    except (SamplingError, FitError) as exc:
        print(f"fit failure: {exc}", file=sys.stderr)
        return EXIT_FIT
    except EhrhartError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
