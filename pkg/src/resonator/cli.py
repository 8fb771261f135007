"""Command line entry point: ``resonator profile|bound|multinet|singular|check|corpus``.

Matroid specs are read from a file path, from stdin (``-``) or from the
built-in catalog (``@name``). Every command prints one JSON report.
Exit codes: 0 success, 1 regression or failed check, 2 unparsable input,
3 semantic error (field mismatch, violated hypothesis).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import catalog, corpus, specio
from .bounds import DEFAULT_COVER_CAP, compare_bound, bound
from .errors import CoverLimitReached, SemanticError, SpecError
from .fields import FieldSpec
from .matroid import Matroid, Partition
from .multinet import multinet_component, search_multinets, verify_multinet
from .report import RunReport, collect_bounds, digest
from .resonance import (as_point, cohomology_profile, decone_check, duality_torus_check, propagation_check,
                        subspace_in_resonance)
from .singular import singular_rank, truncated_factorization
from .subspace import Subspace

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_SEMANTIC = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_PARSE)


def _read_spec(source: str) -> tuple[dict, str]:
    if source.startswith("@"):
        name = source[1:]
        if name not in catalog.SPECS:
            raise SpecError(f"unknown example {name!r}; known: {', '.join(sorted(catalog.SPECS))}")
        spec = catalog.SPECS[name]
        return spec, specio.emit(spec)
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source) as fh:
                text = fh.read()
        except OSError as exc:
            raise SpecError(f"cannot read {source}: {exc}") from exc
    spec = specio.parse(text)
    return spec, specio.emit(spec)


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc


def _load(args) -> tuple[Matroid, FieldSpec]:
    spec = args.loaded[0]
    fld = _field(args.field)
    tied = specio.spec_field(spec)
    if tied is not None and tied != fld:
        raise SemanticError(f"spec is realized over {tied} but the computation asks for {fld}")
    return specio.build(spec), fld


def _scalars(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise SpecError(f"cannot parse vector {text!r}") from exc


def _vector(text: str, n: int, fld: FieldSpec) -> list:
    raw = _scalars(text)
    if len(raw) != n:
        raise SpecError(f"vector has {len(raw)} entries, the matroid has {n} elements")
    try:
        return fld.vector(raw)
    except ZeroDivisionError as exc:
        raise SemanticError(str(exc)) from exc


def _subspace(text: str, n: int, fld: FieldSpec) -> Subspace:
    rows = [_vector(r, n, fld) for r in text.split(";") if r.strip()]
    return Subspace.span(rows, n, fld)


def _partition(text: str, n: int) -> Partition:
    try:
        part = Partition.parse(text)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc
    if part.n != n:
        raise SpecError(f"partition covers {part.n} elements, the matroid has {n}")
    return part


def _flats(text: str) -> list[tuple[int, ...]]:
    try:
        return [tuple(int(x) for x in block.split(",")) if "," in block else tuple(int(c) for c in block)
                for block in text.split("|") if block]
    except ValueError as exc:
        raise SpecError(f"cannot parse flats {text!r}") from exc


# -- commands ----------------------------------------------------------------------

def cmd_profile(args) -> tuple[dict, int]:
    m, fld = _load(args)
    v = _vector(args.vector, m.n, fld) if args.vector else [0] * m.n
    prof = cohomology_profile(m, fld, v, projective=args.projective)
    res = {"n": m.n, "rank": m.rank(), "vector": [fld.to_json(x) for x in fld.vector(v)], **prof.to_json()}
    return res, EXIT_OK


def cmd_bound(args) -> tuple[dict, int]:
    m, fld = _load(args)
    warnings = []
    try:
        if args.compare:
            cmp = compare_bound(m, fld, args.degree, mode=args.mode, trials=args.trials, seed=args.seed,
                                essential=args.essential, cap=args.cap)
            res = cmp.to_json(fld)
            arr = cmp.arrangement
        else:
            arr = bound(m, args.degree, args.essential, fld, args.cap, strict=args.strict)
            res = arr.to_json()
    except CoverLimitReached as exc:
        raise SemanticError(str(exc)) from exc
    if arr.truncated:
        warnings.append(f"cover enumeration stopped after {args.cap} covers; components may be missing")
        res["status"] = "truncated"
    return {"warnings": warnings, **res}, EXIT_OK


def cmd_multinet(args) -> tuple[dict, int]:
    m, fld = _load(args)
    if args.verify:
        blocks = _partition(args.verify, m.n)
        flats = _flats(args.flats) if args.flats else [f.elements for f in m.irreducible_flats(2, 2)]
        try:
            verdict = verify_multinet(m, blocks, flats)
        except ValueError as exc:
            raise SemanticError(str(exc)) from exc
        res = {"mode": "verify", **verdict.to_json()}
        if verdict.valid:
            comp = multinet_component(blocks, fld)
            res["component"] = {"dim": comp.dim, "basis": comp.to_json()}
        return res, EXIT_OK if verdict.valid else EXIT_FAIL
    found = search_multinets(m, args.kmax, args.dmax)
    return {"mode": "search", "count": len(found), "multinets": [mn.to_json() for mn in found]}, EXIT_OK


def cmd_singular(args) -> tuple[dict, int]:
    m, fld = _load(args)
    w = _subspace(args.subspace, m.n, fld)
    res = {"report": singular_rank(m, fld, w).to_json()}
    if args.q is not None:
        phi = truncated_factorization(m, fld, w, args.q)
        res["factorization"] = {"q": phi.q, "k": phi.k, "injective_degree1": phi.injective_degree1,
                                "matrices": [[[fld.to_json(x) for x in r] for r in mat] for mat in phi.matrices]}
    return res, EXIT_OK


def cmd_check(args) -> tuple[dict, int]:
    m, fld = _load(args)
    res: dict = {}
    ok = True
    if args.subspace:
        w = _subspace(args.subspace, m.n, fld)
        verdict = subspace_in_resonance(m, fld, w, args.degree, args.depth, mode=args.mode,
                                        trials=args.trials, seed=args.seed)
        res["containment"] = verdict.to_json(fld)
        ok = verdict.status != "not_contained"
    if args.vector:
        v = _vector(args.vector, m.n, fld)
        checks = {}
        if as_point(v, fld).in_vbar():
            checks["propagation"] = "pass" if propagation_check(m, fld, v) else "fail"
            checks["decone"] = decone_check(m, fld, v).status
        if all(v):
            checks["duality_torus"] = "pass" if all(
                duality_torus_check(m, fld, v, p) for p in range(m.rank() + 1) if m.n - m.rank() - p >= 0
            ) else "fail"
        res["checks"] = checks
        ok = ok and "fail" not in checks.values()
    if not res:
        raise SpecError("check needs --vector and/or --subspace")
    return res, EXIT_OK if ok else EXIT_FAIL


def cmd_corpus(args) -> tuple[dict, int]:
    if args.suite == "paper-examples":
        overrides = {}
        for item in args.override or []:
            name, _, path = item.partition("=")
            if name not in catalog.SPECS or not path:
                raise SpecError(f"--override expects NAME=PATH with NAME in the catalog, got {item!r}")
            overrides[name] = _read_spec(path)[0]
        res = corpus.run_reference_examples(args.seed, overrides, args.case)
    else:
        res = corpus.run_fuzz(args.seed, args.cases, args.hilbert)
    return res, EXIT_OK if res["ok"] else EXIT_FAIL


# -- plumbing ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="resonator", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, spec=True):
        if spec:
            p.add_argument("spec", help="spec file, '-' for stdin, or @name from the catalog")
            p.add_argument("--field", default="Q", help="Q or F<p> (default Q)")
        p.add_argument("--seed", type=int, default=corpus.DEFAULT_SEED)
        p.add_argument("--timing", action="store_true", help="record wall time in the report")
        p.add_argument("--output", help="write the report here instead of stdout")

    p = sub.add_parser("profile", help="cohomology dimensions at a vector")
    common(p)
    p.add_argument("--vector", help="comma-separated coordinates (default: zero)")
    p.add_argument("--projective", action="store_true")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("bound", help="maximal components of the cover bound")
    common(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--essential", action="store_true")
    p.add_argument("--compare", action="store_true", help="test each component against resonance")
    p.add_argument("--mode", choices=("probabilistic", "symbolic"), default="probabilistic")
    p.add_argument("--trials", type=int, default=8)
    p.add_argument("--cap", type=int, default=DEFAULT_COVER_CAP)
    p.add_argument("--strict", action="store_true", help="fail instead of truncating at the cap")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("multinet", help="verify or search for multinets")
    common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--verify", metavar="L", help="partition, e.g. '1,2,11,12|3,4,9,10|5,6,7,8'")
    group.add_argument("--search", action="store_true")
    p.add_argument("--flats", help="the flats X, '|'-separated (default: all rank-2 irreducible flats)")
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--dmax", type=int)
    p.set_defaults(func=cmd_multinet)

    p = sub.add_parser("singular", help="rank of a subspace and its truncated factorization")
    common(p)
    p.add_argument("--subspace", required=True, help="';'-separated spanning vectors")
    p.add_argument("--q", type=int, help="also factor through the truncation at this rank")
    p.set_defaults(func=cmd_singular)

    p = sub.add_parser("check", help="structural identities at a point, containment of a subspace")
    common(p)
    p.add_argument("--vector")
    p.add_argument("--subspace")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--mode", choices=("probabilistic", "symbolic"), default="probabilistic")
    p.add_argument("--trials", type=int, default=8)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("corpus", help="run a regression suite")
    common(p, spec=False)
    p.add_argument("--suite", choices=tuple(corpus.SUITES), default="paper-examples")
    p.add_argument("--case", action="append", help="run only this case (repeatable)")
    p.add_argument("--override", action="append", metavar="NAME=PATH",
                   help="replace a catalog matroid by the spec at PATH")
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--hilbert", type=int, default=20)
    p.set_defaults(func=cmd_corpus)
    return parser


def _arg_fingerprint(args) -> str:
    skip = {"func", "output", "timing", "spec", "loaded"}
    return json.dumps({k: v for k, v in sorted(vars(args).items()) if k not in skip}, sort_keys=True, default=str)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        args.loaded = _read_spec(args.spec) if getattr(args, "spec", None) else ({}, "")
        canon = args.loaded[1]
        results, code = args.func(args)
    except (SpecError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"resonator: parse error: {exc}\n")
        return EXIT_PARSE
    except (SemanticError, ZeroDivisionError) as exc:
        sys.stderr.write(f"resonator: {type(exc).__name__}: {exc}\n")
        return EXIT_SEMANTIC
    except ValueError as exc:
        sys.stderr.write(f"resonator: {exc}\n")
        return EXIT_SEMANTIC
    field = getattr(args, "field", "Q")
    report = RunReport(
        command=args.command,
        inputs_digest=digest(canon, _arg_fingerprint(args)),
        seed=args.seed,
        field=str(_field(field)),
        results=results,
        warnings=list(results.pop("warnings", []) if isinstance(results, dict) else []),
    )
    report.failure_bounds = collect_bounds(results)
    report.exact = not report.failure_bounds
    if args.timing:
        report.wall_time = time.perf_counter() - start
    text = report.render()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for w in report.warnings:
        sys.stderr.write(f"resonator: warning: {w}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
