"""Command-line front end: ``vknot <command> ...``.

Exit codes: 0 success or valid, 1 obstructed, invalid or a fuzz failure,
2 usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .cobordism import (
    CertificateError,
    check_certificate,
    ht_endpoints_check,
    parse_certificate,
    random_concordance_certificate,
)
from .families import FamilySpec, expected_family_ht, family_distinguisher, family_generator, parse_pairs
from .gauss import GaussCodeError, GaussDiagram, canonical_form, parse_gauss_code, random_diagram, serialize
from .invariants import (
    ht_polynomial,
    index_table,
    is_positive,
    seifert_circle_count,
    slice_genus_positive,
    writhe,
)
from .obstructions import (
    KINDS as OBSTRUCTION_KINDS,
    obstruct_ribbon_disc,
    obstruct_satellite_injectivity,
    obstruct_sf_concordance,
    obstruct_slice_disc,
    obstruct_split,
)
from .rewriting import DEFAULT_MAX_N, random_walk
from .satellites import PatternError, cable, expected_satellite_ht, parse_pattern, random_pattern, winding


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    code: str
    notes: str


def load_catalog(path: str | os.PathLike | None = None) -> dict[str, CatalogEntry]:
    """Read ``name<TAB>code<TAB>notes`` lines; ``VKNOT_CATALOG`` overrides the shipped file."""
    path = path or os.environ.get("VKNOT_CATALOG")
    if path:
        text = Path(path).read_text()
    else:
        text = resources.files("vknot").joinpath("data/catalog.tsv").read_text()
    entries: dict[str, CatalogEntry] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 2:
            raise ValueError(f"catalog line {lineno}: expected name<TAB>code<TAB>notes")
        name, code = parts[0].strip(), parts[1].strip()
        notes = parts[2].strip() if len(parts) > 2 else ""
        if name in entries:
            raise ValueError(f"catalog line {lineno}: duplicate name {name!r}")
        parse_gauss_code(code)
        entries[name] = CatalogEntry(name, code, notes)
    return entries


def resolve_code(arg: str, catalog: dict[str, CatalogEntry]) -> str:
    if arg.startswith("@"):
        return Path(arg[1:]).read_text()
    if arg in catalog:
        return catalog[arg].code
    return arg


def read_diagram(arg: str, catalog) -> GaussDiagram:
    return parse_gauss_code(resolve_code(arg, catalog))


def emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def invariant_data(d: GaussDiagram) -> dict:
    data = {
        "code": serialize(d),
        "n": d.n,
        "signs": {str(c): s for c, s in sorted(d.signs.items())},
        "writhe": writhe(d),
        "index": {str(c): i for c, i in sorted(index_table(d).items())},
        "ht": ht_polynomial(d).to_json(),
        "ht_text": str(ht_polynomial(d)),
        "seifert_circles": seifert_circle_count(d),
        "positive": is_positive(d),
        "slice_genus": slice_genus_positive(d) if is_positive(d) else None,
    }
    return data


def cmd_parse(args, catalog) -> int:
    d = read_diagram(args.code, catalog)
    canon = canonical_form(d)
    data = {"code": serialize(d), "canonical": serialize(canon), "n": d.n}
    emit(args, data, f"n = {d.n}\ncode: {serialize(d) or '(empty)'}\ncanonical: {serialize(canon) or '(empty)'}")
    return 0


def cmd_invariants(args, catalog) -> int:
    d = read_diagram(args.code, catalog)
    data = invariant_data(d)
    lines = [f"n = {d.n}", f"writhe = {data['writhe']}"]
    if d.n:
        lines.append("chord  sign  index")
        for c in d.chord_ids():
            lines.append(f"{c:>5}  {'+' if d.signs[c] > 0 else '-':>4}  {data['index'][str(c)]:>5}")
    lines.append(f"w(t) = {data['ht_text']}")
    lines.append(f"Seifert circles r = {data['seifert_circles']}")
    lines.append(f"positive: {'yes' if data['positive'] else 'no'}")
    if data["slice_genus"] is not None:
        lines.append(f"slice genus = {data['slice_genus']}")
    emit(args, data, "\n".join(lines))
    return 0


def cmd_cable(args, catalog) -> int:
    d = read_diagram(args.code, catalog)
    pat = parse_pattern(args.pattern)
    sat = cable(d, pat)
    w = ht_polynomial(sat)
    expected = expected_satellite_ht(d, pat)
    data = {
        "pattern": pat.to_text(),
        "r": winding(pat),
        "code": serialize(sat),
        "n": sat.n,
        "ht": w.to_json(),
        "expected_ht": expected.to_json(),
        "formula_holds": w == expected,
    }
    text = "\n".join([
        serialize(sat),
        f"n = {sat.n}, r = {winding(pat)}",
        f"w(t) = {w}",
        f"r^2 w(t^r) = {expected} ({'agrees' if w == expected else 'DISAGREES'})",
    ])
    emit(args, data, text)
    if w != expected:
        print("satellite formula failed: this is a bug in the cable construction", file=sys.stderr)
        return 1
    return 0


def cmd_family(args, catalog) -> int:
    if args.g is None or args.pairs is None:
        raise UsageError("family needs --g and --pairs")
    spec = FamilySpec(args.g, parse_pairs(args.pairs), args.k)
    if args.distinguish:
        report = family_distinguisher(spec, args.kmax)
        emit(args, report.to_json(), report.to_text())
        return 0 if report.distinct else 1
    d = family_generator(spec)
    data = invariant_data(d)
    data["expected_ht"] = expected_family_ht(spec).to_json()
    emit(args, data, f"{serialize(d)}\nn = {d.n}\nw(t) = {data['ht_text']}\nslice genus = {data['slice_genus']}")
    return 0


def cmd_certify(args, catalog) -> int:
    path = args.file[1:] if args.file.startswith("@") else args.file
    cert = parse_certificate(Path(path).read_text())
    report = check_certificate(cert)
    data = report.to_json()
    data["claim"] = cert.claimed_kind
    lines = [
        f"claim: {cert.claimed_kind}",
        f"valid: {'yes' if report.valid else 'no'}",
        f"births {report.b}, saddles {report.s}, deaths {report.d}, euler {report.euler}",
    ]
    if report.genus is not None:
        lines.append(f"genus {report.genus}")
    if not report.valid:
        where = "end" if report.failure_step is None else f"step {report.failure_step + 1}"
        lines.append(f"failed at {where}: {report.reason}")
    elif cert.claimed_kind != "cobordism":
        ok = ht_endpoints_check(cert)
        data["ht_endpoints_agree"] = ok
        lines.append(f"HT polynomials of the ends agree: {'yes' if ok else 'no'}")
    emit(args, data, "\n".join(lines))
    return 0 if report.valid else 1


def cmd_obstruct(args, catalog) -> int:
    codes = [read_diagram(c, catalog) for c in args.codes]
    two = args.kind in ("sf", "satellite")
    if len(codes) != (2 if two else 1):
        raise UsageError(f"--kind {args.kind} takes {'two diagrams' if two else 'one diagram'}")
    if args.kind == "sf":
        rep = obstruct_sf_concordance(*codes)
    elif args.kind == "slice":
        rep = obstruct_slice_disc(codes[0])
    elif args.kind == "ribbon":
        rep = obstruct_ribbon_disc(codes[0])
    elif args.kind == "split":
        rep = obstruct_split(codes[0])
    else:
        if args.r is None:
            raise UsageError("--kind satellite needs --r")
        if args.r < 0:
            raise UsageError("--r must be non-negative")
        rep = obstruct_satellite_injectivity(codes[0], codes[1], args.r)
    emit(args, rep.to_json(), str(rep))
    return 1 if rep.obstructed else 0


def _fuzz_moves(seed: int, args) -> str | None:
    rng = random.Random(seed)
    d = random_diagram(rng.randint(0, args.n), rng)
    w = ht_polynomial(d)
    end = random_walk(d, args.steps, seed, args.max_n)
    if ht_polynomial(end) != w:
        return f"seed {seed}: w changed from {w} to {ht_polynomial(end)} on {serialize(d)}"
    return None


def _fuzz_satellite(seed: int, args) -> str | None:
    rng = random.Random(seed)
    d = random_diagram(rng.randint(0, args.n), rng)
    pat = random_pattern(rng)
    if ht_polynomial(cable(d, pat)) != expected_satellite_ht(d, pat):
        return f"seed {seed}: satellite formula fails for {serialize(d)} with {pat}"
    return None


def _fuzz_certificates(seed: int, args) -> str | None:
    cert = random_concordance_certificate(seed, ribbon=seed % 2 == 1)
    report = check_certificate(cert)
    if not report.valid:
        return f"seed {seed}: generated certificate rejected: {report.reason}"
    if not ht_endpoints_check(cert):
        return f"seed {seed}: HT polynomials of the ends differ"
    return None


FUZZERS = {"moves": _fuzz_moves, "satellite": _fuzz_satellite, "certificates": _fuzz_certificates}


def cmd_fuzz(args, catalog) -> int:
    if args.seed is None:
        raise UsageError("fuzz needs --seed")
    fuzzer = FUZZERS[args.what]
    failures = []
    for k in range(args.count):
        msg = fuzzer(args.seed + k, args)
        if msg:
            failures.append(msg)
    data = {"what": args.what, "seed": args.seed, "count": args.count, "failures": failures}
    text = "\n".join(failures + [f"{args.what}: {args.count - len(failures)}/{args.count} passed"])
    emit(args, data, text)
    return 1 if failures else 0


def _global_flags() -> argparse.ArgumentParser:
    # defaults are suppressed so a flag given before the command is not reset after it
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed")
    g.add_argument("--max-n", type=int, default=argparse.SUPPRESS, help="chord cap for random moves")
    return g


def build_parser() -> argparse.ArgumentParser:
    flags = _global_flags()
    parser = argparse.ArgumentParser(prog="vknot", description=__doc__.splitlines()[0], parents=[flags])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[flags], help="parse and canonicalize a Gauss code")
    p.add_argument("code", help="Gauss code, @file or catalog name")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("invariants", parents=[flags], help="index table, w(t), Seifert circles, genus")
    p.add_argument("code")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("cable", parents=[flags], help="classical satellite with a pattern")
    p.add_argument("code")
    p.add_argument("--pattern", required=True, help='e.g. "p=2 eps=++ tangle=1+"')
    p.set_defaults(func=cmd_cable)

    p = sub.add_parser("family", parents=[flags], help="generate family diagrams")
    p.add_argument("--g", type=int)
    p.add_argument("--pairs", help="p1:q1,p2:q2,...")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--distinguish", action="store_true")
    p.add_argument("--kmax", type=int, default=4)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("certify", parents=[flags], help="check a cobordism certificate file")
    p.add_argument("file")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("obstruct", parents=[flags], help="obstruction reports")
    p.add_argument("--kind", required=True, choices=OBSTRUCTION_KINDS)
    p.add_argument("codes", nargs="+")
    p.add_argument("--r", type=int)
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("fuzz", parents=[flags], help="seeded property fuzzing")
    p.add_argument("--what", choices=sorted(FUZZERS), default="moves")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--n", type=int, default=10, help="largest starting chord count")
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name, default in (("json", False), ("seed", None), ("max_n", DEFAULT_MAX_N)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        catalog = load_catalog()
        return args.func(args, catalog)
    except GaussCodeError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except CertificateError as exc:
        print(f"certificate error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, PatternError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
