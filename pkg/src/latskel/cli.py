"""Command line front end: ``latskel <verb> ...``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .dot import lattice_dot, wds_dot
from .errors import InputFileError, LatskelError
from .io import format_lattice, parse_lattice, wds_from_json, wds_to_json
from .lattice import atoms, is_distributive, is_modular, ji_length, join_irreducibles, length
from .reconstruct import reconstruct
from .search import search_ji1_not_h2, search_rank3_counterexample
from .suites import SUITES, default_bounds, reports_to_json, run_suite
from .tolerance import herrmann_rank, iterated_skeletons, skeleton
from .wds import extract_wds


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputFileError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    L = parse_lattice(_read(args.file))
    rank = herrmann_rank(L)
    print(
        f"n={L.n} length={length(L)} atoms={len(atoms(L))} ji={len(join_irreducibles(L))}"
        f" jiLength={ji_length(L)} distributive={_yes(is_distributive(L))} rank={rank}"
        f" modular={_yes(is_modular(L))} H1={_yes(rank <= 1)} H2={_yes(rank <= 2)}"
    )
    return 0


def cmd_skeleton(args) -> int:
    L = parse_lattice(_read(args.file))
    sk = skeleton(L)
    lines = [f"blocks {len(sk.blocks)}"]
    for k, b in enumerate(sk.blocks):
        mark = " least" if k == sk.zeta0 else ""
        lines.append(f"block {k} [{b.lo},{b.hi}] size={len(b.members)}{mark}")
    text = "\n".join(lines) + "\n" + format_lattice(sk.skeleton, f"S({L.name or 'L'})")
    _emit(text, args.output)
    return 0


def cmd_rank(args) -> int:
    L = parse_lattice(_read(args.file))
    sizes = [S.n for S in iterated_skeletons(L)]
    print(f"rank={len(sizes) - 1} sizes={','.join(map(str, sizes))}")
    return 0


def cmd_wds(args) -> int:
    L = parse_lattice(_read(args.file))
    _emit(wds_to_json(extract_wds(L)), args.output)
    return 0


def cmd_reconstruct(args) -> int:
    sigma = wds_from_json(_read(args.file))
    report = reconstruct(sigma)
    _emit(format_lattice(report.lattice, args.name), args.output)
    return 0


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    overrides = dict(max_ji=args.max_ji, max_size=args.max_size, seed=args.seed, graphs=args.graphs)
    reports = [run_suite(n, default_bounds(n, **overrides), args.jobs) for n in names]
    if args.json:
        _emit(reports_to_json(reports, args.timing), args.json)
    passed = all(r.passed for r in reports)
    text = "\n".join(r.to_text(args.timing) for r in reports)
    text += f"\noverall: {'PASS' if passed else 'FAIL'} ({sum(r.passed for r in reports)}/{len(reports)} suites)\n"
    sys.stdout.write(text)
    return 0 if passed else 1


def cmd_search(args) -> int:
    prefix = args.output
    if args.kind == "rank3":
        found = search_rank3_counterexample(args.max_ji)
        if found is None:
            print(f"rank3: no pair within max_ji={args.max_ji}")
            return 1
        for k, L in enumerate(found, 1):
            print(f"L{k}: {L.name} n={L.n} rank={herrmann_rank(L)} skeleton_sizes={[S.n for S in iterated_skeletons(L)]}")
            if prefix:
                Path(f"{prefix}{k}.txt").write_text(format_lattice(L), encoding="utf-8")
        print("skeletons isomorphic, lattices not isomorphic")
    else:
        L = search_ji1_not_h2(args.max_ji)
        if L is None:
            print(f"ji1: no lattice within max_ji={args.max_ji}")
            return 1
        print(f"L: {L.name} n={L.n} jiLength={ji_length(L)} rank={herrmann_rank(L)}")
        if prefix:
            Path(f"{prefix}.txt").write_text(format_lattice(L), encoding="utf-8")
    return 0


def cmd_dot(args) -> int:
    text = _read(args.file)
    if text.lstrip().startswith("{"):
        _emit(wds_dot(wds_from_json(text)), args.output)
    else:
        _emit(lattice_dot(parse_lattice(text)), args.output)
    return 0


def cmd_stats(args) -> int:
    text = _read(args.file)
    L = parse_lattice(text)
    lattice_bytes = len(format_lattice(L).encode())
    wds_bytes = len(wds_to_json(extract_wds(L)).encode())
    print(f"n={L.n} ji={len(join_irreducibles(L))} lattice_bytes={lattice_bytes} wds_bytes={wds_bytes}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latskel", description="Skeletons of finite lattices.")
    parser.add_argument("--version", action="version", version=f"latskel {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    def with_file(name, func, help_text, output=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        if output:
            p.add_argument("-o", "--output", help="write here instead of stdout")
        p.set_defaults(func=func)
        return p

    with_file("analyze", cmd_analyze, "basic invariants of a lattice")
    with_file("skeleton", cmd_skeleton, "blocks and skeleton lattice", output=True)
    with_file("rank", cmd_rank, "Herrmann rank and iterated skeleton sizes")
    with_file("wds", cmd_wds, "weighted double skeleton as JSON", output=True)
    p = with_file("reconstruct", cmd_reconstruct, "rebuild a lattice from skeleton JSON", output=True)
    p.add_argument("--name", default="R", help="name written into the lattice file")
    with_file("dot", cmd_dot, "DOT diagram of a lattice or skeleton JSON", output=True)
    with_file("stats", cmd_stats, "size of the lattice file against its skeleton JSON")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", required=True, help=f"one of {', '.join(SUITES)}, or all")
    p.add_argument("--max-ji", type=int)
    p.add_argument("--max-size", type=int)
    p.add_argument("--graphs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", metavar="PATH", help="also write a JSON report")
    p.add_argument("--timing", action="store_true", help="include wall times (not reproducible)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="search for the sharpness witnesses")
    p.add_argument("kind", choices=["rank3", "ji1"])
    p.add_argument("--max-ji", type=int, default=8)
    p.add_argument("-o", "--output", metavar="PREFIX", help="write witnesses to PREFIX*.txt")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LatskelError as exc:
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
