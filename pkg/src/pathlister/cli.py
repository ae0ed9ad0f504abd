"""Command-line front end: ``pathlister {paths|cycles|bcc|generate|bench}``."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from typing import Iterator, Optional, TextIO

from .baselines import SizeLimitError, brute_force_cycles, brute_force_st_paths, johnson_cycles
from .blocks import biconnected_components
from .enumerator import RunStats, StopEnumeration, audit_costs, list_cycles, list_st_paths
from .generators import diamond, random_graph, tripartite
from .graph import Graph, GraphFormatError, parse_edge_list, serialize_edge_list

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BAD_VERTEX = 3
EXIT_TOO_LARGE = 4

CSV_HEADER = [
    "family", "n", "m", "eta", "total_output", "algo", "work_units",
    "elapsed_ns", "ratio", "lemma5_violations", "lemma6_violations",
]

log = logging.getLogger("pathlister")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@contextmanager
def _open_out(path: Optional[str]) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _load(path: str) -> Graph:
    try:
        if path == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                data = fh.read()
        return parse_edge_list(data)
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None
    except (GraphFormatError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None


class _Writer:
    """Sink that streams solutions as lines, or only counts them."""

    def __init__(self, out: TextIO, count_only: bool):
        self.out = out
        self.count_only = count_only
        self.count = 0

    def __call__(self, sol: tuple[int, ...]) -> None:
        self.count += 1
        if not self.count_only:
            self.out.write(" ".join(map(str, sol)))
            self.out.write("\n")


def _report(stats: RunStats, enabled: bool) -> None:
    if enabled:
        print(stats.to_json(), file=sys.stderr)


def cmd_paths(args: argparse.Namespace) -> int:
    g = _load(args.graph)
    for name in ("s", "t"):
        v = getattr(args, name)
        if not 0 <= v < g.n:
            raise CliError(EXIT_BAD_VERTEX, f"{name}={v} is not a vertex (n={g.n})")
    if args.s == args.t:
        raise CliError(EXIT_BAD_VERTEX, "s and t must differ; use `cycles` for cycles")
    with _open_out(args.output) as out:
        sink = _Writer(out, args.count_only)
        if args.algo == "brute":
            try:
                found = sorted(brute_force_st_paths(g, args.s, args.t))
            except SizeLimitError as exc:
                raise CliError(EXIT_TOO_LARGE, str(exc)) from None
            for p in found:
                sink(p)
            stats = RunStats(leaves=len(found), solutions=len(found),
                             output_size=sum(len(p) - 1 for p in found))
        elif args.algo == "optimal":
            stats = list_st_paths(g, args.s, args.t, sink)
        else:
            raise CliError(EXIT_PARSE, "johnson lists cycles only")
        if args.count_only:
            out.write(f"{sink.count}\n")
    _report(stats, args.stats)
    return EXIT_OK


def cmd_cycles(args: argparse.Namespace) -> int:
    g = _load(args.graph)
    with _open_out(args.output) as out:
        sink = _Writer(out, args.count_only)
        if args.algo == "brute":
            try:
                found = sorted(brute_force_cycles(g))
            except SizeLimitError as exc:
                raise CliError(EXIT_TOO_LARGE, str(exc)) from None
            for c in found:
                sink(c)
            stats = RunStats(leaves=len(found), solutions=len(found),
                             output_size=sum(len(c) for c in found))
        elif args.algo == "johnson":
            stats = johnson_cycles(g, sink)
        else:
            stats = list_cycles(g, sink)
        if args.count_only:
            out.write(f"{sink.count}\n")
    _report(stats, args.stats)
    return EXIT_OK


def cmd_bcc(args: argparse.Namespace) -> int:
    g = _load(args.graph)
    bt = biconnected_components(g)
    with _open_out(args.output) as out:
        for comp in bt.bccs:
            out.write(" ".join(f"{u}-{v}" for u, v in comp) + "\n")
        out.write("articulation: " + " ".join(map(str, sorted(bt.articulation_points))) + "\n")
    return EXIT_OK


def _family(name: str, size: int, p: float = 0.5, seed: int = 0) -> Graph:
    if name == "tripartite":
        return tripartite(size)
    if name == "diamond":
        return diamond(size)
    if name == "random":
        return random_graph(size, p, seed)
    raise ValueError(f"unknown family {name!r}")


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        g = _family(args.family, args.size, args.p, args.seed)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    with _open_out(args.output) as out:
        out.write(serialize_edge_list(g))
    return EXIT_OK


def parse_range(text: str, step: int = 1) -> list[int]:
    """``"6..30"``, ``"6..30:3"`` or ``"9"`` to an inclusive list of sizes."""
    text = text.strip()
    if text.startswith("k="):
        text = text[2:]
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            if ":" in hi_s:
                hi_s, step_s = hi_s.split(":", 1)
                step = int(step_s)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError:
        raise CliError(EXIT_PARSE, f"bad range {text!r}") from None
    if step < 1 or lo < 0 or hi < lo:
        raise CliError(EXIT_PARSE, f"bad range {text!r}")
    return list(range(lo, hi + 1, step))


def bench_row(family: str, size: int, algo: str, p: float, seed: int,
              max_solutions: Optional[int]) -> list:
    """Run one (family, size, algo) cell with a counting sink; returns a CSV row."""
    g = _family(family, size, p, seed)
    count = 0

    def sink(_c) -> None:
        nonlocal count
        count += 1
        if max_solutions is not None and count > max_solutions:
            raise StopEnumeration

    if algo == "johnson":
        stats = johnson_cycles(g, sink)
        l5 = l6 = ""
        denom = g.m + stats.output_size
        ratio = stats.work_units / denom if denom else float(stats.work_units)
    else:
        stats = list_cycles(g, sink, instrument=True)
        rep = audit_costs(stats, g)
        ratio, l5, l6 = rep.ratio, rep.lemma5_violations, rep.lemma6_violations
    if stats.truncated:
        log.warning("%s(%d) %s stopped after %d cycles", family, size, algo, max_solutions)
    return [family, g.n, g.m, stats.solutions, stats.output_size, algo,
            stats.work_units, stats.elapsed_ns, f"{ratio:.6f}", l5, l6]


def cmd_bench(args: argparse.Namespace) -> int:
    sizes = parse_range(args.range, args.step)
    algos = [a.strip() for a in args.algo.split(",") if a.strip()]
    for a in algos:
        if a not in ("optimal", "johnson"):
            raise CliError(EXIT_PARSE, f"bench supports optimal and johnson, not {a!r}")
    cells = [(args.family, n, a, args.p, args.seed, args.max_solutions)
             for n in sizes for a in algos]
    try:
        for family, n, *_ in cells:
            _family(family, n, args.p, args.seed)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(bench_row, *zip(*cells)))
    else:
        rows = [bench_row(*c) for c in cells]
    with _open_out(args.output) as out:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pathlister", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--output", "-o", help="write results here instead of stdout")

    def listing(p: argparse.ArgumentParser, algos: list[str]) -> None:
        p.add_argument("--count-only", action="store_true", help="print only the number of solutions")
        p.add_argument("--stats", action="store_true", help="print run statistics as JSON on stderr")
        p.add_argument("--algo", choices=algos, default="optimal")
        common(p)

    p = sub.add_parser("paths", help="list simple paths between two vertices")
    p.add_argument("graph", help="edge-list file, or - for stdin")
    p.add_argument("s", type=int)
    p.add_argument("t", type=int)
    listing(p, ["optimal", "brute"])
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("cycles", help="list simple cycles")
    p.add_argument("graph")
    listing(p, ["optimal", "johnson", "brute"])
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("bcc", help="print biconnected components and articulation points")
    p.add_argument("graph")
    common(p)
    p.set_defaults(func=cmd_bcc)

    p = sub.add_parser("generate", help="write a generated graph as an edge list")
    p.add_argument("--family", choices=["tripartite", "diamond", "random"], required=True)
    p.add_argument("--size", type=int, required=True,
                   help="n for tripartite and random, k for diamond")
    p.add_argument("--p", type=float, default=0.5, help="edge probability (random)")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="cycle-listing benchmark as CSV")
    p.add_argument("family", choices=["tripartite", "diamond", "random"])
    p.add_argument("range", help="sizes as LO..HI, LO..HI:STEP or a single value")
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--algo", default="optimal", help="comma-separated: optimal,johnson")
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-solutions", type=int, default=None,
                   help="stop a cell after this many cycles")
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"pathlister: {exc}", file=sys.stderr)
        return exc.code
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
