"""Command-line interface.

Subcommands: build-gnk, rho, kfactor, deficiency, bound, encode, decode,
and verify {theorem,sweep,lemma5,exhaustive,random}.  Graph input is
graph6, one per line, from ``--in FILE`` or standard input (``-``).
Exit codes: 0 success/PASS, 1 violation or validation failure, 2 usage
error.  Job counts fall back to the ``KFS_JOBS`` environment variable.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import graph6 as g6mod
from .factors import DEFAULT_SCAN_CAP, deficiency, has_k_factor
from .graphs import Graph, build_gnk, from_edges
from .report import (
    canonical_json_bytes,
    render_table,
    report_json_bytes,
    write_details_csv,
    write_report,
)
from .spectral import DEFAULT_TOL, hsf_bound, rho
from .verify import (
    VerificationReport,
    _bump_verdict,
    _new_counters,
    edge_addition_sweep,
    exhaustive_small_campaign,
    lemma5_restricted_extremality,
    random_campaign,
    verify_theorem_on,
)

__all__ = ["main"]


def _read_lines(path: str):
    if path == "-":
        return sys.stdin.read().splitlines()
    return Path(path).read_text(encoding="ascii").splitlines()


def _read_graphs(path: str) -> list[Graph]:
    graphs = []
    for lineno, line in enumerate(_read_lines(path), start=1):
        if not line.strip():
            continue
        try:
            graphs.append(g6mod.decode(line))
        except g6mod.Graph6Error as exc:
            raise SystemExit(_fail(f"line {lineno}: {exc}"))
    if not graphs:
        raise SystemExit(_fail("no graphs in input"))
    return graphs


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 1


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)


def _parse_vertex_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad vertex list {text!r}: {exc}") from None


def _emit_report(report: VerificationReport, args) -> int:
    if args.format == "json":
        sys.stdout.write(report_json_bytes(report).decode("ascii"))
    else:
        sys.stdout.write(render_table(report))
    if args.out:
        write_report(report, args.out)
    if getattr(args, "figures", None):
        from .plots import render_report_figures

        outdir = Path(args.figures)
        outdir.mkdir(parents=True, exist_ok=True)
        write_details_csv(report, outdir / f"{report.campaign}-details.csv")
        write_report(report, outdir / f"{report.campaign}-report.json")
        for path in render_report_figures(report, outdir):
            print(f"wrote {path}", file=sys.stderr)
    return 0 if report.passed else 1


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="kfs",
        description="Certified spectral thresholds and k-factor certificates.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-gnk", help="emit the extremal graph as graph6")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("rho", help="certified spectral radius enclosures")
    p.add_argument("--in", dest="infile", default="-", help="graph6 file or - for stdin")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out", default=None)

    p = sub.add_parser("kfactor", help="decide k-factor existence per graph")
    p.add_argument("--in", dest="infile", default="-")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_SCAN_CAP,
                   help="max order for exhaustive witness search")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out", default=None)

    p = sub.add_parser("deficiency", help="evaluate one deficiency split")
    p.add_argument("--in", dest="infile", default="-")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--S", default="", help="comma-separated vertices")
    p.add_argument("--T", default="", help="comma-separated vertices")
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("bound", help="degree-based spectral radius bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)

    p = sub.add_parser("encode", help="edge-list text to graph6")
    p.add_argument("--in", dest="infile", default="-",
                   help="first line n, then one 'u v' per line")
    p.add_argument("--out", default=None)

    p = sub.add_parser("decode", help="graph6 to edge-list text")
    p.add_argument("--in", dest="infile", default="-")
    p.add_argument("--out", default=None)

    v = sub.add_parser("verify", help="verification campaigns")
    vsub = v.add_subparsers(dest="campaign", required=True)

    def common(pp, jobs=True, figures=True):
        pp.add_argument("--tol", type=float, default=DEFAULT_TOL)
        pp.add_argument("--format", choices=("table", "json"), default="table")
        pp.add_argument("--out", default=None, help="write canonical JSON report")
        if jobs:
            pp.add_argument("--jobs", type=int, default=None,
                            help="worker threads (default: KFS_JOBS or 1)")
        if figures:
            pp.add_argument("--figures", default=None,
                            help="directory for PNG figures + details CSV")

    p = vsub.add_parser("theorem", help="check the threshold statement on input graphs")
    p.add_argument("--in", dest="infile", default="-")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_SCAN_CAP)
    common(p, jobs=False)

    p = vsub.add_parser("sweep", help="edge-addition sweep from the extremal graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--force", action="store_true",
                   help="allow orders below the theorem range")
    common(p)

    p = vsub.add_parser("lemma5", help="restricted extremality over attachment patterns")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--force", action="store_true")
    common(p, jobs=False)

    p = vsub.add_parser("exhaustive", help="labeled enumeration or graph6 stream")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="labeled enumeration order (<= 6)")
    p.add_argument("--in", dest="infile", default=None, help="graph6 stream file")
    p.add_argument("--cap", type=int, default=DEFAULT_SCAN_CAP)
    common(p)

    p = vsub.add_parser("random", help="seeded random sampling")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--density", type=float, default=None)
    p.add_argument("--cap", type=int, default=DEFAULT_SCAN_CAP)
    common(p)

    return top


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except SystemExit:
        raise
    except (ValueError, OSError, RuntimeError) as exc:
        return _fail(str(exc))


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "build-gnk":
        line = g6mod.encode(build_gnk(args.n, args.k)) + "\n"
        _emit(line, args.out)
        return 0

    if cmd == "rho":
        graphs = _read_graphs(args.infile)
        rows = []
        for g in graphs:
            est = rho(g, args.tol)
            rows.append({"n": g.n, "m": g.m, **est.to_dict()})
        if args.format == "json":
            text = canonical_json_bytes(rows).decode("ascii")
        else:
            lines = [
                f"n={r['n']} m={r['m']} rho in [{r['lo']:.12g}, {r['hi']:.12g}] "
                f"width={r['hi'] - r['lo']:.3g} iterations={r['iterations']}"
                + ("" if r["converged"] else "  NOT CONVERGED")
                for r in rows
            ]
            text = "\n".join(lines) + "\n"
        _emit(text, args.out)
        return 0

    if cmd == "kfactor":
        graphs = _read_graphs(args.infile)
        rows = []
        for g in graphs:
            outcome = has_k_factor(g, args.k, cap=args.cap)
            rows.append(outcome.to_dict())
        if args.format == "json":
            text = canonical_json_bytes(rows).decode("ascii")
        else:
            lines = []
            for g, r in zip(graphs, rows):
                if r["exists"]:
                    lines.append(
                        f"n={g.n}: k-factor found ({len(r['factor'])} edges, "
                        f"via {r['certified_by']})"
                    )
                elif r["witness"]:
                    w = r["witness"]
                    lines.append(
                        f"n={g.n}: no k-factor; witness S={w['S']} T={w['T']} "
                        f"delta={w['delta']}"
                    )
                else:
                    lines.append(
                        f"n={g.n}: no k-factor (refuted via {r['certified_by']})"
                    )
            text = "\n".join(lines) + "\n"
        _emit(text, args.out)
        return 0

    if cmd == "deficiency":
        graphs = _read_graphs(args.infile)
        if len(graphs) != 1:
            return _fail("deficiency expects exactly one input graph")
        wit = deficiency(
            graphs[0], _parse_vertex_list(args.S), _parse_vertex_list(args.T), args.k
        )
        if args.format == "json":
            sys.stdout.write(canonical_json_bytes(wit.to_dict()).decode("ascii"))
        else:
            print(
                f"S={list(wit.S)} T={list(wit.T)} k={wit.k}: tau={wit.tau} "
                f"q={wit.q} delta={wit.delta}"
            )
        return 0

    if cmd == "bound":
        print(repr(hsf_bound(args.n, args.m, args.delta)))
        return 0

    if cmd == "encode":
        lines = [ln for ln in _read_lines(args.infile) if ln.strip() and not ln.startswith("#")]
        if not lines:
            return _fail("empty edge-list input")
        try:
            n = int(lines[0])
            edges = []
            for ln in lines[1:]:
                u, v = ln.split()
                edges.append((int(u), int(v)))
        except ValueError as exc:
            return _fail(f"bad edge-list input: {exc}")
        _emit(g6mod.encode(from_edges(n, edges)) + "\n", args.out)
        return 0

    if cmd == "decode":
        graphs = _read_graphs(args.infile)
        if len(graphs) != 1:
            return _fail("decode expects exactly one graph6 line")
        g = graphs[0]
        out_lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges()]
        _emit("\n".join(out_lines) + "\n", args.out)
        return 0

    if cmd == "verify":
        return _dispatch_verify(args)
    raise AssertionError(f"unhandled command {cmd}")


def _dispatch_verify(args) -> int:
    import time

    camp = args.campaign
    if camp == "theorem":
        t0 = time.perf_counter()
        graphs = _read_graphs(args.infile)
        counters = _new_counters()
        failures = []
        details = []
        for g in graphs:
            chk = verify_theorem_on(g, args.k, args.tol, cap=args.cap)
            _bump_verdict(counters, chk, g, failures)
            details.append(
                {
                    "n": g.n,
                    "verdict": chk.verdict.value,
                    "rho_lo": chk.evidence.get("rho", {}).get("lo"),
                    "rho_hi": chk.evidence.get("rho", {}).get("hi"),
                }
            )
        report = VerificationReport(
            campaign="theorem-check",
            params={"k": args.k, "tol": args.tol},
            counters=counters,
            failures=failures,
            details=details,
            runtime_seconds=time.perf_counter() - t0,
        )
    elif camp == "sweep":
        report = edge_addition_sweep(
            args.n, args.k, tol=args.tol, jobs=args.jobs, force=args.force
        )
    elif camp == "lemma5":
        report = lemma5_restricted_extremality(
            args.n, args.k, tol=args.tol, force=args.force
        )
    elif camp == "exhaustive":
        if (args.n is None) == (args.infile is None):
            return _fail("exhaustive needs exactly one of --n or --in")
        report = exhaustive_small_campaign(
            args.k, n=args.n, source=args.infile, tol=args.tol, jobs=args.jobs,
            cap=args.cap,
        )
    elif camp == "random":
        report = random_campaign(
            args.n, args.k, trials=args.trials, seed=args.seed,
            density=args.density, tol=args.tol, jobs=args.jobs, cap=args.cap,
        )
    else:
        raise AssertionError(f"unhandled campaign {camp}")
    return _emit_report(report, args)


if __name__ == "__main__":
    raise SystemExit(main())
