"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data error (bad file, disconnected
graph, unknown node, ...).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import io as wio
from .analysis import Analysis, analyze
from .graph import Graph, GraphError, generate, parse_edge_list, serialize_edge_list, weighted_degrees
from .metric import (
    MODES,
    distance_matrix,
    embedding_coords,
    first_passage,
    hitting_matrix,
    hitting_spectral,
    metric_ball,
    squared_distance,
)
from .oracle import oracle_report, sample_pairs, simulate_hitting

VALIDATE_PAIRS = 20


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def load_graph(source: str) -> Graph:
    """Read ``source``: a file path, ``-`` for stdin, or ``gen:KIND:SIZE[:SIZE]``."""
    if source.startswith("gen:"):
        kind, *sizes = source[4:].split(":")
        try:
            return generate(kind, *(int(s) for s in sizes))
        except ValueError as exc:
            raise DataError(f"{source}: {exc}") from exc
    try:
        text = sys.stdin.read() if source == "-" else open(source, encoding="utf-8").read()
    except OSError as exc:
        raise DataError(f"{source}: {exc.strerror or exc}") from exc
    try:
        return parse_edge_list(text)
    except GraphError as exc:
        raise DataError(f"{source}: {exc}") from exc


def load_beta(args, n: int):
    if args.beta_file:
        try:
            with open(args.beta_file, encoding="utf-8") as fh:
                values = [float(t) for t in fh.read().split()]
        except (OSError, ValueError) as exc:
            raise DataError(f"{args.beta_file}: {exc}") from exc
        if len(values) != n:
            raise DataError(f"{args.beta_file}: {len(values)} values for {n} nodes")
        return np.array(values)
    return args.beta


def build(args) -> Analysis:
    g = load_graph(args.input)
    beta = load_beta(args, g.n)
    try:
        result = analyze(g, beta)
    except (GraphError, ValueError) as exc:
        src = args.beta_file if args.beta_file and "beta" in str(exc) else args.input
        raise DataError(f"{src}: {exc}") from exc
    if args.dump_spectrum:
        write_text(args.dump_spectrum, wio.spectrum_csv(result.spectrum))
    return result


def resolve(g: Graph, label: str) -> int:
    try:
        return g.index(label)
    except GraphError as exc:
        raise DataError(str(exc)) from exc


def write_text(path: str | None, text: str) -> None:
    if not path or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise DataError(f"{path}: {exc.strerror or exc}") from exc


def write_matrix(path: str | None, matrix, labels) -> None:
    if path and path.lower().endswith(".pgm"):
        try:
            wio.export_heatmap(matrix, path)
        except OSError as exc:
            raise DataError(f"{path}: {exc.strerror or exc}") from exc
    else:
        write_text(path, wio.matrix_csv(matrix, labels))


def cmd_generate(args) -> None:
    try:
        g = generate(args.kind, *args.sizes)
    except GraphError as exc:
        raise UsageError(str(exc)) from exc
    write_text(args.output, serialize_edge_list(g))


def cmd_analyze(args) -> None:
    a = build(args)
    g, ms = a.graph, a.space
    f = first_passage(ms)
    mu = a.spectrum.mu
    lines = [
        f"nodes {g.n}",
        f"edges {g.num_edges}",
        f"volume {wio.fmt(g.volume)}",
        f"beta {'uniform ' + wio.fmt(a.walk.beta[0]) if a.walk.uniform else 'per-node'}",
        f"mu_2 {wio.fmt(mu[1])}",
        f"mu_min {wio.fmt(mu[-1])}",
        f"spectral_gap {wio.fmt(1.0 - mu[1])}",
        f"kemeny {wio.fmt(float(np.sum(ms.gaps)))}",
        f"first_passage_min {wio.fmt(f.min())}",
        f"first_passage_max {wio.fmt(f.max())}",
    ]
    print("\n".join(lines))
    if args.output:
        rows = ["node,deg,pi,first_passage"]
        deg = weighted_degrees(g)
        for x in range(g.n):
            rows.append(f"{g.label(x)},{wio.fmt(deg[x])},{wio.fmt(a.walk.pi[x])},{wio.fmt(f[x])}")
        write_text(args.output, "\n".join(rows) + "\n")


def cmd_distances(args) -> None:
    a = build(args)
    if args.pair:
        x, y = (resolve(a.graph, s) for s in args.pair)
        d2 = squared_distance(a.space, x, y)
        print(wio.fmt(d2 if args.mode == "commute" else np.sqrt(d2)))
    else:
        write_matrix(args.output, distance_matrix(a.space, args.mode), a.graph.node_labels())


def cmd_hitting(args) -> None:
    a = build(args)
    if args.pair:
        x, y = (resolve(a.graph, s) for s in args.pair)
        print(wio.fmt(hitting_spectral(a.space, x, y)))
    else:
        write_matrix(args.output, hitting_matrix(a.space), a.graph.node_labels())


def cmd_embed(args) -> None:
    a = build(args)
    try:
        coords = embedding_coords(a.spectrum, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    g = a.graph
    write_text(args.output, wio.embedding_csv(coords, g.node_labels(), weighted_degrees(g)))


def cmd_ball(args) -> None:
    a = build(args)
    x = resolve(a.graph, args.node)
    if args.radius < 0:
        raise UsageError("radius must be non-negative")
    members = sorted(metric_ball(a.space, x, args.radius))
    write_text(args.output, "".join(a.graph.label(i) + "\n" for i in members))


def cmd_validate(args) -> None:
    a = build(args)
    g = a.graph
    if args.pair:
        pairs = [tuple(resolve(g, s) for s in args.pair)]
    else:
        pairs = sample_pairs(g.n, VALIDATE_PAIRS, args.seed)
    rows = oracle_report(a, pairs, trials=args.trials, seed=args.seed)
    out = ["x,y,spectral,solve,rel_discrepancy,mc_mean,mc_stderr,z"]
    for r in rows:
        vals = (r.spectral, r.solve, r.rel_discrepancy, r.mc_mean, r.mc_stderr, r.z_score)
        out.append(",".join([g.label(r.x), g.label(r.y), *(wio.fmt(v) for v in vals)]))
    write_text(args.output, "\n".join(out) + "\n")
    worst = max(r.rel_discrepancy for r in rows)
    msg = f"pairs {len(rows)}  max_rel_discrepancy {worst:.3e}"
    if args.trials > 0:
        msg += f"  max_abs_z {max(abs(r.z_score) for r in rows):.3f}"
    print(msg, file=sys.stderr)


def cmd_simulate(args) -> None:
    g = load_graph(args.input)
    beta = load_beta(args, g.n)
    x, y = (resolve(g, s) for s in args.pair)
    try:
        est = simulate_hitting(g, beta, x, y, args.trials, args.seed)
    except (GraphError, ValueError) as exc:
        raise DataError(f"{args.input}: {exc}") from exc
    line = f"mean {wio.fmt(est.mean)} stderr {wio.fmt(est.stderr)} trials {est.trials}"
    if est.censored:
        line += f" censored {est.censored}"
    print(line)


def _add_input(p: argparse.ArgumentParser, spectrum: bool = True) -> None:
    p.add_argument("-i", "--input", required=True, help="edge-list file, '-' for stdin, or gen:KIND:SIZE[:SIZE]")
    b = p.add_mutually_exclusive_group()
    b.add_argument("--beta", type=float, default=1.0, help="uniform move probability in (0, 1] (default 1)")
    b.add_argument("--beta-file", help="one move probability per line, in node order")
    if spectrum:
        p.add_argument(
            "--dump-spectrum", nargs="?", const="-", metavar="PATH", help="write eigenvalues/vectors as CSV"
        )


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="walkgeom", description="Random-walk metric geometry of weighted graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write a canonical graph as an edge list")
    p.add_argument("kind", choices=["path", "cycle", "complete", "lattice2d"])
    p.add_argument("sizes", type=int, nargs="+", metavar="SIZE")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="spectral summary; -o writes per-node first-passage times")
    _add_input(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("distances", help="commute-time distances (CSV, or PGM heatmap for *.pgm)")
    _add_input(p)
    p.add_argument("--mode", choices=MODES, default="sqrt")
    p.add_argument("--pair", nargs=2, metavar=("U", "V"))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_distances)

    p = sub.add_parser("hitting", help="hitting times (CSV, or PGM heatmap for *.pgm)")
    _add_input(p)
    p.add_argument("--pair", nargs=2, metavar=("U", "V"))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_hitting)

    p = sub.add_parser("embed", help="eigenvector coordinates psi_2..psi_{k+1}")
    _add_input(p)
    p.add_argument("-k", type=int, default=3, help="dimensions (default 3)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("ball", help="nodes strictly within a distance of a centre node")
    _add_input(p)
    p.add_argument("node")
    p.add_argument("radius", type=float)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("validate", help="spectral vs linear-solve vs Monte Carlo hitting times")
    _add_input(p)
    p.add_argument("--pair", nargs=2, metavar=("U", "V"))
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("simulate", help="Monte Carlo hitting time for one pair")
    _add_input(p, spectrum=False)
    p.add_argument("--pair", nargs=2, metavar=("U", "V"), required=True)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)
    return parser


def run_cli(argv=None) -> int:
    try:
        args = make_parser().parse_args(argv)
        if getattr(args, "trials", 1) < 0 or (args.command == "simulate" and args.trials < 1):
            raise UsageError("--trials must be positive")
        if hasattr(args, "beta") and not 0.0 < args.beta <= 1.0:
            raise UsageError(f"--beta must lie in (0, 1], got {args.beta!r}")
        args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
