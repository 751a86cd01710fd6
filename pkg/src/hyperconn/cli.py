"""Command-line interface: ``hyperconn <subcommand> ...``.

Exit codes: 0 success, 1 usage, 2 input error, 3 numeric failure,
4 regression mismatch. ``-`` means stdin/stdout wherever a file is expected.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import arccc, eigenmap, generators, io, rewiring, spectral, tables
from .hypergraph import (
    circle_reduction,
    clique_reduction,
    connected_components,
    directed_connectivity_class,
    sparsity,
    vertex_connectivity,
)

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_NUMERIC, EXIT_MISMATCH = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, path="-") -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# --------------------------------------------------------------------------
# Subcommands


def cmd_generate(args) -> int:
    fam = args.family
    if fam == "hyperring":
        G = generators.hyperring(args.n)
    elif fam == "complete":
        G = generators.complete_hypergraph(args.n, args.r)
    elif fam == "star":
        G = generators.complete_star(args.n)
    elif fam == "multistar":
        G = generators.multi_star(args.n, args.hubs)
    else:
        if args.edges is None:
            raise io.InputError("--family random needs --edges")
        make = generators.random_directed if args.directed else generators.random_uniform
        G = make(args.n, args.r, args.edges, args.seed)
    io.write_hypergraph(G, args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    G = io.read_hypergraph(args.input)
    sp = spectral.spectrum(G)
    comps = len(connected_components(G))
    if args.json:
        _emit(io.to_json({
            "n": G.n, "directed": G.directed,
            "algebraic_connectivity": sp.algebraic_connectivity,
            "eigenvalues": sp.eigenvalues, "fiedler": sp.fiedler,
            "zero_multiplicity": sp.zero_multiplicity, "components": comps,
            "residual": sp.residual,
        }) + "\n")
    else:
        print(f"algebraic_connectivity {sp.algebraic_connectivity:.10g}")
        print(f"components {comps}")
        print("eigenvalues " + " ".join(f"{v:.10g}" for v in sp.eigenvalues))
        print("fiedler " + " ".join(f"{v:.10g}" for v in sp.fiedler))
    return EXIT_OK


def cmd_connectivity(args) -> int:
    G = io.read_hypergraph(args.input)
    a = spectral.algebraic_connectivity(G)
    vc = vertex_connectivity(G)
    s = sparsity(G)
    factor = spectral.connectivity_bound_factor(G)
    bound = factor * s * vc.value
    out = {
        "algebraic_connectivity": a, "vertex_connectivity": vc.value,
        "cutset": None if vc.cutset is None else [v + 1 for v in vc.cutset],
        "has_cutset": vc.has_cutset, "sparsity": s, "bound_factor": factor,
        "bound": bound, "bound_holds": a <= bound + 1e-9,
    }
    if G.directed:
        out["connectivity_class"] = directed_connectivity_class(G)
    _emit(io.to_json(out) + "\n")
    return EXIT_OK


def cmd_tables(args) -> int:
    cells = tables.compute_all()
    if args.json:
        _emit(io.to_json({"cells": [dict(table=c.table, n=c.n, column=c.column, expected=c.expected,
                                         computed=c.computed, ok=c.ok) for c in cells]}) + "\n")
    else:
        for c in cells:
            print(c.line())
    bad = sum(not c.ok for c in cells)
    print(f"{len(cells) - bad}/{len(cells)} cells match within {tables.TABLE_TOL}", file=sys.stderr)
    return EXIT_OK if bad == 0 else EXIT_MISMATCH


def cmd_rewire(args) -> int:
    G = io.read_hypergraph(args.input)
    H, rep = rewiring.rewire(G, args.steps, args.mode)
    io.write_hypergraph(H, args.out)
    if args.report:
        io.write_json(rep.to_dict(), args.report)
    if args.csv:
        io.write_csv(args.csv, ["step", "a"], rep.trajectory())
    return EXIT_OK


def cmd_arccc(args) -> int:
    inst = io.read_arccc_instance(args.instance)
    sol = arccc.solve(inst, max_iters=args.max_iters, method=args.method)
    io.write_json({
        "weights": sol.weights, "lambda2": sol.lambda2, "iterations": sol.iterations,
        "feasibility_gap": sol.feasibility_gap, "optimality_gap": sol.optimality_gap,
        "converged": sol.converged,
    }, args.out)
    return EXIT_OK


def cmd_arccc_recover(args) -> int:
    if args.scholp:
        G = io.read_scholp(args.scholp)
    else:
        G = arccc.zipf_hypergraph(args.n, args.edges, seed=args.synthetic)
    rep = arccc.weight_recovery_experiment(G, max_iters=args.max_iters, method=args.method)
    io.write_json({
        **rep.summary(),
        "edges": [[v + 1 for v in e] for e in rep.true_edges],
        "true_weights": rep.true_weights,
        "recovered_weights": rep.recovered[:len(rep.true_edges)],
        "relative_errors": rep.relative_errors,
        "raw_weights": rep.solution.weights,
    }, args.out)
    return EXIT_OK


def cmd_eigenmap(args) -> int:
    data = io.read_csv_dataset(args.input, args.label_col)
    variant = {"graph-unnorm": "graph_unnormalized"}.get(args.variant, args.variant)
    res = eigenmap.pipeline(data, args.m, args.q, args.k, variant, args.seed,
                            neighbors=args.neighbors, normalization=args.normalization,
                            include_kernel=args.include_kernel)
    if args.embedding_out:
        header = [f"y{j + 1}" for j in range(res.embedding.coords.shape[1])] + ["cluster"]
        rows = [list(map(float, r)) + [int(c)] for r, c in zip(res.embedding.coords, res.predicted)]
        io.write_csv(args.embedding_out, header, rows)
    _emit(io.to_json({
        "variant": variant, "m": args.m, "q": args.q, "k": args.k, "seed": args.seed,
        "nmi": None if np.isnan(res.nmi) else res.nmi,
        "ari": None if np.isnan(res.ari) else res.ari,
        "eigenvalues_used": res.embedding.eigenvalues_used,
        "skipped_zero_count": res.embedding.skipped_zero_count,
    }) + "\n", args.metrics_out)
    return EXIT_OK


def cmd_reduce(args) -> int:
    G = io.read_hypergraph(args.input)
    M = clique_reduction(G) if args.kind == "clique" else circle_reduction(G)
    _emit(io.format_multigraph(M), args.out)
    return EXIT_OK


def cmd_consensus(args) -> int:
    G = io.read_hypergraph(args.input)
    rng = np.random.default_rng(args.seed)
    if args.x0 == "random":
        x0 = rng.standard_normal(G.n)
    else:
        x0 = np.zeros(G.n)
        x0[0] = 1.0
    tr = spectral.consensus_simulate(G, x0, args.dt, args.steps, args.sample_every)
    if args.trace:
        header = ["t", "disagreement"] + [f"x{i + 1}" for i in range(G.n)]
        io.write_csv(args.trace, header, [[float(t), float(e), *map(float, x)]
                                          for t, e, x in zip(tr.times, tr.disagreement, tr.states)])
    out = {"rate": tr.rate, "mean_start": float(tr.states[0].mean()), "mean_end": float(tr.states[-1].mean())}
    if not G.directed:
        out["algebraic_connectivity"] = spectral.algebraic_connectivity(G)
    _emit(io.to_json(out) + "\n")
    return EXIT_OK


def cmd_proptest(args) -> int:
    from .proptest_suite import run_all

    rep = run_all(args.seed, args.trials)
    if args.json:
        _emit(io.to_json(rep.to_dict()) + "\n")
    else:
        for name in sorted(rep.counts):
            bad = rep.counterexamples.get(name, [])
            print(f"{'PASS' if not bad else 'FAIL'} {name} runs={rep.counts[name]} counterexamples={len(bad)}")
            for msg in bad[:5]:
                print("    " + msg)
    return EXIT_OK if rep.ok else EXIT_MISMATCH


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperconn", description="Spectral connectivity tools for uniform hypergraphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a structured or random hypergraph")
    g.add_argument("--family", required=True, choices=["hyperring", "complete", "star", "multistar", "random"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--r", type=int, default=3, help="hyperedge size (complete, random)")
    g.add_argument("--hubs", type=int, default=1, choices=[1, 2])
    g.add_argument("--edges", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--directed", action="store_true", help="random family only")
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("spectrum", help="eigenvalues, algebraic connectivity, Fiedler vector")
    s.add_argument("--in", dest="input", default="-")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_spectrum)

    c = sub.add_parser("connectivity", help="vertex connectivity, sparsity and the spectral bound")
    c.add_argument("--in", dest="input", default="-")
    c.set_defaults(func=cmd_connectivity)

    t = sub.add_parser("tables", help="recompute the structured-hypergraph tables and diff")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_tables)

    r = sub.add_parser("rewire", help="greedy hyperedge adding or rewiring")
    r.add_argument("--in", dest="input", default="-")
    r.add_argument("--steps", type=int, required=True)
    r.add_argument("--mode", choices=["add", "rewire"], default="add")
    r.add_argument("--out", default="-")
    r.add_argument("--report")
    r.add_argument("--csv", help="(step, a) trajectory")
    r.set_defaults(func=cmd_rewire)

    a = sub.add_parser("arccc", help="maximise algebraic connectivity under a cost budget")
    a.add_argument("--instance", required=True)
    a.add_argument("--out", default="-")
    a.add_argument("--max-iters", type=int, default=2000)
    a.add_argument("--method", choices=["supergradient", "cutting-plane"], default="supergradient")
    a.set_defaults(func=cmd_arccc)

    ar = sub.add_parser("arccc-recover", help="weight recovery experiment")
    src = ar.add_mutually_exclusive_group(required=True)
    src.add_argument("--scholp", metavar="PREFIX")
    src.add_argument("--synthetic", type=int, metavar="SEED", help="Zipf-multiplicity synthetic instance")
    ar.add_argument("--n", type=int, default=20)
    ar.add_argument("--edges", type=int, default=30)
    ar.add_argument("--out", default="-")
    ar.add_argument("--max-iters", type=int, default=500)
    ar.add_argument("--method", choices=["supergradient", "cutting-plane"], default="cutting-plane")
    ar.set_defaults(func=cmd_arccc_recover)

    e = sub.add_parser("eigenmap", help="hypergraph or graph Laplacian eigenmap + k-means")
    e.add_argument("--input", required=True)
    e.add_argument("--label-col")
    e.add_argument("--m", type=int, default=7)
    e.add_argument("--q", type=int, default=2)
    e.add_argument("--k", type=int, default=3)
    e.add_argument("--variant", choices=["hypergraph", "graph", "graph-unnorm"], default="hypergraph")
    e.add_argument("--neighbors", type=int, help="neighbour count for graph variants (default m)")
    e.add_argument("--normalization", choices=["minmax", "zscore", "none"], default="minmax")
    e.add_argument("--include-kernel", action="store_true", help="keep zero-eigenvalue eigenvectors")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--embedding-out")
    e.add_argument("--metrics-out", default="-")
    e.set_defaults(func=cmd_eigenmap)

    d = sub.add_parser("reduce", help="clique or circle reduction to a multigraph edge list")
    d.add_argument("--in", dest="input", default="-")
    d.add_argument("--kind", choices=["clique", "circle"], required=True)
    d.add_argument("--out", default="-")
    d.set_defaults(func=cmd_reduce)

    k = sub.add_parser("consensus", help="simulate x' = -x^T L")
    k.add_argument("--in", dest="input", default="-")
    k.add_argument("--x0", choices=["random", "spike"], default="random")
    k.add_argument("--dt", type=float, default=0.01)
    k.add_argument("--steps", type=int, default=1000)
    k.add_argument("--sample-every", type=int, default=1)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--trace")
    k.set_defaults(func=cmd_consensus)

    q = sub.add_parser("proptest", help="randomised property checks")
    q.add_argument("--seed", type=int, default=42)
    q.add_argument("--trials", type=int, default=200)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_proptest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (spectral.NumericalError, np.linalg.LinAlgError) as exc:
        print(f"hyperconn: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (io.InputError, ValueError, KeyError, OSError) as exc:
        print(f"hyperconn: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
