"""Command-line harness for batch experiments, emitting machine-readable CSVs.

Commands:

* ``gen enum`` / ``gen tripartite``: write graph files plus a manifest.
* ``resources``: entangling-gate counts, depth, and register sizes per graph
  and encoding, with per-set averages.
* ``train``: one training run; writes a result record and a step trace.
* ``sweep``: train across a manifest, encodings, layer counts, and seeds;
  writes per-run rows plus mean/std summary rows.

Success probabilities are exact (from the statevector) unless ``--shots`` is
given, in which case sampled estimates are reported with the seed recorded.
Every CSV cell is a pure function of the inputs, flags, and seeds, so reruns
are byte-identical; wall-clock times are deliberately left out of the files.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import statistics
import sys
from pathlib import Path

from . import circuits, encodings, graphs, training

#: training commands refuse graphs larger than this (simulation cost)
TRAIN_NODE_CAP = 7
#: resource analysis is list-based, so larger instances are fine
RESOURCE_NODE_CAP = 27

CSV_MAGIC = "# quditcolor-csv v1"


def derive_seed(master_seed: int, graph_id: str, trial: int = 0) -> int:
    """Stable per-job seed from the master seed, graph name, and trial index."""
    text = f"{master_seed}|{graph_id}|{trial}".encode()
    return int.from_bytes(hashlib.blake2b(text, digest_size=8).digest(), "big")


def write_manifest(paths, manifest_path: Path):
    with open(manifest_path, "w", encoding="utf-8") as f:
        for p in paths:
            f.write(f"{Path(p).name}\n")


def read_manifest(manifest_path) -> list[Path]:
    manifest_path = Path(manifest_path)
    out = []
    with open(manifest_path, "r", encoding="utf-8") as f:
        for raw in f:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            p = Path(line)
            out.append(p if p.is_absolute() else manifest_path.parent / p)
    return out


def read_csv(path):
    """Rows of one of our CSV files as dicts, skipping comment lines."""
    with open(path, "r", encoding="utf-8") as f:
        lines = [ln for ln in f if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write_csv(path, kind: str, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(f"{CSV_MAGIC} {kind}\n")
        writer = csv.writer(f)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])


def _encodings_arg(value: str) -> list[str]:
    if value == "both":
        return ["qutrit", "qubit"]
    return [encodings.check_encoding(value)]


def cmd_gen(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.mode == "enum":
        min_edges = max_edges = args.edges
        if args.edges is None:
            min_edges, max_edges = args.min_edges, args.max_edges
        found = graphs.enumerate_3colorable(args.nodes, min_edges, max_edges, limit=args.max)
    else:
        found = [
            graphs.random_tripartite(args.nodes, args.connectivity, args.seed + i)
            for i in range(args.count)
        ]
    paths = []
    for i, g in enumerate(found):
        path = out_dir / f"g{i:03d}.graph"
        graphs.write_graph(g, path)
        paths.append(path)
    write_manifest(paths, out_dir / "manifest.txt")
    if not found:
        print(f"no graphs satisfy the constraints; wrote empty manifest to {out_dir}")
    else:
        print(f"wrote {len(found)} graphs and manifest to {out_dir}")
    return 0


def cmd_resources(args) -> int:
    header = [
        "kind", "graph", "encoding", "layers", "nodes", "edges", "max_degree",
        "sites", "params", "entangling", "depth", "per_layer_depth",
    ]
    rows = []
    per_encoding: dict[str, list[tuple[int, int, int]]] = {}
    for path in read_manifest(args.manifest):
        g = graphs.read_graph(path)
        if g.num_nodes > RESOURCE_NODE_CAP:
            raise SystemExit(f"{path}: {g.num_nodes} nodes exceeds the cap {RESOURCE_NODE_CAP}")
        for enc in _encodings_arg(args.encoding):
            circ = circuits.build_qaoa(g, enc, args.layers, args.alpha)
            ent = circuits.entangling_count(circ)
            dep = circuits.depth(circ)
            layer_dep = circuits.per_layer_depth(g, enc, args.alpha)
            rows.append([
                "run", Path(path).stem, enc, args.layers, g.num_nodes, g.num_edges,
                graphs.max_degree(g), circ.num_sites, circ.num_params, ent, dep, layer_dep,
            ])
            per_encoding.setdefault(enc, []).append((ent, dep, layer_dep))
    for enc in _encodings_arg(args.encoding):
        triples = per_encoding.get(enc, [])
        if not triples:
            continue
        rows.append([
            "summary", "*", enc, args.layers, "", "", "", "", "",
            statistics.fmean(t[0] for t in triples),
            statistics.fmean(t[1] for t in triples),
            statistics.fmean(t[2] for t in triples),
        ])
    _write_csv(args.out, "resources", header, rows)
    print(f"wrote resource table for {len(rows)} rows to {args.out}")
    return 0


TRAIN_HEADER = [
    "kind", "graph", "encoding", "layers", "alpha", "seed", "shots",
    "success_raw", "success_postselected", "success_raw_std", "success_postselected_std",
    "steps", "converged", "final_cost", "circuit_evaluations",
]


def _config_from_args(args, encoding: str, layers: int, seed: int) -> training.TrainConfig:
    overrides = dict(alpha=args.alpha, seed=seed)
    if args.lr is not None:
        overrides["learning_rate"] = args.lr
    if args.max_steps is not None:
        overrides["max_steps"] = args.max_steps
    if args.min_steps is not None:
        overrides["min_steps"] = args.min_steps
    if args.tol is not None:
        overrides["cost_tolerance"] = args.tol
    if args.init_scale is not None:
        overrides["init_scale"] = args.init_scale
    if args.gradient is not None:
        overrides["gradient_method"] = args.gradient
    return training.default_config(encoding, layers, **overrides)


def _run_job(g, config, shots):
    result = training.train(g, config)
    if shots is None:
        raw, post = result.success_raw, result.success_postselected
    else:
        state = training.final_state(g, config.encoding, config.layers, config.alpha, result.params)
        samples = state.sample(shots, seed=config.seed)
        raw = encodings.sampled_success(samples, g, config.encoding, postselect=False)
        post = encodings.sampled_success(samples, g, config.encoding, postselect=True)
    return result, raw, post


def _check_trainable(g, path):
    if g.num_nodes > TRAIN_NODE_CAP:
        raise SystemExit(
            f"{path}: training is capped at {TRAIN_NODE_CAP} nodes "
            f"(graph has {g.num_nodes})"
        )


def cmd_train(args) -> int:
    g = graphs.read_graph(args.graph)
    _check_trainable(g, args.graph)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    config = _config_from_args(args, args.encoding, args.layers, args.seed)
    result, raw, post = _run_job(g, config, args.shots)
    row = [
        "run", Path(args.graph).stem, config.encoding, config.layers, config.alpha,
        config.seed, "" if args.shots is None else args.shots,
        raw, post, "", "",
        result.steps_taken, int(result.converged), result.final_cost,
        result.circuit_evaluations,
    ]
    _write_csv(out_dir / "record.csv", "train", TRAIN_HEADER, [row])
    training.write_trace_csv(result, out_dir / "trace.csv")
    print(
        f"{Path(args.graph).stem} {config.encoding} p={config.layers} seed={config.seed}: "
        f"cost={result.final_cost:.6f} success_raw={raw:.4f} success_post={post:.4f} "
        f"steps={result.steps_taken}"
    )
    return 0


def cmd_sweep(args) -> int:
    layer_values = [int(tok) for tok in str(args.layers).split(",")]
    paths = read_manifest(args.manifest)
    if not paths:
        raise SystemExit(f"{args.manifest}: empty manifest")
    enc_list = _encodings_arg(args.encoding)
    rows = []
    summaries = []
    for enc in enc_list:
        for layers in layer_values:
            graph_means_raw = []
            graph_means_post = []
            for path in paths:
                g = graphs.read_graph(path)
                _check_trainable(g, path)
                name = Path(path).stem
                raws, posts = [], []
                for trial in range(args.seeds):
                    seed = derive_seed(args.seed, name, trial)
                    config = _config_from_args(args, enc, layers, seed)
                    result, raw, post = _run_job(g, config, args.shots)
                    rows.append([
                        "run", name, enc, layers, config.alpha, seed,
                        "" if args.shots is None else args.shots,
                        raw, post, "", "",
                        result.steps_taken, int(result.converged), result.final_cost,
                        result.circuit_evaluations,
                    ])
                    raws.append(raw)
                    posts.append(post)
                graph_means_raw.append(statistics.fmean(raws))
                graph_means_post.append(statistics.fmean(posts))
            mean_raw = statistics.fmean(graph_means_raw)
            mean_post = statistics.fmean(graph_means_post)
            std_raw = statistics.pstdev(graph_means_raw)
            std_post = statistics.pstdev(graph_means_post)
            summaries.append([
                "summary", "*", enc, layers, args.alpha, args.seed,
                "" if args.shots is None else args.shots,
                mean_raw, mean_post, std_raw, std_post, "", "", "", "",
            ])
            print(
                f"{enc} p={layers}: mean success raw={mean_raw:.4f} "
                f"post={mean_post:.4f} over {len(paths)} graphs x {args.seeds} seeds"
            )
    _write_csv(args.out, "sweep", TRAIN_HEADER, rows + summaries)
    print(f"wrote sweep table to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quditcolor",
        description="graph 3-coloring QAOA experiments on qutrit and qubit registers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate benchmark graph sets")
    gen_sub = gen.add_subparsers(dest="mode", required=True)
    enum_p = gen_sub.add_parser("enum", help="enumerate small non-isomorphic 3-colorable graphs")
    enum_p.add_argument("--nodes", type=int, required=True)
    enum_p.add_argument("--edges", type=int, default=None, help="pin the exact edge count")
    enum_p.add_argument("--min-edges", type=int, default=None)
    enum_p.add_argument("--max-edges", type=int, default=None)
    enum_p.add_argument("--max", type=int, default=20, help="maximum number of graphs")
    enum_p.add_argument("--out", required=True)
    enum_p.set_defaults(func=cmd_gen)
    tri_p = gen_sub.add_parser("tripartite", help="random tripartite (3-colorable) graphs")
    tri_p.add_argument("--nodes", type=int, required=True)
    tri_p.add_argument("--connectivity", choices=["low", "high", "highest"], required=True)
    tri_p.add_argument("--count", type=int, default=1)
    tri_p.add_argument("--seed", type=int, default=0)
    tri_p.add_argument("--out", required=True)
    tri_p.set_defaults(func=cmd_gen)

    res = sub.add_parser("resources", help="entangling counts and depth per graph")
    res.add_argument("manifest")
    res.add_argument("--encoding", default="both", choices=["qutrit", "qubit", "both"])
    res.add_argument("--layers", type=int, default=3)
    res.add_argument("--alpha", type=float, default=2.0)
    res.add_argument("--out", required=True)
    res.set_defaults(func=cmd_resources)

    def add_train_flags(p):
        p.add_argument("--alpha", type=float, default=2.0)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--shots", type=int, default=None)
        p.add_argument("--lr", type=float, default=None)
        p.add_argument("--max-steps", type=int, default=None)
        p.add_argument("--min-steps", type=int, default=None)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--init-scale", type=float, default=None)
        p.add_argument("--gradient", choices=["paramshift", "finitediff"], default=None)

    tr = sub.add_parser("train", help="one training run on one graph")
    tr.add_argument("graph")
    tr.add_argument("--encoding", required=True, choices=["qutrit", "qubit"])
    tr.add_argument("--layers", type=int, default=3)
    add_train_flags(tr)
    tr.add_argument("--out", required=True)
    tr.set_defaults(func=cmd_train)

    sw = sub.add_parser("sweep", help="train across a manifest, encodings, layers, seeds")
    sw.add_argument("manifest")
    sw.add_argument("--encoding", default="both", choices=["qutrit", "qubit", "both"])
    sw.add_argument("--layers", default="3", help="comma-separated layer counts")
    sw.add_argument("--seeds", type=int, default=1, help="number of trials per graph")
    add_train_flags(sw)
    sw.add_argument("--out", required=True)
    sw.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
