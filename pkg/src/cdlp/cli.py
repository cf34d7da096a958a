"""Command-line front end.

Exit codes: 0 success, 1 input/parse error, 2 contract or degenerate-stage
error, 3 experiment finished with failed rows.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from .benchmarks import (
    RNG_ALGORITHM,
    GnConfig,
    LfrConfig,
    generate_gn,
    generate_lfr_with_info,
    realized_mixing,
)
from .community import fast_greedy
from .errors import CdlpError, ContractError, GenerationError, InputError
from .experiment import ExperimentSpec, run_experiment, write_outputs
from .io import read_communities, read_edge_list, write_communities, write_edge_list
from .pipeline import PipelineConfig, run_baseline2_cn, run_cdlp

EXIT_OK, EXIT_INPUT, EXIT_CONTRACT, EXIT_PARTIAL = 0, 1, 2, 3


def _stats(values) -> dict:
    arr = np.asarray(values, dtype=float)
    return {"mean": float(arr.mean()), "min": float(arr.min()), "max": float(arr.max())}


def cmd_generate(args) -> int:
    if args.family == "gn":
        if args.z_out is None:
            raise InputError("gn needs --z-out")
        extra = {k: v for k, v in (("n", args.n), ("groups", args.groups),
                                   ("group_size", args.group_size),
                                   ("avg_degree", args.avg_degree)) if v is not None}
        cfg = GnConfig(z_out=args.z_out, **extra)
        g, truth = generate_gn(cfg, args.seed)
        derived = {}
    else:
        if args.mu is None:
            raise InputError("lfr needs --mu")
        extra = {k: v for k, v in (("n", args.n), ("k_avg", args.k_avg),
                                   ("k_max", args.k_max), ("gamma", args.gamma),
                                   ("beta", args.beta)) if v is not None}
        cfg = LfrConfig(mu=args.mu, **extra)
        g, truth, info = generate_lfr_with_info(cfg, args.seed)
        derived = info.to_dict()

    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    meta = {
        "family": args.family.upper(),
        "config": asdict(cfg),
        "seed": args.seed,
        "rng": RNG_ALGORITHM,
        "nodes": g.node_count,
        "edges": g.edge_count,
        "communities": truth.community_count,
        "realized_mu": realized_mixing(g, truth) if g.edge_count else 0.0,
        "degree": _stats(g.degrees()),
        "derived": derived,
    }
    write_edge_list(f"{prefix}.edges", g)
    write_communities(f"{prefix}.communities", truth)
    Path(f"{prefix}.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    print(f"wrote {prefix}.edges ({g.edge_count} edges), {prefix}.communities "
          f"({truth.community_count} communities), {prefix}.json")
    return EXIT_OK


def cmd_detect(args) -> int:
    lg = read_edge_list(args.graph)
    part, q, _ = fast_greedy(lg.graph)
    if args.out:
        write_communities(args.out, part, lg.labels)
    print(f"communities = {part.community_count}")
    print(f"Q = {q:.6f}")
    return EXIT_OK


def _pipeline(args, runner) -> int:
    lg = read_edge_list(args.graph)
    truth = read_communities(args.truth, lg) if args.truth else None
    cfg = PipelineConfig(args.p_d, args.p_a, args.include_raw, args.selection)
    result = runner(lg.graph, cfg, truth)
    print("stage  edges  added  removed  communities  Q" + ("  NMI" if truth else ""))
    for rec in result.stages:
        mark = " *" if rec.stage == result.chosen_stage else ""
        line = (f"{rec.stage:<5}  {rec.graph.edge_count:>5}  {len(rec.added):>5}  "
                f"{len(rec.removed):>7}  {rec.partition.community_count:>11}  {rec.q:.6f}")
        if rec.nmi is not None:
            line += f"  {rec.nmi:.6f}"
        print(line + mark)
    print(f"chosen = {result.chosen_stage}")
    if args.out:
        write_communities(args.out, result.chosen_partition, lg.labels)
    print(f"communities = {result.chosen_partition.community_count}")
    print(f"Q = {result.chosen_q:.6f}")
    return EXIT_OK


def cmd_cdlp(args) -> int:
    return _pipeline(args, run_cdlp)


def cmd_baseline2(args) -> int:
    return _pipeline(args, run_baseline2_cn)


def cmd_experiment(args) -> int:
    spec = ExperimentSpec.load(args.spec)
    rows = run_experiment(spec, workers=args.workers)
    paths = write_outputs(args.out, rows)
    failed = sum(r.status != "ok" for r in rows)
    print(f"{len(rows)} rows ({failed} failed) -> {paths['results']}, {paths['summary']}")
    return EXIT_PARTIAL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cdlp",
        description="Community detection with link prediction on benchmark networks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a GN or LFR benchmark instance")
    gen.add_argument("family", choices=["gn", "lfr"])
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output prefix (.edges/.communities/.json)")
    gen.add_argument("--z-out", type=float, help="GN expected external degree")
    gen.add_argument("--mu", type=float, help="LFR mixing fraction")
    gen.add_argument("--n", type=int)
    gen.add_argument("--groups", type=int)
    gen.add_argument("--group-size", type=int)
    gen.add_argument("--avg-degree", type=float)
    gen.add_argument("--k-avg", type=float)
    gen.add_argument("--k-max", type=int)
    gen.add_argument("--gamma", type=float)
    gen.add_argument("--beta", type=float)
    gen.set_defaults(func=cmd_generate)

    det = sub.add_parser("detect", help="fast-greedy communities of an edge list")
    det.add_argument("graph")
    det.add_argument("--out", help="community file to write")
    det.set_defaults(func=cmd_detect)

    for name, func, text in (("cdlp", cmd_cdlp, "D/A/D link-prediction pipeline"),
                             ("baseline2", cmd_baseline2, "same pipeline ranked by common neighbours")):
        p = sub.add_parser(name, help=text)
        p.add_argument("graph")
        p.add_argument("--p-d", type=float, default=0.05, help="removal fraction per D stage")
        p.add_argument("--p-a", type=float, default=0.05, help="addition fraction")
        p.add_argument("--include-raw", action="store_true",
                       help="let the unedited graph compete in stage selection")
        p.add_argument("--selection", choices=["modularity", "nmi"], default="modularity")
        p.add_argument("--truth", help="ground-truth community file (required for --selection nmi)")
        p.add_argument("--out", help="community file to write")
        p.set_defaults(func=func)

    exp = sub.add_parser("experiment", help="run a benchmark sweep from a JSON spec")
    exp.add_argument("spec")
    exp.add_argument("--out", required=True, help="output directory")
    exp.add_argument("--workers", type=int, help="override the spec's worker count")
    exp.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except GenerationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CdlpError as exc:  # pragma: no cover - every subclass handled above
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
