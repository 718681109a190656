"""Command-line interface.

Subcommands: gen, sparsify, stream-online, stream-dynamic, sketch-build,
sketch-update, sketch-merge, sketch-recover, verify, bench. Global flags
--seed / --config / --eps / --report; the HYPERSPARSE_SEED environment
variable overrides --seed. Exit codes: 0 success, 1 verification failure,
2 usage error.

Reports are line-delimited JSON records with the full RunConfig embedded;
wall-time fields (*_seconds, wall_time) are excluded from determinism
guarantees.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bench as bench_mod
from .config import RunConfig
from .dynamic import DynamicOp, DynamicState
from .hypergraph import (Hypergraph, gen_online_lower_bound,
                         gen_random_hypergraph, parse_hypergraph,
                         parse_stream, serialize_hypergraph, serialize_stream)
from .online import OnlineState, decision_log_lines, online_finalize, \
    online_insert
from .recovery import hypergraph_sparsify_spanner
from .sketch import HypergraphSketch, sketch_construct
from .verify import verify_spectral
from .vs_sparsifier import SparsifierOutput, sparsify_static


def _load_config(args) -> RunConfig:
    if args.config:
        config = RunConfig.load_text(Path(args.config).read_text())
    else:
        config = RunConfig()
    env_seed = os.environ.get("HYPERSPARSE_SEED")
    if env_seed is not None:
        config.seed = int(env_seed)
    elif args.seed is not None:
        config.seed = args.seed
    if getattr(args, "eps", None) is not None:
        config.eps = args.eps
    return config


def _write_report(args, record: dict, config: RunConfig) -> None:
    if not getattr(args, "report", None):
        return
    record = dict(record)
    record["config"] = config.as_dict()
    with open(args.report, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record) + "\n")


def _write_sparsifier(path: str, base: Hypergraph,
                      out: SparsifierOutput) -> None:
    Path(path).write_text(serialize_hypergraph(out.to_hypergraph(base)))


def _cmd_gen(args) -> int:
    config = _load_config(args)
    if args.kind == "random":
        h = gen_random_hypergraph(args.n, args.m, args.arity_lo,
                                  args.arity_hi, seed=config.seed)
        Path(args.output).write_text(serialize_hypergraph(h))
    else:
        n, ops = gen_online_lower_bound(args.n, args.k, seed=config.seed)
        Path(args.output).write_text(serialize_stream(n, ops))
    return 0


def _cmd_sparsify(args) -> int:
    config = _load_config(args)
    h = parse_hypergraph(Path(args.input).read_text())
    if args.engine == "spanner":
        ell = None if config.spanner_ell < 0 else config.spanner_ell
        out = hypergraph_sparsify_spanner(h, config.eps,
                                          config.sparsify_config(), ell=ell)
    else:
        out = sparsify_static(h, config.eps, config.sparsify_config())
    _write_sparsifier(args.output, h, out)
    record = {"command": "sparsify", "engine": args.engine,
              "input": args.input, "n": h.n, "m": h.num_edges,
              "size": out.size, "levels": out.levels,
              "warnings": out.warnings}
    _write_report(args, record, config)
    return 0


def _cmd_stream_online(args) -> int:
    config = _load_config(args)
    n, ops = parse_stream(Path(args.input).read_text())
    inserts = [op for op in ops if op.insert]
    if len(inserts) != len(ops):
        print("error: online mode accepts insert-only streams",
              file=sys.stderr)
        return 2
    state = OnlineState(config.online_config(n, max(len(inserts), 2)))
    for op in inserts:
        online_insert(state, op.edge)
    out = online_finalize(state)
    lines = decision_log_lines(state.decisions)
    if args.output:
        Path(args.output).write_text("\n".join(lines) + "\n")
    else:
        for line in lines:
            print(line)
    if args.sparsifier:
        base = Hypergraph(n, (op.edge for op in inserts))
        _write_sparsifier(args.sparsifier, base, out)
    _write_report(args, {"command": "stream-online", "n": n,
                         "inserted": state.inserted, "kept": out.size,
                         **out.stats}, config)
    return 0


def _cmd_stream_dynamic(args) -> int:
    config = _load_config(args)
    n, ops = parse_stream(Path(args.input).read_text())
    capacity = max(2, sum(1 for op in ops if op.insert))
    state = DynamicState(config.dynamic_config(n, capacity))
    lines = []
    for op in ops:
        if op.insert:
            changes = state.update(DynamicOp(insert=op.edge))
        else:
            changes = state.update(DynamicOp(delete_id=op.delete_id))
        lines.extend(c.line() for c in changes)
    if args.output:
        Path(args.output).write_text("\n".join(lines) + "\n")
    else:
        for line in lines:
            print(line)
    if args.sparsifier:
        live = {}
        for op in ops:
            if op.insert:
                live[op.edge.id] = op.edge
            else:
                live.pop(op.delete_id, None)
        base = Hypergraph(n, live.values())
        _write_sparsifier(args.sparsifier, base, state.sparsifier())
    _write_report(args, {"command": "stream-dynamic", "n": n,
                         "ops": len(ops), "sparsifier": len(state.mirror)},
                  config)
    return 0


def _cmd_sketch_build(args) -> int:
    config = _load_config(args)
    h = parse_hypergraph(Path(args.input).read_text())
    sk = sketch_construct(h, config.eps, config.seed,
                          config.sketch_config(),
                          m_bound=args.m_bound, naive=args.naive)
    Path(args.output).write_bytes(sk.serialize())
    _write_report(args, {"command": "sketch-build", "n": h.n,
                         "m": h.num_edges, **sk.bit_size()}, config)
    return 0


def _cmd_sketch_update(args) -> int:
    config = _load_config(args)
    sk = HypergraphSketch.deserialize(Path(args.sketch).read_bytes())
    _, ops = parse_stream(Path(args.stream).read_text())
    id_offset = args.id_offset
    for op in ops:
        if op.insert:
            e = op.edge
            if id_offset:
                from .hypergraph import Hyperedge
                e = Hyperedge(e.id + id_offset, e.vertices, e.weight)
            sk.insert(e)
        else:
            sk.delete(op.delete_id + id_offset)
    out_path = args.output or args.sketch
    Path(out_path).write_bytes(sk.serialize())
    _write_report(args, {"command": "sketch-update", "ops": len(ops),
                         **sk.bit_size()}, config)
    return 0


def _cmd_sketch_merge(args) -> int:
    config = _load_config(args)
    a = HypergraphSketch.deserialize(Path(args.a).read_bytes())
    b = HypergraphSketch.deserialize(Path(args.b).read_bytes())
    a.merge(b)
    Path(args.output).write_bytes(a.serialize())
    _write_report(args, {"command": "sketch-merge", **a.bit_size()}, config)
    return 0


def _cmd_sketch_recover(args) -> int:
    config = _load_config(args)
    sk = HypergraphSketch.deserialize(Path(args.sketch).read_bytes())
    out, flags = sk.recover()
    contents = {eid: key for eid, key in sk.directory.content_of_id.items()}
    weight_map = out.weight_map()
    from .hypergraph import Hyperedge
    edges = [Hyperedge(eid, contents[eid][0], weight_map[eid])
             for eid in sorted(weight_map)]
    Path(args.output).write_text(serialize_hypergraph(
        Hypergraph(sk.n, edges)))
    _write_report(args, {"command": "sketch-recover", "size": out.size,
                         "decode_flags": len(flags)}, config)
    return 0


def _cmd_verify(args) -> int:
    config = _load_config(args)
    h = parse_hypergraph(Path(args.reference).read_text())
    h_sparse = parse_hypergraph(Path(args.candidate).read_text())
    rep = verify_spectral(h, h_sparse, config.eps,
                          trials=config.verify_trials, seed=config.seed)
    record = rep.to_record()
    record["command"] = "verify"
    _write_report(args, record, config)
    print(f"max_rel_error={rep.max_rel_error:.6g} tolerance={config.eps} "
          f"passed={rep.passed}")
    return 0 if rep.passed else 1


def _cmd_bench(args) -> int:
    config = _load_config(args)
    if args.mode == "kernel":
        record = bench_mod.bench_kernel(n=args.n, seed=config.seed)
    elif args.mode == "online":
        record = bench_mod.bench_online(args.n, args.m, config.eps, config)
    else:
        record = bench_mod.bench_static(args.n, args.m, config.eps, config,
                                        engine=args.engine)
    record["command"] = "bench"
    _write_report(args, record, config)
    print(json.dumps(record))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypersparse",
        description="Spectral hypergraph sparsification toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="master seed (HYPERSPARSE_SEED overrides)")
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--eps", type=float, default=None)
    common.add_argument("--report", help="append JSON report lines here")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("gen", help="generate instances")
    p.add_argument("--kind", choices=("random", "lower-bound"),
                   default="random")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=100)
    p.add_argument("--arity-lo", type=int, default=3)
    p.add_argument("--arity-hi", type=int, default=6)
    p.add_argument("--k", type=int, default=2, help="lower-bound rounds")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_gen)

    p = add_parser("sparsify", help="static sparsification")
    p.add_argument("input")
    p.add_argument("--engine", choices=("vs", "spanner"), default="vs")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_sparsify)

    p = add_parser("stream-online", help="online insert-only mode")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="decision log (default stdout)")
    p.add_argument("--sparsifier", help="also write the kept hypergraph")
    p.set_defaults(func=_cmd_stream_online)

    p = add_parser("stream-dynamic", help="fully dynamic mode")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="change log (default stdout)")
    p.add_argument("--sparsifier", help="also write the maintained sparsifier")
    p.set_defaults(func=_cmd_stream_dynamic)

    p = add_parser("sketch-build", help="build a linear sketch")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--m-bound", type=int, default=None)
    p.add_argument("--naive", action="store_true")
    p.set_defaults(func=_cmd_sketch_build)

    p = add_parser("sketch-update", help="apply a stream to a sketch")
    p.add_argument("sketch")
    p.add_argument("stream")
    p.add_argument("-o", "--output")
    p.add_argument("--id-offset", type=int, default=0,
                   help="offset applied to the stream's edge ids")
    p.set_defaults(func=_cmd_sketch_update)

    p = add_parser("sketch-merge", help="cell-wise sum of two sketches")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_sketch_merge)

    p = add_parser("sketch-recover", help="recover a sparsifier")
    p.add_argument("sketch")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_sketch_recover)

    p = add_parser("verify", help="spectral battery comparison")
    p.add_argument("reference")
    p.add_argument("candidate")
    p.set_defaults(func=_cmd_verify)

    p = add_parser("bench", help="benchmarks")
    p.add_argument("--mode", choices=("static", "online", "kernel"),
                   default="static")
    p.add_argument("--engine", choices=("vs", "spanner"), default="vs")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--m", type=int, default=5000)
    p.set_defaults(func=_cmd_bench)

    return parser


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
