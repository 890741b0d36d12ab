"""Command-line interface: ``hpfold solve|bench|enumerate|export-ilp|render|verify``."""
import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import bench, ilp_export, oracle, render
from .galsts import GaParams, run
from .hp_model import (
    HpSequence,
    SequenceParseError,
    decode,
    energy,
    parse_sequence,
    read_sequence_file,
)


class CliError(Exception):
    pass


def resolve_sequence(spec, seq_file=None):
    """An instance id (built-in or from ``seq_file``) or a compact HP string."""
    table = read_sequence_file(seq_file) if seq_file else bench.load_instances()
    if spec in table:
        return table[spec]
    if spec.isdigit():
        raise CliError(f"unknown sequence id {spec!r}")
    try:
        return parse_sequence(spec, name=spec)
    except SequenceParseError as exc:
        raise CliError(f"bad sequence {spec!r}: {exc}") from None


def _default_seed():
    env = os.environ.get("HPFOLD_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise CliError(f"HPFOLD_SEED must be an integer, got {env!r}") from None


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _add_ga_flags(p):
    p.add_argument("--pop", type=int, default=100, help="population size m")
    p.add_argument("--pm", type=float, default=0.8, help="local search probability")
    p.add_argument("--gens", type=int, default=500, help="generation cap")
    p.add_argument("--kmax", type=_positive_int, help="reproduction loop budget (default n)")
    p.add_argument("--ls-budget", type=_positive_int, help="local search iterations (default 200n)")
    p.add_argument("--pc", type=float, help="accepted for compatibility; ignored")
    p.add_argument("--seed", type=int, help="RNG seed (default $HPFOLD_SEED or 0)")
    p.add_argument("--time-limit", type=float, help="wall-clock cap per run, seconds")
    p.add_argument("--target", type=int, help="stop a run once this energy is reached")
    p.add_argument("--tie-break", choices=["parents", "offspring"], default="parents",
                   help="who survives replacement on equal energy")


def _params(args):
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        return GaParams(
            m=args.pop, p_m=args.pm, reproduction_budget=args.kmax,
            ls_budget=args.ls_budget, max_generations=args.gens,
            time_limit=args.time_limit, seed=seed, target_energy=args.target,
            p_c=args.pc, tie_break=args.tie_break,
        )
    except ValueError as exc:
        raise CliError(str(exc)) from None


def cmd_solve(args):
    seq = resolve_sequence(args.seq, args.seq_file)
    record = run(seq, _params(args), seq_id=seq.name)
    print(f"best energy: {record.best_energy}")
    print(f"moves: {','.join(map(str, record.best_moves))}")
    print(f"generations: {record.generations}  time: {record.wall_ms / 1000:.1f}s")
    line = json.dumps(record.to_dict(), sort_keys=True)
    if args.out:
        with open(args.out, "a") as fh:
            fh.write(line + "\n")
    else:
        print(line)
    return 0


def cmd_bench(args):
    instances = read_sequence_file(args.seq_file) if args.seq_file else bench.load_instances()
    if args.ids:
        ids = args.ids.split(",")
        missing = [i for i in ids if i not in instances]
        if missing:
            raise CliError(f"unknown sequence ids {missing}")
    elif args.suite == "table2":
        ids = list(instances)
    params = _params(args)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    with open(out_dir / "runs.jsonl", "a") as fh:
        _, summaries = bench.run_suite(
            ids, params, args.runs, jobs=args.jobs, instances=instances,
            on_records=lambda recs: bench.write_records(recs, fh),
        )
    table = bench.summary_table(summaries, params)
    (out_dir / "summary.txt").write_text(table)
    (out_dir / "summary.jsonl").write_text(bench.summary_jsonl(summaries))
    print(table, end="")
    print(f"{time.perf_counter() - t0:.1f}s; results in {out_dir}/")
    return 0


def cmd_enumerate(args):
    seq = resolve_sequence(args.seq, args.seq_file)
    try:
        res = oracle.enumerate_optimal(seq, symmetry_reduction=not args.no_symmetry, cap=args.cap)
    except oracle.CapExceeded as exc:
        raise CliError(str(exc)) from None
    print(f"sequence: {seq.residues} (n={res.n})")
    print(f"optimum: {res.optimal_energy}")
    print(f"optimal conformations: {res.optimal_count}")
    print(f"valid conformations: {res.total_valid}")
    if res.example_moves:
        print(f"example: {','.join(map(str, res.example_moves))}")
    return 0


def cmd_export_ilp(args):
    seq = resolve_sequence(args.seq, args.seq_file)
    literal = args.paper_faithful
    try:
        model = ilp_export.build_model(
            seq, repair=not literal, neighborhood="literal" if literal else "triangular",
            max_products=args.max_products,
        )
    except ValueError as exc:
        raise CliError(str(exc)) from None
    out = args.out or f"hpfold_{seq.name or 'model'}.{args.format}"
    with open(out, "w") as fh:
        ilp_export.write_model(model, args.format, fh)
    print(f"wrote {out}")
    print(f"variables: {model.num_variables} ({model.num_y} placement, {model.num_w} product)")
    print(f"constraints: {model.num_constraints}")
    return 0


def _moves_from_args(args):
    if args.moves:
        return tuple(int(x) for x in args.moves.split(","))
    records = bench.read_records(args.record)
    if not records:
        raise CliError(f"no records in {args.record}")
    return records[args.index].best_moves


def cmd_render(args):
    if args.record and not args.seq:
        rec = bench.read_records(args.record)[args.index]
        seq = HpSequence(rec.sequence, rec.sequence_id)
    else:
        if not args.seq:
            raise CliError("--seq is required unless --record is given")
        seq = resolve_sequence(args.seq, args.seq_file)
    try:
        conf = decode(_moves_from_args(args), len(seq))
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if args.format == "svg":
        text = render.render_svg(seq, conf, title=f"{seq.residues} E={energy(seq, conf)}")
    else:
        text = render.render_ascii(seq, conf)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return 0


def cmd_verify(args):
    bad = 0
    for k, rec in enumerate(bench.read_records(args.record)):
        try:
            e = bench.check_record(rec)
        except ValueError as exc:
            print(f"record {k} ({rec.sequence_id}, seed {rec.seed}): invalid: {exc}")
            bad += 1
            continue
        status = "ok" if e == rec.best_energy else "MISMATCH"
        if e != rec.best_energy:
            bad += 1
        print(f"record {k} ({rec.sequence_id}, seed {rec.seed}): recorded {rec.best_energy}, "
              f"recomputed {e}: {status}")
    return 1 if bad else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hpfold", description="HP protein folding on the 2D triangular lattice"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def seq_flags(p, required=True):
        p.add_argument("--seq", required=required, help="instance id or compact HP string")
        p.add_argument("--seq-file", help="id<TAB>sequence file used to resolve ids")

    p = sub.add_parser("solve", help="run the genetic search once")
    seq_flags(p)
    _add_ga_flags(p)
    p.add_argument("--out", help="append the run record (JSONL) to this file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="seeded multi-run benchmark")
    p.add_argument("--suite", choices=["table2"], default="table2")
    p.add_argument("--ids", help="comma-separated subset of instance ids")
    p.add_argument("--seq-file", help="custom instance file")
    p.add_argument("--runs", type=_positive_int, default=30)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--out-dir", default="bench_out")
    _add_ga_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("enumerate", help="exact optimum by exhaustive search")
    seq_flags(p)
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    p.add_argument("--no-symmetry", action="store_true", help="enumerate all rotations and mirrors")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("export-ilp", help="write the 0-1 program as LP or MPS text")
    seq_flags(p)
    p.add_argument("--format", choices=["lp", "mps"], default="lp")
    p.add_argument("--paper-faithful", action="store_true",
                   help="literal model: published neighbour offsets, no one-cell-per-residue rows")
    p.add_argument("--max-products", type=int, default=ilp_export.MAX_PRODUCTS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_ilp)

    p = sub.add_parser("render", help="draw a conformation")
    seq_flags(p, required=False)
    p.add_argument("--moves", help="comma-separated direction codes")
    p.add_argument("--record", help="JSONL run records; draws the best conformation")
    p.add_argument("--index", type=int, default=0, help="record index in --record")
    p.add_argument("--format", choices=["svg", "ascii"], default="svg")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="re-evaluate stored run records")
    p.add_argument("--record", required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "render" and not (args.moves or args.record):
        parser.error("render needs --moves or --record")
    try:
        return args.func(args)
    except (CliError, FileNotFoundError) as exc:
        print(f"hpfold: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
