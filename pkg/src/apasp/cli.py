"""Command-line entry point: gen, run, validate, oracle, mpmm, bench.

Exit codes: 0 success, 1 guarantee violation, 2 usage error, 3 I/O error.

Every file output gets ``<out>.manifest.json`` holding the subcommand, all
flags, the seed and content hashes. The manifest is byte-stable across
repeated sequential runs. Wall-clock times go to ``<out>.timings.json``
instead, so that they never disturb that stability.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import statistics
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import graph as gr
from .additive import plus2w1, plus2wi
from .guarantee import KINDS, MixedGuarantee, guarantee_for
from .minplus import ampmm, mpmm_exact
from .multiplicative import FrameworkConfig, frac73, framework
from .near_additive import near_additive, tradeoff
from .sssp import DistanceMatrix
from .validate import exact_apsp, validate

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
ALGORITHMS = ("plus2w1", "plus2wi", "frac73", "framework", "near-additive", "tradeoff")


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class StageClock:
    """Accumulates wall-clock seconds per named stage."""

    def __init__(self):
        self.stages: dict[str, float] = {}

    @contextmanager
    def stage(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.stages[name] = self.stages.get(name, 0.0) + time.perf_counter() - start

    @property
    def total(self) -> float:
        return sum(self.stages.values())


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_manifest(out: Path, subcommand: str, args: argparse.Namespace, extra: dict | None = None,
                   clock: StageClock | None = None) -> None:
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}
    manifest = {
        "subcommand": subcommand,
        "flags": {k: str(v) if isinstance(v, Path) else v for k, v in flags.items()},
        "seed": getattr(args, "seed", None),
        "output": str(out),
        "output_sha256": _sha256(out),
    }
    if getattr(args, "input", None) is not None:
        manifest["input"] = str(args.input)
        manifest["input_sha256"] = _sha256(Path(args.input))
    manifest.update(extra or {})
    Path(f"{out}.manifest.json").write_text(_dump_json(manifest))
    if clock is not None:
        Path(f"{out}.timings.json").write_text(
            _dump_json({"stages_s": clock.stages, "total_s": clock.total}))


def _load_graph(path) -> gr.Graph:
    try:
        return gr.load_graph(path)
    except (OSError, gr.GraphFormatError) as exc:
        raise InputError(f"cannot read graph {path}: {exc}") from exc


def _load_matrix(path) -> DistanceMatrix:
    try:
        return DistanceMatrix.load(path)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read matrix {path}: {exc}") from exc


def _write(path: Path, write) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        write(path)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


def compute(g: gr.Graph, args: argparse.Namespace) -> tuple[DistanceMatrix, MixedGuarantee]:
    """Run ``args.algo`` and return its matrix with the guarantee it promises."""
    algo, eps = args.algo, args.eps
    if eps is not None and eps > 0 and not g.is_integer_weighted():
        raise UsageError("--eps > 0 needs integer edge weights")
    if eps is not None and eps < 0:
        raise UsageError("--eps must be nonnegative")
    eps = 0.0 if eps is None else eps
    if algo == "plus2w1":
        kw = {k: v for k, v in (("beta", args.beta), ("gamma", args.gamma)) if v is not None}
        return plus2w1(g, parallel=args.parallel, **kw), guarantee_for(algo)
    if algo == "plus2wi":
        return plus2wi(g, args.k, beta=args.beta, parallel=args.parallel), guarantee_for(algo, k=args.k)
    if algo == "frac73":
        kw = {k: v for k, v in (("beta", args.beta), ("gamma", args.gamma)) if v is not None}
        d = frac73(g, eps, backend=args.backend, parallel=args.parallel, **kw)
        return d, guarantee_for(algo, eps=eps)
    if algo == "framework":
        betas = None if args.beta is None else (args.beta,) * (args.ell + 1)
        cfg = FrameworkConfig(args.ell, eps, betas, args.backend, args.parallel)
        return framework(g, cfg), guarantee_for(algo, ell=args.ell, eps=eps)
    if algo == "near-additive":
        if eps <= 0:
            raise UsageError("near-additive needs --eps > 0")
        kw = {k: v for k, v in (("beta", args.beta), ("gamma", args.gamma)) if v is not None}
        d = near_additive(g, eps, backend=args.backend, parallel=args.parallel, **kw)
        return d, guarantee_for(algo, eps=eps)
    if algo == "tradeoff":
        return tradeoff(g, args.k, parallel=args.parallel), guarantee_for(algo, k=args.k, a=args.a, b=args.b)
    raise UsageError(f"unknown algorithm {algo!r}")


def _guarantee_dict(gs: MixedGuarantee) -> dict:
    return {"alpha": gs.alpha, "additive": gs.label(), "provenance": gs.provenance}


def cmd_gen(args) -> int:
    clock = StageClock()
    with clock.stage("generate"):
        try:
            if args.model == "gnp":
                g = gr.gen_random(args.n, args.p, args.wmin, args.wmax, args.seed)
            else:
                g = gr.gen_grid(args.rows, args.cols, args.wmin, args.wmax, args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    with clock.stage("write"):
        _write(args.output, lambda p: gr.save_graph(g, p))
    write_manifest(args.output, "gen", args, {"n": g.n, "m": g.m}, clock)
    return EXIT_OK


def cmd_run(args) -> int:
    clock = StageClock()
    with clock.stage("load"):
        g = _load_graph(args.input)
    with clock.stage("compute"):
        try:
            d, gs = compute(g, args)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    with clock.stage("write"):
        _write(args.output, d.save)
    write_manifest(args.output, "run", args, {"guarantee": _guarantee_dict(gs)}, clock)
    return EXIT_OK


def _guarantee_from_flags(args) -> MixedGuarantee:
    if args.algo is not None:
        return guarantee_for(args.algo, k=args.k, ell=args.ell, eps=args.eps or 0.0, a=args.a, b=args.b)
    if args.alpha is None:
        raise UsageError("give --algo or --alpha")
    try:
        return MixedGuarantee(args.alpha, args.additive, args.coef, args.terms, "explicit")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_validate(args) -> int:
    g = _load_graph(args.graph)
    d = _load_matrix(args.matrix)
    if d.n != g.n:
        raise InputError(f"matrix has n={d.n} but graph has n={g.n}")
    gs = _guarantee_from_flags(args)
    report = validate(g, d, gs, algorithm=args.algo, seed=args.seed)
    out = report.to_dict()
    out.pop("ms")
    text = _dump_json(out)
    if args.output is not None:
        _write(args.output, lambda p: p.write_text(text))
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_oracle(args) -> int:
    clock = StageClock()
    with clock.stage("load"):
        g = _load_graph(args.input)
    with clock.stage("compute"):
        d = exact_apsp(g).matrix()
    with clock.stage("write"):
        _write(args.output, d.save)
    write_manifest(args.output, "oracle", args, {"guarantee": _guarantee_dict(guarantee_for("exact"))}, clock)
    return EXIT_OK


def random_matrix(rng: np.random.Generator, rows: int, cols: int, wmax: int) -> np.ndarray:
    return rng.integers(0, wmax + 1, size=(rows, cols)).astype(np.float64)


def cmd_mpmm(args) -> int:
    if args.size < 1 or args.eps <= 0:
        raise UsageError("need --size >= 1 and --eps > 0")
    rng = np.random.default_rng(args.seed)
    exact_s, approx_s, worst, ok = [], [], 1.0, True
    for _ in range(args.repeats):
        a = random_matrix(rng, args.size, args.size, args.wmax)
        b = random_matrix(rng, args.size, args.size, args.wmax)
        t0 = time.perf_counter()
        c = mpmm_exact(a, b).values
        t1 = time.perf_counter()
        ct = ampmm(a, b, args.eps).values
        t2 = time.perf_counter()
        exact_s.append(t1 - t0)
        approx_s.append(t2 - t1)
        ok &= bool(np.all(c <= ct) and np.all(ct <= (1 + args.eps) * c))
        pos = c > 0
        if pos.any():
            worst = max(worst, float((ct[pos] / c[pos]).max()))
    report = {"size": args.size, "eps": args.eps, "repeats": args.repeats, "seed": args.seed,
              "sandwich_holds": ok, "max_ratio": worst,
              "exact_s": _summary(exact_s), "approx_s": _summary(approx_s)}
    sys.stdout.write(_dump_json(report))
    return EXIT_OK if ok else EXIT_VIOLATION


def _summary(xs: list[float]) -> dict:
    return {"mean": statistics.fmean(xs), "stdev": statistics.stdev(xs) if len(xs) > 1 else 0.0,
            "min": min(xs), "max": max(xs)}


def cmd_bench(args) -> int:
    try:
        sizes = [int(x) for x in args.sizes.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad --sizes: {args.sizes}") from exc
    if any(n < 2 for n in sizes) or args.repeats < 1:
        raise UsageError("sizes must be >= 2 and --repeats >= 1")
    rows, failed = [], False
    for n in sizes:
        totals, stages = [], {}
        for rep in range(args.repeats):
            clock = StageClock()
            with clock.stage("generate"):
                g = gr.gen_random(n, args.p, args.wmin, args.wmax, args.seed + rep)
            with clock.stage("compute"):
                d, gs = compute(g, args)
            if args.validate:
                with clock.stage("validate"):
                    failed |= not validate(g, d, gs).passed
            totals.append(clock.total)
            for name, s in clock.stages.items():
                stages.setdefault(name, []).append(s)
        row = {"algo": args.algo, "n": n, "repeats": args.repeats, "total_mean_s": statistics.fmean(totals),
               "total_stdev_s": statistics.stdev(totals) if len(totals) > 1 else 0.0}
        row.update({f"{k}_mean_s": statistics.fmean(v) for k, v in stages.items()})
        rows.append(row)
    if args.format == "json":
        text = _dump_json(rows)
    else:
        buf = io.StringIO()
        fields = list(dict.fromkeys(k for r in rows for k in r))
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    if args.output is not None:
        _write(args.output, lambda p: p.write_text(text))
    else:
        sys.stdout.write(text)
    return EXIT_VIOLATION if failed else EXIT_OK


def _add_algo_flags(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--algo", choices=ALGORITHMS, required=required)
    p.add_argument("--k", type=int, default=1, help="heavy-edge count parameter (plus2wi, tradeoff)")
    p.add_argument("--ell", type=int, default=1, help="framework level parameter")
    p.add_argument("--eps", type=float, default=None, help="approximation slack; > 0 needs integer weights")
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--a", type=float, default=1.0, help="trade-off weight of the multiplicative bound")
    p.add_argument("--b", type=float, default=1.0, help="trade-off weight of the additive bound")
    p.add_argument("--backend", choices=("exact", "scaled"), default="exact")
    p.add_argument("--parallel", action="store_true", help="snapshot-parallel level sweeps (APASP_THREADS caps workers)")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="apasp", description="Approximate all-pairs shortest paths.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random graph")
    p.add_argument("--model", choices=("gnp", "grid"), default="gnp")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--p", type=float, default=0.15)
    p.add_argument("--rows", type=int, default=8)
    p.add_argument("--cols", type=int, default=8)
    p.add_argument("--wmin", type=int, default=1)
    p.add_argument("--wmax", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", type=Path, required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="compute approximate distances")
    _add_algo_flags(p, required=True)
    p.add_argument("-i", "--input", type=Path, required=True)
    p.add_argument("-o", "--output", type=Path, required=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("validate", help="check a matrix against the exact distances")
    _add_algo_flags(p, required=False)
    p.add_argument("--alpha", type=float, default=None, help="explicit multiplicative factor")
    p.add_argument("--additive", choices=KINDS, default="none")
    p.add_argument("--coef", type=float, default=0.0)
    p.add_argument("--terms", type=int, default=0)
    p.add_argument("-g", "--graph", type=Path, required=True)
    p.add_argument("-d", "--matrix", type=Path, required=True)
    p.add_argument("-o", "--output", type=Path, default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("oracle", help="exact all-pairs distances")
    p.add_argument("-i", "--input", type=Path, required=True)
    p.add_argument("-o", "--output", type=Path, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("mpmm", help="time exact vs approximate min-plus products")
    p.add_argument("--size", type=int, default=64)
    p.add_argument("--wmax", type=int, default=100)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_mpmm)

    p = sub.add_parser("bench", help="per-stage timings over a size sweep")
    _add_algo_flags(p, required=False)
    p.set_defaults(algo="plus2w1")
    p.add_argument("--sizes", default="32,64,128")
    p.add_argument("--p", type=float, default=0.15)
    p.add_argument("--wmin", type=int, default=1)
    p.add_argument("--wmax", type=int, default=100)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--validate", action="store_true", help="also check each output against the oracle")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("-o", "--output", type=Path, default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"apasp {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"apasp {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
