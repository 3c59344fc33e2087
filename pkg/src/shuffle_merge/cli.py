"""Command-line front end.

Subcommands: merge, bench, phist, prob, mc-check, drift, selftest. Report
subcommands write CSV files (and, with --plot, SVG figures) into --out.
Exit codes: 0 success, 1 contract or verification failure, 2 usage error.
Worker fan-out for bench/phist/drift honors SHUFFLE_MERGE_THREADS
(0 or unset = auto).
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional, Tuple

from . import experiments, order_stats
from .errors import ContractViolation, VerificationError
from .merge_engine import right_going_merge, tag_halves, verify_sorted_stable
from .oracle import lemma_ratio_exact, stable_merge_reference
from .order_stats import SampleModel, lemma1_prob, lemma2_prob, min_cdf, order_stat_cdf, prob_cross

DEFAULT_SIZES = (500, 1000, 2000, 4000, 8000, 16000, 20000)
DEFAULT_SEED = 42


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Validated options of one CLI invocation."""

    subcommand: str
    sizes: Tuple[int, ...] = ()
    trials: int = 1
    seed: int = DEFAULT_SEED
    out_dir: Optional[str] = None
    plot: bool = False
    include_tail_rotation: bool = True

    def __post_init__(self):
        if self.trials < 1:
            raise UsageError("--trials must be >= 1")
        for n in self.sizes:
            if n % 2 != 0 or n < 2:
                raise UsageError(f"--sizes entries must be even and >= 2, got {n}")
        if self.out_dir is not None:
            try:
                os.makedirs(self.out_dir, exist_ok=True)
            except OSError as exc:
                raise UsageError(f"cannot create output directory {self.out_dir}: {exc}")
            if not os.access(self.out_dir, os.W_OK):
                raise UsageError(f"output directory {self.out_dir} is not writable")


def _int_list(text: str):
    try:
        return tuple(int(part) for part in text.split(",") if part != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shuffle-merge",
        description="Instrumented perfect-shuffle in-place stable merge and its experiments.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("merge", help="stably merge two sorted integer lists")
    p.add_argument("left", nargs="?", help="file with one integer per line")
    p.add_argument("right", nargs="?", help="file with one integer per line")

    def report_args(p, sizes, trials):
        p.add_argument("--sizes", type=_int_list, default=sizes)
        p.add_argument("--trials", type=int, default=trials)
        p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
        p.add_argument("--out", default="results")
        p.add_argument("--plot", action="store_true")

    p = sub.add_parser("bench", help="move/comparison counts per (N, trial)")
    report_args(p, DEFAULT_SIZES, 10)

    p = sub.add_parser("phist", help="P-segment length histograms")
    report_args(p, DEFAULT_SIZES, 10)
    p.add_argument("--include-tail-rotation", action=argparse.BooleanOptionalAction, default=True)

    p = sub.add_parser("prob", help="order-statistic cross-probability table")
    p.add_argument("--sizes", type=_int_list, default=(50, 100, 200, 400))
    p.add_argument("--k", type=_int_list, default=(0, 1, 2, 4, 8))
    p.add_argument("--rank", default="last", help="'last', 'half', or an explicit rank")
    p.add_argument("--out", default="results")
    p.add_argument("--plot", action="store_true")

    p = sub.add_parser("mc-check", help="validate prob_cross against Monte Carlo")
    p.add_argument("--sizes", type=_int_list, default=(50, 200))
    p.add_argument("--k", type=_int_list, default=(0, 1, 2, 4))
    p.add_argument("--n", type=int, default=None, help="explicit rank (default: --rank rule)")
    p.add_argument("--rank", default="last")
    p.add_argument("--samples", type=int, default=200000)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)

    p = sub.add_parser("drift", help="P-length distribution by progress decile")
    report_args(p, (10000,), 20)
    p.add_argument("--include-tail-rotation", action=argparse.BooleanOptionalAction, default=True)

    sub.add_parser("selftest", help="run the oracle-equivalence and invariant suites")
    return parser


def _read_key_lines(lines, source):
    keys = []
    for lineno, raw in enumerate(lines, 1):
        text = raw.strip()
        if not text:
            continue
        try:
            keys.append(int(text))
        except ValueError:
            raise UsageError(f"malformed integer {text!r} at {source} line {lineno}")
    return keys


def _cmd_merge(args) -> int:
    if args.left and args.right:
        with open(args.left) as fh:
            left = _read_key_lines(fh, args.left)
        with open(args.right) as fh:
            right = _read_key_lines(fh, args.right)
    elif args.left or args.right:
        raise UsageError("merge needs either two files or none (stdin)")
    else:
        lines = sys.stdin.read().splitlines()
        if "" not in lines:
            raise UsageError("stdin input must separate the two lists with a blank line")
        split = lines.index("")
        left = _read_key_lines(lines[:split], "stdin")
        right = _read_key_lines(lines[split:], "stdin")
    if len(left) != len(right):
        raise ContractViolation(
            f"lists must have equal length, got {len(left)} and {len(right)}")
    merged = tag_halves(left, right)
    right_going_merge(merged)
    sys.stdout.write("".join(f"{e.key}\n" for e in merged))
    return 0


def _rank_for(rank, n_explicit, size):
    if n_explicit is not None:
        return n_explicit
    if rank == "last":
        return size
    if rank == "half":
        return max(1, size // 2)
    try:
        return int(rank)
    except ValueError:
        raise UsageError(f"--rank must be 'last', 'half', or an integer, got {rank!r}")


def _cmd_bench(args) -> int:
    cfg = RunConfig("bench", args.sizes, args.trials, args.seed, args.out, args.plot)
    plan = experiments.TrialPlan(cfg.sizes, cfg.trials, cfg.seed)
    rows = experiments.run_bench(plan)
    experiments.write_bench_csv(rows, os.path.join(cfg.out_dir, "bench.csv"))
    if cfg.plot:
        from . import plots
        plots.plot_bench(rows, os.path.join(cfg.out_dir, "bench.svg"))
    return 0


def _cmd_phist(args) -> int:
    cfg = RunConfig("phist", args.sizes, args.trials, args.seed, args.out, args.plot,
                    args.include_tail_rotation)
    tables = {n: experiments.p_histogram(n, cfg.trials, cfg.seed,
                                         include_tail_rotation=cfg.include_tail_rotation)
              for n in cfg.sizes}
    experiments.write_phist_csv(tables, os.path.join(cfg.out_dir, "phist.csv"))
    if cfg.plot:
        from . import plots
        plots.plot_phist(tables, os.path.join(cfg.out_dir, "phist.svg"))
    return 0


def _cmd_prob(args) -> int:
    cfg = RunConfig("prob", args.sizes, 1, DEFAULT_SEED, args.out, args.plot)
    rank = args.rank
    if rank not in ("last", "half"):
        _rank_for(rank, None, 2)  # validates the explicit-rank form
    cells = experiments.prob_table(cfg.sizes, args.k, rank)
    experiments.write_prob_csv(cells, os.path.join(cfg.out_dir, "prob.csv"))
    if cfg.plot:
        from . import plots
        plots.plot_prob(cells, os.path.join(cfg.out_dir, "prob.svg"))
    return 0


def _cmd_mc_check(args) -> int:
    failures = 0
    for size in args.sizes:
        model = SampleModel(size, 4 * size)
        n = _rank_for(args.rank, args.n, size)
        for k in args.k:
            exact = prob_cross(model, n, k)
            est = experiments.mc_prob_cross(model, n, k, args.samples, args.seed)
            sigma = (max(est * (1 - est), 1e-12) / args.samples) ** 0.5
            tol = 4 * sigma + 0.001
            ok = abs(est - exact) <= tol
            failures += 0 if ok else 1
            print(f"N={size} n={n} k={k} exact={exact:.6f} mc={est:.6f} "
                  f"|diff|={abs(est - exact):.6f} tol={tol:.6f} {'ok' if ok else 'FAIL'}")
    if failures:
        raise VerificationError(f"{failures} Monte Carlo checks disagreed with prob_cross")
    return 0


def _cmd_drift(args) -> int:
    cfg = RunConfig("drift", args.sizes, args.trials, args.seed, args.out, args.plot,
                    args.include_tail_rotation)
    buckets = []
    for n in cfg.sizes:
        buckets.extend(experiments.drift_experiment(
            n, cfg.trials, cfg.seed, include_tail_rotation=cfg.include_tail_rotation))
    experiments.write_drift_csv(buckets, os.path.join(cfg.out_dir, "drift.csv"))
    if cfg.plot:
        from . import plots
        plots.plot_drift(buckets, os.path.join(cfg.out_dir, "drift.svg"))
    return 0


def _cmd_selftest(args) -> int:
    import random

    from .shuffle import MoveSink, in_shuffle, un_shuffle

    rng = random.Random(20240501)

    def interleave(seq):
        half = len(seq) // 2
        out = []
        for t in range(half):
            out.append(seq[t])
            out.append(seq[half + t])
        return out

    checked = 0
    for length in range(2, 130, 2):
        for _ in range(5):
            data = [rng.randrange(1000) for _ in range(length)]
            work = list(data)
            in_shuffle(work, MoveSink())
            if work != interleave(data):
                raise VerificationError(f"in_shuffle mismatch at length {length}")
            un_shuffle(work, MoveSink())
            if work != data:
                raise VerificationError(f"un_shuffle round trip failed at length {length}")
            checked += 1
    print(f"ok shuffle-roundtrip-oracle ({checked} cases)")

    checked = 0
    for case in range(150):
        half = rng.randint(1, 64)
        top = rng.choice([half, 4 * half, 8 * half])
        left = sorted(rng.randint(1, top) for _ in range(half))
        right = sorted(rng.randint(1, top) for _ in range(half))
        merged = tag_halves(left, right)
        expected = stable_merge_reference(merged[:half], merged[half:])
        right_going_merge(merged, check_invariants=case < 30)
        if merged != expected or not verify_sorted_stable(merged):
            raise VerificationError(f"merge oracle mismatch for halves {left} / {right}")
        checked += 1
    print(f"ok merge-oracle-equivalence ({checked} cases)")

    checked = 0
    for n in range(1, 13):
        for m in range(1, 13):
            for r in range(1, m + 1):
                if n >= m >= r:
                    exact = float(lemma_ratio_exact("lemma1", n=n, m=m, r=r))
                    if abs(lemma1_prob(n, m, r) - exact) > 1e-13:
                        raise VerificationError(f"lemma1 mismatch at {(n, m, r)}")
                    checked += 1
            if abs(m - n) <= 1:
                for p in range(1, m + 1):
                    exact = float(lemma_ratio_exact("lemma2", m=m, n=n, p=p))
                    if abs(lemma2_prob(m, n, p) - exact) > 1e-13:
                        raise VerificationError(f"lemma2 mismatch at {(m, n, p)}")
                    checked += 1
    print(f"ok lemma-products-vs-exact ({checked} cases)")

    for n_samples in (3, 10, 40):
        model = SampleModel(n_samples, 4 * n_samples)
        for x in range(model.M + 1):
            if abs(order_stat_cdf(model, 1, x) - min_cdf(model, x)) > 1e-12:
                raise VerificationError(f"G_1 != min_cdf at N={n_samples} x={x}")
        for rank in (1, n_samples):
            if abs(order_stat_cdf(model, rank, model.M) - 1.0) > 1e-12:
                raise VerificationError(f"G_n(M) != 1 at N={n_samples} n={rank}")
    if abs(prob_cross(SampleModel(1, 4), 1, 0) - 0.375) > 1e-12:
        raise VerificationError("prob_cross(N=1, M=4) != 3/8")
    print("ok order-statistics-identities")

    plan = experiments.TrialPlan((100, 200), 3, base_seed=DEFAULT_SEED)
    if experiments.run_bench(plan, workers=1) != experiments.run_bench(plan, workers=2):
        raise VerificationError("bench rows depend on worker scheduling")
    print("ok deterministic-bench-rows")
    return 0


_HANDLERS = {
    "merge": _cmd_merge,
    "bench": _cmd_bench,
    "phist": _cmd_phist,
    "prob": _cmd_prob,
    "mc-check": _cmd_mc_check,
    "drift": _cmd_drift,
    "selftest": _cmd_selftest,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _HANDLERS[args.subcommand](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ContractViolation, VerificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
