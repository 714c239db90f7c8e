"""
Command-line front end.

    spinsuper sweep --n 4 --out sweep.csv
    spinsuper scatter --n 3 --samples 100000 --seed 1 --out scatter.csv
    spinsuper histogram --n-range 3..8
    spinsuper negline --n-range 3..8 --dense
    spinsuper chi --n-range 8 --beta 1.0
    spinsuper validate --n-range 3..6
    spinsuper couplings --n 6 --seed 7
    spinsuper classify egg ege

Exit codes: 0 success, 2 validation failure, 3 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .basis import as_basis
from .couplings import RNG_ALGORITHM as COUPLING_RNG
from .couplings import frustration_report, sample_couplings
from .entanglement import avg_negativity, entangled_cluster_size
from .errors import SpinSuperError
from .observables import Q_MAX, order_parameters
from .output import metadata, render, write_output
from .phases import DEFAULT_TOL, RANDOM_TOL, ClassifierConfig, classify, cross_validate
from .superposition import RNG_ALGORITHM, equal_binary_ss
from .sweep import (
    WEIGHTINGS,
    PhaseRecord,
    negativity_line,
    q_histogram,
    scatter_random,
    susceptibility_curve,
    sweep_binary,
    validate,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CONFIG = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def parse_n_range(text: str) -> list[int]:
    """Accept '3..8', '3-8', '3,5,7' or a single size."""
    text = text.strip()
    try:
        for sep in ("..", "-"):
            if sep in text:
                lo, hi = text.split(sep)
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise ValueError
                return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size range {text!r}") from None


def _sizes(args, default):
    if getattr(args, "n_range", None):
        return args.n_range
    if getattr(args, "n", None) is not None:
        return [args.n]
    return list(default)


def _common(p, n_default=None, sizes=True):
    if sizes:
        p.add_argument("--n", type=int, default=n_default, help="system size")
        p.add_argument("--n-range", type=parse_n_range, help="sizes, e.g. 3..8")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spinsuper", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"spinsuper {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sweep", help="all binary pairs of one or more sizes")
    _common(p)
    p.add_argument("--weights", choices=WEIGHTINGS, default="equal")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("scatter", help="(m, q_EA) of random superposition states")
    _common(p, n_default=3)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("histogram", help="SG q_EA value counts per size")
    _common(p)

    p = sub.add_parser("negline", help="negativity against q_EA")
    _common(p)
    p.add_argument("--dense", action="store_true", help="also run the dense oracle")

    p = sub.add_parser("chi", help="susceptibility per p_C bucket")
    _common(p)
    p.add_argument("--beta", type=float, default=1.0)

    p = sub.add_parser("validate", help="run every oracle cross-check")
    _common(p)
    p.add_argument("--dense-max", type=int, default=6)
    p.add_argument("--q-max", type=float, default=Q_MAX, help=argparse.SUPPRESS)

    p = sub.add_parser("couplings", help="sample Gaussian couplings and scan frustration")
    _common(p, n_default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--j", type=float, default=1.0)

    p = sub.add_parser("classify", help="classify a pair of basis states or an (m, q) point")
    _common(p)
    p.add_argument("states", nargs="*", help="two kets (e.g. egg ege) or indices with --n")
    p.add_argument("--m", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--cross-validate", action="store_true")
    return parser


def _record_rows(records):
    return [[getattr(r, f) for f in PhaseRecord.FIELDS] for r in records]


def cmd_sweep(args):
    sizes = _sizes(args, [3])
    if args.weights == "random-full":
        return cmd_scatter(args)
    tol = args.tol if args.tol is not None else (DEFAULT_TOL if args.weights == "equal" else RANDOM_TOL)
    cfg = ClassifierConfig(tol)
    rows = []
    for n in sizes:
        rows += _record_rows(sweep_binary(n, args.weights, args.seed, args.threads, cfg))
    config = {"sizes": sizes, "weighting": args.weights, "seed": args.seed, "tol": tol}
    rng = RNG_ALGORITHM if args.weights != "equal" else None
    return render(PhaseRecord.FIELDS, rows, args.format), metadata("sweep", config, rng)


def cmd_scatter(args):
    sizes = _sizes(args, [3])
    rows = []
    for n in sizes:
        m, q = scatter_random(n, args.samples, args.seed, args.threads)
        rows += [[n, k, float(mk), float(qk)] for k, (mk, qk) in enumerate(zip(m, q))]
    config = {"sizes": sizes, "samples": args.samples, "seed": args.seed}
    text = render(("n", "sample", "m", "q_ea"), rows, args.format)
    return text, metadata("scatter", config, RNG_ALGORITHM)


def cmd_histogram(args):
    sizes = _sizes(args, range(3, 9))
    hist = q_histogram(sizes, args.threads)
    rows = [[n, q, c] for n, h in hist.items() for q, c in h.items()]
    return render(("n", "q_ea", "count"), rows, args.format), metadata("histogram", {"sizes": sizes})


def cmd_negline(args):
    sizes = _sizes(args, range(3, 9))
    pts = negativity_line(sizes, dense=args.dense, threads=args.threads)
    header = ("n", "q_ea", "neg_measured", "neg_predicted", "cluster_size", "count", "flagged", "dense_max_diff")
    rows = [[getattr(p, h) for h in header] for p in pts]
    config = {"sizes": sizes, "dense": args.dense}
    return render(header, rows, args.format), metadata("negline", config)


def cmd_chi(args):
    sizes = _sizes(args, [8])
    pts = susceptibility_curve(sizes, args.beta, args.threads)
    header = ("n", "p_c", "chi_finite", "chi_thermo", "chi_zfc", "q_mean", "count")
    rows = [[getattr(p, h) for h in header] for p in pts]
    config = {"sizes": sizes, "beta": args.beta}
    return render(header, rows, args.format), metadata("chi", config)


def cmd_validate(args):
    sizes = _sizes(args, range(3, 7))
    report = validate(sizes, dense_max=args.dense_max, q_max=args.q_max, threads=args.threads)
    text = json.dumps(report.to_dict(), indent=2) + "\n"
    config = {"sizes": sizes, "dense_max": args.dense_max, "q_max": args.q_max}
    status = EXIT_OK if report.passed else EXIT_VALIDATION
    return text, metadata("validate", config), status


def cmd_couplings(args):
    n = args.n
    c = sample_couplings(n, args.j, args.seed)
    payload = {"couplings": c.to_dict(), "frustration": frustration_report(c).to_dict()}
    config = {"n": n, "j": args.j, "seed": args.seed}
    return json.dumps(payload, indent=2) + "\n", metadata("couplings", config, COUPLING_RNG)


def cmd_classify(args):
    cfg = ClassifierConfig(args.tol)
    if args.cross_validate:
        if args.n is None:
            raise ValueError("--cross-validate needs --n")
        text = cross_validate(args.n, cfg).to_json(indent=2) + "\n"
        return text, metadata("classify", {"n": args.n, "tol": args.tol, "cross_validate": True})
    if args.states:
        if len(args.states) != 2:
            raise ValueError("classify takes exactly two basis states")
        a = as_basis(args.states[0], args.n)
        b = as_basis(args.states[1], a.n)
        st = equal_binary_ss(a, b)
        op = order_parameters(st)
        payload = {
            "n": a.n, "a": a.index, "b": b.index, "a_ket": a.ket, "b_ket": b.ket,
            "n_c": round(op.p_c * a.n), "p_c": op.p_c, "m": op.m, "q_ea": op.q_ea,
            "neg_avg": avg_negativity(st), "cluster_size": entangled_cluster_size(a, b),
            "phase": classify(op.m, op.q_ea, cfg).value,
        }
    elif args.m is not None and args.q is not None:
        payload = {"m": args.m, "q_ea": args.q, "phase": classify(args.m, args.q, cfg).value}
    else:
        raise ValueError("classify needs two basis states, --m/--q, or --cross-validate")
    return json.dumps(payload, indent=2) + "\n", None


COMMANDS = {
    "sweep": cmd_sweep,
    "scatter": cmd_scatter,
    "histogram": cmd_histogram,
    "negline": cmd_negline,
    "chi": cmd_chi,
    "validate": cmd_validate,
    "couplings": cmd_couplings,
    "classify": cmd_classify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.threads < 1:
            raise ValueError("--threads must be >= 1")
        result = COMMANDS[args.command](args)
    except (SpinSuperError, ValueError) as exc:
        print(f"spinsuper {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text, meta, *status = result
    write_output(text, args.out, meta)
    return status[0] if status else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
