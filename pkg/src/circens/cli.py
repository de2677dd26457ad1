"""Command-line front end: ``circens generate | sample | gof | reference``.

Exit codes: 0 success, 1 validation error, 2 numerical failure, 3 I/O error.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from . import io as matrix_io
from .ensembles import BROKEN_COUPLING, Architecture, Ensemble, ZMode, build, z_operator
from .experiment import ExperimentConfig, run_experiment, run_oracle
from .linalg import NumericalError, unitarity_defect
from .reference import CurveKind, reference_curve
from .spectra import SampleLabel, StatSample, histogram_csv, ks_2samp, ks_statistic

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _add_experiment_args(p):
    p.add_argument("--ensemble", required=True, choices=[e.value for e in Ensemble])
    p.add_argument("--arch", default="circuit", choices=[a.value for a in Architecture])
    p.add_argument("-n", "--qubits", type=int, default=8)
    p.add_argument("-m", "--iterations", type=int, default=60)
    p.add_argument("-R", "--realizations", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--z-mode", choices=[z.value for z in ZMode], default=None)
    p.add_argument(
        "--break-symmetry",
        type=int,
        nargs="?",
        const=0,
        default=None,
        metavar="BOND",
        help="set coupling of BOND (default 0) to pi/5",
    )
    p.add_argument("--species", default=None, help="two-species layout, e.g. ABABABB")


def _config(args):
    override = None if args.break_symmetry is None else (args.break_symmetry, BROKEN_COUPLING)
    return ExperimentConfig(
        ensemble=args.ensemble,
        architecture=args.arch,
        n_qubits=args.qubits,
        iterations=args.iterations,
        realizations=args.realizations,
        seed=args.seed,
        z_mode=args.z_mode,
        coupling_override=override,
        species_layout=args.species,
    )


def build_parser():
    parser = _Parser(prog="circens", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="write one pseudo-random operator")
    _add_experiment_args(gen)
    gen.add_argument("--out", required=True)
    gen.add_argument("--format", choices=["bin", "json"], default="bin")

    smp = sub.add_parser("sample", help="pooled spacing/amplitude statistics")
    _add_experiment_args(smp)
    smp.add_argument("--out", required=True, help="output directory")
    smp.add_argument("--bins", type=int, default=40)
    smp.add_argument("--range", type=float, nargs=2, default=(0.0, 4.0), metavar=("LO", "HI"))
    smp.add_argument("--workers", type=int, default=None)

    gof = sub.add_parser("gof", help="Kolmogorov-Smirnov goodness of fit of a sample")
    gof.add_argument("sample")
    gof.add_argument("--target", required=True, choices=["surmise", "amplitude-law", "haar-oracle"])
    gof.add_argument("--ensemble", choices=[e.value for e in Ensemble], default=None)
    gof.add_argument("--seed", type=int, default=1)
    gof.add_argument("--out", default=None)
    gof.add_argument("--workers", type=int, default=None)

    ref = sub.add_parser("reference", help="tabulate a reference curve as x,pdf,cdf")
    ref.add_argument("--ensemble", required=True, choices=[e.value for e in Ensemble])
    ref.add_argument("--kind", required=True, choices=[k.value for k in CurveKind])
    ref.add_argument("--xmin", type=float, default=0.0)
    ref.add_argument("--xmax", type=float, default=4.0)
    ref.add_argument("--points", type=int, default=81)
    ref.add_argument("--out", default=None)
    return parser


def cmd_generate(args):
    config = _config(args)
    if config.realizations != 1:
        raise ValueError("generate writes exactly one operator; use -R 1")
    spec = config.spec(0)
    u = build(spec, config.ensemble, config.z_mode)
    matrix_io.write_matrix(args.out, u, args.format)
    report = {
        "dim": spec.dim,
        "independent_variables": spec.n_independent_variables,
        "unitarity_defect": unitarity_defect(u),
    }
    if config.ensemble is Ensemble.COE:
        report["symmetry_defect"] = float(np.max(np.abs(u - u.T)))
    elif config.ensemble is Ensemble.CSE:
        z = z_operator(spec.n_qubits, config.z_mode, spec.species_layout)
        report["self_duality_defect"] = float(np.max(np.abs(u + z @ u.T @ z)))
    for key, value in report.items():
        print(f"{key}: {value}")
    return EXIT_OK


def cmd_sample(args):
    config = _config(args)
    samples = run_experiment(config, workers=args.workers)
    for s in samples:
        s.check_mean()
    os.makedirs(args.out, exist_ok=True)
    for s in samples:
        name = s.label.value
        with open(os.path.join(args.out, f"{name}.json"), "w") as f:
            f.write(s.to_json())
        with open(os.path.join(args.out, f"{name}_hist.csv"), "w") as f:
            f.write(histogram_csv(s.values, args.bins, tuple(args.range)))
        print(f"{name}: {s.values.size} values, mean {np.mean(s.values):.15f}")
    return EXIT_OK


_TARGET_LABEL = {"surmise": SampleLabel.SPACINGS, "amplitude-law": SampleLabel.AMPLITUDES}


def cmd_gof(args):
    with open(args.sample) as f:
        sample = StatSample.from_json(f.read())
    ensemble = sample.ensemble if args.ensemble is None else Ensemble(args.ensemble)
    if ensemble is not sample.ensemble:
        raise ValueError(f"sample is {sample.ensemble.value}, target is {ensemble.value}")
    wanted = _TARGET_LABEL.get(args.target)
    if wanted is not None and wanted is not sample.label:
        raise ValueError(f"target {args.target!r} needs a {wanted.value} sample")

    if args.target == "haar-oracle":
        oracle = run_oracle(ensemble, sample.n_qubits, sample.realizations, args.seed, args.workers)
        other = oracle[0] if sample.label is SampleLabel.SPACINGS else oracle[1]
        ks = ks_2samp(sample.values, other.values)
    else:
        kind = CurveKind.SPACING if sample.label is SampleLabel.SPACINGS else CurveKind.AMPLITUDE
        ks = ks_statistic(sample.values, reference_curve(ensemble, kind).cdf)
    report = {
        "ensemble": ensemble.value,
        "label": sample.label.value,
        "target": args.target,
        "size": int(sample.values.size),
        "ks": ks,
    }
    print(f"ks: {ks:.6f} ({sample.label.value}, {ensemble.value}, {args.target}, K={sample.values.size})")
    if args.out:
        with open(args.out, "w") as f:
            json.dump(report, f)
    return EXIT_OK


def reference_table(ensemble, kind, xmin, xmax, points):
    if points < 2 or not (math.isfinite(xmin) and math.isfinite(xmax)) or xmin < 0 or xmax <= xmin:
        raise ValueError("grid needs points >= 2 and 0 <= xmin < xmax")
    curve = reference_curve(ensemble, kind)
    x = np.linspace(xmin, xmax, points)
    lines = ["x,pdf,cdf"]
    for xi, p, c in zip(x, curve.pdf(x), curve.cdf(x)):
        lines.append(f"{float(xi)!r},{float(p)!r},{float(c)!r}")
    return "\n".join(lines) + "\n"


def cmd_reference(args):
    table = reference_table(args.ensemble, args.kind, args.xmin, args.xmax, args.points)
    if args.out:
        with open(args.out, "w") as f:
            f.write(table)
    else:
        sys.stdout.write(table)
    return EXIT_OK


_COMMANDS = {
    "generate": cmd_generate,
    "sample": cmd_sample,
    "gof": cmd_gof,
    "reference": cmd_reference,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
