"""Command-line front end: score curves, self-verification, simulation, POM dumps.

Exit codes: 0 on success, 1 when a verification or numeric consistency check
fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import serialize
from .classifier import ClassifierSpec, classifier_pom, score_operator_w
from .core import POM
from .harness.baselines import baseline_k_infinity, baseline_k_infinity_quadrature, score_curve
from .harness.montecarlo import SimulationConfig, simulate_semiclassical, simulate_universal
from .harness.quadrature import quadrature_operator
from .learning import (
    LearningProblem,
    LearningStrategy,
    covariant_sqrt_pom,
    discrete_three_pom,
    learning_score_operator,
    separable_pom,
    verify_optimality,
)
from .universal import (
    MatchingProblem,
    score_operator_wi,
    universal_pom_k1,
    universal_solver_numeric,
)

MAX_CURVE_N = 64


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".qmatch-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp_path, out_path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def cmd_curve(args) -> int:
    if not 1 <= args.n_min <= args.n_max <= MAX_CURVE_N:
        raise ValueError("need 1 <= n-min <= n-max <= %d" % MAX_CURVE_N)
    rows = score_curve(range(args.n_min, args.n_max + 1), args.k)
    if args.format == "csv":
        text = serialize.rows_to_csv(
            serialize.CURVE_CSV_HEADER, [serialize.curve_row(r) for r in rows]
        )
    else:
        text = json.dumps(serialize.curve_document(rows), indent=2) + "\n"
    _emit(text, args.out)
    return 0


def cmd_simulate(args) -> int:
    config = SimulationConfig(
        n_inputs=args.n,
        k_copies=args.k,
        strategy=args.strategy,
        samples=args.samples,
        seed=args.seed,
    )
    if config.strategy_family == "universal":
        report = simulate_universal(config)
    else:
        report = simulate_semiclassical(config)
    row = serialize.report_row(report)
    if args.format == "csv":
        text = serialize.rows_to_csv(serialize.REPORT_CSV_HEADER, [row])
    else:
        text = json.dumps(serialize.report_document([report]), indent=2) + "\n"
    _emit(text, args.out)
    return 0


def cmd_povm(args) -> int:
    if args.format != "json":
        raise ValueError("povm dumps are json only")
    if args.which == "classifier":
        pom = classifier_pom(ClassifierSpec(args.n, args.theta))
        parameters = {"n_inputs": args.n, "theta": args.theta % (2.0 * math.pi)}
        metadata = {}
    elif args.which == "learning":
        strategy = _learning_strategy(args.variant, args.grid_points)
        pom = strategy.pom
        parameters = {"n_inputs": args.n, "k_copies": 1, "variant": args.variant}
        if args.variant == "covariant_sqrt":
            parameters["grid_points"] = args.grid_points
        metadata = {"completion_index": strategy.completion_index}
    else:
        problem = MatchingProblem(args.n, args.k)
        if args.k == 1:
            pom = universal_pom_k1(args.n)
            metadata = {"construction": "block_closed_form"}
        else:
            pom, _ = universal_solver_numeric(problem)
            metadata = {"construction": "dense_solver"}
        parameters = {"n_inputs": args.n, "k_copies": args.k}
    payload = serialize.pom_payload(pom, args.which, parameters, metadata)
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _learning_strategy(variant: str, grid_points: int) -> LearningStrategy:
    if variant == "discrete_three":
        return discrete_three_pom()
    if variant == "separable_four":
        return separable_pom()
    if grid_points < 3:
        raise ValueError("covariant_sqrt needs at least 3 grid points")
    grid = tuple(2.0 * math.pi * i / grid_points for i in range(grid_points))
    return covariant_sqrt_pom(grid)


class _CheckLog:
    def __init__(self):
        self.failures = 0

    def record(self, name: str, ok: bool, detail: str) -> None:
        status = "PASS" if ok else "FAIL"
        if not ok:
            self.failures += 1
        print("%s %s (%s)" % (status, name, detail))


def _suite_pom(log: _CheckLog) -> None:
    for n, theta in ((1, 0.0), (2, 0.7), (5, 3.9)):
        _check_pom(log, "pom classifier n=%d theta=%.2f" % (n, theta),
                   lambda n=n, theta=theta: classifier_pom(ClassifierSpec(n, theta)))
    _check_pom(log, "pom learning discrete_three", lambda: discrete_three_pom().pom)
    _check_pom(log, "pom learning separable_four", lambda: separable_pom().pom)
    grid = tuple(2.0 * math.pi * i / 16 for i in range(16))
    _check_pom(log, "pom learning covariant_sqrt L=16",
               lambda: covariant_sqrt_pom(grid).pom)
    for n in (1, 2, 5):
        _check_pom(log, "pom universal k=1 n=%d" % n, lambda n=n: universal_pom_k1(n))
    _check_pom(log, "pom universal numeric n=2 k=2",
               lambda: universal_solver_numeric(MatchingProblem(2, 2))[0])


def _check_pom(log: _CheckLog, name: str, build) -> None:
    try:
        pom = build()
    except Exception as exc:  # construction itself validates
        log.record(name, False, "construction failed: %s" % exc)
        return
    margin = pom.psd_margin()
    residual = pom.identity_residual()
    ok = margin >= -1e-10 and residual <= 1e-10
    log.record(name, ok, "psd_margin=%.2e identity_residual=%.2e" % (margin, residual))


def _suite_optimality(log: _CheckLog) -> None:
    cases = []
    for n in (1, 2, 5):
        cases.append(("discrete_three n=%d" % n, discrete_three_pom(), n))
        cases.append(("separable_four n=%d" % n, separable_pom(), n))
    grid = tuple(2.0 * math.pi * i / 64 for i in range(64))
    cases.append(("covariant_sqrt L=64 n=2", covariant_sqrt_pom(grid), 2))
    for name, strategy, n in cases:
        problem = LearningProblem(n, 1, strategy.pom.labels)
        report = verify_optimality(strategy, problem)
        ok = report.psd_margin >= -1e-10 and report.commutation_residual <= 1e-8
        log.record(
            "optimality %s" % name,
            ok,
            "psd_margin=%.2e residual=%.2e"
            % (report.psd_margin, report.commutation_residual),
        )
    # Negative control: swapping two guess labels must break the conditions.
    base = discrete_three_pom()
    labels = list(base.pom.labels)
    swapped = (labels[1], labels[0], labels[2])
    elements = tuple(
        (swapped[i], op) for i, (_, op) in enumerate(base.pom.elements)
    )
    control = LearningStrategy("discrete_three", POM(elements), 0)
    report = verify_optimality(control, LearningProblem(2, 1, swapped))
    ok = report.commutation_residual > 1e-3
    log.record(
        "optimality negative control (swapped labels)",
        ok,
        "residual=%.2e, expected > 1e-3" % report.commutation_residual,
    )


def _suite_oracle(log: _CheckLog) -> None:
    rng = np.random.default_rng(7)
    for n in range(1, 7):
        angle = float(rng.uniform(0.0, 2.0 * math.pi))
        closed = score_operator_w(n, angle).entries
        quad = quadrature_operator("W_of_g", n_inputs=n, angle=angle).entries
        dev = float(np.max(np.abs(closed - quad)))
        log.record("oracle W_of_g n=%d" % n, dev <= 1e-10, "max_dev=%.2e" % dev)
    for n, k in ((1, 1), (2, 1), (3, 2), (6, 3)):
        angle = float(rng.uniform(0.0, 2.0 * math.pi))
        closed = learning_score_operator(LearningProblem(n, k, (angle,)), angle).entries
        quad = quadrature_operator(
            "G_of_theta", n_inputs=n, k_copies=k, angle=angle
        ).entries
        dev = float(np.max(np.abs(closed - quad)))
        log.record("oracle G_of_theta n=%d k=%d" % (n, k), dev <= 1e-10, "max_dev=%.2e" % dev)
    for n, k in ((1, 1), (2, 2), (6, 3)):
        problem = MatchingProblem(n, k)
        for class_index in (1, 2):
            closed = score_operator_wi(problem, class_index).entries
            quad = quadrature_operator(
                "W_i", n_inputs=n, k_copies=k, class_index=class_index
            ).entries
            dev = float(np.max(np.abs(closed - quad)))
            log.record(
                "oracle W_i n=%d k=%d class=%d" % (n, k, class_index),
                dev <= 1e-10,
                "max_dev=%.2e" % dev,
            )
    for n in (1, 2, 5):
        closed = baseline_k_infinity(n)
        quad = baseline_k_infinity_quadrature(n)
        dev = abs(closed - quad)
        log.record("oracle baseline k=inf n=%d" % n, dev <= 1e-10, "dev=%.2e" % dev)


def cmd_verify(args) -> int:
    log = _CheckLog()
    if args.suite in ("pom", "all"):
        _suite_pom(log)
    if args.suite in ("optimality", "all"):
        _suite_optimality(log)
    if args.suite in ("oracle", "all"):
        _suite_oracle(log)
    total = "all checks passed" if log.failures == 0 else "%d check(s) failed" % log.failures
    print(total)
    return 0 if log.failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmatch",
        description="Optimal pattern-matching measurements for phase-encoded qubit registers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    curve = sub.add_parser("curve", help="score-vs-N comparison table")
    curve.add_argument("--n-min", type=int, required=True)
    curve.add_argument("--n-max", type=int, required=True)
    curve.add_argument("--k", type=int, default=1)
    curve.add_argument("--format", choices=("csv", "json"), default="csv")
    curve.add_argument("--out", default=None)
    curve.set_defaults(func=cmd_curve)

    verify = sub.add_parser("verify", help="run self-verification suites")
    verify.add_argument(
        "--suite", choices=("pom", "optimality", "oracle", "all"), default="all"
    )
    verify.set_defaults(func=cmd_verify)

    simulate = sub.add_parser("simulate", help="Monte-Carlo protocol simulation")
    simulate.add_argument("--n", type=int, required=True)
    simulate.add_argument("--k", type=int, default=1)
    simulate.add_argument("--strategy", required=True)
    simulate.add_argument("--samples", type=int, default=100000)
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--format", choices=("csv", "json"), default="csv")
    simulate.add_argument("--out", default=None)
    simulate.set_defaults(func=cmd_simulate)

    povm = sub.add_parser("povm", help="dump a measurement as JSON")
    povm.add_argument("--which", choices=("classifier", "learning", "universal"), required=True)
    povm.add_argument("--n", type=int, default=1)
    povm.add_argument("--k", type=int, default=1)
    povm.add_argument("--theta", type=float, default=0.0)
    povm.add_argument(
        "--variant",
        choices=("discrete_three", "separable_four", "covariant_sqrt"),
        default="discrete_three",
    )
    povm.add_argument("--grid-points", type=int, default=64)
    povm.add_argument("--format", choices=("json", "csv"), default="json")
    povm.add_argument("--out", default=None)
    povm.set_defaults(func=cmd_povm)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except Exception as exc:  # numeric/consistency failures
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
