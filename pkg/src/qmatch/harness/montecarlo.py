"""Seeded Monte-Carlo simulation of both matching protocols.

Reproducibility contract: a run with ``samples`` draws is split into fixed
chunks of CHUNK_SAMPLES; chunk c seeds its own generator as
``PCG64(SeedSequence([seed, c]))`` and draws one uniform block of shape
(chunk_len, columns).  Chunk reductions are combined in chunk order, so the
report depends only on (config, backend), not on the worker count.
QMATCH_THREADS caps the number of worker threads (default 1).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .. import _mc
from ..classifier import ClassifierSpec, classifier_pom
from ..core import binomial_row
from ..learning import (
    LearningStrategy,
    STRATEGY_KINDS,
    covariant_sqrt_pom,
    discrete_three_pom,
    semiclassical_max_score,
    separable_pom,
)
from ..universal import (
    MatchingProblem,
    universal_pom_k1,
    universal_score_analytic,
    universal_solver_numeric,
)
from .quadrature import quadrature_operator

CHUNK_SAMPLES = 1 << 15

#: Grid size used when a simulation asks for the covariant strategy.
COVARIANT_GRID_POINTS = 64

_PROBABILITY_FLOOR = -1e-10
_UNITY_TOL = 1e-9


@dataclass(frozen=True)
class SimulationConfig:
    """What to simulate: sizes, strategy tag, sample count, and seed.

    strategy is "universal" or "semiclassical:<kind>" with kind one of
    discrete_three, separable_four, covariant_sqrt.
    """

    n_inputs: int
    k_copies: int
    strategy: str
    samples: int
    seed: int

    def __post_init__(self):
        if self.n_inputs < 1 or self.k_copies < 1:
            raise ValueError("n_inputs and k_copies must be >= 1")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        family, _, kind = self.strategy.partition(":")
        if family == "universal":
            if kind:
                raise ValueError("the universal strategy takes no variant")
        elif family == "semiclassical":
            if kind not in STRATEGY_KINDS:
                raise ValueError("unknown semiclassical variant %r" % (kind,))
        else:
            raise ValueError("strategy must be universal or semiclassical:<kind>")

    @property
    def strategy_family(self) -> str:
        return self.strategy.partition(":")[0]

    @property
    def strategy_kind(self) -> str:
        return self.strategy.partition(":")[2]


@dataclass(frozen=True)
class ScoreReport:
    """Analytic, quadrature, and Monte-Carlo values for one configuration."""

    config: SimulationConfig
    score_analytic: Optional[float]
    score_quadrature: Optional[float]
    score_mc: float
    score_mc_stderr: float

    def __post_init__(self):
        if self.config.samples > 1 and not self.score_mc_stderr > 0.0:
            raise ValueError("stderr must be positive for samples > 1")


def _chunk_bounds(samples: int):
    start = 0
    index = 0
    while start < samples:
        yield index, min(CHUNK_SAMPLES, samples - start)
        start += CHUNK_SAMPLES
        index += 1


def _worker_count() -> int:
    raw = os.environ.get("QMATCH_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError("QMATCH_THREADS must be an integer") from None
    if value < 1:
        raise ValueError("QMATCH_THREADS must be >= 1")
    return value


def _run_chunks(config: SimulationConfig, columns: int, kernel):
    """Draw per-chunk uniform blocks, run the kernel, reduce in chunk order."""
    bounds = list(_chunk_bounds(config.samples))

    def one(item):
        index, length = item
        seq = np.random.SeedSequence([config.seed, index])
        rng = np.random.Generator(np.random.PCG64(seq))
        uniforms = rng.random((length, columns))
        return kernel(uniforms)

    workers = min(_worker_count(), len(bounds))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, bounds))
    else:
        results = [one(item) for item in bounds]

    total = 0.0
    total_sq = 0.0
    prob_min = math.inf
    unity_dev = 0.0
    for score_sum, score_sq, p_min, u_dev in results:
        total += score_sum
        total_sq += score_sq
        prob_min = min(prob_min, p_min)
        unity_dev = max(unity_dev, u_dev)

    if prob_min < _PROBABILITY_FLOOR:
        raise RuntimeError(
            "protocol produced outcome probability %.3e below zero; "
            "the measurement operators are inconsistent" % prob_min
        )
    if unity_dev > _UNITY_TOL:
        raise RuntimeError(
            "outcome probabilities miss unity by %.3e; "
            "the measurement operators are inconsistent" % unity_dev
        )

    n = config.samples
    mean = total / n
    if n > 1:
        variance = max(total_sq / n - mean * mean, 0.0) * n / (n - 1)
        stderr = math.sqrt(variance / n)
    else:
        stderr = 0.0
    return mean, stderr


def _template_coefficients(k_copies: int) -> np.ndarray:
    return np.sqrt(binomial_row(k_copies) / 2.0**k_copies)


def _semiclassical_strategy(config: SimulationConfig) -> LearningStrategy:
    kind = config.strategy_kind
    if kind == "discrete_three":
        return discrete_three_pom()
    if kind == "separable_four":
        return separable_pom()
    grid = tuple(
        2.0 * math.pi * i / COVARIANT_GRID_POINTS for i in range(COVARIANT_GRID_POINTS)
    )
    return covariant_sqrt_pom(grid)


def simulate_semiclassical(config: SimulationConfig) -> ScoreReport:
    """Sample the estimate-then-classify protocol end to end.

    Each sample draws independent phases (f, g1, g2), measures the template
    registers with the strategy POM, then runs the guess-conditioned feature
    classifier and scores the chosen template.  K = 1 only, matching the
    strategies on offer.
    """
    if config.strategy_family != "semiclassical":
        raise ValueError("config.strategy is not semiclassical")
    if config.k_copies != 1:
        raise ValueError("semiclassical strategies are built for k_copies = 1")
    strategy = _semiclassical_strategy(config)
    labels = strategy.pom.labels
    mu = np.ascontiguousarray(
        np.stack([op.entries for _, op in strategy.pom.elements])
    )
    omega1 = np.ascontiguousarray(
        np.stack(
            [
                classifier_pom(ClassifierSpec(config.n_inputs, float(t)))
                .elements[0][1]
                .entries
                for t in labels
            ]
        )
    )
    t_coeff = _template_coefficients(config.k_copies)
    feat_coeff = _template_coefficients(config.n_inputs)
    backend = _mc.get_backend()

    def kernel(uniforms):
        return backend.semiclassical_chunk(uniforms, t_coeff, t_coeff, mu, omega1, feat_coeff)

    mean, stderr = _run_chunks(config, 5, kernel)
    quad = 0.0
    for label, op in strategy.pom.elements:
        g = quadrature_operator(
            "G_of_theta",
            n_inputs=config.n_inputs,
            k_copies=config.k_copies,
            angle=float(label),
        )
        quad += float(np.trace(op.entries @ g.entries).real)
    return ScoreReport(
        config=config,
        score_analytic=semiclassical_max_score(config.n_inputs),
        score_quadrature=quad,
        score_mc=mean,
        score_mc_stderr=stderr,
    )


def simulate_universal(config: SimulationConfig) -> ScoreReport:
    """Sample the collective protocol end to end.

    Each sample prepares the joint phase state of feature and templates,
    applies the optimal two-outcome measurement, and scores the template the
    outcome points to.
    """
    if config.strategy_family != "universal":
        raise ValueError("config.strategy is not universal")
    if config.k_copies == 1:
        pom = universal_pom_k1(config.n_inputs)
        analytic = universal_score_analytic(config.n_inputs)
    else:
        pom, _ = universal_solver_numeric(MatchingProblem(config.n_inputs, config.k_copies))
        analytic = None
    pi1 = np.ascontiguousarray(pom.elements[0][1].entries)
    feat_coeff = _template_coefficients(config.n_inputs)
    t_coeff = _template_coefficients(config.k_copies)
    backend = _mc.get_backend()

    def kernel(uniforms):
        return backend.universal_chunk(uniforms, feat_coeff, t_coeff, t_coeff, pi1)

    mean, stderr = _run_chunks(config, 4, kernel)
    quad = 0.0
    for label, op in pom.elements:
        w = quadrature_operator(
            "W_i",
            n_inputs=config.n_inputs,
            k_copies=config.k_copies,
            class_index=int(label),
        )
        quad += float(np.trace(w.entries @ op.entries).real)
    return ScoreReport(
        config=config,
        score_analytic=analytic,
        score_quadrature=quad,
        score_mc=mean,
        score_mc_stderr=stderr,
    )
