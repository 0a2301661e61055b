"""Randomized simplicity sweeps over the parameter chart.

Samples chart points uniformly in a cube, runs the forward construction,
and classifies each polygon as simple, non-simple (with a multiwound
witness when one can be certified), or failed. Per-sample substreams are
derived from (seed, index), so results are independent of evaluation
order and a parallel driver would reproduce the serial result exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .charts import ChartPoint, moduli_unchart
from .errors import NumericalError, ValidationError
from .geometry import (LabelledPolygon, PlanePoint, find_multiwound_witness,
                       is_simple, winding_number)
from .quadrature import DEFAULT_TOL
from .scmap import forward

# Candidate budget of the per-instance witness hunt; generic crossings
# certify within the first few targeted probes, the rest is slack.
DEFAULT_WITNESS_BUDGET = 20_000


@dataclass(frozen=True)
class SweepConfig:
    n: int
    samples: int
    seed: int = 0
    chart_box: float = 3.0
    budget: int = DEFAULT_WITNESS_BUDGET

    def __post_init__(self):
        if self.n < 3:
            raise ValidationError(f"n must be >= 3, got {self.n}")
        if self.samples < 1:
            raise ValidationError(f"samples must be >= 1, got {self.samples}")
        if self.seed < 0:
            raise ValidationError("seed must be nonnegative")
        if not self.chart_box > 0.0:
            raise ValidationError("chart_box must be positive")
        if self.budget < 0:
            raise ValidationError("budget must be nonnegative")


@dataclass(frozen=True)
class NonSimpleInstance:
    chart: ChartPoint
    witness: Optional[PlanePoint]
    winding: int


@dataclass(frozen=True)
class SweepResult:
    """Classification counts; tested = simple + non-simple + failures."""

    tested: int
    simple_count: int
    nonsimple_instances: tuple[NonSimpleInstance, ...]
    failures: int

    def __post_init__(self):
        total = self.simple_count + len(self.nonsimple_instances) + self.failures
        if total != self.tested:
            raise ValidationError(
                f"counts {total} do not add up to tested = {self.tested}")


def sample_chart_point(cfg: SweepConfig, index: int) -> ChartPoint:
    """Chart point of sample ``index``: 2n - 4 uniform draws in
    [-chart_box, chart_box] from the PCG64 stream seeded by (seed, index),
    gap coordinates first."""
    rng = np.random.default_rng([cfg.seed, index])
    y = rng.uniform(-cfg.chart_box, cfg.chart_box, size=2 * cfg.n - 4)
    return ChartPoint(cfg.n, tuple(y[:cfg.n - 3]), tuple(y[cfg.n - 3:]))


def _classify(poly: LabelledPolygon, pt: ChartPoint,
              budget: int) -> Optional[NonSimpleInstance]:
    if is_simple(poly):
        return None
    witness = find_multiwound_witness(poly, budget)
    winding = 0 if witness is None else winding_number(poly, witness)
    return NonSimpleInstance(chart=pt, witness=witness, winding=winding)


def run_sweep(cfg: SweepConfig, tol: float = DEFAULT_TOL) -> SweepResult:
    """Forward-and-classify ``cfg.samples`` chart points.

    Failures count forward constructions that died numerically; chart
    points themselves are always valid (the chart covers all of the cube).
    """
    simple = 0
    failures = 0
    nonsimple: list[NonSimpleInstance] = []
    for index in range(cfg.samples):
        pt = sample_chart_point(cfg, index)
        pre, exp = moduli_unchart(pt)
        try:
            poly = forward(pre, exp, tol)
        except NumericalError:
            failures += 1
            continue
        inst = _classify(poly, pt, cfg.budget)
        if inst is None:
            simple += 1
        else:
            nonsimple.append(inst)
    return SweepResult(tested=cfg.samples, simple_count=simple,
                       nonsimple_instances=tuple(nonsimple),
                       failures=failures)
