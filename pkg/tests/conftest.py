"""Shared fixtures and frozen reference values.

The numeric literals below were generated once by an independent oracle
(power-substitution + tanh-sinh quadrature at 40 digits for the complex
legs, log-gamma for Beta) and are pasted as constants; tests compare the
package against them, not against fresh runs of the package.
"""

import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from scpoly import (
    ChartPoint,
    ExponentVector,
    LabelledPolygon,
    Prevertices,
    SCMap,
    forward,
    forward_extended,
    moduli_unchart,
)

# Gamma(1/3)^2 / Gamma(2/3), via math.lgamma.
BETA_THIRD = 5.299916250856356

# A = 1, B = 0 triangle for alphas (1/3, 1/3, 1/3), prevertices (-1, 0).
TRIANGLE_VERTICES = (
    3.5225351044865016j,
    -2.6499581254281749 - 1.067327006685077j,
    2.6499581254281749 - 1.067327006685077j,
)

# Chart origin for n = 4: prevertices (-1, 0, 1), alphas (1/2,)*4.
SQUARE_VERTICES = (
    1.3110287771460599 + 1.3110287771460599j,
    -1.3110287771460599 + 1.3110287771460599j,
    -1.3110287771460599 - 1.3110287771460599j,
    1.3110287771460599 - 1.3110287771460599j,
)
SQUARE_SIDE = 2.6220575542921198

# Wrapped-vertex pentagon: alphas (0.2, 0.2, 0.2, 0.2, 2.2) with the last
# interior angle 2.2*pi, prevertices (-1, 0, 1, 2). Not immersed; the five
# measured angles are all pi/5 and the curve turns twice.
PENTAGON_ALPHAS = (0.2, 0.2, 0.2, 0.2, 2.2)
PENTAGON_VERTICES = (
    -0.99797780664283793 + 0.82157795649237143j,
    0.14408581687372719 - 2.6933324560112776j,
    1.7857614969602289 + 2.3592257579719366j,
    -1.2041998867210023 + 0.18689165563376806j,
    -0.12440705697032839 + 0.18689165563376806j,
)
PENTAGON_SIDES = (
    3.6957955203293322,
    5.3125740977681173,
    3.6957955203293322,
    1.0797928297506739,
    1.0797928297506739,
)

# Two non-simple immersed hexagons found by chart-space random search
# (uniform cube of half-width 3, seed 0, sample indices 2450 and 2691).
# The first crosses at large scale; the second hides a lens roughly 1e-4
# of the diameter across, which is what the local witness probes are for.
HEX_CHART_LARGE = ChartPoint(
    6,
    (-2.2081005063337225, -1.6332138569594705, -1.63883074696506),
    (2.373839350374487, 0.6279395364047948, 1.2334137538363557,
     0.6948436590614309, -2.9131341829680637),
)
HEX_WITNESS_LARGE = -35.19616763159926 + 2.5400784503493785j
HEX_CHART_LENS = ChartPoint(
    6,
    (-0.5475223868479184, 2.2475833981854763, 2.163302178114022),
    (-2.675878194706039, -2.768274956507886, 2.9900072323280504,
     2.893581814784234, 1.7745853660853355),
)
HEX_WITNESS_LENS = 0.014106785568353465 + 0.038296479321285846j


@pytest.fixture(scope="session")
def unit_square():
    return LabelledPolygon((0j, 1 + 0j, 1 + 1j, 1j))


@pytest.fixture(scope="session")
def bowtie():
    # sides 1 and 3 cross; angle sum comes out wrong under this labelling
    return LabelledPolygon((0j, 1 + 1j, 1 + 0j, 1j))


@pytest.fixture(scope="session")
def triangle_map():
    return SCMap(Prevertices((-1.0, 0.0)), ExponentVector((1 / 3, 1 / 3, 1 / 3)))


@pytest.fixture(scope="session")
def square_map():
    return SCMap(Prevertices((-1.0, 0.0, 1.0)), ExponentVector((0.5,) * 4))


@pytest.fixture(scope="session")
def pentagon_poly():
    exp = ExponentVector(PENTAGON_ALPHAS, extended=True)
    return forward_extended(Prevertices((-1.0, 0.0, 1.0, 2.0)), exp)


@pytest.fixture(scope="session")
def hex_large():
    return forward(*moduli_unchart(HEX_CHART_LARGE))


@pytest.fixture(scope="session")
def hex_lens():
    return forward(*moduli_unchart(HEX_CHART_LENS))


def sup_dist(ws, vs) -> float:
    return max(abs(complex(w) - complex(v)) for w, v in zip(ws, vs))
