"""Shared fixtures, random generators, and hypothesis strategies."""

from __future__ import annotations

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from gwa_skew import GwaAlgebra, GwaElement, WeightData
from gwa_skew.poly import Poly

# -- hypothesis strategies ---------------------------------------------------

rationals = st.builds(
    Fraction,
    st.integers(min_value=-20, max_value=20),
    st.integers(min_value=1, max_value=12),
)

polys = st.builds(Poly, st.lists(rationals, max_size=4))


@st.composite
def poly_pairs_with_nonzero(draw):
    p = draw(polys)
    d = draw(polys.filter(lambda q: not q.is_zero()))
    return p, d


# -- deterministic random generators (for the larger sweeps) ------------------


def rng_for(name: str) -> random.Random:
    return random.Random(f"gwa-skew:{name}")


def random_fraction(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        value = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        if value != 0 or not nonzero:
            return value


def random_poly(rng: random.Random, max_deg: int, nonzero: bool = False) -> Poly:
    while True:
        p = Poly([random_fraction(rng) for _ in range(rng.randint(0, max_deg + 1))])
        if not p.is_zero() or not nonzero:
            return p


def random_element(
    rng: random.Random, A: GwaAlgebra, max_deg: int = 3, poly_deg: int = 3
) -> GwaElement:
    terms = {}
    for _ in range(rng.randint(0, 3)):
        terms[rng.randint(-max_deg, max_deg)] = random_poly(rng, poly_deg)
    return A.element(terms)


def random_weight_data(
    rng: random.Random,
    A: GwaAlgebra,
    q: Fraction,
    weight_range: tuple[int, int] = (-3, 3),
    poly_deg: int = 4,
    positive_only: bool = False,
    with_bc: bool = True,
) -> WeightData:
    """Admissible weighted data: alpha_i(h) = gamma_i h^d with mu = q^{1-d}.

    Weight 0 is only populated when a | alpha_0(a) can hold (never for the
    disc, and only for d >= 1 on the plane).
    """
    d = rng.randint(0, 3)
    mu = q ** (1 - d)
    lo, hi = weight_range
    if positive_only:
        lo = 0
    alphas = {}
    for weight in range(lo, hi + 1):
        if rng.random() < 0.5:
            continue
        if weight == 0:
            if A.label == "disc" or d == 0:
                continue
        alphas[weight] = Poly.monomial(random_fraction(rng, nonzero=True), d)
    b = random_poly(rng, poly_deg) if with_bc else Poly.zero()
    c = random_poly(rng, poly_deg) if with_bc else Poly.zero()
    return WeightData(mu, alphas, b, c)


@pytest.fixture
def rng(request) -> random.Random:
    return rng_for(request.node.name)
