import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from distorder.errors import DegenerateLattice
from distorder.solvers import simpson_weights
from distorder.spectrum import CharacteristicRoot, OrderInterval, char_fn, mode_fn, mode_inner_product, roots

BETA = math.sqrt(2.0)


def test_roots_are_zeros():
    for r in roots(BETA, 20):
        assert abs(char_fn(r, BETA)) <= 1e-12


def test_limit_at_one():
    assert char_fn(1.0, BETA) == pytest.approx(BETA, abs=1e-12)
    # the series branch agrees with the closed form just outside its range
    z = cmath.exp(2e-4j)
    closed = (cmath.exp(BETA * 2e-4j) - 1) / 2e-4j
    assert abs(char_fn(z, BETA) - closed) < 1e-12


def test_root_ordering_and_values():
    rs = roots(BETA, 3)
    assert [r.k for r in rs] == [-3, -2, -1, 1, 2, 3]
    for r in rs:
        assert abs(abs(r.value) - 1.0) < 1e-15
        assert r.value == pytest.approx(cmath.exp(2j * math.pi * r.k / BETA))
        assert r.conjugate().value == pytest.approx(r.value.conjugate())


def test_root_argument_is_unwrapped():
    r = CharacteristicRoot(4, BETA)
    assert r.theta == pytest.approx(8 * math.pi / BETA)
    assert r.log.imag > math.pi


@pytest.mark.parametrize("beta", [1.0, 2.0, 0.5])
def test_rational_beta_is_degenerate(beta):
    with pytest.raises(DegenerateLattice):
        roots(beta, 2)


def test_rational_beta_with_large_denominator_is_fine():
    # beta = 3/2: lambda_k = 1 first at k = 3/2 * j, so k = 3
    assert len(roots(1.5, 1)) == 2
    with pytest.raises(DegenerateLattice):
        roots(1.5, 3)


def test_validation():
    with pytest.raises(ValueError):
        roots(BETA, 0)
    with pytest.raises(ValueError):
        CharacteristicRoot(0, BETA)
    for bad in (0.0, -1.0, 2.5, math.inf):
        with pytest.raises(ValueError):
            OrderInterval(bad)


def test_orthogonality_against_quadrature():
    nodes = np.linspace(0.0, BETA, 129)
    w = simpson_weights(129, nodes[1] - nodes[0])
    for k in range(-5, 6):
        for n in range(-5, 6):
            q = sum(wi * mode_fn(k, a, BETA) * mode_fn(n, a, BETA).conjugate() for wi, a in zip(w, nodes))
            assert abs(q - mode_inner_product(k, n, BETA)) <= 1e-10
    assert mode_inner_product(2, 2, BETA) == BETA


@given(st.floats(min_value=0.0, max_value=BETA), st.integers(-10, 10).filter(bool))
def test_mode_is_root_power(alpha, k):
    r = CharacteristicRoot(k, BETA)
    assert mode_fn(k, alpha, BETA) == pytest.approx(cmath.exp(alpha * r.log), abs=1e-13)
