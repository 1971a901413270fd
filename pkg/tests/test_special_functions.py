import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from distorder.errors import BranchCut, Overflow
from distorder.quadrature import QuadratureConfig
from distorder.special_functions import (
    classical_reciprocal_gamma,
    eval_h,
    eval_h_err,
    eval_h_many,
    lambda_power,
    log_gamma,
    reciprocal_factorial,
    tail_cutoff,
)
from distorder.spectrum import CharacteristicRoot

BETA = math.sqrt(2.0)

# 1/Gamma(z) from mpmath at 30 digits, frozen
RGAMMA_ORACLE = [
    (1.5, 1.1283791670955126),
    (-0.5, -0.28209479177387814),
    (0.1, 0.10511370061117778),
    (-2.5, -1.057855469152043),
    (7.25, 0.000865515347709574),
    (-3.999, 0.02396384361606743),
]

# h(x, lambda) by 30-digit mpmath quadrature of the defining integral, frozen.
# Roots use their unwrapped argument 2 k pi / beta.
H_ORACLE = [
    (0.5, "0.5", complex(1.624602091620321, 0.0)),
    (1, "0.5", complex(1.8286017509626362, 0.0)),
    (2, "0.5", complex(2.8077702420285195, 0.0)),
    (5, "0.5", complex(12.21478083037666, 0.0)),
    (10, "0.5", complex(148.42715501543114, 0.0)),
    (0.5, "2", complex(2.8077702420285195, 0.0)),
    (1, "2", complex(7.430846678840145, 0.0)),
    (2, "2", complex(54.61656225524203, 0.0)),
    (5, "2", complex(22026.47162655075, 0.0)),
    (10, "2", complex(485165195.4121676, 0.0)),
    (0.5, "1+1j", complex(1.5406702169133204, 0.6957985890808718)),
    (1, "1+1j", complex(1.510376906913288, 2.238521233083434)),
    (2, "1+1j", complex(-3.0577169944805895, 6.695630496672307)),
    (5, "1+1j", complex(42.104218631304796, -142.3247503601187)),
    (10, "1+1j", complex(-18481.778370405165, -11982.865597644404)),
    (0.5, "k1", complex(0.010774673362520014, -0.12453556914976646)),
    (1, "k1", complex(0.028865264212104728, -0.05786065624618259)),
    (2, "k1", complex(0.023222846308142437, -0.020324286113680156)),
    (5, "k1", complex(0.009888010340020795, -0.002529385668829959)),
    (10, "k1", complex(0.004152593103414614, 0.00010948358364706022)),
    (0.5, "k-2", complex(0.023660304836596324, -0.01283349709001915)),
    (1, "k-2", complex(0.01059703533316149, -0.008267340664133463)),
    (2, "k-2", complex(0.004479294104706601, -0.004868504843780913)),
    (5, "k-2", complex(0.0012878573190524178, -0.0021867755041033803)),
    (10, "k-2", complex(0.0004489636484981974, -0.0011256474685225062)),
]

LAMBDAS = {
    "0.5": 0.5,
    "2": 2.0,
    "1+1j": 1 + 1j,
    "k1": CharacteristicRoot(1, BETA),
    "k-2": CharacteristicRoot(-2, BETA),
}


@pytest.mark.parametrize("z, expected", RGAMMA_ORACLE)
def test_reciprocal_gamma_oracle(z, expected):
    assert classical_reciprocal_gamma(z) == pytest.approx(expected, rel=5e-13, abs=1e-15)


def test_reciprocal_gamma_half_integers():
    assert reciprocal_factorial(0.5) == pytest.approx(1.0 / (0.5 * math.sqrt(math.pi)), rel=1e-14)
    assert classical_reciprocal_gamma(1.5) == pytest.approx(2.0 / math.sqrt(math.pi), rel=1e-14)
    val = classical_reciprocal_gamma(-0.5)
    assert val < 0
    assert val == pytest.approx(-1.0 / (2.0 * math.sqrt(math.pi)), rel=1e-14)


@pytest.mark.parametrize("n", range(-6, 1))
def test_reciprocal_gamma_poles_are_exact_zeros(n):
    assert classical_reciprocal_gamma(float(n)) == 0.0


@given(st.floats(min_value=-0.999, max_value=40.0))
def test_reciprocal_factorial_matches_stdlib(v):
    assert reciprocal_factorial(v) == pytest.approx(1.0 / math.gamma(v + 1.0), rel=5e-13)


@given(st.floats(min_value=-50.0, max_value=-1.0))
def test_factorial_convention_vanishes(v):
    assert reciprocal_factorial(v) == 0.0


@given(st.floats(min_value=0.5, max_value=170.0))
def test_log_gamma_matches_stdlib(u):
    assert log_gamma(u) == pytest.approx(math.lgamma(u), rel=1e-13, abs=1e-13)


def test_log_gamma_domain():
    with pytest.raises(ValueError):
        log_gamma(0.25)


@pytest.mark.parametrize("x, name, expected", H_ORACLE)
def test_eval_h_oracle_grid(x, name, expected):
    got = eval_h(x, LAMBDAS[name])
    assert abs(got - expected) <= 1e-9 * (1.0 + abs(expected))


def test_eval_h_trapezoid_oracle():
    # brute-force composite trapezoid on [-1, 50] with 1e6 panels
    nu = np.linspace(-1.0, 50.0, 1_000_001)
    lg = np.array([math.lgamma(v + 1.0) for v in nu[1:]])
    f = np.concatenate(([0.0], np.exp(nu[1:] * math.log(2.0) - lg)))
    ref = (nu[1] - nu[0]) * (f.sum() - 0.5 * (f[0] + f[-1]))
    assert eval_h(1.0, 2.0) == pytest.approx(ref, rel=1e-8)


def test_error_estimate_is_small():
    val, err = eval_h_err(2.0, CharacteristicRoot(1, BETA))
    assert 0.0 <= err <= 1e-10 * (1.0 + abs(val))


def test_real_lambda_gives_real_positive():
    for x in (0.1, 1.0, 3.0):
        for lam in (0.3, 1.0, 4.0):
            v = eval_h(x, lam)
            assert v.imag == 0.0
            assert v.real > 0.0


@pytest.mark.parametrize("k", [1, 2, 5])
@pytest.mark.parametrize("x", [0.7, 2.0, 6.0])
def test_conjugate_symmetry(k, x):
    a = eval_h(x, CharacteristicRoot(k, BETA))
    b = eval_h(x, CharacteristicRoot(-k, BETA))
    assert abs(a - b.conjugate()) <= 1e-12 * (1.0 + abs(a))


def test_lower_terminal_convention():
    lam = CharacteristicRoot(2, BETA)
    base = eval_h(1.5, lam)
    for lower in (-3.0, -2.0, -1.5):
        assert abs(eval_h(1.5, lam, lower=lower) - base) <= 1e-13
    with pytest.raises(ValueError):
        eval_h(1.5, lam, lower=-3.5)


def test_scaling_in_x_and_lambda():
    # h depends on x and lambda only through x * lambda
    assert eval_h(2.0, 0.5) == pytest.approx(eval_h(0.5, 2.0), rel=1e-13)
    assert eval_h(4.0, 1.5) == pytest.approx(eval_h(3.0, 2.0), rel=1e-13)


def test_unwrapped_log_differs_from_principal():
    r = CharacteristicRoot(3, BETA)  # argument 6.66 rad is outside (-pi, pi]
    assert abs(eval_h(1.0, r) - eval_h(1.0, r.value)) > 1e-3
    assert lambda_power(r, 0.5) == pytest.approx(np.exp(1j * r.theta * 0.5))


def test_invalid_inputs():
    with pytest.raises(ValueError):
        eval_h(0.0, 2.0)
    with pytest.raises(ValueError):
        eval_h(-1.0, 2.0)
    with pytest.raises(ValueError):
        eval_h(math.nan, 2.0)
    with pytest.raises(BranchCut):
        eval_h(1.0, -2.0)
    with pytest.raises(ValueError):
        eval_h(1.0, 0.0)
    with pytest.raises(Overflow):
        eval_h(700.0, 1.0)


def test_tail_cutoff_bound():
    for s in (0.01, 1.0, 5.0, 50.0, 300.0):
        T = tail_cutoff(s, 1e-14)
        assert T >= 30 and T >= math.e * s
        assert T * math.log(s) - math.lgamma(T + 1) - math.log(math.log(T / s)) < math.log(1e-14)


def test_tight_config_agrees():
    cfg = QuadratureConfig(abs_tol=1e-8, rel_tol=1e-8)
    lam = CharacteristicRoot(1, BETA)
    assert abs(eval_h(2.0, lam, config=cfg) - eval_h(2.0, lam)) <= 1e-8


def test_eval_h_many():
    xs = [0.5, 1.0, 2.0]
    vals = eval_h_many(xs, 2.0)
    assert vals.shape == (3,)
    assert vals[1] == pytest.approx(eval_h(1.0, 2.0))


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.05, max_value=20.0), st.integers(min_value=1, max_value=8))
def test_conjugate_symmetry_property(x, k):
    a = eval_h(x, CharacteristicRoot(k, BETA))
    b = eval_h(x, CharacteristicRoot(-k, BETA))
    assert abs(a - b.conjugate()) <= 1e-12 * (1.0 + abs(a))
