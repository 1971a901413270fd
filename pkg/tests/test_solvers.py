import math

import numpy as np
import pytest

from distorder.errors import DegenerateMode, GridTooCoarse, NonDegeneracyViolated
from distorder.solvers import (
    BoundaryProblem,
    CauchyProblem,
    DataFunction,
    SpectralSeries,
    evaluate_series,
    evaluate_series_deriv,
    project_coefficient,
    solve_bvp,
    solve_cauchy,
)
from distorder.special_functions import eval_h
from distorder.spectrum import CharacteristicRoot, OrderInterval
from distorder.verification import (
    degenerate_left_endpoint,
    manufactured_bvp,
    manufactured_cauchy,
    degenerate_b0,
)

BETA = math.sqrt(2.0)
IV = OrderInterval(BETA)


def grid(n=513):
    return np.linspace(0.0, BETA, n)


def test_projection_of_modes():
    for k in (-3, 1, 4):
        for n in (-3, 1, 2, 4):
            p = project_coefficient(DataFunction.mode(k), n, IV)
            assert abs(p - (BETA if k == n else 0.0)) <= 1e-13


def test_projection_of_sampled_modes_is_exact():
    al = grid(65)
    phi = DataFunction.sampled(al, np.exp(2j * np.pi * 3 * al / BETA), BETA)
    assert abs(project_coefficient(phi, 3, IV) - BETA) < 1e-13
    assert abs(project_coefficient(phi, -3, IV)) < 1e-13


def test_cosine_splits_into_two_modes():
    phi = DataFunction.cosine(2)
    assert project_coefficient(phi, 2, IV) == pytest.approx(BETA / 2)
    assert project_coefficient(phi, -2, IV) == pytest.approx(BETA / 2)


def test_single_mode_cauchy():
    s = solve_cauchy(CauchyProblem(1.0, DataFunction.mode(2), IV, 4))
    h = eval_h(1.0, CharacteristicRoot(2, BETA))
    assert s.coefficients[2] == pytest.approx(1.0 / h, rel=1e-12)
    assert all(abs(c) < 1e-13 for k, c in s.coefficients.items() if k != 2)
    for al in (0.0, 0.4, 1.2):
        assert abs(evaluate_series_deriv(s, 1.0, al) - np.exp(2j * np.pi * 2 * al / BETA)) < 1e-12


def test_manufactured_cauchy_roundtrip():
    p, coefs = manufactured_cauchy()
    s = solve_cauchy(p)
    for k, c in s.coefficients.items():
        assert abs(c - coefs.get(k, 0.0)) <= 1e-8
    assert s.diagnostics["neglected_tail"] < 1e-10
    assert s.diagnostics["projection_residual"] < 1e-10
    for x in np.linspace(1.0, 4.0, 7):
        y = s(x)
        assert abs(y.imag) <= 1e-10 * (1.0 + abs(y))


def test_manufactured_bvp_roundtrip():
    p, coefs = manufactured_bvp()
    s = solve_bvp(p)
    for k, c in s.coefficients.items():
        assert abs(c - coefs.get(k, 0.0)) <= 1e-8
    for al, ref in zip(p.phi.alphas[::64], p.phi.values[::64]):
        lhs = p.a0 * evaluate_series_deriv(s, p.a, al) + p.b0 * evaluate_series_deriv(s, p.b, al)
        assert abs(lhs - ref) < 1e-7


def test_linearity():
    f, g = DataFunction.mode(1), DataFunction.cosine(3)
    sf = solve_cauchy(CauchyProblem(1.5, f, IV, 4))
    sg = solve_cauchy(CauchyProblem(1.5, g, IV, 4))
    sfg = solve_cauchy(CauchyProblem(1.5, f * 2.0 + g * (-0.5j), IV, 4))
    for k in sfg.coefficients:
        assert abs(sfg.coefficients[k] - (2.0 * sf.coefficients[k] - 0.5j * sg.coefficients[k])) < 1e-13


def test_bvp_scaling_invariance():
    phi = DataFunction.cosine(1)
    s1 = solve_bvp(BoundaryProblem(1.0, 2.0, 1.0, 2.0, phi, IV, 3))
    s2 = solve_bvp(BoundaryProblem(1.0, 2.0, 3.0, 6.0, phi * 3.0, IV, 3))
    for k in s1.coefficients:
        assert abs(s1.coefficients[k] - s2.coefficients[k]) < 1e-13


def test_bvp_reduces_to_cauchy():
    p, _ = manufactured_cauchy()
    sc = solve_cauchy(p)
    sb = solve_bvp(BoundaryProblem(p.a, 2.0, 1.0, 0.0, p.phi, p.interval, p.k_max))
    for k in sc.coefficients:
        assert abs(sc.coefficients[k] - sb.coefficients[k]) <= 1e-12


def test_real_data_gives_conjugate_coefficients():
    s = solve_cauchy(CauchyProblem(2.0, DataFunction.cosine(1) + DataFunction.cosine(2) * 0.3, IV, 5))
    for k in range(1, 6):
        assert abs(s.coefficients[k] - s.coefficients[-k].conjugate()) < 1e-14


def test_constant_data_projects_to_zero():
    s = solve_cauchy(CauchyProblem(1.0, DataFunction.constant(1.0), IV, 16))
    assert max(abs(c) for c in s.coefficients.values()) <= 1e-10
    assert s.diagnostics["zero_projection"]
    assert s.diagnostics["projection_residual"] == pytest.approx(1.0)


def test_degenerate_mode_raises():
    with pytest.raises(DegenerateMode) as e:
        solve_cauchy(CauchyProblem(1.0, DataFunction.mode(1), IV, 2), degeneracy_floor=1.0)
    assert e.value.exit_code == 5


def test_near_degenerate_bvp_raises():
    b = 4.0
    a = degenerate_left_endpoint(b, BETA)
    b0 = degenerate_b0(a, b, BETA)
    with pytest.raises(NonDegeneracyViolated) as e:
        solve_bvp(BoundaryProblem(a, b, 1.0, b0, DataFunction.mode(1), IV, 2))
    assert abs(e.value.m) == 1


def test_sampled_data_validation():
    with pytest.raises(GridTooCoarse):
        DataFunction.sampled(np.linspace(0, BETA, 7), np.zeros(7))
    with pytest.raises(ValueError):
        DataFunction.sampled(np.linspace(0, BETA, 10), np.zeros(10))
    with pytest.raises(ValueError):
        DataFunction.sampled(np.linspace(0.1, BETA, 9), np.zeros(9))
    nonuniform = np.linspace(0, 1, 9) ** 2 * BETA
    with pytest.raises(ValueError):
        DataFunction.sampled(nonuniform, np.zeros(9))
    phi = DataFunction.sampled(np.linspace(0, 1.0, 9), np.zeros(9))
    with pytest.raises(ValueError):
        CauchyProblem(1.0, phi, IV, 4)


def test_problem_validation():
    phi = DataFunction.mode(1)
    with pytest.raises(ValueError):
        CauchyProblem(0.0, phi, IV)
    with pytest.raises(ValueError):
        CauchyProblem(1.0, phi, IV, 0)
    with pytest.raises(ValueError):
        BoundaryProblem(2.0, 1.0, 1.0, 1.0, phi, IV)
    with pytest.raises(ValueError):
        BoundaryProblem(1.0, 2.0, 0.0, 0.0, phi, IV)


def test_series_evaluation():
    s = SpectralSeries({1: 1.0, -1: 1.0}, BETA)
    h = eval_h(2.0, CharacteristicRoot(1, BETA))
    assert evaluate_series(s, 2.0) == pytest.approx(2.0 * h.real)
    assert s.k_max == 1
    with pytest.raises(ValueError):
        evaluate_series_deriv(s, 2.0, BETA + 0.1)
    with pytest.raises(ValueError):
        SpectralSeries({0: 1.0}, BETA)
