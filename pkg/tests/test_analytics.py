import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from phasecode import analytics as an

even_n = st.integers(1, 32).map(lambda h: 2 * h)
lams = st.floats(0, 5)


def test_p_accept_values():
    assert an.p_accept_form(6, 0.0) == 1
    assert an.p_accept_form(4, 0.1) == pytest.approx(0.9093653765389909, abs=1e-15)
    assert an.p_accept_form(6, 20) == pytest.approx(1 / 3, abs=1e-8)


def test_j_values():
    assert an.j_form(8, 0.0) == 1
    assert an.j_form(4, 0.1) == pytest.approx(0.9003320053750443, abs=1e-15)
    one_minus_j = 1 - an.j_form(8, 0.05)
    assert one_minus_j == pytest.approx(4 * 0.05 / 8, rel=0.1)


@pytest.mark.parametrize("fn", [an.p_accept_form, an.j_form])
@pytest.mark.parametrize("n, lam", [(3, 0.1), (0, 0.1), (4, -0.1), (4, math.inf)])
def test_domain_errors(fn, n, lam):
    with pytest.raises(ValueError):
        fn(n, lam)


@given(even_n, lams, st.floats(0.001, 1))
def test_monotone_in_damping(n, lam, step):
    if n > 2:
        assert an.p_accept_form(n, lam + step) < an.p_accept_form(n, lam)
    assert an.j_form(n, lam + step) < an.j_form(n, lam)


@given(even_n, st.floats(0.01, 5))
def test_j_increases_with_n(n, lam):
    assert an.j_form(n + 2, lam) > an.j_form(n, lam)


@given(even_n, lams)
def test_outputs_are_probabilities(n, lam):
    for v in (an.p_accept_form(n, lam), an.j_form(n, lam)):
        assert -1e-12 <= v <= 1 + 1e-12


def test_crossover_grid():
    for lam in np.linspace(0.01, 3, 60):
        for n in range(2, 65, 2):
            assert (an.j_form(n, lam) > an.j_standard(lam)) == (n > an.crossover_n(lam))


def test_fidelity_values():
    assert an.fidelity_form(1.0, 0.3, 0.7) == 1
    assert an.fidelity_form(0.9, 0.5, 0.5) == pytest.approx(0.95)
    grid = np.linspace(0, 1, 101)
    vals = [an.fidelity_form(0.8, x, 1 - x) for x in grid]
    assert min(vals) == pytest.approx(0.9)
    assert grid[int(np.argmin(vals))] == pytest.approx(0.5)
    with pytest.raises(ValueError):
        an.fidelity_form(1.5, 0.5, 0.5)
    with pytest.raises(ValueError):
        an.fidelity_form(0.5, 0.5, 0.6)


@given(st.floats(0, 1), st.floats(0, 1))
def test_fidelity_bound(j, x):
    assert an.fidelity_form(j, x, 1 - x) >= (1 + j) / 2 - 1e-12


def test_watchdog_values():
    p, j = an.watchdog_forms(4, 0.05, 1)
    assert j == pytest.approx(4 / (2 * math.exp(0.05) - 2 + 4))
    assert p == pytest.approx(0.5 + 0.5 * math.exp(-0.05))
    _, j2 = an.watchdog_forms(4, 0.05, 2)
    assert j2 == pytest.approx(0.9506351537386927, abs=1e-15)
    with pytest.raises(ValueError):
        an.watchdog_forms(4, 0.1, 0)


def test_watchdog_at_doubled_exponent_equals_single_pass():
    for n in (2, 4, 10):
        for lam in (0.01, 0.3, 2):
            p, j = an.watchdog_forms(n, 2 * lam, 1)
            assert p == pytest.approx(an.p_accept_form(n, lam), abs=1e-15)
            assert j == pytest.approx(an.j_form(n, lam), abs=1e-15)


def test_quadratic_watchdog_values():
    q = an.quadratic_watchdog_forms(4, 0.001, 5)
    assert q.j_unsliced == pytest.approx(1.0126582278481011, abs=1e-15)
    assert q.j_k == pytest.approx(1.0025037543793782, abs=1e-15)
    assert abs(q.j_k - 1) < abs(q.j_unsliced - 1)
    assert q.j_unsliced_expansion == pytest.approx(1 + 2 * 25 * 0.001 / 4)
    assert q.j_k_expansion == pytest.approx(1 + 2 * 5 * 0.001 / 4)
    q0 = an.quadratic_watchdog_forms(6, 0.0, 3)
    assert q0.j_unsliced == 1 and q0.j_k == 1
    with pytest.raises(ValueError):
        an.quadratic_watchdog_forms(4, 0.05, 5)


def test_two_qubit_values():
    p, f = an.two_qubit_forms(0.0, 0.3, 0.7)
    assert p == 1 and f == pytest.approx(1 - 2 * 0.21)
    p, f = an.two_qubit_forms(0.5, 0.5, 0.5)
    assert p == pytest.approx(0.6839397205857212, abs=1e-15)
    assert f == pytest.approx(0.556590558014963, abs=1e-15)


def test_two_qubit_fidelity_is_flat_at_zero():
    h = 1e-5
    f = lambda lam: an.two_qubit_forms(lam, 0.5, 0.5)[1]  # noqa: E731
    slope = (f(h) - f(0)) / h
    curvature = (f(2 * h) - 2 * f(h) + f(0)) / h**2
    assert abs(slope) < 1e-4
    assert curvature == pytest.approx(0.5, rel=1e-3)  # 2 c0sq c1sq * d2(1/cosh) = -0.5 * -1


def test_cosh_definition():
    for x in (0, 0.3, 2):
        assert an.cosh(x) == pytest.approx(math.cosh(x), rel=1e-15)


def test_evaluate_registry():
    (cf,) = an.evaluate("J", N=4, lam=0.1, k=9)
    assert cf.name == "J" and cf.inputs == {"N": 4, "lam": 0.1}
    rows = an.evaluate("quadratic_watchdog", N=4, eps=0.001, k=5)
    assert [r.name for r in rows][:2] == ["quadratic_watchdog.j_unsliced", "quadratic_watchdog.j_k"]
    with pytest.raises(ValueError):
        an.evaluate("nope")
    with pytest.raises(ValueError):
        an.evaluate("J", N=4)


@given(st.integers(2, 32).map(lambda h: 2 * h), st.floats(0.001, 3), st.integers(2, 16))
def test_slicing_exponential_damping_raises_coherence(n, lam, k):
    # log J is -log(1 + (2/N)(e^x - 1)), convex in x for N > 2, so k slices of
    # lam/k always retain more coherence than one pass at lam.
    single = an.j_form(n, lam)
    _, sliced = an.watchdog_forms(n, 2 * lam / k, k)
    assert sliced > single
