import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from spinsuper.basis import BasisState
from spinsuper.errors import SpinIndexError
from spinsuper.observables import (
    chi_from_negativity,
    chi_ss_finite,
    chi_ss_thermo,
    chi_zfc,
    local_moment,
    local_moments,
    magnetization,
    order_parameters,
    q_ea,
    q_ea_analytic,
)
from spinsuper.superposition import (
    BinaryWeights,
    SuperpositionState,
    binary_ss,
    equal_binary_ss,
    ghz,
    product_state,
    random_ss,
)


def test_local_moment_examples():
    assert local_moment(product_state("eg"), 1) == 0.5
    assert local_moment(product_state("egC"), 3) == pytest.approx(0.0, abs=1e-15)
    assert local_moment(equal_binary_ss(4, 5, n=3), 1) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(SpinIndexError):
        local_moment(ghz(3), 4)


def test_pauli_convention_doubles():
    s = equal_binary_ss(2, 4, n=3)
    np.testing.assert_allclose(local_moments(s, pauli=True), 2 * local_moments(s))
    assert q_ea(s, pauli=True) == pytest.approx(4 * q_ea(s))


def test_magnetization_examples():
    assert magnetization(ghz(3)) == pytest.approx(0.0, abs=1e-15)
    assert magnetization(equal_binary_ss(4, 5, n=3)) == pytest.approx(0.0, abs=1e-15)
    assert magnetization(equal_binary_ss(2, 4, n=3)) == pytest.approx(-1 / 6, abs=1e-15)


def test_q_ea_examples():
    for n in range(2, 9):
        assert q_ea(ghz(n)) == pytest.approx(0.0, abs=1e-15)
    assert q_ea(equal_binary_ss(4, 5, n=3)) == pytest.approx(1 / 6, abs=1e-12)
    assert q_ea(product_state("egeg")) == 0.25


def test_order_parameters_has_p_c_for_pairs():
    op = order_parameters(equal_binary_ss(4, 5, n=3))
    assert op.p_c == pytest.approx(1 / 3)
    assert order_parameters(ghz(3)).p_c is None


@pytest.mark.parametrize("n", range(2, 6))
def test_moments_match_pauli_operator_oracle(n):
    for k in range(5):
        s = random_ss(n, seed=k)
        np.testing.assert_allclose(local_moments(s), oracles.moments(s.amplitudes, n), atol=1e-12)
    for a, b in itertools.combinations_with_replacement(range(1 << n), 2):
        s = equal_binary_ss(a, b, n=n)
        np.testing.assert_allclose(local_moments(s), oracles.moments(s.amplitudes, n), atol=1e-12)


@pytest.mark.parametrize(
    "n_c,n,expected", [(2, 4, 0.125), (4, 4, 0.0), (0, 4, 0.25), (1, 3, 1 / 6), (3, 5, 0.1)]
)
def test_q_ea_analytic(n_c, n, expected):
    assert q_ea_analytic(n_c, n) == pytest.approx(expected, abs=1e-15)


def test_q_ea_analytic_domain():
    with pytest.raises(ValueError):
        q_ea_analytic(5, 4)


@pytest.mark.parametrize("n", range(2, 8))
def test_equal_pairs_match_analytic_q(n):
    for a, b in itertools.combinations_with_replacement(range(1 << n), 2):
        s = equal_binary_ss(a, b, n=n)
        n_c = bin(a ^ b).count("1")
        q, m = q_ea(s), magnetization(s)
        assert abs(q - q_ea_analytic(n_c, n)) < 1e-12
        assert abs(m) <= 2 * q + 1e-12
        assert m * m <= q + 1e-12


@pytest.mark.parametrize(
    "fn,args,expected",
    [
        (chi_zfc, (0.0, 1.0), 1.0),
        (chi_zfc, (0.25, 1.0), 0.75),
        (chi_zfc, (0.125, 2.0), 1.75),
        (chi_ss_thermo, (1.0, 1.0), 1.0),
        (chi_ss_thermo, (0.0, 1.0), 0.75),
        (chi_ss_thermo, (0.5, 1.0), 0.875),
        (chi_ss_finite, (1.0, 0.0, 1.0), 0.0),
        (chi_ss_finite, (1 / 3, 1 / 6, 1.0), 0.5),
        (chi_ss_finite, (0.5, 0.125, 1.0), 0.375),
        (chi_from_negativity, (1.0, 1.0), 1.0),
        (chi_from_negativity, (0.0, 1.0), 0.75),
        (chi_from_negativity, (0.5, 1.0), 0.875),
    ],
)
def test_susceptibility_formulas(fn, args, expected):
    assert fn(*args) == pytest.approx(expected, abs=1e-15)


def test_susceptibility_domains():
    with pytest.raises(ValueError):
        chi_zfc(0.3)
    with pytest.raises(ValueError):
        chi_ss_thermo(1.5)
    with pytest.raises(ValueError):
        chi_from_negativity(0.5, beta=0.0)


@given(st.floats(0.0, 0.25), st.floats(0.01, 100.0))
def test_chi_identity(q, beta):
    lhs = chi_from_negativity(1 - q / 0.25, beta)
    assert lhs == pytest.approx(chi_zfc(q, beta), rel=4e-16, abs=4e-16 * beta)


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(0, (1 << n) - 1), st.integers(0, (1 << n) - 1),
    st.floats(0, 2 * np.pi), st.floats(0, 2 * np.pi))))
def test_phase_invariance(p):
    n, a, b, g1, g2 = p
    if a == b:
        return
    ref = equal_binary_ss(a, b, n=n)
    w = BinaryWeights(np.exp(1j * g1) / np.sqrt(2), np.exp(1j * g2) / np.sqrt(2))
    s = binary_ss(BasisState(n, a), BasisState(n, b), w)
    assert q_ea(s) == pytest.approx(q_ea(ref), abs=1e-14)
    assert magnetization(s) == pytest.approx(magnetization(ref), abs=1e-14)


@given(st.integers(2, 6), st.integers(0, 10_000))
def test_bounds_on_random_states(n, seed):
    s = random_ss(n, seed)
    q, m = q_ea(s), magnetization(s)
    assert 0 <= q <= 0.25 + 1e-12
    assert m * m <= q + 1e-12
    assert np.all(np.abs(local_moments(s)) <= 0.5 + 1e-12)


def test_unequal_binary_state_bounds():
    # non-equal weights: still inside the Jensen triangle
    rng = np.random.default_rng(0)
    for _ in range(200):
        n = int(rng.integers(2, 7))
        a, b = rng.integers(0, 1 << n, size=2)
        t = rng.uniform(0, np.pi / 2)
        w = BinaryWeights(np.cos(t), np.sin(t))
        try:
            s = binary_ss(BasisState(n, int(a)), BasisState(n, int(b)), w)
        except Exception:
            continue
        assert q_ea(s) <= 0.25 + 1e-12
        assert magnetization(s) ** 2 <= q_ea(s) + 1e-12


def test_state_built_from_raw_vector():
    psi = np.zeros(4, dtype=complex)
    psi[3] = 1
    s = SuperpositionState(2, psi)
    assert magnetization(s) == 0.5
