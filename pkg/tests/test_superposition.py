import itertools

import numpy as np
import pytest

from spinsuper.basis import BasisState, label_pair
from spinsuper.errors import DegenerateState, NoCluster, SizeOutOfRange
from spinsuper.observables import magnetization, q_ea
from spinsuper.superposition import (
    BinaryPair,
    BinaryWeights,
    Random,
    SuperpositionState,
    apply_flips,
    binary_ss,
    cluster_decompose,
    equal_binary_ss,
    ghz,
    product_state,
    random_amplitudes,
    random_binary_weights,
    random_ss,
)

R2 = 1 / np.sqrt(2)


def B(n, k):
    return BasisState(n, k)


def test_binary_ss_two_branches():
    s = equal_binary_ss(4, 5, n=3)
    expected = np.zeros(8)
    expected[[4, 5]] = R2
    np.testing.assert_allclose(s.amplitudes, expected, atol=1e-15)
    assert isinstance(s.provenance, BinaryPair)


def test_binary_ss_diagonal_collapses():
    s = equal_binary_ss(10, 10, n=4)
    expected = np.zeros(16)
    expected[10] = 1
    np.testing.assert_allclose(s.amplitudes, expected, atol=1e-15)


def test_binary_ss_degenerate():
    w = BinaryWeights(R2, -R2)
    with pytest.raises(DegenerateState):
        binary_ss(B(3, 2), B(3, 2), w)


def test_binary_ss_phase_keeps_probabilities():
    base = equal_binary_ss(7, 0, n=3).probabilities
    for gamma in np.linspace(0, 2 * np.pi, 8, endpoint=False):
        s = binary_ss(B(3, 7), B(3, 0), BinaryWeights.with_phase(gamma))
        np.testing.assert_allclose(s.probabilities, base, atol=1e-15)


def test_weights_must_be_normalized():
    with pytest.raises(ValueError):
        BinaryWeights(1.0, 1.0)


def test_equal_pair_ghz3():
    np.testing.assert_allclose(equal_binary_ss(7, 0, n=3).amplitudes, ghz(3).amplitudes)


def test_ghz():
    g = ghz(2)
    np.testing.assert_allclose(g.amplitudes, [R2, 0, 0, R2])
    with pytest.raises(SizeOutOfRange):
        ghz(1)
    g4 = ghz(4)
    assert q_ea(g4) == pytest.approx(0, abs=1e-15)
    assert magnetization(g4) == pytest.approx(0, abs=1e-15)


def test_product_state_examples():
    # |e> (x) |g> (x) |C> splits into |egg> and |ege> with equal weight
    s = product_state("egC")
    expected = np.zeros(8)
    expected[[4, 5]] = R2
    np.testing.assert_allclose(s.amplitudes, expected, atol=1e-15)
    np.testing.assert_allclose(product_state("CC").amplitudes, [0.5] * 4, atol=1e-15)
    expected = np.zeros(8)
    expected[7] = 1
    np.testing.assert_allclose(product_state("eee").amplitudes, expected)


def test_random_ss_contract():
    s = random_ss(3, seed=1)
    assert s.amplitudes.shape == (8,)
    assert abs(np.vdot(s.amplitudes, s.amplitudes).real - 1) < 1e-12
    np.testing.assert_array_equal(s.amplitudes, random_ss(3, seed=1).amplitudes)
    assert not np.array_equal(s.amplitudes, random_ss(3, seed=2).amplitudes)
    assert isinstance(s.provenance, Random)


def test_random_stream_is_partition_invariant():
    full = random_amplitudes(3, 5, 0, 3000)
    parts = np.concatenate([
        random_amplitudes(3, 5, 0, 1000),
        random_amplitudes(3, 5, 1000, 1500),
        random_amplitudes(3, 5, 2500, 500),
    ])
    np.testing.assert_array_equal(full, parts)
    np.testing.assert_array_equal(random_ss(3, 5, index=2047).amplitudes, full[2047])


def test_random_weights_normalized():
    w = random_binary_weights(3, 0, 100)
    np.testing.assert_allclose(np.sum(np.abs(w) ** 2, axis=1), 1.0, atol=1e-12)


def test_random_states_respect_bounds():
    # brute-force sampling check of q <= 1/4 and m^2 <= q
    amps = random_amplitudes(3, 11, 0, 2000)
    for row in amps:
        s = SuperpositionState(3, row)
        q, m = q_ea(s), magnetization(s)
        assert 0 <= q <= 0.25
        assert m * m <= q + 1e-15


def test_json_roundtrip():
    s = binary_ss(B(3, 7), B(3, 0), BinaryWeights.with_phase(0.3))
    back = SuperpositionState.from_json(s.to_json())
    np.testing.assert_array_equal(back.amplitudes, s.amplitudes)
    assert back.provenance == s.provenance
    r = random_ss(2, 4)
    assert SuperpositionState.from_json(r.to_json()).provenance == r.provenance


def test_state_rejects_unnormalized():
    with pytest.raises(ValueError):
        SuperpositionState(2, np.ones(4))


def test_cluster_decompose_examples():
    d = cluster_decompose(B(4, 10), B(4, 6))
    assert d.cluster == (1, 2)
    assert {i: str(l) for i, l in d.fixed.items()} == {3: "e", 4: "g"}
    d = cluster_decompose(B(3, 7), B(3, 0))
    assert d.cluster == (1, 2, 3) and d.fixed == {}
    d = cluster_decompose(BasisState.from_ket("eegeg"), BasisState.from_ket("ggeeg"))
    assert str(label_pair(BasisState.from_ket("eegeg"), BasisState.from_ket("ggeeg"))) == "CCCeg"
    assert d.size == 3
    with pytest.raises(NoCluster):
        cluster_decompose(B(3, 2), B(3, 2))


@pytest.mark.parametrize("n", range(2, 7))
def test_cluster_reconstruction_all_pairs(n):
    for a, b in itertools.combinations(range(1 << n), 2):
        psi = equal_binary_ss(a, b, n=n).amplitudes
        d = cluster_decompose(B(n, a), B(n, b))
        fid = abs(np.vdot(d.reconstruct().amplitudes, psi)) ** 2
        assert abs(fid - 1) < 1e-12


@pytest.mark.parametrize("n", range(2, 6))
def test_pair_is_flipped_ghz_times_product(n):
    for a, b in itertools.combinations(range(1 << n), 2):
        d = cluster_decompose(B(n, a), B(n, b))
        cluster = apply_flips(ghz(d.size).amplitudes if d.size >= 2 else np.array([R2, R2]), d.flip_mask())
        np.testing.assert_allclose(d.embed(cluster), equal_binary_ss(a, b, n=n).amplitudes, atol=1e-15)
