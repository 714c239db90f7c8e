"""
Bipartite negativity of pure superposition states.

Two independent routes are provided:

* ``negativity_dense`` builds rho = |psi><psi|, partially transposes it and
  sums absolute eigenvalues. Exponential in memory; kept as the oracle.
* ``negativity_schmidt`` uses the pure-state identity
  ||rho^{T_A}||_1 = (sum_k sqrt(mu_k))^2 with mu_k the reduced-state
  eigenvalues. This is what sweeps use.

``raw`` is (||rho^T||_1 - 1) / 2, which tops out at 1/2 for one spin;
``normalized = 2 * raw`` lives on [0, 1] and is the value averaged and
compared against the linear law in q_EA.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .basis import MAX_PAIR_SPINS, BasisLike, as_basis, check_size
from .errors import PartitionError, SizeOutOfRange
from .observables import Q_MAX
from .superposition import SuperpositionState

EIG_ZERO = 1e-10
MAX_DENSE_SPINS = 8


@dataclass(frozen=True)
class NegativityResult:
    raw: float
    normalized: float
    partition: tuple


def _partition(n: int, partition: Iterable[int] | int) -> tuple:
    if isinstance(partition, (int, np.integer)):
        partition = (int(partition),)
    part = tuple(sorted(set(int(i) for i in partition)))
    if not part or len(part) >= n:
        raise PartitionError(f"partition {part} must be a nonempty proper subset of 1..{n}")
    if part[0] < 1 or part[-1] > n:
        raise PartitionError(f"partition {part} has spins outside 1..{n}")
    return part


def density_matrix(state: SuperpositionState) -> np.ndarray:
    if state.n > MAX_PAIR_SPINS:
        raise SizeOutOfRange(f"dense density matrix capped at {MAX_PAIR_SPINS} spins")
    psi = state.amplitudes
    return np.outer(psi, psi.conj())


def partial_transpose(rho: np.ndarray, partition: Iterable[int] | int, n: int | None = None) -> np.ndarray:
    """Transpose the tensor factors of the spins in ``partition`` (1-based)."""
    dim = rho.shape[0]
    if n is None:
        n = dim.bit_length() - 1
    if rho.shape != (1 << n, 1 << n):
        raise SizeOutOfRange(f"matrix of shape {rho.shape} is not a {n}-spin operator")
    part = _partition(n, partition)
    t = rho.reshape((2,) * (2 * n))
    axes = list(range(2 * n))
    for i in part:
        axes[i - 1], axes[n + i - 1] = axes[n + i - 1], axes[i - 1]
    return t.transpose(axes).reshape(dim, dim)


def _trace_norm_hermitian(mat: np.ndarray) -> float:
    ev = np.linalg.eigvalsh(mat)
    ev[np.abs(ev) < EIG_ZERO] = 0.0
    return float(np.sum(np.abs(ev)))


def negativity_dense(state: SuperpositionState, partition: Iterable[int] | int) -> NegativityResult:
    if state.n > MAX_DENSE_SPINS:
        raise SizeOutOfRange(f"dense negativity capped at {MAX_DENSE_SPINS} spins")
    part = _partition(state.n, partition)
    pt = partial_transpose(density_matrix(state), part, state.n)
    raw = (_trace_norm_hermitian(pt) - 1.0) / 2.0
    return NegativityResult(raw, 2.0 * raw, part)


def _schmidt_trace_norm(psi: np.ndarray, n: int, part: tuple) -> float:
    rest = [i for i in range(1, n + 1) if i not in part]
    t = psi.reshape((2,) * n).transpose([i - 1 for i in part] + [i - 1 for i in rest])
    mat = t.reshape(1 << len(part), 1 << len(rest))
    # reduced state on the smaller side
    red = mat @ mat.conj().T if mat.shape[0] <= mat.shape[1] else mat.conj().T @ mat
    mu = np.linalg.eigvalsh(red)
    mu[mu < EIG_ZERO] = 0.0
    return float(np.sum(np.sqrt(mu)) ** 2)


def negativity_schmidt(state: SuperpositionState, partition: Iterable[int] | int) -> NegativityResult:
    part = _partition(state.n, partition)
    if len(part) == 1:
        neg = float(single_spin_negativities(state.amplitudes[None, :], state.n)[0, part[0] - 1])
        return NegativityResult(neg / 2.0, neg, part)
    raw = (_schmidt_trace_norm(state.amplitudes, state.n, part) - 1.0) / 2.0
    return NegativityResult(raw, 2.0 * raw, part)


def single_spin_negativities(amplitudes: np.ndarray, n: int) -> np.ndarray:
    """Normalized spin-vs-rest negativity for a batch of pure states.

    ``amplitudes`` has shape (B, 2^n); the result has shape (B, n). For one
    spin the trace norm is 1 + 2 sqrt(mu_0 mu_1), hence normalized
    negativity 2 sqrt(mu_0 mu_1).
    """
    amps = np.asarray(amplitudes)
    batch = amps.shape[0]
    out = np.empty((batch, n))
    for i in range(1, n + 1):
        t = amps.reshape(batch, 1 << (i - 1), 2, 1 << (n - i))
        g, e = t[:, :, 0, :], t[:, :, 1, :]
        red = np.empty((batch, 2, 2), dtype=np.complex128)
        red[:, 0, 0] = np.sum(np.abs(g) ** 2, axis=(1, 2))
        red[:, 1, 1] = np.sum(np.abs(e) ** 2, axis=(1, 2))
        red[:, 0, 1] = np.sum(g * e.conj(), axis=(1, 2))
        red[:, 1, 0] = red[:, 0, 1].conj()
        mu = np.linalg.eigvalsh(red)
        mu[mu < EIG_ZERO] = 0.0
        out[:, i - 1] = 2.0 * np.sqrt(mu[:, 0] * mu[:, 1])
    return out


def avg_negativity(state: SuperpositionState) -> float:
    check_size(state.n)
    negs = single_spin_negativities(state.amplitudes[None, :], state.n)[0]
    # ascending spin order keeps the sum bit-reproducible
    return float(sum(negs.tolist()) / state.n)


def avg_negativity_dense(state: SuperpositionState) -> float:
    total = 0.0
    for i in range(1, state.n + 1):
        total += negativity_dense(state, i).normalized
    return total / state.n


def predicted_negativity(q: float, q_max: float = Q_MAX) -> float:
    """Linear law 1 - q / q_max."""
    if q < -1e-12 or q > Q_MAX + 1e-12:
        raise ValueError(f"q={q!r} outside [0, {Q_MAX}]")
    return 1.0 - q / q_max


def entangled_cluster_size(a: BasisLike, b: BasisLike, n: int | None = None) -> int:
    """Number of spins in the GHZ-like cluster; 0 when the pair is separable."""
    a = as_basis(a, n)
    b = as_basis(b, a.n)
    n_c = bin(a.index ^ b.index).count("1")
    return n_c if n_c >= 2 else 0
