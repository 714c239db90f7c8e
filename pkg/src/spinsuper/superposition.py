"""
Construction of normalized superposition states over the 2^N basis.

All constructors return a :class:`SuperpositionState`, a complex amplitude
vector indexed by basis integer (see :mod:`spinsuper.basis` for the bit
layout) carrying a provenance record.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Union

import numpy as np

from .basis import (
    MAX_PAIR_SPINS,
    BasisLike,
    BasisState,
    SpinLabel,
    SpinLabelVector,
    _same_size,
    as_basis,
    check_size,
    spin_bit,
)
from .errors import DegenerateState, NoCluster, SizeMismatch

NORM_TOL = 1e-12
INV_SQRT2 = 1.0 / np.sqrt(2.0)

RNG_ALGORITHM = "numpy Philox4x64-10; key=seed, counter high word=block; block=1024 samples"
RANDOM_BLOCK = 1024


@dataclass(frozen=True)
class BinaryPair:
    a: int
    b: int
    alpha: complex
    beta: complex
    kind: str = field(default="binary", init=False)


@dataclass(frozen=True)
class Random:
    seed: int
    index: int = 0
    rng: str = RNG_ALGORITHM
    kind: str = field(default="random", init=False)


@dataclass(frozen=True)
class Constructed:
    description: str = ""
    kind: str = field(default="constructed", init=False)


Provenance = Union[BinaryPair, Random, Constructed]


@dataclass(frozen=True)
class BinaryWeights:
    alpha: complex
    beta: complex

    def __post_init__(self):
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"|alpha|^2 + |beta|^2 = {norm!r}, expected 1")

    @classmethod
    def equal(cls) -> "BinaryWeights":
        return cls(INV_SQRT2, INV_SQRT2)

    @classmethod
    def with_phase(cls, gamma: float) -> "BinaryWeights":
        """Equal weights with a relative phase exp(-i gamma) on the first branch."""
        return cls(np.exp(-1j * gamma) * INV_SQRT2, INV_SQRT2)


@dataclass
class SuperpositionState:
    n: int
    amplitudes: np.ndarray
    provenance: Provenance = field(default_factory=Constructed)

    def __post_init__(self):
        self.n = check_size(self.n, lower=1)
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.n,):
            raise SizeMismatch(
                f"expected {1 << self.n} amplitudes, got shape {self.amplitudes.shape}"
            )
        norm = float(np.vdot(self.amplitudes, self.amplitudes).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm^2 {norm!r} deviates from 1")

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def support(self) -> list[int]:
        return [int(k) for k in np.flatnonzero(self.amplitudes)]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "amplitudes": [[float(z.real), float(z.imag)] for z in self.amplitudes],
            "provenance": _provenance_to_dict(self.provenance),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "SuperpositionState":
        amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
        return cls(int(data["n"]), amps, _provenance_from_dict(data.get("provenance")))

    @classmethod
    def from_json(cls, text: str) -> "SuperpositionState":
        return cls.from_dict(json.loads(text))


def _provenance_to_dict(p: Provenance) -> dict:
    d = asdict(p)
    for key in ("alpha", "beta"):
        if key in d:
            d[key] = [d[key].real, d[key].imag]
    return d


def _provenance_from_dict(d: dict | None) -> Provenance:
    if not d:
        return Constructed()
    kind = d.get("kind")
    if kind == "binary":
        return BinaryPair(d["a"], d["b"], complex(*d["alpha"]), complex(*d["beta"]))
    if kind == "random":
        return Random(d["seed"], d.get("index", 0), d.get("rng", RNG_ALGORITHM))
    return Constructed(d.get("description", ""))


def binary_ss(a: BasisState, b: BasisState, w: BinaryWeights) -> SuperpositionState:
    """alpha|a> + beta|b>, renormalized so that a == b collapses to |a>."""
    n = _same_size(a, b)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[a.index] += w.alpha
    amps[b.index] += w.beta
    norm = np.linalg.norm(amps)
    if norm < 1e-12:
        raise DegenerateState(f"alpha|{a.ket}> + beta|{b.ket}> has zero norm")
    return SuperpositionState(n, amps / norm, BinaryPair(a.index, b.index, w.alpha, w.beta))


def equal_binary_ss(a: BasisLike, b: BasisLike, n: int | None = None) -> SuperpositionState:
    a = as_basis(a, n)
    return binary_ss(a, as_basis(b, a.n), BinaryWeights.equal())


def _random_block(dim: int, seed: int, block: int, count: int) -> np.ndarray:
    bitgen = np.random.Philox(key=int(seed), counter=[0, 0, 0, int(block)])
    z = np.random.Generator(bitgen).standard_normal((count, 2, dim))
    amps = z[:, 0, :] + 1j * z[:, 1, :]
    return amps / np.linalg.norm(amps, axis=1, keepdims=True)


def _random_rows(dim: int, seed: int, start: int, count: int) -> np.ndarray:
    if seed < 0 or start < 0:
        raise ValueError("seed and sample index must be non-negative")
    if count <= 0:
        return np.zeros((0, dim), dtype=np.complex128)
    out = []
    k, stop = start, start + count
    while k < stop:
        block, offset = divmod(k, RANDOM_BLOCK)
        take = min(RANDOM_BLOCK - offset, stop - k)
        out.append(_random_block(dim, seed, block, offset + take)[offset:])
        k += take
    return np.concatenate(out, axis=0)


def random_amplitudes(n: int, seed: int, start: int, count: int) -> np.ndarray:
    """Rows ``start .. start+count-1`` of the seeded random-state stream.

    Sample ``k`` always comes from substream ``(seed, k // RANDOM_BLOCK)``, so
    any partition of the index range yields the same vectors.
    """
    n = check_size(n, upper=MAX_PAIR_SPINS)
    return _random_rows(1 << n, seed, start, count)


def random_binary_weights(seed: int, start: int, count: int) -> np.ndarray:
    """(count, 2) normalized complex (alpha, beta) rows, indexed like pairs."""
    return _random_rows(2, seed, start, count)


def random_ss(n: int, seed: int, index: int = 0) -> SuperpositionState:
    """Complex-Gaussian random state; ``index`` selects a sample of the stream."""
    amps = random_amplitudes(n, seed, index, 1)[0]
    return SuperpositionState(n, amps, Random(int(seed), int(index)))


_LABEL_VECTORS = {
    SpinLabel.E: np.array([0.0, 1.0]),
    SpinLabel.G: np.array([1.0, 0.0]),
    SpinLabel.C: np.array([INV_SQRT2, INV_SQRT2]),
}


def product_state(labels: SpinLabelVector | str) -> SuperpositionState:
    if isinstance(labels, str):
        labels = SpinLabelVector.parse(labels)
    amps = np.ones(1, dtype=np.complex128)
    # spin 1 is the most significant factor
    for lab in labels.labels:
        amps = np.kron(amps, _LABEL_VECTORS[lab])
    return SuperpositionState(labels.n, amps, Constructed(f"product {labels}"))


def ghz(n: int) -> SuperpositionState:
    n = check_size(n)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = amps[-1] = INV_SQRT2
    return SuperpositionState(n, amps, Constructed(f"GHZ_{n}"))


@dataclass(frozen=True)
class ClusterDecomposition:
    """A binary pair written as a GHZ-like cluster times a product state.

    ``cluster`` lists the C-spins (1-based, ascending). ``pattern`` holds
    branch a's bits on those spins, most significant bit = first cluster
    spin; branch b carries the complement. ``fixed`` maps every other spin
    to its e/g label.
    """

    n: int
    cluster: tuple
    pattern: int
    fixed: dict

    @property
    def size(self) -> int:
        return len(self.cluster)

    def embed(self, cluster_vector: np.ndarray) -> np.ndarray:
        """Tensor a 2^k cluster vector with the fixed spins into a 2^n vector."""
        k = self.size
        base = 0
        for i, lab in self.fixed.items():
            if lab is SpinLabel.E:
                base |= spin_bit(self.n, i)
        out = np.zeros(1 << self.n, dtype=np.complex128)
        for c in range(1 << k):
            idx = base
            for pos, spin in enumerate(self.cluster):
                if (c >> (k - 1 - pos)) & 1:
                    idx |= spin_bit(self.n, spin)
            out[idx] = cluster_vector[c]
        return out

    def flip_mask(self) -> int:
        """Cluster-local X flips taking GHZ_k onto this cluster's branches."""
        return self.pattern ^ ((1 << self.size) - 1)

    def reconstruct(self) -> SuperpositionState:
        k = self.size
        cluster_vec = np.zeros(1 << k, dtype=np.complex128)
        cluster_vec[self.pattern] = INV_SQRT2
        cluster_vec[self.pattern ^ ((1 << k) - 1)] = INV_SQRT2
        return SuperpositionState(self.n, self.embed(cluster_vec), Constructed("cluster"))


def cluster_decompose(a: BasisState, b: BasisState) -> ClusterDecomposition:
    n = _same_size(a, b)
    if a.index == b.index:
        raise NoCluster(f"|{a.ket}> superposed with itself has no C-spins")
    cluster, fixed, pattern = [], {}, 0
    for i in range(1, n + 1):
        m = spin_bit(n, i)
        if (a.index ^ b.index) & m:
            cluster.append(i)
            pattern = (pattern << 1) | int(bool(a.index & m))
        else:
            fixed[i] = SpinLabel.E if a.index & m else SpinLabel.G
    return ClusterDecomposition(n, tuple(cluster), pattern, fixed)


def apply_flips(amplitudes: np.ndarray, mask: int) -> np.ndarray:
    """Apply Pauli X on every spin whose bit is set in ``mask``."""
    idx = np.arange(amplitudes.shape[-1]) ^ mask
    return amplitudes[..., idx]
