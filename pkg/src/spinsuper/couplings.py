"""
Gaussian all-to-all exchange couplings, classical energies and bond
frustration of basis configurations.

Energies follow H = -sum_{i<k} J_ik s_i s_k with s = +1 for an excited spin
and -1 for a ground spin. A bond is unsatisfied when J_ik s_i s_k < 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .basis import BasisState, check_size
from .errors import SizeMismatch

MAX_SCAN_SPINS = 20
_SCAN_CHUNK = 1 << 14
RNG_ALGORITHM = "numpy Philox4x64-10; key=seed"


@dataclass(frozen=True)
class CouplingMatrix:
    j: np.ndarray
    j_scale: float = 1.0
    seed: int | None = None

    def __post_init__(self):
        j = np.array(self.j, dtype=float)
        if j.ndim != 2 or j.shape[0] != j.shape[1]:
            raise SizeMismatch(f"coupling matrix must be square, got {j.shape}")
        if not np.array_equal(j, j.T):
            raise ValueError("coupling matrix must be symmetric")
        if np.any(np.diag(j) != 0):
            raise ValueError("coupling matrix must have a zero diagonal")
        j.setflags(write=False)
        object.__setattr__(self, "j", j)

    @property
    def n(self) -> int:
        return self.j.shape[0]

    @property
    def j_squared(self) -> float:
        return self.j_scale ** 2

    @property
    def variance(self) -> float:
        return self.j_squared / self.n

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "j": self.j.tolist(),
            "j_scale": self.j_scale,
            "variance": self.variance,
            "seed": self.seed,
            "rng": RNG_ALGORITHM,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "CouplingMatrix":
        return cls(np.array(data["j"], dtype=float), float(data.get("j_scale", 1.0)), data.get("seed"))

    @classmethod
    def from_json(cls, text: str) -> "CouplingMatrix":
        return cls.from_dict(json.loads(text))


def sample_couplings(n: int, j: float = 1.0, seed: int = 0) -> CouplingMatrix:
    """Upper triangle drawn i.i.d. from N(0, j^2 / n), mirrored."""
    n = check_size(n)
    if not j > 0:
        raise ValueError(f"coupling scale must be positive, got {j!r}")
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    iu = np.triu_indices(n, k=1)
    mat = np.zeros((n, n))
    mat[iu] = rng.normal(0.0, j / np.sqrt(n), size=iu[0].size)
    mat = mat + mat.T
    return CouplingMatrix(mat, float(j), int(seed))


def spins_of(indices: np.ndarray, n: int) -> np.ndarray:
    """(len(indices), n) array of +-1 spins, column 0 = spin 1."""
    shifts = np.arange(n - 1, -1, -1)
    return 2 * ((np.asarray(indices)[:, None] >> shifts) & 1) - 1


def _check(state: BasisState, c: CouplingMatrix):
    if state.n != c.n:
        raise SizeMismatch(f"state has {state.n} spins, couplings {c.n}")


def energy(state: BasisState, c: CouplingMatrix) -> float:
    _check(state, c)
    s = spins_of(np.array([state.index]), c.n)[0].astype(float)
    return float(-0.5 * s @ c.j @ s)


def unsatisfied_bonds(state: BasisState, c: CouplingMatrix) -> int:
    _check(state, c)
    s = spins_of(np.array([state.index]), c.n)[0]
    iu = np.triu_indices(c.n, k=1)
    return int(np.sum(c.j[iu] * s[iu[0]] * s[iu[1]] < 0))


@dataclass(frozen=True)
class EnergyRecord:
    state: BasisState
    energy: float
    unsatisfied_bonds: int


def energy_record(state: BasisState, c: CouplingMatrix) -> EnergyRecord:
    return EnergyRecord(state, energy(state, c), unsatisfied_bonds(state, c))


def scan_energies(c: CouplingMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Energies and unsatisfied-bond counts of every basis configuration."""
    n = check_size(c.n, upper=MAX_SCAN_SPINS)
    iu = np.triu_indices(n, k=1)
    bonds = c.j[iu]
    energies = np.empty(1 << n)
    unsat = np.empty(1 << n, dtype=np.int64)
    for start in range(0, 1 << n, _SCAN_CHUNK):
        idx = np.arange(start, min(start + _SCAN_CHUNK, 1 << n))
        s = spins_of(idx, n)
        prod = s[:, iu[0]] * s[:, iu[1]] * bonds
        energies[idx] = -prod.sum(axis=1)
        unsat[idx] = (prod < 0).sum(axis=1)
    return energies, unsat


@dataclass
class FrustrationReport:
    n: int
    min_energy: float
    ground_states: list
    min_unsatisfied: int
    frustrated: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "min_energy": self.min_energy,
            "ground_states": self.ground_states,
            "ground_kets": [BasisState(self.n, k).ket for k in self.ground_states],
            "min_unsatisfied": self.min_unsatisfied,
            "frustrated": self.frustrated,
        }


def frustration_report(c: CouplingMatrix, atol: float = 1e-12) -> FrustrationReport:
    energies, unsat = scan_energies(c)
    e_min = float(energies.min())
    scale = max(1.0, abs(e_min))
    ground = np.flatnonzero(energies <= e_min + atol * scale)
    min_unsat = int(unsat.min())
    return FrustrationReport(
        n=c.n,
        min_energy=e_min,
        ground_states=[int(k) for k in ground],
        min_unsatisfied=min_unsat,
        frustrated=min_unsat > 0,
    )
