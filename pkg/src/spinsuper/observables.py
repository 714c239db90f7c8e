"""
Local moments, magnetization, the Edwards-Anderson order parameter and the
single-state susceptibility formulas.

Moments use the spin-1/2 convention ``m_i = <sigma_i^z> / 2`` so that every
``m_i`` lies in [-1/2, 1/2] and ``q_EA`` never exceeds ``Q_MAX = 0.25``.
Pass ``pauli=True`` to get the bare Pauli expectation values instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .basis import check_size
from .errors import SpinIndexError
from .superposition import BinaryPair, SuperpositionState

Q_MAX = 0.25
_DOMAIN_TOL = 1e-12


@lru_cache(maxsize=32)
def moment_table(n: int) -> np.ndarray:
    """(2^n, n) table of +1/2 (spin excited) or -1/2 (ground) per basis index."""
    idx = np.arange(1 << n)[:, None]
    shifts = np.arange(n - 1, -1, -1)[None, :]
    table = ((idx >> shifts) & 1) - 0.5
    table.setflags(write=False)
    return table


def moments_from_probs(probs: np.ndarray, n: int) -> np.ndarray:
    """Local moments for a batch of probability rows, shape (..., n)."""
    return probs @ moment_table(n)


def local_moments(state: SuperpositionState, pauli: bool = False) -> np.ndarray:
    m = moments_from_probs(state.probabilities, state.n)
    return 2.0 * m if pauli else m


def local_moment(state: SuperpositionState, i: int, pauli: bool = False) -> float:
    if not 1 <= i <= state.n:
        raise SpinIndexError(f"spin index {i} outside [1, {state.n}]")
    return float(local_moments(state, pauli)[i - 1])


def magnetization(state: SuperpositionState, pauli: bool = False) -> float:
    return float(np.mean(local_moments(state, pauli)))


def q_ea(state: SuperpositionState, pauli: bool = False) -> float:
    m = local_moments(state, pauli)
    return float(np.mean(m * m))


@dataclass(frozen=True)
class OrderParameters:
    m: float
    q_ea: float
    p_c: Optional[float] = None


def order_parameters(state: SuperpositionState) -> OrderParameters:
    """(m, q_EA) of a state, plus p_C when it was built from a basis pair."""
    mom = local_moments(state)
    p_c = None
    if isinstance(state.provenance, BinaryPair):
        prov = state.provenance
        p_c = bin(prov.a ^ prov.b).count("1") / state.n
    return OrderParameters(float(mom.mean()), float((mom * mom).mean()), p_c)


def q_ea_analytic(n_c: int, n: int) -> float:
    """Closed-form q_EA of an equal-weight binary pair with ``n_c`` C-spins."""
    n = check_size(n, lower=1)
    if not 0 <= n_c <= n:
        raise ValueError(f"n_c={n_c} outside [0, {n}]")
    return Q_MAX * (1.0 - n_c / n)


def _check_range(name, value, lo, hi=None):
    if value < lo - _DOMAIN_TOL or (hi is not None and value > hi + _DOMAIN_TOL):
        bound = f"[{lo}, {hi}]" if hi is not None else f">= {lo}"
        raise ValueError(f"{name}={value!r} outside {bound}")


def _check_beta(beta):
    if not beta > 0:
        raise ValueError(f"inverse temperature must be positive, got {beta!r}")


def chi_zfc(q: float, beta: float = 1.0) -> float:
    """Zero-field linear response, beta * (1 - q)."""
    _check_range("q", q, 0.0, Q_MAX)
    _check_beta(beta)
    return beta * (1.0 - q)


def chi_ss_thermo(p_c: float, beta: float = 1.0) -> float:
    """Large-N superposition susceptibility, beta * (1 - (1 - p_c) / 4)."""
    _check_range("p_c", p_c, 0.0, 1.0)
    _check_beta(beta)
    return beta * (1.0 - Q_MAX * (1.0 - p_c))


def chi_ss_finite(p_c: float, q: float, beta: float = 1.0) -> float:
    """Finite-size superposition susceptibility, beta * ((1 - p_c) - q)."""
    _check_range("p_c", p_c, 0.0, 1.0)
    _check_range("q", q, 0.0)
    _check_beta(beta)
    return beta * ((1.0 - p_c) - q)


def chi_from_negativity(neg: float, beta: float = 1.0) -> float:
    """Susceptibility from the average normalized negativity, beta/4 * (3 + neg)."""
    _check_range("negativity", neg, 0.0, 1.0)
    _check_beta(beta)
    return beta / 4.0 * (3.0 + neg)
