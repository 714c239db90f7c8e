"""
Magnetic phase tags from (m, q_EA) and the co-excitation rule filter.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .basis import BasisLike, as_basis, check_size
from .errors import InconsistentInputs

DEFAULT_TOL = 1e-9
RANDOM_TOL = 1e-3
MAX_CROSS_SPINS = 10


class PhaseTag(str, Enum):
    SG = "SG"
    FM_PLUS = "FM_plus"
    FM_MINUS = "FM_minus"
    PM = "PM"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ClassifierConfig:
    zero_tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not 0.0 < self.zero_tol < 0.01:
            raise ValueError(f"zero_tol must lie in (0, 0.01), got {self.zero_tol!r}")


def classify(m: float, q: float, cfg: ClassifierConfig | None = None, strict: bool = True) -> PhaseTag:
    """Phase tag from the zero tests |m| < tol and q < tol.

    The cell q < tol <= |m| has no tag of its own. It is reachable for
    continuous weights because only |m| <= sqrt(q) holds, not |m| <= q.
    ``strict`` raises there; otherwise the sign of m decides, since
    q >= m^2 > 0.
    """
    tol = (cfg or ClassifierConfig()).zero_tol
    m_zero = abs(m) < tol
    if q < tol and m_zero:
        return PhaseTag.PM
    if q < tol and strict:
        raise InconsistentInputs(f"m={m!r} is nonzero while q={q!r} vanishes")
    if m_zero:
        return PhaseTag.SG
    return PhaseTag.FM_PLUS if m > 0 else PhaseTag.FM_MINUS


def sg_rule_filter(a: BasisLike, b: BasisLike, n: int | None = None) -> bool:
    """At least one co-excited spin, and no more excited labels (summed over
    both branches) than spins."""
    a = as_basis(a, n)
    b = as_basis(b, a.n)
    co_excited = bin(a.index & b.index).count("1")
    excited = a.popcount() + b.popcount()
    return co_excited >= 1 and excited <= a.n


def pair_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All unordered pairs a <= b in ascending (a, b) order."""
    a, b = np.triu_indices(1 << n)
    return a.astype(np.int64), b.astype(np.int64)


def popcount(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    out = np.zeros_like(x)
    while np.any(x):
        out += x & 1
        x = x >> 1
    return out


def equal_pair_order_parameters(n: int, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(m, q) of equal-weight pairs straight from the bit labels.

    Each spin contributes +1/2 (co-excited), -1/2 (co-ground) or 0 (C).
    """
    shifts = np.arange(n - 1, -1, -1)
    bits_a = (a[:, None] >> shifts) & 1
    bits_b = (b[:, None] >> shifts) & 1
    mom = 0.5 * (bits_a + bits_b) - 0.5
    return mom.mean(axis=1), (mom * mom).mean(axis=1)


@dataclass
class CrossValidationReport:
    n: int
    zero_tol: float
    total: int
    counts: dict
    q_histogram: dict
    agree: int
    rule_only: list = field(default_factory=list)
    classifier_only: list = field(default_factory=list)

    @property
    def disagreements(self) -> list:
        return self.rule_only + self.classifier_only

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "zero_tol": self.zero_tol,
            "total": self.total,
            "counts": self.counts,
            "sg_q_histogram": {repr(k): v for k, v in self.q_histogram.items()},
            "agree": self.agree,
            "disagree": len(self.disagreements),
            "rule_only": [list(p) for p in self.rule_only],
            "classifier_only": [list(p) for p in self.classifier_only],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def cross_validate(n: int, cfg: ClassifierConfig | None = None) -> CrossValidationReport:
    """Compare the rule filter against the (m, q) SG tag over all equal pairs."""
    n = check_size(n, upper=MAX_CROSS_SPINS)
    cfg = cfg or ClassifierConfig()
    a, b = pair_indices(n)
    m, q = equal_pair_order_parameters(n, a, b)

    co = popcount(a & b)
    rule = (co >= 1) & (popcount(a) + popcount(b) <= n)

    tags = [classify(float(mi), float(qi), cfg) for mi, qi in zip(m, q)]
    sg = np.array([t is PhaseTag.SG for t in tags], dtype=bool)
    counts = Counter(t.value for t in tags)

    hist = Counter(round(float(x), 12) for x in q[sg])
    rule_only = [(int(x), int(y)) for x, y in zip(a[rule & ~sg], b[rule & ~sg])]
    clf_only = [(int(x), int(y)) for x, y in zip(a[sg & ~rule], b[sg & ~rule])]
    return CrossValidationReport(
        n=n,
        zero_tol=cfg.zero_tol,
        total=int(a.size),
        counts={t.value: counts.get(t.value, 0) for t in PhaseTag},
        q_histogram=dict(sorted(hist.items())),
        agree=int(np.sum(rule == sg)),
        rule_only=rule_only,
        classifier_only=clf_only,
    )
