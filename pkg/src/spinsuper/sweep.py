"""
Enumeration engine: full pair sweeps, random scatters and the aggregated
data series (q histograms, negativity line, susceptibility curve), plus the
oracle self-check behind ``spinsuper validate``.

Work is split into fixed pair-index (or sample-index) ranges that do not
depend on the worker count; results are merged in index order, so outputs
are identical for any ``threads`` value.
"""

from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .basis import check_size
from .entanglement import (
    MAX_DENSE_SPINS,
    avg_negativity_dense,
    negativity_dense,
    predicted_negativity,
    single_spin_negativities,
)
from .errors import DegenerateState, ValidationFailure
from .observables import (
    Q_MAX,
    chi_from_negativity,
    chi_ss_finite,
    chi_ss_thermo,
    chi_zfc,
    moments_from_probs,
    q_ea_analytic,
)
from .phases import ClassifierConfig, PhaseTag, classify, pair_indices, popcount
from .superposition import (
    INV_SQRT2,
    RANDOM_BLOCK,
    SuperpositionState,
    random_amplitudes,
    random_binary_weights,
)

MAX_SWEEP_SPINS = 10
WEIGHTINGS = ("equal", "random-binary", "random-full")
_AMPLITUDE_BUDGET = 1 << 21


@dataclass
class PhaseRecord:
    n: int
    a: int
    b: int
    n_c: int
    p_c: float
    m: float
    q_ea: float
    neg_avg: float
    neg_pred: float
    phase: PhaseTag
    cluster_size: int

    FIELDS = ("n", "a", "b", "n_c", "p_c", "m", "q_ea", "neg_avg", "neg_pred", "phase", "cluster_size")

    def as_dict(self) -> dict:
        d = asdict(self)
        d["phase"] = self.phase.value
        return d


def _map_chunks(fn: Callable, chunks: Sequence, threads: int) -> list:
    if threads <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, chunks))


def _ranges(total: int, size: int) -> list[tuple[int, int]]:
    return [(s, min(s + size, total)) for s in range(0, total, size)]


def _avg_over_spins(values: np.ndarray) -> np.ndarray:
    acc = np.zeros(values.shape[0])
    for i in range(values.shape[1]):
        acc += values[:, i]
    return acc / values.shape[1]


def pair_amplitudes(n: int, a: np.ndarray, b: np.ndarray, alpha, beta) -> np.ndarray:
    """Batch of normalized alpha|a> + beta|b> vectors, shape (len(a), 2^n)."""
    rows = np.arange(a.size)
    amps = np.zeros((a.size, 1 << n), dtype=np.complex128)
    np.add.at(amps, (rows, a), alpha)
    np.add.at(amps, (rows, b), beta)
    norms = np.linalg.norm(amps, axis=1)
    if np.any(norms < 1e-12):
        k = int(np.argmin(norms))
        raise DegenerateState(f"pair ({a[k]}, {b[k]}) has zero norm")
    return amps / norms[:, None]


def state_metrics(amps: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(m, q_EA, average normalized negativity) for a batch of pure states."""
    mom = moments_from_probs(np.abs(amps) ** 2, n)
    m = _avg_over_spins(mom)
    q = _avg_over_spins(mom * mom)
    neg = _avg_over_spins(single_spin_negativities(amps, n))
    return m, q, neg


def _chunk_size(n: int) -> int:
    return max(64, _AMPLITUDE_BUDGET >> n)


def _clean(x: float) -> float:
    # maps -0.0 to 0.0 so text output does not depend on rounding sign
    return float(x) + 0.0


def sweep_binary(
    n: int,
    weighting: str = "equal",
    seed: int = 0,
    threads: int = 1,
    cfg: ClassifierConfig | None = None,
) -> list[PhaseRecord]:
    """One record per unordered pair a <= b, in ascending (a, b) order.

    ``weighting="equal"`` uses alpha = beta = 1/sqrt(2); ``"random-binary"``
    draws (alpha, beta) for pair ``p`` from the seeded stream at index ``p``.
    """
    n = check_size(n, upper=MAX_SWEEP_SPINS)
    if weighting not in ("equal", "random-binary"):
        raise ValueError(f"pair sweeps support 'equal' or 'random-binary', got {weighting!r}")
    if cfg is None:
        cfg = ClassifierConfig()
    a_all, b_all = pair_indices(n)

    def work(bounds):
        lo, hi = bounds
        a, b = a_all[lo:hi], b_all[lo:hi]
        if weighting == "equal":
            alpha = beta = INV_SQRT2
        else:
            w = random_binary_weights(seed, lo, hi - lo)
            alpha, beta = w[:, 0], w[:, 1]
        m, q, neg = state_metrics(pair_amplitudes(n, a, b, alpha, beta), n)
        n_c = popcount(a ^ b)
        out = []
        for k in range(a.size):
            nc = int(n_c[k])
            qk = _clean(q[k])
            out.append(PhaseRecord(
                n=n, a=int(a[k]), b=int(b[k]), n_c=nc, p_c=nc / n,
                m=_clean(m[k]), q_ea=qk, neg_avg=_clean(neg[k]),
                neg_pred=_clean(1.0 - qk / Q_MAX),
                phase=classify(float(m[k]), float(q[k]), cfg, strict=False),
                cluster_size=nc if nc >= 2 else 0,
            ))
        return out

    chunks = _map_chunks(work, _ranges(a_all.size, _chunk_size(n)), threads)
    return [r for chunk in chunks for r in chunk]


def sweep_equal_binary(n: int, threads: int = 1, cfg: ClassifierConfig | None = None) -> list[PhaseRecord]:
    return sweep_binary(n, "equal", threads=threads, cfg=cfg)


def scatter_random(n: int, samples: int, seed: int, threads: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """(m, q_EA) of ``samples`` random states; sample k is the k-th stream row."""
    n = check_size(n, upper=MAX_SWEEP_SPINS)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    # align chunks to RNG blocks so no block is drawn twice
    per_chunk = RANDOM_BLOCK * max(1, _chunk_size(n) // RANDOM_BLOCK)

    def work(bounds):
        lo, hi = bounds
        amps = random_amplitudes(n, seed, lo, hi - lo)
        mom = moments_from_probs(np.abs(amps) ** 2, n)
        return _avg_over_spins(mom), _avg_over_spins(mom * mom)

    parts = _map_chunks(work, _ranges(samples, per_chunk), threads)
    m = np.concatenate([p[0] for p in parts]) + 0.0
    q = np.concatenate([p[1] for p in parts]) + 0.0
    return m, q


def _qkey(q: float) -> float:
    return round(float(q), 12)


def _group_by_q(records) -> dict:
    """Group records by q_EA (to 1e-12); keys are the first member's q."""
    groups, rep = {}, {}
    for r in records:
        k = _qkey(r.q_ea)
        if k not in rep:
            rep[k] = r.q_ea
            groups[r.q_ea] = []
        groups[rep[k]].append(r)
    return dict(sorted(groups.items()))


def q_histogram(n_range: Iterable[int], threads: int = 1) -> dict[int, dict[float, int]]:
    """Per size, counts of each q_EA value among SG-tagged equal pairs."""
    out = {}
    for n in n_range:
        sg = [r for r in sweep_equal_binary(n, threads) if r.phase is PhaseTag.SG]
        out[n] = {q: len(recs) for q, recs in _group_by_q(sg).items()}
    return out


@dataclass
class NegLinePoint:
    n: int
    q_ea: float
    neg_measured: float
    neg_predicted: float
    cluster_size: int
    count: int
    flagged: bool
    dense_max_diff: float | None = None


def negativity_line(
    n_range: Iterable[int], dense: bool = False, threads: int = 1, tol: float = 1e-9
) -> list[NegLinePoint]:
    """Mean measured negativity per distinct (n, q_EA) over SG and PM pairs.

    ``flagged`` marks points where the measurement departs from the linear
    law by more than ``tol`` (single-C-spin pairs, which are product states).
    """
    points = []
    for n in n_range:
        if dense and n > MAX_DENSE_SPINS:
            raise ValueError(f"dense validation needs n <= {MAX_DENSE_SPINS}")
        keep = [r for r in sweep_equal_binary(n, threads) if r.phase in (PhaseTag.SG, PhaseTag.PM)]
        for qk, recs in _group_by_q(keep).items():
            measured = float(np.mean([r.neg_avg for r in recs]))
            predicted = predicted_negativity(min(max(qk, 0.0), Q_MAX))
            diff = None
            if dense:
                diff = 0.0
                for r in recs:
                    st = _equal_state(n, r.a, r.b)
                    diff = max(diff, abs(avg_negativity_dense(st) - r.neg_avg))
            points.append(NegLinePoint(
                n=n, q_ea=qk, neg_measured=measured, neg_predicted=predicted,
                cluster_size=max(r.cluster_size for r in recs), count=len(recs),
                flagged=abs(measured - predicted) > tol, dense_max_diff=diff,
            ))
    return points


def _equal_state(n: int, a: int, b: int) -> SuperpositionState:
    amps = pair_amplitudes(n, np.array([a]), np.array([b]), INV_SQRT2, INV_SQRT2)[0]
    return SuperpositionState(n, amps)


@dataclass
class ChiPoint:
    n: int
    p_c: float
    chi_finite: float
    chi_thermo: float
    chi_zfc: float
    q_mean: float
    count: int


def susceptibility_curve(n_range: Iterable[int], beta: float = 1.0, threads: int = 1) -> list[ChiPoint]:
    """Per-(n, p_C) means of the three susceptibility formulas over all equal pairs."""
    points = []
    for n in n_range:
        buckets = defaultdict(list)
        for r in sweep_equal_binary(n, threads):
            buckets[r.n_c].append(r)
        for n_c in sorted(buckets):
            recs = buckets[n_c]
            p_c = n_c / n
            qs = [min(max(r.q_ea, 0.0), Q_MAX) for r in recs]
            points.append(ChiPoint(
                n=n, p_c=p_c,
                chi_finite=float(np.mean([chi_ss_finite(p_c, q, beta) for q in qs])),
                chi_thermo=chi_ss_thermo(p_c, beta),
                chi_zfc=float(np.mean([chi_zfc(q, beta) for q in qs])),
                q_mean=float(np.mean(qs)),
                count=len(recs),
            ))
    return points


@dataclass
class CheckResult:
    name: str
    tolerance: float
    checked: int = 0
    max_error: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, error: float, item) -> None:
        self.checked += 1
        self.max_error = max(self.max_error, float(error))
        if not error <= self.tolerance:
            self.failures.append(item)


@dataclass
class ValidationReport:
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name, "passed": c.passed, "tolerance": c.tolerance,
                    "checked": c.checked, "max_error": c.max_error,
                    "failures": c.failures[:50], "n_failures": len(c.failures),
                }
                for c in self.checks
            ],
        }

    def raise_for_failure(self) -> None:
        bad = [c for c in self.checks if not c.passed]
        if bad:
            failures = [(c.name, f) for c in bad for f in c.failures]
            names = ", ".join(c.name for c in bad)
            raise ValidationFailure(f"oracle checks failed: {names}", failures)


def validate(
    n_range: Iterable[int],
    dense_max: int = 6,
    q_max: float = Q_MAX,
    threads: int = 1,
    strict: bool = False,
) -> ValidationReport:
    """Cross-check every fast path against its independent oracle.

    ``q_max`` only exists to inject a fault into the linear-law checks.
    """
    schmidt = CheckResult("schmidt_vs_dense_negativity", 1e-9)
    analytic = CheckResult("analytic_vs_numeric_q", 1e-12)
    law = CheckResult("negativity_linear_law", 1e-9)
    bounds = CheckResult("order_parameter_bounds", 1e-12)
    identity = CheckResult("chi_negativity_identity", 1e-12)

    for n in n_range:
        records = sweep_equal_binary(n, threads)
        for r in records:
            pair = (n, r.a, r.b)
            analytic.record(abs(r.q_ea - q_ea_analytic(r.n_c, n)), pair)
            bounds.record(max(r.q_ea - Q_MAX, r.m * r.m - r.q_ea, -r.q_ea, 0.0), pair)
            if r.n_c >= 2:
                q = min(max(r.q_ea, 0.0), Q_MAX)
                law.record(abs(r.neg_avg - predicted_negativity(q, q_max)), pair)
        if n <= min(dense_max, MAX_DENSE_SPINS):
            a, b = pair_indices(n)
            amps = pair_amplitudes(n, a, b, INV_SQRT2, INV_SQRT2)
            fast = single_spin_negativities(amps, n)
            for k in range(a.size):
                st = SuperpositionState(n, amps[k])
                err = max(
                    abs(negativity_dense(st, i).normalized - fast[k, i - 1])
                    for i in range(1, n + 1)
                )
                schmidt.record(err, (n, int(a[k]), int(b[k])))

    for q in np.linspace(0.0, Q_MAX, 1000):
        lhs = chi_from_negativity(min(max(1.0 - q / q_max, 0.0), 1.0))
        identity.record(abs(lhs - chi_zfc(q)), float(q))

    report = ValidationReport([schmidt, analytic, law, bounds, identity])
    if strict:
        report.raise_for_failure()
    return report
