"""
Computational basis of an N-spin register.

Spins are numbered 1..N. Basis states are integers whose bit at position
``N - i`` holds spin ``i`` (1 = excited ``e``, 0 = ground ``g``), so the ket
string ``"egg"`` is the index ``0b100 = 4`` and reads left to right as spins
1..N.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Union

from .errors import SizeMismatch, SizeOutOfRange, SpinIndexError

MIN_SPINS = 2
MAX_BASIS_SPINS = 24
MAX_PAIR_SPINS = 12


def check_size(n: int, upper: int = MAX_BASIS_SPINS, lower: int = MIN_SPINS) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise SizeOutOfRange(f"system size must be an integer, got {n!r}")
    n = int(n)
    if not lower <= n <= upper:
        raise SizeOutOfRange(f"system size {n} outside [{lower}, {upper}]")
    return n


def spin_bit(n: int, i: int) -> int:
    """Bit mask of spin ``i`` (1-based) in an ``n``-spin index."""
    if not 1 <= i <= n:
        raise SpinIndexError(f"spin index {i} outside [1, {n}]")
    return 1 << (n - i)


class SpinLabel(str, Enum):
    E = "e"
    G = "g"
    C = "C"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BasisState:
    n: int
    index: int

    def __post_init__(self):
        check_size(self.n, upper=MAX_BASIS_SPINS, lower=1)
        if not 0 <= self.index < (1 << self.n):
            raise SizeOutOfRange(f"index {self.index} outside [0, 2^{self.n} - 1]")

    @classmethod
    def from_ket(cls, ket: str) -> "BasisState":
        ket = ket.strip().strip("|>⟩")
        if not ket or set(ket) - {"e", "g"}:
            raise ValueError(f"ket must contain only 'e' and 'g', got {ket!r}")
        return cls(len(ket), int(ket.replace("e", "1").replace("g", "0"), 2))

    @property
    def ket(self) -> str:
        return format(self.index, f"0{self.n}b").replace("1", "e").replace("0", "g")

    def is_excited(self, i: int) -> bool:
        return bool(self.index & spin_bit(self.n, i))

    def popcount(self) -> int:
        return bin(self.index).count("1")

    def complement(self) -> "BasisState":
        return BasisState(self.n, self.index ^ ((1 << self.n) - 1))

    def __str__(self):
        return f"|{self.ket}>"


BasisLike = Union[BasisState, int, str]


def as_basis(x: BasisLike, n: int | None = None) -> BasisState:
    """Coerce a ket string, decimal index or BasisState to a BasisState."""
    if isinstance(x, BasisState):
        if n is not None and x.n != n:
            raise SizeMismatch(f"basis state has {x.n} spins, expected {n}")
        return x
    if isinstance(x, str):
        s = x.strip()
        if s.isdigit():
            x = int(s)
        else:
            b = BasisState.from_ket(s)
            if n is not None and b.n != n:
                raise SizeMismatch(f"ket {s!r} has {b.n} spins, expected {n}")
            return b
    if n is None:
        raise ValueError("a decimal basis index needs an explicit system size")
    return BasisState(n, int(x))


def _same_size(a: BasisState, b: BasisState) -> int:
    if a.n != b.n:
        raise SizeMismatch(f"states have {a.n} and {b.n} spins")
    return a.n


@dataclass(frozen=True)
class SpinLabelVector:
    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(SpinLabel(x) for x in self.labels))

    @classmethod
    def parse(cls, text: str) -> "SpinLabelVector":
        return cls(tuple(text.strip()))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def n_c(self) -> int:
        return sum(1 for x in self.labels if x is SpinLabel.C)

    def __str__(self):
        return "".join(x.value for x in self.labels)


def label_pair(a: BasisState, b: BasisState) -> SpinLabelVector:
    """Per-spin labels of the pair: C where the branches differ, else e or g."""
    n = _same_size(a, b)
    labels = []
    for i in range(1, n + 1):
        m = spin_bit(n, i)
        if (a.index ^ b.index) & m:
            labels.append(SpinLabel.C)
        elif a.index & m:
            labels.append(SpinLabel.E)
        else:
            labels.append(SpinLabel.G)
    return SpinLabelVector(tuple(labels))


def co_excited_count(a: BasisState, b: BasisState) -> int:
    _same_size(a, b)
    return bin(a.index & b.index).count("1")


def enumerate_basis(n: int) -> Iterator[BasisState]:
    n = check_size(n)
    for k in range(1 << n):
        yield BasisState(n, k)

