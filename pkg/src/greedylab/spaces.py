"""Finitely supported vectors and the bundled sequence-space norms.

Every norm is evaluated through one batched kernel, ``norm_batch(idx, V)``,
where ``idx`` is a strictly increasing array of basis indices (1-based) shared
by all rows of ``V``.  Single vectors, dense windows ``[1..H]`` and brute-force
enumerations all go through the same code.
"""
from __future__ import annotations

import math
from typing import Iterable, Mapping

import numpy as np

__all__ = [
    "SparseVector", "SignedSet", "SequenceSpace", "Lp", "SummingC0",
    "DifferenceL1", "SchreierMod", "MixNorm", "make_space", "indicator",
    "project", "partial_sum", "basis_constant_estimate", "BUNDLED_SPACES",
]


class SparseVector:
    """Immutable finite map ``index -> coefficient`` with no stored zeros."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[int, float] | Iterable[tuple[int, float]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean = {}
        for n, a in items:
            n = int(n)
            if n < 1:
                raise ValueError(f"basis indices start at 1, got {n}")
            a = float(a)
            if a != 0.0:
                clean[n] = a
        self._entries = dict(sorted(clean.items()))

    @classmethod
    def from_dense(cls, coefficients: Iterable[float], start: int = 1) -> "SparseVector":
        return cls((start + i, a) for i, a in enumerate(coefficients))

    @classmethod
    def basis(cls, n: int) -> "SparseVector":
        return cls({n: 1.0})

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self._entries)

    def __len__(self):
        return len(self._entries)

    def __getitem__(self, n: int) -> float:
        return self._entries.get(n, 0.0)

    def items(self):
        return self._entries.items()

    def max_index(self) -> int:
        return next(reversed(self._entries)) if self._entries else 0

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        idx = np.fromiter(self._entries.keys(), dtype=np.int64, count=len(self))
        vals = np.fromiter(self._entries.values(), dtype=float, count=len(self))
        return idx, vals

    def to_dense(self, length: int | None = None) -> np.ndarray:
        length = self.max_index() if length is None else length
        out = np.zeros(length)
        for n, a in self._entries.items():
            if n <= length:
                out[n - 1] = a
        return out

    def to_pairs(self) -> list[list]:
        return [[n, a] for n, a in self._entries.items()]

    def __add__(self, other: "SparseVector") -> "SparseVector":
        out = dict(self._entries)
        for n, a in other.items():
            out[n] = out.get(n, 0.0) + a
        return SparseVector(out)

    def __neg__(self):
        return SparseVector({n: -a for n, a in self._entries.items()})

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + (-other)

    def __mul__(self, t: float) -> "SparseVector":
        return SparseVector({n: t * a for n, a in self._entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SparseVector) and self._entries == other._entries

    def __hash__(self):
        return hash(tuple(self._entries.items()))

    def __repr__(self):
        return f"SparseVector({self._entries})"


class SignedSet:
    """Index set ``A`` with a sign ``+1``/``-1`` attached to every element."""

    __slots__ = ("indices", "signs")

    def __init__(self, indices: Iterable[int], signs: Iterable[int] | None = None):
        indices = tuple(int(n) for n in indices)
        if len(set(indices)) != len(indices):
            raise ValueError("indices must be distinct")
        signs = (1,) * len(indices) if signs is None else tuple(int(s) for s in signs)
        if len(signs) != len(indices) or any(s not in (1, -1) for s in signs):
            raise ValueError("need one sign in {+1, -1} per index")
        order = sorted(range(len(indices)), key=indices.__getitem__)
        self.indices = tuple(indices[i] for i in order)
        self.signs = tuple(signs[i] for i in order)

    def __len__(self):
        return len(self.indices)

    def __eq__(self, other):
        return (isinstance(other, SignedSet) and self.indices == other.indices
                and self.signs == other.signs)

    def __hash__(self):
        return hash((self.indices, self.signs))

    def __repr__(self):
        body = ", ".join(f"{'+' if s > 0 else '-'}{n}" for n, s in zip(self.indices, self.signs))
        return f"SignedSet({{{body}}})"


def indicator(s: SignedSet) -> SparseVector:
    return SparseVector(zip(s.indices, map(float, s.signs)))


def project(x: SparseVector, A: Iterable[int]) -> SparseVector:
    A = set(A)
    return SparseVector((n, a) for n, a in x.items() if n in A)


def partial_sum(x: SparseVector, m: int) -> SparseVector:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return SparseVector((n, a) for n, a in x.items() if n <= m)


class SequenceSpace:
    """A norm on finitely supported sequences plus its structural metadata.

    Subclasses implement ``_norm_batch``.  ``symmetry_key`` labels indices that
    the norm cannot tell apart (after taking moduli); ``None`` means every index
    is its own class.
    """

    kind = "abstract"
    basis_constant: float | None = None
    unconditional = False
    p_convexity = 1.0
    kappa = 1.0

    def norm(self, x: SparseVector) -> float:
        if not len(x):
            return 0.0
        idx, vals = x.arrays()
        return float(self._norm_batch(idx, vals[None, :])[0])

    def norm_batch(self, idx, V) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        V = np.atleast_2d(np.asarray(V, dtype=float))
        if V.shape[1] != idx.size:
            raise ValueError("V must have one column per index")
        if idx.size == 0:
            return np.zeros(V.shape[0])
        if np.any(np.diff(idx) <= 0) or idx[0] < 1:
            raise ValueError("idx must be strictly increasing and >= 1")
        return self._norm_batch(idx, V)

    def norm_dense(self, V) -> np.ndarray:
        """Norms of the rows of ``V``, read as coefficients on ``1..V.shape[-1]``."""
        V = np.atleast_2d(np.asarray(V, dtype=float))
        return self.norm_batch(np.arange(1, V.shape[1] + 1), V)

    def symmetry_key(self, n: int):
        return None

    def _norm_batch(self, idx, V):
        raise NotImplementedError

    @property
    def name(self) -> str:
        return self.kind

    def __repr__(self):
        return f"{type(self).__name__}()"


class Lp(SequenceSpace):
    kind = "Lp"
    basis_constant = 1.0
    unconditional = True

    def __init__(self, p: float = 2.0):
        if not p > 0:
            raise ValueError("p must be positive")
        self.p = float(p)
        self.p_convexity = min(self.p, 1.0)
        self.kappa = 2.0 ** (1.0 / self.p - 1.0) if self.p < 1 else 1.0

    def symmetry_key(self, n):
        return 0

    def _norm_batch(self, idx, V):
        if self.p == 2.0:
            return np.sqrt(np.einsum("ij,ij->i", V, V))
        return (np.abs(V) ** self.p).sum(axis=1) ** (1.0 / self.p)

    @property
    def name(self):
        return f"Lp({self.p:g})"

    def __repr__(self):
        return f"Lp({self.p:g})"


class SummingC0(SequenceSpace):
    """Summing basis of c0: the norm is the largest modulus of a prefix sum."""

    kind = "SummingC0"
    basis_constant = 1.0

    def _norm_batch(self, idx, V):
        return np.abs(np.cumsum(V, axis=1)).max(axis=1)


class DifferenceL1(SequenceSpace):
    """Difference basis of l1: sum of |a_n - a_{n+1}| plus the last |a_N|."""

    kind = "DifferenceL1"
    basis_constant = 1.0

    def _norm_batch(self, idx, V):
        A = np.abs(V)
        total = A[:, -1].copy()
        if idx[0] > 1:
            total += A[:, 0]
        if idx.size > 1:
            adjacent = np.diff(idx) == 1
            jump = np.abs(V[:, 1:] - V[:, :-1])
            gap = A[:, 1:] + A[:, :-1]
            total += np.where(adjacent, jump, gap).sum(axis=1)
        return total


class SchreierMod(SequenceSpace):
    """Sup of sum |x_i| over F with sqrt(min F) >= |F|.

    For a candidate minimum s the best admissible F inside [s, oo) is the
    floor(sqrt(s)) largest moduli there, and only s in the support matter.
    """

    kind = "SchreierMod"
    basis_constant = 1.0
    unconditional = True

    def _norm_batch(self, idx, V):
        A = np.abs(V)
        best = np.zeros(V.shape[0])
        n = idx.size
        for j in range(n):
            b = math.isqrt(int(idx[j]))
            tail = A[:, j:]
            if b >= n - j:
                val = tail.sum(axis=1)
            else:
                val = -np.partition(-tail, b - 1, axis=1)[:, :b].sum(axis=1)
            np.maximum(best, val, out=best)
        return best


class MixNorm(SequenceSpace):
    """Max of a log-discounted rearrangement norm and the l2 norm on even slots."""

    kind = "MixNorm"
    basis_constant = 1.0
    unconditional = True

    def symmetry_key(self, n):
        return n % 2

    def _norm_batch(self, idx, V):
        A = np.abs(V)
        Y = -np.sort(-A, axis=1)
        i = np.arange(1, idx.size + 1)
        s = np.cumsum(1.0 / i)
        first = (np.cumsum(Y / np.sqrt(i), axis=1) / np.sqrt(s)).max(axis=1)
        even = (idx % 2) == 0
        second = np.sqrt((A[:, even] ** 2).sum(axis=1))
        return np.maximum(first, second)


BUNDLED_SPACES = {
    "summing": SummingC0,
    "difference": DifferenceL1,
    "schreier": SchreierMod,
    "mixnorm": MixNorm,
}


def make_space(name: str) -> SequenceSpace:
    """Build a space from a CLI-style name: summing, difference, schreier,
    mixnorm, or ``lp:<p>`` (``lp`` alone means p = 2)."""
    key = name.strip().lower()
    if key.startswith("lp"):
        _, _, p = key.partition(":")
        return Lp(float(p) if p else 2.0)
    aliases = {"summingc0": "summing", "differencel1": "difference",
               "schreiermod": "schreier"}
    key = aliases.get(key, key)
    if key not in BUNDLED_SPACES:
        raise ValueError(f"unknown space {name!r}")
    return BUNDLED_SPACES[key]()


def basis_constant_estimate(space: SequenceSpace, sample: Iterable[SparseVector]) -> float:
    """Largest ||S_m x|| / ||x|| over the sample: a lower estimate of K_b."""
    best = 0.0
    sample = list(sample)
    if not sample:
        raise ValueError("sample must be nonempty")
    for x in sample:
        nx = space.norm(x)
        if nx == 0:
            raise ValueError("sample vectors must have nonzero norm")
        idx, vals = x.arrays()
        # row m keeps the first m+1 coefficients
        V = np.tril(np.ones((idx.size, idx.size))) * vals
        best = max(best, float(space.norm_batch(idx, V).max()) / nx)
    return best
