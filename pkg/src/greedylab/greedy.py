"""Thresholding greedy machinery: greedy sets with ties, greedy and tail
errors, truncation operators, and the convexity constants A_p and eta_p."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from itertools import combinations, islice, product
from typing import Iterable

import numpy as np
from scipy.optimize import minimize_scalar

from .spaces import SequenceSpace, SparseVector, partial_sum

__all__ = [
    "TruncationWarning", "GreedySplit", "GreedySetFamily", "TruncationResult",
    "greedy_split", "greedy_sets", "greedy_representatives", "gamma", "beta",
    "truncate", "a_p", "eta_p", "quasi_greedy_estimate", "DEFAULT_CAP",
]

DEFAULT_CAP = 10_000


class TruncationWarning(UserWarning):
    """A tie enumeration hit its cap; the returned sup is only a lower bound."""


@dataclass(frozen=True)
class GreedySplit:
    """Order-m greedy sets of x are ``forced`` plus any ``r`` of ``tied``.

    When m exceeds the support, ``tied`` is empty and ``extra`` counts the
    zero-coefficient indices that must be added (an infinite tie class).
    """
    order: int
    forced: tuple[int, ...]
    tied: tuple[int, ...]
    r: int
    extra: int = 0

    @property
    def n_sets(self) -> float:
        if self.extra:
            return math.inf
        return math.comb(len(self.tied), self.r)


@dataclass(frozen=True)
class GreedySetFamily:
    order: int
    sets: list
    truncated: bool


@dataclass(frozen=True)
class TruncationResult:
    vector: SparseVector
    kind: str
    flagged: bool = False


def greedy_split(x: SparseVector, m: int) -> GreedySplit:
    if m < 0:
        raise ValueError("m must be nonnegative")
    idx, vals = x.arrays()
    if m >= idx.size:
        return GreedySplit(m, tuple(int(n) for n in idx), (), 0, m - idx.size)
    if m == 0:
        return GreedySplit(0, (), (), 0)
    mod = np.abs(vals)
    tau = np.sort(mod)[::-1][m - 1]
    forced = tuple(int(n) for n in idx[mod > tau])
    tied = tuple(int(n) for n in idx[mod == tau])
    return GreedySplit(m, forced, tied, m - len(forced))


def _supplement(x: SparseVector, k: int) -> tuple[int, ...]:
    used, out, n = set(x.support), [], 1
    while len(out) < k:
        if n not in used:
            out.append(n)
        n += 1
    return tuple(out)


def greedy_sets(x: SparseVector, m: int, cap: int = DEFAULT_CAP) -> GreedySetFamily:
    """All order-m greedy sets of x obtained by resolving modulus ties, up to ``cap``."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    sp = greedy_split(x, m)
    if sp.extra:
        A = tuple(sorted(sp.forced + _supplement(x, sp.extra)))
        return GreedySetFamily(m, [A], True)
    sets = [tuple(sorted(sp.forced + c)) for c in islice(combinations(sp.tied, sp.r), cap)]
    return GreedySetFamily(m, sets, sp.n_sets > cap)


def greedy_representatives(space: SequenceSpace, x: SparseVector, m: int,
                           cap: int = DEFAULT_CAP) -> tuple[list, bool]:
    """Greedy sets up to the symmetries of ``space``; returns (sets, exact).

    Tied indices sharing a ``symmetry_key`` are interchangeable for the norm,
    so only the number chosen from each class matters.
    """
    sp = greedy_split(x, m)
    if sp.extra:
        return [tuple(sorted(sp.forced + _supplement(x, sp.extra)))], True
    keys = [space.symmetry_key(n) for n in sp.tied]
    if any(k is None for k in keys):
        fam = greedy_sets(x, m, cap)
        return fam.sets, not fam.truncated
    groups: dict = {}
    for n, k in zip(sp.tied, keys):
        groups.setdefault(k, []).append(n)
    members = list(groups.values())
    sets = []
    ranges = [range(min(len(g), sp.r) + 1) for g in members]
    for counts in product(*ranges):
        if sum(counts) != sp.r:
            continue
        if len(sets) == cap:
            return sets, False
        chosen = [n for g, c in zip(members, counts) for n in g[:c]]
        sets.append(tuple(sorted(sp.forced + tuple(chosen))))
    return sets, True


def _residual_rows(x: SparseVector, sets: list) -> tuple[np.ndarray, np.ndarray]:
    idx, vals = x.arrays()
    pos = {int(n): i for i, n in enumerate(idx)}
    V = np.tile(vals, (len(sets), 1))
    for row, A in enumerate(sets):
        cols = [pos[n] for n in A if n in pos]
        V[row, cols] = 0.0
    return idx, V


def gamma(space: SequenceSpace, x: SparseVector, m: int, cap: int = DEFAULT_CAP) -> float:
    """m-th greedy error: sup over greedy sets A of ||x - P_A x||."""
    return _gamma(space, x, m, cap)[0]


def _gamma(space, x, m, cap):
    if m >= len(x):
        return 0.0, True
    sets, exact = greedy_representatives(space, x, m, cap)
    if not exact:
        warnings.warn(f"greedy error at m={m} enumerated only {cap} tie resolutions",
                      TruncationWarning, stacklevel=3)
    idx, V = _residual_rows(x, sets)
    return float(space.norm_batch(idx, V).max()), exact


def beta(space: SequenceSpace, x: SparseVector, m: int) -> float:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return space.norm(x - partial_sum(x, m))


def truncate(x: SparseVector, A: Iterable[int], kind: str = "U") -> TruncationResult:
    """Restricted truncation U(x, A) or truncation T(x, A) = U(x, A) + P_{A^c} x.

    When A is empty, or not inside supp(x), the minimum modulus is 0 and U = 0;
    the latter case is flagged.
    """
    kind = kind.upper()
    if kind not in ("U", "T"):
        raise ValueError("kind must be 'U' or 'T'")
    A = sorted(set(A))
    flagged = any(x[n] == 0.0 for n in A)
    if not A or flagged:
        U = SparseVector()
    else:
        level = min(abs(x[n]) for n in A)
        U = SparseVector((n, math.copysign(level, x[n])) for n in A)
    if kind == "U":
        return TruncationResult(U, "U", flagged)
    rest = SparseVector((n, a) for n, a in x.items() if n not in set(A))
    return TruncationResult(U + rest, "T", flagged)


def _check_p(p):
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")


def a_p(p: float) -> float:
    _check_p(p)
    return 1.0 / (2.0 ** p - 1.0) ** (1.0 / p)


def _eta_objective(t, u, p):
    t = np.asarray(t, dtype=float)
    inner = 1.0 - (1.0 + t / (a_p(p) * u)) ** (-p)
    return (1.0 - t ** p) ** (-1.0 / p) * inner ** (-1.0 / p)


def eta_p(u: float, p: float, return_argmin: bool = False):
    """min over 0<t<1 of (1-t^p)^(-1/p) (1-(1+t/(A_p u))^(-p))^(-1/p).

    Grid of 10^4 interior points, then bounded Brent refinement around the best
    grid cell.
    """
    _check_p(p)
    if not u > 0:
        raise ValueError("u must be positive")
    grid = np.linspace(0.0, 1.0, 10_002)[1:-1]
    vals = _eta_objective(grid, u, p)
    k = int(np.argmin(vals))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, grid.size - 1)]
    res = minimize_scalar(lambda t: float(_eta_objective(t, u, p)), bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-12})
    t, v = (res.x, res.fun) if res.fun < vals[k] else (grid[k], vals[k])
    return (float(v), float(t)) if return_argmin else float(v)


def quasi_greedy_estimate(space: SequenceSpace, sample: Iterable[SparseVector],
                          cap: int = DEFAULT_CAP) -> float:
    """max gamma_m(x)/||x|| over the sample and m <= |supp x|: a lower estimate of C_q."""
    best = 0.0
    for x in sample:
        nx = space.norm(x)
        if nx == 0:
            raise ValueError("sample vectors must be nonzero")
        for m in range(len(x) + 1):
            g = nx if m == 0 else gamma(space, x, m, cap)
            best = max(best, g / nx)
    return best
