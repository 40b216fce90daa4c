"""Best coefficients on a fixed support, Chebyshev-greedy and best m-term errors.

Three solvers are available for ``min_a ||x - sum_{n in A} a_n e_n||``:

* ``"lp"``      linear program (summing, difference and Schreier norms),
* ``"descent"`` multistart coordinate descent (any norm),
* ``"exact"``   closed forms for all bundled spaces.

The closed forms are what the error profiles use; the other two exist so
that the closed forms can be cross-checked, and a dense grid search
(:func:`chebyshev_grid`) serves as the oracle for all of them.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.optimize import linprog, minimize_scalar

from .greedy import (DEFAULT_CAP, TruncationWarning, a_p, eta_p, greedy_representatives,
                     greedy_split, _residual_rows)
from .spaces import (DifferenceL1, SchreierMod, SequenceSpace, SparseVector, SummingC0)

__all__ = [
    "ChebyshevSolution", "chebyshev_project", "chebyshev_grid", "exact_residual",
    "theta", "theta_profile", "sigma", "sigma_profile", "default_window",
    "constant_budget", "BudgetError", "SIGMA_BUDGET",
]

SIGMA_BUDGET = 10**6


class BudgetError(ValueError):
    """Raised when a brute-force enumeration would exceed its budget."""


@dataclass
class ChebyshevSolution:
    support: tuple
    coefficients: dict
    residual: float
    method: str
    certified: bool = True
    info: dict = field(default_factory=dict)


def _layout(x: SparseVector, A):
    """Merged index grid R = supp(x) U A, values of x on R, and the column of each A."""
    A = sorted({int(n) for n in A})
    R = np.array(sorted(set(x.support) | set(A)), dtype=np.int64)
    xr = np.array([x[int(n)] for n in R])
    pos = {int(n): i for i, n in enumerate(R)}
    cols = np.array([pos[n] for n in A], dtype=np.int64)
    return A, R, xr, cols


# ---------------------------------------------------------------- closed forms

def _summing_residual(R, xr, cols):
    p = np.cumsum(xr)
    starts = np.zeros(R.size, dtype=bool)
    starts[cols] = True
    q = p.copy()
    bounds = list(np.flatnonzero(starts)) + [R.size]
    for a, b in zip(bounds[:-1], bounds[1:]):
        seg = p[a:b]
        q[a:b] = seg - 0.5 * (seg.max() + seg.min())
    return np.diff(q, prepend=0.0)


def _difference_residual(R, xr, cols):
    free = np.zeros(R.size, dtype=bool)
    free[cols] = True
    r = np.where(free, 0.0, xr)
    # a maximal run of free positions is filled with the fixed value just right of it
    i = R.size - 1
    right = 0.0
    while i >= 0:
        if free[i]:
            r[i] = right
            if i == 0 or R[i - 1] != R[i] - 1:
                right = 0.0
        else:
            right = r[i] if i == 0 or R[i - 1] == R[i] - 1 else 0.0
        i -= 1
    return r


def _exact_rows(space, R, xr, cols):
    if isinstance(space, SummingC0):
        return _summing_residual(R, xr, cols)
    if isinstance(space, DifferenceL1):
        return _difference_residual(R, xr, cols)
    if space.unconditional:
        r = xr.copy()
        r[cols] = 0.0
        return r
    raise NotImplementedError(f"no closed form for {space!r}")


def exact_residual(space: SequenceSpace, x: SparseVector, A) -> tuple[dict, SparseVector]:
    """Optimal coefficients on A and the residual vector, by closed form."""
    A, R, xr, cols = _layout(x, A)
    r = _exact_rows(space, R, xr, cols)
    coef = {int(R[c]): float(xr[c] - r[c]) for c in cols}
    return coef, SparseVector(zip(R.tolist(), r.tolist()))


# ---------------------------------------------------------------- LP

def _lp_model(space, R, xr, cols):
    """Return (c, A_ub, b_ub, bounds) with the coefficient block first."""
    nR, nA = R.size, cols.size
    E = np.zeros((nR, nA))
    E[cols, np.arange(nA)] = 1.0
    if isinstance(space, SummingC0):
        L = np.tril(np.ones((nR, nR)))
        LE, Lx = L @ E, L @ xr
        one = np.ones((nR, 1))
        A_ub = np.vstack([np.hstack([-LE, -one]), np.hstack([LE, -one])])
        b_ub = np.concatenate([-Lx, Lx])
        c = np.r_[np.zeros(nA), 1.0]
        return c, A_ub, b_ub, [(None, None)] * (nA + 1)
    if isinstance(space, DifferenceL1):
        rows = []
        if R[0] > 1:
            rows.append({0: 1.0})
        for i in range(nR - 1):
            if R[i + 1] == R[i] + 1:
                rows.append({i: 1.0, i + 1: -1.0})
            else:
                rows += [{i: 1.0}, {i + 1: 1.0}]
        rows.append({nR - 1: 1.0})
        W = np.zeros((len(rows), nR))
        for k, row in enumerate(rows):
            for i, v in row.items():
                W[k, i] = v
        WE, Wx = W @ E, W @ xr
        I = np.eye(len(rows))
        A_ub = np.vstack([np.hstack([-WE, -I]), np.hstack([WE, -I])])
        b_ub = np.concatenate([-Wx, Wx])
        c = np.r_[np.zeros(nA), np.ones(len(rows))]
        return c, A_ub, b_ub, [(None, None)] * nA + [(0, None)] * len(rows)
    if isinstance(space, SchreierMod):
        # variables: a | u (nR) | t | lam (nR) | mu_{j,i}, i >= j
        pairs = [(j, i) for j in range(nR) for i in range(j, nR)]
        nv = nA + nR + 1 + nR + len(pairs)
        iu, it, il, im = nA, nA + nR, nA + nR + 1, nA + 2 * nR + 1
        rows, rhs = [], []
        for i in range(nR):
            for sgn in (1.0, -1.0):
                row = np.zeros(nv)
                row[:nA] = sgn * E[i]
                row[iu + i] = -1.0
                rows.append(row)
                rhs.append(sgn * xr[i])
        for j in range(nR):
            b = min(math.isqrt(int(R[j])), nR - j)
            row = np.zeros(nv)
            row[il + j] = b
            row[it] = -1.0
            for k, (jj, i) in enumerate(pairs):
                if jj == j:
                    row[im + k] = 1.0
            rows.append(row)
            rhs.append(0.0)
        for k, (j, i) in enumerate(pairs):
            row = np.zeros(nv)
            row[iu + i] = 1.0
            row[il + j] = -1.0
            row[im + k] = -1.0
            rows.append(row)
            rhs.append(0.0)
        c = np.zeros(nv)
        c[it] = 1.0
        bounds = [(None, None)] * nA + [(0, None)] * nR + [(None, None)] + [(0, None)] * (nR + len(pairs))
        return c, np.array(rows), np.array(rhs), bounds
    raise NotImplementedError(f"no LP model for {space!r}")


def _solve_lp(space, R, xr, cols, lexicographic=True):
    c, A_ub, b_ub, bounds = _lp_model(space, R, xr, cols)
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if res.status != 0:
        return None, False
    a = res.x[: cols.size]
    ok = True
    if lexicographic and cols.size:
        opt = res.fun
        A2 = np.vstack([A_ub, c])
        b2 = np.r_[b_ub, opt + 1e-11 * max(1.0, abs(opt))]
        bounds = list(bounds)
        for k in range(cols.size):
            ck = np.zeros_like(c)
            ck[k] = 1.0
            sub = linprog(ck, A_ub=A2, b_ub=b2, bounds=bounds, method="highs")
            if sub.status != 0:
                ok = False
                break
            v = sub.x[k]
            bounds[k] = (v, v + 1e-12)
            a = sub.x[: cols.size]
    return a, ok


# ---------------------------------------------------------------- descent

def _solve_descent(space, R, xr, cols, seed=0, restarts=32, max_sweeps=100, tol=1e-9):
    if cols.size == 0:
        return np.zeros(0), True
    box = 2.0 * float(np.max(np.abs(xr)))

    def f(a):
        r = xr.copy()
        r[cols] -= a
        return float(space.norm_batch(R, r[None, :])[0])

    rng = np.random.default_rng(seed)
    starts = [xr[cols].copy()] + [rng.uniform(-box, box, cols.size) for _ in range(restarts)]
    best_a, best_f, converged = None, math.inf, True
    for a in starts:
        fa = f(a)
        for _ in range(max_sweeps):
            before = fa
            for k in range(cols.size):
                def line(t, k=k):
                    b = a.copy()
                    b[k] = t
                    return f(b)
                res = minimize_scalar(line, bounds=(-box, box), method="bounded",
                                      options={"xatol": 1e-11})
                if res.fun < fa:
                    a[k], fa = res.x, res.fun
            if before - fa < tol:
                break
        else:
            converged = False
        if fa < best_f:
            best_a, best_f = a.copy(), fa
    return best_a, converged


def chebyshev_project(space: SequenceSpace, x: SparseVector, A, method: str | None = None,
                      seed: int = 0, restarts: int = 32) -> ChebyshevSolution:
    """Minimize ||x - sum_{n in A} a_n e_n|| over real a.

    ``method`` defaults to an LP for the summing, difference and Schreier
    norms and to coordinate descent otherwise.
    """
    if method is None:
        method = "lp" if isinstance(space, (SummingC0, DifferenceL1, SchreierMod)) else "descent"
    A, R, xr, cols = _layout(x, A)
    support = tuple(A)
    if set(x.support) <= set(A):
        return ChebyshevSolution(support, {n: x[n] for n in A}, 0.0, method)
    proj = xr.copy()
    proj[cols] = 0.0
    proj_res = float(space.norm_batch(R, proj[None, :])[0])
    if method == "exact":
        r = _exact_rows(space, R, xr, cols)
        a, certified = xr[cols] - r[cols], True
    elif method == "lp":
        a, certified = _solve_lp(space, R, xr, cols)
        if a is None:
            a = xr[cols].copy()
    elif method == "descent":
        a, certified = _solve_descent(space, R, xr, cols, seed=seed, restarts=restarts)
    elif method == "grid":
        sol = chebyshev_grid(space, x, A)
        return sol
    else:
        raise ValueError(f"unknown method {method!r}")
    r = xr.copy()
    r[cols] -= a
    res = float(space.norm_batch(R, r[None, :])[0])
    if res > proj_res:
        # never report worse than plain projection
        a, res, certified = xr[cols].copy(), proj_res, False
    coef = {int(R[c]): float(v) for c, v in zip(cols, a)}
    return ChebyshevSolution(support, coef, res, method, certified)


def chebyshev_grid(space: SequenceSpace, x: SparseVector, A, step: float = 1e-3,
                   box: float | None = None) -> ChebyshevSolution:
    """Exact minimum over the lattice step*Z^|A| inside [-box, box]^|A|, for |A| <= 2.

    Two coefficients are handled row by row: for each value of the first one the
    objective is convex in the second, so an integer ternary search finds the
    row minimum without visiting every lattice point.
    """
    A, R, xr, cols = _layout(x, A)
    if cols.size > 2:
        raise ValueError("grid oracle supports |A| <= 2")
    if box is None:
        box = 2.0 * float(np.max(np.abs(xr))) if xr.size else 1.0
    K = int(round(box / step))
    grid = np.arange(-K, K + 1) * step
    if cols.size == 0:
        res = float(space.norm_batch(R, xr[None, :])[0])
        return ChebyshevSolution(tuple(A), {}, res, "grid")
    if cols.size == 1:
        V = np.tile(xr, (grid.size, 1))
        V[:, cols[0]] -= grid
        vals = space.norm_batch(R, V)
        k = int(np.argmin(vals))
        return ChebyshevSolution(tuple(A), {A[0]: float(grid[k])}, float(vals[k]), "grid")

    rows = grid.size
    base = np.tile(xr, (rows, 1))
    base[:, cols[0]] -= grid

    def evaluate(jidx):
        V = base.copy()
        V[:, cols[1]] -= grid[jidx]
        return space.norm_batch(R, V)

    lo = np.zeros(rows, dtype=np.int64)
    hi = np.full(rows, grid.size - 1, dtype=np.int64)
    while np.any(hi - lo > 2):
        m1 = lo + (hi - lo) // 3
        m2 = hi - (hi - lo) // 3
        f1, f2 = evaluate(m1), evaluate(m2)
        active = hi - lo > 2
        left = active & (f1 <= f2)
        right = active & ~(f1 <= f2)
        hi = np.where(left, m2, hi)
        lo = np.where(right, m1, lo)
    best_val = np.full(rows, np.inf)
    best_j = lo.copy()
    for off in range(3):
        j = np.minimum(lo + off, hi)
        v = evaluate(j)
        better = v < best_val
        best_val = np.where(better, v, best_val)
        best_j = np.where(better, j, best_j)
    i = int(np.argmin(best_val))
    coef = {A[0]: float(grid[i]), A[1]: float(grid[best_j[i]])}
    return ChebyshevSolution(tuple(A), coef, float(best_val[i]), "grid")


# ---------------------------------------------------------------- summing basis profiles

class _RangeTable:
    """Sparse table answering max and min of p over index ranges in O(1)."""

    def __init__(self, p):
        self.mx, self.mn = [p], [p]
        k = 1
        while 2 * k <= p.size:
            a, b = self.mx[-1], self.mn[-1]
            self.mx.append(np.maximum(a[:-k], a[k:]))
            self.mn.append(np.minimum(b[:-k], b[k:]))
            k *= 2

    def query(self, lo, hi):
        """max and min of p[lo:hi] for arrays with hi > lo."""
        lo, hi = np.asarray(lo), np.asarray(hi)
        length = hi - lo
        lev = np.floor(np.log2(np.maximum(length, 1))).astype(int)
        mx = np.empty(lo.shape)
        mn = np.empty(lo.shape)
        for L in np.unique(lev):
            sel = lev == L
            w = 1 << int(L)
            a, b = lo[sel], hi[sel] - w
            mx[sel] = np.maximum(self.mx[L][a], self.mx[L][b])
            mn[sel] = np.minimum(self.mn[L][a], self.mn[L][b])
        return mx, mn


def _summing_blocks(x):
    idx, vals = x.arrays()
    p = np.cumsum(vals)
    return idx, p, bool(idx.size and idx[0] > 1)


def _summing_theta_profile(x, cutoff):
    idx, p, zero_block = _summing_blocks(x)
    K = idx.size
    out = np.zeros(cutoff + 1)
    if K == 0:
        return out
    table = _RangeTable(p)
    absp = np.abs(p)
    cum_abs = np.maximum.accumulate(absp)
    rank = {int(s): i for i, s in enumerate(idx)}
    for n in range(min(cutoff, K - 1) + 1):
        sp = greedy_split(x, n)
        F = np.array(sorted(rank[s] for s in sp.forced), dtype=np.int64)
        T = np.array(sorted(rank[s] for s in sp.tied), dtype=np.int64)
        skip = T.size - sp.r
        # first chosen block: as far right as the forced blocks and skipped ties allow
        first = K
        if F.size:
            first = F[0]
        if skip < T.size:
            first = min(first, T[skip])
        best = cum_abs[first - 1] if first > 0 else 0.0
        starts = F if sp.r == 0 else np.union1d(F, T)
        if starts.size:
            nextF = np.full(starts.size, K, dtype=np.int64)
            if F.size:
                j = np.searchsorted(F, starts, side="right")
                has = j < F.size
                nextF[has] = F[j[has]]
            if T.size:
                j = np.searchsorted(T, starts, side="right") + skip
                has = j < T.size
                nextT = np.full(starts.size, K, dtype=np.int64)
                nextT[has] = T[j[has]]
                stop = np.minimum(nextF, nextT)
            else:
                stop = nextF
            mx, mn = table.query(starts, stop)
            best = max(best, float(0.5 * (mx - mn).max()))
        out[n] = best
    return out


def _summing_count(p, table, cum_abs, eps, limit):
    """Fewest segment starts achieving error <= eps (stops counting past ``limit``)."""
    K = p.size
    i = int(np.searchsorted(cum_abs, eps, side="right"))
    count = 0
    tol = 1e-12 * max(1.0, abs(eps))
    while i < K:
        count += 1
        if count > limit:
            return count
        # extend a segment from i as far as its range stays within 2 eps
        j, hi_v, lo_v = i + 1, p[i], p[i]
        for L in range(len(table.mx) - 1, -1, -1):
            w = 1 << L
            if j + w <= K:
                nh = max(hi_v, table.mx[L][j])
                nl = min(lo_v, table.mn[L][j])
                if nh - nl <= 2 * eps + tol:
                    hi_v, lo_v, j = nh, nl, j + w
        i = j
    return count


def _summing_sigma_profile(x, cutoff):
    idx, p, zero_block = _summing_blocks(x)
    K = idx.size
    out = np.zeros(cutoff + 1)
    if K == 0:
        return out
    table = _RangeTable(p)
    cum_abs = np.maximum.accumulate(np.abs(p))
    u = np.unique(p)
    cand = np.unique(np.concatenate([[0.0], np.abs(u), (u[:, None] - u[None, :]).ravel() / 2]))
    cand = cand[cand >= 0]

    def feasible(c, n):
        return _summing_count(p, table, cum_abs, cand[c], n) <= n

    # sigma_n = cand[first c with count(c) <= n]; nonincreasing in n
    res = {}

    def solve(nlo, nhi, clo, chi):
        if nlo > nhi:
            return
        if clo == chi:
            for n in range(nlo, nhi + 1):
                res[n] = clo
            return
        mid = (nlo + nhi) // 2
        lo, hi = clo, chi
        while lo < hi:
            c = (lo + hi) // 2
            if feasible(c, mid):
                hi = c
            else:
                lo = c + 1
        res[mid] = lo
        solve(nlo, mid - 1, lo, chi)
        solve(mid + 1, nhi, clo, lo)

    top = min(cutoff, K)
    solve(0, top, 0, cand.size - 1)
    for n in range(top + 1):
        out[n] = cand[res[n]]
    return out


# ---------------------------------------------------------------- errors

def default_window(space: SequenceSpace) -> int:
    return 0 if space.unconditional else 4


def _batch_exact(space, x, sets):
    """Closed-form Chebyshev residual norms for many candidate sets."""
    if space.unconditional:
        idx, V = _residual_rows(x, sets)
        return space.norm_batch(idx, V)
    out = np.empty(len(sets))
    for k, A in enumerate(sets):
        A, R, xr, cols = _layout(x, A)
        r = _exact_rows(space, R, xr, cols)
        out[k] = space.norm_batch(R, r[None, :])[0]
    return out


def _theta_one(space, x, m, cap, method):
    if m >= len(x):
        return 0.0, True
    sets, exact = greedy_representatives(space, x, m, cap)
    if method == "exact":
        vals = _batch_exact(space, x, sets)
    else:
        vals = [chebyshev_project(space, x, A, method=method).residual for A in sets]
    return float(np.max(vals)), exact


def theta(space: SequenceSpace, x: SparseVector, m: int, cap: int = DEFAULT_CAP,
          method: str = "exact") -> float:
    """m-th Chebyshev-greedy error: worst best-fit residual over greedy sets."""
    if isinstance(space, SummingC0) and method == "exact" and m < len(x):
        return float(_summing_theta_profile(x, m)[m])
    val, exact = _theta_one(space, x, m, cap, method)
    if not exact:
        warnings.warn(f"Chebyshev-greedy error at m={m} enumerated only {cap} tie resolutions",
                      TruncationWarning, stacklevel=2)
    return val


def theta_profile(space: SequenceSpace, x: SparseVector, cutoff: int,
                  cap: int = DEFAULT_CAP) -> tuple[np.ndarray, bool]:
    """theta_n(x) for n = 0..cutoff and whether every value is exact."""
    if isinstance(space, SummingC0):
        return _summing_theta_profile(x, cutoff), True
    out, all_exact = np.zeros(cutoff + 1), True
    for n in range(cutoff + 1):
        out[n], exact = _theta_one(space, x, n, cap, "exact")
        all_exact &= exact
    return out, all_exact


def _sigma_candidates(space, x, window):
    if window is None:
        window = default_window(space)
    if window < 0:
        raise ValueError("window must be nonnegative")
    top = x.max_index()
    return list(x.support) + list(range(top + 1, top + 1 + window))


def sigma(space: SequenceSpace, x: SparseVector, m: int, window: int | None = None,
          method: str = "exact") -> float:
    """Best m-term error over supports inside supp(x) plus an off-support window."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m >= len(x):
        return 0.0
    if m == 0:
        return space.norm(x)
    if isinstance(space, SummingC0) and method == "exact":
        # off-support atoms never beat the support atom to their left
        return float(_summing_sigma_profile(x, m)[m])
    cand = _sigma_candidates(space, x, window)
    k = min(m, len(cand))
    if math.comb(len(cand), k) > SIGMA_BUDGET:
        raise BudgetError(f"C({len(cand)}, {k}) candidate supports exceed {SIGMA_BUDGET}; "
                          "use a smaller instance or window")
    best = math.inf
    batch = []
    for A in combinations(cand, k):
        batch.append(A)
        if len(batch) == 4096:
            best = min(best, _sigma_batch(space, x, batch, method))
            batch = []
    if batch:
        best = min(best, _sigma_batch(space, x, batch, method))
    return float(best)


def _sigma_batch(space, x, sets, method):
    if method == "exact":
        return float(_batch_exact(space, x, sets).min())
    return min(chebyshev_project(space, x, A, method=method).residual for A in sets)


def sigma_profile(space: SequenceSpace, x: SparseVector, cutoff: int,
                  window: int | None = None) -> np.ndarray:
    if isinstance(space, SummingC0):
        return _summing_sigma_profile(x, cutoff)
    return np.array([sigma(space, x, n, window) for n in range(cutoff + 1)])


# ---------------------------------------------------------------- constants

@dataclass(frozen=True)
class ConstantBudget:
    C_sg_bound: float
    C_sd_bound: float | None
    C_q_bound: float | None


def constant_budget(C_q: float, C_sd: float, K_b: float, p: float = 1.0,
                    C_sg: float | None = None) -> ConstantBudget:
    """Evaluate the three constant bounds linking quasi-greediness, super-democracy
    and semi-greediness.

    The C_sd and C_q bounds are expressed through C_sg; when ``C_sg`` is not
    given they are evaluated at the computed ``C_sg_bound``.
    """
    for name, v in (("C_q", C_q), ("C_sd", C_sd), ("K_b", K_b)):
        if not v >= 1:
            raise ValueError(f"{name} must be >= 1")
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    eta = eta_p(C_q, p)
    g = C_q ** 2 * eta
    sg = ((2 * g) ** p + (2 * a_p(p) * C_sd * g) ** p) ** (1 / p)
    s = sg if C_sg is None else C_sg
    if not s >= 1:
        raise ValueError("C_sg must be >= 1")
    sd = K_b * (1 + K_b) * s ** 2
    q = K_b * s * (1 + (1 + K_b) ** p * s ** p) ** (1 / p)
    return ConstantBudget(float(sg), float(sd), float(q))
