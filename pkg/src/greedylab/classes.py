"""Weighted approximation-class quasi-norms and the embedding-failure experiments."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .chebyshev import sigma, sigma_profile, theta_profile
from .democracy import extremal_indicator, h_l, h_r
from .greedy import DEFAULT_CAP, TruncationWarning, _gamma, beta
from .spaces import (MixNorm, SequenceSpace, SignedSet, SparseVector, SummingC0, indicator)
from .weights import Weight

__all__ = [
    "ClassNormParams", "ErrorProfile", "ExperimentRow", "ChainResult", "error_profile",
    "class_norm", "remark_ratio", "witness_pair_search", "imp1_experiment",
    "casec_construction", "kppg_experiment", "chain_check", "precursor_ratio",
]

KINDS = ("A", "G", "CG", "PG")


@dataclass(frozen=True)
class ClassNormParams:
    weight: Weight
    q: float
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if not self.q > 0:
            raise ValueError("q must be positive (use math.inf for the sup)")


@dataclass
class ErrorProfile:
    """sigma_n, gamma_n, theta_n for n <= |supp x| and beta_n for n <= max supp x."""
    sigma: np.ndarray
    gamma: np.ndarray
    theta: np.ndarray
    beta: np.ndarray
    exact: bool = True


@dataclass
class ExperimentRow:
    j: int
    k: int | None
    u: int | None
    eta: int | None
    numerator_norm: float
    denominator_norm: float
    ratio: float
    bound: float | None = None
    flags: list = field(default_factory=list)


@dataclass
class ChainResult:
    ok: bool
    checked: int
    violation: dict | None = None

    def __bool__(self):
        return self.ok


def _gamma_profile(space, x, cutoff, cap):
    out, exact = np.zeros(cutoff + 1), True
    for n in range(cutoff + 1):
        out[n], e = _gamma(space, x, n, cap)
        exact &= e
    return out, exact


def _beta_profile(space, x, cutoff):
    idx, vals = x.arrays()
    out = np.zeros(cutoff + 1)
    if idx.size == 0:
        return out
    # the tail x - S_n x only changes at support indices
    tails = space.norm_batch(idx, np.triu(np.ones((idx.size, idx.size))) * vals)
    k = np.searchsorted(idx, np.arange(cutoff + 1), side="right")
    has = k < idx.size
    out[has] = tails[k[has]]
    return out


def error_profile(space: SequenceSpace, x: SparseVector, window: int | None = None,
                  cap: int = DEFAULT_CAP, kinds: Iterable[str] = KINDS) -> ErrorProfile:
    kinds = set(kinds)
    s = len(x)
    empty = np.zeros(s + 1)
    sg = sigma_profile(space, x, s, window) if "A" in kinds else empty
    g, ge = _gamma_profile(space, x, s, cap) if "G" in kinds else (empty, True)
    th, te = theta_profile(space, x, s, cap) if "CG" in kinds else (empty, True)
    b = _beta_profile(space, x, x.max_index()) if "PG" in kinds else np.zeros(1)
    return ErrorProfile(sg, g, th, b, ge and te)


def _weighted_sum(w, q, err):
    n = np.arange(1, err.size)
    terms = w(n) * err[1:]
    if terms.size == 0:
        return 0.0
    if math.isinf(q):
        return float(terms.max())
    return float(((terms ** q) / n).sum() ** (1.0 / q))


def _error_sequence(space, x, kind, window, cap):
    if kind == "A":
        return sigma_profile(space, x, len(x), window), True
    if kind == "G":
        return _gamma_profile(space, x, len(x), cap)
    if kind == "CG":
        return theta_profile(space, x, len(x), cap)
    return _beta_profile(space, x, x.max_index()), True


def class_norm(space: SequenceSpace, x: SparseVector, params: ClassNormParams,
               window: int | None = None, cap: int = DEFAULT_CAP) -> float:
    """||x|| + (sum_n (w(n) err_n(x))^q / n)^(1/q), or the sup when q is infinite.

    err is sigma, gamma, theta or beta for kinds A, G, CG, PG; the sum stops
    where the errors vanish.
    """
    err, exact = _error_sequence(space, x, params.kind, window, cap)
    if not exact:
        warnings.warn(f"{params.kind} class norm uses capped tie enumeration",
                      TruncationWarning, stacklevel=2)
    return space.norm(x) + _weighted_sum(params.weight, params.q, err)


def remark_bound(w: Weight, q: float, m: int) -> float:
    H = math.fsum(1.0 / n for n in range(1, m + 1))
    scale = 1.0 if math.isinf(q) else H ** (1.0 / q)
    return 1.0 / (float(w(1)) * scale)


def remark_ratio(space: SequenceSpace, w: Weight, q: float,
                 m_range: Iterable[int]) -> list[ExperimentRow]:
    """||e_{m+1}||_G / ||e_{m+1}||_PG with the bound 1/(w(1) H_m^(1/q))."""
    rows = []
    for m in m_range:
        if m < 1:
            raise ValueError("m must be positive")
        x = SparseVector.basis(m + 1)
        num = class_norm(space, x, ClassNormParams(w, q, "G"))
        den = class_norm(space, x, ClassNormParams(w, q, "PG"))
        bound = remark_bound(w, q, m)
        flags = [] if num / den <= bound + 1e-12 else ["bound_violated"]
        rows.append(ExperimentRow(m, None, None, None, num, den, num / den, bound, flags))
    return rows


def witness_pair_search(f: Callable[[int], float], g: Callable[[int], float], w: Weight,
                        grid: Iterable[int], j_max: int = 8) -> list[tuple[int, int]]:
    """First (k, eta) in grid order per j with eta/k >= 2^j and f(k)/g(eta) >= w(eta)/w(k)."""
    grid = sorted(set(int(n) for n in grid))
    pairs = []
    for j in range(1, j_max + 1):
        found = None
        for k in grid:
            for eta in grid:
                if eta < k * 2 ** j:
                    continue
                if f(k) / g(eta) >= float(w(eta)) / float(w(k)):
                    found = (k, eta)
                    break
            if found:
                break
        if found is None:
            break
        pairs.append(found)
    return pairs


def _imp1_vector(space, k, eta):
    if isinstance(space, SummingC0):
        left = SignedSet(range(1, eta + 1), [(-1) ** i for i in range(eta)])
        right = SignedSet(range(eta + 1, eta + k + 1))
    else:
        _, left = extremal_indicator(space, eta, 1, 2 * eta, "min")
        top = max(left.indices)
        _, right = extremal_indicator(space, k, top + 1, top + 2 * k + 16, "max")
    return 2.0 * indicator(left) + indicator(right), left, right


def imp1_experiment(space: SequenceSpace, w: Weight, q: float, j_max: int = 5,
                    cap: int = DEFAULT_CAP, window: int | None = None,
                    pairs: list[tuple[int, int]] | None = None, j_min: int = 1,
                    horizon_pad: int = 16) -> list[ExperimentRow]:
    """x_j = 2 1_{eps Gamma_l} + 1_{Gamma_r}, ratio of the CG to the A class norm.

    Default pairs are k_j = 2^j, eta_j = 4^j.  Each row records whether the
    precondition h_l(eta) <= h_r(k) w(k)/w(eta) holds and whether
    sigma_{k+1}(x_j) <= 2 ||1_{eps Gamma_l}||.
    """
    rows = []
    js = range(j_min, j_max + 1)
    if pairs is None:
        pairs = {j: (2 ** j, 4 ** j) for j in js}
    else:
        pairs = dict(zip(js, pairs))
    for j, (k, eta) in pairs.items():
        x, left, right = _imp1_vector(space, k, eta)
        flags = []
        H = max(eta, k) + horizon_pad
        hl = h_l(space, eta, 2 * eta).value
        hr = h_r(space, k, H).value
        if not hl <= hr * float(w(k)) / float(w(eta)) + 1e-12:
            flags.append("precondition_failed")
        num = class_norm(space, x, ClassNormParams(w, q, "CG"), window, cap)
        den = class_norm(space, x, ClassNormParams(w, q, "A"), window, cap)
        s_next = sigma_profile(space, x, k + 1, window)[k + 1] if isinstance(space, SummingC0) \
            else sigma(space, x, k + 1, window)
        if not s_next <= 2 * space.norm(indicator(left)) + 1e-9:
            flags.append("sigma_mechanism_failed")
        rows.append(ExperimentRow(j, k, None, eta, num, den, num / den, None, flags))
    return rows


def casec_construction(space: SequenceSpace, M_s: SignedSet, D: Iterable[int], r: int,
                       s: float | None = None, K_b: float | None = None) -> dict:
    """Build x_s = 2 1_{eps M_s} + 1_{V_s} and report the inequality chain.

    D is split into r consecutive blocks of sizes differing by at most one and
    V_s is the block with the largest indicator norm.  ``p`` is the space's
    convexity exponent.  When ``s`` is omitted the smallest s with
    floor(s^(p/2)) = r is used.
    """
    D = sorted(set(int(n) for n in D))
    if len(D) != len(M_s):
        raise ValueError("|D| must equal |M_s|")
    if not 1 <= r <= len(D):
        raise ValueError("need 1 <= r <= |D|")
    if M_s.indices and D and max(M_s.indices) >= min(D):
        raise ValueError("M_s must lie entirely before D")
    p = space.p_convexity
    K_b = space.basis_constant if K_b is None else K_b
    K_b = 1.0 if K_b is None else K_b
    s = r ** (2.0 / p) if s is None else s
    parts = [list(a) for a in np.array_split(np.array(D), r)]
    part_norms = [space.norm(indicator(SignedSet(P))) for P in parts]
    v = int(np.argmax(part_norms))
    V_s = parts[v]
    nM = space.norm(indicator(M_s))
    nD = space.norm(indicator(SignedSet(D)))
    nV = part_norms[v]
    x = 2.0 * indicator(M_s) + indicator(SignedSet(V_s))
    nx = space.norm(x)
    three_mid = nV ** p + 2 ** p * nM ** p
    three_rhs = (1 + 2 ** p) * nV ** p
    premise = nM <= nV + 1e-12
    denom = s ** p - K_b ** p
    return {
        "p": p,
        "s": s,
        "r": r,
        "partition_sizes": [len(P) for P in parts],
        "partition_norms": part_norms,
        "V_s": V_s,
        "x_s": x,
        "norm_x": nx,
        "norm_M": nM,
        "norm_D": nD,
        "norm_V": nV,
        "premise": premise,
        "onee": ((s ** p - K_b ** p) * nM ** p - 1, K_b ** p * nD ** p),
        "twwo_factor": (1 + r * K_b ** p) / denom if denom > 0 else math.inf,
        "three": (nx ** p, three_mid, three_rhs),
        "p_triangle_holds": nx ** p <= three_mid + 1e-9,
        "chain_holds": nx ** p <= three_mid + 1e-9 and (not premise or three_mid <= three_rhs + 1e-9),
    }


def _kppg_vector(space, u, eta):
    if isinstance(space, MixNorm):
        left = SignedSet(range(2, u + 1, 2))
        right = SignedSet(range(u + 1 if u % 2 == 0 else u + 2, u + 2 * eta + 1, 2))
    else:
        _, left = extremal_indicator(space, max(1, u // 2), 1, u, "max")
        _, right = extremal_indicator(space, eta, u + 1, u + 2 * eta, "min")
    return indicator(left) + 2.0 * indicator(right), left, right


def kppg_experiment(space: SequenceSpace, w: Weight, q: float, j_max: int = 4,
                    cap: int = DEFAULT_CAP, j_min: int = 1) -> list[ExperimentRow]:
    """x_j = 1_{Gamma_l} + 2 1_{Gamma_r} with u_j = 2^j, eta_j = 4^j; ratio of the
    G to the PG class norm.  For MixNorm Gamma_l are the even indices up to u_j
    and Gamma_r the odd indices in (u_j, u_j + 2 eta_j]."""
    rows = []
    for j in range(j_min, j_max + 1):
        u, eta = 2 ** j, 4 ** j
        x, left, right = _kppg_vector(space, u, eta)
        num = class_norm(space, x, ClassNormParams(w, q, "G"), cap=cap)
        den = class_norm(space, x, ClassNormParams(w, q, "PG"), cap=cap)
        flags = []
        if any(beta(space, x, n) != 0 for n in range(x.max_index(), x.max_index() + 3)):
            flags.append("tail_nonzero")
        rows.append(ExperimentRow(j, len(left), u, eta, num, den, num / den,
                                  float(w(max(eta - u, 1)) / w(u)), flags))
    return rows


def precursor_ratio(space: SequenceSpace, N: int) -> float:
    """||1_{A_N}|| / ||1_{B_N}|| with A_N the evens up to 2N and B_N the odds in (2N, 4N)."""
    A = SignedSet(range(2, 2 * N + 1, 2))
    B = SignedSet(range(2 * N + 1, 4 * N, 2))
    return space.norm(indicator(A)) / space.norm(indicator(B))


def chain_check(space: SequenceSpace, sample: Iterable[SparseVector], w: Weight, q: float,
                window: int | None = None, cap: int = DEFAULT_CAP, tol: float = 1e-9) -> ChainResult:
    """||x||_A <= ||x||_CG <= ||x||_G on every sample vector."""
    count = 0
    for i, x in enumerate(sample):
        a, cg, g = (class_norm(space, x, ClassNormParams(w, q, k), window, cap)
                    for k in ("A", "CG", "G"))
        count += 1
        if not (a <= cg + tol and cg <= g + tol):
            return ChainResult(False, count, {"index": i, "x": x, "A": a, "CG": cg, "G": g})
    return ChainResult(True, count)
