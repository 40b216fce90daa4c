"""Weights, summing weights, dilation sequences and indices, and regularity scans.

All infinite sups and infs over k are replaced by scans over ``1 <= k <= k_max``;
every report carries its scan range.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "Weight", "DilationReport", "IndexReport", "RegularityReport", "make_weight",
    "summing_weight", "dilation_bounds", "dilation_indices", "check_doubling",
    "regularity_check", "auxi_constant", "equiv_ratio", "validate_weight",
]


@dataclass(frozen=True)
class Weight:
    func: Callable[[np.ndarray], np.ndarray]
    theta_claim: float | None = None
    name: str = "weight"

    def __call__(self, n):
        n = np.asarray(n, dtype=float)
        return np.asarray(self.func(n), dtype=float)


@dataclass(frozen=True)
class DilationReport:
    M: int
    phi_hat: float
    Phi_hat: float
    k_max: int
    k_phi: int = 1
    k_Phi: int = 1


@dataclass(frozen=True)
class IndexReport:
    """Index estimates read off at the largest scanned dilation.

    ``i_sup``/``I_inf`` are the sup/inf over the whole M grid; with a finite k
    scan they are biased (phi_hat overestimates phi), so they are reported
    alongside rather than used.
    """
    i_hat: float
    I_hat: float
    M_max: int
    k_max: int
    i_sup: float = math.nan
    I_inf: float = math.nan
    profile: list = field(default_factory=list, repr=False)


@dataclass(frozen=True)
class RegularityReport:
    constant: float
    holds: bool
    mode: str
    exponent: float
    k_range: int
    stability: float
    auxi: float | None = None

    def __iter__(self):
        return iter((self.constant, self.holds))


def _power(alpha):
    return lambda n: n ** alpha


def make_weight(spec: str) -> Weight:
    """Named presets: ``power:a``, ``sqrtlog:g`` (sqrt(n) ln(n+1)^g, alias
    ``sqrt*log`` for g=1), ``log``, ``geometric:b`` and ``table:v1,v2,...``."""
    key = spec.strip().lower().replace(" ", "")
    head, _, arg = key.partition(":")
    if key in ("sqrt*log", "sqrtlog"):
        head, arg = "sqrtlog", "1"
    if key == "sqrt":
        head, arg = "power", "0.5"
    if head == "power":
        a = float(arg or 1.0)
        return Weight(_power(a), 2.0 ** a if a >= 0 else None, f"power:{a:g}")
    if head == "sqrtlog":
        g = float(arg or 1.0)
        return Weight(lambda n: np.sqrt(n) * np.log1p(n) ** g, None, f"sqrtlog:{g:g}")
    if head == "log":
        return Weight(np.log1p, None, "log")
    if head == "geometric":
        b = float(arg or 2.0)
        return Weight(lambda n: b ** n, None, f"geometric:{b:g}")
    if head == "table":
        table = np.array([float(v) for v in arg.split(",") if v])
        if table.size == 0:
            raise ValueError("empty weight table")

        def lookup(n):
            k = np.asarray(n, dtype=np.int64)
            if np.any(k < 1) or np.any(k > table.size):
                raise ValueError(f"table weight defined only on 1..{table.size}")
            return table[k - 1]
        return Weight(lookup, None, "table")
    raise ValueError(f"unknown weight preset {spec!r}")


def validate_weight(w: Weight, n_max: int) -> bool:
    """Positive and nondecreasing on 1..n_max."""
    v = w(np.arange(1, n_max + 1))
    return bool(v[0] > 0 and np.all(np.diff(v) >= 0))


def summing_weight(w: Weight, m: int) -> float:
    if m < 1:
        raise ValueError("m must be positive")
    n = np.arange(1, m + 1)
    return math.fsum(w(n) / n)


def dilation_bounds(w: Weight, M: int, k_max: int = 2**12) -> DilationReport:
    if M < 1 or k_max < 1:
        raise ValueError("M and k_max must be positive")
    k = np.arange(1, k_max + 1)
    r = w(M * k) / w(k)
    i, j = int(np.argmin(r)), int(np.argmax(r))
    return DilationReport(M, float(r[i]), float(r[j]), k_max, i + 1, j + 1)


def dilation_indices(w: Weight, M_max: int = 2**10, k_max: int = 2**12) -> IndexReport:
    if M_max < 2:
        raise ValueError("M_max must be at least 2")
    k = np.arange(1, k_max + 1)
    wk = w(k)
    i_best, I_best, profile = -math.inf, math.inf, []
    for M in range(2, M_max + 1):
        r = w(M * k) / wk
        lo, hi = math.log(r.min()) / math.log(M), math.log(r.max()) / math.log(M)
        i_best, I_best = max(i_best, lo), min(I_best, hi)
        profile.append((M, lo, hi))
    _, i_hat, I_hat = profile[-1]
    return IndexReport(i_hat, I_hat, M_max, k_max, i_best, I_best, profile)


def check_doubling(w: Weight, n_max: int) -> float:
    if n_max < 1:
        raise ValueError("n_max must be positive")
    n = np.arange(1, n_max + 1)
    return float((w(2 * n) / w(n)).max())


def _regularity_constant(w, exponent, mode, R):
    n = np.arange(1, R + 1)
    g = w(n) * n ** (-float(exponent))
    if mode == "LRP":
        return float((g / np.maximum.accumulate(g)).min())
    return float((g / np.minimum.accumulate(g)).max())


def regularity_check(w: Weight, exponent: float, mode: str = "LRP",
                     k_range: int = 2**12, tol: float = 0.01) -> RegularityReport:
    """Lower (LRP) or upper (URP) regularity scan over 1 <= k <= N <= k_range.

    A finite scan always returns a positive, finite constant, so ``holds`` also
    asks that the constant be stable: doubling the range may move it by at most
    ``tol`` (relative) in the unfavourable direction.
    """
    mode = mode.upper()
    if mode == "LRP" and not exponent > 0:
        raise ValueError("LRP needs a positive exponent")
    if mode == "URP" and not exponent < 1:
        raise ValueError("URP needs an exponent below 1")
    if mode not in ("LRP", "URP"):
        raise ValueError("mode must be LRP or URP")
    if k_range < 2:
        raise ValueError("k_range must be at least 2")
    C = _regularity_constant(w, exponent, mode, k_range)
    C_half = _regularity_constant(w, exponent, mode, k_range // 2)
    stability = C / C_half
    if mode == "LRP":
        holds = C > 1e-6 and stability >= 1 - tol
        aux = None
    else:
        holds = math.isfinite(C) and stability <= 1 + tol
        aux = auxi_constant(w, exponent, int(math.isqrt(k_range)), int(math.isqrt(k_range)))
    return RegularityReport(C, bool(holds), mode, float(exponent), k_range, stability, aux)


def auxi_constant(w: Weight, alpha: float, M_max: int = 64, k_max: int = 64) -> float:
    """Smallest C with w(Mk) <= C M^alpha w(k) on the grid 1 <= M <= M_max, 1 <= k <= k_max."""
    M = np.arange(1, M_max + 1)[:, None]
    k = np.arange(1, k_max + 1)[None, :]
    return float((w(M * k) / (M ** alpha * w(k))).max())


def equiv_ratio(w: Weight, N_max: int) -> float:
    """max over N <= N_max of summing_weight(N) / w(N)."""
    if N_max < 1:
        raise ValueError("N_max must be positive")
    n = np.arange(1, N_max + 1)
    v = w(n)
    return float((np.cumsum(v / n) / v).max())
