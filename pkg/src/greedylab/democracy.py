"""Democracy functions of signed indicators, restricted variants, and the
Property (W), (W*) and (I) checkers.

Every extremal value comes with a witness ``SignedSet``.  For the bundled
spaces the extremal sets have a known shape and are found directly
(``method="structured"``); ``method="brute"`` enumerates every subset and
sign pattern of the window and is the oracle the structured routines are
tested against.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, islice, product
from typing import Callable

import numpy as np

from .chebyshev import BudgetError
from .spaces import (DifferenceL1, Lp, MixNorm, SchreierMod, SequenceSpace, SignedSet,
                     SummingC0, indicator)

__all__ = [
    "DemocracyReport", "extremal_indicator", "h_r", "h_l", "h_restricted",
    "superdemocracy_ratio", "superconservative_ratio", "check_property_W",
    "check_property_Wstar", "check_property_I", "characteristic_psi",
    "PropertyReport", "quoted_W_witness", "quoted_Wstar_witness", "check_quoted_Wstar",
    "h_r_exact", "BRUTE_BUDGET",
]

BRUTE_BUDGET = 10**7


@dataclass(frozen=True)
class DemocracyReport:
    m: int
    u: int | None
    horizon: int
    value: float
    witness: SignedSet
    side: str = ""


@dataclass
class PropertyReport:
    holds: bool
    constant: float
    witnesses: dict = field(default_factory=dict)
    C1: float | None = None
    C2: float | None = None

    def __iter__(self):
        return iter((self.holds, self.constant, self.witnesses))


# ---------------------------------------------------------------- extremal sets

def _sign_invariant(space):
    """One-time self-test that flipping signs leaves the norm unchanged."""
    key = repr(space)
    if key not in _SIGN_CHECKED:
        rng = np.random.default_rng(0)
        idx = np.arange(1, 9)
        V = rng.normal(size=(16, 8))
        flips = rng.choice((-1.0, 1.0), size=V.shape)
        same = np.allclose(space.norm_batch(idx, V), space.norm_batch(idx, V * flips),
                           rtol=1e-12, atol=0)
        _SIGN_CHECKED[key] = bool(same)
    return _SIGN_CHECKED[key]


_SIGN_CHECKED: dict = {}


def _brute(space, size, lo, hi, mode, signs="all"):
    n = hi - lo + 1
    signs_needed = signs == "all" and not (space.unconditional and _sign_invariant(space))
    count = math.comb(n, size) * (2 ** size if signs_needed else 1)
    if count > BRUTE_BUDGET:
        raise BudgetError(f"{count} signed sets exceed the budget {BRUTE_BUDGET}")
    best, wit = (-math.inf if mode == "max" else math.inf), None
    idx = np.arange(lo, hi + 1)
    signs = np.array(list(product((1.0, -1.0), repeat=size))) if signs_needed else np.ones((1, size))
    combos = combinations(range(n), size)
    while True:
        chunk = list(islice(combos, max(1, 200_000 // len(signs))))
        if not chunk:
            break
        C = np.array(chunk, dtype=np.int64)
        V = np.zeros((len(C) * len(signs), n))
        rows = np.repeat(np.arange(len(C)), len(signs))
        cols = C[rows]
        V[np.arange(V.shape[0])[:, None], cols] = np.tile(signs, (len(C), 1))
        vals = space.norm_batch(idx, V)
        k = int(np.argmax(vals) if mode == "max" else np.argmin(vals))
        better = vals[k] > best if mode == "max" else vals[k] < best
        if better:
            best = float(vals[k])
            ci, si = divmod(k, len(signs))
            wit = SignedSet((idx[C[ci]]).tolist(), signs[si].astype(int).tolist())
    return best, wit


def _difference_dp(size, lo, hi, mode, signs="all"):
    """Extremal ||1_{eps A}|| over A in [lo, hi], |A| = size, for the difference norm."""
    better = max if mode == "max" else min
    vals = (-1, 0, 1) if signs == "all" else (0, 1)
    # state: (count, value at current position) -> (cost, back pointer)
    start_cost = (lambda v: abs(v)) if lo > 1 else (lambda v: 0)
    layer = {}
    for v in vals:
        c = 0 if v == 0 else 1
        if c <= size:
            layer[(c, v)] = (start_cost(v), None)
    history = [layer]
    for pos in range(lo + 1, hi + 1):
        nxt = {}
        for (c, v), (cost, _) in layer.items():
            for w in vals:
                c2 = c + (w != 0)
                if c2 > size:
                    continue
                val = cost + abs(v - w)
                key = (c2, w)
                if key not in nxt or better(val, nxt[key][0]) != nxt[key][0]:
                    nxt[key] = (val, (c, v))
        layer = nxt
        history.append(layer)
    finals = [(cost + abs(v), (c, v)) for (c, v), (cost, _) in layer.items() if c == size]
    total, state = better(finals, key=lambda t: t[0])
    picks = []
    for pos in range(hi, lo - 1, -1):
        c, v = state
        if v != 0:
            picks.append((pos, v))
        state = history[pos - lo][state][1]
    picks.reverse()
    return float(total), SignedSet([p for p, _ in picks], [s for _, s in picks])


def _structured(space, size, lo, hi, mode, signs="all"):
    rng = list(range(lo, hi + 1))
    if isinstance(space, Lp):
        return size ** (1.0 / space.p), SignedSet(rng[:size])
    if isinstance(space, SummingC0):
        if mode == "max" or signs == "plus":
            return float(size), SignedSet(rng[:size])
        return 1.0, SignedSet(rng[:size], [(-1) ** i for i in range(size)])
    if isinstance(space, DifferenceL1):
        return _difference_dp(size, lo, hi, mode, signs)
    if isinstance(space, SchreierMod):
        A = rng[-size:] if mode == "max" else rng[:size]
    elif isinstance(space, MixNorm):
        evens = [n for n in rng if n % 2 == 0]
        odds = [n for n in rng if n % 2 == 1]
        first, second = (evens, odds) if mode == "max" else (odds, evens)
        A = sorted(first[:size] + second[:max(0, size - len(first))])
    else:
        raise NotImplementedError
    witness = SignedSet(A)
    return space.norm(indicator(witness)), witness


def extremal_indicator(space: SequenceSpace, size: int, lo: int, hi: int, mode: str,
                       method: str = "auto", signs: str = "all") -> tuple[float, SignedSet]:
    """max or min of ||1_{eps A}|| over A inside [lo, hi] with |A| = size.

    ``signs="all"`` ranges over every sign pattern; ``signs="plus"`` fixes eps = +1.
    """
    if mode not in ("max", "min"):
        raise ValueError("mode must be 'max' or 'min'")
    if signs not in ("all", "plus"):
        raise ValueError("signs must be 'all' or 'plus'")
    if lo < 1 or size < 0 or size > hi - lo + 1:
        raise ValueError(f"cannot place {size} indices in [{lo}, {hi}]")
    if size == 0:
        return 0.0, SignedSet(())
    bundled = isinstance(space, (Lp, SummingC0, DifferenceL1, SchreierMod, MixNorm))
    if method == "structured" or (method == "auto" and bundled):
        return _structured(space, size, lo, hi, mode, signs)
    if method in ("brute", "auto"):
        return _brute(space, size, lo, hi, mode, signs)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------- democracy functions

def h_r(space: SequenceSpace, m: int, horizon: int, method: str = "auto",
        signs: str = "all") -> DemocracyReport:
    """max of ||1_{eps A}|| over A in [1, horizon] with |A| <= m."""
    if not 1 <= m <= horizon:
        raise ValueError("need 1 <= m <= horizon")
    best = None
    for k in range(1, m + 1):
        val, wit = extremal_indicator(space, k, 1, horizon, "max", method, signs)
        if best is None or val > best[0]:
            best = (val, wit)
    return DemocracyReport(m, None, horizon, best[0], best[1], "r")


def h_r_exact(space: SequenceSpace, m: int, horizon: int, method: str = "auto") -> DemocracyReport:
    """Exact-size variant: max over |A| = m."""
    val, wit = extremal_indicator(space, m, 1, horizon, "max", method)
    return DemocracyReport(m, None, horizon, val, wit, "r")


def h_l(space: SequenceSpace, m: int, horizon: int, method: str = "auto",
        signs: str = "all") -> DemocracyReport:
    """min of ||1_{eps A}|| over A in [1, horizon] with |A| = m."""
    if not 1 <= m <= horizon:
        raise ValueError("need 1 <= m <= horizon")
    val, wit = extremal_indicator(space, m, 1, horizon, "min", method, signs)
    return DemocracyReport(m, None, horizon, val, wit, "l")


def _right_horizon(m, u, horizon):
    return u + 2 * m + 16 if horizon is None else horizon


def h_restricted(space: SequenceSpace, m: int, u: int, side: str, horizon: int | None = None,
                 method: str = "auto", signs: str = "all") -> DemocracyReport:
    """Left: max over A in [1, u]; right: min over A in (u, horizon], both with |A| = m.

    For the right side ``horizon=None`` uses u + 2m + 16.
    """
    if m < 1 or u < 1:
        raise ValueError("m and u must be positive")
    if side == "left":
        if m > u:
            raise ValueError("the left restricted function needs m <= u")
        val, wit = extremal_indicator(space, m, 1, u, "max", method, signs)
        return DemocracyReport(m, u, u if horizon is None else horizon, val, wit, "left")
    if side == "right":
        H = _right_horizon(m, u, horizon)
        if u >= H:
            raise ValueError("u must be below the horizon")
        if H - u < m:
            raise ValueError(f"window ({u}, {H}] holds fewer than {m} indices")
        val, wit = extremal_indicator(space, m, u + 1, H, "min", method, signs)
        return DemocracyReport(m, u, H, val, wit, "right")
    raise ValueError("side must be 'left' or 'right'")


def superdemocracy_ratio(space: SequenceSpace, m_max: int, horizon: int,
                         method: str = "auto") -> float:
    return max(h_r(space, m, horizon, method).value / h_l(space, m, horizon, method).value
               for m in range(1, m_max + 1))


def superconservative_ratio(space: SequenceSpace, m_max: int, horizon: int,
                            method: str = "auto") -> float:
    """max of h_{R,l}(m,u)/h_{R,r}(m,u) over m <= u, m <= m_max, u + m <= horizon."""
    best = 0.0
    for m in range(1, m_max + 1):
        for u in range(m, horizon - m + 1):
            left = h_restricted(space, m, u, "left", method=method).value
            right = h_restricted(space, m, u, "right", horizon, method).value
            best = max(best, left / right)
    return best


# ---------------------------------------------------------------- properties

def quoted_W_witness(space: SequenceSpace, n: int, m: int) -> SignedSet:
    """The explicit sets used to show Property (W) for the bundled spaces."""
    if isinstance(space, SummingC0):
        return SignedSet(range(m + 1, m + n + 1))
    if isinstance(space, DifferenceL1):
        return SignedSet(range(m + 1, m + 2 * n, 2))
    if isinstance(space, SchreierMod):
        return SignedSet(range(m * m + 1, m * m + n + 1))
    if isinstance(space, MixNorm):
        j = m + 1 if (m + 1) % 2 == 0 else m + 2
        return SignedSet(range(j, j + 2 * n, 2))
    return SignedSet(range(m + 1, m + n + 1))


def quoted_Wstar_witness(space: SequenceSpace, m: int) -> tuple[int, SignedSet]:
    """(C1, A) with A inside [1, C1 m] as quoted for the bundled spaces."""
    if isinstance(space, SummingC0):
        return 1, SignedSet(range(1, m + 1), [(-1) ** n for n in range(1, m + 1)])
    if isinstance(space, MixNorm):
        return 2, SignedSet(range(1, 2 * m, 2))
    return 1, SignedSet(range(1, m + 1))


def check_property_W(space: SequenceSpace, n_max: int, m_max: int, horizon: int,
                     method: str = "auto", c_max: float = 2.0) -> PropertyReport:
    """Smallest C with h_r(n) <= C ||1_{eps A}|| for some A in (m, horizon], |A| = n,
    over n <= n_max and n <= m <= m_max."""
    if not n_max <= m_max <= horizon:
        raise ValueError("need n_max <= m_max <= horizon")
    C, wits = 0.0, {}
    for n in range(1, n_max + 1):
        hr = h_r(space, n, horizon, method).value
        for m in range(n, m_max + 1):
            if horizon - m < n:
                raise ValueError(f"horizon {horizon} leaves no room for {n} indices after {m}")
            val, wit = extremal_indicator(space, n, m + 1, horizon, "max", method)
            wits[(n, m)] = wit
            C = max(C, hr / val)
    return PropertyReport(C <= c_max, C, wits)


def check_property_Wstar(space: SequenceSpace, m_max: int, horizon: int | None = None,
                         method: str = "auto", c2_max: float = 2.0,
                         c1_max: int = 4) -> PropertyReport:
    """Lexicographically smallest (C1, C2): for each m <= m_max some A in [1, C1 m]
    with |A| = m has ||1_{eps A}|| <= C2 h_l(m); C1 is the least integer whose C2
    does not exceed ``c2_max``."""
    H = horizon if horizon is not None else c1_max * m_max
    hl = {m: h_l(space, m, H, method).value for m in range(1, m_max + 1)}
    fallback = None
    for C1 in range(1, c1_max + 1):
        C2, wits = 0.0, {}
        for m in range(1, m_max + 1):
            val, wit = extremal_indicator(space, m, 1, C1 * m, "min", method)
            wits[m] = wit
            C2 = max(C2, val / hl[m])
        if C2 <= c2_max:
            return PropertyReport(True, C2, wits, C1, C2)
        if fallback is None or C2 < fallback.C2:
            fallback = PropertyReport(False, C2, wits, C1, C2)
    return fallback


def check_quoted_Wstar(space: SequenceSpace, m_max: int, horizon: int | None = None) -> PropertyReport:
    """C2 attained by the quoted (W*) witnesses."""
    H = horizon if horizon is not None else 4 * m_max
    C1, C2, wits = 1, 0.0, {}
    for m in range(1, m_max + 1):
        c1, wit = quoted_Wstar_witness(space, m)
        C1 = max(C1, c1)
        wits[m] = wit
        C2 = max(C2, space.norm(indicator(wit)) / h_l(space, m, H).value)
    return PropertyReport(True, C2, wits, C1, C2)


def check_property_I(space: SequenceSpace, psi: Callable[[int], int], l_max: int, u_max: int,
                     horizon: int | None = None, c_max: float = 4.0,
                     m_max: int | None = None, method: str = "auto") -> PropertyReport:
    """Scan both conditions of Property (I).

    The constant is the worse of the doubling ratio
    h_{R,r}(2^{l+1}u, u)/h_{R,r}(2^l u, u) and of h_{R,r}(u,u)/h_{R,r}(m,u)
    over u <= psi(m); m runs up to ``m_max`` (default 2 u_max).
    """
    m_max = 2 * u_max if m_max is None else m_max
    cache = {}

    def hr(m, u):
        if (m, u) not in cache:
            cache[(m, u)] = h_restricted(space, m, u, "right", horizon, method).value
        return cache[(m, u)]

    doubling, doubling_at = 0.0, None
    for l in range(l_max + 1):
        for u in range(1, u_max + 1):
            r = hr(2 ** (l + 1) * u, u) / hr(2 ** l * u, u)
            if r > doubling:
                doubling, doubling_at = r, (l, u)
    domination, domination_at = 0.0, None
    for m in range(1, m_max + 1):
        for u in range(1, min(u_max, psi(m)) + 1):
            r = hr(u, u) / hr(m, u)
            if r > domination:
                domination, domination_at = r, (m, u)
    worst = max(doubling, domination)
    wits = {"doubling": (doubling, doubling_at), "domination": (domination, domination_at)}
    return PropertyReport(worst <= c_max, worst, wits)


def characteristic_psi(space: SequenceSpace, m: int, horizon: int, method: str = "auto",
                       signs: str = "all") -> int:
    """Smallest u in [m, horizon] with h_r(m) <= 2 h_{R,l}(m, u)."""
    if m > horizon:
        raise ValueError("m must not exceed the horizon")
    target = h_r(space, m, horizon, method, signs).value
    for u in range(m, horizon + 1):
        if target <= 2 * h_restricted(space, m, u, "left", method=method, signs=signs).value + 1e-12:
            return u
    raise ValueError(f"no u <= {horizon} satisfies the characteristic inequality for m={m}")
