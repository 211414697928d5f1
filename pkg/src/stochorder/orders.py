"""Verdicts for the usual stochastic order and the likelihood ratio order.

All checks canonicalize their inputs, operate on the merged support with the
counting measure, and compare cross-multiplied masses only (see
:mod:`stochorder.isotonic`), so they are division free.  A failed verdict
always carries a witness from which the violated inequality can be recomputed.

``check_lr`` exposes four equivalent characterizations of the likelihood
ratio order on finite support:

* ``ratio`` - the pointwise mass ratio is isotonic where defined;
* ``pairwise`` - two-point cross products for every pair of support points;
* ``intervals`` - cross products of adjacent-interval masses over all
  boundary triples cut between atoms;
* ``conditional-st`` - stochastic dominance of the two conditional
  distributions on every window with positive mass under both.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import Interval, UnivariateDist
from .errors import DomainError, InvalidDistributionError
from .isotonic import MODE_EXACT, MODE_FLOAT, PRODUCT_RTOL, _check_mode, products_le

LR_METHODS = ("ratio", "pairwise", "intervals", "conditional-st")


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of an order or shape check.

    ``witness`` is present exactly when the verdict fails and names the
    points/boundaries at which the checked inequality is violated.
    """

    holds: bool
    method: str
    witness: tuple | None = None

    def __post_init__(self):
        if self.holds == (self.witness is not None):
            raise InvalidDistributionError("verdict must carry a witness iff it fails")

    def __bool__(self) -> bool:
        return self.holds


def _holds(method: str) -> OrderVerdict:
    return OrderVerdict(True, method)


def _fails(method: str, witness: tuple) -> OrderVerdict:
    return OrderVerdict(False, method, witness)


# ---------------------------------------------------------------------------
# merged-support mass extraction
# ---------------------------------------------------------------------------


def _merged_float(q1: UnivariateDist, q2: UnivariateDist):
    merged = np.union1d(q1.support, q2.support)
    g1 = np.zeros(merged.size)
    g2 = np.zeros(merged.size)
    g1[np.searchsorted(merged, q1.support)] = q1.probs
    g2[np.searchsorted(merged, q2.support)] = q2.probs
    return merged, g1.tolist(), g2.tolist()


def _merged_exact(q1: UnivariateDist, q2: UnivariateDist):
    if q1.weights is None or q2.weights is None:
        raise DomainError("exact mode requires integer-weight distributions")
    merged = np.union1d(q1.support, q2.support)
    g1 = [0] * merged.size
    g2 = [0] * merged.size
    for i, w in zip(np.searchsorted(merged, q1.support).tolist(), q1.weights):
        g1[i] = w
    for i, w in zip(np.searchsorted(merged, q2.support).tolist(), q2.weights):
        g2[i] = w
    return merged, g1, g2


def _merged_masses(q1, q2, mode):
    q1 = q1.canonical()
    q2 = q2.canonical()
    if mode == MODE_EXACT:
        return _merged_exact(q1, q2)
    return _merged_float(q1, q2)


def _cumulative(masses):
    out = [masses[0] * 0]  # typed zero: 0 for ints, 0.0 for floats
    for m in masses:
        out.append(out[-1] + m)
    return out


# ---------------------------------------------------------------------------
# stochastic order
# ---------------------------------------------------------------------------


def check_st(q1: UnivariateDist, q2: UnivariateDist, mode: str = MODE_FLOAT,
             tol: float = PRODUCT_RTOL) -> OrderVerdict:
    """Usual stochastic order: the survival of q1 never exceeds that of q2.

    The survival functions are step functions, so comparing them at every
    merged-support atom covers all real thresholds.  The witness is the
    violating threshold.
    """
    _check_mode(mode)
    merged, g1, g2 = _merged_masses(q1, q2, mode)
    if mode == MODE_EXACT:
        t1, t2 = sum(g1), sum(g2)
        s1, s2 = t1, t2
        for y, m1, m2 in zip(merged.tolist(), g1, g2):
            s1 -= m1
            s2 -= m2
            # survival ratios s1/t1 <= s2/t2, cross-multiplied
            if s1 * t2 > s2 * t1:
                return _fails("st", (y,))
        return _holds("st")
    # accumulate from the top so tail survivals keep full relative accuracy
    s1 = 0.0
    s2 = 0.0
    for y, m1, m2 in zip(merged.tolist()[::-1], g1[::-1], g2[::-1]):
        if s1 > s2 + tol:
            return _fails("st", (y,))
        s1 += m1
        s2 += m2
    return _holds("st")


# ---------------------------------------------------------------------------
# likelihood ratio order
# ---------------------------------------------------------------------------


def _lr_ratio(merged, g1, g2, mode, tol):
    pts = [i for i in range(len(merged)) if g1[i] > 0 or g2[i] > 0]
    for a, b in zip(pts, pts[1:]):
        if not products_le(g2[a] * g1[b], g1[a] * g2[b], mode, tol):
            return (float(merged[a]), float(merged[b]))
    return None


def _lr_pairwise(merged, g1, g2, mode, tol):
    k = len(merged)
    for i in range(k):
        for j in range(i + 1, k):
            if not products_le(g1[j] * g2[i], g1[i] * g2[j], mode, tol):
                return (float(merged[i]), float(merged[j]))
    return None


def _boundaries(merged) -> list[float]:
    """Cut points between atoms plus outer sentinels; index c splits before atom c."""
    vals = merged.tolist()
    out = [vals[0] - 1.0]
    out += [(a + b) / 2.0 for a, b in zip(vals, vals[1:])]
    out.append(vals[-1] + 1.0)
    return out


def _lr_intervals(merged, g1, g2, mode, tol):
    cuts = _boundaries(merged)
    c1 = _cumulative(g1)
    c2 = _cumulative(g2)
    n = len(cuts)
    for a in range(n):
        for b in range(a + 1, n):
            q1A = c1[b] - c1[a]
            q2A = c2[b] - c2[a]
            for c in range(b + 1, n):
                q1B = c1[c] - c1[b]
                q2B = c2[c] - c2[b]
                if not products_le(q1B * q2A, q1A * q2B, mode, tol):
                    return (cuts[a], cuts[b], cuts[c])
    return None


def _lr_conditional_st(merged, g1, g2, mode, tol):
    cuts = _boundaries(merged)
    c1 = _cumulative(g1)
    c2 = _cumulative(g2)
    n = len(cuts)
    for a in range(n):
        for b in range(a + 1, n):
            w1 = c1[b] - c1[a]
            w2 = c2[b] - c2[a]
            if w1 <= 0 or w2 <= 0:
                continue
            for t in range(a + 1, b):
                u1 = c1[b] - c1[t]
                u2 = c2[b] - c2[t]
                # conditional survivals u1/w1 <= u2/w2, cross-multiplied
                if not products_le(u1 * w2, u2 * w1, mode, tol):
                    return (cuts[a], cuts[b], cuts[t])
    return None


_LR_IMPL = {
    "ratio": _lr_ratio,
    "pairwise": _lr_pairwise,
    "intervals": _lr_intervals,
    "conditional-st": _lr_conditional_st,
}


def check_lr(q1: UnivariateDist, q2: UnivariateDist, method: str = "ratio",
             mode: str = MODE_FLOAT, tol: float = PRODUCT_RTOL) -> OrderVerdict:
    """Likelihood ratio order of q1 against q2 via the chosen characterization.

    All methods return identical verdicts on every input pair; they differ
    only in the shape of the witness they produce when the order fails.
    """
    _check_mode(mode)
    if method not in _LR_IMPL:
        raise DomainError(f"unknown check_lr method {method!r}; choose from {LR_METHODS}")
    merged, g1, g2 = _merged_masses(q1, q2, mode)
    witness = _LR_IMPL[method](merged, g1, g2, mode, tol)
    tag = f"lr:{method}"
    return _holds(tag) if witness is None else _fails(tag, witness)


def truncate(q: UnivariateDist, iv: Interval) -> UnivariateDist:
    """Conditional distribution of q given the interval, renormalized."""
    q = q.canonical()
    lo, hi = q._interval_slice(iv)
    if lo == hi:
        raise DomainError(f"interval {iv} carries zero mass")
    support = q.support[lo:hi]
    probs = q.probs[lo:hi]
    mass = float(probs.sum())
    if mass <= 0.0:
        raise DomainError(f"interval {iv} carries zero mass")
    weights = None if q.weights is None else q.weights[lo:hi]
    return UnivariateDist(support, probs / mass, weights)
