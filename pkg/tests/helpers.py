"""Shared generators and brute-force oracles for the test suite.

Oracles here are written independently of the library code paths they check:
they enumerate, use exact rational arithmetic, or apply the literal textbook
definition, and their outputs are compared against the library verdicts.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from stochorder import BivariateDist, Interval, UnivariateDist


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def random_univariate(rng: np.random.Generator, max_atoms: int = 5, integer: bool = False) -> UnivariateDist:
    k = int(rng.integers(1, max_atoms + 1))
    support = np.sort(rng.choice(np.arange(-5.0, 6.0), size=k, replace=False))
    if integer:
        weights = rng.integers(1, 10, size=k).tolist()
        return UnivariateDist.from_weights(support, weights)
    probs = rng.random(k) + 0.05
    return UnivariateDist(support, probs / probs.sum())


def enumerate_weight_dists(support, max_weight: int) -> list[UnivariateDist]:
    """Every integer-weight distribution on the given support (zeros allowed)."""
    out = []
    for weights in itertools.product(range(max_weight + 1), repeat=len(support)):
        if sum(weights) == 0:
            continue
        out.append(UnivariateDist.from_weights(support, weights))
    return out


def lr_pair(rng: np.random.Generator, max_atoms: int = 5) -> tuple[UnivariateDist, UnivariateDist]:
    """A likelihood-ratio ordered pair built from an isotonic factor."""
    q1 = random_univariate(rng, max_atoms)
    factor = np.sort(rng.random(len(q1)) + 0.05)
    boosted = q1.probs * factor
    q2 = UnivariateDist(q1.support, boosted / boosted.sum())
    return q1, q2


def lr_chain(rng: np.random.Generator, max_atoms: int = 5):
    q1, q2 = lr_pair(rng, max_atoms)
    factor = np.sort(rng.random(len(q2)) + 0.05)
    boosted = q2.probs * factor
    q3 = UnivariateDist(q2.support, boosted / boosted.sum())
    return q1, q2, q3


def random_supermodular_tp2(rng: np.random.Generator, nx: int, ny: int) -> BivariateDist:
    """Strictly positive TP2 pmf via an exponentiated supermodular potential."""
    a = rng.normal(0.0, 1.0, nx)
    b = rng.normal(0.0, 1.0, ny)
    s = rng.exponential(0.5, (nx - 1, ny - 1))
    phi = a[:, None] + b[None, :]
    bump = np.zeros((nx, ny))
    bump[1:, 1:] = np.cumsum(np.cumsum(s, axis=0), axis=1)
    phi = phi + bump
    phi -= phi.max()
    pmf = np.exp(phi)
    return BivariateDist(np.arange(1.0, nx + 1), np.arange(1.0, ny + 1), pmf / pmf.sum())


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def exact_lr_oracle(q1: UnivariateDist, q2: UnivariateDist) -> bool:
    """LR order by exact rational ratio monotonicity on the merged support."""
    w1 = dict(zip(q1.support.tolist(), q1.fractions()))
    w2 = dict(zip(q2.support.tolist(), q2.fractions()))
    merged = sorted(set(w1) | set(w2))
    prev = None
    for v in merged:
        a = w1.get(v, Fraction(0))
        b = w2.get(v, Fraction(0))
        if a == 0 and b == 0:
            continue
        # ratio b/a on [0, inf]: encode as (num, den) and compare by cross products
        cur = (b, a)
        if prev is not None:
            pb, pa = prev
            if pb * a > b * pa:
                return False
        prev = cur
    return True


def exact_st_oracle(q1: UnivariateDist, q2: UnivariateDist) -> bool:
    w1 = dict(zip(q1.support.tolist(), q1.fractions()))
    w2 = dict(zip(q2.support.tolist(), q2.fractions()))
    merged = sorted(set(w1) | set(w2))
    s1 = Fraction(1)
    s2 = Fraction(1)
    for v in merged:
        s1 -= w1.get(v, Fraction(0))
        s2 -= w2.get(v, Fraction(0))
        if s1 > s2:
            return False
    return True


def all_triples_concave(points, tol: float = 1e-12) -> bool:
    """Concavity over *all* point triples, not just consecutive ones."""
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                (a1, a2), (b1, b2), (c1, c2) = points[i], points[j], points[k]
                lhs = (c2 - b2) * (b1 - a1)
                rhs = (b2 - a2) * (c1 - b1)
                if lhs > rhs + tol * max(abs(lhs), abs(rhs)):
                    return False
    return True


def literal_minimal_density(mu: UnivariateDist, nu: UnivariateDist, x: float) -> float:
    """sup over left boundaries a < x of nu((a, x]) / mu((a, x]), with 0/0 = 0."""
    bounds = [float(mu.support[0]) - 1.0] + mu.support.tolist()
    best = 0.0
    for a in bounds:
        if a >= x:
            continue
        iv = Interval.open_closed(a, x)
        m = mu.interval_mass(iv)
        n = nu.interval_mass(iv)
        if m > 0:
            best = max(best, n / m)
    return best


def literal_maximal_density(mu: UnivariateDist, nu: UnivariateDist, x: float) -> float:
    """inf over right boundaries b > x of nu([x, b)) / mu([x, b)), with 0/0 = 1."""
    bounds = mu.support.tolist() + [float(mu.support[-1]) + 1.0]
    best = 1.0
    for b in bounds:
        if b <= x:
            continue
        iv = Interval.closed_open(x, b)
        m = mu.interval_mass(iv)
        n = nu.interval_mass(iv)
        if m > 0:
            best = min(best, n / m)
    return best


def measure_pair_with_isotonic_ratio(rng: np.random.Generator, max_atoms: int = 6):
    """(mu, nu) with nu = r * mu for an isotonic ratio r in [0, 1]."""
    k = int(rng.integers(1, max_atoms + 1))
    support = np.sort(rng.choice(np.arange(-8.0, 9.0), size=k, replace=False))
    masses = rng.random(k) + 0.05
    mu = UnivariateDist(support, masses, is_probability=False)
    r = np.sort(rng.random(k))
    nu = UnivariateDist(support, masses * r, is_probability=False)
    return mu, nu, r
