"""Sampling, empirical distributions, and conditional quantile diagnostics.

Sampling uses the Philox 4x32-10 counter-based generator (numpy
implementation) with inverse-CDF lookup over the row-major cumulative pmf,
so identical seeds reproduce identical streams on every platform.  Derived
streams inside the diagnostic harnesses use spawn keys of the base seed and
are documented next to each harness.

Conditional quantile curves come in three flavors:

* ``west-min``: minimal quantile of the from-the-left kernel,
* ``east-max``: maximal quantile of the from-the-right kernel,
* ``empirical``: the west-min construction applied to an empirical
  distribution (the estimator convention; the maximal choice is reported
  alongside by the harnesses to show the insensitivity of the limits).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import BivariateDist
from .errors import DomainError, PreconditionError
from .tp2 import check_st_condition, kernel_east, kernel_west

QUANTILE_FLAVORS = ("west-min", "east-max", "empirical")


def _philox(seed) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def sample(r: BivariateDist, n: int, seed) -> np.ndarray:
    """n i.i.d. draws as an (n, 2) array; deterministic per seed."""
    if n < 1:
        raise DomainError("sample size must be at least 1")
    r = r.canonical()
    flat = r.pmf.reshape(-1)
    cum = np.cumsum(flat)
    cum = cum / cum[-1]
    rng = _philox(seed)
    u = rng.random(int(n))
    idx = np.searchsorted(cum, u, side="left")
    idx = np.minimum(idx, flat.size - 1)
    i, j = np.divmod(idx, r.shape[1])
    return np.column_stack([r.x_support[i], r.y_support[j]])


def empirical(samples) -> BivariateDist:
    """Empirical distribution with integer counts as exact weights."""
    pts = np.asarray(samples, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
        raise DomainError("samples must be a nonempty (n, 2) array")
    uniq, counts = np.unique(pts, axis=0, return_counts=True)
    gx = sorted(set(uniq[:, 0].tolist()))
    gy = sorted(set(uniq[:, 1].tolist()))
    ix = {v: i for i, v in enumerate(gx)}
    iy = {v: j for j, v in enumerate(gy)}
    rows = [[0] * len(gy) for _ in gx]
    for (x, y), c in zip(uniq.tolist(), counts.tolist()):
        rows[ix[x]][iy[y]] += int(c)
    return BivariateDist.from_weights(gx, gy, rows)


@dataclass(frozen=True, eq=False)
class QuantileCurve:
    """Conditional beta-quantiles along a grid of x values."""

    beta: float
    points: tuple[tuple[float, float], ...]
    flavor: str

    def value_at(self, x: float) -> float:
        for px, q in self.points:
            if px == x:
                return q
        raise DomainError(f"{x!r} is not an evaluation point of this curve")


def quantile_curve(r: BivariateDist, beta: float, flavor: str = "west-min", xs=None) -> QuantileCurve:
    """Conditional quantile curve of the chosen kernel flavor."""
    beta = float(beta)
    if not 0.0 < beta < 1.0:
        raise DomainError(f"beta must lie strictly inside (0, 1), got {beta!r}")
    if flavor not in QUANTILE_FLAVORS:
        raise DomainError(f"unknown flavor {flavor!r}; choose from {QUANTILE_FLAVORS}")
    if flavor == "east-max":
        kern = kernel_east(r, xs)
        pts = tuple(
            (float(x), row.max_quantile(beta))
            for x, row in zip(kern.eval_points.tolist(), kern.rows)
        )
    else:
        kern = kernel_west(r, xs)
        pts = tuple(
            (float(x), row.quantile(beta))
            for x, row in zip(kern.eval_points.tolist(), kern.rows)
        )
    return QuantileCurve(beta, pts, flavor)


# ---------------------------------------------------------------------------
# convergence harnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BracketEntry:
    n: int
    seed_key: tuple
    q_emp_min_x1: float
    q_emp_max_x1: float
    q_emp_min_x2: float
    q_emp_max_x2: float
    lower_ok: bool
    upper_ok: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "seed_key": list(self.seed_key),
            "q_emp_min_x1": self.q_emp_min_x1,
            "q_emp_max_x1": self.q_emp_max_x1,
            "q_emp_min_x2": self.q_emp_min_x2,
            "q_emp_max_x2": self.q_emp_max_x2,
            "lower_ok": self.lower_ok,
            "upper_ok": self.upper_ok,
        }


@dataclass(frozen=True)
class BracketReport:
    beta: float
    x1: float
    x2: float
    q_west_x1: float
    q_east_x2: float
    entries: tuple[BracketEntry, ...]

    @property
    def pass_rate(self) -> float:
        ok = sum(1 for e in self.entries if e.lower_ok and e.upper_ok)
        return ok / len(self.entries)

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "x1": self.x1,
            "x2": self.x2,
            "q_west_x1": self.q_west_x1,
            "q_east_x2": self.q_east_x2,
            "pass_rate": self.pass_rate,
            "entries": [e.to_dict() for e in self.entries],
        }


def _empirical_quantiles(emp: BivariateDist, beta: float, x: float) -> tuple[float, float]:
    """Minimal and maximal empirical conditional quantile at x (west kernel)."""
    kern = kernel_west(emp, [x])
    row = kern.rows[0]
    return row.quantile(beta), row.max_quantile(beta)


def bracket_check(r_true: BivariateDist, samples_spec: dict, beta: float,
                  x1: float, x2: float) -> BracketReport:
    """Empirical-vs-extremal quantile bracketing at two interior points.

    For each sample size, draws a seeded sample, builds its empirical
    distribution, and verifies that the empirical quantile at the higher
    point does not undercut the west quantile at the lower point, and dually
    for the east quantile.  On finite support all quantiles are atom values,
    so no slack is applied.  Stream i uses spawn key (seed, i).
    """
    beta = float(beta)
    if not 0.0 < beta < 1.0:
        raise DomainError(f"beta must lie strictly inside (0, 1), got {beta!r}")
    st = check_st_condition(r_true)
    if not st.holds:
        raise PreconditionError(
            f"source distribution violates the stochastic-order condition at {st.witness}",
            witness=st.witness,
        )
    r_true = r_true.canonical()
    atoms = r_true.x_support
    if not (atoms[0] < x1 < atoms[-1]) or not (atoms[0] < x2 < atoms[-1]):
        raise DomainError("x1 and x2 must be interior to the first-marginal range")
    if not x1 < x2:
        raise DomainError("x1 < x2 required")
    n_list = list(samples_spec["n_list"])
    seed = samples_spec["seed"]
    q_west_x1 = kernel_west(r_true, [x1]).rows[0].quantile(beta)
    q_east_x2 = kernel_east(r_true, [x2]).rows[0].max_quantile(beta)
    entries = []
    for i, n in enumerate(n_list):
        key = (int(seed), i)
        draws = sample(r_true, int(n), key)
        emp = empirical(draws)
        q1_min, q1_max = _empirical_quantiles(emp, beta, x1)
        q2_min, q2_max = _empirical_quantiles(emp, beta, x2)
        entries.append(
            BracketEntry(
                n=int(n),
                seed_key=key,
                q_emp_min_x1=q1_min,
                q_emp_max_x1=q1_max,
                q_emp_min_x2=q2_min,
                q_emp_max_x2=q2_max,
                lower_ok=bool(q2_min >= q_west_x1),
                upper_ok=bool(q1_min <= q_east_x2),
            )
        )
    return BracketReport(beta, float(x1), float(x2), q_west_x1, q_east_x2, tuple(entries))


@dataclass(frozen=True)
class UniformConvergenceEntry:
    n: int
    seed: int
    sup_distance: float

    def to_dict(self) -> dict:
        return {"n": self.n, "seed": self.seed, "sup_distance": self.sup_distance}


@dataclass(frozen=True)
class UniformConvergenceReport:
    beta: float
    interval: tuple[float, float]
    grid: tuple[float, ...]
    entries: tuple[UniformConvergenceEntry, ...]

    def sup_by_n(self) -> dict[int, float]:
        out: dict[int, float] = {}
        for e in self.entries:
            out[e.n] = max(out.get(e.n, 0.0), e.sup_distance)
        return out

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "interval": list(self.interval),
            "grid": list(self.grid),
            "sup_by_n": {str(k): v for k, v in sorted(self.sup_by_n().items())},
            "entries": [e.to_dict() for e in self.entries],
        }


def uniform_convergence_check(r_true: BivariateDist, beta: float, interval, n_list,
                              seeds) -> UniformConvergenceReport:
    """Sup-distance of empirical quantile curves to the west curve on a window.

    The evaluation grid is the set of positive-mass first-marginal atoms
    inside the closed window; between atoms the west and east curves of a
    discrete marginal bracket a whole support gap, so the equal-quantile
    precondition is validated (and convergence measured) on the atoms.
    Stream for (seed, n index i) uses spawn key (seed, i).
    """
    beta = float(beta)
    if not 0.0 < beta < 1.0:
        raise DomainError(f"beta must lie strictly inside (0, 1), got {beta!r}")
    a, b = float(interval[0]), float(interval[1])
    if not a < b:
        raise DomainError("interval must satisfy a < b")
    r_true = r_true.canonical()
    grid = [x for x in r_true.x_support.tolist() if a <= x <= b]
    if not grid:
        raise DomainError("no first-marginal atoms inside the interval")
    west = quantile_curve(r_true, beta, "west-min", grid)
    east = quantile_curve(r_true, beta, "east-max", grid)
    for (x, qw), (_, qe) in zip(west.points, east.points):
        if qw != qe:
            raise PreconditionError(
                f"west and east quantiles differ at x={x!r}: {qw!r} vs {qe!r}",
                witness=(x, qw, qe),
            )
    entries = []
    for seed in seeds:
        for i, n in enumerate(n_list):
            draws = sample(r_true, int(n), (int(seed), i))
            emp = empirical(draws)
            sup = 0.0
            for x, qw in west.points:
                q_emp, _ = _empirical_quantiles(emp, beta, x)
                sup = max(sup, abs(q_emp - qw))
            entries.append(UniformConvergenceEntry(int(n), int(seed), sup))
    return UniformConvergenceReport(beta, (a, b), tuple(grid), tuple(entries))
