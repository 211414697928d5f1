"""Bivariate TP2 checks, support boundaries, and extremal conditional kernels.

A bivariate pmf is totally positive of order two (TP2) when every 2x2 minor
taken with increasing rows and columns is nonnegative; the distributional
version replaces single cells by rectangle masses over increasing interval
pairs.  For a TP2 distribution the conditional distributions of the second
coordinate are isotonic in the first coordinate with respect to the
likelihood ratio order, and they can be pinned down constructively:

* ``kernel_west`` conditions on the nearest support atom at or below the
  evaluation point (the from-the-left extremal kernel);
* ``kernel_east`` conditions on the nearest atom at or above it;
* ``kernel_new`` truncates the west rows to the band between the southeast
  and northwest support boundaries and places point masses on the crossing
  region where the band pinches to a single value.

Outside the first-marginal range every kernel returns the second marginal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import BivariateDist, Interval, UnivariateDist
from .errors import DomainError, InvalidDistributionError, PreconditionError
from .isotonic import MODE_EXACT, MODE_FLOAT, PRODUCT_RTOL, _check_mode, products_le
from .orders import OrderVerdict, _fails, _holds

TP2_METHODS = ("pmf-allpairs", "pmf-adjacent", "intervals")

NEG_INF = float("-inf")
POS_INF = float("inf")


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Kernel:
    """Conditional distributions of the second coordinate at evaluation points."""

    eval_points: np.ndarray
    rows: tuple[UnivariateDist, ...]
    flavor: str

    def __post_init__(self):
        pts = np.asarray(self.eval_points, dtype=np.float64)
        if pts.ndim != 1 or pts.size == 0:
            raise DomainError("kernel needs at least one evaluation point")
        if pts.size > 1 and not np.all(np.diff(pts) > 0):
            raise InvalidDistributionError("evaluation points must be strictly increasing")
        if len(self.rows) != pts.size:
            raise InvalidDistributionError("one row per evaluation point required")
        pts.flags.writeable = False
        object.__setattr__(self, "eval_points", pts)
        object.__setattr__(self, "rows", tuple(self.rows))

    def row_at(self, x: float) -> UnivariateDist:
        i = int(np.searchsorted(self.eval_points, x))
        if i == self.eval_points.size or self.eval_points[i] != x:
            raise DomainError(f"{x!r} is not an evaluation point of this kernel")
        return self.rows[i]

    def cdf(self, x: float, y: float) -> float:
        return self.row_at(x).cdf(y)

    def survival(self, x: float, y: float) -> float:
        return self.row_at(x).survival(y)


@dataclass(frozen=True, eq=False)
class Boundaries:
    """Northwest/southeast support boundaries per evaluation point.

    ``in_crossing`` marks points where the northwest boundary does not exceed
    the southeast one, forcing degenerate (point mass) conditionals there;
    ``in_range`` marks membership in the first-marginal range.
    """

    xs: np.ndarray
    s_nw: np.ndarray
    s_se: np.ndarray
    in_crossing: np.ndarray
    in_range: np.ndarray

    def __post_init__(self):
        for name in ("xs", "s_nw", "s_se"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        for name in ("in_crossing", "in_range"):
            arr = np.asarray(getattr(self, name), dtype=bool)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def at(self, x: float) -> tuple[float, float, bool, bool]:
        i = int(np.searchsorted(self.xs, x))
        if i == self.xs.size or self.xs[i] != x:
            raise DomainError(f"{x!r} is not an evaluation point")
        return (
            float(self.s_nw[i]),
            float(self.s_se[i]),
            bool(self.in_crossing[i]),
            bool(self.in_range[i]),
        )


def default_grid(r: BivariateDist) -> list[float]:
    """First-marginal atoms plus the midpoints between consecutive atoms."""
    atoms = r.canonical().x_support.tolist()
    out = []
    for a, b in zip(atoms, atoms[1:]):
        out.append(a)
        out.append((a + b) / 2.0)
    out.append(atoms[-1])
    return out


def boundaries(r: BivariateDist, xs=None) -> Boundaries:
    """Monotone support boundaries evaluated on a grid of x values."""
    r = r.canonical()
    if xs is None:
        xs = default_grid(r)
    xs = np.asarray(sorted(set(float(v) for v in xs)), dtype=np.float64)
    atoms = r.x_support
    ys = r.y_support
    pmf = r.pmf
    # topmost / bottommost mass-carrying column index per row
    top = [int(np.flatnonzero(row)[-1]) for row in pmf > 0]
    bot = [int(np.flatnonzero(row)[0]) for row in pmf > 0]
    run_top = np.maximum.accumulate(top)
    run_bot = np.minimum.accumulate(bot[::-1])[::-1]
    s_nw = np.empty(xs.size)
    s_se = np.empty(xs.size)
    in_range = (xs >= atoms[0]) & (xs <= atoms[-1])
    for i, x in enumerate(xs.tolist()):
        n_le = int(np.searchsorted(atoms, x, side="right"))
        s_nw[i] = NEG_INF if n_le == 0 else float(ys[run_top[n_le - 1]])
        first_ge = int(np.searchsorted(atoms, x, side="left"))
        s_se[i] = POS_INF if first_ge == atoms.size else float(ys[run_bot[first_ge]])
    in_crossing = s_nw <= s_se
    return Boundaries(xs, s_nw, s_se, in_crossing, in_range)


# ---------------------------------------------------------------------------
# distributional order conditions
# ---------------------------------------------------------------------------


def _cut_values(vals: np.ndarray) -> list[float]:
    lst = vals.tolist()
    out = [lst[0] - 1.0]
    out += [(a + b) / 2.0 for a, b in zip(lst, lst[1:])]
    out.append(lst[-1] + 1.0)
    return out


def _prefix_float(r: BivariateDist):
    return r._prefix


def _prefix_exact(r: BivariateDist):
    if r.weights is None:
        raise DomainError("exact mode requires integer weights")
    nx, ny = r.shape
    pref = [[0] * (ny + 1) for _ in range(nx + 1)]
    for i in range(nx):
        row = r.weights[i]
        acc = 0
        for j in range(ny):
            acc += row[j]
            pref[i + 1][j + 1] = pref[i][j + 1] + acc
    return pref


def check_st_condition(r: BivariateDist, mode: str = MODE_FLOAT, tol: float = PRODUCT_RTOL,
                       form: str = "marginal") -> OrderVerdict:
    """Stochastic-order condition on adjacent x-interval pairs.

    ``form="marginal"`` checks upper mass of the left block times the right
    block total against the symmetric product; ``form="joint"`` checks the
    equivalent all-joint product form.  Boundary triples are cut between
    atoms; the y threshold runs over cuts between y-atoms.
    """
    _check_mode(mode)
    if form not in ("marginal", "joint"):
        raise DomainError(f"unknown form {form!r}")
    r = r.canonical()
    nx, ny = r.shape
    pref = _prefix_exact(r) if mode == MODE_EXACT else _prefix_float(r)
    xcuts = _cut_values(r.x_support)
    ycuts = _cut_values(r.y_support)

    def block_upper(a, b, j):
        # mass of rows [a, b) with column index >= j
        return (pref[b][ny] - pref[a][ny]) - (pref[b][j] - pref[a][j])

    def block_total(a, b):
        return pref[b][ny] - pref[a][ny]

    method = f"st-condition:{form}"
    for a in range(nx + 1):
        for b in range(a + 1, nx + 1):
            for c in range(b + 1, nx + 1):
                for j in range(1, ny):
                    up1 = block_upper(a, b, j)
                    up2 = block_upper(b, c, j)
                    if form == "marginal":
                        lhs = up1 * block_total(b, c)
                        rhs = block_total(a, b) * up2
                    else:
                        lo1 = block_total(a, b) - up1
                        lo2 = block_total(b, c) - up2
                        lhs = up1 * lo2
                        rhs = lo1 * up2
                    if not products_le(lhs, rhs, mode, tol):
                        return _fails(method, (xcuts[a], xcuts[b], xcuts[c], ycuts[j]))
    return _holds(method)


def _tp2_pmf_witness(r, pairs, mode, tol):
    """Scan 2x2 minors over the given (i1, i2) x (j1, j2) index pairs."""
    h = r.weights if mode == MODE_EXACT else r.pmf.tolist()
    if mode == MODE_EXACT and h is None:
        raise DomainError("exact mode requires integer weights")
    xs = r.x_support.tolist()
    ys = r.y_support.tolist()
    for i1, i2, j1, j2 in pairs:
        lhs = h[i2][j1] * h[i1][j2]
        rhs = h[i1][j1] * h[i2][j2]
        if not products_le(lhs, rhs, mode, tol):
            return (xs[i1], xs[i2], ys[j1], ys[j2])
    return None


def check_tp2(r: BivariateDist, method: str = "pmf-allpairs", mode: str = MODE_FLOAT,
              tol: float = PRODUCT_RTOL) -> OrderVerdict:
    """Total positivity of order two of a bivariate distribution.

    ``pmf-allpairs`` is the reference semantics: all 2x2 minors over support
    pairs.  ``pmf-adjacent`` restricts to adjacent minors, which is
    sufficient only for strictly positive pmf matrices; the guard is part of
    the contract and any zero cell falls back to the all-pairs scan.
    ``intervals`` is the rectangle-mass oracle over boundary sextuples.
    """
    _check_mode(mode)
    if method not in TP2_METHODS:
        raise DomainError(f"unknown check_tp2 method {method!r}; choose from {TP2_METHODS}")
    r = r.canonical()
    nx, ny = r.shape
    if method == "pmf-adjacent":
        strictly_positive = (
            all(w > 0 for row in r.weights for w in row)
            if mode == MODE_EXACT and r.weights is not None
            else bool(np.all(r.pmf > 0))
        )
        if strictly_positive:
            pairs = [
                (i, i + 1, j, j + 1) for i in range(nx - 1) for j in range(ny - 1)
            ]
            witness = _tp2_pmf_witness(r, pairs, mode, tol)
            tag = "tp2:pmf-adjacent"
            return _holds(tag) if witness is None else _fails(tag, witness)
        method_tag = "tp2:pmf-adjacent(fallback=pmf-allpairs)"
    else:
        method_tag = f"tp2:{method}"
    if method in ("pmf-allpairs", "pmf-adjacent"):
        pairs = (
            (i1, i2, j1, j2)
            for i1 in range(nx)
            for i2 in range(i1 + 1, nx)
            for j1 in range(ny)
            for j2 in range(j1 + 1, ny)
        )
        witness = _tp2_pmf_witness(r, pairs, mode, tol)
        return _holds(method_tag) if witness is None else _fails(method_tag, witness)
    # intervals oracle
    pref = _prefix_exact(r) if mode == MODE_EXACT else _prefix_float(r)
    xcuts = _cut_values(r.x_support)
    ycuts = _cut_values(r.y_support)

    def rect(a, b, c, d):
        return pref[b][d] - pref[a][d] - pref[b][c] + pref[a][c]

    for a in range(nx + 1):
        for b in range(a + 1, nx + 1):
            for c in range(b + 1, nx + 1):
                for p in range(ny + 1):
                    for q in range(p + 1, ny + 1):
                        for s in range(q + 1, ny + 1):
                            lhs = rect(a, b, q, s) * rect(b, c, p, q)
                            rhs = rect(a, b, p, q) * rect(b, c, q, s)
                            if not products_le(lhs, rhs, mode, tol):
                                return _fails(
                                    method_tag,
                                    (xcuts[a], xcuts[b], xcuts[c], ycuts[p], ycuts[q], ycuts[s]),
                                )
    return _holds(method_tag)


# ---------------------------------------------------------------------------
# kernel constructions
# ---------------------------------------------------------------------------


def _classify(atoms: np.ndarray, x: float):
    """Locate x relative to the atom grid: ("atom", i), ("gap", i_below) or ("outside", None)."""
    if x < atoms[0] or x > atoms[-1]:
        return ("outside", None)
    i = int(np.searchsorted(atoms, x))
    if i < atoms.size and atoms[i] == x:
        return ("atom", i)
    return ("gap", i - 1)


def _build_kernel(r: BivariateDist, xs, flavor: str) -> Kernel:
    r = r.canonical()
    if xs is None:
        xs = default_grid(r)
    xs = sorted(set(float(v) for v in xs))
    if not xs:
        raise DomainError("kernel needs at least one evaluation point")
    atoms = r.x_support
    marginal = r.marginal_y()
    row_cache: dict[int, UnivariateDist] = {}

    def row(i: int) -> UnivariateDist:
        if i not in row_cache:
            row_cache[i] = r.conditional_row(float(atoms[i]))
        return row_cache[i]

    rows = []
    for x in xs:
        kind, i = _classify(atoms, x)
        if kind == "outside":
            rows.append(marginal)
        elif kind == "atom":
            rows.append(row(i))
        else:
            rows.append(row(i) if flavor == "west" else row(i + 1))
    return Kernel(np.array(xs), tuple(rows), flavor)


def kernel_west(r: BivariateDist, xs=None) -> Kernel:
    """From-the-left extremal kernel: the nearest atom at or below each point."""
    return _build_kernel(r, xs, "west")


def kernel_east(r: BivariateDist, xs=None) -> Kernel:
    """From-the-right extremal kernel: the nearest atom at or above each point."""
    return _build_kernel(r, xs, "east")


SELECTION_RULES = ("nw", "se", "midpoint")


def kernel_new(r: BivariateDist, xs=None, rule: str = "midpoint", selection=None,
               mode: str = MODE_FLOAT, tol: float = PRODUCT_RTOL) -> Kernel:
    """Band-truncated kernel with point masses on the crossing region.

    Requires a TP2 input.  On the crossing region the row is a point mass at
    an isotonic selection between the two boundaries, given either by a rule
    ("nw", "se", "midpoint"; midpoints are repaired to isotonic with a
    running maximum) or explicitly as (x, value) pairs.  Elsewhere in range,
    the west row is conditioned on the closed boundary band.
    """
    verdict = check_tp2(r, "pmf-allpairs", mode, tol)
    if not verdict.holds:
        raise PreconditionError(
            f"input distribution is not TP2 (witness {verdict.witness})",
            witness=verdict.witness,
        )
    r = r.canonical()
    if xs is None:
        xs = default_grid(r)
    xs = sorted(set(float(v) for v in xs))
    if not xs:
        raise DomainError("kernel needs at least one evaluation point")
    bnd = boundaries(r, xs)
    west = kernel_west(r, xs)
    marginal = r.marginal_y()

    crossing_idx = [i for i in range(len(xs)) if bnd.in_range[i] and bnd.in_crossing[i]]
    if selection is not None:
        sel_map = {float(x): float(s) for x, s in selection}
        missing = [xs[i] for i in crossing_idx if xs[i] not in sel_map]
        if missing:
            raise DomainError(f"selection does not cover crossing points {missing}")
        sel = [sel_map[xs[i]] for i in crossing_idx]
    elif rule == "nw":
        sel = [float(bnd.s_nw[i]) for i in crossing_idx]
    elif rule == "se":
        sel = [float(bnd.s_se[i]) for i in crossing_idx]
    elif rule == "midpoint":
        sel = [(float(bnd.s_nw[i]) + float(bnd.s_se[i])) / 2.0 for i in crossing_idx]
        sel = np.maximum.accumulate(sel).tolist() if sel else []
    else:
        raise DomainError(f"unknown selection rule {rule!r}; choose from {SELECTION_RULES}")

    for j, i in enumerate(crossing_idx):
        lo, hi = float(bnd.s_nw[i]), float(bnd.s_se[i])
        if not (lo <= sel[j] <= hi):
            raise PreconditionError(
                f"selection {sel[j]!r} at x={xs[i]!r} leaves [{lo!r}, {hi!r}]",
                witness=(xs[i], sel[j], lo, hi),
            )
        if j > 0 and sel[j] < sel[j - 1]:
            raise PreconditionError(
                f"selection is not isotonic at x={xs[i]!r}",
                witness=(xs[crossing_idx[j - 1]], sel[j - 1], xs[i], sel[j]),
            )

    sel_at = dict(zip(crossing_idx, sel))
    rows = []
    for i, x in enumerate(xs):
        if not bnd.in_range[i]:
            rows.append(marginal)
        elif bnd.in_crossing[i]:
            rows.append(UnivariateDist.delta(sel_at[i]))
        else:
            band = Interval.closed(float(bnd.s_se[i]), float(bnd.s_nw[i]))
            base = west.rows[i]
            mass = base.interval_mass(band)
            if mass <= 0.0:
                raise InvalidDistributionError(
                    f"boundary band at x={x!r} carries no mass; input not TP2?"
                )
            lo, hi = base._interval_slice(band)
            weights = None if base.weights is None else base.weights[lo:hi]
            rows.append(
                UnivariateDist(base.support[lo:hi], base.probs[lo:hi] / mass, weights)
            )
    return Kernel(np.array(xs), tuple(rows), "new")


@dataclass(frozen=True, eq=False)
class ConditionalDensity:
    """Density of a kernel row with respect to the second marginal."""

    ys: np.ndarray
    values: np.ndarray
    bound: float

    def __post_init__(self):
        ys = np.asarray(self.ys, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        ys.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "values", values)

    def pairs(self) -> list[tuple[float, float]]:
        return list(zip(self.ys.tolist(), self.values.tolist()))


def conditional_density(knew: Kernel, x: float, r: BivariateDist) -> ConditionalDensity:
    """Row density h(x, .) of the band-truncated kernel w.r.t. the y-marginal.

    Defined off the crossing region only; there the row is a point mass and
    no bounded density exists.
    """
    r = r.canonical()
    bnd = boundaries(r, [float(x)])
    s_nw, s_se, crossing, in_range = bnd.at(float(x))
    if not in_range:
        raise DomainError(f"x={x!r} lies outside the first-marginal range")
    if crossing:
        raise DomainError(f"x={x!r} lies in the crossing region; the row is a point mass")
    row = knew.row_at(float(x))
    q = r.marginal_y()
    values = np.array([
        row.atom_prob(v) / p if p > 0 else 0.0
        for v, p in zip(q.support.tolist(), q.probs.tolist())
    ])
    return ConditionalDensity(q.support, values, float(values.max()))
