"""Division-free ratio comparison and extremal isotonic densities.

``cross_compare`` decides r2/r1 <= s2/s1 on the extended half-line [0, inf]
through the cross products r2*s1 <= r1*s2, so no division (and no 0/0 or
inf) ever occurs.  The same product comparison backs every order verdict in
the package, either with a relative float slack or exactly on integers.

``minimal_isotonic_density`` / ``maximal_isotonic_density`` construct the
smallest and largest isotonic density of a finite measure nu with respect to
a dominating finite measure mu, specialized to finite support: at an atom
both equal the atom mass ratio; between atoms the minimal version continues
the value of the nearest atom below, the maximal version the value of the
nearest atom above (with off-support defaults 0 and 1 respectively).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import UnivariateDist
from .errors import DomainError, InvalidDistributionError, PreconditionError

#: Relative slack for float product comparisons.
PRODUCT_RTOL = 1e-12

MODE_FLOAT = "float"
MODE_EXACT = "exact"


def _check_mode(mode: str) -> str:
    if mode not in (MODE_FLOAT, MODE_EXACT):
        raise DomainError(f"unknown comparison mode {mode!r}")
    return mode


def products_le(lhs, rhs, mode: str = MODE_FLOAT, tol: float = PRODUCT_RTOL) -> bool:
    """lhs <= rhs for nonnegative products, with slack scaled to the products."""
    if mode == MODE_EXACT:
        return lhs <= rhs
    return lhs <= rhs + tol * max(abs(lhs), abs(rhs))


@dataclass(frozen=True)
class CrossCompareResult:
    """Outcome of a cross-multiplied ratio comparison.

    ``le`` reports r2/r1 <= s2/s1; ``degenerate`` flags inputs where one of
    the pairs is (0, 0), for which the ratio reading is vacuous although the
    product inequality is still evaluated.
    """

    le: bool
    degenerate: bool


def cross_compare(r1, r2, s1, s2, mode: str = MODE_FLOAT, tol: float = PRODUCT_RTOL) -> CrossCompareResult:
    """Decide r2/r1 <= s2/s1 in [0, inf] via r2*s1 <= r1*s2."""
    _check_mode(mode)
    if min(r1, r2, s1, s2) < 0:
        raise DomainError("cross_compare expects nonnegative inputs")
    degenerate = (r1 == 0 and r2 == 0) or (s1 == 0 and s2 == 0)
    le = products_le(r2 * s1, r1 * s2, mode, tol)
    return CrossCompareResult(le=le, degenerate=degenerate)


# ---------------------------------------------------------------------------
# Isotonic densities
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class IsotonicDensity:
    """Isotonic density values on the atoms of the dominating measure.

    ``kind`` selects the off-atom continuation: "minimal" steps from the
    left (0 below all atoms), "maximal" from the right (1 above all atoms).
    """

    points: np.ndarray
    values: np.ndarray
    kind: str

    def __post_init__(self):
        points = np.asarray(self.points, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        if points.shape != values.shape or points.ndim != 1:
            raise InvalidDistributionError("points and values must be equal-length 1-D arrays")
        if self.kind not in ("minimal", "maximal"):
            raise DomainError(f"unknown density kind {self.kind!r}")
        if np.any(values < 0) or np.any(values > 1):
            raise InvalidDistributionError("density values must lie in [0, 1]")
        if np.any(np.diff(values) < 0):
            raise InvalidDistributionError("density values must be nondecreasing")
        points.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "values", values)

    def evaluate(self, x: float) -> float:
        if self.kind == "minimal":
            i = int(np.searchsorted(self.points, x, side="right"))
            return 0.0 if i == 0 else float(self.values[i - 1])
        i = int(np.searchsorted(self.points, x, side="left"))
        return 1.0 if i == self.points.size else float(self.values[i])

    __call__ = evaluate


def _interval_ratio_condition(mu: UnivariateDist, nu: UnivariateDist, mode: str, tol: float):
    """Find a triple x < y < z violating the interval ratio monotonicity, if any.

    The condition checked is mu((y,z]) * nu((x,y]) <= mu((x,y]) * nu((y,z])
    over all boundary triples; for finite support it suffices to cut between
    atoms, so boundaries run over a sentinel below the support plus the atoms.
    """
    atoms = mu.support.tolist()
    if mode == MODE_EXACT:
        if mu.weights is None or nu.weights is None:
            raise DomainError("exact mode requires integer-weight measures")
        mu_m = [0]
        for w in mu.weights:
            mu_m.append(mu_m[-1] + w)
        nu_m = [0]
        for a in atoms:
            nu_m.append(nu_m[-1] + nu.atom_weight(a))
    else:
        mu_m = [0.0] + np.cumsum(mu.probs).tolist()
        nu_m = [0.0] + np.cumsum([nu.atom_prob(a) for a in atoms]).tolist()
    k = len(atoms)
    bounds = [atoms[0] - 1.0] + atoms
    for a in range(k + 1):
        for b in range(a + 1, k + 1):
            mu_ab = mu_m[b] - mu_m[a]
            nu_ab = nu_m[b] - nu_m[a]
            for c in range(b + 1, k + 1):
                mu_bc = mu_m[c] - mu_m[b]
                nu_bc = nu_m[c] - nu_m[b]
                if not products_le(mu_bc * nu_ab, mu_ab * nu_bc, mode, tol):
                    return (bounds[a], bounds[b], bounds[c])
    return None


def _atom_ratios(mu: UnivariateDist, nu: UnivariateDist, tol: float):
    """Per-atom mass ratios nu({x}) / mu({x}); requires nu <= mu atomwise."""
    mu = mu.canonical()
    if float(nu.probs.sum()) == 0.0:
        return mu, nu, np.zeros(len(mu))
    nu = nu.canonical()
    for v, p in zip(nu.support.tolist(), nu.probs.tolist()):
        mp = mu.atom_prob(v)
        if p > mp + tol * max(1.0, mp):
            raise PreconditionError(
                f"nu exceeds mu at atom {v!r} ({p!r} > {mp!r})", witness=(v, p, mp)
            )
    ratios = [
        min(1.0, nu.atom_prob(v) / p) for v, p in zip(mu.support.tolist(), mu.probs.tolist())
    ]
    # Float division can wobble exact ties by an ulp; absorb sub-slack dips so
    # the exact nondecreasing invariant of IsotonicDensity is not tripped by
    # representation noise.  Genuine violations stay visible.
    for i in range(1, len(ratios)):
        if ratios[i] < ratios[i - 1] and ratios[i - 1] - ratios[i] <= tol * max(1.0, ratios[i - 1]):
            ratios[i] = ratios[i - 1]
    return mu, nu, np.array(ratios)


def minimal_isotonic_density(
    mu: UnivariateDist,
    nu: UnivariateDist,
    *,
    verify: bool = False,
    mode: str = MODE_FLOAT,
    tol: float = PRODUCT_RTOL,
) -> IsotonicDensity:
    """Smallest isotonic density of nu with respect to mu (finite support).

    Requires nu <= mu atomwise.  With ``verify=True`` the interval ratio
    monotonicity precondition is checked over all atom-boundary triples and a
    violating triple is raised as a :class:`PreconditionError` witness.
    """
    _check_mode(mode)
    mu, nu, ratios = _atom_ratios(mu, nu, tol)
    if verify:
        witness = _interval_ratio_condition(mu, nu, mode, tol)
        if witness is not None:
            raise PreconditionError(
                f"interval ratio monotonicity fails at boundaries {witness}", witness=witness
            )
    return IsotonicDensity(mu.support, ratios, "minimal")


def maximal_isotonic_density(
    mu: UnivariateDist,
    nu: UnivariateDist,
    *,
    verify: bool = False,
    mode: str = MODE_FLOAT,
    tol: float = PRODUCT_RTOL,
) -> IsotonicDensity:
    """Largest isotonic density of nu with respect to mu.

    Atom values agree with the minimal density; the two differ only in how
    they continue between and beyond atoms (0/0 resolves to 1 here).
    """
    _check_mode(mode)
    mu, nu, ratios = _atom_ratios(mu, nu, tol)
    if verify:
        witness = _interval_ratio_condition(mu, nu, mode, tol)
        if witness is not None:
            raise PreconditionError(
                f"interval ratio monotonicity fails at boundaries {witness}", witness=witness
            )
    return IsotonicDensity(mu.support, ratios, "maximal")
