import itertools

import numpy as np
import pytest

from stochorder import (
    DomainError,
    UnivariateDist,
    check_lr,
    odc_curve,
    odc_is_convex,
    roc_curve,
    roc_is_concave,
)
from stochorder.fixtures import gamma_pair, gaussian_pair, odc_counterexample
from stochorder.roc import RocCurve
from helpers import all_triples_concave, enumerate_weight_dists, random_univariate


class TestRocCurve:
    def test_equal_point_masses_give_two_corners(self):
        d = UnivariateDist.delta(0.0)
        curve = roc_curve(d, d)
        assert curve.points == ((0.0, 0.0), (1.0, 1.0))

    def test_interleaved_staircase(self):
        q1 = UnivariateDist.from_pairs([0.0, 1.0], [0.5, 0.5])
        q2 = UnivariateDist.delta(0.5)
        curve = roc_curve(q1, q2)
        assert curve.points == ((0.0, 0.0), (0.5, 0.0), (0.5, 1.0), (1.0, 1.0))

    def test_lr_pair_yields_concave_curve(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            q1 = random_univariate(rng)
            factor = np.sort(rng.random(len(q1)) + 0.05)
            boosted = q1.probs * factor
            q2 = UnivariateDist(q1.support, boosted / boosted.sum())
            assert roc_is_concave(roc_curve(q1, q2)).holds

    def test_monotonicity_enforced(self):
        with pytest.raises(Exception):
            RocCurve(((0.0, 0.0), (0.5, 0.8), (0.6, 0.2), (1.0, 1.0)))

    def test_exact_points_present_for_weighted_inputs(self):
        q1 = UnivariateDist.from_weights([0, 1], [1, 1])
        q2 = UnivariateDist.from_weights([0, 1], [1, 2])
        curve = roc_curve(q1, q2)
        assert curve.exact_points is not None
        assert roc_is_concave(curve, mode="exact").holds


class TestRocConcavity:
    def test_two_points_hold(self):
        assert roc_is_concave(RocCurve(((0.0, 0.0), (1.0, 1.0)))).holds

    def test_staircase_fails_on_vertical_after_flat(self):
        curve = RocCurve(((0.0, 0.0), (0.5, 0.0), (0.5, 1.0), (1.0, 1.0)))
        v = roc_is_concave(curve)
        assert not v.holds
        assert v.witness == ((0.0, 0.0), (0.5, 0.0), (0.5, 1.0))

    def test_gamma_fixture_concave(self):
        assert roc_is_concave(roc_curve(*gamma_pair())).holds

    def test_gaussian_fixture_not_concave(self):
        assert not roc_is_concave(roc_curve(*gaussian_pair())).holds

    def test_consecutive_triples_match_all_triples_oracle(self):
        rng = np.random.default_rng(12)
        for _ in range(300):
            q1 = random_univariate(rng)
            q2 = random_univariate(rng)
            curve = roc_curve(q1, q2)
            assert roc_is_concave(curve).holds == all_triples_concave(curve.points)

    def test_exact_mode_requires_exact_curve(self):
        q1 = UnivariateDist.from_pairs([0.0], [1.0])
        curve = roc_curve(q1, q1)
        with pytest.raises(DomainError):
            roc_is_concave(curve, mode="exact")


class TestOdc:
    def test_identity_curve(self):
        q = UnivariateDist.from_weights([1, 2, 3], [1, 1, 2])
        curve = odc_curve(q, q)
        assert curve.alphas == (0.0, 0.25, 0.5, 1.0)
        assert curve.values == (0.0, 0.25, 0.5, 1.0)
        assert curve.dominated
        assert odc_is_convex(curve).holds

    def test_counterexample_exact_values(self):
        q1, q2 = odc_counterexample()
        curve = odc_curve(q1, q2)
        assert curve.alphas == (0.0, 0.5, 1.0)
        assert curve.values == (0.0, 0.0, 1.0)
        assert not curve.dominated
        assert odc_is_convex(curve, mode="exact").holds
        assert not check_lr(q1, q2).holds
        assert not roc_is_concave(roc_curve(q1, q2)).holds

    def test_dominated_lr_pairs_give_convex_curves(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            q1 = random_univariate(rng)
            factor = np.sort(rng.random(len(q1)) + 0.05)
            boosted = q1.probs * factor
            q2 = UnivariateDist(q1.support, boosted / boosted.sum())
            curve = odc_curve(q1, q2)
            assert curve.dominated
            assert odc_is_convex(curve).holds


class TestEquivalences:
    def test_roc_concavity_iff_lr_small_exhaustive(self):
        family = enumerate_weight_dists([1.0, 2.0, 3.0], 2)
        for q1, q2 in itertools.product(family, repeat=2):
            lr = check_lr(q1, q2, mode="exact").holds
            concave = roc_is_concave(roc_curve(q1, q2), mode="exact").holds
            assert lr == concave

    def test_odc_convexity_iff_lr_under_domination(self):
        family = enumerate_weight_dists([1.0, 2.0, 3.0], 2)
        for q1, q2 in itertools.product(family, repeat=2):
            if not set(q2.canonical().support.tolist()) <= set(q1.canonical().support.tolist()):
                continue
            lr = check_lr(q1, q2, mode="exact").holds
            convex = odc_is_convex(odc_curve(q1, q2), mode="exact").holds
            assert lr == convex

    def test_roc_concavity_iff_lr_random(self):
        rng = np.random.default_rng(30)
        for _ in range(500):
            q1 = random_univariate(rng)
            q2 = random_univariate(rng)
            assert check_lr(q1, q2).holds == roc_is_concave(roc_curve(q1, q2)).holds
