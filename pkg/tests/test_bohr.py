import math

import numpy as np
import pytest

from addcomb.bohr import (bohr_distance, bohr_family, bohr_set,
                          dimension_estimate, dyadic_dimension_grid,
                          nearest_int_dist, nested_bohr_audit, rounding_check,
                          structured_growth_audit)
from addcomb.groups import FinAbGroup
from addcomb.sets import GroupSet, sumset


def freq_set(g, *indices):
    return GroupSet.from_indices(g, indices)


class TestBohrSet:
    def test_trivial_character_constrains_nothing(self):
        g = FinAbGroup([16])
        assert bohr_set(freq_set(g, 0), 0.01).members == GroupSet.full(g)

    def test_single_frequency_interval(self):
        # oracle: min(x, 16-x)/16 <= 1/8 picks {0, 1, 2, 14, 15}
        g = FinAbGroup([16])
        B = bohr_set(freq_set(g, 1), 1 / 8)
        assert sorted(B.members.indices()) == [0, 1, 2, 14, 15]

    def test_radius_half_gives_everything(self):
        g = FinAbGroup([12])
        assert bohr_set(freq_set(g, 1, 5), 0.5).members == GroupSet.full(g)

    def test_empty_frequency_set(self):
        g = FinAbGroup([9])
        assert bohr_set(GroupSet.empty(g), 0.0).members == GroupSet.full(g)

    def test_contains_zero_and_symmetric(self):
        g = FinAbGroup([15, 4])
        B = bohr_set(freq_set(g, 7, 33), 0.13)
        assert B.members.contains_zero()
        assert B.members.is_symmetric()

    def test_ball_metric_consistency(self):
        rng = np.random.default_rng(3)
        g = FinAbGroup([36])
        freqs = freq_set(g, 1, 7, 10)
        delta = 0.22
        B = bohr_set(freqs, delta)
        by_metric = {
            x for x in range(36)
            if bohr_distance(g.element(x), g.zero, freqs) <= delta + 1e-9
        }
        assert set(B.members.indices()) == by_metric

    def test_subadditivity(self):
        g = FinAbGroup([64])
        freqs = freq_set(g, 1, 9)
        lhs = sumset(bohr_set(freqs, 0.05).members, bohr_set(freqs, 0.08).members)
        assert lhs.is_subset_of(bohr_set(freqs, 0.13).members)

    def test_monotone_in_frequencies(self):
        g = FinAbGroup([50])
        small = freq_set(g, 1)
        big = freq_set(g, 1, 3)
        assert bohr_set(big, 0.1).members.is_subset_of(bohr_set(small, 0.1).members)

    def test_rejects_negative_radius(self):
        g = FinAbGroup([8])
        with pytest.raises(ValueError):
            bohr_set(freq_set(g, 1), -0.5)


class TestBohrDistance:
    def test_reflexive(self):
        g = FinAbGroup([16])
        assert bohr_distance(g.element(5), g.element(5), freq_set(g, 1, 3)) == 0

    def test_single_frequency(self):
        g = FinAbGroup([16])
        assert bohr_distance(g.element(4), g.zero, freq_set(g, 1)) == pytest.approx(0.25)

    def test_sup_over_two_frequencies(self):
        g = FinAbGroup([16])
        d = bohr_distance(g.element(1), g.zero, freq_set(g, 1, 4))
        assert d == pytest.approx(max(1 / 16, 1 / 4))

    def test_translation_invariance(self):
        rng = np.random.default_rng(9)
        g = FinAbGroup([12, 5])
        freqs = freq_set(g, 3, 17)
        for _ in range(10):
            x, y, t = (g.element(int(i)) for i in rng.integers(0, g.order, size=3))
            assert bohr_distance(x + t, y + t, freqs) == pytest.approx(
                bohr_distance(x, y, freqs), abs=1e-12)

    def test_empty_frequencies_raise(self):
        g = FinAbGroup([8])
        with pytest.raises(ValueError):
            bohr_distance(g.zero, g.zero, GroupSet.empty(g))


class TestDimensionEstimate:
    def test_constant_family_is_zero_dimensional(self):
        g = FinAbGroup([32])
        H = GroupSet.from_indices(g, range(0, 32, 4))
        est = dimension_estimate(lambda r: H, [0.1, 0.2, 0.4])
        assert est.empirical_dim == 0.0

    def test_word_balls_in_z17_squared(self):
        # closed-form counts (2r+1)^2: ratios below 4, above 2.46
        g = FinAbGroup([17, 17])
        family = lambda r: GroupSet.linf_ball(g, int(round(r)))
        est = dimension_estimate(family, [1, 2, 3])
        assert [m for _, m, _ in est.measures] == [9, 25, 49]
        assert [m2 for _, _, m2 in est.measures] == [25, 81, 169]
        assert est.empirical_dim == pytest.approx(math.log2(169 / 49))
        assert 1.3 <= est.empirical_dim <= 2.0

    def test_bohr_interval_family_near_one_dimensional(self):
        # oracle: mu(Bohr({1}, d)) = 2*floor(64 d) + 1 on Z_64
        g = FinAbGroup([64])
        fam = bohr_family(freq_set(g, 1))
        grid = dyadic_dimension_grid(fam, 0.25)
        est = dimension_estimate(fam, grid)
        for delta, m1, _ in est.measures:
            assert m1 == min(64, 2 * math.floor(64 * delta) + 1)
        assert abs(est.empirical_dim - 1.0) <= 0.3

    def test_grid_excludes_single_element_floor(self):
        g = FinAbGroup([64])
        fam = bohr_family(freq_set(g, 1))
        grid = dyadic_dimension_grid(fam, 0.25)
        assert all(fam(d).measure > 1 for d in grid)

    def test_zero_measure_points_flagged(self):
        g = FinAbGroup([32])
        base = GroupSet.interval(g, 3)

        def family(r):
            if r < 0.1:
                return GroupSet.empty(g)
            return base

        est = dimension_estimate(family, [0.05, 0.2, 0.3])
        assert est.excluded == (0.05,)
        assert est.empirical_dim == 0.0

    def test_non_monotone_family_raises(self):
        g = FinAbGroup([16])

        def family(r):
            return GroupSet.interval(g, 3 if r < 0.3 else 1)

        with pytest.raises(ValueError):
            dimension_estimate(family, [0.2])

    def test_certified(self):
        g = FinAbGroup([17, 17])
        family = lambda r: GroupSet.linf_ball(g, int(round(r)))
        est = dimension_estimate(family, [1, 2, 3])
        assert est.certified(2.0, 3.0)
        assert not est.certified(1.5, 3.0)


class TestRoundingCheck:
    def test_example_premise_and_conclusion(self):
        chk = rounding_check(0.05, 3, 0.06)
        assert chk.premise and chk.conclusion and chk.applicable

    def test_zero(self):
        chk = rounding_check(0.0, 4, 0.05)
        assert chk.premise and chk.conclusion

    def test_k1_tautology(self):
        rng = np.random.default_rng(12)
        for t in rng.uniform(-1, 1, size=20):
            chk = rounding_check(float(t), 1, 0.3)
            assert chk.premise == chk.conclusion

    def test_implication_on_dense_sample(self):
        rng = np.random.default_rng(100)
        for _ in range(2000):
            k = int(rng.integers(1, 7))
            delta = float(rng.uniform(1e-4, (1 / 3) / k * 0.999))
            t = float(rng.uniform(-2, 2))
            chk = rounding_check(t, k, delta)
            if chk.applicable and chk.premise:
                assert chk.conclusion

    def test_nearest_int_dist_boundary(self):
        assert nearest_int_dist(0.5) == 0.5  # round-half-even keeps the gap
        assert nearest_int_dist(2.0) == 0.0
        assert nearest_int_dist(-1.25) == 0.25

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            rounding_check(0.1, 0, 0.1)
        with pytest.raises(ValueError):
            rounding_check(0.1, 2, 1.5)


class TestNestedBohrAudit:
    def test_k1_trivially_equal(self):
        g = FinAbGroup([32])
        audit = nested_bohr_audit(freq_set(g, 0, 1), 1, 0.05)
        assert audit.equal is True

    def test_z64_example(self):
        g = FinAbGroup([64])
        audit = nested_bohr_audit(freq_set(g, 0, 1), 3, 0.1)
        assert audit.equal is True
        assert audit.left.members == audit.right.members

    def test_guard_skips(self):
        g = FinAbGroup([16])
        audit = nested_bohr_audit(freq_set(g, 0, 1), 4, 0.1)
        assert audit.equal is None
        assert "1/3" in audit.skipped_reason

    def test_missing_trivial_character_skips(self):
        g = FinAbGroup([16])
        audit = nested_bohr_audit(freq_set(g, 1), 2, 0.05)
        assert audit.equal is None
        assert "trivial" in audit.skipped_reason

    def test_random_instances_equal(self):
        rng = np.random.default_rng(55)
        for _ in range(15):
            n = int(rng.integers(8, 256))
            g = FinAbGroup([n])
            idx = set(rng.integers(0, n, size=int(rng.integers(1, 4)))) | {0}
            Lam = GroupSet.from_indices(g, idx)
            k = int(rng.integers(2, 5))
            delta = float(rng.uniform(0.01, (1 / 3) / k * 0.99))
            assert nested_bohr_audit(Lam, k, delta).equal is True


class TestStructuredGrowthAudit:
    def test_full_dual_ratio_one(self):
        g = FinAbGroup([16])
        audit = structured_growth_audit(GroupSet.full(g), freq_set(g, 0), 1 / 16)
        assert audit.ratio == 1.0

    def test_z16_example(self):
        # Gamma = {0, +-1, +-2}, X = {3}: {-4..4} inside {-3,0,3} + {-2..2}
        g = FinAbGroup([16])
        Gamma = GroupSet.from_indices(g, [0, 1, 2, 14, 15])
        X = freq_set(g, 3)
        audit = structured_growth_audit(Gamma, X, 1 / 16)
        assert audit.hypothesis
        # frozen from the exhaustive Bohr enumeration oracle
        assert audit.mu_small == 1 and audit.mu_big == 1
        assert audit.ratio == 1.0

    def test_trivial_x_closure_criterion(self):
        g = FinAbGroup([16])
        H = GroupSet.from_indices(g, [0, 4, 8, 12])  # closed under addition
        assert structured_growth_audit(H, freq_set(g, 0), 1 / 16).hypothesis
        open_set = GroupSet.from_indices(g, [0, 1, 15])  # 1+1=2 escapes
        assert not structured_growth_audit(open_set, freq_set(g, 0), 1 / 16).hypothesis

    def test_empirical_constant_reported(self):
        g = FinAbGroup([64])
        Gamma = GroupSet.from_indices(g, [0, 1, 63])
        X = freq_set(g, 2, 5)
        audit = structured_growth_audit(Gamma, X, 1 / 32)
        if audit.ratio > 1:
            assert audit.empirical_constant == pytest.approx(
                math.log(audit.ratio) / (2 * math.log(2)))

    def test_preconditions(self):
        g = FinAbGroup([16])
        sym = GroupSet.from_indices(g, [0, 1, 15])
        with pytest.raises(ValueError):
            structured_growth_audit(sym, freq_set(g, 0), 0.2)  # delta too big
        with pytest.raises(ValueError):
            structured_growth_audit(freq_set(g, 1, 15), freq_set(g, 0), 1 / 16)  # no 0
        with pytest.raises(ValueError):
            structured_growth_audit(freq_set(g, 0, 1), freq_set(g, 0), 1 / 16)  # asym
