import math
from fractions import Fraction

import numpy as np
import pytest

from addcomb.bohr import dimension_estimate, dyadic_dimension_grid
from addcomb.bourgain import (BirkhoffMetric, birkhoff_metric, constant_family,
                              interval_family, sandwich_audit,
                              subgroup_generated, system_from_balls)
from addcomb.groups import FinAbGroup
from addcomb.sets import GroupSet


def bellman_ford_rho(metric: BirkhoffMetric) -> np.ndarray:
    """Oracle: plain (dense) relaxation until a fixed point, no priority queue."""
    g = metric.system.group
    steps = [i for i in range(g.order) if math.isfinite(metric.rho_star[i])]
    dist = {i: math.inf for i in range(g.order)}
    dist[0] = 0.0
    changed = True
    while changed:
        changed = False
        for u in range(g.order):
            if math.isinf(dist[u]):
                continue
            for s in steps:
                v = (g.element(u) + g.element(s)).index
                nd = dist[u] + metric.rho_star[s]
                if nd < dist[v]:
                    dist[v] = nd
                    changed = True
    return np.array([dist[i] for i in range(g.order)])


class TestSystemFromBalls:
    def test_subgroup_system_clean_at_d0(self):
        g = FinAbGroup([32])
        H = GroupSet.from_indices(g, range(0, 32, 4))
        system = system_from_balls(constant_family(H), d=0.0)
        assert system.audit.all_pass
        assert system.core == H  # constant tail attested

    def test_interval_system_clean(self):
        g = FinAbGroup([64])
        system = system_from_balls(interval_family(g, 16.0), d=1.25)
        assert system.audit.all_pass
        assert system.depth == 3  # floor(16/27) = 0 stabilizes at k = 3

    def test_growth_violation_recorded(self):
        # at d = 1 the pair (1/9, 2/9) has ratio 7/3 > 2
        g = FinAbGroup([64])
        system = system_from_balls(interval_family(g, 16.0), d=1.0)
        assert not system.audit.growth_ok
        assert any("growth" in v for v in system.audit.violations)

    def test_asymmetric_level_detected(self):
        g = FinAbGroup([16])
        bad = GroupSet.from_indices(g, [0, 1])
        system = system_from_balls(constant_family(bad), d=1.0)
        assert not system.audit.symmetric_ok

    def test_grid_contains_dyadic_audit_points(self):
        g = FinAbGroup([64])
        system = system_from_balls(interval_family(g, 16.0), d=1.25)
        radii = set(system.radii)
        assert Fraction(2) in radii and Fraction(1) in radii
        for k in range(1, system.depth + 1):
            assert Fraction(1, 3 ** k) in radii
            assert Fraction(2, 3 ** k) in radii

    def test_explicit_depth(self):
        g = FinAbGroup([64])
        system = system_from_balls(interval_family(g, 16.0), d=1.25, K=5)
        assert system.depth == 5

    def test_nesting_violation_detected(self):
        g = FinAbGroup([32])
        shrink = lambda r: GroupSet.interval(g, 1 if r > 0.5 else 3)
        system = system_from_balls(shrink, d=1.0, K=2)
        assert not system.audit.nesting_ok


class TestBirkhoffMetric:
    def test_zero_has_zero_distance(self):
        g = FinAbGroup([16])
        metric = birkhoff_metric(system_from_balls(interval_family(g, 4.0), d=2.0))
        assert metric.rho[0] == 0.0

    def test_rho_star_level_assignment(self):
        # element 1 sits in S_{1/3} but not S_{1/9} when the scale is 4
        g = FinAbGroup([16])
        metric = birkhoff_metric(system_from_balls(interval_family(g, 4.0), d=2.0))
        assert metric.rho_star[1] == pytest.approx(0.5)

    def test_chain_beats_single_step(self):
        # on Z_64 with scale 16: rho*(6) = 1 but 6 = 5 + 1 costs 1/2 + 1/4
        g = FinAbGroup([64])
        metric = birkhoff_metric(system_from_balls(interval_family(g, 16.0), d=1.25))
        assert metric.rho_star[6] == 1.0
        assert metric.rho[6] == pytest.approx(0.75)

    def test_matches_bellman_ford_oracle(self):
        g = FinAbGroup([16])
        metric = birkhoff_metric(system_from_balls(interval_family(g, 4.0), d=2.0))
        oracle = bellman_ford_rho(metric)
        assert np.array_equal(metric.rho, oracle)
        g2 = FinAbGroup([6, 4])
        H = subgroup_generated(g2, [g2.element((2, 0))])
        metric2 = birkhoff_metric(system_from_balls(constant_family(H), d=0.0))
        assert np.array_equal(metric2.rho, bellman_ford_rho(metric2))

    def test_factor_two_equivalence(self):
        for system in (
            system_from_balls(interval_family(FinAbGroup([128]), 32.0), d=2.0),
            system_from_balls(interval_family(FinAbGroup([100]), 25.0), d=2.0),
        ):
            metric = birkhoff_metric(system)
            fin = np.isfinite(metric.rho_star)
            assert np.all(metric.rho[fin] <= metric.rho_star[fin] + 1e-12)
            assert np.all(metric.rho[fin] >= metric.rho_star[fin] / 2 - 1e-12)

    def test_triangle_inequality_exhaustive(self):
        g = FinAbGroup([60])
        metric = birkhoff_metric(system_from_balls(interval_family(g, 15.0), d=2.0))
        rho = metric.rho
        for x in range(60):
            shifted = np.roll(rho, -x)  # rho[(x + y) mod 60] as y runs
            bound = rho[x] + rho
            ok = np.isinf(bound) | (shifted <= bound + 1e-12)
            assert bool(np.all(ok))

    def test_rho_symmetric_under_negation(self):
        g = FinAbGroup([100])
        metric = birkhoff_metric(system_from_balls(interval_family(g, 25.0), d=2.0))
        perm = g.negation_permutation()
        assert np.array_equal(metric.rho, metric.rho[perm])
        assert np.array_equal(metric.rho_star, metric.rho_star[perm])

    def test_unreachable_outside_subgroup(self):
        g = FinAbGroup([32])
        H = GroupSet.from_indices(g, range(0, 32, 8))
        metric = birkhoff_metric(system_from_balls(constant_family(H), d=0.0))
        assert metric.rho[1] == math.inf
        assert all(metric.rho[i] == 0.0 for i in range(0, 32, 8))

    def test_requires_clean_audit(self):
        g = FinAbGroup([16])
        bad = system_from_balls(constant_family(GroupSet.from_indices(g, [0, 1])), d=1.0)
        with pytest.raises(ValueError):
            birkhoff_metric(bad)

    def test_dump_format(self):
        g = FinAbGroup([32])
        H = GroupSet.from_indices(g, range(0, 32, 8))
        metric = birkhoff_metric(system_from_balls(constant_family(H), d=0.0))
        dump = metric.dump_jsonable()
        assert len(dump) == 32
        coords, rho_star, rho = dump[1]
        assert coords == [1] and rho_star is None and rho is None
        assert dump[0] == [[0], 0.0, 0.0]


class TestSandwichAudit:
    def test_subgroup_system(self):
        g = FinAbGroup([32])
        H = GroupSet.from_indices(g, range(0, 32, 4))
        metric = birkhoff_metric(system_from_balls(constant_family(H), d=0.0))
        verdicts = sandwich_audit(metric)
        assert all(v.passed for v in verdicts)

    def test_interval_systems(self):
        for n, scale in ((64, 16.0), (128, 32.0), (256, 64.0), (200, 50.0)):
            g = FinAbGroup([n])
            metric = birkhoff_metric(system_from_balls(interval_family(g, scale), d=2.0))
            verdicts = sandwich_audit(metric)
            assert all(v.passed for v in verdicts), (n, [
                (v.delta, v.left_ok, v.right_ok) for v in verdicts if not v.passed])

    def test_top_level(self):
        g = FinAbGroup([64])
        metric = birkhoff_metric(system_from_balls(interval_family(g, 16.0), d=1.25))
        top = [v for v in verdicts_by_delta(metric) if v.delta == 2.0]
        assert top and top[0].right_ok

    def test_every_grid_radius_reported(self):
        g = FinAbGroup([64])
        system = system_from_balls(interval_family(g, 16.0), d=1.25)
        metric = birkhoff_metric(system)
        verdicts = sandwich_audit(metric)
        assert len(verdicts) == len(system.radii)


def verdicts_by_delta(metric):
    return sandwich_audit(metric)


class TestMetricBallDimension:
    def test_interval_ball_family_bounded_dimension(self):
        # the rho-ball family of an interval system stays within 2d + 2
        g = FinAbGroup([128])
        d = 2.0
        metric = birkhoff_metric(system_from_balls(interval_family(g, 32.0), d=d))
        fam = metric.ball_family()
        grid = dyadic_dimension_grid(fam, 1.0)
        est = dimension_estimate(fam, grid)
        assert est.empirical_dim <= 2 * d + 2


class TestSubgroupGenerated:
    def test_cyclic_generator(self):
        g = FinAbGroup([32])
        H = subgroup_generated(g, [g.element(8)])
        assert sorted(H.indices()) == [0, 8, 16, 24]

    def test_two_generators(self):
        g = FinAbGroup([6, 4])
        H = subgroup_generated(g, [g.element((3, 0)), g.element((0, 2))])
        assert H.measure == 4
        assert H.contains(g.element((3, 2)))
