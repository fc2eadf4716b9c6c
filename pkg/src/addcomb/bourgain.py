"""Bourgain systems and the Birkhoff pseudo-metric built from them.

A system samples a monotone radius family on the ternary grid
{2} u {3^-k} u {2*3^-k} (the dyadic points exist so the growth axiom has
on-grid pairs) and audits the four axioms: symmetric neighborhood, nesting,
subadditivity, dyadic growth. Grid radii are kept as exact Fractions; the
family itself is called with floats.

The metric: rho*(x) = inf{2^-k : x in S_{3^-k}, k >= 0}, and rho is the
chain infimum, computed exactly as a single-source shortest path from 0 over
edges x -> x+y of weight rho*(y). Weights are dyadic rationals, so float
arithmetic is exact. A family that is still constant twelve ternary levels
below the grid is treated as eventually constant, and its bottom level gets
rho* = 0 (the true infimum for e.g. subgroup systems).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .groups import FinAbGroup, GroupElement
from .sets import GroupSet, sumset

#: default cap on the ternary grid depth.
GRID_DEPTH_CAP = 20

#: extra ternary levels probed below the grid to attest a constant tail.
TAIL_PROBE_LEVELS = 12

#: slack for comparing exact dyadic rho values against float radii.
RHO_SLACK = 2.0 ** -45


@dataclass(frozen=True)
class SystemAudit:
    symmetric_ok: bool
    nesting_ok: bool
    subadditive_ok: bool
    growth_ok: bool
    violations: tuple[str, ...]

    @property
    def all_pass(self) -> bool:
        return (self.symmetric_ok and self.nesting_ok
                and self.subadditive_ok and self.growth_ok)


@dataclass(frozen=True)
class BourgainSystem:
    """A radius-indexed family sampled on the ternary grid, with axiom audits."""

    group: FinAbGroup
    d: float
    levels: dict[Fraction, GroupSet]
    audit: SystemAudit
    depth: int                 # K: deepest ternary level 3^-K
    core: GroupSet | None      # attested constant tail, None when not attested

    @property
    def radii(self) -> list[Fraction]:
        return sorted(self.levels)

    def level(self, radius: Fraction) -> GroupSet:
        return self.levels[radius]

    def ternary_radii(self) -> list[Fraction]:
        """The rho* levels 3^-k, k = 0..depth, shallow to deep."""
        return [Fraction(1, 3 ** k) for k in range(self.depth + 1)]

    def to_jsonable(self) -> dict:
        return {
            "group": {"cycles": list(self.group.invariants)},
            "d": self.d,
            "depth": self.depth,
            "core_attested": self.core is not None,
            "audit": {
                "symmetric_ok": self.audit.symmetric_ok,
                "nesting_ok": self.audit.nesting_ok,
                "subadditive_ok": self.audit.subadditive_ok,
                "growth_ok": self.audit.growth_ok,
                "violations": list(self.audit.violations),
            },
            "levels": [
                {"radius": float(r), "measure": self.levels[r].measure}
                for r in self.radii
            ],
        }


def _grid_radii(depth: int) -> list[Fraction]:
    radii = {Fraction(2), Fraction(1)}
    for k in range(1, depth + 1):
        radii.add(Fraction(1, 3 ** k))
        radii.add(Fraction(2, 3 ** k))
    return sorted(radii)


def system_from_balls(family: Callable[[float], GroupSet], d: float,
                      K: int | None = None, cap: int = GRID_DEPTH_CAP) -> BourgainSystem:
    """Sample a monotone ball family into a Bourgain system and audit the axioms.

    K defaults to the first ternary level whose set is {0} (stabilization),
    capped. Audit failures do not raise; they are recorded on the system,
    which is then only usable for diagnostics.
    """
    probe = family(float(Fraction(1, 3 ** 0)))
    group = probe.group
    if K is not None:
        if K < 1:
            raise ValueError(f"system_from_balls needs K >= 1, got {K}")
        depth = K
    else:
        zero_only = GroupSet.singleton(group, 0)
        depth = cap
        for k in range(cap + 1):
            if family(float(Fraction(1, 3 ** k))) == zero_only:
                depth = k
                break
    levels = {r: family(float(r)) for r in _grid_radii(depth)}

    violations: list[str] = []
    radii = sorted(levels)

    symmetric_ok = True
    for r in radii:
        S = levels[r]
        if not S.contains_zero():
            symmetric_ok = False
            violations.append(f"level {float(r):g} misses 0")
        if not S.is_symmetric():
            symmetric_ok = False
            violations.append(f"level {float(r):g} is not symmetric")

    nesting_ok = True
    for lo, hi in zip(radii, radii[1:]):
        if not levels[lo].is_subset_of(levels[hi]):
            nesting_ok = False
            violations.append(f"nesting fails at {float(lo):g} vs {float(hi):g}")

    subadditive_ok = True
    two = Fraction(2)
    for i, r1 in enumerate(radii):
        for r2 in radii[i:]:
            s = r1 + r2
            if s > two:
                continue
            target = min(r for r in radii if r >= s)  # round up to the grid
            if not sumset(levels[r1], levels[r2]).is_subset_of(levels[target]):
                subadditive_ok = False
                violations.append(
                    f"subadditivity fails: S_{float(r1):g} + S_{float(r2):g} "
                    f"not in S_{float(target):g}")

    growth_ok = True
    bound = 2.0 ** d
    for r in radii:
        if 2 * r not in levels:
            continue
        small, big = levels[r].measure, levels[2 * r].measure
        if small <= 1:
            continue  # single-element floors only measure discreteness
        if big > bound * small * (1 + 1e-12):
            growth_ok = False
            violations.append(
                f"growth fails at {float(r):g}: {big} > 2^{d:g} * {small}")

    # constant-tail attestation: probe well below the grid
    deep = family(float(Fraction(1, 3 ** (depth + TAIL_PROBE_LEVELS))))
    bottom = levels[Fraction(1, 3 ** depth)]
    core = bottom if deep == bottom else None

    audit = SystemAudit(symmetric_ok, nesting_ok, subadditive_ok, growth_ok,
                        tuple(violations))
    return BourgainSystem(group, float(d), levels, audit, depth, core)


# -- convenience families -------------------------------------------------------------


def interval_family(group: FinAbGroup, scale: float) -> Callable[[float], GroupSet]:
    """delta -> {x : |x|_circ <= floor(scale * delta)} on a cyclic group."""
    if group.rank != 1:
        raise ValueError("interval_family needs a cyclic group")

    def family(delta: float) -> GroupSet:
        return GroupSet.linf_ball(group, int(math.floor(scale * delta + 1e-12)))

    return family


def constant_family(S: GroupSet) -> Callable[[float], GroupSet]:
    """The family that is S at every radius (subgroups give clean systems)."""
    return lambda _delta: S


def subgroup_generated(group: FinAbGroup, generators: list[GroupElement]) -> GroupSet:
    """The subgroup generated by the given elements (closure under addition)."""
    H = GroupSet.singleton(group, 0)
    gens = GroupSet.from_elements(group, generators)
    step = gens | GroupSet.from_elements(group, [-t for t in generators])
    while True:
        nxt = sumset(H, H | step)
        if nxt == H:
            return H
        H = nxt


# -- the Birkhoff metric ---------------------------------------------------------------


@dataclass(frozen=True)
class BirkhoffMetric:
    """rho* (single-level depth cost) and rho (shortest-chain cost) per element."""

    system: BourgainSystem
    rho_star: np.ndarray  # float64, +inf where no ternary level contains x
    rho: np.ndarray       # float64, +inf where unreachable from 0 by finite steps

    def ball(self, radius: float) -> GroupSet:
        return GroupSet(self.system.group, self.rho <= radius + RHO_SLACK)

    def ball_family(self) -> Callable[[float], GroupSet]:
        return self.ball

    def dump_jsonable(self) -> list:
        g = self.system.group
        out = []
        for i in range(g.order):
            rs = self.rho_star[i]
            r = self.rho[i]
            out.append([list(g.decode(i)),
                        None if math.isinf(rs) else rs,
                        None if math.isinf(r) else r])
        return out


def birkhoff_metric(system: BourgainSystem) -> BirkhoffMetric:
    """Exact chain-infimum metric of an axiom-clean system.

    rho* assigns 2^-k at the deepest ternary level containing the element
    (0 on an attested constant core); rho is Dijkstra from 0 with edge
    weights rho*(step). Dyadic weights make float relaxation exact.
    """
    if not system.audit.all_pass:
        raise ValueError(f"system failed its axiom audit: {system.audit.violations}")
    g = system.group
    order = g.order
    rho_star = np.full(order, np.inf)
    for k, r in enumerate(system.ternary_radii()):
        rho_star[system.levels[r].mask] = 2.0 ** -k
    if system.core is not None:
        rho_star[system.core.mask] = 0.0

    steps = np.flatnonzero(np.isfinite(rho_star))
    weights = rho_star[steps]
    coords = g.coords_table()
    step_coords = coords[:, steps]

    dist = np.full(order, np.inf)
    dist[0] = 0.0
    done = np.zeros(order, dtype=bool)
    for _ in range(order):
        candidates = np.where(done, np.inf, dist)
        u = int(np.argmin(candidates))
        if not np.isfinite(candidates[u]):
            break
        done[u] = True
        nbrs = g.encode_array(np.asarray(g.decode(u), dtype=np.int64)[:, None]
                              + step_coords)
        np.minimum.at(dist, nbrs, dist[u] + weights)
    return BirkhoffMetric(system, rho_star, dist)


# -- the two-sided sandwich audit ----------------------------------------------------


@dataclass(frozen=True)
class SandwichVerdict:
    delta: float
    left_ok: bool | None   # S_{delta/4 floored to grid} inside the rho-ball
    right_ok: bool         # the rho-ball inside S_delta
    note: str | None

    @property
    def passed(self) -> bool:
        return (self.left_ok is not False) and self.right_ok


def sandwich_audit(metric: BirkhoffMetric) -> list[SandwichVerdict]:
    """Check S_{delta/4} <= {rho <= delta} <= S_delta at every grid radius.

    delta/4 is rounded down onto the ternary levels (the only radii the
    metric itself sees); below the deepest level the audit falls back to the
    attested constant core, or skips the left inclusion with a note when no
    attestation exists.
    """
    system = metric.system
    verdicts = []
    radii = system.radii
    ternary = system.ternary_radii()
    for r in radii:
        ball = metric.ball(float(r))
        right_ok = ball.is_subset_of(system.levels[r])
        quarter = r / 4
        lower = [q for q in ternary if q <= quarter]
        note = None
        if lower:
            left_set = system.levels[max(lower)]
            left_ok = left_set.is_subset_of(ball)
        elif system.core is not None:
            left_set = system.core
            left_ok = left_set.is_subset_of(ball)
            note = "delta/4 below grid; used attested core"
        else:
            left_ok = None
            note = "delta/4 below grid and no attested core; left check skipped"
        verdicts.append(SandwichVerdict(float(r), left_ok, right_ok, note))
    return verdicts
