"""The Freiman-type containment pipeline over an explicit group.

Given a set A with polynomial sumset growth, the run picks a pigeonhole
index l with mu(lA) <= ratio_bound * mu((l-1)A), cuts the large spectrum of
lA at a threshold epsilon, covers the spectrum through the Chang greedy in
the dual, and builds the Bohr ball B over the covered spectrum. The report
carries every intermediate verdict: direct containment A-A in B, the
three-link radius chain, the spectral lower-bound audit, a dimension
estimate of the Bohr family, and the measure ratio mu(B)/mu(A).

Two modes. "paper" uses the literal constants (pigeonhole bound 2^15, ball
radius 2^-4, the 2^13 (1+C) d' ln^2 d' threshold formula), which degenerate
at desk scale and are reported as such. "empirical" takes an explicit
epsilon and widens the default ball radius to max(2^-4, 4 eps sqrt(2 K_l)),
the radius the spectral lower bound actually guarantees for A - A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bohr import (INCLUSION_SLACK, BohrSet, bohr_distance_table, bohr_family,
                   bohr_set, dimension_estimate, dyadic_dimension_grid,
                   DimensionEstimate)
from .covering import CoverCertificate, chang_cover
from .groups import GroupElement
from .sets import (GroupSet, difference, growth_profile, growth_window_start,
                   iterate, prog, sumset, GrowthProfile)
from .spectrum import Spectrum, lspec

DEFAULT_RATIO_BOUND = float(2 ** 15)
DEFAULT_RADIUS = 2.0 ** -4


@dataclass(frozen=True)
class FreimanConfig:
    """Run parameters; paper mode forbids overrides, empirical mode needs epsilon."""

    d: float
    mode: str = "empirical"
    epsilon: float | None = None
    l: int | None = None
    radius: float | None = None
    ratio_bound: float = DEFAULT_RATIO_BOUND
    C: float = 1.0
    max_retries: int = 4
    n_max: int | None = None       # growth scan window end
    dim_grid_cap: int = 40

    def __post_init__(self):
        if self.mode not in ("paper", "empirical"):
            raise ValueError(f"mode must be 'paper' or 'empirical', got {self.mode!r}")
        if self.d <= 0:
            raise ValueError(f"d must be positive, got {self.d}")
        if self.mode == "paper":
            if self.epsilon is not None or self.l is not None or self.radius is not None:
                raise ValueError("paper mode forbids epsilon/l/radius overrides")
        else:
            if self.epsilon is None:
                raise ValueError("empirical mode requires an explicit epsilon")
            if not 0 < self.epsilon:
                raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.l is not None and self.l < 2:
            raise ValueError(f"l override must be >= 2, got {self.l}")

    def scan_window_end(self) -> int:
        if self.n_max is not None:
            return self.n_max
        d = self.d
        return max(4, math.ceil(2 * d * math.log(d))) if d > 1 else 4

    def to_jsonable(self) -> dict:
        return {
            "d": self.d, "mode": self.mode, "epsilon": self.epsilon,
            "l": self.l, "radius": self.radius, "ratio_bound": self.ratio_bound,
            "C": self.C, "max_retries": self.max_retries,
            "n_max": self.n_max, "dim_grid_cap": self.dim_grid_cap,
        }


# -- pigeonhole index -------------------------------------------------------------


@dataclass(frozen=True)
class FindL:
    l: int
    K_l: float                 # mu(lA) / mu((l-1)A)
    window: tuple[int, int]
    measures: tuple[int, ...]  # mu(nA) for n = 1..window end


def find_l(A: GroupSet, d: float, ratio_bound: float = DEFAULT_RATIO_BOUND
           ) -> FindL | None:
    """Smallest l in the pigeonhole window with mu(lA) <= ratio_bound * mu((l-1)A)."""
    if A.cardinality == 0:
        raise ValueError("find_l needs a nonempty set")
    lo = growth_window_start(d, floor=2)
    hi = max(4, math.ceil(2 * d * math.log(d))) if d > 1 else 4
    hi = max(hi, lo)
    measures = []
    current = A
    for n in range(1, hi + 1):
        if n > 1:
            current = sumset(current, A)
        measures.append(current.measure)
    for l in range(lo, hi + 1):
        ratio = measures[l - 1] / measures[l - 2]
        if ratio <= ratio_bound:
            return FindL(l, ratio, (lo, hi), tuple(measures))
    return None


def measured_growth_exponent(A: GroupSet, n_max: int) -> float:
    """Smallest d' with mu(nA) <= n^{d'} mu(A) over n = 2..n_max (0 when constant)."""
    mu = A.measure
    out = 0.0
    current = A
    for n in range(2, n_max + 1):
        current = sumset(current, A)
        out = max(out, math.log(current.measure / mu) / math.log(n))
    return out


# -- spectrum covering (the dual Chang step) ------------------------------------------


@dataclass(frozen=True)
class SpectrumCover:
    """Covering set X for the spectrum of lA, or the escape verdict.

    Both containment forms are recorded: form_sum is
    LSpec(eps)+LSpec(eps) inside Prog(X,1)+LSpec(eps); form_chang is the
    Chang conclusion LSpec(2 eps) inside Prog(X,1)+LSpec(eps/2)-LSpec(eps/2).
    """

    epsilon: float
    escape: bool
    r: int | None
    r_max: int
    X: tuple[GroupElement, ...]
    X_set: GroupSet | None
    certificate: CoverCertificate | None
    form_sum_ok: bool | None
    form_chang_ok: bool | None
    spectrum_counts: dict = field(default_factory=dict)

    def to_jsonable(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "escape": self.escape,
            "r": self.r,
            "r_max": self.r_max,
            "X": [list(x.coords) for x in self.X],
            "certificate": self.certificate.to_jsonable() if self.certificate else None,
            "form_sum_ok": self.form_sum_ok,
            "form_chang_ok": self.form_chang_ok,
            "spectrum_counts": dict(sorted(self.spectrum_counts.items())),
        }


def spectrum_cover(A: GroupSet, l: int, epsilon: float) -> SpectrumCover:
    """Search the dual Chang parameter r and cover the spectrum of lA.

    Candidates are integers r >= 2 with (2r + 1/2) epsilon <= 1; r qualifies
    when nu(LSpec(lA, (2r+1/2) eps)) < 2^r nu(LSpec(lA, eps/2)). When no r
    qualifies the escape branch is reported (the small-epsilon regime where
    the covering route gives nothing).
    """
    if epsilon <= 0:
        raise ValueError(f"spectrum_cover needs epsilon > 0, got {epsilon}")
    lA = iterate(l, A)
    dual = lA.group.dual()
    S_half = lspec(lA, epsilon / 2)
    S_one = lspec(lA, epsilon)
    S_two = lspec(lA, 2 * epsilon)
    counts = {
        "eps/2": S_half.count, "eps": S_one.count, "2eps": S_two.count,
    }
    r_max = math.floor((1.0 / epsilon - 0.5) / 2.0)
    chosen = None
    for r in range(2, r_max + 1):
        wide = lspec(lA, (2 * r + 0.5) * epsilon)
        if wide.count < (2 ** r) * S_half.count:
            chosen = r
            break
    if chosen is None:
        return SpectrumCover(epsilon, True, None, r_max, (), None, None,
                             None, None, counts)
    cert = chang_cover(S_two.members, S_half.members, chosen)
    X = cert.T
    X_set = GroupSet.from_elements(dual, list(X))
    P = prog(list(X), 1, group=dual)
    form_sum = sumset(S_one.members, S_one.members).is_subset_of(
        sumset(P, S_one.members))
    D_half = difference(S_half.members, S_half.members)
    form_chang = S_two.members.is_subset_of(sumset(P, D_half))
    return SpectrumCover(epsilon, False, chosen, r_max, X, X_set, cert,
                         form_sum, form_chang, counts)


# -- audits ------------------------------------------------------------------------


@dataclass(frozen=True)
class LowerboundAudit:
    """A-A against Bohr(LSpec(lA, eps), 2 eps sqrt(2K)); holds unconditionally."""

    holds: bool
    l: int
    epsilon: float
    K: float
    radius: float
    spectrum_count: int
    max_distance: float  # worst Bohr distance of an element of A-A

    def to_jsonable(self) -> dict:
        return {
            "holds": self.holds, "l": self.l, "epsilon": self.epsilon,
            "K": self.K, "radius": self.radius,
            "spectrum_count": self.spectrum_count,
            "max_distance": self.max_distance,
        }


def lowerbound_audit(A: GroupSet, l: int, epsilon: float,
                     K: float | None = None) -> LowerboundAudit:
    """Exhaustive membership check of the spectral lower-bound containment."""
    if l < 2:
        raise ValueError(f"lowerbound_audit needs l >= 2, got {l}")
    if not 0 < epsilon <= 1:
        raise ValueError(f"lowerbound_audit needs epsilon in (0, 1], got {epsilon}")
    lA = iterate(l, A)
    lm1A = iterate(l - 1, A)
    ratio = lA.measure / lm1A.measure
    if K is None:
        K = ratio
    elif ratio > K:
        raise ValueError(f"mu(lA) = {lA.measure} exceeds K * mu((l-1)A) = {K * lm1A.measure}")
    spec = lspec(lA, epsilon)
    radius = 2 * epsilon * math.sqrt(2 * K)
    table = bohr_distance_table(spec.members)
    AmA = difference(A, A)
    worst = float(table[AmA.mask].max())
    return LowerboundAudit(worst <= radius + INCLUSION_SLACK, l, float(epsilon),
                           float(K), radius, spec.count, worst)


@dataclass(frozen=True)
class BohrMeasureAudit:
    """mu(Bohr(LSpec(A, eps), 1/2pi)) against mu(A), with the fitted exponent."""

    measure: int
    ratio: float
    empirical_exponent: float | None  # ln(ratio) / (d ln(d/eps)), None when d <= eps
    spectrum_count: int

    def to_jsonable(self) -> dict:
        return {
            "measure": self.measure, "ratio": self.ratio,
            "empirical_exponent": self.empirical_exponent,
            "spectrum_count": self.spectrum_count,
        }


def bohr_measure_audit(A: GroupSet, epsilon: float, d: float) -> BohrMeasureAudit:
    if A.cardinality == 0:
        raise ValueError("bohr_measure_audit needs a nonempty set")
    spec = lspec(A, epsilon)
    B = bohr_set(spec.members, 1.0 / (2 * math.pi))
    ratio = B.measure / A.measure
    exponent = None
    if d > epsilon and ratio > 0:
        exponent = math.log(ratio) / (d * math.log(d / epsilon))
    return BohrMeasureAudit(B.measure, ratio, exponent, spec.count)


# -- the end-to-end run ----------------------------------------------------------------


@dataclass(frozen=True)
class ChainLink:
    name: str
    holds: bool
    applicable: bool

    def to_jsonable(self) -> dict:
        return {"name": self.name, "holds": self.holds, "applicable": self.applicable}


@dataclass(frozen=True)
class FreimanReport:
    """Everything a run produced, reproducible from the serialized inputs."""

    config: FreimanConfig
    group_cycles: tuple[int, ...]
    mu_A: int
    A_symmetric: bool
    A_contains_zero: bool
    profile: GrowthProfile
    hypothesis_ok: bool
    l: int
    K_l: float
    d_prime: float  # measured growth exponent of lA on the scan window
    epsilon_requested: float
    epsilon_used: float
    epsilon_retries: tuple[float, ...]
    escape_flagged: bool
    degenerate: bool
    cover: SpectrumCover
    spectrum: Spectrum
    radius: float
    guaranteed_radius: float
    ball: BohrSet
    containment: bool
    chain: tuple[ChainLink, ...]
    lowerbound: LowerboundAudit
    dimension: DimensionEstimate
    measure_ratio: float

    def to_jsonable(self) -> dict:
        return {
            "config": self.config.to_jsonable(),
            "group": {"cycles": list(self.group_cycles)},
            "mu_A": self.mu_A,
            "A_symmetric": self.A_symmetric,
            "A_contains_zero": self.A_contains_zero,
            "growth_profile": self.profile.to_jsonable(),
            "hypothesis_ok": self.hypothesis_ok,
            "l": self.l,
            "K_l": self.K_l,
            "d_prime": self.d_prime,
            "epsilon_requested": self.epsilon_requested,
            "epsilon_used": self.epsilon_used,
            "epsilon_retries": list(self.epsilon_retries),
            "escape_flagged": self.escape_flagged,
            "degenerate": self.degenerate,
            "cover": self.cover.to_jsonable(),
            "spectrum_count": self.spectrum.count,
            "spectrum_threshold": self.spectrum.threshold,
            "radius": self.radius,
            "guaranteed_radius": self.guaranteed_radius,
            "mu_B": self.ball.measure,
            "ball_frequency_count": self.ball.frequencies.cardinality,
            "containment": self.containment,
            "chain": [c.to_jsonable() for c in self.chain],
            "lowerbound_audit": self.lowerbound.to_jsonable(),
            "empirical_dim": self.dimension.empirical_dim,
            "dimension_estimate": self.dimension.to_jsonable(),
            "measure_ratio": self.measure_ratio,
        }


def _paper_epsilon(d_prime: float, C: float) -> tuple[float, bool]:
    """The 2^13 (1+C) d' ln^2 d' threshold; capped into (0, 1/2] when it degenerates."""
    if d_prime <= 0 or math.log(d_prime) == 0:
        return 0.5, True
    inv = (2 ** 13) * (1 + C) * d_prime * math.log(d_prime) ** 2
    if inv < 2:  # epsilon above 1/2: outside the admissible range
        return 0.5, True
    return 1.0 / inv, False


def run_freiman(A: GroupSet, config: FreimanConfig) -> FreimanReport:
    """Execute the full containment pipeline and assemble the report."""
    if A.cardinality == 0:
        raise ValueError("run_freiman needs a nonempty set")
    g = A.group
    d = config.d

    n_max = config.scan_window_end()
    profile = growth_profile(A, d, n_max)
    hypothesis_ok = profile.satisfied_on_window

    if config.l is not None:
        l = config.l
        measures = [iterate(n, A).measure for n in (l - 1, l)]
        K_l = measures[1] / measures[0]
    else:
        found = find_l(A, d, config.ratio_bound)
        if found is None:
            raise ValueError("no pigeonhole index l in the window; growth hypothesis fails")
        l, K_l = found.l, found.K_l

    d_prime = measured_growth_exponent(iterate(l, A), n_max)
    degenerate = False
    if config.mode == "paper":
        eps_requested, degenerate = _paper_epsilon(d_prime, config.C)
    else:
        eps_requested = float(config.epsilon)

    # covering, with the doubled-epsilon escape retries
    retries: list[float] = []
    eps_try = eps_requested
    cover = spectrum_cover(A, l, eps_try)
    first_cover = cover
    retries.append(eps_try)
    attempts = 0
    while cover.escape and attempts < config.max_retries:
        attempts += 1
        eps_try *= 2
        cover = spectrum_cover(A, l, eps_try)
        retries.append(eps_try)
    escape_flagged = cover.escape
    if escape_flagged:
        # every attempt escaped; report the original attempt and keep its epsilon
        cover = first_cover
        eps_used = eps_requested
    else:
        eps_used = eps_try

    lA = iterate(l, A)
    spectrum = lspec(lA, eps_used)
    if config.mode == "paper" and spectrum.count <= 1:
        degenerate = True  # the threshold collapsed the spectrum to gamma_0

    Lambda = spectrum.members
    if cover.X_set is not None:
        Lambda = Lambda | cover.X_set

    guaranteed = 4 * eps_used * math.sqrt(2 * K_l)
    if config.radius is not None:
        radius = config.radius
    elif config.mode == "paper":
        radius = DEFAULT_RADIUS
    else:
        radius = max(DEFAULT_RADIUS, guaranteed)

    fam = bohr_family(Lambda)
    ball = BohrSet(Lambda, float(radius), fam(radius))

    AmA = difference(A, A)
    containment = AmA.is_subset_of(ball.members)

    # the three-link radius chain, each link exhaustive with its own applicability
    S2 = lspec(lA, 2 * eps_used).members
    table2 = bohr_distance_table(S2)
    link1 = ChainLink(
        "A-A in Bohr(LSpec(lA,2eps), 2^9 eps)",
        bool(table2[AmA.mask].max() <= 2 ** 9 * eps_used + INCLUSION_SLACK),
        K_l <= 2 ** 13,  # then 2^9 eps dominates the guaranteed 4 eps sqrt(2 K_l)
    )
    mid = GroupSet(g, table2 <= 2 ** 9 * eps_used + INCLUSION_SLACK)
    tight = GroupSet(g, table2 <= DEFAULT_RADIUS + INCLUSION_SLACK)
    link2 = ChainLink(
        "Bohr(LSpec(lA,2eps), 2^9 eps) in Bohr(LSpec(lA,2eps), 2^-4)",
        mid.is_subset_of(tight),
        2 ** 9 * eps_used <= DEFAULT_RADIUS,
    )
    link3 = ChainLink(
        "Bohr(LSpec(lA,2eps), 2^-4) in B",
        tight.is_subset_of(ball.members),
        radius >= DEFAULT_RADIUS,
    )

    audit = lowerbound_audit(A, l, min(eps_used, 1.0))
    grid = dyadic_dimension_grid(fam, radius, cap=config.dim_grid_cap)
    dim = dimension_estimate(fam, grid)

    return FreimanReport(
        config=config,
        group_cycles=g.invariants,
        mu_A=A.measure,
        A_symmetric=A.is_symmetric(),
        A_contains_zero=A.contains_zero(),
        profile=profile,
        hypothesis_ok=hypothesis_ok,
        l=l,
        K_l=K_l,
        d_prime=d_prime,
        epsilon_requested=eps_requested,
        epsilon_used=eps_used,
        epsilon_retries=tuple(retries),
        escape_flagged=escape_flagged,
        degenerate=degenerate,
        cover=cover,
        spectrum=spectrum,
        radius=float(radius),
        guaranteed_radius=guaranteed,
        ball=ball,
        containment=containment,
        chain=(link1, link2, link3),
        lowerbound=audit,
        dimension=dim,
        measure_ratio=ball.measure / A.measure,
    )
