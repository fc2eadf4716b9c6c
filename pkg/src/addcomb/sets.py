"""Dense subsets of a finite abelian group with Minkowski arithmetic.

A GroupSet is a bit vector over the canonical element enumeration. Sumsets
run through one of two exact routes: a translate loop for small inputs and
an integer-rounded FFT convolution above a size crossover (indicator
convolutions take integer values, so thresholding at 1/2 is exact).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .groups import FinAbGroup, GroupElement, GroupMismatchError

#: prog() refuses generator lists longer than this.
PROG_GUARD = 24

#: sumset switches to the FFT route when mu(A)*mu(B) exceeds
#: SUMSET_CROSSOVER * |G| * ln|G|.
SUMSET_CROSSOVER = 64


class GuardExceededError(ValueError):
    """An enumeration guard (prog generators, dissociated-set size) was hit."""


class GroupSet:
    """A subset of a FinAbGroup (or of its dual) as a dense bool mask.

    mu(A) is the cardinality, the counting-measure convention.
    """

    __slots__ = ("group", "mask", "_card")

    def __init__(self, group: FinAbGroup, mask: np.ndarray):
        if mask.shape != (group.order,):
            raise ValueError(f"mask length {mask.shape} != group order {group.order}")
        self.group = group
        self.mask = mask.astype(bool, copy=False)
        self.mask.setflags(write=False)
        self._card = int(np.count_nonzero(self.mask))

    # -- constructors --------------------------------------------------------

    @classmethod
    def empty(cls, group: FinAbGroup) -> "GroupSet":
        return cls(group, np.zeros(group.order, dtype=bool))

    @classmethod
    def full(cls, group: FinAbGroup) -> "GroupSet":
        return cls(group, np.ones(group.order, dtype=bool))

    @classmethod
    def from_indices(cls, group: FinAbGroup, indices: Iterable[int]) -> "GroupSet":
        mask = np.zeros(group.order, dtype=bool)
        idx = np.asarray(list(indices), dtype=np.int64)
        if idx.size:
            if idx.min() < 0 or idx.max() >= group.order:
                raise ValueError("element index out of range")
            mask[idx] = True
        return cls(group, mask)

    @classmethod
    def from_coords(cls, group: FinAbGroup, coords: Iterable[Sequence[int]]) -> "GroupSet":
        return cls.from_indices(group, (group.encode(c) for c in coords))

    @classmethod
    def from_elements(cls, group: FinAbGroup, elems: Iterable[GroupElement]) -> "GroupSet":
        idx = []
        for e in elems:
            if e.group != group:
                raise GroupMismatchError(f"element of {e.group!r} in set over {group!r}")
            idx.append(e.index)
        return cls.from_indices(group, idx)

    @classmethod
    def singleton(cls, group: FinAbGroup, element: GroupElement | int) -> "GroupSet":
        idx = element.index if isinstance(element, GroupElement) else int(element)
        return cls.from_indices(group, [idx])

    @classmethod
    def linf_ball(cls, group: FinAbGroup, r: int) -> "GroupSet":
        """{x : every coordinate is within r of 0 on its cycle} (sup word metric)."""
        coords = group.coords_table()
        mask = np.ones(group.order, dtype=bool)
        for col, n in zip(coords, group.invariants):
            mask &= np.minimum(col, n - col) <= r
        return cls(group, mask)

    @classmethod
    def interval(cls, group: FinAbGroup, r: int) -> "GroupSet":
        """{-r..r} in a cyclic group; the JSON shorthand."""
        if group.rank != 1:
            raise ValueError("interval shorthand needs a cyclic group")
        return cls.linf_ball(group, r)

    # -- queries ---------------------------------------------------------------

    @property
    def cardinality(self) -> int:
        return self._card

    @property
    def measure(self) -> int:
        """mu(A) under the counting-measure convention."""
        return self._card

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def elements(self) -> list[GroupElement]:
        return [GroupElement(self.group, int(i)) for i in self.indices()]

    def coords_list(self) -> list[tuple[int, ...]]:
        return [self.group.decode(int(i)) for i in self.indices()]

    def contains(self, x: GroupElement | int) -> bool:
        idx = x.index if isinstance(x, GroupElement) else int(x)
        return bool(self.mask[idx])

    def contains_zero(self) -> bool:
        return bool(self.mask[0])

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.mask, self.mask[self.group.negation_permutation()]))

    def is_subset_of(self, other: "GroupSet") -> bool:
        _same_group(self, other)
        return not np.any(self.mask & ~other.mask)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupSet) and self.group == other.group
                and np.array_equal(self.mask, other.mask))

    def __hash__(self):
        return hash((self.group, self.mask.tobytes()))

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def __len__(self) -> int:
        return self._card

    def __repr__(self) -> str:
        return f"GroupSet({self.group!r}, |A|={self._card})"

    # -- boolean algebra ---------------------------------------------------------

    def union(self, other: "GroupSet") -> "GroupSet":
        _same_group(self, other)
        return GroupSet(self.group, self.mask | other.mask)

    __or__ = union

    def intersection(self, other: "GroupSet") -> "GroupSet":
        _same_group(self, other)
        return GroupSet(self.group, self.mask & other.mask)

    __and__ = intersection

    def translate(self, a: GroupElement | int) -> "GroupSet":
        """The translate a + A (exact index permutation via axis rolls)."""
        idx = a.index if isinstance(a, GroupElement) else int(a)
        g = self.group
        shape = g.invariants
        arr = self.mask.reshape(shape, order="F")
        arr = np.roll(arr, g.decode(idx), axis=tuple(range(g.rank)))
        return GroupSet(g, arr.ravel(order="F"))


def _same_group(a: GroupSet, b: GroupSet) -> None:
    if a.group != b.group:
        raise GroupMismatchError(f"sets over different groups: {a.group!r} vs {b.group!r}")


# -- Minkowski arithmetic ----------------------------------------------------------


def negate(A: GroupSet) -> GroupSet:
    """{-a : a in A}; an involution, fixes symmetric sets."""
    return GroupSet(A.group, A.mask[A.group.negation_permutation()])


def sumset(A: GroupSet, B: GroupSet, method: str = "auto") -> GroupSet:
    """{a + b : a in A, b in B}. Empty inputs give the empty set.

    method: "auto" picks the route by size, "direct" forces the translate
    loop, "spectral" forces the FFT route. Both routes are exact.
    """
    _same_group(A, B)
    g = A.group
    if A.cardinality == 0 or B.cardinality == 0:
        return GroupSet.empty(g)
    if method not in ("auto", "direct", "spectral"):
        raise ValueError(f"unknown sumset method {method!r}")
    if method == "auto":
        crossover = SUMSET_CROSSOVER * g.order * max(1.0, math.log(g.order))
        method = "spectral" if A.cardinality * B.cardinality > crossover else "direct"
    if method == "spectral":
        from . import fourier  # local import; fourier depends on this module

        conv = fourier.convolve(A, B)
        return GroupSet(g, conv >= 0.5)
    # direct: translate the larger set by each element of the smaller one
    small, big = (A, B) if A.cardinality <= B.cardinality else (B, A)
    coords = g.coords_table()
    big_coords = coords[:, big.mask]  # (rank, |big|)
    mask = np.zeros(g.order, dtype=bool)
    for a in small.indices():
        shifted = big_coords + np.asarray(g.decode(int(a)), dtype=np.int64)[:, None]
        mask[g.encode_array(shifted)] = True
    return GroupSet(g, mask)


def difference(A: GroupSet, B: GroupSet) -> GroupSet:
    """A - B = A + (-B)."""
    return sumset(A, negate(B))


def iterate(n: int, A: GroupSet) -> GroupSet:
    """The n-fold sumset nA, computed by doubling; iterate(1, A) = A."""
    if n < 1:
        raise ValueError(f"iterate needs n >= 1, got {n}")
    g = A.group
    full = GroupSet.full(g)
    result: GroupSet | None = None
    power = A
    while n:
        if n & 1:
            result = power if result is None else sumset(result, power)
            if result == full:
                return full
        n >>= 1
        if n:
            power = sumset(power, power)
    assert result is not None
    return result


def multiples(t: GroupElement, L: int) -> GroupSet:
    """{sigma * t : |sigma| <= L} as a set."""
    g = t.group
    return GroupSet.from_indices(g, {t.scale(s).index for s in range(-L, L + 1)})


def prog(T: Sequence[GroupElement], L: int, group: FinAbGroup | None = None) -> GroupSet:
    """Prog(T, L) = {sum_t sigma_t * t : sigma integer, |sigma_t| <= L}.

    The ball of radius L in the sup-coefficient metric over generators T.
    Always contains 0 and is symmetric. For empty T the group must be given.
    """
    if L < 0:
        raise ValueError(f"prog needs L >= 0, got {L}")
    if len(T) > PROG_GUARD:
        raise GuardExceededError(f"|T| = {len(T)} exceeds prog guard {PROG_GUARD}")
    if not T:
        if group is None:
            raise ValueError("prog with empty T needs an explicit group")
        return GroupSet.singleton(group, 0)
    g = T[0].group
    if group is not None and group != g:
        raise GroupMismatchError("generators do not live over the stated group")
    for t in T[1:]:
        if t.group != g:
            raise GroupMismatchError("prog generators span different groups")
    out = GroupSet.singleton(g, 0)
    for t in T:
        out = sumset(out, multiples(t, L))
    return out


# -- growth profiling -----------------------------------------------------------


@dataclass(frozen=True)
class GrowthRow:
    n: int
    mu_nA: int
    bound: float  # n^d * mu(A)
    satisfied: bool


@dataclass(frozen=True)
class GrowthProfile:
    """mu(nA) against the polynomial bound n^d * mu(A), row by row."""

    base: GroupSet
    d: float
    rows: tuple[GrowthRow, ...]
    window_start: int  # n >= max(1, ceil(d ln d)), the hypothesis window

    @property
    def satisfied_on_window(self) -> bool:
        return all(r.satisfied for r in self.rows if r.n >= self.window_start)

    @property
    def saturated(self) -> bool:
        return self.rows[-1].mu_nA == self.base.group.order

    def to_jsonable(self) -> dict:
        return {
            "d": self.d,
            "window_start": self.window_start,
            "satisfied_on_window": self.satisfied_on_window,
            "rows": [
                {"n": r.n, "mu": r.mu_nA, "bound": r.bound, "satisfied": r.satisfied}
                for r in self.rows
            ],
        }


def growth_window_start(d: float, floor: int = 1) -> int:
    """First n of the growth-hypothesis window n >= d*ln(d), floored."""
    if d > 1:
        return max(floor, math.ceil(d * math.log(d)))
    return floor


def growth_profile(A: GroupSet, d: float, n_max: int) -> GrowthProfile:
    """Check mu(nA) <= n^d * mu(A) for n = 1..n_max; wraparound just saturates."""
    if A.cardinality == 0:
        raise ValueError("growth_profile needs a nonempty set")
    if n_max < 2:
        raise ValueError(f"growth_profile needs n_max >= 2, got {n_max}")
    mu_A = A.measure
    rows = []
    current = A
    for n in range(1, n_max + 1):
        if n > 1:
            current = sumset(current, A)
        bound = float(n) ** d * mu_A
        rows.append(GrowthRow(n, current.measure, bound, current.measure <= bound))
    return GrowthProfile(A, d, tuple(rows), growth_window_start(d))
