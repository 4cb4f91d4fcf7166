"""Infinite series of cyclic combinatorial manifolds.

A cyclic complex spawns an infinite family by adding multiples of k to chosen
entries of its difference cycles.  For 3-manifolds growing only the maximal
entry of each cycle, the test is exact: every member is a combinatorial
manifold if and only if each cycle, rotated so a maximal entry comes last,
satisfies a_d > a_0 + ... + a_{d-1}.  Families that grow several entries at
once (order l > 1) admit a sufficient test through a strict double inequality
on each entry, evaluated in exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .cycles import CyclicComplex, DifferenceCycle
from .topology import is_combinatorial_manifold

__all__ = [
    "SeriesError",
    "ClassificationGapError",
    "SeriesSpec",
    "DenseSeriesReport",
    "UnitReduction",
    "dense_extendable",
    "extend_dense",
    "order_l_admissible",
    "extend_order_l",
    "link_relabeling",
    "reduce_by_unit",
    "minimal_start",
    "enumerate_dense_series",
]


class SeriesError(ValueError):
    """A series construction, extension, or reduction was refused."""


class ClassificationGapError(LookupError):
    """Classification data required by a census is absent."""

    def __init__(self, missing: Iterable[int]):
        self.missing = tuple(sorted(missing))
        super().__init__(
            "no classification data for n = " + ", ".join(map(str, self.missing))
        )


@dataclass(frozen=True)
class SeriesSpec:
    """A parametrized family: entry j of cycle i grows by increments[i][j] * k.

    ``increments[i]`` lines up positionwise with ``base.cycles[i]`` (canonical
    sorted order) and must sum to ``order`` for every cycle, so ``member(k)``
    lives on n + order*k vertices.
    """

    base: CyclicComplex
    order: int
    increments: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not isinstance(self.base, CyclicComplex) or not self.base.cycles:
            raise SeriesError("base must be a nonempty cyclic complex")
        if not isinstance(self.order, int) or self.order < 1:
            raise SeriesError(f"order must be a positive integer, got {self.order!r}")
        incs = tuple(tuple(v) for v in self.increments)
        object.__setattr__(self, "increments", incs)
        if len(incs) != len(self.base.cycles):
            raise SeriesError(
                f"{len(self.base.cycles)} cycles but {len(incs)} increment vectors"
            )
        for c, vec in zip(self.base.cycles, incs):
            if len(vec) != len(c.parts):
                raise SeriesError(f"increment vector {vec} does not fit {c}")
            if any(not isinstance(g, int) or g < 0 for g in vec):
                raise SeriesError(f"increments must be nonnegative integers, got {vec}")
            if sum(vec) != self.order:
                raise SeriesError(
                    f"increments for {c} sum to {sum(vec)}, not the order {self.order}"
                )

    @property
    def n(self) -> int:
        return self.base.n

    def member(self, k: int) -> CyclicComplex:
        """The family member with n + order*k vertices."""
        if not isinstance(k, int) or k < 0:
            raise SeriesError(f"k must be a nonnegative integer, got {k!r}")
        if k == 0:
            return self.base
        return CyclicComplex(
            DifferenceCycle(tuple(a + g * k for a, g in zip(c.parts, vec)))
            for c, vec in zip(self.base.cycles, self.increments)
        )

    def as_dict(self) -> dict:
        return {
            "base": str(self.base),
            "l": self.order,
            "increments": [list(v) for v in self.increments],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SeriesSpec":
        base = CyclicComplex.parse(data["base"])
        incs = tuple(tuple(int(g) for g in v) for v in data["increments"])
        return cls(base=base, order=int(data["l"]), increments=incs)


@dataclass(frozen=True)
class DenseSeriesReport:
    """Outcome of the dense-series test on a cyclic 3-manifold.

    margins[i] is a_d - (a_0 + ... + a_{d-1}) for cycle i rotated with a
    maximal entry last, which equals 2*max(parts) - n.  The complex extends to
    a combinatorial manifold for every k >= 0 exactly when all margins are
    positive.  minimal_start records whether shrinking the maximal entries by
    one destroys manifoldness, making this the first member of its series.
    """

    complex: CyclicComplex
    passes: bool
    margins: tuple[int, ...]
    minimal_start: bool

    @property
    def k_tilde(self) -> int:
        """Shift landing the smallest margin exactly at zero (0 when passing)."""
        return max(0, -min(self.margins))


def _shift_max(M: CyclicComplex, delta: int) -> CyclicComplex:
    """Add delta to the unique maximal entry of every cycle."""
    shifted = []
    for c in M.cycles:
        top = max(c.parts)
        if c.parts.count(top) != 1:
            raise SeriesError(f"maximal entry of {c} is not unique")
        i = c.parts.index(top)
        shifted.append(DifferenceCycle(c.parts[:i] + (top + delta,) + c.parts[i + 1 :]))
    return CyclicComplex(shifted)


def dense_extendable(M: CyclicComplex) -> DenseSeriesReport:
    """Decide whether growing each cycle's maximal entry always yields manifolds.

    Exact for combinatorial 3-manifolds: all margins must be positive.  A
    duplicated maximal entry forces its margin below zero, so the max-last
    rotation needs no tie-break on passing complexes.  Inputs that are not
    combinatorial 3-manifolds are refused.
    """
    if not isinstance(M, CyclicComplex):
        raise TypeError("dense_extendable expects a CyclicComplex")
    if M.dim != 3:
        raise SeriesError(f"dense series need a 3-manifold, got dimension {M.dim}")
    if not is_combinatorial_manifold(M):
        raise SeriesError(f"{M} is not a combinatorial 3-manifold")
    margins = tuple(2 * max(c.parts) - M.n for c in M.cycles)
    passes = all(m > 0 for m in margins)
    # A passing complex has a unique maximal entry above n/2 in every cycle,
    # so the predecessor with each maximum lowered by one is well defined.
    minimal = passes and not is_combinatorial_manifold(_shift_max(M, -1))
    return DenseSeriesReport(complex=M, passes=passes, margins=margins, minimal_start=minimal)


def extend_dense(M: CyclicComplex, k: int) -> CyclicComplex:
    """The member with n + k vertices: k added to each cycle's maximal entry.

    Produces combinatorial manifolds for every k >= 0 when dense_extendable(M)
    passes.  A duplicated maximal entry leaves the target entry ill defined
    (and the criterion already failed), so such complexes are refused.
    """
    if not isinstance(M, CyclicComplex):
        raise TypeError("extend_dense expects a CyclicComplex")
    if not isinstance(k, int) or k < 0:
        raise SeriesError(f"k must be a nonnegative integer, got {k!r}")
    if k == 0:
        return M
    return _shift_max(M, k)


def order_l_admissible(S: SeriesSpec) -> bool:
    """Sufficient test: every member of S is a combinatorial manifold when True.

    Requires the strict double inequality (g+1)*n > a*(l+1) > g*n for each
    entry a growing by g*k, checked in exact integer arithmetic.  Only
    sufficient: families failing it may still consist of manifolds.  The
    manifold conclusion presumes the base itself is one.
    """
    n, l = S.base.n, S.order
    for c, vec in zip(S.base.cycles, S.increments):
        for a, g in zip(c.parts, vec):
            if not ((g + 1) * n > a * (l + 1) > g * n):
                return False
    return True


def extend_order_l(S: SeriesSpec, k: int) -> CyclicComplex:
    """The member of S with n + order*k vertices."""
    return S.member(k)


def link_relabeling(S: SeriesSpec, k: int) -> dict[int, int]:
    """Vertex map carrying link(base, 0) onto link(member(k), 0) facet by facet.

    v goes to v + floor((l+1)*v/n)*k: vertices fan out into l+1 blocks and
    block b is pushed up by b*k.  An isomorphism of the two links whenever the
    spec is admissible.
    """
    n, l = S.base.n, S.order
    return {v: v + (l + 1) * v // n * k for v in range(n)}


@dataclass(frozen=True)
class UnitReduction:
    """A dense series absorbing all late members of an order-l family.

    dense.member(l*(k - k0)) equals member(k) multiplied by l for all k >= k0.
    """

    dense: SeriesSpec
    k0: int


def reduce_by_unit(S: SeriesSpec) -> UnitReduction | None:
    """Trade an order-l family for a dense one via the unit multiplier l.

    Multiplying member(k) by l freezes every entry except one per cycle, which
    absorbs the growing modulus n + l*k; once that entry dominates its cycle
    the multiplied members march along a dense series in steps of l.  Returns
    None when l is not a unit modulo n.  The reduction is verified by
    comparing expansions of three consecutive members.
    """
    n, l = S.base.n, S.order
    if gcd(l, n) != 1:
        return None
    if l == 1:
        return UnitReduction(dense=S, k0=0)
    for k0 in range(2 * n + 64):
        img = S.member(k0).multiply(l)
        if any(2 * max(c.parts) - img.n <= 0 for c in img.cycles):
            continue
        dense = SeriesSpec(
            base=img,
            order=1,
            increments=tuple(
                tuple(int(j == c.parts.index(max(c.parts))) for j in range(len(c.parts)))
                for c in img.cycles
            ),
        )
        if all(
            S.member(k0 + t).multiply(l).expand() == dense.member(l * t).expand()
            for t in (1, 2)
        ):
            return UnitReduction(dense=dense, k0=k0)
    raise SeriesError(f"no dense reduction of {S.base} found within the scan bound")


def minimal_start(M: CyclicComplex) -> tuple[int, CyclicComplex]:
    """Walk a dense series down to its first member.

    Returns (k_min, M_min) with extend_dense(M_min, k_min) == M and the
    predecessor of M_min not a combinatorial manifold.  Requires
    dense_extendable(M) to pass.  The first member always has an odd vertex
    count: while the smallest margin exceeds 1 the predecessor is again a
    manifold, so the walk stops at a margin of exactly 1, where n = 2*max - 1.
    """
    if not dense_extendable(M).passes:
        raise SeriesError(f"{M} does not generate a dense series")
    k_min, cur = 0, M
    while True:
        pred = _shift_max(cur, -1)
        if not is_combinatorial_manifold(pred):
            break
        k_min, cur = k_min + 1, pred
    assert cur.n % 2 == 1, f"minimal start {cur} has an even vertex count"
    return k_min, cur


def enumerate_dense_series(store, n_max: int) -> tuple[int, list[CyclicComplex]]:
    """Census of dense series whose first member has at most n_max vertices.

    ``store`` supplies classified manifolds per vertex count through ``has(n)``
    and ``representatives(n)``; one representative per isomorphism class is
    examined, so the count is of combinatorially distinct series.  Raises
    ClassificationGapError naming every vertex count that lacks data.
    """
    missing = [n for n in range(5, n_max + 1) if not store.has(n)]
    if missing:
        raise ClassificationGapError(missing)
    bases: list[CyclicComplex] = []
    for n in range(5, n_max + 1):
        for rep in store.representatives(n):
            report = dense_extendable(rep)
            if report.passes and report.minimal_start:
                bases.append(rep)
    return len(bases), bases
