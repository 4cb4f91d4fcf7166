"""An infinite series of 2-neighborly lens spaces, with its verification kit.

``lens_series(k)`` builds a cyclic 3-manifold on 14 + 4k vertices whose even
and odd vertex spans are solid tori, so the slicing between them is the
central torus of a genus-1 Heegaard splitting.  Transporting the meridian of
the even torus across that slicing yields a curve on the odd torus whose grid
coordinates are closed-form integers in k; solving the 2x2 integer system
against the basis curves identifies member k as the lens space
L((k+2)^2 - 1, k+2).  ``winding_solve`` and ``segment_census`` carry those
closed forms and cross-check them against each other, while
``verify_lens_member`` re-verifies the topological claims on the complex
itself.

``LensParams`` normalizes (p, q) by the classical homeomorphism criterion
L(p, q1) = L(p, q2) iff q1 = +-q2^{+-1} (mod p), so equal parameter objects
mean homeomorphic spaces.  Two fixed reference complexes, C18 on 18 vertices
(type L(5,1)) and D22 on 22 vertices (type L(7,1)), run through the same
verification pipeline via ``verify_reference_complex``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .cycles import CyclicComplex
from .homology import HomologyGroups, homology, is_2_neighborly
from .topology import (
    is_combinatorial_manifold,
    slicing,
    solid_torus_certificate,
    span,
)

__all__ = [
    "LensVerificationError",
    "LensParams",
    "WindingData",
    "HeegaardReport",
    "REFERENCE_COMPLEXES",
    "lens_series",
    "verify_lens_member",
    "winding_solve",
    "segment_census",
    "lens_equivalent",
    "lens_type_of_series",
    "verify_reference_complex",
]


class LensVerificationError(RuntimeError):
    """A verification step that should hold by construction failed."""


def _check_index(k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool):
        raise TypeError(f"the series index must be an integer, got {k!r}")
    if k < 0:
        raise ValueError(f"the series index must be nonnegative, got {k}")


def _q_orbit(p: int, q: int) -> frozenset[int]:
    """Residues +-q^{+-1} mod p.  Requires gcd(q, p) = 1 and p >= 1."""
    qinv = pow(q, -1, p)
    return frozenset({q % p, (-q) % p, qinv % p, (-qinv) % p})


def lens_equivalent(p: int, q1: int, q2: int) -> bool:
    """Whether L(p, q1) and L(p, q2) are homeomorphic.

    Uses the classical criterion: homeomorphic iff q1 = +-q2^{+-1} (mod |p|).
    Both q arguments must be coprime to p, and p must be nonzero.
    """
    if p == 0:
        raise ValueError("lens space comparison needs p != 0")
    m = abs(p)
    for q in (q1, q2):
        if gcd(q, m) != 1:
            raise ValueError(
                f"invalid lens parameters: gcd({q}, {p}) != 1"
            )
    return q1 % m in _q_orbit(m, q2)


@dataclass(frozen=True)
class LensParams:
    """Lens space parameters, normalized on construction.

    The stored representative is (|p|, q') where q' is the smallest residue
    in {+-q^{+-1} mod |p|}.  Coprimality forces 1 <= q' < p whenever p > 1;
    the degenerate p = 1 (the 3-sphere) stores q' = 0.  Two LensParams
    compare equal exactly when the spaces are homeomorphic for that p.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p == 0:
            raise ValueError("lens space parameters need p != 0")
        m = abs(self.p)
        if gcd(self.q, m) != 1:
            raise ValueError(
                f"invalid lens parameters: gcd({self.q}, {self.p}) != 1"
            )
        object.__setattr__(self, "p", m)
        object.__setattr__(self, "q", min(_q_orbit(m, self.q)))

    def __str__(self) -> str:
        return f"L({self.p},{self.q})"

    def as_dict(self) -> dict:
        return {"p": self.p, "q": self.q}


@dataclass(frozen=True)
class WindingData:
    """Grid bookkeeping for the transported meridian of series member k.

    The meridian of the even solid torus, pushed across the slicing onto the
    boundary of the odd one, has coordinates ``grid_vector`` with respect to
    the (right, down) unit grid of the odd torus; ``alpha_basis`` and
    ``beta_basis`` are the grid coordinates of the chosen basis curves.  The
    solved pair (q, p) expresses the transported curve as q*alpha + p*beta.
    """

    k: int
    grid_vector: tuple[int, int]
    alpha_basis: tuple[int, int]
    beta_basis: tuple[int, int]
    q: int
    p: int

    def __post_init__(self) -> None:
        gx = self.q * self.alpha_basis[0] + self.p * self.beta_basis[0]
        gy = self.q * self.alpha_basis[1] + self.p * self.beta_basis[1]
        if (gx, gy) != self.grid_vector:
            raise ValueError(
                f"inconsistent winding data: q*alpha + p*beta = ({gx}, {gy}) "
                f"but the grid vector is {self.grid_vector}"
            )

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "grid_vector": list(self.grid_vector),
            "alpha_basis": list(self.alpha_basis),
            "beta_basis": list(self.beta_basis),
            "q": self.q,
            "p": self.p,
        }


def lens_series(k: int) -> CyclicComplex:
    """Member k of the lens space series, on n = 14 + 4k vertices.

    Four fixed difference cycles plus k+1 indexed pairs; the (4:...) cycles
    make up the two solid tori spanned by the even and the odd vertices.
    """
    _check_index(k)
    cycles = [
        (1, 1, 1, 11 + 4 * k),
        (1, 2, 4, 7 + 4 * k),
        (1, 4, 2, 7 + 4 * k),
        (1, 4, 7 + 4 * k, 2),
    ]
    for i in range(k + 1):
        cycles.append((2, 5 + 2 * i, 2, 5 + 4 * k - 2 * i))
        cycles.append((4, 2 + 2 * i, 4, 4 + 4 * k - 2 * i))
    return CyclicComplex(cycles)


def winding_solve(k: int) -> WindingData:
    """Solve the transported meridian's coefficients for member k.

    The basis curves of the odd torus have grid coordinates (k+2, -1) and
    (k-1, -3); the transported curve is (2k^2+8k+5, 2k^2+9k+8).  Cramer's
    rule on the resulting 2x2 system gives exact integers, checked against
    the closed forms q = k^2+3k+1 and p = -k^2-4k-3.
    """
    _check_index(k)
    alpha = (k + 2, -1)
    beta = (k - 1, -3)
    grid = (2 * k * k + 8 * k + 5, 2 * k * k + 9 * k + 8)
    det = alpha[0] * beta[1] - beta[0] * alpha[1]
    if det == 0:
        raise ArithmeticError(f"singular winding system at k={k}")
    q_num = grid[0] * beta[1] - beta[0] * grid[1]
    p_num = alpha[0] * grid[1] - grid[0] * alpha[1]
    if q_num % det or p_num % det:
        raise ArithmeticError(f"non-integral winding solution at k={k}")
    q, p = q_num // det, p_num // det
    if q != k * k + 3 * k + 1 or p != -k * k - 4 * k - 3:
        raise ArithmeticError(
            f"winding solution ({q}, {p}) disagrees with the closed form at k={k}"
        )
    return WindingData(k, grid, alpha, beta, q, p)


def segment_census(k: int) -> tuple[int, int]:
    """Segment counts (diagonal, down) of the transported meridian.

    The curve consists of (k+2)(2k+2) + 2k+1 diagonal segments and k+3
    straight-down segments.  With the convention diagonal = (1, 1) and
    down = (0, 1) in (right, down) grid coordinates, the totals reproduce
    the grid vector of ``winding_solve``; this is checked on every call.
    """
    _check_index(k)
    diag = (k + 2) * (2 * k + 2) + 2 * k + 1
    down = k + 3
    grid = winding_solve(k).grid_vector
    if (diag, diag + down) != grid:
        raise ArithmeticError(
            f"segment counts ({diag}, {down}) do not sum to the grid "
            f"vector {grid} at k={k}"
        )
    return diag, down


def lens_type_of_series(k: int) -> LensParams:
    """The topological type of series member k: L((k+2)^2 - 1, k+2).

    Derived from ``winding_solve``: the raw type L(p, q) normalizes to the
    stated parameters, and the agreement is asserted rather than assumed.
    """
    data = winding_solve(k)
    raw = LensParams(data.p, data.q)
    expected = LensParams((k + 2) ** 2 - 1, k + 2)
    if raw != expected:
        raise LensVerificationError(
            f"winding gives {raw} but the series type should be {expected}"
        )
    return raw


@dataclass(frozen=True)
class HeegaardReport:
    """Verified genus-1 splitting data for one complex.

    All fields record checks that have already passed; the verification
    functions raise ``LensVerificationError`` instead of returning a report
    with a failing entry.
    """

    name: str
    n: int
    manifold: bool
    two_neighborly: bool
    even_span_solid_torus: bool
    odd_span_solid_torus: bool
    slicing_f_vector: tuple[int, int, int, int]
    slicing_orientable: bool
    slicing_genus: int
    homology: HomologyGroups

    @property
    def h1_order(self) -> int:
        torsion = self.homology.torsion[1]
        order = 1
        for t in torsion:
            order *= t
        return order

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "manifold": self.manifold,
            "two_neighborly": self.two_neighborly,
            "even_span_solid_torus": self.even_span_solid_torus,
            "odd_span_solid_torus": self.odd_span_solid_torus,
            "slicing": {
                "f_vector": list(self.slicing_f_vector),
                "orientable": self.slicing_orientable,
                "genus": self.slicing_genus,
            },
            "homology": self.homology.as_dict(),
            "h1_order": self.h1_order,
        }


def _verify_genus_one(
    name: str,
    C: CyclicComplex,
    h1_order: int,
    expected_slicing_f: tuple[int, int, int, int] | None = None,
    require_neighborly: bool = False,
) -> HeegaardReport:
    if not is_combinatorial_manifold(C):
        raise LensVerificationError(f"{name} is not a combinatorial 3-manifold")
    n = C.n
    K = C.expand()
    neighborly = is_2_neighborly(K)
    if require_neighborly and not neighborly:
        raise LensVerificationError(f"{name} is not 2-neighborly")
    evens = range(0, n, 2)
    even_ok = solid_torus_certificate(span(K, evens))
    odd_ok = solid_torus_certificate(span(K, range(1, n, 2)))
    if not (even_ok and odd_ok):
        side = "even" if not even_ok else "odd"
        raise LensVerificationError(
            f"the span of the {side} vertices of {name} failed solid torus "
            "certification"
        )
    S = slicing(K, evens)
    fv = S.f_vector()
    orientable, genus = S.surface_type()
    if (orientable, genus) != (True, 1):
        raise LensVerificationError(
            f"the odd/even slicing of {name} is not a torus: "
            f"orientable={orientable}, genus={genus}"
        )
    if expected_slicing_f is not None and fv != expected_slicing_f:
        raise LensVerificationError(
            f"slicing f-vector {fv} of {name} differs from the closed "
            f"form {expected_slicing_f}"
        )
    H = homology(K)
    expected_h = HomologyGroups((1, 0, 0, 1), ((), (h1_order,), (), ()))
    if H != expected_h:
        raise LensVerificationError(
            f"homology {H} of {name} differs from (Z, Z_{h1_order}, 0, Z)"
        )
    return HeegaardReport(
        name=name,
        n=n,
        manifold=True,
        two_neighborly=neighborly,
        even_span_solid_torus=even_ok,
        odd_span_solid_torus=odd_ok,
        slicing_f_vector=fv,
        slicing_orientable=orientable,
        slicing_genus=genus,
        homology=H,
    )


def verify_lens_member(k: int) -> HeegaardReport:
    """Re-verify every topological claim about series member k.

    Checks, raising on the first failure: combinatorial manifold,
    2-neighborly, both vertex-parity spans certified solid tori, odd/even
    slicing an orientable genus-1 surface with f-vector
    (4k^2+28k+49, 8k^2+60k+112, 8k+28, 4k^2+24k+35), and homology
    (Z, Z_m, 0, Z) for m = (k+2)^2 - 1.
    """
    _check_index(k)
    expected_f = (
        4 * k * k + 28 * k + 49,
        8 * k * k + 60 * k + 112,
        8 * k + 28,
        4 * k * k + 24 * k + 35,
    )
    return _verify_genus_one(
        f"L_{k}",
        lens_series(k),
        h1_order=(k + 2) ** 2 - 1,
        expected_slicing_f=expected_f,
        require_neighborly=True,
    )


REFERENCE_COMPLEXES: dict[str, CyclicComplex] = {
    "C18": CyclicComplex(
        [
            (1, 1, 1, 15),
            (1, 2, 5, 10),
            (1, 5, 2, 10),
            (1, 5, 10, 2),
            (2, 5, 2, 9),
            (2, 6, 4, 6),
            (2, 7, 2, 7),
            (4, 4, 4, 6),
        ]
    ),
    "D22": CyclicComplex(
        [
            (1, 1, 1, 19),
            (1, 2, 5, 14),
            (1, 7, 12, 2),
            (2, 5, 2, 13),
            (2, 7, 2, 11),
            (2, 8, 4, 8),
            (2, 9, 2, 9),
            (2, 12, 3, 5),
            (4, 6, 4, 8),
            (4, 6, 6, 6),
        ]
    ),
}

_REFERENCE_H1 = {"C18": 5, "D22": 7}


def verify_reference_complex(name: str) -> HeegaardReport:
    """Verify one of the fixed reference lens spaces, C18 or D22.

    C18 is an 18-vertex complex of type L(5,1); D22 has 22 vertices and type
    L(7,1).  Both get the genus-1 splitting checks of ``verify_lens_member``
    minus the series-specific closed forms: manifold, solid torus spans,
    torus slicing, and homology (Z, Z_m, 0, Z) with m = 5 resp. 7.
    """
    if name not in REFERENCE_COMPLEXES:
        raise KeyError(
            f"unknown reference complex {name!r}; choose one of "
            + ", ".join(sorted(REFERENCE_COMPLEXES))
        )
    return _verify_genus_one(
        name, REFERENCE_COMPLEXES[name], h1_order=_REFERENCE_H1[name]
    )
