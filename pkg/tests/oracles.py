"""Independent brute-force oracles shared by the test modules.

Everything here recomputes expected answers from first principles, avoiding the
library code paths under test wherever the point is to check those paths.
"""

from __future__ import annotations

from itertools import combinations
from math import gcd


def compositions(n: int, k: int):
    """All ordered tuples of k positive integers summing to n."""
    for cuts in combinations(range(1, n), k - 1):
        prev = 0
        parts = []
        for c in cuts:
            parts.append(c - prev)
            prev = c
        parts.append(n - prev)
        yield tuple(parts)


def min_rotation(t: tuple[int, ...]) -> tuple[int, ...]:
    return min(t[i:] + t[:i] for i in range(len(t)))


def brute_cycles(n: int, d: int = 3) -> list[tuple[int, ...]]:
    """All difference cycles of dimension d on n vertices, by exhaustive generation."""
    return sorted({min_rotation(c) for c in compositions(n, d + 1)})


def necklace_count(n: int, d: int = 3) -> int:
    """Number of rotation classes of compositions of n into d+1 parts (Burnside)."""
    k = d + 1
    total = 0
    for g in range(1, k + 1):
        if k % g == 0 and n % (k // g) == 0:
            # rotations of order k/g; their fixed compositions have period g
            reps = k // g
            m = n // reps
            total += _phi(reps) * _choose(m - 1, g - 1)
    return total // k


def _phi(m: int) -> int:
    return sum(1 for a in range(1, m + 1) if gcd(a, m) == 1)


def _choose(a: int, b: int) -> int:
    if b < 0 or b > a:
        return 0
    out = 1
    for i in range(b):
        out = out * (a - i) // (i + 1)
    return out


def brute_orbit(parts: tuple[int, ...]) -> set[frozenset]:
    """Facet orbit of a gap tuple, built directly from translated vertex sets."""
    n = sum(parts)
    verts = [0]
    for a in parts[:-1]:
        verts.append(verts[-1] + a)
    return {frozenset((v + t) % n for v in verts) for t in range(n)}


def downward_closure(facets) -> set[frozenset]:
    """All nonempty faces of a set of faces."""
    faces: set[frozenset] = set()
    for f in facets:
        f = tuple(f)
        for r in range(1, len(f) + 1):
            for sub in combinations(f, r):
                faces.add(frozenset(sub))
    return faces


def brute_f_vector(facets, dim: int | None = None) -> tuple[int, ...]:
    """f-vector by counting the downward closure; pads to dim+1 entries if given."""
    faces = downward_closure(facets)
    top = max((len(f) for f in faces), default=0)
    if dim is not None:
        top = max(top, dim + 1)
    counts = [0] * top
    for f in faces:
        counts[len(f) - 1] += 1
    return tuple(counts)

def lens_orbit_closure(p: int, q: int) -> frozenset:
    """Residues reachable from q by negation and modular inversion mod p."""
    seen = {q % p}
    frontier = [q % p]
    while frontier:
        r = frontier.pop()
        for s in ((-r) % p, pow(r, -1, p)):
            if s not in seen:
                seen.add(s)
                frontier.append(s)
    return frozenset(seen)

def brute_triangle_incidence(parts: tuple[int, ...]) -> dict:
    """Triangle -> number of containing facets, over one cycle's facet orbit."""
    counts: dict[tuple[int, ...], int] = {}
    for f in brute_orbit(parts):
        for t in combinations(sorted(f), 3):
            counts[t] = counts.get(t, 0) + 1
    return counts


def brute_classify_subsets(n: int) -> list[frozenset]:
    """All nonempty cycle sets whose facet-orbit union is a connected closed
    combinatorial 3-manifold, by scanning every subset of the universe.

    Usable while the universe stays tiny (n <= 8 gives at most 10 cycles).
    """
    from diffcyc.cycles import FacetComplex
    from diffcyc.topology import is_manifold_all_links

    universe = brute_cycles(n, 3)
    found = []
    for r in range(1, len(universe) + 1):
        for subset in combinations(universe, r):
            facets = set()
            for parts in subset:
                facets |= {tuple(sorted(f)) for f in brute_orbit(parts)}
            if is_manifold_all_links(FacetComplex(n, facets)):
                found.append(frozenset(subset))
    return found
