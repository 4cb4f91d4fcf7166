"""Integral simplicial homology and related invariants of facet complexes.

Chain groups are taken over all faces of the maximal-face closure, so impure
complexes (spans, collapse residues) are handled uniformly.  Homology is read
off Smith normal forms of the boundary matrices: free ranks from matrix ranks,
torsion from the invariant factors greater than one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cycles import CyclicComplex, FacetComplex, as_facet_complex
from .smith import invariant_factors, smith_normal_form

__all__ = [
    "HomologyGroups",
    "boundary_matrix",
    "chain_faces",
    "homology",
    "is_2_neighborly",
    "is_orientable",
    "smith_normal_form",
]


def chain_faces(K: FacetComplex | CyclicComplex) -> list[list[tuple[int, ...]]]:
    """All faces grouped by dimension 0..dim, each group sorted."""
    K = as_facet_complex(K)
    groups: list[set[tuple[int, ...]]] = [set() for _ in range(K.dim + 1)]
    for f in K.facets:
        for r in range(1, len(f) + 1):
            groups[r - 1].update(combinations(f, r))
    return [sorted(g) for g in groups]


def boundary_matrix(K: FacetComplex | CyclicComplex, k: int) -> list[list[int]]:
    """Dense matrix of the boundary map from k-chains to (k-1)-chains.

    Rows are indexed by the sorted (k-1)-faces, columns by the sorted k-faces;
    the column of a face lists the signs (-1)^i of dropping its i-th vertex.
    """
    faces = chain_faces(K)
    if not 1 <= k <= len(faces) - 1:
        raise ValueError(f"k must be between 1 and {len(faces) - 1}, got {k}")
    rows = {f: i for i, f in enumerate(faces[k - 1])}
    mat = [[0] * len(faces[k]) for _ in rows]
    for col, f in enumerate(faces[k]):
        for i in range(len(f)):
            mat[rows[f[:i] + f[i + 1 :]]][col] = -1 if i % 2 else 1
    return mat


def _boundary_sparse(
    lower: list[tuple[int, ...]], upper: list[tuple[int, ...]]
) -> dict[int, dict[int, int]]:
    rows_of: dict[tuple[int, ...], int] = {f: i for i, f in enumerate(lower)}
    rows: dict[int, dict[int, int]] = {}
    for col, f in enumerate(upper):
        for i in range(len(f)):
            r = rows_of[f[:i] + f[i + 1 :]]
            rows.setdefault(r, {})[col] = -1 if i % 2 else 1
    return rows


@dataclass(frozen=True)
class HomologyGroups:
    """Homology in each dimension as a free rank plus invariant-factor torsion."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def group(self, k: int) -> str:
        terms = []
        r = self.betti[k]
        if r == 1:
            terms.append("Z")
        elif r > 1:
            terms.append(f"Z^{r}")
        terms.extend(f"Z_{t}" for t in self.torsion[k])
        return " + ".join(terms) if terms else "0"

    def __str__(self) -> str:
        return "(" + ", ".join(self.group(k) for k in range(len(self.betti))) + ")"

    def as_dict(self) -> dict:
        return {
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
        }


def homology(K: FacetComplex | CyclicComplex) -> HomologyGroups:
    """Integral homology groups H_0 .. H_dim of a complex."""
    K = as_facet_complex(K)
    if not K.facets:
        return HomologyGroups((), ())
    faces = chain_faces(K)
    d = len(faces) - 1
    ranks = [0] * (d + 2)
    torsion: list[tuple[int, ...]] = [()] * (d + 1)
    for k in range(1, d + 1):
        diag = invariant_factors(_boundary_sparse(faces[k - 1], faces[k]))
        ranks[k] = len(diag)
        torsion[k - 1] = tuple(t for t in diag if t > 1)
    betti = tuple(len(faces[k]) - ranks[k] - ranks[k + 1] for k in range(d + 1))
    return HomologyGroups(betti, tuple(torsion))


def _ridge_counts(K: FacetComplex) -> dict[tuple[int, ...], list[int]]:
    """Map each ridge to the indices of the facets containing it."""
    ridges: dict[tuple[int, ...], list[int]] = {}
    for idx, f in enumerate(K.facets):
        for i in range(len(f)):
            ridges.setdefault(f[:i] + f[i + 1 :], []).append(idx)
    return ridges


def _facet_graph_connected(K: FacetComplex) -> bool:
    if not K.facets:
        return False
    labels: dict[int, int] = {}

    def find(v: int) -> int:
        while labels[v] != v:
            labels[v] = labels[labels[v]]
            v = labels[v]
        return v

    for f in K.facets:
        for v in f:
            labels.setdefault(v, v)
        r0 = find(f[0])
        for v in f[1:]:
            labels[find(v)] = r0
    roots = {find(v) for v in labels}
    return len(roots) == 1


def is_orientable(K: FacetComplex | CyclicComplex) -> bool:
    """Whether a closed connected pseudomanifold admits coherent orientations.

    Facet orientations are propagated across ridges; a sign conflict means
    nonorientable.  Anything but a closed connected pure complex is rejected.
    """
    K = as_facet_complex(K)
    if not K.facets or not K.is_pure:
        raise ValueError("orientability needs a nonempty pure complex")
    ridges = _ridge_counts(K)
    if any(len(fs) != 2 for fs in ridges.values()):
        raise ValueError("orientability needs a closed pseudomanifold")
    if not _facet_graph_connected(K):
        raise ValueError("orientability needs a connected complex")
    facets = K.facets
    position = [
        {v: i for i, v in enumerate(f)} for f in facets
    ]
    orient = [0] * len(facets)
    orient[0] = 1
    stack = [0]
    while stack:
        a = stack.pop()
        fa = facets[a]
        for i in range(len(fa)):
            ridge = fa[:i] + fa[i + 1 :]
            pair = ridges[ridge]
            b = pair[0] if pair[1] == a else pair[1]
            j = position[b][next(iter(set(facets[b]) - set(ridge)))]
            want = -orient[a] * (-1 if (i + j) % 2 else 1)
            if orient[b] == 0:
                orient[b] = want
                stack.append(b)
            elif orient[b] != want:
                return False
    return True


def is_2_neighborly(K: FacetComplex | CyclicComplex) -> bool:
    """Whether every pair of vertices of the complex spans an edge."""
    K = as_facet_complex(K)
    verts = K.vertices
    edges = {e for f in K.facets for e in combinations(f, 2)}
    return len(edges) == len(verts) * (len(verts) - 1) // 2
