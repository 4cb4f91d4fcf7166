"""Topological examination of facet complexes.

Link-based manifold recognition, induced subcomplexes, deterministic simplicial
collapses, a semi-decision certificate for solid tori, and the polygonal cut
surface obtained by slicing a 3-manifold along a vertex bipartition.

A cyclic complex has a vertex-transitive symmetry, so one vertex link decides
the manifold property; ``is_manifold_all_links`` checks every link instead and
works for arbitrary complexes.
"""

from __future__ import annotations

import heapq
from itertools import combinations
from math import cos, pi, sin
from typing import Iterable

from .cycles import CyclicComplex, FacetComplex, as_facet_complex
from .homology import HomologyGroups, chain_faces, homology, is_orientable


def f_vector(K: FacetComplex | CyclicComplex) -> tuple[int, ...]:
    """Face counts (f_0, ..., f_dim) of the maximal-face closure."""
    return tuple(len(g) for g in chain_faces(K))


def euler_characteristic(K: FacetComplex | CyclicComplex) -> int:
    return sum((-1) ** k * fk for k, fk in enumerate(f_vector(K)))


def link(K: FacetComplex | CyclicComplex, v: int) -> FacetComplex:
    """Faces f - v over the maximal faces f containing v.

    A vertex in no face, or only in the face {v}, has an empty link.
    """
    K = as_facet_complex(K)
    faces = [
        tuple(u for u in f if u != v)
        for f in K.facets
        if len(f) > 1 and v in set(f)
    ]
    return FacetComplex(K.n, faces)


def span(K: FacetComplex | CyclicComplex, S: Iterable[int]) -> FacetComplex:
    """Induced subcomplex on the vertex set S (all faces contained in S)."""
    K = as_facet_complex(K)
    s = set(S)
    faces = [f for f in (tuple(v for v in f if v in s) for f in K.facets) if f]
    return FacetComplex(K.n, faces)


def is_connected(K: FacetComplex | CyclicComplex) -> bool:
    """Whether the vertices used by the complex form one component."""
    K = as_facet_complex(K)
    if not K.facets:
        return False
    adj: dict[int, set[int]] = {}
    for f in K.facets:
        for v in f:
            adj.setdefault(v, set()).update(f)
    start = K.facets[0][0]
    seen = {start}
    stack = [start]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(adj)


def is_closed_pseudomanifold(K: FacetComplex | CyclicComplex) -> bool:
    """Pure, nonempty, and every ridge lies in exactly two facets."""
    K = as_facet_complex(K)
    if not K.facets or not K.is_pure:
        return False
    counts: dict[tuple[int, ...], int] = {}
    for f in K.facets:
        for i in range(len(f)):
            r = f[:i] + f[i + 1 :]
            counts[r] = counts.get(r, 0) + 1
    return all(c == 2 for c in counts.values())


def _vertex_links_are_circles(K: FacetComplex) -> bool:
    """In a pure 2-complex: every vertex link is one closed cycle."""
    neighbors: dict[int, dict[int, int]] = {}
    for a, b, c in K.facets:
        for v, e in ((a, (b, c)), (b, (a, c)), (c, (a, b))):
            deg = neighbors.setdefault(v, {})
            deg[e[0]] = deg.get(e[0], 0) + 1
            deg[e[1]] = deg.get(e[1], 0) + 1
    for v, deg in neighbors.items():
        if any(d != 2 for d in deg.values()):
            return False
        # connected: walk the cycle from any neighbor
        edges = [
            tuple(u for u in f if u != v) for f in K.facets if v in f
        ]
        adj: dict[int, list[int]] = {}
        for a, b in edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        start = edges[0][0]
        seen = {start}
        stack = [start]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != len(adj):
            return False
    return True


def is_sphere_2d(K: FacetComplex | CyclicComplex) -> bool:
    """Whether a pure 2-complex triangulates the 2-sphere."""
    K = as_facet_complex(K)
    if not K.facets or K.dim != 2 or not K.is_pure:
        return False
    edge_count: dict[tuple[int, int], int] = {}
    for f in K.facets:
        for e in combinations(f, 2):
            edge_count[e] = edge_count.get(e, 0) + 1
    if any(c != 2 for c in edge_count.values()):
        return False
    if not _vertex_links_are_circles(K):
        return False
    if not is_connected(K):
        return False
    v = len({u for f in K.facets for u in f})
    return v - len(edge_count) + len(K.facets) == 2


def is_circle_1d(K: FacetComplex | CyclicComplex) -> bool:
    """Whether a pure 1-complex is a single closed cycle."""
    K = as_facet_complex(K)
    if not K.facets or K.dim != 1 or not K.is_pure:
        return False
    deg: dict[int, int] = {}
    for a, b in K.facets:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return all(d == 2 for d in deg.values()) and is_connected(K)


def is_combinatorial_manifold(C: CyclicComplex) -> bool:
    """Whether a cyclic complex is a closed connected combinatorial manifold.

    Vertex transitivity makes all vertex links isomorphic, so only the link of
    vertex 0 is examined: it must be a 2-sphere (d = 3) or a circle (d = 2).
    """
    if not isinstance(C, CyclicComplex):
        raise TypeError("is_combinatorial_manifold expects a CyclicComplex")
    if not C.cycles:
        return False
    if C.dim not in (2, 3):
        raise ValueError(f"only dimensions 2 and 3 are supported, got {C.dim}")
    K = C.expand()
    lk = link(K, 0)
    ok = is_sphere_2d(lk) if C.dim == 3 else is_circle_1d(lk)
    return ok and is_connected(K)


def is_manifold_all_links(K: FacetComplex | CyclicComplex) -> bool:
    """Closed-manifold check for arbitrary complexes: every vertex link tested."""
    K = as_facet_complex(K)
    if not K.facets:
        return False
    if K.dim not in (2, 3) or not K.is_pure:
        raise ValueError("only pure complexes of dimension 2 or 3 are supported")
    test = is_sphere_2d if K.dim == 3 else is_circle_1d
    return all(test(link(K, v)) for v in K.vertices) and is_connected(K)


def _subsets(face: tuple[int, ...]):
    for r in range(1, len(face) + 1):
        yield from combinations(face, r)


def _maximal_among(faces: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    sets = [set(f) for f in faces]
    return [
        f
        for f, fs in zip(faces, sets)
        if not any(fs < g for g in sets)
    ]


def collapse(K: FacetComplex | CyclicComplex) -> FacetComplex:
    """Greedy deterministic simplicial collapse.

    A face g is free if it lies in exactly one maximal face f != g; an
    elementary collapse removes the whole interval {h : g <= h <= f}.  The
    lowest-dimensional free face is removed first, ties broken lexicographically,
    until no free face remains.  Greedy order is deterministic but need not
    reach a minimal residual complex.
    """
    K = as_facet_complex(K)
    faces: set[tuple[int, ...]] = set()
    cont: dict[tuple[int, ...], set[tuple[int, ...]]] = {}
    maximal: set[tuple[int, ...]] = set(K.facets)
    for f in K.facets:
        for s in _subsets(f):
            faces.add(s)
            cont.setdefault(s, set()).add(f)

    def free_coface(g: tuple[int, ...]):
        c = cont.get(g)
        if c is not None and len(c) == 1:
            (f,) = c
            if f != g:
                return f
        return None

    heap = [(len(g), g) for g in faces if free_coface(g) is not None]
    heapq.heapify(heap)
    while heap:
        _, g = heapq.heappop(heap)
        if g not in faces:
            continue
        f = free_coface(g)
        if f is None:
            continue
        gset = set(g)
        rest = tuple(v for v in f if v not in gset)
        removed = {
            tuple(sorted(g + s))
            for r in range(len(rest) + 1)
            for s in combinations(rest, r)
        }
        faces -= removed
        for h in removed:
            del cont[h]
        maximal.discard(f)
        touched = [x for x in _subsets(f) if x in faces]
        for x in touched:
            cont[x].discard(f)
        orphans = [x for x in touched if not cont[x]]
        for m in _maximal_among(orphans):
            maximal.add(m)
            for y in _subsets(m):
                cont[y].add(m)
        for x in touched:
            if free_coface(x) is not None:
                heapq.heappush(heap, (len(x), x))
    return FacetComplex(K.n, maximal)


def boundary_complex(K: FacetComplex | CyclicComplex) -> FacetComplex:
    """The ridges lying in exactly one facet, as a (d-1)-complex."""
    K = as_facet_complex(K)
    if not K.is_pure:
        raise ValueError("boundary needs a pure complex")
    counts: dict[tuple[int, ...], int] = {}
    for f in K.facets:
        for i in range(len(f)):
            r = f[:i] + f[i + 1 :]
            counts[r] = counts.get(r, 0) + 1
    return FacetComplex(K.n, [r for r, c in counts.items() if c == 1])


def is_closed_surface(K: FacetComplex | CyclicComplex) -> bool:
    """Pure 2-complex, connected, edges in two triangles, vertex links circles."""
    K = as_facet_complex(K)
    if not K.facets or K.dim != 2 or not K.is_pure:
        return False
    edge_count: dict[tuple[int, int], int] = {}
    for f in K.facets:
        for e in combinations(f, 2):
            edge_count[e] = edge_count.get(e, 0) + 1
    return (
        all(c == 2 for c in edge_count.values())
        and _vertex_links_are_circles(K)
        and is_connected(K)
    )


def solid_torus_certificate(K: FacetComplex | CyclicComplex) -> bool:
    """Certify that a pure 3-complex with boundary is a solid torus.

    Certification requires the boundary to be a torus (closed orientable surface
    of Euler characteristic 0), the homology to equal (Z, Z, 0, 0), and the
    greedy collapse to end on a connected graph homotopy equivalent to a circle.
    Returns True (certified) or False (inconclusive); never refutes.
    """
    K = as_facet_complex(K)
    if not K.facets or K.dim != 3 or not K.is_pure:
        raise ValueError("the certificate needs a nonempty pure 3-complex")
    B = boundary_complex(K)
    if not B.facets:
        raise ValueError("the complex is closed; a solid torus has boundary")
    if not is_closed_surface(B):
        return False
    if not is_orientable_surface(B) or euler_characteristic(B) != 0:
        return False
    if homology(K) != HomologyGroups((1, 1, 0, 0), ((), (), (), ())):
        return False
    R = collapse(K)
    if R.dim > 1 or not is_connected(R):
        return False
    fv = f_vector(R)
    edges = fv[1] if len(fv) > 1 else 0
    return fv[0] - edges == 0


def is_orientable_surface(K: FacetComplex | CyclicComplex) -> bool:
    """Orientability of a closed surface by orientation propagation."""
    return is_orientable(K)


def surface_type(obj) -> tuple[bool, int]:
    """(orientable, genus) of a closed surface.

    Accepts a pure 2-dimensional FacetComplex or a Slicing.  For orientable
    surfaces the genus g satisfies euler = 2 - 2g; nonorientable surfaces report
    the crosscap number k with euler = 2 - k.
    """
    if isinstance(obj, Slicing):
        orientable, chi = obj._orientation_and_euler()
    else:
        K = as_facet_complex(obj)
        if not is_closed_surface(K):
            raise ValueError("surface_type needs a closed surface")
        orientable = is_orientable_surface(K)
        chi = euler_characteristic(K)
    if orientable:
        if chi % 2:
            raise ValueError(f"odd Euler characteristic {chi} on a closed surface")
        return True, (2 - chi) // 2
    return False, 2 - chi


class Slicing:
    """The cut surface of a pure 3-complex along a vertex bipartition.

    Every edge with one endpoint on each side is cut at an ordered pair (u, v)
    with u in part A and v in part B.  A facet split 1+3 or 3+1 contributes a
    triangular cell; a facet split 2+2 with sides {a, b} and {c, d} contributes
    the quadrilateral (a,c),(a,d),(b,d),(b,c).  Cell edges correspond to the
    mixed triangles of the complex, so the cells tile a closed surface whenever
    the complex is a closed 3-manifold.
    """

    def __init__(self, K: FacetComplex | CyclicComplex, part_a: Iterable[int]):
        K = as_facet_complex(K)
        if not K.facets or K.dim != 3 or not K.is_pure:
            raise ValueError("slicing needs a nonempty pure 3-complex")
        verts = set(K.vertices)
        a_side = set(part_a)
        if not a_side <= verts:
            raise ValueError("part A must be a subset of the vertices")
        if not a_side or a_side == verts:
            raise ValueError("the bipartition must be proper")
        b_side = verts - a_side
        cuts: set[tuple[int, int]] = set()
        cells: list[tuple[tuple[int, int], ...]] = []
        for f in K.facets:
            fa = sorted(v for v in f if v in a_side)
            fb = sorted(v for v in f if v in b_side)
            for u in fa:
                for v in fb:
                    cuts.add((u, v))
            if len(fa) == 1 and len(fb) == 3:
                x = fa[0]
                cells.append(((x, fb[0]), (x, fb[1]), (x, fb[2])))
            elif len(fa) == 3 and len(fb) == 1:
                p = fb[0]
                cells.append(((fa[0], p), (fa[1], p), (fa[2], p)))
            elif len(fa) == 2 and len(fb) == 2:
                a, b = fa
                c, d = fb
                cells.append(((a, c), (a, d), (b, d), (b, c)))
        self.n = K.n
        self.part_a = tuple(sorted(a_side))
        self.part_b = tuple(sorted(b_side))
        self.cut_vertices = tuple(sorted(cuts))
        index = {cv: i for i, cv in enumerate(self.cut_vertices)}
        normalized = []
        for cell in cells:
            idx = tuple(index[cv] for cv in cell)
            shift = idx.index(min(idx))
            normalized.append(idx[shift:] + idx[:shift])
        self.cells = tuple(sorted(normalized))

    def f_vector(self) -> tuple[int, int, int, int]:
        """(vertices, edges, triangular cells, quadrilateral cells)."""
        edges = {
            frozenset((cell[i], cell[(i + 1) % len(cell)]))
            for cell in self.cells
            for i in range(len(cell))
        }
        tri = sum(1 for c in self.cells if len(c) == 3)
        return (len(self.cut_vertices), len(edges), tri, len(self.cells) - tri)

    def euler_characteristic(self) -> int:
        v, e, t, q = self.f_vector()
        return v - e + t + q

    def _orientation_and_euler(self) -> tuple[bool, int]:
        if not self.cells:
            raise ValueError("the slicing has no cells; no facet is mixed")
        incidence: dict[frozenset, list[tuple[int, tuple[int, int]]]] = {}
        for ci, cell in enumerate(self.cells):
            for i in range(len(cell)):
                a, b = cell[i], cell[(i + 1) % len(cell)]
                incidence.setdefault(frozenset((a, b)), []).append((ci, (a, b)))
        if any(len(inc) != 2 for inc in incidence.values()):
            raise ValueError("not a closed surface: an edge misses two cells")
        adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(self.cells))}
        for (c1, d1), (c2, d2) in incidence.values():
            s = 1 if d1 != d2 else -1
            adj[c1].append((c2, s))
            adj[c2].append((c1, s))
        sign = [0] * len(self.cells)
        orientable = True
        for start in range(len(self.cells)):
            if sign[start]:
                continue
            if start:
                raise ValueError("not a closed surface: cells are disconnected")
            sign[start] = 1
            stack = [start]
            while stack:
                c = stack.pop()
                for d, s in adj[c]:
                    want = s * sign[c]
                    if sign[d] == 0:
                        sign[d] = want
                        stack.append(d)
                    elif sign[d] != want:
                        orientable = False
        return orientable, self.euler_characteristic()

    def surface_type(self) -> tuple[bool, int]:
        return surface_type(self)

    def as_dict(self) -> dict:
        orientable, genus = self.surface_type()
        v, e, t, q = self.f_vector()
        return {
            "n": self.n,
            "part_a": list(self.part_a),
            "part_b": list(self.part_b),
            "cut_vertices": [list(cv) for cv in self.cut_vertices],
            "cells": [list(c) for c in self.cells],
            "f_vector": [v, e, t, q],
            "euler_characteristic": self.euler_characteristic(),
            "surface": {"orientable": orientable, "genus": genus},
        }

    def __repr__(self) -> str:
        v, e, t, q = self.f_vector()
        return f"Slicing(vertices={v}, edges={e}, triangles={t}, quads={q})"


def slicing(K: FacetComplex | CyclicComplex, part_a: Iterable[int]) -> Slicing:
    """Slice a 3-complex along the bipartition (part_a, complement)."""
    return Slicing(K, part_a)


def export_off(K: FacetComplex | CyclicComplex) -> str:
    """OFF text for a pure 2-complex.

    Abstract complexes carry no geometry, so vertices are placed on the unit
    circle in the z = 0 plane, in label order; the combinatorics is what counts.
    """
    K = as_facet_complex(K)
    if K.dim != 2 or not K.is_pure or not K.facets:
        raise ValueError("OFF export needs a nonempty pure 2-complex")
    verts = K.vertices
    pos = {v: i for i, v in enumerate(verts)}
    edges = {e for f in K.facets for e in combinations(f, 2)}
    lines = ["OFF", f"{len(verts)} {len(K.facets)} {len(edges)}"]
    for i, _ in enumerate(verts):
        angle = 2.0 * pi * i / len(verts)
        lines.append(f"{cos(angle):.6f} {sin(angle):.6f} 0.000000")
    for f in K.facets:
        lines.append("3 " + " ".join(str(pos[v]) for v in f))
    return "\n".join(lines) + "\n"
