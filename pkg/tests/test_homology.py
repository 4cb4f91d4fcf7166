"""Homology, orientability, and neighborliness against independent oracles."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from diffcyc.cycles import CyclicComplex, FacetComplex, parse_complex
from diffcyc.homology import (
    HomologyGroups,
    boundary_matrix,
    chain_faces,
    homology,
    is_2_neighborly,
    is_orientable,
)

from oracles import brute_cycles, downward_closure


def _oracle_homology(facets) -> HomologyGroups:
    """Independent pipeline: own chain groups and signs, sympy ranks and SNF."""
    faces = sorted(downward_closure(facets), key=lambda f: (len(f), sorted(f)))
    by_dim: dict[int, list[tuple[int, ...]]] = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(tuple(sorted(f)))
    d = max(by_dim)
    mats = {}
    for k in range(1, d + 1):
        rows = {f: i for i, f in enumerate(by_dim[k - 1])}
        m = [[0] * len(by_dim[k]) for _ in rows]
        for col, f in enumerate(by_dim[k]):
            for i in range(len(f)):
                m[rows[f[:i] + f[i + 1 :]]][col] = (-1) ** i
        mats[k] = Matrix(m)
    ranks = {0: 0, d + 1: 0}
    torsion = {}
    for k in range(1, d + 1):
        ranks[k] = mats[k].rank()
        snf = sympy_snf(mats[k], domain=ZZ)
        diag = [abs(snf[i, i]) for i in range(min(snf.rows, snf.cols))]
        torsion[k - 1] = tuple(t for t in diag if t > 1)
    torsion[d] = ()
    betti = tuple(len(by_dim[k]) - ranks[k] - ranks[k + 1] for k in range(d + 1))
    return HomologyGroups(betti, tuple(torsion[k] for k in range(d + 1)))


def test_boundary_of_boundary_is_zero():
    C = parse_complex("{(1:1:2:5),(1:1:5:2),(1:2:1:5)}")
    d2 = Matrix(boundary_matrix(C, 2))
    d3 = Matrix(boundary_matrix(C, 3))
    assert (d2 * d3).is_zero_matrix


def test_boundary_matrix_frozen():
    C = CyclicComplex([(1, 1, 1, 2)])
    assert Matrix(boundary_matrix(C, 3)).rank() == 4
    with pytest.raises(ValueError):
        boundary_matrix(C, 0)
    with pytest.raises(ValueError):
        boundary_matrix(C, 4)


def test_homology_frozen_fixtures():
    sphere = homology(CyclicComplex([(1, 1, 1, 2)]))
    assert sphere == HomologyGroups((1, 0, 0, 1), ((), (), (), ()))
    assert str(sphere) == "(Z, 0, 0, Z)"

    twisted = homology(parse_complex("{(1:1:2:5),(1:1:5:2),(1:2:1:5)}"))
    assert twisted == HomologyGroups((1, 1, 0, 0), ((), (), (2,), ()))
    assert str(twisted) == "(Z, Z, Z_2, 0)"
    assert twisted.as_dict() == {
        "betti": [1, 1, 0, 0],
        "torsion": [[], [], [2], []],
    }

    product = homology(parse_complex("{(1:1:2:6),(1:1:6:2),(1:2:1:6)}"))
    assert product.betti == (1, 1, 1, 1)
    assert all(t == () for t in product.torsion)

    torus3 = homology(
        parse_complex("{(1:2:4:8),(1:2:8:4),(1:4:2:8),(1:4:8:2),(1:8:2:4),(1:8:4:2)}")
    )
    assert torus3 == HomologyGroups((1, 3, 3, 1), ((), (), (), ()))

    connected_sum = homology(
        parse_complex("{(1:2:3:6),(1:2:4:5),(1:5:1:5),(2:2:2:6),(2:3:3:4)}")
    )
    assert connected_sum == HomologyGroups((1, 2, 2, 1), ((), (), (), ()))


def test_homology_empty_and_lowdim():
    assert homology(FacetComplex(3, ())) == HomologyGroups((), ())
    point = homology(FacetComplex(1, [(0,)]))
    assert point == HomologyGroups((1,), ((),))
    two_points = homology(FacetComplex(2, [(0,), (1,)]))
    assert two_points.betti == (2,)
    circle = homology(CyclicComplex([(1, 2)]))
    assert circle == HomologyGroups((1, 1), ((), ()))


@given(st.data())
@settings(max_examples=15, deadline=None)
def test_homology_matches_independent_oracle(data):
    n = data.draw(st.integers(5, 9))
    pool = brute_cycles(n, d=3)
    k = data.draw(st.integers(1, 2))
    cycles = data.draw(st.permutations(pool))[:k]
    C = CyclicComplex(cycles)
    assert homology(C) == _oracle_homology(C.expand().facets)


def test_homology_on_impure_complex():
    K = FacetComplex(6, [(0, 1, 2), (2, 3), (3, 4), (4, 0), (5,)])
    assert homology(K) == _oracle_homology(K.facets)
    # a triangle with a pendant loop back to it: circle up to homotopy, plus a point
    assert homology(K).betti == (2, 1, 0)


def test_chain_faces_counts():
    faces = chain_faces(CyclicComplex([(1, 1, 1, 2)]))
    assert [len(g) for g in faces] == [5, 10, 10, 5]


def test_orientability():
    assert is_orientable(CyclicComplex([(1, 1, 1, 2)]))
    assert not is_orientable(parse_complex("{(1:1:2:5),(1:1:5:2),(1:2:1:5)}"))
    assert is_orientable(parse_complex("{(1:1:2:6),(1:1:6:2),(1:2:1:6)}"))
    with pytest.raises(ValueError):
        is_orientable(FacetComplex(4, [(0, 1, 2, 3)]))  # has boundary
    with pytest.raises(ValueError):
        is_orientable(parse_complex("{(2:2:2:2)}"))  # disconnected


def test_orientable_iff_top_betti_one():
    for text in [
        "{(1:1:1:2)}",
        "{(1:1:2:5),(1:1:5:2),(1:2:1:5)}",
        "{(1:1:2:6),(1:1:6:2),(1:2:1:6)}",
        "{(1:2:3:6),(1:2:4:5),(1:5:1:5),(2:2:2:6),(2:3:3:4)}",
    ]:
        C = parse_complex(text)
        h = homology(C)
        assert is_orientable(C) == (h.betti[-1] == 1)


def test_is_2_neighborly():
    assert is_2_neighborly(CyclicComplex([(1, 1, 1, 2)]))
    assert not is_2_neighborly(parse_complex("{(2:2:2:2)}"))
    assert is_2_neighborly(parse_complex("{(1:1:2:5),(1:1:5:2),(1:2:1:5)}"))
