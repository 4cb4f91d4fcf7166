"""Edge-path presentations, simplification, abelianization, and export."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffcyc.cycles import CyclicComplex, FacetComplex, parse_complex
from diffcyc.groups import (
    AbelianInvariants,
    GroupPresentation,
    abelianization,
    export_presentation,
    fundamental_group,
    parse_presentation,
    tietze_simplify,
)
from diffcyc.homology import homology

from oracles import brute_cycles


def test_boundary_simplex_gives_trivial_group():
    P = fundamental_group(CyclicComplex([(1, 1, 1, 2)]))
    assert P.is_trivial_presentation()
    assert P.ngens == 0 and P.relators == ()
    assert export_presentation(P) == "F := FreeGroup(0); G := F / [ ];"


def test_circle_gives_free_group_of_rank_one():
    P = fundamental_group(CyclicComplex([(1, 2)]))
    assert P.ngens == 1 and P.relators == ()
    assert abelianization(P) == AbelianInvariants(1, ())


def test_torus_group_abelianization():
    P = fundamental_group(parse_complex("{(1:2:4),(1:4:2)}"))
    assert abelianization(P) == AbelianInvariants(2, ())


def test_twisted_product_abelianization():
    C = parse_complex("{(1:1:2:5),(1:1:5:2),(1:2:1:5)}")
    P = fundamental_group(C, simplify=False)
    ab = abelianization(P)
    h = homology(C)
    assert (ab.rank, ab.torsion) == (h.betti[1], h.torsion[1])
    assert ab == AbelianInvariants(1, ())


def test_unsimplified_presentation_shape():
    C = CyclicComplex([(1, 1, 1, 2)])
    P = fundamental_group(C, simplify=False)
    # complete graph on 5 vertices: 10 edges, 4 tree edges, 6 generators
    assert P.ngens == 6
    assert len(P.relators) > 0


@given(st.data())
@settings(max_examples=20, deadline=None)
def test_abelianization_invariant_under_tietze(data):
    n = data.draw(st.integers(5, 9))
    pool = brute_cycles(n, d=3)
    C = CyclicComplex(data.draw(st.permutations(pool))[:2])
    K = C.expand()
    from diffcyc.topology import is_connected

    if not is_connected(K):
        return
    raw = fundamental_group(K, simplify=False)
    simp = tietze_simplify(raw, budget=2000)
    assert abelianization(raw) == abelianization(simp)


@given(st.data())
@settings(max_examples=20, deadline=None)
def test_abelianization_matches_first_homology(data):
    n = data.draw(st.integers(5, 10))
    pool = brute_cycles(n, d=3)
    C = CyclicComplex(data.draw(st.permutations(pool))[:2])
    K = C.expand()
    from diffcyc.topology import is_connected

    if not is_connected(K):
        return
    ab = abelianization(fundamental_group(K, simplify=False))
    h = homology(K)
    assert ab.rank == h.betti[1]
    assert ab.torsion == h.torsion[1]


def test_disconnected_complex_rejected():
    with pytest.raises(ValueError):
        fundamental_group(parse_complex("{(2:2:2:2)}"))
    with pytest.raises(ValueError):
        fundamental_group(FacetComplex(3, ()))


def test_presentation_validation():
    with pytest.raises(ValueError):
        GroupPresentation(-1)
    with pytest.raises(ValueError):
        GroupPresentation(2, [(0,)])
    with pytest.raises(ValueError):
        GroupPresentation(2, [(3,)])
    P = GroupPresentation(2, [(1, -1), (2, 1)])
    assert P.relators == ((2, 1),)  # (1, -1) reduces away; words keep their letters


def test_simplify_kills_inverse_pair_relators():
    P = GroupPresentation(2, [(1, 2), (-2, -1)])
    S = tietze_simplify(P)
    assert S.ngens == 1 and S.relators == ()


def test_export_and_parse_round_trip():
    P = GroupPresentation(3, [(1, 1, 1), (2, -3, 2), (1, -2)])
    text = export_presentation(P)
    assert "FreeGroup(3)" in text
    assert parse_presentation(text) == P
    assert parse_presentation("F := FreeGroup(1); G := F / [ F.1^3 ];") == (
        GroupPresentation(1, [(1, 1, 1)])
    )
    assert parse_presentation(str(GroupPresentation(0, ()))) == GroupPresentation(0, ())


@given(
    st.integers(1, 4).flatmap(
        lambda n: st.lists(
            st.lists(
                st.integers(-n, n).filter(lambda g: g != 0), min_size=1, max_size=6
            ).map(tuple),
            max_size=4,
        ).map(lambda rels: GroupPresentation(n, rels))
    )
)
@settings(max_examples=60, deadline=None)
def test_round_trip_random_presentations(P):
    assert parse_presentation(export_presentation(P)) == P


def test_parse_presentation_errors():
    with pytest.raises(ValueError):
        parse_presentation("G := F / [ F.1 ];")
    with pytest.raises(ValueError):
        parse_presentation("F := FreeGroup(1); G := F / [ F.2 ];")
    with pytest.raises(ValueError):
        parse_presentation("F := FreeGroup(1); G := F / [ F.1??? ];")


def test_abelianization_frozen_cases():
    assert str(AbelianInvariants(0, ())) == "0"
    assert str(AbelianInvariants(1, (3,))) == "Z + Z_3"
    assert str(AbelianInvariants(2, ())) == "Z^2"
    # Z_6 presented two ways
    assert abelianization(GroupPresentation(1, [(1,) * 6])) == AbelianInvariants(0, (6,))
    assert abelianization(
        GroupPresentation(2, [(1, 1), (2, 2, 2), (1, 2, -1, -2)])
    ) == AbelianInvariants(0, (6,))
