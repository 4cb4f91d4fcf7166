"""Dense and order-l series: criteria, extension, reduction, minimal starts."""

from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffcyc.cycles import CyclicComplex, parse_complex
from diffcyc.series import (
    ClassificationGapError,
    DenseSeriesReport,
    SeriesError,
    SeriesSpec,
    UnitReduction,
    dense_extendable,
    enumerate_dense_series,
    extend_dense,
    extend_order_l,
    link_relabeling,
    minimal_start,
    order_l_admissible,
    reduce_by_unit,
)
from diffcyc.topology import euler_characteristic, is_combinatorial_manifold, link

BOUNDARY_4_SIMPLEX = CyclicComplex([(1, 1, 1, 2)])
TWISTED_9 = parse_complex("{(1:1:2:5),(1:1:5:2),(1:2:1:5)}")
TWISTED_10 = parse_complex("{(1:1:2:6),(1:1:6:2),(1:2:1:6)}")
TORUS_10 = parse_complex("{(1:2:7),(1:7:2)}")

# Growth vectors line up with the sorted canonical cycles of each base.
SPEC_DENSE_9 = SeriesSpec(
    base=TWISTED_9,
    order=1,
    increments=((0, 0, 0, 1), (0, 0, 1, 0), (0, 0, 0, 1)),
)
SPEC_ORDER2_TORUS = SeriesSpec(
    base=TORUS_10,
    order=2,
    increments=((0, 0, 2), (0, 2, 0)),
)
SPEC_ORDER2_13 = SeriesSpec(
    base=parse_complex("{(1:1:2:9),(1:1:9:2),(1:2:1:9)}"),
    order=2,
    increments=((0, 0, 0, 2), (0, 0, 2, 0), (0, 0, 0, 2)),
)
SPEC_ORDER3_TORUS = SeriesSpec(
    base=parse_complex("{(1:3:6),(1:6:3)}"),
    order=3,
    increments=((0, 1, 2), (0, 2, 1)),
)


class TestDenseCriterion:
    def test_twisted_9_passes_with_unit_margins(self):
        report = dense_extendable(TWISTED_9)
        assert report.passes
        assert report.margins == (1, 1, 1)
        assert report.minimal_start
        assert report.k_tilde == 0

    def test_twisted_10_passes_but_is_not_minimal(self):
        report = dense_extendable(TWISTED_10)
        assert report.passes
        assert report.margins == (2, 2, 2)
        assert not report.minimal_start

    def test_boundary_simplex_fails(self):
        report = dense_extendable(BOUNDARY_4_SIMPLEX)
        assert not report.passes
        assert report.margins == (-1,)
        assert not report.minimal_start
        assert report.k_tilde == 1

    def test_failing_complex_breaks_at_k_tilde(self):
        # Margin zero at k=1: the members at the shift and right after it
        # cannot both be manifolds.
        m1 = extend_dense(BOUNDARY_4_SIMPLEX, 1)
        m2 = extend_dense(BOUNDARY_4_SIMPLEX, 2)
        assert not (is_combinatorial_manifold(m1) and is_combinatorial_manifold(m2))
        assert any(
            not is_combinatorial_manifold(extend_dense(BOUNDARY_4_SIMPLEX, k))
            for k in range(1, 6)
        )

    def test_non_manifold_input_refused(self):
        with pytest.raises(SeriesError, match="not a combinatorial 3-manifold"):
            dense_extendable(CyclicComplex([(1, 1, 1, 3)]))

    def test_surface_input_refused(self):
        with pytest.raises(SeriesError, match="dimension"):
            dense_extendable(parse_complex("{(1:2:4),(1:4:2)}"))

    def test_non_complex_input_refused(self):
        with pytest.raises(TypeError):
            dense_extendable(TWISTED_9.expand())


class TestExtendDense:
    def test_known_extension(self):
        assert extend_dense(TWISTED_9, 1) == TWISTED_10

    def test_zero_shift_is_identity(self):
        assert extend_dense(TWISTED_9, 0) is TWISTED_9

    def test_passing_complex_extends_to_manifolds(self):
        for k in range(1, 9):
            assert is_combinatorial_manifold(extend_dense(TWISTED_9, k))

    def test_ambiguous_maximum_refused(self):
        with pytest.raises(SeriesError, match="not unique"):
            extend_dense(CyclicComplex([(2, 5, 2, 5)]), 1)

    def test_negative_shift_refused(self):
        with pytest.raises(SeriesError):
            extend_dense(TWISTED_9, -1)


class TestMinimalStart:
    def test_walks_down_one_step(self):
        k_min, first = minimal_start(TWISTED_10)
        assert (k_min, first) == (1, TWISTED_9)
        assert extend_dense(first, k_min) == TWISTED_10

    def test_already_minimal(self):
        assert minimal_start(TWISTED_9) == (0, TWISTED_9)

    def test_first_member_has_odd_vertex_count(self):
        for m in (TWISTED_9, TWISTED_10, extend_dense(TWISTED_9, 5)):
            _, first = minimal_start(m)
            assert first.n % 2 == 1

    def test_failing_complex_refused(self):
        with pytest.raises(SeriesError, match="dense"):
            minimal_start(BOUNDARY_4_SIMPLEX)


class TestSeriesSpec:
    def test_member_moduli_and_base(self):
        assert SPEC_DENSE_9.member(0) is TWISTED_9
        assert SPEC_DENSE_9.member(1) == TWISTED_10
        for k in range(5):
            assert SPEC_ORDER2_13.member(k).n == 13 + 2 * k

    def test_extend_order_l_is_member(self):
        assert extend_order_l(SPEC_ORDER3_TORUS, 2) == SPEC_ORDER3_TORUS.member(2)

    def test_validation(self):
        with pytest.raises(SeriesError, match="increment vectors"):
            SeriesSpec(base=TWISTED_9, order=1, increments=((0, 0, 0, 1),))
        with pytest.raises(SeriesError, match="does not fit"):
            SeriesSpec(base=TORUS_10, order=1, increments=((0, 0, 0, 1), (0, 0, 1)))
        with pytest.raises(SeriesError, match="sum to"):
            SeriesSpec(base=TORUS_10, order=2, increments=((0, 0, 2), (0, 1, 0)))
        with pytest.raises(SeriesError, match="nonnegative"):
            SeriesSpec(base=TORUS_10, order=1, increments=((0, -1, 2), (0, 0, 1)))
        with pytest.raises(SeriesError, match="order"):
            SeriesSpec(base=TORUS_10, order=0, increments=((0, 0, 0), (0, 0, 0)))
        with pytest.raises(SeriesError, match="nonempty"):
            SeriesSpec(base=CyclicComplex(n=5), order=1, increments=())
        with pytest.raises(SeriesError, match="nonnegative integer"):
            SPEC_DENSE_9.member(-2)

    def test_serialization_round_trip(self):
        data = json.loads(json.dumps(SPEC_ORDER2_13.as_dict()))
        assert SeriesSpec.from_dict(data) == SPEC_ORDER2_13
        assert data["l"] == 2


class TestOrderLAdmissible:
    def test_dense_single_cycle_example(self):
        spec = SeriesSpec(
            base=CyclicComplex([(1, 1, 2, 5)]), order=1, increments=((0, 0, 0, 1),)
        )
        assert order_l_admissible(spec)
        assert spec.member(1) == CyclicComplex([(1, 1, 2, 6)])

    def test_large_entry_on_quarter_boundary_fails(self):
        # 5*11 = 55 misses the lower bound 4*14 = 56, so growth 4 on the
        # largest entry of (1:1:1:11) is not certified.
        spec = SeriesSpec(
            base=CyclicComplex([(1, 1, 1, 11)]), order=4, increments=((0, 0, 0, 4),)
        )
        assert not order_l_admissible(spec)

    def test_exact_boundary_fails(self):
        # 3*3 equals 1*9: the strict inequality rules the spec out.
        spec = SeriesSpec(
            base=CyclicComplex([(1, 3, 5)]), order=2, increments=((0, 1, 1),)
        )
        assert not order_l_admissible(spec)

    def test_admissible_fixtures(self):
        for spec in (SPEC_DENSE_9, SPEC_ORDER2_TORUS, SPEC_ORDER2_13, SPEC_ORDER3_TORUS):
            assert order_l_admissible(spec)

    def test_admissible_members_are_manifolds(self):
        for spec in (SPEC_ORDER2_TORUS, SPEC_ORDER2_13, SPEC_ORDER3_TORUS):
            assert is_combinatorial_manifold(spec.base)
            for k in range(6):
                assert is_combinatorial_manifold(spec.member(k))

    def test_order2_torus_members_stay_tori(self):
        for k in range(6):
            member = SPEC_ORDER2_TORUS.member(k)
            assert member.n == 10 + 2 * k
            assert euler_characteristic(member.expand()) == 0


class TestLinkRelabeling:
    @pytest.mark.parametrize(
        "spec", [SPEC_DENSE_9, SPEC_ORDER2_TORUS, SPEC_ORDER2_13, SPEC_ORDER3_TORUS]
    )
    def test_maps_link_facet_for_facet(self, spec):
        for k in (1, 2, 4):
            vmap = link_relabeling(spec, k)
            mapped = {
                tuple(sorted(vmap[v] for v in f))
                for f in link(spec.base, 0).facets
            }
            assert mapped == set(link(spec.member(k), 0).facets)

    def test_dense_map_shifts_upper_half(self):
        vmap = link_relabeling(SPEC_DENSE_9, 3)
        assert vmap[4] == 4
        assert vmap[5] == 8
        assert vmap[8] == 11


class TestReduceByUnit:
    def test_order1_is_its_own_reduction(self):
        red = reduce_by_unit(SPEC_DENSE_9)
        assert red == UnitReduction(dense=SPEC_DENSE_9, k0=0)

    def test_even_modulus_order2_not_applicable(self):
        assert reduce_by_unit(SPEC_ORDER2_TORUS) is None

    def test_order3_torus_reduces_immediately(self):
        red = reduce_by_unit(SPEC_ORDER3_TORUS)
        assert red is not None
        assert red.k0 == 0
        assert red.dense.order == 1
        assert red.dense.base == TORUS_10
        for t in range(4):
            assert (
                SPEC_ORDER3_TORUS.member(red.k0 + t).multiply(3)
                == red.dense.member(3 * t)
            )

    def test_order2_on_13_reduces_at_k0_2(self):
        red = reduce_by_unit(SPEC_ORDER2_13)
        assert red is not None
        assert red.k0 == 2
        assert red.dense.base == parse_complex("{(2:2:4:9),(2:2:9:4),(2:4:2:9)}")
        assert dense_extendable(red.dense.base).passes
        for t in range(4):
            assert (
                SPEC_ORDER2_13.member(red.k0 + t).multiply(2)
                == red.dense.member(2 * t)
            )


class _Store:
    def __init__(self, data):
        self._data = data

    def has(self, n):
        return n in self._data

    def representatives(self, n):
        return self._data[n]


class TestEnumerateDenseSeries:
    def test_boundary_simplex_alone_counts_nothing(self):
        count, bases = enumerate_dense_series(_Store({5: [BOUNDARY_4_SIMPLEX]}), 5)
        assert (count, bases) == (0, [])

    def test_missing_data_reported(self):
        store = _Store({5: [BOUNDARY_4_SIMPLEX], 7: []})
        with pytest.raises(ClassificationGapError) as err:
            enumerate_dense_series(store, 8)
        assert err.value.missing == (6, 8)

    def test_counts_minimal_starts(self):
        store = _Store(
            {5: [BOUNDARY_4_SIMPLEX], 6: [], 7: [], 8: [], 9: [TWISTED_9], 10: [TWISTED_10]}
        )
        count, bases = enumerate_dense_series(store, 10)
        assert count == 1
        assert bases == [TWISTED_9]


@st.composite
def series_specs(draw):
    n = draw(st.integers(min_value=8, max_value=18))
    d = draw(st.sampled_from([2, 3]))
    order = draw(st.integers(min_value=1, max_value=3))
    cycles = []
    for _ in range(draw(st.integers(min_value=1, max_value=3))):
        cuts = sorted(draw(st.permutations(range(1, n)))[:d])
        parts = [b - a for a, b in zip([0] + cuts, cuts + [n])]
        cycles.append(tuple(parts))
    base = CyclicComplex(cycles)
    increments = []
    for c in base.cycles:
        vec = [0] * len(c.parts)
        for pos in draw(st.lists(st.integers(0, d), min_size=order, max_size=order)):
            vec[pos] += 1
        increments.append(tuple(vec))
    return SeriesSpec(base=base, order=order, increments=tuple(increments))


@settings(max_examples=60, deadline=None)
@given(series_specs())
def test_spec_round_trip_and_member_moduli(spec):
    assert SeriesSpec.from_dict(json.loads(json.dumps(spec.as_dict()))) == spec
    for k in range(4):
        assert spec.member(k).n == spec.n + spec.order * k
