# test_canonical_order.py
# Tests para el estado del orden canónico, elegibilidad y perfiles

import pytest

from canonical_order import (
    MOUNTAIN_CHAR,
    POCKET_CHAR,
    CaseNotMatched,
    NotEligible,
    OrderingState,
    PreconditionViolated,
    ProblemType,
    RegionKind,
    absorb,
    advance,
    advance_all,
    bridge,
    check_extensible,
    classify,
    consecutive_run,
    decompose_regions,
    edge_char,
    eligible_set,
    is_canonical_ordering,
    is_eligible,
    place_run,
    profile,
    region_vertices,
    select_u,
)
from diagram import ArcDiagram, ArcShape, base_diagram
from graph_core import named_triangulation, random_triangulation


@pytest.fixture
def octahedron():
    return named_triangulation("octahedron")


@pytest.fixture
def start(octahedron):
    return OrderingState.initial(octahedron)


class TestClassify:
    """Tests para la clasificación de vértices problemáticos."""

    @pytest.mark.parametrize("degree,chars,expected", [
        (2, MOUNTAIN_CHAR, ProblemType.T2_M),
        (3, MOUNTAIN_CHAR * 2, ProblemType.T3_MM),
        (4, MOUNTAIN_CHAR * 3, ProblemType.T4_MMM),
        (3, MOUNTAIN_CHAR + POCKET_CHAR, ProblemType.T3_MP),
    ])
    def test_problematic(self, degree, chars, expected):
        assert classify(degree, chars) is expected

    @pytest.mark.parametrize("degree,chars", [
        (2, POCKET_CHAR),
        (3, POCKET_CHAR + MOUNTAIN_CHAR),
        (5, MOUNTAIN_CHAR * 4),
        (3, POCKET_CHAR * 2),
    ])
    def test_not_problematic(self, degree, chars):
        assert classify(degree, chars) is ProblemType.NOT_PROBLEMATIC


class TestOrderingState:
    """Tests para el estado inicial y el avance."""

    def test_initial_triangle(self, start):
        assert start.placed == (1, 2, 3)
        assert start.path == (1, 3, 2)
        assert start.vn == 6
        assert start.v1 == 1 and start.v2 == 2

    def test_initial_rejects_non_face(self, octahedron):
        with pytest.raises(ValueError, match="no es una cara"):
            OrderingState.initial(octahedron, (1, 2, 5))

    def test_eligible_set(self, start):
        assert eligible_set(start) == [4, 5]

    def test_last_vertex_not_eligible_early(self, start):
        assert not is_eligible(start, 6)
        with pytest.raises(NotEligible):
            advance(start, 6)

    def test_advance_replaces_covered_path(self, start):
        s = advance(start, 4)
        assert s.path == (1, 4, 3, 2)
        assert s.i == 4
        assert check_extensible(s)

    def test_path_neighbors_and_cover(self, start):
        assert start.path_neighbors(5) == (3, 2)
        assert start.cover(3, 2) == 5
        assert start.degree_placed(4) == 2

    def test_complete_k4(self):
        g = named_triangulation("k4")
        s = OrderingState.initial(g)
        assert eligible_set(s) == [s.vn]
        s = advance(s, s.vn)
        assert s.is_complete
        assert check_extensible(s)

    def test_region_of_last_vertex(self, start):
        """La región de v_n en el estado inicial contiene al resto de vértices."""
        assert region_vertices(start, 6) == frozenset({4, 5})


class TestCanonicalOrdering:
    """Tests para la verificación de órdenes completos."""

    def test_valid_orders(self, octahedron):
        assert is_canonical_ordering(octahedron, (1, 2, 3, 4, 5, 6))
        assert is_canonical_ordering(octahedron, (1, 2, 3, 5, 4, 6))

    def test_last_vertex_too_early(self, octahedron):
        assert not is_canonical_ordering(octahedron, (1, 2, 3, 6, 4, 5))

    def test_wrong_base(self, octahedron):
        assert not is_canonical_ordering(octahedron, (1, 2, 4, 3, 5, 6))

    def test_greedy_order_on_random(self):
        """Insertar siempre el primer elegible completa un orden canónico."""
        g = random_triangulation(40, seed=11)
        s = OrderingState.initial(g)
        while not s.is_complete:
            s = advance(s, eligible_set(s)[0])
            assert check_extensible(s)
        assert is_canonical_ordering(g, s.placed)


class TestProfile:
    """Tests para perfiles sobre el diagrama parcial."""

    def test_edge_char(self):
        d = base_diagram(1, 2, 3)
        assert edge_char(d, 1, 3) == POCKET_CHAR

    def test_edge_char_rejects_biarc(self):
        d = ArcDiagram((1, 2), {(1, 2): ArcShape.BIARC})
        with pytest.raises(ValueError, match="no es propia"):
            edge_char(d, 1, 2)

    def test_profile_on_base(self, start):
        d = base_diagram(1, 2, 3)
        prof = profile(start, d, 4)
        assert prof.neighbors == (1, 3)
        assert prof.profile == POCKET_CHAR
        assert not prof.is_problematic
        assert prof.pivot == 1

    def test_profile_problematic_mountain(self, start):
        d = ArcDiagram((1, 3, 2), {(1, 3): ArcShape.MOUNTAIN, (2, 3): ArcShape.POCKET,
                                   (1, 2): ArcShape.POCKET})
        prof = profile(start, d, 4)
        assert prof.problem is ProblemType.T2_M
        assert prof.degree == 2

    def test_profile_not_eligible(self, start):
        with pytest.raises(NotEligible):
            profile(start, base_diagram(1, 2, 3), 6)


class TestWorkingStates:
    """Tests para los estados de trabajo de los pasos de varios vértices."""

    def test_advance_all_any_order(self, start):
        s = advance_all(start, [5, 4])
        assert s.placed == (1, 2, 3, 5, 4)
        assert s.path == (1, 4, 5, 2)

    def test_advance_all_stuck(self, start):
        with pytest.raises(CaseNotMatched, match="elegible"):
            advance_all(start, [6])

    def test_consecutive_run(self, start):
        s = advance(start, 4)
        assert consecutive_run(s, 5, 4, 3) == (4, 3, 2)
        assert consecutive_run(s, 5, 3, 2) == (4, 3, 2)

    def test_consecutive_run_not_covering(self, start):
        with pytest.raises(ValueError, match="no cubre"):
            consecutive_run(start, 5, 1, 3)

    def test_consecutive_run_not_a_path_edge(self, start):
        with pytest.raises(ValueError, match="no es una arista del camino"):
            consecutive_run(start, 5, 1, 2)

    def test_place_run_and_bridge(self, start):
        s = place_run(advance(start, 4), 5, (4, 3, 2))
        assert s.path == (1, 4, 5, 2)
        assert s.placed[-1] == 5
        assert bridge(s, 1, 5).path == (1, 5, 2)

    def test_place_run_rejects_gaps(self, start):
        with pytest.raises(ValueError, match="no es consecutivo"):
            place_run(start, 4, (1, 2))
        with pytest.raises(ValueError, match="ya está colocado"):
            place_run(start, 3, (1, 3))

    def test_absorb(self, start):
        s = absorb(start, [3, 4, 5], (1, 4, 5, 2))
        assert s.placed == (1, 2, 3, 4, 5)
        assert s.path == (1, 4, 5, 2)


@pytest.fixture
def all_mountains(start):
    """Camino 1 3 2 con las dos aristas montaña: 4 y 5 son T(2,⌢)."""
    d = ArcDiagram((1, 3, 2), {(1, 3): ArcShape.MOUNTAIN, (2, 3): ArcShape.MOUNTAIN,
                               (1, 2): ArcShape.POCKET})
    return start, d


class TestRegions:
    """Tests para la elección de u y la partición de su región."""

    def test_select_u_requires_all_problematic(self, start):
        with pytest.raises(PreconditionViolated):
            select_u(start, base_diagram(1, 2, 3))

    def test_select_u_on_mountains(self, all_mountains):
        s, d = all_mountains
        assert [profile(s, d, v).pivot_cover for v in (4, 5)] == [6, 4]
        assert select_u(s, d) == 6

    def test_decompose_single_region(self, all_mountains):
        s, d = all_mountains
        (region,) = decompose_regions(s, d, 6)
        assert (region.left, region.right) == (1, 2)
        assert region.vertices == frozenset({4, 5})
        assert region.eligible == (4, 5)
        assert region.kind is RegionKind.LEFT_PIVOT
        assert region.chain == (4, 5)

    def test_u_eligible_after_emptying(self, all_mountains):
        s, d = all_mountains
        emptied = advance_all(s, sorted(region_vertices(s, 6)))
        assert is_eligible(emptied, 6)
        assert emptied.path_neighbors(6) == (1, 4, 5, 2)

    def test_region_properties_on_random(self):
        """Regiones disjuntas que cubren R(u), enlaces pc de la cadena y u elegible al vaciar."""
        from algo_general import TriangulationDrawer

        checked = 0
        for seed in range(6):
            g = random_triangulation(40, seed=seed)
            drawer = TriangulationDrawer(g, enforce=None)
            while not drawer.state.is_complete and drawer.state.i < g.n - 1:
                if drawer.step_default() or drawer.step_degree_two() or drawer.step_same_pivot():
                    continue
                s, d = drawer.state, drawer.diagram
                u = select_u(s, d)
                assert not is_eligible(s, u)
                regions = decompose_regions(s, d, u)
                nbrs = s.path_neighbors(u)
                assert [r.left for r in regions] + [regions[-1].right] == list(nbrs)
                inside = region_vertices(s, u)
                assert frozenset().union(*(r.vertices for r in regions)) == inside
                assert sum(len(r.vertices) for r in regions) == len(inside)
                for r in regions:
                    assert set(r.eligible) <= r.vertices
                    assert r.is_empty == (r.kind in (RegionKind.EMPTY_POCKET, RegionKind.EMPTY_MOUNTAIN))
                    links = (u,) + r.chain
                    for prev, v in zip(links, links[1:]):
                        assert profile(s, d, v).pivot_cover == prev
                emptied = advance_all(s, sorted(inside))
                assert is_eligible(emptied, u)
                around = emptied.path_neighbors(u)
                assert (around[0], around[-1]) == (nbrs[0], nbrs[-1])
                assert set(nbrs) <= set(around)
                checked += 1
                if not drawer.step_stacked_left_pivots(u):
                    drawer.step_process_u(u)
        assert checked > 0


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
