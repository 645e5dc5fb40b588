# test_algo_general.py
# Tests para el dibujo de triangulaciones generales

import random
import time
from fractions import Fraction

import pytest

import algo_general
from algo_general import (
    LAST_MODES,
    TriangulationDrawer,
    candidate_moves,
    draw_triangulation,
    general_bound,
    ledger_bound,
)
from canonical_order import CaseNotMatched, OrderingState, bridge, is_canonical_ordering
from diagram import ArcShape, BoundExceeded, DiagramContext, InvalidChi, base_diagram, validate
from graph_core import PlaneTriangulation, named_triangulation, random_triangulation
from region_steps import Workspace, last_vertex_recipes


@pytest.fixture
def octahedron():
    return named_triangulation("octahedron")


class TestBounds:
    """Tests para las cotas analíticas."""

    @pytest.mark.parametrize("n,expected", [(3, 0), (4, 1), (6, 2), (10, 6), (100, 78)])
    def test_general_bound(self, n, expected):
        assert general_bound(n) == expected

    def test_ledger_bound(self):
        assert ledger_bound(10, Fraction(1, 5)) == Fraction(32, 5)
        assert ledger_bound(3, Fraction(1, 5)) == Fraction(4, 5)


class TestCandidateMoves:
    """Tests para el cálculo del gasto de cada inserción."""

    def test_pocket_move_on_base(self, octahedron):
        s = OrderingState.initial(octahedron)
        d = base_diagram(*s.placed)
        moves = candidate_moves(d, s, 4, Fraction(1, 5))
        assert len(moves) == 1
        move = moves[0]
        assert move.kind == "pocket"
        assert move.new_biarcs == 0
        # dos bolsillos nuevos en P∘ (2χ) menos el bolsillo cubierto (χ)
        assert move.spend == Fraction(1, 5)


class TestDrawTriangulation:
    """Tests para draw_triangulation."""

    def test_k4(self):
        result = draw_triangulation(named_triangulation("k4"))
        assert result.passed
        assert result.biarcs <= 1
        assert len(result.diagram.vertices) == 4

    def test_octahedron(self, octahedron):
        result = draw_triangulation(octahedron)
        assert result.passed
        assert result.biarcs <= 2
        assert result.bound == 2

    def test_icosahedron(self):
        g = named_triangulation("icosahedron")
        result = draw_triangulation(g)
        assert result.biarcs <= general_bound(12)
        assert set(result.diagram.edges) == set(g.edges)

    def test_triangle(self):
        g = PlaneTriangulation({1: [3, 2], 2: [1, 3], 3: [2, 1]}, (1, 2, 3))
        result = draw_triangulation(g)
        assert result.biarcs == 0
        assert len(result.diagram.edges) == 3

    def test_order_is_canonical(self, octahedron):
        result = draw_triangulation(octahedron)
        assert is_canonical_ordering(octahedron, result.order)

    def test_final_diagram_validates(self):
        g = random_triangulation(30, seed=5)
        result = draw_triangulation(g)
        assert validate(result.diagram, DiagramContext.final(g.edges)).passed

    @pytest.mark.parametrize("seed", range(8))
    def test_random_within_bound(self, seed):
        g = random_triangulation(25 + seed * 5, seed=seed)
        result = draw_triangulation(g)
        assert result.passed
        assert result.biarcs <= general_bound(g.n)

    def test_ledger_recorded(self, octahedron):
        result = draw_triangulation(octahedron)
        assert result.trace()[0].startswith("STEP kind=init")
        assert result.notes["ledger_bound"] == ledger_bound(6, Fraction(1, 5))

    def test_audit_mode(self, octahedron):
        assert draw_triangulation(octahedron, audit=True).passed

    @pytest.mark.parametrize("mode", LAST_MODES)
    def test_last_modes(self, octahedron, mode):
        result = draw_triangulation(octahedron, last_mode=mode)
        assert result.report.passed

    def test_other_outer_face(self, octahedron):
        face = next(f for f in octahedron.faces if set(f) != set(octahedron.outer_face))
        result = draw_triangulation(octahedron, outer=face)
        assert result.passed

    def test_smaller_chi(self, octahedron):
        result = draw_triangulation(octahedron, chi=Fraction(1, 10))
        assert result.report.passed

    def test_deterministic(self):
        g = random_triangulation(40, seed=2)
        a, b = draw_triangulation(g), draw_triangulation(g)
        assert a.diagram.spine == b.diagram.spine

    def test_invalid_chi(self, octahedron):
        with pytest.raises(InvalidChi):
            draw_triangulation(octahedron, chi="1/3")

    def test_invalid_last_mode(self, octahedron):
        with pytest.raises(ValueError, match="modo desconocido"):
            draw_triangulation(octahedron, last_mode="greedy")



class TestLedgerBound:
    """Tests para la cota acumulada del libro de créditos."""

    @pytest.mark.parametrize("seed", range(12))
    def test_total_within_ledger_bound(self, seed):
        g = random_triangulation(10 + seed * 17, seed=100 + seed)
        result = draw_triangulation(g)
        assert result.notes["ledger_total"] <= result.notes["ledger_bound"]
        assert result.biarcs <= general_bound(g.n)

    def test_total_over_bound_raises(self, octahedron, monkeypatch):
        monkeypatch.setattr(algo_general, "ledger_bound", lambda n, chi: Fraction(-1))
        with pytest.raises(BoundExceeded, match="Coste total"):
            draw_triangulation(octahedron)

    def test_bound_exceeded_is_value_error(self, octahedron, monkeypatch):
        monkeypatch.setattr(algo_general, "ledger_bound", lambda n, chi: Fraction(-1))
        with pytest.raises(ValueError):
            draw_triangulation(octahedron)

    def test_unenforced_drawer_only_records(self, octahedron, monkeypatch):
        monkeypatch.setattr(algo_general, "ledger_bound", lambda n, chi: Fraction(-1))
        result = TriangulationDrawer(octahedron, enforce=None).run()
        assert result.passed
        assert result.notes["ledger_total"] > result.notes["ledger_bound"]

    def test_enforce_modes(self, octahedron):
        assert TriangulationDrawer(octahedron).ledger.enforce == "cumulative"
        assert TriangulationDrawer(octahedron, strict=True).ledger.enforce == "step"


class TestWorkspace:
    """Tests para las construcciones sobre el estado de trabajo."""

    @pytest.fixture
    def drawer(self, octahedron):
        return TriangulationDrawer(octahedron)

    def test_pocket_insertion(self, drawer):
        ws = Workspace(drawer, drawer.diagram, drawer.state)
        ws.pocket(4, 1, 3)
        assert ws.s.path == (1, 4, 3, 2)
        assert ws.inserted == [4]
        assert ws.d.shape(1, 4) is ArcShape.POCKET
        assert ws.d.shape(3, 4) is ArcShape.POCKET
        # el estado del dibujante no cambia
        assert drawer.state.path == (1, 3, 2)

    def test_right_end_completes_mainadapt(self, drawer):
        ws = Workspace(drawer, drawer.diagram, drawer.state)
        ws.pocket(4, 1, 3)
        ws.pocket(5, 3, 2)
        assert ws.s.path == (1, 4, 5, 2)
        ws.place_right_end(6, ws.s.path)
        assert ws.final_mode == "mainadapt"
        assert ws.d.spine[-1] == 6
        cand = drawer._evaluate("right-end", ws, lambda t, end: Fraction(1))
        assert cand.state.is_complete
        assert cand.context.outer == (1, 2, 6)

    def test_evaluate_rejects_wrong_path(self, drawer):
        ws = Workspace(drawer, drawer.diagram, drawer.state)
        ws.pocket(4, 1, 3)
        ws.s = bridge(ws.s, 1, 3)
        with pytest.raises(CaseNotMatched, match="camino de trabajo"):
            drawer._evaluate("broken", ws, lambda t, end: Fraction(1))

    def test_add_rejects_non_edge(self, drawer):
        ws = Workspace(drawer, drawer.diagram, drawer.state)
        with pytest.raises(CaseNotMatched, match="no es una arista"):
            ws.add(1, 6, ArcShape.MOUNTAIN)

    def test_step_over_limit_is_rejected(self, drawer):
        """Con require_limit una construcción por encima de su cota no se liquida."""
        recipes = [("pocket", lambda ws: ws.pocket(4, 1, 3))]
        assert not drawer._decide("default", recipes, lambda t, end: Fraction(-1), require_limit=True)
        assert drawer.state.path == (1, 3, 2)
        assert len(drawer.ledger.steps) == 1
        assert drawer._decide("default", recipes, lambda t, end: Fraction(1), require_limit=True)
        assert drawer.state.path == (1, 4, 3, 2)
        assert drawer.ledger.steps[-1].kind == "default"


class TestSubDiagrams:
    """Tests para los subdibujos recursivos."""

    @pytest.fixture
    def drawer(self, octahedron):
        return TriangulationDrawer(octahedron)

    def test_mainadapt_sub_diagram(self, drawer):
        d, order, virtual = drawer.sub_diagram((1, 2, 6), frozenset({3, 4, 5}), (1, 2, 6), "mainadapt")
        assert set(d.vertices) == {1, 2, 3, 4, 5, 6}
        assert d.spine[-1] == 6
        assert virtual == frozenset()
        assert is_canonical_ordering(drawer.graph, order)

    def test_mainstrong_stops_before_last(self, drawer):
        _, order, _ = drawer.sub_diagram((1, 2, 6), frozenset({3, 4, 5}), (1, 2, 6), "mainstrong")
        assert len(order) == 5
        assert 6 not in order

    def test_sub_diagram_cached(self, drawer):
        args = ((1, 2, 6), frozenset({3, 4, 5}), (1, 2, 6), "mainadapt")
        assert drawer.sub_diagram(*args) is drawer.sub_diagram(*args)

    def test_failure_cached(self, drawer):
        args = ((1, 2, 6), frozenset({4}), (1, 2, 6), "main")
        with pytest.raises(CaseNotMatched, match="subdibujo"):
            drawer.sub_diagram(*args)
        with pytest.raises(CaseNotMatched, match="ya descartado"):
            drawer.sub_diagram(*args)

    def test_unknown_mode(self, drawer):
        with pytest.raises(ValueError, match="modo de subdibujo"):
            drawer.sub_diagram((1, 2, 6), frozenset({3, 4, 5}), (1, 2, 6), "weak")


class TestLastVertex:
    """Tests para la inserción de v_n."""

    def test_mainadapt_puts_vn_at_right_end(self):
        g = named_triangulation("k4")
        vn = g.outer_face[2]
        result = draw_triangulation(g, last_mode="mainadapt")
        d = result.diagram
        assert d.spine[-1] == vn
        assert all(d.shape(vn, x) is ArcShape.MOUNTAIN for x in g.neighbors(vn))

    def test_extensible_without_new_biarcs(self):
        result = draw_triangulation(named_triangulation("k4"), last_mode="extensible")
        assert result.biarcs == 0
        assert result.trace()[-1].startswith("STEP kind=last-vertex")

    def test_requires_i_n_minus_one(self, octahedron):
        with pytest.raises(ValueError, match="requiere i = n-1"):
            TriangulationDrawer(octahedron).insert_last_vertex()

    def test_recipes_by_mode(self):
        drawer = TriangulationDrawer(named_triangulation("k4"))
        s, d = drawer.state, drawer.diagram
        labels = [label for label, _ in last_vertex_recipes(s, d, "mainadapt")]
        assert labels == ["right-end"]
        assert "right-end" not in [label for label, _ in last_vertex_recipes(s, d, "extensible")]

class TestRegionSteps:
    """Tests para los pasos de varios vértices sobre triangulaciones aleatorias."""

    @pytest.fixture(scope="class")
    def results(self):
        return [draw_triangulation(random_triangulation(60, seed=seed), audit=True) for seed in range(6)]

    def test_pivot_steps_respect_their_limit(self, results):
        """Los pasos de pivote solo se liquidan dentro de su cota."""
        for result in results:
            for step in result.ledger.steps:
                if step.kind in ("degree-two-pivot", "same-pivot", "stacked-left-pivots"):
                    assert step.limit is not None
                    assert step.within_limit

    def test_region_steps_limits(self, results):
        """process-u admite (1-χ) por vértice, más 2χ si deja v_n extensible."""
        kinds = {step.kind for result in results for step in result.ledger.steps}
        assert kinds & {"process-u", "stacked-left-pivots"}
        for result in results:
            chi = result.ledger.chi
            for step in result.ledger.steps:
                if step.kind == "process-u":
                    base = (1 - chi) * len(step.vertices)
                    assert step.limit in (base, base + 2 * chi)

    def test_every_vertex_recorded_once(self, results):
        for result in results:
            seen = [v for step in result.ledger.steps for v in step.vertices]
            assert sorted(seen) == sorted(result.diagram.vertices)


class TestSweep:
    """Tests de tiempo sobre lotes de triangulaciones aleatorias."""

    def test_batch_time(self):
        """50 instancias con n en [10, 300] al ritmo de 500 en 60 s."""
        rng = random.Random(2024)
        start = time.perf_counter()
        for k in range(50):
            g = random_triangulation(rng.randint(10, 300), seed=k)
            assert draw_triangulation(g).passed
        assert time.perf_counter() - start < 6.0


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
