# test_diagram.py
# Tests para el modelo de diagramas de arcos, primitivas, créditos y validación

import random
from fractions import Fraction

import pytest

from diagram import (
    ArcDiagram,
    ArcShape,
    BoundaryMismatch,
    BoundExceeded,
    CreditLedger,
    Crossing,
    DiagramContext,
    DiagramFormatError,
    DrawResult,
    InvalidChi,
    NotAMountain,
    NotAPocket,
    Page,
    ValidityReport,
    WouldCross,
    add_arc,
    add_biarcs,
    base_diagram,
    check_bound,
    drop_edges,
    envelope,
    envelope_vertices,
    expected_chain,
    face_at_gap,
    find_crossing,
    format_arc,
    gap_after,
    gaps_by_face,
    geometric_crossings,
    innermost_arcs,
    insert_vertex,
    insert_vertex_in_pocket,
    is_planar,
    parse_arc,
    plug_into_face,
    plug_subdiagram,
    push_all,
    push_down,
    redraw_as_biarc,
    required_credits,
    rotate_pi,
    validate,
    validate_chi,
)

M, P, B = ArcShape.MOUNTAIN, ArcShape.POCKET, ArcShape.BIARC


# -----------------------------
# Fixtures
# -----------------------------
@pytest.fixture
def triangle():
    """Lomo 1 2 3 con 13 montaña y 12, 23 bolsillos."""
    return ArcDiagram((1, 2, 3), {(1, 3): M, (1, 2): P, (2, 3): P})


@pytest.fixture
def fan():
    """Lomo 1 2 3 con 12 y 13 montañas desde el mismo extremo izquierdo."""
    return ArcDiagram((1, 2, 3), {(1, 2): M, (1, 3): M, (2, 3): P})


def _random_diagram(rng: random.Random) -> ArcDiagram:
    """Diagrama arbitrario (planar o no): aristas al azar con cruces en posiciones al azar."""
    k = rng.randint(2, 9)
    spine = list(range(1, k + 1))
    pairs = [(a, b) for a in spine for b in spine if a < b]
    shapes = {}
    for e in rng.sample(pairs, rng.randint(1, len(pairs))):
        shape = rng.choice((M, P, B))
        shapes[e] = shape
        if shape is B:
            lo, hi = spine.index(e[0]), spine.index(e[1])
            spine.insert(rng.randint(lo + 1, hi), Crossing(*e))
    return ArcDiagram(tuple(spine), shapes)


class TestArcDiagram:
    """Tests para el modelo de datos."""

    def test_counts(self, triangle):
        assert triangle.vertices == (1, 2, 3)
        assert triangle.edges == ((1, 2), (1, 3), (2, 3))
        assert triangle.biarc_count == 0
        assert triangle.crossing_count == 0

    def test_crossing_normalizes_edge(self):
        assert Crossing(5, 2) == Crossing(2, 5)
        assert str(Crossing(5, 2)) == "x:2-5"

    def test_shape_lookup_is_symmetric(self, triangle):
        assert triangle.shape(3, 1) is M
        assert triangle.shape(1, 4) is None

    def test_half_arcs_of_biarc(self):
        d = ArcDiagram((1, Crossing(1, 2), 2), {(1, 2): B})
        halves = sorted(d.half_arcs(), key=lambda h: h.left)
        assert [(h.left, h.right, h.page) for h in halves] == [(0, 1, Page.LOWER), (1, 2, Page.UPPER)]

    def test_biarc_without_crossing(self):
        d = ArcDiagram((1, 2), {(1, 2): B})
        with pytest.raises(DiagramFormatError, match="sin cruce"):
            d.half_arcs()

    def test_shape_kinds(self):
        assert M.is_proper and P.is_proper
        assert B.is_biarc and ArcShape.BIARC_UP_DOWN.is_biarc


class TestPlanarity:
    """Tests para la detección de cruces."""

    def test_interleaved_mountains_cross(self):
        d = ArcDiagram((1, 2, 3, 4), {(1, 3): M, (2, 4): M})
        assert not is_planar(d)
        assert find_crossing(d)[2] is Page.UPPER
        assert geometric_crossings(d) == [((1, 3), (2, 4))] or geometric_crossings(d) == [((2, 4), (1, 3))]

    def test_nested_mountains_planar(self):
        d = ArcDiagram((1, 2, 3, 4), {(1, 4): M, (2, 3): M})
        assert is_planar(d)
        assert geometric_crossings(d) == []

    def test_different_pages_do_not_cross(self):
        d = ArcDiagram((1, 2, 3, 4), {(1, 3): M, (2, 4): P})
        assert is_planar(d)

    def test_shared_endpoint_is_not_a_crossing(self):
        d = ArcDiagram((1, 2, 3), {(1, 2): M, (2, 3): M, (1, 3): M})
        assert is_planar(d)


class TestEnvelopesAndFaces:
    """Tests para envolventes y caras por hueco."""

    def test_base_diagram(self):
        d = base_diagram(1, 2, 3)
        assert d.spine == (1, 3, 2)
        assert all(s is P for s in d.shapes.values())
        assert d.cost == Fraction(2, 5)

    def test_base_envelopes(self):
        d = base_diagram(1, 2, 3)
        assert envelope(d, Page.UPPER) == expected_chain((1, 3, 2))
        assert envelope(d, Page.LOWER) == expected_chain((1, 2))

    def test_innermost_arcs(self, triangle):
        arcs = innermost_arcs(triangle)
        assert len(arcs) == 4
        assert arcs[0] == (None, None)
        assert arcs[1] == ((1, 3), (1, 2))
        assert arcs[2] == ((1, 3), (2, 3))

    def test_face_at_gap(self, triangle):
        assert face_at_gap(triangle, 1) == frozenset({1, 2, 3})
        assert face_at_gap(triangle, 0) is None

    def test_gaps_by_face(self, triangle):
        assert gaps_by_face(triangle) == {None: [0, 3], frozenset({1, 2, 3}): [1, 2]}


class TestPrimitives:
    """Tests para las primitivas de dibujo."""

    def test_insert_vertex(self, triangle):
        d = insert_vertex(triangle, 4, 1, {1: P, 2: P, 3: M})
        assert d.spine == (1, 4, 2, 3)
        assert d.shape(4, 3) is M
        assert is_planar(d)

    def test_insert_vertex_twice(self, triangle):
        with pytest.raises(ValueError, match="ya está"):
            insert_vertex(triangle, 2, 1, {1: P})

    def test_insert_vertex_would_cross(self, triangle):
        with pytest.raises(WouldCross):
            insert_vertex(triangle, 4, 1, {1: P, 3: P})

    def test_insert_vertex_rejects_biarc(self, triangle):
        with pytest.raises(ValueError, match="propios"):
            insert_vertex(triangle, 4, 1, {1: B})

    def test_add_biarcs_farthest_first(self):
        d = ArcDiagram((1, 2, 3), {(2, 3): P})
        out = add_biarcs(d, 1, [2, 3], 1)
        assert out.spine == (1, Crossing(1, 3), Crossing(1, 2), 2, 3)
        assert out.biarc_count == 2

    def test_add_biarcs_gap_out_of_range(self):
        d = ArcDiagram((1, 2, 3), {(2, 3): P})
        with pytest.raises(ValueError, match="no está entre"):
            add_biarcs(d, 1, [2], 3)

    def test_push_down_all_mountains_of_u(self, fan):
        d = push_down(fan, (1, 2))
        assert d.spine == (1, Crossing(1, 3), Crossing(1, 2), 2, 3)
        assert d.shape(1, 2) is B and d.shape(1, 3) is B
        assert d.shape(2, 3) is P
        assert is_planar(d)

    def test_push_down_requires_mountain(self, triangle):
        with pytest.raises(NotAMountain):
            push_down(triangle, (1, 2))

    def test_redraw_as_biarc(self, triangle):
        d = redraw_as_biarc(triangle, (1, 3))
        assert d.spine == (1, Crossing(1, 3), 2, 3)
        assert d.biarc_count == 1
        assert is_planar(d)

    def test_redraw_biarc_twice(self, triangle):
        d = redraw_as_biarc(triangle, (1, 3))
        with pytest.raises(ValueError, match="no es un arco propio"):
            redraw_as_biarc(d, (1, 3))

    def test_insert_vertex_in_pocket(self, triangle):
        d = insert_vertex_in_pocket(triangle, 4, (1, 2), [1], [2, 3])
        assert d.spine == (1, 4, 2, 3)
        assert d.shape(1, 4) is P and d.shape(2, 4) is P and d.shape(3, 4) is M

    def test_insert_vertex_in_pocket_requires_pocket(self, triangle):
        with pytest.raises(NotAPocket):
            insert_vertex_in_pocket(triangle, 4, (1, 3), [1], [3])

    def test_rotate_pi(self, triangle):
        r = rotate_pi(triangle)
        assert r.spine == (3, 2, 1)
        assert r.shape(1, 3) is P and r.shape(1, 2) is M
        assert rotate_pi(r) == triangle

    def test_rotate_pi_keeps_down_up(self, triangle):
        d = redraw_as_biarc(triangle, (1, 3))
        r = rotate_pi(d)
        assert r.shape(1, 3) is B
        assert validate(r).flags["down_up"]

    def test_gap_after(self, triangle):
        assert gap_after(triangle, 2) == 2

    def test_plug_subdiagram(self, triangle):
        sub = ArcDiagram((1, 4, 2, 3), {(1, 4): P, (2, 4): P, (3, 4): M,
                                        (1, 3): M, (1, 2): P, (2, 3): P})
        d = plug_subdiagram(triangle, (1, 2, 3), sub)
        assert d.spine == (1, 4, 2, 3)
        assert len(d.edges) == 6

    def test_plug_boundary_mismatch(self, triangle):
        sub = ArcDiagram((1, 4, 2, 3), {(1, 4): P, (2, 4): P, (3, 4): M})
        with pytest.raises(BoundaryMismatch):
            plug_subdiagram(triangle, (1, 2), sub)

    def test_plug_unknown_orientation(self, triangle):
        with pytest.raises(ValueError, match="orientación"):
            plug_subdiagram(triangle, (1, 2, 3), triangle, orientation="mirror")

    def test_add_arc_mountain(self):
        d = add_arc(ArcDiagram((1, 2, 3), {(1, 2): P, (2, 3): P}), 3, 1, M)
        assert d.shape(1, 3) is M
        assert d.spine == (1, 2, 3)

    def test_add_arc_biarc_crossing_after_left_endpoint(self):
        d = add_arc(ArcDiagram((1, 2, 3), {(1, 2): P, (2, 3): P}), 3, 1, B)
        assert d.spine == (1, Crossing(1, 3), 2, 3)
        assert is_planar(d)

    def test_add_arc_existing(self, triangle):
        with pytest.raises(ValueError, match="ya está dibujada"):
            add_arc(triangle, 1, 3, M)

    def test_add_arc_up_down(self):
        with pytest.raises(ValueError, match="bajada-subida"):
            add_arc(ArcDiagram((1, 2), {}), 1, 2, ArcShape.BIARC_UP_DOWN)

    def test_add_arc_missing_endpoint(self, triangle):
        with pytest.raises(ValueError, match="ambos extremos"):
            add_arc(triangle, 1, 9, M)

    def test_add_arc_would_cross(self):
        with pytest.raises(WouldCross):
            add_arc(ArcDiagram((1, 2, 3, 4), {(2, 4): M}), 1, 3, M)

    def test_drop_edges_removes_crossing(self, triangle):
        d = drop_edges(redraw_as_biarc(triangle, (1, 3)), [(3, 1)])
        assert d.shape(1, 3) is None
        assert d.crossing_count == 0
        assert drop_edges(triangle, []) is triangle

    def test_push_all(self, fan):
        assert push_all(fan, 1).biarc_count == 2
        assert push_all(fan, 2) is fan

    def test_envelope_vertices(self, triangle):
        assert envelope_vertices(triangle) == (1, 3)
        assert envelope_vertices(triangle, Page.LOWER) == (1, 2, 3)

    def test_plug_into_face_replaces_boundary_shape(self):
        host = base_diagram(1, 2, 3)
        sub = ArcDiagram((1, 4, 3), {(1, 4): P, (3, 4): P, (1, 3): M})
        d = plug_into_face(host, sub)
        assert d.spine == (1, 4, 3, 2)
        assert d.shape(1, 3) is M
        assert envelope_vertices(d) == (1, 3, 2)
        assert is_planar(d)

    def test_plug_into_face_rotated(self):
        host = base_diagram(1, 2, 3)
        sub = ArcDiagram((3, 4, 1), {(3, 4): M, (1, 4): M, (1, 3): P})
        d = plug_into_face(host, sub)
        assert d.spine == (1, 4, 3, 2)
        assert d.shape(1, 4) is P and d.shape(1, 3) is M

    def test_plug_into_face_drops_virtual_edges(self):
        host = base_diagram(1, 2, 3)
        sub = ArcDiagram((1, 4, 3, 2), {(1, 4): P, (3, 4): P, (1, 3): M, (2, 3): P, (1, 2): P, (2, 4): M})
        d = plug_into_face(host, sub, virtual=[(2, 4)])
        assert d.shape(2, 4) is None
        assert d.spine == (1, 4, 3, 2)

    def test_plug_into_face_boundary_mismatch(self):
        host = base_diagram(1, 2, 3)
        with pytest.raises(BoundaryMismatch):
            plug_into_face(host, ArcDiagram((1, 4, 5), {(1, 4): P}))

    def test_plug_into_face_unknown_orientation(self, triangle):
        with pytest.raises(ValueError, match="orientación"):
            plug_into_face(triangle, triangle, orientation="mirror")


class TestRandomPlanarity:
    """Tests aleatorios de planaridad de primitivas y de los dos detectores de cruces."""

    @pytest.mark.parametrize("seed", range(10))
    def test_primitive_sequences_stay_planar(self, seed):
        """Cada primitiva devuelve un diagrama planar o rechaza la operación."""
        rng = random.Random(seed)
        d = base_diagram(1, 2, 3)
        fresh = 4
        applied = 0
        for _ in range(60):
            pockets = [e for e, s in d.shapes.items() if s is P]
            mountains = [e for e, s in d.shapes.items() if s is M]
            op = rng.choice(("insert", "push", "plug"))
            try:
                if op == "push" and mountains:
                    out = push_down(d, rng.choice(mountains))
                elif op == "plug" and pockets:
                    a, b = sorted(rng.choice(pockets), key=d.positions.__getitem__)
                    sub = ArcDiagram((a, fresh, b), {(min(a, fresh), max(a, fresh)): P,
                                                     (min(b, fresh), max(b, fresh)): P,
                                                     (min(a, b), max(a, b)): P})
                    out = plug_into_face(d, sub)
                    fresh += 1
                elif pockets:
                    a, b = sorted(rng.choice(pockets), key=d.positions.__getitem__)
                    out = insert_vertex_in_pocket(d, fresh, (a, b), [a], [b])
                    fresh += 1
                else:
                    continue
            except ValueError:
                continue
            assert find_crossing(out) is None
            assert geometric_crossings(out) == []
            d = out
            applied += 1
        assert applied > 0

    def test_detectors_agree_on_random_diagrams(self):
        """find_crossing y la geometría de semicírculos coinciden en 1000 diagramas."""
        rng = random.Random(2024)
        planar = 0
        for _ in range(1000):
            d = _random_diagram(rng)
            combinatorial = is_planar(d)
            assert combinatorial == (not geometric_crossings(d))
            assert (find_crossing(d) is None) == combinatorial
            planar += combinatorial
        assert 0 < planar < 1000


class TestCredits:
    """Tests para χ, créditos requeridos y el libro de créditos."""

    def test_validate_chi(self):
        assert validate_chi("1/5") == Fraction(1, 5)
        assert validate_chi(0.2) == Fraction(1, 5)
        assert validate_chi(Fraction(1, 10)) == Fraction(1, 10)

    @pytest.mark.parametrize("chi", [0, "1/4", -1, "abc"])
    def test_invalid_chi(self, chi):
        with pytest.raises(InvalidChi):
            validate_chi(chi)

    def test_chi_type(self):
        with pytest.raises(TypeError):
            validate_chi(True)

    def test_required_credits_final(self, triangle):
        d = redraw_as_biarc(triangle, (1, 3))
        assert required_credits(d, DiagramContext.final(), Fraction(1, 5)) == {(1, 3): 1}

    def test_required_credits_extensible(self, triangle):
        """Montaña con extremo izquierdo en el ciclo exterior: 1; bolsillos del camino: χ."""
        ctx = DiagramContext.extensible((1, 3))
        need = required_credits(triangle, ctx, Fraction(1, 5))
        assert need == {(1, 3): 1}

    def test_ledger_base_cost(self):
        ledger = CreditLedger()
        d = ledger.settle(base_diagram(1, 2, 3), DiagramContext.extensible((1, 3, 2)), "base", (1, 2, 3))
        assert ledger.total == Fraction(2, 5)
        assert d.credits[(1, 3)] == Fraction(1, 5)
        assert ledger.trace()[0].startswith("STEP kind=base vertices=1,2,3")

    def test_ledger_chi_free(self):
        ledger = CreditLedger(chi_free=True)
        ledger.settle(base_diagram(1, 2, 3), DiagramContext.extensible((1, 3, 2)), "base", (1, 2, 3))
        assert ledger.total == 0

    def test_ledger_overrun(self, fan, caplog):
        ledger = CreditLedger()
        with caplog.at_level("WARNING"):
            ledger.settle(push_down(fan, (1, 2)), DiagramContext.final(), "push", (1,), limit=Fraction(1))
        assert ledger.overruns()[0].spend == 2
        assert "gasta" in caplog.text

    def test_ledger_step_mode_raises(self, fan):
        ledger = CreditLedger(enforce="step")
        with pytest.raises(BoundExceeded, match="gasta"):
            ledger.settle(push_down(fan, (1, 2)), DiagramContext.final(), "push", (1,), limit=Fraction(1))

    def test_ledger_cumulative_mode(self, fan):
        """Un paso por encima de su cota pasa si el acumulado sigue dentro de lo admitido."""
        ledger = CreditLedger(enforce="cumulative")
        ledger.settle(push_down(fan, (1, 2)), DiagramContext.final(), "push", (1,),
                      limit=Fraction(1), budget=Fraction(3))
        assert ledger.allowance == 3
        tight = CreditLedger(enforce="cumulative")
        with pytest.raises(BoundExceeded, match="acumulado"):
            tight.settle(push_down(fan, (1, 2)), DiagramContext.final(), "push", (1,), limit=Fraction(1))

    def test_ledger_unknown_enforce(self):
        with pytest.raises(ValueError, match="modo de control"):
            CreditLedger(enforce="always")

    def test_ledger_preview_does_not_record(self):
        ledger = CreditLedger()
        assert ledger.preview(base_diagram(1, 2, 3), DiagramContext.extensible((1, 3, 2))) == Fraction(2, 5)
        assert ledger.steps == []
        assert ledger.total == 0

    def test_ledger_incremental_matches_full(self):
        """El gasto incremental coincide con recalcular todos los créditos."""
        chi = Fraction(1, 5)
        ledger = CreditLedger(chi)
        base = ledger.settle(base_diagram(1, 2, 3), DiagramContext.extensible((1, 3, 2)), "base", (1, 2, 3))
        d = insert_vertex_in_pocket(base, 4, (1, 3), [1], [3])
        ctx = DiagramContext.extensible((1, 4, 3, 2))
        expected = sum(required_credits(d, ctx, chi).values()) - ledger.total
        assert ledger.preview(d, ctx) == expected
        ledger.settle(d, ctx, "pocket", (4,))
        assert ledger.total == sum(required_credits(d, ctx, chi).values())


class TestValidate:
    """Tests para el validador."""

    def test_base_is_extensible(self):
        report = validate(base_diagram(1, 2, 3), DiagramContext.extensible((1, 3, 2)))
        assert report.passed, report.summary()

    def test_missing_credits(self):
        d = base_diagram(1, 2, 3).with_credits({})
        report = validate(d, DiagramContext.extensible((1, 3, 2)))
        assert not report.flags["pocket_credit"]

    def test_crossing_reported(self):
        d = ArcDiagram((1, 2, 3, 4), {(1, 3): M, (2, 4): M})
        report = validate(d)
        assert not report.flags["planarity"]
        assert "FAIL" in report.summary()

    def test_up_down_rejected(self):
        d = ArcDiagram((1, Crossing(1, 2), 2), {(1, 2): ArcShape.BIARC_UP_DOWN})
        report = validate(d)
        assert not report.flags["down_up"]

    def test_biarc_on_upper_envelope(self):
        d = ArcDiagram((1, Crossing(1, 2), 2), {(1, 2): B})
        assert not validate(d).flags["shapes"]

    def test_graph_edges_mismatch(self, triangle):
        report = validate(triangle, DiagramContext.final([(1, 2), (1, 3), (2, 3), (1, 4)]))
        assert not report.flags["edges"]

    def test_orphan_crossing(self, triangle):
        d = ArcDiagram((1, Crossing(1, 2), 2, 3), dict(triangle.shapes))
        assert not validate(d).flags["structure"]

    def test_report_passed_when_empty(self):
        assert ValidityReport().passed


class TestArcFormat:
    """Tests para el formato .arc."""

    def test_roundtrip(self, fan):
        d = push_down(fan, (1, 2)).with_credits({(1, 2): Fraction(1), (1, 3): Fraction(1)})
        back = parse_arc(format_arc(d))
        assert back.spine == d.spine
        assert dict(back.shapes) == dict(d.shapes)
        assert back.credits[(1, 2)] == 1

    def test_format_lines(self, triangle):
        lines = format_arc(triangle).splitlines()
        assert lines[0] == "v1 v2 v3"
        assert lines[1] == "1 2 P 0"

    def test_empty(self):
        with pytest.raises(DiagramFormatError, match="vacío"):
            parse_arc("")

    def test_unknown_item(self):
        with pytest.raises(DiagramFormatError):
            parse_arc("v1 q2\n")

    def test_repeated_edge(self):
        with pytest.raises(DiagramFormatError, match="repetida"):
            parse_arc("v1 v2\n1 2 M 0\n2 1 P 0\n")


class TestBound:
    """Tests para la comprobación de cotas."""

    def _result(self, triangle, bound):
        d = redraw_as_biarc(triangle, (1, 3))
        return DrawResult("test", d, CreditLedger(), bound, validate(d))

    def test_within_bound(self, triangle):
        assert check_bound(self._result(triangle, 1), strict=True).within_bound

    def test_strict_raises(self, triangle):
        with pytest.raises(BoundExceeded, match="cota"):
            check_bound(self._result(triangle, 0), strict=True)

    def test_bound_exceeded_is_value_error(self, triangle):
        """Superar la cota se trata como error de valor, igual que el resto del catálogo."""
        assert issubclass(BoundExceeded, ValueError)
        with pytest.raises(ValueError, match="cota"):
            check_bound(self._result(triangle, 0), strict=True)

    def test_lenient_logs(self, triangle, caplog):
        with caplog.at_level("WARNING"):
            result = check_bound(self._result(triangle, 0), strict=False)
        assert not result.within_bound
        assert "cota" in caplog.text


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
