# test_algo_kleetope.py
# Tests para el dibujo con vértices de grado 3 (Kleetopes)

import pytest

from algo_kleetope import (
    NotKleetopeSize,
    degree_three_bound,
    draw_degree3_aware,
    draw_step_one,
    kleetope_bound,
)
from diagram import faces_missing_spine
from graph_core import (
    AdjacentDegreeThree,
    enumerate_triangulations,
    kleetope,
    named_triangulation,
    random_triangulation,
)


class TestBounds:
    """Tests para las cotas de Kleetopes."""

    @pytest.mark.parametrize("n,expected", [(8, 0), (14, 2), (20, 4), (32, 8)])
    def test_kleetope_bound(self, n, expected):
        assert kleetope_bound(n) == expected

    @pytest.mark.parametrize("n", [5, 9, 13, 15])
    def test_not_kleetope_size(self, n):
        with pytest.raises(NotKleetopeSize):
            kleetope_bound(n)

    def test_kleetope_bound_type(self):
        with pytest.raises(TypeError):
            kleetope_bound(14.0)

    def test_degree_three_bound_matches_kleetope(self):
        """Con d = (2n-4)/3 vértices de grado 3, n-d-4 coincide con ⌊(n-8)/3⌋."""
        for k in range(4, 12):
            n = 3 * k - 4
            assert degree_three_bound(n, 2 * k - 4) == kleetope_bound(n)


class TestStepOne:
    """Tests para el dibujo de la triangulación pelada."""

    def test_every_face_hits_spine(self):
        t = named_triangulation("octahedron")
        d, ledger, state = draw_step_one(t, audit=True)
        assert state.is_complete
        assert faces_missing_spine(d, t) == []

    @pytest.mark.parametrize("seed", range(5))
    def test_random_faces_hit_spine(self, seed):
        t = random_triangulation(15, seed=seed)
        d, _, _ = draw_step_one(t)
        assert faces_missing_spine(d, t) == []
        assert set(d.edges) == set(t.edges)


class TestDrawDegree3Aware:
    """Tests para draw_degree3_aware."""

    def test_kleetope_of_k4(self):
        g = kleetope(named_triangulation("k4"))
        result = draw_degree3_aware(g)
        assert g.n == 8
        assert result.biarcs == 0
        assert result.passed

    def test_kleetope_of_octahedron(self):
        g = kleetope(named_triangulation("octahedron"))
        result = draw_degree3_aware(g, audit=True)
        assert result.biarcs <= kleetope_bound(14)
        assert result.notes["peeled"] == 8

    def test_kleetope_of_icosahedron(self):
        g = kleetope(named_triangulation("icosahedron"))
        result = draw_degree3_aware(g)
        assert g.n == 32
        assert result.biarcs <= kleetope_bound(32)

    def test_peeled_vertices_add_no_biarcs(self):
        g = kleetope(random_triangulation(10, seed=3))
        result = draw_degree3_aware(g)
        assert result.biarcs == result.notes["step_one_biarcs"]

    @pytest.mark.parametrize("base", enumerate_triangulations(7))
    def test_enumerated_bases(self, base):
        g = kleetope(base)
        result = draw_degree3_aware(g)
        assert result.passed
        assert result.biarcs <= kleetope_bound(g.n)

    def test_without_degree_three(self):
        g = named_triangulation("octahedron")
        result = draw_degree3_aware(g)
        assert result.notes["peeled"] == 0
        assert result.biarcs <= degree_three_bound(6, 0)

    def test_adjacent_degree_three(self):
        with pytest.raises(AdjacentDegreeThree):
            draw_degree3_aware(named_triangulation("k4"))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
