"""
Tests for lattice classes, building distances and tropical hulls.
"""

import pytest

from app.algebra.matrices import QT, T, diagonal, elementary_divisor_exponents, lift
from app.exceptions import InvalidInputError, SingularMatrixError
from app.models.building import ApartmentVertex, Configuration, LatticeBasis, Vertex
from app.services.building_service import (
    adjacency_and_distance,
    apartment_neighbors,
    apartment_sketch,
    building_distance,
    secondary_candidates,
    tropical_hull,
    vertex_equal,
)
from app.services.checks_service import general_position_vertex
from app.utils.sampling import make_rng


def exponents(vertices) -> list[tuple[int, ...]]:
    return [v.exponents for v in vertices]


@pytest.mark.building
class TestElementaryDivisors:
    """Valuations of invariant factors over the valuation ring."""

    def test_diagonal_matrix(self):
        """diag(1, t, t^3) has exponents (0, 1, 3)."""
        assert elementary_divisor_exponents(diagonal([0, 1, 3])) == [0, 1, 3]

    def test_non_diagonal_matrix(self):
        """[[1, 1], [1, 1 + t]] has exponents (0, 1)."""
        rows = [[QT.one, QT.one], [QT.one, QT.one + T]]

        assert elementary_divisor_exponents(rows) == [0, 1]

    def test_singular_matrix_is_rejected(self):
        """A singular matrix has no elementary divisors."""
        with pytest.raises(SingularMatrixError):
            elementary_divisor_exponents(lift([[1, 2], [2, 4]]))


@pytest.mark.building
class TestVertices:
    """Homothety classes and their distances."""

    def test_adjacent_vertices(self):
        """(0,0,0) and (1,0,0) are adjacent at distance 1."""
        assert adjacency_and_distance(ApartmentVertex((0, 0, 0)), ApartmentVertex((1, 0, 0))) == (True, 1)

    def test_distance_two(self):
        """(0,0,0) and (2,0,0) are at distance 2 and not adjacent."""
        assert adjacency_and_distance(ApartmentVertex((0, 0, 0)), ApartmentVertex((2, 0, 0))) == (False, 2)

    def test_vertex_to_itself(self):
        """A vertex is at distance 0 from itself and not adjacent to it."""
        v = ApartmentVertex((0, 1, 3))

        assert adjacency_and_distance(v, v) == (False, 0)

    def test_exponents_are_normalized(self):
        """Scaling the lattice by a power of t gives the same vertex."""
        assert ApartmentVertex((2, 3, 2)) == ApartmentVertex((0, 1, 0))
        assert ApartmentVertex((2, 3, 2)).exponents == (0, 1, 0)

    def test_matrix_basis_equals_apartment_vertex(self):
        """A unimodular change of basis and a scalar t do not change the class."""
        basis = LatticeBasis([[T, T, QT.zero], [QT.zero, T, QT.zero], [QT.zero, QT.zero, T]])

        assert vertex_equal(Vertex(basis), ApartmentVertex((0, 0, 0)))
        assert not vertex_equal(Vertex(basis), ApartmentVertex((1, 0, 0)))

    def test_distance_between_matrix_vertices(self):
        """Distances are read off the transition matrix for general bases."""
        first = Vertex(LatticeBasis([[QT.one, QT.one], [QT.zero, QT.one]]))
        second = Vertex(LatticeBasis([[QT.one, QT.zero], [QT.zero, T**2]]))

        assert adjacency_and_distance(first, second) == (False, 2)

    def test_singular_basis_is_rejected(self):
        """A basis with zero determinant is an input error."""
        with pytest.raises(SingularMatrixError):
            LatticeBasis(lift([[1, 1], [1, 1]]))

    def test_mixed_dimensions_are_rejected(self):
        """Vertices of different dimension cannot be compared."""
        with pytest.raises(InvalidInputError):
            vertex_equal(ApartmentVertex((0, 0)), ApartmentVertex((0, 0, 0)))


@pytest.mark.building
class TestConfiguration:
    """Finite sets of pairwise distinct vertices."""

    def test_homothetic_vertices_are_rejected(self):
        """Two representatives of one class cannot both appear."""
        with pytest.raises(InvalidInputError):
            Configuration.apartment([(0, 0), (1, 1)])

    def test_empty_configuration_is_rejected(self):
        """A configuration needs a vertex."""
        with pytest.raises(InvalidInputError):
            Configuration([])

    def test_index_and_subset(self, three_vertices):
        """Positions are 1-based and subsets keep the given order."""
        assert three_vertices.index_of(ApartmentVertex((0, 0, 1))) == 3
        assert three_vertices.index_of(ApartmentVertex((1, 0, 1))) == 0
        assert three_vertices.subset([3, 1]).key() == ("(0,0,1)", "(0,0,0)")


@pytest.mark.building
class TestTropicalHulls:
    """Min- and max-plus hulls inside one apartment."""

    def test_segment_hull(self):
        """Both hulls of {(0,0), (3,0)} are the points (i, 0)."""
        ends = [ApartmentVertex((0, 0)), ApartmentVertex((3, 0))]
        segment = [(i, 0) for i in range(4)]

        assert exponents(tropical_hull(ends, "min")) == segment
        assert exponents(tropical_hull(ends, "max")) == segment

    def test_min_hull_of_three_vertices(self, three_vertices):
        """The min hull of the three-vertex configuration is the configuration itself."""
        assert set(exponents(tropical_hull(three_vertices.vertices, "min"))) == {(0, 0, 0), (1, 0, 0), (0, 0, 1)}

    def test_max_hull_adds_one_vertex(self, three_vertices):
        """The max hull adds (1,0,1)."""
        hull = set(exponents(tropical_hull(three_vertices.vertices, "max")))

        assert hull == {(0, 0, 0), (1, 0, 0), (0, 0, 1), (1, 0, 1)}

    def test_hull_needs_apartment_vertices(self):
        """General lattice classes have no hull in this sense."""
        general = Vertex(LatticeBasis([[QT.one, T], [QT.zero, QT.one]]))

        with pytest.raises(InvalidInputError):
            tropical_hull([general], "min")

    def test_sketch_marks_membership(self, three_vertices):
        """The sketch lists every relevant vertex with its hull membership."""
        rows = {row["vertex"]: row for row in apartment_sketch(three_vertices)}

        assert rows["(1,0,1)"]["max_hull"] and not rows["(1,0,1)"]["min_hull"]
        assert not rows["(1,0,1)"]["in_configuration"]
        assert rows["(0,0,0)"]["in_configuration"]


@pytest.mark.building
class TestSecondaryCandidates:
    """Candidate vertices for secondary components."""

    def test_candidates_of_two_vertices(self, two_vertices):
        """At radius 0 the candidates include (0,0,0) and (1,0,1)."""
        found = exponents(secondary_candidates(two_vertices, radius=0))

        assert (0, 0, 0) in found
        assert (1, 0, 1) in found
        assert (1, 0, 0) not in found

    def test_single_vertex_has_no_candidates(self):
        """A single vertex at radius 0 has none."""
        assert secondary_candidates(Configuration.apartment([(0, 0, 0)]), radius=0) == []

    def test_candidates_are_distinct_and_outside_configuration(self, three_vertices):
        """Neighbourhoods add new vertices without repeats."""
        found = secondary_candidates(three_vertices, radius=1)
        keys = exponents(found)

        assert len(keys) == len(set(keys))
        assert not any(three_vertices.index_of(v) for v in found)
        assert keys[0] == (1, 0, 1)

    def test_negative_radius_is_rejected(self, three_vertices):
        """The radius is non-negative."""
        with pytest.raises(InvalidInputError):
            secondary_candidates(three_vertices, radius=-1)

    def test_neighbors_are_adjacent(self):
        """Radius-1 apartment neighbours are at distance 1."""
        center = ApartmentVertex((0, 0, 0))
        around = apartment_neighbors(center, 1)

        assert len(around) == 6
        assert all(adjacency_and_distance(center, v) == (True, 1) for v in around)


def random_apartment_vertices(rng, count: int, d: int = 3, high: int = 1) -> list[ApartmentVertex]:
    vertices: list[ApartmentVertex] = []
    while len(vertices) < count:
        vertex = ApartmentVertex(rng.integers(0, high + 1, size=d).tolist())
        if vertex not in vertices:
            vertices.append(vertex)
    return vertices


def shifted(vertex: ApartmentVertex, offset) -> ApartmentVertex:
    return ApartmentVertex([a + b for a, b in zip(vertex.exponents, offset)])


@pytest.mark.building
class TestBuildingProperties:
    """Metric and hull laws on seeded random vertices."""

    @pytest.mark.parametrize("seed", range(6))
    def test_distance_is_a_metric(self, seed):
        """Distance is symmetric and satisfies the triangle inequality, for diagonal and matrix vertices."""
        rng = make_rng(seed, 21)
        vertices: list[Vertex] = random_apartment_vertices(rng, 2, high=3)
        vertices.append(general_position_vertex(3, rng)[0])

        for a in vertices:
            for b in vertices:
                assert building_distance(a, b) == building_distance(b, a)
                for c in vertices:
                    assert building_distance(a, c) <= building_distance(a, b) + building_distance(b, c)

    @pytest.mark.parametrize("variant", ["min", "max"])
    @pytest.mark.parametrize("seed", range(4))
    def test_hull_is_idempotent_and_contains_its_inputs(self, seed, variant):
        """hull(hull(S)) = hull(S) and S ⊆ hull(S)."""
        rng = make_rng(seed, 22)
        vertices = random_apartment_vertices(rng, 2 + seed % 2)
        hull = tropical_hull(vertices, variant)

        assert set(exponents(vertices)) <= set(exponents(hull))
        assert exponents(tropical_hull(hull, variant)) == exponents(hull)

    @pytest.mark.parametrize("variant", ["min", "max"])
    @pytest.mark.parametrize("seed", range(4))
    def test_hull_is_translation_invariant(self, seed, variant):
        """Shifting every input by u shifts the hull by u; shifting one input by a constant changes nothing."""
        rng = make_rng(seed, 23)
        vertices = random_apartment_vertices(rng, 3)
        hull = tropical_hull(vertices, variant)
        u = rng.integers(0, 2, size=3).tolist()

        moved = tropical_hull([shifted(v, u) for v in vertices], variant)
        assert set(exponents(moved)) == {shifted(v, u).exponents for v in hull}

        rescaled = [shifted(v, [2] * 3) if i == 0 else v for i, v in enumerate(vertices)]
        assert exponents(tropical_hull(rescaled, variant)) == exponents(hull)
