"""
Tests for flag ideals, degeneration ideals and special fibers.
"""

import pytest

from app.algebra.evaluation import vanishes
from app.algebra.ideals import Ideal, dimension, eliminate, saturate
from app.algebra.matrices import QT, T, diagonal, lift, matmul, scale, to_laurent
from app.algebra.rings import PARAMETER, is_weighted_homogeneous, weight_vector
from app.exceptions import InvalidInputError
from app.models.building import Configuration, LatticeBasis, Vertex
from app.models.flags import FlagType, PlueckerBlock
from app.services.degeneration_service import (
    build_degeneration,
    cleared_column,
    compound_matrix,
    cross_minor_generators,
    degeneration_ring,
    flag_ideal,
    generic_fiber_check,
    limit_point,
    point_values,
    random_flag_point,
    saturation_weights,
)
from app.utils.sampling import make_rng, random_int_matrix, random_permutation


@pytest.mark.degeneration
class TestFlagIdeals:
    """Plücker and incidence relations of a single flag variety."""

    def test_compound_of_diagonal(self):
        """The second compound of diag(1, 1, t) is diag(1, t, t)."""
        assert compound_matrix(diagonal([0, 0, 1]), 2) == diagonal([0, 1, 1])

    def test_compound_order_is_checked(self):
        """k must lie in 1..d."""
        with pytest.raises(InvalidInputError):
            compound_matrix(diagonal([0, 0]), 3)

    def test_projective_space_has_no_relations(self):
        """The flag ideal of type (1) is zero."""
        assert flag_ideal(FlagType.projective(3)).is_zero

    def test_grassmannian_is_a_quadric(self):
        """The flag ideal of G(2) in d = 4 is principal."""
        flag = FlagType(4, (2,))
        ring = degeneration_ring(flag, 1, with_parameter=False)
        p = {name[-2:]: ring.gen(name) for name in ring.names}
        quadric = p["12"] * p["34"] - p["13"] * p["24"] + p["14"] * p["23"]

        assert flag_ideal(flag, ring) == Ideal(ring, [quadric])

    def test_full_flag_incidence(self):
        """Complete flags in d = 3 satisfy one incidence relation."""
        flag = FlagType(3, (1, 2))
        ideal = flag_ideal(flag)

        assert len(ideal.groebner_basis()) == 1
        assert dimension(ideal) == flag.dimension + flag.r

    def test_random_point_lies_on_flag_variety(self):
        """A sampled flag satisfies the relations of its type."""
        for flag in (FlagType(3, (1, 2)), FlagType(4, (2,)), FlagType(4, (1, 3))):
            ideal = flag_ideal(flag)
            values = point_values(random_flag_point(flag.d, flag, seed=5), flag, 1)

            assert vanishes(ideal.generators, ideal.ring, values)

    def test_random_point_is_reproducible(self):
        """The same seed gives the same point; another salt changes it."""
        flag = FlagType(3, (1, 2))

        assert random_flag_point(3, flag, 7) == random_flag_point(3, flag, 7)
        assert random_flag_point(3, flag, 7) != random_flag_point(3, flag, 7, salt=(1,))


@pytest.mark.degeneration
class TestDegenerationIdeal:
    """Cleared columns, cross minors and the flat family."""

    def test_cleared_column(self):
        """Vertex (1,0) contributes the column (t*p2_1_1, p2_1_2)."""
        flag = FlagType.projective(2)
        ring = degeneration_ring(flag, 2)
        t = ring.gen(PARAMETER)
        column = cleared_column(diagonal([1, 0]), 1, PlueckerBlock(2, 1, 1, 2), ring)

        assert column == [t * ring.gen("p2_1_1"), ring.gen("p2_1_2")]

    def test_cleared_column_divides_out_common_power(self):
        """A lattice scaled by t gives the same column."""
        flag = FlagType.projective(2)
        ring = degeneration_ring(flag, 1)
        block = PlueckerBlock(1, 1, 1, 2)

        assert cleared_column(diagonal([2, 1]), 1, block, ring) == cleared_column(diagonal([1, 0]), 1, block, ring)

    def test_line_pair_cross_minor(self, line_pair):
        """Two vertices of the line give a single cross minor."""
        flag = FlagType.projective(2)
        ring = degeneration_ring(flag, 2)
        g = {name: ring.gen(name) for name in ring.names}
        minors = cross_minor_generators(line_pair, flag, ring)

        assert Ideal(ring, minors) == Ideal(ring, [g["p1_1_1"] * g["p2_1_2"] - g["t"] * g["p1_1_2"] * g["p2_1_1"]])

    def test_weights_make_cross_minors_homogeneous(self, three_vertices, full_flag):
        """Apartment configurations get a grading for the divide-out saturation."""
        ring = degeneration_ring(full_flag, 3)
        weights = weight_vector(ring, saturation_weights(three_vertices, full_flag))

        assert all(is_weighted_homogeneous(g, weights) for g in cross_minor_generators(three_vertices, full_flag, ring))

    def test_line_pair_special_fiber(self, line_pair):
        """The special fiber of the line pair is (p1_1_1*p2_1_2)."""
        degeneration = build_degeneration(line_pair, FlagType.projective(2))
        ring = degeneration.fiber_ring

        assert degeneration.fiber_ideal == Ideal(ring, [ring.gen("p1_1_1") * ring.gen("p2_1_2")])
        assert PARAMETER not in ring.names

    def test_single_vertex_fiber_is_flag_ideal(self, full_flag):
        """With one vertex the special fiber is the flag variety itself."""
        degeneration = build_degeneration(Configuration.apartment([(0, 1, 3)]), full_flag)

        assert degeneration.fiber_ideal == flag_ideal(full_flag, degeneration.fiber_ring)

    def test_dimension_mismatch_is_rejected(self, line_pair, full_flag):
        """The configuration and flag type must share d."""
        with pytest.raises(InvalidInputError):
            build_degeneration(line_pair, full_flag)

    def test_provenance_is_recorded(self, line_pair):
        """Each construction step leaves a provenance line."""
        degeneration = build_degeneration(line_pair, FlagType.projective(2))

        assert any("saturated by t" in line for line in degeneration.provenance)
        assert degeneration.n == 2
        assert degeneration.vertex_names(2) == ["p2_1_1", "p2_1_2"]

    def test_general_lattice_basis(self):
        """Non-diagonal bases go through the general saturation path."""
        basis = [[QT.one, QT.one], [QT.zero, T]]
        config = Configuration([Vertex(LatticeBasis(diagonal([0, 0]))), Vertex(LatticeBasis(basis))])
        degeneration = build_degeneration(config, FlagType.projective(2))

        assert degeneration.weights is None
        assert dimension(degeneration.fiber_ideal) == 3


@pytest.mark.degeneration
class TestFiberOracles:
    """Generic-fiber and limit-point checks."""

    def test_generic_fiber_of_line_pair(self, line_pair):
        """At a generic t the fiber over a point of block 1 is a single reduced point."""
        degeneration = build_degeneration(line_pair, FlagType.projective(2))
        check = generic_fiber_check(degeneration, seed=3)

        assert check.passed, check.witness
        assert check.degree == 1

    def test_limit_points_lie_on_special_fiber(self, line_pair):
        """Limits of constant sections of either vertex lie on the special fiber."""
        flag = FlagType.projective(2)
        degeneration = build_degeneration(line_pair, flag)

        for vertex in line_pair:
            values = limit_point(line_pair, flag, vertex, random_flag_point(2, flag, seed=11))
            assert vanishes(degeneration.fiber_ideal.generators, degeneration.fiber_ring, values)

    @pytest.mark.slow
    def test_generic_fiber_of_three_vertices(self, classifier, three_vertices, full_flag):
        """The three-vertex family of complete flags passes the generic-fiber check."""
        degeneration = classifier.degeneration(three_vertices, full_flag)

        assert generic_fiber_check(degeneration, seed=0).passed


FLAG_TYPES = [
    FlagType.projective(3),
    FlagType.dual_projective(3),
    FlagType(3, (1, 2)),
    FlagType.projective(4),
    FlagType(4, (2,)),
    FlagType(4, (1, 3)),
    FlagType(4, (1, 2)),
    pytest.param(FlagType(4, (1, 2, 3)), marks=pytest.mark.slow),
]


@pytest.mark.degeneration
class TestFlagVarietyProperties:
    """Compounds, flag ideals and their dimensions on seeded samples."""

    @pytest.mark.parametrize("seed", range(5))
    def test_compound_is_multiplicative(self, seed):
        """compound(A·B, k) = compound(A, k)·compound(B, k) for every k."""
        rng = make_rng(seed, 11)
        first = matmul(lift(random_int_matrix(rng, 3, 4)), diagonal(random_permutation(rng, 3)))
        second = lift(random_int_matrix(rng, 3, 4))

        for k in range(1, 4):
            assert compound_matrix(matmul(first, second), k) == matmul(
                compound_matrix(first, k), compound_matrix(second, k)
            )

    @pytest.mark.parametrize("flag", FLAG_TYPES)
    def test_flag_ideal_vanishes_on_random_points(self, flag):
        """A hundred sampled flags satisfy the Plücker and incidence relations."""
        ideal = flag_ideal(flag)

        for salt in range(100):
            values = point_values(random_flag_point(flag.d, flag, seed=0, salt=(salt,)), flag, 1)
            assert vanishes(ideal.generators, ideal.ring, values)

    @pytest.mark.parametrize("flag", FLAG_TYPES)
    def test_projective_dimension(self, flag):
        """The cone has dimension sum k_t(k_{t+1} - k_t) plus one scaling per level."""
        ranks = flag.ranks + (flag.d,)
        expected = sum(k * (nxt - k) for k, nxt in zip(ranks, ranks[1:]))

        assert flag.dimension == expected
        assert dimension(flag_ideal(flag)) - flag.r == expected


def general_line_pair(rows) -> Configuration:
    """(0,0) as a plain matrix vertex next to the lattice spanned by ``rows``."""
    return Configuration([Vertex(LatticeBasis(diagonal([0, 0]))), Vertex(LatticeBasis(rows))])


@pytest.mark.degeneration
class TestFlatFamilyProperties:
    """The flat family over Q[t] does not depend on lattice representatives."""

    def test_parameter_is_not_a_zero_divisor(self, line_pair):
        """t lies outside the family, saturating by t changes nothing, and no relation involves t alone."""
        configurations = [line_pair, general_line_pair([[QT.one, QT.one], [QT.zero, T]])]
        for configuration in configurations:
            degeneration = build_degeneration(configuration, FlagType.projective(2))
            flat, ring = degeneration.flat_ideal, degeneration.ring
            t = ring.gen(PARAMETER)

            assert flat.normal_form(t) != ring.zero
            assert saturate(flat, t, degeneration.weights) == flat
            assert eliminate(flat, [n for n in ring.names if n != PARAMETER]).is_zero

    def test_plane_triple_is_flat(self):
        """The three-vertex family of P^2 is t-saturated."""
        configuration = Configuration.apartment([(0, 0, 0), (1, 0, 0), (0, 0, 1)])
        degeneration = build_degeneration(configuration, FlagType.projective(3))
        t = degeneration.ring.gen(PARAMETER)

        assert not degeneration.flat_ideal.contains(t)
        assert saturate(degeneration.flat_ideal, t, degeneration.weights) == degeneration.flat_ideal

    @pytest.mark.parametrize("power", [-1, 2])
    def test_homothety_invariance(self, power):
        """Scaling a basis by t^c leaves the family unchanged."""
        rows = [[QT.one, QT.one], [QT.zero, T]]
        flag = FlagType.projective(2)
        plain = build_degeneration(general_line_pair(rows), flag)
        scaled = build_degeneration(general_line_pair(scale(rows, T**power)), flag)

        assert scaled.flat_ideal == plain.flat_ideal

    def test_homothety_invariance_in_the_plane(self):
        """A scaled non-diagonal basis in d = 3 gives the same family."""
        rows = [[QT.one, QT.one, QT.zero], [QT.zero, T, QT.zero], [QT.zero, QT.zero, QT.one]]
        flag = FlagType.projective(3)

        def family(basis):
            base = Vertex(LatticeBasis(diagonal([0, 0, 0])))
            return build_degeneration(Configuration([base, Vertex(LatticeBasis(basis))]), flag).flat_ideal

        assert family(scale(rows, T)) == family(rows)

    @pytest.mark.parametrize("shear", [lift([[1, 2], [0, 1]]), [[QT.one, T], [QT.zero, QT.one]]])
    def test_basis_change_moves_block_coordinates(self, shear):
        """Replacing B by B·U substitutes compound(U)·p for the vertex's block."""
        rows = [[QT.one, QT.one], [QT.zero, T]]
        flag = FlagType.projective(2)
        plain = build_degeneration(general_line_pair(rows), flag)
        changed = build_degeneration(general_line_pair(matmul(rows, shear)), flag)
        ring = plain.ring
        names = PlueckerBlock(2, 1, 1, 2).names
        block = [ring.gen(n) for n in names]
        substitution = []
        for name, row in zip(names, compound_matrix(shear, 1)):
            image = ring.zero
            for coeff, p in zip(row, block):
                for e, a in to_laurent(coeff).items():
                    image += p * ring.gen(PARAMETER) ** e * ring.constant(a)
            substitution.append((ring.gen(name), image))
        moved = Ideal(ring, [g.compose(substitution) for g in plain.flat_ideal.generators])

        assert moved == changed.flat_ideal
