"""
Randomized structural properties of special fibers.

Configurations are drawn from a fixed seed so every run checks the same cases.
"""

import pytest

from app.algebra.matrices import QT, T
from app.models.building import ApartmentVertex, Configuration, LatticeBasis, Vertex
from app.models.flags import FlagType
from app.services.checks_service import count_bounds, is_multiplicity_free_case, structural_checks
from app.services.classification_service import ComponentClassifier
from app.services.pipeline_service import run
from app.utils.config_parser import parse_config
from app.utils.sampling import make_rng

CASES = 24

# (flag type, largest number of vertices)
FLAG_TYPES = [
    (FlagType.projective(2), 3),
    (FlagType.projective(3), 3),
    (FlagType.dual_projective(3), 3),
    (FlagType(3, (1, 2)), 2),
    (FlagType.projective(4), 2),
]


def random_case(index: int) -> tuple[FlagType, Configuration]:
    """Flag type and apartment configuration with pairwise distinct vertices."""
    rng = make_rng(2024, index)
    flag, most = FLAG_TYPES[index % len(FLAG_TYPES)]
    n = int(rng.integers(1, most + 1))
    vectors: list[tuple[int, ...]] = []
    while len(vectors) < n:
        vector = tuple(int(a) for a in rng.integers(0, 3, size=flag.d))
        low = min(vector)
        vector = tuple(a - low for a in vector)
        if vector not in vectors:
            vectors.append(vector)
    return flag, Configuration.apartment(vectors)


@pytest.fixture(scope="module")
def property_classifier() -> ComponentClassifier:
    return ComponentClassifier(seed=0, radius=0)


@pytest.mark.slow
@pytest.mark.components
class TestFiberProperties:
    """Every special fiber is equidimensional, connected and within its bounds."""

    @pytest.mark.parametrize("index", range(CASES))
    def test_structural_properties(self, property_classifier, index):
        """Structural checks pass on a random configuration."""
        flag, configuration = random_case(index)
        decomposition = property_classifier.decompose(configuration, flag)
        degeneration = property_classifier.degeneration(configuration, flag)
        report = structural_checks(decomposition, configuration, flag, degeneration, seed=index)

        assert report.passed, [(c.name, c.witness) for c in report.checks if not c.passed]
        lower, _ = count_bounds(flag, len(configuration))
        assert len(decomposition.components) >= lower
        if is_multiplicity_free_case(flag, len(configuration)):
            assert decomposition.radical

    @pytest.mark.parametrize("index", [i for i in range(CASES) if i % len(FLAG_TYPES) == 0])
    def test_every_vertex_has_a_primary_component(self, property_classifier, index):
        """On the projective line every vertex labels exactly one component."""
        flag, configuration = random_case(index)
        decomposition = property_classifier.classify(configuration, flag)
        primaries = sorted(c.label.index for c in decomposition.components if c.label.index is not None)

        assert primaries == list(range(1, len(configuration) + 1))


LINE_TRIPLE = "d=2\nflag=1\nlattice diag=1,0\nlattice diag=0,0\nlattice diag=0,1\nradius=1\nseed=3\n"


@pytest.mark.components
class TestReproducibility:
    """Reports depend only on the configuration and the seed."""

    @pytest.mark.parametrize("command", ["classify", "check", "ideal"])
    def test_identical_seeds_give_identical_reports(self, command):
        """Two runs with the same seed serialize to the same bytes."""
        config = parse_config(LINE_TRIPLE)

        first = run(command, config).model_dump_json()
        second = run(command, config).model_dump_json()

        assert first == second


def assert_projection_lemma(classifier, larger, positions, flag):
    """Every component of the smaller fiber is the birational image of exactly one larger component."""
    smaller = larger.subset(positions)
    big = classifier.prime_decomposition(larger, flag).primes
    small = classifier.prime_decomposition(smaller, flag).primes
    matches = [classifier.match_under_vertex_projection(p, larger, positions, smaller, flag) for p in big]

    for index in range(len(small)):
        onto = [m for m in matches if m is not None and m.index == index]
        assert len(onto) == 1, (index, matches)
        assert onto[0].birational, onto[0].evidence
    return matches


@pytest.mark.components
class TestVertexProjection:
    """Forgetting vertices maps components onto components."""

    @pytest.mark.parametrize("positions", [[1, 2], [1, 3], [2, 3]])
    def test_chain_on_the_line(self, property_classifier, positions):
        """Dropping a vertex of a three-vertex chain contracts exactly its primary component."""
        larger = Configuration.apartment([(0, 0), (1, 0), (2, 0)])
        matches = assert_projection_lemma(property_classifier, larger, positions, FlagType.projective(2))

        assert sum(m is None for m in matches) == 1

    @pytest.mark.slow
    def test_tripod_on_the_line(self, property_classifier):
        """Dropping the branch point of a tripod keeps the lemma."""
        branch = Vertex(LatticeBasis([[QT.one, T], [QT.one, QT.zero]]))
        larger = Configuration([ApartmentVertex((1, 0)), ApartmentVertex((0, 1)), branch])

        assert_projection_lemma(property_classifier, larger, [1, 2], FlagType.projective(2))
