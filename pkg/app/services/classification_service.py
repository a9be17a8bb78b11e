"""
Labels for special-fiber components: primary, secondary, mixed or unresolved.

Every degeneration, prime decomposition and classification is cached per
(configuration, flag type), so the recursive projections reuse the work
done for the top-level run.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from app.algebra.evaluation import vanishes
from app.algebra.ideals import (
    Ideal,
    dimension,
    eliminate,
    hilbert_value,
    saturate_by_variable_ideal,
    substitute_constants,
)
from app.config import get_settings
from app.exceptions import ClassificationError
from app.models.building import Configuration, Vertex
from app.models.components import (
    ComponentLabel,
    ComponentReport,
    Decomposition,
    LabelKind,
)
from app.models.degeneration import DegenerationIdeal
from app.models.flags import FlagType, PlueckerBlock
from app.services.building_service import secondary_candidates
from app.services.decomposition_service import (
    PrimeDecomposer,
    PrimeDecomposition,
    dual_graph,
)
from app.services.degeneration_service import (
    build_degeneration,
    flag_ideal,
    limit_point,
    point_values,
    random_flag_point,
)

logger = logging.getLogger(__name__)

CacheKey = tuple[tuple[str, ...], FlagType]


@dataclass
class PrimaryOutcome:
    passed: bool
    inconclusive: bool = False
    evidence: list[str] = field(default_factory=list)


@dataclass
class ProjectionMatch:
    index: int
    birational: bool
    evidence: list[str] = field(default_factory=list)


def _key(configuration: Configuration, flag: FlagType) -> CacheKey:
    return configuration.key(), flag


def _rename_blocks(flag: FlagType, mapping: dict[tuple[int, int], tuple[int, int]]) -> dict[str, str]:
    """Variable renaming for (vertex, level) -> (vertex', level') block moves."""
    rename = {}
    for (j, t), (j2, t2) in mapping.items():
        k = flag.ranks[t - 1]
        source = PlueckerBlock(j, t, k, flag.d)
        target = PlueckerBlock(j2, t2, k, flag.d)
        rename.update(dict(zip(source.names, target.names)))
    return rename


def _vertex_moves(flag: FlagType, positions: Sequence[int]) -> dict[tuple[int, int], tuple[int, int]]:
    """Block moves (position, level) -> (index in the smaller configuration, level)."""
    return {(p, t): (i, t) for i, p in enumerate(positions, start=1) for t in range(1, flag.r + 1)}


class ComponentClassifier:
    """Decomposes special fibers and labels their components.

    ``seed`` drives every randomized test; ``radius`` and ``max_candidates``
    bound the vertices tried as secondary labels.
    """

    def __init__(
        self,
        seed: Optional[int] = None,
        radius: Optional[int] = None,
        max_candidates: Optional[int] = None,
        primary_seeds: Optional[int] = None,
    ):
        settings = get_settings()
        self.seed = settings.seed if seed is None else seed
        self.radius = settings.candidate_radius if radius is None else radius
        self.max_candidates = settings.max_candidates if max_candidates is None else max_candidates
        self.primary_seeds = primary_seeds or settings.primary_test_seeds
        self._degenerations: dict[CacheKey, DegenerationIdeal] = {}
        self._primes: dict[CacheKey, PrimeDecomposition] = {}
        self._classified: dict[CacheKey, Decomposition] = {}
        self._secondary_names: dict[CacheKey, list[tuple[Vertex, str]]] = {}
        self._graphs: dict[CacheKey, list[tuple[int, int]]] = {}
        self._images: dict[tuple[Ideal, frozenset[str]], Ideal] = {}
        self._primary: dict[tuple[Ideal, int, FlagType], PrimaryOutcome] = {}

    # cached building blocks

    def degeneration(self, configuration: Configuration, flag: FlagType) -> DegenerationIdeal:
        key = _key(configuration, flag)
        if key not in self._degenerations:
            self._degenerations[key] = build_degeneration(configuration, flag)
        return self._degenerations[key]

    def prime_decomposition(self, configuration: Configuration, flag: FlagType) -> PrimeDecomposition:
        key = _key(configuration, flag)
        if key not in self._primes:
            degeneration = self.degeneration(configuration, flag)
            blocks = degeneration.block_names()
            expected = flag.dimension + len(blocks)
            logger.info(f"decomposing fiber of {flag.label} over {len(configuration)} vertices")
            self._primes[key] = PrimeDecomposer(blocks, expected).decompose(degeneration.fiber_ideal)
        return self._primes[key]

    def decompose(self, configuration: Configuration, flag: FlagType) -> Decomposition:
        """Validated decomposition without labels."""
        degeneration = self.degeneration(configuration, flag)
        primes = self.prime_decomposition(configuration, flag)
        blocks = degeneration.block_names()
        reports = [
            ComponentReport(prime=p, dimension=dimension(p) - len(blocks), confidence=c)
            for p, c in zip(primes.primes, primes.confidence)
        ]
        key = _key(configuration, flag)
        if key not in self._graphs:
            self._graphs[key] = dual_graph(primes.primes, blocks)
        return Decomposition(
            fiber=degeneration.fiber_ideal,
            components=reports,
            validated=True,
            radical=primes.radical,
            dual_graph=list(self._graphs[key]),
            notes=list(degeneration.provenance),
        )

    def _eliminate(self, prime: Ideal, names: Sequence[str]) -> Ideal:
        key = (prime, frozenset(names))
        if key not in self._images:
            self._images[key] = eliminate(prime, names)
        return self._images[key]

    # individual tests

    def _fiber_is_point(self, prime: Ideal, degeneration: DegenerationIdeal, values: dict[str, object]) -> bool:
        """Whether V(prime) over the assigned blocks is one reduced point of the remaining blocks."""
        ring = degeneration.fiber_ring
        target = ring.drop(values)
        rest = [b.names for b in degeneration.blocks if b.names[0] not in values]
        fiber = substitute_constants(Ideal(ring, prime.groebner_basis()), target, values)
        for names in rest:
            fiber = saturate_by_variable_ideal(fiber, names)
            if fiber.is_unit:
                return False
        if dimension(fiber) != len(rest):
            return False
        return hilbert_value(fiber, rest, [1] * len(rest)) == 1

    def _degree_one(self, prime: Ideal, vertex: int, degeneration: DegenerationIdeal, salt: int) -> bool:
        flag = degeneration.flag
        point = random_flag_point(flag.d, flag, self.seed, salt=(vertex, salt))
        return self._fiber_is_point(prime, degeneration, point_values(point, flag, vertex))

    def is_primary_for(self, prime: Ideal, vertex: int, degeneration: DegenerationIdeal) -> PrimaryOutcome:
        """Dominance onto the vertex's flag variety, then a randomized degree-one fiber test."""
        flag = degeneration.flag
        key = (prime, vertex, flag)
        if key in self._primary:
            return self._primary[key]
        others = [n for n in degeneration.fiber_ring.names if n not in set(degeneration.vertex_names(vertex))]
        image = self._eliminate(prime, others)
        if image != flag_ideal(flag, image.ring, vertex):
            outcome = PrimaryOutcome(False, evidence=[f"projection to vertex {vertex} is not dominant"])
        elif degeneration.n == 1:
            outcome = PrimaryOutcome(True, evidence=["single vertex: projection is the identity"])
        else:
            votes = [self._degree_one(prime, vertex, degeneration, s) for s in range(self.primary_seeds)]
            passed = 2 * sum(votes) > len(votes)
            outcome = PrimaryOutcome(passed, inconclusive=len(set(votes)) > 1)
            outcome.evidence.append(f"dominant onto vertex {vertex}; degree-one votes {votes}")
            if outcome.inconclusive:
                outcome.evidence.append(f"inconclusive degree-one test for vertex {vertex}, majority {passed}")
                logger.warning(outcome.evidence[-1])
        self._primary[key] = outcome
        return outcome

    def _project_vertices(
        self, prime: Ideal, larger: DegenerationIdeal, positions: Sequence[int], target: DegenerationIdeal
    ) -> Ideal:
        kept = set(positions)
        dropped = [n for j in range(1, larger.n + 1) if j not in kept for n in larger.vertex_names(j)]
        image = self._eliminate(prime, dropped)
        return image.in_ring(target.fiber_ring, _rename_blocks(larger.flag, _vertex_moves(larger.flag, positions)))

    def _point_on(self, image: Ideal, smaller: Configuration, flag: FlagType) -> Optional[dict[str, object]]:
        """Limit of a random constant section of some vertex of ``smaller`` that lies on ``image``."""
        ring = self.degeneration(smaller, flag).fiber_ring
        for salt, vertex in enumerate(smaller):
            point = random_flag_point(flag.d, flag, self.seed, salt=(89, salt))
            values = limit_point(smaller, flag, vertex, point)
            if vanishes(image.generators, ring, values):
                return values
        return None

    def match_under_vertex_projection(
        self,
        prime: Ideal,
        larger: Configuration,
        positions: Sequence[int],
        smaller: Configuration,
        flag: FlagType,
        point: Optional[dict[str, object]] = None,
    ) -> Optional[ProjectionMatch]:
        """Component of the smaller fiber that ``prime`` maps onto, if any.

        ``positions`` are the 1-based places of the smaller configuration's
        vertices inside the larger one. Birationality is decided by the fiber
        of ``prime`` over ``point``, a generic point of the target in the
        smaller fiber's variables; without one, a limit point of some vertex
        of ``smaller`` lying on the target is used.
        """
        big, small = self.degeneration(larger, flag), self.degeneration(smaller, flag)
        targets = self.prime_decomposition(smaller, flag).primes
        image = self._project_vertices(prime, big, positions, small)
        index = next((i for i, q in enumerate(targets) if q == image), None)
        if index is None:
            return None
        if point is None:
            point = self._point_on(image, smaller, flag)
        if point is not None:
            rename = _rename_blocks(flag, {b: a for a, b in _vertex_moves(flag, positions).items()})
            lifted = {rename.get(name, name): value for name, value in point.items()}
            birational = self._fiber_is_point(prime, big, lifted)
            verdict = "a single point" if birational else "not a single point"
            return ProjectionMatch(index, birational, [f"fiber over a generic point of the target is {verdict}"])
        covering = 0
        for other in self.prime_decomposition(larger, flag).primes:
            if other == prime or self._project_vertices(other, big, positions, small) == image:
                covering += 1
        evidence = [f"no sample point on the target; {covering} component(s) of the larger fiber cover it"]
        logger.warning(evidence[0])
        return ProjectionMatch(index, covering == 1, evidence)

    def _candidates(self, configuration: Configuration) -> list[Vertex]:
        return secondary_candidates(configuration, self.radius)[: self.max_candidates]

    def secondary_scan(
        self, prime: Ideal, configuration: Configuration, flag: FlagType, candidates: Sequence[Vertex]
    ) -> tuple[Optional[Vertex], list[str]]:
        """Vertex L whose primary component in Γ ∪ {L} maps birationally onto ``prime``."""
        evidence: list[str] = []
        found: Optional[Vertex] = None
        degeneration = self.degeneration(configuration, flag)
        n = len(configuration)
        for salt, vertex in enumerate(candidates):
            point = random_flag_point(flag.d, flag, self.seed, salt=(97, salt))
            values = limit_point(configuration, flag, vertex, point)
            if not vanishes(prime.generators, degeneration.fiber_ring, values):
                continue
            larger = configuration.with_vertex(vertex)
            big = self.degeneration(larger, flag)
            for candidate in self.prime_decomposition(larger, flag).primes:
                if not self.is_primary_for(candidate, n + 1, big).passed:
                    continue
                match = self.match_under_vertex_projection(
                    candidate, larger, list(range(1, n + 1)), configuration, flag, point=values
                )
                if match is None or self.prime_decomposition(configuration, flag).primes[match.index] != prime:
                    evidence.append(f"{vertex.label()}: primary component does not map onto this one")
                    break
                evidence.extend(f"{vertex.label()}: {line}" for line in match.evidence)
                if not match.birational:
                    evidence.append(f"{vertex.label()}: projection of the primary component is not birational")
                    break
                evidence.append(f"{vertex.label()}: primary component maps birationally onto this one")
                logger.info(f"secondary vertex found: {vertex.label()}")
                if found is not None and found != vertex:
                    raise ClassificationError(
                        f"component is secondary for both {found.label()} and {vertex.label()}"
                    )
                found = found or vertex
                break
        return found, evidence

    def flag_project_component(
        self, prime: Ideal, configuration: Configuration, flag: FlagType, levels: Sequence[int]
    ) -> Optional[tuple[int, ComponentLabel]]:
        """Component of the sub-flag fiber that ``prime`` maps onto, with its label."""
        levels = tuple(levels)
        if levels == tuple(range(1, flag.r + 1)):
            decomposition = self.classify(configuration, flag)
            index = next((i for i, q in enumerate(decomposition.primes()) if q == prime), None)
            return None if index is None else (index, decomposition.components[index].label)
        degeneration = self.degeneration(configuration, flag)
        dropped = [n for t in range(1, flag.r + 1) if t not in levels for n in degeneration.level_names(t)]
        image = self._eliminate(prime, dropped)
        sub = flag.restrict(levels)
        smaller = self.classify(configuration, sub)
        mapping = {
            (j, t): (j, i)
            for j in range(1, len(configuration) + 1)
            for i, t in enumerate(levels, start=1)
        }
        image = image.in_ring(self.degeneration(configuration, sub).fiber_ring, _rename_blocks(flag, mapping))
        for i, component in enumerate(smaller.components):
            if component.prime == image:
                return i, component.label
        return None

    def _mixed_witnesses(
        self, prime: Ideal, configuration: Configuration, flag: FlagType
    ) -> tuple[Optional[tuple[tuple[str, str], ...]], list[str]]:
        seen: list[tuple[str, Vertex, str]] = []
        evidence = []
        for levels in flag.sub_types():
            sub = flag.restrict(levels)
            result = self.flag_project_component(prime, configuration, flag, levels)
            if result is None:
                evidence.append(f"{sub.label}: image is not a component")
                continue
            _, label = result
            evidence.append(f"{sub.label}: onto {label.describe()}")
            if not label.has_vertex:
                continue
            for other_flag, other_vertex, other_text in seen:
                if other_vertex != label.vertex:
                    return ((other_flag, other_text), (sub.label, label.vertex.label())), evidence
            seen.append((sub.label, label.vertex, label.vertex.label()))
        return None, evidence

    def _secondary_name(self, configuration: Configuration, flag: FlagType, vertex: Vertex) -> str:
        names = self._secondary_names.setdefault(_key(configuration, flag), [])
        for known, name in names:
            if known == vertex:
                return name
        name = f"L{len(configuration) + len(names) + 1}"
        names.append((vertex, name))
        return name

    def classify(self, configuration: Configuration, flag: FlagType) -> Decomposition:
        key = _key(configuration, flag)
        if key in self._classified:
            return self._classified[key]
        decomposition = self.decompose(configuration, flag)
        degeneration = self.degeneration(configuration, flag)
        candidates = self._candidates(configuration)
        primaries: dict[int, int] = {}

        for index, report in enumerate(decomposition.components):
            prime = report.prime
            for j, vertex in enumerate(configuration, start=1):
                outcome = self.is_primary_for(prime, j, degeneration)
                report.evidence.extend(outcome.evidence)
                if outcome.inconclusive:
                    decomposition.notes.append(f"component {index + 1}: {outcome.evidence[-1]}")
                if not outcome.passed:
                    continue
                if report.label.kind == LabelKind.PRIMARY:
                    raise ClassificationError(f"component {index + 1} is primary for two vertices")
                if j in primaries:
                    raise ClassificationError(f"vertex {j} has two primary components")
                primaries[j] = index
                report.label = ComponentLabel.primary(vertex, j)

        for index, report in enumerate(decomposition.components):
            if report.label.kind == LabelKind.PRIMARY:
                continue
            vertex, evidence = self.secondary_scan(report.prime, configuration, flag, candidates)
            report.evidence.extend(evidence)
            if vertex is not None:
                report.label = ComponentLabel.secondary(vertex, self._secondary_name(configuration, flag, vertex))
            witnesses, evidence = self._mixed_witnesses(report.prime, configuration, flag)
            report.evidence.extend(evidence)
            if witnesses is not None:
                if report.label.kind == LabelKind.SECONDARY:
                    raise ClassificationError(f"component {index + 1} is both secondary and mixed")
                report.label = ComponentLabel.mixed(witnesses)

        missing = [j for j in range(1, len(configuration) + 1) if j not in primaries]
        if missing:
            decomposition.notes.append(f"no primary component found for vertices {missing}")
        logger.info(f"classified {flag.label} over {len(configuration)} vertices: {decomposition.summary()}")
        self._classified[key] = decomposition
        return decomposition
