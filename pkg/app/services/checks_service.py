"""
Structural assertions on computed decompositions and the general-position experiment.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

from sympy import QQ

from app.algebra.ideals import dimension
from app.algebra.matrices import determinant, diagonal, lift, matmul, rational_matrix
from app.models.building import Configuration, LatticeBasis, Vertex
from app.models.components import Decomposition
from app.models.degeneration import DegenerationIdeal
from app.models.flags import FlagType
from app.services.classification_service import ComponentClassifier
from app.services.decomposition_service import is_connected
from app.services.degeneration_service import generic_fiber_check
from app.utils.sampling import make_rng, random_int_matrix, random_permutation

logger = logging.getLogger(__name__)

GENERAL_POSITION_BOUND = 9


def count_bounds(flag: FlagType, n: int) -> tuple[int, Optional[int]]:
    """(lower, upper) bounds on the number of fiber components; upper only for two vertices."""
    return n, flag.schubert_cells if n == 2 else None


def is_multiplicity_free_case(flag: FlagType, n: int) -> bool:
    """Cases where the diagonal of the flag variety is multiplicity-free."""
    return n == 2 or flag.ranks == (1,) or (flag.ranks == (1, 2) and flag.d == 3)


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class StructuralReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, witness: str = "") -> None:
        self.checks.append(CheckResult(name, passed, "" if passed else witness))
        if not passed:
            logger.warning(f"check {name} failed: {witness}")


class StructuralChecks:
    """Equidimensionality, connectedness, count bounds and reducedness of a special fiber."""

    @staticmethod
    def run(
        decomposition: Decomposition,
        configuration: Configuration,
        flag: FlagType,
        degeneration: Optional[DegenerationIdeal] = None,
        seed: int = 0,
    ) -> StructuralReport:
        """Runs every check; the generic-fiber check only when a degeneration is given."""
        report = StructuralReport()
        n = len(configuration)
        expected = flag.dimension
        blocks = len(decomposition.fiber.ring.blocks())
        dimensions = [dimension(c.prime) - blocks for c in decomposition.components]
        wrong = [(i + 1, k) for i, k in enumerate(dimensions) if k != expected]
        report.add("equidimensional", not wrong, f"components (index, dimension) {wrong}, expected {expected}")

        count = len(decomposition.components)
        connected = is_connected(count, decomposition.dual_graph)
        report.add("connected", connected, f"dual graph edges {decomposition.dual_graph} over {count} components")

        lower, upper = count_bounds(flag, n)
        within = count >= lower and (upper is None or count <= upper)
        report.add("count_bounds", within, f"{count} components outside [{lower}, {upper}]")

        if is_multiplicity_free_case(flag, n):
            report.add("reduced", decomposition.radical, "fiber ideal differs from the intersection of its primes")

        if degeneration is not None:
            fiber = generic_fiber_check(degeneration, seed)
            report.add("generic_fiber", fiber.passed, fiber.witness)
        return report


def structural_checks(
    decomposition: Decomposition,
    configuration: Configuration,
    flag: FlagType,
    degeneration: Optional[DegenerationIdeal] = None,
    seed: int = 0,
) -> StructuralReport:
    return StructuralChecks.run(decomposition, configuration, flag, degeneration, seed)


@dataclass
class ExperimentRow:
    trial: int
    exponents: list[int]
    components: int
    bound: int

    @property
    def attained(self) -> bool:
        return self.components == self.bound


def general_position_vertex(d: int, rng) -> tuple[Vertex, list[int]]:
    """U·diag(t^e)·V for random invertible integer U, V and e a permutation of 0..d−1."""
    exponents = random_permutation(rng, d)
    factors = []
    while len(factors) < 2:
        sample = rational_matrix(random_int_matrix(rng, d, GENERAL_POSITION_BOUND))
        if determinant(sample, domain=QQ):
            factors.append(lift(sample))
    rows = matmul(matmul(factors[0], diagonal(exponents)), factors[1])
    return Vertex(LatticeBasis(rows)), exponents


def general_position_experiment(
    flag: FlagType, trials: int, seed: int, classifier: Optional[ComponentClassifier] = None
) -> list[ExperimentRow]:
    """Component counts of two-vertex configurations {I, U·diag(t^e)·V} against the Schubert bound."""
    classifier = classifier or ComponentClassifier(seed=seed, radius=0)
    rng = make_rng(seed, 41)
    base = Vertex(LatticeBasis.diagonal([0] * flag.d))
    rows = []
    for trial in range(1, trials + 1):
        vertex, exponents = general_position_vertex(flag.d, rng)
        configuration = Configuration([base, vertex])
        count = len(classifier.decompose(configuration, flag).components)
        rows.append(ExperimentRow(trial, exponents, count, flag.schubert_cells))
        logger.info(f"trial {trial}: e={exponents}, {count} components (bound {flag.schubert_cells})")
    return rows
