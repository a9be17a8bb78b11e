"""
Construction of Mustafin degeneration ideals and their special fibers.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from sympy import QQ
from sympy.polys.rings import PolyElement

from app.algebra.evaluation import vanishes
from app.algebra.ideals import (
    Ideal,
    dimension,
    hilbert_value,
    saturate,
    saturate_by_variable_ideal,
    substitute_constants,
)
from app.algebra.matrices import (
    QT,
    T,
    Matrix,
    compound,
    determinant,
    evaluate_at,
    leading_coefficient,
    matmul,
    minor,
    rational_matrix,
    subsets,
    to_laurent,
    valuation,
)
from app.algebra.rings import PARAMETER, PolyRing, Variable
from app.algebra.syntax import format_polynomial
from app.exceptions import InvalidInputError, SingularMatrixError
from app.models.building import Configuration, Vertex
from app.models.degeneration import DegenerationIdeal
from app.models.flags import FlagType, PlueckerBlock, blocks_for
from app.utils.sampling import make_rng, random_int_matrix, random_nonzero_rational

logger = logging.getLogger(__name__)

FlagPoint = list[list]  # one coordinate vector per level, indexed by lexicographic subsets

MAX_SAMPLE_RETRIES = 50


def compound_matrix(basis: Matrix, k: int) -> Matrix:
    """Matrix of k×k minors with lexicographic row and column subsets."""
    d = len(basis)
    if not 1 <= k <= d:
        raise InvalidInputError(f"compound order {k} outside 1..{d}")
    return compound(basis, k)


def degeneration_ring(flag: FlagType, vertices: int, with_parameter: bool = True) -> PolyRing:
    variables = [v for block in blocks_for(flag, vertices) for v in block.variables()]
    if with_parameter:
        variables.append(Variable(PARAMETER, is_param=True))
    return PolyRing(variables)


def _sort_sign(sequence: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    if len(set(sequence)) < len(sequence):
        return 0, ()
    inversions = sum(1 for a, b in combinations(range(len(sequence)), 2) if sequence[a] > sequence[b])
    return (-1) ** inversions, tuple(sorted(sequence))


def flag_relations(flag: FlagType, ring: PolyRing, vertex: int) -> list[PolyElement]:
    """Grassmann-Plücker and incidence relations of one vertex's blocks.

    For levels k <= l: Σ_m (−1)^m p_k(α, β_m)·p_l(β∖β_m) over |α| = k−1,
    |β| = l+1, with antisymmetric reindexing of p_k.
    """
    d = flag.d
    blocks = {t: PlueckerBlock(vertex, t, k, d) for t, k in enumerate(flag.ranks, start=1)}
    seen: set[PolyElement] = set()
    out: list[PolyElement] = []
    for a in blocks:
        for b in blocks:
            if a > b:
                continue
            low, high = blocks[a], blocks[b]
            for alpha in combinations(range(1, d + 1), low.k - 1):
                for beta in combinations(range(1, d + 1), high.k + 1):
                    poly = ring.zero
                    for m, pivot in enumerate(beta):
                        sign, sorted_subset = _sort_sign((*alpha, pivot))
                        if not sign:
                            continue
                        rest = beta[:m] + beta[m + 1:]
                        term = ring.gen(low.name_of(sorted_subset)) * ring.gen(high.name_of(rest))
                        poly += term if sign * (-1) ** m > 0 else -term
                    if not poly:
                        continue
                    normalized = poly.quo_ground(poly.LC)
                    if normalized not in seen:
                        seen.add(normalized)
                        out.append(normalized)
    return out


def flag_ideal(flag: FlagType, ring: Optional[PolyRing] = None, vertex: int = 1) -> Ideal:
    """Ideal of the flag variety of type ``flag`` in one vertex's blocks."""
    ring = ring or degeneration_ring(flag, 1, with_parameter=False)
    return Ideal(ring, flag_relations(flag, ring, vertex))


def flag_point_from_matrix(matrix: Sequence[Sequence[object]], flag: FlagType) -> FlagPoint:
    """Plücker vectors of the flag spanned by the first k_t rows."""
    rows = [[QQ.convert(x) for x in r] for r in matrix]
    point = []
    for k in flag.ranks:
        first = list(range(1, k + 1))
        point.append([minor(rows, first, subset, domain=QQ) for subset in subsets(flag.d, k)])
    return point


def random_flag_point(
    d: int, flag: FlagType, seed: int, bound: Optional[int] = None, salt: Sequence[int] = ()
) -> FlagPoint:
    """Flag point from a random invertible integer matrix."""
    rng = make_rng(seed, d, 17, *salt)
    for _ in range(MAX_SAMPLE_RETRIES):
        sample = rational_matrix(random_int_matrix(rng, d, bound))
        if determinant(sample, domain=QQ):
            return flag_point_from_matrix(sample, flag)
    raise SingularMatrixError(f"no invertible sample after {MAX_SAMPLE_RETRIES} attempts")


def point_values(point: FlagPoint, flag: FlagType, vertex: int) -> dict[str, object]:
    """Variable assignment placing a flag point into one vertex's blocks."""
    values = {}
    for t, (k, coords) in enumerate(zip(flag.ranks, point), start=1):
        block = PlueckerBlock(vertex, t, k, flag.d)
        values.update(dict(zip(block.names, coords)))
    return values


def _leading_part(column: list):
    """Scale a vector over Q(t) by t^-v (v its minimal valuation) and set t = 0."""
    v = min(valuation(x) for x in column if x)
    return [leading_coefficient(x) if x and valuation(x) == v else QQ.zero for x in column]


def transported_point(point: FlagPoint, flag: FlagType, transform: Matrix, at) -> FlagPoint:
    """compound(M)·w per level, at t = ``at`` or, for ``at`` None, as the t → 0 limit."""
    out = []
    for k, coords in zip(flag.ranks, point):
        c = compound(transform, k)
        column = [sum((row[u] * QT(coords[u]) for u in range(len(coords))), QT.zero) for row in c]
        if at is None:
            out.append(_leading_part(column))
        else:
            out.append([evaluate_at(x, at) for x in column])
    return out


def cleared_column(basis: Matrix, k: int, block: PlueckerBlock, ring: PolyRing) -> list[PolyElement]:
    """compound(B, k)·p^{(j)} scaled by the t-power giving minimal valuation 0."""
    c = compound_matrix(basis, k)
    v = min(valuation(x) for row in c for x in row if x)
    tvar = ring.gen(PARAMETER)
    entries = []
    for row in c:
        entry = ring.zero
        for name, coeff in zip(block.names, row):
            if not coeff:
                continue
            for e, a in to_laurent(coeff * T ** (-v)).items():
                entry += ring.gen(name) * tvar**e * ring.constant(a)
        entries.append(entry)
    return entries


def cross_minor_generators(configuration: Configuration, flag: FlagType, ring: Optional[PolyRing] = None) -> list[PolyElement]:
    """2×2 minors of the cleared columns, per level and pair of vertices."""
    ring = ring or degeneration_ring(flag, len(configuration))
    gens: list[PolyElement] = []
    for t, k in enumerate(flag.ranks, start=1):
        columns = [
            cleared_column(vertex.basis.rows, k, PlueckerBlock(j, t, k, flag.d), ring)
            for j, vertex in enumerate(configuration, start=1)
        ]
        for a, b in combinations(range(len(columns)), 2):
            for s, u in combinations(range(len(columns[a])), 2):
                g = columns[a][s] * columns[b][u] - columns[a][u] * columns[b][s]
                if g:
                    gens.append(g)
    return gens


def saturation_weights(configuration: Configuration, flag: FlagType) -> Optional[dict[str, int]]:
    """Positive weights making the cross minors homogeneous, for apartment configurations.

    Each cleared entry t^{a'_S}·p_S gets weight M, with w(t) = 1.
    """
    if not configuration.is_apartment:
        return None
    shifts: dict[str, int] = {}
    for j, vertex in enumerate(configuration, start=1):
        for t, k in enumerate(flag.ranks, start=1):
            block = PlueckerBlock(j, t, k, flag.d)
            sums = [sum(vertex.exponents[i - 1] for i in s) for s in block.subsets]
            low = min(sums)
            shifts.update({name: s - low for name, s in zip(block.names, sums)})
    top = max(shifts.values()) + 1
    weights = {name: top - a for name, a in shifts.items()}
    weights[PARAMETER] = 1
    return weights


def build_degeneration(configuration: Configuration, flag: FlagType) -> DegenerationIdeal:
    """Flat ideal (J₀ : t^∞, then irrelevant saturation per block) and its special fiber."""
    if configuration.dim != flag.d:
        raise InvalidInputError(f"configuration has d = {configuration.dim}, flag type d = {flag.d}")
    n = len(configuration)
    blocks = blocks_for(flag, n)
    ring = degeneration_ring(flag, n)
    weights = saturation_weights(configuration, flag)
    minors = cross_minor_generators(configuration, flag, ring)
    relations = [g for j in range(1, n + 1) for g in flag_relations(flag, ring, j)]
    provenance = [f"{len(minors)} cross minors, {len(relations)} flag relations"]
    logger.info(f"building degeneration: n={n}, flag={flag.label}, d={flag.d}")

    flat = saturate(Ideal(ring, minors + relations), ring.gen(PARAMETER), weights)
    provenance.append("saturated by t" + (" (weighted divide-out)" if weights else " (auxiliary variable)"))
    for block in blocks:
        flat = saturate_by_variable_ideal(flat, block.names, weights)
    provenance.append(f"irrelevant saturation over {len(blocks)} blocks")

    fiber_ring = degeneration_ring(flag, n, with_parameter=False)
    raw = substitute_constants(flat, fiber_ring, {PARAMETER: 0})
    fiber = raw
    for block in blocks:
        fiber = saturate_by_variable_ideal(fiber, block.names)
    if fiber != raw:
        provenance.append("special fiber re-saturated by the irrelevant ideals")
    provenance.append(f"special fiber: {len(fiber.groebner_basis())} basis elements")
    logger.info(f"degeneration built: {provenance[-1]}")
    return DegenerationIdeal(
        configuration=configuration,
        flag=flag,
        blocks=blocks,
        ring=ring,
        flat_ideal=flat,
        fiber_ring=fiber_ring,
        fiber_ideal=fiber,
        weights=weights,
        provenance=provenance,
    )


@dataclass
class FiberCheck:
    passed: bool
    dimension: int
    degree: int
    witness: str = ""


def generic_fiber_check(degeneration: DegenerationIdeal, seed: int) -> FiberCheck:
    """At a random t = c, a generic flag in block 1 forces the transported flag in every other block."""
    flag, config = degeneration.flag, degeneration.configuration
    n = degeneration.n
    if n == 1:
        return FiberCheck(True, 1, 1)
    rng = make_rng(seed, 29)
    c = random_nonzero_rational(rng, 9)
    ambient = random_flag_point(flag.d, flag, seed)
    expected = {}
    for j, vertex in enumerate(config, start=1):
        point = transported_point(ambient, flag, vertex.basis.inverse(), c)
        expected.update(point_values(point, flag, j))
    values = {PARAMETER: c, **{name: expected[name] for name in degeneration.vertex_names(1)}}

    ring = degeneration.ring
    rest = [b for b in degeneration.blocks if b.vertex != 1]
    target = PolyRing(v for v in ring.variables if v.block is not None and v.block.vertex != 1)
    fiber = substitute_constants(degeneration.flat_ideal, target, values)

    if not vanishes(fiber.generators, target, expected):
        return FiberCheck(False, -1, 0, witness=f"transported point is not on the fiber at t = {c}")
    for block in rest:
        fiber = saturate_by_variable_ideal(fiber, block.names)
    dim = dimension(fiber)
    degree = hilbert_value(fiber, [b.names for b in rest], [1] * len(rest)) if dim >= 0 else 0
    passed = dim == len(rest) and degree == 1
    witness = "" if passed else (
        f"fiber over block 1 at t = {c}: dimension {dim} (expected {len(rest)}), degree {degree}; "
        + "; ".join(format_polynomial(g, target) for g in fiber.groebner_basis()[:5])
    )
    return FiberCheck(passed, dim, degree, witness)


def limit_point(
    configuration: Configuration, flag: FlagType, vertex: Vertex, point: FlagPoint
) -> dict[str, object]:
    """t → 0 specialization, in the configuration's blocks, of the constant section ``point`` of ``vertex``."""
    values: dict[str, object] = {}
    for j, other in enumerate(configuration, start=1):
        relative = matmul(other.basis.inverse(), vertex.basis.rows)
        values.update(point_values(transported_point(point, flag, relative, None), flag, j))
    return values
