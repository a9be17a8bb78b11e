"""
Minimal primes of multihomogeneous ideals by recursive splitting.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors
from sympy.polys.rings import PolyElement

from app.algebra.ideals import (
    Ideal,
    dimension,
    intersect,
    radical_contains,
    saturate,
    saturate_by_variable_ideal,
)
from app.algebra.rings import PolyRing, support
from app.exceptions import InvalidInputError, ValidationFailure
from app.models.components import Confidence

logger = logging.getLogger(__name__)


@dataclass
class PrimeDecomposition:
    primes: list[Ideal]
    confidence: list[Confidence]
    intersection: Ideal
    radical: bool


def _distinct_factors(g: PolyElement) -> Optional[list[tuple[PolyElement, int]]]:
    """Nonconstant factors of g when g is reducible or not squarefree."""
    if g.is_ground or len(g) == 1 and sum(next(iter(g.keys()))) == 1:
        return None
    _, factors = g.factor_list()
    factors = [(f, e) for f, e in factors if not f.is_ground]
    if len(factors) >= 2 or (factors and factors[0][1] > 1):
        return factors
    return None


class PrimeDecomposer:
    """Splits an ideal into candidate primes, then validates the result.

    ``blocks`` are the variable sets of the multiprojective factors; a
    branch containing a whole block is empty in the product and dropped.
    ``expected_dimension`` (affine) prunes branches too small to hold a
    component of an equidimensional ideal; when the pruned split fails
    validation it is redone without pruning.
    """

    def __init__(self, blocks: Sequence[Sequence[str]], expected_dimension: Optional[int] = None):
        self.blocks = [tuple(b) for b in blocks]
        self.expected_dimension = expected_dimension
        self._pruned = 0

    def _irrelevant(self, ideal: Ideal) -> bool:
        ring = ideal.ring
        return any(all(ideal.contains(ring.gen(name)) for name in block) for block in self.blocks)

    def _factor_branches(self, ideal: Ideal) -> Optional[list[Ideal]]:
        best = None
        for g in ideal.groebner_basis():
            factors = _distinct_factors(g)
            if factors is None:
                continue
            rank = (len(factors), sum(g.degrees()))
            if best is None or rank < best[0]:
                best = (rank, factors)
        if best is None:
            return None
        factors = [f for f, _ in best[1]]
        branches = []
        for i, f in enumerate(factors):
            branch = ideal + [f]
            for previous in factors[:i]:
                branch = saturate(branch, previous)
            branches.append(branch)
        return branches

    def _zero_divisor_branches(self, ideal: Ideal) -> Optional[list[Ideal]]:
        ring = ideal.ring
        for name in ring.names:
            x = ring.gen(name)
            if ideal.contains(x):
                continue
            saturated = saturate(ideal, x)
            if saturated != ideal:
                return [saturated, ideal + [x]]
        return None

    def _leaves(self, ideal: Ideal) -> list[Ideal]:
        pending = deque([ideal])
        seen: set[frozenset] = set()
        leaves: list[Ideal] = []
        while pending:
            current = pending.popleft()
            if current.is_unit or self._irrelevant(current):
                continue
            if self.expected_dimension is not None and dimension(current) < self.expected_dimension:
                self._pruned += 1
                continue
            key = frozenset(current.groebner_basis())
            if key in seen:
                continue
            seen.add(key)
            branches = self._factor_branches(current) or self._zero_divisor_branches(current)
            if branches is None:
                leaves.append(current)
            else:
                logger.debug(f"split into {len(branches)} branches")
                pending.extend(branches)
        return leaves

    def _clean(self, leaves: list[Ideal]) -> list[Ideal]:
        cleaned: list[Ideal] = []
        for leaf in leaves:
            for block in self.blocks:
                leaf = saturate_by_variable_ideal(leaf, block)
            if leaf.is_unit or any(leaf == other for other in cleaned):
                continue
            cleaned.append(leaf)
        minimal = []
        for i, p in enumerate(cleaned):
            if not any(j != i and p.contains_ideal(q) for j, q in enumerate(cleaned)):
                minimal.append(p)
        return minimal

    def decompose(self, ideal: Ideal) -> PrimeDecomposition:
        if ideal.is_unit:
            raise InvalidInputError("the unit ideal has no minimal primes")
        self._pruned = 0
        try:
            return self._validated(ideal, self._clean(self._leaves(ideal)))
        except ValidationFailure:
            if not self._pruned:
                raise
            # some pruned branch held a component
            logger.warning(f"validation failed after pruning {self._pruned} low-dimensional branches; retrying")
            return PrimeDecomposer(self.blocks).decompose(ideal)

    def _validated(self, ideal: Ideal, primes: list[Ideal]) -> PrimeDecomposition:
        if not primes:
            raise ValidationFailure("splitting produced no components")
        primes.sort(key=lambda p: sorted(str(g) for g in p.groebner_basis()))
        logger.info(f"minimal primes: {len(primes)} candidates")

        for p in primes:
            if not p.contains_ideal(ideal):
                raise ValidationFailure("a candidate prime does not contain the ideal")
        intersection = primes[0]
        for p in primes[1:]:
            intersection = intersect(intersection, p)
        radical = intersection == ideal
        if not radical and not all(radical_contains(ideal, g) for g in intersection.generators):
            raise ValidationFailure("intersection of the candidate primes differs from the radical")
        confidence = [certify_prime(p) for p in primes]
        return PrimeDecomposition(primes, confidence, intersection, radical)


def minimal_primes(
    ideal: Ideal, blocks: Sequence[Sequence[str]] = (), expected_dimension: Optional[int] = None
) -> list[Ideal]:
    """Validated minimal primes of a multihomogeneous ideal."""
    return PrimeDecomposer(blocks, expected_dimension).decompose(ideal).primes


def _eliminate_linear(ring: PolyRing, polys: list[PolyElement]) -> list[PolyElement]:
    """Substitute away variables that occur in some generator only as a bare linear term."""
    polys = [g for g in polys if g]
    changed = True
    while changed:
        changed = False
        for g in polys:
            for i in sorted(support(g)):
                unit = tuple(1 if k == i else 0 for k in range(ring.ngens))
                if g.get(unit) and all(m == unit or not m[i] for m in g.keys()):
                    x = ring.gen(ring.names[i])
                    value = -(g - x * ring.constant(g[unit])).quo_ground(g[unit])
                    polys = [h.compose(x, value) for h in polys if h is not g]
                    polys = [h for h in polys if h]
                    changed = True
                    break
            if changed:
                break
    return polys


def _is_saturated_lattice_ideal(ideal: Ideal) -> bool:
    basis = ideal.groebner_basis()
    vectors = []
    for g in basis:
        if len(g) != 2:
            return False
        (a, ca), (b, cb) = g.items()
        if ca + cb != 0:
            return False
        vectors.append([x - y for x, y in zip(a, b)])
    ring = ideal.ring
    for i in sorted(set().union(*(support(g) for g in basis))):
        if saturate(ideal, ring.gen(ring.names[i])) != ideal:
            return False
    matrix = DomainMatrix([[ZZ(x) for x in v] for v in vectors], (len(vectors), ring.ngens), ZZ)
    factors = [f for f in invariant_factors(matrix) if f]
    return all(abs(int(f)) == 1 for f in factors)


def certify_prime(ideal: Ideal) -> Confidence:
    """Certified when, after linear substitutions, the ideal is zero, principal
    irreducible, or the ideal of a saturated lattice."""
    ring = ideal.ring
    remaining = _eliminate_linear(ring, list(ideal.groebner_basis()))
    if any(g.is_ground for g in remaining):
        return Confidence.HEURISTIC
    if not remaining:
        return Confidence.CERTIFIED
    reduced = Ideal(ring, remaining)
    basis = reduced.groebner_basis()
    if len(basis) == 1:
        _, factors = basis[0].factor_list()
        factors = [(f, e) for f, e in factors if not f.is_ground]
        return Confidence.CERTIFIED if len(factors) == 1 and factors[0][1] == 1 else Confidence.HEURISTIC
    if _is_saturated_lattice_ideal(reduced):
        return Confidence.CERTIFIED
    return Confidence.HEURISTIC


def dual_graph(primes: Sequence[Ideal], blocks: Sequence[Sequence[str]]) -> list[tuple[int, int]]:
    """Edges (i, j) whose primes meet in the multiprojective product."""
    edges = []
    for i in range(len(primes)):
        for j in range(i + 1, len(primes)):
            meet = primes[i] + primes[j]
            for block in blocks:
                meet = saturate_by_variable_ideal(meet, block)
                if meet.is_unit:
                    break
            if not meet.is_unit:
                edges.append((i, j))
    return edges


def is_connected(vertices: int, edges: Sequence[tuple[int, int]]) -> bool:
    if vertices <= 1:
        return True
    adjacency = {i: set() for i in range(vertices)}
    for a, b in edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    reached, frontier = {0}, deque([0])
    while frontier:
        for nxt in adjacency[frontier.popleft()] - reached:
            reached.add(nxt)
            frontier.append(nxt)
    return len(reached) == vertices
