"""
Ideals with cached Groebner bases and the ideal-theoretic operations built on them.
"""

import logging
from itertools import combinations_with_replacement, product
from threading import Lock
from typing import Iterable, Mapping, Optional, Sequence

from sympy import QQ
from sympy.polys.monomials import monomial_div
from sympy.polys.rings import PolyElement

from app.algebra.groebner import buchberger, normal_form
from app.algebra.orders import DEGREVLEX, MonomialOrder
from app.algebra.rings import PolyRing, Variable, is_weighted_homogeneous, weight_vector
from app.exceptions import InvalidInputError, NonHomogeneousError, RingMismatchError

logger = logging.getLogger(__name__)


class Ideal:
    """Ideal of a ``PolyRing`` given by generators.

    Reduced Groebner bases are computed on demand and cached once per order.
    """

    def __init__(self, ring: PolyRing, generators: Iterable[PolyElement] = ()):
        self.ring = ring
        self.generators: tuple[PolyElement, ...] = tuple(g for g in (ring.check(f) for f in generators) if g)
        self._bases: dict[MonomialOrder, tuple[PolyElement, ...]] = {}
        self._lock = Lock()

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        ideal = cls(ring, [ring.one])
        ideal._bases[DEGREVLEX] = (ring.one,)
        return ideal

    @classmethod
    def zero(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [])

    def __repr__(self) -> str:
        return f"Ideal({len(self.generators)} generators in {self.ring!r})"

    def groebner_basis(self, order: MonomialOrder = DEGREVLEX) -> tuple[PolyElement, ...]:
        cached = self._bases.get(order)
        if cached is not None:
            return cached
        basis = tuple(buchberger(self.ring, self.generators, order))
        with self._lock:
            return self._bases.setdefault(order, basis)

    def seed_basis(self, order: MonomialOrder, basis: Sequence[PolyElement]) -> None:
        """Attach a basis already known to be the reduced one for ``order``."""
        with self._lock:
            self._bases.setdefault(order, tuple(basis))

    def normal_form(self, f: PolyElement, order: MonomialOrder = DEGREVLEX) -> PolyElement:
        return normal_form(self.ring, f, self.groebner_basis(order), order)

    def contains(self, f: PolyElement) -> bool:
        return not self.normal_form(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        _same_ring(self, other)
        return all(self.contains(g) for g in other.generators)

    @property
    def is_unit(self) -> bool:
        basis = self.groebner_basis()
        return len(basis) == 1 and basis[0].is_ground

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal) or self.ring != other.ring:
            return False
        return set(self.groebner_basis()) == set(other.groebner_basis())

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.groebner_basis())))

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            _same_ring(self, other)
            return Ideal(self.ring, self.generators + other.generators)
        return Ideal(self.ring, self.generators + tuple(other))

    def leading_monomials(self, order: MonomialOrder = DEGREVLEX) -> list[tuple]:
        key = order.key(self.ring)
        return [max(g.keys(), key=key) for g in self.groebner_basis(order)]

    def is_homogeneous(self, weights: Optional[Sequence[int]] = None) -> bool:
        weights = weights or (1,) * self.ring.ngens
        return all(is_weighted_homogeneous(g, weights) for g in self.generators)

    def in_ring(self, ring: PolyRing, rename: Optional[Mapping[str, str]] = None) -> "Ideal":
        return Ideal(ring, [ring.convert(g, self.ring, rename=rename) for g in self.generators])


def _same_ring(a: Ideal, b: Ideal) -> None:
    if a.ring != b.ring:
        raise RingMismatchError(f"ideals live in {a.ring!r} and {b.ring!r}")


def eliminate(ideal: Ideal, front: Iterable[str]) -> Ideal:
    """I ∩ Q[remaining variables], as an ideal of the smaller ring."""
    front = tuple(front)
    if not front:
        return ideal
    ring = ideal.ring
    subring = ring.drop(front)
    positions = [ring.index[name] for name in front]
    order = MonomialOrder.elimination(front)
    kept = [g for g in ideal.groebner_basis(order) if not any(m[i] for m in g.keys() for i in positions)]
    result = Ideal(subring, [subring.convert(g, ring) for g in kept])
    result.seed_basis(DEGREVLEX, result.generators)
    return result


def _saturate_by_last_variable(ideal: Ideal, name: str, weights: Sequence[int]) -> Ideal:
    """Divide-out saturation, valid for ideals homogeneous under ``weights``."""
    ring = ideal.ring
    order = MonomialOrder.weighted(dict(zip(ring.names, weights)), last=name)
    i = ring.index[name]
    gens = []
    for g in ideal.groebner_basis(order):
        power = min(m[i] for m in g.keys())
        if power:
            g = ring.from_terms({m[:i] + (m[i] - power,) + m[i + 1:]: c for m, c in g.items()})
        gens.append(g)
    return Ideal(ring, gens)


def _saturate_auxiliary(ideal: Ideal, f: PolyElement) -> Ideal:
    ring = ideal.ring
    y = ring.fresh_name()
    big = ring.extend([Variable(y)])
    lifted = [big.convert(g, ring) for g in ideal.generators]
    lifted.append(big.one - big.gen(y) * big.convert(f, ring))
    return eliminate(Ideal(big, lifted), [y])


def saturate(ideal: Ideal, f: PolyElement, weights: Optional[Mapping[str, int]] = None) -> Ideal:
    """I : f^∞.

    When I and f are homogeneous for the positive ``weights`` (standard
    grading if omitted) the divide-out method is used, otherwise the
    auxiliary-variable construction.
    """
    ring = ideal.ring
    ring.check(f)
    if not f:
        raise InvalidInputError("cannot saturate by the zero polynomial")
    if ideal.is_zero or f.is_ground:
        return ideal
    w = weight_vector(ring, weights)
    if not (ideal.is_homogeneous(w) and is_weighted_homogeneous(f, w)):
        logger.debug("saturate: auxiliary-variable construction")
        return _saturate_auxiliary(ideal, f)

    if len(f) == 1:
        (monom,) = f.keys()
        result = ideal
        for i, e in enumerate(monom):
            if e:
                result = _saturate_by_last_variable(result, ring.names[i], w)
        return result

    y = ring.fresh_name()
    degree = next(iter({sum(a * b for a, b in zip(w, m)) for m in f.keys()}))
    big = ring.extend([Variable(y)])
    big_weights = tuple(w) + (degree,)
    lifted = [big.convert(g, ring) for g in ideal.generators]
    lifted.append(big.gen(y) - big.convert(f, ring))
    saturated = _saturate_by_last_variable(Ideal(big, lifted), y, big_weights)
    f_big = big.convert(f, ring)
    back = [g.compose(big.gen(y), f_big) for g in saturated.generators]
    return Ideal(ring, [ring.convert(g, big) for g in back])


def saturate_by_variable_ideal(
    ideal: Ideal, names: Iterable[str], weights: Optional[Mapping[str, int]] = None
) -> Ideal:
    """I : (vars)^∞, the intersection of the I : v^∞."""
    names = tuple(names)
    if not names:
        raise InvalidInputError("saturation by an empty variable set")
    ring = ideal.ring
    parts: list[Ideal] = []
    for name in names:
        part = saturate(ideal, ring.gen(name), weights)
        if part == ideal:
            return ideal
        if part.is_unit:
            continue
        parts.append(part)
    if not parts:
        return Ideal.unit(ring)
    result = parts[0]
    for part in parts[1:]:
        result = intersect(result, part)
    return result


def intersect(first: Ideal, second: Ideal) -> Ideal:
    """I ∩ J via y·I + (1 − y)·J and elimination of y."""
    _same_ring(first, second)
    if first.is_unit:
        return second
    if second.is_unit or second.contains_ideal(first):
        return first
    if first.contains_ideal(second):
        return second
    ring = first.ring
    y = ring.fresh_name()
    big = ring.extend([Variable(y)])
    yy = big.gen(y)
    lifted = [yy * big.convert(g, ring) for g in first.generators]
    lifted += [(big.one - yy) * big.convert(g, ring) for g in second.generators]
    return eliminate(Ideal(big, lifted), [y])


def radical_contains(ideal: Ideal, f: PolyElement) -> bool:
    """Whether some power of f lies in I."""
    ring = ideal.ring
    ring.check(f)
    if ideal.contains(f):
        return True
    y = ring.fresh_name()
    big = ring.extend([Variable(y)])
    lifted = [big.convert(g, ring) for g in ideal.generators]
    lifted.append(big.one - big.gen(y) * big.convert(f, ring))
    return Ideal(big, lifted).is_unit


def ideal_equal_radical(first: Ideal, second: Ideal) -> bool:
    _same_ring(first, second)
    return all(radical_contains(second, g) for g in first.generators) and all(
        radical_contains(first, g) for g in second.generators
    )


def _minimum_hitting_set(supports: list[frozenset[int]]) -> int:
    supports = [s for s in supports if not any(o < s for o in supports)]
    supports = sorted(set(supports), key=len)
    best = len(set().union(*supports)) if supports else 0

    def search(remaining: list[frozenset[int]], chosen: int) -> None:
        nonlocal best
        if chosen >= best:
            return
        if not remaining:
            best = chosen
            return
        pivot = min(remaining, key=len)
        for v in sorted(pivot):
            search([s for s in remaining if v not in s], chosen + 1)

    search(supports, 0)
    return best


def dimension(ideal: Ideal) -> int:
    """Affine Krull dimension of the quotient ring; −1 for the unit ideal."""
    if ideal.is_unit:
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in ideal.leading_monomials()]
    return ideal.ring.ngens - _minimum_hitting_set(supports)


def _monomials_of_degree(size: int, degree: int):
    for combo in combinations_with_replacement(range(size), degree):
        exps = [0] * size
        for i in combo:
            exps[i] += 1
        yield exps


def _check_multihomogeneous(ideal: Ideal, blocks: Sequence[Sequence[int]]) -> None:
    covered = sorted(i for block in blocks for i in block)
    if covered != list(range(ideal.ring.ngens)):
        raise InvalidInputError("blocks must partition the ring variables")
    for g in ideal.groebner_basis():
        for block in blocks:
            if len({sum(m[i] for i in block) for m in g.keys()}) > 1:
                raise NonHomogeneousError("ideal is not multihomogeneous for the block grading")


def hilbert_value(ideal: Ideal, blocks: Sequence[Sequence[str]], degree: Sequence[int]) -> int:
    """Number of standard monomials of the given multidegree."""
    ring = ideal.ring
    positions = [[ring.index[n] for n in block] for block in blocks]
    _check_multihomogeneous(ideal, positions)
    leading = ideal.leading_monomials()
    count = 0
    for parts in product(*(list(_monomials_of_degree(len(b), s)) for b, s in zip(positions, degree))):
        exps = [0] * ring.ngens
        for block, part in zip(positions, parts):
            for i, e in zip(block, part):
                exps[i] = e
        monom = tuple(exps)
        if not any(monomial_div(monom, lm) is not None for lm in leading):
            count += 1
    return count


def multigraded_hilbert(ideal: Ideal, blocks: Sequence[Sequence[str]], bound: int) -> dict[tuple[int, ...], int]:
    """Multigraded Hilbert function on all multidegrees with entries ≤ bound."""
    return {
        degree: hilbert_value(ideal, blocks, degree)
        for degree in product(range(bound + 1), repeat=len(blocks))
    }


def substitute_constants(ideal: Ideal, target: PolyRing, values: Mapping[str, object]) -> Ideal:
    """Image of I under setting the named variables to rational constants."""
    values = {k: QQ.convert(v) for k, v in values.items()}
    return Ideal(target, [target.convert(g, ideal.ring, values=values) for g in ideal.generators])
