"""
Monomial orders as sort keys on exponent tuples.

Orders are described by name, independent of a ring; ``order.key(ring)``
binds one to a ring and returns a hashable callable usable both by the
local Buchberger implementation and as a sympy ring order.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal, Mapping, Optional, Sequence

from app.algebra.rings import PolyRing
from app.exceptions import InvalidInputError

OrderKind = Literal["degrevlex", "lex", "elimination", "weighted"]


@dataclass(frozen=True)
class MonomialOrder:
    kind: OrderKind = "degrevlex"
    front: tuple[str, ...] = ()
    weights: tuple[tuple[str, int], ...] = ()
    last: Optional[str] = None

    @classmethod
    def degrevlex(cls) -> "MonomialOrder":
        return cls("degrevlex")

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def elimination(cls, front: Sequence[str]) -> "MonomialOrder":
        """Block order: degrevlex on ``front`` first, then degrevlex on the rest."""
        return cls("elimination", front=tuple(sorted(front)))

    @classmethod
    def weighted(cls, weights: Mapping[str, int], last: Optional[str] = None) -> "MonomialOrder":
        """Weighted degree, ties broken reverse-lexicographically with ``last`` ranked last."""
        if any(w <= 0 for w in weights.values()):
            raise InvalidInputError("weighted orders need positive weights")
        return cls("weighted", weights=tuple(sorted(weights.items())), last=last)

    def key(self, ring: PolyRing) -> "OrderKey":
        return _bind(self, ring)

    def __str__(self) -> str:
        if self.kind == "elimination":
            return f"elimination({','.join(self.front)})"
        if self.kind == "weighted":
            return f"weighted(last={self.last})"
        return self.kind


DEGREVLEX = MonomialOrder.degrevlex()
LEX = MonomialOrder.lex()


def _revlex_part(monom: tuple, positions: Sequence[int]) -> tuple:
    return tuple(-monom[i] for i in reversed(positions))


@dataclass(frozen=True)
class OrderKey:
    """Callable sort key; larger key means larger monomial."""

    order: MonomialOrder
    names: tuple[str, ...]
    front: tuple[int, ...] = ()
    rest: tuple[int, ...] = ()
    weights: tuple[int, ...] = ()
    ranking: tuple[int, ...] = ()
    _memo: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __call__(self, monom: tuple) -> tuple:
        try:
            return self._memo[monom]
        except KeyError:
            pass
        kind = self.order.kind
        if kind == "degrevlex":
            value = (sum(monom), _revlex_part(monom, self.ranking))
        elif kind == "lex":
            value = monom
        elif kind == "elimination":
            value = (
                sum(monom[i] for i in self.front),
                _revlex_part(monom, self.front),
                sum(monom[i] for i in self.rest),
                _revlex_part(monom, self.rest),
            )
        else:
            value = (
                sum(w * e for w, e in zip(self.weights, monom)),
                _revlex_part(monom, self.ranking),
            )
        if len(self._memo) < 200_000:
            self._memo[monom] = value
        return value


@lru_cache(maxsize=512)
def _bind(order: MonomialOrder, ring: PolyRing) -> OrderKey:
    n = ring.ngens
    everything = tuple(range(n))
    if order.kind == "elimination":
        unknown = set(order.front) - set(ring.names)
        if unknown:
            raise InvalidInputError(f"elimination variables {sorted(unknown)} not in ring")
        front = tuple(i for i in everything if ring.names[i] in order.front)
        rest = tuple(i for i in everything if ring.names[i] not in order.front)
        return OrderKey(order, ring.names, front=front, rest=rest)
    if order.kind == "weighted":
        table = dict(order.weights)
        weights = tuple(int(table.get(name, 1)) for name in ring.names)
        ranking = everything
        if order.last is not None:
            last = ring.index[order.last]
            ranking = tuple(i for i in everything if i != last) + (last,)
        return OrderKey(order, ring.names, weights=weights, ranking=ranking)
    return OrderKey(order, ring.names, ranking=everything)


def leading_monomial(f, key: OrderKey) -> tuple:
    return max(f.keys(), key=key)
