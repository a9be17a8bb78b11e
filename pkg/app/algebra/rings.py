"""
Block-structured polynomial rings over Q.

A ``PolyRing`` wraps a sympy ``PolyRing`` (degrevlex, variables in the given
order) and remembers, for every variable, the (vertex, level) block it belongs
to or whether it is the parameter ``t``. Polynomials are plain sympy
``PolyElement`` objects of the wrapped ring.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from sympy import QQ
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyElement
from sympy.polys.rings import PolyRing as SympyPolyRing

from app.exceptions import InvalidInputError, RingMismatchError

PARAMETER = "t"


@lru_cache(maxsize=None)
def _sympy_ring(names: tuple[str, ...]) -> SympyPolyRing:
    return SympyPolyRing(names, QQ, grevlex)


@dataclass(frozen=True, order=True)
class BlockId:
    """Plücker block of one vertex (1-based) at one flag level (1-based)."""

    vertex: int
    level: int


@dataclass(frozen=True)
class Variable:
    name: str
    block: Optional[BlockId] = None
    is_param: bool = False


class PolyRing:
    """Polynomial ring Q[variables] with block tags."""

    def __init__(self, variables: Iterable[Variable]):
        self.variables: tuple[Variable, ...] = tuple(variables)
        if not self.variables:
            raise InvalidInputError("a polynomial ring needs at least one variable")
        self.names: tuple[str, ...] = tuple(v.name for v in self.variables)
        if len(set(self.names)) != len(self.names):
            raise InvalidInputError(f"duplicate variable names in {self.names}")
        if sum(1 for v in self.variables if v.is_param) > 1:
            raise InvalidInputError("at most one parameter variable is allowed")
        self.index: dict[str, int] = {name: i for i, name in enumerate(self.names)}
        self.sympy_ring = _sympy_ring(self.names)
        self._hash = hash(self.variables)

    @classmethod
    def from_names(cls, names: Sequence[str]) -> "PolyRing":
        """Ring with untagged variables, except ``t`` which becomes the parameter."""
        return cls(Variable(n, is_param=(n == PARAMETER)) for n in names)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRing) and self.variables == other.variables

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"PolyRing({', '.join(self.names)})"

    def __len__(self) -> int:
        return len(self.names)

    @property
    def ngens(self) -> int:
        return len(self.names)

    @property
    def zero(self) -> PolyElement:
        return self.sympy_ring.from_dict({})

    @property
    def one(self) -> PolyElement:
        return self.sympy_ring.from_dict({(0,) * self.ngens: QQ.one})

    def gen(self, name: str) -> PolyElement:
        try:
            i = self.index[name]
        except KeyError:
            raise RingMismatchError(f"{name} is not a variable of {self!r}")
        monom = tuple(1 if k == i else 0 for k in range(self.ngens))
        return self.sympy_ring.from_dict({monom: QQ.one})

    def constant(self, value) -> PolyElement:
        return self.sympy_ring.from_dict({(0,) * self.ngens: QQ.convert(value)})

    def from_terms(self, terms: Mapping[tuple, object]) -> PolyElement:
        return self.sympy_ring.from_dict(dict(terms))

    @property
    def param(self) -> Optional[str]:
        for v in self.variables:
            if v.is_param:
                return v.name
        return None

    def blocks(self) -> dict[BlockId, tuple[str, ...]]:
        """Block id -> variable names, in ring order of first appearance."""
        out: dict[BlockId, list[str]] = {}
        for v in self.variables:
            if v.block is not None:
                out.setdefault(v.block, []).append(v.name)
        return {b: tuple(names) for b, names in sorted(out.items())}

    def variables_of(self, predicate) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables if predicate(v))

    def check(self, f: PolyElement) -> PolyElement:
        if f.ring != self.sympy_ring:
            raise RingMismatchError(f"polynomial from {f.ring} used in {self!r}")
        return f

    def drop(self, names: Iterable[str]) -> "PolyRing":
        dropped = set(names)
        unknown = dropped - set(self.names)
        if unknown:
            raise RingMismatchError(f"cannot drop unknown variables {sorted(unknown)}")
        return PolyRing(v for v in self.variables if v.name not in dropped)

    def extend(self, variables: Iterable[Variable]) -> "PolyRing":
        return PolyRing((*self.variables, *variables))

    def fresh_name(self, stem: str = "_y") -> str:
        name, k = stem, 0
        while name in self.index:
            k += 1
            name = f"{stem}{k}"
        return name

    def convert(
        self,
        f: PolyElement,
        source: "PolyRing",
        rename: Optional[Mapping[str, str]] = None,
        values: Optional[Mapping[str, object]] = None,
    ) -> PolyElement:
        """Move f from ``source`` into this ring.

        Variables are matched by name after ``rename``; variables listed in
        ``values`` are replaced by those constants. Any other variable of the
        source that is missing here must not occur in f.
        """
        source.check(f)
        rename = rename or {}
        values = {k: QQ.convert(v) for k, v in (values or {}).items()}
        positions: list[Optional[int]] = []
        for name in source.names:
            if name in values:
                positions.append(None)
            else:
                positions.append(self.index.get(rename.get(name, name), -1))
        terms: dict[tuple, object] = {}
        for monom, coeff in f.items():
            exps = [0] * self.ngens
            for i, e in enumerate(monom):
                if not e:
                    continue
                j = positions[i]
                if j is None:
                    coeff = coeff * values[source.names[i]] ** e
                elif j < 0:
                    raise RingMismatchError(
                        f"variable {source.names[i]} does not exist in {self!r}"
                    )
                else:
                    exps[j] += e
            key = tuple(exps)
            terms[key] = terms.get(key, QQ.zero) + coeff
        return self.sympy_ring.from_dict(terms)


def support(f: PolyElement) -> set[int]:
    """Indices of variables occurring in f."""
    out: set[int] = set()
    for monom in f.keys():
        out.update(i for i, e in enumerate(monom) if e)
    return out


def weighted_degrees(f: PolyElement, weights: Sequence[int]) -> set[int]:
    return {sum(w * e for w, e in zip(weights, monom)) for monom in f.keys()}


def is_weighted_homogeneous(f: PolyElement, weights: Sequence[int]) -> bool:
    return len(weighted_degrees(f, weights)) <= 1


def weight_vector(ring: PolyRing, weights: Optional[Mapping[str, int]] = None) -> tuple[int, ...]:
    """Dense weight vector; missing names get weight 1."""
    weights = weights or {}
    return tuple(int(weights.get(name, 1)) for name in ring.names)


def block_degree(f: PolyElement, positions: Sequence[int]) -> set[int]:
    return {sum(monom[i] for i in positions) for monom in f.keys()}
