from dataclasses import dataclass, field
from typing import Sequence

from app.algebra.matrices import (
    Matrix,
    determinant,
    diagonal,
    elementary_divisor_exponents,
    from_laurent,
    inverse,
    matmul,
    to_laurent,
)
from app.algebra.syntax import format_laurent
from app.exceptions import InvalidInputError, SingularMatrixError


class LatticeBasis:
    """Columns of a d×d matrix over Q(t) spanning a lattice in K^d."""

    def __init__(self, rows: Matrix):
        d = len(rows)
        if d < 2:
            raise InvalidInputError("lattices need dimension d >= 2")
        if any(len(r) != d for r in rows):
            raise InvalidInputError("lattice basis must be a square matrix")
        if not determinant(rows):
            raise SingularMatrixError("lattice basis has zero determinant")
        self.rows: Matrix = [list(r) for r in rows]
        self.dim = d

    @classmethod
    def from_laurent_rows(cls, rows: Sequence[Sequence[dict[int, object]]]) -> "LatticeBasis":
        return cls([[from_laurent(entry) for entry in r] for r in rows])

    @classmethod
    def diagonal(cls, exponents: Sequence[int]) -> "LatticeBasis":
        return cls(diagonal(exponents))

    def inverse(self) -> Matrix:
        return inverse(self.rows)

    def laurent_rows(self) -> list[list[str]]:
        return [[format_laurent(to_laurent(x)) for x in r] for r in self.rows]

    def __repr__(self) -> str:
        return f"LatticeBasis({self.laurent_rows()})"


class Vertex:
    """Homothety class of a lattice, a vertex of the building."""

    def __init__(self, basis: LatticeBasis):
        self.basis = basis

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def is_apartment(self) -> bool:
        return False

    def transition(self, other: "Vertex") -> Matrix:
        """M1⁻¹·M2 for the two representatives."""
        return matmul(self.basis.inverse(), other.basis.rows)

    def relative_exponents(self, other: "Vertex") -> list[int]:
        """Elementary-divisor exponents of the transition, normalized to min 0."""
        if self.dim != other.dim:
            raise InvalidInputError("vertices of different dimension")
        exps = elementary_divisor_exponents(self.transition(other))
        low = min(exps)
        return [e - low for e in exps]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vertex) or other.dim != self.dim:
            return False
        if self.is_apartment and other.is_apartment:
            return self.exponents == other.exponents
        return max(self.relative_exponents(other)) == 0

    def __hash__(self) -> int:
        return hash(("vertex", self.dim))

    def label(self) -> str:
        return f"matrix={self.basis.laurent_rows()}"

    def __repr__(self) -> str:
        return f"Vertex({self.label()})"


class ApartmentVertex(Vertex):
    """Diagonal lattice class [⊕ t^{a_i} R e_i], normalized so that min a = 0."""

    def __init__(self, exponents: Sequence[int]):
        exponents = [int(a) for a in exponents]
        if len(exponents) < 2:
            raise InvalidInputError("apartment vertices need d >= 2")
        low = min(exponents)
        self.exponents: tuple[int, ...] = tuple(a - low for a in exponents)
        super().__init__(LatticeBasis.diagonal(self.exponents))

    @property
    def is_apartment(self) -> bool:
        return True

    def relative_exponents(self, other: Vertex) -> list[int]:
        if isinstance(other, ApartmentVertex):
            if self.dim != other.dim:
                raise InvalidInputError("vertices of different dimension")
            diff = sorted(b - a for a, b in zip(self.exponents, other.exponents))
            return [e - diff[0] for e in diff]
        return super().relative_exponents(other)

    def __hash__(self) -> int:
        return hash(("vertex", self.dim))

    def label(self) -> str:
        return "(" + ",".join(str(a) for a in self.exponents) + ")"

    def __repr__(self) -> str:
        return f"ApartmentVertex{self.label()}"


@dataclass
class Configuration:
    """Finite ordered set of pairwise distinct vertices of one dimension."""

    vertices: list[Vertex] = field(default_factory=list)

    def __post_init__(self):
        if not self.vertices:
            raise InvalidInputError("a configuration needs at least one vertex")
        dims = {v.dim for v in self.vertices}
        if len(dims) != 1:
            raise InvalidInputError(f"vertices of mixed dimensions {sorted(dims)}")
        for i, v in enumerate(self.vertices):
            for j in range(i):
                if self.vertices[j] == v:
                    raise InvalidInputError(f"vertices {j + 1} and {i + 1} are homothetic")

    @classmethod
    def apartment(cls, exponent_vectors: Sequence[Sequence[int]]) -> "Configuration":
        return cls([ApartmentVertex(a) for a in exponent_vectors])

    @property
    def dim(self) -> int:
        return self.vertices[0].dim

    @property
    def is_apartment(self) -> bool:
        return all(v.is_apartment for v in self.vertices)

    def key(self) -> tuple[str, ...]:
        return tuple(v.label() for v in self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def index_of(self, vertex: Vertex) -> int:
        """1-based position of a vertex, 0 if absent."""
        for i, v in enumerate(self.vertices, start=1):
            if v == vertex:
                return i
        return 0

    def with_vertex(self, vertex: Vertex) -> "Configuration":
        return Configuration([*self.vertices, vertex])

    def subset(self, positions: Sequence[int]) -> "Configuration":
        return Configuration([self.vertices[i - 1] for i in positions])
