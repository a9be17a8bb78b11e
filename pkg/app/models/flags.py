from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from typing import Sequence

from app.algebra.matrices import subsets
from app.algebra.rings import BlockId, Variable
from app.exceptions import InvalidInputError


@dataclass(frozen=True)
class FlagType:
    """Ascending ranks (k_1 < … < k_r) with 1 <= k_i <= d−1."""

    d: int
    ranks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(k) for k in self.ranks))
        if self.d < 2:
            raise InvalidInputError("flag types need d >= 2")
        if not self.ranks:
            raise InvalidInputError("a flag type needs at least one rank")
        if any(b <= a for a, b in zip(self.ranks, self.ranks[1:])):
            raise InvalidInputError(f"ranks {self.ranks} are not strictly ascending")
        if self.ranks[0] < 1 or self.ranks[-1] > self.d - 1:
            raise InvalidInputError(f"ranks {self.ranks} outside 1..{self.d - 1}")

    @classmethod
    def projective(cls, d: int) -> "FlagType":
        return cls(d, (1,))

    @classmethod
    def dual_projective(cls, d: int) -> "FlagType":
        return cls(d, (d - 1,))

    @property
    def r(self) -> int:
        return len(self.ranks)

    @property
    def dimension(self) -> int:
        """Σ k_t(k_{t+1} − k_t) with k_{r+1} = d."""
        bounds = (*self.ranks, self.d)
        return sum(k * (nxt - k) for k, nxt in zip(bounds, bounds[1:]))

    @property
    def schubert_cells(self) -> int:
        """d! / ((d−k_r)!·(k_r−k_{r−1})!·…·k_1!)."""
        steps = [b - a for a, b in zip((0, *self.ranks), (*self.ranks, self.d))]
        count = factorial(self.d)
        for s in steps:
            count //= factorial(s)
        return count

    @property
    def label(self) -> str:
        if self.ranks == (1,):
            return "P"
        if self.ranks == (self.d - 1,):
            return "P*"
        if self.r == 1:
            return f"G({self.ranks[0]})"
        return "(" + "<".join(str(k) for k in self.ranks) + ")"

    def sub_types(self) -> list[tuple[int, ...]]:
        """Proper nonempty sub-tuples of level indices, singletons first."""
        out = []
        for size in range(1, self.r):
            out.extend(combinations(range(1, self.r + 1), size))
        return out

    def restrict(self, levels: Sequence[int]) -> "FlagType":
        return FlagType(self.d, tuple(self.ranks[t - 1] for t in levels))


def subset_label(subset: Sequence[int], d: int) -> str:
    if d <= 9:
        return "".join(str(i) for i in subset)
    return ",".join(str(i) for i in subset)


def variable_name(vertex: int, level: int, subset: Sequence[int], d: int) -> str:
    return f"p{vertex}_{level}_{subset_label(subset, d)}"


@dataclass(frozen=True)
class PlueckerBlock:
    """Coordinates p^{(j)}_S of one vertex at one flag level."""

    vertex: int
    level: int
    k: int
    d: int

    @property
    def block_id(self) -> BlockId:
        return BlockId(self.vertex, self.level)

    @property
    def subsets(self) -> list[tuple[int, ...]]:
        return subsets(self.d, self.k)

    @property
    def names(self) -> list[str]:
        return [variable_name(self.vertex, self.level, s, self.d) for s in self.subsets]

    def __len__(self) -> int:
        return comb(self.d, self.k)

    def variables(self) -> list[Variable]:
        return [Variable(n, self.block_id) for n in self.names]

    def name_of(self, subset: Sequence[int]) -> str:
        return variable_name(self.vertex, self.level, subset, self.d)


def blocks_for(flag: FlagType, vertices: int) -> list[PlueckerBlock]:
    """All blocks, vertex-major then level."""
    return [
        PlueckerBlock(j, t, k, flag.d)
        for j in range(1, vertices + 1)
        for t, k in enumerate(flag.ranks, start=1)
    ]
