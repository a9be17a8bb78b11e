from dataclasses import dataclass, field
from typing import Optional

from app.algebra.ideals import Ideal
from app.algebra.rings import PolyRing
from app.models.building import Configuration
from app.models.flags import FlagType, PlueckerBlock


@dataclass
class DegenerationIdeal:
    """Flat model over Q[t] of a Mustafin degeneration and its special fiber."""

    configuration: Configuration
    flag: FlagType
    blocks: list[PlueckerBlock]
    ring: PolyRing
    flat_ideal: Ideal
    fiber_ring: PolyRing
    fiber_ideal: Ideal
    weights: Optional[dict[str, int]] = None
    provenance: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.configuration)

    def block_names(self) -> list[list[str]]:
        return [block.names for block in self.blocks]

    def vertex_names(self, vertex: int) -> list[str]:
        return [name for block in self.blocks if block.vertex == vertex for name in block.names]

    def level_names(self, level: int) -> list[str]:
        return [name for block in self.blocks if block.level == level for name in block.names]

    def log(self, message: str) -> None:
        self.provenance.append(message)
