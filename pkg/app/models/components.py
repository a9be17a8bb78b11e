from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from app.algebra.ideals import Ideal
from app.models.building import Vertex


class LabelKind(str, Enum):
    PRIMARY = "primary"
    SECONDARY = "secondary"
    MIXED = "mixed"
    TERTIARY = "tertiary-unresolved"


class Confidence(str, Enum):
    CERTIFIED = "certified"
    HEURISTIC = "heuristic"


@dataclass(frozen=True)
class ComponentLabel:
    """Exactly one classification of a special-fiber component.

    ``index`` is the 1-based configuration position for primary labels;
    ``witnesses`` holds (sub-flag label, vertex label) pairs for mixed ones.
    """

    kind: LabelKind
    vertex: Optional[Vertex] = field(default=None, compare=False)
    index: Optional[int] = None
    name: Optional[str] = None
    witnesses: tuple[tuple[str, str], ...] = ()

    @classmethod
    def primary(cls, vertex: Vertex, index: int) -> "ComponentLabel":
        return cls(LabelKind.PRIMARY, vertex, index, f"L{index}")

    @classmethod
    def secondary(cls, vertex: Vertex, name: str) -> "ComponentLabel":
        return cls(LabelKind.SECONDARY, vertex, None, name)

    @classmethod
    def mixed(cls, witnesses: tuple[tuple[str, str], ...]) -> "ComponentLabel":
        return cls(LabelKind.MIXED, witnesses=witnesses)

    @classmethod
    def tertiary(cls) -> "ComponentLabel":
        return cls(LabelKind.TERTIARY)

    @property
    def has_vertex(self) -> bool:
        return self.kind in (LabelKind.PRIMARY, LabelKind.SECONDARY)

    def describe(self) -> str:
        if self.kind == LabelKind.PRIMARY:
            return f"primary({self.name} = {self.vertex.label()})"
        if self.kind == LabelKind.SECONDARY:
            return f"secondary({self.name} = {self.vertex.label()})"
        if self.kind == LabelKind.MIXED:
            return "mixed(" + ", ".join(f"{flag}: {v}" for flag, v in self.witnesses) + ")"
        return "tertiary (unresolved)"


@dataclass
class ComponentReport:
    prime: Ideal
    dimension: int
    confidence: Confidence
    label: ComponentLabel = field(default_factory=ComponentLabel.tertiary)
    evidence: list[str] = field(default_factory=list)


@dataclass
class Decomposition:
    fiber: Ideal
    components: list[ComponentReport]
    validated: bool
    radical: bool
    dual_graph: list[tuple[int, int]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def count(self, kind: LabelKind) -> int:
        return sum(1 for c in self.components if c.label.kind == kind)

    def primes(self) -> list[Ideal]:
        return [c.prime for c in self.components]

    def summary(self) -> str:
        total = len(self.components)
        secondary = [c.label.name for c in self.components if c.label.kind == LabelKind.SECONDARY]
        parts = [f"{self.count(LabelKind.PRIMARY)} primary"]
        parts.append(f"{len(secondary)} secondary({','.join(secondary)})" if secondary else "0 secondary")
        parts.append(f"{self.count(LabelKind.MIXED)} mixed")
        unresolved = self.count(LabelKind.TERTIARY)
        if unresolved:
            parts.append(f"{unresolved} unresolved")
        return f"{total} components: " + ", ".join(parts)
