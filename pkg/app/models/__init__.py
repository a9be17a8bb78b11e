from .building import ApartmentVertex, Configuration, LatticeBasis, Vertex
from .components import ComponentLabel, ComponentReport, Confidence, Decomposition, LabelKind
from .degeneration import DegenerationIdeal
from .flags import FlagType, PlueckerBlock, blocks_for

__all__ = [
    "ApartmentVertex",
    "Configuration",
    "LatticeBasis",
    "Vertex",
    "ComponentLabel",
    "ComponentReport",
    "Confidence",
    "Decomposition",
    "LabelKind",
    "DegenerationIdeal",
    "FlagType",
    "PlueckerBlock",
    "blocks_for",
]
