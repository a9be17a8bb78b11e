"""
Vertices of the building: equality, distance and tropical hulls in an apartment.
"""

import itertools
import logging
from typing import Literal, Sequence

import numpy as np

from app.algebra.matrices import Matrix, diagonal, elementary_divisor_exponents, matmul
from app.models.building import ApartmentVertex, Configuration, LatticeBasis, Vertex
from app.exceptions import InvalidInputError

logger = logging.getLogger(__name__)

HullVariant = Literal["min", "max"]


def vertex_equal(first: Vertex, second: Vertex) -> bool:
    """Homothety equality of two lattice classes."""
    if first.dim != second.dim:
        raise InvalidInputError("vertices of different dimension")
    return first == second


def adjacency_and_distance(first: Vertex, second: Vertex) -> tuple[bool, int]:
    """(adjacent, distance) from the normalized elementary divisors of M1⁻¹M2."""
    distance = max(first.relative_exponents(second))
    return distance == 1, distance


def building_distance(first: Vertex, second: Vertex) -> int:
    return adjacency_and_distance(first, second)[1]


def tropical_hull(vertices: Sequence[Vertex], variant: HullVariant) -> list[ApartmentVertex]:
    """All lattice points of the min- or max-plus hull of apartment vertices.

    Points are coordinatewise min (max) of λ_j + a_j. Integer offsets in
    [0, spread] suffice: a larger gap makes the lagging term irrelevant,
    which the "inactive" choice already covers.
    """
    if not vertices:
        return []
    if not all(isinstance(v, ApartmentVertex) for v in vertices):
        raise InvalidInputError("tropical hulls need apartment (diagonal) vertices")
    if len({v.dim for v in vertices}) != 1:
        raise InvalidInputError("vertices of different dimension")
    points = np.array([v.exponents for v in vertices], dtype=np.int64)
    spread = int(points.max() - points.min())
    combine = np.min if variant == "min" else np.max
    options = [None, *range(spread + 1)]
    seen: dict[tuple[int, ...], ApartmentVertex] = {}
    for offsets in itertools.product(options, repeat=len(vertices)):
        active = [i for i, o in enumerate(offsets) if o is not None]
        if not active:
            continue
        shifted = points[active] + np.array([offsets[i] for i in active], dtype=np.int64)[:, None]
        point = combine(shifted, axis=0)
        vertex = ApartmentVertex(point.tolist())
        seen.setdefault(vertex.exponents, vertex)
    return [seen[k] for k in sorted(seen)]


def apartment_neighbors(vertex: ApartmentVertex, radius: int = 1) -> list[ApartmentVertex]:
    """Apartment vertices at distance 1..radius from ``vertex``."""
    out = []
    for shift in itertools.product(range(radius + 1), repeat=vertex.dim):
        if 0 < max(shift) and min(shift) == 0:
            out.append(ApartmentVertex([a + s for a, s in zip(vertex.exponents, shift)]))
    return out


def _basis_neighbors(vertex: Vertex, radius: int) -> list[Vertex]:
    """Vertices B·diag(t^c) in the apartment of the vertex's own basis."""
    out = []
    for shift in itertools.product(range(radius + 1), repeat=vertex.dim):
        if 0 < max(shift) and min(shift) == 0:
            rows: Matrix = matmul(vertex.basis.rows, diagonal(shift))
            out.append(Vertex(LatticeBasis(rows)))
    return out


def distance_to_configuration(vertex: Vertex, configuration: Configuration) -> int:
    return min(building_distance(vertex, v) for v in configuration)


def secondary_candidates(configuration: Configuration, radius: int = 1) -> list[Vertex]:
    """Candidate vertices for secondary components, best first.

    Apartment configurations: both tropical hulls plus apartment
    neighbourhoods of radius ``radius`` around hull members. Otherwise only
    neighbourhoods of the configuration, inside each vertex's own apartment.
    The result excludes the configuration and is ordered by hull
    membership, then distance to the configuration, then exponents.
    """
    if radius < 0:
        raise InvalidInputError("radius must be non-negative")
    pool: list[Vertex] = []
    hull_members: list[Vertex] = []

    def add(vertex: Vertex, bucket: list[Vertex]) -> None:
        if configuration.index_of(vertex) or any(vertex == other for other in pool):
            return
        pool.append(vertex)
        bucket.append(vertex)

    if configuration.is_apartment:
        hull = tropical_hull(configuration.vertices, "max") + tropical_hull(configuration.vertices, "min")
        for vertex in hull:
            add(vertex, hull_members)
        around = hull
        if radius:
            for center in around:
                for vertex in apartment_neighbors(center, radius):
                    add(vertex, [])
    elif radius:
        for center in configuration:
            for vertex in _basis_neighbors(center, radius):
                add(vertex, [])

    def rank(vertex: Vertex):
        exps = vertex.exponents if isinstance(vertex, ApartmentVertex) else ()
        return (
            0 if any(vertex is h for h in hull_members) else 1,
            distance_to_configuration(vertex, configuration),
            exps,
        )

    ordered = sorted(pool, key=rank)
    logger.debug(f"secondary candidates: {[v.label() for v in ordered]}")
    return ordered


def apartment_sketch(configuration: Configuration) -> list[dict[str, object]]:
    """Rows describing hull membership of every relevant apartment vertex."""
    low = tropical_hull(configuration.vertices, "min")
    high = tropical_hull(configuration.vertices, "max")
    rows = []
    everything = {v.exponents: v for v in [*configuration.vertices, *low, *high]}
    for exps in sorted(everything):
        vertex = everything[exps]
        rows.append(
            {
                "vertex": vertex.label(),
                "in_configuration": bool(configuration.index_of(vertex)),
                "min_hull": any(v.exponents == exps for v in low),
                "max_hull": any(v.exponents == exps for v in high),
            }
        )
    return rows
