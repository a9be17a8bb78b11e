from typing import Mapping

from sympy import QQ
from sympy.polys.rings import PolyElement

from app.algebra.rings import PolyRing


def evaluate(f: PolyElement, ring: PolyRing, values: Mapping[str, object]):
    """Value of f at a point given for every variable occurring in f."""
    ring.check(f)
    point = [QQ.convert(values[name]) if name in values else None for name in ring.names]
    total = QQ.zero
    for monom, coeff in f.items():
        term = coeff
        for x, e in zip(point, monom):
            if e:
                if x is None:
                    raise KeyError("missing value for a variable of the polynomial")
                term *= x**e
        total += term
    return total


def vanishes(polys, ring: PolyRing, values: Mapping[str, object]) -> bool:
    return all(not evaluate(f, ring, values) for f in polys)
