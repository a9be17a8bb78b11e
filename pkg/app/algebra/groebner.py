"""
Buchberger's algorithm over Q with the Gebauer-Moeller pair criteria.

Polynomials are sympy ``PolyElement`` objects; orders are ``OrderKey``
callables, so one ring serves every monomial order.
"""

import heapq
import logging
import time
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterable, Iterator, Optional, Sequence

from sympy.polys.groebnertools import groebner as sympy_groebner
from sympy.polys.monomials import monomial_div, monomial_lcm, monomial_mul
from sympy.polys.rings import PolyElement
from sympy.polys.rings import PolyRing as SympyPolyRing
from sympy import QQ

from app.algebra.orders import MonomialOrder, OrderKey
from app.algebra.rings import PolyRing
from app.config import get_settings
from app.exceptions import ComputationTimeout

logger = logging.getLogger(__name__)

_deadline: ContextVar[Optional[float]] = ContextVar("groebner_deadline", default=None)


@contextmanager
def computation_deadline(seconds: Optional[float]) -> Iterator[None]:
    """Bound every Groebner run started inside the block."""
    if seconds is None:
        yield
        return
    token = _deadline.set(time.monotonic() + float(seconds))
    try:
        yield
    finally:
        _deadline.reset(token)


def _check_deadline() -> None:
    deadline = _deadline.get()
    if deadline is not None and time.monotonic() > deadline:
        raise ComputationTimeout("Groebner computation exceeded its time budget")


def monic(f: PolyElement, key: OrderKey) -> PolyElement:
    lc = f[max(f.keys(), key=key)]
    if lc == QQ.one:
        return f
    return f.quo_ground(lc)


def reduce(f: PolyElement, divisors: Sequence[tuple[PolyElement, tuple]], key: OrderKey) -> PolyElement:
    """Full reduction of f by monic divisors given as (polynomial, leading monomial)."""
    ring = f.ring
    p = f.copy()
    remainder = {}
    while p:
        m = max(p.keys(), key=key)
        c = p[m]
        for g, lm in divisors:
            q = monomial_div(m, lm)
            if q is not None:
                p = p - g.mul_term((q, c))
                break
        else:
            remainder[m] = c
            del p[m]
    return ring.from_dict(remainder)


def normal_form(ring: PolyRing, f: PolyElement, basis: Sequence[PolyElement], order: MonomialOrder) -> PolyElement:
    """Remainder of f modulo a Groebner basis for ``order``."""
    ring.check(f)
    key = order.key(ring)
    divisors = []
    for g in basis:
        ring.check(g)
        if g:
            g = monic(g, key)
            divisors.append((g, max(g.keys(), key=key)))
    return reduce(f, divisors, key)


def s_polynomial(f: PolyElement, g: PolyElement, key: OrderKey) -> PolyElement:
    mf = max(f.keys(), key=key)
    mg = max(g.keys(), key=key)
    lcm = monomial_lcm(mf, mg)
    return (
        f.mul_term((monomial_div(lcm, mf), QQ.one / f[mf]))
        - g.mul_term((monomial_div(lcm, mg), QQ.one / g[mg]))
    )


def _coprime(a: tuple, b: tuple) -> bool:
    return monomial_mul(a, b) == monomial_lcm(a, b)


def _update(active: set[int], pairs: set[tuple[int, int]], new: int, lms: list[tuple]):
    """Gebauer-Moeller installation of a new basis element."""
    mh = lms[new]
    candidates = set(active)
    kept: set[int] = set()
    while candidates:
        ig = candidates.pop()
        mg = lms[ig]
        lcm_hg = monomial_lcm(mh, mg)

        def lcm_divides(ip: int) -> bool:
            return monomial_div(lcm_hg, monomial_lcm(mh, lms[ip])) is not None

        if _coprime(mh, mg) or (
            not any(lcm_divides(ip) for ip in candidates)
            and not any(lcm_divides(ip) for ip in kept)
        ):
            kept.add(ig)

    fresh = {(new, ig) for ig in kept if not _coprime(mh, lms[ig])}

    survivors = set()
    for a, b in pairs:
        lcm_ab = monomial_lcm(lms[a], lms[b])
        if (
            monomial_div(lcm_ab, mh) is None
            or monomial_lcm(lms[a], mh) == lcm_ab
            or monomial_lcm(lms[b], mh) == lcm_ab
        ):
            survivors.add((a, b))
    survivors |= fresh

    active = {ig for ig in active if monomial_div(lms[ig], mh) is None}
    active.add(new)
    return active, survivors


def _interreduce(basis: list[PolyElement], key: OrderKey) -> list[PolyElement]:
    lms = [max(g.keys(), key=key) for g in basis]
    reduced = []
    for i, g in enumerate(basis):
        others = [(basis[j], lms[j]) for j in range(len(basis)) if j != i]
        reduced.append(monic(reduce(g, others, key), key))
    reduced.sort(key=lambda g: key(max(g.keys(), key=key)), reverse=True)
    return reduced


def _buchberger(gens: list[PolyElement], key: OrderKey) -> list[PolyElement]:
    basis: list[PolyElement] = []
    lms: list[tuple] = []
    active: set[int] = set()
    pairs: set[tuple[int, int]] = set()
    # lazy heap over ``pairs``; entries dropped by the criteria are skipped on pop
    queue: list[tuple[int, tuple, tuple[int, int]]] = []

    def push(pair: tuple[int, int]) -> None:
        lcm = monomial_lcm(lms[pair[0]], lms[pair[1]])
        heapq.heappush(queue, (sum(lcm), key(lcm), pair))

    def install(h: PolyElement) -> None:
        nonlocal active, pairs
        h = monic(h, key)
        basis.append(h)
        lms.append(max(h.keys(), key=key))
        before = pairs
        active, pairs = _update(active, pairs, len(basis) - 1, lms)
        for pair in pairs - before:
            push(pair)

    def divisors() -> list[tuple[PolyElement, tuple]]:
        return [(basis[i], lms[i]) for i in sorted(active)]

    for f in sorted(gens, key=lambda p: key(max(p.keys(), key=key))):
        h = reduce(f, divisors(), key)
        if h:
            install(h)
            if not any(lms[-1]):
                return [basis[-1]]

    reductions = 0
    while queue:
        _check_deadline()
        _, _, (i, j) = heapq.heappop(queue)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        h = reduce(s_polynomial(basis[i], basis[j], key), divisors(), key)
        reductions += 1
        if h:
            install(h)
            if not any(lms[-1]):
                return [basis[-1]]

    result = _interreduce([basis[i] for i in sorted(active)], key)
    logger.debug(f"buchberger: {len(result)} elements after {reductions} S-pair reductions")
    return result


def _sympy_f5b(ring: PolyRing, gens: list[PolyElement], key: OrderKey) -> list[PolyElement]:
    sring = SympyPolyRing(ring.names, QQ, key)
    seq = [sring.from_dict(dict(g)) for g in gens]
    result = sympy_groebner(seq, sring, method="f5b")
    out = [ring.sympy_ring.from_dict(dict(g)) for g in result]
    return _interreduce([g for g in out if g], key)


def buchberger(ring: PolyRing, gens: Iterable[PolyElement], order: MonomialOrder) -> list[PolyElement]:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    The result is monic and sorted by decreasing leading monomial. The zero
    ideal has the empty basis; the unit ideal has basis [1].
    """
    polys = [ring.check(g) for g in gens]
    polys = [g for g in polys if g]
    if not polys:
        return []
    _check_deadline()
    key = order.key(ring)
    if get_settings().groebner_method == "f5b":
        return _sympy_f5b(ring, polys, key)
    return _buchberger(polys, key)


def is_groebner(ring: PolyRing, basis: Sequence[PolyElement], order: MonomialOrder) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    key = order.key(ring)
    monics = [monic(ring.check(g), key) for g in basis if g]
    divisors = [(g, max(g.keys(), key=key)) for g in monics]
    for a in range(len(monics)):
        for b in range(a + 1, len(monics)):
            if reduce(s_polynomial(monics[a], monics[b], key), divisors, key):
                return False
    return True
