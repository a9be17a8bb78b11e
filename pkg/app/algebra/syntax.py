"""
Text syntax for polynomials: ``3/2*p1_1_12^2*t - p2_1_13``.

Terms are joined by ``+``/``-``, factors by ``*``; a factor is a rational
constant ``a`` or ``a/b`` or a variable with an optional ``^`` power.
Whitespace is insignificant. Laurent entries allow negative powers of ``t``.
"""

import re
from typing import Iterator, Optional

from sympy import QQ
from sympy.polys.rings import PolyElement

from app.algebra.orders import DEGREVLEX, MonomialOrder
from app.algebra.rings import PARAMETER, PolyRing
from app.exceptions import PolynomialSyntaxError

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^])|(?P<bad>\S))")


class _Tokens:
    def __init__(self, text: str):
        self.items: list[tuple[str, str, int]] = []
        for match in _TOKEN.finditer(text):
            kind = match.lastgroup
            if kind is None:
                continue
            position = match.start(kind)
            if kind == "bad":
                raise PolynomialSyntaxError(f"unexpected character {match.group(kind)!r}", position)
            self.items.append((kind, match.group(kind), position))
        self.pos = 0
        self.end = len(text)

    def peek(self) -> Optional[tuple[str, str, int]]:
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self) -> tuple[str, str, int]:
        token = self.peek()
        if token is None:
            raise PolynomialSyntaxError("unexpected end of input", self.end)
        self.pos += 1
        return token

    def accept(self, op: str) -> bool:
        token = self.peek()
        if token is not None and token[0] == "op" and token[1] == op:
            self.pos += 1
            return True
        return False


def _integer(tokens: _Tokens, allow_sign: bool) -> int:
    sign = -1 if allow_sign and tokens.accept("-") else 1
    kind, value, position = tokens.next()
    if kind != "number":
        raise PolynomialSyntaxError(f"expected an integer, found {value!r}", position)
    return sign * int(value)


def _terms(text: str, allow_negative: bool) -> Iterator[tuple[object, dict[str, int]]]:
    """Yield (coefficient, {variable: exponent}) for each term."""
    tokens = _Tokens(text)
    if tokens.peek() is None:
        raise PolynomialSyntaxError("empty polynomial", 0)
    sign = 1
    if tokens.accept("-"):
        sign = -1
    else:
        tokens.accept("+")
    while True:
        coeff = QQ(sign)
        powers: dict[str, int] = {}
        while True:
            kind, value, position = tokens.next()
            if kind == "number":
                numerator = int(value)
                denominator = 1
                if tokens.accept("/"):
                    denominator = _integer(tokens, allow_sign=False)
                    if denominator == 0:
                        raise PolynomialSyntaxError("division by zero", position)
                coeff = coeff * QQ(numerator, denominator)
            elif kind == "name":
                exponent = 1
                if tokens.accept("^"):
                    exponent = _integer(tokens, allow_sign=allow_negative)
                    if exponent < 0 and value != PARAMETER:
                        raise PolynomialSyntaxError(f"negative power of {value}", position)
                powers[value] = powers.get(value, 0) + exponent
            else:
                raise PolynomialSyntaxError(f"unexpected {value!r}", position)
            if not tokens.accept("*"):
                break
        yield coeff, powers
        token = tokens.peek()
        if token is None:
            return
        if tokens.accept("+"):
            sign = 1
        elif tokens.accept("-"):
            sign = -1
        else:
            raise PolynomialSyntaxError(f"expected '+' or '-', found {token[1]!r}", token[2])


def parse_polynomial(text: str, ring: PolyRing) -> PolyElement:
    """Parse text into a polynomial of ``ring``."""
    terms: dict[tuple, object] = {}
    for coeff, powers in _terms(text, allow_negative=False):
        exps = [0] * ring.ngens
        for name, e in powers.items():
            if name not in ring.index:
                raise PolynomialSyntaxError(f"unknown variable {name!r}", text.find(name))
            exps[ring.index[name]] += e
        key = tuple(exps)
        terms[key] = terms.get(key, QQ.zero) + coeff
    return ring.from_terms(terms)


def parse_laurent(text: str) -> dict[int, object]:
    """Parse a Laurent polynomial in ``t`` into {exponent: coefficient}."""
    out: dict[int, object] = {}
    for coeff, powers in _terms(text, allow_negative=True):
        unknown = set(powers) - {PARAMETER}
        if unknown:
            name = sorted(unknown)[0]
            raise PolynomialSyntaxError(f"only {PARAMETER} may occur in a lattice entry, found {name!r}", text.find(name))
        e = powers.get(PARAMETER, 0)
        out[e] = out.get(e, QQ.zero) + coeff
    return {e: c for e, c in out.items() if c}


def _coefficient(c) -> str:
    numerator, denominator = int(QQ.numer(c)), int(QQ.denom(c))
    return str(numerator) if denominator == 1 else f"{numerator}/{denominator}"


def _term(c, factors: list[str], first: bool) -> str:
    negative = c < 0
    magnitude = -c if negative else c
    if not factors:
        body = _coefficient(magnitude)
    elif magnitude == 1:
        body = "*".join(factors)
    else:
        body = "*".join([_coefficient(magnitude), *factors])
    if first:
        return f"-{body}" if negative else body
    return f" - {body}" if negative else f" + {body}"


def format_polynomial(f: PolyElement, ring: PolyRing, order: MonomialOrder = DEGREVLEX) -> str:
    """Render f with terms in decreasing ``order``."""
    ring.check(f)
    if not f:
        return "0"
    key = order.key(ring)
    pieces = []
    for monom in sorted(f.keys(), key=key, reverse=True):
        factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(ring.names, monom) if e]
        pieces.append(_term(f[monom], factors, first=not pieces))
    return "".join(pieces)


def format_laurent(entry: dict[int, object]) -> str:
    if not entry:
        return "0"
    pieces = []
    for e in sorted(entry, reverse=True):
        factors = [] if e == 0 else [PARAMETER if e == 1 else f"{PARAMETER}^{e}"]
        pieces.append(_term(entry[e], factors, first=not pieces))
    return "".join(pieces)
