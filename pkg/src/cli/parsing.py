"""
Text input for the command line: monomials such as ``l1*l2*p^2``, ring
elements such as ``1/2*l1*l2 - p``, index lists and signed coefficient lists.
"""
import re
from fractions import Fraction
from typing import List, Optional, Tuple

from cohomology.ring import Monomial, RingElement
from utils.errors import ParseError

_TOKEN = re.compile(r"\s*(?:(?P<l>l(?P<index>\d+))|(?P<p>p)|(?P<num>\d+)|(?P<op>[*^/+\-]))")
_SIGNED_RATIONAL = re.compile(r"^\s*([+-]?)\s*(\d+)(?:\s*/\s*(\d+))?\s*$")


class _Tokens:
    """Token stream with source positions."""

    def __init__(self, text: str):
        self.text = text
        self.items: List[Tuple[str, str, int]] = []
        position = 0
        while position < len(text):
            if text[position:].strip() == "":
                break
            match = _TOKEN.match(text, position)
            if match is None:
                offset = position + len(text[position:]) - len(text[position:].lstrip())
                raise ParseError(text, offset, f"unexpected character {text[offset]!r}")
            start = match.end() - len(match.group(0).lstrip())
            if match.group("l") is not None:
                kind, value = "l", match.group("index")
            elif match.group("p") is not None:
                kind, value = "p", "p"
            elif match.group("num") is not None:
                kind, value = "num", match.group("num")
            else:
                kind, value = "op", match.group("op")
            self.items.append((kind, value, start))
            position = match.end()
        self.cursor = 0

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.items[self.cursor] if self.cursor < len(self.items) else None

    def take(self) -> Tuple[str, str, int]:
        token = self.peek()
        if token is None:
            raise ParseError(self.text, len(self.text), "unexpected end of input")
        self.cursor += 1
        return token

    def accept(self, op: str) -> bool:
        token = self.peek()
        if token is not None and token[0] == "op" and token[1] == op:
            self.cursor += 1
            return True
        return False

    @property
    def done(self) -> bool:
        return self.cursor >= len(self.items)


def _parse_factors(tokens: _Tokens, n: Optional[int], first: Optional[Tuple[str, str, int]] = None) -> Monomial:
    l_set = 0
    p_pow = 0
    token = first or tokens.take()
    while True:
        kind, value, position = token
        if kind == "l":
            index = int(value)
            if index < 1 or (n is not None and index > n):
                bound = f"1..{n}" if n is not None else "positive"
                raise ParseError(tokens.text, position, f"index l{index} must be {bound}")
            bit = 1 << (index - 1)
            if l_set & bit:
                raise ParseError(tokens.text, position, f"l{index} repeated; write p for l{index}^2")
            l_set |= bit
        elif kind == "p":
            power = 1
            if tokens.accept("^"):
                kind, value, where = tokens.take()
                if kind != "num":
                    raise ParseError(tokens.text, where, "expected an exponent after ^")
                power = int(value)
            p_pow += power
        else:
            raise ParseError(tokens.text, position, f"expected l<i> or p, got {value!r}")
        if not tokens.accept("*"):
            return Monomial(l_set, p_pow)
        token = tokens.take()


def parse_monomial(text: str, n: Optional[int] = None) -> Monomial:
    """
    Parse ``l1*l2*p^2``; ``1`` is the unit monomial.

    Raises:
        ParseError: On malformed input, a repeated l-index or an index outside 1..n
    """
    tokens = _Tokens(text)
    if tokens.done:
        raise ParseError(text, 0, "empty monomial")
    first = tokens.peek()
    if first[0] == "num" and first[1] == "1" and len(tokens.items) == 1:
        return Monomial(0, 0)
    monomial = _parse_factors(tokens, n)
    if not tokens.done:
        raise ParseError(text, tokens.peek()[2], "trailing input")
    return monomial


def _parse_coefficient(tokens: _Tokens) -> Fraction:
    _, value, _ = tokens.take()
    numerator = int(value)
    if tokens.accept("/"):
        kind, value, position = tokens.take()
        if kind != "num":
            raise ParseError(tokens.text, position, "expected a denominator")
        if int(value) == 0:
            raise ParseError(tokens.text, position, "zero denominator")
        return Fraction(numerator, int(value))
    return Fraction(numerator)


def parse_element(text: str, n: Optional[int] = None) -> RingElement:
    """
    Parse a sum of terms ``[c*]monomial`` joined by ``+`` and ``-``.

    Raises:
        ParseError: On malformed input
    """
    tokens = _Tokens(text)
    if tokens.done:
        raise ParseError(text, 0, "empty expression")
    element = RingElement.zero()
    sign = -1 if tokens.accept("-") else 1
    if sign == 1:
        tokens.accept("+")
    while True:
        token = tokens.peek()
        if token is None:
            raise ParseError(text, len(text), "expected a term")
        coefficient = Fraction(1)
        monomial = Monomial(0, 0)
        if token[0] == "num":
            coefficient = _parse_coefficient(tokens)
            if tokens.accept("*"):
                monomial = _parse_factors(tokens, n)
        else:
            monomial = _parse_factors(tokens, n)
        element = element + RingElement.of_monomial(monomial, sign * coefficient)

        if tokens.done:
            return element
        if tokens.accept("+"):
            sign = 1
        elif tokens.accept("-"):
            sign = -1
        else:
            raise ParseError(text, tokens.peek()[2], "expected + or -")


def parse_index_list(text: str, n: Optional[int] = None) -> Tuple[int, ...]:
    """Comma-separated 1-based indices, e.g. ``1,2``; empty text is the empty set."""
    if not text.strip():
        return ()
    indices = []
    offset = 0
    for piece in text.split(","):
        stripped = piece.strip()
        if not stripped.isdigit():
            raise ParseError(text, offset, f"expected an index, got {stripped!r}")
        index = int(stripped)
        if index < 1 or (n is not None and index > n):
            raise ParseError(text, offset, f"index {index} outside 1..{n}")
        if index in indices:
            raise ParseError(text, offset, f"index {index} repeated")
        indices.append(index)
        offset += len(piece) + 1
    return tuple(indices)


def parse_coefficients(text: str) -> List[Fraction]:
    """Comma-separated signed rationals, e.g. ``1,-1/2,0``."""
    values = []
    offset = 0
    for piece in text.split(","):
        match = _SIGNED_RATIONAL.match(piece)
        if match is None:
            raise ParseError(text, offset, f"expected a rational, got {piece.strip()!r}")
        sign, numerator, denominator = match.groups()
        if denominator is not None and int(denominator) == 0:
            raise ParseError(text, offset, "zero denominator")
        value = Fraction(int(numerator), int(denominator or 1))
        values.append(-value if sign == "-" else value)
        offset += len(piece) + 1
    return values
