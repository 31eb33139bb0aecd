from dataclasses import dataclass
from math import comb
from typing import Iterable, List, Sequence, Tuple


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial in q; ``coefficients[d]`` multiplies q^d."""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coefficients', tuple(coeffs))

    @classmethod
    def binomial_power(cls, exponent: int) -> "IntPolynomial":
        """(1 + q)^exponent."""
        return cls(tuple(comb(exponent, d) for d in range(exponent + 1)))

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> "IntPolynomial":
        return cls((0,) * degree + (coefficient,))

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, degree: int) -> int:
        if 0 <= degree < len(self.coefficients):
            return self.coefficients[degree]
        return 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(tuple(self.coefficient(d) + other.coefficient(d) for d in range(size)))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        product = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                product[i + j] += a * b
        return IntPolynomial(tuple(product))

    def __call__(self, q: int) -> int:
        value = 0
        for c in reversed(self.coefficients):
            value = value * q + c
        return value

    def divide_by_linear(self, root: int) -> Tuple["IntPolynomial", int]:
        """
        Synthetic division by (q - root).

        Returns:
            (quotient, remainder) with self = quotient * (q - root) + remainder
        """
        if self.is_zero():
            return IntPolynomial(()), 0
        carry = 0
        quotient: List[int] = []
        for c in reversed(self.coefficients):
            carry = carry * root + c
            quotient.append(carry)
        remainder = quotient.pop()
        return IntPolynomial(tuple(reversed(quotient))), remainder

    def is_palindromic(self) -> bool:
        return self.coefficients == tuple(reversed(self.coefficients))

    def render(self, variable: str = "q") -> str:
        """Ascending degree, explicit ``*``, zero terms omitted: ``1 + 5*q + q^2``."""
        if self.is_zero():
            return "0"
        pieces = []
        for degree, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if degree == 0:
                body = str(abs(c))
            else:
                power = variable if degree == 1 else f"{variable}^{degree}"
                body = power if abs(c) == 1 else f"{abs(c)}*{power}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> List[str]:
        return [str(c) for c in self.coefficients]

    @classmethod
    def from_json(cls, payload: Sequence[str]) -> "IntPolynomial":
        return cls(tuple(int(c) for c in payload))


def projective_space(dimension: int) -> IntPolynomial:
    """Poincaré polynomial of P^dimension in q = t^2; zero for negative dimension."""
    if dimension < 0:
        return IntPolynomial(())
    return IntPolynomial((1,) * (dimension + 1))


def histogram_polynomial(counts: Iterable[int]) -> IntPolynomial:
    return IntPolynomial(tuple(counts))
