"""Exact rank over the rationals by fraction-free elimination on sparse integer rows."""
import math
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, Mapping, Optional

SparseRow = Dict[int, int]


def _normalize(row: SparseRow) -> SparseRow:
    """Divide out the content and make the leading entry positive."""
    divisor = reduce(math.gcd, (abs(v) for v in row.values()), 0)
    lead = row[min(row)]
    if lead < 0:
        divisor = -divisor
    if divisor != 1:
        row = {c: v // divisor for c, v in row.items()}
    return row


def integer_row(row: Mapping[int, Fraction]) -> SparseRow:
    """Scale a rational sparse row to a primitive integer row with the same span."""
    entries = {c: Fraction(v) for c, v in row.items() if v != 0}
    if not entries:
        return {}
    scale = reduce(lambda a, b: a * b // math.gcd(a, b), (v.denominator for v in entries.values()), 1)
    return _normalize({c: int(v * scale) for c, v in entries.items()})


class EchelonBasis:
    """
    Row-echelon basis grown one row at a time.

    Every stored row has a distinct leading column. Elimination is
    cross-multiplication followed by removal of the row content, so entries
    stay integral without ever forming a fraction.
    """

    def __init__(self, columns: Optional[int] = None):
        self.columns = columns
        self.pivots: Dict[int, SparseRow] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def full(self) -> bool:
        return self.columns is not None and self.rank >= self.columns

    def reduce(self, row: SparseRow) -> SparseRow:
        row = {c: v for c, v in row.items() if v}
        while row:
            lead = min(row)
            pivot = self.pivots.get(lead)
            if pivot is None:
                return _normalize(row)
            a = pivot[lead]
            b = row[lead]
            combined = {c: a * v for c, v in row.items()}
            for c, v in pivot.items():
                value = combined.get(c, 0) - b * v
                if value:
                    combined[c] = value
                else:
                    combined.pop(c, None)
            row = _normalize(combined) if combined else {}
        return {}

    def add(self, row: SparseRow) -> bool:
        """Insert a row; True if it was independent of the rows already stored."""
        reduced = self.reduce(row)
        if not reduced:
            return False
        self.pivots[min(reduced)] = reduced
        return True


def rank(rows: Iterable[Mapping[int, Fraction]], columns: Optional[int] = None) -> int:
    """
    Rank over Q of sparse rows (column index -> rational entry).

    Stops reading rows once the rank reaches ``columns``.
    """
    basis = EchelonBasis(columns)
    for row in rows:
        basis.add(integer_row(row))
        if basis.full:
            break
    return basis.rank
