"""Text and JSON rendering of command results. JSON numbers are decimal strings."""
import json
from fractions import Fraction
from typing import Any, Iterable, List

from geometry.weights import format_rational


def number(value) -> str:
    return format_rational(Fraction(value))


def numbers(values: Iterable) -> List[str]:
    return [number(v) for v in values]


def dump_json(payload: Any) -> str:
    return json.dumps(payload, separators=(",", ":"))


def yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def render_betti(betti: Iterable[int]) -> str:
    return "b: " + " ".join(str(b) for b in betti)


def render_dims(dims: Iterable[int]) -> str:
    return "dims: " + " ".join(str(d) for d in dims)
