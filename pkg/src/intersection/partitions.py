"""Set partitions of {1..n} as tuples of disjoint bitmasks, with a canonical order."""
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple

from geometry.weights import indices_of, iter_bits, mask_of


def _lowest(bits: int) -> int:
    return bits & -bits


@dataclass(frozen=True)
class Partition:
    """
    Disjoint nonempty parts covering {1..n}, sorted by smallest element.

    Partitions compare by their restricted growth string: element i is
    labelled with the position of its part, and the label sequences are
    ordered lexicographically.
    """

    n: int
    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted(self.parts, key=_lowest))
        seen = 0
        for part in parts:
            if part <= 0:
                raise ValueError("partition parts must be nonempty")
            if seen & part:
                raise ValueError(f"parts overlap in {indices_of(seen & part)}")
            seen |= part
        if seen != (1 << self.n) - 1:
            raise ValueError(f"parts do not cover 1..{self.n}")
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int) -> "Partition":
        """Build from 1-based blocks, e.g. ``[[1, 2], [3], [4, 5]]``."""
        return cls(n, tuple(mask_of(block, n) for block in blocks))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        parts = [0] * (max(labels) + 1)
        for i, label in enumerate(labels):
            parts[label] |= 1 << i
        return cls(len(labels), tuple(parts))

    @classmethod
    def parse(cls, text: str, n: int) -> "Partition":
        """Parse ``{1 2|3|4 5}``."""
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ValueError(f"partition {text!r} must be enclosed in braces")
        blocks = []
        for chunk in body[1:-1].split("|"):
            tokens = re.split(r"[\s,]+", chunk.strip())
            if tokens == [""]:
                raise ValueError(f"empty part in {text!r}")
            blocks.append([int(token) for token in tokens])
        return cls.from_blocks(blocks, n)

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def labels(self) -> Tuple[int, ...]:
        labels = [0] * self.n
        for index, part in enumerate(self.parts):
            for i in iter_bits(part):
                labels[i] = index
        return tuple(labels)

    def sort_key(self) -> Tuple[int, ...]:
        return self.labels

    def part_index(self, element: int) -> int:
        """Position of the part holding a 0-based element."""
        bit = 1 << element
        for index, part in enumerate(self.parts):
            if part & bit:
                return index
        raise ValueError(f"element {element + 1} outside 1..{self.n}")

    def merge(self, a: int, b: int) -> "Partition":
        """Glue the parts at positions a and b."""
        if a == b:
            raise ValueError("cannot merge a part with itself")
        merged = self.parts[a] | self.parts[b]
        rest = tuple(part for index, part in enumerate(self.parts) if index not in (a, b))
        return Partition(self.n, rest + (merged,))

    def render(self) -> str:
        return "{" + "|".join(" ".join(str(i) for i in indices_of(part)) for part in self.parts) + "}"

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> List[List[int]]:
        return [list(indices_of(part)) for part in self.parts]


def set_partitions(n: int, blocks: int) -> Iterator[Partition]:
    """All partitions of {1..n} into exactly ``blocks`` parts, in canonical order."""
    if blocks < 1 or blocks > n:
        return
    labels = [0] * n

    def extend(position: int, used: int) -> Iterator[Partition]:
        if position == n:
            if used == blocks:
                yield Partition.from_labels(labels)
            return
        left_after = n - position - 1
        for label in range(min(used + 1, blocks)):
            now_used = max(used, label + 1)
            if now_used + left_after < blocks:
                continue
            labels[position] = label
            yield from extend(position + 1, now_used)

    yield from extend(1, 1)
