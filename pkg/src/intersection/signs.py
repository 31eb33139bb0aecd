"""
Top intersection numbers by a signed sum.

For |J| + 2k = n - 3 pick I containing J with |I| = n - 2, leaving two
indices alpha, beta outside, and a pivot gamma in I. Then

    l_J p^k = sum of sgn(eps.m_I) * eps_(I \\ J)

over sign vectors eps on I with eps_gamma = +1 and
|m_alpha - m_beta| < |eps.m_I| < m_alpha + m_beta.
"""
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Union

from geometry.weights import (
    SubsetMask,
    WeightVector,
    indices_of,
    iter_bits,
    popcount,
    require_smooth,
)
from utils.errors import WallHit, WrongDegree
from utils.parallel import parallel_sum

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SignVector:
    """Signs eps_i = ±1 on a support set, with eps_gamma = +1 (0-based gamma)."""

    support: int
    negative: int
    gamma: int

    def __post_init__(self):
        if not self.support >> self.gamma & 1:
            raise ValueError(f"gamma {self.gamma + 1} is not in {indices_of(self.support)}")
        if self.negative & ~self.support:
            raise ValueError("negative signs outside the support")
        if self.negative >> self.gamma & 1:
            raise ValueError("eps_gamma must be +1")

    @classmethod
    def from_signs(cls, signs: dict, gamma: int) -> "SignVector":
        """Build from a 1-based mapping index -> ±1 and a 1-based gamma."""
        support = 0
        negative = 0
        for i, sign in signs.items():
            if sign not in (1, -1):
                raise ValueError(f"sign of {i} must be ±1, got {sign}")
            support |= 1 << (i - 1)
            if sign == -1:
                negative |= 1 << (i - 1)
        return cls(support, negative, gamma - 1)

    def sign(self, i: int) -> int:
        """eps_i for a 1-based index in the support."""
        if not self.support >> (i - 1) & 1:
            raise ValueError(f"{i} is not in the support")
        return -1 if self.negative >> (i - 1) & 1 else 1

    def product(self, bits: int) -> int:
        """eps_J for J inside the support."""
        return -1 if popcount(self.negative & bits) % 2 else 1

    def pairing(self, m: WeightVector) -> int:
        """(eps_I, m_I) in primitive integer units."""
        return m.integer_mass(self.support) - 2 * m.integer_mass(self.negative)


def sign_vectors(support: int, gamma: int) -> Iterator[SignVector]:
    """All sign vectors on ``support`` with eps_gamma = +1 (0-based gamma)."""
    free = support & ~(1 << gamma)
    sub = free
    while True:
        yield SignVector(support, sub, gamma)
        if sub == 0:
            return
        sub = (sub - 1) & free


@dataclass(frozen=True)
class SignSumChoice:
    """The choice of I = complement of {alpha, beta} and pivot gamma, 0-based."""

    alpha: int
    beta: int
    gamma: int

    def support(self, n: int) -> int:
        return ((1 << n) - 1) ^ (1 << self.alpha) ^ (1 << self.beta)


def default_choice(n: int, j_bits: int) -> SignSumChoice:
    """alpha, beta the two largest indices outside J; gamma the smallest index of I."""
    outside = [i for i in range(n) if not j_bits >> i & 1]
    alpha, beta = outside[-2], outside[-1]
    support = ((1 << n) - 1) ^ (1 << alpha) ^ (1 << beta)
    gamma = (support & -support).bit_length() - 1
    return SignSumChoice(alpha, beta, gamma)


def admissible_choices(n: int, j_bits: int) -> Iterator[SignSumChoice]:
    """Every (alpha < beta) outside J and every gamma in the resulting I."""
    outside = [i for i in range(n) if not j_bits >> i & 1]
    for a_pos, alpha in enumerate(outside):
        for beta in outside[a_pos + 1:]:
            support = ((1 << n) - 1) ^ (1 << alpha) ^ (1 << beta)
            for gamma in iter_bits(support):
                yield SignSumChoice(alpha, beta, gamma)


def top_intersection(m: WeightVector, j: Union[SubsetMask, int], k: int,
                     choice: Optional[SignSumChoice] = None, workers: int = 1) -> int:
    """
    Evaluate l_J p^k on the fundamental class by the signed sum.

    Args:
        m: smooth weight vector
        j: the squarefree part J (SubsetMask or bitmask)
        k: power of p
        choice: alpha, beta, gamma; defaults to ``default_choice``
        workers: threads for the sign enumeration

    Raises:
        NotSmooth: If m lies on a wall
        WrongDegree: Unless |J| + 2k = n - 3
        WallHit: If a signed sum lands on a window boundary
    """
    require_smooth(m)
    n = m.n
    j_bits = j.bits if isinstance(j, SubsetMask) else int(j)
    if j_bits < 0 or j_bits >> n:
        raise ValueError(f"J = {j_bits:#x} is not inside 1..{n}")
    degree = popcount(j_bits) + 2 * k
    if k < 0 or degree != n - 3:
        raise WrongDegree(degree, n - 3)

    choice = choice or default_choice(n, j_bits)
    support = choice.support(n)
    if (j_bits & ~support) or choice.alpha == choice.beta:
        raise ValueError(f"alpha={choice.alpha + 1}, beta={choice.beta + 1} must be distinct and outside J")
    if not support >> choice.gamma & 1:
        raise ValueError(f"gamma={choice.gamma + 1} must lie in I")

    w = m.primitive
    low = abs(w[choice.alpha] - w[choice.beta])
    high = w[choice.alpha] + w[choice.beta]
    support_mass = m.integer_mass(support)
    free: List[int] = [i for i in iter_bits(support) if i != choice.gamma]
    odd_part = support & ~j_bits

    # masses and eps_(I\J) parities of every sub-selection of free indices
    masses = [0] * (1 << len(free))
    parities = [0] * (1 << len(free))
    for index in range(1, len(masses)):
        lowest = index & -index
        position = lowest.bit_length() - 1
        rest = index ^ lowest
        masses[index] = masses[rest] + w[free[position]]
        parities[index] = parities[rest] ^ (odd_part >> free[position] & 1)

    def partial(lo: int, hi: int) -> int:
        total = 0
        for index in range(lo, hi):
            value = support_mass - 2 * masses[index]
            size = abs(value)
            if size == low or size == high:
                raise WallHit(value)
            if low < size < high:
                sign = 1 if value > 0 else -1
                total += -sign if parities[index] else sign
        return total

    result = parallel_sum(partial, len(masses), workers)
    logger.debug(
        f"signs: l{list(indices_of(j_bits))} p^{k} on {m} = {result} "
        f"(alpha={choice.alpha + 1}, beta={choice.beta + 1}, gamma={choice.gamma + 1})"
    )
    return result
