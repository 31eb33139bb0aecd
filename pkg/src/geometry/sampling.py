import logging
from typing import Iterable, List, Optional

import numpy as np

from .weights import WeightVector, chamber_signature
from utils.errors import PolyspaceError

logger = logging.getLogger(__name__)


def random_smooth_weights(n: int, rng: np.random.Generator, max_weight: int = 12,
                          max_attempts: int = 4000) -> WeightVector:
    """
    Draw integer weights in ``1..max_weight`` until they define a smooth,
    nonempty polygon space.

    Raises:
        RuntimeError: If no valid draw was found within ``max_attempts``
    """
    for _ in range(max_attempts):
        draw = rng.integers(1, max_weight + 1, size=n)
        try:
            m = WeightVector(tuple(int(x) for x in draw))
        except PolyspaceError:
            continue
        if m.wall is None:
            return m
    raise RuntimeError(f"no smooth weight vector with n={n} after {max_attempts} draws")


def sample_chambers(n_values: Iterable[int], count: int, seed: int, max_weight: int = 12,
                    max_attempts: int = 4000, rng: Optional[np.random.Generator] = None) -> List[WeightVector]:
    """
    Up to ``count`` weight vectors per n, one per distinct chamber.

    The sample is a pure function of the arguments: the same seed always
    yields the same vectors in the same order.
    """
    rng = rng if rng is not None else np.random.default_rng(seed)
    sample = []
    for n in n_values:
        seen = set()
        attempts = 0
        while len(seen) < count and attempts < max_attempts:
            attempts += 1
            m = random_smooth_weights(n, rng, max_weight, max_attempts)
            signature = chamber_signature(m)
            if signature in seen:
                continue
            seen.add(signature)
            sample.append(m)
        logger.debug(f"sampled {len(seen)} chambers for n={n} in {attempts} draws")
    return sample
