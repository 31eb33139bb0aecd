from .cycles import (
    CycleSum,
    evaluate_monomial_by_cycles,
    multiply_l_into_cycle,
    point_count,
    stability_of_partition,
)
from .divisors import antidivisor_class, divisor_class, expand_d_epsilon
from .pairing import evaluate, intersect_monomial
from .partitions import Partition, set_partitions
from .signs import SignVector, top_intersection
