from .fano import (
    AmpleVerdict,
    FanoVerdict,
    MaximalDegeneration,
    anticanonical_degree,
    fano_verdict,
    first_chern_class,
    first_chern_class_consecutive,
    is_ample,
    is_fano_maximal,
    is_fano_quadrangle,
    maximal_degenerations,
)
from .quadrangles import (
    DivisorCoefficients,
    Quadrangle,
    QuadrangleKind,
    divisor_degree,
    quadrangle_l_degrees,
    quadrangles,
)
