from .weights import (
    ChamberSignature,
    MassiveReport,
    SubsetClass,
    SubsetMask,
    WeightVector,
    chamber_signature,
    classify_subset,
    crossed_walls,
    is_smooth,
    long_subsets,
    massive_points,
    new_weight_vector,
    parse_weights,
    require_smooth,
)
