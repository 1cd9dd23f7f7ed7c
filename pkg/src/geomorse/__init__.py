"""Exact Morse-index iteration for closed geodesics, equivariant Betti
tables of non-contractible loop spaces, and the irrational-system
difference-number calculus, all over exact rational and quadratic-
irrational arithmetic."""

from .errors import (
    BoundaryHitError,
    BudgetExhaustedError,
    ConditionError,
    DivergenceError,
    FormulaDomainError,
    GeomorseError,
    MixedRadicandError,
    ParseError,
    PeriodMismatchError,
    ValidationError,
)
from .exactnum import (
    ExactReal,
    as_exact,
    ceil_int,
    ceil_shifted,
    floor_int,
    frac,
    half_identities_check,
    parse_exact,
    phi,
    phi_shifted,
    sqrt_int,
)
from .homology import (
    BettiTable,
    MorseBettiReport,
    ResonanceReport,
    average_betti,
    betti,
    betti_series_oracle,
    bumpy_morse_equals_betti,
    chi_hat,
    claim_one_bound,
    morse_type_numbers,
    partial_alternating_average,
    resonance_check,
)
from .intervals import (
    IntervalPattern,
    KroneckerScanResult,
    ObstructionReport,
    Rank1Model,
    aux_function_f,
    aux_function_g,
    bound_check,
    bound_check_even,
    bound_check_odd,
    index_direct,
    index_via_interval,
    interval_location,
    interval_pattern,
    kronecker_scan,
    obstruction_scenario,
)
from .iteration import (
    IndexSequence,
    index_minus1,
    index_minus1_direct,
    index_nonorientable,
    index_of,
    index_orientable,
    mean_index,
    mean_index_bound_check,
    nullity_minus1,
    nullity_minus1_direct,
    nullity_nonorientable,
    nullity_of,
    nullity_orientable,
)
from .normalform import (
    GeodesicModel,
    NormalFormDecomposition,
    analytical_period,
    effective_period,
    splitting_consistency,
)
from .systems import (
    CollapseResult,
    EdnResult,
    EtaClassification,
    IrrationalSystem,
    NormalizedRepresentation,
    ReductionResult,
    ReductionStep,
    candidate_etas,
    classify,
    collapse_rank,
    conditions_report,
    cutoff_pairs,
    dense_eta_grid_max,
    effective_difference_number,
    eta_action,
    expand_equation,
    matrix_rank,
    normalize_representation,
    reduce_system,
)

__version__ = "0.1.0"
