"""sievelab: random walks on matrix groups, large-sieve bounds, and
empirical decay of thin-set hit probabilities."""

from .errors import (
    ArityMismatch,
    BudgetExceeded,
    CompositeModulus,
    ConfigError,
    ConvergenceFailure,
    DegreeUnsupported,
    DimensionMismatch,
    DomainError,
    EnumerationUnavailable,
    InseparableResidue,
    InsufficientData,
    MissingIdentity,
    NotSymmetric,
    ResourceError,
    SievelabError,
    UndecidedMembership,
    UnknownRateExceeded,
)
from .matgroup import (
    AbelianElement,
    GeneratorMultiset,
    IntPolynomial,
    MatrixElement,
    char_poly,
    charpoly_coefficients,
    compose,
    elementary_generators,
    sl2_st_generators,
    torus_generators,
    validate_generators,
    z_generators,
)
from .quotients import (
    AbelianQuotient,
    ClosureReport,
    MatrixQuotient,
    PrimeSchedule,
    bfs_closure,
    find_excluded_primes,
    group_order,
    is_prime,
    prime_schedule,
)
from .walker import (
    MCEstimate,
    WalkConfig,
    WalkDistribution,
    exact_distribution,
    exact_origin_scan_z,
    hit_probability_exact,
    hit_probability_mc,
    mc_sweep,
    run_walk,
)
from .spectra import (
    AdjacencySpectrum,
    exact_deviation_sweep,
    expander_certify,
    mixing_bound,
    mixing_bound_squared,
    mixing_rate,
    second_eigenvalue,
    spectrum_csv,
)
from .thinsets import (
    EntryPolynomial,
    NongenericGaloisOracle,
    OracleVerdict,
    ProperPowerOracle,
    RationalFixedFlagOracle,
    ReducibleCharpolyOracle,
    ResidualReport,
    SubvarietyOracle,
    TorusSquaresOracle,
    coordinate_polynomial,
    generic_galois,
    proper_power,
    rational_fixed_flag,
    reducible_charpoly,
    residual,
    subvariety,
    trace_polynomial,
    zero_polynomial,
)
from .sieve import (
    AlphaEstimate,
    SieveBound,
    SievePlan,
    chebyshev_bound,
    estimate_alpha,
    exponential_bound,
    intersection_bound,
    pairwise_delta,
    plan_for_n,
    sieve_threshold_and_bound,
    single_prime_bound,
    single_prime_bound_exact,
)
from .lab import (
    CSV_HEADER,
    DecayFit,
    ExperimentRow,
    ExperimentTable,
    Scenario,
    describe,
    exact_probability,
    fit_decay,
    get_scenario,
    list_scenarios,
    run_experiment,
    theory_bound,
    xi_envelope,
)

__version__ = "0.1.0"
