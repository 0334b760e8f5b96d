"""Splittings of finite abelian groups: verification and classification of
splitting certificates, exact-cover splitter search, candidate-order scans,
semi-cross lattice tilings, and executable counting checks."""

from .groups import Element, FiniteAbelianGroup, factorize, is_prime, p_adic_valuation, unfactor
from .splitting import (
    MultiplierSet,
    Orbit,
    SingularityClass,
    SplittingCertificate,
    VerificationFailure,
    VerificationReport,
    classify_multipliers,
    make_certificate,
    orbit,
    s87_property_check,
    trivial_certificate,
    verify_splitting,
)
from .search import (
    BudgetExceeded,
    SearchConfig,
    SearchOutcome,
    SearchStats,
    enumerate_all_splittings,
    search_splitter,
)
from .scan import (
    CandidateOrder,
    ScanRecord,
    ScanReport,
    check_k_ge_n,
    check_k_le_n_minus_2,
    purely_singular_candidates,
    scan,
)
from .tiling import (
    ErrorBallShape,
    IntegerLattice,
    LatticeHom,
    TilingCertificate,
    column_hnf,
    error_ball,
    export_translates,
    kernel_lattice,
    lattice_from_splitting,
    semi_cross,
    verify_lattice_tiling,
    verify_tiling_by_basis,
)
from .counting import (
    AbcdeProfile,
    DigitExpansion,
    KDecomposition,
    StratificationProfile,
    TwReport,
    abcde_profile,
    base_p_digits,
    check_counting_identity,
    decompose_k,
    digit_pattern_check,
    stratify,
    tw_disjointness_check,
    unit_coset_intersection_size,
)

__version__ = "0.1.0"
