"""Quantum correlation measures and monogamy deficits for small multipartite
states: entropy, discord, classical correlation, entanglement of formation,
one-way work deficit, the deficit identities and the GHZ/W classifier."""

from .correlations import (
    AnchorBundle,
    DiscordResult,
    anchor_measurement_bundle,
    concurrence_2q,
    discord,
    discord_bipartition,
    eof_2q,
    eof_pure_bipartition,
    interrogated_cmi,
    interrogated_interaction_info,
    work_deficit_oneway,
)
from .entropy import (
    binary_entropy,
    cond_mutual_info_unmeasured,
    conditional_entropy_unmeasured,
    interaction_info_unmeasured,
    mutual_information,
    von_neumann,
)
from .linalg import (
    DensityMatrix,
    DimensionList,
    hermitian_eig,
    kron,
    partial_trace,
    validate_density,
)
from .measure_opt import (
    MeasurementOutcomeEnsemble,
    MeasurementParams,
    measure_party,
    min_avg_conditional_entropy,
    min_dephased_entropy,
    projectors_from_params,
)
from .monogamy import (
    AverageCorrelations,
    ClassificationResult,
    DeficitReport,
    TripartiteTable,
    avg_correlations,
    check_deficit_gap_vs_eof,
    check_interaction_decomposition,
    check_lami_limi,
    check_left_deficit_avg_split,
    check_left_deficit_pair_mean,
    check_left_deficit_recursion,
    check_right_deficit_exchange,
    check_right_deficit_recursion,
    classify_ghz_w,
    deficit_left,
    deficit_left_pure_closed,
    deficit_report,
    deficit_right,
    deficit_right_npartite,
    deficit_right_pure_closed,
    squashed_bound_pure,
    work_deficit_bounds,
)
from .report import correlation_report
from .states import (
    StateVector,
    as_pure,
    ghz_generalized,
    ghz_n,
    haar_random_pure,
    load_state,
    product_state,
    psi_tilde,
    save_state,
    w_generalized,
)
from .sweep import SweepRow, run_sweep, sign_changes, write_sweep_csv
from .verify import TOLERANCES, run_suite

__version__ = "0.1.0"
