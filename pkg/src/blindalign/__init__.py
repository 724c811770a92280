"""Blind interference alignment on homogeneous block-fading broadcast channels.

Decides feasibility of K-user 2x1 broadcast configurations from the
coherence time and per-user fading-block offsets, builds verified
slot-level schedules of super-symbol threads, numerically witnesses
alignment and decodability on random channel realizations, and counts or
estimates the probability that a group of users contains a feasible subset.
"""

from .errors import SearchBudgetExceeded
from .pattern import (
    ChannelConfig,
    GroupProfile,
    block_index,
    group_profile,
    group_slots,
    slot_group,
    pattern_matrix,
    is_feasible_pattern,
    count_feasible_patterns,
    enumerate_feasible_patterns,
)
from .feasibility import (
    check_weak,
    check_feasible,
    FeasibilityReport,
    check_config,
    circular_gap_check,
    FeasibleRegion,
    feasible_region,
    find_feasible_subset,
)
from .diophantine import (
    verify_solution,
    closed_form_solution,
    closed_form_solution_3user,
    brute_force_solve,
)
from .scheduler import (
    SuperSymbol,
    Schedule,
    build_schedule,
    ValidationReport,
    validate_schedule,
    dof_of_schedule,
    schedule_to_dict,
    schedule_from_dict,
)
from .signaling import (
    MAGNITUDE_FLOOR,
    ALIGNMENT_TOL,
    DECODABILITY_TOL,
    BeamformingSet,
    beamforming_vectors,
    ChannelRealization,
    draw_channels,
    AlignmentReport,
    verify_alignment,
    DecodabilityReport,
    verify_decodability,
    SummaryReport,
    verify_schedule_end_to_end,
)
from .counting import (
    CountResult,
    ProbabilityEstimate,
    stirling2,
    gamma_count,
    f_low_3,
    f_2user,
    exact_count,
    probability_exact,
    p_upper_3,
    monte_carlo_p,
    two_user_formula_report,
)

__version__ = "0.1.0"
