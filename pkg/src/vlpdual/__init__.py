"""Exact rational workbench for linear vector optimization and its duals."""

from .cone import (
    Comparison,
    ConeError,
    OrderingCone,
    SeparationCertificate,
    cmp,
    contains,
    find_quasi_interior_point,
    in_dual,
    in_quasi_interior,
    make_cone,
    max_elements_finite,
    min_elements_finite,
    orthant,
    separate_from_cone,
    strictly_below,
    validate_cone,
)
from .duality import (
    MembershipVerdict,
    check_feasible_D,
    check_feasible_J,
    check_feasible_L,
    check_feasible_U,
    construct_dual_solution,
    dual_B_nonempty,
    feasible_dual_point,
    h_H_value_membership,
    improve_dual_infeasible_primal,
    u_feasibility_multiplier,
    map_D_to_DL,
    map_DH_to_D,
    membership_hB,
    membership_hJ,
    membership_hL,
    recover_primal,
)
from .efficiency import (
    EfficiencyCertificate,
    VertexLimitError,
    efficient_vertices,
    enumerate_vertices,
    is_efficient,
    proper_efficiency_certificate,
    recession_image_pointed,
)
from .exact import (
    DimensionError,
    LinearSolution,
    QMatrix,
    QVector,
    Rational,
    format_rational,
    outer,
    parse_rational,
    qmat,
    qvec,
    rat_normalize,
    solve_linear_system,
)
from .harness import (
    CampaignConfig,
    CheckRecord,
    FIXTURES,
    VerificationReport,
    emit_report,
    report_from_json,
    run_all_fixtures,
    run_fixture,
    run_instance_suite,
    run_random_campaign,
)
from .lp import (
    FeasibilityResult,
    GeneralProgram,
    GenRow,
    Infeasible,
    LinearProgram,
    LpOutcome,
    Optimal,
    Unbounded,
    solve_feasibility,
    solve_general,
    solve_lp,
    to_standard_form,
    verify_outcome,
)
from .model import (
    DualCandidateD,
    DualCandidateJ,
    DualCandidateL,
    DualCandidateU,
    ProblemFormatError,
    VlpProblem,
    load_problem,
    make_problem,
    objective_D,
    objective_J,
    objective_L,
    primal_feasible,
    serialize_problem,
)
