"""Numerical laboratory for LOCC entanglement-redistribution boxes."""

__version__ = "0.1.0"

from .boxes import (
    Box,
    BoxTask,
    SeparableBranch,
    analyze_structure,
    canonical_box,
    canonical_input,
    load_box,
    outcome_distribution,
    parity_2eprghz_box,
    random_box,
    save_box,
    target_output,
    teleportation_es_box,
    twirled_box,
    validate,
    validate_superoperator,
    xbasis_ghzepr_box,
)
from .commbounds import (
    AlphabetMap,
    CcBound,
    CvBounds,
    cc_lower,
    cc_of_box,
    cv_lower_depolarize,
    cv_lower_zflip,
    cv_upper_twirled,
    dense_coding_demo,
    eaccqc_estimate,
    optimize_1d,
    signaling_test,
    task_summary,
)
from .infotheory import (
    DeltaReport,
    Ensemble,
    binary_entropy,
    conditional_mutual_information,
    delta_lemma,
    eaccqc_value,
    holevo,
    holevo_capacity_cq,
    mutual_information,
    shannon_entropy,
    von_neumann_entropy,
)
from .qstate import (
    DensityMatrix,
    KrausChannel,
    PureState,
    Superoperator,
    apply,
    bell_basis,
    compose,
    double_twirl,
    epr,
    ghz,
    pauli,
    uu_star_twirl,
)
