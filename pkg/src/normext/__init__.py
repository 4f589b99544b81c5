"""Exact norm-preserving extension engines on l1-type sequence spaces.

The package provides exact rational and interval arithmetic, the
sequence-space norms, linear-functional presentations, desk-scale
solvers for the classic choice oracles, an exact LP backend for the
one-step extension bounds, the extension engines themselves, and the
reduction pipelines tying the oracles to the engines.
"""

from .exactreal import (
    MonotoneCut,
    NoStabilizationError,
    Rational,
    RationalInterval,
    RealEnclosure,
    cut_limit,
    cut_value,
    interval_arith,
    rat,
    real_approx,
    two_pow,
)
from .spaces import (
    BlockVec,
    EpsilonSeq,
    FinVec,
    L1Point,
    block_norm,
    block_sum_norm,
    l1_norm,
    l1point_norm,
    linf_norm,
    truncate,
)
from .functionals import (
    CertifiedPoint,
    DualVector,
    FunctionalPresentation,
    GeneratorSystem,
    dual_pairing,
    eval_functional,
    eval_on_combination,
    opnorm_findim_l1,
    rescale,
)
from .simplex import (
    LPInfeasibleError,
    LPProblem,
    LPSolution,
    LPUnboundedError,
    solve_lp_exact,
)
from .oracles import (
    BitStream,
    CCInstance,
    Enumeration,
    LLPOInstance,
    PromiseViolationError,
    SEPInstance,
    TreeInstance,
    cc_instance_from_stages,
    cc_solve,
    ivt_to_cc,
    llpo_solve,
    loop_driver,
    sep_solve,
    sep_to_wkl,
    wkl_path,
)
from .hahnbanach import (
    CHOOSERS,
    NormViolationError,
    OneStepBounds,
    chooser_left,
    chooser_mid,
    chooser_right,
    conjugate_2d_linf,
    extend_2d_l1,
    extend_findim,
    extend_full_l1,
    one_step_bounds,
    one_step_extend,
)
from .reductions import (
    FuelError,
    alpha_subspace_distance,
    base_functional,
    block_map,
    block_map_inv,
    build_cc_extension_instance,
    build_llpo_extension_instance,
    build_sep_extension_instance,
    decode_cc_point,
    decode_llpo_answer,
    decode_separating_set,
    embed_l1,
    embed_l1_inv,
    eps_from_delta,
    run_cc_reduction,
    run_llpo_reduction,
    run_sep_reduction,
    sep_delta,
    separation_weights,
)

__version__ = "0.1.0"
