//! Explicit inequalities for zeta and its short sums: van der Corput
//! constants and bounds, the rectangle checks on `[3/2, 2]`, and the final
//! inequality that fixes the threshold.

mod rect;
mod threshold;
mod vdc;

pub use rect::{
    minimal_t_rect32, rect32_check, rect_boundary_check_s3, verify_lemma1, zeta_inverse_bound, zeta_lower_bound,
    zeta_lower_bound_approx, ZETA_INVERSE_T_MIN,
};
pub use threshold::{
    agreeing_digits, corollary_rhs, final_inequality_check, final_inequality_gap, solve_threshold, solve_threshold_with, LogArg,
    ThresholdResult, PUBLISHED_TAU0,
};
pub use vdc::{
    domination_check, mainbound_rhs, tau0_conditions, tau0_uniform_floor, van1_rhs, vdc_d2_bound, vdc_d3_bound,
    verify_vdc2, verify_vdc3, D3Bound, VdcConstants,
};
