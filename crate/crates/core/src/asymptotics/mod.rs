//! Truncated asymptotic expansions of the exact moments and the
//! matched-asymptotics fitting engine that recovers their coefficient
//! tables from Laurent data.

mod expansions;
mod fit;
mod residuals;

pub use expansions::{
    exn_expansion, lo_fixed_m_rates, lo_mean_expansion, lo_random_start_expansion,
    lo_var_expansion, mu_star_expansion, v_star_expansion, vxn_expansion,
};
pub use fit::{fit_dk, phi3_series, psi_series_from_fit, FitRow, FitTarget};
pub use residuals::{residual_report, ResidualCell, ResidualReport, ResidualTarget};
