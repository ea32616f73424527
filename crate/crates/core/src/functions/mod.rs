//! Term generators and reference values for the shipped test problems.

mod bernoulli;
mod bessel;
mod exactness;
mod gamma;
mod hypergeometric;
mod lerch;
mod power;
mod zeta;

use thiserror::Error;

pub use bernoulli::{bernoulli_numbers, BernoulliTable, MAX_BERNOULLI_HALF_INDEX};
pub use bessel::{
    bessel_product_terms, bessel_product_terms_complement, bessel_scaled_factors,
    bessel_sum_closed_form, bessel_sum_closed_form_complement, BesselSumParams, BesselTerms,
};
pub use exactness::{alternating_power_tail, one_f_zero_terms, one_f_zero_value, OneFZeroTerms};
pub use gamma::{log_gamma, stirling_correction};
pub use hypergeometric::{pfq_terms, pfq_terms_complement, HypParams, PfqTerms};
pub use lerch::{
    lerch_terms, lerch_terms_complement, polylog_terms, polylog_terms_complement, LerchParams,
    LerchTerms, PolylogTerms,
};
pub use zeta::{
    euler_maclaurin_zeta, zeta_alt_partial_sums, zeta_alt_prefactor, zeta_alt_terms,
    zeta_condensed_closed, zeta_dirichlet_terms, zeta_neg_int, zeta_truncation_estimate, EtaTerms,
    ZetaAltTerms, ZetaDirichlet,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FunctionError {
    #[error("pole: {0}")]
    Pole(&'static str),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(
        "parameter pole: denominator parameter {index} = {value} is zero or a negative integer"
    )]
    ParameterPole { index: usize, value: f64 },
    #[error("unsupported order {0}")]
    Unsupported(u32),
}
