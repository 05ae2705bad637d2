//! Exact regular continued fractions of real algebraic numbers, and the
//! statistics used to compare their partial quotients with the
//! Gauss-Kuzmin law: divergences, goodness of fit, geometric means,
//! linear growth bounds and rational-approximation speed.
//!
//! ```
//! use khinchin_core::{cf_expand, AlgebraicNumber};
//!
//! let cbrt2 = AlgebraicNumber::nth_root(2, 3).unwrap();
//! let cf = cf_expand(&cbrt2, 10).unwrap();
//! assert_eq!(cf.coeffs, vec![3, 1, 5, 1, 1, 4, 1, 1, 8]);
//! ```

pub mod cf;
pub mod distmodel;
pub mod error;
pub mod numeric;
pub mod randsrc;
pub mod speed;
pub mod stats;
pub mod tables;

pub use cf::{
    approximation_error, cf_expand, cf_from_interval, convergents, decimal_oracle,
    floor_of_root, isolate_root, squarefree_part, AlgebraicNumber, CFExpansion,
    ConvergentSequence, ErrorEnclosure, IntegerPolynomial, NumberSpec,
};
pub use distmodel::{
    gk_cdf, gk_pmf, kc_value, khinchin_constant, trunc_pmf, CoefficientModel, GaussKuzmin,
    TruncatedGaussKuzmin,
};
pub use error::{Error, Result};
pub use numeric::LogBase;
pub use stats::{
    arithmetic_mean_series, bailey_c, chi_square, empirical_dist, geometric_mean_series, k_of_a,
    kld, levy_empirical_deviation, levy_ratio_series, EmpiricalDistribution, StatReport,
};
pub use speed::{
    count_rn_above_one, rn_series, speed_buckets, speed_value, SpeedBucketReport, SpeedMetric,
};
pub use randsrc::{gk_sampler, random_cf, random_decimal, RandomNumberSpec, GENERATOR_VERSION};
