//! Coefficient statistics: empirical distributions, divergence and
//! goodness of fit, running means, growth of coefficients and tail laws.

mod empirical;
mod gof;
mod levy;
mod means;
mod report;

pub use empirical::{empirical_dist, EmpiricalDistribution};
pub use gof::{chi_square, chi_square_counts, kld, kld_in, kld_vectors, Bin, Binning, ChiSquare};
pub use levy::{levy_empirical_deviation, levy_empirical_deviation_with_depth, DEFAULT_LEVY_DEPTH};
pub use means::{
    arithmetic_mean_series, bailey_c, geometric_mean, geometric_mean_series, k_of_a,
    levy_ratio_series, KIndexing,
};
pub use report::{write_reports_csv, StatOptions, StatReport};
