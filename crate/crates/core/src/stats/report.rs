use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{
    arithmetic_mean_series, bailey_c, chi_square, empirical_dist, geometric_mean_series, k_of_a,
    kld_in, Binning, KIndexing,
};
use crate::cf::CFExpansion;
use crate::distmodel::{GaussKuzmin, TruncatedGaussKuzmin};
use crate::error::{Error, Result};
use crate::numeric::LogBase;

/// Knobs for [`StatReport::compute`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StatOptions {
    pub kld_base: LogBase,
    pub binning: Binning,
    pub k_indexing: KIndexing,
}

impl Default for StatOptions {
    fn default() -> Self {
        StatOptions {
            kld_base: LogBase::Two,
            binning: Binning::default(),
            k_indexing: KIndexing::default(),
        }
    }
}

/// One row of coefficient statistics for the first `n` partial quotients.
///
/// `chi2` and `p` are absent when some bin expects fewer than one
/// observation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatReport {
    pub number: String,
    pub n: usize,
    pub kld_gk: f64,
    pub kld_trunc: f64,
    pub chi2: Option<f64>,
    pub p: Option<f64>,
    pub gmean: f64,
    pub amean: f64,
    pub k_of_a: f64,
    pub k_argmax: usize,
    pub bailey_c: f64,
}

impl StatReport {
    pub const FIELDS: [&'static str; 11] = [
        "number", "n", "kld_gk", "kld_trunc", "chi2", "p", "gmean", "amean", "k_of_a",
        "k_argmax", "bailey_c",
    ];

    pub fn compute(number: &str, cf: &CFExpansion, n: usize, opts: &StatOptions) -> Result<Self> {
        let emp = empirical_dist(cf, n)?;
        let trunc = TruncatedGaussKuzmin::new(emp.maxn())?;
        let kld_gk = kld_in(&emp, &GaussKuzmin, opts.kld_base)?;
        let kld_trunc = kld_in(&emp, &trunc, opts.kld_base)?;
        let (chi2, p) = match chi_square(&emp, &GaussKuzmin, &opts.binning) {
            Ok(c) => (Some(c.statistic), Some(c.p_value)),
            Err(Error::InvalidInput(_)) => (None, None),
            Err(e) => return Err(e),
        };
        let gmean = geometric_mean_series(cf, &[n])?[0];
        let amean = arithmetic_mean_series(cf, &[n])?[0];
        let (k, argmax) = k_of_a(cf, 1, n, opts.k_indexing)?;
        Ok(StatReport {
            number: number.to_string(),
            n,
            kld_gk,
            kld_trunc,
            chi2,
            p,
            gmean,
            amean,
            k_of_a: k,
            k_argmax: argmax,
            bailey_c: bailey_c(gmean, n)?,
        })
    }
}

/// Header plus one CSV row per report, LF line endings.
pub fn write_reports_csv<W: Write>(out: W, reports: &[StatReport]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    if reports.is_empty() {
        w.write_record(StatReport::FIELDS).map_err(csv_err)?;
    }
    for r in reports {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::InvalidInput(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidInput(format!("csv: {e}"))
}
