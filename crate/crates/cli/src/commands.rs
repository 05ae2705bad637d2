use std::path::Path;

use khinchin_core::speed::{write_buckets_csv, DEFAULT_BOUNDARIES};
use khinchin_core::stats::{write_reports_csv, StatOptions};
use khinchin_core::tables::{reproduce_table, TableReproduction, RANDOM_ROW_SEEDS, TABLE_COUNT};
use khinchin_core::{
    cf_expand, gk_sampler, kc_value, random_cf, rn_series, speed_buckets, AlgebraicNumber,
    CFExpansion, Error, LogBase, NumberSpec, RandomNumberSpec, SpeedBucketReport, SpeedMetric,
    StatReport,
};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::artifact::{self, csv_rows, Meta};
use crate::config::{pick, speed_log_base, ExperimentConfig, Format};
use crate::{Cli, CliError, Command, Numbers, Output};

const DEFAULT_EXPAND_TERMS: usize = 20;
const DEFAULT_ANALYZE_TERMS: usize = 1000;
const DEFAULT_SPEED_TERMS: usize = 3000;
const DEFAULT_RN_RANGE: [usize; 2] = [1, 1000];
const DEFAULT_DIGITS: u32 = 1000;

pub fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = ExperimentConfig::load(cli.config.as_deref())?;
    match cli.command {
        Command::Expand { numbers, terms, output } => expand(&cfg, numbers, terms, output),
        Command::Analyze { numbers, terms, kld_base, output } => {
            analyze(&cfg, numbers, terms, kld_base, output)
        }
        Command::Speed { numbers, terms, metrics, boundaries, log_base, output } => {
            speed(&cfg, numbers, terms, metrics, boundaries, log_base, output)
        }
        Command::Rn { numbers, range, log_base, output } => rn(&cfg, numbers, range, log_base, output),
        Command::Random { seeds, digits, terms, sampler, kld_base, output } => {
            random(&cfg, seeds, digits, terms, sampler, kld_base, output)
        }
        Command::Kc { maxn, output } => kc(&cfg, maxn, output),
        Command::Reproduce { table, out } => reproduce(&table, &out),
    }
}

fn terms_of(flag: Option<u64>, cfg: &ExperimentConfig, default: usize) -> Result<usize, CliError> {
    let t = pick(flag.map(|t| t as usize), cfg.terms, default);
    if t < 1 {
        return Err(CliError::Usage("terms must be at least 1".into()));
    }
    Ok(t)
}

fn number_specs(flags: Numbers, cfg: &ExperimentConfig) -> Result<Vec<NumberSpec>, CliError> {
    let specs = if flags.numbers.is_empty() { cfg.numbers.clone() } else { flags.numbers };
    if specs.is_empty() {
        return Err(CliError::Usage("at least one --number is required".into()));
    }
    Ok(specs)
}

/// Malformed specs are usage errors; rational or missing roots are failures.
fn resolve(spec: &NumberSpec) -> Result<AlgebraicNumber, CliError> {
    spec.resolve().map_err(|e| match e {
        Error::InvalidInput(msg) => CliError::Usage(format!("{spec}: {msg}")),
        e => CliError::Failure(format!("{spec}: {e}")),
    })
}

fn resolve_all(specs: &[NumberSpec]) -> Result<Vec<AlgebraicNumber>, CliError> {
    specs.iter().map(resolve).collect()
}

/// Expansions of every number to `terms` coefficients including `b0`, in parallel.
fn expand_all(specs: &[NumberSpec], terms: usize) -> Result<Vec<CFExpansion>, CliError> {
    let nums = resolve_all(specs)?;
    nums.par_iter()
        .zip(specs)
        .map(|(a, spec)| cf_expand(a, terms).map_err(|e| CliError::Failure(format!("{spec}: {e}"))))
        .collect()
}

fn emit<R: serde::Serialize>(
    output: &Output,
    cfg: &ExperimentConfig,
    meta: &Meta,
    rows: &[R],
    extra: Map<String, Value>,
    csv_body: impl FnOnce(&mut dyn std::io::Write) -> khinchin_core::Result<()>,
) -> Result<(), CliError> {
    let out = artifact::open(output.out.as_deref().or(cfg.output.as_deref()))?;
    match pick(output.format, cfg.format, Format::Csv) {
        Format::Csv => artifact::write_csv(out, meta, csv_body),
        Format::Json => artifact::write_json(out, meta, rows, extra),
    }
}

fn expand(cfg: &ExperimentConfig, numbers: Numbers, terms: Option<u64>, output: Output) -> Result<(), CliError> {
    let terms = terms_of(terms, cfg, DEFAULT_EXPAND_TERMS)?;
    let specs = number_specs(numbers, cfg)?;
    let cfs = expand_all(&specs, terms)?;
    let mut meta = Meta::new("expand", LogBase::default());
    meta.numbers = specs.clone();

    let rows: Vec<Value> = specs
        .iter()
        .zip(&cfs)
        .map(|(spec, cf)| {
            let b0 = cf.b0.to_i64().map_or_else(|| json!(cf.b0.to_string()), |v| json!(v));
            json!({"number": spec.label(), "spec": spec, "b0": b0, "coeffs": cf.coeffs})
        })
        .collect();
    let mut lines = Vec::new();
    for (spec, cf) in specs.iter().zip(&cfs) {
        lines.push(vec![spec.label(), "0".into(), cf.b0.to_string()]);
        for (i, b) in cf.coeffs.iter().enumerate() {
            lines.push(vec![spec.label(), (i + 1).to_string(), b.to_string()]);
        }
    }
    emit(&output, cfg, &meta, &rows, Map::new(), |w| {
        csv_rows(w, &["number", "index", "coefficient"], &lines)
    })
}

fn stat_options(cfg: &ExperimentConfig, kld_base: Option<LogBase>) -> StatOptions {
    let mut opts = cfg.stats.clone().unwrap_or_default();
    if let Some(b) = kld_base {
        opts.kld_base = b;
    }
    opts
}

fn analyze(
    cfg: &ExperimentConfig,
    numbers: Numbers,
    terms: Option<u64>,
    kld_base: Option<LogBase>,
    output: Output,
) -> Result<(), CliError> {
    let n = terms_of(terms, cfg, DEFAULT_ANALYZE_TERMS)?;
    let specs = number_specs(numbers, cfg)?;
    let opts = stat_options(cfg, kld_base);
    let cfs = expand_all(&specs, n + 1)?;
    let reports: Vec<StatReport> = specs
        .par_iter()
        .zip(&cfs)
        .map(|(spec, cf)| StatReport::compute(&spec.label(), cf, n, &opts))
        .collect::<khinchin_core::Result<_>>()?;
    let mut meta = Meta::new("analyze", opts.kld_base);
    meta.numbers = specs;
    emit(&output, cfg, &meta, &reports, Map::new(), |w| write_reports_csv(w, &reports))
}

fn speed(
    cfg: &ExperimentConfig,
    numbers: Numbers,
    terms: Option<u64>,
    metrics: Vec<SpeedMetric>,
    boundaries: Option<Vec<f64>>,
    log_base: Option<LogBase>,
    output: Output,
) -> Result<(), CliError> {
    let count = terms_of(terms, cfg, DEFAULT_SPEED_TERMS)?;
    if count < 2 {
        return Err(CliError::Usage("speed needs at least 2 convergents".into()));
    }
    let specs = number_specs(numbers, cfg)?;
    let metrics = match (metrics.is_empty(), cfg.metrics.is_empty()) {
        (false, _) => metrics,
        (true, false) => cfg.metrics.clone(),
        (true, true) => vec![SpeedMetric::Khinchin, SpeedMetric::NewSpeed],
    };
    let boundaries = boundaries
        .or_else(|| cfg.boundaries.clone())
        .unwrap_or_else(|| DEFAULT_BOUNDARIES.to_vec());
    if boundaries.is_empty()
        || boundaries.iter().any(|b| !(b.is_finite() && *b > 0.0))
        || boundaries.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(CliError::Usage("boundaries must be positive and strictly increasing".into()));
    }
    let base = speed_log_base(log_base, cfg.log_base)?;
    let nums = resolve_all(&specs)?;

    let jobs: Vec<(usize, SpeedMetric)> = (0..specs.len())
        .flat_map(|i| metrics.iter().map(move |&m| (i, m)))
        .collect();
    let reports: Vec<SpeedBucketReport> = jobs
        .par_iter()
        .map(|&(i, m)| speed_buckets(&specs[i].label(), &nums[i], count, m, &boundaries, base))
        .collect::<khinchin_core::Result<_>>()?;
    for r in &reports {
        if !r.straddling.is_empty() || !r.excluded.is_empty() {
            eprintln!(
                "{} {}: {} straddling a boundary, {} excluded",
                r.number,
                r.metric,
                r.straddling.len(),
                r.excluded.len()
            );
        }
    }

    let mut meta = Meta::new("speed", base);
    meta.numbers = specs;
    let rows: Vec<Value> = reports
        .iter()
        .flat_map(|r| {
            r.counts.iter().enumerate().map(move |(i, c)| {
                let (lo, hi) = r.bucket_range(i);
                json!({"number": r.number, "metric": r.metric, "range_lo": lo, "range_hi": hi, "count": c})
            })
        })
        .collect();
    let summary: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({"number": r.number, "metric": r.metric, "n_range": r.n_range,
                   "straddling": r.straddling, "excluded": r.excluded})
        })
        .collect();
    let extra = Map::from_iter([("reports".to_string(), json!(summary))]);
    emit(&output, cfg, &meta, &rows, extra, |w| write_buckets_csv(w, &reports))
}

fn rn(
    cfg: &ExperimentConfig,
    numbers: Numbers,
    range: Option<Vec<usize>>,
    log_base: Option<LogBase>,
    output: Output,
) -> Result<(), CliError> {
    let [lo, hi] = pick(range.map(|r| [r[0], r[1]]), cfg.range, DEFAULT_RN_RANGE);
    if lo < 1 || hi < lo {
        return Err(CliError::Usage(format!("empty range [{lo}, {hi}]")));
    }
    let specs = number_specs(numbers, cfg)?;
    let base = speed_log_base(log_base, cfg.log_base)?;
    let cfs = expand_all(&specs, hi + 1)?;
    let series = cfs
        .par_iter()
        .map(|cf| rn_series(cf, lo, hi, base))
        .collect::<khinchin_core::Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut summary = Vec::new();
    for (spec, s) in specs.iter().zip(&series) {
        let label = spec.label();
        eprintln!("{label}: {} indices with r_n > 1 in [{lo}, {hi}]", s.count_above_one());
        summary.push(json!({"number": label, "range": [lo, hi], "above_one": s.count_above_one(),
                            "skipped": s.skipped}));
        for &(n, r) in &s.values {
            rows.push(json!({"number": label, "n": n, "r_n": r}));
            lines.push(vec![label.clone(), n.to_string(), r.to_string()]);
        }
    }
    let mut meta = Meta::new("rn", base);
    meta.numbers = specs;
    let extra = Map::from_iter([("summary".to_string(), json!(summary))]);
    emit(&output, cfg, &meta, &rows, extra, |w| csv_rows(w, &["number", "n", "r_n"], &lines))
}

fn random(
    cfg: &ExperimentConfig,
    seeds: Vec<u64>,
    digits: Option<u32>,
    terms: Option<u64>,
    sampler: bool,
    kld_base: Option<LogBase>,
    output: Output,
) -> Result<(), CliError> {
    let seeds = match (seeds.is_empty(), cfg.all_seeds()) {
        (false, _) => seeds,
        (true, s) if !s.is_empty() => s,
        _ => vec![1],
    };
    let digits = pick(digits, cfg.digits, DEFAULT_DIGITS);
    if digits < 1 {
        return Err(CliError::Usage("digits must be at least 1".into()));
    }
    let terms = terms.map(|t| t as usize).or(cfg.terms);
    if terms == Some(0) {
        return Err(CliError::Usage("terms must be at least 1".into()));
    }
    let opts = stat_options(cfg, kld_base);
    let specs: Vec<RandomNumberSpec> = seeds
        .iter()
        .map(|&seed| RandomNumberSpec { seed, digits })
        .collect();

    let reports: Vec<StatReport> = specs
        .par_iter()
        .map(|spec| {
            if sampler {
                let n = terms.unwrap_or(digits as usize);
                let cf = gk_sampler(spec.seed, n, None)?;
                StatReport::compute(&format!("gk(seed={})", spec.seed), &cf, n, &opts)
            } else {
                let cf = random_cf(spec)?;
                let n = terms.unwrap_or(cf.certified_len());
                StatReport::compute(&spec.label(), &cf, n, &opts)
            }
        })
        .collect::<khinchin_core::Result<_>>()?;

    let mut meta = Meta::new(if sampler { "random --sampler" } else { "random" }, opts.kld_base);
    meta.seeds = seeds;
    if !sampler {
        meta.random = specs;
    }
    emit(&output, cfg, &meta, &reports, Map::new(), |w| write_reports_csv(w, &reports))
}

fn kc(cfg: &ExperimentConfig, maxn: Vec<u64>, output: Output) -> Result<(), CliError> {
    let values: Vec<(u64, f64)> = maxn
        .iter()
        .map(|&m| Ok((m, kc_value(m)?)))
        .collect::<Result<_, CliError>>()?;
    let format = output.format.or(cfg.format);
    if format.is_none() && output.out.is_none() && cfg.output.is_none() {
        // bare numbers for interactive use
        for (_, v) in &values {
            println!("{v:?}");
        }
        return Ok(());
    }
    let meta = Meta::new("kc", LogBase::default());
    let rows: Vec<Value> = values.iter().map(|(m, v)| json!({"maxn": m, "kc": v})).collect();
    let lines: Vec<Vec<String>> = values.iter().map(|(m, v)| vec![m.to_string(), format!("{v:?}")]).collect();
    emit(&output, cfg, &meta, &rows, Map::new(), |w| csv_rows(w, &["maxn", "kc"], &lines))
}

fn table_meta(t: &TableReproduction) -> Meta {
    let mut meta = Meta::new(&format!("reproduce --table {}", t.table), LogBase::E);
    meta.numbers = t.numbers.clone();
    if matches!(t.table, 2 | 3) {
        meta.seeds = RANDOM_ROW_SEEDS.to_vec();
    }
    meta
}

fn write_table(t: &TableReproduction, dir: &Path) -> Result<(), CliError> {
    let meta = table_meta(t);
    let path = |suffix: &str| dir.join(format!("table{}{suffix}", t.table));
    artifact::write_csv(artifact::open(Some(&path(".csv")))?, &meta, |w| t.write_csv(w))?;
    artifact::write_csv(artifact::open(Some(&path("_diff.csv")))?, &meta, |w| t.write_diff_csv(w))?;
    let rows: Vec<Value> = t
        .cells
        .iter()
        .map(|c| {
            json!({"row": c.row, "column": c.column, "computed": c.computed,
                   "reference": c.reference, "diff": c.diff()})
        })
        .collect();
    let extra = Map::from_iter([
        ("title".to_string(), json!(t.title)),
        ("notes".to_string(), json!(t.notes)),
    ]);
    artifact::write_json(artifact::open(Some(&path(".json")))?, &meta, &rows, extra)
}

/// Tables are computed one after another; a failing table does not stop
/// the rest, and whatever was written stays on disk.
fn reproduce(tables: &[u8], dir: &Path) -> Result<(), CliError> {
    let tables: Vec<u8> = if tables.is_empty() { (1..=TABLE_COUNT).collect() } else { tables.to_vec() };
    std::fs::create_dir_all(dir).map_err(|e| artifact::io_failure(dir, e))?;
    let mut failed = Vec::new();
    for t in tables {
        let result = reproduce_table(t)
            .map_err(CliError::from)
            .and_then(|rep| write_table(&rep, dir));
        match result {
            Ok(()) => eprintln!("table {t}: written to {}", dir.display()),
            Err(CliError::Failure(msg) | CliError::Usage(msg)) => {
                eprintln!("table {t}: {msg}");
                failed.push(t);
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failure(format!("tables {failed:?} failed")))
    }
}
