//! Output artifacts. CSV files open with `# key: value` metadata lines
//! followed by a plain header and body; JSON files hold `meta` and `rows`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use khinchin_core::{LogBase, NumberSpec, RandomNumberSpec, GENERATOR_VERSION};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub generator_version: &'static str,
    pub command: String,
    pub log_base: LogBase,
    pub seeds: Vec<u64>,
    pub numbers: Vec<NumberSpec>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub random: Vec<RandomNumberSpec>,
}

impl Meta {
    pub fn new(command: &str, log_base: LogBase) -> Self {
        Meta {
            tool: "khinchin",
            tool_version: env!("CARGO_PKG_VERSION"),
            generator_version: GENERATOR_VERSION,
            command: command.to_string(),
            log_base,
            seeds: Vec::new(),
            numbers: Vec::new(),
            random: Vec::new(),
        }
    }

    fn preamble(&self) -> String {
        let seeds: Vec<String> = self.seeds.iter().map(u64::to_string).collect();
        let mut s = format!(
            "# tool: {} {}\n# generator: {}\n# command: {}\n# log_base: {}\n# seeds: {}\n# numbers: {}\n",
            self.tool,
            self.tool_version,
            self.generator_version,
            self.command,
            self.log_base.as_str(),
            seeds.join(" "),
            serde_json::to_string(&self.numbers).expect("specs serialize"),
        );
        if !self.random.is_empty() {
            s += &format!("# random: {}\n", serde_json::to_string(&self.random).expect("specs serialize"));
        }
        s
    }
}

/// Destination: a file path, or stdout when absent.
pub fn open(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
            }
            Box::new(BufWriter::new(File::create(p).map_err(|e| io_failure(p, e))?))
        }
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

pub fn io_failure(path: &Path, e: io::Error) -> CliError {
    CliError::Failure(format!("{}: {e}", path.display()))
}

/// Metadata lines, then whatever `body` writes.
pub fn write_csv(
    mut out: impl Write,
    meta: &Meta,
    body: impl FnOnce(&mut dyn Write) -> khinchin_core::Result<()>,
) -> Result<(), CliError> {
    out.write_all(meta.preamble().as_bytes()).map_err(failure)?;
    body(&mut out).map_err(|e| CliError::Failure(e.to_string()))?;
    out.flush().map_err(failure)
}

/// `{"meta": ..., "rows": [...], ...extra}`
pub fn write_json<R: Serialize>(
    mut out: impl Write,
    meta: &Meta,
    rows: &[R],
    extra: Map<String, Value>,
) -> Result<(), CliError> {
    let mut doc = Map::new();
    doc.insert("meta".into(), json!(meta));
    doc.insert("rows".into(), json!(rows));
    doc.extend(extra);
    serde_json::to_writer_pretty(&mut out, &Value::Object(doc))
        .map_err(|e| CliError::Failure(e.to_string()))?;
    out.write_all(b"\n").map_err(failure)?;
    out.flush().map_err(failure)
}

/// Plain CSV rows through the `csv` crate with LF line endings.
pub fn csv_rows<W: Write>(out: W, header: &[&str], rows: &[Vec<String>]) -> khinchin_core::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let err = |e: csv::Error| khinchin_core::Error::InvalidInput(format!("csv: {e}"));
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r).map_err(err)?;
    }
    w.flush()
        .map_err(|e| khinchin_core::Error::InvalidInput(e.to_string()))
}

fn failure(e: io::Error) -> CliError {
    CliError::Failure(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preamble_lines_are_comments() {
        let mut meta = Meta::new("kc", LogBase::E);
        meta.seeds = vec![1, 2];
        meta.numbers = vec![NumberSpec::nthroot(2, 3)];
        let mut buf = Vec::new();
        write_csv(&mut buf, &meta, |w| csv_rows(w, &["a"], &[vec!["1".into()]])).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body, ["a", "1"]);
        assert!(text.contains("# seeds: 1 2\n"));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn json_has_meta_and_rows() {
        let meta = Meta::new("kc", LogBase::Two);
        let mut buf = Vec::new();
        write_json(&mut buf, &meta, &[json!({"x": 1})], Map::new()).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["meta"]["log_base"], "2");
        assert_eq!(v["meta"]["generator_version"], GENERATOR_VERSION);
        assert_eq!(v["rows"][0]["x"], 1);
    }
}
