//! The `run` and `sweep` commands.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use tempfile::NamedTempFile;

use crate::config::{ExperimentConfig, InstanceConfig};
use crate::error::{CliError, EXIT_CONFIG, EXIT_NUMERIC, EXIT_OK, EXIT_VIOLATION};
use crate::eval::{evaluate, Evaluation, Overrides, CSV_HEADER};

pub const RESULTS_FILE: &str = "results.csv";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepParam {
    N,
    D,
    T,
}

/// Writes `bytes` next to `path` and renames it into place.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(row).expect("in-memory csv");
    }
    w.into_inner().expect("in-memory csv")
}

/// Exit status for a batch: configuration errors first, then numeric
/// failures, then violations.
fn status(results: &[(String, Result<Evaluation, CliError>)]) -> i32 {
    let codes: Vec<i32> = results.iter().filter_map(|(_, r)| r.as_ref().err().map(CliError::exit_code)).collect();
    if codes.contains(&EXIT_CONFIG) {
        EXIT_CONFIG
    } else if codes.contains(&EXIT_NUMERIC) {
        EXIT_NUMERIC
    } else if results.iter().any(|(_, r)| r.as_ref().is_ok_and(Evaluation::is_violation)) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

fn error_row(id: &str, inst: Option<&InstanceConfig>, extra: usize) -> Vec<String> {
    let mut row = vec![id.to_string()];
    match inst {
        Some(i) => row.extend([
            i.bound.name().to_string(),
            i.n().to_string(),
            i.d().to_string(),
            i.t().map(|t| t.to_string()).unwrap_or_default(),
        ]),
        None => row.extend(std::iter::repeat_n(String::new(), 4)),
    }
    row.extend(std::iter::repeat_n(String::new(), 5));
    row.push("error".into());
    row.extend(std::iter::repeat_n(String::new(), extra));
    row
}

fn report_errors(results: &[(String, Result<Evaluation, CliError>)]) {
    for (id, r) in results {
        if let Err(e) = r {
            eprintln!("error: instance `{id}`: {e}");
        }
    }
}

/// Evaluates every instance, writes `<id>.json` and `results.csv` into
/// `out`, and returns the exit status.
pub fn run(config: &Path, out: &Path, ov: &Overrides) -> Result<i32, CliError> {
    let cfg = ExperimentConfig::load(config)?;
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let mut results: Vec<(String, Result<Evaluation, CliError>)> =
        cfg.instances.par_iter().map(|inst| (inst.id.clone(), evaluate(inst, &cfg.policy, ov))).collect();
    results.sort_by(|a, b| a.0.cmp(&b.0));
    results
        .par_iter()
        .filter_map(|(id, r)| r.as_ref().ok().map(|e| (id, e)))
        .try_for_each(|(id, e)| write_atomic(&out.join(format!("{id}.json")), e.to_json().as_bytes()))?;
    let rows: Vec<Vec<String>> = results
        .iter()
        .map(|(id, r)| match r {
            Ok(e) => e.csv_row(),
            Err(_) => error_row(id, cfg.instances.iter().find(|i| &i.id == id), 0),
        })
        .collect();
    write_atomic(&out.join(RESULTS_FILE), &csv_bytes(&CSV_HEADER, &rows))?;
    report_errors(&results);
    Ok(status(&results))
}

fn parse_values(param: SweepParam, values: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = values.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if parts.is_empty() {
        return Err(CliError::Usage("--values needs at least one value".into()));
    }
    parts
        .into_iter()
        .map(|s| {
            let bad = || CliError::Usage(format!("invalid value `{s}` for --vary {param:?}"));
            match param {
                SweepParam::N | SweepParam::D => s.parse::<usize>().ok().filter(|v| *v > 0).map(|v| v as f64).ok_or_else(bad),
                SweepParam::T => s.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(bad),
            }
        })
        .collect()
}

fn vary(inst: &InstanceConfig, param: SweepParam, v: f64) -> Result<InstanceConfig, CliError> {
    match param {
        SweepParam::N => inst.with_n(v as usize),
        SweepParam::D => inst.with_d(v as usize),
        SweepParam::T => inst.with_t(v),
    }
    .map_err(CliError::Config)
}

/// One row per (instance, value), with `c0 + c1·K` times √n and the
/// Lyapunov ratio of the sequence appended. Rows follow instance id, then
/// the order of `values`.
pub fn sweep(config: &Path, param: SweepParam, values: &str, out: Option<&Path>, ov: &Overrides) -> Result<i32, CliError> {
    let values = parse_values(param, values)?;
    let cfg = ExperimentConfig::load(config)?;
    let mut instances: Vec<&InstanceConfig> = cfg.instances.iter().collect();
    instances.sort_by(|a, b| a.id.cmp(&b.id));
    let jobs: Vec<(String, Result<InstanceConfig, CliError>)> = instances
        .iter()
        .flat_map(|inst| values.iter().map(move |&v| (inst.id.clone(), vary(inst, param, v))))
        .collect();
    let evaluated: Vec<(String, Result<Evaluation, CliError>, Option<f64>)> = jobs
        .par_iter()
        .map(|(id, inst)| match inst {
            Err(e) => (id.clone(), Err(CliError::Config(e.to_string())), None),
            Ok(inst) => {
                let beta = inst.sequence.spec.lyapunov_beta().ok();
                (id.clone(), evaluate(inst, &cfg.policy, ov), beta)
            }
        })
        .collect();
    let rows: Vec<Vec<String>> = evaluated
        .iter()
        .zip(&jobs)
        .map(|((id, r, beta), (_, inst))| match r {
            Ok(e) => {
                let constant = match e.rhs().constant_symbol {
                    Some(clt_bounds::bound::ConstantSymbol::M) => cfg.policy.constant_m,
                    _ => ov.constant_a.unwrap_or(cfg.policy.constant_a),
                };
                let mut row = e.csv_row();
                row.push((e.rhs().at(constant) * (e.n as f64).sqrt()).to_string());
                row.push(beta.map(|b| b.to_string()).unwrap_or_default());
                row
            }
            Err(_) => error_row(id, inst.as_ref().ok(), 2),
        })
        .collect();
    let mut header = CSV_HEADER.to_vec();
    header.extend(["bound_sqrt_n", "beta"]);
    let bytes = csv_bytes(&header, &rows);
    match out {
        Some(path) => write_atomic(path, &bytes)?,
        None => std::io::stdout().write_all(&bytes).map_err(|e| CliError::io("<stdout>", e))?,
    }
    let results: Vec<(String, Result<Evaluation, CliError>)> = evaluated.into_iter().map(|(id, r, _)| (id, r)).collect();
    report_errors(&results);
    Ok(status(&results))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_lists() {
        assert_eq!(parse_values(SweepParam::N, "4, 16,64").unwrap(), vec![4.0, 16.0, 64.0]);
        assert_eq!(parse_values(SweepParam::T, "-0.5,1e-1").unwrap(), vec![-0.5, 0.1]);
        assert!(parse_values(SweepParam::N, "").is_err());
        assert!(parse_values(SweepParam::N, " , ").is_err());
        assert!(parse_values(SweepParam::D, "0").is_err());
        assert!(parse_values(SweepParam::T, "nan").is_err());
    }

    #[test]
    fn csv_rows_are_quoted_when_needed() {
        let bytes = csv_bytes(&["a", "b"], &[vec!["x".into(), "holds_within_constant(2)".into()], vec!["1,2".into(), String::new()]]);
        assert_eq!(String::from_utf8(bytes).unwrap(), "a,b\nx,holds_within_constant(2)\n\"1,2\",\n");
    }
}
