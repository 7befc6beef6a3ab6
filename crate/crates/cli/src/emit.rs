//! Output records and their JSON / CSV renderings.
//!
//! Floats are written in their shortest round-trip form, so parsing the
//! output recovers every value bit for bit.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use gmrk_core::operators::{AlgebraForm, OperatorMatrix};
use gmrk_core::repspace::{BasisIndex, BasisState};
use gmrk_core::validator::ResidualReport;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StateRecord {
    #[serde(rename = "J")]
    pub j: String,
    pub k: String,
    pub m: String,
}

impl From<&BasisState> for StateRecord {
    fn from(s: &BasisState) -> Self {
        StateRecord { j: s.label.to_string(), k: s.k.to_string(), m: s.m.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexedState {
    pub index: usize,
    #[serde(flatten)]
    pub state: StateRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub row: StateRecord,
    pub col: StateRecord,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OperatorRecord {
    pub operator: String,
    pub component: String,
    pub form: &'static str,
    pub entries: Vec<Entry>,
}

impl OperatorRecord {
    pub fn of(op: &OperatorMatrix) -> Self {
        let basis = op.basis();
        let entries = op
            .matrix
            .entries()
            .map(|(r, c, v)| Entry { row: basis.state(r).into(), col: basis.state(c).into(), re: v.re, im: v.im })
            .collect();
        OperatorRecord {
            operator: op.name.to_string(),
            component: op.tag.to_string(),
            form: match op.form {
                AlgebraForm::Sl => "sl",
                AlgebraForm::Su => "su",
            },
            entries,
        }
    }

    /// File stem for the CSV rendering, e.g. `T_03`.
    fn stem(&self, position: usize) -> String {
        format!("{}_{position:02}", self.operator)
    }
}

/// Everything one run emits.
#[derive(Debug, Serialize)]
pub struct Document<'a> {
    pub config: &'a RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<IndexedState>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operators: Option<Vec<OperatorRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reports: Option<Vec<ResidualReport>>,
}

pub fn basis_records(basis: &BasisIndex) -> Vec<IndexedState> {
    basis.states().iter().enumerate().map(|(index, s)| IndexedState { index, state: s.into() }).collect()
}

/// Write `bytes` to `path` through a sibling temporary file, so readers
/// never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| CliError::Usage(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = fs::File::create(&tmp).and_then(|mut f| {
        f.write_all(bytes)?;
        f.sync_all()
    });
    match result.and_then(|_| fs::rename(&tmp, path)) {
        Ok(()) => Ok(()),
        Err(e) => {
            let _ = fs::remove_file(&tmp);
            Err(e.into())
        }
    }
}

pub fn to_json(doc: &Document) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(doc)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn csv_bytes<F>(fill: F) -> Result<Vec<u8>>
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<()>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    fill(&mut w)?;
    w.into_inner().map_err(|e| CliError::Io(e.into_error()))
}

pub fn basis_csv(states: &[IndexedState]) -> Result<Vec<u8>> {
    csv_bytes(|w| {
        w.write_record(["index", "J", "k", "m"])?;
        for s in states {
            w.write_record([s.index.to_string(), s.state.j.clone(), s.state.k.clone(), s.state.m.clone()])?;
        }
        Ok(())
    })
}

pub fn operator_csv(op: &OperatorRecord) -> Result<Vec<u8>> {
    csv_bytes(|w| {
        w.write_record(["row_J", "row_k", "row_m", "col_J", "col_k", "col_m", "re", "im"])?;
        for e in &op.entries {
            w.write_record([
                e.row.j.as_str(),
                &e.row.k,
                &e.row.m,
                &e.col.j,
                &e.col.k,
                &e.col.m,
                &real(e.re),
                &real(e.im),
            ])?;
        }
        Ok(())
    })
}

/// Shortest round-trip text; exponent form outside [1e-4, 1e16).
fn real(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e16).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(real).unwrap_or_default()
}

pub fn reports_csv(reports: &[ResidualReport]) -> Result<Vec<u8>> {
    csv_bytes(|w| {
        w.write_record([
            "check_name",
            "max_abs_residual",
            "tolerance",
            "pass",
            "expectation",
            "as_expected",
            "interior_margin",
            "basis_size",
            "n",
            "j_max",
            "mode",
            "m_split",
            "phase",
            "x",
            "sigma_re",
            "sigma_im",
            "alpha",
            "u_norm",
        ])?;
        for r in reports {
            let c = &r.config;
            w.write_record([
                r.check_name.clone(),
                real(r.max_abs_residual),
                real(r.tolerance),
                r.pass.to_string(),
                serde_json::to_value(r.expectation)?.as_str().unwrap_or_default().to_string(),
                r.as_expected.to_string(),
                r.interior_margin.to_string(),
                r.basis_size.to_string(),
                c.n.to_string(),
                c.j_max.to_string(),
                c.mode.to_string(),
                c.m_split.to_string(),
                serde_json::to_value(c.phase)?.as_str().unwrap_or_default().to_string(),
                c.x.map(|x| format!("{x:?}").to_lowercase()).unwrap_or_default(),
                opt(c.sigma.map(|s| s.re)),
                opt(c.sigma.map(|s| s.im)),
                opt(c.alpha),
                opt(c.u_norm),
            ])?;
        }
        Ok(())
    })
}

/// The files a CSV run produces, relative to the output directory.
pub fn csv_files(doc: &Document) -> Result<Vec<(PathBuf, Vec<u8>)>> {
    let mut files = Vec::new();
    if let Some(states) = &doc.basis {
        files.push((PathBuf::from("basis.csv"), basis_csv(states)?));
    }
    if let Some(ops) = &doc.operators {
        // position of each component within its own family
        let positions: Vec<usize> = ops
            .iter()
            .enumerate()
            .map(|(i, op)| ops[..i].iter().filter(|o| o.operator == op.operator).count())
            .collect();
        let manifest = csv_bytes(|w| {
            w.write_record(["file", "operator", "component", "form", "entries"])?;
            for (op, &i) in ops.iter().zip(&positions) {
                w.write_record([
                    format!("{}.csv", op.stem(i)),
                    op.operator.clone(),
                    op.component.clone(),
                    op.form.to_string(),
                    op.entries.len().to_string(),
                ])?;
            }
            Ok(())
        })?;
        files.push((PathBuf::from("manifest.csv"), manifest));
        for (op, &i) in ops.iter().zip(&positions) {
            files.push((PathBuf::from(format!("{}.csv", op.stem(i))), operator_csv(op)?));
        }
    }
    if let Some(reports) = &doc.reports {
        files.push((PathBuf::from("reports.csv"), reports_csv(reports)?));
    }
    Ok(files)
}
