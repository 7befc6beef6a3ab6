use std::sync::Arc;

use gmrk_core::operators::{
    build_k, build_m, build_t_closed, build_t_gellmann, build_u, to_su_n, GellMannConfig, OperatorMatrix,
};
use gmrk_core::repspace::{enumerate_basis, BasisIndex};
use gmrk_core::validator::{default_grid, run_suite, validity_scan, ResidualReport, SuiteOptions};

use crate::config::{Command, Construction, Form, RunConfig};
use crate::emit::{basis_records, Document, OperatorRecord};
use crate::error::{Result, EXIT_CHECK_FAILED, EXIT_OK};

/// Result of a command: what to emit and the exit status it implies.
pub struct Outcome<'a> {
    pub document: Document<'a>,
    pub exit_code: i32,
}

fn empty(cfg: &RunConfig) -> Document<'_> {
    Document { config: cfg, basis: None, operators: None, reports: None }
}

fn gell_mann_config(cfg: &RunConfig) -> Result<GellMannConfig> {
    Ok(GellMannConfig::with_phase(cfg.n, cfg.m_split, cfg.sigma, cfg.phase)?)
}

fn basis(cfg: &RunConfig) -> Result<Arc<BasisIndex>> {
    Ok(Arc::new(enumerate_basis(cfg.spec())?))
}

fn run_basis(cfg: &RunConfig) -> Result<Outcome<'_>> {
    let b = basis(cfg)?;
    Ok(Outcome { document: Document { basis: Some(basis_records(&b)), ..empty(cfg) }, exit_code: EXIT_OK })
}

fn run_generators(cfg: &RunConfig) -> Result<Outcome<'_>> {
    let b = basis(cfg)?;
    let gm = gell_mann_config(cfg)?;
    let t = match cfg.construction.unwrap_or(Construction::Closed) {
        Construction::Closed => build_t_closed(&b, &gm)?,
        Construction::GellMann => build_t_gellmann(&b, &gm)?,
    };
    let t = match cfg.form.unwrap_or(Form::Sl) {
        Form::Sl => t,
        Form::Su => to_su_n(&t),
    };
    let families: [Vec<OperatorMatrix>; 4] = [build_m(&b)?, build_k(&b)?, build_u(&b, &gm)?, t];
    let operators = families.iter().flatten().map(OperatorRecord::of).collect();
    Ok(Outcome {
        document: Document { basis: Some(basis_records(&b)), operators: Some(operators), ..empty(cfg) },
        exit_code: EXIT_OK,
    })
}

fn verdict(reports: &[ResidualReport]) -> i32 {
    if reports.iter().all(|r| r.as_expected) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn run_validate(cfg: &RunConfig) -> Result<Outcome<'_>> {
    let reports =
        run_suite(&SuiteOptions { spec: cfg.spec(), sigma: cfg.sigma, margin: cfg.margin, tolerance: cfg.tolerance })?;
    let exit_code = verdict(&reports);
    Ok(Outcome { document: Document { reports: Some(reports), ..empty(cfg) }, exit_code })
}

fn run_scan(cfg: &RunConfig) -> Result<Outcome<'_>> {
    let grid: Vec<_> = default_grid(cfg.n, cfg.j_max, cfg.margin, cfg.sigma)?
        .into_iter()
        .map(|mut e| {
            e.spec = e.spec.with_phase(cfg.phase);
            e
        })
        .collect();
    let mut reports = validity_scan(&grid)?;
    if let Some(tol) = cfg.tolerance {
        reports = reports.into_iter().map(|r| r.with_tolerance(tol)).collect();
    }
    let exit_code = verdict(&reports);
    Ok(Outcome { document: Document { reports: Some(reports), ..empty(cfg) }, exit_code })
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome<'_>> {
    cfg.validate()?;
    match cfg.command {
        Command::Basis => run_basis(cfg),
        Command::Generators => run_generators(cfg),
        Command::Validate => run_validate(cfg),
        Command::Scan => run_scan(cfg),
    }
}
