//! Command-line front end: `basis`, `generators`, `validate` and `scan`.
//!
//! Exit codes: 0 when every check met its expectation, 1 when one did not,
//! 2 for usage, configuration and I/O errors.

pub mod commands;
pub mod complex;
pub mod config;
pub mod emit;
pub mod error;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

pub use complex::parse_complex;
pub use config::{Parsed, RunConfig};
pub use error::{CliError, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};

use config::Format;

fn emit(cfg: &RunConfig, doc: &emit::Document, out: &mut dyn Write) -> error::Result<()> {
    match (cfg.format, &cfg.output) {
        (Format::Json, None) => out.write_all(&emit::to_json(doc)?)?,
        (Format::Json, Some(path)) => emit::write_atomic(path, &emit::to_json(doc)?)?,
        (Format::Csv, Some(dir)) => {
            fs::create_dir_all(dir)?;
            for (name, bytes) in emit::csv_files(doc)? {
                emit::write_atomic(&dir.join(name), &bytes)?;
            }
        }
        (Format::Csv, None) => {
            let files = emit::csv_files(doc)?;
            match files.as_slice() {
                [(_, bytes)] => out.write_all(bytes)?,
                _ => {
                    return Err(CliError::Usage(
                        "this command writes several CSV files; pass --output <directory>".into(),
                    ))
                }
            }
        }
    }
    Ok(())
}

/// Run one invocation. `args` starts with the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::parse_from(args) {
        Parsed::Run(cfg) => cfg,
        Parsed::Info(text) => {
            let _ = write!(out, "{text}");
            return EXIT_OK;
        }
        Parsed::Invalid(text) => {
            let _ = write!(err, "{text}");
            return EXIT_USAGE;
        }
    };
    let result = commands::execute(&cfg).and_then(|outcome| {
        emit(&cfg, &outcome.document, out)?;
        Ok(outcome.exit_code)
    });
    match result {
        Ok(code) => {
            if code != EXIT_OK {
                let _ = writeln!(err, "gmrk: at least one check did not meet its expectation");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "gmrk: {e}");
            e.exit_code()
        }
    }
}
