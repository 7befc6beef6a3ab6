use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gmrk_core::coupling::{HalfInt, PhaseConvention};
use gmrk_core::repspace::{SpaceMode, SpaceSpec};
use gmrk_core::validator::ComplexValue;
use num::complex::Complex64;
use serde::Serialize;

use crate::complex::parse_complex;

#[derive(Parser, Debug)]
#[command(name = "gmrk", version, about = "Gell-Mann formula representations of sl(n, R) on truncated L2(Spin(n))")]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Subcommand, Debug)]
enum CommandArgs {
    /// List the basis states of a truncated space
    Basis(Common),
    /// Emit the operator matrices M, K, U and T
    Generators {
        #[command(flatten)]
        common: Common,
        /// Formula used for T
        #[arg(long, value_enum, default_value_t = Construction::Closed)]
        construction: Construction,
        /// Real form of the emitted shear generators
        #[arg(long, value_enum, default_value_t = Form::Sl)]
        form: Form,
    },
    /// Run every check for one configuration
    Validate(Common),
    /// Run the [T, T] check over the full space and every coset split
    Scan(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Rank of Spin(n): 3 or 4
    #[arg(long, default_value_t = 3)]
    n: u8,

    /// Truncation level (integer or half-integer, e.g. 4 or 7/2)
    #[arg(long = "j-max", default_value = "4", value_parser = parse_half, allow_hyphen_values = true)]
    j_max: HalfInt,

    #[arg(long, value_enum, default_value_t = ModeArg::Coset)]
    mode: ModeArg,

    /// Size m of the first little-group factor Spin(m) x Spin(n - m)
    #[arg(long = "m-split", default_value_t = 1)]
    m_split: u8,

    /// Real or complex sigma, e.g. 2.5 or 1-0.5i
    #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    sigma: Complex64,

    /// Pass threshold applied to every check
    #[arg(long, env = "GMRK_TOLERANCE", value_parser = parse_tolerance)]
    tolerance: Option<f64>,

    /// Distance in levels from the cutoff below which states are interior
    #[arg(long, default_value = "2", value_parser = parse_half, allow_hyphen_values = true)]
    margin: HalfInt,

    /// Output file (json) or directory (csv); stdout when omitted
    #[arg(long, short)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Phase convention of the coupling coefficients
    #[arg(long, value_enum, default_value_t = PhaseArg::CondonShortley)]
    phase: PhaseArg,
}

fn parse_half(s: &str) -> Result<HalfInt, String> {
    s.parse::<HalfInt>().map_err(|e| e.to_string())
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
        _ => Err(format!("tolerance must be a positive number, got {s:?}")),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Full,
    Coset,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PhaseArg {
    CondonShortley,
    SignedIrreps,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Basis,
    Generators,
    Validate,
    Scan,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// Closed-form matrix elements (coset spaces only)
    Closed,
    /// iα[C₂, U]/|u| + σU/|u|
    GellMann,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Sl,
    Su,
}

/// A fully parsed invocation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: u8,
    pub j_max: HalfInt,
    pub mode: SpaceMode,
    pub m_split: u8,
    #[serde(serialize_with = "complex_value")]
    pub sigma: Complex64,
    pub tolerance: Option<f64>,
    pub margin: HalfInt,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    pub format: Format,
    pub phase: PhaseConvention,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<Form>,
}

fn complex_value<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    ComplexValue::from(*z).serialize(s)
}

/// What clap decided about an argument vector.
#[derive(Debug)]
pub enum Parsed {
    Run(RunConfig),
    /// `--help` or `--version`: print and exit 0.
    Info(String),
    /// Rejected arguments: print and exit 2.
    Invalid(String),
}

impl RunConfig {
    /// Parse an argument vector (program name first). Semantic validation
    /// of the space happens separately in [`RunConfig::validate`].
    pub fn parse_from<I, T>(args: I) -> Parsed
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        match Cli::try_parse_from(args) {
            Ok(cli) => Parsed::Run(cli.into()),
            Err(e) => {
                let text = e.render().to_string();
                match e.kind() {
                    clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Parsed::Info(text),
                    _ => Parsed::Invalid(text),
                }
            }
        }
    }

    pub fn spec(&self) -> SpaceSpec {
        let spec = match self.mode {
            SpaceMode::Full => SpaceSpec::full(self.n, self.j_max),
            SpaceMode::Coset => SpaceSpec::coset(self.n, self.j_max, self.m_split),
        };
        // m_split still selects x in full mode
        SpaceSpec { m_split: self.m_split, ..spec }.with_phase(self.phase)
    }

    pub fn validate(&self) -> gmrk_core::Result<()> {
        self.spec().validate()?;
        if self.margin.twice() < 0 {
            return Err(gmrk_core::Error::Config(format!("margin must be non-negative, got {}", self.margin)));
        }
        Ok(())
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let (command, common, construction, form) = match cli.command {
            CommandArgs::Basis(c) => (Command::Basis, c, None, None),
            CommandArgs::Generators { common, construction, form } => {
                (Command::Generators, common, Some(construction), Some(form))
            }
            CommandArgs::Validate(c) => (Command::Validate, c, None, None),
            CommandArgs::Scan(c) => (Command::Scan, c, None, None),
        };
        RunConfig {
            command,
            n: common.n,
            j_max: common.j_max,
            mode: match common.mode {
                ModeArg::Full => SpaceMode::Full,
                ModeArg::Coset => SpaceMode::Coset,
            },
            m_split: common.m_split,
            sigma: common.sigma,
            tolerance: common.tolerance,
            margin: common.margin,
            output: common.output,
            format: common.format,
            phase: match common.phase {
                PhaseArg::CondonShortley => PhaseConvention::CondonShortley,
                PhaseArg::SignedIrreps => PhaseConvention::SignedIrreps,
            },
            construction,
            form,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> RunConfig {
        match RunConfig::parse_from(std::iter::once("gmrk").chain(args.iter().copied())) {
            Parsed::Run(cfg) => cfg,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn defaults_and_overrides() {
        let cfg = run(&["basis"]);
        assert_eq!((cfg.n, cfg.j_max, cfg.mode, cfg.m_split), (3, HalfInt::integer(4), SpaceMode::Coset, 1));
        assert_eq!(cfg.margin, HalfInt::TWO);
        let cfg = run(&["generators", "--n", "4", "--j-max", "5/2", "--mode", "full", "--sigma", "-1+2i"]);
        assert_eq!(cfg.j_max, HalfInt::from_twice(5));
        assert_eq!(cfg.sigma, Complex64::new(-1.0, 2.0));
        assert_eq!(cfg.construction, Some(Construction::Closed));
    }

    #[test]
    fn rejections() {
        for args in [
            &["basis", "--bogus"][..],
            &["basis", "--j-max", "1/3"],
            &["validate", "--sigma", "nan"],
            &["validate", "--tolerance", "-1"],
            &["frobnicate"],
            &["basis", "--mode", "half"],
        ] {
            let argv = std::iter::once("gmrk").chain(args.iter().copied());
            assert!(matches!(RunConfig::parse_from(argv), Parsed::Invalid(_)), "{args:?}");
        }
        assert!(matches!(RunConfig::parse_from(["gmrk", "--help"]), Parsed::Info(_)));
    }

    #[test]
    fn semantic_validation() {
        assert!(run(&["basis", "--n", "5"]).validate().is_err());
        assert!(run(&["basis", "--m-split", "3"]).validate().is_err());
        assert!(run(&["basis", "--margin", "-1"]).validate().is_err());
        assert!(run(&["basis", "--n", "4", "--m-split", "3"]).validate().is_ok());
    }
}
