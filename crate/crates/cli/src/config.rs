//! Command-line flags and their resolved, replayable form.

use std::path::PathBuf;

use cashift::laurent::parse_poly_infer;
use cashift::{Prime, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Subcommand, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Bring a polynomial to the form X_d - Φ
    Normalize,
    /// Space-time diagram of a one-dimensional automaton
    Evolve,
    /// Window language of the shift
    Language,
    /// Haar measure of a cylinder
    Measure,
    /// Joint versus product measures along dilations
    MixingScan,
    /// Witness non-mixing of S(R·P) at powers of p
    NonmixCert,
    /// Mixing check for offsets inside one time layer
    HorizontalCheck,
    /// Exhaustive search for sliding block codes
    HomSearch,
    /// Polynomial homomorphisms with bounded support
    DualHoms,
    /// Automorphism group via units of the dual
    Aut,
    /// Whether a support lies on one line
    Collinear,
    /// Factor a univariate polynomial
    Factor,
    /// Constant points of the shift
    Constants,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Normalize => "normalize",
            Command::Evolve => "evolve",
            Command::Language => "language",
            Command::Measure => "measure",
            Command::MixingScan => "mixing-scan",
            Command::NonmixCert => "nonmix-cert",
            Command::HorizontalCheck => "horizontal-check",
            Command::HomSearch => "hom-search",
            Command::DualHoms => "dual-homs",
            Command::Aut => "aut",
            Command::Collinear => "collinear",
            Command::Factor => "factor",
            Command::Constants => "constants",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Pgm,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "text",
            Format::Pgm => "pgm",
        }
    }
}

#[derive(Parser, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[command(
    name = "cashift",
    version,
    about = "Exact computations on linear cellular automaton shifts"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Prime modulus
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u64,
    /// Dimension (inferred from the polynomials when omitted)
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Update polynomial Φ of the source shift X_d - Φ
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub phi: Option<String>,
    /// Update polynomial Ψ of the target shift (defaults to Φ)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub psi: Option<String>,
    /// Polynomial for normalize, collinear and factor
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// Multiplier R for nonmix-cert
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Points "(a,b);(c,d)": window, offsets or support bound
    #[arg(long, global = true)]
    pub shape: Option<String>,
    /// Residues "1,0,0": window values, per-offset event values or top row
    #[arg(long, global = true)]
    pub values: Option<String>,
    /// Dilations "2,4,8"
    #[arg(long, global = true)]
    pub dilations: Option<String>,
    #[arg(long, global = true, default_value_t = 5)]
    pub jmax: u32,
    #[arg(long, global = true, default_value_t = 64)]
    pub mmax: i64,
    /// Cap on enumerated candidates
    #[arg(long, global = true, default_value_t = 1 << 16)]
    pub budget: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Families sampled by the functional-equation check
    #[arg(long, global = true, default_value_t = 1 << 16)]
    pub trials: u64,
    #[arg(long, global = true, default_value_t = 16)]
    pub steps: i64,
    /// Language method: cone or projection
    #[arg(long, global = true, default_value = "cone")]
    pub method: String,
    /// Rule enumerator: exhaustive or kernel
    #[arg(long, global = true, default_value = "exhaustive")]
    pub enumerator: String,
    /// Factors of Φ separated by ';', repeated for multiplicity
    #[arg(long, global = true)]
    pub factors: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn prime(&self) -> Result<Prime> {
        Prime::new(self.p)
    }

    pub fn dim(&self) -> usize {
        self.d.expect("dimension is resolved before dispatch")
    }

    /// Fills in defaults that depend on other flags so the recorded
    /// configuration replays exactly.
    pub fn resolve(mut self) -> Result<Self> {
        let p = self.prime()?;
        if self.d.is_none() {
            let min = match self.command {
                Command::Collinear | Command::Factor => 1,
                _ => 2,
            };
            let mut d = min;
            for text in [&self.phi, &self.psi, &self.poly, &self.r, &self.factors]
                .into_iter()
                .flatten()
            {
                for part in text.split(';') {
                    d = d.max(parse_poly_infer(part, p, min)?.dim());
                }
            }
            self.d = Some(d);
        }
        match self.command {
            Command::HomSearch | Command::DualHoms if self.psi.is_none() => self.psi.clone_from(&self.phi),
            Command::NonmixCert if self.r.is_none() => self.r = Some("1".into()),
            Command::Evolve if self.values.is_none() => self.values = Some("1".into()),
            _ => {}
        }
        if self.command == Command::HomSearch && self.shape.is_none() {
            self.shape = Some(origin(self.dim()));
        }
        Ok(self)
    }

    /// Arguments reproducing this configuration.
    pub fn to_argv(&self) -> Vec<String> {
        let mut argv = vec!["cashift".to_string(), self.command.name().to_string()];
        let mut push = |flag: &str, value: String| {
            argv.push(format!("--{flag}"));
            argv.push(value);
        };
        push("p", self.p.to_string());
        let optional = [
            ("d", self.d.map(|d| d.to_string())),
            ("phi", self.phi.clone()),
            ("psi", self.psi.clone()),
            ("poly", self.poly.clone()),
            ("r", self.r.clone()),
            ("shape", self.shape.clone()),
            ("values", self.values.clone()),
            ("dilations", self.dilations.clone()),
            ("factors", self.factors.clone()),
            ("out", self.out.as_ref().map(|o| o.display().to_string())),
        ];
        for (flag, value) in optional {
            if let Some(v) = value {
                push(flag, v);
            }
        }
        push("jmax", self.jmax.to_string());
        push("mmax", self.mmax.to_string());
        push("budget", self.budget.to_string());
        push("seed", self.seed.to_string());
        push("trials", self.trials.to_string());
        push("steps", self.steps.to_string());
        push("method", self.method.clone());
        push("enumerator", self.enumerator.clone());
        push("format", self.format.name().to_string());
        argv
    }
}

fn origin(d: usize) -> String {
    format!("({})", vec!["0"; d].join(","))
}
