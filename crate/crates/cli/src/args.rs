use std::fmt;

use clap::{Parser, Subcommand, ValueEnum};

use hamop::poly::Rational;

#[derive(Debug, Parser)]
#[command(
    name = "hamop",
    version,
    about = "Exact checks for third-order Hamiltonian operators and their Monge metrics"
)]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Killing, nonlinear and Potemin conditions, and curvature, for a metric.
    Verify {
        /// `catalog:<id>`, a catalog id, or a JSON file.
        #[arg(long)]
        metric: String,
        /// `name=value` with a rational value, or `name=sym` to keep it symbolic.
        #[arg(long, value_parser = parse_param)]
        param: Vec<Param>,
        #[arg(long, value_delimiter = ',')]
        checks: Vec<CheckKind>,
    },
    /// Segre symbol and class of a three-component metric with numeric coefficients.
    Classify {
        #[arg(long)]
        metric: String,
        #[arg(long, value_parser = parse_param)]
        param: Vec<Param>,
    },
    /// Admissible forms φ for a subspace of bivectors.
    SolvePhi {
        #[arg(long)]
        subspace: String,
        #[arg(long, value_parser = parse_param)]
        param: Vec<Param>,
    },
    /// Factor det g as a constant times S².
    Singular {
        #[arg(long)]
        metric: String,
        #[arg(long, value_parser = parse_param)]
        param: Vec<Param>,
    },
    /// Subspace to φ to metric to verdict.
    Pipeline {
        subspace: String,
        #[arg(long, value_parser = parse_param)]
        param: Vec<Param>,
    },
    /// Hamiltonian flow, linear degeneracy and diagonalisability of a hydrodynamic system.
    HydroCheck {
        #[arg(long)]
        system: String,
        #[arg(long, value_parser = parse_param)]
        param: Vec<Param>,
    },
    /// Inspect the catalog.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Classify { .. } => "classify",
            Command::SolvePhi { .. } => "solve-phi",
            Command::Singular { .. } => "singular",
            Command::Pipeline { .. } => "pipeline",
            Command::HydroCheck { .. } => "hydro-check",
            Command::Catalog { command: CatalogCommand::List } => "catalog list",
            Command::Catalog { command: CatalogCommand::Show { .. } } => "catalog show",
            Command::Catalog { command: CatalogCommand::Check { .. } } => "catalog check",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    List,
    Show {
        id: String,
    },
    /// Recompute entries and compare with their recorded expectations.
    Check {
        id: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Killing,
    Nonlin,
    Potemin,
    Curvature,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamValue {
    Symbolic,
    Value(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub value: ParamValue,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            ParamValue::Symbolic => write!(f, "{}=sym", self.name),
            ParamValue::Value(v) => write!(f, "{}={v}", self.name),
        }
    }
}

fn parse_param(s: &str) -> Result<Param, String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(format!("bad parameter name `{name}`"));
    }
    let value = match value.trim() {
        "sym" => ParamValue::Symbolic,
        v => ParamValue::Value(v.parse::<Rational>().map_err(|e| format!("bad value `{v}`: {e}"))?),
    };
    Ok(Param { name: name.to_string(), value })
}

/// The parameters that carry a number.
pub fn numeric(params: &[Param]) -> Vec<(String, Rational)> {
    params
        .iter()
        .filter_map(|p| match &p.value {
            ParamValue::Value(v) => Some((p.name.clone(), v.clone())),
            ParamValue::Symbolic => None,
        })
        .collect()
}
