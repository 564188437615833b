use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qm",
    version,
    about = "Quantum metrics on filtered AF algebras at finite truncation"
)]
pub struct Cli {
    /// Which algebra to truncate.
    pub instance: InstanceKind,

    /// Truncation size: level N (interval), word length (cantor) or number of tensor sites (uhf).
    #[arg(long, visible_aliases = ["depth", "sites"])]
    pub level: usize,

    /// geom:r, harmonic, from-element:NAME or from-element-squared:NAME.
    #[arg(long)]
    pub beta: BetaSpec,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InstanceKind {
    Interval,
    Cantor,
    Uhf,
}

impl InstanceKind {
    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::Interval => "interval",
            InstanceKind::Cantor => "cantor",
            InstanceKind::Uhf => "uhf",
        }
    }

    pub fn level_bounds(self) -> (usize, usize) {
        match self {
            InstanceKind::Interval => (2, 24),
            InstanceKind::Cantor => (1, 8),
            InstanceKind::Uhf => (1, 6),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// LP distances between all pure states, with the closed-form companion.
    Distances,
    /// Residual sequences and the two running seminorms of an element.
    Domain {
        /// p1 or a path to an element file.
        #[arg(long)]
        element: String,
    },
    /// Per-level terms of L_beta for an element.
    Seminorm {
        /// phi:n, chi:n, rademacher:k, pauli:k, p1, unit, or a path to an element file.
        #[arg(long)]
        element: String,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: qm_core::verify::Suite,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum BetaSpec {
    Geometric(f64),
    Harmonic,
    FromElement(String),
    FromElementSquared(String),
}

impl FromStr for BetaSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "harmonic" {
            return Ok(BetaSpec::Harmonic);
        }
        if let Some(r) = s.strip_prefix("geom:") {
            let r: f64 = r.parse().map_err(|_| format!("bad ratio in {s:?}"))?;
            if !(r > 0.0 && r < 1.0) {
                return Err(format!("geometric ratio {r} outside (0, 1)"));
            }
            return Ok(BetaSpec::Geometric(r));
        }
        if let Some(name) = s.strip_prefix("from-element-squared:") {
            return non_empty(name).map(BetaSpec::FromElementSquared);
        }
        if let Some(name) = s.strip_prefix("from-element:") {
            return non_empty(name).map(BetaSpec::FromElement);
        }
        Err(format!("unknown beta spec {s:?}; expected geom:r, harmonic, from-element:NAME or from-element-squared:NAME"))
    }
}

fn non_empty(name: &str) -> Result<String, String> {
    if name.is_empty() {
        Err("missing element name".into())
    } else {
        Ok(name.to_string())
    }
}

impl std::fmt::Display for BetaSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BetaSpec::Geometric(r) => write!(f, "geom:{r}"),
            BetaSpec::Harmonic => f.write_str("harmonic"),
            BetaSpec::FromElement(n) => write!(f, "from-element:{n}"),
            BetaSpec::FromElementSquared(n) => write!(f, "from-element-squared:{n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_specs_parse() {
        assert_eq!(
            "geom:0.5".parse::<BetaSpec>().unwrap(),
            BetaSpec::Geometric(0.5)
        );
        assert_eq!("harmonic".parse::<BetaSpec>().unwrap(), BetaSpec::Harmonic);
        assert_eq!(
            "from-element:p1".parse::<BetaSpec>().unwrap(),
            BetaSpec::FromElement("p1".into())
        );
        assert_eq!(
            "from-element-squared:p1".parse::<BetaSpec>().unwrap(),
            BetaSpec::FromElementSquared("p1".into())
        );
        for bad in ["geom:1", "geom:0", "geom:x", "from-element:", "cubic"] {
            assert!(bad.parse::<BetaSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn spec_display_round_trips() {
        for s in [
            "geom:0.25",
            "harmonic",
            "from-element:p1",
            "from-element-squared:f.json",
        ] {
            assert_eq!(s.parse::<BetaSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
