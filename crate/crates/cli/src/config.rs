//! Run configuration shared by all commands.

use clap::{Args, ValueEnum};
use depthlab::constructions::{DEFAULT_DELTA_CAP, DEFAULT_POSET_IDEAL_CAP};
use depthlab::linquot::DEFAULT_SEARCH_CAP;
use depthlab::monomial::DEFAULT_LATTICE_CAP;
use depthlab::sweep::DEFAULT_SEED;
use depthlab::toric::{DEFAULT_BOUNDS_CAP, DEFAULT_BUCHBERGER_CAP};
use depthlab::{Execution, Field, Oracle};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// Aligned text for reading.
    Text,
    /// Structured JSON document.
    Doc,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse::<Field>().map_err(|e| e.to_string())
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("caps must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// Flags accepted by every command. Caps fall back to `DEPTHLAB_CAP_*`
/// environment variables; an explicit flag wins.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Homology field: `q` or `p:<prime>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: Field,

    /// Largest power k.
    #[arg(long, global = true, default_value_t = 3, value_parser = positive)]
    pub kmax: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub report: Option<std::path::PathBuf>,

    /// Disable the thread pool.
    #[arg(long, global = true)]
    pub sequential: bool,

    /// Maximum lcm-lattice size for the Betti oracle.
    #[arg(long = "cap-lattice", global = true, env = "DEPTHLAB_CAP_LATTICE",
          default_value_t = DEFAULT_LATTICE_CAP, value_parser = positive)]
    pub cap_lattice: usize,

    /// Maximum S-pair reductions in Buchberger's algorithm.
    #[arg(long = "cap-buchberger", global = true, env = "DEPTHLAB_CAP_BUCHBERGER",
          default_value_t = DEFAULT_BUCHBERGER_CAP, value_parser = positive)]
    pub cap_buchberger: usize,

    /// Maximum poset size for the delta search.
    #[arg(long = "cap-delta", global = true, env = "DEPTHLAB_CAP_DELTA",
          default_value_t = DEFAULT_DELTA_CAP, value_parser = positive)]
    pub cap_delta: usize,

    /// Maximum nodes in the linear-quotients order search.
    #[arg(long = "cap-search", global = true, env = "DEPTHLAB_CAP_SEARCH",
          default_value_t = DEFAULT_SEARCH_CAP, value_parser = positive)]
    pub cap_search: usize,

    /// Maximum number of poset ideals enumerated.
    #[arg(long = "cap-poset-ideals", global = true, env = "DEPTHLAB_CAP_POSET_IDEALS",
          default_value_t = DEFAULT_POSET_IDEAL_CAP, value_parser = positive)]
    pub cap_poset_ideals: usize,

    /// Maximum y-monomials enumerated per degree for the rho bounds.
    #[arg(long = "cap-bounds", global = true, env = "DEPTHLAB_CAP_BOUNDS",
          default_value_t = DEFAULT_BOUNDS_CAP, value_parser = positive)]
    pub cap_bounds: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub lattice: usize,
    pub buchberger: usize,
    pub delta: usize,
    pub search: usize,
    pub poset_ideals: usize,
    pub bounds: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub field: Field,
    pub kmax: usize,
    pub caps: Caps,
    pub format: Format,
    pub seed: u64,
    pub execution: Execution,
}

impl RunConfig {
    pub fn from_args(a: &CommonArgs) -> Self {
        RunConfig {
            field: a.field,
            kmax: a.kmax,
            caps: Caps {
                lattice: a.cap_lattice,
                buchberger: a.cap_buchberger,
                delta: a.cap_delta,
                search: a.cap_search,
                poset_ideals: a.cap_poset_ideals,
                bounds: a.cap_bounds,
            },
            format: a.format,
            seed: a.seed,
            execution: if a.sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            },
        }
    }

    pub fn oracle(&self) -> Oracle {
        Oracle {
            field: self.field,
            lattice_cap: self.caps.lattice,
            execution: self.execution,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_must_be_positive() {
        assert!(positive("0").is_err());
        assert!(positive("-3").is_err());
        assert_eq!(positive("12"), Ok(12));
    }

    #[test]
    fn fields_parse() {
        assert_eq!(parse_field("q"), Ok(Field::Rationals));
        assert_eq!(parse_field("p:7"), Ok(Field::Prime(7)));
        assert!(parse_field("p:8").is_err());
        assert!(parse_field("r").is_err());
    }
}
