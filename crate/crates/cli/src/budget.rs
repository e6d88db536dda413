//! Enumeration caps shared by the subcommands.

use crate::CliError;
use kappalat::lattice::DEFAULT_MAX_CHAINS;
use kappalat::quiver::DEFAULT_MAX_ENUMERATION;

pub const ENV_VAR: &str = "KAPPALAT_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_chains: usize,
    pub max_sets: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_chains: DEFAULT_MAX_CHAINS,
            max_sets: DEFAULT_MAX_ENUMERATION,
        }
    }
}

impl Budget {
    /// Flags win over the environment value, which wins over the defaults.
    /// The environment value is either a single number for both caps or a
    /// list like `chains=100,sets=50`.
    pub fn resolve(
        max_chains: Option<usize>,
        max_sets: Option<usize>,
        env: Option<&str>,
    ) -> Result<Budget, CliError> {
        let mut b = Budget::default();
        if let Some(env) = env.map(str::trim).filter(|s| !s.is_empty()) {
            let bad = || CliError::Input(format!("bad {ENV_VAR} value `{env}`"));
            if let Ok(v) = env.parse::<usize>() {
                b.max_chains = v;
                b.max_sets = v;
            } else {
                for part in env.split(',') {
                    let (key, val) = part.split_once('=').ok_or_else(bad)?;
                    let val = val.trim().parse::<usize>().map_err(|_| bad())?;
                    match key.trim() {
                        "chains" => b.max_chains = val,
                        "sets" => b.max_sets = val,
                        _ => return Err(bad()),
                    }
                }
            }
        }
        if let Some(v) = max_chains {
            b.max_chains = v;
        }
        if let Some(v) = max_sets {
            b.max_sets = v;
        }
        Ok(b)
    }
}
