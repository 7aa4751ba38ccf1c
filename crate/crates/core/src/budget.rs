//! Resource guards, overridable through `CATHERD_BUDGET`.
//!
//! Accepted forms: a plain integer (solver edge limit) or a comma list of
//! `solver_edges=N` and `vertices=M`.

use thiserror::Error;

use crate::infinite::DEFAULT_VERTEX_BUDGET;
use crate::solver::{SolverConfig, DEFAULT_MAX_EDGES};

pub const ENV_VAR: &str = "CATHERD_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad {ENV_VAR} value `{0}`: expected N or solver_edges=N,vertices=M")]
pub struct BudgetError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub solver_edges: usize,
    pub vertices: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { solver_edges: DEFAULT_MAX_EDGES, vertices: DEFAULT_VERTEX_BUDGET }
    }
}

impl Budget {
    pub fn parse(text: &str) -> Result<Budget, BudgetError> {
        let err = || BudgetError(text.to_string());
        let text = text.trim();
        let mut b = Budget::default();
        if let Ok(n) = text.parse::<usize>() {
            b.solver_edges = n;
            return Ok(b);
        }
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(err)?;
            let value: usize = value.trim().parse().map_err(|_| err())?;
            match key.trim() {
                "solver_edges" => b.solver_edges = value,
                "vertices" => b.vertices = value,
                _ => return Err(err()),
            }
        }
        Ok(b)
    }

    /// Defaults, overridden by the environment when set.
    pub fn from_env() -> Result<Budget, BudgetError> {
        match std::env::var(ENV_VAR) {
            Ok(v) => Budget::parse(&v),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig { max_edges: self.solver_edges, ..SolverConfig::default() }
    }
}
