use std::path::PathBuf;

use thiserror::Error;

use crate::elastica::ElasticaState;
use crate::fem::FemSolutionPath;

/// Errors from the material model and file readers.
#[derive(Debug, Error)]
pub enum MaterialError {
    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("invalid material: {0}")]
    Validation(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Error)]
pub enum ElasticaError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("property iteration did not converge after {iterations} iterations (last |ΔT| = {last_update:e} °C)")]
    Convergence {
        iterations: usize,
        last_update: f64,
        state: Box<ElasticaState>,
    },
}

#[derive(Debug, Error)]
pub enum FemError {
    #[error("invalid FEM input: {0}")]
    Validation(String),
    #[error("singular tangent stiffness at equation {0}")]
    Singular(usize),
    #[error("Newton iteration failed at T = {temperature} °C after maximal step halving")]
    Convergence {
        temperature: f64,
        partial: Box<FemSolutionPath>,
    },
}

#[derive(Debug, Error)]
pub enum CompareError {
    #[error("{path}: row {row}: {message}")]
    Parse {
        path: PathBuf,
        row: usize,
        message: String,
    },
    #[error("{0}")]
    Validation(String),
    #[error("only {included} experimental points fall inside the model span of '{label}' (need at least 2)")]
    Coverage { label: String, included: usize },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
