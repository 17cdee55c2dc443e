//! Built-in degenerations, random instance families, and instance files.

mod builder;
mod conifold;
mod hashimoto_sano;
mod random;

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::exactlinalg::Matrix;
use crate::steenbrink::{validate, SncInstance, SteenbrinkError, Stratum};
use builder::{piece, point, real_degree, restriction};

pub use conifold::{conifold_instance, ConifoldParams};
pub use hashimoto_sano::{
    hashimoto_sano_instance, iota_action, iota_matrix_displayed, ns_gram, K3Model222,
};
pub use random::{random_snc, SncFamily};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("FriedmanConditionFailure: {0}")]
    FriedmanConditionFailure(String),
    #[error("IoError: {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("SchemaError: {}", .0.join("; "))]
    Schema(Vec<String>),
}

impl From<SteenbrinkError> for InstanceError {
    fn from(e: SteenbrinkError) -> Self {
        match e {
            SteenbrinkError::Schema(msg) => InstanceError::Schema(vec![msg]),
            other => InstanceError::Schema(vec![other.to_string()]),
        }
    }
}

/// Outcome of checking every instance invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub name: String,
    pub issues: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

pub fn validate_instance(inst: &SncInstance) -> ValidationReport {
    ValidationReport {
        name: inst.name.clone(),
        issues: validate(inst),
    }
}

pub fn parse_instance(text: &str) -> Result<SncInstance, InstanceError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| InstanceError::Parse(e.to_string()))?;
    Ok(SncInstance::from_json(&value)?)
}

/// Read an instance file without checking invariants.
pub fn read_instance(path: &Path) -> Result<SncInstance, InstanceError> {
    let text = std::fs::read_to_string(path).map_err(|source| InstanceError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_instance(&text)
}

/// Read an instance file and reject it unless every invariant holds.
pub fn load_instance(path: &Path) -> Result<SncInstance, InstanceError> {
    let inst = read_instance(path)?;
    let report = validate_instance(&inst);
    if report.is_valid() {
        Ok(inst)
    } else {
        Err(InstanceError::Schema(report.issues))
    }
}

pub fn save_instance(inst: &SncInstance, path: &Path) -> Result<(), InstanceError> {
    let text = serde_json::to_string_pretty(&inst.to_json()).expect("instance JSON serializes");
    std::fs::write(path, text + "\n").map_err(|source| InstanceError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Two quadric surfaces `P¹ × P¹` glued along a ruling line, a fiber-dimension 2 toy.
pub fn two_quadrics() -> SncInstance {
    let hyperbolic = Matrix::from_ints(&[[0, 1], [1, 0]]);
    let quadric = |id: &str, c: usize| {
        piece(
            id,
            vec![c],
            vec![
                (0, point(0)),
                (2, real_degree(2, 1, hyperbolic.clone())),
                (4, point(2)),
            ],
        )
    };
    SncInstance {
        name: "two-quadrics".into(),
        fiber_dim: 2,
        strata: vec![
            Stratum {
                depth: 1,
                pieces: vec![quadric("A", 0), quadric("B", 1)],
            },
            Stratum {
                depth: 2,
                pieces: vec![piece("L", vec![0, 1], vec![(0, point(0)), (2, point(1))])],
            },
        ],
        restrictions: vec![
            restriction("A", "L", 0, Matrix::identity(1)),
            restriction("B", "L", 0, Matrix::identity(1)),
            restriction("A", "L", 2, Matrix::from_ints(&[[1, 0]])),
            restriction("B", "L", 2, Matrix::from_ints(&[[1, 0]])),
        ],
        kahler: None,
        a0: None,
        frame: None,
    }
}
