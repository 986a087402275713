//! JSON state files:
//! `{"convention":"msb-first","n_qubits":N,"kind":"pure"|"density","data":[[re,im],...]}`
//! with densities flattened row-major. Floats are written in shortest round-trip form.

use serde::{Deserialize, Serialize};

use super::matrix::{CMatrix, C64};
use super::state::{DensityOperator, PureState};
use crate::error::{Error, Result};

pub const CONVENTION: &str = "msb-first";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Pure,
    Density,
}

/// Wire form of a state file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SerializedState {
    pub convention: String,
    pub n_qubits: usize,
    pub kind: StateKind,
    pub data: Vec<[f64; 2]>,
}

/// A decoded state file.
#[derive(Debug, Clone, PartialEq)]
pub enum StateFile {
    Pure(PureState),
    Density(DensityOperator),
}

fn pack(values: &[C64]) -> Vec<[f64; 2]> {
    values.iter().map(|z| [z.re, z.im]).collect()
}

impl StateFile {
    pub fn n_qubits(&self) -> usize {
        match self {
            StateFile::Pure(p) => p.n_qubits(),
            StateFile::Density(d) => d.n_qubits(),
        }
    }

    pub fn to_serialized(&self) -> SerializedState {
        let (n_qubits, kind, data) = match self {
            StateFile::Pure(p) => (p.n_qubits(), StateKind::Pure, pack(p.amplitudes())),
            StateFile::Density(d) => (d.n_qubits(), StateKind::Density, pack(d.matrix().as_slice())),
        };
        SerializedState {
            convention: CONVENTION.to_string(),
            n_qubits,
            kind,
            data,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_serialized()).expect("state serialization cannot fail")
    }

    pub fn from_serialized(s: SerializedState) -> Result<Self> {
        if s.convention != CONVENTION {
            return Err(Error::InvalidState(format!(
                "unsupported basis convention {:?}, expected {CONVENTION:?}",
                s.convention
            )));
        }
        let values: Vec<C64> = s.data.iter().map(|&[re, im]| C64::new(re, im)).collect();
        match s.kind {
            StateKind::Pure => Ok(StateFile::Pure(PureState::new(s.n_qubits, values)?)),
            StateKind::Density => {
                let found = values.len();
                let m = CMatrix::from_row_major(values).ok_or(Error::Dimension {
                    expected: 1usize << (2 * s.n_qubits),
                    found,
                })?;
                Ok(StateFile::Density(DensityOperator::new(s.n_qubits, m)?))
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_serialized(serde_json::from_str(text)?)
    }
}

impl From<PureState> for StateFile {
    fn from(p: PureState) -> Self {
        StateFile::Pure(p)
    }
}

impl From<DensityOperator> for StateFile {
    fn from(d: DensityOperator) -> Self {
        StateFile::Density(d)
    }
}
