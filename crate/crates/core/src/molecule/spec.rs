use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unordered qubit pair stored as `(k, l)` with `k < l`, both 1-based.
pub type Pair = (usize, usize);

/// A positive binding weight together with the text it was written as.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Weight {
    pub value: f64,
    pub text: String,
}

impl Weight {
    pub fn new(value: f64) -> Self {
        Weight {
            value,
            text: format!("{value}"),
        }
    }

    pub fn with_text(value: f64, text: impl Into<String>) -> Self {
        Weight {
            value,
            text: text.into(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// Qubit count plus the weighted edge set of pairs that should be entangled.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeSpec {
    name: Option<String>,
    n_qubits: usize,
    edges: BTreeMap<Pair, Weight>,
}

impl MoleculeSpec {
    /// Validates indices, self-loops, duplicates and weights. Pairs may be given in
    /// either order.
    pub fn new(
        n_qubits: usize,
        edges: impl IntoIterator<Item = (usize, usize, Weight)>,
        name: Option<String>,
    ) -> Result<Self> {
        if n_qubits < 2 {
            return Err(Error::Domain(format!(
                "a molecule needs at least 2 qubits, got {n_qubits}"
            )));
        }
        let mut map = BTreeMap::new();
        for (i, j, w) in edges {
            for q in [i, j] {
                if q == 0 || q > n_qubits {
                    return Err(Error::QubitIndex { index: q, n_qubits });
                }
            }
            if i == j {
                return Err(Error::Domain(format!("self-loop on qubit {i}")));
            }
            if !(w.value > 0.0 && w.value.is_finite()) {
                return Err(Error::Domain(format!(
                    "weight of ({i}, {j}) must be positive, got {}",
                    w.text
                )));
            }
            let key = (i.min(j), i.max(j));
            if map.insert(key, w).is_some() {
                return Err(Error::Domain(format!("duplicate edge ({}, {})", key.0, key.1)));
            }
        }
        if map.is_empty() {
            return Err(Error::Domain("a molecule needs at least one edge".into()));
        }
        Ok(MoleculeSpec {
            name,
            n_qubits,
            edges: map,
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Edges in lexicographic pair order.
    pub fn edges(&self) -> impl Iterator<Item = (Pair, &Weight)> {
        self.edges.iter().map(|(&p, w)| (p, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Weight of `(k, l)` in either order.
    pub fn weight(&self, k: usize, l: usize) -> Option<&Weight> {
        self.edges.get(&(k.min(l), k.max(l)))
    }

    pub fn contains(&self, k: usize, l: usize) -> bool {
        self.weight(k, l).is_some()
    }

    /// `M`, the sum of all weights (accumulated in edge order).
    pub fn total_weight(&self) -> f64 {
        self.edges.values().map(|w| w.value).sum()
    }

    /// Canonical text form that [`super::parse_spec`] reads back.
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.n_qubits);
        if let Some(name) = &self.name {
            out.push_str(&format!("name {name}\n"));
        }
        for ((k, l), w) in &self.edges {
            out.push_str(&format!("bind {k} {l} {}\n", w.text));
        }
        out
    }
}

/// Rescales weights to sum to one. Concurrences depend only on `x_kl / M`, so the
/// resulting family state has the same binding pattern.
pub fn normalize_weights(spec: &MoleculeSpec) -> MoleculeSpec {
    let m = spec.total_weight();
    let edges = spec.edges.iter().map(|(&p, w)| (p, Weight::new(w.value / m))).collect();
    MoleculeSpec {
        name: spec.name.clone(),
        n_qubits: spec.n_qubits,
        edges,
    }
}
