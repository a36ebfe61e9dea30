//! JSON interchange: group input files and analysis exports.
//!
//! Every document carries `"format": 1`. On input the field may be omitted.
//!
//! Cayley table input:
//! ```json
//! {"format": 1, "order": 2, "table": [[0, 1], [1, 0]], "labels": ["e", "x"]}
//! ```
//! Permutation input, generators as lists of cycles:
//! ```json
//! {"format": 1, "degree": 4, "generators": [[[0, 1, 2, 3]], [[1, 3]]]}
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{EulerCharacteristic, OrderComplex};
use crate::group::{
    group_from_cayley_with, permutation_closure, FiniteGroup, GroupError, Permutation, ValidationOptions,
};
use crate::homology::HomologyProfile;
use crate::poset::SubrackPoset;
use crate::rack::Rack;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("order field {declared} does not match a table with {rows} rows")]
    OrderMismatch { declared: usize, rows: usize },
    #[error("generator {index}: {reason}")]
    Generator { index: usize, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CayleyFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<u32>,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<u32>,
    pub degree: usize,
    /// Each generator is a list of disjoint cycles.
    pub generators: Vec<Vec<Vec<usize>>>,
}

fn check_version(v: Option<u32>) -> Result<(), FormatError> {
    match v {
        None | Some(FORMAT_VERSION) => Ok(()),
        Some(other) => Err(FormatError::Version(other)),
    }
}

impl CayleyFile {
    pub fn into_group(self, opts: &ValidationOptions) -> Result<FiniteGroup, FormatError> {
        check_version(self.format)?;
        if self.order != self.table.len() {
            return Err(FormatError::OrderMismatch { declared: self.order, rows: self.table.len() });
        }
        Ok(group_from_cayley_with(&self.table, self.labels, opts)?)
    }

    pub fn from_group(g: &FiniteGroup) -> CayleyFile {
        CayleyFile {
            format: Some(FORMAT_VERSION),
            order: g.order(),
            table: g.table(),
            labels: g.labels().map(|l| l.to_vec()),
        }
    }
}

impl PermutationFile {
    /// Closes the generators; elements are labelled by cycle notation.
    pub fn into_group(self, closure_bound: usize) -> Result<FiniteGroup, FormatError> {
        check_version(self.format)?;
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(index, cycles)| {
                Permutation::from_cycles(self.degree, cycles).map_err(|reason| FormatError::Generator { index, reason })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let (group, perms) = permutation_closure(self.degree, &gens, closure_bound)?;
        let labels = perms.iter().map(Permutation::cycle_notation).collect();
        Ok(group.with_labels(labels)?)
    }
}

/// Either input schema; the two are distinguished by their required fields.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum GroupFile {
    Cayley(CayleyFile),
    Permutations(PermutationFile),
}

/// Rack carrier ids with the group elements behind them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarrierEntry {
    pub id: usize,
    pub element: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetExport {
    pub format: u32,
    /// Subracks as sorted carrier id arrays, in lectic order.
    pub elements: Vec<Vec<usize>>,
    /// Cover relation as `[lower, upper]` index pairs.
    pub hasse: Vec<(usize, usize)>,
    pub top: usize,
    pub bottom: usize,
}

impl PosetExport {
    pub fn new(p: &SubrackPoset) -> Self {
        PosetExport {
            format: FORMAT_VERSION,
            elements: p.elements.iter().map(|e| e.to_vec()).collect(),
            hasse: p.hasse_edges(),
            top: p.top,
            bottom: p.bottom,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexExport {
    pub format: u32,
    /// Poset index of each vertex.
    pub vertices: Vec<usize>,
    pub facets: Vec<Vec<usize>>,
    pub dimension: isize,
    pub f_vector: Vec<usize>,
    pub euler: EulerCharacteristic,
}

impl ComplexExport {
    pub fn new(k: &OrderComplex) -> Self {
        ComplexExport {
            format: FORMAT_VERSION,
            vertices: k.vertex_labels.clone(),
            facets: k.facets.clone(),
            dimension: k.dimension(),
            f_vector: k.f_vector(),
            euler: k.euler_characteristic(),
        }
    }
}

/// Full single-class analysis document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisExport {
    pub format: u32,
    pub group: String,
    pub class_index: usize,
    pub representative: String,
    pub carrier: Vec<CarrierEntry>,
    pub m: usize,
    /// Orbits of `⟨C⟩`, as carrier ids.
    pub orbits: Vec<Vec<usize>>,
    pub poset: Option<PosetExport>,
    pub complex: Option<ComplexExport>,
    pub homology: Option<HomologyProfile>,
    pub sphere_degree: isize,
    pub is_sphere: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn carrier_entries(group: &FiniteGroup, rack: &Rack) -> Vec<CarrierEntry> {
    rack.element_map()
        .unwrap_or(&[])
        .iter()
        .enumerate()
        .map(|(id, &element)| CarrierEntry { id, element, label: group.label(element) })
        .collect()
}
