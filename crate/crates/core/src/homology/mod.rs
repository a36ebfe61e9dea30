//! Reduced integral homology of simplicial complexes.
//!
//! Works on the augmented chain complex, so the empty face sits in degree −1
//! and a complex with no vertices has `H̃₋₁ = Z`.

mod matrix;
mod snf;

use std::collections::HashMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::OrderComplex;

pub use matrix::{IntegerMatrix, Scalar, SparseMatrix};
pub use snf::{smith_normal_form, smith_normal_form_with, SmithForm, DEFAULT_DENSIFY_THRESHOLD};

/// `∂_d : C_d → C_{d−1}` with rows indexed by the (d−1)-faces and columns by
/// the d-faces, both in sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub degree: isize,
    pub matrix: SparseMatrix<i64>,
}

/// Boundary maps `∂_0, …, ∂_dim` of the augmented chain complex. `∂_0` is the
/// augmentation, a single row of ones.
pub fn boundary_matrices(k: &OrderComplex) -> Vec<BoundaryMatrix> {
    let dim = k.dimension();
    let faces: Vec<Vec<Vec<usize>>> = (-1..=dim).map(|d| k.faces(d)).collect();
    (0..=dim)
        .into_par_iter()
        .map(|d| {
            let lower = &faces[d as usize];
            let upper = &faces[d as usize + 1];
            let index: HashMap<&[usize], usize> = lower.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
            let columns = upper
                .iter()
                .map(|f| {
                    let mut col: Vec<(usize, i64)> = (0..f.len())
                        .map(|drop| {
                            let mut facet = f.clone();
                            facet.remove(drop);
                            let sign = if drop % 2 == 0 { 1 } else { -1 };
                            (index[facet.as_slice()], sign)
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            BoundaryMatrix { degree: d, matrix: SparseMatrix::from_columns(lower.len(), columns) }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub degree: isize,
    pub betti: usize,
    /// Invariant factors greater than one, each dividing the next.
    #[serde(serialize_with = "ser_decimal", deserialize_with = "de_decimal")]
    pub torsion: Vec<BigUint>,
}

fn ser_decimal<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn de_decimal<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
    Vec::<String>::deserialize(d)?.iter().map(|s| s.parse::<BigUint>().map_err(serde::de::Error::custom)).collect()
}

/// Reduced homology in degrees −1 through the dimension of the complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyProfile {
    pub fn get(&self, degree: isize) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|h| h.degree == degree)
    }

    pub fn betti(&self, degree: isize) -> usize {
        self.get(degree).map_or(0, |h| h.betti)
    }

    pub fn has_torsion(&self) -> bool {
        self.degrees.iter().any(|h| !h.torsion.is_empty())
    }

    /// `Σ (−1)^d β_d`, which equals the reduced Euler characteristic.
    pub fn alternating_betti_sum(&self) -> i64 {
        self.degrees.iter().map(|h| if h.degree.rem_euclid(2) == 0 { h.betti as i64 } else { -(h.betti as i64) }).sum()
    }

    /// Compact rendering such as `H̃1 = Z` or `H̃0 = Z^2 ⊕ Z/2`.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .degrees
            .iter()
            .filter(|h| h.betti > 0 || !h.torsion.is_empty())
            .map(|h| {
                let mut terms = Vec::new();
                match h.betti {
                    0 => {}
                    1 => terms.push("Z".to_string()),
                    b => terms.push(format!("Z^{b}")),
                }
                terms.extend(h.torsion.iter().map(|t| format!("Z/{t}")));
                format!("H{} = {}", h.degree, terms.join(" + "))
            })
            .collect();
        if parts.is_empty() {
            "acyclic".into()
        } else {
            parts.join(", ")
        }
    }
}

pub fn reduced_homology(k: &OrderComplex) -> HomologyProfile {
    reduced_homology_with(k, DEFAULT_DENSIFY_THRESHOLD)
}

pub fn reduced_homology_with(k: &OrderComplex, densify_threshold: usize) -> HomologyProfile {
    let dim = k.dimension();
    let boundaries = boundary_matrices(k);
    // ranks[d] is the number of d-faces, from d = −1.
    let chain_ranks: Vec<usize> = std::iter::once(1).chain(boundaries.iter().map(|b| b.matrix.cols)).collect();
    let forms: Vec<SmithForm> =
        boundaries.par_iter().map(|b| smith_normal_form_with(&b.matrix, densify_threshold)).collect();
    // rank ∂_d, for d = 0..=dim+1; ∂_{−1} and ∂_{dim+1} are zero.
    let rank_of = |d: isize| -> usize {
        if d < 0 || d > dim {
            0
        } else {
            forms[d as usize].rank
        }
    };
    let degrees = (-1..=dim)
        .map(|d| {
            let faces = chain_ranks[(d + 1) as usize];
            let betti = faces - rank_of(d) - rank_of(d + 1);
            let torsion = if d < dim { forms[(d + 1) as usize].torsion() } else { Vec::new() };
            DegreeHomology { degree: d, betti, torsion }
        })
        .collect();
    HomologyProfile { degrees }
}

/// True iff `H̃_d = Z` and every other reduced homology group vanishes.
pub fn is_homology_sphere(h: &HomologyProfile, d: isize) -> bool {
    h.get(d).is_some() && h.degrees.iter().all(|x| x.torsion.is_empty() && x.betti == usize::from(x.degree == d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hexagon() -> OrderComplex {
        OrderComplex::from_facets(6, (0..6).map(|i| vec![i, (i + 1) % 6]).collect())
    }

    #[test]
    fn empty_complex_is_minus_one_sphere() {
        let k = OrderComplex::from_facets(0, vec![]);
        let h = reduced_homology(&k);
        assert_eq!(h.degrees, vec![DegreeHomology { degree: -1, betti: 1, torsion: vec![] }]);
        assert!(is_homology_sphere(&h, -1));
        assert!(!is_homology_sphere(&h, 0));
    }

    #[test]
    fn point_and_edge_are_acyclic() {
        let point = OrderComplex::from_facets(1, vec![vec![0]]);
        let b = boundary_matrices(&point);
        assert_eq!(b[0].matrix.to_dense(), vec![vec![1]]);
        let h = reduced_homology(&point);
        assert!(h.degrees.iter().all(|x| x.betti == 0));
        let edge = OrderComplex::from_facets(2, vec![vec![0, 1]]);
        assert!(reduced_homology(&edge).degrees.iter().all(|x| x.betti == 0 && x.torsion.is_empty()));
    }

    #[test]
    fn two_points_are_s0() {
        let k = OrderComplex::from_facets(2, vec![vec![0], vec![1]]);
        let h = reduced_homology(&k);
        assert_eq!(h.betti(0), 1);
        assert_eq!(h.betti(-1), 0);
        assert!(is_homology_sphere(&h, 0));
    }

    #[test]
    fn hexagon_is_s1() {
        let k = hexagon();
        let b = boundary_matrices(&k);
        let d1 = &b[1].matrix;
        assert_eq!((d1.rows, d1.cols), (6, 6));
        // Augmentation kills every column of ∂₁.
        assert!(b[0].matrix.checked_mul(d1).unwrap().is_zero());
        let h = reduced_homology(&k);
        assert!(is_homology_sphere(&h, 1));
        assert!(!is_homology_sphere(&h, 0));
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // Six-vertex triangulation of RP².
        let facets = vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 5, 1],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![3, 4, 1],
            vec![4, 5, 2],
            vec![5, 1, 3],
        ];
        let k = OrderComplex::from_facets(6, facets);
        let h = reduced_homology(&k);
        assert_eq!(h.get(1).unwrap().torsion, vec![BigUint::from(2u32)]);
        assert!(h.degrees.iter().all(|x| x.betti == 0));
        assert_eq!(h.describe(), "H1 = Z/2");
        // Same answer through the sparse elimination path.
        assert_eq!(reduced_homology_with(&k, 0), h);
    }
}
