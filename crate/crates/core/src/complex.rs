//! Order complexes of subrack posets.
//!
//! Only facets are stored. Faces of a given dimension are produced on demand
//! as the distinct subsets of facets, so a complex never holds its full face
//! list unless a caller asks for it.

use std::collections::HashSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::poset::SubrackPoset;

/// A finite abstract simplicial complex given by its facets.
///
/// Vertices are `0..num_vertices`; `vertex_labels[v]` names the poset element
/// behind vertex `v` for order complexes. The complex always contains the
/// empty face, so a complex with no vertices is the (−1)-sphere rather than
/// the void complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderComplex {
    pub num_vertices: usize,
    pub vertex_labels: Vec<usize>,
    /// Sorted vertex lists, sorted lexicographically.
    pub facets: Vec<Vec<usize>>,
}

impl OrderComplex {
    /// A complex from arbitrary maximal faces. Non-maximal entries are
    /// dropped.
    pub fn from_facets(num_vertices: usize, facets: Vec<Vec<usize>>) -> OrderComplex {
        let mut facets: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        facets.sort();
        facets.dedup();
        let keep: Vec<bool> =
            facets.iter().map(|f| !facets.iter().any(|g| g.len() > f.len() && is_sorted_subset(f, g))).collect();
        let facets = facets.into_iter().zip(keep).filter_map(|(f, k)| k.then_some(f)).collect();
        OrderComplex { num_vertices, vertex_labels: (0..num_vertices).collect(), facets }
    }

    /// −1 for the complex whose only face is the empty face.
    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    /// All faces of dimension `d` (with `d + 1` vertices), sorted.
    pub fn faces(&self, d: isize) -> Vec<Vec<usize>> {
        if d < -1 {
            return Vec::new();
        }
        if d == -1 {
            return vec![Vec::new()];
        }
        let k = (d + 1) as usize;
        let mut set: HashSet<Vec<usize>> = HashSet::new();
        for f in self.facets.iter().filter(|f| f.len() >= k) {
            if f.len() == k {
                set.insert(f.clone());
            } else {
                for c in f.iter().copied().combinations(k) {
                    set.insert(c);
                }
            }
        }
        let mut faces: Vec<Vec<usize>> = set.into_iter().collect();
        faces.sort_unstable();
        faces
    }

    /// Face counts `f_0, …, f_dim`, without the empty face.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dimension()).map(|d| self.faces(d).len()).collect()
    }

    pub fn euler_characteristic(&self) -> EulerCharacteristic {
        EulerCharacteristic::from_f_vector(&self.f_vector())
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> OrderComplex {
        assert_eq!(perm.len(), self.num_vertices);
        let mut labels = vec![0; self.num_vertices];
        for (v, &p) in perm.iter().enumerate() {
            labels[p] = self.vertex_labels[v];
        }
        let mut facets: Vec<Vec<usize>> =
            self.facets.iter().map(|f| f.iter().map(|&v| perm[v]).sorted_unstable().collect()).collect();
        facets.sort();
        OrderComplex { num_vertices: self.num_vertices, vertex_labels: labels, facets }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCharacteristic {
    pub unreduced: i64,
    /// Counts the empty face with sign −1.
    pub reduced: i64,
}

impl EulerCharacteristic {
    pub fn from_f_vector(f: &[usize]) -> Self {
        let unreduced: i64 = f.iter().enumerate().map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        EulerCharacteristic { unreduced, reduced: unreduced - 1 }
    }
}

fn is_sorted_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

/// The order complex of the proper part of `poset`: one vertex per subrack
/// other than ∅ and C, one face per chain. Facets are the maximal chains,
/// found by walking cover relations from the minimal to the maximal proper
/// elements.
pub fn order_complex(poset: &SubrackPoset) -> OrderComplex {
    let proper = poset.proper_part();
    let mut vertex_of = vec![usize::MAX; poset.len()];
    for (v, &i) in proper.iter().enumerate() {
        vertex_of[i] = v;
    }
    // Upper covers inside the proper part.
    let ups: Vec<Vec<usize>> =
        poset.upper_covers.iter().map(|c| c.iter().copied().filter(|&j| j != poset.top).collect()).collect();

    fn walk(i: usize, ups: &[Vec<usize>], vertex_of: &[usize], chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        chain.push(vertex_of[i]);
        if ups[i].is_empty() {
            out.push(chain.iter().copied().sorted_unstable().collect());
        } else {
            for &j in &ups[i] {
                walk(j, ups, vertex_of, chain, out);
            }
        }
        chain.pop();
    }

    let mut facets = Vec::new();
    let mut chain = Vec::new();
    for &min in &ups[poset.bottom] {
        walk(min, &ups, &vertex_of, &mut chain, &mut facets);
    }
    facets.sort();
    OrderComplex { num_vertices: proper.len(), vertex_labels: proper, facets }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::BitSet;
    use crate::poset::{next_closure, poset_from_closed_sets};

    fn boolean_lattice(m: usize) -> SubrackPoset {
        poset_from_closed_sets(next_closure(m, |s| s.clone()))
    }

    #[test]
    fn empty_complex() {
        let p = poset_from_closed_sets(vec![BitSet::new(1), BitSet::full(1)]);
        let k = order_complex(&p);
        assert_eq!(k.num_vertices, 0);
        assert_eq!(k.dimension(), -1);
        assert_eq!(k.faces(-1), vec![Vec::<usize>::new()]);
        assert_eq!(k.euler_characteristic().reduced, -1);
    }

    #[test]
    fn two_points() {
        let k = order_complex(&boolean_lattice(2));
        assert_eq!(k.num_vertices, 2);
        assert_eq!(k.facets.len(), 2);
        assert_eq!(k.dimension(), 0);
        assert_eq!(k.euler_characteristic().reduced, 1);
    }

    #[test]
    fn hexagon() {
        let k = order_complex(&boolean_lattice(3));
        assert_eq!(k.f_vector(), vec![6, 6]);
        let chi = k.euler_characteristic();
        assert_eq!((chi.unreduced, chi.reduced), (0, -1));
    }

    #[test]
    fn faces_are_chains() {
        let p = boolean_lattice(4);
        let k = order_complex(&p);
        for d in 0..=k.dimension() {
            for f in k.faces(d) {
                let sets: Vec<&BitSet> = f.iter().map(|&v| &p.elements[k.vertex_labels[v]]).collect();
                for a in &sets {
                    for b in &sets {
                        assert!(a.is_subset(b) || b.is_subset(a));
                    }
                }
            }
        }
    }

    #[test]
    fn from_facets_drops_non_maximal() {
        let k = OrderComplex::from_facets(3, vec![vec![0, 1], vec![1], vec![2, 1, 0]]);
        assert_eq!(k.facets, vec![vec![0, 1, 2]]);
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn relabel_preserves_f_vector() {
        let k = order_complex(&boolean_lattice(3));
        let r = k.relabel(&[5, 4, 3, 2, 1, 0]);
        assert_eq!(r.f_vector(), k.f_vector());
    }
}
