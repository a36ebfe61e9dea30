//! The poset of subracks of a class rack, the orbit-union closure operator on
//! it, and the identification of its image with a Boolean lattice.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::group::FiniteGroup;
use crate::rack::{OrbitDecomposition, Rack};

/// Hard cap on the carrier size for subrack enumeration.
pub const HARD_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("class of size {size} exceeds the enumeration cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("closure image is not a Boolean lattice: {0}")]
    ImageNotBoolean(String),
}

/// All subracks of a rack ordered by inclusion, in lectic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubrackPoset {
    pub elements: Vec<BitSet>,
    /// `upper_covers[i]` lists the indices `j` with `elements[i] ⋖ elements[j]`.
    pub upper_covers: Vec<Vec<usize>>,
    pub top: usize,
    pub bottom: usize,
}

impl SubrackPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, s: &BitSet) -> Option<usize> {
        self.elements.iter().position(|x| x == s)
    }

    /// Cover relation as `(lower, upper)` index pairs.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        self.upper_covers.iter().enumerate().flat_map(|(i, ups)| ups.iter().map(move |&j| (i, j))).collect()
    }

    pub fn lower_covers(&self, j: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper_covers[i].contains(&j)).collect()
    }

    /// Indices of the elements other than the top and bottom.
    pub fn proper_part(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| i != self.top && i != self.bottom).collect()
    }
}

pub fn enumerate_subracks(rack: &Rack, cap: usize) -> Result<SubrackPoset, PosetError> {
    let cap = cap.min(HARD_CAP);
    if rack.size() > cap {
        return Err(PosetError::CapExceeded { size: rack.size(), cap });
    }
    let elements = next_closure(rack.size(), |s| rack.subrack_closure(s));
    Ok(poset_from_closed_sets(elements))
}

/// Ganter's Next-Closure: every closed set of a closure operator on
/// `0..n`, in lectic order.
///
/// Subracks are a Moore family (the whole carrier is closed, and an
/// intersection of closed sets is closed), so the closed sets of
/// [`Rack::subrack_closure`] are exactly the subracks. Ids with smaller index
/// are the more significant digits of the lectic order.
pub fn next_closure<F>(n: usize, closure: F) -> Vec<BitSet>
where
    F: Fn(&BitSet) -> BitSet,
{
    let mut out = Vec::new();
    let mut current = closure(&BitSet::new(n));
    loop {
        out.push(current.clone());
        let mut advanced = false;
        for i in (0..n).rev() {
            if current.contains(i) {
                continue;
            }
            let mut seed = current.clone();
            seed.truncate_below(i);
            seed.insert(i);
            let candidate = closure(&seed);
            // Accept when nothing below i was added.
            if candidate.agrees_below(&current, i) {
                current = candidate;
                advanced = true;
                break;
            }
        }
        if !advanced {
            return out;
        }
    }
}

/// Builds the poset structure (top, bottom, cover relation) on a family of
/// sets containing a least and a greatest element.
///
/// Upper covers of `x` are the minimal strict supersets of `x`; scanning
/// supersets by increasing size, a superset is a cover iff it contains no
/// cover already found.
pub fn poset_from_closed_sets(elements: Vec<BitSet>) -> SubrackPoset {
    let n = elements.len();
    let sizes: Vec<usize> = elements.iter().map(|e| e.count()).collect();
    let top = (0..n).max_by_key(|&i| sizes[i]).expect("nonempty family");
    let bottom = (0..n).min_by_key(|&i| sizes[i]).expect("nonempty family");
    let mut by_size: Vec<usize> = (0..n).collect();
    by_size.sort_by_key(|&i| (sizes[i], i));

    let mut upper_covers = vec![Vec::new(); n];
    for x in 0..n {
        let mut covers: Vec<usize> = Vec::new();
        for &y in &by_size {
            if sizes[y] <= sizes[x] || !elements[x].is_subset(&elements[y]) {
                continue;
            }
            if covers.iter().all(|&c| !elements[c].is_subset(&elements[y])) {
                covers.push(y);
            }
        }
        covers.sort_unstable();
        upper_covers[x] = covers;
    }
    SubrackPoset { elements, upper_covers, top, bottom }
}

/// Lemma-predicted maximal subracks: `C` minus one orbit, for each orbit in
/// order. Requires the ambient group to be a p-group; for a single orbit the
/// list is empty.
pub fn maximal_subracks_via_lemma(group: &FiniteGroup, orbits: &OrbitDecomposition) -> Result<Vec<BitSet>, PosetError> {
    if !group.is_p_group().is_p_group() {
        return Err(PosetError::NotApplicable(format!("group of order {} is not a p-group", group.order())));
    }
    if orbits.m() < 2 {
        return Ok(Vec::new());
    }
    let whole = BitSet::full(orbits.universe());
    Ok(orbits.orbits.iter().map(|o| whole.difference(o)).collect())
}

/// Maximal proper subracks read off the Hasse diagram: the lower covers of
/// the top. Includes the empty subrack when it is covered by the top.
pub fn maximal_subracks_bruteforce(poset: &SubrackPoset) -> Vec<BitSet> {
    poset.lower_covers(poset.top).into_iter().map(|i| poset.elements[i].clone()).collect()
}

/// `φ(S)`: the union of all orbits meeting `S`.
pub fn closure_phi(rack: &Rack, s: &BitSet, orbits: &OrbitDecomposition) -> BitSet {
    debug_assert!(rack.is_closed(s), "φ is defined on subracks only");
    let mut out = BitSet::new(s.universe());
    for o in &orbits.orbits {
        if o.intersects(s) {
            out.union_with(o);
        }
    }
    out
}

/// The image of `φ` on the subrack poset, with its identification with the
/// power set of the orbit indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiImage {
    pub m: usize,
    /// Image elements in lectic order.
    pub orbit_subsets: Vec<BitSet>,
    /// `iso_witness[k]` is the set of orbit indices whose union is
    /// `orbit_subsets[k]`.
    pub iso_witness: Vec<BitSet>,
}

pub fn phi_image(rack: &Rack, poset: &SubrackPoset, orbits: &OrbitDecomposition) -> Result<PhiImage, PosetError> {
    let m = orbits.m();
    let image: BTreeSet<BitSet> = poset.elements.iter().map(|s| closure_phi(rack, s, orbits)).collect();

    let mut witness = BTreeMap::new();
    for u in &image {
        if !rack.is_closed(u) {
            return Err(PosetError::ImageNotBoolean(format!("orbit union {:?} is not ▷-closed", u)));
        }
        let idx = BitSet::from_ids(m, (0..m).filter(|&i| orbits.orbits[i].intersects(u)));
        if &orbits.union_of(&idx) != u {
            return Err(PosetError::ImageNotBoolean(format!("{:?} is not a union of orbits", u)));
        }
        witness.insert(u.clone(), idx);
    }
    if m >= usize::BITS as usize - 1 || image.len() != 1usize << m {
        return Err(PosetError::ImageNotBoolean(format!("image has {} elements, expected 2^{m}", image.len())));
    }
    // Distinct orbit-index sets give distinct unions, so the witness map is
    // injective; with 2^m elements it is onto the power set. Inclusion of
    // unions of disjoint orbits matches inclusion of index sets.
    let distinct: BTreeSet<&BitSet> = witness.values().collect();
    if distinct.len() != image.len() {
        return Err(PosetError::ImageNotBoolean("witness map is not injective".into()));
    }
    let (orbit_subsets, iso_witness) = witness.into_iter().unzip();
    Ok(PhiImage { m, orbit_subsets, iso_witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{group_from_permutations, Permutation};
    use crate::rack::{conjugation_rack, orbit_decomposition};

    fn dihedral(n: usize) -> FiniteGroup {
        let rot = Permutation((0..n as u32).map(|i| (i + 1) % n as u32).collect());
        let refl = Permutation((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect());
        group_from_permutations(n, &[rot, refl]).unwrap()
    }

    fn class_rack(g: &FiniteGroup, x: usize) -> Rack {
        let class = g.conjugacy_classes().into_iter().find(|c| c.members.contains(x)).unwrap();
        conjugation_rack(g, &class).unwrap()
    }

    fn brute_force_subracks(rack: &Rack) -> Vec<BitSet> {
        let n = rack.size();
        let mut v: Vec<BitSet> = (0u32..1 << n)
            .map(|mask| BitSet::from_ids(n, (0..n).filter(|&i| mask >> i & 1 == 1)))
            .filter(|s| rack.is_closed(s))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn next_closure_matches_brute_force_on_power_set() {
        let all = next_closure(4, |s| s.clone());
        assert_eq!(all.len(), 16);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted, "lectic order");
    }

    #[test]
    fn d8_rotation_class_poset() {
        let g = dihedral(4);
        let rack = class_rack(&g, 1);
        let p = enumerate_subracks(&rack, 20).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.elements, brute_force_subracks(&rack));
        let orbits = orbit_decomposition(&rack);
        let mut lemma = maximal_subracks_via_lemma(&g, &orbits).unwrap();
        let mut brute = maximal_subracks_bruteforce(&p);
        lemma.sort();
        brute.sort();
        assert_eq!(lemma, brute);
        // C \ {s} = {s³} listed first, since orbit {s} comes first.
        assert_eq!(maximal_subracks_via_lemma(&g, &orbits).unwrap()[0].to_vec(), vec![1]);
    }

    #[test]
    fn d16_reflection_poset() {
        let g = dihedral(8);
        let rack = class_rack(&g, 2);
        let p = enumerate_subracks(&rack, 20).unwrap();
        assert_eq!(p.len(), 8);
        assert_eq!(p.elements, brute_force_subracks(&rack));
        let orbits = orbit_decomposition(&rack);
        let mut lemma = maximal_subracks_via_lemma(&g, &orbits).unwrap();
        let mut brute = maximal_subracks_bruteforce(&p);
        lemma.sort();
        brute.sort();
        assert_eq!(lemma, brute);
        assert!(lemma.iter().all(|s| s.count() == 2));

        let t = rack.element_map().unwrap().iter().position(|&x| x == 2).unwrap();
        let phi = closure_phi(&rack, &BitSet::from_ids(4, [t]), &orbits);
        assert_eq!(phi, orbits.orbits[orbits.orbit_of(t).unwrap()]);
        assert!(closure_phi(&rack, &BitSet::new(4), &orbits).is_empty());
        assert!(closure_phi(&rack, &BitSet::full(4), &orbits).is_full());

        let img = phi_image(&rack, &p, &orbits).unwrap();
        assert_eq!(img.orbit_subsets.len(), 4);
    }

    #[test]
    fn singleton_class() {
        let g = dihedral(4);
        let rack = class_rack(&g, 0);
        let p = enumerate_subracks(&rack, 20).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.proper_part().is_empty());
        let orbits = orbit_decomposition(&rack);
        assert!(maximal_subracks_via_lemma(&g, &orbits).unwrap().is_empty());
        // The only cover of the top is the empty set.
        assert_eq!(maximal_subracks_bruteforce(&p), vec![BitSet::new(1)]);
        let img = phi_image(&rack, &p, &orbits).unwrap();
        assert_eq!(img.m, 1);
        assert_eq!(img.orbit_subsets.len(), 2);
    }

    #[test]
    fn lemma_refuses_non_p_groups() {
        let s3 = dihedral(3);
        let rack = class_rack(&s3, 2);
        let orbits = orbit_decomposition(&rack);
        assert!(matches!(maximal_subracks_via_lemma(&s3, &orbits), Err(PosetError::NotApplicable(_))));
    }

    #[test]
    fn cap_is_enforced() {
        let g = dihedral(8);
        let rack = class_rack(&g, 2);
        assert_eq!(enumerate_subracks(&rack, 3).unwrap_err(), PosetError::CapExceeded { size: 4, cap: 3 });
    }

    #[test]
    fn non_boolean_image_is_reported() {
        // A bogus decomposition whose first orbit is not ▷-closed in the S3
        // transposition rack.
        let s3 = dihedral(3);
        let rack = class_rack(&s3, 2);
        let p = enumerate_subracks(&rack, 20).unwrap();
        let fake = OrbitDecomposition { orbits: vec![BitSet::from_ids(3, [0, 1]), BitSet::from_ids(3, [2])] };
        assert!(matches!(phi_image(&rack, &p, &fake), Err(PosetError::ImageNotBoolean(_))));
    }
}
