//! Independent oracles shared by the integration tests. Nothing here calls
//! the closure, enumeration, orbit or Smith normal form code under test.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use subrack_core::catalog::{CatalogEntry, CATALOG};
use subrack_core::{conjugation_rack, BitSet, ConjClass, FiniteGroup, OrderComplex, Rack};

pub struct ClassCase {
    pub group_name: &'static str,
    pub group: FiniteGroup,
    pub index: usize,
    pub class: ConjClass,
    pub rack: Rack,
}

/// Catalog p-groups of order at most 32 together with the Heisenberg group of
/// order 27.
pub fn small_p_group_entries() -> Vec<&'static CatalogEntry> {
    CATALOG.iter().filter(|e| e.order <= 32 || e.name == "Heis27").filter(|e| is_prime_power(e.order)).collect()
}

pub fn is_prime_power(n: usize) -> bool {
    if n == 1 {
        return true;
    }
    let p = (2..=n).find(|&d| n.is_multiple_of(d)).unwrap();
    let mut k = n;
    while k.is_multiple_of(p) {
        k /= p;
    }
    k == 1
}

pub fn classes_of(entry: &'static CatalogEntry) -> Vec<ClassCase> {
    let group = entry.group().unwrap();
    group
        .conjugacy_classes()
        .into_iter()
        .enumerate()
        .map(|(index, class)| {
            let rack = conjugation_rack(&group, &class).unwrap();
            ClassCase { group_name: entry.name, group: group.clone(), index, class, rack }
        })
        .collect()
}

pub fn small_p_group_classes() -> Vec<ClassCase> {
    small_p_group_entries().into_iter().flat_map(classes_of).collect()
}

/// Closure under `▷` checked straight from the operation table.
pub fn closed_by_table(rack: &Rack, s: &BitSet) -> bool {
    s.iter().all(|a| s.iter().all(|b| s.contains(rack.op(a, b))))
}

/// Every subset of the carrier that is closed, in lectic order.
pub fn brute_force_subracks(rack: &Rack) -> Vec<BitSet> {
    let n = rack.size();
    assert!(n <= 20, "brute force is exponential");
    let mut out: Vec<BitSet> = (0u64..1 << n)
        .map(|mask| BitSet::from_ids(n, (0..n).filter(|i| mask >> i & 1 == 1)))
        .filter(|s| closed_by_table(rack, s))
        .collect();
    out.sort();
    out
}

/// Orbits of `⟨C⟩` on the class, by conjugating with every element of the
/// generated subgroup. Carrier ids, ordered by smallest member.
pub fn orbits_by_conjugation(group: &FiniteGroup, class: &ConjClass) -> Vec<BTreeSet<usize>> {
    let ids: Vec<usize> = class.members.iter().collect();
    let carrier: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    // Subgroup generated by the class, by closing under products.
    let mut h: BTreeSet<usize> = BTreeSet::from([group.identity()]);
    loop {
        let before = h.len();
        let current: Vec<usize> = h.iter().copied().collect();
        for &x in &current {
            for &c in &ids {
                h.insert(group.mul(x, c));
            }
        }
        if h.len() == before {
            break;
        }
    }
    let mut orbits: Vec<BTreeSet<usize>> = Vec::new();
    for &x in &ids {
        if orbits.iter().any(|o| o.contains(&carrier[&x])) {
            continue;
        }
        orbits.push(h.iter().map(|&g| carrier[&group.mul(group.mul(g, x), group.inv(g))]).collect());
    }
    orbits
}

/// Every face of the complex by taking all subsets of every facet, grouped by
/// dimension starting at −1.
pub fn faces_by_subsets(k: &OrderComplex) -> Vec<Vec<Vec<usize>>> {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    all.insert(Vec::new());
    for f in &k.facets {
        for mask in 1u64..1 << f.len() {
            all.insert((0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
        }
    }
    let top = all.iter().map(Vec::len).max().unwrap();
    let mut by_dim = vec![Vec::new(); top + 1];
    for f in all {
        by_dim[f.len()].push(f);
    }
    by_dim
}

fn rank_over_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for j in c..cols {
                    let v = &f * &rows[rank][j];
                    rows[r][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced Betti numbers over ℚ from the augmented chain complex, degrees −1
/// to the dimension.
pub fn rational_betti(k: &OrderComplex) -> Vec<usize> {
    let faces = faces_by_subsets(k);
    let index: Vec<HashMap<&Vec<usize>, usize>> =
        faces.iter().map(|fs| fs.iter().enumerate().map(|(i, f)| (f, i)).collect()).collect();
    // ranks[j] = rank of the map from faces[j] to faces[j - 1].
    let mut ranks = vec![0; faces.len() + 1];
    for j in 1..faces.len() {
        let mut m = vec![vec![BigRational::zero(); faces[j].len()]; faces[j - 1].len()];
        for (col, f) in faces[j].iter().enumerate() {
            for drop in 0..f.len() {
                let mut g = f.clone();
                g.remove(drop);
                let sign = if drop % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                m[index[j - 1][&g]][col] = sign;
            }
        }
        ranks[j] = rank_over_q(m);
    }
    (0..faces.len()).map(|j| faces[j].len() - ranks[j] - ranks[j + 1]).collect()
}

/// Uniformly random permutation of `0..n`.
pub fn shuffled(n: usize, rng: &mut impl rand::Rng) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}
