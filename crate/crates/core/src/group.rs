//! Finite groups given by a full multiplication table.
//!
//! Groups enter either as a Cayley table (validated exhaustively or by
//! seeded sampling) or as the closure of a list of permutations. Element ids
//! are dense `0..order`; every subset of the group is a [`BitSet`] over them.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;

/// Largest group order for which a multiplication table is materialised.
pub const MAX_GROUP_ORDER: usize = 10_000;

/// Default cap on the number of permutations produced by closure.
pub const DEFAULT_CLOSURE_BOUND: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("not a group ({0})")]
    NotAGroup(NotAGroupReason),
    #[error("generator {index} is not a permutation of 0..{degree}: {reason}")]
    InvalidPermutation { index: usize, degree: usize, reason: String },
    #[error("permutation closure exceeded the bound of {bound} elements")]
    ClosureBound { bound: usize },
    #[error("group order {order} exceeds the supported maximum of {max}")]
    TooLarge { order: usize, max: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotAGroupReason {
    NotLatinSquare { row: Option<usize>, col: Option<usize> },
    NoIdentity,
    NotAssociative { a: usize, b: usize, c: usize },
    MissingInverse { element: usize },
}

impl NotAGroupReason {
    /// Stable short code for reports and exit messages.
    pub fn code(&self) -> &'static str {
        match self {
            NotAGroupReason::NotLatinSquare { .. } => "not-latin-square",
            NotAGroupReason::NoIdentity => "no-identity",
            NotAGroupReason::NotAssociative { .. } => "not-associative",
            NotAGroupReason::MissingInverse { .. } => "missing-inverse",
        }
    }
}

impl fmt::Display for NotAGroupReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotAGroupReason::NotLatinSquare { row: Some(r), .. } => {
                write!(f, "not-latin-square: row {r} repeats an entry")
            }
            NotAGroupReason::NotLatinSquare { col: Some(c), .. } => {
                write!(f, "not-latin-square: column {c} repeats an entry")
            }
            NotAGroupReason::NotLatinSquare { .. } => write!(f, "not-latin-square"),
            NotAGroupReason::NoIdentity => write!(f, "no-identity"),
            NotAGroupReason::NotAssociative { a, b, c } => {
                write!(f, "not-associative: ({a}*{b})*{c} != {a}*({b}*{c})")
            }
            NotAGroupReason::MissingInverse { element } => {
                write!(f, "missing-inverse: element {element} has no two-sided inverse")
            }
        }
    }
}

/// How associativity of a table was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum AssociativityCheck {
    Exhaustive,
    Randomized {
        samples: usize,
        seed: u64,
    },
    /// Composition of permutations is associative.
    ByConstruction,
}

#[derive(Debug, Clone, Copy)]
pub struct ValidationOptions {
    /// Tables up to this order are checked on every triple.
    pub exhaustive_bound: usize,
    pub random_samples: usize,
    pub seed: u64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions { exhaustive_bound: 256, random_samples: 10_000, seed: 0x5eed }
    }
}

/// Answer to "is this a p-group?".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "p")]
pub enum PGroup {
    /// The trivial group, a p-group for every prime.
    Trivial,
    Prime(u64),
    No,
}

impl PGroup {
    pub fn is_p_group(self) -> bool {
        !matches!(self, PGroup::No)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub members: BitSet,
    /// Smallest member id.
    pub representative: usize,
}

impl ConjClass {
    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub members: BitSet,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.count()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    labels: Option<Vec<String>>,
    associativity: AssociativityCheck,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn associativity(&self) -> AssociativityCheck {
        self.associativity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|x| x == label),
            None => label.parse().ok().filter(|&g: &usize| g < self.order),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GroupError> {
        if labels.len() != self.order {
            return Err(GroupError::LabelCount { expected: self.order, got: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The Cayley table as rows of ids.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Partition of the group into conjugacy classes, ordered by smallest
    /// member. The class of the identity is always first.
    pub fn conjugacy_classes(&self) -> Vec<ConjClass> {
        let mut seen = BitSet::new(self.order);
        let mut classes = Vec::new();
        for x in self.elements() {
            if seen.contains(x) {
                continue;
            }
            let mut members = BitSet::new(self.order);
            for g in self.elements() {
                members.insert(self.conjugate(g, x));
            }
            seen.union_with(&members);
            classes.push(ConjClass { members, representative: x });
        }
        classes
    }

    /// Smallest subgroup containing `generators`.
    pub fn subgroup_generated(&self, generators: &BitSet) -> Subgroup {
        let gens: Vec<usize> = generators.iter().collect();
        let mut members = BitSet::new(self.order);
        members.insert(self.identity);
        let mut queue = vec![self.identity];
        // In a finite group the monoid generated by a set is already a group.
        while let Some(h) = queue.pop() {
            for &s in &gens {
                let hs = self.mul(h, s);
                if members.insert(hs) {
                    queue.push(hs);
                }
            }
        }
        Subgroup { members }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { members: BitSet::full(self.order) }
    }

    pub fn is_p_group(&self) -> PGroup {
        if self.order == 1 {
            return PGroup::Trivial;
        }
        match prime_factors(self.order as u64).as_slice() {
            [(p, _)] => PGroup::Prime(*p),
            _ => PGroup::No,
        }
    }

    pub fn is_central(&self, g: usize) -> bool {
        self.elements().all(|x| self.mul(g, x) == self.mul(x, g))
    }

    pub fn center(&self) -> Subgroup {
        Subgroup { members: BitSet::from_ids(self.order, self.elements().filter(|&g| self.is_central(g))) }
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|g| self.is_central(g))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|g| self.element_order(g) == self.order)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.elements().all(|g| h.members.iter().all(|x| h.members.contains(self.conjugate(g, x))))
    }

    /// A finite group is nilpotent iff each Sylow subgroup is unique, which
    /// holds iff the p-elements number exactly the p-part of the order.
    pub fn is_nilpotent(&self) -> bool {
        let orders: Vec<usize> = self.elements().map(|g| self.element_order(g)).collect();
        prime_factors(self.order as u64).into_iter().all(|(p, k)| {
            let p_part = p.pow(k) as usize;
            let count = orders.iter().filter(|&&o| p_part.is_multiple_of(o)).count();
            count == p_part
        })
    }

    pub fn is_subgroup(&self, members: &BitSet) -> bool {
        members.contains(self.identity)
            && members
                .iter()
                .all(|a| members.contains(self.inv(a)) && members.iter().all(|b| members.contains(self.mul(a, b))))
    }
}

/// Prime factorisation by trial division, ascending primes.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn group_from_cayley(table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<FiniteGroup, GroupError> {
    group_from_cayley_with(table, labels, &ValidationOptions::default())
}

/// Validates a Cayley table and derives identity and inverses from it.
///
/// Checks run in the order Latin square, identity, two-sided inverses,
/// associativity; the first failure is reported.
pub fn group_from_cayley_with(
    table: &[Vec<usize>],
    labels: Option<Vec<String>>,
    opts: &ValidationOptions,
) -> Result<FiniteGroup, GroupError> {
    let n = table.len();
    if n == 0 {
        return Err(GroupError::Malformed("empty table".into()));
    }
    if n > MAX_GROUP_ORDER {
        return Err(GroupError::TooLarge { order: n, max: MAX_GROUP_ORDER });
    }
    for (r, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(GroupError::Malformed(format!("row {r} has length {}, expected {n}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(GroupError::Malformed(format!("row {r} contains out-of-range id {bad}")));
        }
    }
    let mul: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
    let at = |a: usize, b: usize| mul[a * n + b] as usize;

    for r in 0..n {
        let mut seen = BitSet::new(n);
        if !(0..n).all(|c| seen.insert(at(r, c))) {
            return Err(GroupError::NotAGroup(NotAGroupReason::NotLatinSquare { row: Some(r), col: None }));
        }
    }
    for c in 0..n {
        let mut seen = BitSet::new(n);
        if !(0..n).all(|r| seen.insert(at(r, c))) {
            return Err(GroupError::NotAGroup(NotAGroupReason::NotLatinSquare { row: None, col: Some(c) }));
        }
    }

    let identity = (0..n)
        .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
        .ok_or(GroupError::NotAGroup(NotAGroupReason::NoIdentity))?;

    let mut inv = vec![0u32; n];
    for g in 0..n {
        // Latin rows and columns make both one-sided inverses unique.
        let right = (0..n).find(|&x| at(g, x) == identity).expect("latin row contains identity");
        if at(right, g) != identity {
            return Err(GroupError::NotAGroup(NotAGroupReason::MissingInverse { element: g }));
        }
        inv[g] = right as u32;
    }

    let associativity = if n <= opts.exhaustive_bound {
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAGroup(NotAGroupReason::NotAssociative { a, b, c }));
                    }
                }
            }
        }
        AssociativityCheck::Exhaustive
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.random_samples {
            let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
            if at(at(a, b), c) != at(a, at(b, c)) {
                return Err(GroupError::NotAGroup(NotAGroupReason::NotAssociative { a, b, c }));
            }
        }
        AssociativityCheck::Randomized { samples: opts.random_samples, seed: opts.seed }
    };

    let group = FiniteGroup { order: n, mul, inv, identity, labels: None, associativity };
    match labels {
        Some(l) => group.with_labels(l),
        None => Ok(group),
    }
}

/// A permutation of `0..degree` stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, String> {
        let n = images.len();
        let mut seen = BitSet::new(n);
        for &x in &images {
            if x >= n {
                return Err(format!("image {x} out of range"));
            }
            if !seen.insert(x) {
                return Err(format!("image {x} repeated"));
            }
        }
        Ok(Permutation(images.into_iter().map(|x| x as u32).collect()))
    }

    /// Builds a permutation from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, String> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = BitSet::new(degree);
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(format!("point {x} out of range"));
                }
                if !touched.insert(x) {
                    return Err(format!("point {x} appears in more than one cycle position"));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// Disjoint-cycle notation such as `(0 1 2)(3 4)`; `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start.to_string()];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x.to_string());
                x = self.apply(x);
            }
            out.push_str(&format!("({})", cycle.join(" ")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }
}

pub fn group_from_permutations(degree: usize, generators: &[Permutation]) -> Result<FiniteGroup, GroupError> {
    permutation_closure(degree, generators, DEFAULT_CLOSURE_BOUND).map(|(g, _)| g)
}

/// Breadth-first closure of `generators` under composition.
///
/// Element 0 is the identity and the rest follow in breadth-first order of
/// right multiplication by the generators. Returns the group together with the
/// permutation realising each element id. The product is `(gh)(x) = g(h(x))`.
pub fn permutation_closure(
    degree: usize,
    generators: &[Permutation],
    bound: usize,
) -> Result<(FiniteGroup, Vec<Permutation>), GroupError> {
    for (index, g) in generators.iter().enumerate() {
        if g.degree() != degree {
            return Err(GroupError::InvalidPermutation { index, degree, reason: format!("has degree {}", g.degree()) });
        }
        Permutation::from_images(g.0.iter().map(|&x| x as usize).collect())
            .map_err(|reason| GroupError::InvalidPermutation { index, degree, reason })?;
    }

    let mut elements = vec![Permutation::identity(degree)];
    let mut index: HashMap<Permutation, u32> = HashMap::from([(elements[0].clone(), 0)]);
    // parent[h] * generators[via[h]] == h
    let mut parent = vec![0u32];
    let mut via = vec![u32::MAX];
    let mut right: Vec<Vec<u32>> = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        let mut row = Vec::with_capacity(generators.len());
        for (gi, s) in generators.iter().enumerate() {
            let prod = elements[head].compose(s);
            let id = match index.get(&prod) {
                Some(&id) => id,
                None => {
                    let id = elements.len() as u32;
                    if elements.len() >= bound {
                        return Err(GroupError::ClosureBound { bound });
                    }
                    index.insert(prod.clone(), id);
                    elements.push(prod);
                    parent.push(head as u32);
                    via.push(gi as u32);
                    id
                }
            };
            row.push(id);
        }
        right.push(row);
        head += 1;
    }

    let n = elements.len();
    if n > MAX_GROUP_ORDER {
        return Err(GroupError::TooLarge { order: n, max: MAX_GROUP_ORDER });
    }
    // g * h = (g * parent(h)) * s_via(h); ids of h come after its parent.
    let mut mul = vec![0u32; n * n];
    for g in 0..n {
        mul[g * n] = g as u32;
        for h in 1..n {
            let gp = mul[g * n + parent[h] as usize] as usize;
            mul[g * n + h] = right[gp][via[h] as usize];
        }
    }
    let mut inv = vec![0u32; n];
    for g in 0..n {
        let row = &mul[g * n..(g + 1) * n];
        inv[g] = row.iter().position(|&x| x == 0).expect("closure contains inverses") as u32;
    }

    let group = FiniteGroup {
        order: n,
        mul,
        inv,
        identity: 0,
        labels: None,
        associativity: AssociativityCheck::ByConstruction,
    };
    Ok((group, elements))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(deg: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(deg, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn d8() -> FiniteGroup {
        group_from_permutations(4, &[cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])]).unwrap()
    }

    /// Brute-force order of the closure: apply all words until stable.
    fn brute_closure_size(deg: usize, gens: &[Permutation]) -> usize {
        let mut set = std::collections::HashSet::new();
        set.insert(Permutation::identity(deg));
        loop {
            let snapshot: Vec<_> = set.iter().cloned().collect();
            let before = set.len();
            for a in &snapshot {
                for g in gens {
                    set.insert(a.compose(g));
                }
            }
            if set.len() == before {
                return before;
            }
        }
    }

    #[test]
    fn trivial_cayley() {
        let g = group_from_cayley(&[vec![0]], None).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.is_p_group(), PGroup::Trivial);
    }

    #[test]
    fn z2_cayley() {
        let g = group_from_cayley(&[vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
        assert_eq!(g.associativity(), AssociativityCheck::Exhaustive);
    }

    #[test]
    fn latin_square_without_identity() {
        // (a, b) -> 2a - b mod 6 is not a Latin square (rows repeat for even 2),
        // so use a - b mod 6, a Latin square whose only right identity is 0 but
        // which has no left identity.
        let t: Vec<Vec<usize>> = (0..6).map(|a| (0..6).map(|b| (a + 6 - b) % 6).collect()).collect();
        assert_eq!(group_from_cayley(&t, None).unwrap_err(), GroupError::NotAGroup(NotAGroupReason::NoIdentity));
    }

    #[test]
    fn rejects_non_latin() {
        let err = group_from_cayley(&[vec![0, 0], vec![1, 0]], None).unwrap_err();
        assert!(matches!(err, GroupError::NotAGroup(NotAGroupReason::NotLatinSquare { .. })));
        assert!(matches!(group_from_cayley(&[vec![0, 1]], None), Err(GroupError::Malformed(_))));
        assert!(matches!(group_from_cayley(&[vec![0, 5], vec![1, 0]], None), Err(GroupError::Malformed(_))));
    }

    #[test]
    fn rejects_missing_inverse_and_non_associative() {
        // Loop of order 5 where 1 has different left and right inverses.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 2, 0, 4, 3],
            vec![2, 4, 3, 0, 1],
            vec![3, 0, 4, 1, 2],
            vec![4, 3, 1, 2, 0],
        ];
        let err = group_from_cayley(&t, None).unwrap_err();
        assert!(matches!(err, GroupError::NotAGroup(NotAGroupReason::MissingInverse { .. })), "{err:?}");

        // Inverse-property loop that is not associative: a commutative loop of
        // order 5 with every element self-inverse fails associativity.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = group_from_cayley(&t, None).unwrap_err();
        assert!(matches!(err, GroupError::NotAGroup(NotAGroupReason::NotAssociative { .. })), "{err:?}");
    }

    #[test]
    fn randomized_associativity_mode_is_recorded() {
        let n = 300;
        let t: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let g = group_from_cayley(&t, None).unwrap();
        assert_eq!(g.associativity(), AssociativityCheck::Randomized { samples: 10_000, seed: 0x5eed });
    }

    #[test]
    fn permutation_groups() {
        let c4 = group_from_permutations(4, &[cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.is_cyclic());
        let gens = [cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])];
        assert_eq!(brute_closure_size(4, &gens), 8);
        assert_eq!(d8().order(), 8);
        let triv = group_from_permutations(3, &[]).unwrap();
        assert_eq!(triv.order(), 1);
    }

    #[test]
    fn closure_bound_and_bad_generators() {
        let gens = [cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1]])];
        assert_eq!(permutation_closure(5, &gens, 50).unwrap_err(), GroupError::ClosureBound { bound: 50 });
        let bad = Permutation(vec![0, 0, 1]);
        assert!(matches!(group_from_permutations(3, &[bad]), Err(GroupError::InvalidPermutation { index: 0, .. })));
    }

    #[test]
    fn permutation_table_is_composition() {
        let gens = [cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])];
        let (g, perms) = permutation_closure(4, &gens, 100).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(perms[g.mul(a, b)], perms[a].compose(&perms[b]));
            }
        }
    }

    #[test]
    fn classes_of_d8() {
        let g = d8();
        let sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 1, 2, 2, 2]);
        assert_eq!(sizes.iter().sum::<usize>(), 8);
        assert_eq!(g.conjugacy_classes()[0].members.to_vec(), vec![g.identity()]);
    }

    #[test]
    fn generated_subgroups_and_normality() {
        let g = d8();
        let empty = BitSet::new(8);
        assert_eq!(g.subgroup_generated(&empty).members.to_vec(), vec![0]);
        assert_eq!(g.subgroup_generated(&BitSet::full(8)).order(), 8);
        // Reflection: an element of order 2 that is not central.
        let refl = g.elements().find(|&x| g.element_order(x) == 2 && !g.is_central(x)).unwrap();
        let h = g.subgroup_generated(&BitSet::from_ids(8, [refl]));
        assert_eq!(h.order(), 2);
        assert!(!g.is_normal(&h));
        assert!(g.is_normal(&g.whole()));
        assert!(g.is_normal(&g.subgroup_generated(&empty)));
        assert!(g.is_normal(&g.center()));
        assert_eq!(g.center().order(), 2);
    }

    #[test]
    fn p_group_detection() {
        assert_eq!(prime_factors(8), vec![(2, 3)]);
        assert_eq!(prime_factors(27), vec![(3, 3)]);
        assert_eq!(prime_factors(6), vec![(2, 1), (3, 1)]);
        let c6 = group_from_permutations(6, &[cyc(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(c6.is_p_group(), PGroup::No);
        assert!(c6.is_nilpotent());
        let s3 = group_from_permutations(3, &[cyc(3, &[&[0, 1, 2]]), cyc(3, &[&[0, 1]])]).unwrap();
        assert!(!s3.is_nilpotent());
        assert_eq!(d8().is_p_group(), PGroup::Prime(2));
    }
}
