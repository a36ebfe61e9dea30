//! Finite racks and quandles, conjugation racks of conjugacy classes, and the
//! decomposition of a class into orbits of the subgroup it generates.
//!
//! A rack is stored as its full operation table `op(a, b) = a ▷ b` over dense
//! carrier ids `0..size`. Conjugation racks also carry the map from carrier
//! ids back to group element ids.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::group::{ConjClass, FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RackError {
    #[error("malformed operation table: {0}")]
    Malformed(String),
    #[error("table violates the rack axioms: {0:?}")]
    AxiomViolation(RackReport),
    #[error("element set is not closed under conjugation: {0}")]
    ClassNotClosed(String),
}

/// Outcome of one axiom check. A failure carries its witness: a triple for
/// self-distributivity, a row index for bijectivity, an element for
/// idempotency.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status", content = "witness")]
pub enum AxiomCheck {
    Pass,
    Fail(Vec<usize>),
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomCheck::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RackReport {
    /// `a ▷ (b ▷ c) = (a ▷ b) ▷ (a ▷ c)`
    pub self_distributive: AxiomCheck,
    /// Every left translation `c ↦ a ▷ c` is a bijection.
    pub left_bijective: AxiomCheck,
    /// `a ▷ a = a`
    pub idempotent: AxiomCheck,
}

impl RackReport {
    pub fn is_rack(&self) -> bool {
        self.self_distributive.passed() && self.left_bijective.passed()
    }

    pub fn is_quandle(&self) -> bool {
        self.is_rack() && self.idempotent.passed()
    }
}

/// Checks all three axioms on a square table over `0..n`. Failures are data,
/// not errors; the first witness found is reported for each axiom.
pub fn verify_rack(table: &[Vec<usize>]) -> RackReport {
    let n = table.len();
    let op = |a: usize, b: usize| table[a][b];

    let mut left_bijective = AxiomCheck::Pass;
    for a in 0..n {
        let mut seen = BitSet::new(n);
        if !table[a].iter().all(|&x| seen.insert(x)) {
            left_bijective = AxiomCheck::Fail(vec![a]);
            break;
        }
    }

    let mut self_distributive = AxiomCheck::Pass;
    'outer: for a in 0..n {
        for b in 0..n {
            let ab = op(a, b);
            for c in 0..n {
                if op(a, op(b, c)) != op(ab, op(a, c)) {
                    self_distributive = AxiomCheck::Fail(vec![a, b, c]);
                    break 'outer;
                }
            }
        }
    }

    let idempotent = match (0..n).find(|&a| op(a, a) != a) {
        Some(a) => AxiomCheck::Fail(vec![a]),
        None => AxiomCheck::Pass,
    };

    RackReport { self_distributive, left_bijective, idempotent }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rack {
    size: usize,
    op: Vec<u32>,
    element_map: Option<Vec<usize>>,
    quandle: bool,
}

impl Rack {
    /// Builds a rack from a user-supplied table, rejecting tables that fail
    /// (A1) or (A2). The quandle flag records whether (A3) holds.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Rack, RackError> {
        let n = table.len();
        for (r, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(RackError::Malformed(format!("row {r} is not a map into 0..{n}")));
            }
        }
        let report = verify_rack(table);
        if !report.is_rack() {
            return Err(RackError::AxiomViolation(report));
        }
        Ok(Rack {
            size: n,
            op: table.iter().flatten().map(|&x| x as u32).collect(),
            element_map: None,
            quandle: report.idempotent.passed(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_quandle(&self) -> bool {
        self.quandle
    }

    /// `a ▷ b`
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a * self.size + b] as usize
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.size).map(|a| (0..self.size).map(|b| self.op(a, b)).collect()).collect()
    }

    /// Group element behind each carrier id, for conjugation racks.
    pub fn element_map(&self) -> Option<&[usize]> {
        self.element_map.as_deref()
    }

    pub fn carrier(&self) -> BitSet {
        BitSet::full(self.size)
    }

    /// Maps a set of carrier ids to the corresponding group element ids.
    pub fn to_group_ids(&self, s: &BitSet) -> Option<Vec<usize>> {
        let map = self.element_map.as_ref()?;
        Some(s.iter().map(|i| map[i]).collect())
    }

    pub fn is_closed(&self, s: &BitSet) -> bool {
        s.iter().all(|a| s.iter().all(|b| s.contains(self.op(a, b))))
    }

    /// Smallest ▷-closed superset of `s`.
    ///
    /// Closure under the operation alone is enough to make a subrack: for
    /// `a` in a closed finite subset `S`, the left translation by `a` is an
    /// injection of `S` into itself, hence a bijection, so (A2) holds in `S`
    /// and (A1) is inherited from the ambient rack. Intersections of closed
    /// subsets are closed, so subracks form a Moore family.
    pub fn subrack_closure(&self, s: &BitSet) -> BitSet {
        let mut closed = s.clone();
        let mut members: Vec<usize> = s.iter().collect();
        let mut processed = 0;
        // Invariant: all products among members[..processed] are in `closed`.
        while processed < members.len() {
            let x = members[processed];
            for j in 0..=processed {
                let y = members[j];
                for z in [self.op(x, y), self.op(y, x)] {
                    if closed.insert(z) {
                        members.push(z);
                    }
                }
            }
            processed += 1;
        }
        closed
    }
}

/// Conjugation rack on a class: `a ▷ b = g_a g_b g_a⁻¹`, carrier ids in
/// increasing group-id order. Fails unless the set is closed under
/// conjugation by the whole group.
pub fn conjugation_rack(group: &FiniteGroup, class: &ConjClass) -> Result<Rack, RackError> {
    let ids: Vec<usize> = class.members.iter().collect();
    let n = ids.len();
    let mut pos = vec![usize::MAX; group.order()];
    for (i, &g) in ids.iter().enumerate() {
        pos[g] = i;
    }
    for &a in &ids {
        if let Some(g) = group.elements().find(|&g| pos[group.conjugate(g, a)] == usize::MAX) {
            return Err(RackError::ClassNotClosed(format!(
                "{} conjugated by {} leaves the set",
                group.label(a),
                group.label(g)
            )));
        }
    }
    let mut op = Vec::with_capacity(n * n);
    for &a in &ids {
        for &b in &ids {
            op.push(pos[group.conjugate(a, b)] as u32);
        }
    }
    Ok(Rack { size: n, op, element_map: Some(ids), quandle: true })
}

/// Orbits of `H = ⟨C⟩` acting on the class by conjugation, in carrier ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDecomposition {
    /// Disjoint orbits ordered by smallest member.
    pub orbits: Vec<BitSet>,
}

impl OrbitDecomposition {
    pub fn m(&self) -> usize {
        self.orbits.len()
    }

    pub fn universe(&self) -> usize {
        self.orbits.first().map_or(0, |o| o.universe())
    }

    /// Index of the orbit containing carrier id `x`.
    pub fn orbit_of(&self, x: usize) -> Option<usize> {
        self.orbits.iter().position(|o| o.contains(x))
    }

    /// Union of the orbits whose indices are set in `indices`.
    pub fn union_of(&self, indices: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.universe());
        for i in indices {
            out.union_with(&self.orbits[i]);
        }
        out
    }
}

/// H-orbits computed from the generators alone: the orbit of `x` is the
/// smallest set containing `x` that is stable under every left translation
/// `c ▷ ·` with `c` in the class. Since the class generates `H` and `H` is
/// finite, this is the orbit of `x` under all of `H`.
pub fn orbit_decomposition(rack: &Rack) -> OrbitDecomposition {
    let n = rack.size();
    let mut assigned = BitSet::new(n);
    let mut orbits = Vec::new();
    for x in 0..n {
        if assigned.contains(x) {
            continue;
        }
        let mut orbit = BitSet::new(n);
        orbit.insert(x);
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for c in 0..n {
                let z = rack.op(c, y);
                if orbit.insert(z) {
                    stack.push(z);
                }
            }
        }
        assigned.union_with(&orbit);
        orbits.push(orbit);
    }
    OrbitDecomposition { orbits }
}

/// The same orbits computed by conjugating with every element of `subgroup`.
/// Used to cross-check [`orbit_decomposition`].
pub fn orbits_under_subgroup(group: &FiniteGroup, rack: &Rack, subgroup: &Subgroup) -> OrbitDecomposition {
    let map = rack.element_map().expect("conjugation rack");
    let n = rack.size();
    let mut pos = vec![usize::MAX; group.order()];
    for (i, &g) in map.iter().enumerate() {
        pos[g] = i;
    }
    let mut assigned = BitSet::new(n);
    let mut orbits = Vec::new();
    for x in 0..n {
        if assigned.contains(x) {
            continue;
        }
        let mut orbit = BitSet::new(n);
        for h in subgroup.members.iter() {
            orbit.insert(pos[group.conjugate(h, map[x])]);
        }
        assigned.union_with(&orbit);
        orbits.push(orbit);
    }
    OrbitDecomposition { orbits }
}

/// A class is connected when `⟨C⟩` acts transitively on it.
pub fn is_connected_class(group: &FiniteGroup, class: &ConjClass) -> Result<bool, RackError> {
    let rack = conjugation_rack(group, class)?;
    Ok(orbit_decomposition(&rack).m() == 1)
}
