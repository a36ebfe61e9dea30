mod common;

use std::sync::OnceLock;

use common::*;
use itertools::Itertools;
use num_bigint::BigUint;
use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subrack_core::group::group_from_cayley;
use subrack_core::homology::{boundary_matrices, reduced_homology_with, smith_normal_form, SparseMatrix};
use subrack_core::poset::{closure_phi, enumerate_subracks};
use subrack_core::{orbit_decomposition, reduced_homology, BitSet, OrderComplex};

fn classes() -> &'static [ClassCase] {
    static CELL: OnceLock<Vec<ClassCase>> = OnceLock::new();
    CELL.get_or_init(|| small_p_group_classes().into_iter().filter(|c| c.class.len() > 1).collect())
}

fn subset(n: usize, mask: u64) -> BitSet {
    BitSet::from_ids(n, (0..n).filter(|i| mask >> i & 1 == 1))
}

/// Random complexes on at most `max_vertices` vertices, given by up to eight
/// random facets.
fn complex_strategy(max_vertices: usize) -> impl Strategy<Value = OrderComplex> {
    (1..=max_vertices).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 1..=n.min(5)), 0..8)
            .prop_map(move |fs| OrderComplex::from_facets(n, fs.into_iter().map(|f| f.into_iter().collect()).collect()))
    })
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k × k` minors and the factors are `d_k / d_{k−1}`.
fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<u64> {
    fn det(m: &[Vec<i128>]) -> i128 {
        match m.len() {
            0 => 1,
            1 => m[0][0],
            n => (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i128>> = m[1..]
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                        .collect();
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * m[0][j] * det(&minor)
                })
                .sum(),
        }
    }
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = 1i128;
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in (0..rows).combinations(k) {
            for cs in (0..cols).combinations(k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push((g / prev) as u64);
        prev = g;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn subrack_closure_is_a_closure(ci in 0..10_000usize, a in any::<u64>(), b in any::<u64>()) {
        let case = &classes()[ci % classes().len()];
        let n = case.rack.size();
        let s = subset(n, a);
        let t = s.union(&subset(n, b));
        let cs = case.rack.subrack_closure(&s);
        prop_assert!(s.is_subset(&cs));
        prop_assert!(closed_by_table(&case.rack, &cs));
        prop_assert_eq!(case.rack.subrack_closure(&cs), cs.clone());
        prop_assert!(cs.is_subset(&case.rack.subrack_closure(&t)));
        // Least closed superset: contained in every subrack containing s.
        for r in brute_force_subracks(&case.rack).iter().filter(|r| s.is_subset(r)) {
            prop_assert!(cs.is_subset(r));
        }
    }

    #[test]
    fn subracks_form_a_moore_family(ci in 0..10_000usize, a in any::<u64>(), b in any::<u64>()) {
        let case = &classes()[ci % classes().len()];
        let n = case.rack.size();
        let x = case.rack.subrack_closure(&subset(n, a));
        let y = case.rack.subrack_closure(&subset(n, b));
        prop_assert!(closed_by_table(&case.rack, &x.intersection(&y)));
        prop_assert!(closed_by_table(&case.rack, &BitSet::full(n)));
    }

    #[test]
    fn phi_laws_on_random_subracks(ci in 0..10_000usize, a in any::<u64>(), b in any::<u64>()) {
        let case = &classes()[ci % classes().len()];
        let n = case.rack.size();
        let orbits = orbit_decomposition(&case.rack);
        let s = case.rack.subrack_closure(&subset(n, a));
        let t = case.rack.subrack_closure(&s.union(&subset(n, b)));
        let ps = closure_phi(&case.rack, &s, &orbits);
        prop_assert!(s.is_subset(&ps));
        prop_assert_eq!(closure_phi(&case.rack, &ps, &orbits), ps.clone());
        prop_assert!(ps.is_subset(&closure_phi(&case.rack, &t, &orbits)));
        prop_assert!(closed_by_table(&case.rack, &ps));
        if ps.is_full() {
            prop_assert!(s.is_full());
        }
    }

    #[test]
    fn boundary_of_boundary_vanishes(k in complex_strategy(9)) {
        let b = boundary_matrices(&k);
        for w in b.windows(2) {
            prop_assert!(w[0].matrix.checked_mul(&w[1].matrix).unwrap().is_zero());
        }
    }

    #[test]
    fn integral_betti_matches_rational(k in complex_strategy(12)) {
        let h = reduced_homology(&k);
        let betti: Vec<usize> = h.degrees.iter().map(|d| d.betti).collect();
        prop_assert_eq!(betti, rational_betti(&k));
        prop_assert_eq!(reduced_homology_with(&k, 0), h.clone());
        prop_assert_eq!(k.euler_characteristic().reduced, h.alternating_betti_sum());
    }

    #[test]
    fn homology_ignores_vertex_names(k in complex_strategy(10), seed in any::<u64>()) {
        let h = reduced_homology(&k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perm = shuffled(k.num_vertices, &mut rng);
        let r = k.relabel(&perm);
        prop_assert_eq!(r.f_vector(), k.f_vector());
        prop_assert_eq!(reduced_homology(&r), h);
    }

    #[test]
    fn smith_form_matches_determinantal_divisors(
        m in (1..=4usize, 1..=4usize).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
    ) {
        let snf = smith_normal_form(&SparseMatrix::from_dense(&m));
        let expected: Vec<BigUint> = invariant_factors_by_minors(&m).into_iter().map(BigUint::from).collect();
        prop_assert_eq!(snf.rank, expected.len());
        prop_assert_eq!(snf.invariant_factors, expected);
    }

    #[test]
    fn relabelled_cayley_tables_validate(ci in 0..10_000usize, seed in any::<u64>()) {
        let entries = small_p_group_entries();
        let g = entries[ci % entries.len()].group().unwrap();
        let n = g.order();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perm = shuffled(n, &mut rng);
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a]][perm[b]] = perm[g.mul(a, b)];
            }
        }
        let h = group_from_cayley(&table, None).unwrap();
        let sizes = |g: &subrack_core::FiniteGroup| g.conjugacy_classes().iter().map(|c| c.len()).sorted().collect::<Vec<_>>();
        prop_assert_eq!(sizes(&h), sizes(&g));
        prop_assert_eq!(h.identity(), perm[g.identity()]);
    }
}

#[test]
fn every_p_group_class_enumerates() {
    for case in small_p_group_classes() {
        let poset = enumerate_subracks(&case.rack, 20).unwrap();
        assert!(poset.elements.iter().all(|s| closed_by_table(&case.rack, s)));
    }
}
