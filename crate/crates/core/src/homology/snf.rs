//! Smith normal form over the integers.
//!
//! Two stages. Sparse matrices first go through unit-pivot elimination: any
//! entry of absolute value one is a minimal pivot, and eliminating it removes
//! its row and column while contributing an invariant factor of 1. Whatever
//! survives is densified and reduced by the classic algorithm, pivoting on an
//! entry of minimal absolute value. Arithmetic starts in `i64` with checked
//! operations and restarts in `BigInt` on the first overflow.

use num_bigint::BigUint;
use num_traits::{One, Signed};

use super::matrix::{abs_lt, Scalar, SparseMatrix};

/// Matrices with at most this many rows and columns skip the sparse stage.
pub const DEFAULT_DENSIFY_THRESHOLD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    /// Nonzero diagonal entries `d₁ | d₂ | …`, all positive.
    pub invariant_factors: Vec<BigUint>,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form<T: Scalar>(m: &SparseMatrix<T>) -> SmithForm {
    smith_normal_form_with(m, DEFAULT_DENSIFY_THRESHOLD)
}

pub fn smith_normal_form_with<T: Scalar>(m: &SparseMatrix<T>, densify_threshold: usize) -> SmithForm {
    let narrow: Option<SparseMatrix<i64>> = m
        .data
        .iter()
        .map(|r| r.iter().map(|(j, v)| v.to_big().try_into().ok().map(|x: i64| (*j, x))).collect())
        .collect::<Option<Vec<Vec<_>>>>()
        .map(|data| SparseMatrix { rows: m.rows, cols: m.cols, data });
    if let Some(small) = narrow {
        if let Some(f) = snf_generic(&small, densify_threshold) {
            return f;
        }
    }
    snf_generic(&m.to_big(), densify_threshold).expect("BigInt arithmetic cannot overflow")
}

fn snf_generic<T: Scalar>(m: &SparseMatrix<T>, densify_threshold: usize) -> Option<SmithForm> {
    if m.rows <= densify_threshold && m.cols <= densify_threshold {
        return dense_snf(m.to_dense());
    }
    // Shorter rows make elimination cheaper; the invariant factors of a
    // matrix and its transpose coincide.
    let work = if m.rows >= m.cols { m.clone() } else { m.transpose() };
    let (units, rest) = eliminate_units(work)?;
    let mut form = dense_snf(rest)?;
    form.rank += units;
    let mut factors = vec![BigUint::one(); units];
    factors.append(&mut form.invariant_factors);
    form.invariant_factors = factors;
    Some(form)
}

/// Removes unit pivots until none is left. Returns the number of pivots and
/// the remaining nonzero block in dense form.
fn eliminate_units<T: Scalar>(m: SparseMatrix<T>) -> Option<(usize, Vec<Vec<T>>)> {
    let SparseMatrix { cols, mut data, .. } = m;
    let nrows = data.len();
    let mut active = vec![true; nrows];
    // Possibly stale: a listed row may no longer have an entry in the column.
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); cols];
    for (i, row) in data.iter().enumerate() {
        for (j, _) in row {
            col_rows[*j].push(i);
        }
    }
    let mut col_done = vec![false; cols];
    let mut seen = vec![false; nrows];
    let mut pivots = 0;

    loop {
        let mut progress = false;
        for c in 0..cols {
            if col_done[c] {
                continue;
            }
            // Drop duplicates and stale rows, keeping insertion order.
            let listed = std::mem::take(&mut col_rows[c]);
            let mut holders = Vec::with_capacity(listed.len());
            for &i in &listed {
                if !std::mem::replace(&mut seen[i], true) && active[i] && entry(&data[i], c).is_some() {
                    holders.push(i);
                }
            }
            for &i in &listed {
                seen[i] = false;
            }
            if holders.is_empty() {
                col_done[c] = true;
                continue;
            }
            let pivot = holders
                .iter()
                .copied()
                .filter(|&i| entry(&data[i], c).is_some_and(|v| v.is_unit()))
                .min_by_key(|&i| data[i].len());
            let Some(r) = pivot else {
                col_rows[c] = holders;
                continue;
            };

            let prow = std::mem::take(&mut data[r]);
            let pval = entry(&prow, c).expect("pivot entry").clone();
            for &i in holders.iter().filter(|&&i| i != r) {
                // a_ic / p = a_ic * p for a unit p.
                let f = entry(&data[i], c).expect("holder entry").checked_mul(&pval)?;
                let (merged, added) = sub_scaled(&data[i], &f, &prow)?;
                for j in added {
                    col_rows[j].push(i);
                }
                data[i] = merged;
            }
            active[r] = false;
            col_done[c] = true;
            pivots += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }

    let live_rows: Vec<usize> = (0..nrows).filter(|&i| active[i] && !data[i].is_empty()).collect();
    let mut live_cols: Vec<usize> = live_rows.iter().flat_map(|&i| data[i].iter().map(|(j, _)| *j)).collect();
    live_cols.sort_unstable();
    live_cols.dedup();
    let mut dense = vec![vec![T::zero(); live_cols.len()]; live_rows.len()];
    for (a, &i) in live_rows.iter().enumerate() {
        for (j, v) in &data[i] {
            let b = live_cols.binary_search(j).expect("live column");
            dense[a][b] = v.clone();
        }
    }
    Some((pivots, dense))
}

fn entry<T>(row: &[(usize, T)], c: usize) -> Option<&T> {
    row.binary_search_by_key(&c, |(j, _)| *j).ok().map(|k| &row[k].1)
}

type SparseRow<T> = Vec<(usize, T)>;

/// `row - f * other`, with the columns that became nonzero.
fn sub_scaled<T: Scalar>(row: &[(usize, T)], f: &T, other: &[(usize, T)]) -> Option<(SparseRow<T>, Vec<usize>)> {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let mut added = Vec::new();
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < other.len() {
        let ja = row.get(a).map_or(usize::MAX, |e| e.0);
        let jb = other.get(b).map_or(usize::MAX, |e| e.0);
        if ja < jb {
            out.push(row[a].clone());
            a += 1;
        } else if jb < ja {
            let v = T::zero().checked_sub_mul(f, &other[b].1)?;
            if !v.is_zero() {
                out.push((jb, v));
                added.push(jb);
            }
            b += 1;
        } else {
            let v = row[a].1.checked_sub_mul(f, &other[b].1)?;
            if !v.is_zero() {
                out.push((ja, v));
            }
            a += 1;
            b += 1;
        }
    }
    Some((out, added))
}

/// Classic Smith reduction on a dense matrix.
fn dense_snf<T: Scalar>(mut a: Vec<Vec<T>>) -> Option<SmithForm> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag: Vec<T> = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].quot(&a[t][t])?;
                for j in t..cols {
                    let v = a[i][j].checked_sub_mul(&q, &a[t][j])?;
                    a[i][j] = v;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].quot(&a[t][t])?;
                for i in t..rows {
                    let v = a[i][j].checked_sub_mul(&q, &a[i][t])?;
                    a[i][j] = v;
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                // A remainder smaller than the pivot is left in row or column
                // t: move the smallest one into the pivot position.
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && abs_lt(&a[i][t], &a[best.0][best.1]) {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && abs_lt(&a[t][j], &a[best.0][best.1]) {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                } else if best.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                }
                continue;
            }
            // Row and column clear; enforce divisibility into the rest.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_divisible_by(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[t][j].checked_add(&a[i][j])?;
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].clone());
    }

    let invariant_factors: Vec<BigUint> = diag.iter().map(|d| d.to_big().abs().to_biguint().expect("abs")).collect();
    debug_assert!(invariant_factors.windows(2).all(|w| &w[1] % &w[0] == BigUint::ZERO));
    Some(SmithForm { rank: invariant_factors.len(), invariant_factors })
}

fn min_abs_entry<T: Scalar>(a: &[Vec<T>], r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(r0) {
        for (j, v) in row.iter().enumerate().skip(c0) {
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| abs_lt(v, &a[bi][bj])) {
                best = Some((i, j));
                if v.is_unit() {
                    return best;
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn factors(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn zero_and_identity() {
        let z: SparseMatrix<i64> = SparseMatrix::zeros(3, 4);
        assert_eq!(smith_normal_form(&z), SmithForm { rank: 0, invariant_factors: vec![] });
        let id = SparseMatrix::from_dense(&[vec![1i64, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(smith_normal_form(&id).invariant_factors, factors(&[1, 1, 1]));
    }

    #[test]
    fn two_three() {
        let m = SparseMatrix::from_dense(&[vec![2i64, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m).invariant_factors, factors(&[1, 6]));
    }

    #[test]
    fn textbook_example() {
        // diag(2, 6, 12) up to unimodular change of basis.
        let m = SparseMatrix::from_dense(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_normal_form(&m).invariant_factors, factors(&[2, 6, 12]));
    }

    #[test]
    fn sparse_path_agrees_with_dense() {
        let m =
            SparseMatrix::from_dense(&[vec![1i64, -1, 0, 0], vec![0, 1, -1, 0], vec![0, 0, 2, 2], vec![4, 0, 0, 6]]);
        assert_eq!(smith_normal_form_with(&m, 0), smith_normal_form(&m));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let m = SparseMatrix::from_dense(&[vec![big, 3], vec![5, big]]);
        let f = smith_normal_form(&m);
        let det = BigInt::from(big) * BigInt::from(big) - BigInt::from(15);
        assert_eq!(f.rank, 2);
        let prod: BigUint = f.invariant_factors.iter().product();
        assert_eq!(BigInt::from(prod), det.abs());
    }
}
