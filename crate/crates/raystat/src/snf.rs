//! Smith normal form of integer matrices over arbitrary-precision integers,
//! with recorded unimodular transforms, plus the cokernel reading used to
//! realize finitely presented abelian groups.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    let e = &mut out[(i, j)];
                    *e += prod;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * q;
            self[(dst, j)] += v;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * q;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self[(r, j)].clone();
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// Result of a Smith normal form computation: `left * m * right = diag`,
/// with `left`, `right` unimodular and the diagonal in a divisibility chain.
/// `right_inv` is maintained so group bases can be rewritten both ways.
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
}

/// Smith normal form by pivoting on a least-absolute-value entry and clearing
/// its row and column with exact division steps.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut right_inv = IntMatrix::identity(cols);

    let mut t = 0usize;
    while t < rows.min(cols) {
        // find a pivot of least absolute value in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[(i, j)].is_zero()
                    && pivot.map_or(true, |(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);
        right_inv.swap_rows(t, pj);

        let mut clean = true;
        for i in t + 1..rows {
            if !a[(i, t)].is_zero() {
                let q = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row(i, t, &q);
                left.add_row(i, t, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..cols {
            if !a[(t, j)].is_zero() {
                let q = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col(j, t, &q);
                right.add_col(j, t, &q);
                right_inv.add_row(t, j, &-q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue; // remainders left; re-pivot on a smaller entry
        }
        // pivot must divide every entry of the trailing block
        let mut offender = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[(i, j)] % &a[(t, t)]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            let one = BigInt::one();
            a.add_row(t, i, &one);
            left.add_row(t, i, &one);
            continue;
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }

    let diag = (0..t).map(|i| a[(i, i)].clone()).collect();
    Snf {
        diag,
        left,
        right,
        right_inv,
    }
}

/// Invariant factors (> 1) and free rank of the cokernel Z^g / rowspan(m),
/// where `m` has `g` columns (one per generator) and one row per relation.
pub fn cokernel(m: &IntMatrix) -> (Vec<BigInt>, usize) {
    let snf = smith_normal_form(m);
    let invariants = snf
        .diag
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect::<Vec<_>>();
    let free_rank = m.cols - snf.diag.len();
    (invariants, free_rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_transforms(m: &IntMatrix) {
        let snf = smith_normal_form(m);
        let prod = snf.left.mul(m).mul(&snf.right);
        for i in 0..prod.rows {
            for j in 0..prod.cols {
                let expect = if i == j && i < snf.diag.len() {
                    snf.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(prod[(i, j)], expect, "at ({i},{j})");
            }
        }
        // divisibility chain
        for w in snf.diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "chain broken: {:?}", snf.diag);
        }
        // right * right_inv = identity
        let id = snf.right.mul(&snf.right_inv);
        for i in 0..id.rows {
            for j in 0..id.cols {
                let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                assert_eq!(id[(i, j)], expect);
            }
        }
    }

    #[test]
    fn snf_hand_example() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8
        let m = IntMatrix::from_i64(&[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diag, vec![BigInt::from(2), BigInt::from(4)]);
        check_transforms(&m);
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(3);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diag, vec![BigInt::one(); 3]);
    }

    #[test]
    fn snf_zero_map() {
        let m = IntMatrix::from_i64(&[vec![0]]);
        let (inv, free) = cokernel(&m);
        assert!(inv.is_empty());
        assert_eq!(free, 1);
    }

    #[test]
    fn snf_empty() {
        let m = IntMatrix::zero(0, 0);
        let snf = smith_normal_form(&m);
        assert!(snf.diag.is_empty());
    }

    #[test]
    fn transforms_on_assorted_matrices() {
        for m in [
            IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]),
            IntMatrix::from_i64(&[vec![1, 2, 3], vec![4, 5, 6]]),
            IntMatrix::from_i64(&[vec![0, 0], vec![0, 9], vec![3, 0]]),
            IntMatrix::from_i64(&[vec![6, 10], vec![15, 21]]),
        ] {
            check_transforms(&m);
        }
    }

    #[test]
    fn random_transform_property() {
        // lightweight deterministic pseudo-random sweep
        let mut state = 0x243f_6a88_85a3_08d3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 41) as i64 - 20
        };
        for _ in 0..40 {
            let rows = 1 + (next().unsigned_abs() as usize % 4);
            let cols = 1 + (next().unsigned_abs() as usize % 4);
            let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| next()).collect()).collect();
            check_transforms(&IntMatrix::from_i64(&data));
        }
    }
}
