//! Exact rational matrices and fraction-free elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense matrix of rationals, row-major. Entries are kept in lowest terms by
/// `BigRational`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRational>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RationalMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        RationalMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// `self · v`.
    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Rows scaled to primitive integer vectors.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        IntegerEchelon::reduce(self.integer_rows(), self.cols).pivots.len()
    }

    /// Basis of the right nullspace, one vector per row of the result.
    pub fn nullspace(&self) -> RationalMatrix {
        self.nullspace_with_free_columns().0
    }

    /// Nullspace basis in reduced form: vector `k` has a 1 at `free[k]` and 0
    /// at every other free column, so coordinates of any nullspace vector are
    /// its entries at the free columns.
    pub fn nullspace_with_free_columns(&self) -> (RationalMatrix, Vec<usize>) {
        IntegerEchelon::reduce(self.integer_rows(), self.cols).nullspace()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

fn primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Reduced row echelon form computed over the integers: rows are combined
/// fraction-free (`p·row_i − a·row_p`) and divided by their content after
/// every step, so no rationals appear until the nullspace is read off.
#[derive(Debug, Clone)]
pub struct IntegerEchelon {
    cols: usize,
    /// Nonzero rows, row `k` has its pivot at `pivots[k]`, and every pivot
    /// column is zero outside its pivot row.
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

impl IntegerEchelon {
    pub fn reduce(mut rows: Vec<Vec<BigInt>>, cols: usize) -> IntegerEchelon {
        rows.retain(|r| r.iter().any(|v| !v.is_zero()));
        for r in rows.iter_mut() {
            primitive(r);
        }
        let mut pivots = Vec::new();
        let mut done = 0;
        for c in 0..cols {
            // pivot: smallest magnitude, then fewest nonzeros, then first
            let choice = (done..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| (rows[i][c].magnitude().clone(), rows[i].iter().filter(|v| !v.is_zero()).count(), i));
            let Some(p) = choice else { continue };
            rows.swap(done, p);
            if rows[done][c].is_negative() {
                for v in rows[done].iter_mut() {
                    *v = -&*v;
                }
            }
            let (head, tail) = rows.split_at_mut(done + 1);
            let (above, pivot_slot) = head.split_at_mut(done);
            let pivot_row = &pivot_slot[0];
            let pivot = &pivot_row[c];
            let eliminate = |row: &mut Vec<BigInt>| {
                if row[c].is_zero() {
                    return;
                }
                let g = pivot.gcd(&row[c]);
                let scale_row = pivot / &g;
                let scale_pivot = &row[c] / &g;
                for (v, pv) in row.iter_mut().zip(pivot_row) {
                    if pv.is_zero() {
                        if !v.is_zero() {
                            *v *= &scale_row;
                        }
                    } else {
                        *v = &*v * &scale_row - pv * &scale_pivot;
                    }
                }
                primitive(row);
            };
            for row in above.iter_mut() {
                eliminate(row);
            }
            for row in tail.iter_mut() {
                eliminate(row);
            }
            pivots.push(c);
            done += 1;
        }
        rows.truncate(done);
        IntegerEchelon { cols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullspace(&self) -> (RationalMatrix, Vec<usize>) {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = RationalMatrix::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            basis.set(k, f, BigRational::one());
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[f].is_zero() {
                    basis.set(k, p, BigRational::new(-row[f].clone(), row[p].clone()));
                }
            }
        }
        (basis, free)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    /// Textbook Gauss-Jordan over the rationals, independent of the integer
    /// elimination above. Returns the RREF rows.
    fn naive_rref(m: &RationalMatrix) -> Vec<Vec<BigRational>> {
        let mut a: Vec<Vec<BigRational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        let mut r = 0;
        for c in 0..m.cols() {
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for v in a[r].iter_mut() {
                *v *= &inv;
            }
            for i in 0..a.len() {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    let pivot_row = a[r].clone();
                    for (v, pv) in a[i].iter_mut().zip(&pivot_row) {
                        *v -= &f * pv;
                    }
                }
            }
            r += 1;
        }
        a.truncate(r);
        a
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(RationalMatrix::identity(3).nullspace().rows(), 0);
        let ns = RationalMatrix::from_integers(&[vec![1, 1]]).nullspace();
        assert_eq!(ns, RationalMatrix::from_rows(2, vec![vec![q(-1), q(1)]]));
        let (ns, free) = RationalMatrix::zeros(2, 3).nullspace_with_free_columns();
        assert_eq!(ns, RationalMatrix::identity(3));
        assert_eq!(free, vec![0, 1, 2]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::from_integers(&[vec![1, 2], vec![2, 4]]).rank(), 1);
        assert_eq!(RationalMatrix::from_integers(&[vec![0, 0], vec![0, 0]]).rank(), 0);
        assert_eq!(RationalMatrix::from_integers(&[vec![2, 3], vec![4, 5]]).rank(), 2);
    }

    proptest! {
        #[test]
        fn nullspace_agrees_with_naive_elimination(
            entries in prop::collection::vec(-4i64..5, 48),
            zero_mask in prop::collection::vec(any::<bool>(), 48),
        ) {
            // 6 x 8, sparsified to make rank deficiency common
            let rows: Vec<Vec<i64>> = (0..6)
                .map(|r| (0..8).map(|c| if zero_mask[r * 8 + c] { 0 } else { entries[r * 8 + c] }).collect())
                .collect();
            let m = RationalMatrix::from_integers(&rows);
            let ns = m.nullspace();
            for k in 0..ns.rows() {
                prop_assert!(m.apply(ns.row(k)).iter().all(|v| v.is_zero()));
            }
            let rref = naive_rref(&m);
            prop_assert_eq!(ns.rows(), 8 - rref.len());
            prop_assert_eq!(m.rank(), rref.len());
            // same span: the naive nullspace basis has the same RREF
            let mut naive_ns = Vec::new();
            let pivots: Vec<usize> = rref.iter().map(|row| row.iter().position(|v| !v.is_zero()).unwrap()).collect();
            for f in (0..8).filter(|c| !pivots.contains(c)) {
                let mut v = vec![q(0); 8];
                v[f] = q(1);
                for (row, &p) in rref.iter().zip(&pivots) {
                    v[p] = -row[f].clone();
                }
                naive_ns.push(v);
            }
            let ours: Vec<Vec<BigRational>> = (0..ns.rows()).map(|k| ns.row(k).to_vec()).collect();
            prop_assert_eq!(naive_rref(&RationalMatrix::from_rows(8, ours)), naive_rref(&RationalMatrix::from_rows(8, naive_ns)));
        }
    }
}
