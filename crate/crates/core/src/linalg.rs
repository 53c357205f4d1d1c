//! Exact linear algebra over the rationals.
//!
//! Two independent elimination routines are provided. The primary one clears
//! denominators row by row and runs fraction-free (Bareiss) elimination over
//! the integers; [`Matrix::rank_alt`] and [`Matrix::kernel_alt`] run plain
//! rational Gauss-Jordan elimination sweeping columns from the right with
//! bottom-most pivots. The second route exists so the two can check each
//! other.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Like [`Matrix::from_rows`] but keeps the shape when `rows` is empty.
    pub fn from_rows_sized(rows: Vec<Vec<Rational>>, r: usize, c: usize) -> Self {
        assert_eq!(rows.len(), r);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    /// Rows scaled to integers; row scaling leaves the row space unchanged.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter()
                    .map(|v| v.numer() * (&lcm / v.denom()))
                    .collect()
            })
            .collect()
    }

    /// Fraction-free row echelon form. Returns the nonzero echelon rows and
    /// their pivot columns.
    fn bareiss_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut a = self.integer_rows();
        let n = self.cols;
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut k = 0;
        for col in 0..n {
            if k == a.len() {
                break;
            }
            let Some(p) = (k..a.len()).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(k, p);
            let (top, rest) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            let piv = pivot_row[col].clone();
            for row in rest.iter_mut() {
                let lead = row[col].clone();
                for j in (col + 1)..n {
                    let num = &piv * &row[j] - &lead * &pivot_row[j];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                    row[j] = num / &prev;
                }
                row[col] = BigInt::zero();
            }
            prev = piv;
            pivots.push(col);
            k += 1;
        }
        a.truncate(k);
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Reduced row echelon form (rational) from the fraction-free echelon.
    fn rref(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let (ech, pivots) = self.bareiss_echelon();
        let mut rows: Vec<Vec<Rational>> = ech
            .into_iter()
            .map(|r| r.into_iter().map(Rational::from_integer).collect())
            .collect();
        for i in (0..rows.len()).rev() {
            let pc = pivots[i];
            let inv = rows[i][pc].recip();
            for v in rows[i].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            let (upper, lower) = rows.split_at_mut(i);
            let pivot_row = &lower[0];
            for row in upper.iter_mut() {
                let c = row[pc].clone();
                if c.is_zero() {
                    continue;
                }
                for (v, p) in row.iter_mut().zip(pivot_row) {
                    if !p.is_zero() {
                        *v -= &c * p;
                    }
                }
            }
        }
        (rows, pivots)
    }

    /// Basis of the right null space.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (rref, pivots) = self.rref();
        kernel_from_rref(&rref, &pivots, self.cols)
    }

    pub fn rank_alt(&self) -> usize {
        self.gauss_jordan_rev().1.len()
    }

    pub fn kernel_alt(&self) -> Vec<Vec<Rational>> {
        let (rows, pivots) = self.gauss_jordan_rev();
        let n = self.cols;
        let pivot_set: std::collections::BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, c)| (*c, r)).collect();
        (0..n)
            .filter(|c| !pivot_set.contains_key(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); n];
                v[free] = Rational::one();
                for (pc, r) in &pivot_set {
                    v[*pc] = -rows[*r][free].clone();
                }
                v
            })
            .collect()
    }

    /// Rational Gauss-Jordan, columns right to left, pivot taken from the
    /// bottom-most available row.
    fn gauss_jordan_rev(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let mut a: Vec<Vec<Rational>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut used = 0usize;
        let m = a.len();
        for col in (0..self.cols).rev() {
            if used == m {
                break;
            }
            let Some(p) = (0..m - used).rev().find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            let target = m - 1 - used;
            a.swap(p, target);
            let inv = a[target][col].recip();
            for v in a[target].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = a[target].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == target || row[col].is_zero() {
                    continue;
                }
                let c = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &c * pv;
                    }
                }
            }
            pivots.push(col);
            used += 1;
        }
        // pivot k lives in row m-1-k
        let rows = (0..pivots.len()).map(|k| a[m - 1 - k].clone()).collect();
        (rows, pivots)
    }

    /// A particular solution of `self * v = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let (rref, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![Rational::zero(); self.cols];
        for (r, pc) in pivots.iter().enumerate() {
            v[*pc] = rref[r][self.cols].clone();
        }
        Some(v)
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let piv = a[col][col].clone();
            det *= &piv;
            let (top, below) = a.split_at_mut(col + 1);
            for row in below.iter_mut() {
                let c = &row[col] / &piv;
                if c.is_zero() {
                    continue;
                }
                for (x, y) in row[col..n].iter_mut().zip(&top[col][col..n]) {
                    *x -= &c * y;
                }
            }
        }
        det
    }
}

fn kernel_from_rref(rref: &[Vec<Rational>], pivots: &[usize], n: usize) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; n];
    for p in pivots {
        is_pivot[*p] = true;
    }
    (0..n)
        .filter(|c| !is_pivot[*c])
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (r, pc) in pivots.iter().enumerate() {
                v[*pc] = -rref[r][free].clone();
            }
            v
        })
        .collect()
}

/// Incrementally maintained basis of a subspace, used to pick vectors that
/// are independent modulo an existing span.
#[derive(Clone, Debug, Default)]
pub struct SpanBuilder {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl SpanBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let c = v[*p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((p, r));
        true
    }
}

/// Clears denominators and divides out the content, giving a primitive
/// integer vector with positive leading entry.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map_or(BigInt::one(), |x| if x.is_negative() { -BigInt::one() } else { BigInt::one() });
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g * &sign))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|row| row.iter().map(|x| r(*x)).collect()).collect())
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(Matrix::identity(2).kernel_basis().is_empty());
        assert!(Matrix::identity(2).kernel_alt().is_empty());
    }

    #[test]
    fn single_row_kernel() {
        let k = m(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![r(-1), r(1)]]);
        assert_eq!(primitive(&k[0]), vec![r(1), r(-1)]);
    }

    #[test]
    fn both_paths_agree_on_rank_deficient() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0], &[1, 3, 4, 4]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.rank_alt(), 2);
        for v in a.kernel_basis().iter().chain(a.kernel_alt().iter()) {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        assert_eq!(a.kernel_basis().len(), 2);
        assert_eq!(a.kernel_alt().len(), 2);
    }

    #[test]
    fn solve_and_determinant() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let v = a.solve(&[r(3), r(5)]).unwrap();
        assert_eq!(a.mul_vec(&v), vec![r(3), r(5)]);
        assert_eq!(a.determinant(), r(5));
        let sing = m(&[&[1, 2], &[2, 4]]);
        assert!(sing.solve(&[r(1), r(0)]).is_none());
        assert_eq!(sing.determinant(), r(0));
    }

    #[test]
    fn span_builder_detects_dependence() {
        let mut s = SpanBuilder::new();
        assert!(s.insert(&[r(1), r(1), r(0)]));
        assert!(s.insert(&[r(0), r(1), r(1)]));
        assert!(!s.insert(&[r(1), r(2), r(1)]));
        assert!(s.contains(&[r(2), r(3), r(1)]));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn empty_shapes() {
        let z = Matrix::zeros(0, 3);
        assert_eq!(z.kernel_basis().len(), 3);
        assert_eq!(z.kernel_alt().len(), 3);
        let z = Matrix::zeros(3, 0);
        assert_eq!(z.rank(), 0);
        assert!(z.kernel_basis().is_empty());
    }
}
