//! Dense matrices with polynomial entries.

use std::fmt;

use num_traits::Zero;

use crate::poly::Poly;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            data: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(&Poly::one(), n)
    }

    /// `p` times the `n x n` identity.
    pub fn scalar(p: &Poly, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        PolyMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        let c = self.cols;
        self.data.iter().enumerate().map(move |(k, p)| (k / c, k % c, p))
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn eval(&self, x: &Rational, q: &Rational) -> crate::linalg::Matrix {
        let rows = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval(x, q)).collect())
            .collect();
        crate::linalg::Matrix::from_rows_sized(rows, self.rows, self.cols)
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &PolyMatrix, b: &PolyMatrix, c: &PolyMatrix, d: &PolyMatrix) -> PolyMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut out = PolyMatrix::zeros(a.rows + c.rows, a.cols + b.cols);
        for (blk, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for (i, j, p) in blk.entries() {
                out.set(r0 + i, c0 + j, p.clone());
            }
        }
        out
    }

    pub fn block_diag(a: &PolyMatrix, d: &PolyMatrix) -> PolyMatrix {
        Self::block(
            a,
            &PolyMatrix::zeros(a.rows, d.cols),
            &PolyMatrix::zeros(d.rows, a.cols),
            d,
        )
    }

    /// Horizontal concatenation.
    pub fn hcat(parts: &[PolyMatrix], rows: usize) -> PolyMatrix {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = PolyMatrix::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            for (i, j, e) in p.entries() {
                out.set(i, c0 + j, e.clone());
            }
            c0 += p.cols;
        }
        out
    }

    /// Copy with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> PolyMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    /// Position of the first nonzero constant entry in row-major order.
    pub fn find_unit(&self) -> Option<(usize, usize, Rational)> {
        self.entries().find_map(|(i, j, p)| match p.as_constant() {
            Some(c) if !c.is_zero() => Some((i, j, c)),
            _ => None,
        })
    }

    /// Schur complement after pivoting on the unit `u` at `(r, c)`.
    pub fn schur(&self, r: usize, c: usize) -> PolyMatrix {
        let u = self.get(r, c).as_constant().expect("pivot must be constant");
        let uinv = u.recip();
        let mut out = self.minor(r, c);
        for (oi, i) in (0..self.rows).filter(|&i| i != r).enumerate() {
            let a = self.get(i, c);
            if a.is_zero() {
                continue;
            }
            let a = a.scale(&uinv);
            for (oj, j) in (0..self.cols).filter(|&j| j != c).enumerate() {
                let b = self.get(r, j);
                if !b.is_zero() {
                    let cur = out.get(oi, oj) - &(&a * b);
                    out.set(oi, oj, cur);
                }
            }
        }
        out
    }

    pub fn string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.string_rows().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::poly_parse;

    fn p(s: &str) -> Poly {
        poly_parse(s).unwrap()
    }

    #[test]
    fn product_and_schur() {
        let a = PolyMatrix::from_rows(vec![vec![p("x"), p("1")], vec![p("q"), p("x")]]);
        let b = PolyMatrix::from_rows(vec![vec![p("1"), p("0")], vec![p("0"), p("q")]]);
        let ab = a.mul(&b);
        assert_eq!(ab.get(0, 1), &p("q"));
        assert_eq!(ab.get(1, 1), &p("x*q"));
        // pivot on the 1 at (0, 1): x - q*x/1
        let s = a.schur(0, 1);
        assert_eq!(s.rows(), 1);
        assert_eq!(s.get(0, 0), &p("q - x^2"));
        assert_eq!(a.find_unit().map(|(i, j, _)| (i, j)), Some((0, 1)));
    }

    #[test]
    fn blocks() {
        let a = PolyMatrix::scalar(&p("x"), 1);
        let d = PolyMatrix::identity(2);
        let m = PolyMatrix::block_diag(&a, &d);
        assert_eq!(m.rows(), 3);
        assert_eq!(m.get(0, 0), &p("x"));
        assert_eq!(m.get(2, 2), &p("1"));
        assert!(m.get(0, 2).is_zero());
        assert_eq!(m.minor(0, 0), d);
        assert_eq!(m.to_string(), "[[x, 0, 0], [0, 1, 0], [0, 0, 1]]");
    }
}
