//! Bivariate polynomials in `x` and `q` with exact rational coefficients.
//!
//! Both variables carry weight one, so the twist of a homogeneous polynomial
//! is its total degree.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Exponent pair `(a, b)` standing for `x^a q^b`.
pub type Exponent = (u32, u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Exponent, Rational>,
}

/// Result of [`Poly::homogeneous_twist`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    /// The zero polynomial, homogeneous of every twist.
    Any,
    Homogeneous(u32),
    Inhomogeneous,
}

impl Twist {
    /// True when a polynomial with this twist may sit in a slot of twist `t`.
    pub fn fits(self, t: i64) -> bool {
        match self {
            Twist::Any => true,
            Twist::Homogeneous(d) => t >= 0 && d as i64 == t,
            Twist::Inhomogeneous => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("zero polynomial not allowed here")]
    ZeroInput,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, a: u32, b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        Self { terms }
    }

    /// The linear form `x + s q`.
    pub fn linear(s: &Rational) -> Self {
        Self::x() + Self::monomial(s.clone(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// The value if this is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Nonzero constant, i.e. a unit of the polynomial ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains_key(&(0, 0))
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (graded lexicographic, `x` before `q`) order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        v.sort_by(|(e1, _), (e2, _)| grlex_desc(*e1, *e2));
        v.into_iter()
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    pub fn homogeneous_twist(&self) -> Twist {
        let mut degs = self.terms.keys().map(|(a, b)| a + b);
        match degs.next() {
            None => Twist::Any,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Twist::Homogeneous(d)
                } else {
                    Twist::Inhomogeneous
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn d_dx(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((a, _), _)| *a > 0)
                .map(|((a, b), c)| ((a - 1, *b), c * Rational::from_integer((*a).into()))),
        )
    }

    pub fn d_dq(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, b), _)| *b > 0)
                .map(|((a, b), c)| ((*a, b - 1), c * Rational::from_integer((*b).into()))),
        )
    }

    pub fn eval(&self, x: &Rational, q: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for ((a, b), c) in &self.terms {
            acc += c * pow_r(x, *a) * pow_r(q, *b);
        }
        acc
    }

    /// Coefficients of `p(x, 1)` indexed by the power of `x`.
    pub fn dehomogenize(&self) -> Vec<Rational> {
        let deg = self.terms.keys().map(|(a, _)| *a).max();
        let Some(deg) = deg else {
            return Vec::new();
        };
        let mut out = vec![Rational::zero(); deg as usize + 1];
        for ((a, _), c) in &self.terms {
            out[*a as usize] += c;
        }
        trim(&mut out);
        out
    }

    /// Rebuilds the homogeneous polynomial of degree `deg` from `p(x, 1)`.
    pub fn homogenize(coeffs: &[Rational], deg: u32) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(a, c)| {
                    let a = a as u32;
                    assert!(a <= deg, "homogenize: degree {deg} too small");
                    ((a, deg - a), c.clone())
                }),
        )
    }

    /// Exact quotient of homogeneous polynomials, if `d` divides `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (Twist::Homogeneous(n), Twist::Homogeneous(m)) =
            (self.homogeneous_twist(), d.homogeneous_twist())
        else {
            return None;
        };
        if m > n {
            return None;
        }
        let (quot, rem) = univariate_divmod(&self.dehomogenize(), &d.dehomogenize());
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        if quot.len() > (n - m) as usize + 1 {
            return None;
        }
        let cand = Poly::homogenize(&quot, n - m);
        (&cand * d == *self).then_some(cand)
    }

    /// Scales so that the leading term in canonical order has coefficient one.
    /// Returns the monic polynomial and the removed leading coefficient.
    pub fn monic(&self) -> Option<(Poly, Rational)> {
        let (_, lc) = self.terms().next()?;
        let lc = lc.clone();
        Some((self.scale(&lc.recip()), lc))
    }
}

fn pow_r(x: &Rational, k: u32) -> Rational {
    num_traits::pow(x.clone(), k as usize)
}

fn grlex_desc(e1: Exponent, e2: Exponent) -> Ordering {
    let d1 = e1.0 + e1.1;
    let d2 = e2.0 + e2.1;
    d2.cmp(&d1).then(e2.0.cmp(&e1.0))
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Long division of univariate polynomials (coefficients low to high).
pub(crate) fn univariate_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem: Vec<Rational> = num.to_vec();
    trim(&mut rem);
    let mut den = den.to_vec();
    trim(&mut den);
    assert!(!den.is_empty(), "division by zero polynomial");
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead = den.last().unwrap().clone();
    let mut quot = vec![Rational::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let c = rem.last().unwrap() / &lead;
        for (i, d) in den.iter().enumerate() {
            rem[shift + i] -= &c * d;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Monic greatest common divisor of univariate polynomials.
pub(crate) fn univariate_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = univariate_divmod(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lc) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &lc;
        }
    }
    a
}

/// Determinant of the Sylvester matrix of two univariate polynomials.
pub(crate) fn univariate_resultant(a: &[Rational], b: &[Rational]) -> Rational {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return Rational::zero();
    }
    let m = a.len() - 1;
    let n = b.len() - 1;
    if m == 0 && n == 0 {
        return Rational::one();
    }
    let size = m + n;
    let mut rows = vec![vec![Rational::zero(); size]; size];
    // coefficients from the leading term down
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    crate::linalg::Matrix::from_rows(rows).determinant()
}

/// Univariate resultant in `x` of `p(x, 1)` and `r(x, 1)`.
///
/// Together with [`common_q_factor`] this decides whether two homogeneous
/// polynomials share a projective zero.
pub fn resultant_dehom(p: &Poly, r: &Poly) -> Result<Rational, PolyError> {
    if p.is_zero() || r.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    if !matches!(p.homogeneous_twist(), Twist::Homogeneous(_))
        || !matches!(r.homogeneous_twist(), Twist::Homogeneous(_))
    {
        return Err(PolyError::NotHomogeneous);
    }
    Ok(univariate_resultant(&p.dehomogenize(), &r.dehomogenize()))
}

/// True when both polynomials vanish at the point `(x : q) = (1 : 0)`,
/// i.e. both are divisible by `q`.
pub fn common_q_factor(p: &Poly, r: &Poly) -> bool {
    let vanishes_at_infinity = |f: &Poly| match f.homogeneous_twist() {
        Twist::Homogeneous(d) => f.coeff(d, 0).is_zero(),
        _ => true,
    };
    vanishes_at_infinity(p) && vanishes_at_infinity(r)
}

/// Greatest common divisor of two nonzero homogeneous polynomials, monic.
pub fn homogeneous_gcd(p: &Poly, r: &Poly) -> Poly {
    let qpow = |f: &Poly| f.terms.keys().map(|(_, b)| *b).min().unwrap_or(0);
    let k = qpow(p).min(qpow(r));
    let g = univariate_gcd(&p.dehomogenize(), &r.dehomogenize());
    let deg = g.len().saturating_sub(1) as u32;
    &Poly::homogenize(&g, deg) * &Poly::q().pow(k)
}

pub fn elementary_symmetric(s: &[Rational], k: usize) -> Result<Rational, crate::Error> {
    if k == 0 || k > s.len() {
        return Err(crate::Error::OutOfRange(format!(
            "elementary symmetric degree {k} outside 1..={}",
            s.len()
        )));
    }
    // e[j] after processing a prefix of s
    let mut e = vec![Rational::zero(); k + 1];
    e[0] = Rational::one();
    for v in s {
        for j in (1..=k).rev() {
            let add = &e[j - 1] * v;
            e[j] += add;
        }
    }
    Ok(e[k].clone())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = match (a, b) {
                (0, 0) => String::new(),
                (a, 0) => power("x", a),
                (0, b) => power("q", b),
                (a, b) => format!("{}*{}", power("x", a), power("q", b)),
            };
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn power(v: &str, k: u32) -> String {
    if k == 1 {
        v.to_string()
    } else {
        format!("{v}^{k}")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |acc, p| &acc * &p)
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::poly_parse;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn p(s: &str) -> Poly {
        poly_parse(s).unwrap()
    }

    #[test]
    fn product_of_linear_forms() {
        let f: Poly = [1, 0, -1].iter().map(|s| Poly::linear(&r(*s))).product();
        assert_eq!(f, p("x^3 - x*q^2"));
        assert_eq!(f.to_string(), "x^3 - x*q^2");
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("x+q") * &p("x^2 - x*q"), p("x^3 - x*q^2"));
        assert!((&p("x+q") * &Poly::zero()).is_zero());
        assert_eq!(&p("3*x - q/2") * &Poly::one(), p("3*x - q/2"));
    }

    #[test]
    fn twists() {
        assert_eq!(p("x^3 - x*q^2").homogeneous_twist(), Twist::Homogeneous(3));
        assert_eq!(p("x + q^2").homogeneous_twist(), Twist::Inhomogeneous);
        assert_eq!(Poly::zero().homogeneous_twist(), Twist::Any);
    }

    #[test]
    fn display_forms() {
        assert_eq!(p("-x + 1/2*q").to_string(), "-x + 1/2*q");
        assert_eq!(p("2*x*q - 3").to_string(), "2*x*q - 3");
        assert_eq!(p("q^2 + x^2").to_string(), "x^2 + q^2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn resultants() {
        let f = p("x^3 - x*q^2");
        let res = resultant_dehom(&f.d_dx(), &f.d_dq()).unwrap();
        // Res(3x^2 - 1, -2x) by Sylvester: det [[3,0,-1],[-2,0,0],[0,-2,0]] = -4
        assert_eq!(res, r(-4));
        let g = p("(x+q)^2*x");
        assert_eq!(resultant_dehom(&g.d_dx(), &g.d_dq()).unwrap(), r(0));
        assert_eq!(resultant_dehom(&p("x"), &p("q")).unwrap(), r(1));
        assert!(!common_q_factor(&p("x"), &p("q")));
        assert!(common_q_factor(&p("x*q"), &p("q^2")));
        assert_eq!(resultant_dehom(&Poly::zero(), &p("q")), Err(PolyError::ZeroInput));
    }

    #[test]
    fn gcd_of_partials_detects_double_line() {
        let g = p("(x+q)^2*(x-2*q)");
        assert_eq!(homogeneous_gcd(&g.d_dx(), &g.d_dq()), p("x+q"));
    }

    #[test]
    fn exact_division() {
        let f = p("x^3 - x*q^2");
        assert_eq!(f.div_exact(&p("x+q")), Some(p("x^2 - x*q")));
        assert_eq!(f.div_exact(&p("x + 2*q")), None);
        assert_eq!(p("q^2").div_exact(&p("q")), Some(p("q")));
        assert_eq!(p("x*q").div_exact(&p("x")), Some(p("q")));
    }

    #[test]
    fn symmetric_functions() {
        let s = [r(1), r(0), r(-1)];
        assert_eq!(elementary_symmetric(&s, 2).unwrap(), r(-1));
        assert_eq!(elementary_symmetric(&s, 3).unwrap(), r(0));
        assert_eq!(elementary_symmetric(&s, 1).unwrap(), r(0));
        assert!(elementary_symmetric(&s, 4).is_err());
        assert!(elementary_symmetric(&s, 0).is_err());
    }

    #[test]
    fn derivatives_and_euler_identity() {
        let f = p("x^4 - 5*x^2*q^2 + 4*q^4");
        let euler = &(&Poly::x() * &f.d_dx()) + &(&Poly::q() * &f.d_dq());
        assert_eq!(euler, f.scale(&r(4)));
    }
}
