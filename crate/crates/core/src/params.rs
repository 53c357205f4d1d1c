//! Deformation parameters `s_1, ..., s_{mu+1}` and the polynomial they define.

use num_traits::Zero;
use serde::Serialize;

use crate::poly::{common_q_factor, elementary_symmetric, homogeneous_gcd, resultant_dehom, Poly};
use crate::subset::SubsetIndex;
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationParams {
    s: Vec<Rational>,
    f: Poly,
    t: Vec<Rational>,
}

/// Outcome of [`DeformationParams::is_generic_isolated`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityCertificate {
    pub generic: bool,
    /// Resultant in `x` of the dehomogenized partial derivatives.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub resultant: Rational,
    /// Both partials divisible by `q`.
    pub common_q: bool,
    /// Common factor of the partials, when they share one.
    #[serde(serialize_with = "crate::report::ser_opt_poly")]
    pub common_factor: Option<Poly>,
}

impl DeformationParams {
    /// Validated constructor: roots pairwise distinct and, unless
    /// `relax_sum`, summing to zero.
    pub fn new(s: Vec<Rational>, relax_sum: bool) -> Result<Self> {
        if s.len() < 2 {
            return Err(Error::OutOfRange(format!(
                "need at least two roots, got {}",
                s.len()
            )));
        }
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if s[i] == s[j] {
                    return Err(Error::DuplicateRoot { i: i + 1, j: j + 1 });
                }
            }
        }
        let sum: Rational = s.iter().sum();
        if !relax_sum && !sum.is_zero() {
            return Err(Error::NonzeroSum(sum));
        }
        Ok(Self::build(s))
    }

    /// Skips every check except the length; used to inspect non-generic
    /// parameters.
    pub fn degenerate(s: Vec<Rational>) -> Result<Self> {
        if s.len() < 2 {
            return Err(Error::OutOfRange(format!(
                "need at least two roots, got {}",
                s.len()
            )));
        }
        Ok(Self::build(s))
    }

    /// Integer roots, validated.
    pub fn from_ints(s: &[i64]) -> Result<Self> {
        Self::new(s.iter().map(|&v| Rational::from_integer(v.into())).collect(), false)
    }

    fn build(s: Vec<Rational>) -> Self {
        let f = s.iter().map(Poly::linear).product();
        let t = (2..=s.len())
            .map(|k| elementary_symmetric(&s, k).expect("k in range"))
            .collect();
        DeformationParams { s, f, t }
    }

    pub fn mu(&self) -> usize {
        self.s.len() - 1
    }

    /// `h = mu + 1`, the twist of `f`.
    pub fn h(&self) -> i64 {
        self.s.len() as i64
    }

    pub fn s(&self) -> &[Rational] {
        &self.s
    }

    /// `t_i = e_{i+1}(s)` for `i = 1..mu`.
    pub fn t(&self) -> &[Rational] {
        &self.t
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    /// `x + s_i q`, 1-based.
    pub fn factor(&self, i: usize) -> Poly {
        Poly::linear(&self.s[i - 1])
    }

    /// Product of the factors indexed by `subset`.
    pub fn product(&self, subset: &SubsetIndex) -> Poly {
        subset.members().iter().map(|&i| self.factor(i)).product()
    }

    /// Decides whether the partials of `f` have a common projective zero.
    pub fn is_generic_isolated(&self) -> GenericityCertificate {
        let fx = self.f.d_dx();
        let fq = self.f.d_dq();
        let resultant = if fx.is_zero() || fq.is_zero() {
            Rational::zero()
        } else {
            resultant_dehom(&fx, &fq).expect("partials are homogeneous and nonzero")
        };
        let common_q = common_q_factor(&fx, &fq);
        let generic = !resultant.is_zero() && !common_q;
        let common_factor = if generic || fx.is_zero() || fq.is_zero() {
            None
        } else {
            Some(homogeneous_gcd(&fx, &fq))
        };
        GenericityCertificate {
            generic,
            resultant,
            common_q,
            common_factor,
        }
    }

    /// Pairwise distinct roots.
    pub fn roots_distinct(&self) -> bool {
        (0..self.s.len()).all(|i| (i + 1..self.s.len()).all(|j| self.s[i] != self.s[j]))
    }
}
