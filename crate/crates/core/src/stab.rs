//! Koszul stabilizations of codimension two.

use crate::canonical::build_q_map;
use crate::mf::GradedMF;
use crate::params::DeformationParams;
use crate::poly::{common_q_factor, resultant_dehom, Poly, Twist};
use crate::polymat::PolyMatrix;
use crate::{Error, Result};

fn twist_of(p: &Poly) -> Result<i64> {
    match p.homogeneous_twist() {
        Twist::Homogeneous(d) => Ok(d as i64),
        _ => Err(Error::InvalidMF(format!("{p} is not a nonzero homogeneous polynomial"))),
    }
}

/// The rank two factorization of `f = g1 h1 + g2 h2`:
/// `q0 = [[h1, g2], [-h2, g1]]`, `q1 = [[g1, -g2], [h2, h1]]`, with
/// `F0 = (0, h - t1 - t2)` and `F1 = (h - t1, h - t2)` where `ti = deg gi`.
pub fn stab_codim2(f: &Poly, h: i64, g1: &Poly, g2: &Poly, h1: &Poly, h2: &Poly) -> Result<GradedMF> {
    if &(&(g1 * h1) + &(g2 * h2)) != f {
        return Err(Error::DecompositionMismatch);
    }
    let (t1, t2) = (twist_of(g1)?, twist_of(g2)?);
    let regular = resultant_dehom(g1, g2).map(|r| r != num_traits::Zero::zero())?
        && !common_q_factor(g1, g2);
    if !regular {
        return Err(Error::NotRegularSequence);
    }
    let q0 = PolyMatrix::from_rows(vec![vec![h1.clone(), g2.clone()], vec![-h2, g1.clone()]]);
    let q1 = PolyMatrix::from_rows(vec![vec![g1.clone(), -g2], vec![h2.clone(), h1.clone()]]);
    let out = GradedMF {
        h,
        f: f.clone(),
        f0: vec![0, h - t1 - t2],
        f1: vec![h - t1, h - t2],
        q0,
        q1,
    };
    out.check()?;
    Ok(out)
}

/// Splits `f` as `x * A + q * B`, every monomial divisible by `x` going to `A`.
pub fn monomial_split(f: &Poly) -> (Poly, Poly) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for ((i, j), c) in f.terms() {
        if i > 0 {
            a.push(((i - 1, j), c.clone()));
        } else {
            b.push(((i, j - 1), c.clone()));
        }
    }
    (Poly::from_terms(a), Poly::from_terms(b))
}

/// The stabilized residue field together with the comparison object
/// `T^{-1} tau^{h-2} C(q)` built from `q: F_{{k}} -> tau F_{{k}}`.
#[derive(Clone, Debug)]
pub struct ResidueFieldStab {
    pub stab: GradedMF,
    pub comparison: GradedMF,
    /// The cone before shifting.
    pub cone: GradedMF,
}

pub fn residue_field_stab(p: &DeformationParams, k: usize) -> Result<ResidueFieldStab> {
    let cert = p.is_generic_isolated();
    if !cert.generic {
        let reason = match &cert.common_factor {
            Some(c) => format!("partials share the factor {c}"),
            None => "partials have a common zero".to_string(),
        };
        return Err(Error::NonGeneric(reason));
    }
    let (a, b) = monomial_split(p.f());
    let stab = stab_codim2(p.f(), p.h(), &Poly::x(), &Poly::q(), &a, &b)?;
    let cone = GradedMF::cone(&build_q_map(p, k)?)?;
    let comparison = cone.tau_shift(p.h() - 2).translate_inv();
    Ok(ResidueFieldStab {
        stab,
        comparison,
        cone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::poly_parse;

    fn p(s: &str) -> Poly {
        poly_parse(s).unwrap()
    }

    #[test]
    fn residue_field_mu_two() {
        let f = p("x^3 - x*q^2");
        let m = stab_codim2(&f, 3, &p("x"), &p("q"), &p("x^2"), &p("-x*q")).unwrap();
        assert!(m.is_valid());
        assert_eq!((m.f0.clone(), m.f1.clone()), (vec![0, 1], vec![2, 2]));
        assert_eq!(monomial_split(&f), (p("x^2 - q^2"), p("0")));
    }

    #[test]
    fn other_regular_sequence() {
        let f = p("x^3 - x*q^2");
        // f = (x + q) * (x^2 - x q) + q * 0
        let m = stab_codim2(&f, 3, &p("x + q"), &p("q"), &p("x^2 - x*q"), &p("0")).unwrap();
        assert!(m.is_valid());
    }

    #[test]
    fn failures() {
        let f = p("x^3 - x*q^2");
        assert_eq!(
            stab_codim2(&f, 3, &p("x"), &p("x"), &p("x^2"), &p("-q^2")),
            Err(Error::NotRegularSequence)
        );
        assert_eq!(
            stab_codim2(&f, 3, &p("x"), &p("q"), &p("x^2"), &p("q")),
            Err(Error::DecompositionMismatch)
        );
    }

    #[test]
    fn mu_one_split() {
        let pr = DeformationParams::from_ints(&[1, -1]).unwrap();
        let r = residue_field_stab(&pr, 1).unwrap();
        assert_eq!(r.stab.q0.get(0, 0), &p("x"));
        assert_eq!(r.stab.q0.get(1, 0), &p("q"));
        assert!(r.comparison.is_valid());
        assert_eq!(r.comparison.f0, r.stab.f0);
        assert_eq!(r.comparison.f1, r.stab.f1);
    }
}
