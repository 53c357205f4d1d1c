//! Randomized invariants.

use gradmf::canonical::{build_phi, build_phibar};
use gradmf::hom::{general_window, hom_basis};
use gradmf::linalg::Matrix;
use gradmf::mf::build_f_i;
use gradmf::oracle::dense_hom_dim;
use gradmf::*;
use num_traits::Zero;
use proptest::prelude::*;

const CASES: u32 = 256;

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(CASES)
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..4, 0u32..4), rational()), 0..5).prop_map(Poly::from_terms)
}

fn homogeneous(deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), (deg + 1) as usize).prop_map(move |cs| {
        Poly::from_terms(cs.into_iter().enumerate().map(|(a, c)| ((deg - a as u32, a as u32), c)))
    })
}

/// Distinct integers summing to zero, `mu + 1` of them, `mu` in `1..=3`.
fn params() -> impl Strategy<Value = DeformationParams> {
    (1usize..=3, prop::collection::btree_set(-6i64..=6, 4))
        .prop_filter_map("need mu distinct values", |(mu, vals)| {
            let mut s: Vec<i64> = vals.into_iter().take(mu).collect();
            let last = -s.iter().sum::<i64>();
            if s.contains(&last) {
                return None;
            }
            s.push(last);
            DeformationParams::from_ints(&s).ok()
        })
}

fn subset_of(n: usize) -> impl Strategy<Value = SubsetIndex> {
    prop::collection::btree_set(1..=n, 1..n)
        .prop_map(move |m| SubsetIndex::new(m.into_iter().collect(), n).unwrap())
}

fn rank_one() -> impl Strategy<Value = (DeformationParams, SubsetIndex, i64)> {
    params().prop_flat_map(|p| {
        let n = p.h() as usize;
        (Just(p), subset_of(n), -3i64..=3)
    })
}

fn pair() -> impl Strategy<Value = (DeformationParams, SubsetIndex, SubsetIndex)> {
    params().prop_flat_map(|p| {
        let n = p.h() as usize;
        (Just(p), subset_of(n), subset_of(n))
    })
}

#[derive(Clone, Debug)]
enum Op {
    Tau(i64),
    T,
    TInv,
    SumWith(usize, i64),
    Cone(usize, usize, i64),
    Reduce,
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        (-3i64..=3).prop_map(Op::Tau),
        Just(Op::T),
        Just(Op::TInv),
        (0usize..16, -2i64..=2).prop_map(|(k, a)| Op::SumWith(k, a)),
        (0usize..16, 0usize..16, -2i64..=2).prop_map(|(i, j, a)| Op::Cone(i, j, a)),
        Just(Op::Reduce),
    ]
}

fn nth_subset(p: &DeformationParams, k: usize) -> SubsetIndex {
    let all = SubsetIndex::all_proper(p.h() as usize);
    all[k % all.len()].clone()
}

/// Applies `op`, keeping ranks small.
fn apply(p: &DeformationParams, x: &GradedMF, op: &Op) -> GradedMF {
    match op {
        Op::Tau(a) => x.tau_shift(*a),
        Op::T => x.translate(),
        Op::TInv => x.translate_inv(),
        Op::SumWith(k, a) if x.rank() < 4 => {
            x.direct_sum(&build_f_i(p, &nth_subset(p, *k), *a).unwrap()).unwrap()
        }
        Op::Cone(i, j, a) if x.rank() < 4 => {
            let (i, j) = (nth_subset(p, *i), nth_subset(p, *j));
            let m = if i.is_subset(&j) && i != j {
                build_phi(p, &i, &j).unwrap()
            } else if j.is_subset(&i) && i != j {
                build_phibar(p, &i, &j).unwrap()
            } else {
                return x.clone();
            };
            GradedMF::cone(&m.tau_shift(*a)).unwrap()
        }
        Op::Reduce => x.reduce().0,
        _ => x.clone(),
    }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn products_evaluate_pointwise(a in poly(), b in poly(), x in rational(), q in rational()) {
        prop_assert_eq!((&a * &b).eval(&x, &q), a.eval(&x, &q) * b.eval(&x, &q));
        prop_assert_eq!((&a + &b).eval(&x, &q), a.eval(&x, &q) + b.eval(&x, &q));
    }

    #[test]
    fn twists_add((d, a) in (0u32..4).prop_flat_map(|d| (Just(d), homogeneous(d))),
                  (e, b) in (0u32..4).prop_flat_map(|e| (Just(e), homogeneous(e)))) {
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!((&a * &b).homogeneous_twist(), Twist::Homogeneous(d + e));
        }
    }

    #[test]
    fn poly_display_parses_back(a in poly()) {
        prop_assert_eq!(poly_parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn rational_display_parses_back(c in rational()) {
        prop_assert_eq!(parse_rational(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn kernels_are_kernels(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..5)) {
        let n = rows.len();
        let m = Matrix::from_rows_sized(rows.iter().map(|r0| r0.iter().map(|v| r(*v)).collect()).collect(), n, 5);
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.len(), 5);
        prop_assert_eq!(m.rank(), m.rank_alt());
        for v in &k {
            for i in 0..n {
                let s: Rational = (0..5).map(|j| m.get(i, j) * &v[j]).sum();
                prop_assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn functors_preserve_identities((p, i, b) in rank_one(), ops in prop::collection::vec(op(), 1..6)) {
        let mut x = build_f_i(&p, &i, b).unwrap();
        for o in &ops {
            x = apply(&p, &x, o);
            prop_assert!(x.is_valid(), "{:?} after {:?}", x.validate(), o);
        }
    }

    #[test]
    fn translation_squared_is_tau_h((p, i, b) in rank_one(), ops in prop::collection::vec(op(), 0..4)) {
        let mut x = build_f_i(&p, &i, b).unwrap();
        for o in &ops {
            x = apply(&p, &x, o);
        }
        prop_assert_eq!(x.translate().translate(), x.tau_shift(p.h()));
        prop_assert_eq!(x.translate().translate_inv(), x.clone());
        prop_assert_eq!(x.shift_power(-3).shift_power(3), x);
    }

    #[test]
    fn phase_laws((p, i, b) in rank_one(), n in -4i64..=4) {
        let x = build_f_i(&p, &i, b).unwrap();
        let ph = x.phase().unwrap();
        prop_assert_eq!(x.tau_shift(n).phase().unwrap(), &ph + r(2 * n));
        prop_assert_eq!(x.translate().phase().unwrap(), &ph + r(p.h()));
        prop_assert_eq!(ph, r(2 * b + i.len() as i64));
    }

    #[test]
    fn reduce_is_idempotent((p, i, b) in rank_one(), ops in prop::collection::vec(op(), 1..6)) {
        let mut x = build_f_i(&p, &i, b).unwrap();
        for o in &ops {
            x = apply(&p, &x, o);
        }
        let (y, _) = x.reduce();
        prop_assert!(y.is_reduced());
        prop_assert!(y.is_valid());
        let (z, k) = y.reduce();
        prop_assert_eq!(k, 0);
        prop_assert_eq!(z, y);
    }

    #[test]
    fn normal_form_round_trip((p, i, b) in rank_one(), c in rational()) {
        let x = build_f_i(&p, &i, b).unwrap();
        prop_assert_eq!(x.rank1_normal_form(&p).unwrap(), (i.clone(), b));
        if !c.is_zero() {
            let y = GradedMF { q0: x.q0.scale(&c), q1: x.q1.scale(&c.recip()), ..x.clone() };
            prop_assert_eq!(y.rank1_normal_form(&p).unwrap(), (i.clone(), b));
        }
        // T F_I = tau^{|I|} F_{I^c}
        let n = p.h() as usize;
        let t = x.translate().rank1_normal_form(&p).unwrap();
        prop_assert_eq!(t, (i.complement(n), b + i.len() as i64));
    }

    #[test]
    fn complements_and_de_morgan(a in subset_of(4), b in subset_of(4)) {
        prop_assert_eq!(a.complement(4).complement(4), a.clone());
        prop_assert_eq!(a.union(&b).complement(4), a.complement(4).intersection(&b.complement(4)));
        prop_assert_eq!(a.is_subset(&b), b.complement(4).is_subset(&a.complement(4)));
    }

    #[test]
    fn genericity_matches_distinctness(vals in prop::collection::vec(-4i64..=4, 2..5), num in 1i64..=3) {
        let s: Vec<Rational> = vals.iter().map(|v| Rational::new((*v).into(), num.into())).collect();
        let p = DeformationParams::degenerate(s.clone()).unwrap();
        let distinct = (0..s.len()).all(|i| (0..i).all(|j| s[i] != s[j]));
        prop_assert_eq!(p.is_generic_isolated().generic, distinct);
    }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn hom_tables_shift_invariant((p, i, j) in pair(), a in -2i64..=2, n in -1i64..=4) {
        let f = build_f_i(&p, &i, 0).unwrap();
        let g = build_f_i(&p, &j, 0).unwrap();
        let d = hom_dim(&f, &g, n).unwrap();
        prop_assert_eq!(hom_dim(&f.tau_shift(a), &g.tau_shift(a), n).unwrap(), d);
        prop_assert_eq!(hom_dim(&f.translate(), &g.translate(), n).unwrap(), d);
        // moving tau from the target into the twist
        prop_assert_eq!(hom_dim(&f, &g.tau_shift(a), n - a).unwrap(), d);
    }

    #[test]
    fn dense_oracle_agrees((p, i, j) in pair(), b in -1i64..=1, n in -2i64..=5) {
        let f = build_f_i(&p, &i, 0).unwrap();
        let g = build_f_i(&p, &j, b).unwrap();
        prop_assert_eq!(hom_dim(&f, &g, n).unwrap(), dense_hom_dim(&f, &g, n).unwrap());
    }

    #[test]
    fn dense_oracle_on_cones((p, i, j) in pair(), k in 0usize..16, n in -1i64..=3) {
        let (src, tgt) = if i.is_subset(&j) { (i, j) } else { (j, i) };
        if src == tgt || !src.is_subset(&tgt) {
            return Ok(());
        }
        let c = GradedMF::cone(&build_phi(&p, &src, &tgt).unwrap()).unwrap();
        let g = build_f_i(&p, &nth_subset(&p, k), 0).unwrap();
        prop_assert_eq!(hom_dim(&c, &g, n).unwrap(), dense_hom_dim(&c, &g, n).unwrap());
        prop_assert_eq!(hom_dim(&g, &c, n).unwrap(), dense_hom_dim(&g, &c, n).unwrap());
    }

    #[test]
    fn rank_one_hom_vanishing((p, i, j) in pair()) {
        let mu = p.mu() as i64;
        let f = build_f_i(&p, &i, 0).unwrap();
        let g = build_f_i(&p, &j, 0).unwrap();
        let w = general_window(&f, &g);
        for n in w.twists() {
            let d = hom_dim(&f, &g, n).unwrap();
            if i == j && (n < 0 || n >= mu) {
                prop_assert_eq!(d, 0, "self hom at {}", n);
            }
            if i.is_disjoint(&j) {
                prop_assert_eq!(d, 0, "disjoint at {}", n);
            }
        }
        let tf = f.translate();
        for n in general_window(&f, &tf).twists() {
            prop_assert_eq!(hom_dim(&f, &tf, n).unwrap(), 0, "shifted self hom at {}", n);
        }
    }

    #[test]
    fn complement_duality((p, i, j) in pair(), n in -2i64..=4) {
        let n_all = p.h() as usize;
        let f = build_f_i(&p, &i, 0).unwrap();
        let g = build_f_i(&p, &j, 0).unwrap();
        let fc = build_f_i(&p, &i.complement(n_all), 0).unwrap();
        let gc = build_f_i(&p, &j.complement(n_all), 0).unwrap();
        let shift = j.len() as i64 - i.len() as i64;
        prop_assert_eq!(hom_dim(&f, &g, n).unwrap(), hom_dim(&fc, &gc, n + shift).unwrap());
    }

    #[test]
    fn basis_elements_are_nonzero_classes((p, i, j) in pair(), n in 0i64..=3) {
        let f = build_f_i(&p, &i, 0).unwrap();
        let g = build_f_i(&p, &j, 0).unwrap();
        let basis = hom_basis(&f, &g, n).unwrap();
        prop_assert_eq!(basis.len(), hom_dim(&f, &g, n).unwrap());
        for m in &basis {
            prop_assert!(m.validate().is_empty());
            prop_assert!(is_nullhomotopic(m).unwrap().is_none());
        }
    }

    #[test]
    fn cones_of_canonical_maps((p, i, j) in pair(), a in -2i64..=2) {
        let n = p.h() as usize;
        let (m, expect) = if i.is_subset(&j) && i != j {
            (build_phi(&p, &i, &j).unwrap(), (i.complement(n).intersection(&j), i.len() as i64))
        } else if j.is_subset(&i) && i != j {
            (build_phibar(&p, &i, &j).unwrap(), (i.complement(n).union(&j), i.len() as i64 - j.len() as i64))
        } else {
            return Ok(());
        };
        let c = GradedMF::cone(&m.tau_shift(a)).unwrap().reduce().0;
        prop_assert_eq!(c.rank(), 1);
        prop_assert_eq!(c.rank1_normal_form(&p).unwrap(), (expect.0, expect.1 + a));
    }
}
