use coxstat_core::elements::{ClassicalGroup, ClassicalType};
use coxstat_core::groups::irreducible_catalogue;
use coxstat_core::interplab::{lagrange_guess, RationalFormula};
use coxstat_core::limits::{lindeberg_uniform, llt_sup_distance};
use coxstat_core::moments::{eulerian_moments, mahonian_moments, moments_from_polynomial};
use coxstat_core::polynomials::{gf_des, gf_inv};
use coxstat_core::{CoxeterDescriptor, ExactPolynomial, IrreducibleLabel, Statistic};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn label() -> impl Strategy<Value = IrreducibleLabel> {
    let cat = irreducible_catalogue(6, 12);
    (0..cat.len()).prop_map(move |i| cat[i])
}

fn descriptor() -> impl Strategy<Value = CoxeterDescriptor> {
    prop::collection::vec(label(), 0..4).prop_map(CoxeterDescriptor::new)
}

fn small_poly() -> impl Strategy<Value = ExactPolynomial> {
    prop::collection::vec(0u64..50, 1..12)
        .prop_filter("nonzero", |c| c.iter().any(|&x| x > 0))
        .prop_map(|c| ExactPolynomial::from_u64(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gf_inv_is_multiplicative(a in descriptor(), b in descriptor()) {
        prop_assert_eq!(gf_inv(&a.times(&b)), gf_inv(&a).mul(&gf_inv(&b)));
    }

    #[test]
    fn gf_inv_counts_the_group(d in descriptor()) {
        let f = gf_inv(&d);
        prop_assert_eq!(f.eval_at_one(), d.group_order());
        prop_assert_eq!(f.degree() as u64, d.degrees().iter().map(|x| x - 1).sum::<u64>());
        prop_assert_eq!(f.reversed(), f);
    }

    #[test]
    fn order_is_multiplicative(a in descriptor(), b in descriptor()) {
        prop_assert_eq!(a.times(&b).group_order(), a.group_order() * b.group_order());
    }

    #[test]
    fn mahonian_moments_add(a in descriptor(), b in descriptor()) {
        let (ma, va) = mahonian_moments(&a);
        let (mb, vb) = mahonian_moments(&b);
        let (m, v) = mahonian_moments(&a.times(&b));
        prop_assert_eq!(m, ma + mb);
        prop_assert_eq!(v, va + vb);
    }

    #[test]
    fn closed_forms_match_polynomial_moments(l in label()) {
        let d = CoxeterDescriptor::irreducible(l);
        let s = moments_from_polynomial(&gf_inv(&d), 2).unwrap();
        prop_assert_eq!((s.mean, s.variance), mahonian_moments(&d));
        if let Ok(f) = gf_des(&d) {
            let s = moments_from_polynomial(&f, 2).unwrap();
            prop_assert_eq!((s.mean, s.variance), eulerian_moments(&d));
        }
    }

    #[test]
    fn descriptor_display_round_trips(d in descriptor()) {
        let text = d.to_string();
        let back: CoxeterDescriptor = text.parse().unwrap();
        prop_assert_eq!(back.group_order(), d.group_order());
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn summand_variances_sum_to_mahonian(d in descriptor(), num in 1i64..40) {
        prop_assume!(d.rank() > 0);
        let degrees: Vec<BigUint> = d.degrees().into_iter().map(BigUint::from).collect();
        let eps = BigRational::new(BigInt::from(num), BigInt::from(20));
        let ex = lindeberg_uniform(&degrees, &eps).unwrap();
        let sum = ex.summand_variances.iter().fold(BigRational::zero(), |acc, v| acc + v);
        prop_assert_eq!(&sum, &ex.total_variance);
        prop_assert_eq!(ex.total_variance.clone(), mahonian_moments(&d).1);
        prop_assert!(ex.lindeberg_sum >= BigRational::zero() && ex.lindeberg_sum <= BigRational::one());
        let wider = lindeberg_uniform(&degrees, &(eps * BigRational::from_integer(2.into()))).unwrap();
        prop_assert!(wider.lindeberg_sum <= ex.lindeberg_sum);
    }

    #[test]
    fn llt_distance_ignores_scale_and_shift(f in small_poly(), c in 1u64..9, k in 0usize..4) {
        prop_assume!(f.coeffs().iter().filter(|x| !x.is_zero()).count() > 1);
        let base = llt_sup_distance(&f).unwrap().distance;
        let scaled = llt_sup_distance(&f.scale(&BigUint::from(c))).unwrap().distance;
        let mut shift = vec![0u64; k + 1];
        shift[k] = 1;
        let shifted = llt_sup_distance(&f.mul(&ExactPolynomial::from_u64(&shift))).unwrap().distance;
        prop_assert!((base - scaled).abs() < 1e-12);
        prop_assert!((base - shifted).abs() < 1e-12);
    }

    #[test]
    fn lagrange_recovers_polynomials(coeffs in prop::collection::vec(-6i64..6, 1..4), extra in 0usize..3) {
        let eval = |n: i64| coeffs.iter().rev().fold(0i64, |acc, c| acc * n + c);
        let count = coeffs.len() + 3 + extra;
        let points: Vec<(i64, BigRational)> = (1..=count as i64)
            .map(|n| (n, BigRational::from_integer(eval(n).into())))
            .collect();
        let found = lagrange_guess(&points).unwrap();
        let poly: Vec<&RationalFormula> = found.iter().filter(|f| f.c == 0).collect();
        prop_assert_eq!(poly.len(), 1);
        for n in -5..30i64 {
            prop_assert_eq!(poly[0].eval(n), Some(BigRational::from_integer(eval(n).into())));
        }
        // one more point never changes the polynomial answer
        let mut more = points.clone();
        let n = count as i64 + 1;
        more.push((n, BigRational::from_integer(eval(n).into())));
        let again = lagrange_guess(&more).unwrap();
        prop_assert!(again.iter().any(|f| f == poly[0]));
    }
}

#[test]
fn descents_and_inverse_descents_are_equidistributed() {
    for kind in [ClassicalType::A, ClassicalType::B, ClassicalType::D] {
        for len in 2..=5 {
            let g = ClassicalGroup::new(kind, len);
            assert_eq!(g.tally(Statistic::Des).unwrap(), g.tally(Statistic::Ides).unwrap(), "{kind:?} {len}");
        }
    }
}

#[test]
fn product_formula_matches_enumeration() {
    for kind in [ClassicalType::A, ClassicalType::B, ClassicalType::D] {
        for len in 2..=5 {
            let g = ClassicalGroup::new(kind, len);
            let label = match kind {
                ClassicalType::A => IrreducibleLabel::a(len as u32 - 1),
                ClassicalType::B => IrreducibleLabel::b(len as u32),
                ClassicalType::D => IrreducibleLabel::d(len as u32),
            };
            let Ok(label) = label else { continue };
            let d = CoxeterDescriptor::irreducible(label);
            assert_eq!(gf_inv(&d), ExactPolynomial::from_u64(&g.tally(Statistic::Inv).unwrap()), "{label}");
        }
    }
}
