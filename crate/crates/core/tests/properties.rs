//! Randomized identities over the built-in fixtures. Each proptest case draws
//! a fixture pair and a seed, then builds its inputs with the crate's own
//! generators.

use std::sync::Arc;

use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pscoh::algebroid::{
    cartan_derivative_evaluate, evaluate_algebroid_form, AlgebroidForm, BracketSign, PolySection, TrivialAlgebroid,
};
use pscoh::fixtures;
use pscoh::liealg::ce_differential;
use pscoh::mv::build_split;
use pscoh::rational::Rational;
use pscoh::simplicial::{CarrierFamily, Simplex};
use pscoh::verify::random;

const COMPLEXES: [&str; 3] = ["circle", "sphere", "solid_simplex"];
const ALGEBRAS: [&str; 4] = ["abelian1", "abelian2", "sl2", "solvable2"];

fn algebroid(c: usize, g: usize) -> TrivialAlgebroid {
    let k = fixtures::complex(COMPLEXES[c]).unwrap();
    TrivialAlgebroid::new(Arc::new(CarrierFamily::whole(&k)), fixtures::algebra(ALGEBRAS[g]).unwrap()).unwrap()
}

fn sign(p: usize) -> Rational {
    if p.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 200, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn cartan_formula_equals_tensor_differential(c in 0..3usize, g in 0..4usize, seed: u64) {
        let a = algebroid(c, g);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let n = a.algebra.dim();
        let p = r.gen_range(0..=2);
        let delta = random::member(&mut r, &a.family, 1).unwrap();
        let omega = random::algebroid_form(&mut r, &a, p, 2);
        let sections: Vec<PolySection> = (0..=p).map(|_| random::section(&mut r, &delta, n, 2)).collect();
        let point = random::point(&mut r, delta.dim());
        let cartan = cartan_derivative_evaluate(&omega, &delta, &sections, &point, BracketSign::Standard).unwrap();
        let tensor = evaluate_algebroid_form(&omega.tensor_differential(), &delta, &sections, &point).unwrap();
        prop_assert_eq!(cartan, tensor);
    }

    #[test]
    fn tensor_differential_squares_to_zero(c in 0..3usize, g in 0..4usize, p in 0..4usize, seed: u64) {
        let a = algebroid(c, g);
        let omega = random::algebroid_form(&mut ChaCha8Rng::seed_from_u64(seed), &a, p, 2);
        let dd = omega.tensor_differential().tensor_differential();
        prop_assert!(dd.is_zero());
        prop_assert!(omega.tensor_differential().validate().is_ok());
    }

    #[test]
    fn tensor_differential_is_a_graded_derivation(c in 0..3usize, g in 0..4usize, p in 0..3usize, q in 0..3usize, seed: u64) {
        let a = algebroid(c, g);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let x = random::algebroid_form(&mut r, &a, p, 1);
        let y = random::algebroid_form(&mut r, &a, q, 1);
        let lhs = x.wedge(&y).unwrap().tensor_differential();
        let rhs = x
            .tensor_differential()
            .wedge(&y)
            .unwrap()
            .add(&x.wedge(&y.tensor_differential()).unwrap().scale(&sign(p)))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kunneth_map_is_multiplicative(c in 0..3usize, g in 0..4usize, seed: u64) {
        let a = algebroid(c, g);
        let n = a.algebra.dim();
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (p, b, p2, b2) = (r.gen_range(0..=1), r.gen_range(0..=n.min(1)), r.gen_range(0..=1), r.gen_range(0..=n.min(1)));
        let xi = random::piecewise_form(&mut r, &a.family, p, 1);
        let eta = random::ce_element(&mut r, n, b);
        let xi2 = random::piecewise_form(&mut r, &a.family, p2, 1);
        let eta2 = random::ce_element(&mut r, n, b2);
        let lhs = AlgebroidForm::kunneth(&a, &xi, &eta).unwrap().wedge(&AlgebroidForm::kunneth(&a, &xi2, &eta2).unwrap()).unwrap();
        let rhs = AlgebroidForm::kunneth(&a, &xi.wedge(&xi2).unwrap(), &eta.wedge(&eta2).unwrap())
            .unwrap()
            .scale(&sign(b * p2));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kunneth_map_commutes_with_differentials(c in 0..3usize, g in 0..4usize, seed: u64) {
        let a = algebroid(c, g);
        let n = a.algebra.dim();
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (p, b) = (r.gen_range(0..=2), r.gen_range(0..=n));
        let xi = random::piecewise_form(&mut r, &a.family, p, 2);
        let eta = random::ce_element(&mut r, n, b);
        let lhs = AlgebroidForm::kunneth(&a, &xi, &eta).unwrap().tensor_differential();
        let rhs = AlgebroidForm::kunneth(&a, &xi.d(), &eta)
            .unwrap()
            .add(&AlgebroidForm::kunneth(&a, &xi, &ce_differential(&a.algebra, &eta).unwrap()).unwrap().scale(&sign(p)))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn section_bracket_is_a_lie_bracket_under_both_signs(g in 0..4usize, s in 0..2usize, seed: u64) {
        let alg = fixtures::algebra(ALGEBRAS[g]).unwrap();
        let sign = BracketSign::ALL[s];
        let n = alg.dim();
        let delta = Simplex::new(vec![0, 1, 2]).unwrap();
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<PolySection> = (0..3).map(|_| random::section(&mut r, &delta, n, 2)).collect();
        let br = |u: &PolySection, v: &PolySection| u.bracket(v, &alg, sign).unwrap();
        let zero = PolySection::zero(delta.clone(), n);
        prop_assert_eq!(br(&x[0], &x[1]).add(&br(&x[1], &x[0])).unwrap(), zero.clone());
        let jacobi = br(&x[0], &br(&x[1], &x[2]))
            .add(&br(&x[1], &br(&x[2], &x[0])))
            .unwrap()
            .add(&br(&x[2], &br(&x[0], &x[1])))
            .unwrap();
        prop_assert_eq!(jacobi, zero);
    }

    #[test]
    fn restrictions_to_the_overlap_agree(c in 0..2usize, g in 0..4usize, p in 0..3usize, seed: u64) {
        let k = fixtures::complex(COMPLEXES[c]).unwrap();
        let verts = k.vertices();
        let (last, first) = verts.split_last().unwrap();
        let u: Vec<Simplex> = first.iter().map(|&v| Simplex::vertex(v)).collect();
        let split = build_split(&k, &u, &[Simplex::vertex(*last)]).unwrap();
        let a = TrivialAlgebroid::new(split.total.clone(), fixtures::algebra(ALGEBRAS[g]).unwrap()).unwrap();
        let omega = random::algebroid_form(&mut ChaCha8Rng::seed_from_u64(seed), &a, p, 2);
        let via_u = omega.restrict_to_family(&split.u).unwrap().restrict_to_family(&split.uv).unwrap();
        let via_v = omega.restrict_to_family(&split.v).unwrap().restrict_to_family(&split.uv).unwrap();
        prop_assert_eq!(via_u.sub(&via_v).unwrap().is_zero(), true);
        let d_then_restrict = omega.tensor_differential().restrict_to_family(&split.uv).unwrap();
        let restrict_then_d = omega.restrict_to_family(&split.uv).unwrap().tensor_differential();
        prop_assert_eq!(d_then_restrict, restrict_then_d);
    }
}
