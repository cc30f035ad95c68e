//! Seeded generators of random forms, sections and points with small rational
//! coefficients.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebroid::{AlgebroidForm, PolySection, TrivialAlgebroid};
use crate::liealg::CEElement;
use crate::polyform::{index_subsets, monomials_up_to, PiecewiseForm, Polynomial};
use crate::rational::{frac, Rational};
use crate::simplicial::{CarrierFamily, Simplex};

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    let n = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    frac(n, rng.gen_range(1..=3))
}

/// A polynomial of total degree at most `max_degree`; each monomial appears
/// with probability one half.
pub fn polynomial<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32) -> Polynomial {
    let mut terms = Vec::new();
    for e in monomials_up_to(nvars, max_degree) {
        if rng.gen_bool(0.5) {
            terms.push((e, nonzero_rational(rng)));
        }
    }
    Polynomial::from_terms(nvars, terms)
}

/// A random member of the family of dimension at least `min_dim`, if any.
pub fn member<R: Rng>(rng: &mut R, family: &CarrierFamily, min_dim: usize) -> Option<Simplex> {
    let candidates: Vec<&Simplex> = family.members().filter(|s| s.dim() >= min_dim).collect();
    candidates.choose(rng).map(|s| (*s).clone())
}

/// A compatible piecewise `p`-form: a sum of terms
/// `c · h_{a_1} ⋯ h_{a_m} dh_{b_1} ∧ ⋯ ∧ dh_{b_p}` of hat functions with
/// `m ≤ max_degree`, built on vertices of random members so that terms are
/// usually non-zero.
pub fn piecewise_form<R: Rng>(rng: &mut R, family: &Arc<CarrierFamily>, degree: usize, max_degree: u32) -> PiecewiseForm {
    let mut out = PiecewiseForm::zero(family.clone(), degree);
    let Some(_) = member(rng, family, degree) else { return out };
    for _ in 0..rng.gen_range(1..=3) {
        let s = member(rng, family, degree).expect("checked above");
        let verts = s.vertices();
        let pick = |rng: &mut R| *verts.choose(rng).expect("non-empty simplex");
        let mut term = PiecewiseForm::constant(family.clone(), &nonzero_rational(rng));
        for _ in 0..rng.gen_range(0..=max_degree) {
            let v = pick(rng);
            term = term.wedge(&PiecewiseForm::hat(family.clone(), v)).expect("same family");
        }
        for _ in 0..degree {
            let v = pick(rng);
            term = term.wedge(&PiecewiseForm::hat(family.clone(), v).d()).expect("same family");
        }
        out = out.add(&term).expect("same family and degree");
    }
    out
}

/// A random element of `Λ^b g*` with small coefficients.
pub fn ce_element<R: Rng>(rng: &mut R, n: usize, b: usize) -> CEElement {
    let comps = index_subsets(n, b).into_iter().map(|i| (i, small_rational(rng))).collect::<Vec<_>>();
    CEElement::new(n, b, comps).expect("indices from index_subsets")
}

/// A random algebroid form of total degree `p`: a sum over the possible CE
/// degrees of Künneth images of random pure tensors.
pub fn algebroid_form<R: Rng>(rng: &mut R, algebroid: &TrivialAlgebroid, degree: usize, max_degree: u32) -> AlgebroidForm {
    let n = algebroid.algebra.dim();
    let mut out = AlgebroidForm::zero(algebroid, degree);
    for b in 0..=degree.min(n) {
        let xi = piecewise_form(rng, &algebroid.family, degree - b, max_degree);
        let eta = ce_element(rng, n, b);
        let term = AlgebroidForm::kunneth(algebroid, &xi, &eta).expect("same algebroid");
        out = out.add(&term).expect("same degree");
    }
    out
}

/// A polynomial section over `simplex` with entries of degree at most `max_degree`.
pub fn section<R: Rng>(rng: &mut R, simplex: &Simplex, n: usize, max_degree: u32) -> PolySection {
    let k = simplex.dim();
    let x = (0..k).map(|_| polynomial(rng, k, max_degree)).collect();
    let u = (0..n).map(|_| polynomial(rng, k, max_degree)).collect();
    PolySection::new(simplex.clone(), x, u).expect("shapes match")
}

/// A point of the closed `k`-simplex in barycentric coordinates.
pub fn point<R: Rng>(rng: &mut R, k: usize) -> Vec<Rational> {
    let mut w: Vec<i64> = (0..=k).map(|_| rng.gen_range(0..=5)).collect();
    if w.iter().all(|&x| x == 0) {
        w[rng.gen_range(0..=k)] = 1;
    }
    let total: i64 = w.iter().sum();
    w.into_iter().map(|x| frac(x, total)).collect()
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::polyform::check_point;
    use crate::simplicial::SimplicialComplex;

    #[test]
    fn generated_forms_are_compatible_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let k = Arc::new(SimplicialComplex::build(&[vec![0, 1, 2], vec![1, 2, 3]]).unwrap());
        let f = Arc::new(CarrierFamily::whole(&k));
        let mut nonzero = 0;
        for i in 0..60 {
            let p = i % 3;
            let w = piecewise_form(&mut rng, &f, p, 2);
            w.validate().unwrap();
            assert!(w.poly_degree().unwrap_or(0) <= 2);
            nonzero += usize::from(!w.is_zero());
        }
        assert!(nonzero > 40);
        for _ in 0..50 {
            check_point(&point(&mut rng, 2), 2).unwrap();
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let k = Arc::new(SimplicialComplex::build(&[vec![0, 1, 2]]).unwrap());
        let f = Arc::new(CarrierFamily::whole(&k));
        let a = piecewise_form(&mut ChaCha8Rng::seed_from_u64(3), &f, 1, 2);
        let b = piecewise_form(&mut ChaCha8Rng::seed_from_u64(3), &f, 1, 2);
        assert_eq!(a, b);
    }
}
