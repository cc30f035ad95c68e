use std::fmt;

use serde::{Deserialize, Serialize};

use super::form::AlgebroidForm;
use crate::error::{domain, Error, Result};
use crate::liealg::LieAlgebra;
use crate::polyform::{check_point, determinant, Polynomial};
use crate::rational::{self, Rational};
use crate::simplicial::Simplex;

/// Sign of the `[u, v]` term in the section bracket
/// `[(X, u), (Y, v)] = ([X, Y], X(v) - Y(u) ± [u, v])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketSign {
    /// `+[u, v]`.
    Standard,
    /// `-[u, v]`.
    Paper,
}

impl BracketSign {
    pub const ALL: [BracketSign; 2] = [BracketSign::Paper, BracketSign::Standard];

    pub fn factor(self) -> Rational {
        match self {
            BracketSign::Standard => rational::one(),
            BracketSign::Paper => -rational::one(),
        }
    }
}

impl fmt::Display for BracketSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BracketSign::Standard => "standard",
            BracketSign::Paper => "paper",
        })
    }
}

impl std::str::FromStr for BracketSign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" | "standard-plus" | "plus" => Ok(BracketSign::Standard),
            "paper" | "paper-minus" | "minus" => Ok(BracketSign::Paper),
            _ => Err(Error::Parse(format!("unknown bracket sign {s:?}"))),
        }
    }
}

/// A polynomial section `(X, u)` of `TΔ × g` over one simplex: a tangent field
/// in affine coordinates and a `g`-valued function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySection {
    pub simplex: Simplex,
    pub x: Vec<Polynomial>,
    pub u: Vec<Polynomial>,
}

/// `X · f = Σ_j X_j ∂_j f`.
pub fn directional_derivative(x: &[Polynomial], f: &Polynomial) -> Polynomial {
    x.iter()
        .enumerate()
        .fold(Polynomial::zero(f.nvars()), |acc, (j, xj)| &acc + &(xj * &f.partial(j)))
}

/// Bracket of polynomial vector fields `[X, Y]_i = X(Y_i) - Y(X_i)`.
pub fn vector_field_bracket(x: &[Polynomial], y: &[Polynomial]) -> Vec<Polynomial> {
    x.iter()
        .zip(y)
        .map(|(xi, yi)| &directional_derivative(x, yi) - &directional_derivative(y, xi))
        .collect()
}

/// Pointwise Lie bracket of `g`-valued polynomial functions.
pub fn pointwise_bracket(g: &LieAlgebra, u: &[Polynomial], v: &[Polynomial], nvars: usize) -> Vec<Polynomial> {
    let n = g.dim();
    let mut out = vec![Polynomial::zero(nvars); n];
    for i in 0..n {
        for j in 0..n {
            let prod = &u[i] * &v[j];
            if prod.is_zero() {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                let c = g.structure_constant(i, j, k);
                if !num_traits::Zero::is_zero(c) {
                    *o = &*o + &prod.scale(c);
                }
            }
        }
    }
    out
}

impl PolySection {
    pub fn new(simplex: Simplex, x: Vec<Polynomial>, u: Vec<Polynomial>) -> Result<Self> {
        let k = simplex.dim();
        if x.len() != k {
            return Err(domain!("tangent part has {} components on a {k}-simplex", x.len()));
        }
        if x.iter().chain(&u).any(|p| p.nvars() != k) {
            return Err(domain!("section entries must be polynomials in {k} variables"));
        }
        Ok(PolySection { simplex, x, u })
    }

    pub fn zero(simplex: Simplex, n: usize) -> Self {
        let k = simplex.dim();
        PolySection { simplex, x: vec![Polynomial::zero(k); k], u: vec![Polynomial::zero(k); n] }
    }

    fn nvars(&self) -> usize {
        self.simplex.dim()
    }

    /// The anchor: projection to the tangent part.
    pub fn anchor(&self) -> &[Polynomial] {
        &self.x
    }

    pub fn add(&self, other: &PolySection) -> Result<PolySection> {
        self.check_same(other)?;
        Ok(PolySection {
            simplex: self.simplex.clone(),
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            u: self.u.iter().zip(&other.u).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> PolySection {
        PolySection {
            simplex: self.simplex.clone(),
            x: self.x.iter().map(|p| p.scale(c)).collect(),
            u: self.u.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// `f · (X, u) = (fX, fu)`.
    pub fn mul_function(&self, f: &Polynomial) -> PolySection {
        PolySection {
            simplex: self.simplex.clone(),
            x: self.x.iter().map(|p| p * f).collect(),
            u: self.u.iter().map(|p| p * f).collect(),
        }
    }

    fn check_same(&self, other: &PolySection) -> Result<()> {
        if self.simplex != other.simplex || self.u.len() != other.u.len() {
            return Err(domain!("sections over {} and {}", self.simplex, other.simplex));
        }
        Ok(())
    }

    /// `[(X, u), (Y, v)] = ([X, Y], X(v) - Y(u) ± [u, v])`.
    pub fn bracket(&self, other: &PolySection, g: &LieAlgebra, sign: BracketSign) -> Result<PolySection> {
        self.check_same(other)?;
        if self.u.len() != g.dim() {
            return Err(domain!("section has {} g-components, algebra has dimension {}", self.u.len(), g.dim()));
        }
        let k = self.nvars();
        let uv = pointwise_bracket(g, &self.u, &other.u, k);
        let s = sign.factor();
        let u = (0..g.dim())
            .map(|m| {
                let a = directional_derivative(&self.x, &other.u[m]);
                let b = directional_derivative(&other.x, &self.u[m]);
                &(&a - &b) + &uv[m].scale(&s)
            })
            .collect();
        Ok(PolySection { simplex: self.simplex.clone(), x: vector_field_bracket(&self.x, &other.x), u })
    }
}

/// Shuffles of `0..p` into an ascending `a`-subset and its complement, with
/// the sign of the shuffle permutation.
fn shuffles(p: usize, a: usize) -> Vec<(Vec<usize>, Vec<usize>, bool)> {
    crate::polyform::index_subsets(p, a)
        .into_iter()
        .map(|s| {
            let rest: Vec<usize> = (0..p).filter(|i| !s.contains(i)).collect();
            let inversions: usize = s.iter().enumerate().map(|(t, &x)| x - t).sum();
            (s, rest, inversions % 2 == 1)
        })
        .collect()
}

/// The coefficient polynomial `x ↦ ω_x(s_1(x), ..., s_p(x))` on simplex `Δ`,
/// pairing each component `ξ_I ∧ e*_I` with the sections through the shuffle
/// product of the base and CE legs.
pub fn evaluate_symbolic(omega: &AlgebroidForm, sections: &[PolySection]) -> Result<Polynomial> {
    let p = omega.degree();
    if sections.len() != p {
        return Err(domain!("{} sections for a form of degree {p}", sections.len()));
    }
    let Some(first) = sections.first() else {
        // degree zero: the section-free value lives on a chosen simplex; use evaluate_on
        return Err(domain!("degree-zero forms need a simplex; use evaluate_on"));
    };
    evaluate_on(omega, &first.simplex, sections)
}

/// [`evaluate_symbolic`] with an explicit simplex (needed in degree zero).
pub fn evaluate_on(omega: &AlgebroidForm, delta: &Simplex, sections: &[PolySection]) -> Result<Polynomial> {
    let p = omega.degree();
    let k = delta.dim();
    let n = omega.algebroid().algebra.dim();
    if sections.len() != p {
        return Err(domain!("{} sections for a form of degree {p}", sections.len()));
    }
    if sections.iter().any(|s| &s.simplex != delta || s.u.len() != n) {
        return Err(domain!("sections must live on {delta} with {n} g-components"));
    }
    let mut total = Polynomial::zero(k);
    for (idx, xi) in omega.components() {
        let local = xi.local(delta)?;
        if local.is_zero() {
            continue;
        }
        let a = xi.degree();
        for (base, ce, odd) in shuffles(p, a) {
            let fields: Vec<Vec<Polynomial>> = base.iter().map(|&i| sections[i].x.clone()).collect();
            let base_val = local.evaluate_symbolic(&fields)?;
            if base_val.is_zero() {
                continue;
            }
            let ce_val = if idx.is_empty() {
                Polynomial::one(k)
            } else {
                let m: Vec<Vec<Polynomial>> =
                    ce.iter().map(|&i| idx.iter().map(|&c| sections[i].u[c].clone()).collect()).collect();
                determinant(&m, || Polynomial::zero(k), |x, y| x * y)
            };
            let term = &base_val * &ce_val;
            total = if odd { &total - &term } else { &total + &term };
        }
    }
    Ok(total)
}

/// Value of `ω` at a point of `Δ` (barycentric coordinates) on sections over `Δ`.
pub fn evaluate_algebroid_form(
    omega: &AlgebroidForm,
    delta: &Simplex,
    sections: &[PolySection],
    point: &[Rational],
) -> Result<Rational> {
    check_point(point, delta.dim())?;
    Ok(evaluate_on(omega, delta, sections)?.eval(&point[1..]))
}

/// A `p`-linear functional on sections over one simplex, valued in coefficient polynomials.
pub type Functional<'a> = dyn Fn(&[PolySection]) -> Result<Polynomial> + 'a;

/// The Cartan-formula differential of a functional `F` of degree `p`:
///
/// `dF(s_0..s_p) = Σ_j (-1)^j X_j·F(.. ŝ_j ..) + Σ_{i<j} (-1)^{i+j} F([s_i, s_j], .. ŝ_i .. ŝ_j ..)`.
pub fn cartan_symbolic(
    f: &Functional<'_>,
    g: &LieAlgebra,
    sign: BracketSign,
    sections: &[PolySection],
) -> Result<Polynomial> {
    let q = sections.len();
    let Some(first) = sections.first() else {
        return Err(domain!("the differential needs at least one section"));
    };
    let k = first.simplex.dim();
    let mut total = Polynomial::zero(k);
    for j in 0..q {
        let rest: Vec<PolySection> =
            sections.iter().enumerate().filter(|(t, _)| *t != j).map(|(_, s)| s.clone()).collect();
        let term = directional_derivative(&sections[j].x, &f(&rest)?);
        total = &total + &term.scale(&rational::sign(j));
    }
    for i in 0..q {
        for j in i + 1..q {
            let mut args = vec![sections[i].bracket(&sections[j], g, sign)?];
            args.extend(sections.iter().enumerate().filter(|(t, _)| *t != i && *t != j).map(|(_, s)| s.clone()));
            total = &total + &f(&args)?.scale(&rational::sign(i + j));
        }
    }
    Ok(total)
}

/// `(d^p ω)(s_1, ..., s_{p+1})` at a point, by the Cartan formula.
pub fn cartan_derivative_evaluate(
    omega: &AlgebroidForm,
    delta: &Simplex,
    sections: &[PolySection],
    point: &[Rational],
    sign: BracketSign,
) -> Result<Rational> {
    check_point(point, delta.dim())?;
    Ok(cartan_derivative_symbolic(omega, delta, sections, sign)?.eval(&point[1..]))
}

pub fn cartan_derivative_symbolic(
    omega: &AlgebroidForm,
    delta: &Simplex,
    sections: &[PolySection],
    sign: BracketSign,
) -> Result<Polynomial> {
    if sections.len() != omega.degree() + 1 {
        return Err(domain!("{} sections for the differential of a {}-form", sections.len(), omega.degree()));
    }
    let g = omega.algebroid().algebra.clone();
    let f = |s: &[PolySection]| evaluate_on(omega, delta, s);
    cartan_symbolic(&f, &g, sign, sections)
}

/// `d(dω)(s_1, ..., s_{p+2})` with both differentials taken by the Cartan formula.
pub fn cartan_d_squared_symbolic(
    omega: &AlgebroidForm,
    delta: &Simplex,
    sections: &[PolySection],
    sign: BracketSign,
) -> Result<Polynomial> {
    if sections.len() != omega.degree() + 2 {
        return Err(domain!("{} sections for the second differential of a {}-form", sections.len(), omega.degree()));
    }
    let g = omega.algebroid().algebra.clone();
    let f = |s: &[PolySection]| evaluate_on(omega, delta, s);
    let df = |s: &[PolySection]| cartan_symbolic(&f, &g, sign, s);
    cartan_symbolic(&df, &g, sign, sections)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebroid::TrivialAlgebroid;
    use crate::liealg::CEElement;
    use crate::polyform::PiecewiseForm;
    use crate::rational::{frac, int};
    use crate::simplicial::{CarrierFamily, SimplicialComplex};

    fn c(k: usize, v: i64) -> Polynomial {
        Polynomial::constant(k, int(v))
    }

    fn edge() -> Simplex {
        Simplex::new(vec![0, 1]).unwrap()
    }

    fn algebroid(maximal: &[Vec<usize>], g: LieAlgebra) -> TrivialAlgebroid {
        let k = Arc::new(SimplicialComplex::build(maximal).unwrap());
        TrivialAlgebroid::new(Arc::new(CarrierFamily::whole(&k)), Arc::new(g)).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let g = LieAlgebra::abelian(1);
        let s = PolySection::new(edge(), vec![c(1, 2)], vec![c(1, 3)]).unwrap();
        let t = PolySection::new(edge(), vec![c(1, -1)], vec![c(1, 5)]).unwrap();
        assert_eq!(s.bracket(&t, &g, BracketSign::Standard).unwrap(), PolySection::zero(edge(), 1));
        let g0 = LieAlgebra::abelian(0);
        let x = PolySection::new(edge(), vec![Polynomial::var(1, 0)], vec![]).unwrap();
        let y = PolySection::new(edge(), vec![c(1, 1)], vec![]).unwrap();
        assert_eq!(x.bracket(&y, &g0, BracketSign::Standard).unwrap().x, vec![c(1, -1)]);
        let sl2 = LieAlgebra::sl2();
        let s = PolySection::new(edge(), vec![Polynomial::var(1, 0)], vec![c(1, 1), Polynomial::var(1, 0), c(1, 0)]).unwrap();
        assert_eq!(s.bracket(&s, &sl2, BracketSign::Paper).unwrap(), PolySection::zero(edge(), 3));
        assert_eq!(s.anchor(), &[Polynomial::var(1, 0)]);
    }

    #[test]
    fn anchor_is_a_morphism() {
        let g = LieAlgebra::sl2();
        let x = Polynomial::var(1, 0);
        let s = PolySection::new(edge(), vec![&x * &x], vec![x.clone(), c(1, 1), c(1, 0)]).unwrap();
        let t = PolySection::new(edge(), vec![c(1, 3)], vec![c(1, 0), x.clone(), c(1, 2)]).unwrap();
        let b = s.bracket(&t, &g, BracketSign::Standard).unwrap();
        assert_eq!(b.anchor(), vector_field_bracket(s.anchor(), t.anchor()).as_slice());
    }

    #[test]
    fn evaluation_examples() {
        let a = algebroid(&[vec![0, 1]], LieAlgebra::abelian(1));
        let f = a.family.clone();
        let one = PiecewiseForm::constant(f.clone(), &int(1));
        let x = Polynomial::var(1, 0);
        let pt = [frac(1, 3), frac(2, 3)];
        // k(1 ⊗ e*_0) against (X, u) gives u_0
        let w = crate::algebroid::AlgebroidForm::kunneth(&a, &one, &CEElement::basis(1, vec![0])).unwrap();
        let s = PolySection::new(edge(), vec![c(1, 7)], vec![&x * &x]).unwrap();
        assert_eq!(evaluate_algebroid_form(&w, &edge(), std::slice::from_ref(&s), &pt).unwrap(), frac(4, 9));
        // k(dx ⊗ e*_0) against ((X,u),(Y,v)) gives dx(X) v - dx(Y) u
        let dx = PiecewiseForm::hat(f.clone(), 1).d();
        let w = crate::algebroid::AlgebroidForm::kunneth(&a, &dx, &CEElement::basis(1, vec![0])).unwrap();
        let t = PolySection::new(edge(), vec![x.clone()], vec![c(1, 5)]).unwrap();
        let expected = int(7) * int(5) - frac(2, 3) * frac(4, 9);
        assert_eq!(evaluate_algebroid_form(&w, &edge(), &[s.clone(), t], &pt).unwrap(), expected);
        // k(ξ ⊗ 1) ignores the g-parts
        let w = crate::algebroid::AlgebroidForm::kunneth(&a, &dx, &CEElement::one(1)).unwrap();
        assert_eq!(evaluate_algebroid_form(&w, &edge(), std::slice::from_ref(&s), &pt).unwrap(), int(7));
        assert!(evaluate_algebroid_form(&w, &edge(), &[], &pt).is_err());
    }

    #[test]
    fn cartan_examples() {
        let a = algebroid(&[vec![0, 1]], LieAlgebra::abelian(1));
        let f = a.family.clone();
        let x = Polynomial::var(1, 0);
        let pt = [frac(1, 4), frac(3, 4)];
        // degree zero: directional derivative
        let h = PiecewiseForm::hat(f.clone(), 1).wedge(&PiecewiseForm::hat(f.clone(), 1)).unwrap();
        let w = crate::algebroid::AlgebroidForm::kunneth(&a, &h, &CEElement::one(1)).unwrap();
        let s = PolySection::new(edge(), vec![c(1, 3)], vec![x.clone()]).unwrap();
        assert_eq!(cartan_derivative_evaluate(&w, &edge(), std::slice::from_ref(&s), &pt, BracketSign::Standard).unwrap(), int(3) * int(2) * frac(3, 4));
        // abelian CE one-form with constant sections
        let one = PiecewiseForm::constant(f.clone(), &int(1));
        let w = crate::algebroid::AlgebroidForm::kunneth(&a, &one, &CEElement::basis(1, vec![0])).unwrap();
        let s = PolySection::new(edge(), vec![c(1, 3)], vec![c(1, 2)]).unwrap();
        let t = PolySection::new(edge(), vec![c(1, 1)], vec![c(1, -4)]).unwrap();
        assert_eq!(cartan_derivative_evaluate(&w, &edge(), &[s, t], &pt, BracketSign::Standard).unwrap(), int(0));
    }

    #[test]
    fn shuffle_signs() {
        let s = shuffles(3, 1);
        assert_eq!(s, vec![(vec![0], vec![1, 2], false), (vec![1], vec![0, 2], true), (vec![2], vec![0, 1], false)]);
        assert_eq!(shuffles(2, 2), vec![(vec![0, 1], vec![], false)]);
    }

    #[test]
    fn sign_parsing() {
        assert_eq!("paper".parse::<BracketSign>().unwrap(), BracketSign::Paper);
        assert_eq!("standard-plus".parse::<BracketSign>().unwrap(), BracketSign::Standard);
        assert!("auto".parse::<BracketSign>().is_err());
    }
}
