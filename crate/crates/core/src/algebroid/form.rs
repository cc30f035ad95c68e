use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::liealg::{ce_differential, CEElement, LieAlgebra};
use crate::polyform::{merge_indices, same_family, IndexSet, PiecewiseForm, PiecewiseFormJson};
use crate::rational::{self, Rational};
use crate::simplicial::{CarrierFamily, Subdivision};

/// The trivial Lie algebroid `TΔ × g` over every member of a carrier family.
#[derive(Clone, Debug)]
pub struct TrivialAlgebroid {
    pub family: Arc<CarrierFamily>,
    pub algebra: Arc<LieAlgebra>,
}

impl TrivialAlgebroid {
    pub fn new(family: Arc<CarrierFamily>, algebra: Arc<LieAlgebra>) -> Result<Self> {
        algebra.ensure_valid()?;
        Ok(TrivialAlgebroid { family, algebra })
    }

    /// The same algebra over another family.
    pub fn over(&self, family: Arc<CarrierFamily>) -> Self {
        TrivialAlgebroid { family, algebra: self.algebra.clone() }
    }

    pub fn same_as(&self, other: &TrivialAlgebroid) -> bool {
        same_family(&self.family, &other.family)
            && (Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra)
    }
}

/// A `Λg*`-valued piecewise form `Σ_I ξ_I ∧ e*_I` of total degree `p`, stored
/// by CE monomial: the component at `I` is the base form `ξ_I` of degree
/// `p - |I|`.
#[derive(Clone, Debug)]
pub struct AlgebroidForm {
    algebroid: TrivialAlgebroid,
    degree: usize,
    components: BTreeMap<IndexSet, PiecewiseForm>,
}

impl PartialEq for AlgebroidForm {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.algebroid.same_as(&other.algebroid)
            && self.components == other.components
    }
}

impl Eq for AlgebroidForm {}

impl AlgebroidForm {
    pub fn zero(algebroid: &TrivialAlgebroid, degree: usize) -> Self {
        AlgebroidForm { algebroid: algebroid.clone(), degree, components: BTreeMap::new() }
    }

    /// The Künneth map `k_ps(ξ ⊗ η)`: the component at `I` is `η_I ξ`.
    pub fn kunneth(algebroid: &TrivialAlgebroid, xi: &PiecewiseForm, eta: &CEElement) -> Result<Self> {
        if !same_family(xi.family(), &algebroid.family) {
            return Err(domain!("base form does not live on the algebroid's family"));
        }
        if eta.dim() != algebroid.algebra.dim() {
            return Err(domain!("CE element does not belong to the algebroid's Lie algebra"));
        }
        let mut out = Self::zero(algebroid, xi.degree() + eta.degree());
        for (idx, c) in eta.components() {
            out.add_component(idx.clone(), xi.scale(c))?;
        }
        Ok(out)
    }

    /// `k_ps` extended linearly over a sum of pure tensors of equal total degree.
    pub fn kunneth_sum(algebroid: &TrivialAlgebroid, terms: &[(PiecewiseForm, CEElement)], degree: usize) -> Result<Self> {
        let mut out = Self::zero(algebroid, degree);
        for (xi, eta) in terms {
            out = out.add(&Self::kunneth(algebroid, xi, eta)?)?;
        }
        Ok(out)
    }

    fn add_component(&mut self, idx: IndexSet, form: PiecewiseForm) -> Result<()> {
        if form.degree() + idx.len() != self.degree {
            return Err(domain!("component of degree {} at |I| = {} in a {}-form", form.degree(), idx.len(), self.degree));
        }
        if form.is_zero() {
            return Ok(());
        }
        let sum = match self.components.remove(&idx) {
            Some(f) => f.add(&form)?,
            None => form,
        };
        if !sum.is_zero() {
            self.components.insert(idx, sum);
        }
        Ok(())
    }

    pub fn algebroid(&self) -> &TrivialAlgebroid {
        &self.algebroid
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &BTreeMap<IndexSet, PiecewiseForm> {
        &self.components
    }

    /// The base form at CE monomial `I` (zero when absent).
    pub fn component(&self, idx: &[usize]) -> Result<PiecewiseForm> {
        if idx.len() > self.degree {
            return Err(domain!("CE monomial {idx:?} exceeds the total degree"));
        }
        Ok(self
            .components
            .get(idx)
            .cloned()
            .unwrap_or_else(|| PiecewiseForm::zero(self.algebroid.family.clone(), self.degree - idx.len())))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn check_same(&self, other: &AlgebroidForm) -> Result<()> {
        if !self.algebroid.same_as(&other.algebroid) {
            return Err(domain!("forms belong to different algebroids"));
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebroidForm) -> Result<AlgebroidForm> {
        self.check_same(other)?;
        if self.degree != other.degree {
            return Err(domain!("cannot add forms of degrees {} and {}", self.degree, other.degree));
        }
        let mut out = self.clone();
        for (i, f) in &other.components {
            out.add_component(i.clone(), f.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AlgebroidForm) -> Result<AlgebroidForm> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> AlgebroidForm {
        let mut out = Self::zero(&self.algebroid, self.degree);
        if c.is_zero() {
            return out;
        }
        out.components = self.components.iter().map(|(i, f)| (i.clone(), f.scale(c))).collect();
        out
    }

    /// `(ξ ⊗ e*_I) ∧ (ξ' ⊗ e*_J) = (-1)^{|I| deg ξ'} (ξ ∧ ξ') ⊗ (e*_I ∧ e*_J)`.
    pub fn wedge(&self, other: &AlgebroidForm) -> Result<AlgebroidForm> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.algebroid, self.degree + other.degree);
        for (i, a) in &self.components {
            for (j, b) in &other.components {
                let Some((ij, odd)) = merge_indices(i, j) else { continue };
                let koszul = (i.len() * b.degree()) % 2 == 1;
                let w = a.wedge(b)?;
                let w = if odd != koszul { w.scale(&-Rational::one()) } else { w };
                out.add_component(ij, w)?;
            }
        }
        Ok(out)
    }

    /// `d(ξ ⊗ η) = dξ ⊗ η + (-1)^{deg ξ} ξ ⊗ d_g η`, extended linearly.
    pub fn tensor_differential(&self) -> AlgebroidForm {
        let g = &self.algebroid.algebra;
        let n = g.dim();
        let mut out = Self::zero(&self.algebroid, self.degree + 1);
        for (idx, xi) in &self.components {
            out.add_component(idx.clone(), xi.d()).expect("degrees match");
            let d_eta = ce_differential(g, &CEElement::basis(n, idx.clone())).expect("same algebra");
            let s = rational::sign(xi.degree());
            for (j, c) in d_eta.components() {
                out.add_component(j.clone(), xi.scale(&(c * &s))).expect("degrees match");
            }
        }
        out
    }

    /// Restriction to a subfamily (drops pieces outside it).
    pub fn restrict_to_family(&self, target: &Arc<CarrierFamily>) -> Result<AlgebroidForm> {
        if !target.is_subfamily_of(&self.algebroid.family) {
            return Err(domain!("target family is not contained in the source family"));
        }
        let algebroid = self.algebroid.over(target.clone());
        let mut out = Self::zero(&algebroid, self.degree);
        for (i, f) in &self.components {
            out.add_component(i.clone(), f.restrict_to_family(target)?)?;
        }
        Ok(out)
    }

    /// Restriction to a barycentric subdivision, component by component.
    pub fn pullback_to_subdivision(&self, sd: &Subdivision, target: &Arc<CarrierFamily>) -> Result<AlgebroidForm> {
        let algebroid = self.algebroid.over(target.clone());
        let mut out = Self::zero(&algebroid, self.degree);
        for (i, f) in &self.components {
            out.add_component(i.clone(), f.pullback_to_subdivision(sd, target)?)?;
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        for f in self.components.values() {
            f.validate()?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> AlgebroidFormJson {
        AlgebroidFormJson {
            degree: self.degree,
            components: self
                .components
                .iter()
                .map(|(i, f)| AlgebroidComponentJson { ce_indices: i.clone(), form: PiecewiseFormJson::from_form(f) })
                .collect(),
        }
    }
}

/// One CE component; `ce_indices` are zero-based basis numbers of `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebroidComponentJson {
    pub ce_indices: Vec<usize>,
    pub form: PiecewiseFormJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebroidFormJson {
    pub degree: usize,
    pub components: Vec<AlgebroidComponentJson>,
}

impl AlgebroidFormJson {
    pub fn to_form(&self, algebroid: &TrivialAlgebroid) -> Result<AlgebroidForm> {
        let mut out = AlgebroidForm::zero(algebroid, self.degree);
        let n = algebroid.algebra.dim();
        for c in &self.components {
            if c.ce_indices.windows(2).any(|w| w[0] >= w[1]) || c.ce_indices.iter().any(|i| *i >= n) {
                return Err(domain!("CE indices {:?} are not an ascending subset of 0..{n}", c.ce_indices));
            }
            out.add_component(c.ce_indices.clone(), c.form.to_form(&algebroid.family)?)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::simplicial::{barycentric_subdivision, Simplex, SimplicialComplex};

    fn setup(maximal: &[Vec<usize>], g: LieAlgebra) -> TrivialAlgebroid {
        let k = Arc::new(SimplicialComplex::build(maximal).unwrap());
        TrivialAlgebroid::new(Arc::new(CarrierFamily::whole(&k)), Arc::new(g)).unwrap()
    }

    #[test]
    fn kunneth_unit_and_pure_ce() {
        let a = setup(&[vec![0, 1]], LieAlgebra::sl2());
        let xi = PiecewiseForm::hat(a.family.clone(), 0);
        let w = AlgebroidForm::kunneth(&a, &xi, &CEElement::one(3)).unwrap();
        assert_eq!(w.components().len(), 1);
        assert_eq!(w.component(&[]).unwrap(), xi);
        let one = PiecewiseForm::constant(a.family.clone(), &int(1));
        let e1 = AlgebroidForm::kunneth(&a, &one, &CEElement::basis(3, vec![1])).unwrap();
        assert_eq!(e1.component(&[1]).unwrap(), one);
        assert_eq!(e1.degree(), 1);
    }

    #[test]
    fn kunneth_is_multiplicative_with_koszul_sign() {
        let a = setup(&[vec![0, 1, 2]], LieAlgebra::sl2());
        let f = a.family.clone();
        let xi = PiecewiseForm::hat(f.clone(), 0);
        let xi2 = PiecewiseForm::hat(f.clone(), 1).d();
        let eta = CEElement::basis(3, vec![0]);
        let eta2 = CEElement::basis(3, vec![2]);
        let lhs = AlgebroidForm::kunneth(&a, &xi, &eta)
            .unwrap()
            .wedge(&AlgebroidForm::kunneth(&a, &xi2, &eta2).unwrap())
            .unwrap();
        let sign = rational::sign(eta.degree() * xi2.degree());
        let rhs = AlgebroidForm::kunneth(&a, &xi.wedge(&xi2).unwrap(), &eta.wedge(&eta2).unwrap())
            .unwrap()
            .scale(&sign);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn abelian_differential_is_componentwise() {
        let a = setup(&[vec![0, 1]], LieAlgebra::abelian(2));
        let xi = PiecewiseForm::hat(a.family.clone(), 1);
        let w = AlgebroidForm::kunneth(&a, &xi, &CEElement::basis(2, vec![0])).unwrap();
        let dw = w.tensor_differential();
        assert_eq!(dw, AlgebroidForm::kunneth(&a, &xi.d(), &CEElement::basis(2, vec![0])).unwrap());
        assert!(dw.tensor_differential().is_zero());
    }

    #[test]
    fn sl2_differential_expands_both_legs() {
        let a = setup(&[vec![0, 1, 2]], LieAlgebra::sl2());
        let g = a.algebra.clone();
        let lv = PiecewiseForm::hat(a.family.clone(), 0);
        let e1 = CEElement::basis(3, vec![1]);
        let w = AlgebroidForm::kunneth(&a, &lv, &e1).unwrap();
        let expected = AlgebroidForm::kunneth(&a, &lv.d(), &e1)
            .unwrap()
            .add(&AlgebroidForm::kunneth(&a, &lv, &ce_differential(&g, &e1).unwrap()).unwrap())
            .unwrap();
        assert_eq!(w.tensor_differential(), expected);
        // d e* = -2 h* ∧ e*
        assert_eq!(expected.component(&[0, 1]).unwrap(), lv.scale(&int(-2)));
        assert!(w.tensor_differential().tensor_differential().is_zero());
    }

    #[test]
    fn restriction_identity_and_star() {
        let k = Arc::new(SimplicialComplex::build(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap());
        let f = Arc::new(CarrierFamily::whole(&k));
        let a = TrivialAlgebroid::new(f.clone(), Arc::new(LieAlgebra::abelian(1))).unwrap();
        let w = AlgebroidForm::kunneth(&a, &PiecewiseForm::hat(f.clone(), 1), &CEElement::basis(1, vec![0])).unwrap();
        assert_eq!(w.restrict_to_family(&f).unwrap(), w);
        let star = Arc::new(CarrierFamily::star(&k, &[Simplex::vertex(0)]).unwrap());
        let r = w.restrict_to_family(&star).unwrap();
        let piece = r.component(&[0]).unwrap();
        assert_eq!(piece.locals().len(), 1);
        let sd = barycentric_subdivision(&k).unwrap();
        let l = Arc::new(CarrierFamily::whole(&sd.complex));
        let pulled = w.pullback_to_subdivision(&sd, &l).unwrap();
        pulled.validate().unwrap();
        assert_eq!(pulled.tensor_differential(), w.tensor_differential().pullback_to_subdivision(&sd, &l).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let a = setup(&[vec![0, 1]], LieAlgebra::solvable2());
        let w = AlgebroidForm::kunneth(&a, &PiecewiseForm::hat(a.family.clone(), 0).d(), &CEElement::basis(2, vec![1])).unwrap();
        let j = serde_json::to_string(&w.to_json()).unwrap();
        let back: AlgebroidFormJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_form(&a).unwrap(), w);
    }
}
