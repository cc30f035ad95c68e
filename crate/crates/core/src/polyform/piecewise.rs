use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::local::LocalForm;
use super::polynomial::Polynomial;
use crate::error::{domain, integrity, Result};
use crate::rational::Rational;
use crate::simplicial::{CarrierFamily, Simplex, Subdivision};

/// Whether two families have the same members on the same complex.
pub fn same_family(a: &CarrierFamily, b: &CarrierFamily) -> bool {
    std::ptr::eq(a, b)
        || ((Arc::ptr_eq(a.complex(), b.complex()) || a.complex() == b.complex()) && a.same_members(b))
}

/// A family of polynomial `p`-forms, one per member of a carrier family,
/// agreeing under restriction to every face that is itself a member.
///
/// Zero locals are not stored; members of dimension below `p` carry only
/// the zero form.
#[derive(Clone, Debug)]
pub struct PiecewiseForm {
    family: Arc<CarrierFamily>,
    degree: usize,
    locals: BTreeMap<Simplex, LocalForm>,
}

impl PartialEq for PiecewiseForm {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.locals == other.locals
            && same_family(&self.family, &other.family)
    }
}

impl Eq for PiecewiseForm {}

impl PiecewiseForm {
    pub fn zero(family: Arc<CarrierFamily>, degree: usize) -> Self {
        PiecewiseForm { family, degree, locals: BTreeMap::new() }
    }

    /// Assembles a form from local pieces and checks membership, degrees and
    /// face compatibility.
    pub fn from_locals(
        family: Arc<CarrierFamily>,
        degree: usize,
        locals: impl IntoIterator<Item = LocalForm>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for l in locals {
            if !family.contains(l.simplex()) {
                return Err(domain!("{} is not a member of the carrier family", l.simplex()));
            }
            if l.degree() != degree {
                return Err(domain!("local form of degree {} in a {degree}-form", l.degree()));
            }
            if map.contains_key(l.simplex()) {
                return Err(domain!("two local forms on {}", l.simplex()));
            }
            if !l.is_zero() {
                map.insert(l.simplex().clone(), l);
            }
        }
        let form = PiecewiseForm { family, degree, locals: map };
        if let Some((f, s)) = form.first_incompatibility() {
            return Err(domain!("local forms on {f} and {s} disagree under restriction"));
        }
        Ok(form)
    }

    /// The form whose local piece on each member `Δ` with `dim Δ ≥ p` is `f(Δ)`.
    pub fn from_fn(
        family: Arc<CarrierFamily>,
        degree: usize,
        f: impl Fn(&Simplex) -> LocalForm,
    ) -> Result<Self> {
        let locals: Vec<LocalForm> =
            family.members().filter(|s| s.dim() >= degree).map(&f).collect();
        Self::from_locals(family, degree, locals)
    }

    fn from_fn_unchecked(
        family: Arc<CarrierFamily>,
        degree: usize,
        f: impl Fn(&Simplex) -> LocalForm,
    ) -> Self {
        let locals = family
            .members()
            .filter(|s| s.dim() >= degree)
            .map(|s| (s.clone(), f(s)))
            .filter(|(_, l)| !l.is_zero())
            .collect();
        PiecewiseForm { family, degree, locals }
    }

    /// The piecewise-linear hat function of vertex `v`.
    pub fn hat(family: Arc<CarrierFamily>, v: usize) -> Self {
        Self::from_fn_unchecked(family, 0, |s| LocalForm::function(s.clone(), LocalForm::lambda(s, v)))
    }

    pub fn constant(family: Arc<CarrierFamily>, c: &Rational) -> Self {
        Self::from_fn_unchecked(family, 0, |s| {
            LocalForm::function(s.clone(), Polynomial::constant(s.dim(), c.clone()))
        })
    }

    pub fn family(&self) -> &Arc<CarrierFamily> {
        &self.family
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Non-zero local pieces.
    pub fn locals(&self) -> &BTreeMap<Simplex, LocalForm> {
        &self.locals
    }

    /// The local piece on a member (zero when not stored).
    pub fn local(&self, s: &Simplex) -> Result<LocalForm> {
        if !self.family.contains(s) {
            return Err(domain!("{s} is not a member of the carrier family"));
        }
        Ok(self.locals.get(s).cloned().unwrap_or_else(|| LocalForm::zero(s.clone(), self.degree)))
    }

    pub fn is_zero(&self) -> bool {
        self.locals.is_empty()
    }

    /// Largest coefficient degree over all pieces.
    pub fn poly_degree(&self) -> Option<u32> {
        self.locals.values().filter_map(LocalForm::poly_degree).max()
    }

    /// First codimension-one pair of members whose pieces disagree.
    pub fn first_incompatibility(&self) -> Option<(Simplex, Simplex)> {
        for (f, s) in self.family.codim_one_pairs() {
            if f.dim() < self.degree {
                continue;
            }
            let Some(top) = self.locals.get(&s) else {
                if self.locals.contains_key(&f) {
                    return Some((f, s));
                }
                continue;
            };
            let restricted = top.restrict_to_face(&f).expect("codimension-one face");
            let expected = self.locals.get(&f);
            let ok = match expected {
                Some(e) => &restricted == e,
                None => restricted.is_zero(),
            };
            if !ok {
                return Some((f, s));
            }
        }
        None
    }

    pub fn validate(&self) -> Result<()> {
        match self.first_incompatibility() {
            None => Ok(()),
            Some((f, s)) => Err(integrity!("pieces on {f} and {s} disagree under restriction")),
        }
    }

    fn debug_validate(self) -> Self {
        if cfg!(debug_assertions) {
            if let Err(e) = self.validate() {
                panic!("{e}");
            }
        }
        self
    }

    fn check_family(&self, other: &PiecewiseForm) -> Result<()> {
        if !same_family(&self.family, &other.family) {
            return Err(domain!("forms live on different carrier families"));
        }
        Ok(())
    }

    fn combine(
        &self,
        other: &PiecewiseForm,
        degree: usize,
        op: impl Fn(&LocalForm, &LocalForm) -> Result<LocalForm>,
    ) -> Result<PiecewiseForm> {
        self.check_family(other)?;
        let mut locals = BTreeMap::new();
        for s in self.family.members().filter(|s| s.dim() >= degree) {
            let a = self.local(s)?;
            let b = other.local(s)?;
            let l = op(&a, &b)?;
            if !l.is_zero() {
                locals.insert(s.clone(), l);
            }
        }
        Ok(PiecewiseForm { family: self.family.clone(), degree, locals })
    }

    pub fn add(&self, other: &PiecewiseForm) -> Result<PiecewiseForm> {
        if self.degree != other.degree {
            return Err(domain!("cannot add forms of degrees {} and {}", self.degree, other.degree));
        }
        self.check_family(other)?;
        let mut locals = self.locals.clone();
        for (s, l) in &other.locals {
            let sum = match locals.remove(s) {
                Some(a) => a.add(l)?,
                None => l.clone(),
            };
            if !sum.is_zero() {
                locals.insert(s.clone(), sum);
            }
        }
        Ok(PiecewiseForm { family: self.family.clone(), degree: self.degree, locals })
    }

    pub fn sub(&self, other: &PiecewiseForm) -> Result<PiecewiseForm> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> PiecewiseForm {
        if c.is_zero() {
            return Self::zero(self.family.clone(), self.degree);
        }
        PiecewiseForm {
            family: self.family.clone(),
            degree: self.degree,
            locals: self.locals.iter().map(|(s, l)| (s.clone(), l.scale(c))).collect(),
        }
    }

    /// Piecewise wedge product.
    pub fn wedge(&self, other: &PiecewiseForm) -> Result<PiecewiseForm> {
        let degree = self.degree + other.degree;
        let out = self.combine(other, degree, |a, b| a.wedge(b))?;
        Ok(out.debug_validate())
    }

    /// Piecewise exterior derivative.
    pub fn d(&self) -> PiecewiseForm {
        let locals = self
            .locals
            .iter()
            .map(|(s, l)| (s.clone(), l.d()))
            .filter(|(_, l)| !l.is_zero())
            .collect();
        PiecewiseForm { family: self.family.clone(), degree: self.degree + 1, locals }.debug_validate()
    }

    /// Drops the pieces outside a subfamily.
    pub fn restrict_to_family(&self, target: &Arc<CarrierFamily>) -> Result<PiecewiseForm> {
        if !target.is_subfamily_of(&self.family) {
            return Err(domain!("target family is not contained in the source family"));
        }
        let locals = self
            .locals
            .iter()
            .filter(|(s, _)| target.contains(s))
            .map(|(s, l)| (s.clone(), l.clone()))
            .collect();
        Ok(PiecewiseForm { family: target.clone(), degree: self.degree, locals })
    }

    /// Pulls the form back to a barycentric subdivision: each simplex of the
    /// target family receives the affine pullback of the piece on its carrier.
    pub fn pullback_to_subdivision(
        &self,
        sd: &Subdivision,
        target: &Arc<CarrierFamily>,
    ) -> Result<PiecewiseForm> {
        if !(Arc::ptr_eq(target.complex(), &sd.complex) || **target.complex() == *sd.complex) {
            return Err(domain!("target family does not live on the subdivision"));
        }
        if !(Arc::ptr_eq(self.family.complex(), &sd.base) || **self.family.complex() == *sd.base) {
            return Err(domain!("form does not live on the subdivided complex"));
        }
        let mut locals = BTreeMap::new();
        for tau in target.members().filter(|s| s.dim() >= self.degree) {
            let carrier = &sd.carrier[tau];
            let piece = self.local(carrier)?;
            if piece.is_zero() {
                continue;
            }
            let images = tau
                .vertices()
                .iter()
                .map(|w| sd.coords_in(*w, carrier))
                .collect::<Result<Vec<_>>>()?;
            let l = piece.affine_pullback(tau, &images)?;
            if !l.is_zero() {
                locals.insert(tau.clone(), l);
            }
        }
        Ok(PiecewiseForm { family: target.clone(), degree: self.degree, locals }.debug_validate())
    }

    /// Value of the piece on `s` at a point against tangent vectors of `s`.
    pub fn evaluate(&self, s: &Simplex, point: &[Rational], vectors: &[Vec<Rational>]) -> Result<Rational> {
        self.local(s)?.evaluate(point, vectors)
    }
}
