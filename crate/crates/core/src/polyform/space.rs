use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::local::{index_subsets, IndexSet, LocalForm};
use super::piecewise::{same_family, PiecewiseForm};
use super::polynomial::{monomials_up_to, Exponents, Polynomial};
use crate::error::{domain, Result};
use crate::homology::{ChainMap, CochainComplex, RationalMatrix};
use crate::rational::{self, Rational};
use crate::simplicial::{CarrierFamily, Simplex};

/// Finite model of the piecewise polynomial forms on a carrier family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "degree")]
pub enum BaseModel {
    /// Whitney elementary forms (compatible local Whitney forms on families).
    Whitney,
    /// All compatible forms with coefficients of total degree at most `r`.
    Pr(u32),
}

impl fmt::Display for BaseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseModel::Whitney => write!(f, "whitney"),
            BaseModel::Pr(r) => write!(f, "P_{r}"),
        }
    }
}

/// The local Whitney form `q! Σ_i (-1)^i λ_{σ_i} dλ_{σ_0} ∧ ... ^i ... ∧ dλ_{σ_q}`
/// on a simplex `Δ ⊇ σ`.
pub fn whitney_local(sigma: &Simplex, delta: &Simplex) -> Result<LocalForm> {
    if !sigma.is_face_of(delta) {
        return Err(domain!("{sigma} is not a face of {delta}"));
    }
    let q = sigma.dim();
    let vs = sigma.vertices();
    let mut total = LocalForm::zero(delta.clone(), q);
    for i in 0..=q {
        let mut term = LocalForm::function(delta.clone(), LocalForm::lambda(delta, vs[i]));
        for (j, v) in vs.iter().enumerate() {
            if j != i {
                term = term.wedge(&LocalForm::dlambda(delta, *v))?;
            }
        }
        total = total.add(&term.scale(&rational::sign(i)))?;
    }
    Ok(total.scale(&rational::factorial(q)))
}

/// The Whitney form of `σ` on a family: `ω_σ` on every member having `σ` as
/// a face, zero on the other members.
pub fn whitney_elementary_form(family: &Arc<CarrierFamily>, sigma: &Simplex) -> Result<PiecewiseForm> {
    if !family.complex().contains(sigma) {
        return Err(domain!("{sigma} is not a simplex of the complex"));
    }
    let locals = family
        .members()
        .filter(|d| sigma.is_face_of(d))
        .map(|d| whitney_local(sigma, d))
        .collect::<Result<Vec<_>>>()?;
    PiecewiseForm::from_locals(family.clone(), sigma.dim(), locals)
}

/// Basis cell of the Whitney model on a family: a simplex `σ` together with
/// one connected component (under codimension-one incidence) of the members
/// having `σ` as a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhitneyCell {
    pub simplex: Simplex,
    pub component: Vec<Simplex>,
}

impl WhitneyCell {
    pub fn label(&self, split: bool) -> String {
        if split {
            format!("w{}@{}", self.simplex, self.component[0])
        } else {
            format!("w{}", self.simplex)
        }
    }
}

/// Whitney cells of degree `q`, ordered by simplex and then by the smallest
/// member of the component.
pub fn whitney_cells(family: &CarrierFamily, q: usize) -> Vec<WhitneyCell> {
    let mut out = Vec::new();
    for sigma in family.complex().of_dim(q) {
        let above: Vec<&Simplex> = family.members().filter(|d| sigma.is_face_of(d)).collect();
        if above.is_empty() {
            continue;
        }
        let index: BTreeMap<&Simplex, usize> = above.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut parent: Vec<usize> = (0..above.len()).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            parent[i] = r;
            r
        }
        for (i, d) in above.iter().enumerate() {
            for f in d.boundary_faces() {
                if let Some(&j) = index.get(&f) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut comps: BTreeMap<usize, Vec<Simplex>> = BTreeMap::new();
        for (i, d) in above.iter().enumerate() {
            let root = find(&mut parent, i);
            comps.entry(root).or_default().push((*d).clone());
        }
        let mut comps: Vec<Vec<Simplex>> = comps.into_values().collect();
        comps.sort();
        for component in comps {
            out.push(WhitneyCell { simplex: sigma.clone(), component });
        }
    }
    out
}

/// A degree-of-freedom functional; evaluated on a form of the space it
/// returns the coefficient of the corresponding basis form.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Dof {
    /// Top coefficient of the restriction to `simplex` of the piece on
    /// `representative`, divided by `dim(simplex)!`.
    Cell { simplex: Simplex, representative: Simplex },
    /// One polynomial coefficient of one piece.
    Coefficient { member: Simplex, indices: IndexSet, exps: Exponents },
}

impl Dof {
    fn eval(&self, form: &PiecewiseForm) -> Result<Rational> {
        match self {
            Dof::Cell { simplex, representative } => {
                let r = form.local(representative)?.restrict_to_face(simplex)?;
                let top = r.top_coefficient().expect("cell degree equals simplex dimension");
                let c = top
                    .as_constant()
                    .ok_or_else(|| domain!("form is not a Whitney form on {simplex}"))?;
                Ok(c / rational::factorial(simplex.dim()))
            }
            Dof::Coefficient { member, indices, exps } => {
                Ok(form.local(member)?.component(indices).coefficient(exps))
            }
        }
    }
}

/// Basis of one degree of a model space.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub forms: Vec<PiecewiseForm>,
    pub labels: Vec<String>,
    dofs: Vec<Dof>,
}

impl DegreeBasis {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

/// A finite-dimensional space of piecewise forms on a family, graded by form
/// degree, with a basis and coordinate functionals.
#[derive(Clone, Debug)]
pub struct FormSpace {
    family: Arc<CarrierFamily>,
    model: BaseModel,
    degrees: Vec<DegreeBasis>,
}

impl FormSpace {
    pub fn new(family: &Arc<CarrierFamily>, model: BaseModel) -> Result<Self> {
        match model {
            BaseModel::Whitney => Ok(Self::whitney(family)),
            BaseModel::Pr(r) => Self::pr(family, r),
        }
    }

    pub fn whitney(family: &Arc<CarrierFamily>) -> Self {
        let top = family.max_dim().unwrap_or(0);
        let degrees = (0..=top)
            .map(|q| {
                let cells = whitney_cells(family, q);
                let mut split = BTreeMap::<&Simplex, usize>::new();
                for c in &cells {
                    *split.entry(&c.simplex).or_default() += 1;
                }
                let forms = cells
                    .iter()
                    .map(|c| {
                        PiecewiseForm::from_locals(
                            family.clone(),
                            q,
                            c.component.iter().map(|d| whitney_local(&c.simplex, d).expect("face")),
                        )
                        .expect("Whitney forms on a component are compatible")
                    })
                    .collect();
                let labels = cells.iter().map(|c| c.label(split[&c.simplex] > 1)).collect();
                let dofs = cells
                    .iter()
                    .map(|c| Dof::Cell { simplex: c.simplex.clone(), representative: c.component[0].clone() })
                    .collect();
                DegreeBasis { forms, labels, dofs }
            })
            .collect();
        FormSpace { family: family.clone(), model: BaseModel::Whitney, degrees }
    }

    pub fn pr(family: &Arc<CarrierFamily>, r: u32) -> Result<Self> {
        let top = family.max_dim().unwrap_or(0);
        let degrees = (0..=top).map(|p| pr_degree(family, p, r)).collect::<Result<Vec<_>>>()?;
        Ok(FormSpace { family: family.clone(), model: BaseModel::Pr(r), degrees })
    }

    pub fn family(&self) -> &Arc<CarrierFamily> {
        &self.family
    }

    pub fn model(&self) -> BaseModel {
        self.model
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(DegreeBasis::len).collect()
    }

    pub fn dim(&self, p: usize) -> usize {
        self.degrees.get(p).map_or(0, DegreeBasis::len)
    }

    pub fn basis(&self, p: usize) -> &[PiecewiseForm] {
        self.degrees.get(p).map_or(&[], |d| d.forms.as_slice())
    }

    pub fn labels(&self, p: usize) -> &[String] {
        self.degrees.get(p).map_or(&[], |d| d.labels.as_slice())
    }

    /// Linear combination of the degree-`p` basis.
    pub fn combination(&self, p: usize, coords: &[Rational]) -> Result<PiecewiseForm> {
        let basis = self.basis(p);
        if coords.len() != basis.len() {
            return Err(domain!("{} coordinates for a space of dimension {}", coords.len(), basis.len()));
        }
        let mut out = PiecewiseForm::zero(self.family.clone(), p);
        for (c, b) in coords.iter().zip(basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c))?;
            }
        }
        Ok(out)
    }

    /// Coordinates of a form in the degree-`p` basis. Fails when the form does
    /// not lie in the space.
    pub fn coordinates(&self, form: &PiecewiseForm) -> Result<Vec<Rational>> {
        let p = form.degree();
        if !same_family(form.family(), &self.family) {
            return Err(domain!("form does not live on the family of the space"));
        }
        let Some(deg) = self.degrees.get(p) else {
            return if form.is_zero() {
                Ok(Vec::new())
            } else {
                Err(domain!("non-zero {p}-form above the top degree of the space"))
            };
        };
        let coords = deg.dofs.iter().map(|d| d.eval(form)).collect::<Result<Vec<_>>>()?;
        if &self.combination(p, &coords)? != form {
            return Err(domain!("form does not lie in the {} space", self.model));
        }
        Ok(coords)
    }

    pub fn contains(&self, form: &PiecewiseForm) -> bool {
        self.coordinates(form).is_ok()
    }

    /// Matrices of a degree-preserving linear map between model spaces, given
    /// on forms.
    pub fn map_matrices(
        &self,
        target: &FormSpace,
        f: impl Fn(&PiecewiseForm) -> Result<PiecewiseForm>,
    ) -> Result<Vec<RationalMatrix>> {
        let n = self.degrees.len().max(target.degrees.len());
        (0..n)
            .map(|p| {
                let cols = self
                    .basis(p)
                    .iter()
                    .map(|b| target.coordinates(&f(b)?))
                    .collect::<Result<Vec<_>>>()?;
                Ok(RationalMatrix::from_columns(target.dim(p), &cols))
            })
            .collect()
    }

    /// The cochain complex of the space under the exterior derivative.
    pub fn cochain_complex(&self) -> Result<CochainComplex> {
        let dims = self.dims();
        let labels = (0..dims.len()).map(|p| self.labels(p).to_vec()).collect();
        let ds = (0..dims.len().saturating_sub(1))
            .map(|p| {
                let cols = self
                    .basis(p)
                    .iter()
                    .map(|b| self.coordinates(&b.d()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(RationalMatrix::from_columns(dims[p + 1], &cols))
            })
            .collect::<Result<Vec<_>>>()?;
        CochainComplex::new(dims, labels, ds)
    }

    /// Chain map induced by restricting forms to a subfamily.
    pub fn restriction_to(&self, target: &FormSpace) -> Result<ChainMap> {
        let tf = target.family.clone();
        let maps = self.map_matrices(target, |w| w.restrict_to_family(&tf))?;
        Ok(ChainMap { maps })
    }

    /// Chain map induced by inclusion into a space on the same family.
    pub fn inclusion_into(&self, target: &FormSpace) -> Result<ChainMap> {
        let maps = self.map_matrices(target, |w| Ok(w.clone()))?;
        Ok(ChainMap { maps })
    }
}

/// One unknown coefficient of the `P_r` compatibility system.
#[derive(Clone, Debug)]
struct Unknown {
    member: Simplex,
    indices: IndexSet,
    exps: Exponents,
}

fn pr_degree(family: &Arc<CarrierFamily>, p: usize, r: u32) -> Result<DegreeBasis> {
    let mut unknowns: Vec<Unknown> = Vec::new();
    let mut offset: BTreeMap<Simplex, BTreeMap<(IndexSet, Exponents), usize>> = BTreeMap::new();
    for s in family.members().filter(|s| s.dim() >= p) {
        let k = s.dim();
        let slot = offset.entry(s.clone()).or_default();
        for idx in index_subsets(k, p) {
            for e in monomials_up_to(k, r) {
                slot.insert((idx.clone(), e.clone()), unknowns.len());
                unknowns.push(Unknown { member: s.clone(), indices: idx.clone(), exps: e });
            }
        }
    }
    // one equation per (pair, dx_I, monomial) on the face: restrict(top) - face = 0
    let mut rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
    let mut row_of: BTreeMap<(usize, IndexSet, Exponents), usize> = BTreeMap::new();
    let pairs: Vec<(Simplex, Simplex)> =
        family.codim_one_pairs().into_iter().filter(|(f, _)| f.dim() >= p).collect();
    for (pi, (f, s)) in pairs.iter().enumerate() {
        for ((idx, e), &col) in &offset[f] {
            let row = *row_of.entry((pi, idx.clone(), e.clone())).or_insert_with(|| {
                rows.push(BTreeMap::new());
                rows.len() - 1
            });
            *rows[row].entry(col).or_insert_with(Rational::zero) -= Rational::from_integer(1.into());
        }
        for ((idx, e), &col) in &offset[s] {
            let unit = LocalForm::new(
                s.clone(),
                p,
                [(idx.clone(), Polynomial::monomial(e.clone(), Rational::from_integer(1.into())))],
            )?;
            let restricted = unit.restrict_to_face(f)?;
            for (ridx, poly) in restricted.components() {
                for (re, c) in poly.terms() {
                    let row = *row_of.entry((pi, ridx.clone(), re.clone())).or_insert_with(|| {
                        rows.push(BTreeMap::new());
                        rows.len() - 1
                    });
                    *rows[row].entry(col).or_insert_with(Rational::zero) += c;
                }
            }
        }
    }
    let mut m = RationalMatrix::zeros(rows.len(), unknowns.len());
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row {
            m.set(i, *j, x.clone());
        }
    }
    let rki = m.rank_kernel_image();
    let mut is_pivot = vec![false; unknowns.len()];
    for &c in &rki.pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..unknowns.len()).filter(|c| !is_pivot[*c]).collect();
    let mut forms = Vec::with_capacity(free.len());
    let mut labels = Vec::with_capacity(free.len());
    let mut dofs = Vec::with_capacity(free.len());
    for (vec, &fcol) in rki.kernel.iter().zip(&free) {
        let mut pieces: BTreeMap<Simplex, Vec<(IndexSet, Polynomial)>> = BTreeMap::new();
        for (j, x) in vec.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let u = &unknowns[j];
            pieces
                .entry(u.member.clone())
                .or_default()
                .push((u.indices.clone(), Polynomial::monomial(u.exps.clone(), x.clone())));
        }
        let locals = pieces
            .into_iter()
            .map(|(s, comps)| LocalForm::new(s, p, comps))
            .collect::<Result<Vec<_>>>()?;
        forms.push(PiecewiseForm::from_locals(family.clone(), p, locals)?);
        let u = &unknowns[fcol];
        labels.push(format!(
            "p{}:{:?}:{:?}",
            u.member,
            u.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
            u.exps
        ));
        dofs.push(Dof::Coefficient { member: u.member.clone(), indices: u.indices.clone(), exps: u.exps.clone() });
    }
    Ok(DegreeBasis { forms, labels, dofs })
}

/// Basis of the compatible `p`-forms on a family with coefficients of total
/// degree at most `r`.
pub fn basis_pr(family: &Arc<CarrierFamily>, p: usize, r: u32) -> Result<Vec<PiecewiseForm>> {
    if family.max_dim().is_none_or(|d| p > d) {
        return Ok(Vec::new());
    }
    Ok(pr_degree(family, p, r)?.forms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::cohomology;
    use crate::rational::int;
    use crate::simplicial::{simplicial_cochain_cohomology, SimplicialComplex};

    fn complex(maximal: &[Vec<usize>]) -> Arc<SimplicialComplex> {
        Arc::new(SimplicialComplex::build(maximal).unwrap())
    }

    fn circle() -> Arc<SimplicialComplex> {
        complex(&[vec![0, 1], vec![1, 2], vec![0, 2]])
    }

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn whitney_vertex_form_is_the_hat() {
        let f = Arc::new(CarrierFamily::whole(&complex(&[vec![0, 1, 2]])));
        assert_eq!(whitney_elementary_form(&f, &s(&[1])).unwrap(), PiecewiseForm::hat(f.clone(), 1));
    }

    #[test]
    fn whitney_edge_form_formula() {
        let k = complex(&[vec![0, 1, 2], vec![1, 3]]);
        let f = Arc::new(CarrierFamily::whole(&k));
        let w = whitney_elementary_form(&f, &s(&[0, 1])).unwrap();
        for d in [s(&[0, 1]), s(&[0, 1, 2])] {
            let l0 = LocalForm::function(d.clone(), LocalForm::lambda(&d, 0));
            let l1 = LocalForm::function(d.clone(), LocalForm::lambda(&d, 1));
            let expected = l0
                .wedge(&LocalForm::dlambda(&d, 1))
                .unwrap()
                .sub(&l1.wedge(&LocalForm::dlambda(&d, 0)).unwrap())
                .unwrap();
            assert_eq!(w.local(&d).unwrap(), expected);
        }
        assert!(w.local(&s(&[1, 3])).unwrap().is_zero());
        assert!(w.local(&s(&[1, 2])).unwrap().is_zero());
    }

    #[test]
    fn whitney_cohomology_matches_simplicial() {
        for maximal in [
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            vec![vec![0, 1, 2]],
        ] {
            let k = complex(&maximal);
            let space = FormSpace::whitney(&Arc::new(CarrierFamily::whole(&k)));
            assert_eq!(space.dims(), k.f_vector());
            let h = cohomology(&space.cochain_complex().unwrap()).unwrap();
            assert_eq!(h.dims(), simplicial_cochain_cohomology(&k));
        }
    }

    #[test]
    fn pr_examples() {
        let f = Arc::new(CarrierFamily::whole(&circle()));
        assert_eq!(basis_pr(&f, 0, 1).unwrap().len(), 3);
        let e = Arc::new(CarrierFamily::whole(&complex(&[vec![0, 1]])));
        assert_eq!(basis_pr(&e, 1, 0).unwrap().len(), 1);
        assert!(basis_pr(&f, 2, 3).unwrap().is_empty());
        for b in basis_pr(&f, 0, 2).unwrap() {
            b.validate().unwrap();
            assert!(b.poly_degree().unwrap() <= 2);
        }
    }

    #[test]
    fn star_splits_into_components_on_the_intersection() {
        let k = circle();
        let u = CarrierFamily::star(&k, &[s(&[0]), s(&[1])]).unwrap();
        let v = CarrierFamily::star(&k, &[s(&[2])]).unwrap();
        let uv = Arc::new(u.intersection(&v).unwrap());
        let space = FormSpace::whitney(&uv);
        // vertex 2 lies in two separate edges of U ∩ V
        assert_eq!(space.dims(), vec![4, 2]);
        let h = cohomology(&space.cochain_complex().unwrap()).unwrap();
        assert_eq!(h.dims(), vec![2, 0]);
    }

    #[test]
    fn vertex_stars_are_acyclic() {
        let k = complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        for v in 0..4 {
            let st = Arc::new(CarrierFamily::star(&k, &[s(&[v])]).unwrap());
            let h = cohomology(&FormSpace::whitney(&st).cochain_complex().unwrap()).unwrap();
            assert_eq!(h.dims(), vec![1, 0, 0]);
        }
    }

    #[test]
    fn coordinates_round_trip_and_reject_outsiders() {
        let f = Arc::new(CarrierFamily::whole(&circle()));
        let space = FormSpace::whitney(&f);
        let coords = vec![int(1), int(-2), int(3)];
        let w = space.combination(1, &coords).unwrap();
        assert_eq!(space.coordinates(&w).unwrap(), coords);
        let h = PiecewiseForm::hat(f.clone(), 0);
        let square = h.wedge(&h).unwrap();
        assert!(space.coordinates(&square).is_err());
        let p2 = FormSpace::pr(&f, 2).unwrap();
        assert!(p2.contains(&square));
    }

    #[test]
    fn whitney_span_is_closed_under_d() {
        let k = complex(&[vec![0, 1, 2], vec![1, 2, 3], vec![3, 4]]);
        let f = Arc::new(CarrierFamily::whole(&k));
        let space = FormSpace::whitney(&f);
        for p in 0..space.top_degree() {
            for b in space.basis(p) {
                assert!(space.contains(&b.d()));
            }
        }
    }

    #[test]
    fn whitney_embeds_in_pr() {
        let f = Arc::new(CarrierFamily::whole(&circle()));
        let w = FormSpace::whitney(&f);
        let p2 = FormSpace::pr(&f, 2).unwrap();
        let incl = w.inclusion_into(&p2).unwrap();
        for (p, m) in incl.maps.iter().enumerate() {
            assert_eq!(m.rank(), w.dim(p));
        }
    }
}
