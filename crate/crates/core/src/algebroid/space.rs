use std::collections::BTreeMap;

use num_traits::Zero;

use super::form::{AlgebroidForm, TrivialAlgebroid};
use crate::error::{domain, Result};
use crate::homology::{ChainMap, CochainComplex, RationalMatrix};
use crate::liealg::{ce_differential_matrix, ce_labels, CEElement};
use crate::polyform::{index_subsets, same_family, BaseModel, FormSpace, IndexSet, PiecewiseForm};
use crate::rational::{self, Rational};

/// Basis position of `ξ_i ⊗ e*_J` in total degree `a + |J|`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Block {
    base_degree: usize,
    offset: usize,
    base_dim: usize,
    ce: Vec<IndexSet>,
}

/// The model space `V ⊗ Λg*` of algebroid forms, where `V` is a base model
/// space on the algebroid's family. In each total degree the basis is
/// `k(ξ_i ⊗ e*_J)` ordered by base degree, then base index, then `J`.
#[derive(Clone, Debug)]
pub struct AlgebroidSpace {
    algebroid: TrivialAlgebroid,
    base: FormSpace,
    blocks: Vec<Vec<Block>>,
}

impl AlgebroidSpace {
    pub fn new(algebroid: &TrivialAlgebroid, model: BaseModel) -> Result<Self> {
        let base = FormSpace::new(&algebroid.family, model)?;
        Self::from_base(algebroid, base)
    }

    pub fn from_base(algebroid: &TrivialAlgebroid, base: FormSpace) -> Result<Self> {
        if !same_family(base.family(), &algebroid.family) {
            return Err(domain!("base space does not live on the algebroid's family"));
        }
        let n = algebroid.algebra.dim();
        let top = base.top_degree() + n;
        let blocks = (0..=top)
            .map(|p| {
                let mut offset = 0;
                let mut out = Vec::new();
                for a in 0..=p.min(base.top_degree()) {
                    let b = p - a;
                    if b > n {
                        continue;
                    }
                    let ce = index_subsets(n, b);
                    let base_dim = base.dim(a);
                    out.push(Block { base_degree: a, offset, base_dim, ce: ce.clone() });
                    offset += base_dim * ce.len();
                }
                out
            })
            .collect();
        Ok(AlgebroidSpace { algebroid: algebroid.clone(), base, blocks })
    }

    pub fn algebroid(&self) -> &TrivialAlgebroid {
        &self.algebroid
    }

    pub fn base(&self) -> &FormSpace {
        &self.base
    }

    pub fn top_degree(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn dim(&self, p: usize) -> usize {
        self.blocks
            .get(p)
            .map_or(0, |bs| bs.iter().map(|b| b.base_dim * b.ce.len()).sum())
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..self.blocks.len()).map(|p| self.dim(p)).collect()
    }

    pub fn labels(&self, p: usize) -> Vec<String> {
        let n = self.algebroid.algebra.dim();
        let mut out = Vec::with_capacity(self.dim(p));
        for block in self.blocks.get(p).into_iter().flatten() {
            let ce = ce_labels(n, block.ce[0].len());
            for base_label in self.base.labels(block.base_degree) {
                out.extend(ce.iter().map(|c| format!("{base_label}⊗{c}")));
            }
        }
        out
    }

    /// The basis element at position `idx` of degree `p`.
    pub fn basis_element(&self, p: usize, idx: usize) -> Result<AlgebroidForm> {
        let (block, i, j) = self.locate(p, idx)?;
        let xi = &self.base.basis(block.base_degree)[i];
        let n = self.algebroid.algebra.dim();
        AlgebroidForm::kunneth(&self.algebroid, xi, &CEElement::basis(n, block.ce[j].clone()))
    }

    fn locate(&self, p: usize, idx: usize) -> Result<(&Block, usize, usize)> {
        for block in self.blocks.get(p).into_iter().flatten() {
            let size = block.base_dim * block.ce.len();
            if idx >= block.offset && idx < block.offset + size {
                let r = idx - block.offset;
                return Ok((block, r / block.ce.len(), r % block.ce.len()));
            }
        }
        Err(domain!("basis index {idx} out of range in degree {p}"))
    }

    pub fn combination(&self, p: usize, coords: &[Rational]) -> Result<AlgebroidForm> {
        if coords.len() != self.dim(p) {
            return Err(domain!("{} coordinates for a space of dimension {}", coords.len(), self.dim(p)));
        }
        let mut terms: Vec<(PiecewiseForm, CEElement)> = Vec::new();
        let n = self.algebroid.algebra.dim();
        for block in self.blocks.get(p).into_iter().flatten() {
            let m = block.ce.len();
            for (j, idx) in block.ce.iter().enumerate() {
                let base_coords: Vec<Rational> =
                    (0..block.base_dim).map(|i| coords[block.offset + i * m + j].clone()).collect();
                if base_coords.iter().all(Zero::is_zero) {
                    continue;
                }
                let xi = self.base.combination(block.base_degree, &base_coords)?;
                terms.push((xi, CEElement::basis(n, idx.clone())));
            }
        }
        AlgebroidForm::kunneth_sum(&self.algebroid, &terms, p)
    }

    /// Coordinates of a form in the degree-`p` basis; fails when some base
    /// component lies outside the base space.
    pub fn coordinates(&self, form: &AlgebroidForm) -> Result<Vec<Rational>> {
        if !form.algebroid().same_as(&self.algebroid) {
            return Err(domain!("form does not live on the algebroid of the space"));
        }
        let p = form.degree();
        let mut out = vec![Rational::zero(); self.dim(p)];
        let mut seen = 0;
        for block in self.blocks.get(p).into_iter().flatten() {
            let m = block.ce.len();
            for (j, idx) in block.ce.iter().enumerate() {
                let Some(xi) = form.components().get(idx) else { continue };
                seen += 1;
                for (i, c) in self.base.coordinates(xi)?.into_iter().enumerate() {
                    out[block.offset + i * m + j] = c;
                }
            }
        }
        if seen != form.components().len() {
            return Err(domain!("form has components outside the degree range of the space"));
        }
        Ok(out)
    }

    /// The differential `d ⊗ 1 + (-1)^a 1 ⊗ d_g`, assembled from the base and
    /// CE differential matrices.
    pub fn differential(&self, p: usize, base: &CochainComplex) -> RationalMatrix {
        let g = &self.algebroid.algebra;
        let mut out = RationalMatrix::zeros(self.dim(p + 1), self.dim(p));
        let Some(targets) = self.blocks.get(p + 1) else { return out };
        let find = |a: usize| targets.iter().find(|b| b.base_degree == a);
        for src in &self.blocks[p] {
            let a = src.base_degree;
            let m = src.ce.len();
            if let Some(tgt) = find(a + 1) {
                let d = base.differential(a);
                for i in 0..src.base_dim {
                    for k in 0..tgt.base_dim {
                        let c = d.get(k, i);
                        if c.is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            out.set(tgt.offset + k * m + j, src.offset + i * m + j, c.clone());
                        }
                    }
                }
            }
            if let Some(tgt) = find(a) {
                let dg = ce_differential_matrix(g, src.ce[0].len());
                let s = rational::sign(a);
                let mt = tgt.ce.len();
                for i in 0..src.base_dim {
                    for j in 0..m {
                        for l in 0..mt {
                            let c = dg.get(l, j);
                            if !c.is_zero() {
                                out.add_at(tgt.offset + i * mt + l, src.offset + i * m + j, &(c * &s));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// The cochain complex of the space.
    pub fn cochain_complex(&self) -> Result<CochainComplex> {
        let base = self.base.cochain_complex()?;
        let dims = self.dims();
        let labels = (0..dims.len()).map(|p| self.labels(p)).collect();
        let ds = (0..dims.len() - 1).map(|p| self.differential(p, &base)).collect();
        CochainComplex::new(dims, labels, ds)
    }

    /// Matrix of `p`-th differential computed by applying the tensor
    /// differential to each basis form and taking coordinates.
    pub fn differential_from_forms(&self, p: usize) -> Result<RationalMatrix> {
        let cols = (0..self.dim(p))
            .map(|i| self.coordinates(&self.basis_element(p, i)?.tensor_differential()))
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalMatrix::from_columns(self.dim(p + 1), &cols))
    }

    /// Matrices of a degree-preserving map between algebroid spaces, given on forms.
    pub fn map_matrices(
        &self,
        target: &AlgebroidSpace,
        f: impl Fn(&AlgebroidForm) -> Result<AlgebroidForm>,
    ) -> Result<Vec<RationalMatrix>> {
        let n = self.blocks.len().max(target.blocks.len());
        (0..n)
            .map(|p| {
                let cols = (0..self.dim(p))
                    .map(|i| target.coordinates(&f(&self.basis_element(p, i)?)?))
                    .collect::<Result<Vec<_>>>()?;
                Ok(RationalMatrix::from_columns(target.dim(p), &cols))
            })
            .collect()
    }

    /// `F ⊗ 1` for a base chain map `F` into the base of `target`, where both
    /// spaces carry the same Lie algebra.
    pub fn tensor_map(&self, target: &AlgebroidSpace, base_map: &ChainMap) -> Result<ChainMap> {
        if self.algebroid.algebra != target.algebroid.algebra {
            return Err(domain!("algebroid spaces carry different Lie algebras"));
        }
        let n = self.blocks.len().max(target.blocks.len());
        let maps = (0..n)
            .map(|p| {
                let mut out = RationalMatrix::zeros(target.dim(p), self.dim(p));
                let tblocks: BTreeMap<usize, &Block> =
                    target.blocks.get(p).into_iter().flatten().map(|b| (b.base_degree, b)).collect();
                for src in self.blocks.get(p).into_iter().flatten() {
                    let Some(tgt) = tblocks.get(&src.base_degree) else { continue };
                    let f = base_map.maps.get(src.base_degree);
                    let m = src.ce.len();
                    for i in 0..src.base_dim {
                        for k in 0..tgt.base_dim {
                            let Some(c) = f.map(|f| f.get(k, i)).filter(|c| !c.is_zero()) else { continue };
                            for j in 0..m {
                                out.set(tgt.offset + k * m + j, src.offset + i * m + j, c.clone());
                            }
                        }
                    }
                }
                out
            })
            .collect();
        Ok(ChainMap { maps })
    }

    /// Chain map induced by restricting to the algebroid over a subfamily.
    pub fn restriction_to(&self, target: &AlgebroidSpace) -> Result<ChainMap> {
        let base = self.base.restriction_to(&target.base)?;
        self.tensor_map(target, &base)
    }
}

/// The model space of algebroid forms together with its cochain complex.
pub fn build_algebroid_complex(
    algebroid: &TrivialAlgebroid,
    model: BaseModel,
) -> Result<(AlgebroidSpace, CochainComplex)> {
    let space = AlgebroidSpace::new(algebroid, model)?;
    let complex = space.cochain_complex()?;
    Ok((space, complex))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::homology::cohomology;
    use crate::liealg::{ce_cohomology, LieAlgebra};
    use crate::simplicial::{simplicial_cochain_cohomology, CarrierFamily, SimplicialComplex};

    fn algebroid(maximal: &[Vec<usize>], g: LieAlgebra) -> TrivialAlgebroid {
        let k = Arc::new(SimplicialComplex::build(maximal).unwrap());
        TrivialAlgebroid::new(Arc::new(CarrierFamily::whole(&k)), Arc::new(g)).unwrap()
    }

    fn circle() -> Vec<Vec<usize>> {
        vec![vec![0, 1], vec![1, 2], vec![0, 2]]
    }

    fn kunneth_dims(base: &[usize], ce: &[usize]) -> Vec<usize> {
        let mut out = vec![0; base.len() + ce.len() - 1];
        for (a, x) in base.iter().enumerate() {
            for (b, y) in ce.iter().enumerate() {
                out[a + b] += x * y;
            }
        }
        out
    }

    #[test]
    fn circle_times_abelian_line() {
        let a = algebroid(&circle(), LieAlgebra::abelian(1));
        let (space, c) = build_algebroid_complex(&a, BaseModel::Whitney).unwrap();
        assert_eq!(space.dims(), vec![3, 6, 3]);
        assert_eq!(cohomology(&c).unwrap().dims(), vec![1, 2, 1]);
    }

    #[test]
    fn point_times_sl2_is_ce() {
        let a = algebroid(&[vec![0]], LieAlgebra::sl2());
        let (_, c) = build_algebroid_complex(&a, BaseModel::Whitney).unwrap();
        assert_eq!(cohomology(&c).unwrap().dims(), ce_cohomology(&LieAlgebra::sl2()).unwrap().dims());
        assert_eq!(cohomology(&c).unwrap().dims(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn kunneth_formula_on_models() {
        for g in [LieAlgebra::sl2(), LieAlgebra::solvable2(), LieAlgebra::abelian(2)] {
            for model in [BaseModel::Whitney, BaseModel::Pr(1)] {
                let a = algebroid(&circle(), g.clone());
                let (_, c) = build_algebroid_complex(&a, model).unwrap();
                let base = cohomology(&FormSpace::new(&a.family, model).unwrap().cochain_complex().unwrap()).unwrap().dims();
                if model == BaseModel::Whitney {
                    assert_eq!(base, simplicial_cochain_cohomology(a.family.complex()));
                }
                let ce = ce_cohomology(&g).unwrap().dims();
                assert_eq!(cohomology(&c).unwrap().dims(), kunneth_dims(&base, &ce), "{model}");
            }
        }
    }

    #[test]
    fn assembled_differential_matches_forms() {
        let a = algebroid(&[vec![0, 1, 2]], LieAlgebra::sl2());
        let space = AlgebroidSpace::new(&a, BaseModel::Whitney).unwrap();
        let base = space.base().cochain_complex().unwrap();
        for p in 0..space.top_degree() {
            assert_eq!(space.differential(p, &base), space.differential_from_forms(p).unwrap(), "degree {p}");
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let a = algebroid(&circle(), LieAlgebra::solvable2());
        let space = AlgebroidSpace::new(&a, BaseModel::Pr(1)).unwrap();
        for p in 0..=space.top_degree() {
            for i in 0..space.dim(p) {
                let mut e = vec![Rational::zero(); space.dim(p)];
                e[i] = rational::one();
                let w = space.combination(p, &e).unwrap();
                assert_eq!(w, space.basis_element(p, i).unwrap());
                assert_eq!(space.coordinates(&w).unwrap(), e);
            }
            assert_eq!(space.labels(p).len(), space.dim(p));
        }
    }

    #[test]
    fn restriction_is_a_chain_map() {
        let k = Arc::new(SimplicialComplex::build(&circle()).unwrap());
        let whole = Arc::new(CarrierFamily::whole(&k));
        let star = Arc::new(CarrierFamily::star(&k, &[crate::simplicial::Simplex::vertex(0)]).unwrap());
        let g = Arc::new(LieAlgebra::sl2());
        let a = TrivialAlgebroid::new(whole, g).unwrap();
        let b = a.over(star.clone());
        let sa = AlgebroidSpace::new(&a, BaseModel::Whitney).unwrap();
        let sb = AlgebroidSpace::new(&b, BaseModel::Whitney).unwrap();
        let r = sa.restriction_to(&sb).unwrap();
        let by_forms = sa.map_matrices(&sb, |w| w.restrict_to_family(&star)).unwrap();
        assert_eq!(r.maps, by_forms);
        ChainMap::new(&sa.cochain_complex().unwrap(), &sb.cochain_complex().unwrap(), r.maps).unwrap();
    }
}
