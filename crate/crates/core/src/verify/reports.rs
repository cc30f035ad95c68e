use std::sync::Arc;

use serde::Serialize;

use crate::algebroid::{build_algebroid_complex, TrivialAlgebroid};
use crate::error::Result;
use crate::homology::{cohomology, DegreeSummary};
use crate::liealg::{ce_cohomology, LieAlgebra};
use crate::polyform::{BaseModel, FormSpace};
use crate::simplicial::{simplicial_cochain_cohomology, CarrierFamily, SimplicialComplex};

/// Dimension-wise convolution `(a ⊛ b)_k = Σ_{i+j=k} a_i b_j`.
pub fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Betti numbers from simplicial cochains and from the Whitney model.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BettiReport {
    pub f_vector: Vec<usize>,
    pub simplicial: Vec<usize>,
    pub whitney: Vec<usize>,
    pub ok: bool,
}

pub fn betti_report(k: &Arc<SimplicialComplex>) -> Result<BettiReport> {
    let simplicial = simplicial_cochain_cohomology(k);
    let space = FormSpace::whitney(&Arc::new(CarrierFamily::whole(k)));
    let whitney = cohomology(&space.cochain_complex()?)?.dims();
    Ok(BettiReport { f_vector: k.f_vector(), ok: simplicial == whitney, simplicial, whitney })
}

/// Lie algebra cohomology with representatives.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CeReport {
    pub dim: usize,
    pub cohomology: Vec<usize>,
    pub degrees: Vec<DegreeSummary>,
}

pub fn ce_report(g: &LieAlgebra) -> Result<CeReport> {
    let h = ce_cohomology(g)?;
    Ok(CeReport { dim: g.dim(), cohomology: h.dims(), degrees: h.summary() })
}

/// Algebroid cohomology against the prediction `Betti ⊛ H(g)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AlgebroidCohomologyReport {
    pub model: String,
    pub complex_dims: Vec<usize>,
    pub betti: Vec<usize>,
    pub lie_algebra_cohomology: Vec<usize>,
    pub computed: Vec<usize>,
    pub predicted: Vec<usize>,
    pub ok: bool,
}

pub fn algebroid_cohomology_report(
    k: &Arc<SimplicialComplex>,
    g: &Arc<LieAlgebra>,
    model: BaseModel,
) -> Result<AlgebroidCohomologyReport> {
    let a = TrivialAlgebroid::new(Arc::new(CarrierFamily::whole(k)), g.clone())?;
    let (_, c) = build_algebroid_complex(&a, model)?;
    let computed = cohomology(&c)?.dims();
    let betti = simplicial_cochain_cohomology(k);
    let hg = ce_cohomology(g)?.dims();
    let predicted = convolve(&betti, &hg);
    Ok(AlgebroidCohomologyReport {
        model: model.to_string(),
        complex_dims: c.dims().to_vec(),
        ok: trim(computed.clone()) == trim(predicted.clone()),
        betti,
        lie_algebra_cohomology: hg,
        computed,
        predicted,
    })
}
