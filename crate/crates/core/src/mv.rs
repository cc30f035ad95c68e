//! Mayer–Vietoris sequences over star covers: the families `F_U`, `F_V`,
//! `F_{U∩V}`, the maps `δ` and `π` on model complexes, short and long
//! exactness checks, the truncation-inclusion square, and the vertex-by-vertex
//! induction over a complex.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebroid::{AlgebroidSpace, TrivialAlgebroid};
use crate::error::{domain, Result};
use crate::homology::{
    check_short_exact, cohomology, connecting_homomorphism, image_complex, induced_map, is_isomorphism,
    verify_long_exact, ChainMap,
    CochainComplex, LongExactReport, RationalMatrix, ShortExactCheck, ShortExactSequence,
};
use crate::liealg::LieAlgebra;
use crate::polyform::{BaseModel, FormSpace};
use crate::rational;
use crate::simplicial::{is_star_cover, CarrierFamily, Simplex, SimplicialComplex};

/// A cover of a family by two unions of open stars.
#[derive(Clone, Debug)]
pub struct StarCoverSplit {
    pub complex: Arc<SimplicialComplex>,
    pub u_generators: Vec<Simplex>,
    pub v_generators: Vec<Simplex>,
    /// `F_U ∪ F_V`; the whole complex for splits built by [`build_split`].
    pub total: Arc<CarrierFamily>,
    pub u: Arc<CarrierFamily>,
    pub v: Arc<CarrierFamily>,
    pub uv: Arc<CarrierFamily>,
}

/// Split specification as read from JSON, with vertex lists per generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitJson {
    #[serde(rename = "U_generators")]
    pub u_generators: Vec<Vec<usize>>,
    #[serde(rename = "V_generators")]
    pub v_generators: Vec<Vec<usize>>,
}

impl SplitJson {
    pub fn build(&self, k: &Arc<SimplicialComplex>) -> Result<StarCoverSplit> {
        let conv = |gs: &[Vec<usize>]| gs.iter().map(|g| Simplex::new(g.clone())).collect::<Result<Vec<_>>>();
        build_split(k, &conv(&self.u_generators)?, &conv(&self.v_generators)?)
    }
}

fn split_families(
    k: &Arc<SimplicialComplex>,
    u_gens: &[Simplex],
    v_gens: &[Simplex],
) -> Result<StarCoverSplit> {
    if u_gens.is_empty() || v_gens.is_empty() {
        return Err(domain!("both sides of a split need at least one generator"));
    }
    let u = CarrierFamily::star(k, u_gens)?;
    let v = CarrierFamily::star(k, v_gens)?;
    let all: Vec<Simplex> = u_gens.iter().chain(v_gens).cloned().collect();
    let total = CarrierFamily::star(k, &all)?;
    let uv = u.intersection(&v)?;
    Ok(StarCoverSplit {
        complex: k.clone(),
        u_generators: u.generators().to_vec(),
        v_generators: v.generators().to_vec(),
        total: Arc::new(total),
        u: Arc::new(u),
        v: Arc::new(v),
        uv: Arc::new(uv),
    })
}

/// The split of `K` into the stars of `u_gens` and of `v_gens`. Fails unless
/// every simplex of `K` has some generator as a face.
pub fn build_split(k: &Arc<SimplicialComplex>, u_gens: &[Simplex], v_gens: &[Simplex]) -> Result<StarCoverSplit> {
    let split = split_families(k, u_gens, v_gens)?;
    if !is_star_cover(k, &[&split.u, &split.v]) {
        let missing = k.simplices().find(|s| !split.u.contains(s) && !split.v.contains(s)).expect("not a cover");
        return Err(domain!("the stars of the generators do not cover {missing}"));
    }
    Ok(StarCoverSplit { total: Arc::new(CarrierFamily::whole(k)), ..split })
}

/// The split of the union of stars of all generators (not necessarily all of `K`).
pub fn build_partial_split(
    k: &Arc<SimplicialComplex>,
    u_gens: &[Simplex],
    v_gens: &[Simplex],
) -> Result<StarCoverSplit> {
    split_families(k, u_gens, v_gens)
}

impl StarCoverSplit {
    pub fn to_json(&self) -> SplitJson {
        let conv = |gs: &[Simplex]| gs.iter().map(|g| g.vertices().to_vec()).collect();
        SplitJson { u_generators: conv(&self.u_generators), v_generators: conv(&self.v_generators) }
    }
}

/// Model complexes of one algebra over the four families of a split.
#[derive(Clone, Debug)]
pub struct SplitSpaces {
    pub total: AlgebroidSpace,
    pub u: AlgebroidSpace,
    pub v: AlgebroidSpace,
    pub uv: AlgebroidSpace,
}

impl SplitSpaces {
    pub fn new(split: &StarCoverSplit, algebra: &Arc<LieAlgebra>, model: BaseModel) -> Result<Self> {
        let space = |f: &Arc<CarrierFamily>| {
            AlgebroidSpace::new(&TrivialAlgebroid::new(f.clone(), algebra.clone())?, model)
        };
        Ok(SplitSpaces { total: space(&split.total)?, u: space(&split.u)?, v: space(&split.v)?, uv: space(&split.uv)? })
    }
}

/// The three complexes and two maps of `0 -> C(K) -δ-> C(U) ⊕ C(V) -π-> C(U∩V) -> 0`.
#[derive(Clone, Debug)]
pub struct MayerVietorisMaps {
    pub total: CochainComplex,
    pub sum: CochainComplex,
    pub uv: CochainComplex,
    pub delta: ChainMap,
    pub pi: ChainMap,
}

/// `δ = (R_U, R_V)`: restriction to both sides.
pub fn delta_map(spaces: &SplitSpaces) -> Result<ChainMap> {
    let ru = spaces.total.restriction_to(&spaces.u)?;
    let rv = spaces.total.restriction_to(&spaces.v)?;
    let n = ru.maps.len().max(rv.maps.len());
    let maps = (0..n)
        .map(|p| {
            let a = ru.maps.get(p).cloned().unwrap_or_else(|| RationalMatrix::zeros(spaces.u.dim(p), spaces.total.dim(p)));
            let b = rv.maps.get(p).cloned().unwrap_or_else(|| RationalMatrix::zeros(spaces.v.dim(p), spaces.total.dim(p)));
            a.vstack(&b)
        })
        .collect();
    Ok(ChainMap { maps })
}

/// `π(ξ, η) = η|_{U∩V} - ξ|_{U∩V}`.
pub fn pi_map(spaces: &SplitSpaces) -> Result<ChainMap> {
    let ru = spaces.u.restriction_to(&spaces.uv)?;
    let rv = spaces.v.restriction_to(&spaces.uv)?;
    let minus = -rational::one();
    let n = ru.maps.len().max(rv.maps.len());
    let maps = (0..n)
        .map(|p| {
            let a = ru.maps.get(p).cloned().unwrap_or_else(|| RationalMatrix::zeros(spaces.uv.dim(p), spaces.u.dim(p)));
            let b = rv.maps.get(p).cloned().unwrap_or_else(|| RationalMatrix::zeros(spaces.uv.dim(p), spaces.v.dim(p)));
            a.scale(&minus).hstack(&b)
        })
        .collect();
    Ok(ChainMap { maps })
}

/// The complexes and maps of the sequence, with the chain-map property of `δ`
/// and `π` checked.
pub fn mayer_vietoris_maps(spaces: &SplitSpaces) -> Result<MayerVietorisMaps> {
    let total = spaces.total.cochain_complex()?;
    let u = spaces.u.cochain_complex()?;
    let v = spaces.v.cochain_complex()?;
    let uv = spaces.uv.cochain_complex()?;
    let sum = u.direct_sum(&v);
    let delta = pad(delta_map(spaces)?, &total, &sum);
    let pi = pad(pi_map(spaces)?, &sum, &uv);
    let delta = ChainMap::new(&total, &sum, delta.maps)?;
    let pi = ChainMap::new(&sum, &uv, pi.maps)?;
    Ok(MayerVietorisMaps { total, sum, uv, delta, pi })
}

fn pad(f: ChainMap, source: &CochainComplex, target: &CochainComplex) -> ChainMap {
    let n = source.num_degrees().max(target.num_degrees());
    let maps = (0..n)
        .map(|p| f.maps.get(p).cloned().unwrap_or_else(|| RationalMatrix::zeros(target.dim(p), source.dim(p))))
        .collect();
    ChainMap { maps }
}

/// Per-degree outcome of the short-exactness checks.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ShortExactDegree {
    pub degree: usize,
    /// `[dim C(K), dim C(U) ⊕ C(V), dim C(U∩V)]` at the base truncation.
    pub dims: [usize; 3],
    pub rank_delta: usize,
    pub rank_pi: usize,
    pub delta_injective: bool,
    pub pi_after_delta_zero: bool,
    /// `im δ = ker π`, from `rank δ + rank π = dim C(U) ⊕ C(V)`.
    pub exact_middle: bool,
    /// `π` onto `C(U∩V)` at the same truncation (reported, not required).
    pub pi_surjective: bool,
    /// The model on `U∩V`, included into `P_{r+1}(U∩V)`, lies in the image of
    /// `π` on the `P_{r+1}` models.
    pub headroom_surjective: bool,
    /// `dim` of the part of the included model not reached by `π` on `P_{r+1}`.
    pub headroom_deficit: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ShortExactReport {
    pub model: String,
    pub headroom_model: String,
    pub degrees: Vec<ShortExactDegree>,
    pub euler: EulerBookkeeping,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EulerBookkeeping {
    pub total: i64,
    pub u: i64,
    pub v: i64,
    pub uv: i64,
    pub holds: bool,
}

/// Polynomial degree one above the coefficients of `model`.
pub fn headroom_model(model: BaseModel) -> BaseModel {
    match model {
        BaseModel::Whitney => BaseModel::Pr(2),
        BaseModel::Pr(r) => BaseModel::Pr(r + 1),
    }
}

/// Checks `0 -> C(K) -> C(U) ⊕ C(V) -> C(U∩V)` degreewise at the model
/// truncation, and surjectivity onto `C(U∩V)` with one degree of polynomial
/// headroom. `ok` requires injectivity, exactness in the middle and the
/// headroom surjectivity in every degree.
pub fn verify_short_exact(split: &StarCoverSplit, algebra: &Arc<LieAlgebra>, model: BaseModel) -> Result<ShortExactReport> {
    let spaces = SplitSpaces::new(split, algebra, model)?;
    let mv = mayer_vietoris_maps(&spaces)?;
    let up = headroom_model(model);
    let high = SplitSpaces::new(split, algebra, up)?;
    let high_pi = pi_map(&high)?;
    let include = spaces.uv.tensor_map(&high.uv, &spaces.uv.base().inclusion_into(high.uv.base())?)?;
    let checks: Vec<ShortExactCheck> = check_short_exact(&mv.total, &mv.sum, &mv.uv, &mv.delta, &mv.pi);
    let degrees: Vec<ShortExactDegree> = checks
        .iter()
        .map(|c| {
            let p = c.degree;
            let pi_hi = high_pi.maps.get(p).cloned().unwrap_or_else(|| RationalMatrix::zeros(high.uv.dim(p), 0));
            let inc = include.maps.get(p).cloned().unwrap_or_else(|| RationalMatrix::zeros(high.uv.dim(p), 0));
            let base_rank = pi_hi.rank();
            let deficit = pi_hi.hstack(&inc).rank() - base_rank;
            ShortExactDegree {
                degree: p,
                dims: c.dims,
                rank_delta: c.rank_i,
                rank_pi: c.rank_q,
                delta_injective: c.injective,
                pi_after_delta_zero: c.composite_zero,
                exact_middle: c.exact_middle,
                pi_surjective: c.surjective,
                headroom_surjective: deficit == 0,
                headroom_deficit: deficit,
            }
        })
        .collect();
    let chi = |c: &CochainComplex| c.euler_characteristic();
    let (u, v) = (spaces.u.cochain_complex()?, spaces.v.cochain_complex()?);
    let euler = EulerBookkeeping {
        total: chi(&mv.total),
        u: chi(&u),
        v: chi(&v),
        uv: chi(&mv.uv),
        holds: chi(&mv.total) == chi(&u) + chi(&v) - chi(&mv.uv),
    };
    let ok = degrees.iter().all(|d| d.delta_injective && d.exact_middle && d.headroom_surjective);
    Ok(ShortExactReport { model: model.to_string(), headroom_model: up.to_string(), degrees, euler, ok })
}

/// The long exact cohomology sequence of a split, verified node by node.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LongExactSequenceReport {
    pub h_total: Vec<usize>,
    pub h_u: Vec<usize>,
    pub h_v: Vec<usize>,
    pub h_uv: Vec<usize>,
    /// Whether `π` is onto the `U∩V` model at this truncation.
    pub pi_surjective: bool,
    /// When `π` is not onto: whether `im π ⊂ C(U∩V)` induces an isomorphism
    /// on cohomology, so that the sequence through `im π` computes `H(U∩V)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image_quasi_isomorphic: Option<bool>,
    /// Ranks of `H(δ)`, `H(π)` and the connecting maps per degree.
    pub rank_delta: Vec<usize>,
    pub rank_pi: Vec<usize>,
    pub rank_connecting: Vec<usize>,
    pub exactness: LongExactReport,
    pub ok: bool,
}

/// Cohomology at `K`, `U ⊕ V` and `U∩V`, the induced maps, the connecting
/// homomorphisms, and exactness of
/// `H^0(K) -> H^0(U)⊕H^0(V) -> H^0(U∩V) -> H^1(K) -> ...`.
///
/// When `π` is not onto the `U∩V` model at this truncation, the sequence is
/// formed with the subcomplex `im π` in place of `C(U∩V)`, and the inclusion
/// `im π ⊂ C(U∩V)` must be a quasi-isomorphism for the report to pass.
/// Fails when `im δ != ker π`.
pub fn mv_long_exact(split: &StarCoverSplit, algebra: &Arc<LieAlgebra>, model: BaseModel) -> Result<LongExactSequenceReport> {
    let spaces = SplitSpaces::new(split, algebra, model)?;
    let mv = mayer_vietoris_maps(&spaces)?;
    let h_total = cohomology(&mv.total)?;
    let h_sum = cohomology(&mv.sum)?;
    let h_uv = cohomology(&mv.uv)?;
    let h_u = cohomology(&spaces.u.cochain_complex()?)?;
    let h_v = cohomology(&spaces.v.cochain_complex()?)?;
    let pi_surjective = check_short_exact(&mv.total, &mv.sum, &mv.uv, &mv.delta, &mv.pi).iter().all(|c| c.surjective);
    let (third, q, image_quasi_isomorphic) = if pi_surjective {
        (mv.uv.clone(), mv.pi.clone(), None)
    } else {
        let im = image_complex(&mv.sum, &mv.uv, &mv.pi)?;
        let h_im = cohomology(&im.complex)?;
        let hj = induced_map(&im.inclusion, &h_im, &h_uv)?;
        (im.complex, im.corestriction, Some(is_isomorphism(&hj)))
    };
    let h_third = cohomology(&third)?;
    let hd = induced_map(&mv.delta, &h_total, &h_sum)?;
    let hp = induced_map(&q, &h_sum, &h_third)?;
    let ses = ShortExactSequence { a: &mv.total, b: &mv.sum, c: &third, i: &mv.delta, q: &q };
    let conn = connecting_homomorphism(&ses, &h_total, &h_third)?;
    let n = mv.total.num_degrees().max(mv.sum.num_degrees()).max(third.num_degrees());
    let mut node_dims = Vec::new();
    let mut maps = Vec::new();
    for p in 0..n {
        node_dims.extend([h_total.dim(p), h_sum.dim(p), h_third.dim(p)]);
        maps.push(hd.get(p).cloned().unwrap_or_else(|| RationalMatrix::zeros(h_sum.dim(p), h_total.dim(p))));
        maps.push(hp.get(p).cloned().unwrap_or_else(|| RationalMatrix::zeros(h_third.dim(p), h_sum.dim(p))));
        if p + 1 < n {
            maps.push(conn.get(p).cloned().unwrap_or_else(|| RationalMatrix::zeros(h_total.dim(p + 1), h_third.dim(p))));
        }
    }
    let exactness = verify_long_exact(&node_dims, &maps)?;
    Ok(LongExactSequenceReport {
        h_total: h_total.dims(),
        h_u: h_u.dims(),
        h_v: h_v.dims(),
        h_uv: h_uv.dims(),
        pi_surjective,
        image_quasi_isomorphic,
        rank_delta: hd.iter().map(RationalMatrix::rank).collect(),
        rank_pi: hp.iter().map(RationalMatrix::rank).collect(),
        rank_connecting: conn.iter().map(RationalMatrix::rank).collect(),
        ok: exactness.ok && image_quasi_isomorphic != Some(false),
        exactness,
    })
}

/// Commutativity of the squares formed by `δ`, `π` at two truncations and the
/// inclusions of the smaller model into the larger one on `K`, `U ⊕ V` and `U∩V`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TruncationSquareReport {
    pub from: String,
    pub to: String,
    pub delta_square_commutes: bool,
    pub pi_square_commutes: bool,
}

impl TruncationSquareReport {
    pub fn ok(&self) -> bool {
        self.delta_square_commutes && self.pi_square_commutes
    }
}

pub fn truncation_square(
    split: &StarCoverSplit,
    algebra: &Arc<LieAlgebra>,
    from: BaseModel,
    to: BaseModel,
) -> Result<TruncationSquareReport> {
    let lo = SplitSpaces::new(split, algebra, from)?;
    let hi = SplitSpaces::new(split, algebra, to)?;
    let mv_lo = mayer_vietoris_maps(&lo)?;
    let mv_hi = mayer_vietoris_maps(&hi)?;
    let inc = |a: &AlgebroidSpace, b: &AlgebroidSpace| -> Result<ChainMap> {
        a.tensor_map(b, &a.base().inclusion_into(b.base())?)
    };
    let i_total = inc(&lo.total, &hi.total)?;
    let i_uv = inc(&lo.uv, &hi.uv)?;
    let (iu, iv) = (inc(&lo.u, &hi.u)?, inc(&lo.v, &hi.v)?);
    let n = mv_lo.sum.num_degrees().max(mv_hi.sum.num_degrees());
    let get = |f: &ChainMap, p: usize, r: usize, c: usize| f.maps.get(p).cloned().unwrap_or_else(|| RationalMatrix::zeros(r, c));
    let mut delta_ok = true;
    let mut pi_ok = true;
    for p in 0..n {
        let i_sum = get(&iu, p, hi.u.dim(p), lo.u.dim(p)).block_diag(&get(&iv, p, hi.v.dim(p), lo.v.dim(p)));
        let it = get(&i_total, p, hi.total.dim(p), lo.total.dim(p));
        let d_lo = get(&mv_lo.delta, p, mv_lo.sum.dim(p), mv_lo.total.dim(p));
        let d_hi = get(&mv_hi.delta, p, mv_hi.sum.dim(p), mv_hi.total.dim(p));
        delta_ok &= i_sum.mul(&d_lo) == d_hi.mul(&it);
        let iuv = get(&i_uv, p, hi.uv.dim(p), lo.uv.dim(p));
        let p_lo = get(&mv_lo.pi, p, mv_lo.uv.dim(p), mv_lo.sum.dim(p));
        let p_hi = get(&mv_hi.pi, p, mv_hi.uv.dim(p), mv_hi.sum.dim(p));
        pi_ok &= iuv.mul(&p_lo) == p_hi.mul(&i_sum);
    }
    Ok(TruncationSquareReport {
        from: from.to_string(),
        to: to.to_string(),
        delta_square_commutes: delta_ok,
        pi_square_commutes: pi_ok,
    })
}

/// One step of the induction over vertices: `W = U ∪ V` with `U` the stars of
/// the first `k` vertices and `V` the star of vertex `k + 1`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InductionStep {
    pub step: usize,
    pub u_vertices: Vec<usize>,
    pub v_vertex: usize,
    pub sequence: LongExactSequenceReport,
}

/// Runs the Mayer–Vietoris sequence for each step of the vertex induction.
/// The last step's `W` is the whole complex.
pub fn vertex_induction(k: &Arc<SimplicialComplex>, algebra: &Arc<LieAlgebra>, model: BaseModel) -> Result<Vec<InductionStep>> {
    let vertices = k.vertices();
    let mut steps = Vec::new();
    for n in 1..vertices.len() {
        let u: Vec<Simplex> = vertices[..n].iter().map(|&v| Simplex::vertex(v)).collect();
        let v = Simplex::vertex(vertices[n]);
        let split = build_partial_split(k, &u, &[v])?;
        if split.uv.is_empty() {
            return Err(domain!("vertex {} does not meet the stars of the earlier vertices", vertices[n]));
        }
        steps.push(InductionStep {
            step: n,
            u_vertices: vertices[..n].to_vec(),
            v_vertex: vertices[n],
            sequence: mv_long_exact(&split, algebra, model)?,
        });
    }
    Ok(steps)
}

/// Cohomology of the model on the star of `sigma`.
pub fn star_cohomology(k: &Arc<SimplicialComplex>, sigma: &Simplex, algebra: &Arc<LieAlgebra>, model: BaseModel) -> Result<Vec<usize>> {
    let family = Arc::new(CarrierFamily::star(k, std::slice::from_ref(sigma))?);
    let space = AlgebroidSpace::new(&TrivialAlgebroid::new(family, algebra.clone())?, model)?;
    Ok(cohomology(&space.cochain_complex()?)?.dims())
}

/// Base-model restriction `R: FormSpace(F) -> FormSpace(F')` as a scalar chain map.
pub fn base_restriction(source: &FormSpace, target: &FormSpace) -> Result<ChainMap> {
    source.restriction_to(target)
}
