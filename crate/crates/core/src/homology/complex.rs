use num_traits::Zero;
use serde::Serialize;

use super::matrix::RationalMatrix;
use crate::error::{domain, integrity, Result};
use crate::rational::{self, Rational};

/// Finite cochain complex `C^0 -> C^1 -> ... -> C^N` over `Q`.
///
/// `differentials[p]` is the `dims[p+1] x dims[p]` matrix of `D_p`; the last
/// degree maps to zero.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    differentials: Vec<RationalMatrix>,
}

impl CochainComplex {
    /// Validates shapes and `D_{p+1} D_p = 0`.
    pub fn new(
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        differentials: Vec<RationalMatrix>,
    ) -> Result<Self> {
        if differentials.len() + 1 != dims.len().max(1) {
            return Err(domain!(
                "{} differentials for {} degrees",
                differentials.len(),
                dims.len()
            ));
        }
        if labels.len() != dims.len() || labels.iter().zip(&dims).any(|(l, d)| l.len() != *d) {
            return Err(domain!("basis labels do not match the degree dimensions"));
        }
        for (p, d) in differentials.iter().enumerate() {
            if d.rows() != dims[p + 1] || d.cols() != dims[p] {
                return Err(domain!(
                    "D_{p} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[p + 1],
                    dims[p]
                ));
            }
        }
        for p in 0..differentials.len().saturating_sub(1) {
            if !differentials[p + 1].mul(&differentials[p]).is_zero() {
                return Err(integrity!("D_{} D_{p} != 0", p + 1));
            }
        }
        Ok(CochainComplex { dims, labels, differentials })
    }

    /// Complex with unnamed basis vectors.
    pub fn unlabeled(dims: Vec<usize>, differentials: Vec<RationalMatrix>) -> Result<Self> {
        let labels = dims.iter().map(|d| (0..*d).map(|i| format!("e{i}")).collect()).collect();
        Self::new(dims, labels, differentials)
    }

    pub fn zero_differential(dims: Vec<usize>) -> Self {
        let ds = dims.windows(2).map(|w| RationalMatrix::zeros(w[1], w[0])).collect();
        Self::unlabeled(dims, ds).expect("zero complex is valid")
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn num_degrees(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, p: usize) -> usize {
        self.dims.get(p).copied().unwrap_or(0)
    }

    pub fn labels(&self, p: usize) -> &[String] {
        &self.labels[p]
    }

    /// `D_p`, or a zero map when `p` is past the top degree.
    pub fn differential(&self, p: usize) -> RationalMatrix {
        self.differentials
            .get(p)
            .cloned()
            .unwrap_or_else(|| RationalMatrix::zeros(self.dim(p + 1), self.dim(p)))
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }

    /// Degreewise direct sum `self ⊕ other`, padded to the longer length.
    pub fn direct_sum(&self, other: &CochainComplex) -> CochainComplex {
        let n = self.dims.len().max(other.dims.len());
        let dims: Vec<usize> = (0..n).map(|p| self.dim(p) + other.dim(p)).collect();
        let labels = (0..n)
            .map(|p| {
                let a = self.labels.get(p).into_iter().flatten().map(|l| format!("U:{l}"));
                let b = other.labels.get(p).into_iter().flatten().map(|l| format!("V:{l}"));
                a.chain(b).collect()
            })
            .collect();
        let ds = (0..n.saturating_sub(1))
            .map(|p| self.differential(p).block_diag(&other.differential(p)))
            .collect();
        CochainComplex::new(dims, labels, ds).expect("direct sum of complexes is a complex")
    }
}

pub fn alternating_sum(dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(p, d)| if p % 2 == 0 { *d as i64 } else { -(*d as i64) })
        .sum()
}

/// Cohomology in one degree.
#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub dim: usize,
    /// Cocycles whose classes form a basis of `H^p`.
    pub representatives: Vec<Vec<Rational>>,
    /// Basis of `im D_{p-1}`.
    coboundaries: Vec<Vec<Rational>>,
    /// `[coboundaries | representatives]` as columns.
    kernel_frame: RationalMatrix,
    ambient: usize,
}

#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyResult {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }

    pub fn dim(&self, p: usize) -> usize {
        self.degrees.get(p).map_or(0, |d| d.dim)
    }

    /// Coordinates of the class of cocycle `z` in degree `p` with respect to
    /// the representatives. Fails if `z` is not a cocycle of the right size.
    pub fn class_coordinates(&self, p: usize, z: &[Rational]) -> Result<Vec<Rational>> {
        let Some(deg) = self.degrees.get(p) else {
            return if z.iter().all(Zero::is_zero) {
                Ok(Vec::new())
            } else {
                Err(domain!("degree {p} is outside the complex"))
            };
        };
        if z.len() != deg.ambient {
            return Err(domain!("vector of length {} in degree {p} of size {}", z.len(), deg.ambient));
        }
        let x = deg
            .kernel_frame
            .solve(z)
            .ok_or_else(|| domain!("vector is not a cocycle in degree {p}"))?;
        Ok(x[deg.coboundaries.len()..].to_vec())
    }

    /// Whether cocycle `z` is a coboundary.
    pub fn is_coboundary(&self, p: usize, z: &[Rational]) -> Result<bool> {
        Ok(self.class_coordinates(p, z)?.iter().all(Zero::is_zero))
    }

    pub fn summary(&self) -> Vec<DegreeSummary> {
        self.degrees
            .iter()
            .enumerate()
            .map(|(p, d)| DegreeSummary {
                degree: p,
                dim: d.dim,
                representatives: d
                    .representatives
                    .iter()
                    .map(|v| v.iter().map(rational::to_string).collect())
                    .collect(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeSummary {
    pub degree: usize,
    pub dim: usize,
    pub representatives: Vec<Vec<String>>,
}

/// `H^p = ker D_p / im D_{p-1}`, with representatives obtained by extending a
/// basis of `im D_{p-1}` to a basis of `ker D_p` (first pivot-completing vectors).
pub fn cohomology(c: &CochainComplex) -> Result<CohomologyResult> {
    for p in 0..c.num_degrees().saturating_sub(2) {
        if !c.differential(p + 1).mul(&c.differential(p)).is_zero() {
            return Err(integrity!("D_{} D_{p} != 0", p + 1));
        }
    }
    let mut degrees = Vec::with_capacity(c.num_degrees());
    for p in 0..c.num_degrees() {
        let n = c.dim(p);
        let kernel = c.differential(p).rank_kernel_image().kernel;
        let coboundaries = if p == 0 {
            Vec::new()
        } else {
            c.differential(p - 1).rank_kernel_image().image
        };
        let mut columns = coboundaries.clone();
        columns.extend(kernel.iter().cloned());
        let frame = RationalMatrix::from_columns(n, &columns);
        let independent = frame.independent_columns();
        if independent.iter().copied().take(coboundaries.len()).ne(0..coboundaries.len()) {
            return Err(integrity!("image of D_{} is not independent in degree {p}", p as i64 - 1));
        }
        let representatives: Vec<Vec<Rational>> = independent
            .iter()
            .filter(|&&j| j >= coboundaries.len())
            .map(|&j| columns[j].clone())
            .collect();
        if coboundaries.len() + representatives.len() != kernel.len() {
            return Err(integrity!("image of D_{} is not contained in ker D_{p}", p as i64 - 1));
        }
        let mut frame_cols = coboundaries.clone();
        frame_cols.extend(representatives.iter().cloned());
        degrees.push(DegreeCohomology {
            dim: representatives.len(),
            representatives,
            kernel_frame: RationalMatrix::from_columns(n, &frame_cols),
            coboundaries,
            ambient: n,
        });
    }
    Ok(CohomologyResult { degrees })
}

/// Degreewise matrices `F_p : C^p_src -> C^p_tgt` commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub maps: Vec<RationalMatrix>,
}

impl ChainMap {
    /// Checks shapes and `F_{p+1} D^src_p = D^tgt_p F_p`.
    pub fn new(
        source: &CochainComplex,
        target: &CochainComplex,
        maps: Vec<RationalMatrix>,
    ) -> Result<Self> {
        let n = source.num_degrees().max(target.num_degrees());
        if maps.len() != n {
            return Err(domain!("chain map has {} components, expected {n}", maps.len()));
        }
        for (p, f) in maps.iter().enumerate() {
            if f.rows() != target.dim(p) || f.cols() != source.dim(p) {
                return Err(domain!("F_{p} has the wrong shape"));
            }
        }
        for p in 0..n.saturating_sub(1) {
            let lhs = maps[p + 1].mul(&source.differential(p));
            let rhs = target.differential(p).mul(&maps[p]);
            if lhs != rhs {
                return Err(integrity!("chain map does not commute with D in degree {p}"));
            }
        }
        Ok(ChainMap { maps })
    }

    pub fn identity(c: &CochainComplex) -> Self {
        ChainMap { maps: c.dims().iter().map(|d| RationalMatrix::identity(*d)).collect() }
    }

    pub fn zero(source: &CochainComplex, target: &CochainComplex) -> Self {
        let n = source.num_degrees().max(target.num_degrees());
        ChainMap {
            maps: (0..n).map(|p| RationalMatrix::zeros(target.dim(p), source.dim(p))).collect(),
        }
    }

    pub fn map(&self, p: usize) -> &RationalMatrix {
        &self.maps[p]
    }

    pub fn compose(&self, after: &ChainMap) -> ChainMap {
        ChainMap { maps: after.maps.iter().zip(&self.maps).map(|(g, f)| g.mul(f)).collect() }
    }
}

/// `[z] -> [F z]` in representative coordinates, one matrix per degree.
///
/// Also confirms that `F` carries coboundaries to coboundaries.
pub fn induced_map(
    f: &ChainMap,
    source: &CohomologyResult,
    target: &CohomologyResult,
) -> Result<Vec<RationalMatrix>> {
    let mut out = Vec::new();
    for (p, fp) in f.maps.iter().enumerate() {
        let src_dim = source.dim(p);
        let tgt_dim = target.dim(p);
        let mut m = RationalMatrix::zeros(tgt_dim, src_dim);
        if let Some(deg) = source.degrees.get(p) {
            for b in &deg.coboundaries {
                if !target.is_coboundary(p, &fp.mul_vec(b))? {
                    return Err(integrity!("image of a coboundary is not a coboundary in degree {p}"));
                }
            }
            for (j, z) in deg.representatives.iter().enumerate() {
                let coords = target.class_coordinates(p, &fp.mul_vec(z))?;
                for (i, c) in coords.into_iter().enumerate() {
                    m.set(i, j, c);
                }
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Full-rank square matrices in every degree.
pub fn is_isomorphism(maps: &[RationalMatrix]) -> bool {
    maps.iter().all(|m| m.rows() == m.cols() && m.rank() == m.rows())
}

/// The image of a chain map `F: A -> B` as a complex of its own.
#[derive(Clone, Debug)]
pub struct ImageComplex {
    /// The complex on bases of `im F_p` chosen among the columns of `F_p`.
    pub complex: CochainComplex,
    /// `A -> im F`.
    pub corestriction: ChainMap,
    /// `im F -> B`.
    pub inclusion: ChainMap,
}

pub fn image_complex(source: &CochainComplex, target: &CochainComplex, f: &ChainMap) -> Result<ImageComplex> {
    let n = source.num_degrees().max(target.num_degrees());
    let fp = |p: usize| f.maps.get(p).cloned().unwrap_or_else(|| RationalMatrix::zeros(target.dim(p), source.dim(p)));
    let bases: Vec<RationalMatrix> = (0..n)
        .map(|p| {
            let m = fp(p);
            let cols: Vec<Vec<Rational>> = m.independent_columns().into_iter().map(|c| m.column(c)).collect();
            RationalMatrix::from_columns(target.dim(p), &cols)
        })
        .collect();
    let corestriction = (0..n)
        .map(|p| bases[p].solve_matrix(&fp(p)).ok_or_else(|| integrity!("image basis does not span im F_{p}")))
        .collect::<Result<Vec<_>>>()?;
    let ds = (0..n.saturating_sub(1))
        .map(|p| {
            bases[p + 1]
                .solve_matrix(&target.differential(p).mul(&bases[p]))
                .ok_or_else(|| integrity!("im F is not closed under D in degree {p}"))
        })
        .collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = bases.iter().map(RationalMatrix::cols).collect();
    let labels = dims.iter().map(|d| (0..*d).map(|i| format!("im{i}")).collect()).collect();
    let complex = CochainComplex::new(dims, labels, ds)?;
    let corestriction = ChainMap::new(source, &complex, corestriction)?;
    let inclusion = ChainMap::new(&complex, target, bases)?;
    Ok(ImageComplex { complex, corestriction, inclusion })
}

/// Degreewise exactness report for `0 -> A -> B -> C -> 0`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ShortExactCheck {
    pub degree: usize,
    pub injective: bool,
    pub surjective: bool,
    pub composite_zero: bool,
    pub exact_middle: bool,
    pub rank_i: usize,
    pub rank_q: usize,
    pub dims: [usize; 3],
}

impl ShortExactCheck {
    pub fn ok(&self) -> bool {
        self.injective && self.surjective && self.composite_zero && self.exact_middle
    }
}

pub fn check_short_exact(
    a: &CochainComplex,
    b: &CochainComplex,
    c: &CochainComplex,
    i: &ChainMap,
    q: &ChainMap,
) -> Vec<ShortExactCheck> {
    let n = a.num_degrees().max(b.num_degrees()).max(c.num_degrees());
    (0..n)
        .map(|p| {
            let ip = i.maps.get(p).cloned().unwrap_or_else(|| RationalMatrix::zeros(b.dim(p), a.dim(p)));
            let qp = q.maps.get(p).cloned().unwrap_or_else(|| RationalMatrix::zeros(c.dim(p), b.dim(p)));
            let rank_i = ip.rank();
            let rank_q = qp.rank();
            let composite_zero = qp.mul(&ip).is_zero();
            ShortExactCheck {
                degree: p,
                injective: rank_i == a.dim(p),
                surjective: rank_q == c.dim(p),
                composite_zero,
                exact_middle: composite_zero && rank_i + rank_q == b.dim(p),
                rank_i,
                rank_q,
                dims: [a.dim(p), b.dim(p), c.dim(p)],
            }
        })
        .collect()
}

/// A short exact sequence of complexes `0 -> A -i-> B -q-> C -> 0` together
/// with the cohomology of each term.
pub struct ShortExactSequence<'a> {
    pub a: &'a CochainComplex,
    pub b: &'a CochainComplex,
    pub c: &'a CochainComplex,
    pub i: &'a ChainMap,
    pub q: &'a ChainMap,
}

/// Snake-lemma connecting maps `H^p(C) -> H^{p+1}(A)` in representative coordinates.
///
/// Each class is lifted twice (the solver's lift and that lift shifted by the
/// image of a kernel vector of `q`) and both lifts must give the same class.
pub fn connecting_homomorphism(
    ses: &ShortExactSequence<'_>,
    h_a: &CohomologyResult,
    h_c: &CohomologyResult,
) -> Result<Vec<RationalMatrix>> {
    let checks = check_short_exact(ses.a, ses.b, ses.c, ses.i, ses.q);
    if let Some(bad) = checks.iter().find(|c| !c.ok()) {
        return Err(domain!("sequence is not short exact in degree {}: {bad:?}", bad.degree));
    }
    let mut out = Vec::new();
    for p in 0..ses.c.num_degrees() {
        let reps = h_c.degrees.get(p).map_or(&[][..], |d| d.representatives.as_slice());
        let mut m = RationalMatrix::zeros(h_a.dim(p + 1), reps.len());
        if reps.is_empty() {
            out.push(m);
            continue;
        }
        let qp = &ses.q.maps[p];
        let ker_q = qp.rank_kernel_image().kernel;
        let db = ses.b.differential(p);
        let i_next = ses.i.maps.get(p + 1).cloned().unwrap_or_else(|| RationalMatrix::zeros(0, 0));
        let class_of_lift = |lift: &[Rational]| -> Result<Vec<Rational>> {
            let boundary = db.mul_vec(lift);
            if i_next.cols() == 0 {
                return if boundary.iter().all(Zero::is_zero) {
                    Ok(Vec::new())
                } else {
                    Err(integrity!("coboundary of lift escapes the image of i"))
                };
            }
            let a = i_next
                .solve(&boundary)
                .ok_or_else(|| integrity!("coboundary of a lift is not in im i (degree {p})"))?;
            h_a.class_coordinates(p + 1, &a)
        };
        for (j, z) in reps.iter().enumerate() {
            let lift = qp.solve(z).ok_or_else(|| integrity!("q is not surjective in degree {p}"))?;
            let coords = class_of_lift(&lift)?;
            if let Some(k) = ker_q.first() {
                let shifted: Vec<Rational> = lift.iter().zip(k).map(|(x, y)| x + y).collect();
                if class_of_lift(&shifted)? != coords {
                    return Err(integrity!("connecting map depends on the lift (degree {p})"));
                }
            }
            for (i, c) in coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Outcome of an exactness check along a sequence of linear maps.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LongExactReport {
    pub ok: bool,
    /// Index of the first node where `im != ker`.
    pub first_failure: Option<usize>,
    pub node_dims: Vec<usize>,
    pub ranks: Vec<usize>,
}

/// Checks `im = ker` at every node of `V_0 -> V_1 -> ... -> V_n`, treating the
/// sequence as flanked by zero spaces: the first map must be injective and the
/// last surjective.
pub fn verify_long_exact(node_dims: &[usize], maps: &[RationalMatrix]) -> Result<LongExactReport> {
    if maps.len() + 1 != node_dims.len().max(1) {
        return Err(domain!("{} maps for {} nodes", maps.len(), node_dims.len()));
    }
    for (k, m) in maps.iter().enumerate() {
        if m.cols() != node_dims[k] || m.rows() != node_dims[k + 1] {
            return Err(domain!("map {k} is not composable"));
        }
    }
    let ranks: Vec<usize> = maps.iter().map(RationalMatrix::rank).collect();
    let mut first_failure = None;
    for (k, &dim) in node_dims.iter().enumerate() {
        let incoming = if k == 0 { 0 } else { ranks[k - 1] };
        let outgoing = ranks.get(k).copied().unwrap_or(0);
        let composite_zero =
            k == 0 || k == maps.len() || maps[k].mul(&maps[k - 1]).is_zero();
        if !(composite_zero && incoming + outgoing == dim) {
            first_failure = Some(k);
            break;
        }
    }
    Ok(LongExactReport {
        ok: first_failure.is_none(),
        first_failure,
        node_dims: node_dims.to_vec(),
        ranks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    fn interval_complex() -> CochainComplex {
        // C^0 = Q^2 (vertices), C^1 = Q (edge); d f = f(1) - f(0)
        CochainComplex::unlabeled(vec![2, 1], vec![RationalMatrix::from_i64(&[&[-1, 1]])]).unwrap()
    }

    #[test]
    fn rejects_nonzero_square() {
        let d0 = RationalMatrix::from_i64(&[&[1]]);
        let d1 = RationalMatrix::from_i64(&[&[1]]);
        let err = CochainComplex::unlabeled(vec![1, 1, 1], vec![d0, d1]).unwrap_err();
        assert!(matches!(err, crate::error::Error::Integrity(_)));
    }

    #[test]
    fn zero_differential_gives_space_dims() {
        let c = CochainComplex::zero_differential(vec![2, 3, 1]);
        assert_eq!(cohomology(&c).unwrap().dims(), vec![2, 3, 1]);
    }

    #[test]
    fn representatives_are_independent_cocycles() {
        let c = interval_complex();
        let h = cohomology(&c).unwrap();
        assert_eq!(h.dims(), vec![1, 0]);
        let z = &h.degrees[0].representatives[0];
        assert!(c.differential(0).mul_vec(z).iter().all(Zero::is_zero));
        assert_eq!(h.class_coordinates(0, &[int(3), int(3)]).unwrap().len(), 1);
        assert!(h.class_coordinates(0, &[int(1), int(0)]).is_err());
        assert!(h.is_coboundary(1, &[int(5)]).unwrap());
    }

    #[test]
    fn identity_and_zero_maps() {
        let c = interval_complex();
        let h = cohomology(&c).unwrap();
        let id = induced_map(&ChainMap::identity(&c), &h, &h).unwrap();
        assert_eq!(id[0], RationalMatrix::identity(1));
        assert!(is_isomorphism(&id));
        let z = induced_map(&ChainMap::zero(&c, &c), &h, &h).unwrap();
        assert!(z.iter().all(RationalMatrix::is_zero));
    }

    #[test]
    fn chain_map_must_commute() {
        let c = interval_complex();
        let bad = vec![RationalMatrix::identity(2), RationalMatrix::zeros(1, 1)];
        assert!(matches!(ChainMap::new(&c, &c, bad), Err(crate::error::Error::Integrity(_))));
    }

    #[test]
    fn connecting_map_from_zero_quotient_and_split_sequence() {
        let a = interval_complex();
        let zero = CochainComplex::zero_differential(vec![0, 0]);
        let i = ChainMap::identity(&a);
        let q = ChainMap::zero(&a, &zero);
        let ses = ShortExactSequence { a: &a, b: &a, c: &zero, i: &i, q: &q };
        let ha = cohomology(&a).unwrap();
        let hz = cohomology(&zero).unwrap();
        let conn = connecting_homomorphism(&ses, &ha, &hz).unwrap();
        assert!(conn.iter().all(|m| m.cols() == 0));

        // B = A ⊕ C with block-diagonal differential: connecting map vanishes
        let cplx = interval_complex();
        let b = a.direct_sum(&cplx);
        let i = ChainMap {
            maps: vec![
                RationalMatrix::identity(2).vstack(&RationalMatrix::zeros(2, 2)),
                RationalMatrix::identity(1).vstack(&RationalMatrix::zeros(1, 1)),
            ],
        };
        let q = ChainMap {
            maps: vec![
                RationalMatrix::zeros(2, 2).hstack(&RationalMatrix::identity(2)),
                RationalMatrix::zeros(1, 1).hstack(&RationalMatrix::identity(1)),
            ],
        };
        let ses = ShortExactSequence { a: &a, b: &b, c: &cplx, i: &i, q: &q };
        let hc = cohomology(&cplx).unwrap();
        let conn = connecting_homomorphism(&ses, &ha, &hc).unwrap();
        assert!(conn.iter().all(RationalMatrix::is_zero));
    }

    #[test]
    fn nonexact_sequence_is_rejected() {
        let a = interval_complex();
        let z = ChainMap::zero(&a, &a);
        let ses = ShortExactSequence { a: &a, b: &a, c: &a, i: &z, q: &z };
        let h = cohomology(&a).unwrap();
        assert!(connecting_homomorphism(&ses, &h, &h).is_err());
    }

    #[test]
    fn long_exact_examples() {
        let id = RationalMatrix::identity(2);
        let ok = verify_long_exact(&[2, 2], std::slice::from_ref(&id)).unwrap();
        assert!(ok.ok);
        let broken = verify_long_exact(&[2, 2], &[RationalMatrix::zeros(2, 2)]).unwrap();
        assert_eq!(broken.first_failure, Some(0));
        let zeros = verify_long_exact(&[0, 0, 0], &[RationalMatrix::zeros(0, 0), RationalMatrix::zeros(0, 0)]).unwrap();
        assert!(zeros.ok);
    }

    fn random_complex() -> impl Strategy<Value = CochainComplex> {
        // D = B A with A, B chosen so that B A = 0 is forced: D1 = X P, D0 = Q Y where P Q = 0.
        (1usize..4, 1usize..4, 1usize..4, proptest::collection::vec(-2i64..3, 32)).prop_map(
            |(n0, n1, n2, v)| {
                let mut it = v.into_iter().cycle();
                let mut next = || int(it.next().unwrap());
                // split C^1 = ker-part ⊕ rest; D0 lands in the first k coords, D1 reads the others.
                let k = n1 / 2;
                let mut d0 = RationalMatrix::zeros(n1, n0);
                for r in 0..k {
                    for c in 0..n0 {
                        d0.set(r, c, next());
                    }
                }
                let mut d1 = RationalMatrix::zeros(n2, n1);
                for r in 0..n2 {
                    for c in k..n1 {
                        d1.set(r, c, next());
                    }
                }
                CochainComplex::unlabeled(vec![n0, n1, n2], vec![d0, d1]).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn euler_characteristic_is_preserved(c in random_complex()) {
            let h = cohomology(&c).unwrap();
            prop_assert_eq!(alternating_sum(&h.dims()), c.euler_characteristic());
        }

        #[test]
        fn dims_ignore_basis_order(c in random_complex(), seed in 0u64..1000) {
            // permute the middle basis
            let n1 = c.dim(1);
            let mut perm: Vec<usize> = (0..n1).collect();
            perm.rotate_left((seed as usize) % n1.max(1));
            let mut p = RationalMatrix::zeros(n1, n1);
            for (i, &j) in perm.iter().enumerate() { p.set(i, j, int(1)); }
            let pinv = p.transpose();
            let d0 = p.mul(&c.differential(0));
            let d1 = c.differential(1).mul(&pinv);
            let c2 = CochainComplex::unlabeled(c.dims().to_vec(), vec![d0, d1]).unwrap();
            prop_assert_eq!(cohomology(&c).unwrap().dims(), cohomology(&c2).unwrap().dims());
        }
    }
}
