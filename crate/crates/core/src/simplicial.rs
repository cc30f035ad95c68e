//! Finite abstract simplicial complexes, stars and carrier families, barycentric
//! subdivision, and a simplicial-cochain Betti number oracle.
//!
//! Simplices are stored as strictly ascending vertex lists; that order is the
//! orientation used by every sign convention in the crate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::homology::RationalMatrix;
use crate::rational::{self, Rational};

/// Default cap on the number of simplices in a complex.
pub const DEFAULT_MAX_SIMPLICES: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Canonicalizes an unordered vertex list. Rejects empty lists and repeats.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::MalformedInput("empty simplex".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedInput(format!(
                "duplicate vertex in simplex {vertices:?}"
            )));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Position of vertex `v` in the ascending vertex list.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    /// `self ⪯ other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// All non-empty faces, including `self`, in lexicographic order.
    pub fn faces(&self) -> BTreeSet<Simplex> {
        let n = self.0.len();
        (1u64..(1u64 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    /// Codimension-one faces; the `i`-th entry omits the `i`-th vertex.
    pub fn boundary_faces(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|i| {
                let mut v = self.0.clone();
                v.remove(i);
                Simplex(v)
            })
            .collect()
    }

    /// Union of vertex sets (not necessarily a simplex of any given complex).
    pub fn join(&self, other: &Simplex) -> Simplex {
        let set: BTreeSet<usize> = self.0.iter().chain(other.0.iter()).copied().collect();
        Simplex(set.into_iter().collect())
    }
}

impl TryFrom<Vec<usize>> for Simplex {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<usize> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
    by_dim: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    /// Face closure of the given simplices, with the default size cap.
    pub fn build(maximal: &[Vec<usize>]) -> Result<Self> {
        Self::build_with_limit(maximal, DEFAULT_MAX_SIMPLICES)
    }

    pub fn build_with_limit(maximal: &[Vec<usize>], max_simplices: usize) -> Result<Self> {
        let mut simplices = BTreeSet::new();
        for verts in maximal {
            let s = Simplex::new(verts.clone())?;
            if s.0.len() >= 63 || (1usize << s.0.len()) - 1 > max_simplices {
                return Err(Error::SizeLimit(format!(
                    "simplex {s} alone exceeds the {max_simplices}-simplex limit"
                )));
            }
            simplices.extend(s.faces());
            if simplices.len() > max_simplices {
                return Err(Error::SizeLimit(format!(
                    "complex exceeds {max_simplices} simplices"
                )));
            }
        }
        Ok(Self::from_closed_set(simplices))
    }

    fn from_closed_set(simplices: BTreeSet<Simplex>) -> Self {
        let top = simplices.iter().map(Simplex::dim).max();
        let mut by_dim = vec![Vec::new(); top.map_or(0, |d| d + 1)];
        for s in &simplices {
            by_dim[s.dim()].push(s.clone());
        }
        SimplicialComplex { simplices, by_dim }
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    /// Top dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn of_dim(&self, d: usize) -> &[Simplex] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.of_dim(0).iter().map(|s| s.0[0]).collect()
    }

    /// Number of simplices per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, v)| if d % 2 == 0 { v.len() as i64 } else { -(v.len() as i64) })
            .sum()
    }

    /// Simplices that are not a proper face of another simplex, lexicographic.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|s| {
                !self.by_dim.get(s.dim() + 1).is_some_and(|up| up.iter().any(|t| s.is_face_of(t)))
            })
            .cloned()
            .collect()
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            maximal_simplices: self.maximal_simplices().into_iter().map(|s| s.0).collect(),
        }
    }
}

/// On-disk complex format: `{"maximal_simplices": [[0,1,2],[2,3]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub maximal_simplices: Vec<Vec<usize>>,
}

impl ComplexFile {
    pub fn build(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::build(&self.maximal_simplices)
    }
}

pub fn build_complex(maximal_simplices: &[Vec<usize>]) -> Result<SimplicialComplex> {
    SimplicialComplex::build(maximal_simplices)
}

pub fn faces(s: &Simplex) -> BTreeSet<Simplex> {
    s.faces()
}

/// The simplices of `K` having some generator as a face: the combinatorial
/// shadow of the union of open stars of the generators.
///
/// Members carry an `open` flag, set when some face of the member is not
/// itself a member (the member meets the union of stars in a non-closed set).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarrierFamily {
    complex: Arc<SimplicialComplex>,
    generators: Vec<Simplex>,
    members: BTreeMap<Simplex, bool>,
}

impl CarrierFamily {
    pub fn star(complex: &Arc<SimplicialComplex>, generators: &[Simplex]) -> Result<Self> {
        for g in generators {
            if !complex.contains(g) {
                return Err(domain!("generator {g} is not a simplex of the complex"));
            }
        }
        let mut gens = generators.to_vec();
        gens.sort();
        gens.dedup();
        let mut ids: BTreeSet<Simplex> = BTreeSet::new();
        for s in complex.simplices() {
            if gens.iter().any(|g| g.is_face_of(s)) {
                ids.insert(s.clone());
            }
        }
        Ok(Self::from_member_set(complex.clone(), gens, ids))
    }

    /// The family of the whole complex (generated by all vertices).
    pub fn whole(complex: &Arc<SimplicialComplex>) -> Self {
        let gens: Vec<Simplex> = complex.of_dim(0).to_vec();
        let ids: BTreeSet<Simplex> = complex.simplices().cloned().collect();
        Self::from_member_set(complex.clone(), gens, ids)
    }

    fn from_member_set(
        complex: Arc<SimplicialComplex>,
        generators: Vec<Simplex>,
        ids: BTreeSet<Simplex>,
    ) -> Self {
        let members = ids
            .iter()
            .map(|s| {
                let open = s.faces().iter().any(|f| !ids.contains(f));
                (s.clone(), open)
            })
            .collect();
        CarrierFamily { complex, generators, members }
    }

    /// Members common to both families, with the union of generators.
    ///
    /// For star families this is the family of `U ∩ V`: simplices having a
    /// generator of each side as a face.
    pub fn intersection(&self, other: &CarrierFamily) -> Result<Self> {
        if !Arc::ptr_eq(&self.complex, &other.complex) && self.complex != other.complex {
            return Err(domain!("families live on different complexes"));
        }
        let ids: BTreeSet<Simplex> = self
            .members
            .keys()
            .filter(|s| other.members.contains_key(*s))
            .cloned()
            .collect();
        let mut gens: Vec<Simplex> =
            self.generators.iter().chain(other.generators.iter()).cloned().collect();
        gens.sort();
        gens.dedup();
        Ok(Self::from_member_set(self.complex.clone(), gens, ids))
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn generators(&self) -> &[Simplex] {
        &self.generators
    }

    pub fn members(&self) -> impl Iterator<Item = &Simplex> {
        self.members.keys()
    }

    pub fn members_with_flags(&self) -> impl Iterator<Item = (&Simplex, bool)> {
        self.members.iter().map(|(s, o)| (s, *o))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.members.contains_key(s)
    }

    pub fn is_open(&self, s: &Simplex) -> Option<bool> {
        self.members.get(s).copied()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.members.keys().map(Simplex::dim).max()
    }

    /// Every member of `self` is a member of `other`, on the same complex.
    pub fn is_subfamily_of(&self, other: &CarrierFamily) -> bool {
        (Arc::ptr_eq(&self.complex, &other.complex) || self.complex == other.complex)
            && self.members.keys().all(|s| other.members.contains_key(s))
    }

    pub fn same_members(&self, other: &CarrierFamily) -> bool {
        self.members.len() == other.members.len()
            && self.members.keys().eq(other.members.keys())
    }

    /// Pairs `(face, member)` with both in the family and `face` of
    /// codimension one in `member`. Compatibility along these pairs implies
    /// compatibility along all face pairs of the family.
    pub fn codim_one_pairs(&self) -> Vec<(Simplex, Simplex)> {
        let mut out = Vec::new();
        for s in self.members.keys() {
            for f in s.boundary_faces() {
                if self.members.contains_key(&f) {
                    out.push((f, s.clone()));
                }
            }
        }
        out
    }
}

pub fn star_family(k: &Arc<SimplicialComplex>, generators: &[Simplex]) -> Result<CarrierFamily> {
    CarrierFamily::star(k, generators)
}

/// True iff every simplex of `K` belongs to at least one family.
pub fn is_star_cover(k: &SimplicialComplex, families: &[&CarrierFamily]) -> bool {
    k.simplices().all(|s| families.iter().any(|f| f.contains(s)))
}

/// Barycentric subdivision `L` of `K`.
///
/// Vertex `i` of `L` is the barycenter of the `i`-th simplex of `K` in
/// lexicographic order. Simplices of `L` are flags of `K`.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub base: Arc<SimplicialComplex>,
    pub complex: Arc<SimplicialComplex>,
    /// K-simplex whose barycenter is the given L-vertex.
    pub vertex_simplex: Vec<Simplex>,
    /// Smallest K-simplex containing each L-simplex.
    pub carrier: BTreeMap<Simplex, Simplex>,
}

impl Subdivision {
    /// Barycentric coordinates of L-vertex `w` with respect to its own carrier.
    pub fn coords(&self, w: usize) -> Vec<Rational> {
        let s = &self.vertex_simplex[w];
        let n = s.vertices().len() as i64;
        vec![rational::frac(1, n); s.vertices().len()]
    }

    /// Barycentric coordinates of L-vertex `w` with respect to `delta ⊇ carrier(w)`.
    pub fn coords_in(&self, w: usize, delta: &Simplex) -> Result<Vec<Rational>> {
        let s = &self.vertex_simplex[w];
        if !s.is_face_of(delta) {
            return Err(domain!("vertex {w} of the subdivision does not lie in {delta}"));
        }
        let weight = rational::frac(1, s.vertices().len() as i64);
        Ok(delta
            .vertices()
            .iter()
            .map(|v| if s.contains_vertex(*v) { weight.clone() } else { rational::zero() })
            .collect())
    }
}

pub fn barycentric_subdivision(k: &Arc<SimplicialComplex>) -> Result<Subdivision> {
    let vertex_simplex: Vec<Simplex> = k.simplices().cloned().collect();
    let index: BTreeMap<&Simplex, usize> =
        vertex_simplex.iter().enumerate().map(|(i, s)| (s, i)).collect();

    // Every flag is a strictly decreasing chain of faces starting at its carrier.
    let mut flags: Vec<Vec<usize>> = Vec::new();
    let mut carrier_of: Vec<usize> = Vec::new();
    for top_id in 0..vertex_simplex.len() {
        let mut stack: Vec<Vec<usize>> = vec![vec![top_id]];
        while let Some(chain) = stack.pop() {
            let smallest = &vertex_simplex[*chain.last().unwrap()];
            for f in smallest.faces() {
                if &f != smallest {
                    let mut next = chain.clone();
                    next.push(index[&f]);
                    stack.push(next);
                }
            }
            flags.push(chain);
            carrier_of.push(top_id);
        }
    }
    let mut simplices = BTreeSet::new();
    let mut carrier = BTreeMap::new();
    for (chain, top) in flags.into_iter().zip(carrier_of) {
        let s = Simplex::new(chain)?;
        carrier.insert(s.clone(), vertex_simplex[top].clone());
        simplices.insert(s);
    }
    if simplices.len() > DEFAULT_MAX_SIMPLICES {
        return Err(Error::SizeLimit(format!(
            "subdivision has {} simplices",
            simplices.len()
        )));
    }
    Ok(Subdivision {
        base: k.clone(),
        complex: Arc::new(SimplicialComplex::from_closed_set(simplices)),
        vertex_simplex,
        carrier,
    })
}

/// Coboundary matrix `C^p -> C^{p+1}` on oriented simplices (ascending order).
pub fn coboundary_matrix(k: &SimplicialComplex, p: usize) -> RationalMatrix {
    let src = k.of_dim(p);
    let tgt = k.of_dim(p + 1);
    let col: BTreeMap<&Simplex, usize> = src.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = RationalMatrix::zeros(tgt.len(), src.len());
    for (r, t) in tgt.iter().enumerate() {
        for (i, f) in t.boundary_faces().iter().enumerate() {
            m.set(r, col[f], rational::sign(i));
        }
    }
    m
}

/// Rational Betti numbers from the simplicial coboundary, degrees `0..=dim K`.
pub fn simplicial_cochain_cohomology(k: &SimplicialComplex) -> Vec<usize> {
    let Some(top) = k.dim() else { return Vec::new() };
    let ranks: Vec<usize> = (0..top).map(|p| coboundary_matrix(k, p).rank()).collect();
    (0..=top)
        .map(|p| {
            let n = k.of_dim(p).len();
            let out = if p < top { ranks[p] } else { 0 };
            let inc = if p > 0 { ranks[p - 1] } else { 0 };
            n - out - inc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> Arc<SimplicialComplex> {
        Arc::new(build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap())
    }

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn build_examples() {
        let c = circle();
        assert_eq!(c.f_vector(), vec![3, 3]);
        let t = build_complex(&[vec![0, 1, 2]]).unwrap();
        assert_eq!(t.len(), 7);
        assert!(matches!(build_complex(&[vec![0, 0, 1]]), Err(Error::MalformedInput(_))));
        assert!(matches!(build_complex(&[vec![]]), Err(Error::MalformedInput(_))));
    }

    #[test]
    fn size_limit_is_enforced() {
        let err = SimplicialComplex::build_with_limit(&[vec![0, 1, 2, 3]], 10).unwrap_err();
        assert!(matches!(err, Error::SizeLimit(_)));
    }

    #[test]
    fn closure_is_idempotent() {
        let k = build_complex(&[vec![0, 1, 2], vec![2, 3], vec![3, 4, 5, 6]]).unwrap();
        let all: Vec<Vec<usize>> = k.simplices().map(|s| s.vertices().to_vec()).collect();
        assert_eq!(build_complex(&all).unwrap(), k);
        assert_eq!(k.to_file().build().unwrap(), k);
    }

    #[test]
    fn faces_examples() {
        assert_eq!(faces(&s(&[0, 1])), [s(&[0]), s(&[1]), s(&[0, 1])].into_iter().collect());
        assert_eq!(faces(&s(&[0])).len(), 1);
        assert_eq!(faces(&s(&[0, 1, 2])).len(), 7);
    }

    #[test]
    fn star_examples() {
        let c = circle();
        let st = star_family(&c, &[s(&[0])]).unwrap();
        let got: Vec<&Simplex> = st.members().collect();
        assert_eq!(got, vec![&s(&[0]), &s(&[0, 1]), &s(&[0, 2])]);
        assert_eq!(st.is_open(&s(&[0, 1])), Some(true));
        assert_eq!(st.is_open(&s(&[0])), Some(false));

        let t = Arc::new(build_complex(&[vec![0, 1, 2]]).unwrap());
        let top = star_family(&t, &[s(&[0, 1, 2])]).unwrap();
        assert_eq!(top.members().cloned().collect::<Vec<_>>(), vec![s(&[0, 1, 2])]);

        let all = star_family(&t, t.of_dim(0)).unwrap();
        assert!(all.same_members(&CarrierFamily::whole(&t)));
        assert!(star_family(&c, &[s(&[0, 1, 2])]).is_err());
    }

    #[test]
    fn star_cover_examples() {
        let c = circle();
        let stars: Vec<CarrierFamily> =
            (0..3).map(|v| star_family(&c, &[Simplex::vertex(v)]).unwrap()).collect();
        assert!(is_star_cover(&c, &stars.iter().collect::<Vec<_>>()));
        assert!(!is_star_cover(&c, &[&stars[0]]));
        let p = Arc::new(build_complex(&[vec![7]]).unwrap());
        let st = star_family(&p, &[Simplex::vertex(7)]).unwrap();
        assert!(is_star_cover(&p, &[&st]));
    }

    #[test]
    fn stars_are_upward_closed_exhaustively() {
        let k = Arc::new(
            build_complex(&[vec![0, 1, 2], vec![1, 2, 3], vec![3, 4], vec![4, 5, 6]]).unwrap(),
        );
        assert!(k.len() <= 50);
        for sigma in k.simplices() {
            let f = star_family(&k, std::slice::from_ref(sigma)).unwrap();
            for m in f.members() {
                assert!(k.contains(m));
                assert!(sigma.is_face_of(m));
            }
            let expected = k.simplices().filter(|t| sigma.is_face_of(t)).count();
            assert_eq!(f.len(), expected);
        }
    }

    #[test]
    fn subdivision_examples() {
        let i = Arc::new(build_complex(&[vec![0, 1]]).unwrap());
        let sd = barycentric_subdivision(&i).unwrap();
        assert_eq!(sd.complex.f_vector(), vec![3, 2]);

        let sdc = barycentric_subdivision(&circle()).unwrap();
        assert_eq!(sdc.complex.f_vector(), vec![6, 6]);
        // every vertex of the 6-cycle has exactly two neighbours
        for v in sdc.complex.vertices() {
            let deg = sdc.complex.of_dim(1).iter().filter(|e| e.contains_vertex(v)).count();
            assert_eq!(deg, 2);
        }

        let t = Arc::new(build_complex(&[vec![0, 1, 2]]).unwrap());
        let sdt = barycentric_subdivision(&t).unwrap();
        assert_eq!(sdt.complex.f_vector(), vec![7, 12, 6]);
        for (l, c) in &sdt.carrier {
            let top = l.vertices().iter().map(|w| &sdt.vertex_simplex[*w]).max_by_key(|s| s.dim());
            assert_eq!(top, Some(c));
        }
        assert_eq!(sdt.coords(6).len(), sdt.vertex_simplex[6].vertices().len());
    }

    #[test]
    fn subdivision_preserves_euler_and_betti() {
        for k in [
            build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap(),
            build_complex(&[vec![0, 1, 2]]).unwrap(),
            build_complex(&[vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]]).unwrap(),
            build_complex(&[vec![0, 1], vec![2]]).unwrap(),
        ] {
            let k = Arc::new(k);
            let sd = barycentric_subdivision(&k).unwrap();
            assert_eq!(k.euler_characteristic(), sd.complex.euler_characteristic());
            assert_eq!(
                simplicial_cochain_cohomology(&k),
                simplicial_cochain_cohomology(&sd.complex)
            );
        }
    }

    #[test]
    fn betti_examples() {
        assert_eq!(simplicial_cochain_cohomology(&circle()), vec![1, 1]);
        let sphere =
            build_complex(&[vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]]).unwrap();
        assert_eq!(simplicial_cochain_cohomology(&sphere), vec![1, 0, 1]);
        let disk = build_complex(&[vec![0, 1, 2]]).unwrap();
        assert_eq!(simplicial_cochain_cohomology(&disk), vec![1, 0, 0]);
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let k = build_complex(&[vec![0, 1, 2, 3], vec![3, 4, 5]]).unwrap();
        for p in 0..2 {
            let prod = coboundary_matrix(&k, p + 1).mul(&coboundary_matrix(&k, p));
            assert!(prod.is_zero());
        }
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let f: ComplexFile =
            serde_json::from_str(r#"{"maximal_simplices": [[2,1,0],[3,2]]}"#).unwrap();
        let k = f.build().unwrap();
        let out = serde_json::to_string(&k.to_file()).unwrap();
        assert_eq!(out, r#"{"maximal_simplices":[[0,1,2],[2,3]]}"#);
    }
}
