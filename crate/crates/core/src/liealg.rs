//! Finite-dimensional Lie algebras over `Q` given by structure constants, and
//! their Chevalley–Eilenberg complex `Λ*g*`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::homology::{cohomology, CochainComplex, CohomologyResult, RationalMatrix};
use crate::polyform::{index_subsets, merge_indices, IndexSet};
use crate::rational::{self, Rational};

pub const DEFAULT_MAX_DIM: usize = 8;

/// Lie algebra with basis `e_0..e_{n-1}` and `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    constants: Vec<Rational>,
}

/// Which axiom a structure-constant table violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Antisymmetry,
    Jacobi,
}

/// First violated axiom found by [`LieAlgebra::validate`]. For antisymmetry the
/// indices are `(i, j, k, -)`; for Jacobi they are `(i, j, l, k)` with the
/// cyclic sum over `(i, j, l)` having non-zero `e_k` component `value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub indices: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::Antisymmetry => write!(
                f,
                "antisymmetry fails: c[{i}][{j}][{k}] + c[{j}][{i}][{k}] = {v}",
                i = self.indices[0],
                j = self.indices[1],
                k = self.indices[2],
                v = self.value
            ),
            ViolationKind::Jacobi => write!(
                f,
                "Jacobi fails for (e_{}, e_{}, e_{}): e_{} component {}",
                self.indices[0], self.indices[1], self.indices[2], self.indices[3], self.value
            ),
        }
    }
}

impl LieAlgebra {
    pub fn abelian(n: usize) -> Self {
        LieAlgebra { dim: n, constants: vec![Rational::zero(); n * n * n] }
    }

    /// `sl(2)` in the basis `(h, e, f)`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn sl2() -> Self {
        let i = rational::int;
        Self::from_brackets(
            3,
            &[(0, 1, vec![(1, i(2))]), (0, 2, vec![(2, i(-2))]), (1, 2, vec![(0, i(1))])],
        )
        .expect("sl2 constants are well-formed")
    }

    /// The non-abelian two-dimensional algebra `[e_0, e_1] = e_0`.
    pub fn solvable2() -> Self {
        Self::from_brackets(2, &[(0, 1, vec![(0, Rational::one())])]).expect("well-formed")
    }

    /// Builds the table from brackets `[e_i, e_j]` with `i < j`; the entries
    /// for `j < i` are filled in by antisymmetry.
    pub fn from_brackets(n: usize, brackets: &[(usize, usize, Vec<(usize, Rational)>)]) -> Result<Self> {
        if n > DEFAULT_MAX_DIM {
            return Err(Error::SizeLimit(format!("Lie algebra dimension {n} exceeds {DEFAULT_MAX_DIM}")));
        }
        let mut g = Self::abelian(n);
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, coeffs) in brackets {
            if i >= j || *j >= n {
                return Err(Error::MalformedInput(format!(
                    "bracket [e_{i}, e_{j}] must have i < j < {n}"
                )));
            }
            if !seen.insert((*i, *j)) {
                return Err(Error::MalformedInput(format!("bracket [e_{i}, e_{j}] given twice")));
            }
            for (k, c) in coeffs {
                if *k >= n {
                    return Err(Error::MalformedInput(format!("coefficient index {k} out of range")));
                }
                let idx = g.index(*i, *j, *k);
                g.constants[idx] += c;
                let idx = g.index(*j, *i, *k);
                g.constants[idx] -= c;
            }
        }
        Ok(g)
    }

    /// Builds a table from a full `n x n x n` array without filling or checks.
    pub fn from_structure_constants(n: usize, c: Vec<Rational>) -> Result<Self> {
        if c.len() != n * n * n {
            return Err(Error::MalformedInput(format!("{} structure constants for dimension {n}", c.len())));
        }
        Ok(LieAlgebra { dim: n, constants: c })
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[self.index(i, j, k)]
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(Zero::is_zero)
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.dim;
        if u.len() != n || v.len() != n {
            return Err(domain!("vectors of length {} and {} in a {n}-dimensional algebra", u.len(), v.len()));
        }
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *o += &uv * c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exhaustive check of antisymmetry and the Jacobi identity; returns the
    /// first violation in index order.
    pub fn validate(&self) -> Option<Violation> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s = self.structure_constant(i, j, k) + self.structure_constant(j, i, k);
                    if !s.is_zero() {
                        return Some(Violation { kind: ViolationKind::Antisymmetry, indices: vec![i, j, k], value: s });
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for k in 0..n {
                        let mut s = Rational::zero();
                        for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
                            for m in 0..n {
                                s += self.structure_constant(a, b, m) * self.structure_constant(m, c, k);
                            }
                        }
                        if !s.is_zero() {
                            return Some(Violation { kind: ViolationKind::Jacobi, indices: vec![i, j, l, k], value: s });
                        }
                    }
                }
            }
        }
        None
    }

    /// `Ok` for a valid Lie algebra, a domain error naming the violation otherwise.
    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate() {
            None => Ok(()),
            Some(v) => Err(domain!("{v}")),
        }
    }

    /// The same vector space with the negated bracket.
    pub fn opposite(&self) -> Self {
        LieAlgebra { dim: self.dim, constants: self.constants.iter().map(|c| -c.clone()).collect() }
    }

    pub fn to_json(&self) -> LieAlgebraJson {
        let n = self.dim;
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: BTreeMap<String, Rational> = (0..n)
                    .filter(|k| !self.structure_constant(i, j, *k).is_zero())
                    .map(|k| (k.to_string(), self.structure_constant(i, j, k).clone()))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketJson { i, j, coeffs: coeffs.into_iter().map(|(k, c)| (k, rational::to_string(&c))).collect() });
                }
            }
        }
        LieAlgebraJson { dim: n, brackets }
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({})", serde_json::to_string(&self.to_json()).unwrap_or_default())
    }
}

/// `{"i": 0, "j": 1, "coeffs": {"1": "2"}}` meaning `[e_0, e_1] = 2 e_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebraJson {
    pub dim: usize,
    pub brackets: Vec<BracketJson>,
}

impl LieAlgebraJson {
    pub fn build(&self) -> Result<LieAlgebra> {
        let brackets = self
            .brackets
            .iter()
            .map(|b| {
                let coeffs = b
                    .coeffs
                    .iter()
                    .map(|(k, c)| {
                        let k: usize = k
                            .parse()
                            .map_err(|_| Error::MalformedInput(format!("basis index {k:?} is not a number")))?;
                        Ok((k, rational::parse(c)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((b.i, b.j, coeffs))
            })
            .collect::<Result<Vec<_>>>()?;
        LieAlgebra::from_brackets(self.dim, &brackets)
    }
}

/// Element of `Λ^p g*`: coefficients of `e*_I` for ascending `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CEElement {
    dim: usize,
    degree: usize,
    components: BTreeMap<IndexSet, Rational>,
}

impl CEElement {
    pub fn zero(dim: usize, degree: usize) -> Self {
        CEElement { dim, degree, components: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::basis(dim, Vec::new())
    }

    /// `e*_I`.
    pub fn basis(dim: usize, indices: IndexSet) -> Self {
        let mut out = Self::zero(dim, indices.len());
        out.add_component(indices, Rational::one());
        out
    }

    pub fn new(dim: usize, degree: usize, components: impl IntoIterator<Item = (IndexSet, Rational)>) -> Result<Self> {
        let mut out = Self::zero(dim, degree);
        for (idx, c) in components {
            if idx.len() != degree || idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|i| *i >= dim) {
                return Err(domain!("{idx:?} is not an ascending {degree}-subset of 0..{dim}"));
            }
            out.add_component(idx, c);
        }
        Ok(out)
    }

    fn add_component(&mut self, idx: IndexSet, c: Rational) {
        if c.is_zero() {
            return;
        }
        let sum = self.components.remove(&idx).unwrap_or_else(Rational::zero) + c;
        if !sum.is_zero() {
            self.components.insert(idx, sum);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &BTreeMap<IndexSet, Rational> {
        &self.components
    }

    pub fn coefficient(&self, idx: &[usize]) -> Rational {
        self.components.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&self, other: &CEElement) -> Result<CEElement> {
        if self.dim != other.dim || self.degree != other.degree {
            return Err(domain!("cannot add CE elements of different shapes"));
        }
        let mut out = self.clone();
        for (i, c) in &other.components {
            out.add_component(i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> CEElement {
        let mut out = Self::zero(self.dim, self.degree);
        for (i, x) in &self.components {
            out.add_component(i.clone(), x * c);
        }
        out
    }

    pub fn wedge(&self, other: &CEElement) -> Result<CEElement> {
        if self.dim != other.dim {
            return Err(domain!("CE elements of algebras of different dimension"));
        }
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (i, a) in &self.components {
            for (j, b) in &other.components {
                if let Some((ij, odd)) = merge_indices(i, j) {
                    let p = a * b;
                    out.add_component(ij, if odd { -p } else { p });
                }
            }
        }
        Ok(out)
    }

    /// `η(x_1, ..., x_p) = Σ_I η_I det(x_r[I_s])`.
    pub fn evaluate(&self, vectors: &[Vec<Rational>]) -> Result<Rational> {
        if vectors.len() != self.degree || vectors.iter().any(|v| v.len() != self.dim) {
            return Err(domain!("CE element of degree {} needs {} vectors of length {}", self.degree, self.degree, self.dim));
        }
        let mut total = Rational::zero();
        for (idx, c) in &self.components {
            let det = if idx.is_empty() {
                Rational::one()
            } else {
                let m: Vec<Vec<Rational>> = vectors.iter().map(|v| idx.iter().map(|&i| v[i].clone()).collect()).collect();
                crate::polyform::determinant(&m, Rational::zero, |a, b| a * b)
            };
            total += c * det;
        }
        Ok(total)
    }

    pub fn to_vector(&self) -> Vec<Rational> {
        index_subsets(self.dim, self.degree).iter().map(|i| self.coefficient(i)).collect()
    }

    pub fn from_vector(dim: usize, degree: usize, v: &[Rational]) -> Result<CEElement> {
        let subsets = index_subsets(dim, degree);
        if v.len() != subsets.len() {
            return Err(domain!("vector of length {} for Λ^{degree} of dimension {}", v.len(), subsets.len()));
        }
        CEElement::new(dim, degree, subsets.into_iter().zip(v.iter().cloned()))
    }
}

/// `d e*_k = -Σ_{i<j} c[i][j][k] e*_i ∧ e*_j`, extended as a derivation.
pub fn ce_differential(g: &LieAlgebra, eta: &CEElement) -> Result<CEElement> {
    let n = g.dim();
    if eta.dim() != n {
        return Err(domain!("CE element does not belong to this algebra"));
    }
    let d_generator = |k: usize| {
        let mut out = CEElement::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                out.add_component(vec![i, j], -g.structure_constant(i, j, k).clone());
            }
        }
        out
    };
    fn d_monomial(idx: &[usize], n: usize, dg: &dyn Fn(usize) -> CEElement) -> CEElement {
        match idx.split_first() {
            None => CEElement::zero(n, 1),
            Some((&first, rest)) => {
                let rest_el = CEElement::basis(n, rest.to_vec());
                let a = dg(first).wedge(&rest_el).expect("same algebra");
                let b = CEElement::basis(n, vec![first])
                    .wedge(&d_monomial(rest, n, dg))
                    .expect("same algebra");
                a.add(&b.scale(&-Rational::one())).expect("same shape")
            }
        }
    }
    let mut out = CEElement::zero(n, eta.degree() + 1);
    for (idx, c) in eta.components() {
        out = out.add(&d_monomial(idx, n, &d_generator).scale(c))?;
    }
    Ok(out)
}

/// Matrix of `d: Λ^p g* -> Λ^{p+1} g*` on the lexicographic `e*_I` bases.
pub fn ce_differential_matrix(g: &LieAlgebra, p: usize) -> RationalMatrix {
    let n = g.dim();
    let cols: Vec<Vec<Rational>> = index_subsets(n, p)
        .into_iter()
        .map(|idx| ce_differential(g, &CEElement::basis(n, idx)).expect("same algebra").to_vector())
        .collect();
    RationalMatrix::from_columns(index_subsets(n, p + 1).len(), &cols)
}

pub fn ce_labels(n: usize, p: usize) -> Vec<String> {
    index_subsets(n, p)
        .into_iter()
        .map(|idx| {
            if idx.is_empty() {
                "1".to_string()
            } else {
                idx.iter().map(|i| format!("e*{i}")).collect::<Vec<_>>().join("^")
            }
        })
        .collect()
}

/// The Chevalley–Eilenberg complex of a valid algebra.
pub fn ce_complex(g: &LieAlgebra) -> Result<CochainComplex> {
    g.ensure_valid()?;
    let n = g.dim();
    let dims: Vec<usize> = (0..=n).map(|p| index_subsets(n, p).len()).collect();
    let labels = (0..=n).map(|p| ce_labels(n, p)).collect();
    let ds = (0..n).map(|p| ce_differential_matrix(g, p)).collect();
    CochainComplex::new(dims, labels, ds)
}

pub fn ce_cohomology(g: &LieAlgebra) -> Result<CohomologyResult> {
    cohomology(&ce_complex(g)?)
}
