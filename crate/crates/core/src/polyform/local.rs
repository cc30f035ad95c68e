use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use crate::error::{domain, Result};
use crate::rational::{self, Rational};
use crate::simplicial::Simplex;

/// Ascending zero-based coordinate indices `I`, standing for `dx_I`.
pub type IndexSet = Vec<usize>;

/// All ascending `p`-subsets of `0..n` in lexicographic order.
pub fn index_subsets(n: usize, p: usize) -> Vec<IndexSet> {
    fn go(start: usize, n: usize, p: usize, cur: &mut IndexSet, out: &mut Vec<IndexSet>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < p - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    if p > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// Merges two ascending index sets, returning the union and whether the
/// sorting permutation is odd. `None` when the sets overlap.
pub fn merge_indices(a: &[usize], b: &[usize]) -> Option<(IndexSet, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut odd = false;
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            // b[j] jumps over the remaining entries of a
            if (a.len() - i) % 2 == 1 {
                odd = !odd;
            }
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((out, odd))
}

/// Determinant by cofactor expansion along the first row. Used on small
/// (at most form-degree sized) matrices only.
pub fn determinant<T, Z, M>(m: &[Vec<T>], zero: Z, mul: M) -> T
where
    T: Clone + std::ops::Neg<Output = T> + std::ops::Add<Output = T>,
    Z: Fn() -> T + Copy,
    M: Fn(&T, &T) -> T + Copy,
{
    let n = m.len();
    match n {
        0 => unreachable!("callers handle the empty determinant"),
        1 => m[0][0].clone(),
        _ => {
            let mut total = zero();
            for c in 0..n {
                let minor: Vec<Vec<T>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = mul(&m[0][c], &determinant(&minor, zero, mul));
                total = if c % 2 == 0 { total + term } else { total + (-term) };
            }
            total
        }
    }
}

fn rational_det(m: &[Vec<Rational>]) -> Rational {
    if m.is_empty() {
        return Rational::one();
    }
    determinant(m, Rational::zero, |a, b| a * b)
}

/// Polynomial differential form of degree `p` on a `k`-simplex, written as
/// `Σ_I f_I dx_I` in the simplex's affine coordinates `x_1..x_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalForm {
    simplex: Simplex,
    degree: usize,
    components: BTreeMap<IndexSet, Polynomial>,
}

impl LocalForm {
    pub fn zero(simplex: Simplex, degree: usize) -> Self {
        LocalForm { simplex, degree, components: BTreeMap::new() }
    }

    /// Validating constructor; zero components are dropped.
    pub fn new(
        simplex: Simplex,
        degree: usize,
        components: impl IntoIterator<Item = (IndexSet, Polynomial)>,
    ) -> Result<Self> {
        let k = simplex.dim();
        if degree > k {
            return Err(domain!("degree {degree} exceeds the dimension of {simplex}"));
        }
        let mut f = Self::zero(simplex, degree);
        for (idx, poly) in components {
            if idx.len() != degree || idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|i| *i >= k) {
                return Err(domain!("index set {idx:?} is not an ascending {degree}-subset of 0..{k}"));
            }
            if poly.nvars() != k {
                return Err(domain!("coefficient has {} variables on a {k}-simplex", poly.nvars()));
            }
            f.add_component(idx, poly);
        }
        Ok(f)
    }

    /// The 0-form given by a polynomial in the simplex's affine coordinates.
    pub fn function(simplex: Simplex, f: Polynomial) -> Self {
        assert_eq!(f.nvars(), simplex.dim(), "coefficient variable count mismatch");
        let mut out = Self::zero(simplex, 0);
        out.add_component(Vec::new(), f);
        out
    }

    /// `dx_{i+1}`.
    pub fn dx(simplex: Simplex, i: usize) -> Self {
        let k = simplex.dim();
        assert!(i < k, "coordinate index out of range");
        let mut out = Self::zero(simplex, 1);
        out.add_component(vec![i], Polynomial::one(k));
        out
    }

    /// The barycentric coordinate of vertex `v` (zero when `v` is not a vertex).
    pub fn lambda(simplex: &Simplex, v: usize) -> Polynomial {
        let k = simplex.dim();
        match simplex.position(v) {
            Some(j) => Polynomial::barycentric(k, j),
            None => Polynomial::zero(k),
        }
    }

    /// `dλ_v` on this simplex.
    pub fn dlambda(simplex: &Simplex, v: usize) -> Self {
        Self::function(simplex.clone(), Self::lambda(simplex, v)).d()
    }

    fn add_component(&mut self, idx: IndexSet, poly: Polynomial) {
        if poly.is_zero() {
            return;
        }
        let sum = match self.components.remove(&idx) {
            Some(existing) => &existing + &poly,
            None => poly,
        };
        if !sum.is_zero() {
            self.components.insert(idx, sum);
        }
    }

    pub fn simplex(&self) -> &Simplex {
        &self.simplex
    }

    pub fn dim(&self) -> usize {
        self.simplex.dim()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &BTreeMap<IndexSet, Polynomial> {
        &self.components
    }

    pub fn component(&self, idx: &[usize]) -> Polynomial {
        self.components.get(idx).cloned().unwrap_or_else(|| Polynomial::zero(self.dim()))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Largest total degree among the coefficients.
    pub fn poly_degree(&self) -> Option<u32> {
        self.components.values().filter_map(Polynomial::degree).max()
    }

    /// The coefficient of `dx_1 ∧ ... ∧ dx_k` for a top-degree form.
    pub fn top_coefficient(&self) -> Option<Polynomial> {
        (self.degree == self.dim()).then(|| self.component(&(0..self.dim()).collect::<Vec<_>>()))
    }

    fn check_same(&self, other: &LocalForm) -> Result<()> {
        if self.simplex != other.simplex {
            return Err(domain!("forms live on {} and {}", self.simplex, other.simplex));
        }
        Ok(())
    }

    pub fn add(&self, other: &LocalForm) -> Result<LocalForm> {
        self.check_same(other)?;
        if self.degree != other.degree {
            return Err(domain!("cannot add forms of degrees {} and {}", self.degree, other.degree));
        }
        let mut out = self.clone();
        for (i, p) in &other.components {
            out.add_component(i.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LocalForm) -> Result<LocalForm> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> LocalForm {
        let mut out = Self::zero(self.simplex.clone(), self.degree);
        for (i, p) in &self.components {
            out.add_component(i.clone(), p.scale(c));
        }
        out
    }

    pub fn mul_function(&self, f: &Polynomial) -> LocalForm {
        let mut out = Self::zero(self.simplex.clone(), self.degree);
        for (i, p) in &self.components {
            out.add_component(i.clone(), p * f);
        }
        out
    }

    /// `self ∧ other` with the standard sign `dx_I ∧ dx_J = ± dx_{I∪J}`.
    pub fn wedge(&self, other: &LocalForm) -> Result<LocalForm> {
        self.check_same(other)?;
        let mut out = Self::zero(self.simplex.clone(), self.degree + other.degree);
        for (i, p) in &self.components {
            for (j, q) in &other.components {
                if let Some((ij, odd)) = merge_indices(i, j) {
                    let prod = p * q;
                    out.add_component(ij, if odd { -&prod } else { prod });
                }
            }
        }
        Ok(out)
    }

    /// `d(f dx_I) = Σ_i ∂_i f dx_i ∧ dx_I`.
    pub fn d(&self) -> LocalForm {
        let k = self.dim();
        let mut out = Self::zero(self.simplex.clone(), self.degree + 1);
        for (idx, f) in &self.components {
            for i in 0..k {
                if idx.contains(&i) {
                    continue;
                }
                let df = f.partial(i);
                if df.is_zero() {
                    continue;
                }
                let (merged, odd) = merge_indices(&[i], idx).expect("disjoint by construction");
                out.add_component(merged, if odd { -&df } else { df });
            }
        }
        out
    }

    /// Pullback along the affine map from `target` into this simplex that sends
    /// the `a`-th vertex of `target` to the point with barycentric coordinates
    /// `images[a]` (with respect to this simplex's vertices).
    pub fn affine_pullback(&self, target: &Simplex, images: &[Vec<Rational>]) -> Result<LocalForm> {
        let k = self.dim();
        let m = target.dim();
        if images.len() != m + 1 {
            return Err(domain!("{} vertex images for the {m}-simplex {target}", images.len()));
        }
        for p in images {
            if p.len() != k + 1 {
                return Err(domain!("vertex image {p:?} is not a point of a {k}-simplex"));
            }
            if p.iter().sum::<Rational>() != Rational::one() || p.iter().any(|c| c < &Rational::zero()) {
                return Err(domain!("vertex image {p:?} is not a point of the closed simplex"));
            }
        }
        // x_j = P0[j] + Σ_a y_a (P_a[j] - P0[j]) for j = 1..k
        let jac: Vec<Vec<Rational>> = (1..=k)
            .map(|j| (1..=m).map(|a| &images[a][j] - &images[0][j]).collect())
            .collect();
        let subs: Vec<Polynomial> = (0..k)
            .map(|j| {
                let mut p = Polynomial::constant(m, images[0][j + 1].clone());
                for a in 0..m {
                    p = &p + &Polynomial::var(m, a).scale(&jac[j][a]);
                }
                p
            })
            .collect();
        let mut out = Self::zero(target.clone(), self.degree);
        if self.degree > m {
            return Ok(out);
        }
        let targets = index_subsets(m, self.degree);
        for (idx, f) in &self.components {
            let g = f.compose(&subs);
            if g.is_zero() {
                continue;
            }
            for a in &targets {
                let minor: Vec<Vec<Rational>> =
                    idx.iter().map(|&r| a.iter().map(|&c| jac[r][c].clone()).collect()).collect();
                let det = rational_det(&minor);
                if !det.is_zero() {
                    out.add_component(a.clone(), g.scale(&det));
                }
            }
        }
        Ok(out)
    }

    /// Pullback to a face of this simplex.
    pub fn restrict_to_face(&self, face: &Simplex) -> Result<LocalForm> {
        if !face.is_face_of(&self.simplex) {
            return Err(domain!("{face} is not a face of {}", self.simplex));
        }
        if face == &self.simplex {
            return Ok(self.clone());
        }
        let k = self.dim();
        let images: Vec<Vec<Rational>> = face
            .vertices()
            .iter()
            .map(|v| {
                let pos = self.simplex.position(*v).expect("face vertex");
                (0..=k).map(|i| if i == pos { Rational::one() } else { Rational::zero() }).collect()
            })
            .collect();
        self.affine_pullback(face, &images)
    }

    /// Value at a point (barycentric coordinates) on tangent vectors given in
    /// affine coordinates: `Σ_I f_I(x) det(v_r[I_s])`.
    pub fn evaluate(&self, point: &[Rational], vectors: &[Vec<Rational>]) -> Result<Rational> {
        let k = self.dim();
        if vectors.len() != self.degree {
            return Err(domain!("{} vectors for a {}-form", vectors.len(), self.degree));
        }
        if vectors.iter().any(|v| v.len() != k) {
            return Err(domain!("tangent vectors must have {k} components"));
        }
        check_point(point, k)?;
        let x = &point[1..];
        let mut total = Rational::zero();
        for (idx, f) in &self.components {
            let m: Vec<Vec<Rational>> =
                vectors.iter().map(|v| idx.iter().map(|&i| v[i].clone()).collect()).collect();
            total += f.eval(x) * rational_det(&m);
        }
        Ok(total)
    }

    /// The polynomial `x ↦ ω_x(X_1(x), ..., X_p(x))` for polynomial vector fields.
    pub fn evaluate_symbolic(&self, fields: &[Vec<Polynomial>]) -> Result<Polynomial> {
        let k = self.dim();
        if fields.len() != self.degree {
            return Err(domain!("{} vector fields for a {}-form", fields.len(), self.degree));
        }
        if fields.iter().any(|v| v.len() != k || v.iter().any(|p| p.nvars() != k)) {
            return Err(domain!("vector fields must have {k} polynomial components in {k} variables"));
        }
        let mut total = Polynomial::zero(k);
        for (idx, f) in &self.components {
            let det = if idx.is_empty() {
                Polynomial::one(k)
            } else {
                let m: Vec<Vec<Polynomial>> =
                    fields.iter().map(|v| idx.iter().map(|&i| v[i].clone()).collect()).collect();
                determinant(&m, || Polynomial::zero(k), |a, b| a * b)
            };
            total = &total + &(f * &det);
        }
        Ok(total)
    }
}

/// Checks that `point` is a point of the closed `k`-simplex in barycentric coordinates.
pub fn check_point(point: &[Rational], k: usize) -> Result<()> {
    if point.len() != k + 1 {
        return Err(domain!("point has {} barycentric coordinates, expected {}", point.len(), k + 1));
    }
    if point.iter().any(|c| c < &Rational::zero()) || point.iter().sum::<Rational>() != Rational::one() {
        return Err(domain!(
            "point ({}) is not in the closed simplex",
            point.iter().map(rational::to_string).collect::<Vec<_>>().join(", ")
        ));
    }
    Ok(())
}
