//! Basis-indexed multilinear algebra over labeled spaces: vectors, 2- and
//! 3-tensors, the flip, slot placements, Schouten-bracket terms and the
//! Leibniz extension of the adjoint action.
//!
//! Every tensor carries the spaces of its factors, and operations that
//! combine tensors compare them first. Sums over basis indices are explicit
//! loops; zero coefficients are skipped.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Space {
    labels: Vec<String>,
}

pub type SpaceRef = Arc<Space>;

impl Space {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<SpaceRef> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Shape(format!("duplicate basis label `{l}`")));
            }
        }
        Ok(Arc::new(Space { labels }))
    }

    /// Space with labels `{prefix}0 .. {prefix}{dim-1}`.
    pub fn numbered(prefix: &str, dim: usize) -> SpaceRef {
        Arc::new(Space { labels: (0..dim).map(|i| format!("{prefix}{i}")).collect() })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The dual space: labels gain a `*` suffix, or lose it if every label
    /// already carries one, so dualizing twice gives back the same labels.
    pub fn dual(&self) -> SpaceRef {
        let starred = !self.labels.is_empty() && self.labels.iter().all(|l| l.ends_with('*'));
        let labels = if starred {
            self.labels.iter().map(|l| l[..l.len() - 1].to_string()).collect()
        } else {
            self.labels.iter().map(|l| format!("{l}*")).collect()
        };
        Arc::new(Space { labels })
    }

    pub fn prefixed(&self, prefix: &str) -> SpaceRef {
        Arc::new(Space { labels: self.labels.iter().map(|l| format!("{prefix}{l}")).collect() })
    }

    fn describe(&self) -> String {
        format!("[{}]", self.labels.join(","))
    }
}

pub(crate) fn same_space(expected: &SpaceRef, found: &SpaceRef) -> Result<()> {
    if Arc::ptr_eq(expected, found) || expected == found {
        Ok(())
    } else {
        Err(Error::SpaceMismatch { expected: expected.describe(), found: found.describe() })
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Vector {
    space: SpaceRef,
    coeffs: Vec<Scalar>,
}

impl Vector {
    pub fn new(space: SpaceRef, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != space.dim() {
            return Err(Error::Shape(format!("{} coefficients for a {}-dim space", coeffs.len(), space.dim())));
        }
        Ok(Vector { space, coeffs })
    }

    pub fn zero(space: SpaceRef) -> Self {
        let n = space.dim();
        Vector { space, coeffs: vec![Scalar::zero(); n] }
    }

    pub fn basis(space: SpaceRef, i: usize) -> Self {
        let mut v = Vector::zero(space);
        v.coeffs[i] = Scalar::one();
        v
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        same_space(&self.space, &other.space)?;
        Ok(Vector { space: self.space.clone(), coeffs: add_slices(&self.coeffs, &other.coeffs) })
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        same_space(&self.space, &other.space)?;
        Ok(Vector {
            space: self.space.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, k: &Scalar) -> Vector {
        Vector { space: self.space.clone(), coeffs: self.coeffs.iter().map(|x| x * k).collect() }
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c}){}", self.space.label(i)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

pub(crate) fn add_slices(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Element of `left ⊗ right`, coefficients row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor2 {
    left: SpaceRef,
    right: SpaceRef,
    coeffs: Vec<Scalar>,
}

impl Tensor2 {
    pub fn zeros(left: SpaceRef, right: SpaceRef) -> Self {
        let n = left.dim() * right.dim();
        Tensor2 { left, right, coeffs: vec![Scalar::zero(); n] }
    }

    /// `e_i ⊗ e_j`.
    pub fn basis_pair(left: SpaceRef, right: SpaceRef, i: usize, j: usize) -> Self {
        let mut t = Tensor2::zeros(left, right);
        t.set(i, j, Scalar::one());
        t
    }

    /// Tensor with coefficient `m[(i, j)]` on `e_i ⊗ e_j`.
    pub fn from_matrix(left: SpaceRef, right: SpaceRef, m: &Matrix) -> Result<Self> {
        if m.rows() != left.dim() || m.cols() != right.dim() {
            return Err(Error::Shape(format!(
                "{}x{} matrix for a {}x{} tensor",
                m.rows(),
                m.cols(),
                left.dim(),
                right.dim()
            )));
        }
        let coeffs = (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect();
        Ok(Tensor2 { left, right, coeffs })
    }

    pub fn from_entries(left: SpaceRef, right: SpaceRef, entries: &[(usize, usize, Scalar)]) -> Self {
        let mut t = Tensor2::zeros(left, right);
        for (i, j, v) in entries {
            t.add_at(*i, *j, v);
        }
        t
    }

    pub fn outer(a: &Vector, b: &Vector) -> Self {
        let mut t = Tensor2::zeros(a.space.clone(), b.space.clone());
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                t.add_at(i, j, &(x * y));
            }
        }
        t
    }

    pub fn left(&self) -> &SpaceRef {
        &self.left
    }

    pub fn right(&self) -> &SpaceRef {
        &self.right
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.left.dim(), self.right.dim())
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.coeffs[i * self.right.dim() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let n = self.right.dim();
        self.coeffs[i * n + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        let n = self.right.dim();
        self.coeffs[i * n + j] += v;
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn to_matrix(&self) -> Matrix {
        let (l, r) = self.shape();
        Matrix::from_fn(l, r, |i, j| self.get(i, j).clone())
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        let n = self.right.dim().max(1);
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (k / n, k % n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    fn check_same(&self, other: &Tensor2) -> Result<()> {
        same_space(&self.left, &other.left)?;
        same_space(&self.right, &other.right)
    }

    pub fn add(&self, other: &Tensor2) -> Result<Tensor2> {
        self.check_same(other)?;
        Ok(Tensor2 { left: self.left.clone(), right: self.right.clone(), coeffs: add_slices(&self.coeffs, &other.coeffs) })
    }

    pub fn sub(&self, other: &Tensor2) -> Result<Tensor2> {
        self.check_same(other)?;
        Ok(Tensor2 {
            left: self.left.clone(),
            right: self.right.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, k: &Scalar) -> Tensor2 {
        Tensor2 { left: self.left.clone(), right: self.right.clone(), coeffs: self.coeffs.iter().map(|x| x * k).collect() }
    }

    pub fn neg(&self) -> Tensor2 {
        self.scale(&Scalar::from_int(-1))
    }

    /// The tensor flip τ: `result[j][i] = t[i][j]`, spaces swapped.
    pub fn flip(&self) -> Tensor2 {
        let mut out = Tensor2::zeros(self.right.clone(), self.left.clone());
        for (i, j, c) in self.nonzero() {
            out.set(j, i, c.clone());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.flip() == *self
    }

    /// `(a ⊗ b)(t)` for matrices acting on the left and right factors.
    pub fn map(&self, a: &Matrix, b: &Matrix, left: SpaceRef, right: SpaceRef) -> Result<Tensor2> {
        if a.cols() != self.left.dim() || b.cols() != self.right.dim() || a.rows() != left.dim() || b.rows() != right.dim() {
            return Err(Error::Shape("tensor map shape mismatch".into()));
        }
        let mut out = Tensor2::zeros(left, right);
        for (i, j, c) in self.nonzero() {
            for p in 0..a.rows() {
                let ap = &a[(p, i)];
                if ap.is_zero() {
                    continue;
                }
                let apc = ap * c;
                for q in 0..b.rows() {
                    let bq = &b[(q, j)];
                    if !bq.is_zero() {
                        out.add_at(p, q, &(&apc * bq));
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .nonzero()
            .map(|(i, j, c)| format!("({c}){}⊗{}", self.left.label(i), self.right.label(j)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Element of `a ⊗ b ⊗ c`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor3 {
    spaces: [SpaceRef; 3],
    coeffs: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(a: SpaceRef, b: SpaceRef, c: SpaceRef) -> Self {
        let n = a.dim() * b.dim() * c.dim();
        Tensor3 { spaces: [a, b, c], coeffs: vec![Scalar::zero(); n] }
    }

    pub fn spaces(&self) -> &[SpaceRef; 3] {
        &self.spaces
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.spaces[0].dim(), self.spaces[1].dim(), self.spaces[2].dim())
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.spaces[1].dim() + j) * self.spaces[2].dim() + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.coeffs[self.offset(i, j, k)]
    }

    pub fn add_at(&mut self, i: usize, j: usize, k: usize, v: &Scalar) {
        let o = self.offset(i, j, k);
        self.coeffs[o] += v;
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let (_, b, c) = self.shape();
        let (b, c) = (b.max(1), c.max(1));
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(o, x)| (o / (b * c), (o / c) % b, o % c, x))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    fn check_same(&self, other: &Tensor3) -> Result<()> {
        for (a, b) in self.spaces.iter().zip(&other.spaces) {
            same_space(a, b)?;
        }
        Ok(())
    }

    pub fn add(&self, other: &Tensor3) -> Result<Tensor3> {
        self.check_same(other)?;
        Ok(Tensor3 { spaces: self.spaces.clone(), coeffs: add_slices(&self.coeffs, &other.coeffs) })
    }

    pub fn sub(&self, other: &Tensor3) -> Result<Tensor3> {
        self.check_same(other)?;
        Ok(Tensor3 {
            spaces: self.spaces.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, k: &Scalar) -> Tensor3 {
        Tensor3 { spaces: self.spaces.clone(), coeffs: self.coeffs.iter().map(|x| x * k).collect() }
    }

    /// Cyclic rotation of the factors: `a⊗b⊗c ↦ c⊗a⊗b`.
    pub fn rotate(&self) -> Tensor3 {
        let [a, b, c] = self.spaces.clone();
        let mut out = Tensor3::zeros(c, a, b);
        for (i, j, k, x) in self.nonzero() {
            out.add_at(k, i, j, x);
        }
        out
    }

    /// `t + rotate(t) + rotate(rotate(t))`; all three factors must agree.
    pub fn cyclic_sum(&self) -> Result<Tensor3> {
        let once = self.rotate();
        let twice = once.rotate();
        self.add(&once)?.add(&twice)
    }
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.spaces;
        let terms: Vec<String> = self
            .nonzero()
            .map(|(i, j, k, x)| format!("({x}){}⊗{}⊗{}", a.label(i), b.label(j), c.label(k)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Which pair of the three slots a 2-tensor occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    P12,
    P13,
    P23,
}

impl Placement {
    pub fn slots(self) -> (usize, usize) {
        match self {
            Placement::P12 => (0, 1),
            Placement::P13 => (0, 2),
            Placement::P23 => (1, 2),
        }
    }
}

/// A 2-tensor placed in two slots of a triple tensor product. The free slot
/// carries nothing (there is no unit in a Lie algebra); placed tensors only
/// feed the Schouten-bracket terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placed {
    pub tensor: Tensor2,
    pub placement: Placement,
    pub third: SpaceRef,
}

impl Placed {
    /// Slot assignment of the basis term `e_i ⊗ e_j`; `None` marks the free slot.
    pub fn slot_assignment(&self, i: usize, j: usize) -> [Option<usize>; 3] {
        let mut out = [None; 3];
        let (a, b) = self.placement.slots();
        out[a] = Some(i);
        out[b] = Some(j);
        out
    }
}

pub fn embed12(t: &Tensor2, third: SpaceRef) -> Placed {
    Placed { tensor: t.clone(), placement: Placement::P12, third }
}

pub fn embed13(t: &Tensor2, third: SpaceRef) -> Placed {
    Placed { tensor: t.clone(), placement: Placement::P13, third }
}

pub fn embed23(t: &Tensor2, third: SpaceRef) -> Placed {
    Placed { tensor: t.clone(), placement: Placement::P23, third }
}

/// The three Schouten-bracket terms, named by the placements of `r` and `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchoutenSlots {
    /// `[r₁₂, s₁₃] = [r⁽¹⁾, s⁽¹⁾] ⊗ r⁽²⁾ ⊗ s⁽²⁾`
    S12_13,
    /// `[r₁₂, s₂₃] = r⁽¹⁾ ⊗ [r⁽²⁾, s⁽¹⁾] ⊗ s⁽²⁾`
    S12_23,
    /// `[r₁₃, s₂₃] = r⁽¹⁾ ⊗ s⁽¹⁾ ⊗ [r⁽²⁾, s⁽²⁾]`
    S13_23,
}

pub fn schouten_term(r: &Tensor2, s: &Tensor2, slots: SchoutenSlots, alg: &LieAlgebra) -> Result<Tensor3> {
    let g = alg.space();
    for t in [r, s] {
        same_space(g, &t.left)?;
        same_space(g, &t.right)?;
    }
    let mut out = Tensor3::zeros(g.clone(), g.clone(), g.clone());
    for (r1, r2, rc) in r.nonzero() {
        for (s1, s2, sc) in s.nonzero() {
            let (x, y) = match slots {
                SchoutenSlots::S12_13 => (r1, s1),
                SchoutenSlots::S12_23 => (r2, s1),
                SchoutenSlots::S13_23 => (r2, s2),
            };
            let terms = alg.bracket_terms(x, y);
            if terms.is_empty() {
                continue;
            }
            let coeff = rc * sc;
            for (k, c) in terms {
                let v = &coeff * c;
                match slots {
                    SchoutenSlots::S12_13 => out.add_at(*k, r2, s2, &v),
                    SchoutenSlots::S12_23 => out.add_at(r1, *k, s2, &v),
                    SchoutenSlots::S13_23 => out.add_at(r1, s1, *k, &v),
                }
            }
        }
    }
    Ok(out)
}

/// Schouten bracket `[[r, s]] = [r₁₂,s₁₃] + [r₁₂,s₂₃] + [r₁₃,s₂₃]`.
pub fn schouten(r: &Tensor2, s: &Tensor2, alg: &LieAlgebra) -> Result<Tensor3> {
    let a = schouten_term(r, s, SchoutenSlots::S12_13, alg)?;
    let b = schouten_term(r, s, SchoutenSlots::S12_23, alg)?;
    let c = schouten_term(r, s, SchoutenSlots::S13_23, alg)?;
    a.add(&b)?.add(&c)
}

/// `ad_x(y ⊗ z) = ad_x(y) ⊗ z + y ⊗ ad_x(z)`, extended linearly.
pub fn ad_extend(alg: &LieAlgebra, x: &Vector, t: &Tensor2) -> Result<Tensor2> {
    same_space(alg.space(), &x.space)?;
    same_space(alg.space(), &t.left)?;
    same_space(alg.space(), &t.right)?;
    Ok(ad_extend_coeffs(alg, &x.coeffs, t))
}

pub(crate) fn ad_extend_coeffs(alg: &LieAlgebra, x: &[Scalar], t: &Tensor2) -> Tensor2 {
    let mut out = Tensor2::zeros(t.left.clone(), t.right.clone());
    for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (a, b, c) in t.nonzero() {
            let xc = xi * c;
            for (k, v) in alg.bracket_terms(i, a) {
                out.add_at(*k, b, &(&xc * v));
            }
            for (k, v) in alg.bracket_terms(i, b) {
                out.add_at(a, *k, &(&xc * v));
            }
        }
    }
    out
}

/// Leibniz extension of the adjoint action to the triple tensor power.
pub fn ad_extend3(alg: &LieAlgebra, x: &Vector, t: &Tensor3) -> Result<Tensor3> {
    same_space(alg.space(), &x.space)?;
    for s in &t.spaces {
        same_space(alg.space(), s)?;
    }
    let mut out = Tensor3::zeros(t.spaces[0].clone(), t.spaces[1].clone(), t.spaces[2].clone());
    for (i, xi) in x.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (a, b, c, v) in t.nonzero() {
            let xv = xi * v;
            for (k, w) in alg.bracket_terms(i, a) {
                out.add_at(*k, b, c, &(&xv * w));
            }
            for (k, w) in alg.bracket_terms(i, b) {
                out.add_at(a, *k, c, &(&xv * w));
            }
            for (k, w) in alg.bracket_terms(i, c) {
                out.add_at(a, b, *k, &(&xv * w));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    fn sl2() -> LieAlgebra {
        catalog::sl2_algebra()
    }

    // basis order of the catalog sl2 is (e, h, f)
    const E: usize = 0;
    const H: usize = 1;
    const F: usize = 2;

    #[test]
    fn flip_examples() {
        let g = sl2().space().clone();
        let ef = Tensor2::basis_pair(g.clone(), g.clone(), E, F);
        assert_eq!(ef.flip(), Tensor2::basis_pair(g.clone(), g.clone(), F, E));
        let sym = ef.add(&ef.flip()).unwrap();
        assert_eq!(sym.flip(), sym);
        let t = Tensor2::from_entries(g.clone(), g.clone(), &[(E, H, Scalar::ratio(1, 3)), (F, F, Scalar::i())]);
        assert_eq!(t.flip().flip(), t);
    }

    #[test]
    fn flip_swaps_spaces() {
        let a = Space::new(["x", "y"]).unwrap();
        let b = Space::new(["p"]).unwrap();
        let t = Tensor2::basis_pair(a.clone(), b.clone(), 1, 0);
        let f = t.flip();
        assert_eq!(f.left(), &b);
        assert_eq!(f.right(), &a);
        assert_eq!(f.get(0, 1), &Scalar::one());
    }

    #[test]
    fn embeddings_place_slots() {
        let g = sl2().space().clone();
        let ef = Tensor2::basis_pair(g.clone(), g.clone(), E, F);
        assert_eq!(embed12(&ef, g.clone()).slot_assignment(E, F), [Some(E), Some(F), None]);
        assert_eq!(embed13(&ef, g.clone()).slot_assignment(E, F), [Some(E), None, Some(F)]);
        assert_eq!(embed23(&ef, g.clone()).slot_assignment(E, F), [None, Some(E), Some(F)]);
    }

    #[test]
    fn schouten_examples() {
        let ab = catalog::abelian_algebra(3);
        let s = ab.space().clone();
        let r = Tensor2::from_entries(s.clone(), s.clone(), &[(0, 1, Scalar::one()), (2, 2, Scalar::from_int(5))]);
        assert!(schouten_term(&r, &r, SchoutenSlots::S12_13, &ab).unwrap().is_zero());

        let g = sl2();
        let sp = g.space().clone();
        let ef = Tensor2::basis_pair(sp.clone(), sp.clone(), E, F);
        assert!(schouten_term(&ef, &ef, SchoutenSlots::S12_13, &g).unwrap().is_zero());

        // r = e⊗f + ¼h⊗h satisfies the CYBE
        let r = Tensor2::from_entries(sp.clone(), sp.clone(), &[(E, F, Scalar::one()), (H, H, Scalar::ratio(1, 4))]);
        assert!(schouten(&r, &r, &g).unwrap().is_zero());
    }

    #[test]
    fn schouten_rejects_foreign_space() {
        let g = sl2();
        let other = Space::new(["a", "b", "c"]).unwrap();
        let r = Tensor2::basis_pair(other.clone(), other, 0, 1);
        assert!(matches!(
            schouten_term(&r, &r, SchoutenSlots::S12_23, &g),
            Err(Error::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn ad_extend_examples() {
        let ab = catalog::abelian_algebra(2);
        let s = ab.space().clone();
        let t = Tensor2::basis_pair(s.clone(), s.clone(), 0, 1);
        assert!(ad_extend(&ab, &Vector::basis(s.clone(), 0), &t).unwrap().is_zero());

        let g = sl2();
        let sp = g.space().clone();
        let h = Vector::basis(sp.clone(), H);
        let ef = Tensor2::basis_pair(sp.clone(), sp.clone(), E, F);
        assert!(ad_extend(&g, &h, &ef).unwrap().is_zero());

        let e = Vector::basis(sp.clone(), E);
        let hh = Tensor2::basis_pair(sp.clone(), sp.clone(), H, H);
        let expected = Tensor2::from_entries(
            sp.clone(),
            sp.clone(),
            &[(E, H, Scalar::from_int(-2)), (H, E, Scalar::from_int(-2))],
        );
        assert_eq!(ad_extend(&g, &e, &hh).unwrap(), expected);
    }

    #[test]
    fn ad_extend_is_a_derivation_on_basis_pairs() {
        let g = catalog::sl3_algebra();
        let sp = g.space().clone();
        let n = sp.dim();
        for x in 0..n {
            let xv = Vector::basis(sp.clone(), x);
            for a in 0..n {
                for b in 0..n {
                    let t = Tensor2::basis_pair(sp.clone(), sp.clone(), a, b);
                    let lhs = ad_extend(&g, &xv, &t).unwrap();
                    let ea = Vector::basis(sp.clone(), a);
                    let eb = Vector::basis(sp.clone(), b);
                    let rhs = Tensor2::outer(&g.bracket(&xv, &ea).unwrap(), &eb)
                        .add(&Tensor2::outer(&ea, &g.bracket(&xv, &eb).unwrap()))
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-5i64..6, 1i64..4).prop_map(|(a, b)| Scalar::ratio(a, b))
    }

    proptest! {
        #[test]
        fn schouten_term_is_bilinear(a in small(), b in small(), idx in 0usize..3) {
            let g = sl2();
            let sp = g.space().clone();
            let r = Tensor2::from_entries(sp.clone(), sp.clone(), &[(E, F, Scalar::one()), (H, E, Scalar::ratio(1, 2))]);
            let s = Tensor2::from_entries(sp.clone(), sp.clone(), &[(F, H, Scalar::from_int(3)), (H, H, Scalar::one())]);
            let slots = [SchoutenSlots::S12_13, SchoutenSlots::S12_23, SchoutenSlots::S13_23][idx];
            let base = schouten_term(&r, &s, slots, &g).unwrap();
            let scaled = schouten_term(&r.scale(&a), &s.scale(&b), slots, &g).unwrap();
            prop_assert_eq!(scaled, base.scale(&(&a * &b)));
        }

        #[test]
        fn flip_is_involution(entries in proptest::collection::vec((0usize..3, 0usize..3, small()), 0..6)) {
            let sp = sl2().space().clone();
            let t = Tensor2::from_entries(sp.clone(), sp, &entries);
            prop_assert_eq!(t.flip().flip(), t);
        }
    }
}
