//! Lie algebras, Lie coalgebras and Lie bialgebras given by structure
//! constants, together with axiom verification, duals, the Killing form and
//! linear maps with homomorphism checks.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::tensor::{ad_extend_coeffs, same_space, Space, SpaceRef, Tensor2, Tensor3, Vector};

type Terms = Vec<(usize, Scalar)>;

/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone)]
pub struct LieAlgebra {
    space: SpaceRef,
    c: Vec<Scalar>,
    terms: Arc<Vec<Terms>>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.c == other.c
    }
}

impl Eq for LieAlgebra {}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra[{}]{{", self.space.labels().join(","))?;
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for (k, v) in self.bracket_terms(i, j) {
                    write!(f, " [{},{}]∋({v}){}", self.space.label(i), self.space.label(j), self.space.label(*k))?;
                }
            }
        }
        write!(f, " }}")
    }
}

fn cube_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}

fn check_cube(space: &SpaceRef, len: usize, what: &str) -> Result<()> {
    let n = space.dim();
    if len != n * n * n {
        return Err(Error::Shape(format!("{len} {what} constants for a {n}-dim space")));
    }
    Ok(())
}

impl LieAlgebra {
    /// Accepts any constants of the right shape, including invalid ones.
    pub fn from_raw(space: SpaceRef, c: Vec<Scalar>) -> Result<Self> {
        check_cube(&space, c.len(), "bracket")?;
        let n = space.dim();
        let mut terms = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = &c[cube_index(n, i, j, k)];
                    if !v.is_zero() {
                        terms[i * n + j].push((k, v.clone()));
                    }
                }
            }
        }
        Ok(LieAlgebra { space, c, terms: Arc::new(terms) })
    }

    /// Validating constructor: fails with the full report if antisymmetry or
    /// Jacobi is violated anywhere.
    pub fn new(space: SpaceRef, c: Vec<Scalar>) -> Result<Self> {
        let alg = LieAlgebra::from_raw(space, c)?;
        let report = alg.verify();
        if report.is_ok() {
            Ok(alg)
        } else {
            Err(Error::Invalid(report))
        }
    }

    /// Builds from entries `[e_i, e_j] ∋ v e_k`; each entry also sets
    /// `[e_j, e_i] ∋ −v e_k`.
    pub fn from_entries(space: SpaceRef, entries: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        let n = space.dim();
        let mut c = vec![Scalar::zero(); n * n * n];
        for (i, j, k, v) in entries {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Shape(format!("bracket index ({i},{j},{k}) out of range for dim {n}")));
            }
            c[cube_index(n, *i, *j, *k)] += v;
            c[cube_index(n, *j, *i, *k)] -= v;
        }
        LieAlgebra::new(space, c)
    }

    pub fn abelian(space: SpaceRef) -> Self {
        let n = space.dim();
        LieAlgebra::from_raw(space, vec![Scalar::zero(); n * n * n]).expect("shape is consistent")
    }

    pub fn from_fn(space: SpaceRef, mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Result<Self> {
        let n = space.dim();
        let mut c = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c.push(f(i, j, k));
                }
            }
        }
        LieAlgebra::from_raw(space, c)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.c
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[cube_index(self.dim(), i, j, k)]
    }

    /// Nonzero `(k, c[i][j][k])` of `[e_i, e_j]`.
    pub fn bracket_terms(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.terms[i * self.dim() + j]
    }

    pub fn is_abelian(&self) -> bool {
        self.terms.iter().all(Vec::is_empty)
    }

    /// Same constants on another space of equal dimension.
    pub fn relabel(&self, space: SpaceRef) -> Result<Self> {
        if space.dim() != self.dim() {
            return Err(Error::Shape(format!("relabel {}-dim algebra onto {}-dim space", self.dim(), space.dim())));
        }
        Ok(LieAlgebra { space, c: self.c.clone(), terms: self.terms.clone() })
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        same_space(&self.space, x.space())?;
        same_space(&self.space, y.space())?;
        Vector::new(self.space.clone(), self.bracket_coeffs(x.coeffs(), y.coeffs()))
    }

    pub(crate) fn bracket_coeffs(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let xy = xi * yj;
                for (k, c) in self.bracket_terms(i, j) {
                    out[*k] += &(&xy * c);
                }
            }
        }
        out
    }

    /// Matrix of `ad_x`: column j holds the coordinates of `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for j in 0..n {
                for (k, c) in self.bracket_terms(i, j) {
                    m[(*k, j)] += &(xi * c);
                }
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (k, c) in self.bracket_terms(i, j) {
                m[(*k, j)] = c.clone();
            }
        }
        m
    }

    /// Lists every violated antisymmetry and Jacobi instance.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new("lie algebra");
        let n = self.dim();
        report.check("antisymmetry");
        report.check("jacobi");
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let s = self.constant(i, j, k) + self.constant(j, i, k);
                    if !s.is_zero() {
                        report.violation("antisymmetry", &[i, j, k], format!("c[i][j][k] + c[j][i][k] = {s}"));
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = vec![Scalar::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, v) in self.bracket_terms(a, b) {
                            for (l, w) in self.bracket_terms(*m, c) {
                                acc[*l] += &(v * w);
                            }
                        }
                    }
                    for (l, v) in acc.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                        report.violation("jacobi", &[i, j, k, l], format!("cyclic sum has e_{l} coefficient {v}"));
                    }
                }
            }
        }
        report
    }

    /// All structure constants negated.
    pub fn opposite(&self) -> LieAlgebra {
        LieAlgebra::from_raw(self.space.clone(), self.c.iter().map(|x| -x).collect()).expect("same shape")
    }

    /// `K[i][j] = trace(ad e_i ∘ ad e_j)`, as a map g → g*.
    pub fn killing_form(&self) -> LinearMap {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                // trace = Σ_{l,k} c[i][l][k] c[j][k][l]
                let mut t = Scalar::zero();
                for l in 0..n {
                    for (k, v) in self.bracket_terms(i, l) {
                        let w = self.constant(j, *k, l);
                        if !w.is_zero() {
                            t += &(v * w);
                        }
                    }
                }
                m[(i, j)] = t.clone();
                m[(j, i)] = t;
            }
        }
        LinearMap::new(self.space.clone(), self.space.dual(), m).expect("square")
    }

    /// Block-diagonal direct sum on `space`, whose dimension must be the
    /// sum of the parts.
    pub fn direct_sum(parts: &[&LieAlgebra], space: SpaceRef) -> Result<LieAlgebra> {
        let total: usize = parts.iter().map(|p| p.dim()).sum();
        if total != space.dim() {
            return Err(Error::Shape(format!("direct sum of total dim {total} onto {}-dim space", space.dim())));
        }
        let mut c = vec![Scalar::zero(); total * total * total];
        let mut off = 0;
        for p in parts {
            let n = p.dim();
            for i in 0..n {
                for j in 0..n {
                    for (k, v) in p.bracket_terms(i, j) {
                        c[cube_index(total, off + i, off + j, off + k)] = v.clone();
                    }
                }
            }
            off += n;
        }
        LieAlgebra::from_raw(space, c)
    }

    /// Constants in the basis `u_p = Σ_i s[i][p] e_i`.
    pub fn transport(&self, s: &Matrix, space: SpaceRef) -> Result<LieAlgebra> {
        let n = self.dim();
        if s.rows() != n || s.cols() != n || space.dim() != n {
            return Err(Error::Shape("basis change must be square of the algebra's dimension".into()));
        }
        let s_inv = s.inverse()?;
        let mut c = vec![Scalar::zero(); n * n * n];
        for p in 0..n {
            for q in 0..n {
                let up = s.column(p);
                let uq = s.column(q);
                let br = self.bracket_coeffs(&up, &uq);
                let coords = s_inv.apply(&br)?;
                for (l, v) in coords.into_iter().enumerate() {
                    c[cube_index(n, p, q, l)] = v;
                }
            }
        }
        LieAlgebra::from_raw(space, c)
    }
}

/// `δ(e_i) = Σ_{j,k} d[i][j][k] e_j ⊗ e_k`.
#[derive(Clone)]
pub struct LieCobracket {
    space: SpaceRef,
    d: Vec<Scalar>,
    terms: Arc<Vec<Vec<(usize, usize, Scalar)>>>,
}

impl PartialEq for LieCobracket {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.d == other.d
    }
}

impl Eq for LieCobracket {}

impl std::fmt::Debug for LieCobracket {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieCobracket[{}]{{", self.space.labels().join(","))?;
        for i in 0..self.dim() {
            write!(f, " δ{}={:?};", self.space.label(i), self.cobracket_basis(i))?;
        }
        write!(f, " }}")
    }
}

impl LieCobracket {
    pub fn from_raw(space: SpaceRef, d: Vec<Scalar>) -> Result<Self> {
        check_cube(&space, d.len(), "cobracket")?;
        let n = space.dim();
        let mut terms = vec![Vec::new(); n];
        for (i, t) in terms.iter_mut().enumerate() {
            for j in 0..n {
                for k in 0..n {
                    let v = &d[cube_index(n, i, j, k)];
                    if !v.is_zero() {
                        t.push((j, k, v.clone()));
                    }
                }
            }
        }
        Ok(LieCobracket { space, d, terms: Arc::new(terms) })
    }

    pub fn new(space: SpaceRef, d: Vec<Scalar>) -> Result<Self> {
        let cob = LieCobracket::from_raw(space, d)?;
        let report = cob.verify();
        if report.is_ok() {
            Ok(cob)
        } else {
            Err(Error::Invalid(report))
        }
    }

    /// Entries `δ(e_i) ∋ v e_j⊗e_k`; each also sets `−v e_k⊗e_j`.
    pub fn from_entries(space: SpaceRef, entries: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        let n = space.dim();
        let mut d = vec![Scalar::zero(); n * n * n];
        for (i, j, k, v) in entries {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Shape(format!("cobracket index ({i},{j},{k}) out of range for dim {n}")));
            }
            d[cube_index(n, *i, *j, *k)] += v;
            d[cube_index(n, *i, *k, *j)] -= v;
        }
        LieCobracket::new(space, d)
    }

    pub fn from_fn(space: SpaceRef, mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Result<Self> {
        let n = space.dim();
        let mut d = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    d.push(f(i, j, k));
                }
            }
        }
        LieCobracket::from_raw(space, d)
    }

    pub fn zero(space: SpaceRef) -> Self {
        let n = space.dim();
        LieCobracket::from_raw(space, vec![Scalar::zero(); n * n * n]).expect("shape is consistent")
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.d
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.d[cube_index(self.dim(), i, j, k)]
    }

    pub fn terms(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.terms[i]
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(Vec::is_empty)
    }

    pub fn relabel(&self, space: SpaceRef) -> Result<Self> {
        if space.dim() != self.dim() {
            return Err(Error::Shape("relabel onto a space of different dimension".into()));
        }
        Ok(LieCobracket { space, d: self.d.clone(), terms: self.terms.clone() })
    }

    pub fn cobracket_basis(&self, i: usize) -> Tensor2 {
        let mut t = Tensor2::zeros(self.space.clone(), self.space.clone());
        for (j, k, v) in self.terms(i) {
            t.set(*j, *k, v.clone());
        }
        t
    }

    pub fn cobracket(&self, x: &Vector) -> Result<Tensor2> {
        same_space(&self.space, x.space())?;
        Ok(self.cobracket_coeffs(x.coeffs()))
    }

    pub(crate) fn cobracket_coeffs(&self, x: &[Scalar]) -> Tensor2 {
        let mut t = Tensor2::zeros(self.space.clone(), self.space.clone());
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, k, v) in self.terms(i) {
                t.add_at(*j, *k, &(xi * v));
            }
        }
        t
    }

    /// `(δ⊗id)δ(e_i)`, with the new factors in slots 1 and 2.
    fn delta_id_delta(&self, i: usize) -> Tensor3 {
        let s = &self.space;
        let mut t = Tensor3::zeros(s.clone(), s.clone(), s.clone());
        for (a, b, v) in self.terms(i) {
            for (c, d, w) in self.terms(*a) {
                t.add_at(*c, *d, *b, &(v * w));
            }
        }
        t
    }

    /// Anticocommutativity and co-Jacobi on every basis element.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new("lie coalgebra");
        let n = self.dim();
        report.check("anticocommutativity");
        report.check("co-jacobi");
        for i in 0..n {
            for j in 0..n {
                for k in j..n {
                    let s = self.constant(i, j, k) + self.constant(i, k, j);
                    if !s.is_zero() {
                        report.violation("anticocommutativity", &[i, j, k], format!("d[i][j][k] + d[i][k][j] = {s}"));
                    }
                }
            }
        }
        for i in 0..n {
            let total = self.delta_id_delta(i).cyclic_sum().expect("same spaces");
            for (a, b, c, v) in total.nonzero() {
                report.violation("co-jacobi", &[i, a, b, c], format!("cyclic sum coefficient {v}"));
            }
        }
        report
    }

    /// Negated constants.
    pub fn opposite(&self) -> LieCobracket {
        LieCobracket::from_raw(self.space.clone(), self.d.iter().map(|x| -x).collect()).expect("same shape")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieBialgebra {
    alg: LieAlgebra,
    cob: LieCobracket,
}

impl LieBialgebra {
    pub fn from_raw(alg: LieAlgebra, cob: LieCobracket) -> Result<Self> {
        same_space(alg.space(), cob.space())?;
        Ok(LieBialgebra { alg, cob })
    }

    /// Validating constructor running the full axiom suite.
    pub fn new(alg: LieAlgebra, cob: LieCobracket) -> Result<Self> {
        let b = LieBialgebra::from_raw(alg, cob)?;
        let report = b.verify();
        if report.is_ok() {
            Ok(b)
        } else {
            Err(Error::Invalid(report))
        }
    }

    pub fn with_zero_cobracket(alg: LieAlgebra) -> Self {
        let cob = LieCobracket::zero(alg.space().clone());
        LieBialgebra { alg, cob }
    }

    pub fn alg(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn cob(&self) -> &LieCobracket {
        &self.cob
    }

    pub fn space(&self) -> &SpaceRef {
        self.alg.space()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.alg.bracket(x, y)
    }

    pub fn cobracket(&self, x: &Vector) -> Result<Tensor2> {
        self.cob.cobracket(x)
    }

    /// Only the 1-cocycle law `δ[e_i,e_j] = ad_{e_i}δe_j − ad_{e_j}δe_i`.
    pub fn verify_cocycle(&self) -> VerificationReport {
        let mut report = VerificationReport::new("bialgebra");
        report.check("1-cocycle");
        let n = self.dim();
        let unit = |i: usize| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            v
        };
        for i in 0..n {
            let ei = unit(i);
            for j in i + 1..n {
                let ej = unit(j);
                let mut br = vec![Scalar::zero(); n];
                for (k, v) in self.alg.bracket_terms(i, j) {
                    br[*k] = v.clone();
                }
                let lhs = self.cob.cobracket_coeffs(&br);
                let rhs = ad_extend_coeffs(&self.alg, &ei, &self.cob.cobracket_basis(j))
                    .sub(&ad_extend_coeffs(&self.alg, &ej, &self.cob.cobracket_basis(i)))
                    .expect("same spaces");
                let diff = lhs.sub(&rhs).expect("same spaces");
                for (a, b, v) in diff.nonzero() {
                    report.violation("1-cocycle", &[i, j, a, b], format!("δ[e_i,e_j] − (ad δ terms) has coefficient {v}"));
                }
            }
        }
        report
    }

    /// Lie algebra, Lie coalgebra and 1-cocycle checks together.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new("lie bialgebra");
        report.merge(self.alg.verify());
        report.merge(self.cob.verify());
        report.merge(self.verify_cocycle());
        report
    }

    /// The dual bialgebra on the starred space: `c*[j][k][i] = d[i][j][k]`
    /// and `d*[k][i][j] = c[i][j][k]` with the dual-basis pairing.
    pub fn dualize(&self) -> LieBialgebra {
        let space = self.space().dual();
        let alg = LieAlgebra::from_fn(space.clone(), |j, k, i| self.cob.constant(i, j, k).clone()).expect("shape");
        let cob = LieCobracket::from_fn(space, |k, i, j| self.alg.constant(i, j, k).clone()).expect("shape");
        LieBialgebra { alg, cob }
    }

    pub fn relabel(&self, space: SpaceRef) -> Result<Self> {
        Ok(LieBialgebra { alg: self.alg.relabel(space.clone())?, cob: self.cob.relabel(space)? })
    }
}

/// Exact matrix between labeled spaces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap {
    domain: SpaceRef,
    codomain: SpaceRef,
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(domain: SpaceRef, codomain: SpaceRef, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::Shape(format!(
                "{}x{} matrix for a map from dim {} to dim {}",
                matrix.rows(),
                matrix.cols(),
                domain.dim(),
                codomain.dim()
            )));
        }
        Ok(LinearMap { domain, codomain, matrix })
    }

    pub fn identity(space: SpaceRef) -> Self {
        let n = space.dim();
        LinearMap { domain: space.clone(), codomain: space, matrix: Matrix::identity(n) }
    }

    pub fn zero(domain: SpaceRef, codomain: SpaceRef) -> Self {
        let m = Matrix::zeros(codomain.dim(), domain.dim());
        LinearMap { domain, codomain, matrix: m }
    }

    pub fn domain(&self) -> &SpaceRef {
        &self.domain
    }

    pub fn codomain(&self) -> &SpaceRef {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        same_space(&self.domain, v.space())?;
        Vector::new(self.codomain.clone(), self.matrix.apply(v.coeffs())?)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        same_space(&inner.codomain, &self.domain)?;
        LinearMap::new(inner.domain.clone(), self.codomain.clone(), self.matrix.mul(&inner.matrix)?)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.domain.dim() == self.codomain.dim() && self.rank() == self.domain.dim()
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        LinearMap::new(self.codomain.clone(), self.domain.clone(), self.matrix.inverse()?)
    }

    pub fn scale(&self, k: &Scalar) -> LinearMap {
        LinearMap { domain: self.domain.clone(), codomain: self.codomain.clone(), matrix: self.matrix.scale(k) }
    }

    /// `(m ⊗ m)(t)`.
    pub fn apply2(&self, t: &Tensor2) -> Result<Tensor2> {
        same_space(&self.domain, t.left())?;
        same_space(&self.domain, t.right())?;
        t.map(&self.matrix, &self.matrix, self.codomain.clone(), self.codomain.clone())
    }
}

/// `m([e_i, e_j]) = [m e_i, m e_j]` on all basis pairs.
pub fn check_homomorphism(m: &LinearMap, src: &LieAlgebra, dst: &LieAlgebra) -> VerificationReport {
    let mut report = VerificationReport::new("lie homomorphism");
    report.check("bracket preserved");
    if let Err(e) = same_space(m.domain(), src.space()).and_then(|_| same_space(m.codomain(), dst.space())) {
        report.violation("bracket preserved", &[], e.to_string());
        return report;
    }
    let n = src.dim();
    let images: Vec<Vec<Scalar>> = (0..n).map(|i| m.matrix().column(i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut br = vec![Scalar::zero(); n];
            for (k, v) in src.bracket_terms(i, j) {
                br[*k] = v.clone();
            }
            let lhs = m.matrix().apply(&br).expect("shape");
            let rhs = dst.bracket_coeffs(&images[i], &images[j]);
            for (k, (a, b)) in lhs.iter().zip(&rhs).enumerate() {
                if a != b {
                    report.violation("bracket preserved", &[i, j, k], format!("m[e_i,e_j] = {a}, [m e_i, m e_j] = {b}"));
                }
            }
        }
    }
    report
}

/// Homomorphism plus invertibility.
pub fn check_isomorphism(m: &LinearMap, src: &LieAlgebra, dst: &LieAlgebra) -> VerificationReport {
    let mut report = check_homomorphism(m, src, dst);
    report.name = "lie isomorphism".into();
    let rank = m.rank();
    report.expect(
        "bijective",
        m.is_invertible(),
        format!("rank {rank}, domain dim {}, codomain dim {}", m.domain().dim(), m.codomain().dim()),
    );
    report
}

/// `(m⊗m)δ_src(e_i) = δ_dst(m e_i)` on all basis elements.
pub fn check_cobracket_homomorphism(m: &LinearMap, src: &LieCobracket, dst: &LieCobracket) -> VerificationReport {
    let mut report = VerificationReport::new("lie coalgebra homomorphism");
    report.check("cobracket preserved");
    if let Err(e) = same_space(m.domain(), src.space()).and_then(|_| same_space(m.codomain(), dst.space())) {
        report.violation("cobracket preserved", &[], e.to_string());
        return report;
    }
    for i in 0..src.dim() {
        let lhs = m.apply2(&src.cobracket_basis(i)).expect("spaces checked");
        let rhs = dst.cobracket_coeffs(&m.matrix().column(i));
        let diff = lhs.sub(&rhs).expect("same spaces");
        for (a, b, v) in diff.nonzero() {
            report.violation("cobracket preserved", &[i, a, b], format!("difference {v}"));
        }
    }
    report
}

pub fn check_bialgebra_homomorphism(m: &LinearMap, src: &LieBialgebra, dst: &LieBialgebra) -> VerificationReport {
    let mut report = VerificationReport::new("bialgebra homomorphism");
    report.merge(check_homomorphism(m, src.alg(), dst.alg()));
    report.merge(check_cobracket_homomorphism(m, src.cob(), dst.cob()));
    report
}

pub fn check_bialgebra_isomorphism(m: &LinearMap, src: &LieBialgebra, dst: &LieBialgebra) -> VerificationReport {
    let mut report = check_bialgebra_homomorphism(m, src, dst);
    report.name = "bialgebra isomorphism".into();
    report.expect("bijective", m.is_invertible(), format!("rank {} of {}", m.rank(), m.domain().dim()));
    report
}

/// Rank of a Lie algebra: the least nullity of `ad_x^n` over `x`, found by
/// scanning small integer combinations of the basis. The least value over
/// a Zariski-dense sample is attained at regular elements.
pub fn lie_rank(alg: &LieAlgebra) -> usize {
    cartan_subalgebra(alg).len()
}

/// Basis of the generalised null space of `ad_x` for a regular element
/// `x`; for semisimple and abelian algebras this is a Cartan subalgebra.
pub fn cartan_subalgebra(alg: &LieAlgebra) -> Vec<Vec<Scalar>> {
    let n = alg.dim();
    let mut best: Option<Vec<Vec<Scalar>>> = None;
    // a few deterministic "generic" vectors with distinct small entries
    for seed in 1..=4i64 {
        let x: Vec<Scalar> = (0..n as i64).map(|i| Scalar::from_int(1 + (i * i * seed + 3 * i + seed) % 11)).collect();
        let ad = alg.ad_matrix(&x);
        // ranks of ad^k decrease until they stabilise
        let mut p = ad.clone();
        let mut rank = p.rank();
        loop {
            let next = p.mul(&ad).expect("square");
            let r = next.rank();
            if r == rank {
                break;
            }
            p = next;
            rank = r;
        }
        if best.as_ref().map_or(true, |b| n - rank < b.len()) {
            best = Some(if n == 0 { Vec::new() } else { p.nullspace() });
        }
    }
    best.unwrap_or_default()
}

/// Convenience for a vector space with generated labels.
pub fn numbered_space(prefix: &str, dim: usize) -> SpaceRef {
    Space::numbered(prefix, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    const E: usize = 0;
    const H: usize = 1;
    const F: usize = 2;

    /// sl2 as traceless 2×2 matrices, independent of the structure constants.
    fn mat(e: i64, h: i64, f: i64) -> [[i64; 2]; 2] {
        [[h, e], [f, -h]]
    }

    fn commutator(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
        let mut out = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    out[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
                }
            }
        }
        out
    }

    fn coords(m: [[i64; 2]; 2]) -> [i64; 3] {
        [m[0][1], m[0][0], m[1][0]]
    }

    #[test]
    fn sl2_constants_match_matrix_oracle() {
        let g = catalog::sl2_algebra();
        let basis = [mat(1, 0, 0), mat(0, 1, 0), mat(0, 0, 1)];
        for i in 0..3 {
            for j in 0..3 {
                let expected = coords(commutator(basis[i], basis[j]));
                for k in 0..3 {
                    assert_eq!(g.constant(i, j, k), &Scalar::from_int(expected[k]), "[{i},{j}] at {k}");
                }
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let g = catalog::sl2_algebra();
        let s = g.space().clone();
        let e = Vector::basis(s.clone(), E);
        let f = Vector::basis(s.clone(), F);
        assert_eq!(g.bracket(&e, &f).unwrap(), Vector::basis(s.clone(), H));
        let x = Vector::new(s.clone(), vec![Scalar::ratio(1, 2), Scalar::i(), Scalar::from_int(3)]).unwrap();
        assert!(g.bracket(&x, &x).unwrap().is_zero());
        let ab = catalog::abelian_algebra(2);
        let sp = ab.space().clone();
        assert!(ab.bracket(&Vector::basis(sp.clone(), 0), &Vector::basis(sp, 1)).unwrap().is_zero());
        assert!(matches!(g.bracket(&e, &Vector::basis(ab.space().clone(), 0)), Err(Error::SpaceMismatch { .. })));
    }

    #[test]
    fn cobracket_examples() {
        let q = catalog::sl2_scaled(Scalar::one());
        let b = q.bialgebra();
        let s = b.space().clone();
        assert!(b.cobracket(&Vector::basis(s.clone(), H)).unwrap().is_zero());
        let de = b.cobracket(&Vector::basis(s.clone(), E)).unwrap();
        let half = Scalar::ratio(1, 2);
        let expected = Tensor2::from_entries(s.clone(), s.clone(), &[(E, H, half.clone()), (H, E, -&half)]);
        assert_eq!(de, expected);
        let z = LieBialgebra::with_zero_cobracket(catalog::sl2_algebra());
        assert!(z.cobracket(&Vector::basis(s, F)).unwrap().is_zero());
    }

    #[test]
    fn verify_lie_algebra_examples() {
        assert!(catalog::sl2_algebra().verify().is_ok());
        assert!(catalog::abelian_algebra(4).verify().is_ok());
        let s = Space::numbered("x", 3);
        let mut c = vec![Scalar::zero(); 27];
        c[cube_index(3, 0, 1, 2)] = Scalar::one();
        let bad = LieAlgebra::from_raw(s.clone(), c.clone()).unwrap();
        let rep = bad.verify();
        assert!(rep.violations_of("antisymmetry").any(|v| v.indices == vec![0, 1, 2]));
        assert!(matches!(LieAlgebra::new(s, c), Err(Error::Invalid(_))));
    }

    #[test]
    fn jacobi_violation_is_listed() {
        // antisymmetric but not Lie: [x0,x1]=x2, [x1,x2]=x0, [x0,x2]=x2
        let s = Space::numbered("x", 3);
        let mut c = vec![Scalar::zero(); 27];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (0, 2, 2)] {
            c[cube_index(3, i, j, k)] = Scalar::one();
            c[cube_index(3, j, i, k)] = Scalar::from_int(-1);
        }
        let rep = LieAlgebra::from_raw(s, c).unwrap().verify();
        assert!(rep.violations_of("antisymmetry").next().is_none());
        assert!(rep.violations_of("jacobi").next().is_some());
    }

    #[test]
    fn verify_bialgebra_examples() {
        let q = catalog::sl2_scaled(Scalar::one());
        assert!(q.bialgebra().verify().is_ok());
        let b = q.bialgebra();
        let mut d = b.cob().constants().to_vec();
        // perturb δ(e) in the e⊗f / f⊗e slots, keeping antisymmetry
        d[cube_index(3, E, E, F)] += Scalar::one();
        d[cube_index(3, E, F, E)] -= Scalar::one();
        let cob = LieCobracket::from_raw(b.space().clone(), d).unwrap();
        let bad = LieBialgebra::from_raw(b.alg().clone(), cob).unwrap();
        assert!(!bad.verify_cocycle().is_ok());
        for name in ["abelian-2", "sl2", "sl3", "axb"] {
            let g = catalog::algebra(name).unwrap();
            assert!(LieBialgebra::with_zero_cobracket(g).verify().is_ok(), "{name}");
        }
    }

    #[test]
    fn dualize_examples() {
        for name in catalog::NAMES {
            let b = catalog::by_name(name).unwrap().bialgebra().clone();
            let d = b.dualize();
            assert!(d.verify().is_ok(), "{name}");
            assert_eq!(d.dualize(), b, "{name}");
        }
        let z = LieBialgebra::with_zero_cobracket(catalog::abelian_algebra(3));
        let dz = z.dualize();
        assert!(dz.alg().is_abelian() && dz.cob().is_zero());
        // dual of sl2 is solvable: its derived algebra is a proper ideal
        let d = catalog::sl2_scaled(Scalar::one()).bialgebra().dualize();
        assert!(!d.alg().is_abelian());
        assert_eq!(d.alg().killing_form().rank(), 1);
    }

    #[test]
    fn opposite_examples() {
        let ab = catalog::abelian_algebra(2);
        assert_eq!(ab.opposite(), ab);
        let g = catalog::sl3_algebra();
        assert_eq!(g.opposite().opposite(), g);
        let op = catalog::sl2_algebra().opposite();
        assert_eq!(op.constant(E, F, H), &Scalar::from_int(-1));
    }

    #[test]
    fn killing_examples() {
        assert!(catalog::abelian_algebra(3).killing_form().matrix().is_zero());
        let g = catalog::sl2_algebra();
        let k = g.killing_form();
        let m = k.matrix();
        for i in 0..3 {
            for j in 0..3 {
                let expected = match (i, j) {
                    (H, H) => 8,
                    (E, F) | (F, E) => 4,
                    _ => 0,
                };
                assert_eq!(m[(i, j)], Scalar::from_int(expected));
            }
        }
        // K([e,f],h) = −K(f,[e,h]); [e,h] = −2e
        let lhs = &m[(H, H)];
        let rhs = -&(&Scalar::from_int(-2) * &m[(F, E)]);
        assert_eq!(lhs, &rhs);
        assert_eq!(catalog::sl3_algebra().killing_form().rank(), 8);
        assert_eq!(catalog::axb_algebra().killing_form().rank(), 1);
    }

    #[test]
    fn killing_is_symmetric_and_invariant() {
        for name in ["sl2", "sl3", "axb", "su2"] {
            let g = catalog::by_name(name).unwrap().bialgebra().alg().clone();
            let k = g.killing_form();
            let m = k.matrix();
            assert_eq!(m.transpose(), *m);
            let n = g.dim();
            for x in 0..n {
                let ad = g.ad_basis(x);
                // K(ad_x y, z) + K(y, ad_x z) = 0  ⇔  adᵀK + K ad = 0
                let sum = ad.transpose().mul(m).unwrap().add(&m.mul(&ad).unwrap()).unwrap();
                assert!(sum.is_zero(), "{name} x={x}");
            }
        }
    }

    #[test]
    fn homomorphism_examples() {
        let g = catalog::sl2_algebra();
        let s = g.space().clone();
        assert!(check_homomorphism(&LinearMap::identity(s.clone()), &g, &g).is_ok());
        assert!(check_homomorphism(&LinearMap::zero(s.clone(), s.clone()), &g, &g).is_ok());
        let neg = LinearMap::identity(s.clone()).scale(&Scalar::from_int(-1));
        assert!(!check_homomorphism(&neg, &g, &g).is_ok());
        assert!(!check_isomorphism(&LinearMap::zero(s.clone(), s.clone()), &g, &g).is_ok());
        assert!(check_isomorphism(&neg, &g, &g.opposite()).is_ok());
    }

    #[test]
    fn rank_examples() {
        let s = Space::numbered("x", 3);
        assert_eq!(LinearMap::identity(s.clone()).rank(), 3);
        assert_eq!(LinearMap::zero(s.clone(), s).rank(), 0);
        let q = catalog::sl2_scaled(Scalar::one());
        let m = q.r_symmetric().to_matrix();
        assert_eq!(m.rank(), 3);
        assert_eq!(m[(E, F)], Scalar::one());
        assert_eq!(m[(H, H)], Scalar::ratio(1, 2));
    }

    #[test]
    fn lie_rank_examples() {
        assert_eq!(lie_rank(&catalog::sl2_algebra()), 1);
        assert_eq!(lie_rank(&catalog::sl3_algebra()), 2);
        assert_eq!(lie_rank(&catalog::abelian_algebra(3)), 3);
    }

    fn small() -> impl Strategy<Value = i64> {
        -3i64..4
    }

    proptest! {
        #[test]
        fn composition_of_homomorphisms(a in small(), b in small(), c in small(), d in small()) {
            // inner automorphisms of sl2 from exp(ad) of nilpotents compose to homomorphisms;
            // here: diagonal scalings e ↦ t e, f ↦ t⁻¹ f are automorphisms for t ≠ 0
            let g = catalog::sl2_algebra();
            let s = g.space().clone();
            let t1 = if a == 0 { 1 } else { a };
            let t2 = if b == 0 { 1 } else { b };
            let diag = |t: i64| {
                let mut m = Matrix::identity(3);
                m[(E, E)] = Scalar::from_int(t);
                m[(F, F)] = Scalar::ratio(1, t);
                LinearMap::new(s.clone(), s.clone(), m).unwrap()
            };
            let zero_or = |k: i64| if k % 2 == 0 { diag(t1) } else { LinearMap::zero(s.clone(), s.clone()) };
            let m1 = zero_or(c);
            let m2 = if d % 2 == 0 { diag(t2) } else { diag(t1) };
            prop_assert!(check_homomorphism(&m1, &g, &g).is_ok());
            prop_assert!(check_homomorphism(&m2, &g, &g).is_ok());
            prop_assert!(check_homomorphism(&m2.compose(&m1).unwrap(), &g, &g).is_ok());
        }
    }
}
