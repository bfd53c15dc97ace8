//! Modules over a quasitriangular Lie bialgebra, the infinitesimal braiding,
//! braided-Lie bialgebras, transmutation, dual pairs and the linear solver
//! for braided cobrackets over a triangular ambient.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, LieCobracket, LinearMap};
use crate::linalg::Matrix;
use crate::report::VerificationReport;
use crate::rmatrix::{Classification, QuasitriangularBialgebra};
use crate::scalar::Scalar;
use crate::tensor::{same_space, SpaceRef, Tensor2, Vector};

/// Left action `ξ_i ▷ x_j = Σ_k a[i][j][k] x_k` of `acting` on `carrier`.
#[derive(Clone)]
pub struct ModuleAction {
    acting: LieAlgebra,
    carrier: SpaceRef,
    a: Vec<Scalar>,
    terms: Arc<Vec<Vec<(usize, Scalar)>>>,
}

impl PartialEq for ModuleAction {
    fn eq(&self, other: &Self) -> bool {
        self.acting == other.acting && self.carrier == other.carrier && self.a == other.a
    }
}

impl Eq for ModuleAction {}

impl std::fmt::Debug for ModuleAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModuleAction[{} on {}]", self.acting.dim(), self.carrier.dim())
    }
}

impl ModuleAction {
    pub fn from_raw(acting: LieAlgebra, carrier: SpaceRef, a: Vec<Scalar>) -> Result<Self> {
        let (g, m) = (acting.dim(), carrier.dim());
        if a.len() != g * m * m {
            return Err(Error::Shape(format!("{} action constants for {g} acting on {m}", a.len())));
        }
        let mut terms = vec![Vec::new(); g * m];
        for i in 0..g {
            for j in 0..m {
                for k in 0..m {
                    let v = &a[(i * m + j) * m + k];
                    if !v.is_zero() {
                        terms[i * m + j].push((k, v.clone()));
                    }
                }
            }
        }
        Ok(ModuleAction { acting, carrier, a, terms: Arc::new(terms) })
    }

    pub fn new(acting: LieAlgebra, carrier: SpaceRef, a: Vec<Scalar>) -> Result<Self> {
        let act = ModuleAction::from_raw(acting, carrier, a)?;
        let report = act.verify();
        if report.is_ok() {
            Ok(act)
        } else {
            Err(Error::Invalid(report))
        }
    }

    /// The adjoint action of `g` on its own space.
    pub fn adjoint(alg: &LieAlgebra) -> Self {
        ModuleAction::from_raw(alg.clone(), alg.space().clone(), alg.constants().to_vec()).expect("cube shape")
    }

    pub fn acting(&self) -> &LieAlgebra {
        &self.acting
    }

    pub fn carrier(&self) -> &SpaceRef {
        &self.carrier
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let m = self.carrier.dim();
        &self.a[(i * m + j) * m + k]
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.a
    }

    /// Nonzero `(k, a[i][j][k])`.
    pub fn terms(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.terms[i * self.carrier.dim() + j]
    }

    /// Matrix of `ξ_i ▷ ·` on the carrier.
    pub fn matrix(&self, i: usize) -> Matrix {
        let m = self.carrier.dim();
        let mut out = Matrix::zeros(m, m);
        for j in 0..m {
            for (k, v) in self.terms(i, j) {
                out[(*k, j)] = v.clone();
            }
        }
        out
    }

    pub(crate) fn act_basis(&self, i: usize, x: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.carrier.dim()];
        for (j, xj) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (k, v) in self.terms(i, j) {
                out[*k] += &(xj * v);
            }
        }
        out
    }

    pub fn act(&self, xi: &Vector, x: &Vector) -> Result<Vector> {
        same_space(self.acting.space(), xi.space())?;
        same_space(&self.carrier, x.space())?;
        let mut out = vec![Scalar::zero(); self.carrier.dim()];
        for (i, c) in xi.coeffs().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (k, v) in self.act_basis(i, x.coeffs()).into_iter().enumerate() {
                out[k] += &(c * &v);
            }
        }
        Vector::new(self.carrier.clone(), out)
    }

    /// `ξ_i ▷ t` on `carrier ⊗ carrier`, by the Leibniz rule.
    pub(crate) fn act2_basis(&self, i: usize, t: &Tensor2) -> Tensor2 {
        let mut out = Tensor2::zeros(t.left().clone(), t.right().clone());
        for (a, b, c) in t.nonzero() {
            for (k, v) in self.terms(i, a) {
                out.add_at(*k, b, &(c * v));
            }
            for (k, v) in self.terms(i, b) {
                out.add_at(a, *k, &(c * v));
            }
        }
        out
    }

    /// `[ξ_i, ξ_j] ▷ x = ξ_i ▷ (ξ_j ▷ x) − ξ_j ▷ (ξ_i ▷ x)` on all basis triples.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new("module action");
        report.check("action law");
        let (g, m) = (self.acting.dim(), self.carrier.dim());
        for i in 0..g {
            for j in i + 1..g {
                for x in 0..m {
                    let mut ex = vec![Scalar::zero(); m];
                    ex[x] = Scalar::one();
                    let mut lhs = vec![Scalar::zero(); m];
                    for (k, c) in self.acting.bracket_terms(i, j) {
                        for (l, v) in self.terms(*k, x) {
                            lhs[*l] += &(c * v);
                        }
                    }
                    let ij = self.act_basis(i, &self.act_basis(j, &ex));
                    let ji = self.act_basis(j, &self.act_basis(i, &ex));
                    for l in 0..m {
                        let d = &(&lhs[l] - &ij[l]) + &ji[l];
                        if !d.is_zero() {
                            report.violation("action law", &[i, j, x, l], format!("difference {d}"));
                        }
                    }
                }
            }
        }
        report
    }

    /// The dual (coadjoint-type) action on `carrier*`:
    /// `⟨ξ▷φ, x⟩ = −⟨φ, ξ▷x⟩`.
    pub fn dual(&self) -> ModuleAction {
        let (g, m) = (self.acting.dim(), self.carrier.dim());
        let mut a = Vec::with_capacity(g * m * m);
        for i in 0..g {
            for j in 0..m {
                for k in 0..m {
                    a.push(-self.constant(i, k, j));
                }
            }
        }
        ModuleAction::from_raw(self.acting.clone(), self.carrier.dual(), a).expect("shape")
    }

    pub fn relabel(&self, acting: LieAlgebra, carrier: SpaceRef) -> Result<ModuleAction> {
        if acting.dim() != self.acting.dim() || carrier.dim() != self.carrier.dim() {
            return Err(Error::Shape("relabel onto spaces of different dimension".into()));
        }
        ModuleAction::from_raw(acting, carrier, self.a.clone())
    }
}

/// `ψ(a⊗b) = 2r₊ ▷ (a⊗b − b⊗a)`.
pub fn infinitesimal_braiding(q: &QuasitriangularBialgebra, act: &ModuleAction, a: &Vector, b: &Vector) -> Result<Tensor2> {
    same_space(q.space(), act.acting().space())?;
    same_space(act.carrier(), a.space())?;
    same_space(act.carrier(), b.space())?;
    Ok(psi_coeffs(&q.r_symmetric(), act, a.coeffs(), b.coeffs()))
}

fn psi_coeffs(sym: &Tensor2, act: &ModuleAction, a: &[Scalar], b: &[Scalar]) -> Tensor2 {
    let carrier = act.carrier().clone();
    let mut out = Tensor2::zeros(carrier.clone(), carrier);
    let g = act.acting().dim();
    let ia: Vec<Vec<Scalar>> = (0..g).map(|i| act.act_basis(i, a)).collect();
    let ib: Vec<Vec<Scalar>> = (0..g).map(|i| act.act_basis(i, b)).collect();
    for (i, j, qv) in sym.nonzero() {
        for (p, x) in ia[i].iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (s, y) in ib[j].iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                out.add_at(p, s, &(&(qv * x) * y));
            }
        }
        for (p, x) in ib[i].iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (s, y) in ia[j].iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                out.add_at(p, s, &-&(&(qv * x) * y));
            }
        }
    }
    out
}

/// A Lie algebra and Lie coalgebra in the category of modules over a
/// quasitriangular ambient, with `dδ̲ = ψ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BraidedLieBialgebra {
    ambient: QuasitriangularBialgebra,
    action: ModuleAction,
    alg: LieAlgebra,
    cob: LieCobracket,
}

impl BraidedLieBialgebra {
    pub fn from_raw(ambient: QuasitriangularBialgebra, action: ModuleAction, alg: LieAlgebra, cob: LieCobracket) -> Result<Self> {
        same_space(ambient.space(), action.acting().space())?;
        same_space(action.carrier(), alg.space())?;
        same_space(alg.space(), cob.space())?;
        Ok(BraidedLieBialgebra { ambient, action, alg, cob })
    }

    pub fn new(ambient: QuasitriangularBialgebra, action: ModuleAction, alg: LieAlgebra, cob: LieCobracket) -> Result<Self> {
        let b = BraidedLieBialgebra::from_raw(ambient, action, alg, cob)?;
        let report = b.verify();
        if report.is_ok() {
            Ok(b)
        } else {
            Err(Error::Invalid(report))
        }
    }

    pub fn ambient(&self) -> &QuasitriangularBialgebra {
        &self.ambient
    }

    pub fn action(&self) -> &ModuleAction {
        &self.action
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

    /// `ad̲_a(δ̲b) − ad̲_b(δ̲a) − δ̲([a,b])`.
    pub fn coboundary2(&self, a: &Vector, b: &Vector) -> Result<Tensor2> {
        same_space(self.space(), a.space())?;
        same_space(self.space(), b.space())?;
        Ok(coboundary2_coeffs(&self.alg, &self.cob, a.coeffs(), b.coeffs()))
    }

    pub fn psi(&self, a: &Vector, b: &Vector) -> Result<Tensor2> {
        infinitesimal_braiding(&self.ambient, &self.action, a, b)
    }

    /// Carrier axioms, action law, covariance of both structures and
    /// `dδ̲ = ψ` on every basis pair.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new("braided lie bialgebra");
        report.merge(self.alg.verify());
        report.merge(self.cob.verify());
        report.merge(self.action.verify());
        let m = self.dim();
        let g = self.action.acting().dim();
        let unit = |i: usize| {
            let mut v = vec![Scalar::zero(); m];
            v[i] = Scalar::one();
            v
        };
        report.check("bracket covariance");
        for xi in 0..g {
            for a in 0..m {
                for b in a + 1..m {
                    let ab = self.alg.bracket_coeffs(&unit(a), &unit(b));
                    let lhs = self.action.act_basis(xi, &ab);
                    let r1 = self.alg.bracket_coeffs(&self.action.act_basis(xi, &unit(a)), &unit(b));
                    let r2 = self.alg.bracket_coeffs(&unit(a), &self.action.act_basis(xi, &unit(b)));
                    for k in 0..m {
                        let d = &(&lhs[k] - &r1[k]) - &r2[k];
                        if !d.is_zero() {
                            report.violation("bracket covariance", &[xi, a, b, k], format!("difference {d}"));
                        }
                    }
                }
            }
        }
        report.check("cobracket covariance");
        for xi in 0..g {
            for x in 0..m {
                let lhs = self.cob.cobracket_coeffs(&self.action.act_basis(xi, &unit(x)));
                let rhs = self.action.act2_basis(xi, &self.cob.cobracket_basis(x));
                for (p, s, v) in lhs.sub(&rhs).expect("same spaces").nonzero() {
                    report.violation("cobracket covariance", &[xi, x, p, s], format!("difference {v}"));
                }
            }
        }
        report.check("dδ̲ = ψ");
        let sym = self.ambient.r_symmetric();
        for a in 0..m {
            for b in a..m {
                let d = coboundary2_coeffs(&self.alg, &self.cob, &unit(a), &unit(b));
                let p = psi_coeffs(&sym, &self.action, &unit(a), &unit(b));
                for (x, y, v) in d.sub(&p).expect("same spaces").nonzero() {
                    report.violation("dδ̲ = ψ", &[a, b, x, y], format!("dδ̲ − ψ has coefficient {v}"));
                }
            }
        }
        report
    }
}

fn coboundary2_coeffs(alg: &LieAlgebra, cob: &LieCobracket, a: &[Scalar], b: &[Scalar]) -> Tensor2 {
    let da = cob.cobracket_coeffs(a);
    let db = cob.cobracket_coeffs(b);
    let ab = alg.bracket_coeffs(a, b);
    crate::tensor::ad_extend_coeffs(alg, a, &db)
        .sub(&crate::tensor::ad_extend_coeffs(alg, b, &da))
        .and_then(|t| t.sub(&cob.cobracket_coeffs(&ab)))
        .expect("same spaces")
}

/// The zero-dimensional braided-Lie bialgebra over `q`.
pub fn zero_carrier(q: &QuasitriangularBialgebra) -> BraidedLieBialgebra {
    let space = crate::tensor::Space::new(Vec::<String>::new()).expect("no labels");
    BraidedLieBialgebra {
        ambient: q.clone(),
        action: ModuleAction::from_raw(q.alg().clone(), space.clone(), Vec::new()).expect("empty"),
        alg: LieAlgebra::abelian(space.clone()),
        cob: LieCobracket::zero(space),
    }
}

/// `dδ̲(a, b)` for a candidate braided structure given by its parts.
pub fn coboundary2(b: &BraidedLieBialgebra, x: &Vector, y: &Vector) -> Result<Tensor2> {
    b.coboundary2(x, y)
}

/// The transmutation: the adjoint module with the bracket of `g` and
/// `δ̲x = 2r₊⁽¹⁾ ⊗ [x, r₊⁽²⁾]`.
pub fn transmute(q: &QuasitriangularBialgebra) -> Result<BraidedLieBialgebra> {
    let b = transmute_raw(q);
    let report = b.verify();
    if report.is_ok() {
        Ok(b)
    } else {
        Err(Error::Invalid(report))
    }
}

pub(crate) fn transmute_raw(q: &QuasitriangularBialgebra) -> BraidedLieBialgebra {
    let alg = q.alg().clone();
    let sym = q.r_symmetric();
    let n = alg.dim();
    let mut d = vec![Scalar::zero(); n * n * n];
    for x in 0..n {
        for (a, j, qv) in sym.nonzero() {
            for (b, c) in alg.bracket_terms(x, j) {
                d[(x * n + a) * n + b] += &(qv * c);
            }
        }
    }
    let cob = LieCobracket::from_raw(alg.space().clone(), d).expect("cube shape");
    BraidedLieBialgebra {
        ambient: q.clone(),
        action: ModuleAction::adjoint(&alg),
        alg,
        cob,
    }
}

/// The dual braided-Lie bialgebra on `carrier*` with the dual-basis
/// pairing: bracket dual to `δ̲`, cobracket dual to the bracket, and the
/// action `⟨ξ▷φ, x⟩ = −⟨φ, ξ▷x⟩`.
pub fn dual_braided(b: &BraidedLieBialgebra) -> BraidedLieBialgebra {
    let space = b.space().dual();
    let alg = LieAlgebra::from_fn(space.clone(), |j, k, i| b.cob.constant(i, j, k).clone()).expect("shape");
    let cob = LieCobracket::from_fn(space.clone(), |k, i, j| b.alg.constant(i, j, k).clone()).expect("shape");
    BraidedLieBialgebra { ambient: b.ambient.clone(), action: b.action.dual(), alg, cob }
}

/// Dually paired braided-Lie bialgebras. `form[(j, a)] = ⟨x_j, φ_a⟩` for
/// basis `x_j` of `b` and `φ_a` of `c`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairedBraidedPair {
    pub b: BraidedLieBialgebra,
    pub c: BraidedLieBialgebra,
    pub pairing: LinearMap,
}

impl PairedBraidedPair {
    pub fn new(b: BraidedLieBialgebra, c: BraidedLieBialgebra, form: Matrix) -> Result<Self> {
        let pair = PairedBraidedPair::from_raw(b, c, form)?;
        let report = pair.verify();
        if report.is_ok() {
            Ok(pair)
        } else {
            Err(Error::Verification(report))
        }
    }

    pub fn from_raw(b: BraidedLieBialgebra, c: BraidedLieBialgebra, form: Matrix) -> Result<Self> {
        if b.ambient != c.ambient {
            return Err(Error::Precondition("paired braided-Lie bialgebras must share the ambient".into()));
        }
        let pairing = LinearMap::new(b.space().clone(), c.space().dual(), form.transpose())?;
        Ok(PairedBraidedPair { b, c, pairing })
    }

    /// `form[(j, a)] = ⟨x_j, φ_a⟩`.
    pub fn form(&self) -> Matrix {
        self.pairing.matrix().transpose()
    }

    /// Nondegeneracy, both bracket/cobracket dualities and g-invariance.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new("braided pairing");
        let p = self.form();
        let (m, k) = (self.b.dim(), self.c.dim());
        report.expect("nondegenerate", m == k && p.rank() == m, format!("rank {} for dims {m}, {k}", p.rank()));
        if m != k {
            return report;
        }
        // ⟨[x,y], φ⟩ = ⟨x⊗y, δ̲φ⟩
        report.check("⟨[x,y],φ⟩ = ⟨x⊗y,δ̲φ⟩");
        for x in 0..m {
            for y in x + 1..m {
                for a in 0..k {
                    let mut lhs = Scalar::zero();
                    for (l, v) in self.b.alg.bracket_terms(x, y) {
                        lhs += &(v * &p[(*l, a)]);
                    }
                    let mut rhs = Scalar::zero();
                    for (s, t, v) in self.c.cob.terms(a) {
                        rhs += &(&(v * &p[(x, *s)]) * &p[(y, *t)]);
                    }
                    if lhs != rhs {
                        report.violation("⟨[x,y],φ⟩ = ⟨x⊗y,δ̲φ⟩", &[x, y, a], format!("{lhs} vs {rhs}"));
                    }
                }
            }
        }
        // ⟨x, [φ,ψ]⟩ = ⟨δ̲x, φ⊗ψ⟩
        report.check("⟨x,[φ,ψ]⟩ = ⟨δ̲x,φ⊗ψ⟩");
        for a in 0..k {
            for b in a + 1..k {
                for x in 0..m {
                    let mut lhs = Scalar::zero();
                    for (l, v) in self.c.alg.bracket_terms(a, b) {
                        lhs += &(v * &p[(x, *l)]);
                    }
                    let mut rhs = Scalar::zero();
                    for (s, t, v) in self.b.cob.terms(x) {
                        rhs += &(&(v * &p[(*s, a)]) * &p[(*t, b)]);
                    }
                    if lhs != rhs {
                        report.violation("⟨x,[φ,ψ]⟩ = ⟨δ̲x,φ⊗ψ⟩", &[a, b, x], format!("{lhs} vs {rhs}"));
                    }
                }
            }
        }
        // ⟨ξ▷x, φ⟩ + ⟨x, ξ▷φ⟩ = 0
        report.check("g-invariance");
        let g = self.b.action.acting().dim();
        for xi in 0..g {
            for x in 0..m {
                for a in 0..k {
                    let mut s = Scalar::zero();
                    for (l, v) in self.b.action.terms(xi, x) {
                        s += &(v * &p[(*l, a)]);
                    }
                    for (l, v) in self.c.action.terms(xi, a) {
                        s += &(v * &p[(x, *l)]);
                    }
                    if !s.is_zero() {
                        report.violation("g-invariance", &[xi, x, a], format!("sum {s}"));
                    }
                }
            }
        }
        report
    }
}

/// `(b̲, b̲*)` with the dual-basis pairing.
pub fn dual_pair(b: &BraidedLieBialgebra) -> Result<PairedBraidedPair> {
    let n = b.dim();
    PairedBraidedPair::new(b.clone(), dual_braided(b), Matrix::identity(n))
}

/// `(g̲, g̲, K)` for factorisable `q`, requiring `K⁻¹ = 2r₊`.
pub fn self_pairing_factorisable(q: &QuasitriangularBialgebra, b: &BraidedLieBialgebra) -> Result<PairedBraidedPair> {
    let k = q.alg().killing_form().matrix().clone();
    self_pairing_with_form(q, b, k)
}

/// As [`self_pairing_factorisable`] with an explicit invariant form in
/// place of the Killing form; the form must invert `2r₊`.
pub fn self_pairing_with_form(q: &QuasitriangularBialgebra, b: &BraidedLieBialgebra, form: Matrix) -> Result<PairedBraidedPair> {
    if q.classify() != Classification::Factorisable {
        return Err(Error::NotFactorisable);
    }
    if b.ambient() != q {
        return Err(Error::Precondition("braided-Lie bialgebra is over a different ambient".into()));
    }
    let sym = q.r_symmetric().to_matrix();
    let n = q.dim();
    let prod = sym.mul(&form)?;
    if prod != Matrix::identity(n) {
        let (i, j) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| prod[(i, j)] != if i == j { Scalar::one() } else { Scalar::zero() })
            .expect("product differs from the identity somewhere");
        return Err(Error::Normalization(format!(
            "2r₊·K ≠ id: entry ({i},{j}) is {}",
            prod[(i, j)]
        )));
    }
    PairedBraidedPair::new(b.clone(), b.clone(), form)
}

/// Dimension of the space of braided cobrackets on the transmutation of a
/// triangular `q` allowed by antisymmetry, covariance and `dδ̲ = ψ`. The
/// unknowns are all `d̲[i][j][k]` and the system is solved exactly.
pub fn forced_zero_cobracket(q: &QuasitriangularBialgebra) -> Result<usize> {
    if q.classify() != Classification::Triangular {
        return Err(Error::NotTriangular);
    }
    let alg = q.alg();
    let n = alg.dim();
    let var = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let nv = n * n * n;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut push = |row: Vec<Scalar>| {
        if row.iter().any(|x| !x.is_zero()) {
            rows.push(row);
        }
    };
    // antisymmetry
    for i in 0..n {
        for j in 0..n {
            for k in j..n {
                let mut row = vec![Scalar::zero(); nv];
                row[var(i, j, k)] += Scalar::one();
                row[var(i, k, j)] += Scalar::one();
                push(row);
            }
        }
    }
    // covariance: δ̲([ξ,x]) − ξ▷δ̲x = 0, coefficient of e_j ⊗ e_k
    for xi in 0..n {
        for x in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut row = vec![Scalar::zero(); nv];
                    for (m, c) in alg.bracket_terms(xi, x) {
                        row[var(*m, j, k)] += c;
                    }
                    for p in 0..n {
                        let c = alg.constant(xi, p, j);
                        if !c.is_zero() {
                            row[var(x, p, k)] -= c;
                        }
                        let c = alg.constant(xi, p, k);
                        if !c.is_zero() {
                            row[var(x, j, p)] -= c;
                        }
                    }
                    push(row);
                }
            }
        }
    }
    // dδ̲(a,b) = ad_a δ̲b − ad_b δ̲a − δ̲[a,b] = ψ(a⊗b) = 0
    for a in 0..n {
        for b in a + 1..n {
            for j in 0..n {
                for k in 0..n {
                    let mut row = vec![Scalar::zero(); nv];
                    for p in 0..n {
                        // ad_a acting on the first and second slots of δ̲b
                        let c = alg.constant(a, p, j);
                        if !c.is_zero() {
                            row[var(b, p, k)] += c;
                        }
                        let c = alg.constant(a, p, k);
                        if !c.is_zero() {
                            row[var(b, j, p)] += c;
                        }
                        let c = alg.constant(b, p, j);
                        if !c.is_zero() {
                            row[var(a, p, k)] -= c;
                        }
                        let c = alg.constant(b, p, k);
                        if !c.is_zero() {
                            row[var(a, j, p)] -= c;
                        }
                    }
                    for (m, c) in alg.bracket_terms(a, b) {
                        row[var(*m, j, k)] -= c;
                    }
                    push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok(nv);
    }
    let m = Matrix::from_rows(rows)?;
    Ok(nv - m.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    const E: usize = 0;
    const H: usize = 1;
    const F: usize = 2;

    fn basis(s: &SpaceRef, i: usize) -> Vector {
        Vector::basis(s.clone(), i)
    }

    #[test]
    fn psi_vanishes_for_triangular() {
        let q = catalog::axb();
        let act = ModuleAction::adjoint(q.alg());
        let s = q.space().clone();
        for a in 0..2 {
            for b in 0..2 {
                assert!(infinitesimal_braiding(&q, &act, &basis(&s, a), &basis(&s, b)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn psi_of_equal_arguments_vanishes() {
        let q = catalog::sl2();
        let act = ModuleAction::adjoint(q.alg());
        let s = q.space().clone();
        let x = Vector::new(s.clone(), vec![Scalar::one(), Scalar::ratio(2, 3), Scalar::i()]).unwrap();
        assert!(infinitesimal_braiding(&q, &act, &x, &x).unwrap().is_zero());
    }

    /// ψ(e⊗f) on the adjoint module, summed by hand over the three terms of
    /// 2r₊ = ¼(e⊗f + f⊗e) + ⅛ h⊗h using [e,f] = h, [h,e] = 2e, [h,f] = −2f.
    #[test]
    fn psi_sl2_fixture() {
        let q = catalog::sl2();
        let act = ModuleAction::adjoint(q.alg());
        let s = q.space().clone();
        let psi = infinitesimal_braiding(&q, &act, &basis(&s, E), &basis(&s, F)).unwrap();
        // e⊗f term: [e,e]⊗[f,f] − [e,f]⊗[f,e] = h⊗h
        // f⊗e term: [f,e]⊗[e,f] − [f,f]⊗[e,e] = −h⊗h
        // h⊗h term: [h,e]⊗[h,f] − [h,f]⊗[h,e] = −4e⊗f + 4f⊗e
        let expected = Tensor2::from_entries(
            s.clone(),
            s,
            &[(E, F, Scalar::ratio(-1, 2)), (F, E, Scalar::ratio(1, 2))],
        );
        assert_eq!(psi, expected);
    }

    #[test]
    fn psi_is_antisymmetric() {
        let q = catalog::sl3();
        let act = ModuleAction::adjoint(q.alg());
        let s = q.space().clone();
        for a in 0..8 {
            for b in 0..8 {
                let ab = infinitesimal_braiding(&q, &act, &basis(&s, a), &basis(&s, b)).unwrap();
                let ba = infinitesimal_braiding(&q, &act, &basis(&s, b), &basis(&s, a)).unwrap();
                assert!(ab.add(&ba).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn coboundary2_examples() {
        let ab = catalog::abelian();
        let b = transmute(&ab).unwrap();
        let s = b.space().clone();
        assert!(b.coboundary2(&basis(&s, 0), &basis(&s, 1)).unwrap().is_zero());
        // zero cobracket on a non-abelian carrier
        let zero = BraidedLieBialgebra::from_raw(
            catalog::axb(),
            ModuleAction::adjoint(catalog::axb().alg()),
            catalog::axb().alg().clone(),
            LieCobracket::zero(catalog::axb().space().clone()),
        )
        .unwrap();
        let s = zero.space().clone();
        assert!(zero.coboundary2(&basis(&s, 0), &basis(&s, 1)).unwrap().is_zero());
    }

    #[test]
    fn transmuted_sl2_satisfies_d_delta_equals_psi() {
        let q = catalog::sl2();
        let b = transmute_raw(&q);
        let s = b.space().clone();
        for x in 0..3 {
            for y in 0..3 {
                let d = b.coboundary2(&basis(&s, x), &basis(&s, y)).unwrap();
                let p = b.psi(&basis(&s, x), &basis(&s, y)).unwrap();
                assert_eq!(d, p, "({x},{y})");
            }
        }
        assert!(b.verify().is_ok());
    }

    #[test]
    fn transmute_examples() {
        let t = transmute(&catalog::axb()).unwrap();
        assert!(t.cob().is_zero());
        let ab = transmute(&catalog::abelian()).unwrap();
        assert!(ab.cob().is_zero() && ab.alg().is_abelian());
        // δ̲h = Σ q^{ij} e_i ⊗ [h, e_j] with q = ¼(e⊗f + f⊗e) + ⅛h⊗h:
        // ¼ e⊗[h,f] + ¼ f⊗[h,e] = −½ e⊗f + ½ f⊗e
        let b = transmute(&catalog::sl2()).unwrap();
        let s = b.space().clone();
        let expected = Tensor2::from_entries(s.clone(), s, &[(E, F, Scalar::ratio(-1, 2)), (F, E, Scalar::ratio(1, 2))]);
        assert_eq!(b.cob().cobracket_basis(H), expected);
        for name in catalog::NAMES {
            assert!(transmute(&catalog::by_name(name).unwrap()).is_ok(), "{name}");
        }
    }

    #[test]
    fn self_pairing_examples() {
        let q = catalog::sl2();
        let b = transmute(&q).unwrap();
        let pair = self_pairing_factorisable(&q, &b).unwrap();
        assert_eq!(pair.form(), *q.alg().killing_form().matrix());

        let t = catalog::axb();
        let bt = transmute(&t).unwrap();
        assert!(matches!(self_pairing_factorisable(&t, &bt), Err(Error::NotFactorisable)));

        let twice = catalog::sl2_scaled(Scalar::ratio(1, 2));
        let b2 = transmute(&twice).unwrap();
        assert!(matches!(self_pairing_factorisable(&twice, &b2), Err(Error::Normalization(_))));
    }

    #[test]
    fn dual_braided_examples() {
        // triangular: zero bracket on the dual, Kirillov–Kostant cobracket
        let t = transmute(&catalog::axb()).unwrap();
        let d = dual_braided(&t);
        assert!(d.alg().is_abelian());
        let g = catalog::axb_algebra();
        for a in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(d.cob().constant(a, i, j), g.constant(i, j, a));
                }
            }
        }
        assert!(d.verify().is_ok());
        assert!(dual_pair(&t).unwrap().verify().is_ok());

        for name in catalog::NAMES {
            let b = transmute(&catalog::by_name(name).unwrap()).unwrap();
            let dd = dual_braided(&dual_braided(&b));
            assert_eq!(dd, b, "{name}");
            let d = dual_braided(&b);
            assert!(d.verify().is_ok(), "{name}: {}", d.verify());
        }
    }

    #[test]
    fn dual_of_sl2_is_isomorphic_via_killing() {
        let q = catalog::sl2();
        let b = transmute(&q).unwrap();
        let d = dual_braided(&b);
        // K: g̲ → g̲*, x ↦ K(x, ·), intertwines brackets, cobrackets and actions
        let k = LinearMap::new(b.space().clone(), d.space().clone(), q.alg().killing_form().matrix().transpose()).unwrap();
        assert!(crate::liealg::check_homomorphism(&k, b.alg(), d.alg()).is_ok());
        assert!(crate::liealg::check_cobracket_homomorphism(&k, b.cob(), d.cob()).is_ok());
        for xi in 0..3 {
            let lhs = k.matrix().mul(&b.action().matrix(xi)).unwrap();
            let rhs = d.action().matrix(xi).mul(k.matrix()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dual_pairing_is_identity() {
        for name in catalog::NAMES {
            let b = transmute(&catalog::by_name(name).unwrap()).unwrap();
            let pair = dual_pair(&b).unwrap();
            assert_eq!(pair.form(), Matrix::identity(b.dim()));
        }
    }

    #[test]
    fn forced_zero_examples() {
        assert_eq!(forced_zero_cobracket(&catalog::axb()).unwrap(), 0);
        assert_eq!(forced_zero_cobracket(&catalog::abelian()).unwrap(), 2);
        assert!(matches!(forced_zero_cobracket(&catalog::sl2()), Err(Error::NotTriangular)));
    }

    #[test]
    fn coadjoint_action_is_an_action() {
        for name in catalog::NAMES {
            let q = catalog::by_name(name).unwrap();
            assert!(ModuleAction::adjoint(q.alg()).dual().verify().is_ok(), "{name}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn psi_antisymmetric_random(a in proptest::collection::vec(-3i64..4, 3), b in proptest::collection::vec(-3i64..4, 3)) {
            let q = catalog::sl2();
            let act = ModuleAction::adjoint(q.alg());
            let s = q.space().clone();
            let va = Vector::new(s.clone(), a.into_iter().map(Scalar::from_int).collect()).unwrap();
            let vb = Vector::new(s, b.into_iter().map(Scalar::from_int).collect()).unwrap();
            let ab = infinitesimal_braiding(&q, &act, &va, &vb).unwrap();
            let ba = infinitesimal_braiding(&q, &act, &vb, &va).unwrap();
            prop_assert!(ab.add(&ba).unwrap().is_zero());
        }
    }
}
