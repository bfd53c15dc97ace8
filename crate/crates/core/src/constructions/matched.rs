use crate::error::Result;
use crate::liealg::{check_bialgebra_homomorphism, check_bialgebra_isomorphism, check_isomorphism, LieAlgebra, LieBialgebra, LieCobracket, LinearMap};
use crate::linalg::Matrix;
use crate::report::VerificationReport;
use crate::rmatrix::QuasitriangularBialgebra;
use crate::scalar::Scalar;

use super::bosonisation::{displayed_cobracket, triple, Chart, DoubleBosonisation};
use super::double::{double_blocks, drinfeld_double_from_q};
use super::factorisable::chart_change_between;
use super::{closure_report, compare_algebras, place, restrict, triple_dual, BlockSpace};

/// The actions of `g ⊕ c` on `b` and back, from the displayed formulas:
/// `α(ξ⊗x) = ξ▷x`, `α(φ⊗x) = −x₍₁̲₎⟨x₍₂̲₎, φ⟩`,
/// `β(φ⊗x) = −φ₍₁̲₎⟨x, φ₍₂̲₎⟩ − 2r₊⁽¹⁾⟨r₊⁽²⁾▷x, φ⟩`, `β(ξ⊗x) = 0`.
/// Index `h` runs over `g` then `c`; `β` lands in `g ⊕ c`.
struct Actions {
    n: usize,
    m: usize,
    alpha: Vec<Scalar>,
    beta: Vec<Scalar>,
}

impl Actions {
    fn alpha(&self, h: usize, x: usize, k: usize) -> &Scalar {
        &self.alpha[(h * self.m + x) * self.m + k]
    }

    fn beta(&self, h: usize, x: usize, k: usize) -> &Scalar {
        &self.beta[(h * self.m + x) * (self.n + self.m) + k]
    }
}

fn actions(t: &DoubleBosonisation) -> Actions {
    let (b, c) = (&t.pair.b, &t.pair.c);
    let q = t.ambient();
    let (n, m) = (q.dim(), b.dim());
    let h_dim = n + m;
    let p = t.pair.form();
    let sym = q.r_symmetric();
    let mut alpha = vec![Scalar::zero(); h_dim * m * m];
    let mut beta = vec![Scalar::zero(); h_dim * m * h_dim];
    let ai = |h: usize, x: usize, k: usize| (h * m + x) * m + k;
    let bi = |h: usize, x: usize, k: usize| (h * m + x) * h_dim + k;
    for xi in 0..n {
        for x in 0..m {
            for (k, v) in b.action().terms(xi, x) {
                alpha[ai(xi, x, *k)] += v;
            }
        }
    }
    for a in 0..m {
        for x in 0..m {
            for (k, l, v) in b.cob().terms(x) {
                alpha[ai(n + a, x, *k)] -= &(v * &p[(*l, a)]);
            }
            for (bb, cc, v) in c.cob().terms(a) {
                beta[bi(n + a, x, n + bb)] -= &(v * &p[(x, *cc)]);
            }
            for (i, j, qv) in sym.nonzero() {
                for (l, av) in b.action().terms(j, x) {
                    beta[bi(n + a, x, i)] -= &(&(qv * av) * &p[(*l, a)]);
                }
            }
        }
    }
    Actions { n, m, alpha, beta }
}

/// `b ⋈ (g ⋉ c^op)` assembled from the actions, with `b` first, and the
/// cobracket written out from the displayed formulas.
pub(crate) fn matched_pair_bialgebra(t: &DoubleBosonisation) -> Result<LieBialgebra> {
    let act = actions(t);
    let (n, m) = (act.n, act.m);
    let (b, c) = (&t.pair.b, &t.pair.c);
    let g = t.ambient().alg();
    let big = t.dim();
    let (og, oc) = (m, m + n);
    let idx = |i: usize, j: usize, k: usize| (i * big + j) * big + k;
    let mut s = vec![Scalar::zero(); big * big * big];
    for i in 0..m {
        for j in 0..m {
            for (k, v) in b.alg().bracket_terms(i, j) {
                s[idx(i, j, *k)] += v;
            }
            for (k, v) in c.alg().bracket_terms(i, j) {
                s[idx(oc + i, oc + j, oc + k)] -= v;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for (k, v) in g.bracket_terms(i, j) {
                s[idx(og + i, og + j, og + k)] += v;
            }
        }
        for a in 0..m {
            for (k, v) in c.action().terms(i, a) {
                s[idx(og + i, oc + a, oc + k)] += v;
                s[idx(oc + a, og + i, oc + k)] -= v;
            }
        }
    }
    // [h, x] = α(h⊗x) + β(h⊗x)
    for h in 0..n + m {
        for x in 0..m {
            for k in 0..m {
                let v = act.alpha(h, x, k);
                if !v.is_zero() {
                    s[idx(og + h, x, k)] += v;
                    s[idx(x, og + h, k)] -= v;
                }
            }
            for k in 0..n + m {
                let v = act.beta(h, x, k);
                if !v.is_zero() {
                    s[idx(og + h, x, og + k)] += v;
                    s[idx(x, og + h, og + k)] -= v;
                }
            }
        }
    }
    let alg = LieAlgebra::from_raw(t.blocks.total().clone(), s)?;
    LieBialgebra::from_raw(alg, displayed_cobracket(t))
}

/// The double cross sum of `b` with `g ⋉ c^op` reproduces the bracket of
/// `T`, and the coalgebra is semidirect: cobrackets of `b` have no
/// component in `c`, and `g ⊕ c` is a sub-bialgebra.
pub fn matched_pair(t: &DoubleBosonisation) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("matched pair");
    let re = matched_pair_bialgebra(t)?;
    report.merge(compare_algebras("reassembled bracket", re.alg(), t.alg()));
    let mut co = VerificationReport::new("semidirect coalgebra");
    co.check("no c in cobrackets of b");
    let c_range = t.c_range();
    for x in t.b_range() {
        for (j, k, v) in t.result.cob().terms(x) {
            if c_range.contains(j) || c_range.contains(k) {
                co.violation("no c in cobrackets of b", &[x, *j, *k], format!("coefficient {v}"));
            }
        }
    }
    report.merge(co);
    report.merge(compare_cobrackets("reassembled cobracket", re.cob(), t.result.cob()));
    let idx: Vec<usize> = t.g_range().chain(t.c_range()).collect();
    let mut gc = closure_report(t.result.bialgebra(), &idx);
    gc.name = "g ⊕ c sub-bialgebra".into();
    report.merge(gc);
    Ok(report)
}

fn compare_cobrackets(name: &str, a: &LieCobracket, b: &LieCobracket) -> VerificationReport {
    let mut report = VerificationReport::new(name);
    report.check("cobracket constants equal");
    if a.constants() != b.constants() {
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y) = (a.constant(i, j, k), b.constant(i, j, k));
                    if x != y {
                        report.violation("cobracket constants equal", &[i, j, k], format!("{x} vs {y}"));
                    }
                }
            }
        }
    }
    report
}

/// `g ⋉ (g̲*)^op`: the `g ⊕ c` sub-bialgebra of the dual-chart triple.
fn g_cop(td: &DoubleBosonisation) -> Result<LieBialgebra> {
    let blocks = BlockSpace::new(vec![
        ("g".into(), td.ambient().space().clone()),
        ("c".into(), td.pair.c.space().clone()),
    ])?;
    let idx: Vec<usize> = td.g_range().chain(td.c_range()).collect();
    restrict(td.result.bialgebra(), &idx, blocks.total().clone())
}

fn sigma_matrix(q: &QuasitriangularBialgebra, sign: i64) -> Matrix {
    let n = q.dim();
    let mut m = Matrix::identity(2 * n);
    place(&mut m, &q.r().to_matrix().scale(&Scalar::from_int(sign)), 0, n);
    m
}

/// `σ: D(g) → g ⋉ (g̲*)^op`, `σ(h ⊕ d) = (h + r⁽¹⁾⟨r⁽²⁾, d⟩) ⊕ d`.
pub fn sigma_iso(q: &QuasitriangularBialgebra) -> Result<LinearMap> {
    let td = triple_dual(q)?;
    let target = g_cop(&td)?;
    let d = double_blocks(q.bialgebra())?;
    LinearMap::new(d.total().clone(), target.space().clone(), sigma_matrix(q, 1))
}

/// `σ⁻¹(g ⊕ c) = (g − r⁽¹⁾⟨r⁽²⁾, c⟩) ⊕ c`.
pub fn sigma_inverse(q: &QuasitriangularBialgebra) -> Result<LinearMap> {
    let s = sigma_iso(q)?;
    LinearMap::new(s.codomain().clone(), s.domain().clone(), sigma_matrix(q, -1))
}

/// `σ` as a bialgebra isomorphism, with `σ⁻¹∘σ = id` and `σ∘σ⁻¹ = id`.
pub fn sigma_iso_check(q: &QuasitriangularBialgebra) -> Result<VerificationReport> {
    let d = drinfeld_double_from_q(q)?;
    let td = triple_dual(q)?;
    let target = g_cop(&td)?;
    let s = sigma_iso(q)?;
    let si = sigma_inverse(q)?;
    let mut report = check_bialgebra_isomorphism(&s, d.bialgebra(), &target);
    report.name = "σ".into();
    let id = Matrix::identity(2 * q.dim());
    report.expect("σ⁻¹∘σ = id", si.compose(&s)?.matrix() == &id, "composite differs from the identity");
    report.expect("σ∘σ⁻¹ = id", s.compose(&si)?.matrix() == &id, "composite differs from the identity");
    Ok(report)
}

/// `g̲ ⋈ D(g)` on `b ⊕ g ⊕ g*` with `α̂ = α∘(σ⊗id)` and
/// `β̂ = σ⁻¹∘β∘(σ⊗id)`, and the map `id ⊕ σ` onto the dual-chart triple.
pub(crate) fn dcross_double(td: &DoubleBosonisation) -> Result<(LieBialgebra, LinearMap)> {
    let q = td.ambient();
    let d = drinfeld_double_from_q(q)?;
    let act = actions(td);
    let (n, m) = (act.n, act.m);
    let b = &td.pair.b;
    let sig = sigma_matrix(q, 1);
    let sig_inv = sigma_matrix(q, -1);
    let blocks = BlockSpace::new(vec![
        ("b".into(), b.space().clone()),
        ("g".into(), q.space().clone()),
        ("g*".into(), q.space().dual()),
    ])?;
    let big = m + 2 * n;
    let idx = |i: usize, j: usize, k: usize| (i * big + j) * big + k;
    let mut s = vec![Scalar::zero(); big * big * big];
    for i in 0..m {
        for j in 0..m {
            for (k, v) in b.alg().bracket_terms(i, j) {
                s[idx(i, j, *k)] += v;
            }
        }
    }
    for i in 0..2 * n {
        for j in 0..2 * n {
            for (k, v) in d.alg().bracket_terms(i, j) {
                s[idx(m + i, m + j, m + k)] += v;
            }
        }
    }
    for dd in 0..2 * n {
        for x in 0..m {
            let mut a_hat = vec![Scalar::zero(); m];
            let mut beta_gc = vec![Scalar::zero(); 2 * n];
            for h in 0..2 * n {
                let w = &sig[(h, dd)];
                if w.is_zero() {
                    continue;
                }
                for k in 0..m {
                    a_hat[k] += &(w * act.alpha(h, x, k));
                }
                for k in 0..2 * n {
                    beta_gc[k] += &(w * act.beta(h, x, k));
                }
            }
            let b_hat = sig_inv.apply(&beta_gc)?;
            for (k, v) in a_hat.iter().enumerate() {
                s[idx(m + dd, x, k)] += v;
                s[idx(x, m + dd, k)] -= v;
            }
            for (k, v) in b_hat.iter().enumerate() {
                s[idx(m + dd, x, m + k)] += v;
                s[idx(x, m + dd, m + k)] -= v;
            }
        }
    }
    let alg = LieAlgebra::from_raw(blocks.total().clone(), s)?;
    // b keeps its displayed cobracket, whose g-legs sit in the g block of
    // D(g); D(g) keeps its own
    let shown = displayed_cobracket(td);
    let mut dc = vec![Scalar::zero(); big * big * big];
    for x in 0..m {
        for (j, k, v) in shown.terms(x) {
            if *j >= m + n || *k >= m + n {
                return Err(crate::error::Error::Precondition(format!("cobracket of b[{x}] has a c component")));
            }
            dc[idx(x, *j, *k)] += v;
        }
    }
    for i in 0..2 * n {
        for (j, k, v) in d.cob().terms(i) {
            dc[idx(m + i, m + j, m + k)] += v;
        }
    }
    let cob = LieCobracket::from_raw(blocks.total().clone(), dc)?;
    let bialg = LieBialgebra::from_raw(alg, cob)?;
    let mut phi = Matrix::zeros(big, big);
    place(&mut phi, &Matrix::identity(m), 0, 0);
    place(&mut phi, &sig, m, m);
    let phi = LinearMap::new(blocks.total().clone(), td.blocks.total().clone(), phi)?;
    Ok((bialg, phi))
}

/// `T(g) ≅ g̲ ⋈ D(g)`: the reassembled double cross sum is compared with
/// the triple through `id ⊕ σ`, composed with the chart change when the
/// triple is self-paired.
pub fn triple_as_dcross_double(q: &QuasitriangularBialgebra) -> Result<VerificationReport> {
    let t = triple(q)?;
    let td = triple_dual(q)?;
    let (re, phi) = dcross_double(&td)?;
    let mut report = VerificationReport::new("T(g) ≅ g̲⋈D(g)");
    let mut iso = check_isomorphism(&phi, re.alg(), td.alg());
    iso.name = "id ⊕ σ bracket".into();
    report.merge(iso);
    let mut full = check_bialgebra_homomorphism(&phi, &re, td.result.bialgebra());
    full.name = "id ⊕ σ bialgebra".into();
    report.merge(full);
    let d_idx: Vec<usize> = (td.b_range().end..re.dim()).collect();
    let mut sub = closure_report(&re, &d_idx);
    sub.name = "D(g) sub-bialgebra".into();
    report.merge(sub);
    if t.chart == Chart::SelfPaired {
        let k = chart_change_between(&t, &td)?;
        let mut cc = check_bialgebra_isomorphism(&k, t.result.bialgebra(), td.result.bialgebra());
        cc.name = "chart change".into();
        report.merge(cc);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn abelian_actions_vanish() {
        let t = triple(&catalog::abelian()).unwrap();
        let a = actions(&t);
        assert!(a.alpha.iter().all(Scalar::is_zero));
        assert!(a.beta.iter().all(Scalar::is_zero));
    }

    #[test]
    fn matched_pair_reassembles() {
        for q in [catalog::sl2(), catalog::axb(), catalog::abelian()] {
            let t = triple(&q).unwrap();
            let r = matched_pair(&t).unwrap();
            assert!(r.is_ok(), "{r}");
        }
    }

    #[test]
    fn axb_beta_has_no_g_part() {
        let t = triple(&catalog::axb()).unwrap();
        let a = actions(&t);
        for h in 0..4 {
            for x in 0..2 {
                for k in 0..2 {
                    assert!(a.beta(h, x, k).is_zero());
                }
            }
        }
    }

    #[test]
    fn sigma_fixes_g() {
        let q = catalog::sl2();
        let s = sigma_iso(&q).unwrap();
        for i in 0..3 {
            let col = s.matrix().column(i);
            for (k, v) in col.iter().enumerate() {
                assert_eq!(v.is_one(), k == i);
                assert!(v.is_zero() || k == i);
            }
        }
    }

    #[test]
    fn sigma_and_dcross() {
        for q in [catalog::sl2(), catalog::axb(), catalog::abelian()] {
            let r = sigma_iso_check(&q).unwrap();
            assert!(r.is_ok(), "{r}");
            let r = triple_as_dcross_double(&q).unwrap();
            assert!(r.is_ok(), "{r}");
        }
    }
}
