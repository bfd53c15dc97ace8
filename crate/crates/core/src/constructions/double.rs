use crate::braided::{dual_braided, transmute};
use crate::error::{Error, Result};
use crate::liealg::{check_bialgebra_homomorphism, LieAlgebra, LieBialgebra, LinearMap};
use crate::linalg::Matrix;
use crate::report::VerificationReport;
use crate::rmatrix::{twist, QuasitriangularBialgebra, TwistCocycle};
use crate::scalar::Scalar;
use crate::tensor::Tensor2;

use super::{check_quasitriangular_iso, place, push_r, single_bosonisation, BlockSpace};

/// Blocks `g, g*` of the double.
pub(crate) fn double_blocks(b: &LieBialgebra) -> Result<BlockSpace> {
    BlockSpace::new(vec![("g".into(), b.space().clone()), ("g*".into(), b.space().dual())])
}

/// `D(g)` on `g ⊕ g*`: `g*` carries the opposite of the bracket dual to
/// `δ`, the cross bracket is `[x,φ] = φ₍₁₎⟨φ₍₂₎, x⟩ + x₍₁₎⟨φ, x₍₂₎⟩`, and
/// `r = Σ f^a ⊗ e_a`. The induced cobracket is checked to be the direct sum
/// of `δ` and the cobracket dual to the bracket.
pub fn drinfeld_double(b: &LieBialgebra) -> Result<QuasitriangularBialgebra> {
    let n = b.dim();
    let blocks = double_blocks(b)?;
    let big = 2 * n;
    let idx = |i: usize, j: usize, k: usize| (i * big + j) * big + k;
    let mut t = vec![Scalar::zero(); big * big * big];
    for i in 0..n {
        for j in 0..n {
            for (k, v) in b.alg().bracket_terms(i, j) {
                t[idx(i, j, *k)] += v;
            }
        }
    }
    for k in 0..n {
        for (a, c, v) in b.cob().terms(k) {
            t[idx(n + a, n + c, n + k)] -= v;
        }
    }
    for i in 0..n {
        for a in 0..n {
            let mut terms: Vec<(usize, Scalar)> = Vec::new();
            for p in 0..n {
                let v = b.alg().constant(p, i, a);
                if !v.is_zero() {
                    terms.push((n + p, v.clone()));
                }
            }
            for (k, l, v) in b.cob().terms(i) {
                if *l == a {
                    terms.push((*k, v.clone()));
                }
            }
            for (k, v) in terms {
                t[idx(i, n + a, k)] += &v;
                t[idx(n + a, i, k)] -= &v;
            }
        }
    }
    let alg = LieAlgebra::from_raw(blocks.total().clone(), t)?;
    let mut r = Tensor2::zeros(blocks.total().clone(), blocks.total().clone());
    for a in 0..n {
        r.set(n + a, a, Scalar::one());
    }
    let q = QuasitriangularBialgebra::new(alg, r)?;
    let mut report = VerificationReport::new("double cobracket");
    report.check("direct-sum cobracket");
    for i in 0..big {
        for j in 0..big {
            for k in 0..big {
                let expected = if i < n && j < n && k < n {
                    b.cob().constant(i, j, k).clone()
                } else if i >= n && j >= n && k >= n {
                    b.alg().constant(j - n, k - n, i - n).clone()
                } else {
                    Scalar::zero()
                };
                let got = q.cob().constant(i, j, k);
                if *got != expected {
                    report.violation("direct-sum cobracket", &[i, j, k], format!("{got} vs {expected}"));
                }
            }
        }
    }
    report.into_result()?;
    Ok(q)
}

pub fn drinfeld_double_from_q(q: &QuasitriangularBialgebra) -> Result<QuasitriangularBialgebra> {
    drinfeld_double(q.bialgebra())
}

/// `g ▶◀ g`: `g ⊕ g` with `r ⊕ −r₂₁`, twisted by `χ = r_LR − τ(r_LR)`.
#[derive(Clone, Debug)]
pub struct TwistedDouble {
    pub result: QuasitriangularBialgebra,
    pub untwisted: QuasitriangularBialgebra,
    pub chi: TwistCocycle,
    pub blocks: BlockSpace,
}

pub fn double_as_twist(q: &QuasitriangularBialgebra) -> Result<TwistedDouble> {
    let n = q.dim();
    let blocks = BlockSpace::new(vec![("L".into(), q.space().clone()), ("R".into(), q.space().clone())])?;
    let s = blocks.total().clone();
    let alg = LieAlgebra::direct_sum(&[q.alg(), q.alg()], s.clone())?;
    let mut r0 = Tensor2::zeros(s.clone(), s.clone());
    let mut chi = Tensor2::zeros(s.clone(), s);
    for (i, j, v) in q.r().nonzero() {
        r0.set(i, j, v.clone());
        r0.set(n + j, n + i, -v);
        chi.set(i, n + j, v.clone());
        chi.set(n + j, i, -v);
    }
    let untwisted = QuasitriangularBialgebra::new(alg, r0)?;
    let chi = TwistCocycle::new(chi);
    let result = twist(&untwisted, &chi)?;
    Ok(TwistedDouble { result, untwisted, chi, blocks })
}

/// `D(g) → g ▶◀ g`: `x ↦ x ⊕ x`, `φ ↦ r⁽¹⁾⟨r⁽²⁾, φ⟩ ⊕ −r⁽²⁾⟨r⁽¹⁾, φ⟩`.
pub fn double_to_twist_map(q: &QuasitriangularBialgebra) -> Result<LinearMap> {
    let n = q.dim();
    let d = double_blocks(q.bialgebra())?;
    let tw = BlockSpace::new(vec![("L".into(), q.space().clone()), ("R".into(), q.space().clone())])?;
    let r = q.r().to_matrix();
    let mut m = Matrix::zeros(2 * n, 2 * n);
    place(&mut m, &Matrix::identity(n), 0, 0);
    place(&mut m, &Matrix::identity(n), n, 0);
    place(&mut m, &r, 0, n);
    place(&mut m, &r.transpose().neg(), n, n);
    LinearMap::new(d.total().clone(), tw.total().clone(), m)
}

/// Bialgebra homomorphism, `r` carried, and bijectivity of
/// `D(g) → g ▶◀ g`. Bijectivity holds exactly when `g` is factorisable.
pub fn check_double_to_twist(q: &QuasitriangularBialgebra) -> Result<VerificationReport> {
    let d = drinfeld_double_from_q(q)?;
    let tw = double_as_twist(q)?;
    let m = double_to_twist_map(q)?;
    let mut report = VerificationReport::new("D(g) → g▶◀g");
    report.merge(check_bialgebra_homomorphism(&m, d.bialgebra(), tw.result.bialgebra()));
    report.check("r carried");
    let diff = push_r(&m, d.r())?.sub(tw.result.r())?;
    for (i, j, v) in diff.nonzero() {
        report.violation("r carried", &[i, j], format!("coefficient {v}"));
    }
    report.expect("bijective", m.is_invertible(), format!("rank {} of {}", m.rank(), m.domain().dim()));
    Ok(report)
}

/// `D(g) → g̲* ⋊ g`: `x ⊕ φ ↦ φ ⊕ (x − r⁽²⁾⟨r⁽¹⁾, φ⟩)`, checked as a
/// bialgebra isomorphism onto the bosonisation of the dual transmutation.
pub fn dual_bosonisation_iso(q: &QuasitriangularBialgebra) -> Result<(LinearMap, VerificationReport)> {
    let n = q.dim();
    let d = drinfeld_double_from_q(q)?;
    let bos = single_bosonisation(&dual_braided(&transmute(q)?))?;
    let mut m = Matrix::zeros(2 * n, 2 * n);
    place(&mut m, &Matrix::identity(n), 0, n);
    place(&mut m, &Matrix::identity(n), n, 0);
    place(&mut m, &q.r().to_matrix().transpose().neg(), n, n);
    let map = LinearMap::new(d.space().clone(), bos.space().clone(), m)?;
    let report = crate::liealg::check_bialgebra_isomorphism(&map, d.bialgebra(), &bos);
    Ok((map, report))
}

/// Quasitriangular isomorphism check for `D(g) → g ▶◀ g`; only meaningful
/// for factorisable inputs.
pub fn double_twist_iso_check(q: &QuasitriangularBialgebra) -> Result<VerificationReport> {
    let d = drinfeld_double_from_q(q)?;
    let tw = double_as_twist(q)?;
    let m = double_to_twist_map(q)?;
    if !m.is_invertible() {
        return Err(Error::NotFactorisable);
    }
    Ok(check_quasitriangular_iso(&m, &d, &tw.result))
}
