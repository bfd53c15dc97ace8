use crate::catalog;
use crate::error::{Error, Result};
use crate::liealg::{cartan_subalgebra, check_bialgebra_isomorphism, check_isomorphism, LieAlgebra, LinearMap};
use crate::linalg::Matrix;
use crate::report::VerificationReport;
use crate::rmatrix::{twist, twist_preconditions, QuasitriangularBialgebra, TwistCocycle};
use crate::scalar::Scalar;
use crate::tensor::Tensor2;

use super::bosonisation::{triple, Chart, DoubleBosonisation};
use super::double::{double_as_twist, double_to_twist_map, drinfeld_double_from_q};
use super::matched::{dcross_double, matched_pair_bialgebra};
use super::{abc_blocks, block_identity_matrix, check_quasitriangular_iso, in_span, place, triple_dual};

fn require_self_paired(t: &DoubleBosonisation) -> Result<()> {
    if t.chart == Chart::SelfPaired {
        Ok(())
    } else {
        Err(Error::NotFactorisable)
    }
}

/// Embeddings of `g` as `I₋ = {x ⊕ −x ⊕ 0}`, `I₀ = {x ⊕ −x ⊕ −x}` and
/// `I₊ = {0 ⊕ x ⊕ x}` in the self-paired `T(g)`.
#[derive(Clone, Debug)]
pub struct IdealTriple {
    pub minus: LinearMap,
    pub zero: LinearMap,
    pub plus: LinearMap,
}

impl IdealTriple {
    pub fn maps(&self) -> [(&'static str, &LinearMap); 3] {
        [("I₋", &self.minus), ("I₀", &self.zero), ("I₊", &self.plus)]
    }
}

pub fn ideals(t: &DoubleBosonisation) -> Result<IdealTriple> {
    require_self_paired(t)?;
    let q = t.ambient();
    let n = q.dim();
    let embed = |signs: [i64; 3]| {
        let mut m = Matrix::zeros(3 * n, n);
        for (block, s) in signs.iter().enumerate() {
            for i in 0..n {
                m[(block * n + i, i)] = Scalar::from_int(*s);
            }
        }
        LinearMap::new(q.space().clone(), t.blocks.total().clone(), m)
    };
    Ok(IdealTriple { minus: embed([1, -1, 0])?, zero: embed([1, -1, -1])?, plus: embed([0, 1, 1])? })
}

/// Subalgebra, ideal, pairwise-commuting and spanning checks.
pub fn check_ideals(t: &DoubleBosonisation, ideals: &IdealTriple) -> VerificationReport {
    let mut report = VerificationReport::new("ideal decomposition");
    let alg = t.alg();
    let n = ideals.minus.domain().dim();
    let big = t.dim();
    let images: Vec<Vec<Vec<Scalar>>> =
        ideals.maps().iter().map(|(_, m)| (0..n).map(|i| m.matrix().column(i)).collect()).collect();
    for (idx, (name, _)) in ideals.maps().iter().enumerate() {
        let cols = &images[idx];
        let sub = format!("{name} subalgebra");
        let ideal = format!("{name} ideal");
        report.check(sub.as_str());
        report.check(ideal.as_str());
        for (i, u) in cols.iter().enumerate() {
            for (j, v) in cols.iter().enumerate().skip(i + 1) {
                if !in_span(cols, &alg.bracket_coeffs(u, v)) {
                    report.violation(&sub, &[i, j], "bracket leaves the image");
                }
            }
            for y in 0..big {
                let mut e = vec![Scalar::zero(); big];
                e[y] = Scalar::one();
                if !in_span(cols, &alg.bracket_coeffs(&e, u)) {
                    report.violation(&ideal, &[y, i], "bracket with T leaves the image");
                }
            }
        }
    }
    report.check("pairwise brackets vanish");
    for a in 0..3 {
        for b in a + 1..3 {
            for (i, u) in images[a].iter().enumerate() {
                for (j, v) in images[b].iter().enumerate() {
                    if alg.bracket_coeffs(u, v).iter().any(|x| !x.is_zero()) {
                        report.violation("pairwise brackets vanish", &[a, b, i, j], "nonzero bracket");
                    }
                }
            }
        }
    }
    let all = Matrix::from_fn(big, 3 * n, |r, c| images[c / n][c % n][r].clone());
    report.expect("images span", all.rank() == big, format!("rank {} of {big}", all.rank()));
    report
}

/// `θ₂(b ⊕ g ⊕ c) = (b+g) ⊕ (b+g−c) ⊕ (g−c)` onto `g ⊕ g ⊕ g`.
pub fn theta2(t: &DoubleBosonisation) -> Result<LinearMap> {
    theta(t, &[&[1, 1, 0], &[1, 1, -1], &[0, 1, -1]])
}

/// `θ₁(b ⊕ g ⊕ c) = (b+g) ⊕ (b+g−c) ⊕ (−g+c)` onto `g ⊕ g ⊕ g^op`.
pub fn theta1(t: &DoubleBosonisation) -> Result<LinearMap> {
    theta(t, &[&[1, 1, 0], &[1, 1, -1], &[0, -1, 1]])
}

fn theta(t: &DoubleBosonisation, pattern: &[&[i64]]) -> Result<LinearMap> {
    require_self_paired(t)?;
    let q = t.ambient();
    let abc = abc_blocks(q)?;
    LinearMap::new(t.blocks.total().clone(), abc.total().clone(), block_identity_matrix(q.dim(), pattern))
}

/// `g ⊕ g ⊕ g`, or `g ⊕ g ⊕ g^op`, on blocks `A, B, C`.
pub fn triple_sum(q: &QuasitriangularBialgebra, op_third: bool) -> Result<LieAlgebra> {
    let abc = abc_blocks(q)?;
    let third = if op_third { q.alg().opposite() } else { q.alg().clone() };
    LieAlgebra::direct_sum(&[q.alg(), q.alg(), &third], abc.total().clone())
}

/// `θ₂` and `θ₁` as Lie algebra isomorphisms.
pub fn check_thetas(t: &DoubleBosonisation) -> Result<VerificationReport> {
    let q = t.ambient();
    let mut report = VerificationReport::new("θ maps");
    let mut r2 = check_isomorphism(&theta2(t)?, t.alg(), &triple_sum(q, false)?);
    r2.name = "θ₂".into();
    report.merge(r2);
    let mut r1 = check_isomorphism(&theta1(t)?, t.alg(), &triple_sum(q, true)?);
    r1.name = "θ₁".into();
    report.merge(r1);
    Ok(report)
}

/// Rank of the self-paired `T(g)`: the preimage under `θ₂` of the three
/// copies of a Cartan subalgebra of `g` is checked to be abelian and
/// self-centralising, and its dimension is returned. An abelian triple,
/// which needs no chart, has rank equal to its dimension.
pub fn rank_of_triple(t: &DoubleBosonisation) -> Result<usize> {
    if t.chart != Chart::SelfPaired && t.alg().is_abelian() {
        return Ok(t.dim());
    }
    let q = t.ambient();
    let n = q.dim();
    let h = cartan_subalgebra(q.alg());
    let inv = theta2(t)?.inverse()?;
    let mut cartan: Vec<Vec<Scalar>> = Vec::new();
    for block in 0..3 {
        for v in &h {
            let mut w = vec![Scalar::zero(); 3 * n];
            w[block * n..(block + 1) * n].clone_from_slice(v);
            cartan.push(inv.matrix().apply(&w)?);
        }
    }
    let alg = t.alg();
    let mut report = VerificationReport::new("rank of T(g)");
    report.check("abelian");
    for (i, u) in cartan.iter().enumerate() {
        for (j, v) in cartan.iter().enumerate().skip(i + 1) {
            if alg.bracket_coeffs(u, v).iter().any(|x| !x.is_zero()) {
                report.violation("abelian", &[i, j], "Cartan candidates do not commute");
            }
        }
    }
    // centraliser: null space of the stacked ad matrices
    let big = t.dim();
    let mut stacked = Matrix::zeros(big * cartan.len(), big);
    for (i, u) in cartan.iter().enumerate() {
        place(&mut stacked, &alg.ad_matrix(u), i * big, 0);
    }
    let centraliser = big - stacked.rank();
    report.expect(
        "self-centralising",
        centraliser == cartan.len(),
        format!("centraliser of dimension {centraliser} for {} candidates", cartan.len()),
    );
    report.into_result()?;
    Ok(cartan.len())
}

/// `r_AA − τ(r_BB) + r_CC` on `g ⊕ g ⊕ g`.
fn r_plus_sum(q: &QuasitriangularBialgebra) -> Result<QuasitriangularBialgebra> {
    let n = q.dim();
    let s = abc_blocks(q)?.total().clone();
    let mut r = Tensor2::zeros(s.clone(), s);
    for (i, j, v) in q.r().nonzero() {
        r.set(i, j, v.clone());
        r.set(n + j, n + i, -v);
        r.set(2 * n + i, 2 * n + j, v.clone());
    }
    QuasitriangularBialgebra::new(triple_sum(q, false)?, r)
}

/// `Σ_{XY} r_XY − τ(r_XY)` over the listed block pairs of `g ⊕ g ⊕ g`.
fn chi_blocks(q: &QuasitriangularBialgebra, pairs: &[(usize, usize)]) -> Result<Tensor2> {
    let n = q.dim();
    let s = abc_blocks(q)?.total().clone();
    let mut chi = Tensor2::zeros(s.clone(), s);
    for &(x, y) in pairs {
        for (i, j, v) in q.r().nonzero() {
            chi.add_at(x * n + i, y * n + j, v);
            chi.add_at(y * n + j, x * n + i, &-v);
        }
    }
    Ok(chi)
}

const AB: (usize, usize) = (0, 1);
const BC: (usize, usize) = (1, 2);
const AC: (usize, usize) = (0, 2);

/// `(θ₂⊗θ₂)(r_T) = r_AA − τ(r_BB) + r_CC + χ` with
/// `χ = Σ_{XY ∈ {AB, BC, AC}} r_XY − τ(r_XY)`, together with `χ + χ₂₁ = 0`,
/// the substitution `Σ f^a⊗e_a = 2r₊`, and both twist preconditions.
pub fn twist_identity(t: &DoubleBosonisation) -> Result<VerificationReport> {
    let q = t.ambient();
    let theta = theta2(t)?;
    let pushed = theta.apply2(t.result.r())?;
    let base = r_plus_sum(q)?;
    let chi = chi_blocks(q, &[AB, BC, AC])?;
    let mut report = VerificationReport::new("twist identity");
    report.check("(θ₂⊗θ₂)r_T = r_⊕ + χ");
    for (i, j, v) in pushed.sub(&base.r().add(&chi)?)?.nonzero() {
        report.violation("(θ₂⊗θ₂)r_T = r_⊕ + χ", &[i, j], format!("difference {v}"));
    }
    report.check("χ + χ₂₁ = 0");
    for (i, j, v) in chi.add(&chi.flip())?.nonzero() {
        report.violation("χ + χ₂₁ = 0", &[i, j], format!("coefficient {v}"));
    }
    let sym = q.r_symmetric().to_matrix();
    let pairing_tensor = t.pair.form().inverse()?;
    report.expect("Σ f^a⊗e_a = 2r₊", pairing_tensor == sym, "inverse pairing differs from r + τ(r)");
    report.merge(twist_preconditions(&base, &TwistCocycle::new(chi))?);
    Ok(report)
}

/// `T(g) ≅ D(g) ▶◀ g`: `g ▶◀ g ⊕ g` is twisted by `χ_AC + χ_BC`, then
/// compared with `T(g)` through `θ₂`, and through `(M⁻¹ ⊕ id)∘θ₂` with
/// the twisted `D(g) ⊕ g`, where `M: D(g) → g ▶◀ g`.
pub fn triple_as_double_cotwist(q: &QuasitriangularBialgebra) -> Result<VerificationReport> {
    let t = triple(q)?;
    require_self_paired(&t)?;
    let n = q.dim();
    let abc = abc_blocks(q)?;
    let s = abc.total().clone();
    let tw = double_as_twist(q)?;
    let mut r1 = Tensor2::zeros(s.clone(), s.clone());
    for (i, j, v) in tw.result.r().nonzero() {
        r1.set(i, j, v.clone());
    }
    for (i, j, v) in q.r().nonzero() {
        r1.set(2 * n + i, 2 * n + j, v.clone());
    }
    let stage1 = QuasitriangularBialgebra::new(triple_sum(q, false)?, r1)?;
    let chi2 = TwistCocycle::new(chi_blocks(q, &[AC, BC])?);
    let mut report = VerificationReport::new("T(g) ≅ D(g)▶◀g");
    let mut pre = twist_preconditions(&stage1, &chi2)?;
    pre.name = "χ_AC + χ_BC".into();
    report.merge(pre);
    let stage2 = twist(&stage1, &chi2)?;
    let theta = theta2(&t)?;
    let mut via_theta = check_quasitriangular_iso(&theta, &t.result, &stage2);
    via_theta.name = "θ₂ onto (g▶◀g)▶◀g".into();
    report.merge(via_theta);

    let d = drinfeld_double_from_q(q)?;
    let dsum = catalog::direct_sum(&d, q)?;
    let mut phi = Matrix::zeros(3 * n, 3 * n);
    place(&mut phi, double_to_twist_map(q)?.matrix(), 0, 0);
    place(&mut phi, &Matrix::identity(n), 2 * n, 2 * n);
    let phi = LinearMap::new(dsum.space().clone(), s, phi)?;
    let mut stage1_iso = check_bialgebra_isomorphism(&phi, dsum.bialgebra(), stage1.bialgebra());
    stage1_iso.name = "M ⊕ id onto (g▶◀g)⊕g".into();
    report.merge(stage1_iso);
    let phi_inv = phi.inverse()?;
    let chi_d = TwistCocycle::new(phi_inv.apply2(&chi2.chi)?);
    let dtw = twist(&dsum, &chi_d)?;
    let mut via_d = check_quasitriangular_iso(&phi_inv.compose(&theta)?, &t.result, &dtw);
    via_d.name = "(M⁻¹ ⊕ id)∘θ₂ onto D(g)▶◀g".into();
    report.merge(via_d);
    Ok(report)
}

/// `T_K → T_dual`, the identity on `b` and `g` and `c ↦ K·c`, from the
/// self-paired chart to the dual-basis chart.
pub fn chart_change(q: &QuasitriangularBialgebra) -> Result<LinearMap> {
    let tk = triple(q)?;
    require_self_paired(&tk)?;
    let td = triple_dual(q)?;
    chart_change_between(&tk, &td)
}

pub(crate) fn chart_change_between(tk: &DoubleBosonisation, td: &DoubleBosonisation) -> Result<LinearMap> {
    let n = tk.ambient().dim();
    let mut m = Matrix::zeros(3 * n, 3 * n);
    place(&mut m, &Matrix::identity(2 * n), 0, 0);
    place(&mut m, &tk.pair.form(), 2 * n, 2 * n);
    LinearMap::new(tk.blocks.total().clone(), td.blocks.total().clone(), m)
}

/// The four routes to `T(g)` for factorisable `g`: the direct assembly,
/// the matched-pair reassembly, `g̲ ⋈ D(g)` and the twist of `g ⊕ g ⊕ g`,
/// compared pairwise as bialgebras after the explicit maps.
pub fn path_independence(q: &QuasitriangularBialgebra) -> Result<VerificationReport> {
    let t = triple(q)?;
    require_self_paired(&t)?;
    let td = triple_dual(q)?;
    let k_to_dual = chart_change_between(&t, &td)?;

    let matched = matched_pair_bialgebra(&t)?;
    let (dcross, phi) = dcross_double(&td)?;
    let to_dcross = phi.inverse()?.compose(&k_to_dual)?;
    let twisted = twist(&r_plus_sum(q)?, &TwistCocycle::new(chi_blocks(q, &[AB, BC, AC])?))?;

    let routes: Vec<(&str, &crate::liealg::LieBialgebra, LinearMap)> = vec![
        ("direct", t.result.bialgebra(), LinearMap::identity(t.blocks.total().clone())),
        ("matched pair", &matched, LinearMap::identity(t.blocks.total().clone())),
        ("g̲⋈D(g)", &dcross, to_dcross),
        ("twist of g⊕g⊕g", twisted.bialgebra(), theta2(&t)?),
    ];
    let mut report = VerificationReport::new("path independence");
    for i in 0..routes.len() {
        for j in i + 1..routes.len() {
            let m = routes[j].2.compose(&routes[i].2.inverse()?)?;
            let mut sub = check_bialgebra_isomorphism(&m, routes[i].1, routes[j].1);
            sub.name = format!("{} → {}", routes[i].0, routes[j].0);
            report.merge(sub);
        }
    }
    let mut r = check_quasitriangular_iso(&routes[3].2, &t.result, &twisted);
    r.name = "direct → twist, r carried".into();
    report.merge(r);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::liealg::lie_rank;
    use crate::tensor::Vector;

    #[test]
    fn ideals_of_sl2() {
        let t = triple(&catalog::sl2()).unwrap();
        let id = ideals(&t).unwrap();
        let r = check_ideals(&t, &id);
        assert!(r.is_ok(), "{r}");
    }

    #[test]
    fn i_minus_bracket_formula() {
        // [x⊕−x⊕0, y⊕−y⊕0] = −[x,y] ⊕ [x,y] ⊕ 0
        let q = catalog::sl2();
        let t = triple(&q).unwrap();
        let id = ideals(&t).unwrap();
        let s = q.space().clone();
        for x in 0..3 {
            for y in 0..3 {
                let u = id.minus.apply(&Vector::basis(s.clone(), x)).unwrap();
                let v = id.minus.apply(&Vector::basis(s.clone(), y)).unwrap();
                let lhs = t.alg().bracket(&u, &v).unwrap();
                let xy = q.alg().bracket(&Vector::basis(s.clone(), x), &Vector::basis(s.clone(), y)).unwrap();
                let mut expect = vec![Scalar::zero(); 9];
                for k in 0..3 {
                    expect[k] = -xy.get(k);
                    expect[3 + k] = xy.get(k).clone();
                }
                assert_eq!(lhs.coeffs(), &expect[..]);
            }
        }
    }

    #[test]
    fn theta_decomposition_formula() {
        // b⊕g⊕c = (0⊕(b+g)⊕(b+g)) + ((b+g−c)⊕(−b−g+c)⊕(−b−g+c)) + ((−g+c)⊕(g−c)⊕0)
        let vals = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, -1, 3)];
        for (b, g, c) in vals {
            let parts = [
                (0, b + g, b + g),
                (b + g - c, -b - g + c, -b - g + c),
                (-g + c, g - c, 0),
            ];
            let sum = parts.iter().fold((0, 0, 0), |acc, p| (acc.0 + p.0, acc.1 + p.1, acc.2 + p.2));
            assert_eq!(sum, (b, g, c));
        }
        let t = triple(&catalog::sl2()).unwrap();
        let th = theta2(&t).unwrap();
        // 0⊕x⊕0 ↦ x⊕x⊕x
        let mut v = vec![Scalar::zero(); 9];
        v[4] = Scalar::one();
        let out = th.matrix().apply(&v).unwrap();
        assert!(out[1].is_one() && out[4].is_one() && out[7].is_one());
    }

    #[test]
    fn thetas_rank_and_twist_on_sl2() {
        let q = catalog::sl2();
        let t = triple(&q).unwrap();
        let r = check_thetas(&t).unwrap();
        assert!(r.is_ok(), "{r}");
        assert_eq!(rank_of_triple(&t).unwrap(), 3);
        assert_eq!(lie_rank(t.alg()), 3);
        let r = twist_identity(&t).unwrap();
        assert!(r.is_ok(), "{r}");
    }

    #[test]
    fn non_factorisable_is_refused() {
        let t = triple(&catalog::axb()).unwrap();
        assert!(matches!(ideals(&t), Err(Error::NotFactorisable)));
        assert!(matches!(theta2(&t), Err(Error::NotFactorisable)));
        assert!(matches!(twist_identity(&t), Err(Error::NotFactorisable)));
    }

    #[test]
    fn cotwist_chart_change_and_paths_on_sl2() {
        let q = catalog::sl2();
        let r = triple_as_double_cotwist(&q).unwrap();
        assert!(r.is_ok(), "{r}");
        let m = chart_change(&q).unwrap();
        let r = check_quasitriangular_iso(&m, &triple(&q).unwrap().result, &triple_dual(&q).unwrap().result);
        assert!(r.is_ok(), "{r}");
        let r = path_independence(&q).unwrap();
        assert!(r.is_ok(), "{r}");
    }
}
