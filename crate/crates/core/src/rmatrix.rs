//! Quasitriangular Lie bialgebras: the classical Yang–Baxter equation,
//! symmetric part, classification, coboundary cobrackets, the opposite
//! structure and cocycle twisting.

use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, LieBialgebra, LieCobracket};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::tensor::{ad_extend_coeffs, same_space, schouten, SpaceRef, Tensor2, Tensor3, Vector};

/// `[[r, r]]`; the zero tensor exactly when the CYBE holds.
pub fn cybe(r: &Tensor2, alg: &LieAlgebra) -> Result<Tensor3> {
    schouten(r, r, alg)
}

/// `q = r + r₂₁`.
pub fn symmetric_part(r: &Tensor2) -> Tensor2 {
    r.add(&r.flip()).expect("flip of a square tensor has the same spaces")
}

/// `δ e_i = ad_{e_i}(r)`.
pub fn coboundary(alg: &LieAlgebra, r: &Tensor2) -> Result<LieCobracket> {
    same_space(alg.space(), r.left())?;
    same_space(alg.space(), r.right())?;
    let n = alg.dim();
    let mut d = Vec::with_capacity(n * n * n);
    for i in 0..n {
        let mut e = vec![Scalar::zero(); n];
        e[i] = Scalar::one();
        d.extend(ad_extend_coeffs(alg, &e, r).coeffs().iter().cloned());
    }
    LieCobracket::from_raw(alg.space().clone(), d)
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut e = vec![Scalar::zero(); n];
    e[i] = Scalar::one();
    e
}

/// Reports every basis `ξ` and entry where `ad_ξ(t) ≠ 0`.
fn invariance_violations(alg: &LieAlgebra, t: &Tensor2, check: &str, report: &mut VerificationReport) {
    report.check(check);
    let n = alg.dim();
    for x in 0..n {
        let ad = ad_extend_coeffs(alg, &unit(n, x), t);
        for (a, b, v) in ad.nonzero() {
            report.violation(check, &[x, a, b], format!("ad_ξ has coefficient {v}"));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Triangular,
    Factorisable,
    Neither,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Triangular => "triangular",
            Classification::Factorisable => "factorisable",
            Classification::Neither => "neither",
        })
    }
}

/// A Lie algebra with an r-matrix; the cobracket is always the coboundary
/// of `r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuasitriangularBialgebra {
    bialg: LieBialgebra,
    r: Tensor2,
}

impl QuasitriangularBialgebra {
    /// Derives the cobracket from `r` without checking any axiom.
    pub fn from_raw(alg: LieAlgebra, r: Tensor2) -> Result<Self> {
        let cob = coboundary(&alg, &r)?;
        Ok(QuasitriangularBialgebra { bialg: LieBialgebra::from_raw(alg, cob)?, r })
    }

    /// Validating constructor: Lie algebra, coalgebra, cocycle, CYBE and
    /// invariance of `2r₊` must all hold exactly.
    pub fn new(alg: LieAlgebra, r: Tensor2) -> Result<Self> {
        let q = QuasitriangularBialgebra::from_raw(alg, r)?;
        let report = q.verify();
        if report.is_ok() {
            Ok(q)
        } else {
            Err(Error::Invalid(report))
        }
    }

    pub fn bialgebra(&self) -> &LieBialgebra {
        &self.bialg
    }

    pub fn alg(&self) -> &LieAlgebra {
        self.bialg.alg()
    }

    pub fn cob(&self) -> &LieCobracket {
        self.bialg.cob()
    }

    pub fn r(&self) -> &Tensor2 {
        &self.r
    }

    pub fn space(&self) -> &SpaceRef {
        self.bialg.space()
    }

    pub fn dim(&self) -> usize {
        self.bialg.dim()
    }

    /// `2r₊ = r + r₂₁`.
    pub fn r_symmetric(&self) -> Tensor2 {
        symmetric_part(&self.r)
    }

    pub fn cybe(&self) -> Tensor3 {
        cybe(&self.r, self.alg()).expect("r lives on the algebra's space")
    }

    pub fn verify_cybe(&self) -> VerificationReport {
        let mut report = VerificationReport::new("quasitriangular");
        report.check("cybe");
        for (a, b, c, v) in self.cybe().nonzero() {
            report.violation("cybe", &[a, b, c], format!("[[r,r]] coefficient {v}"));
        }
        report
    }

    pub fn verify_invariant_symmetric_part(&self) -> VerificationReport {
        let mut report = VerificationReport::new("quasitriangular");
        invariance_violations(self.alg(), &self.r_symmetric(), "ad-invariant 2r₊", &mut report);
        report
    }

    /// The full suite: Jacobi, co-Jacobi, 1-cocycle, CYBE, invariance of
    /// `2r₊` and agreement of the stored cobracket with the coboundary.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new("quasitriangular bialgebra");
        report.merge(self.bialg.verify());
        let mut own = self.verify_cybe();
        own.merge(self.verify_invariant_symmetric_part());
        own.name = String::new();
        report.merge(own);
        let derived = coboundary(self.alg(), &self.r).expect("spaces agree");
        report.expect("cobracket is the coboundary of r", &derived == self.cob(), "stored cobracket differs");
        report
    }

    /// Triangular iff `2r₊ = 0`; factorisable iff `2r₊ : g* → g` is onto.
    pub fn classify(&self) -> Classification {
        classify_r(&self.r)
    }

    /// Same algebra with `r` replaced by `−r₂₁`.
    pub fn opposite_structure(&self) -> Result<QuasitriangularBialgebra> {
        QuasitriangularBialgebra::new(self.alg().clone(), self.r.flip().neg())
    }

    pub fn relabel(&self, space: SpaceRef) -> Result<QuasitriangularBialgebra> {
        let alg = self.alg().relabel(space.clone())?;
        let r = Tensor2::from_matrix(space.clone(), space, &self.r.to_matrix())?;
        QuasitriangularBialgebra::from_raw(alg, r)
    }

    pub fn cobracket(&self, x: &Vector) -> Result<Tensor2> {
        self.bialg.cobracket(x)
    }
}

pub fn classify_r(r: &Tensor2) -> Classification {
    let q = symmetric_part(r);
    if q.is_zero() {
        Classification::Triangular
    } else if q.to_matrix().rank() == r.left().dim() {
        Classification::Factorisable
    } else {
        Classification::Neither
    }
}

/// A candidate twist `χ`, replacing `r` by `r + χ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwistCocycle {
    pub chi: Tensor2,
}

impl TwistCocycle {
    pub fn new(chi: Tensor2) -> Self {
        TwistCocycle { chi }
    }
}

/// `[[r,χ]] + [[χ,r]] + [[χ,χ]]`.
pub fn twist_cocycle_tensor(q: &QuasitriangularBialgebra, chi: &Tensor2) -> Result<Tensor3> {
    let alg = q.alg();
    schouten(q.r(), chi, alg)?.add(&schouten(chi, q.r(), alg)?)?.add(&schouten(chi, chi, alg)?)
}

/// Both twisting conditions: the Schouten cocycle identity and
/// `ad_ξ(χ + χ₂₁) = 0` for every basis `ξ`.
pub fn twist_preconditions(q: &QuasitriangularBialgebra, chi: &TwistCocycle) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("twist preconditions");
    report.check("[[r,χ]]+[[χ,r]]+[[χ,χ]] = 0");
    for (a, b, c, v) in twist_cocycle_tensor(q, &chi.chi)?.nonzero() {
        report.violation("[[r,χ]]+[[χ,r]]+[[χ,χ]] = 0", &[a, b, c], format!("coefficient {v}"));
    }
    invariance_violations(q.alg(), &symmetric_part(&chi.chi), "ad_ξ(χ+χ₂₁) = 0", &mut report);
    Ok(report)
}

/// `(g, r + χ)`, after checking both twist conditions. A failed condition
/// is reported with its first violating entry.
pub fn twist(q: &QuasitriangularBialgebra, chi: &TwistCocycle) -> Result<QuasitriangularBialgebra> {
    let report = twist_preconditions(q, chi)?;
    if !report.is_ok() {
        let failures: Vec<String> = report
            .checks
            .iter()
            .filter_map(|check| {
                let mut it = report.violations_of(check);
                let first = it.next()?;
                Some(format!("{check} fails at {:?}: {} ({} violations)", first.indices, first.detail, it.count() + 1))
            })
            .collect();
        return Err(Error::Precondition(failures.join("; ")));
    }
    QuasitriangularBialgebra::new(q.alg().clone(), q.r().add(&chi.chi)?)
}

/// `Y = (id⊗δ)χ + cyclic + [[χ,χ]]`.
pub fn alternative_cocycle_tensor(q: &QuasitriangularBialgebra, chi: &Tensor2) -> Result<Tensor3> {
    same_space(q.space(), chi.left())?;
    same_space(q.space(), chi.right())?;
    let s = q.space().clone();
    let mut t = Tensor3::zeros(s.clone(), s.clone(), s);
    for (a, p, v) in chi.nonzero() {
        for (b, c, w) in q.cob().terms(p) {
            t.add_at(a, *b, *c, &(v * w));
        }
    }
    t.cyclic_sum()?.add(&schouten(chi, chi, q.alg())?)
}

/// The first twisting condition in its alternative form, `Y = 0` with `Y`
/// as in [`alternative_cocycle_tensor`]. For antisymmetric `χ` this tensor
/// coincides with `[[r,χ]] + [[χ,r]] + [[χ,χ]]`, so the two tests agree.
pub fn verify_alternative_cocycle_form(q: &QuasitriangularBialgebra, chi: &TwistCocycle) -> Result<bool> {
    Ok(alternative_cocycle_tensor(q, &chi.chi)?.is_zero())
}

/// The weaker statement `ad_ξ(Y) = 0` for all `ξ`; kept as a diagnostic.
pub fn alternative_cocycle_ad_form(q: &QuasitriangularBialgebra, chi: &TwistCocycle) -> Result<bool> {
    let y = alternative_cocycle_tensor(q, &chi.chi)?;
    let s = q.space().clone();
    for x in 0..q.dim() {
        let ad = crate::tensor::ad_extend3(q.alg(), &Vector::basis(s.clone(), x), &y)?;
        if !ad.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::tensor::Space;
    use proptest::prelude::*;

    const E: usize = 0;
    const H: usize = 1;
    const F: usize = 2;

    fn textbook() -> QuasitriangularBialgebra {
        catalog::sl2_scaled(Scalar::one())
    }

    /// CYBE by brute force over all 3⁶ pairs of basis terms, written against
    /// a bracket given by a closure rather than by the Schouten routine.
    fn cybe_oracle(n: usize, br: impl Fn(usize, usize) -> Vec<Scalar>, r: &[Vec<Scalar>]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n * n * n];
        let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let c = &r[i][j] * &r[k][l];
                        if c.is_zero() {
                            continue;
                        }
                        // [r12, r13]: [e_i, e_k] ⊗ e_j ⊗ e_l
                        for (m, v) in br(i, k).iter().enumerate() {
                            out[idx(m, j, l)] += &(&c * v);
                        }
                        // [r12, r23]: e_i ⊗ [e_j, e_k] ⊗ e_l
                        for (m, v) in br(j, k).iter().enumerate() {
                            out[idx(i, m, l)] += &(&c * v);
                        }
                        // [r13, r23]: e_i ⊗ e_k ⊗ [e_j, e_l]
                        for (m, v) in br(j, l).iter().enumerate() {
                            out[idx(i, k, m)] += &(&c * v);
                        }
                    }
                }
            }
        }
        out
    }

    fn sl2_matrix_bracket(i: usize, j: usize) -> Vec<Scalar> {
        // e = [[0,1],[0,0]], h = [[1,0],[0,-1]], f = [[0,0],[1,0]]
        let m = |k: usize| -> [[i64; 2]; 2] {
            match k {
                E => [[0, 1], [0, 0]],
                H => [[1, 0], [0, -1]],
                _ => [[0, 0], [1, 0]],
            }
        };
        let (a, b) = (m(i), m(j));
        let mut c = [[0i64; 2]; 2];
        for p in 0..2 {
            for q in 0..2 {
                for k in 0..2 {
                    c[p][q] += a[p][k] * b[k][q] - b[p][k] * a[k][q];
                }
            }
        }
        vec![Scalar::from_int(c[0][1]), Scalar::from_int(c[0][0]), Scalar::from_int(c[1][0])]
    }

    #[test]
    fn cybe_examples() {
        let ab = catalog::abelian_algebra(3);
        let s = ab.space().clone();
        let r = Tensor2::from_entries(s.clone(), s, &[(0, 1, Scalar::from_int(2)), (1, 1, Scalar::i())]);
        assert!(cybe(&r, &ab).unwrap().is_zero());

        let g = catalog::sl2_algebra();
        let s = g.space().clone();
        let std = Tensor2::from_entries(s.clone(), s.clone(), &[(E, F, Scalar::one()), (H, H, Scalar::ratio(1, 4))]);
        let rows: Vec<Vec<Scalar>> = (0..3).map(|i| (0..3).map(|j| std.get(i, j).clone()).collect()).collect();
        let oracle = cybe_oracle(3, sl2_matrix_bracket, &rows);
        assert!(oracle.iter().all(Scalar::is_zero));
        assert!(cybe(&std, &g).unwrap().is_zero());

        let ef = Tensor2::basis_pair(s.clone(), s.clone(), E, F);
        let rows: Vec<Vec<Scalar>> = (0..3).map(|i| (0..3).map(|j| ef.get(i, j).clone()).collect()).collect();
        let oracle = cybe_oracle(3, sl2_matrix_bracket, &rows);
        let engine = cybe(&ef, &g).unwrap();
        assert!(!engine.is_zero());
        assert_eq!(engine.coeffs(), oracle.as_slice());
    }

    #[test]
    fn symmetric_part_examples() {
        let s = Space::numbered("x", 3);
        let anti = Tensor2::from_entries(s.clone(), s.clone(), &[(0, 1, Scalar::one()), (1, 0, Scalar::from_int(-1))]);
        assert!(symmetric_part(&anti).is_zero());
        let sym = Tensor2::from_entries(s.clone(), s.clone(), &[(0, 2, Scalar::one()), (2, 0, Scalar::one())]);
        assert_eq!(symmetric_part(&sym), sym.scale(&Scalar::from_int(2)));
        let q = textbook().r_symmetric();
        let g = catalog::sl2_algebra().space().clone();
        let expected = Tensor2::from_entries(
            g.clone(),
            g,
            &[(E, F, Scalar::one()), (F, E, Scalar::one()), (H, H, Scalar::ratio(1, 2))],
        );
        assert_eq!(q, expected);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(textbook().classify(), Classification::Factorisable);
        assert_eq!(catalog::sl2().classify(), Classification::Factorisable);
        assert_eq!(catalog::axb().classify(), Classification::Triangular);
        let sum = catalog::direct_sum(&catalog::sl2(), &catalog::axb()).unwrap();
        assert!(sum.verify().is_ok());
        assert_eq!(sum.r_symmetric().to_matrix().rank(), 3);
        assert_eq!(sum.classify(), Classification::Neither);
    }

    #[test]
    fn classify_is_stable_under_opposite() {
        for name in catalog::NAMES {
            let q = catalog::by_name(name).unwrap();
            assert_eq!(q.opposite_structure().unwrap().classify(), q.classify(), "{name}");
        }
    }

    #[test]
    fn coboundary_examples() {
        let g = catalog::sl2_algebra();
        let s = g.space().clone();
        let q = textbook().r_symmetric();
        assert!(coboundary(&g, &q).unwrap().is_zero());
        let cob = textbook().cob().clone();
        assert!(cob.cobracket_basis(H).is_zero());
        let half = Scalar::ratio(1, 2);
        let expected = Tensor2::from_entries(s.clone(), s, &[(F, H, half.clone()), (H, F, -&half)]);
        assert_eq!(cob.cobracket_basis(F), expected);
    }

    #[test]
    fn opposite_examples() {
        let t = catalog::axb();
        let op = t.opposite_structure().unwrap();
        assert_eq!(op.r(), t.r());
        for name in catalog::NAMES {
            let q = catalog::by_name(name).unwrap();
            assert_eq!(q.opposite_structure().unwrap().opposite_structure().unwrap(), q, "{name}");
        }
        let op = textbook().opposite_structure().unwrap();
        let s = op.space().clone();
        let expected = Tensor2::from_entries(s.clone(), s, &[(F, E, Scalar::from_int(-1)), (H, H, Scalar::ratio(-1, 4))]);
        assert_eq!(op.r(), &expected);
        assert!(op.cybe().is_zero());
    }

    #[test]
    fn catalog_stores_coboundary() {
        for name in catalog::NAMES {
            let q = catalog::by_name(name).unwrap();
            assert_eq!(&coboundary(q.alg(), q.r()).unwrap(), q.cob(), "{name}");
            assert!(q.verify().is_ok(), "{name}");
        }
    }

    #[test]
    fn twist_examples() {
        let q = textbook();
        let s = q.space().clone();
        let zero = TwistCocycle::new(Tensor2::zeros(s.clone(), s.clone()));
        assert_eq!(twist(&q, &zero).unwrap(), q);
        assert!(verify_alternative_cocycle_form(&q, &zero).unwrap());

        // symmetric non-invariant χ
        let bad = TwistCocycle::new(Tensor2::basis_pair(s.clone(), s.clone(), E, E));
        match twist(&q, &bad) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("ad_ξ(χ+χ₂₁)"), "{msg}"),
            other => panic!("expected precondition failure, got {other:?}"),
        }
    }

    #[test]
    fn twist_round_trip() {
        // the opposite structure is the twist by χ = −(r + r₂₁)
        for q in [textbook(), catalog::sl3()] {
            let chi = q.r_symmetric().neg();
            let t = twist(&q, &TwistCocycle::new(chi.clone())).unwrap();
            assert_eq!(t, q.opposite_structure().unwrap());
            assert_eq!(twist(&t, &TwistCocycle::new(chi.neg())).unwrap(), q);
        }
    }

    #[test]
    fn alternative_form_agrees_with_direct_test() {
        let q = textbook();
        let s = q.space().clone();
        for a in [Scalar::ratio(1, 2), Scalar::one(), Scalar::from_int(3)] {
            let chi = Tensor2::from_entries(s.clone(), s.clone(), &[(E, F, a.clone()), (F, E, -&a)]);
            let direct = twist_cocycle_tensor(&q, &chi).unwrap().is_zero();
            let alt = verify_alternative_cocycle_form(&q, &TwistCocycle::new(chi)).unwrap();
            assert_eq!(direct, alt);
            assert!(!direct);
        }
    }

    #[test]
    fn ad_form_is_weaker() {
        // sl2 with χ = e∧f: the ad-form holds but the direct condition fails
        let q = textbook();
        let s = q.space().clone();
        let chi = Tensor2::from_entries(s.clone(), s, &[(E, F, Scalar::one()), (F, E, Scalar::from_int(-1))]);
        let c = TwistCocycle::new(chi);
        assert!(alternative_cocycle_ad_form(&q, &c).unwrap());
        assert!(!verify_alternative_cocycle_form(&q, &c).unwrap());
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-3i64..4, 1i64..3).prop_map(|(a, b)| Scalar::ratio(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn alternative_and_direct_agree_on_random_antisymmetric(entries in proptest::collection::vec((0usize..6, 0usize..6, small()), 1..4)) {
            let q = catalog::direct_sum(&catalog::sl2(), &catalog::sl2().opposite_structure().unwrap()).unwrap();
            let s = q.space().clone();
            let mut chi = Tensor2::zeros(s.clone(), s);
            for (i, j, v) in &entries {
                chi.add_at(*i, *j, v);
                chi.add_at(*j, *i, &-v);
            }
            let direct = twist_cocycle_tensor(&q, &chi).unwrap().is_zero();
            let alt = verify_alternative_cocycle_form(&q, &TwistCocycle::new(chi)).unwrap();
            prop_assert_eq!(direct, alt);
        }

        #[test]
        fn twist_by_zero_is_identity(idx in 0usize..5) {
            let q = catalog::by_name(catalog::NAMES[idx]).unwrap();
            let s = q.space().clone();
            let zero = TwistCocycle::new(Tensor2::zeros(s.clone(), s));
            prop_assert_eq!(twist(&q, &zero).unwrap(), q);
        }
    }
}
