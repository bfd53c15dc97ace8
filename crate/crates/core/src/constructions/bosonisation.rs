use crate::braided::{dual_pair, self_pairing_factorisable, self_pairing_with_form, transmute, BraidedLieBialgebra, PairedBraidedPair};
use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, LieBialgebra, LieCobracket};
use crate::linalg::Matrix;
use crate::report::VerificationReport;
use crate::rmatrix::{Classification, QuasitriangularBialgebra};
use crate::scalar::Scalar;
use crate::tensor::{same_space, Tensor2, Vector};

use super::{closure_report, restrict, BlockSpace};

/// How the `c` block is coordinatised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// `c = b` with an invariant form as pairing; in the factorisable case
    /// all three blocks share the coordinates of `g`.
    SelfPaired,
    /// `c = b*` with the dual-basis pairing.
    DualBasis,
}

/// A double-bosonisation on `b ⊕ g ⊕ c` together with its inputs.
#[derive(Clone, Debug)]
pub struct DoubleBosonisation {
    pub result: QuasitriangularBialgebra,
    pub blocks: BlockSpace,
    pub pair: PairedBraidedPair,
    pub chart: Chart,
}

impl DoubleBosonisation {
    pub fn ambient(&self) -> &QuasitriangularBialgebra {
        self.pair.b.ambient()
    }

    pub fn dim(&self) -> usize {
        self.blocks.dim()
    }

    pub fn b_range(&self) -> std::ops::Range<usize> {
        self.blocks.range(0)
    }

    pub fn g_range(&self) -> std::ops::Range<usize> {
        self.blocks.range(1)
    }

    pub fn c_range(&self) -> std::ops::Range<usize> {
        self.blocks.range(2)
    }

    pub fn alg(&self) -> &LieAlgebra {
        self.result.alg()
    }

    /// The full quasitriangular suite, the displayed cobracket formulas and
    /// the sub-structure statements: `g` a sub-bialgebra, `b` and `c^op`
    /// subalgebras.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new("double-bosonisation");
        report.merge(self.result.verify());
        report.merge(self.verify_displayed_cobrackets());
        let mut g = closure_report(self.result.bialgebra(), &self.g_range().collect::<Vec<_>>());
        g.name = "g sub-bialgebra".into();
        report.merge(g);
        for (name, range) in [("b subalgebra", self.b_range()), ("c^op subalgebra", self.c_range())] {
            let idx: Vec<usize> = range.collect();
            let mut sub = VerificationReport::new(name);
            sub.check("bracket closes");
            for &i in &idx {
                for &j in &idx {
                    for (k, v) in self.alg().bracket_terms(i, j) {
                        if !idx.contains(k) {
                            sub.violation("bracket closes", &[i, j, *k], format!("coefficient {v} outside"));
                        }
                    }
                }
            }
            report.merge(sub);
        }
        report
    }

    /// `δx = δ̲x + r⁽²⁾⊗r⁽¹⁾▷x − r⁽¹⁾▷x⊗r⁽²⁾` on `b`, the dual formula on
    /// `c`, and `δξ = δ_g ξ` on `g`, against the coboundary of `r_new`.
    pub fn verify_displayed_cobrackets(&self) -> VerificationReport {
        let mut report = VerificationReport::new("displayed cobrackets");
        report.check("cobracket formulas");
        let shown = displayed_cobracket(self);
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y) = (self.result.cob().constant(i, j, k), shown.constant(i, j, k));
                    if x != y {
                        report.violation("cobracket formulas", &[i, j, k], format!("{x} vs {y}"));
                    }
                }
            }
        }
        report
    }
}

/// The cobracket of a double-bosonisation written out block by block from
/// the displayed formulas rather than from `r_new`.
pub(crate) fn displayed_cobracket(t: &DoubleBosonisation) -> LieCobracket {
    let big = t.dim();
    let (ob, og, oc) = (t.b_range().start, t.g_range().start, t.c_range().start);
    let q = t.ambient();
    let r = q.r();
    let (b, c) = (&t.pair.b, &t.pair.c);
    let mut d = vec![Scalar::zero(); big * big * big];
    let idx = |i: usize, j: usize, k: usize| (i * big + j) * big + k;
    for x in 0..b.dim() {
        for (k, l, v) in b.cob().terms(x) {
            d[idx(ob + x, ob + k, ob + l)] += v;
        }
        for (i, j, rv) in r.nonzero() {
            for (k, av) in b.action().terms(i, x) {
                let w = rv * av;
                d[idx(ob + x, og + j, ob + k)] += &w;
                d[idx(ob + x, ob + k, og + j)] -= &w;
            }
        }
    }
    for xi in 0..q.dim() {
        for (k, l, v) in q.cob().terms(xi) {
            d[idx(og + xi, og + k, og + l)] += v;
        }
    }
    for a in 0..c.dim() {
        for (k, l, v) in c.cob().terms(a) {
            d[idx(oc + a, oc + k, oc + l)] += v;
        }
        for (i, j, rv) in r.nonzero() {
            for (k, av) in c.action().terms(j, a) {
                let w = rv * av;
                d[idx(oc + a, oc + k, og + i)] += &w;
                d[idx(oc + a, og + i, oc + k)] -= &w;
            }
        }
    }
    LieCobracket::from_raw(t.blocks.total().clone(), d).expect("cube shape")
}

/// Assembles the double-bosonisation of a dually paired pair and verifies
/// it. Brackets: `b` and `g` keep theirs, `c` carries the opposite bracket,
/// `g` acts on both, and
/// `[x, φ] = x₍₁̲₎⟨x₍₂̲₎, φ⟩ + φ₍₁̲₎⟨x, φ₍₂̲₎⟩ + 2r₊⁽¹⁾⟨r₊⁽²⁾▷x, φ⟩`.
/// The r-matrix is `r + Σ f^a ⊗ e_a` with `f^a ∈ c`, `e_a ∈ b` dual bases.
pub fn double_bosonisation(pair: &PairedBraidedPair) -> Result<DoubleBosonisation> {
    let chart = if pair.c == pair.b { Chart::SelfPaired } else { Chart::DualBasis };
    let db = assemble(pair, chart)?;
    let report = db.verify();
    if report.is_ok() {
        Ok(db)
    } else {
        Err(Error::Verification(report))
    }
}

fn assemble(pair: &PairedBraidedPair, chart: Chart) -> Result<DoubleBosonisation> {
    let (b, c) = (&pair.b, &pair.c);
    let q = b.ambient();
    let g = q.alg();
    let (m, n) = (b.dim(), g.dim());
    if c.dim() != m {
        return Err(Error::Shape(format!("paired carriers of dimensions {m} and {}", c.dim())));
    }
    let blocks = BlockSpace::new(vec![
        ("b".into(), b.space().clone()),
        ("g".into(), g.space().clone()),
        ("c".into(), c.space().clone()),
    ])?;
    let big = blocks.dim();
    let (ob, og, oc) = (0, m, m + n);
    let p = pair.form();
    let sym = q.r_symmetric();
    let mut t = vec![Scalar::zero(); big * big * big];
    let idx = |i: usize, j: usize, k: usize| (i * big + j) * big + k;
    let add = |t: &mut Vec<Scalar>, i: usize, j: usize, k: usize, v: &Scalar| {
        t[idx(i, j, k)] += v;
        t[idx(j, i, k)] -= v;
    };
    for i in 0..m {
        for j in 0..m {
            for (k, v) in b.alg().bracket_terms(i, j) {
                t[idx(ob + i, ob + j, ob + k)] += v;
            }
            for (k, v) in c.alg().bracket_terms(i, j) {
                t[idx(oc + i, oc + j, oc + k)] -= v;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for (k, v) in g.bracket_terms(i, j) {
                t[idx(og + i, og + j, og + k)] += v;
            }
        }
    }
    for i in 0..n {
        for j in 0..m {
            for (k, v) in b.action().terms(i, j) {
                add(&mut t, og + i, ob + j, ob + k, v);
            }
            for (k, v) in c.action().terms(i, j) {
                add(&mut t, og + i, oc + j, oc + k, v);
            }
        }
    }
    for j in 0..m {
        for a in 0..m {
            // x₍₁̲₎⟨x₍₂̲₎, φ⟩
            for (k, l, v) in b.cob().terms(j) {
                let w = v * &p[(*l, a)];
                if !w.is_zero() {
                    add(&mut t, ob + j, oc + a, ob + k, &w);
                }
            }
            // φ₍₁̲₎⟨x, φ₍₂̲₎⟩
            for (bb, cc, v) in c.cob().terms(a) {
                let w = v * &p[(j, *cc)];
                if !w.is_zero() {
                    add(&mut t, ob + j, oc + a, oc + bb, &w);
                }
            }
            // 2r₊⁽¹⁾⟨r₊⁽²⁾▷x, φ⟩
            for (i, jj, qv) in sym.nonzero() {
                for (l, av) in b.action().terms(jj, j) {
                    let w = &(qv * av) * &p[(*l, a)];
                    if !w.is_zero() {
                        add(&mut t, ob + j, oc + a, og + i, &w);
                    }
                }
            }
        }
    }
    let alg = LieAlgebra::from_raw(blocks.total().clone(), t)?;
    let mut r = Tensor2::zeros(blocks.total().clone(), blocks.total().clone());
    for (i, j, v) in q.r().nonzero() {
        r.set(og + i, og + j, v.clone());
    }
    let p_inv = p.inverse()?;
    for a in 0..m {
        for i in 0..m {
            let v = &p_inv[(a, i)];
            if !v.is_zero() {
                r.set(oc + a, ob + i, v.clone());
            }
        }
    }
    let result = QuasitriangularBialgebra::from_raw(alg, r)?;
    Ok(DoubleBosonisation { result, blocks, pair: pair.clone(), chart })
}

/// `b ⋊ g`: the `b ⊕ g` part of the double-bosonisation with `c = b*`,
/// checked to be a sub-bialgebra.
pub fn single_bosonisation(b: &BraidedLieBialgebra) -> Result<LieBialgebra> {
    let pair = dual_pair(b)?;
    let db = double_bosonisation(&pair)?;
    let idx: Vec<usize> = db.b_range().chain(db.g_range()).collect();
    let space = BlockSpace::new(vec![("b".into(), b.space().clone()), ("g".into(), b.ambient().space().clone())])?;
    restrict(db.result.bialgebra(), &idx, space.total().clone())
}

/// `T(g)`. Factorisable inputs whose `2r₊` inverts the Killing form use the
/// self-paired chart; every other input uses `c = g̲*` with the dual-basis
/// pairing.
pub fn triple(q: &QuasitriangularBialgebra) -> Result<DoubleBosonisation> {
    let b = transmute(q)?;
    if q.classify() == Classification::Factorisable {
        match self_pairing_factorisable(q, &b) {
            Ok(pair) => return double_bosonisation(&pair),
            Err(Error::Normalization(_)) => {}
            Err(e) => return Err(e),
        }
    }
    double_bosonisation(&dual_pair(&b)?)
}

/// `T(g)` in the dual-basis chart, available for every input.
pub fn triple_dual(q: &QuasitriangularBialgebra) -> Result<DoubleBosonisation> {
    let b = transmute(q)?;
    double_bosonisation(&dual_pair(&b)?)
}

/// `T(g)` self-paired by an explicit invariant form inverting `2r₊`.
pub fn triple_with_form(q: &QuasitriangularBialgebra, form: Matrix) -> Result<DoubleBosonisation> {
    let b = transmute(q)?;
    double_bosonisation(&self_pairing_with_form(q, &b, form)?)
}

/// An element `b ⊕ g ⊕ c` of the self-paired triple, each part in the
/// coordinates of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTriple {
    pub b: Vector,
    pub g: Vector,
    pub c: Vector,
}

impl BlockTriple {
    pub fn new(b: Vector, g: Vector, c: Vector) -> Self {
        BlockTriple { b, g, c }
    }

    /// Splits a vector of the self-paired triple.
    pub fn from_total(t: &DoubleBosonisation, v: &[Scalar]) -> Result<Self> {
        let space = t.ambient().space().clone();
        Ok(BlockTriple {
            b: Vector::new(space.clone(), t.blocks.project(0, v))?,
            g: Vector::new(space.clone(), t.blocks.project(1, v))?,
            c: Vector::new(space, t.blocks.project(2, v))?,
        })
    }

    pub fn to_total(&self) -> Vec<Scalar> {
        self.b.coeffs().iter().chain(self.g.coeffs()).chain(self.c.coeffs()).cloned().collect()
    }
}

/// The closed form of the triple bracket for factorisable `g`, every
/// bracket taken in `g`:
/// `b = [b₁,b₂] + [b₁,g₂] − [b₁,c₂] + [g₁,b₂] − [c₁,b₂]`,
/// `g = [b₁,c₂] + [g₁,g₂] + [c₁,b₂]`,
/// `c = [c₁,b₂] + [c₁,g₂] − [c₁,c₂] + [g₁,c₂] + [b₁,c₂]`.
pub fn triple_explicit_bracket(q: &QuasitriangularBialgebra, x1: &BlockTriple, x2: &BlockTriple) -> Result<BlockTriple> {
    if q.classify() != Classification::Factorisable {
        return Err(Error::NotFactorisable);
    }
    for v in [&x1.b, &x1.g, &x1.c, &x2.b, &x2.g, &x2.c] {
        same_space(q.space(), v.space())?;
    }
    let g = q.alg();
    let br = |x: &Vector, y: &Vector| g.bracket(x, y).expect("spaces checked");
    let sum = |terms: &[(i64, Vector)]| {
        let mut acc = Vector::zero(q.space().clone());
        for (s, v) in terms {
            acc = acc.add(&v.scale(&Scalar::from_int(*s))).expect("same space");
        }
        acc
    };
    let (b1, g1, c1) = (&x1.b, &x1.g, &x1.c);
    let (b2, g2, c2) = (&x2.b, &x2.g, &x2.c);
    let b = sum(&[(1, br(b1, b2)), (1, br(b1, g2)), (-1, br(b1, c2)), (1, br(g1, b2)), (-1, br(c1, b2))]);
    let gg = sum(&[(1, br(b1, c2)), (1, br(g1, g2)), (1, br(c1, b2))]);
    let c = sum(&[(1, br(c1, b2)), (1, br(c1, g2)), (-1, br(c1, c2)), (1, br(g1, c2)), (1, br(b1, c2))]);
    Ok(BlockTriple { b, g: gg, c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braided::{dual_braided, zero_carrier};
    use crate::catalog;

    #[test]
    fn zero_carriers_give_g() {
        let q = catalog::sl2();
        let z = zero_carrier(&q);
        let pair = PairedBraidedPair::new(z.clone(), z, Matrix::zeros(0, 0)).unwrap();
        let db = double_bosonisation(&pair).unwrap();
        assert_eq!(db.dim(), 3);
        assert_eq!(db.result.alg().constants(), q.alg().constants());
        assert_eq!(db.result.r().coeffs(), q.r().coeffs());
        assert_eq!(single_bosonisation(&zero_carrier(&q)).unwrap().alg().constants(), q.alg().constants());
    }

    #[test]
    fn triple_sl2() {
        let t = triple(&catalog::sl2()).unwrap();
        assert_eq!(t.dim(), 9);
        assert_eq!(t.chart, Chart::SelfPaired);
        assert!(t.verify().is_ok());
        assert_eq!(t.result.classify(), Classification::Factorisable);
    }

    #[test]
    fn triple_axb_and_abelian() {
        let t = triple(&catalog::axb()).unwrap();
        assert_eq!(t.dim(), 6);
        assert_eq!(t.chart, Chart::DualBasis);
        let a = triple(&catalog::abelian()).unwrap();
        assert_eq!(a.dim(), 6);
        assert!(a.alg().is_abelian());
        // r is the pairing tensor Σ f^a ⊗ e_a
        let n = 2;
        for (i, j, v) in a.result.r().nonzero() {
            assert!(i >= 2 * n && j < n && i - 2 * n == j && v.is_one());
        }
        assert_eq!(a.result.r().nonzero().count(), 2);
    }

    #[test]
    fn explicit_bracket_matches_assembly_on_sl2() {
        let q = catalog::sl2();
        let t = triple(&q).unwrap();
        let n = t.dim();
        for i in 0..n {
            for j in 0..n {
                let mut ei = vec![Scalar::zero(); n];
                ei[i] = Scalar::one();
                let mut ej = vec![Scalar::zero(); n];
                ej[j] = Scalar::one();
                let x1 = BlockTriple::from_total(&t, &ei).unwrap();
                let x2 = BlockTriple::from_total(&t, &ej).unwrap();
                let closed = triple_explicit_bracket(&q, &x1, &x2).unwrap().to_total();
                let raw: Vec<Scalar> = (0..n).map(|k| t.alg().constant(i, j, k).clone()).collect();
                assert_eq!(closed, raw, "({i},{j})");
            }
        }
    }

    #[test]
    fn explicit_bracket_trivial_cases() {
        let q = catalog::sl2();
        let s = q.space().clone();
        let x = BlockTriple::new(
            Vector::basis(s.clone(), 0),
            Vector::basis(s.clone(), 1),
            Vector::basis(s.clone(), 2),
        );
        let z = triple_explicit_bracket(&q, &x, &x).unwrap();
        assert!(z.b.is_zero() && z.g.is_zero() && z.c.is_zero());
        let zero = Vector::zero(s.clone());
        let g1 = BlockTriple::new(zero.clone(), Vector::basis(s.clone(), 0), zero.clone());
        let g2 = BlockTriple::new(zero.clone(), Vector::basis(s.clone(), 2), zero.clone());
        let out = triple_explicit_bracket(&q, &g1, &g2).unwrap();
        assert!(out.b.is_zero() && out.c.is_zero());
        assert_eq!(out.g, Vector::basis(s, 1));
        assert!(matches!(triple_explicit_bracket(&catalog::axb(), &g1, &g2), Err(Error::NotFactorisable)));
    }

    #[test]
    fn single_bosonisation_of_transmuted_sl2_closes() {
        let b = transmute(&catalog::sl2()).unwrap();
        let s = single_bosonisation(&b).unwrap();
        assert_eq!(s.dim(), 6);
        assert!(s.verify().is_ok());
        let d = single_bosonisation(&dual_braided(&b)).unwrap();
        assert!(d.verify().is_ok());
    }

    #[test]
    fn dual_chart_triple_is_valid_for_all_fixtures() {
        for name in catalog::NAMES {
            let t = triple_dual(&catalog::by_name(name).unwrap()).unwrap();
            assert!(t.verify().is_ok(), "{name}");
        }
    }
}
