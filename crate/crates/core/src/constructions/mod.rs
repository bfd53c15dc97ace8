//! Named constructions and the verification pipelines built on them.
//!
//! Block spaces are ordered left to right; labels carry the block name as a
//! prefix (`b:e`, `g:h`, `c:f*`, …).

mod bosonisation;
mod double;
mod factorisable;
mod matched;
mod triangular;

pub use bosonisation::{
    double_bosonisation, single_bosonisation, triple, triple_dual, triple_explicit_bracket, triple_with_form,
    BlockTriple, Chart, DoubleBosonisation,
};
pub use double::{
    check_double_to_twist, double_as_twist, double_to_twist_map, drinfeld_double, drinfeld_double_from_q,
    double_twist_iso_check, dual_bosonisation_iso, TwistedDouble,
};
pub use factorisable::{
    check_ideals, check_thetas, chart_change, ideals, path_independence, rank_of_triple, theta1, theta2,
    triple_as_double_cotwist, triple_sum, twist_identity, IdealTriple,
};
pub use matched::{matched_pair, sigma_inverse, sigma_iso, sigma_iso_check, triple_as_dcross_double};
pub use triangular::triangular_triple_structure;

use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, LieBialgebra, LieCobracket, LinearMap};
use crate::linalg::Matrix;
use crate::report::VerificationReport;
use crate::rmatrix::QuasitriangularBialgebra;
use crate::scalar::Scalar;
use crate::tensor::{Space, SpaceRef, Tensor2};

/// An ordered direct sum of named blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpace {
    blocks: Vec<(String, SpaceRef)>,
    total: SpaceRef,
}

impl BlockSpace {
    pub fn new(blocks: Vec<(String, SpaceRef)>) -> Result<Self> {
        let labels: Vec<String> = blocks
            .iter()
            .flat_map(|(name, s)| s.labels().iter().map(move |l| format!("{name}:{l}")))
            .collect();
        let total = Space::new(labels)?;
        Ok(BlockSpace { blocks, total })
    }

    pub fn total(&self) -> &SpaceRef {
        &self.total
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block(&self, i: usize) -> &(String, SpaceRef) {
        &self.blocks[i]
    }

    pub fn offset(&self, i: usize) -> usize {
        self.blocks[..i].iter().map(|(_, s)| s.dim()).sum()
    }

    pub fn range(&self, i: usize) -> std::ops::Range<usize> {
        let o = self.offset(i);
        o..o + self.blocks[i].1.dim()
    }

    /// Coordinates of the block-`i` vector `v` in the total space.
    pub fn embed(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (k, x) in self.range(i).zip(v) {
            out[k] = x.clone();
        }
        out
    }

    pub fn project(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        v[self.range(i)].to_vec()
    }
}

/// Square matrix assembled from `k×k` blocks of size `n`, each block given
/// as an integer multiple of the identity.
pub(crate) fn block_identity_matrix(n: usize, pattern: &[&[i64]]) -> Matrix {
    let k = pattern.len();
    let mut m = Matrix::zeros(k * n, k * n);
    for (bi, row) in pattern.iter().enumerate() {
        for (bj, &c) in row.iter().enumerate() {
            if c != 0 {
                for t in 0..n {
                    m[(bi * n + t, bj * n + t)] = Scalar::from_int(c);
                }
            }
        }
    }
    m
}

/// Places `m` at block position `(bi, bj)` of a larger square matrix.
pub(crate) fn place(out: &mut Matrix, m: &Matrix, row: usize, col: usize) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out[(row + i, col + j)] = m[(i, j)].clone();
        }
    }
}

/// The sub-bialgebra on the listed basis indices, after checking that both
/// the bracket and the cobracket close on their span.
pub fn restrict(b: &LieBialgebra, indices: &[usize], space: SpaceRef) -> Result<LieBialgebra> {
    let report = closure_report(b, indices);
    if !report.is_ok() {
        return Err(Error::Verification(report));
    }
    let n = indices.len();
    if space.dim() != n {
        return Err(Error::Shape("restriction space has the wrong dimension".into()));
    }
    let alg = LieAlgebra::from_fn(space.clone(), |i, j, k| b.alg().constant(indices[i], indices[j], indices[k]).clone())?;
    let cob = LieCobracket::from_fn(space, |i, j, k| b.cob().constant(indices[i], indices[j], indices[k]).clone())?;
    LieBialgebra::from_raw(alg, cob)
}

/// Lists brackets and cobrackets of the listed basis vectors that leave
/// their span.
pub fn closure_report(b: &LieBialgebra, indices: &[usize]) -> VerificationReport {
    let mut report = VerificationReport::new("sub-bialgebra closure");
    report.check("bracket closes");
    report.check("cobracket closes");
    let inside = |k: usize| indices.contains(&k);
    for &i in indices {
        for &j in indices {
            for (k, v) in b.alg().bracket_terms(i, j) {
                if !inside(*k) {
                    report.violation("bracket closes", &[i, j, *k], format!("coefficient {v} outside"));
                }
            }
        }
        for (j, k, v) in b.cob().terms(i) {
            if !inside(*j) || !inside(*k) {
                report.violation("cobracket closes", &[i, *j, *k], format!("coefficient {v} outside"));
            }
        }
    }
    report
}

/// `m ⊗ m` applied to `r`, as a tensor on the codomain.
pub(crate) fn push_r(m: &LinearMap, r: &Tensor2) -> Result<Tensor2> {
    m.apply2(r)
}

/// Bialgebra isomorphism check that also requires `(m⊗m) r_src = r_dst`.
pub fn check_quasitriangular_iso(m: &LinearMap, src: &QuasitriangularBialgebra, dst: &QuasitriangularBialgebra) -> VerificationReport {
    let mut report = crate::liealg::check_bialgebra_isomorphism(m, src.bialgebra(), dst.bialgebra());
    report.check("r carried");
    match push_r(m, src.r()) {
        Ok(pushed) => match pushed.sub(dst.r()) {
            Ok(diff) => {
                for (i, j, v) in diff.nonzero() {
                    report.violation("r carried", &[i, j], format!("(m⊗m)r − r' has coefficient {v}"));
                }
            }
            Err(e) => report.violation("r carried", &[], e.to_string()),
        },
        Err(e) => report.violation("r carried", &[], e.to_string()),
    }
    report
}

/// Structure-constant equality on identical spaces.
pub(crate) fn compare_algebras(name: &str, a: &LieAlgebra, b: &LieAlgebra) -> VerificationReport {
    let mut report = VerificationReport::new(name);
    report.check("bracket constants equal");
    if a.dim() != b.dim() {
        report.violation("bracket constants equal", &[], format!("dimensions {} and {}", a.dim(), b.dim()));
        return report;
    }
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y) = (a.constant(i, j, k), b.constant(i, j, k));
                if x != y {
                    report.violation("bracket constants equal", &[i, j, k], format!("{x} vs {y}"));
                }
            }
        }
    }
    report
}

/// Whether `v` lies in the span of `cols`.
pub(crate) fn in_span(cols: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let n = v.len();
    let base = Matrix::from_fn(n, cols.len(), |i, j| cols[j][i].clone());
    let ext = Matrix::from_fn(n, cols.len() + 1, |i, j| if j < cols.len() { cols[j][i].clone() } else { v[i].clone() });
    base.rank() == ext.rank()
}

/// Blocks `A, B, C`, three copies of `g`.
pub(crate) fn abc_blocks(q: &QuasitriangularBialgebra) -> Result<BlockSpace> {
    let s = q.space().clone();
    BlockSpace::new(vec![("A".into(), s.clone()), ("B".into(), s.clone()), ("C".into(), s)])
}
