use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::report::VerificationReport;
use crate::rmatrix::{Classification, QuasitriangularBialgebra};
use crate::scalar::Scalar;

use super::bosonisation::triple;
use super::compare_algebras;

/// For triangular non-abelian `g`, `T(g)` is `(g ⋊_ad g) ⋉_coad g*`: the
/// `2r₊` term of the `b`–`c` bracket vanishes, `c` is abelian, and the
/// bracket equals the semidirect sum built from `g` alone.
pub fn triangular_triple_structure(q: &QuasitriangularBialgebra) -> Result<VerificationReport> {
    if q.classify() != Classification::Triangular {
        return Err(Error::NotTriangular);
    }
    if q.alg().is_abelian() {
        return Err(Error::Precondition("the semidirect description needs a non-abelian algebra".into()));
    }
    let t = triple(q)?;
    let g = q.alg();
    let n = g.dim();
    let p = t.pair.form();
    let sym = q.r_symmetric();
    let mut report = VerificationReport::new("triangular triple");
    report.check("2r₊ cross term vanishes");
    for j in 0..n {
        for a in 0..n {
            for i in 0..n {
                let mut s = Scalar::zero();
                for (i2, jj, qv) in sym.nonzero() {
                    if i2 != i {
                        continue;
                    }
                    for (l, av) in t.pair.b.action().terms(jj, j) {
                        s += &(&(qv * av) * &p[(*l, a)]);
                    }
                }
                if !s.is_zero() {
                    report.violation("2r₊ cross term vanishes", &[j, a, i], format!("coefficient {s}"));
                }
            }
        }
    }
    report.check("c bracket is zero");
    let c = t.c_range();
    for i in c.clone() {
        for j in c.clone() {
            for (k, v) in t.alg().bracket_terms(i, j) {
                report.violation("c bracket is zero", &[i, j, *k], format!("coefficient {v}"));
            }
        }
    }
    report.merge(compare_algebras("semidirect sum", t.alg(), &semidirect(g)?));
    Ok(report)
}

/// `(g ⋊_ad g) ⋉_coad g*` on `b ⊕ g ⊕ c`: `b` and `g` carry the bracket of
/// `g`, `g` acts on `b` by ad, `b` and `g` both act on `c = g*` by the
/// coadjoint action, and `c` is abelian.
fn semidirect(g: &LieAlgebra) -> Result<LieAlgebra> {
    let n = g.dim();
    let big = 3 * n;
    let idx = |i: usize, j: usize, k: usize| (i * big + j) * big + k;
    let mut s = vec![Scalar::zero(); big * big * big];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = g.constant(i, j, k);
                if v.is_zero() {
                    continue;
                }
                s[idx(i, j, k)] += v;
                s[idx(n + i, n + j, n + k)] += v;
                s[idx(n + i, j, k)] += v;
                s[idx(j, n + i, k)] -= v;
                // ad*_{e_i} f^k = −Σ_j c[i][j][k] f^j
                for o in [0, n] {
                    s[idx(o + i, 2 * n + k, 2 * n + j)] -= v;
                    s[idx(2 * n + k, o + i, 2 * n + j)] += v;
                }
            }
        }
    }
    LieAlgebra::from_raw(crate::tensor::Space::numbered("s", big), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn axb_is_semidirect() {
        let r = triangular_triple_structure(&catalog::axb()).unwrap();
        assert!(r.is_ok(), "{r}");
    }

    #[test]
    fn preconditions() {
        assert!(matches!(triangular_triple_structure(&catalog::abelian()), Err(Error::Precondition(_))));
        assert!(matches!(triangular_triple_structure(&catalog::sl2()), Err(Error::NotTriangular)));
    }

    #[test]
    fn semidirect_is_lie() {
        assert!(semidirect(&catalog::axb_algebra()).unwrap().verify().is_ok());
        assert!(semidirect(&catalog::sl2_algebra()).unwrap().verify().is_ok());
    }
}
