//! Built-in fixtures.
//!
//! * `abelian-n`: zero bracket, `r = 0`.
//! * `axb`: the non-abelian 2-dimensional algebra `[x, y] = y` with the
//!   antisymmetric solution `r = x⊗y − y⊗x`.
//! * `sl2`: basis `(e, h, f)` with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
//!   The r-matrix is the standard one scaled so that `2r₊` inverts the
//!   Killing form: `r = ¼(e⊗f + ¼h⊗h)`.
//! * `sl3`: traceless 3×3 matrices in the basis
//!   `E12, E13, E23, H1 = E11−E22, H2 = E22−E33, E21, E31, E32`; constants
//!   are computed from matrix commutators and `r` is the Killing-normalized
//!   standard solution.
//! * `su2`: the compact basis `u1 = ih, u2 = e − f, u3 = i(e + f)` of sl2,
//!   with constants and `r` transported from the sl2 fixture.

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;
use crate::rmatrix::QuasitriangularBialgebra;
use crate::scalar::Scalar;
use crate::tensor::{Space, SpaceRef, Tensor2};

pub const NAMES: [&str; 5] = ["abelian-2", "axb", "sl2", "sl3", "su2"];

/// Looks up a fixture; `abelian-N` accepts any `N ≥ 0`.
pub fn by_name(name: &str) -> Option<QuasitriangularBialgebra> {
    match name {
        "axb" => Some(axb()),
        "sl2" => Some(sl2()),
        "sl3" => Some(sl3()),
        "su2" => Some(su2()),
        "abelian" => Some(abelian()),
        _ => {
            let n: usize = name.strip_prefix("abelian-")?.parse().ok()?;
            Some(abelian_n(n))
        }
    }
}

pub fn algebra(name: &str) -> Option<LieAlgebra> {
    by_name(name).map(|q| q.alg().clone())
}

pub fn abelian_algebra(n: usize) -> LieAlgebra {
    LieAlgebra::abelian(Space::numbered("a", n))
}

pub fn abelian_n(n: usize) -> QuasitriangularBialgebra {
    let alg = abelian_algebra(n);
    let s = alg.space().clone();
    QuasitriangularBialgebra::new(alg, Tensor2::zeros(s.clone(), s)).expect("abelian fixture is valid")
}

/// `abelian-2`.
pub fn abelian() -> QuasitriangularBialgebra {
    abelian_n(2)
}

pub fn axb_algebra() -> LieAlgebra {
    let s = Space::new(["x", "y"]).expect("distinct labels");
    LieAlgebra::from_entries(s, &[(0, 1, 1, Scalar::one())]).expect("ax+b is a Lie algebra")
}

pub fn axb() -> QuasitriangularBialgebra {
    let alg = axb_algebra();
    let s = alg.space().clone();
    let r = Tensor2::from_entries(s.clone(), s, &[(0, 1, Scalar::one()), (1, 0, Scalar::from_int(-1))]);
    QuasitriangularBialgebra::new(alg, r).expect("ax+b fixture is valid")
}

pub fn sl2_algebra() -> LieAlgebra {
    let s = Space::new(["e", "h", "f"]).expect("distinct labels");
    let (e, h, f) = (0, 1, 2);
    LieAlgebra::from_entries(
        s,
        &[(h, e, e, Scalar::from_int(2)), (h, f, f, Scalar::from_int(-2)), (e, f, h, Scalar::one())],
    )
    .expect("sl2 is a Lie algebra")
}

/// sl2 with `r = λ(e⊗f + ¼h⊗h)`.
pub fn sl2_scaled(lambda: Scalar) -> QuasitriangularBialgebra {
    let alg = sl2_algebra();
    let s = alg.space().clone();
    let r = Tensor2::from_entries(s.clone(), s, &[(0, 2, lambda.clone()), (1, 1, &lambda * &Scalar::ratio(1, 4))]);
    QuasitriangularBialgebra::new(alg, r).expect("scaled sl2 fixture is valid")
}

pub fn sl2() -> QuasitriangularBialgebra {
    sl2_scaled(Scalar::ratio(1, 4))
}

type Mat3 = [[i64; 3]; 3];

fn unit3(i: usize, j: usize) -> Mat3 {
    let mut m = [[0; 3]; 3];
    m[i][j] = 1;
    m
}

fn sl3_basis() -> Vec<Mat3> {
    let mut h1 = [[0; 3]; 3];
    h1[0][0] = 1;
    h1[1][1] = -1;
    let mut h2 = [[0; 3]; 3];
    h2[1][1] = 1;
    h2[2][2] = -1;
    vec![unit3(0, 1), unit3(0, 2), unit3(1, 2), h1, h2, unit3(1, 0), unit3(2, 0), unit3(2, 1)]
}

/// Coordinates of a traceless matrix: off-diagonal entries are read off,
/// and `diag(a, b−a, −b)` is `a·H1 + b·H2`.
fn sl3_coords(m: &Mat3) -> [i64; 8] {
    [m[0][1], m[0][2], m[1][2], m[0][0], -m[2][2], m[1][0], m[2][0], m[2][1]]
}

pub fn sl3_algebra() -> LieAlgebra {
    let s = Space::new(["E12", "E13", "E23", "H1", "H2", "E21", "E31", "E32"]).expect("distinct labels");
    let basis = sl3_basis();
    LieAlgebra::from_fn(s, |i, j, k| {
        let (a, b) = (&basis[i], &basis[j]);
        let mut c = [[0i64; 3]; 3];
        for p in 0..3 {
            for q in 0..3 {
                for t in 0..3 {
                    c[p][q] += a[p][t] * b[t][q] - b[p][t] * a[t][q];
                }
            }
        }
        Scalar::from_int(sl3_coords(&c)[k])
    })
    .and_then(|alg| {
        let report = alg.verify();
        if report.is_ok() {
            Ok(alg)
        } else {
            Err(Error::Invalid(report))
        }
    })
    .expect("sl3 is a Lie algebra")
}

/// `Σ_α e_α⊗f_α / K(e_α,f_α) + ½(K|_h)⁻¹`, the standard r-matrix with
/// `2r₊ = K⁻¹`.
pub fn sl3() -> QuasitriangularBialgebra {
    let alg = sl3_algebra();
    let k = alg.killing_form().matrix().clone();
    let s = alg.space().clone();
    let mut r = Tensor2::zeros(s.clone(), s);
    for (p, m) in [(0, 5), (1, 6), (2, 7)] {
        r.set(p, m, k[(p, m)].inv().expect("Killing pairs e_α with f_α"));
    }
    let cartan = Matrix::from_fn(2, 2, |i, j| k[(3 + i, 3 + j)].clone());
    let inv = cartan.inverse().expect("Killing form is nondegenerate on the Cartan").scale(&Scalar::ratio(1, 2));
    for i in 0..2 {
        for j in 0..2 {
            r.set(3 + i, 3 + j, inv[(i, j)].clone());
        }
    }
    QuasitriangularBialgebra::new(alg, r).expect("sl3 fixture is valid")
}

/// Columns are `u1 = ih`, `u2 = e − f`, `u3 = i(e + f)` in `(e, h, f)`
/// coordinates.
pub fn su2_basis_change() -> Matrix {
    let (z, o, i) = (Scalar::zero(), Scalar::one(), Scalar::i());
    Matrix::from_rows(vec![
        vec![z.clone(), o.clone(), i.clone()],
        vec![i, z.clone(), z.clone()],
        vec![z, -o, Scalar::i()],
    ])
    .expect("square")
}

pub fn su2() -> QuasitriangularBialgebra {
    let q = sl2();
    let s_mat = su2_basis_change();
    let space = Space::new(["u1", "u2", "u3"]).expect("distinct labels");
    let alg = q.alg().transport(&s_mat, space.clone()).expect("invertible basis change");
    let s_inv = s_mat.inverse().expect("invertible basis change");
    let r = s_inv.mul(&q.r().to_matrix()).and_then(|m| m.mul(&s_inv.transpose())).expect("square");
    let r = Tensor2::from_matrix(space.clone(), space, &r).expect("shape");
    QuasitriangularBialgebra::new(alg, r).expect("su2 fixture is valid")
}

/// Space whose labels are those of the parts with prefixes `1.`, `2.`, ….
pub fn sum_space(parts: &[&SpaceRef]) -> SpaceRef {
    let labels: Vec<String> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.labels().iter().map(move |l| format!("{}.{l}", i + 1)))
        .collect();
    Space::new(labels).expect("prefixed labels are distinct")
}

/// `(g₁ ⊕ g₂, r₁ + r₂)`.
pub fn direct_sum(a: &QuasitriangularBialgebra, b: &QuasitriangularBialgebra) -> Result<QuasitriangularBialgebra> {
    let space = sum_space(&[a.space(), b.space()]);
    let alg = LieAlgebra::direct_sum(&[a.alg(), b.alg()], space.clone())?;
    let (m, n) = (a.dim(), b.dim());
    let mut r = Tensor2::zeros(space.clone(), space);
    for (i, j, v) in a.r().nonzero() {
        r.set(i, j, v.clone());
    }
    for (i, j, v) in b.r().nonzero() {
        r.set(m + i, m + j, v.clone());
    }
    debug_assert_eq!(r.shape(), (m + n, m + n));
    QuasitriangularBialgebra::new(alg, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmatrix::Classification;

    #[test]
    fn fixtures_are_valid() {
        for name in NAMES {
            let q = by_name(name).unwrap();
            assert!(q.verify().is_ok(), "{name}");
        }
        assert_eq!(by_name("abelian-5").unwrap().dim(), 5);
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn classifications() {
        assert_eq!(abelian().classify(), Classification::Triangular);
        assert_eq!(axb().classify(), Classification::Triangular);
        for q in [sl2(), sl3(), su2()] {
            assert_eq!(q.classify(), Classification::Factorisable);
        }
    }

    #[test]
    fn killing_normalization() {
        for q in [sl2(), sl3(), su2()] {
            let k = q.alg().killing_form().matrix().clone();
            let prod = q.r_symmetric().to_matrix().mul(&k).unwrap();
            assert_eq!(prod, Matrix::identity(q.dim()));
        }
    }

    #[test]
    fn sl3_r_values() {
        let q = sl3();
        let r = q.r();
        assert_eq!(r.get(0, 5), &Scalar::ratio(1, 6));
        assert_eq!(r.get(3, 3), &Scalar::ratio(1, 18));
        assert_eq!(r.get(3, 4), &Scalar::ratio(1, 36));
        assert_eq!(r.get(5, 0), &Scalar::zero());
    }

    #[test]
    fn su2_constants_are_real_and_killing_is_negative() {
        let q = su2();
        assert!(q.alg().constants().iter().all(Scalar::is_real));
        let k = q.alg().killing_form().matrix().clone();
        assert_eq!(k, Matrix::identity(3).scale(&Scalar::from_int(-8)));
    }
}
