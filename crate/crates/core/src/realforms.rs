//! Half-real forms: a basis in which every bracket constant is real and
//! every cobracket constant is imaginary. `r` is of real type when `2r₊`
//! is real.

use crate::braided::{self_pairing_factorisable, transmute};
use crate::constructions::triple;
use crate::error::{Error, Result};
use crate::liealg::LieBialgebra;
use crate::report::VerificationReport;
use crate::rmatrix::{Classification, QuasitriangularBialgebra};

const REAL_BRACKET: &str = "bracket constants real";
const IMAGINARY_COBRACKET: &str = "cobracket constants imaginary";

fn scan_bialgebra(b: &LieBialgebra, report: &mut VerificationReport) {
    report.check(REAL_BRACKET);
    report.check(IMAGINARY_COBRACKET);
    let n = b.dim();
    for i in 0..n {
        for j in 0..n {
            for (k, v) in b.alg().bracket_terms(i, j) {
                if !v.is_real() {
                    report.violation(REAL_BRACKET, &[i, j, *k], format!("{v}"));
                }
            }
        }
        for (j, k, v) in b.cob().terms(i) {
            if !v.is_imaginary() {
                report.violation(IMAGINARY_COBRACKET, &[i, *j, *k], format!("{v}"));
            }
        }
    }
}

/// Lists every non-real bracket constant and every non-imaginary cobracket
/// constant.
pub fn is_half_real(q: &QuasitriangularBialgebra) -> VerificationReport {
    let mut report = VerificationReport::new("half-real form");
    scan_bialgebra(q.bialgebra(), &mut report);
    report
}

pub fn is_real_type(q: &QuasitriangularBialgebra) -> bool {
    q.r_symmetric().coeffs().iter().all(|v| v.is_real())
}

fn require_real_type(q: &QuasitriangularBialgebra) -> Result<()> {
    if is_real_type(q) {
        Ok(())
    } else {
        Err(Error::Precondition("2r₊ is not real".into()))
    }
}

/// The transmutation of a real-type form has real bracket and real braided
/// cobracket; for factorisable input the Killing self-pairing is real and
/// valid.
pub fn real_transmutation_check(q: &QuasitriangularBialgebra) -> Result<VerificationReport> {
    require_real_type(q)?;
    let b = transmute(q)?;
    let mut report = VerificationReport::new("real transmutation");
    report.check("braided bracket real");
    report.check("braided cobracket real");
    let n = b.dim();
    for i in 0..n {
        for j in 0..n {
            for (k, v) in b.alg().bracket_terms(i, j) {
                if !v.is_real() {
                    report.violation("braided bracket real", &[i, j, *k], format!("{v}"));
                }
            }
        }
        for (j, k, v) in b.cob().terms(i) {
            if !v.is_real() {
                report.violation("braided cobracket real", &[i, *j, *k], format!("{v}"));
            }
        }
    }
    if q.classify() == Classification::Factorisable {
        report.check("self-pairing real");
        match self_pairing_factorisable(q, &b) {
            Ok(pair) => {
                let form = pair.form();
                for i in 0..n {
                    for j in 0..n {
                        if !form[(i, j)].is_real() {
                            report.violation("self-pairing real", &[i, j], format!("{}", form[(i, j)]));
                        }
                    }
                }
            }
            Err(e) => report.violation("self-pairing real", &[], e.to_string()),
        }
    }
    Ok(report)
}

/// `T(u)` for a real-type form `u`: (i) every bracket constant real,
/// (ii) every cobracket constant imaginary, (iii) `2(r_T)₊` real. Each
/// assertion is a separate check of the report.
pub fn half_real_triple_check(q: &QuasitriangularBialgebra) -> Result<VerificationReport> {
    require_real_type(q)?;
    let t = triple(q)?;
    let mut report = VerificationReport::new("half-real triple");
    scan_bialgebra(t.result.bialgebra(), &mut report);
    report.check("2(r_T)₊ real");
    for (i, j, v) in t.result.r_symmetric().nonzero() {
        if !v.is_real() {
            report.violation("2(r_T)₊ real", &[i, j], format!("{v}"));
        }
    }
    Ok(report)
}
