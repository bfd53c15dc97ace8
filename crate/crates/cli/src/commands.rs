//! The subcommands, as functions from a loaded file to a report and an
//! optional emitted file.

use std::fmt;
use std::time::Instant;

use triple_core::braided::forced_zero_cobracket;
use triple_core::catalog;
use triple_core::constructions::{
    check_double_to_twist, check_ideals, check_thetas, drinfeld_double, ideals, matched_pair, path_independence,
    rank_of_triple, sigma_iso_check, triangular_triple_structure, triple, triple_as_dcross_double,
    triple_as_double_cotwist, twist_identity, Chart,
};
use triple_core::liealg::lie_rank;
use triple_core::realforms::{half_real_triple_check, is_half_real, is_real_type, real_transmutation_check};
use triple_core::rmatrix::coboundary;
use triple_core::{Classification, LieBialgebra, QuasitriangularBialgebra, VerificationReport};

use crate::format::{AlgebraFile, Diagnostic};
use crate::report::Report;

/// Problems with the input itself, as opposed to failed verification.
#[derive(Debug)]
pub enum InputError {
    Io(String, std::io::Error),
    UnknownFixture(String),
    Parse(String, Vec<Diagnostic>),
    MissingR(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io(path, e) => write!(f, "{path}: {e}"),
            InputError::UnknownFixture(name) => {
                write!(f, "unknown fixture `{name}`; known: {}", catalog::NAMES.join(", "))
            }
            InputError::Parse(path, diags) => {
                write!(f, "{path}: {} problem(s)", diags.len())?;
                for d in diags {
                    write!(f, "\n  {d}")?;
                }
                Ok(())
            }
            InputError::MissingR(name) => write!(f, "{name} has no r-matrix; add `quasitriangular` and `r` lines"),
        }
    }
}

/// Short descriptions written at the head of emitted fixture files.
fn fixture_header(name: &str) -> Vec<String> {
    let about = match name {
        "sl2" => "sl2 in the basis e, h, f; r = 1/4 (e⊗f + 1/4 h⊗h), so 2r₊ inverts the Killing form",
        "sl3" => "sl3 in the matrix-unit basis; r is the Killing-normalized standard solution",
        "su2" => "compact form u1 = ih, u2 = e − f, u3 = i(e + f) of sl2, r transported from sl2",
        "axb" => "ax+b algebra [x, y] = y with the triangular r = x⊗y − y⊗x",
        _ => "abelian algebra with zero r",
    };
    vec![format!("built-in fixture `{name}`"), about.to_string()]
}

/// Reads `catalog:NAME` or a file path.
pub fn load(arg: &str) -> Result<(AlgebraFile, Vec<String>), InputError> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        let q = catalog::by_name(name).ok_or_else(|| InputError::UnknownFixture(name.into()))?;
        return Ok((AlgebraFile::from_quasitriangular(name, &q), fixture_header(name)));
    }
    let text = std::fs::read_to_string(arg).map_err(|e| InputError::Io(arg.into(), e))?;
    let file = AlgebraFile::parse(&text).map_err(|d| InputError::Parse(arg.into(), d))?;
    Ok((file, Vec::new()))
}

pub struct Outcome {
    pub report: Report,
    pub emitted: Option<String>,
}

fn start(construction: &str, file: &AlgebraFile) -> Report {
    Report::new(construction, &file.name, &file.emit(&[]))
}

fn finish(mut report: Report, emitted: Option<String>, t0: Instant) -> Outcome {
    report.timing_ms = t0.elapsed().as_millis();
    Outcome { report, emitted }
}

/// Runs every axiom on the raw constants, listing all violations.
pub fn verify(file: &AlgebraFile) -> Outcome {
    let t0 = Instant::now();
    let mut rep = start("verify", file);
    let (b, q) = file.build_raw();
    match q {
        Some(q) => {
            rep.add(&q.verify());
            if file.cobrackets.is_some() {
                let same = coboundary(b.alg(), q.r()).map(|d| &d == b.cob()).unwrap_or(false);
                rep.expect("listed cobracket is the coboundary of r", same, "cobracket lines disagree with r");
            }
            rep.note(format!("r is {}", q.classify()));
        }
        None => rep.add(&b.verify()),
    }
    finish(rep, None, t0)
}

/// Validated objects, or a failing report when an axiom does not hold.
fn validated(file: &AlgebraFile, rep: &mut Report) -> Option<(LieBialgebra, Option<QuasitriangularBialgebra>)> {
    match file.build() {
        Err(diags) => {
            for d in diags {
                rep.expect("input axioms", false, d.to_string());
            }
            None
        }
        Ok((b, q)) => {
            let check = match &q {
                Some(q) => q.verify(),
                None => b.verify(),
            };
            let ok = check.is_ok();
            if !ok {
                rep.add(&check);
            }
            ok.then_some((b, q))
        }
    }
}

pub fn double(file: &AlgebraFile) -> Outcome {
    let t0 = Instant::now();
    let mut rep = start("double", file);
    let Some((b, _)) = validated(file, &mut rep) else {
        return finish(rep, None, t0);
    };
    let emitted = match drinfeld_double(&b) {
        Ok(d) => {
            rep.add(&d.verify());
            rep.note(format!("dimension {}, r is {}", d.dim(), d.classify()));
            let name = format!("D({})", file.name);
            let header = format!("Drinfel'd double of {}: blocks g, g*", file.name);
            Some(AlgebraFile::from_quasitriangular(&name, &d).emit(&[&header]))
        }
        Err(e) => {
            rep.add_error("double", &e);
            None
        }
    };
    finish(rep, emitted, t0)
}

pub fn triple_cmd(file: &AlgebraFile) -> Result<Outcome, InputError> {
    if file.r.is_none() {
        return Err(InputError::MissingR(file.name.clone()));
    }
    let t0 = Instant::now();
    let mut rep = start("triple", file);
    let Some((_, Some(q))) = validated(file, &mut rep) else {
        return Ok(finish(rep, None, t0));
    };
    let emitted = match triple(&q) {
        Ok(t) => {
            rep.add(&t.verify());
            rep.note(format!("chart {:?}, dimension {}, r_T is {}", t.chart, t.dim(), t.result.classify()));
            let name = format!("T({})", file.name);
            let header = format!("double bosonisation of {}: blocks b, g, c", file.name);
            Some(AlgebraFile::from_quasitriangular(&name, &t.result).emit(&[&header]))
        }
        Err(e) => {
            rep.add_error("triple", &e);
            None
        }
    };
    Ok(finish(rep, emitted, t0))
}

const SELF_PAIRED_ONLY: &str = "needs factorisable r with 2r₊ inverse to the Killing form";

/// Checks the structure theorems that apply to the input and marks the rest
/// not applicable.
pub fn theorems(file: &AlgebraFile) -> Outcome {
    let t0 = Instant::now();
    let mut rep = start("theorems", file);
    let Some((b, q)) = validated(file, &mut rep) else {
        return finish(rep, None, t0);
    };
    rep.expect("input axioms", true, "");
    match drinfeld_double(&b) {
        Ok(d) => rep.add(&d.verify()),
        Err(e) => rep.add_error("double", &e),
    }
    let Some(q) = q else {
        rep.not_applicable("triple and its structure", "input has no r-matrix");
        return finish(rep, None, t0);
    };
    let class = q.classify();
    rep.note(format!("r is {class}"));
    let t = match triple(&q) {
        Ok(t) => t,
        Err(e) => {
            rep.add_error("triple", &e);
            return finish(rep, None, t0);
        }
    };
    rep.note(format!("triple chart {:?}", t.chart));
    rep.add(&t.verify());
    rep.add_result("matched pair", matched_pair(&t));
    rep.add_result("sigma", sigma_iso_check(&q));
    rep.add_result("dcross double", triple_as_dcross_double(&q));
    match check_double_to_twist(&q) {
        Ok(r) if class == Classification::Factorisable => rep.add(&r),
        Ok(r) => {
            rep.add(&without_check(&r, "bijective"));
            rep.not_applicable("D(g) → g▶◀g: bijective", "isomorphism needs factorisable r");
        }
        Err(e) => rep.add_error("D(g) → g▶◀g", &e),
    }

    if t.chart == Chart::SelfPaired {
        rep.add_result("twist identity", twist_identity(&t));
        match ideals(&t) {
            Ok(id) => rep.add(&check_ideals(&t, &id)),
            Err(e) => rep.add_error("ideals", &e),
        }
        rep.add_result("theta maps", check_thetas(&t));
        let expected = 3 * lie_rank(q.alg());
        match rank_of_triple(&t) {
            Ok(r) => rep.expect("rank of T(g) is 3 rank g", r == expected, format!("rank {r}, expected {expected}")),
            Err(e) => rep.add_error("rank of T(g)", &e),
        }
        rep.add_result("cotwist of D(g)⊕g", triple_as_double_cotwist(&q));
        rep.add_result("path independence", path_independence(&q));
    } else {
        for name in ["twist identity", "ideals", "theta maps", "rank of T(g)", "cotwist of D(g)⊕g", "path independence"] {
            rep.not_applicable(name, SELF_PAIRED_ONLY);
        }
    }

    if class == Classification::Triangular && !q.alg().is_abelian() {
        rep.add_result("triangular structure", triangular_triple_structure(&q));
        match forced_zero_cobracket(&q) {
            Ok(d) => rep.expect("braided cobracket forced to zero", d == 0, format!("solution space of dimension {d}")),
            Err(e) => rep.add_error("braided cobracket forced to zero", &e),
        }
    } else {
        rep.not_applicable("triangular structure", "needs triangular r on a non-abelian algebra");
    }

    if is_real_type(&q) && is_half_real(&q).is_ok() {
        rep.add_result("real transmutation", real_transmutation_check(&q));
        rep.add_result("half-real triple", half_real_triple_check(&q));
    } else {
        rep.not_applicable("half-real triple", "input is not a half-real form with 2r₊ real");
    }
    finish(rep, None, t0)
}

fn without_check(r: &VerificationReport, check: &str) -> VerificationReport {
    let mut out = VerificationReport::new(r.name.clone());
    for c in r.checks.iter().filter(|c| *c != check) {
        out.check(c.clone());
    }
    out.violations = r.violations.iter().filter(|v| v.check != check).cloned().collect();
    out
}

/// The canonical text of the input, with fixture notes for built-ins.
pub fn emit(file: &AlgebraFile, header: &[String]) -> String {
    let refs: Vec<&str> = header.iter().map(String::as_str).collect();
    file.emit(&refs)
}
