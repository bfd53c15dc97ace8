//! The algebra definition file: one structure constant per line.
//!
//! ```text
//! # comment
//! name sl2
//! dim 3
//! basis e h f
//! bracket 1 0 -> 0 : 2
//! cobracket 1 0 2 : 1/2
//! quasitriangular
//! r 0 2 : 1/4
//! ```
//!
//! `bracket i j -> k : s` sets `c[i][j][k]`; both orders of an
//! antisymmetric pair are listed. `cobracket i j k : s` sets the
//! coefficient of `e_j ⊗ e_k` in `δe_i`. `r i j : s` sets an entry of the
//! r-matrix, and `quasitriangular` marks an r-matrix as present even when
//! every entry is zero. Without cobracket lines the cobracket is the
//! coboundary of `r`, or zero when there is no r-matrix.

use std::collections::BTreeMap;
use std::fmt;

use triple_core::rmatrix::coboundary;
use triple_core::{LieAlgebra, LieBialgebra, LieCobracket, QuasitriangularBialgebra, Scalar, Space, Tensor2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    Syntax,
    IndexOutOfRange,
    Axiom,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagnosticKind::Syntax => "syntax error",
            DiagnosticKind::IndexOutOfRange => "index out of range",
            DiagnosticKind::Axiom => "axiom violation",
        })
    }
}

/// A problem with an input file; `line` is 1-based, 0 for the whole file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl Diagnostic {
    fn new(line: usize, kind: DiagnosticKind, message: impl Into<String>) -> Self {
        Diagnostic { line, kind, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}: {}", self.kind, self.message)
        } else {
            write!(f, "line {}: {}: {}", self.line, self.kind, self.message)
        }
    }
}

type Entries3 = BTreeMap<(usize, usize, usize), Scalar>;
type Entries2 = BTreeMap<(usize, usize), Scalar>;

/// The data of a definition file. Entries are kept sorted so that emitting
/// is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Entries3,
    pub cobrackets: Option<Entries3>,
    pub r: Option<Entries2>,
}

/// Validated objects built from a file.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub file: AlgebraFile,
    pub bialgebra: LieBialgebra,
    pub quasitriangular: Option<QuasitriangularBialgebra>,
}

/// Parses and validates: syntax, index ranges, then the Lie algebra,
/// coalgebra and cocycle axioms, and agreement of listed cobrackets with
/// the coboundary of `r`.
pub fn parse_algebra(text: &str) -> Result<Parsed, Vec<Diagnostic>> {
    let file = AlgebraFile::parse(text)?;
    let (bialgebra, quasitriangular) = file.build()?;
    let report = bialgebra.verify();
    if !report.is_ok() {
        return Err(report_diagnostics(&report));
    }
    Ok(Parsed { file, bialgebra, quasitriangular })
}

fn report_diagnostics(report: &triple_core::VerificationReport) -> Vec<Diagnostic> {
    report
        .violations
        .iter()
        .map(|v| Diagnostic::new(0, DiagnosticKind::Axiom, format!("{} at {:?}: {}", v.check, v.indices, v.detail)))
        .collect()
}

fn parse_index(tok: &str, dim: usize, line: usize, errs: &mut Vec<Diagnostic>) -> Option<usize> {
    match tok.parse::<usize>() {
        Ok(i) if i < dim => Some(i),
        Ok(i) => {
            errs.push(Diagnostic::new(line, DiagnosticKind::IndexOutOfRange, format!("index {i} with dim {dim}")));
            None
        }
        Err(_) => {
            errs.push(Diagnostic::new(line, DiagnosticKind::Syntax, format!("expected an index, found `{tok}`")));
            None
        }
    }
}

impl AlgebraFile {
    /// Syntax and index checks only.
    pub fn parse(text: &str) -> Result<AlgebraFile, Vec<Diagnostic>> {
        let mut errs = Vec::new();
        // entries may precede the `dim` line
        let declared = text.lines().find_map(|l| {
            let mut toks = l.split('#').next()?.split_whitespace();
            (toks.next()? == "dim").then(|| toks.next()?.parse::<usize>().ok()).flatten()
        });
        let mut name: Option<String> = None;
        let mut dim: Option<usize> = None;
        let mut basis: Option<Vec<String>> = None;
        let mut brackets = Entries3::new();
        let mut cobrackets: Option<Entries3> = None;
        let mut r: Option<Entries2> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            let rest = rest.trim();
            let syntax = |msg: String| Diagnostic::new(line, DiagnosticKind::Syntax, msg);
            match keyword {
                "name" => name = Some(rest.to_string()),
                "dim" => match rest.parse::<usize>() {
                    Ok(n) if dim.is_none() => dim = Some(n),
                    Ok(_) => errs.push(syntax("dim given twice".into())),
                    Err(_) => errs.push(syntax(format!("expected a dimension, found `{rest}`"))),
                },
                "basis" => basis = Some(rest.split_whitespace().map(str::to_string).collect()),
                "quasitriangular" if rest.is_empty() => {
                    r.get_or_insert_with(Entries2::new);
                }
                "bracket" | "cobracket" | "r" => {
                    let Some(n) = declared else {
                        errs.push(syntax(format!("`{keyword}` without a valid `dim`")));
                        continue;
                    };
                    let Some((lhs, value)) = rest.rsplit_once(':') else {
                        errs.push(syntax("missing `: value`".into()));
                        continue;
                    };
                    let value: Scalar = match value.trim().parse() {
                        Ok(v) => v,
                        Err(_) => {
                            errs.push(syntax(format!("bad scalar `{}`", value.trim())));
                            continue;
                        }
                    };
                    let toks: Vec<&str> = lhs.split_whitespace().collect();
                    let expected: &[&str] = match keyword {
                        "bracket" => &["i", "j", "->", "k"],
                        "cobracket" => &["i", "j", "k"],
                        _ => &["i", "j"],
                    };
                    if toks.len() != expected.len() || (keyword == "bracket" && toks[2] != "->") {
                        errs.push(syntax(format!("expected `{keyword} {} : value`", expected.join(" "))));
                        continue;
                    }
                    let idx: Vec<&str> = toks.into_iter().filter(|t| *t != "->").collect();
                    let before = errs.len();
                    let ix: Vec<usize> = idx.iter().filter_map(|t| parse_index(t, n, line, &mut errs)).collect();
                    if errs.len() > before {
                        continue;
                    }
                    let dup = match keyword {
                        "bracket" => brackets.insert((ix[0], ix[1], ix[2]), value).is_some(),
                        "cobracket" => {
                            cobrackets.get_or_insert_with(Entries3::new).insert((ix[0], ix[1], ix[2]), value).is_some()
                        }
                        _ => r.get_or_insert_with(Entries2::new).insert((ix[0], ix[1]), value).is_some(),
                    };
                    if dup {
                        errs.push(syntax(format!("duplicate `{keyword}` entry {ix:?}")));
                    }
                }
                other => errs.push(syntax(format!("unknown keyword `{other}`"))),
            }
        }
        let dim = match dim {
            Some(n) => n,
            None => {
                errs.push(Diagnostic::new(0, DiagnosticKind::Syntax, "missing `dim`"));
                0
            }
        };
        let basis = basis.unwrap_or_else(|| (0..dim).map(|i| format!("e{i}")).collect());
        if basis.len() != dim {
            errs.push(Diagnostic::new(0, DiagnosticKind::Syntax, format!("{} basis labels for dim {dim}", basis.len())));
        } else if Space::new(basis.clone()).is_err() {
            errs.push(Diagnostic::new(0, DiagnosticKind::Syntax, "basis labels must be distinct"));
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        let name = name.unwrap_or_else(|| "unnamed".into());
        Ok(AlgebraFile { name, dim, basis, brackets, cobrackets, r })
    }

    /// Builds the objects without checking the Lie axioms; used by `verify`
    /// to report every violation rather than stop at the first.
    pub fn build_raw(&self) -> (LieBialgebra, Option<QuasitriangularBialgebra>) {
        let space = Space::new(self.basis.clone()).expect("labels checked when parsing");
        let alg = LieAlgebra::from_fn(space.clone(), |i, j, k| {
            self.brackets.get(&(i, j, k)).cloned().unwrap_or_else(Scalar::zero)
        })
        .expect("cube shape");
        let q = self.r.as_ref().map(|entries| {
            let list: Vec<(usize, usize, Scalar)> = entries.iter().map(|(&(i, j), v)| (i, j, v.clone())).collect();
            let r = Tensor2::from_entries(space.clone(), space.clone(), &list);
            QuasitriangularBialgebra::from_raw(alg.clone(), r).expect("shapes agree")
        });
        let cob = match (&self.cobrackets, &q) {
            (Some(entries), _) => LieCobracket::from_fn(space.clone(), |i, j, k| {
                entries.get(&(i, j, k)).cloned().unwrap_or_else(Scalar::zero)
            })
            .expect("cube shape"),
            (None, Some(q)) => q.cob().clone(),
            (None, None) => LieCobracket::zero(space.clone()),
        };
        (LieBialgebra::from_raw(alg, cob).expect("same space"), q)
    }

    /// Builds and checks that listed cobrackets agree with `r`.
    pub fn build(&self) -> Result<(LieBialgebra, Option<QuasitriangularBialgebra>), Vec<Diagnostic>> {
        let (b, q) = self.build_raw();
        if let Some(q) = &q {
            let derived = coboundary(b.alg(), q.r()).expect("same space");
            if &derived != b.cob() {
                return Err(vec![Diagnostic::new(
                    0,
                    DiagnosticKind::Axiom,
                    "listed cobracket differs from the coboundary of r",
                )]);
            }
        }
        Ok((b, q))
    }

    pub fn from_bialgebra(name: &str, b: &LieBialgebra) -> AlgebraFile {
        let n = b.dim();
        let mut brackets = Entries3::new();
        let mut cobrackets = Entries3::new();
        for i in 0..n {
            for j in 0..n {
                for (k, v) in b.alg().bracket_terms(i, j) {
                    brackets.insert((i, j, *k), v.clone());
                }
            }
            for (j, k, v) in b.cob().terms(i) {
                cobrackets.insert((i, *j, *k), v.clone());
            }
        }
        AlgebraFile {
            name: name.to_string(),
            dim: n,
            basis: b.space().labels().to_vec(),
            brackets,
            cobrackets: if cobrackets.is_empty() { None } else { Some(cobrackets) },
            r: None,
        }
    }

    pub fn from_quasitriangular(name: &str, q: &QuasitriangularBialgebra) -> AlgebraFile {
        let mut f = AlgebraFile::from_bialgebra(name, q.bialgebra());
        f.r = Some(q.r().nonzero().map(|(i, j, v)| ((i, j), v.clone())).collect());
        f
    }

    /// Canonical text; `header` lines are written as comments.
    pub fn emit(&self, header: &[&str]) -> String {
        let mut out = String::new();
        for h in header {
            out.push_str(&format!("# {h}\n"));
        }
        out.push_str(&format!("name {}\ndim {}\nbasis {}\n", self.name, self.dim, self.basis.join(" ")));
        for ((i, j, k), v) in &self.brackets {
            out.push_str(&format!("bracket {i} {j} -> {k} : {v}\n"));
        }
        if let Some(c) = &self.cobrackets {
            for ((i, j, k), v) in c {
                out.push_str(&format!("cobracket {i} {j} {k} : {v}\n"));
            }
        }
        if let Some(r) = &self.r {
            out.push_str("quasitriangular\n");
            for ((i, j), v) in r {
                out.push_str(&format!("r {i} {j} : {v}\n"));
            }
        }
        out
    }
}
