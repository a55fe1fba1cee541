//! Command dispatch shared by the `parcohom` binary and the tests.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::abelian::{cohomology, display_f2, CochainComplex, FGAbGroup};
use crate::cw::{assemble_cochain, check_d_squared, validate_cells, verify_boundary_decomposition};
use crate::doc::{parse_input, CoefficientSpec, DocError, InputDocument};
use crate::local::{check_character, compare, twisted_cochain, OracleKind};
use crate::mackey::{check_mackey_axioms, Coefficient, MackeyFunctor};
use crate::rep::{classify_representations, validate_representation, RepError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Ro,
    Cohom { coeff: Option<String> },
    VerifySigns,
    Local { coeff: Option<String> },
    OracleCompare { coeff: Option<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeGroup {
    pub degree: usize,
    pub group: FGAbGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub coefficient: String,
    pub degrees: Vec<DegreeGroup>,
    /// `differentials[n]` maps degree n to n+1, row-major.
    pub differentials: Vec<Vec<Vec<i64>>>,
}

impl CohomologyReport {
    pub fn new(coefficient: String, complex: &CochainComplex, groups: &[FGAbGroup]) -> Self {
        CohomologyReport {
            coefficient,
            degrees: groups.iter().enumerate().map(|(degree, g)| DegreeGroup { degree, group: g.clone() }).collect(),
            differentials: complex
                .differentials
                .iter()
                .map(|d| d.to_i64_rows().unwrap_or_default())
                .collect(),
        }
    }

    pub fn groups(&self) -> Vec<FGAbGroup> {
        self.degrees.iter().map(|d| d.group.clone()).collect()
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let f2 = self.coefficient == "F2";
        for d in &self.degrees {
            let _ = writeln!(out, "n={}: {}", d.degree, show(&d.group, f2));
        }
        out.push_str(&summary(&self.groups(), f2));
        out.push('\n');
        out
    }
}

fn show(g: &FGAbGroup, f2: bool) -> String {
    if f2 {
        display_f2(g)
    } else {
        g.to_string()
    }
}

/// One line naming the nonzero degrees, e.g. `n=1: Z/2; otherwise 0`.
pub fn summary(groups: &[FGAbGroup], f2: bool) -> String {
    let mut parts: Vec<(String, Vec<usize>)> = Vec::new();
    for (n, g) in groups.iter().enumerate().filter(|(_, g)| !g.is_zero()) {
        let s = show(g, f2);
        match parts.iter_mut().find(|(t, _)| *t == s) {
            Some((_, ns)) => ns.push(n),
            None => parts.push((s, vec![n])),
        }
    }
    if parts.is_empty() {
        return "0 in every degree".into();
    }
    let mut items: Vec<String> = parts
        .iter()
        .map(|(g, ns)| format!("n={}: {g}", ns.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    if groups.iter().any(FGAbGroup::is_zero) {
        items.push("otherwise 0".into());
    }
    items.join("; ")
}

struct Failure(i32, String);

impl From<DocError> for Failure {
    fn from(e: DocError) -> Self {
        let code = if matches!(e, DocError::MissingSection(_)) { EXIT_USAGE } else { EXIT_INVALID };
        Failure(code, format!("error: {e}\n"))
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_INVALID, format!("error: {e}\n"))
}

/// Parses `text` and runs `cmd`; returns the exit code and the text to print.
pub fn run(cmd: &Command, text: &str, json: bool) -> (i32, String) {
    match parse_input(text) {
        Ok(doc) => run_document(cmd, &doc, json),
        Err(errs) => {
            let code = if errs.iter().all(|e| matches!(e, DocError::MissingSection(_))) { EXIT_USAGE } else { EXIT_INVALID };
            (code, errs.iter().map(|e| format!("error: {e}\n")).collect())
        }
    }
}

pub fn run_document(cmd: &Command, doc: &InputDocument, json: bool) -> (i32, String) {
    let result = match cmd {
        Command::Validate => validate(doc, json),
        Command::Ro => ro(doc, json),
        Command::Cohom { coeff } => cohom(doc, coeff.as_deref(), json),
        Command::VerifySigns => verify_signs(doc, json),
        Command::Local { coeff } => local(doc, coeff.as_deref(), json),
        Command::OracleCompare { coeff } => oracle_compare(doc, coeff.as_deref(), json),
    };
    match result {
        Ok((code, out)) => (code, out),
        Err(Failure(code, out)) => (code, out),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

fn validate(doc: &InputDocument, json: bool) -> Result<(i32, String), Failure> {
    let mut problems = Vec::new();
    let mut checked = Vec::new();
    if let Some(p) = &doc.groupoid {
        checked.push("groupoid");
        problems.extend(p.validate());
        if let Some(g) = &doc.gamma {
            match validate_representation(p, g) {
                Ok(report) => {
                    checked.push("gamma");
                    problems.extend(report);
                }
                Err(RepError::UnsupportedSignCalculus(_)) => checked.push("gamma fibers only"),
                Err(e) => return Err(invalid(e)),
            }
        }
        if let Some(CoefficientSpec::Custom(m)) = &doc.coefficients {
            checked.push("coefficients");
            problems.extend(check_mackey_axioms(m, p));
        }
    }
    if let Some(c) = &doc.complex {
        checked.push("complex");
        problems.extend(validate_cells(c));
        if problems.is_empty() {
            let m = coefficient_functor(doc, None)?.1;
            let (ok, report) = check_d_squared(c, &m).map_err(invalid)?;
            if !ok {
                problems.extend(report);
            }
        }
    }
    if let Some(l) = &doc.local {
        checked.push("local");
        problems.extend(l.space.validate());
        if let Err(e) = check_character(&l.space, &l.character) {
            problems.push(e.to_string());
        }
    }
    if checked.is_empty() {
        return Err(Failure(EXIT_USAGE, "error: nothing to validate\n".into()));
    }
    let code = if problems.is_empty() { EXIT_OK } else { EXIT_INVALID };
    let out = if json {
        #[derive(Serialize)]
        struct V<'a> {
            valid: bool,
            checked: &'a [&'a str],
            problems: &'a [String],
        }
        to_json(&V { valid: problems.is_empty(), checked: &checked, problems: &problems })
    } else if problems.is_empty() {
        format!("valid ({})\n", checked.join(", "))
    } else {
        problems.iter().map(|p| format!("invalid: {p}\n")).collect()
    };
    Ok((code, out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoReport {
    pub group: FGAbGroup,
    pub generators: usize,
}

fn ro(doc: &InputDocument, json: bool) -> Result<(i32, String), Failure> {
    let p = doc.groupoid()?;
    let c = classify_representations(p).map_err(invalid)?;
    let report = RoReport { group: c.group, generators: c.generators.len() };
    let out = if json { to_json(&report) } else { format!("{}\n", report.group) };
    Ok((EXIT_OK, out))
}

fn parse_coeff(s: &str) -> Result<Coefficient, Failure> {
    Coefficient::parse(s).ok_or_else(|| Failure(EXIT_USAGE, format!("error: unknown coefficient `{s}`\n")))
}

fn coefficient_functor(doc: &InputDocument, flag: Option<&str>) -> Result<(String, MackeyFunctor), Failure> {
    let p = doc.groupoid()?;
    match (flag, &doc.coefficients) {
        (Some("custom"), Some(spec @ CoefficientSpec::Custom(m))) => Ok((spec.to_string(), m.clone())),
        (Some("custom"), _) => Err(Failure(EXIT_USAGE, "error: document has no custom coefficients\n".into())),
        (Some(s), _) => {
            let n = parse_coeff(s)?;
            Ok((n.to_string(), CoefficientSpec::Constant(n).functor(p)))
        }
        (None, Some(spec)) => Ok((spec.to_string(), spec.functor(p))),
        (None, None) => Ok((Coefficient::Integers.to_string(), CoefficientSpec::Constant(Coefficient::Integers).functor(p))),
    }
}

/// Cohomology of the document's complex; `coeff` overrides the `coefficients` section.
pub fn cohomology_report(doc: &InputDocument, coeff: Option<&str>) -> Result<CohomologyReport, String> {
    let c = doc.complex().map_err(|e| e.to_string())?;
    let (name, m) = coefficient_functor(doc, coeff).map_err(|f| f.1.trim().to_string())?;
    let cx = assemble_cochain(c, &m).map_err(|e| e.to_string())?;
    let groups = cohomology(&cx).map_err(|e| e.to_string())?;
    Ok(CohomologyReport::new(name, &cx, &groups))
}

fn cohom(doc: &InputDocument, coeff: Option<&str>, json: bool) -> Result<(i32, String), Failure> {
    let c = doc.complex()?;
    let (name, m) = coefficient_functor(doc, coeff)?;
    let cx = assemble_cochain(c, &m).map_err(invalid)?;
    let groups = cohomology(&cx).map_err(invalid)?;
    let report = CohomologyReport::new(name, &cx, &groups);
    Ok((EXIT_OK, if json { to_json(&report) } else { report.human() }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCheck {
    pub from: String,
    pub to: String,
    pub mismatches: Vec<String>,
}

fn verify_signs(doc: &InputDocument, json: bool) -> Result<(i32, String), Failure> {
    let c = doc.complex()?;
    let mut checks = Vec::new();
    for entry in &c.boundary {
        let Some(claimed) = &entry.underlying else { continue };
        let mismatches = verify_boundary_decomposition(c, entry, claimed).map_err(invalid)?;
        checks.push(SignCheck {
            from: c.cells[entry.from].name.clone(),
            to: c.cells[entry.to].name.clone(),
            mismatches,
        });
    }
    if checks.is_empty() {
        return Err(Failure(EXIT_USAGE, "error: no boundary entry carries an `underlying` matrix\n".into()));
    }
    let ok = checks.iter().all(|c| c.mismatches.is_empty());
    let out = if json {
        to_json(&checks)
    } else {
        let mut out = String::new();
        for ch in &checks {
            if ch.mismatches.is_empty() {
                let _ = writeln!(out, "{} → {}: ok", ch.from, ch.to);
            }
            for m in &ch.mismatches {
                let _ = writeln!(out, "mismatch: {m}");
            }
        }
        out
    };
    Ok((if ok { EXIT_OK } else { EXIT_INVALID }, out))
}

fn local(doc: &InputDocument, coeff: Option<&str>, json: bool) -> Result<(i32, String), Failure> {
    let l = doc.local()?;
    let n = parse_coeff(coeff.unwrap_or("Z"))?;
    let cx = twisted_cochain(&l.space, &l.character, n).map_err(invalid)?;
    let groups = cohomology(&cx).map_err(invalid)?;
    let report = CohomologyReport::new(n.to_string(), &cx, &groups);
    Ok((EXIT_OK, if json { to_json(&report) } else { report.human() }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareOutput {
    pub coefficient: String,
    pub oracle: String,
    pub direct: Vec<FGAbGroup>,
    pub cover: Vec<FGAbGroup>,
    pub mismatches: Vec<String>,
}

fn oracle_compare(doc: &InputDocument, coeff: Option<&str>, json: bool) -> Result<(i32, String), Failure> {
    let l = doc.local()?;
    let n = parse_coeff(coeff.unwrap_or("Z"))?;
    let r = compare(&l.space, &l.character, n).map_err(invalid)?;
    let oracle = match r.oracle_kind {
        OracleKind::UniversalCover => "universal cover",
        OracleKind::CharacterCover => "character cover",
    };
    let report = CompareOutput {
        coefficient: n.to_string(),
        oracle: oracle.into(),
        direct: r.direct,
        cover: r.oracle,
        mismatches: r.mismatches,
    };
    let code = if report.mismatches.is_empty() { EXIT_OK } else { EXIT_INVALID };
    let out = if json {
        to_json(&report)
    } else {
        let mut out = String::new();
        for (k, (a, b)) in report.direct.iter().zip(&report.cover).enumerate() {
            let f2 = report.coefficient == "F2";
            let _ = writeln!(out, "n={k}: direct {}, {oracle} {}", show(a, f2), show(b, f2));
        }
        out.push_str(if code == EXIT_OK { "match\n" } else { "MISMATCH\n" });
        out
    };
    Ok((code, out))
}
