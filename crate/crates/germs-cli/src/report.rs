//! Report assembly.  Each subcommand builds one of these structures from
//! library output, then renders it either as plain text or as JSON
//! (`--format machine`).  Rationals appear as exact `"p/q"` strings in both,
//! so nothing is lost to rounding and machine reports re-parse to the values
//! that were computed.

use serde::Serialize;

use germs::boundary::{self, BoundaryData};
use germs::cycles;
use germs::etypes::{AppendixReport, CellStatus};
use germs::freeness::{Basis, Obstruction, Outcome, Verdict};
use germs::rat::Rat;
use germs::verify::SuiteReport;
use germs::{DualGraph, Error};

pub fn rat_str(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn pad(s: &str, width: usize) -> String {
    format!("{s:<width$}")
}

/// Rows are `(id, weight, z, a)`; renders an aligned four-column table.
fn vertex_table(rows: &[VertexRow]) -> String {
    let headers = ["vertex", "weight", "Z", "a"];
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        widths[0] = widths[0].max(r.id.len());
        widths[1] = widths[1].max(r.weight.to_string().len());
        widths[2] = widths[2].max(r.z.len());
        widths[3] = widths[3].max(r.a.len());
    }
    let mut out = String::new();
    let line = |cells: [&str; 4], out: &mut String| {
        let mut parts = Vec::with_capacity(4);
        for (i, c) in cells.iter().enumerate() {
            parts.push(pad(c, widths[i]));
        }
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(headers, &mut out);
    for r in rows {
        line([&r.id, &r.weight.to_string(), &r.z, &r.a], &mut out);
    }
    out
}

#[derive(Debug, Serialize)]
pub struct VertexRow {
    pub id: String,
    pub weight: u32,
    /// Fundamental-cycle coefficient.
    pub z: String,
    /// Discrepancy-cycle coefficient.
    pub a: String,
}

#[derive(Debug, Serialize)]
pub struct InvariantsReport {
    pub kind: String,
    pub rational_double_point: bool,
    pub vertices: Vec<VertexRow>,
    pub delta_y: String,
    /// `"p/q"`, or `"unbounded"` when no vertex constrains it.
    pub mu: String,
    pub quasi_log_terminal: bool,
    pub worst_log_coefficient: String,
    pub boundary_coefficients_in_range: bool,
    pub boundary_curves: usize,
    pub arithmetic_genus: String,
}

pub fn invariants(g: &DualGraph, b: &BoundaryData) -> Result<InvariantsReport, Error> {
    let analysis = cycles::analyze(g)?;
    let qlt = boundary::quasi_log_terminal_check(g, b)?;
    let delta_y = cycles::delta_invariant(g, b)?;
    let mu = match boundary::mu(g, b) {
        Ok(v) => rat_str(&v),
        Err(Error::MuUnbounded) => "unbounded".to_string(),
        Err(e) => return Err(e),
    };
    let genus = cycles::arithmetic_genus(g, &analysis.fundamental);
    let vertices = (0..g.vertex_count())
        .map(|i| VertexRow {
            id: g.label(i).to_string(),
            weight: g.weight(i),
            z: rat_str(analysis.fundamental.coeff(i)),
            a: rat_str(analysis.discrepancy.coeff(i)),
        })
        .collect();
    Ok(InvariantsReport {
        kind: analysis.kind.class.to_string(),
        rational_double_point: analysis.kind.rational_double_point,
        vertices,
        delta_y: rat_str(&delta_y),
        mu,
        quasi_log_terminal: qlt.is_qlt,
        worst_log_coefficient: rat_str(&qlt.worst_coefficient),
        boundary_coefficients_in_range: qlt.coefficients_in_range,
        boundary_curves: b.curves.len(),
        arithmetic_genus: rat_str(&genus),
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl InvariantsReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("kind: {}\n", self.kind));
        out.push_str(&format!(
            "rational double point: {}\n\n",
            yes_no(self.rational_double_point)
        ));
        out.push_str(&vertex_table(&self.vertices));
        out.push('\n');
        out.push_str(&format!("delta_y = {}\n", self.delta_y));
        out.push_str(&format!("mu = {}\n", self.mu));
        out.push_str(&format!(
            "quasi-log-terminal: {} (worst log coefficient {})\n",
            yes_no(self.quasi_log_terminal),
            self.worst_log_coefficient
        ));
        out.push_str(&format!(
            "boundary: {} curve(s), coefficients in [0,1): {}\n",
            self.boundary_curves,
            yes_no(self.boundary_coefficients_in_range)
        ));
        out.push_str(&format!("arithmetic genus of Z: {}\n", self.arithmetic_genus));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub kind: String,
    pub rational_double_point: bool,
}

pub fn classify(g: &DualGraph) -> Result<ClassifyReport, Error> {
    let kind = cycles::classify(g)?;
    Ok(ClassifyReport {
        kind: kind.class.to_string(),
        rational_double_point: kind.rational_double_point,
    })
}

impl ClassifyReport {
    pub fn text(&self) -> String {
        format!(
            "kind: {}\nrational double point: {}\n",
            self.kind,
            yes_no(self.rational_double_point)
        )
    }
}

#[derive(Debug, Serialize)]
pub struct MuReport {
    pub mu: String,
}

pub fn mu(g: &DualGraph, b: &BoundaryData) -> Result<MuReport, Error> {
    let mu = match boundary::mu(g, b) {
        Ok(v) => rat_str(&v),
        Err(Error::MuUnbounded) => "unbounded".to_string(),
        Err(e) => return Err(e),
    };
    Ok(MuReport { mu })
}

impl MuReport {
    pub fn text(&self) -> String {
        format!("mu = {}\n", self.mu)
    }
}

fn outcome_str(o: Outcome) -> &'static str {
    match o {
        Outcome::Free => "free",
        Outcome::NotDetermined => "not-determined",
    }
}

fn basis_str(b: Basis) -> &'static str {
    match b {
        Basis::NotQuasiLogTerminal => "not-quasi-log-terminal",
        Basis::NonChainKind => "non-chain-kind",
        Basis::CurveDegrees => "curve-degrees",
    }
}

fn basis_text(b: Basis) -> &'static str {
    match b {
        Basis::NotQuasiLogTerminal => "the pair is not quasi-log-terminal, so D^2 > 0 suffices",
        Basis::NonChainKind => "non-chain germ: no curve-degree bound needed",
        Basis::CurveDegrees => "every curve degree reaches the threshold",
    }
}

fn obstruction_str(o: Obstruction) -> &'static str {
    match o {
        Obstruction::SquareTooSmall => "square-too-small",
        Obstruction::MissingMinDC => "missing-min-dc",
        Obstruction::CurveDegreeTooSmall => "curve-degree-too-small",
    }
}

fn obstruction_text(o: Obstruction) -> &'static str {
    match o {
        Obstruction::SquareTooSmall => "D^2 does not strictly exceed (1 - mu)^2 delta_y",
        Obstruction::MissingMinDC => "chain-type germ needs min D.C, which was not supplied",
        Obstruction::CurveDegreeTooSmall => {
            "some curve degree falls below (1 - mu) delta_y / 2"
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FreenessReport {
    pub system: &'static str,
    pub outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<&'static str>,
    pub kind: String,
    pub quasi_log_terminal: bool,
    /// Absent exactly when mu is unbounded (then the pair is not qlt).
    pub mu: Option<String>,
    pub delta_y: String,
    pub square_threshold: String,
    pub degree_threshold: String,
    pub d_squared: String,
    pub min_dc: Option<String>,
    pub d_components: usize,
    pub notes: Vec<&'static str>,
}

pub fn freeness(v: &Verdict, d_components: usize) -> FreenessReport {
    FreenessReport {
        system: v.system,
        outcome: outcome_str(v.outcome),
        basis: v.basis.map(basis_str),
        obstruction: v.obstruction.map(obstruction_str),
        kind: v.kind.class.to_string(),
        quasi_log_terminal: v.qlt,
        mu: v.mu.as_ref().map(rat_str),
        delta_y: rat_str(&v.delta_y),
        square_threshold: rat_str(&v.square_threshold),
        degree_threshold: rat_str(&v.degree_threshold),
        d_squared: rat_str(&v.d_squared),
        min_dc: v.min_dc.as_ref().map(rat_str),
        d_components,
        notes: v.notes.clone(),
    }
}

impl FreenessReport {
    pub fn text(&self, v: &Verdict) -> String {
        let mut out = String::new();
        out.push_str(&format!("system: {}\n", self.system));
        match (v.basis, v.obstruction) {
            (Some(b), _) => {
                out.push_str(&format!("verdict: {} ({})\n", self.outcome, basis_text(b)))
            }
            (_, Some(o)) => out.push_str(&format!(
                "verdict: {} ({})\n",
                self.outcome,
                obstruction_text(o)
            )),
            _ => out.push_str(&format!("verdict: {}\n", self.outcome)),
        }
        out.push_str(&format!("kind: {}\n", self.kind));
        out.push_str(&format!(
            "quasi-log-terminal: {}\n",
            yes_no(self.quasi_log_terminal)
        ));
        match &self.mu {
            Some(m) => out.push_str(&format!("mu = {m}\n")),
            None => out.push_str("mu = unbounded\n"),
        }
        out.push_str(&format!("delta_y = {}\n", self.delta_y));
        out.push_str(&format!(
            "thresholds: D^2 > {}, D.C >= {}\n",
            self.square_threshold, self.degree_threshold
        ));
        let dc = self
            .min_dc
            .clone()
            .unwrap_or_else(|| "(not supplied)".to_string());
        out.push_str(&format!(
            "given: D^2 = {}, min D.C = {}\n",
            self.d_squared, dc
        ));
        if self.d_components > 0 {
            out.push_str(&format!(
                "d_components: {} curve(s) recorded, not used by the test\n",
                self.d_components
            ));
        }
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct CheckJson {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SuiteJson {
    pub suite: &'static str,
    pub trials: u64,
    pub seed: u64,
    pub all_pass: bool,
    pub checks: Vec<CheckJson>,
}

pub fn suite(report: &SuiteReport) -> SuiteJson {
    SuiteJson {
        suite: report.suite,
        trials: report.trials,
        seed: report.seed,
        all_pass: report.all_pass(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckJson {
                name: c.name,
                cases: c.cases,
                failures: c.failures,
                first_failure: c.first_failure.clone(),
            })
            .collect(),
    }
}

impl SuiteJson {
    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite: {} (trials {}, seed {})\n",
            self.suite, self.trials, self.seed
        ));
        for c in &self.checks {
            if c.failures == 0 {
                out.push_str(&format!("[pass] {} ({} cases)\n", c.name, c.cases));
            } else {
                out.push_str(&format!(
                    "[FAIL] {} ({} cases, {} failed)\n",
                    c.name, c.cases, c.failures
                ));
                if let Some(first) = &c.first_failure {
                    out.push_str(&format!("       first: {first}\n"));
                }
            }
        }
        let failures: u64 = self.checks.iter().map(|c| c.failures).sum();
        out.push_str(&format!(
            "result: {} ({} checks, {} failures)\n",
            if self.all_pass { "pass" } else { "FAIL" },
            self.checks.len(),
            failures
        ));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ValueJson {
    pub id: String,
    /// Table prediction at this row's x.
    pub expected: String,
    /// Exact solver value.
    pub got: String,
}

#[derive(Debug, Serialize)]
pub struct CellJson {
    pub row: u8,
    pub m: u32,
    pub x: i64,
    /// "pass" | "skipped" | "fail".
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub values: Vec<ValueJson>,
}

#[derive(Debug, Serialize)]
pub struct AppendixJson {
    pub suite: &'static str,
    pub m_lo: u32,
    pub m_hi: u32,
    pub all_pass: bool,
    pub convention: &'static str,
    pub row6_reading: &'static str,
    pub cells: Vec<CellJson>,
}

pub fn appendix(report: &AppendixReport) -> AppendixJson {
    let cells = report
        .cells
        .iter()
        .map(|c| {
            let (status, detail) = match &c.status {
                CellStatus::Pass => ("pass", None),
                CellStatus::Skipped(reason) => ("skipped", Some(reason.clone())),
                CellStatus::Fail { first_mismatch, multiset_ok } => (
                    "fail",
                    Some(format!(
                        "{first_mismatch} (value multisets {})",
                        if *multiset_ok { "agree" } else { "differ" }
                    )),
                ),
            };
            CellJson {
                row: c.row,
                m: c.m,
                x: c.x,
                status,
                detail,
                values: c
                    .checks
                    .iter()
                    .map(|v| ValueJson {
                        id: v.id.clone(),
                        expected: rat_str(&v.expected),
                        got: rat_str(&v.got),
                    })
                    .collect(),
            }
        })
        .collect();
    AppendixJson {
        suite: "appendix",
        m_lo: report.m_lo,
        m_hi: report.m_hi,
        all_pass: report.all_pass(),
        convention: report.convention,
        row6_reading: report.row6_reading,
        cells,
    }
}

impl AppendixJson {
    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite: appendix (m in {}..{})\n",
            self.m_lo, self.m_hi
        ));
        out.push_str(&format!("convention: {}\n", self.convention));
        out.push_str(&format!("row 6 reading: {}\n", self.row6_reading));
        let mut skipped = 0usize;
        let mut failed = 0usize;
        for c in &self.cells {
            match c.status {
                "pass" => {
                    out.push_str(&format!("row {:>2}  m {:>2}  x {:>4}: pass\n", c.row, c.m, c.x))
                }
                "skipped" => {
                    skipped += 1;
                    out.push_str(&format!(
                        "row {:>2}  m {:>2}  x {:>4}: skipped ({})\n",
                        c.row,
                        c.m,
                        c.x,
                        c.detail.as_deref().unwrap_or("")
                    ));
                }
                _ => {
                    failed += 1;
                    out.push_str(&format!(
                        "row {:>2}  m {:>2}  x {:>4}: FAIL ({})\n",
                        c.row,
                        c.m,
                        c.x,
                        c.detail.as_deref().unwrap_or("")
                    ));
                }
            }
        }
        out.push_str(&format!(
            "result: {} ({} cells, {} failed, {} skipped)\n",
            if self.all_pass { "pass" } else { "FAIL" },
            self.cells.len(),
            failed,
            skipped
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use germs::rat::rat;

    #[test]
    fn rationals_render_as_integers_or_fractions() {
        assert_eq!(rat_str(&rat(4, 2)), "2");
        assert_eq!(rat_str(&rat(-4, 3)), "-4/3");
        assert_eq!(rat_str(&rat(0, 5)), "0");
    }

    #[test]
    fn invariants_text_lists_each_vertex_once() {
        let g = DualGraph::chain(&[2, 3, 2]).unwrap();
        let rep = invariants(&g, &BoundaryData::empty()).unwrap();
        let text = rep.text();
        for line in ["kind: A_3 (weights 2 3 2)", "delta_y = ", "mu = 0"] {
            assert!(text.contains(line), "missing {line:?} in:\n{text}");
        }
        assert_eq!(rep.vertices.len(), 3);
        // header + 3 vertices
        assert_eq!(
            text.lines().filter(|l| l.starts_with(char::is_numeric)).count(),
            3
        );
    }

    #[test]
    fn appendix_json_marks_skips() {
        // m = 1 is never a valid center weight, so every cell skips.
        let rep = appendix(&germs::etypes::verify_appendix(1, 1));
        assert!(rep.all_pass);
        assert_eq!(rep.cells.len(), 15);
        assert!(rep.cells.iter().all(|c| c.status == "skipped"));
        let text = rep.text();
        assert!(text.contains("15 cells, 0 failed, 15 skipped"), "{text}");
    }
}
