//! Reports printed by every command, as JSON or as text.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_INTRINSIC: i32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: CommandEcho,
    pub status: String,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generating_sets: Vec<GeneratingSetReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub residues: Vec<FixedResiduesReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub timing_us: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate: Option<String>,
    pub max_enum: usize,
    pub order_cap: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub members: Vec<String>,
    /// Type name, or `non-spherical`.
    pub class: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub a: String,
    pub b: String,
    pub component: Vec<String>,
    pub component_type: String,
    pub proper: bool,
    /// `b` came from enumerating the component rather than its diagram.
    pub enumerated: bool,
    pub bdg2_holds: bool,
    /// For a failing second condition, a finite-order walk leaving both
    /// `a^inf` and `b^inf`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bdg2_witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectionReport {
    pub a: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub generator: String,
    pub intrinsic: bool,
    /// `minus_one_component`, `blow_down_generator` or `all_checks_passed`.
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason_component: Option<ComponentReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason_candidate: Option<String>,
    pub s_perp: Vec<String>,
    pub s_infinity: Vec<String>,
    pub components: Vec<ComponentReport>,
    pub candidates: Vec<CandidateReport>,
    pub rejected: Vec<RejectionReport>,
    pub certificates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonMembershipReport {
    pub parities: Vec<i8>,
    pub s_rho_is_reflection: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratingSetReport {
    /// `translation`, `twist` or `blow_down`.
    pub kind: String,
    pub provenance: String,
    pub names: Vec<String>,
    /// Each new generator as a word over the generators of `ambient`.
    pub words: Vec<String>,
    pub shapes: Vec<String>,
    /// Row-major orders of products; `inf (R1)` and `inf (R2)` name the rule
    /// certifying an infinite order, `>N` an order above the search cap.
    pub derived: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived_type: Option<String>,
    /// Diagram text of the presentation the words are written over.
    pub ambient: String,
    /// Diagram text of the new presentation, when all entries are settled.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_membership: Option<NonMembershipReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<CheckReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub name: String,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub subject: String,
    pub claim: String,
    /// `verified`, `refuted` or `skipped`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<Evidence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueReport {
    pub subset: Vec<String>,
    pub representative: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedResiduesReport {
    pub generator: String,
    pub radius: usize,
    pub residues: Vec<ResidueReport>,
    /// Sides of the wall of the generator met by those residues.
    pub sides: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.command;
        let _ = writeln!(out, "coxtool {} {}", c.name, c.file);
        if let Some(g) = &c.generator {
            let _ = writeln!(out, "generator: {g}");
        }
        if let Some(a) = &c.candidate {
            let _ = writeln!(out, "candidate: {a}");
        }
        let _ = writeln!(out, "caps: max-enum {}, order-cap {}", c.max_enum, c.order_cap);
        let _ = writeln!(out, "status: {} (exit {})", self.status, self.exit_code);
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        if let Some(v) = &self.verdict {
            render_verdict(&mut out, v);
        }
        for g in &self.generating_sets {
            render_set(&mut out, g);
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "\nchecks:");
            for k in &self.checks {
                render_check(&mut out, k, "  ");
            }
        }
        for r in &self.residues {
            let _ = writeln!(out, "\nresidues fixed by {} within radius {}: {}", r.generator, r.radius, r.residues.len());
            for x in &r.residues {
                let _ = writeln!(out, "  {{{}}} at {}", x.subset.join(", "), x.representative);
            }
            let _ = writeln!(out, "  sides met: {}", r.sides.join(", "));
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(out, "time: {} us", self.timing_us);
        out
    }
}

fn set(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn render_verdict(out: &mut String, v: &VerdictReport) {
    let _ = writeln!(out, "\n{} is {}intrinsic: {}", v.generator, if v.intrinsic { "" } else { "not " }, v.reason);
    if let Some(c) = &v.reason_component {
        let _ = writeln!(out, "  component {} of type {}", set(&c.members), c.class);
    }
    if let Some(a) = &v.reason_candidate {
        let _ = writeln!(out, "  blowing-down generator {a}");
    }
    let _ = writeln!(out, "  perp: {}", set(&v.s_perp));
    let _ = writeln!(out, "  inf: {}", set(&v.s_infinity));
    for c in &v.components {
        let _ = writeln!(out, "  component {}: {}", set(&c.members), c.class);
    }
    for c in &v.candidates {
        let _ = writeln!(
            out,
            "  candidate {} (b = {}, {} in {}): proper {}, BDG2 {}{}",
            c.a,
            c.b,
            c.component_type,
            set(&c.component),
            c.proper,
            if c.bdg2_holds { "holds" } else { "fails" },
            if c.bdg2_witness.is_empty() { String::new() } else { format!(", path {}", c.bdg2_witness.join(" ")) }
        );
    }
    for r in &v.rejected {
        let _ = writeln!(out, "  rejected {}: {}", r.a, r.reason);
    }
    let _ = writeln!(out, "  certificates:");
    for c in &v.certificates {
        let _ = writeln!(out, "    {c}");
    }
}

fn render_set(out: &mut String, g: &GeneratingSetReport) {
    let _ = writeln!(out, "\n{} ({})", g.kind, g.provenance);
    let width = g.names.iter().map(String::len).max().unwrap_or(0);
    for ((n, w), s) in g.names.iter().zip(&g.words).zip(&g.shapes) {
        let _ = writeln!(out, "  {n:width$} = {w}  [{s}]");
    }
    let _ = writeln!(out, "  derived orders:");
    let cell = g.derived.iter().flatten().map(String::len).max().unwrap_or(1).max(width);
    let _ = writeln!(out, "    {:cell$} {}", "", g.names.iter().map(|n| format!("{n:>cell$}")).collect::<Vec<_>>().join(" "));
    for (n, row) in g.names.iter().zip(&g.derived) {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>cell$}")).collect();
        let _ = writeln!(out, "    {n:cell$} {}", cells.join(" "));
    }
    if let Some(t) = &g.derived_type {
        let _ = writeln!(out, "  derived type: {t}");
    }
    if let Some(d) = &g.diagram {
        let _ = writeln!(out, "  diagram:");
        for line in d.lines() {
            let _ = writeln!(out, "    {line}");
        }
    }
    if let Some(nm) = &g.non_membership {
        let parities: Vec<String> = nm.parities.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(out, "  parities: {}", parities.join(" "));
        let _ = writeln!(out, "  s rho is a reflection: {}", nm.s_rho_is_reflection);
    }
    if let Some(k) = &g.verification {
        render_check(out, k, "  ");
    }
}

fn render_check(out: &mut String, k: &CheckReport, indent: &str) {
    let _ = write!(out, "{indent}[{}] {}: {}", k.status, k.subject, k.claim);
    if let Some(d) = &k.detail {
        let _ = write!(out, " ({d})");
    }
    let _ = writeln!(out);
    if !k.evidence.is_empty() {
        let ev: Vec<String> = k.evidence.iter().map(|e| format!("{} {}", e.name, e.value)).collect();
        let _ = writeln!(out, "{indent}    {}", ev.join(", "));
    }
}
