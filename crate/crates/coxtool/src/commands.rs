use std::fs;
use std::path::Path;

use coxeter_core::diagram::irreducible_components;
use coxeter_core::intrinsic::{build_context, check_bdg1, decide_intrinsic, Bdg2Outcome, Certificate, Reason};
use coxeter_core::oracle::{reflection_set, verify_coxeter_generating_set, Status};
use coxeter_core::transforms::{blow_down, diagram_twist, GeneratingSet, Provenance, Shape};
use coxeter_core::{Caps, Classification, CoxeterGroup, CoxeterMatrix, Error, Gen, GenSet};

use crate::report::{
    CandidateReport, CheckReport, ComponentReport, Evidence, FixedResiduesReport, GeneratingSetReport,
    NonMembershipReport, RejectionReport, ResidueReport, VerdictReport, EXIT_NOT_INTRINSIC, EXIT_OK,
    EXIT_REFUTED,
};
use crate::suites;

/// What a command produced, before the echo and timing are attached.
#[derive(Debug, Default)]
pub struct Outcome {
    pub status: String,
    pub exit_code: i32,
    pub verdict: Option<VerdictReport>,
    pub generating_sets: Vec<GeneratingSetReport>,
    pub checks: Vec<CheckReport>,
    pub residues: Vec<FixedResiduesReport>,
    pub notes: Vec<String>,
}

/// An input problem: unreadable file, bad diagram, bad generator or a
/// transform precondition that does not hold.
#[derive(Debug)]
pub struct InputError(pub String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

pub fn load(path: &Path) -> Result<CoxeterMatrix, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    CoxeterMatrix::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn generator(m: &CoxeterMatrix, name: &str) -> Result<Gen, InputError> {
    m.gen(name).ok_or_else(|| InputError(format!("unknown generator `{name}`")))
}

fn names(m: &CoxeterMatrix, set: GenSet) -> Vec<String> {
    m.names_of(set)
}

pub fn analyze(m: &CoxeterMatrix, s: &str, caps: &Caps) -> Result<Outcome, InputError> {
    let s = generator(m, s)?;
    let v = decide_intrinsic(m, s, caps)?;
    let mut report = VerdictReport {
        generator: m.name(s).into(),
        intrinsic: v.is_intrinsic(),
        reason: String::new(),
        reason_component: None,
        reason_candidate: None,
        s_perp: Vec::new(),
        s_infinity: Vec::new(),
        components: Vec::new(),
        candidates: Vec::new(),
        rejected: Vec::new(),
        certificates: v.describe(m),
    };
    match &v.reason {
        Reason::MinusOneComponent { component, component_type } => {
            report.reason = "minus_one_component".into();
            report.reason_component =
                Some(ComponentReport { members: names(m, *component), class: component_type.to_string() });
        }
        Reason::BlowDownGenerator(c) => {
            report.reason = "blow_down_generator".into();
            report.reason_candidate = Some(m.name(c.a).into());
        }
        Reason::AllChecksPassed => report.reason = "all_checks_passed".into(),
    }
    for c in &v.certificates {
        match c {
            Certificate::Partition { s_perp, s_infinity } => {
                report.s_perp = names(m, *s_perp);
                report.s_infinity = names(m, *s_infinity);
            }
            Certificate::Component { members, class } => {
                report.components.push(ComponentReport { members: names(m, *members), class: class.to_string() })
            }
            Certificate::Bdg1Rejected { a, reason } => {
                report.rejected.push(RejectionReport { a: m.name(*a).into(), reason: format!("{reason:?}") })
            }
            Certificate::Bdg1Accepted(c) => report.candidates.push(CandidateReport {
                a: m.name(c.a).into(),
                b: m.name(c.b).into(),
                component: names(m, c.component),
                component_type: c.component_type.to_string(),
                proper: c.proper,
                enumerated: c.enumerated,
                bdg2_holds: false,
                bdg2_witness: Vec::new(),
            }),
            Certificate::Bdg2 { a, outcome, .. } => {
                let cand = report.candidates.iter_mut().rev().find(|c| c.a == m.name(*a)).expect("BDG1 precedes BDG2");
                match outcome {
                    Bdg2Outcome::Holds(_) => cand.bdg2_holds = true,
                    Bdg2Outcome::Fails(path) => cand.bdg2_witness = path.iter().map(|&g| m.name(g).into()).collect(),
                }
            }
        }
    }
    let (status, exit_code) =
        if report.intrinsic { ("intrinsic", EXIT_OK) } else { ("not_intrinsic", EXIT_NOT_INTRINSIC) };
    Ok(Outcome { status: status.into(), exit_code, verdict: Some(report), ..Outcome::default() })
}

fn shape_text(m: &CoxeterMatrix, w: &CoxeterGroup, shape: &Shape, s: Gen) -> String {
    match shape {
        Shape::Generator(g) => format!("generator {}", m.name(*g)),
        Shape::STimes(r) => format!("{} times {}", m.name(s), w.format(r)),
        Shape::Conjugate { base, by } => format!("{} conjugated by {}", m.name(*base), w.format(by)),
    }
}

fn provenance_of(p: &Provenance) -> (&'static str, Gen) {
    match p {
        Provenance::STranslation { s, .. } => ("translation", *s),
        Provenance::DiagramTwist { s, .. } => ("twist", *s),
        Provenance::BlowDown { s, .. } => ("blow_down", *s),
    }
}

fn provenance_text(m: &CoxeterMatrix, p: &Provenance) -> String {
    match p {
        Provenance::STranslation { s, component } => {
            format!("s-translation of {} by the component {{{}}}", m.name(*s), names(m, *component).join(", "))
        }
        Provenance::DiagramTwist { s, a, b, twisted } => format!(
            "diagram twist for {} with candidate {} (b = {}), conjugating {{{}}}",
            m.name(*s),
            m.name(*a),
            m.name(*b),
            names(m, *twisted).join(", ")
        ),
        Provenance::BlowDown { s, a, b, component } => format!(
            "blow-down of {} with candidate {} (b = {}) in {{{}}}",
            m.name(*s),
            m.name(*a),
            m.name(*b),
            names(m, *component).join(", ")
        ),
    }
}

pub fn set_report(r: &GeneratingSet) -> GeneratingSetReport {
    let m = &r.ambient;
    let w = CoxeterGroup::new(m.clone());
    let (kind, s) = provenance_of(&r.provenance);
    let n = r.len();
    let derived = (0..n).map(|i| (0..n).map(|j| r.entry(i, j).to_string()).collect()).collect();
    let matrix = r.to_matrix();
    let derived_type = matrix.as_ref().and_then(|d| {
        let parts = irreducible_components(d, d.all()).ok()?;
        let types: Vec<String> = parts.components.iter().map(|c| c.class.to_string()).collect();
        Some(types.join(" x "))
    });
    GeneratingSetReport {
        kind: kind.into(),
        provenance: provenance_text(m, &r.provenance),
        names: r.names.clone(),
        words: r.words.iter().map(|x| w.format(x)).collect(),
        shapes: r.shapes.iter().map(|x| shape_text(m, &w, x, s)).collect(),
        derived,
        derived_type,
        ambient: m.to_diagram_text(),
        diagram: matrix.map(|d| d.to_diagram_text()),
        non_membership: r
            .non_membership
            .as_ref()
            .map(|x| NonMembershipReport { parities: x.parities.clone(), s_rho_is_reflection: x.s_rho_is_reflection }),
        verification: None,
    }
}

fn candidate(m: &CoxeterMatrix, s: Gen, a: &str, caps: &Caps) -> Result<coxeter_core::intrinsic::BlowDownCandidate, InputError> {
    let a = generator(m, a)?;
    let ctx = build_context(m, s)?;
    check_bdg1(&ctx, a, caps).map_err(|r| InputError(format!("`{}` fails the first blowing-down condition: {r:?}", m.name(a))))
}

pub fn blowdown(m: &CoxeterMatrix, s: &str, a: &str, verify: bool, caps: &Caps) -> Result<Outcome, InputError> {
    let s = generator(m, s)?;
    let cand = candidate(m, s, a, caps)?;
    let r = blow_down(m, s, &cand, caps).map_err(|e| match e {
        Error::CandidateNotProper => InputError(format!(
            "candidate `{}` is not proper; run `coxtool twist` first and blow down in the twisted diagram",
            m.name(cand.a)
        )),
        e => e.into(),
    })?;
    let mut set = set_report(&r);
    let mut out = Outcome { status: "ok".into(), exit_code: EXIT_OK, ..Outcome::default() };
    if verify {
        let (check, s_check) = verify_set(m, s, &r, caps);
        if check.status == "refuted" || s_check.status == "refuted" {
            out.status = "refuted".into();
            out.exit_code = EXIT_REFUTED;
        }
        set.verification = Some(check);
        out.checks.push(s_check);
    }
    out.generating_sets.push(set);
    Ok(out)
}

/// Enumeration checks of a blown-down set: it is a Coxeter generating set of
/// the derived type, and `s` is not conjugate to any of its members.
fn verify_set(m: &CoxeterMatrix, s: Gen, r: &GeneratingSet, caps: &Caps) -> (CheckReport, CheckReport) {
    let subject = "generating set";
    let claim = "words form a Coxeter generating set with the derived matrix";
    let s_claim = format!("{} is not a reflection for the new generating set", m.name(s));
    let skip = |claim: &str, reason: String| CheckReport {
        subject: subject.into(),
        claim: claim.into(),
        status: "skipped".into(),
        detail: Some(reason),
        evidence: Vec::new(),
    };
    let w = CoxeterGroup::new(m.clone());
    if let Err(e) = w.enumerate(m.all(), caps.max_enum) {
        let reason = format!("ambient group not enumerated: {e}");
        return (skip(claim, reason.clone()), skip(&s_claim, reason));
    }
    let Some(expected) = r.to_matrix() else {
        let reason = "some derived entries are above the order cap".to_string();
        return (skip(claim, reason.clone()), skip(&s_claim, reason));
    };
    let first = match verify_coxeter_generating_set(&w, &r.words, &expected, caps.max_enum) {
        Ok(rep) => {
            let (status, detail) = match rep.status {
                Status::Verified => ("verified", None),
                Status::Refuted { witness } => ("refuted", Some(witness)),
                Status::Skipped { reason } => ("skipped", Some(reason)),
            };
            CheckReport {
                subject: subject.into(),
                claim: claim.into(),
                status: status.into(),
                detail,
                evidence: rep.evidence.into_iter().map(|(name, value)| Evidence { name, value }).collect(),
            }
        }
        Err(e) => skip(claim, e.to_string()),
    };
    // conjugates of the new generators, as a reflection set of the new system
    let second = match conjugates(&w, &r.words, caps.max_enum) {
        Ok(refl) => {
            let sx = w.generator(s).expect("s is a generator");
            let status = if refl.contains(&sx) { "refuted" } else { "verified" };
            CheckReport {
                subject: subject.into(),
                claim: s_claim,
                status: status.into(),
                detail: None,
                evidence: vec![
                    Evidence { name: "new reflections".into(), value: refl.len() as u64 },
                    Evidence {
                        name: "old reflections".into(),
                        value: reflection_set(&w, caps.max_enum).map_or(0, |x| x.len() as u64),
                    },
                ],
            }
        }
        Err(e) => skip(&s_claim, e.to_string()),
    };
    (first, second)
}

fn conjugates(
    w: &CoxeterGroup,
    words: &[coxeter_core::Element],
    cap: usize,
) -> Result<std::collections::BTreeSet<coxeter_core::Element>, Error> {
    let e = w.enumerate(w.matrix().all(), cap)?;
    let mut out = std::collections::BTreeSet::new();
    for g in e.elements() {
        for x in words {
            out.insert(w.conjugate(x, &g)?);
        }
    }
    Ok(out)
}

pub fn twist(m: &CoxeterMatrix, s: &str, a: &str, caps: &Caps) -> Result<Outcome, InputError> {
    let s = generator(m, s)?;
    let cand = candidate(m, s, a, caps)?;
    let (twisted, r) = diagram_twist(m, s, &cand, caps)?;
    let mut set = set_report(&r);
    set.diagram = Some(twisted.to_diagram_text());
    let mut out = Outcome { status: "ok".into(), exit_code: EXIT_OK, ..Outcome::default() };
    if cand.proper {
        out.notes.push(format!("candidate `{}` is already proper; the twist is the identity", m.name(cand.a)));
    }
    out.generating_sets.push(set);
    Ok(out)
}

pub fn verify(m: &CoxeterMatrix, caps: &Caps) -> Result<Outcome, InputError> {
    let parts = irreducible_components(m, m.all())?;
    let mut out = Outcome { status: "ok".into(), exit_code: EXIT_OK, ..Outcome::default() };
    for c in &parts.components {
        let subject = format!("{{{}}}", names(m, c.members).join(", "));
        match c.class {
            Classification::Spherical(t) => {
                out.checks.extend(suites::table_checks(m, c.members, t, &subject));
                out.checks.extend(suites::enumeration_checks(m, c.members, t, caps, &subject));
            }
            Classification::NonSpherical => {
                out.notes.push(format!("{subject} is not spherical; no suite applies"));
            }
        }
    }
    if out.checks.iter().any(|k| k.status == "refuted") {
        out.status = "refuted".into();
        out.exit_code = EXIT_REFUTED;
    }
    Ok(out)
}

pub fn complex(m: &CoxeterMatrix, radius: usize, caps: &Caps) -> Result<Outcome, InputError> {
    let w = CoxeterGroup::new(m.clone());
    let mut out = Outcome { status: "ok".into(), exit_code: EXIT_OK, ..Outcome::default() };
    for g in m.gens() {
        let x = w.generator(g)?;
        let f = coxeter_core::complex::spherical_residues_fixed_by(&w, std::slice::from_ref(&x), radius, Some(&x), caps.max_enum)?;
        out.residues.push(FixedResiduesReport {
            generator: m.name(g).into(),
            radius,
            residues: f
                .residues
                .iter()
                .map(|r| ResidueReport { subset: names(m, r.subset), representative: w.format(&r.representative) })
                .collect(),
            sides: f.sides.unwrap_or_default().iter().map(|s| format!("{s:?}").to_lowercase()).collect(),
        });
    }
    Ok(out)
}

