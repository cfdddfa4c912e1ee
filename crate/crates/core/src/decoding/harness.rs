use std::collections::BTreeSet;

use serde::Serialize;

use super::{max_bifix_decode, DecodingJob};
use crate::codes::{decompose_over, kernel, preimage_set, s_degree, CodeSet, Decomposition, GroupMorphism};
use crate::error::{Error, Result};
use crate::returns::{return_words, uniform_recurrence_check, UniformRecurrenceVerdict};
use crate::words::{
    is_acyclic_set, is_recurrent_desk, is_tree_set, Alphabet, ConditionVerdict, FactorSet, RecurrenceVerdict, Word,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult { name: name.to_string(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub subject: String,
    pub checks: Vec<CheckResult>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub(crate) fn tree_check(name: &str, s: &FactorSet, up_to: usize) -> Result<CheckResult> {
    Ok(match is_tree_set(s, up_to)? {
        ConditionVerdict::Holds { up_to } => CheckResult::new(name, true, format!("tree up to length {up_to}")),
        ConditionVerdict::FailsAt { word, defect } => {
            CheckResult::new(name, false, format!("G({}) has defect {defect:?}", s.format(&word)))
        }
    })
}

pub(crate) fn recurrence_check(s: &FactorSet, up_to: usize) -> Result<CheckResult> {
    Ok(match is_recurrent_desk(s, up_to)? {
        RecurrenceVerdict::RecurrentUpTo(n) => CheckResult::new("recurrent", true, format!("recurrent up to {n}")),
        RecurrenceVerdict::NotRecurrentWithinDepth { u, w, search_depth } => CheckResult::new(
            "recurrent",
            false,
            format!("no v with {}·v·{} within depth {search_depth}", s.format(&u), s.format(&w)),
        ),
    })
}

pub(crate) fn uniform_check(s: &FactorSet, up_to: usize) -> Result<CheckResult> {
    Ok(match uniform_recurrence_check(s, up_to)? {
        UniformRecurrenceVerdict::UniformlyRecurrentUpTo(n) => {
            CheckResult::new("uniformly recurrent", true, format!("return certificates up to {n}"))
        }
        UniformRecurrenceVerdict::Blocked { reason, .. } => CheckResult::new("uniformly recurrent", false, reason),
    })
}

pub(crate) fn complexity_check(s: &FactorSet, slope: usize) -> Result<CheckResult> {
    for n in 0..=s.depth() {
        let p = s.complexity(n)?;
        if p != slope * n + 1 {
            return Ok(CheckResult::new("complexity", false, format!("p_{n} = {p}, expected {}", slope * n + 1)));
        }
    }
    Ok(CheckResult::new("complexity", true, format!("p_n = {slope}n + 1 for n <= {}", s.depth())))
}

pub const CHECK_NAMES: [&str; 6] = ["tree", "acyclic", "complexity", "recurrent", "uniform", "certified"];

/// Named checks on one set; `bound` caps the word lengths tested.
pub fn run_checks(s: &FactorSet, names: &[&str], bound: usize) -> Result<HarnessReport> {
    let mut checks = Vec::with_capacity(names.len());
    for &name in names {
        checks.push(match name {
            "tree" => tree_check("tree", s, bound.min(s.depth().saturating_sub(2)))?,
            "acyclic" => {
                let up_to = bound.min(s.depth().saturating_sub(2));
                match is_acyclic_set(s, up_to)? {
                    ConditionVerdict::Holds { .. } => {
                        CheckResult::new("acyclic", true, format!("acyclic up to length {up_to}"))
                    }
                    ConditionVerdict::FailsAt { word, .. } => {
                        CheckResult::new("acyclic", false, format!("G({}) has a cycle", s.format(&word)))
                    }
                }
            }
            "complexity" => complexity_check(s, s.letters_present().len().saturating_sub(1))?,
            "recurrent" => recurrence_check(s, bound.min(s.depth() / 2))?,
            "uniform" => uniform_check(s, bound.min(s.depth() / 2))?,
            "certified" => CheckResult::new("certified", s.is_certified(), format!("{:?}", s.completeness())),
            other => return Err(Error::Parse(format!("unknown check `{other}`; known: {}", CHECK_NAMES.join(", ")))),
        });
    }
    Ok(HarnessReport { subject: s.source().to_string(), checks })
}

/// Checks on the decoded set that the closure theorem predicts, after
/// the same checks on the source. `bound` caps every word length tested.
pub fn verify_main_theorem(job: &DecodingJob, bound: usize) -> Result<(FactorSet, HarnessReport)> {
    let s = job.source();
    let t = max_bifix_decode(job)?;
    let b = job.coding().source().len();
    let mut checks = vec![tree_check("source tree", s, bound.min(s.depth().saturating_sub(2)))?];
    let mut decoded = tree_check("tree", &t, bound.min(t.depth().saturating_sub(2)))?;
    decoded.detail = format!("decoded set: {}", decoded.detail);
    checks.push(decoded);
    checks.push(recurrence_check(&t, bound.min(t.depth() / 4).max(1).min(t.depth()))?);
    checks.push(uniform_check(&t, bound.min(t.depth() / 2))?);
    checks.push(complexity_check(&t, b - 1)?);
    let subject = format!("decoding by {}", job.coding().morphism());
    Ok((t, HarnessReport { subject, checks }))
}

/// `φ(S) = G` and `φ(Γ_S(w) ∪ {ε}) = G` for the sampled `w`.
pub fn verify_group_morphism_props(s: &FactorSet, phi: &GroupMorphism, samples: &[Word]) -> Result<HarnessReport> {
    if phi.alphabet() != s.alphabet() {
        return Err(Error::AlphabetMismatch("morphism and set use different alphabets".into()));
    }
    let g = phi.group();
    let image = |ws: &mut dyn Iterator<Item = &Word>| -> BTreeSet<usize> {
        ws.filter_map(|w| g.index_of(&phi.eval(w))).collect()
    };
    let whole = image(&mut s.iter());
    let mut checks = vec![CheckResult::new(
        "phi(S) = G",
        whole.len() == g.order(),
        format!("{} of {} elements", whole.len(), g.order()),
    )];
    for w in samples {
        let rd = return_words(s, w)?;
        let empty = Word::empty();
        let hit = image(&mut rd.returns.iter().chain(std::iter::once(&empty)));
        let mut detail = format!("{} of {} elements", hit.len(), g.order());
        if hit.len() < g.order() {
            detail.push_str(&format!(" within depth {}", s.depth()));
        }
        checks.push(CheckResult::new(&format!("phi(Gamma({}) + 1) = G", s.format(w)), hit.len() == g.order(), detail));
    }
    Ok(HarnessReport { subject: format!("group of order {}", g.order()), checks })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub y: Vec<String>,
    pub d_x: usize,
    pub d_z: usize,
    /// `None` when `d_Y(T)` is undefined on the truncation.
    pub d_y: Option<usize>,
    pub d_y_note: Option<String>,
    pub kernel_x: Vec<String>,
    pub kernel_z: Vec<String>,
    pub kernel_y: Vec<String>,
    pub z_divides_x: bool,
    pub product_holds: Option<bool>,
}

/// `d_X(S) = d_Y(T)·d_Z(S)` for `X = Y ∘_f Z` and `T = f⁻¹(S)`.
pub fn degree_multiplicativity(
    s: &FactorSet,
    x: &CodeSet,
    z: &CodeSet,
    names: Option<&Alphabet>,
) -> Result<DegreeReport> {
    let (y, f) = match decompose_over(x, z, names)? {
        Decomposition::Composed { y, f } => (y, f),
        Decomposition::Impossible(why) => return Err(Error::DecompositionImpossible(why)),
    };
    let t = preimage_set(s, &f)?;
    let d_x = s_degree(x.words(), s)?;
    let d_z = s_degree(z.words(), s)?;
    let fmt = |a: &Alphabet, ws: &[Word]| ws.iter().map(|w| a.format(w)).collect::<Vec<_>>();
    let (d_y, d_y_note, kernel_y) = match s_degree(y.words(), &t) {
        Ok(d) => (Some(d), None, fmt(y.alphabet(), &kernel(y.words(), &t)?)),
        Err(e) => (None, Some(e.to_string()), Vec::new()),
    };
    Ok(DegreeReport {
        y: y.format_words(),
        d_x,
        d_z,
        d_y,
        d_y_note,
        kernel_x: fmt(s.alphabet(), &kernel(x.words(), s)?),
        kernel_z: fmt(s.alphabet(), &kernel(z.words(), s)?),
        kernel_y,
        z_divides_x: d_x % d_z == 0,
        product_holds: d_y.map(|d| d * d_z == d_x),
    })
}
