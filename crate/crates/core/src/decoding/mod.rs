//! Maximal bifix decoding, verification harnesses and S-adic sequences.

mod harness;
mod sadic;

pub use harness::{
    degree_multiplicativity, run_checks, verify_group_morphism_props, verify_main_theorem, CheckResult, DegreeReport,
    HarnessReport, CHECK_NAMES,
};
pub use sadic::{
    exact_tame_steps, primitivity_of_sequence, sadic_extract, sadic_replay, SadicSequence, SadicStep, SadicStepJson,
    SequencePrimitivity,
};

use crate::codes::{is_bifix_code, is_s_maximal_bifix, preimage_set, CodingMorphism};
use crate::error::{Error, Result};
use crate::words::{FactorSet, Source};

/// `T = f⁻¹(S)` for a coding morphism of an S-maximal bifix code.
#[derive(Clone, Debug)]
pub struct DecodingJob {
    source: FactorSet,
    coding: CodingMorphism,
}

impl DecodingJob {
    pub fn new(source: FactorSet, coding: CodingMorphism) -> Result<Self> {
        let z = coding.code();
        if !is_bifix_code(z.words()) {
            return Err(Error::NotBifixCode);
        }
        if source.depth() < z.max_len() {
            return Err(Error::InsufficientDepth { needed: z.max_len(), have: source.depth() });
        }
        if !is_s_maximal_bifix(z.words(), &source)? {
            return Err(Error::NotSMaximal(z.format_words().join(", ")));
        }
        Ok(DecodingJob { source, coding })
    }

    pub fn source(&self) -> &FactorSet {
        &self.source
    }

    pub fn coding(&self) -> &CodingMorphism {
        &self.coding
    }

    /// Depth to which the decoded set is exact.
    pub fn target_depth(&self) -> usize {
        self.source.depth() / self.coding.max_image_len()
    }
}

/// All `w` over `B` with `f(w)` in the source, to the job's target depth.
pub fn max_bifix_decode(job: &DecodingJob) -> Result<FactorSet> {
    let t = preimage_set(&job.source, &job.coding)?;
    let label = format!("{} by {}", job.source.source(), job.coding.morphism());
    Ok(t.with_source(Source::Decoded(label)))
}
