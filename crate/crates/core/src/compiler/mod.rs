//! Hardness pipelines: explicit reductions from 3-colourability.

mod apply;
mod claim;
mod compile;

pub use crate::classifier::find_sab;
pub use apply::{apply_pipeline, selfcheck, SelfCheck};
pub use claim::Claim;
pub use compile::{
    compile_hardness_p, compile_hardness_pi, special_case_step, CaseOutcome, ReductionPipeline, Variant,
};
