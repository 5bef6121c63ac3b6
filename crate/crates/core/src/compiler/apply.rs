use super::compile::ReductionPipeline;
use crate::error::{Error, Result};
use crate::oracle::{oracle_solve, OracleAnswer};
use crate::problem::{verify_certificate, Certificate, ProblemInstance};
use crate::reductions::{Graph, Stage};

/// Runs every step on `graph`. With a 3-colouring, a certificate for the
/// output instance is carried along.
pub fn apply_pipeline(
    pipeline: &ReductionPipeline,
    graph: &Graph,
    coloring: Option<&[usize]>,
) -> Result<(ProblemInstance, Option<Certificate>)> {
    if let Some(c) = coloring {
        if !graph.is_proper_coloring(c, 3) {
            return Err(Error::Precondition("not a proper 3-colouring of the graph".into()));
        }
    }
    let mut stage = Stage::Graph { graph: graph.clone(), coloring: coloring.map(<[usize]>::to_vec) };
    for step in &pipeline.steps {
        stage = step.apply(stage)?;
    }
    match stage {
        Stage::Instance { inst, cert } if inst.group() == &pipeline.group => Ok((inst, cert)),
        Stage::Instance { inst, .. } => Err(Error::Internal(format!(
            "pipeline ends over {}, target is {}",
            inst.group(),
            pipeline.group
        ))),
        Stage::Graph { .. } => Err(Error::Internal("pipeline never leaves the graph stage".into())),
    }
}

/// Result of a self-check that did not find an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelfCheck {
    Passed,
    /// The oracle ran out of budget on the named graph.
    BudgetExceeded(&'static str),
}

/// Compiles `K3` (with a colouring) and `K4` through the pipeline and checks
/// the answers with the oracle, and the `K3` certificate directly.
pub fn selfcheck(pipeline: &ReductionPipeline, budget: u64) -> Result<SelfCheck> {
    if let Some(c) = pipeline.verify_trace()? {
        return Err(Error::Internal(format!("trace claim fails on replay: {c:?}")));
    }
    let s = &pipeline.subset;
    let (inst, cert) = apply_pipeline(pipeline, &Graph::complete(3), Some(&[1, 2, 3]))?;
    let cert = cert.ok_or_else(|| Error::Internal("no certificate threaded for K3".into()))?;
    if !verify_certificate(&inst, s, &cert)? {
        return Err(Error::Internal("threaded K3 certificate does not verify".into()));
    }
    if pipeline.variant == super::Variant::Pi && !inst.is_pi() {
        return Err(Error::Internal("subgroup pipeline produced a nonzero x*".into()));
    }
    match oracle_solve(&inst, s, budget)? {
        OracleAnswer::Yes(_) => {}
        OracleAnswer::No => return Err(Error::Internal("oracle rejects the K3 instance".into())),
        OracleAnswer::BudgetExceeded => return Ok(SelfCheck::BudgetExceeded("K3")),
    }
    let (inst, _) = apply_pipeline(pipeline, &Graph::complete(4), None)?;
    match oracle_solve(&inst, s, budget)? {
        OracleAnswer::No => Ok(SelfCheck::Passed),
        OracleAnswer::Yes(_) => Err(Error::Internal("oracle accepts the K4 instance".into())),
        OracleAnswer::BudgetExceeded => Ok(SelfCheck::BudgetExceeded("K4")),
    }
}
