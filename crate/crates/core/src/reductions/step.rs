use super::gadgets::{
    gadget_coloring_full, gadget_coloring_full_certificate, gadget_s01, gadget_s01_certificate,
    kcol_extend_coloring, kcol_from_3col,
};
use super::graph::Graph;
use super::transforms::{divideout_lift, map_instance, p_from_pi, pi_from_p, transform_double, translate_instance};
use crate::abelian::{quotient_group, FiniteAbelianGroup, GroupElement, Homomorphism, SubgroupGens};
use crate::error::{Error, Result};
use crate::problem::{Certificate, ProblemInstance};

/// One replayable stage of a reduction pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStep {
    /// Graph to graph: pad for `k`-colourability.
    KColFrom3Col { k: usize },
    /// Graph to instance over `Z/n` for `S = {0, 1}`.
    GadgetS01 { n: i64 },
    /// Graph to instance over `group` for `S = G ∖ {0}`.
    GadgetColoringFull { group: FiniteAbelianGroup },
    Translate { group: FiniteAbelianGroup, g: GroupElement },
    MapThrough { hom: Homomorphism },
    /// Lift from `G / kernel` to `G`; the quotient is recomputed on replay.
    DivideOutLift { kernel: SubgroupGens },
    TransformDouble { c: Homomorphism, g: GroupElement },
    PFromPi,
    PiFromP { group: FiniteAbelianGroup, order: Vec<GroupElement> },
}

/// Data flowing through a pipeline, with an optional witness alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage {
    Graph { graph: Graph, coloring: Option<Vec<usize>> },
    Instance { inst: ProblemInstance, cert: Option<Certificate> },
}

impl ReductionStep {
    pub fn name(&self) -> &'static str {
        match self {
            ReductionStep::KColFrom3Col { .. } => "kcol-from-3col",
            ReductionStep::GadgetS01 { .. } => "gadget-s01",
            ReductionStep::GadgetColoringFull { .. } => "gadget-coloring-full",
            ReductionStep::Translate { .. } => "translate",
            ReductionStep::MapThrough { .. } => "map-through",
            ReductionStep::DivideOutLift { .. } => "divide-out-lift",
            ReductionStep::TransformDouble { .. } => "transform-double",
            ReductionStep::PFromPi => "p-from-pi",
            ReductionStep::PiFromP { .. } => "pi-from-p",
        }
    }

    /// True for steps that consume a graph.
    pub fn takes_graph(&self) -> bool {
        matches!(
            self,
            ReductionStep::KColFrom3Col { .. } | ReductionStep::GadgetS01 { .. } | ReductionStep::GadgetColoringFull { .. }
        )
    }

    /// The group of the instances this step produces, if it produces any.
    pub fn output_group(&self) -> Result<Option<FiniteAbelianGroup>> {
        Ok(match self {
            ReductionStep::KColFrom3Col { .. } => None,
            ReductionStep::GadgetS01 { n } => Some(FiniteAbelianGroup::cyclic(*n)?),
            ReductionStep::GadgetColoringFull { group }
            | ReductionStep::Translate { group, .. }
            | ReductionStep::PiFromP { group, .. } => Some(group.clone()),
            ReductionStep::MapThrough { hom } => Some(hom.target().clone()),
            ReductionStep::DivideOutLift { kernel } => Some(kernel.ambient().clone()),
            ReductionStep::TransformDouble { c, .. } => Some(c.target().clone()),
            ReductionStep::PFromPi => None,
        })
    }

    pub fn apply(&self, stage: Stage) -> Result<Stage> {
        match stage {
            Stage::Graph { graph, coloring } => self.apply_graph(&graph, coloring),
            Stage::Instance { inst, cert } => self.apply_instance(&inst, cert),
        }
    }

    fn apply_graph(&self, graph: &Graph, coloring: Option<Vec<usize>>) -> Result<Stage> {
        match self {
            ReductionStep::KColFrom3Col { k } => {
                if let Some(c) = &coloring {
                    if !graph.is_proper_coloring(c, 3) {
                        return Err(Error::Precondition("not a proper 3-colouring".into()));
                    }
                }
                Ok(Stage::Graph {
                    graph: kcol_from_3col(graph, *k)?,
                    coloring: coloring.map(|c| kcol_extend_coloring(&c, *k)),
                })
            }
            ReductionStep::GadgetS01 { n } => {
                let (inst, _) = gadget_s01(graph, &FiniteAbelianGroup::cyclic(*n)?)?;
                let cert = coloring.map(|c| gadget_s01_certificate(graph, &c)).transpose()?;
                Ok(Stage::Instance { inst, cert })
            }
            ReductionStep::GadgetColoringFull { group } => {
                let inst = gadget_coloring_full(graph, group)?;
                let cert = coloring.map(|c| gadget_coloring_full_certificate(graph, group, &c)).transpose()?;
                Ok(Stage::Instance { inst, cert })
            }
            _ => Err(Error::Precondition(format!("step {} expects an instance, got a graph", self.name()))),
        }
    }

    fn apply_instance(&self, inst: &ProblemInstance, cert: Option<Certificate>) -> Result<Stage> {
        let (out, cert) = match self {
            ReductionStep::Translate { group, g } => {
                if inst.group() != group {
                    return Err(Error::AmbientMismatch(format!(
                        "translate expects an instance over {group}, got {}",
                        inst.group()
                    )));
                }
                (translate_instance(inst, g)?, cert)
            }
            ReductionStep::MapThrough { hom } => (map_instance(inst, hom)?, cert),
            ReductionStep::DivideOutLift { kernel } => {
                let q = quotient_group(kernel.ambient(), kernel)?;
                let out = divideout_lift(inst, &q)?;
                let extra = out.hgens().len() - inst.hgens().len();
                let cert = cert.map(|mut c| {
                    c.0.extend(std::iter::repeat(0).take(extra));
                    c
                });
                (out, cert)
            }
            ReductionStep::TransformDouble { c, g } => (transform_double(inst, c, g)?, cert),
            ReductionStep::PFromPi => (p_from_pi(inst)?, cert),
            ReductionStep::PiFromP { group, order } => {
                if inst.group() != group {
                    return Err(Error::AmbientMismatch(format!(
                        "pi-from-p expects an instance over {group}, got {}",
                        inst.group()
                    )));
                }
                let cert = cert.map(|c| {
                    let mut v = vec![1];
                    v.extend(c.0);
                    Certificate(v)
                });
                (pi_from_p(inst, order)?, cert)
            }
            _ => return Err(Error::Precondition(format!("step {} expects a graph, got an instance", self.name()))),
        };
        let cert = cert.map(|c| out.normalize(&c));
        Ok(Stage::Instance { inst: out, cert })
    }
}
