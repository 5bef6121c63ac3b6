//! Answer-preserving transformations between instances, and the colouring
//! gadgets that start every hardness pipeline.

mod gadgets;
mod graph;
mod step;
mod transforms;

pub use gadgets::{
    gadget_coloring_full, gadget_coloring_full_certificate, gadget_s01, gadget_s01_certificate,
    kcol_extend_coloring, kcol_from_3col, GadgetLayout, COLORS,
};
pub use graph::Graph;
pub use step::{ReductionStep, Stage};
pub use transforms::{divideout_lift, map_instance, p_from_pi, pi_from_p, transform_double, translate_instance};
