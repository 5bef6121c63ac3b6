//! Finite abelian groups presented as products of cyclic groups.

mod congruence;
mod group;
mod hom;
mod matrix;
mod quotient;
mod snf;
mod subgroup;

pub use congruence::{congruence_kernel, solve_linear_congruence, solve_over_integers};
pub use group::{FiniteAbelianGroup, GroupElement};
pub use hom::Homomorphism;
pub use matrix::IntMatrix;
pub use quotient::{quotient_group, Quotient};
pub use snf::{smith_normal_form, Snf};
pub use subgroup::{
    kernel_of_hom, subgroup_enumerate, subgroup_intersect, subgroup_membership, SubgroupGens,
};


pub(crate) use subgroup::{intersect_coeffs, member_coeffs};
