use crate::abelian::GroupElement;
use crate::classifier::{is_coset, theta};
use crate::error::Result;
use crate::problem::SubsetS;

/// A structural fact checked while compiling. Every claim can be checked
/// again from its own data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    /// Whether `set` is a coset.
    Coset { set: SubsetS, holds: bool },
    Member { set: SubsetS, x: GroupElement, holds: bool },
    Subset { small: SubsetS, big: SubsetS },
    /// `set + by = set`.
    Periodic { set: SubsetS, by: GroupElement },
    SetEq { left: SubsetS, right: SubsetS },
    /// `g, g+a, g+b ∈ set` and `g+a+b ∉ set`.
    Pattern { set: SubsetS, g: GroupElement, a: GroupElement, b: GroupElement },
    ThetaFixed { set: SubsetS },
    /// `|G| + |S|` before and after a recursive call.
    Measure { before: u64, after: u64 },
}

impl Claim {
    pub fn kind(&self) -> &'static str {
        match self {
            Claim::Coset { .. } => "coset",
            Claim::Member { .. } => "member",
            Claim::Subset { .. } => "subset",
            Claim::Periodic { .. } => "periodic",
            Claim::SetEq { .. } => "set-eq",
            Claim::Pattern { .. } => "pattern",
            Claim::ThetaFixed { .. } => "theta-fixed",
            Claim::Measure { .. } => "measure",
        }
    }

    pub fn verify(&self) -> Result<bool> {
        Ok(match self {
            Claim::Coset { set, holds } => is_coset(set)?.is_some() == *holds,
            Claim::Member { set, x, holds } => set.contains(x) == *holds,
            Claim::Subset { small, big } => small.group() == big.group() && small.is_subset_of(big),
            Claim::Periodic { set, by } => set.group().contains(by) && set.translate(by) == *set,
            Claim::SetEq { left, right } => left == right,
            Claim::Pattern { set, g, a, b } => pattern_holds(set, g, a, b),
            Claim::ThetaFixed { set } => theta(set) == *set,
            Claim::Measure { before, after } => after < before,
        })
    }
}

pub(crate) fn pattern_holds(s: &SubsetS, g: &GroupElement, a: &GroupElement, b: &GroupElement) -> bool {
    let grp = s.group();
    if !(grp.contains(g) && grp.contains(a) && grp.contains(b)) {
        return false;
    }
    let ga = grp.add(g, a);
    s.contains(g) && s.contains(&ga) && s.contains(&grp.add(g, b)) && !s.contains(&grp.add(&ga, b))
}
