//! Coset detection, the `θ` invariant, and the two dichotomies.

use std::fmt;

use crate::abelian::{GroupElement, SubgroupGens};
use crate::error::{Error, Result};
use crate::problem::SubsetS;

/// If `S` is a coset `s0 + K`, returns `s0 = min S` and generators of `K`.
pub fn is_coset(s: &SubsetS) -> Result<Option<(GroupElement, SubgroupGens)>> {
    let Some(base) = s.smallest().cloned() else {
        return Ok(None);
    };
    let g = s.group();
    let diffs: Vec<GroupElement> = s.elements().iter().map(|x| g.sub(x, &base)).collect();
    let k = SubgroupGens::new(g.clone(), diffs)?.minimized()?;
    // S - s0 sits inside <S - s0>, so equal sizes force equality
    if k.order()? == s.len() as u64 {
        Ok(Some((base, k)))
    } else {
        Ok(None)
    }
}

/// Intersection of all dilates `aS` with `aS ⊆ S`, over `a` in
/// `[0, exponent)`.
pub fn theta(s: &SubsetS) -> SubsetS {
    let g = s.group();
    let mut out = s.clone();
    for a in 0..g.exponent() {
        let d = s.dilate(a);
        if d.is_subset_of(s) {
            out = out.intersection(&d);
        }
    }
    out
}

/// Lexicographically smallest `(s, a, b)` with `s, s+a, s+b ∈ S`, `a ≠ b`
/// and `s+a+b ∉ S`. For `|S| ≥ 3` there is none exactly when `S` is a coset.
pub fn find_sab(s: &SubsetS) -> Result<Option<(GroupElement, GroupElement, GroupElement)>> {
    if s.len() < 3 {
        return Err(Error::Precondition(format!("need |S| >= 3, got {}", s.len())));
    }
    let g = s.group();
    for x in s.elements() {
        let mut shifted: Vec<GroupElement> = s.elements().iter().map(|y| g.sub(y, x)).collect();
        shifted.sort();
        for a in &shifted {
            let xa = g.add(x, a);
            for b in &shifted {
                if a != b && !s.contains(&g.add(&xa, b)) {
                    return Ok(Some((x.clone(), a.clone(), b.clone())));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    InP,
    NpComplete,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    EmptyS,
    CosetS { base: GroupElement, subgroup: SubgroupGens },
    ThetaCoset { theta: SubsetS, base: GroupElement, subgroup: SubgroupGens },
    NonCoset { s: GroupElement, a: GroupElement, b: GroupElement },
    /// `S = {s, s + d}` with `2d ≠ 0`.
    PairNonCoset { s: GroupElement, d: GroupElement },
    ThetaNonCoset { theta: SubsetS },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub reason: Reason,
}

/// Tractable iff `S` is empty or a coset.
pub fn classify_p(s: &SubsetS) -> Result<Classification> {
    if s.is_empty() {
        return Ok(Classification { verdict: Verdict::InP, reason: Reason::EmptyS });
    }
    if let Some((base, subgroup)) = is_coset(s)? {
        return Ok(Classification { verdict: Verdict::InP, reason: Reason::CosetS { base, subgroup } });
    }
    let g = s.group();
    let reason = if s.len() == 2 {
        let (x, y) = (&s.elements()[0], &s.elements()[1]);
        Reason::PairNonCoset { s: x.clone(), d: g.sub(y, x) }
    } else {
        let (s0, a, b) = find_sab(s)?
            .ok_or_else(|| Error::Internal("non-coset subset without an (s,a,b) witness".into()))?;
        Reason::NonCoset { s: s0, a, b }
    };
    Ok(Classification { verdict: Verdict::NpComplete, reason })
}

/// Tractable iff `S` is empty or `θ(S)` is a coset.
pub fn classify_pi(s: &SubsetS) -> Result<Classification> {
    if s.is_empty() {
        return Ok(Classification { verdict: Verdict::InP, reason: Reason::EmptyS });
    }
    let th = theta(s);
    match is_coset(&th)? {
        Some((base, subgroup)) => Ok(Classification {
            verdict: Verdict::InP,
            reason: Reason::ThetaCoset { theta: th, base, subgroup },
        }),
        None => Ok(Classification { verdict: Verdict::NpComplete, reason: Reason::ThetaNonCoset { theta: th } }),
    }
}

fn show(x: &GroupElement) -> String {
    if x.0.len() == 1 {
        x.0[0].to_string()
    } else {
        x.to_string()
    }
}

fn show_subgroup(k: &SubgroupGens) -> String {
    let gens: Vec<String> = k.gens().iter().map(show).collect();
    format!("<{}>", gens.join(","))
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::InP => write!(f, "InP"),
            Verdict::NpComplete => write!(f, "NP-complete"),
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::EmptyS => write!(f, "S is empty"),
            Reason::CosetS { base, subgroup } => {
                write!(f, "S is a coset: {} + {}", show(base), show_subgroup(subgroup))
            }
            Reason::ThetaCoset { theta, base, subgroup } => write!(
                f,
                "theta(S) = {theta} is a coset: {} + {}",
                show(base),
                show_subgroup(subgroup)
            ),
            Reason::NonCoset { s, a, b } => write!(
                f,
                "S not a coset; s={}, a={}, b={} with s+a+b not in S",
                show(s),
                show(a),
                show(b)
            ),
            Reason::PairNonCoset { d, .. } => write!(f, "S not a coset; |S|=2, d={}", show(d)),
            Reason::ThetaNonCoset { theta } => write!(f, "theta(S) = {theta} not a coset"),
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.verdict, self.reason)
    }
}
