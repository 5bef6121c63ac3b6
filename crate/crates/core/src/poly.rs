//! Polynomial-time solvers for the tractable cases.

use crate::abelian::{intersect_coeffs, member_coeffs, GroupElement, SubgroupGens};
use crate::classifier::{is_coset, theta};
use crate::error::{Error, Result};
use crate::problem::{Certificate, ProblemInstance, SubsetS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes(Certificate),
    No,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }
}

/// Generators of `K^t` inside `G^t`, flattened: each generator of `K` placed
/// at each position.
fn power_gens(k: &SubgroupGens, t: usize) -> Vec<Vec<i64>> {
    let rank = k.ambient().rank();
    let mut out = Vec::new();
    for i in 0..t {
        for x in k.gens() {
            let mut v = vec![0; t * rank];
            v[i * rank..(i + 1) * rank].copy_from_slice(&x.0);
            out.push(v);
        }
    }
    out
}

fn check_subset(inst: &ProblemInstance, s: &SubsetS) -> Result<()> {
    if s.group() != inst.group() {
        return Err(Error::AmbientMismatch(format!(
            "subset over {} used with instance over {}",
            s.group(),
            inst.group()
        )));
    }
    Ok(())
}

/// Decides an instance whose `S` is empty or a coset `a + K`: the answer is
/// yes iff `(a,…,a) - x*` lies in `H + K^t`.
pub fn solve_p_coset(inst: &ProblemInstance, s: &SubsetS) -> Result<Decision> {
    check_subset(inst, s)?;
    let m = inst.hgens().len();
    if s.is_empty() {
        return Ok(if inst.t() == 0 { Decision::Yes(Certificate(vec![0; m])) } else { Decision::No });
    }
    let (a, k) = is_coset(s)?.ok_or_else(|| Error::Precondition(format!("{s} is not a coset")))?;
    let g = inst.group();
    let t = inst.t();
    let mut gens: Vec<Vec<i64>> = inst.hgens().iter().map(|h| ProblemInstance::flatten(h)).collect();
    gens.extend(power_gens(&k, t));
    let target: Vec<GroupElement> = inst.xstar().iter().map(|x| g.sub(&a, x)).collect();
    match member_coeffs(&inst.power_moduli(), &gens, &ProblemInstance::flatten(&target))? {
        None => Ok(Decision::No),
        Some(mut c) => {
            c.truncate(m);
            Ok(Decision::Yes(inst.normalize(&Certificate(c))))
        }
    }
}

/// Decides an instance with `x* = 0` whose `θ(S)` is empty or a coset.
pub fn solve_pi_theta(inst: &ProblemInstance, s: &SubsetS) -> Result<Decision> {
    check_subset(inst, s)?;
    if !inst.is_pi() {
        return Err(Error::Precondition("x* must be zero".into()));
    }
    let g = inst.group();
    let m = inst.hgens().len();
    if s.contains(&g.zero()) {
        return Ok(Decision::Yes(Certificate(vec![0; m])));
    }
    let th = theta(s);
    if th.is_empty() {
        if !s.is_empty() {
            return Err(Error::Internal("theta of a nonempty set is empty".into()));
        }
        return Ok(if inst.t() == 0 { Decision::Yes(Certificate(vec![0; m])) } else { Decision::No });
    }
    if is_coset(&th)?.is_none() {
        return Err(Error::Precondition(format!("theta(S) = {th} is not a coset")));
    }
    // restrict H to <θ(S)>^t
    let t = inst.t();
    let span = th.span().minimized()?;
    let flat: Vec<Vec<i64>> = inst.hgens().iter().map(|h| ProblemInstance::flatten(h)).collect();
    let lambdas = intersect_coeffs(&inst.power_moduli(), &flat, &power_gens(&span, t))?;
    let e = g.exponent();
    let restricted: Vec<Vec<GroupElement>> = lambdas
        .iter()
        .map(|lam| {
            (0..t)
                .map(|i| {
                    let col: Vec<GroupElement> = inst.hgens().iter().map(|h| h[i].clone()).collect();
                    g.combine(lam, &col)
                })
                .collect()
        })
        .collect();
    let sub = ProblemInstance::pi(g.clone(), t, restricted)?;
    match solve_p_coset(&sub, &th)? {
        Decision::No => Ok(Decision::No),
        Decision::Yes(mu) => {
            let mut c = vec![0i128; m];
            for (mj, lam) in mu.0.iter().zip(&lambdas) {
                for (ci, li) in c.iter_mut().zip(lam) {
                    *ci = (*ci + i128::from(*mj) * i128::from(*li)).rem_euclid(i128::from(e));
                }
            }
            Ok(Decision::Yes(Certificate(c.into_iter().map(|x| x as i64).collect())))
        }
    }
}
