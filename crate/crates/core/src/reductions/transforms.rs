//! Answer-preserving maps between instances.

use crate::abelian::{kernel_of_hom, GroupElement, Homomorphism, Quotient};
use crate::classifier::theta;
use crate::error::{Error, Result};
use crate::problem::{ProblemInstance, SubsetS};

fn same_group(inst: &ProblemInstance, what: &str, g: &crate::abelian::FiniteAbelianGroup) -> Result<()> {
    if inst.group() != g {
        return Err(Error::AmbientMismatch(format!(
            "{what} expects an instance over {g}, got {}",
            inst.group()
        )));
    }
    Ok(())
}

/// Shifts every coordinate of `x*` by `g`; instances for `S` become
/// instances for `S + g`.
pub fn translate_instance(inst: &ProblemInstance, g: &GroupElement) -> Result<ProblemInstance> {
    let grp = inst.group();
    grp.check(g)?;
    let xstar = inst.xstar().iter().map(|x| grp.add(x, g)).collect();
    ProblemInstance::new(grp.clone(), xstar, inst.hgens().to_vec())
}

/// Applies an injective homomorphism to every coordinate; instances for
/// `f^{-1}(S)` become instances for `S`.
pub fn map_instance(inst: &ProblemInstance, f: &Homomorphism) -> Result<ProblemInstance> {
    same_group(inst, "map", f.source())?;
    if !kernel_of_hom(f)?.gens().is_empty() {
        return Err(Error::NotInjective);
    }
    let map_tuple = |xs: &[GroupElement]| xs.iter().map(|x| f.apply_unchecked(x)).collect::<Vec<_>>();
    ProblemInstance::new(
        f.target().clone(),
        map_tuple(inst.xstar()),
        inst.hgens().iter().map(|h| map_tuple(h)).collect(),
    )
}

/// Lifts an instance over `G/K` to `G`, adding `K` at every position;
/// instances for `S'` become instances for the preimage of `S'`.
pub fn divideout_lift(inst: &ProblemInstance, q: &Quotient) -> Result<ProblemInstance> {
    same_group(inst, "divide-out lift", q.quotient())?;
    let g = q.group();
    let t = inst.t();
    let lift_tuple = |xs: &[GroupElement]| xs.iter().map(|x| q.lift(x)).collect::<Result<Vec<_>>>();
    let xstar = lift_tuple(inst.xstar())?;
    let mut hgens = inst.hgens().iter().map(|h| lift_tuple(h)).collect::<Result<Vec<_>>>()?;
    for i in 0..t {
        for k in q.kernel().gens() {
            let mut h = vec![g.zero(); t];
            h[i] = k.clone();
            hgens.push(h);
        }
    }
    ProblemInstance::new(g.clone(), xstar, hgens)
}

/// Doubles the instance through `φ(x) = c(x) + g`: instances for
/// `S ∩ φ^{-1}(S)` become instances for `S`.
pub fn transform_double(inst: &ProblemInstance, c: &Homomorphism, g: &GroupElement) -> Result<ProblemInstance> {
    same_group(inst, "transform", c.source())?;
    if c.target() != c.source() {
        return Err(Error::Precondition("transformation needs an endomorphism".into()));
    }
    let grp = inst.group();
    grp.check(g)?;
    let mut xstar = inst.xstar().to_vec();
    xstar.extend(inst.xstar().iter().map(|x| grp.add(&c.apply_unchecked(x), g)));
    let hgens = inst
        .hgens()
        .iter()
        .map(|h| {
            let mut v = h.clone();
            v.extend(h.iter().map(|x| c.apply_unchecked(x)));
            v
        })
        .collect();
    ProblemInstance::new(grp.clone(), xstar, hgens)
}

/// Reads a subgroup instance as a general one.
pub fn p_from_pi(inst: &ProblemInstance) -> Result<ProblemInstance> {
    if !inst.is_pi() {
        return Err(Error::Precondition("x* must be zero".into()));
    }
    Ok(inst.clone())
}

/// Turns an instance for `S'` into a subgroup instance for `S'` by appending
/// the positions `s_1, …, s_n` and folding `x*` into a new generator
/// `y* = (x*, s_1, …, s_n)`, placed first.
///
/// Requires `θ(S') = S'`, and when `S'` is nonempty also that `S'` generates
/// the instance group: otherwise a multiple of `y*` other than `y*` itself
/// can land in `S'^{t+n}`.
pub fn pi_from_p(inst: &ProblemInstance, order: &[GroupElement]) -> Result<ProblemInstance> {
    let g = inst.group();
    let s = SubsetS::new(g.clone(), order.to_vec())?;
    if s.len() != order.len() {
        return Err(Error::Precondition("enumeration of S' repeats an element".into()));
    }
    if theta(&s) != s {
        return Err(Error::Precondition(format!("theta(S') differs from S' = {s}")));
    }
    if !s.is_empty() && s.span().order()? != g.order() {
        return Err(Error::Precondition(format!("S' = {s} does not generate {g}")));
    }
    let n = order.len();
    let mut ystar = inst.xstar().to_vec();
    ystar.extend(order.iter().cloned());
    let mut hgens = vec![ystar];
    for h in inst.hgens() {
        let mut v = h.clone();
        v.extend(std::iter::repeat(g.zero()).take(n));
        hgens.push(v);
    }
    ProblemInstance::pi(g.clone(), inst.t() + n, hgens)
}
