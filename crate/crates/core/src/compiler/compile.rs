//! Builds reduction pipelines from 3-colourability for hard `(G, S)`.
//!
//! Pipelines are assembled back to front: a step list for a smaller problem
//! is followed by the step that maps its instances to the current one.

use std::collections::{BTreeSet, VecDeque};

use super::claim::{pattern_holds, Claim};
use crate::abelian::{quotient_group, FiniteAbelianGroup, GroupElement, Homomorphism, SubgroupGens};
use crate::classifier::{classify_p, classify_pi, find_sab, is_coset, theta, Verdict};
use crate::error::{Error, Result};
use crate::problem::SubsetS;
use crate::reductions::ReductionStep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    P,
    Pi,
}

/// Replayable reduction from 3-colourability to the problem for
/// `(group, subset)`, together with the claims checked while building it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionPipeline {
    pub group: FiniteAbelianGroup,
    pub subset: SubsetS,
    pub variant: Variant,
    pub steps: Vec<ReductionStep>,
    pub trace: Vec<Claim>,
}

impl ReductionPipeline {
    /// Re-checks every recorded claim; returns the first failing one.
    pub fn verify_trace(&self) -> Result<Option<&Claim>> {
        for c in &self.trace {
            if !c.verify()? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }
}

/// Result of one round of case analysis at a point `g` of the pattern set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseOutcome {
    /// Instances for `(group, subset)` become instances for `S - g` through
    /// `step`.
    Recurse { step: ReductionStep, group: FiniteAbelianGroup, subset: SubsetS },
    /// Further points of the pattern set.
    Advance(Vec<GroupElement>),
    /// Nothing new to explore from here.
    BaseEvenPattern,
}

struct Compiler {
    trace: Vec<Claim>,
}

fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

fn measure(s: &SubsetS) -> u64 {
    s.group().order() + s.len() as u64
}

/// The cyclic subgroup `x + <d>` as a set.
fn coset_set(g: &FiniteAbelianGroup, x: &GroupElement, d: &GroupElement) -> SubsetS {
    let n = g.element_order(d);
    let elems = (0..n).map(|k| g.add(x, &g.scale(k, d))).collect();
    SubsetS::new(g.clone(), elems).expect("elements of g")
}

fn subgroup_set(k: &SubgroupGens) -> Result<SubsetS> {
    let elems = k
        .enumerate(k.ambient().order() as usize)
        .ok_or_else(|| internal("subgroup enumeration exceeded the group order"))?;
    SubsetS::new(k.ambient().clone(), elems.into_iter().collect())
}

/// `{x : φ(x) ∈ S}` preimage of a set under an injective map from `q`.
fn preimage(q: &FiniteAbelianGroup, f: &Homomorphism, s: &SubsetS) -> SubsetS {
    SubsetS::from_predicate(q, |x| s.contains(&f.apply_unchecked(x)))
}

fn preimage_point(q: &FiniteAbelianGroup, f: &Homomorphism, y: &GroupElement) -> Result<GroupElement> {
    q.elements()
        .find(|x| f.apply_unchecked(x) == *y)
        .ok_or_else(|| internal(format!("{y} is not in the image of the embedding")))
}

impl Compiler {
    fn check(&mut self, claim: Claim) -> Result<()> {
        if !claim.verify()? {
            return Err(internal(format!("structural assertion failed: {claim:?}")));
        }
        self.trace.push(claim);
        Ok(())
    }

    /// Steps producing instances for `(s.group(), s)` from graphs.
    fn compile_p(&mut self, s: &SubsetS) -> Result<Vec<ReductionStep>> {
        self.check(Claim::Coset { set: s.clone(), holds: false })?;
        let g = s.group();
        if s.len() == 2 {
            return self.compile_pair(s);
        }
        if g.order() == 4 && g.exponent() == 2 && s.len() == 3 {
            return self.compile_klein(s);
        }
        self.compile_general(s)
    }

    /// `S = {s, s + d}`: the gadget over `Z/ord(d)`, mapped onto `<d>`.
    fn compile_pair(&mut self, s: &SubsetS) -> Result<Vec<ReductionStep>> {
        let g = s.group();
        let s0 = s.elements()[0].clone();
        let d = g.sub(&s.elements()[1], &s0);
        let n = g.element_order(&d);
        if n < 3 {
            return Err(internal(format!("pair {s} is a coset")));
        }
        let zn = FiniteAbelianGroup::cyclic(n)?;
        let mut steps = vec![ReductionStep::GadgetS01 { n }];
        let f = Homomorphism::from_images(zn, g.clone(), &[d])?;
        if !f.is_identity() {
            steps.push(ReductionStep::MapThrough { hom: f });
        }
        if !s0.is_zero() {
            steps.push(ReductionStep::Translate { group: g.clone(), g: s0 });
        }
        Ok(steps)
    }

    /// `G` of order 4 and exponent 2, `S` missing one point `p`.
    fn compile_klein(&mut self, s: &SubsetS) -> Result<Vec<ReductionStep>> {
        let g = s.group();
        let p = s.complement().elements()[0].clone();
        self.check(Claim::SetEq {
            left: s.clone(),
            right: SubsetS::from_predicate(g, |x| !x.is_zero()).translate(&p),
        })?;
        let mut steps = vec![
            ReductionStep::KColFrom3Col { k: 4 },
            ReductionStep::GadgetColoringFull { group: g.clone() },
        ];
        if !p.is_zero() {
            steps.push(ReductionStep::Translate { group: g.clone(), g: p });
        }
        Ok(steps)
    }

    /// Translate so that `0, a, b ∈ S ∌ a + b`, restrict to `<a, b>`.
    fn compile_general(&mut self, s: &SubsetS) -> Result<Vec<ReductionStep>> {
        let g = s.group();
        let (s0, a, b) = find_sab(s)?.ok_or_else(|| internal(format!("{s} has no (s,a,b) witness")))?;
        let shifted = s.translate(&g.neg(&s0));
        let span = SubgroupGens::new(g.clone(), vec![a.clone(), b.clone()])?;
        let mut steps = if span.order()? == g.order() {
            self.compile_special(&shifted, &a, &b)?
        } else {
            let (q, emb) = span.presentation()?;
            let sq = preimage(&q, &emb, &shifted);
            let (aq, bq) = (preimage_point(&q, &emb, &a)?, preimage_point(&q, &emb, &b)?);
            let mut steps = self.compile_special(&sq, &aq, &bq)?;
            steps.push(ReductionStep::MapThrough { hom: emb });
            steps
        };
        if !s0.is_zero() {
            steps.push(ReductionStep::Translate { group: g.clone(), g: s0 });
        }
        Ok(steps)
    }

    /// `G = <a, b>`, `0, a, b ∈ S`, `a + b ∉ S`.
    fn compile_special(&mut self, s: &SubsetS, a: &GroupElement, b: &GroupElement) -> Result<Vec<ReductionStep>> {
        let g = s.group();
        let zero = g.zero();
        let mut visited = BTreeSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(at) = queue.pop_front() {
            match self.special_step(s, a, b, &at)? {
                CaseOutcome::Recurse { step, group: _, subset } => {
                    let mut steps = self.compile_p(&subset)?;
                    steps.push(step);
                    if !at.is_zero() {
                        steps.push(ReductionStep::Translate { group: g.clone(), g: at });
                    }
                    return Ok(steps);
                }
                CaseOutcome::Advance(next) => {
                    for x in next {
                        if visited.insert(x.clone()) {
                            queue.push_back(x);
                        }
                    }
                }
                CaseOutcome::BaseEvenPattern => {}
            }
        }
        self.compile_even(s, a, b, &visited)
    }

    /// One round of case analysis at the pattern point `at`.
    fn special_step(
        &mut self,
        s: &SubsetS,
        a: &GroupElement,
        b: &GroupElement,
        at: &GroupElement,
    ) -> Result<CaseOutcome> {
        let g = s.group();
        if !pattern_holds(s, at, a, b) {
            return Err(Error::Precondition(format!(
                "need {at}, {at}+{a}, {at}+{b} in S and {at}+{a}+{b} not in S"
            )));
        }
        if a == b || SubgroupGens::new(g.clone(), vec![a.clone(), b.clone()])?.order()? != g.order() {
            return Err(Error::Precondition(format!("{a} and {b} must be distinct generators of {g}")));
        }
        self.trace.push(Claim::Pattern { set: s.clone(), g: at.clone(), a: a.clone(), b: b.clone() });
        let t = s.translate(&g.neg(at));
        let ab = g.add(a, b);

        let (p, q) = if t.contains(&g.sub(a, b)) {
            (a, b)
        } else if t.contains(&g.sub(b, a)) {
            (b, a)
        } else {
            return self.special_third_case(&t, a, b, at);
        };
        self.check(Claim::Member { set: t.clone(), x: g.sub(p, q), holds: true })?;
        if let Some(out) = self.try_transform(&t, -1, &ab)? {
            return Ok(out);
        }
        let qp = g.sub(q, p);
        self.check(Claim::Subset { small: coset_set(g, p, &qp), big: t.clone() })?;
        if let Some(out) = self.try_transform(&t, 1, &g.sub(p, q))? {
            return Ok(out);
        }
        // S is a union of cosets of <q - p>
        self.check(Claim::Periodic { set: t.clone(), by: qp.clone() })?;
        let kernel = SubgroupGens::new(g.clone(), vec![qp])?;
        let quot = quotient_group(g, &kernel)?;
        let sigma = SubsetS::new(
            quot.quotient().clone(),
            t.elements().iter().map(|x| quot.proj().apply_unchecked(x)).collect(),
        )?;
        self.check(Claim::Coset { set: sigma.clone(), holds: false })?;
        self.check(Claim::Measure { before: measure(&t), after: measure(&sigma) })?;
        Ok(CaseOutcome::Recurse {
            step: ReductionStep::DivideOutLift { kernel },
            group: quot.quotient().clone(),
            subset: sigma,
        })
    }

    /// Neither `a - b` nor `b - a` is in `T = S - at`.
    fn special_third_case(
        &mut self,
        t: &SubsetS,
        a: &GroupElement,
        b: &GroupElement,
        at: &GroupElement,
    ) -> Result<CaseOutcome> {
        let g = t.group();
        let zero = g.zero();
        let neg_ab = g.neg(&g.add(a, b));
        self.check(Claim::Member { set: t.clone(), x: g.sub(a, b), holds: false })?;
        self.check(Claim::Member { set: t.clone(), x: g.sub(b, a), holds: false })?;
        for x in [b, a] {
            if let Some(out) = self.try_transform(t, -1, x)? {
                return Ok(out);
            }
            self.check(Claim::Subset { small: coset_set(g, &zero, x), big: t.clone() })?;
        }
        if let Some(out) = self.try_transform(t, 1, &neg_ab)? {
            return Ok(out);
        }
        self.check(Claim::Member { set: t.clone(), x: neg_ab.clone(), holds: false })?;
        if let Some(out) = self.try_transform(t, -1, &neg_ab)? {
            return Ok(out);
        }
        let amb = g.sub(a, b);
        self.check(Claim::Subset { small: coset_set(g, &g.neg(a), &amb), big: t.clone() })?;
        self.check(Claim::Subset { small: coset_set(g, &g.neg(b), &amb), big: t.clone() })?;

        let s = t.translate(at);
        let mut next = Vec::new();
        for x in [a, b] {
            let y = g.sub(at, &g.scale(2, x));
            self.check(Claim::Pattern { set: s.clone(), g: y.clone(), a: a.clone(), b: b.clone() })?;
            if y != *at && !next.contains(&y) {
                next.push(y);
            }
        }
        Ok(if next.is_empty() { CaseOutcome::BaseEvenPattern } else { CaseOutcome::Advance(next) })
    }

    /// Recurses through `x ↦ c x + h` when the restricted set is a smaller
    /// non-coset with at least two elements.
    fn try_transform(&mut self, t: &SubsetS, c: i64, h: &GroupElement) -> Result<Option<CaseOutcome>> {
        let g = t.group();
        let s_phi = SubsetS::from_predicate(g, |x| t.contains(x) && t.contains(&g.add(&g.scale(c, x), h)));
        if s_phi.len() < 2 || s_phi.len() >= t.len() || is_coset(&s_phi)?.is_some() {
            return Ok(None);
        }
        self.check(Claim::Coset { set: s_phi.clone(), holds: false })?;
        self.check(Claim::Measure { before: measure(t), after: measure(&s_phi) })?;
        Ok(Some(CaseOutcome::Recurse {
            step: ReductionStep::TransformDouble { c: Homomorphism::scalar(g, c), g: h.clone() },
            group: g.clone(),
            subset: s_phi,
        }))
    }

    /// Every pattern point was explored without recursing: `S` is the even
    /// pattern over `2G`, and `G / 2G` has order 4.
    fn compile_even(
        &mut self,
        s: &SubsetS,
        a: &GroupElement,
        b: &GroupElement,
        visited: &BTreeSet<GroupElement>,
    ) -> Result<Vec<ReductionStep>> {
        let g = s.group();
        let two_g = SubgroupGens::new(g.clone(), vec![g.scale(2, a), g.scale(2, b)])?;
        let two_g_set = subgroup_set(&two_g)?;
        let reached = SubsetS::new(g.clone(), visited.iter().cloned().collect())?;
        let pattern = SubsetS::from_predicate(g, |x| pattern_holds(s, x, a, b));
        self.check(Claim::SetEq { left: reached, right: two_g_set.clone() })?;
        self.check(Claim::SetEq { left: pattern, right: two_g_set.clone() })?;
        let (oa, ob) = (g.element_order(a), g.element_order(b));
        let even = (0..oa)
            .flat_map(|k| (0..ob).filter(move |l| (k * l) % 2 == 0).map(move |l| (k, l)))
            .map(|(k, l)| g.add(&g.scale(k, a), &g.scale(l, b)))
            .collect();
        self.check(Claim::SetEq { left: s.clone(), right: SubsetS::new(g.clone(), even)? })?;
        self.check(Claim::SetEq { left: s.complement(), right: two_g_set.translate(&g.add(a, b)) })?;
        if two_g.gens().iter().all(GroupElement::is_zero) {
            return self.compile_klein(s);
        }
        for x in two_g.gens() {
            self.check(Claim::Periodic { set: s.clone(), by: x.clone() })?;
        }
        let quot = quotient_group(g, &two_g)?;
        let sigma = SubsetS::new(
            quot.quotient().clone(),
            s.elements().iter().map(|x| quot.proj().apply_unchecked(x)).collect(),
        )?;
        let gamma = quot.quotient();
        if gamma.order() != 4 || gamma.exponent() != 2 || sigma.len() != 3 {
            return Err(internal(format!("G/2G = {gamma} with image {sigma} is not the order-4 base case")));
        }
        self.check(Claim::Measure { before: measure(s), after: measure(&sigma) })?;
        let mut steps = self.compile_p(&sigma)?;
        steps.push(ReductionStep::DivideOutLift { kernel: two_g });
        Ok(steps)
    }
}

/// One round of the case analysis for `G = <a, b>`, `at` a point with
/// `at, at+a, at+b ∈ S` and `at+a+b ∉ S`.
pub fn special_case_step(
    s: &SubsetS,
    a: &GroupElement,
    b: &GroupElement,
    at: &GroupElement,
) -> Result<CaseOutcome> {
    Compiler { trace: Vec::new() }.special_step(s, a, b, at)
}

/// Pipeline from 3-colourability to the problem for `(G, S)`, `S` neither
/// empty nor a coset.
pub fn compile_hardness_p(s: &SubsetS) -> Result<ReductionPipeline> {
    if classify_p(s)?.verdict != Verdict::NpComplete {
        return Err(Error::Precondition(format!("{s} is tractable")));
    }
    let mut c = Compiler { trace: Vec::new() };
    let steps = c.compile_p(s)?;
    Ok(ReductionPipeline {
        group: s.group().clone(),
        subset: s.clone(),
        variant: Variant::P,
        steps,
        trace: c.trace,
    })
}

/// Pipeline from 3-colourability to the subgroup variant for `(G, S)` with
/// `θ(S)` not a coset. Works through `θ(S)` inside `<θ(S)>`.
pub fn compile_hardness_pi(s: &SubsetS) -> Result<ReductionPipeline> {
    if classify_pi(s)?.verdict != Verdict::NpComplete {
        return Err(Error::Precondition(format!("theta({s}) is a coset or empty")));
    }
    let g = s.group();
    let th = theta(s);
    let span = th.span();
    let mut c = Compiler { trace: Vec::new() };
    let (q, emb, tq) = if span.order()? == g.order() {
        (g.clone(), None, th)
    } else {
        let (q, emb) = span.presentation()?;
        let tq = preimage(&q, &emb, &th);
        (q, Some(emb), tq)
    };
    c.check(Claim::ThetaFixed { set: tq.clone() })?;
    let mut steps = c.compile_p(&tq)?;
    steps.push(ReductionStep::PiFromP { group: q, order: tq.elements().to_vec() });
    if let Some(emb) = emb {
        steps.push(ReductionStep::MapThrough { hom: emb });
    }
    Ok(ReductionPipeline { group: g.clone(), subset: s.clone(), variant: Variant::Pi, steps, trace: c.trace })
}
