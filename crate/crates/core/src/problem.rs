//! Instances of the coset-meets-power problem and their certificates.

use std::fmt;

use crate::abelian::{FiniteAbelianGroup, GroupElement, SubgroupGens};
use crate::error::{Error, Result};

/// Groups up to this order get a membership bitmap.
const MASK_LIMIT: u64 = 1 << 22;

/// A finite subset of a group, deduplicated and kept in lexicographic order.
#[derive(Clone, Debug)]
pub struct SubsetS {
    group: FiniteAbelianGroup,
    elements: Vec<GroupElement>,
    mask: Option<Vec<bool>>,
}

impl PartialEq for SubsetS {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.elements == other.elements
    }
}

impl Eq for SubsetS {}

impl SubsetS {
    pub fn new(group: FiniteAbelianGroup, elements: Vec<GroupElement>) -> Result<Self> {
        for x in &elements {
            group.check(x)?;
        }
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        let mask = (group.order() <= MASK_LIMIT).then(|| {
            let mut m = vec![false; group.order() as usize];
            for x in &elements {
                m[group.index_of(x)] = true;
            }
            m
        });
        Ok(SubsetS { group, elements, mask })
    }

    pub fn empty(group: FiniteAbelianGroup) -> Self {
        SubsetS::new(group, Vec::new()).expect("empty subset")
    }

    /// All elements of `group` satisfying `keep`.
    pub fn from_predicate(group: &FiniteAbelianGroup, mut keep: impl FnMut(&GroupElement) -> bool) -> Self {
        let elems = group.elements().filter(|x| keep(x)).collect();
        SubsetS::new(group.clone(), elems).expect("elements come from the group")
    }

    /// Builds a subset of a cyclic group from bare residues.
    pub fn from_residues(group: &FiniteAbelianGroup, residues: &[i64]) -> Result<Self> {
        let elems = residues.iter().map(|&r| group.element(&[r])).collect::<Result<Vec<_>>>()?;
        SubsetS::new(group.clone(), elems)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        if !self.group.contains(x) {
            return false;
        }
        match &self.mask {
            Some(m) => m[self.group.index_of(x)],
            None => self.elements.binary_search(x).is_ok(),
        }
    }

    /// Membership by mixed-radix index.
    pub fn contains_index(&self, idx: usize) -> bool {
        match &self.mask {
            Some(m) => m[idx],
            None => self.contains(&self.group.element_at(idx)),
        }
    }

    pub fn smallest(&self) -> Option<&GroupElement> {
        self.elements.first()
    }

    /// `S + g`.
    pub fn translate(&self, g: &GroupElement) -> SubsetS {
        let elems = self.elements.iter().map(|x| self.group.add(x, g)).collect();
        SubsetS::new(self.group.clone(), elems).expect("translate stays in the group")
    }

    /// `{k x : x in S}`.
    pub fn dilate(&self, k: i64) -> SubsetS {
        let elems = self.elements.iter().map(|x| self.group.scale(k, x)).collect();
        SubsetS::new(self.group.clone(), elems).expect("dilate stays in the group")
    }

    pub fn complement(&self) -> SubsetS {
        SubsetS::from_predicate(&self.group, |x| !self.contains(x))
    }

    pub fn is_subset_of(&self, other: &SubsetS) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }

    pub fn intersection(&self, other: &SubsetS) -> SubsetS {
        let elems = self.elements.iter().filter(|x| other.contains(x)).cloned().collect();
        SubsetS::new(self.group.clone(), elems).expect("same group")
    }

    /// The subgroup generated by the elements of `S`.
    pub fn span(&self) -> SubgroupGens {
        SubgroupGens::new(self.group.clone(), self.elements.clone()).expect("elements are in the group")
    }
}

impl fmt::Display for SubsetS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if self.group.is_presented_cyclic() {
                write!(f, "{}", x.0[0])?;
            } else {
                write!(f, "{x}")?;
            }
        }
        write!(f, "}}")
    }
}

/// Coefficients, one per generator of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Certificate(pub Vec<i64>);

impl Certificate {
    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }
}

/// One instance `(t, x*, H)` over a base group `G`; `H <= G^t` is given by
/// generators, each a `t`-tuple of elements of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProblemInstance {
    group: FiniteAbelianGroup,
    xstar: Vec<GroupElement>,
    hgens: Vec<Vec<GroupElement>>,
}

impl ProblemInstance {
    pub fn new(
        group: FiniteAbelianGroup,
        xstar: Vec<GroupElement>,
        hgens: Vec<Vec<GroupElement>>,
    ) -> Result<Self> {
        let t = xstar.len();
        for x in &xstar {
            group.check(x)?;
        }
        for (j, h) in hgens.iter().enumerate() {
            if h.len() != t {
                return Err(Error::Dimension(format!(
                    "generator {j} has length {}, expected t = {t}",
                    h.len()
                )));
            }
            for x in h {
                group.check(x)?;
            }
        }
        Ok(ProblemInstance { group, xstar, hgens })
    }

    /// A subgroup-only instance with `x* = 0`.
    pub fn pi(group: FiniteAbelianGroup, t: usize, hgens: Vec<Vec<GroupElement>>) -> Result<Self> {
        let xstar = vec![group.zero(); t];
        Self::new(group, xstar, hgens)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn t(&self) -> usize {
        self.xstar.len()
    }

    pub fn xstar(&self) -> &[GroupElement] {
        &self.xstar
    }

    pub fn hgens(&self) -> &[Vec<GroupElement>] {
        &self.hgens
    }

    /// True when `x* = 0`, i.e. the instance belongs to the subgroup variant.
    pub fn is_pi(&self) -> bool {
        self.xstar.iter().all(GroupElement::is_zero)
    }

    /// The point `x* + Σ c_i h_i` of `G^t`.
    pub fn point(&self, cert: &Certificate) -> Result<Vec<GroupElement>> {
        if cert.0.len() != self.hgens.len() {
            return Err(Error::Dimension(format!(
                "certificate has {} coefficients for {} generators",
                cert.0.len(),
                self.hgens.len()
            )));
        }
        Ok((0..self.t())
            .map(|i| {
                let mut elems = vec![self.xstar[i].clone()];
                let mut coeffs = vec![1];
                for (c, h) in cert.0.iter().zip(&self.hgens) {
                    elems.push(h[i].clone());
                    coeffs.push(*c);
                }
                self.group.combine(&coeffs, &elems)
            })
            .collect())
    }

    /// Moduli of `G^t`, position-major.
    pub fn power_moduli(&self) -> Vec<i64> {
        self.group.power_moduli(self.t())
    }

    /// Concatenated coordinates of a tuple in `G^t`.
    pub fn flatten(tuple: &[GroupElement]) -> Vec<i64> {
        tuple.iter().flat_map(|x| x.0.iter().copied()).collect()
    }

    /// Inverse of [`Self::flatten`] for this instance's group.
    pub fn unflatten(&self, coords: &[i64]) -> Vec<GroupElement> {
        let k = self.group.rank();
        if k == 0 {
            return vec![GroupElement(Vec::new()); self.t()];
        }
        coords.chunks(k).map(|c| GroupElement(c.to_vec())).collect()
    }

    /// Reduces certificate entries modulo the exponent of `G`.
    pub fn normalize(&self, cert: &Certificate) -> Certificate {
        let e = self.group.exponent();
        Certificate(cert.0.iter().map(|c| c.rem_euclid(e)).collect())
    }
}

/// Checks that `x* + Σ c_i h_i` lies in `S^t`.
pub fn verify_certificate(inst: &ProblemInstance, s: &SubsetS, cert: &Certificate) -> Result<bool> {
    if s.group() != inst.group() {
        return Err(Error::AmbientMismatch(format!(
            "subset over {} used with instance over {}",
            s.group(),
            inst.group()
        )));
    }
    Ok(inst.point(cert)?.iter().all(|x| s.contains(x)))
}
