use std::collections::{BTreeSet, HashSet, VecDeque};

use super::congruence::{congruence_kernel, lcm_all, solve_linear_congruence};
use super::group::{FiniteAbelianGroup, GroupElement};
use super::hom::Homomorphism;
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// A subgroup presented by a finite list of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupGens {
    ambient: FiniteAbelianGroup,
    gens: Vec<GroupElement>,
}

fn gens_matrix(rank: usize, gens: &[Vec<i64>]) -> Result<IntMatrix<i64>> {
    IntMatrix::from_cols(gens, rank)
}

/// Coefficients expressing `v` in terms of `gens` inside `prod Z/moduli[i]`.
pub(crate) fn member_coeffs(
    moduli: &[i64],
    gens: &[Vec<i64>],
    v: &[i64],
) -> Result<Option<Vec<i64>>> {
    let a = gens_matrix(moduli.len(), gens)?;
    solve_linear_congruence(&a, v, moduli)
}

/// Coefficient vectors `λ` (with respect to `gens1`) such that the elements
/// `Σ λ_i gens1[i]` generate `<gens1> ∩ <gens2>`.
pub(crate) fn intersect_coeffs(
    moduli: &[i64],
    gens1: &[Vec<i64>],
    gens2: &[Vec<i64>],
) -> Result<Vec<Vec<i64>>> {
    let cols: Vec<Vec<i64>> = gens1
        .iter()
        .cloned()
        .chain(gens2.iter().map(|g| g.iter().zip(moduli).map(|(&x, &d)| (-x).rem_euclid(d)).collect()))
        .collect();
    let a = gens_matrix(moduli.len(), &cols)?;
    let period = lcm_all(moduli.iter().copied())?;
    let kernel = congruence_kernel(&a, moduli, period)?;
    Ok(kernel.into_iter().map(|mut k| {
        k.truncate(gens1.len());
        k
    }).collect())
}

impl SubgroupGens {
    pub fn new(ambient: FiniteAbelianGroup, gens: Vec<GroupElement>) -> Result<Self> {
        for g in &gens {
            ambient.check(g)?;
        }
        Ok(SubgroupGens { ambient, gens })
    }

    pub fn trivial(ambient: FiniteAbelianGroup) -> Self {
        SubgroupGens { ambient, gens: Vec::new() }
    }

    pub fn whole(ambient: FiniteAbelianGroup) -> Self {
        let gens = (0..ambient.rank()).map(|i| ambient.basis(i)).collect();
        SubgroupGens { ambient, gens }
    }

    pub fn ambient(&self) -> &FiniteAbelianGroup {
        &self.ambient
    }

    pub fn gens(&self) -> &[GroupElement] {
        &self.gens
    }

    fn raw_gens(&self) -> Vec<Vec<i64>> {
        self.gens.iter().map(|g| g.0.clone()).collect()
    }

    /// Coefficients `λ` with `Σ λ_i gens[i] = v`, reduced modulo the ambient
    /// exponent, or `None` when `v` is not in the subgroup.
    pub fn membership(&self, v: &GroupElement) -> Result<Option<Vec<i64>>> {
        self.ambient.check(v)?;
        member_coeffs(self.ambient.moduli(), &self.raw_gens(), &v.0)
    }

    pub fn contains(&self, v: &GroupElement) -> Result<bool> {
        Ok(self.membership(v)?.is_some())
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_subgroup(&self, other: &SubgroupGens) -> Result<bool> {
        self.same_ambient(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_elements(&self, other: &SubgroupGens) -> Result<bool> {
        Ok(self.contains_subgroup(other)? && other.contains_subgroup(self)?)
    }

    fn same_ambient(&self, other: &SubgroupGens) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!(
                "subgroups of {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Elements of the subgroup by breadth-first closure, or `None` once more
    /// than `cap` elements have been found.
    pub fn enumerate(&self, cap: usize) -> Option<BTreeSet<GroupElement>> {
        let zero = self.ambient.zero();
        let mut seen: HashSet<GroupElement> = HashSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        if seen.len() > cap {
            return None;
        }
        while let Some(x) = queue.pop_front() {
            for g in &self.gens {
                let y = self.ambient.add(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return None;
                    }
                    queue.push_back(y);
                }
            }
        }
        Some(seen.into_iter().collect())
    }

    /// A generating set with redundant generators dropped greedily, in order.
    pub fn minimized(&self) -> Result<SubgroupGens> {
        let mut kept: Vec<Vec<i64>> = Vec::new();
        for g in &self.gens {
            if g.is_zero() {
                continue;
            }
            if member_coeffs(self.ambient.moduli(), &kept, &g.0)?.is_none() {
                kept.push(g.0.clone());
            }
        }
        Ok(SubgroupGens {
            ambient: self.ambient.clone(),
            gens: kept.into_iter().map(GroupElement).collect(),
        })
    }

    /// Number of elements, from the Smith form of the relations of `G/H`.
    pub fn order(&self) -> Result<u64> {
        let q = relation_invariants(&self.ambient, &self.minimized()?.gens)?;
        let quotient_order = q.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d as u64)).ok_or(Error::Overflow)?;
        Ok(self.ambient.order() / quotient_order)
    }

    /// An abstract group `Q` together with an injective homomorphism
    /// `Q -> ambient` whose image is this subgroup. `Q` is in invariant-factor
    /// form.
    pub fn presentation(&self) -> Result<(FiniteAbelianGroup, Homomorphism)> {
        let small = self.minimized()?;
        let m = small.gens.len();
        let ambient = &self.ambient;
        let e = ambient.exponent();
        // relations among the generators: kernel of Z^m -> G, plus e*Z^m
        let a = gens_matrix(ambient.rank(), &small.raw_gens())?;
        let mut rels = congruence_kernel(&a, ambient.moduli(), lcm_all([e])?)?;
        for i in 0..m {
            let mut r = vec![0; m];
            r[i] = e;
            rels.push(r);
        }
        let rel = IntMatrix::<i64>::from_cols(&rels, m)?.cast::<i128>()?;
        let snf = smith_normal_form(&rel)?;
        let mut moduli = Vec::new();
        let mut images = Vec::new();
        for i in 0..m {
            let d = snf.d[(i, i)];
            if d == 1 {
                continue;
            }
            moduli.push(i64::try_from(d).map_err(|_| Error::Overflow)?);
            let coeffs: Vec<i64> = (0..m)
                .map(|r| (snf.u_inv[(r, i)].rem_euclid(i128::from(e))) as i64)
                .collect();
            images.push(ambient.combine(&coeffs, &small.gens));
        }
        let q = FiniteAbelianGroup::new(moduli)?;
        let emb = Homomorphism::from_images(q.clone(), ambient.clone(), &images)?;
        Ok((q, emb))
    }
}

/// Nontrivial invariant factors of `G / <gens>`.
pub(crate) fn relation_invariants(
    g: &FiniteAbelianGroup,
    gens: &[GroupElement],
) -> Result<Vec<i64>> {
    let snf = smith_normal_form(&relation_matrix(g, gens)?)?;
    let mut out = Vec::new();
    for i in 0..g.rank() {
        let d = snf.d[(i, i)];
        if d != 1 {
            out.push(i64::try_from(d).map_err(|_| Error::Overflow)?);
        }
    }
    Ok(out)
}

/// `[diag(moduli) | gens]` over the wide scalar.
pub(crate) fn relation_matrix(
    g: &FiniteAbelianGroup,
    gens: &[GroupElement],
) -> Result<IntMatrix<i128>> {
    let k = g.rank();
    let mut m = IntMatrix::<i128>::zeros(k, k + gens.len());
    for i in 0..k {
        m[(i, i)] = i128::from(g.moduli()[i]);
    }
    for (j, x) in gens.iter().enumerate() {
        for i in 0..k {
            m[(i, k + j)] = i128::from(x.0[i]);
        }
    }
    Ok(m)
}

/// Generators of `{x in source : f(x) = 0}`.
pub fn kernel_of_hom(f: &Homomorphism) -> Result<SubgroupGens> {
    let source = f.source();
    let period = lcm_all(source.moduli().iter().chain(f.target().moduli()).copied())?;
    let raw = congruence_kernel(f.matrix(), f.target().moduli(), period)?;
    let mut gens = Vec::new();
    let mut seen = HashSet::new();
    for k in raw {
        let x = source.element(&k)?;
        if !x.is_zero() && seen.insert(x.clone()) {
            gens.push(x);
        }
    }
    SubgroupGens::new(source.clone(), gens)
}

/// Generators of `H1 ∩ H2`.
pub fn subgroup_intersect(h1: &SubgroupGens, h2: &SubgroupGens) -> Result<SubgroupGens> {
    h1.same_ambient(h2)?;
    let g = &h1.ambient;
    let coeffs = intersect_coeffs(g.moduli(), &h1.raw_gens(), &h2.raw_gens())?;
    let mut gens = Vec::new();
    let mut seen = HashSet::new();
    for c in coeffs {
        let x = g.combine(&c, &h1.gens);
        if !x.is_zero() && seen.insert(x.clone()) {
            gens.push(x);
        }
    }
    SubgroupGens::new(g.clone(), gens)
}

pub fn subgroup_membership(h: &SubgroupGens, v: &GroupElement) -> Result<Option<Vec<i64>>> {
    h.membership(v)
}

pub fn subgroup_enumerate(h: &SubgroupGens, cap: usize) -> Option<BTreeSet<GroupElement>> {
    h.enumerate(cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: i64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn el(v: &[i64]) -> GroupElement {
        GroupElement(v.to_vec())
    }

    fn set(v: &[&[i64]]) -> BTreeSet<GroupElement> {
        v.iter().map(|x| el(x)).collect()
    }

    #[test]
    fn membership_examples() {
        let h = SubgroupGens::new(cyc(4), vec![el(&[2])]).unwrap();
        assert_eq!(h.membership(&el(&[0])).unwrap(), Some(vec![0]));
        assert_eq!(h.membership(&el(&[1])).unwrap(), None);
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        let h = SubgroupGens::new(g, vec![el(&[1, 1])]).unwrap();
        assert_eq!(h.membership(&el(&[0, 2])).unwrap(), Some(vec![2]));
    }

    #[test]
    fn membership_rejects_foreign_elements() {
        let h = SubgroupGens::new(cyc(4), vec![el(&[2])]).unwrap();
        assert!(h.membership(&el(&[5])).is_err());
        assert!(h.membership(&el(&[0, 0])).is_err());
    }

    #[test]
    fn kernel_examples() {
        let z4 = cyc(4);
        let double = Homomorphism::scalar(&z4, 2);
        let k = kernel_of_hom(&double).unwrap();
        assert_eq!(k.enumerate(100).unwrap(), set(&[&[0], &[2]]));

        let z6 = cyc(6);
        let zero = Homomorphism::scalar(&z6, 0);
        assert_eq!(kernel_of_hom(&zero).unwrap().enumerate(100).unwrap().len(), 6);
        let id = Homomorphism::identity(&z6);
        assert_eq!(kernel_of_hom(&id).unwrap().enumerate(100).unwrap(), set(&[&[0]]));
    }

    #[test]
    fn kernel_with_larger_source_order() {
        // Z/6 -> Z/2, 1 -> 1: kernel {0,2,4}
        let f = Homomorphism::from_images(cyc(6), cyc(2), &[el(&[1])]).unwrap();
        assert_eq!(kernel_of_hom(&f).unwrap().enumerate(100).unwrap(), set(&[&[0], &[2], &[4]]));
    }

    #[test]
    fn intersection_examples() {
        let z12 = cyc(12);
        let a = SubgroupGens::new(z12.clone(), vec![el(&[2])]).unwrap();
        let b = SubgroupGens::new(z12.clone(), vec![el(&[3])]).unwrap();
        let i = subgroup_intersect(&a, &b).unwrap();
        assert_eq!(i.enumerate(100).unwrap(), set(&[&[0], &[6]]));
        assert_eq!(subgroup_intersect(&a, &a).unwrap().enumerate(100), a.enumerate(100));

        let z5 = cyc(5);
        let all = SubgroupGens::new(z5.clone(), vec![el(&[1])]).unwrap();
        let none = SubgroupGens::new(z5, vec![el(&[0])]).unwrap();
        assert_eq!(subgroup_intersect(&all, &none).unwrap().enumerate(100).unwrap(), set(&[&[0]]));
    }

    #[test]
    fn intersection_ambient_mismatch() {
        let a = SubgroupGens::trivial(cyc(4));
        let b = SubgroupGens::trivial(cyc(5));
        assert!(matches!(subgroup_intersect(&a, &b), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn enumerate_examples() {
        let h = SubgroupGens::new(cyc(8), vec![el(&[2])]).unwrap();
        assert_eq!(h.enumerate(100).unwrap(), set(&[&[0], &[2], &[4], &[6]]));
        assert_eq!(h.enumerate(3), None);
        assert_eq!(SubgroupGens::trivial(cyc(8)).enumerate(1).unwrap(), set(&[&[0]]));
        let v4 = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let w = SubgroupGens::new(v4, vec![el(&[1, 0]), el(&[0, 1])]).unwrap();
        assert_eq!(w.enumerate(10).unwrap().len(), 4);
    }

    #[test]
    fn order_and_presentation() {
        let g = FiniteAbelianGroup::new(vec![4, 6]).unwrap();
        let h = SubgroupGens::new(g.clone(), vec![el(&[2, 3]), el(&[0, 2]), el(&[2, 1])]).unwrap();
        let elems = h.enumerate(1000).unwrap();
        assert_eq!(h.order().unwrap(), elems.len() as u64);
        let (q, emb) = h.presentation().unwrap();
        assert_eq!(q.order(), elems.len() as u64);
        let image: BTreeSet<_> = q.elements().map(|x| emb.apply(&x).unwrap()).collect();
        assert_eq!(image, elems);
    }

    #[test]
    fn minimized_keeps_span() {
        let g = cyc(12);
        let h = SubgroupGens::new(g, vec![el(&[4]), el(&[8]), el(&[6]), el(&[0]), el(&[2])]).unwrap();
        let m = h.minimized().unwrap();
        assert!(m.gens().len() <= 2);
        assert_eq!(m.enumerate(100), h.enumerate(100));
    }
}
