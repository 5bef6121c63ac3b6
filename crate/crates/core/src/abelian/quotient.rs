use super::group::{FiniteAbelianGroup, GroupElement};
use super::hom::Homomorphism;
use super::snf::smith_normal_form;
use super::subgroup::{relation_matrix, SubgroupGens};
use crate::error::{Error, Result};

/// `G / K` in invariant-factor form, with the projection and a section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    group: FiniteAbelianGroup,
    kernel: SubgroupGens,
    quotient: FiniteAbelianGroup,
    proj: Homomorphism,
    // lex-smallest representative of each coset, indexed by quotient index
    lift_table: Vec<GroupElement>,
}

impl Quotient {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn kernel(&self) -> &SubgroupGens {
        &self.kernel
    }

    pub fn quotient(&self) -> &FiniteAbelianGroup {
        &self.quotient
    }

    pub fn proj(&self) -> &Homomorphism {
        &self.proj
    }

    /// Lexicographically smallest `g` with `proj(g) = q`.
    pub fn lift(&self, q: &GroupElement) -> Result<GroupElement> {
        self.quotient.check(q)?;
        Ok(self.lift_table[self.quotient.index_of(q)].clone())
    }
}

/// Computes `G / <K>` from the Smith form of `[diag(moduli) | K]`.
pub fn quotient_group(g: &FiniteAbelianGroup, k: &SubgroupGens) -> Result<Quotient> {
    if k.ambient() != g {
        return Err(Error::AmbientMismatch(format!(
            "subgroup of {} used with {}",
            k.ambient(),
            g
        )));
    }
    let small = k.minimized()?;
    let snf = smith_normal_form(&relation_matrix(g, small.gens())?)?;
    let mut moduli = Vec::new();
    let mut rows = Vec::new();
    for i in 0..g.rank() {
        let d = snf.d[(i, i)];
        if d == 1 {
            continue;
        }
        let d64 = i64::try_from(d).map_err(|_| Error::Overflow)?;
        moduli.push(d64);
        rows.push(
            (0..g.rank())
                .map(|j| snf.u[(i, j)].rem_euclid(d) as i64)
                .collect::<Vec<i64>>(),
        );
    }
    let quotient = FiniteAbelianGroup::new(moduli)?;
    let matrix = super::matrix::IntMatrix::from_rows(rows, g.rank())?;
    let proj = Homomorphism::new(g.clone(), quotient.clone(), matrix)?;

    let mut lift_table: Vec<Option<GroupElement>> = vec![None; quotient.order() as usize];
    let mut missing = lift_table.len();
    for x in g.elements() {
        if missing == 0 {
            break;
        }
        let slot = &mut lift_table[quotient.index_of(&proj.apply_unchecked(&x))];
        if slot.is_none() {
            *slot = Some(x);
            missing -= 1;
        }
    }
    let lift_table = lift_table
        .into_iter()
        .map(|x| x.ok_or_else(|| Error::Internal("projection is not surjective".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Quotient { group: g.clone(), kernel: k.clone(), quotient, proj, lift_table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::subgroup::kernel_of_hom;

    fn el(v: &[i64]) -> GroupElement {
        GroupElement(v.to_vec())
    }

    #[test]
    fn z4_mod_two() {
        let g = FiniteAbelianGroup::cyclic(4).unwrap();
        let k = SubgroupGens::new(g.clone(), vec![el(&[2])]).unwrap();
        let q = quotient_group(&g, &k).unwrap();
        assert_eq!(q.quotient().moduli(), &[2]);
        let p = |x: i64| q.proj().apply(&el(&[x])).unwrap();
        assert_eq!(p(1), el(&[1]));
        assert_eq!(p(3), el(&[1]));
        assert_eq!(p(2), el(&[0]));
        assert_eq!(q.lift(&el(&[1])).unwrap(), el(&[1]));
    }

    #[test]
    fn trivial_and_full_kernels() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let q = quotient_group(&g, &SubgroupGens::trivial(g.clone())).unwrap();
        assert_eq!(q.quotient().order(), 6);
        let q = quotient_group(&g, &SubgroupGens::whole(g.clone())).unwrap();
        assert_eq!(q.quotient().rank(), 0);
        assert_eq!(q.lift(&GroupElement(vec![])).unwrap(), g.zero());
    }

    #[test]
    fn section_and_kernel() {
        let g = FiniteAbelianGroup::new(vec![4, 6]).unwrap();
        let k = SubgroupGens::new(g.clone(), vec![el(&[2, 3])]).unwrap();
        let q = quotient_group(&g, &k).unwrap();
        assert_eq!(g.order(), q.quotient().order() * k.enumerate(100).unwrap().len() as u64);
        for x in q.quotient().elements() {
            assert_eq!(q.proj().apply(&q.lift(&x).unwrap()).unwrap(), x);
        }
        let ker = kernel_of_hom(q.proj()).unwrap();
        assert_eq!(ker.enumerate(100), k.enumerate(100));
    }
}
