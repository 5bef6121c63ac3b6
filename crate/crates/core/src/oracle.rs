//! Exhaustive depth-first search over certificate digits.
//!
//! Generators are taken in order and each digit runs through `[0, ord(h))`
//! ascending, so the first certificate found is the lexicographically
//! smallest one. Before descending, every position `i` of the partial sum is
//! checked against `S - R`, where `R` is the subgroup of `G` generated by the
//! `i`-th components of the generators not yet fixed. When those components
//! are all zero this is plain membership in `S`.

use crate::abelian::FiniteAbelianGroup;
use crate::error::{Error, Result};
use crate::problem::{Certificate, ProblemInstance, SubsetS};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Above this order the search refuses to build its tables.
const ORDER_LIMIT: u64 = 1 << 20;
/// Up to this order the search uses a full addition table.
const TABLE_LIMIT: u64 = 1 << 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes(Certificate),
    No,
    BudgetExceeded,
}

impl OracleAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, OracleAnswer::Yes(_))
    }
}

struct Adder {
    group: FiniteAbelianGroup,
    table: Option<Vec<u32>>,
    n: usize,
}

impl Adder {
    fn new(group: &FiniteAbelianGroup) -> Self {
        let n = group.order() as usize;
        let table = (group.order() <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = group.add_index(a, b) as u32;
                }
            }
            t
        });
        Adder { group: group.clone(), table, n }
    }

    fn add(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.n + b] as usize,
            None => self.group.add_index(a, b),
        }
    }
}

/// `S - R` as a bitmap, where `R` is given as a bitmap of a subgroup.
fn minus_subgroup(adder: &Adder, s: &SubsetS, r: &[bool]) -> Vec<bool> {
    let n = adder.n;
    let r_elems: Vec<usize> = (0..n).filter(|&x| r[x]).collect();
    let mut out = vec![false; n];
    for x in s.elements() {
        let xi = adder.group.index_of(x);
        if out[xi] {
            continue;
        }
        // the whole coset x + R lies in S - R
        for &ri in &r_elems {
            out[adder.add(xi, ri)] = true;
        }
    }
    out
}

/// `R + <h>` for a subgroup bitmap `R`.
fn extend_subgroup(adder: &Adder, r: &[bool], h: usize) -> Vec<bool> {
    let mut out = r.to_vec();
    let r_elems: Vec<usize> = (0..adder.n).filter(|&x| r[x]).collect();
    let mut m = h;
    while m != 0 {
        for &ri in &r_elems {
            out[adder.add(ri, m)] = true;
        }
        m = adder.add(m, h);
    }
    out
}

/// Decides whether `(x* + H) ∩ S^t` is nonempty, counting one node per digit
/// tried.
pub fn oracle_solve(inst: &ProblemInstance, s: &SubsetS, budget: u64) -> Result<OracleAnswer> {
    let g = inst.group();
    if s.group() != g {
        return Err(Error::AmbientMismatch(format!("subset over {} used with instance over {g}", s.group())));
    }
    if g.order() > ORDER_LIMIT {
        return Err(Error::Precondition(format!("group order {} is too large for exhaustive search", g.order())));
    }
    let t = inst.t();
    let m = inst.hgens().len();
    let adder = Adder::new(g);
    let n = adder.n;

    let gens: Vec<Vec<usize>> =
        inst.hgens().iter().map(|h| h.iter().map(|x| g.index_of(x)).collect()).collect();
    let support: Vec<Vec<usize>> =
        gens.iter().map(|h| (0..t).filter(|&i| h[i] != 0).collect()).collect();
    let orders: Vec<i64> = inst
        .hgens()
        .iter()
        .map(|h| h.iter().fold(1i64, |acc, x| num_integer::lcm(acc, g.element_order(x))))
        .collect();

    // masks[mask_id[level][i]] is the allowed set for position i once the
    // first `level` digits are fixed
    let mut masks: Vec<Vec<bool>> = Vec::new();
    let mut mask_id = vec![vec![0u32; t]; m + 1];
    for i in 0..t {
        let mut r = vec![false; n];
        r[0] = true;
        masks.push(minus_subgroup(&adder, s, &r));
        let mut id = (masks.len() - 1) as u32;
        mask_id[m][i] = id;
        for level in (0..m).rev() {
            let h = gens[level][i];
            if !r[h] {
                r = extend_subgroup(&adder, &r, h);
                masks.push(minus_subgroup(&adder, s, &r));
                id = (masks.len() - 1) as u32;
            }
            mask_id[level][i] = id;
        }
    }
    // positions to recheck after fixing digit `level`
    let checks: Vec<Vec<usize>> = (0..m)
        .map(|level| {
            (0..t)
                .filter(|&i| gens[level][i] != 0 || mask_id[level][i] != mask_id[level + 1][i])
                .collect()
        })
        .collect();

    let mut sum: Vec<usize> = inst.xstar().iter().map(|x| g.index_of(x)).collect();
    if !(0..t).all(|i| masks[mask_id[0][i] as usize][sum[i]]) {
        return Ok(OracleAnswer::No);
    }
    let mut digit = vec![0i64; m];
    let mut nodes = 0u64;
    let mut d = 0usize;
    'search: loop {
        if d == m {
            return Ok(OracleAnswer::Yes(Certificate(digit)));
        }
        nodes += 1;
        if nodes > budget {
            return Ok(OracleAnswer::BudgetExceeded);
        }
        let ok = checks[d].iter().all(|&i| masks[mask_id[d + 1][i] as usize][sum[i]]);
        if ok {
            d += 1;
            continue;
        }
        // advance to the next digit, backtracking through exhausted levels
        loop {
            for &i in &support[d] {
                sum[i] = adder.add(sum[i], gens[d][i]);
            }
            digit[d] += 1;
            if digit[d] < orders[d] {
                continue 'search;
            }
            // ord(h) additions bring the sum back to where it was
            digit[d] = 0;
            if d == 0 {
                return Ok(OracleAnswer::No);
            }
            d -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::GroupElement;
    use crate::problem::verify_certificate;

    fn e(x: i64) -> GroupElement {
        GroupElement(vec![x])
    }

    #[test]
    fn small_examples() {
        let g = FiniteAbelianGroup::cyclic(4).unwrap();
        let s = SubsetS::from_residues(&g, &[0, 1]).unwrap();
        let inst = ProblemInstance::new(g.clone(), vec![e(1)], vec![vec![e(2)]]).unwrap();
        assert_eq!(oracle_solve(&inst, &s, 100).unwrap(), OracleAnswer::Yes(Certificate(vec![0])));
        let inst = ProblemInstance::new(g.clone(), vec![e(3)], vec![]).unwrap();
        assert_eq!(oracle_solve(&inst, &s, 100).unwrap(), OracleAnswer::No);
        let inst = ProblemInstance::new(g.clone(), vec![], vec![vec![], vec![]]).unwrap();
        assert_eq!(oracle_solve(&inst, &s, 100).unwrap(), OracleAnswer::Yes(Certificate(vec![0, 0])));
    }

    #[test]
    fn finds_lex_smallest() {
        // x* = (3,3), H = <(1,0),(0,1)>: need both coordinates in {1,2}
        let g = FiniteAbelianGroup::cyclic(4).unwrap();
        let s = SubsetS::from_residues(&g, &[1, 2]).unwrap();
        let inst =
            ProblemInstance::new(g, vec![e(3), e(3)], vec![vec![e(1), e(0)], vec![e(0), e(1)]]).unwrap();
        let ans = oracle_solve(&inst, &s, 1000).unwrap();
        assert_eq!(ans, OracleAnswer::Yes(Certificate(vec![2, 2])));
        if let OracleAnswer::Yes(c) = ans {
            assert!(verify_certificate(&inst, &s, &c).unwrap());
        }
    }

    #[test]
    fn constant_coordinate_fails_before_search() {
        let g = FiniteAbelianGroup::cyclic(7).unwrap();
        let s = SubsetS::from_residues(&g, &[1, 2, 4]).unwrap();
        let gens = (0..6).map(|_| vec![e(1), e(0)]).collect();
        let inst = ProblemInstance::new(g, vec![e(0), e(3)], gens).unwrap();
        assert_eq!(oracle_solve(&inst, &s, 1).unwrap(), OracleAnswer::No);
    }

    #[test]
    fn budget_is_reported() {
        // every point is (k, 3k) and 3S is disjoint from S, but no prefix can be pruned
        let g = FiniteAbelianGroup::cyclic(7).unwrap();
        let s = SubsetS::from_residues(&g, &[1, 2, 4]).unwrap();
        let gens: Vec<_> = (0..6).map(|_| vec![e(1), e(3)]).collect();
        let inst = ProblemInstance::new(g, vec![e(0), e(0)], gens).unwrap();
        assert_eq!(oracle_solve(&inst, &s, 10).unwrap(), OracleAnswer::BudgetExceeded);
        assert_eq!(oracle_solve(&inst, &s, DEFAULT_BUDGET).unwrap(), OracleAnswer::No);
    }
}
