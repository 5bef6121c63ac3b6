//! Independent reference implementations used as test oracles. Nothing here
//! calls the library's search, membership or coset code.

#![allow(dead_code)]

pub mod cases;

use std::collections::{BTreeSet, HashSet, VecDeque};

use cosetsat::reductions::Graph;
use cosetsat::{FiniteAbelianGroup, GroupElement, ProblemInstance, SubsetS};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn z(n: i64) -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(n).unwrap()
}

pub fn grp(m: &[i64]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(m.to_vec()).unwrap()
}

pub fn set(g: &FiniteAbelianGroup, residues: &[i64]) -> SubsetS {
    SubsetS::from_residues(g, residues).unwrap()
}

/// Every subset of `g` (including the empty one), by bitmask.
pub fn all_subsets(g: &FiniteAbelianGroup) -> Vec<SubsetS> {
    let elems: Vec<GroupElement> = g.elements().collect();
    (0u32..1 << elems.len())
        .map(|mask| {
            let chosen = elems.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e.clone()).collect();
            SubsetS::new(g.clone(), chosen).unwrap()
        })
        .collect()
}

fn add_flat(a: &[i64], b: &[i64], moduli: &[i64]) -> Vec<i64> {
    a.iter().zip(b).zip(moduli).map(|((x, y), m)| (x + y).rem_euclid(*m)).collect()
}

fn flat(tuple: &[GroupElement]) -> Vec<i64> {
    tuple.iter().flat_map(|x| x.0.iter().copied()).collect()
}

/// The subgroup generated by `gens` inside `Z/m1 × … × Z/mk`, by closure.
pub fn closure(gens: &[Vec<i64>], moduli: &[i64]) -> HashSet<Vec<i64>> {
    let zero = vec![0; moduli.len()];
    let mut seen = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = add_flat(&x, g, moduli);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Answers the instance by listing every point of `x* + H`.
pub fn enum_oracle(inst: &ProblemInstance, s: &SubsetS) -> bool {
    let moduli: Vec<i64> = (0..inst.t()).flat_map(|_| inst.group().moduli().iter().copied()).collect();
    let gens: Vec<Vec<i64>> = inst.hgens().iter().map(|h| flat(h)).collect();
    let x = flat(inst.xstar());
    let r = inst.group().rank();
    let members: HashSet<Vec<i64>> = s.elements().iter().map(|e| e.0.clone()).collect();
    if r == 0 {
        return inst.t() == 0 || !members.is_empty();
    }
    closure(&gens, &moduli).iter().any(|h| add_flat(&x, h, &moduli).chunks(r).all(|c| members.contains(c)))
}

/// The lexicographically smallest coefficient vector with digits in
/// `[0, ord(h_i))` that witnesses yes, by counting through all of them.
pub fn lex_smallest_certificate(inst: &ProblemInstance, s: &SubsetS) -> Option<Vec<i64>> {
    let g = inst.group();
    let orders: Vec<i64> = inst
        .hgens()
        .iter()
        .map(|h| {
            let moduli: Vec<i64> = (0..inst.t()).flat_map(|_| g.moduli().iter().copied()).collect();
            closure(&[flat(h)], &moduli).len() as i64
        })
        .collect();
    let mut digits = vec![0i64; orders.len()];
    loop {
        let mut point: Vec<GroupElement> = inst.xstar().to_vec();
        for (c, h) in digits.iter().zip(inst.hgens()) {
            for (p, x) in point.iter_mut().zip(h) {
                *p = g.add(p, &g.scale(*c, x));
            }
        }
        if point.iter().all(|p| s.contains(p)) {
            return Some(digits);
        }
        // odometer with the last digit fastest, so the first hit is lex-smallest
        let mut i = digits.len();
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < orders[i] {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// All subgroups of `g`, each as a set of element indices. Every subgroup of
/// a group of rank `r` is generated by `r` elements, so closing every
/// `rank`-tuple finds them all.
pub fn all_subgroups(g: &FiniteAbelianGroup) -> BTreeSet<BTreeSet<usize>> {
    let elems: Vec<GroupElement> = g.elements().collect();
    let n = elems.len();
    let r = g.rank().max(1);
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; r];
    loop {
        let gens: Vec<Vec<i64>> = idx.iter().map(|&i| elems[i].0.clone()).collect();
        let sub: BTreeSet<usize> =
            closure(&gens, g.moduli()).into_iter().map(|v| g.index_of(&GroupElement(v))).collect();
        out.insert(sub);
        let mut k = r;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Whether `s` equals `x + K` for some subgroup `K` and some `x`.
pub fn coset_by_enumeration(s: &SubsetS, subgroups: &BTreeSet<BTreeSet<usize>>) -> bool {
    let g = s.group();
    let Some(x) = s.elements().first() else { return false };
    let shifted: BTreeSet<usize> = s.elements().iter().map(|y| g.index_of(&g.sub(y, x))).collect();
    subgroups.contains(&shifted)
}

/// Whether `graph` has a proper colouring with `k` colours, by trying all.
pub fn brute_colorable(graph: &Graph, k: usize) -> bool {
    let n = graph.n();
    let mut colors = vec![1usize; n];
    loop {
        if graph.edges().iter().all(|&(u, v)| colors[u - 1] != colors[v - 1]) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            colors[i] += 1;
            if colors[i] <= k {
                break;
            }
            colors[i] = 1;
            i += 1;
        }
    }
}

/// Widens a matrix so products below cannot overflow.
pub fn wide(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    m.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect()
}

/// Plain matrix product.
pub fn matmul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect())
        .collect()
}

/// Integer determinant by cofactor expansion (small matrices only).
pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}
