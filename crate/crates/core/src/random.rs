//! Seeded generators for groups, subsets, instances, maps and graphs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::abelian::{kernel_of_hom, FiniteAbelianGroup, GroupElement, Homomorphism};
use crate::error::Result;
use crate::problem::{ProblemInstance, SubsetS};
use crate::reductions::Graph;

/// Every ordered modulus list `[d1, ..., dk]` with `di ≥ 2` and product in
/// `2..=max_order`. `[2,4]` and `[4,2]` both appear.
pub fn small_groups(max_order: u64) -> Vec<FiniteAbelianGroup> {
    fn go(prefix: &mut Vec<i64>, prod: u64, max: u64, out: &mut Vec<Vec<i64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        for d in 2..=max / prod {
            prefix.push(d as i64);
            go(prefix, prod * d, max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, max_order, &mut out);
    out.into_iter().map(|m| FiniteAbelianGroup::new(m).expect("moduli ≥ 2")).collect()
}

pub fn random_group<R: Rng>(rng: &mut R, max_order: u64) -> FiniteAbelianGroup {
    let all = small_groups(max_order.max(2));
    all.choose(rng).expect("nonempty").clone()
}

pub fn random_element<R: Rng>(rng: &mut R, g: &FiniteAbelianGroup) -> GroupElement {
    GroupElement(g.moduli().iter().map(|&d| rng.gen_range(0..d)).collect())
}

/// Each element kept with probability one half; retried until nonempty.
pub fn random_subset<R: Rng>(rng: &mut R, g: &FiniteAbelianGroup) -> SubsetS {
    loop {
        let s = SubsetS::from_predicate(g, |_| rng.gen_bool(0.5));
        if !s.is_empty() {
            return s;
        }
    }
}

/// A random coset `x + H` of `G` as a subset.
pub fn random_coset<R: Rng>(rng: &mut R, g: &FiniteAbelianGroup) -> SubsetS {
    let k = rng.gen_range(0..=2);
    let gens: Vec<GroupElement> = (0..k).map(|_| random_element(rng, g)).collect();
    let x = random_element(rng, g);
    let h = crate::abelian::SubgroupGens::new(g.clone(), gens).expect("elements of g");
    let elems = h.enumerate(usize::MAX).expect("no cap").into_iter().map(|y| g.add(&x, &y)).collect();
    SubsetS::new(g.clone(), elems).expect("elements of g")
}

pub fn random_instance<R: Rng>(
    rng: &mut R,
    g: &FiniteAbelianGroup,
    t: usize,
    ngens: usize,
    pi: bool,
) -> ProblemInstance {
    let tuple = |rng: &mut R| (0..t).map(|_| random_element(rng, g)).collect::<Vec<_>>();
    let xstar = if pi { vec![g.zero(); t] } else { tuple(rng) };
    let hgens = (0..ngens).map(|_| tuple(rng)).collect();
    ProblemInstance::new(g.clone(), xstar, hgens).expect("shapes agree")
}

/// A random well-defined homomorphism: the image of the i-th basis vector is
/// scaled down until its order divides `d_i`.
pub fn random_hom<R: Rng>(rng: &mut R, src: &FiniteAbelianGroup, tgt: &FiniteAbelianGroup) -> Homomorphism {
    let images: Vec<GroupElement> = src
        .moduli()
        .iter()
        .map(|&d| {
            let y = random_element(rng, tgt);
            let o = tgt.element_order(&y);
            tgt.scale(o / num_integer::gcd(o, d), &y)
        })
        .collect();
    Homomorphism::from_images(src.clone(), tgt.clone(), &images).expect("orders divide the moduli")
}

/// A random injective homomorphism, or `None` after `tries` misses.
pub fn random_injective_hom<R: Rng>(
    rng: &mut R,
    src: &FiniteAbelianGroup,
    tgt: &FiniteAbelianGroup,
    tries: usize,
) -> Result<Option<Homomorphism>> {
    for _ in 0..tries {
        let f = random_hom(rng, src, tgt);
        if kernel_of_hom(&f)?.gens().iter().all(GroupElement::is_zero) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Erdős–Rényi graph on `n` vertices.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    Graph::new(n, edges).expect("endpoints in range")
}
