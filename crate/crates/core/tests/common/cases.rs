//! Random in-domain inputs for each instance transformer, paired with the
//! subset each side must be read against.

use cosetsat::abelian::quotient_group;
use cosetsat::random::{random_element, random_group, random_hom, random_injective_hom, random_instance, random_subset};
use cosetsat::reductions::{divideout_lift, map_instance, p_from_pi, pi_from_p, transform_double, translate_instance};
use cosetsat::{theta, FiniteAbelianGroup, ProblemInstance, SubgroupGens, SubsetS};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// An input read against `s_in` and an output read against `s_out`; the
/// transformer is correct when both answers agree.
pub struct Case {
    pub input: ProblemInstance,
    pub s_in: SubsetS,
    pub output: ProblemInstance,
    pub s_out: SubsetS,
}

fn small_instance(rng: &mut ChaCha8Rng, g: &FiniteAbelianGroup, max_t: usize, pi: bool) -> ProblemInstance {
    let t = rng.gen_range(1..=max_t);
    let k = rng.gen_range(0..=3);
    random_instance(rng, g, t, k, pi)
}

pub fn translate_case(rng: &mut ChaCha8Rng) -> Case {
    let g = random_group(rng, 9);
    let s = random_subset(rng, &g);
    let input = small_instance(rng, &g, 3, false);
    let h = random_element(rng, &g);
    Case { output: translate_instance(&input, &h).unwrap(), s_out: s.translate(&h), input, s_in: s }
}

pub fn map_case(rng: &mut ChaCha8Rng) -> Case {
    loop {
        let src = random_group(rng, 6);
        let tgt = random_group(rng, 12);
        let Some(f) = random_injective_hom(rng, &src, &tgt, 20).unwrap() else { continue };
        let s_out = random_subset(rng, &tgt);
        let s_in = SubsetS::from_predicate(&src, |x| s_out.contains(&f.apply(x).unwrap()));
        let input = small_instance(rng, &src, 3, false);
        return Case { output: map_instance(&input, &f).unwrap(), input, s_in, s_out };
    }
}

pub fn divide_out_case(rng: &mut ChaCha8Rng) -> Case {
    let g = random_group(rng, 12);
    let n = rng.gen_range(1..=2);
    let k = SubgroupGens::new(g.clone(), (0..n).map(|_| random_element(rng, &g)).collect()).unwrap();
    let q = quotient_group(&g, &k).unwrap();
    let s_in = random_subset(rng, q.quotient());
    let s_out = SubsetS::from_predicate(&g, |x| s_in.contains(&q.proj().apply(x).unwrap()));
    let input = small_instance(rng, q.quotient(), 2, false);
    Case { output: divideout_lift(&input, &q).unwrap(), input, s_in, s_out }
}

pub fn transform_double_case(rng: &mut ChaCha8Rng) -> Case {
    let g = random_group(rng, 8);
    let s = random_subset(rng, &g);
    transform_double_case_for(rng, &s)
}

/// Input read against `S ∩ φ^{-1}(S)` for a random `φ(x) = c(x) + g`.
pub fn transform_double_case_for(rng: &mut ChaCha8Rng, s: &SubsetS) -> Case {
    let g = s.group();
    let c = random_hom(rng, g, g);
    let shift = random_element(rng, g);
    let s_in = SubsetS::from_predicate(g, |x| s.contains(x) && s.contains(&g.add(&c.apply(x).unwrap(), &shift)));
    let input = small_instance(rng, g, 3, false);
    Case { output: transform_double(&input, &c, &shift).unwrap(), input, s_in, s_out: s.clone() }
}

/// Nonempty `S'` with `θ(S') = S'` that generates the group.
fn theta_fixed_generating(rng: &mut ChaCha8Rng, g: &FiniteAbelianGroup) -> Option<SubsetS> {
    (0..30).map(|_| random_subset(rng, g)).find(|s| theta(s) == *s && s.span().order().unwrap() == g.order())
}

pub fn pi_from_p_case(rng: &mut ChaCha8Rng) -> Case {
    loop {
        let g = random_group(rng, 8);
        let Some(s) = theta_fixed_generating(rng, &g) else { continue };
        let mut order = s.elements().to_vec();
        // the step must work for any enumeration order
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
        let input = small_instance(rng, &g, 2, false);
        return Case { output: pi_from_p(&input, &order).unwrap(), input, s_in: s.clone(), s_out: s };
    }
}

pub fn p_from_pi_case(rng: &mut ChaCha8Rng) -> Case {
    let g = random_group(rng, 9);
    let s = random_subset(rng, &g);
    let input = small_instance(rng, &g, 3, true);
    Case { output: p_from_pi(&input).unwrap(), input, s_in: s.clone(), s_out: s }
}

pub type CaseGen = fn(&mut ChaCha8Rng) -> Case;

pub const TRANSFORMERS: [(&str, CaseGen); 5] = [
    ("translate", translate_case),
    ("map", map_case),
    ("divide-out-lift", divide_out_case),
    ("transform-double", transform_double_case),
    ("pi-from-p", pi_from_p_case),
];
