mod common;

use std::collections::HashSet;

use common::{closure, det, matmul, wide};
use cosetsat::abelian::{
    congruence_kernel, kernel_of_hom, quotient_group, smith_normal_form, solve_linear_congruence, solve_over_integers,
    subgroup_intersect, IntMatrix,
};
use cosetsat::random::{random_element, random_group, random_hom};
use cosetsat::{FiniteAbelianGroup, GroupElement, SubgroupGens};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-30i64..=30, c), r))
}

fn congruence_system() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>, Vec<i64>)> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| {
        (
            prop::collection::vec(prop::collection::vec(-8i64..=8, c), r),
            prop::collection::vec(0i64..12, r),
            prop::collection::vec(2i64..=6, r),
        )
    })
}

fn satisfies(a: &[Vec<i64>], x: &[i64], b: &[i64], moduli: &[i64]) -> bool {
    a.iter().zip(b).zip(moduli).all(|((row, bi), m)| (row.iter().zip(x).map(|(p, q)| p * q).sum::<i64>() - bi).rem_euclid(*m) == 0)
}

fn brute_solvable(a: &[Vec<i64>], b: &[i64], moduli: &[i64]) -> bool {
    let n: i64 = moduli.iter().copied().fold(1, num_integer_lcm);
    let cols = a[0].len();
    (0..n.pow(cols as u32)).any(|mut k| {
        let x: Vec<i64> = (0..cols)
            .map(|_| {
                let v = k % n;
                k /= n;
                v
            })
            .collect();
        satisfies(a, &x, b, moduli)
    })
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_form_is_a_valid_factorization(rows in matrix()) {
        let c = rows[0].len();
        let m = IntMatrix::from_rows(rows.clone(), c).unwrap();
        let f = smith_normal_form(&m).unwrap();
        let (u, d, v) = (wide(&f.u.to_rows()), wide(&f.d.to_rows()), wide(&f.v.to_rows()));
        prop_assert_eq!(matmul(&matmul(&u, &wide(&rows)), &v), d.clone());
        prop_assert_eq!(det(&u).abs(), 1);
        prop_assert_eq!(det(&v).abs(), 1);
        prop_assert_eq!(matmul(&u, &wide(&f.u_inv.to_rows())), wide(&IntMatrix::<i64>::identity(rows.len()).to_rows()));
        for (i, r) in d.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                prop_assert!(i == j || x == 0);
            }
        }
        let diag = f.diagonal();
        prop_assert!(diag.iter().all(|&x| x >= 0));
        for w in diag.windows(2) {
            let divides = if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 };
            prop_assert!(divides);
        }
        prop_assert_eq!(f.rank, diag.iter().filter(|&&x| x != 0).count());
    }

    #[test]
    fn smith_form_is_deterministic(rows in matrix()) {
        let m = IntMatrix::from_rows(rows.clone(), rows[0].len()).unwrap();
        prop_assert_eq!(smith_normal_form(&m).unwrap(), smith_normal_form(&m).unwrap());
    }

    #[test]
    fn congruence_solver_matches_brute_force((a, b, moduli) in congruence_system()) {
        let m = IntMatrix::from_rows(a.clone(), a[0].len()).unwrap();
        let got = solve_linear_congruence(&m, &b, &moduli).unwrap();
        let via_integers = solve_over_integers(&m, &b, &moduli).unwrap();
        let exists = brute_solvable(&a, &b, &moduli);
        prop_assert_eq!(got.is_some(), exists);
        prop_assert_eq!(via_integers.is_some(), exists);
        if let Some(x) = got {
            prop_assert!(satisfies(&a, &x, &b, &moduli));
        }
        if let Some(x) = via_integers {
            prop_assert!(satisfies(&a, &x, &b, &moduli));
        }
    }

    #[test]
    fn congruence_kernel_generates_all_solutions((a, _b, moduli) in congruence_system()) {
        let cols = a[0].len();
        let period = moduli.iter().copied().fold(1, num_integer_lcm);
        let m = IntMatrix::from_rows(a.clone(), cols).unwrap();
        let gens = congruence_kernel(&m, &moduli, period).unwrap();
        let zero = vec![0; moduli.len()];
        for g in &gens {
            prop_assert!(satisfies(&a, g, &zero, &moduli));
        }
        let box_moduli = vec![period; cols];
        let spanned = closure(&gens, &box_moduli);
        let solutions = (0..period.pow(cols as u32)).filter(|&k| {
            let x: Vec<i64> = (0..cols).map(|i| k / period.pow(i as u32) % period).collect();
            satisfies(&a, &x, &zero, &moduli)
        }).count();
        prop_assert_eq!(spanned.len(), solutions);
    }
}

fn as_set(xs: impl IntoIterator<Item = Vec<i64>>) -> HashSet<Vec<i64>> {
    xs.into_iter().collect()
}

#[test]
fn membership_agrees_with_closure() {
    let mut rng = common::rng(11);
    for _ in 0..400 {
        let g = random_group(&mut rng, 24);
        let k = rand::Rng::gen_range(&mut rng, 0..=3);
        let gens: Vec<GroupElement> = (0..k).map(|_| random_element(&mut rng, &g)).collect();
        let h = SubgroupGens::new(g.clone(), gens.clone()).unwrap();
        let elems = closure(&gens.iter().map(|x| x.0.clone()).collect::<Vec<_>>(), g.moduli());
        assert_eq!(h.order().unwrap(), elems.len() as u64, "{g} {gens:?}");
        for x in g.elements() {
            let got = h.membership(&x).unwrap();
            assert_eq!(got.is_some(), elems.contains(&x.0), "{g} {gens:?} {x}");
            if let Some(c) = got {
                assert_eq!(g.combine(&c, &gens), x);
            }
        }
        let (q, emb) = h.presentation().unwrap();
        let image = as_set(q.elements().map(|y| emb.apply(&y).unwrap().0));
        assert_eq!(image, elems);
        assert_eq!(q.order(), elems.len() as u64);
    }
}

#[test]
fn kernels_and_intersections_agree_with_enumeration() {
    let mut rng = common::rng(12);
    for _ in 0..300 {
        let src = random_group(&mut rng, 16);
        let tgt = random_group(&mut rng, 16);
        let f = random_hom(&mut rng, &src, &tgt);
        let ker = kernel_of_hom(&f).unwrap();
        let want = as_set(src.elements().filter(|x| f.apply(x).unwrap().is_zero()).map(|x| x.0));
        let got = closure(&ker.gens().iter().map(|x| x.0.clone()).collect::<Vec<_>>(), src.moduli());
        assert_eq!(got, want, "{f:?}");

        let a: Vec<GroupElement> = (0..2).map(|_| random_element(&mut rng, &src)).collect();
        let b: Vec<GroupElement> = (0..2).map(|_| random_element(&mut rng, &src)).collect();
        let ha = closure(&a.iter().map(|x| x.0.clone()).collect::<Vec<_>>(), src.moduli());
        let hb = closure(&b.iter().map(|x| x.0.clone()).collect::<Vec<_>>(), src.moduli());
        let meet = subgroup_intersect(
            &SubgroupGens::new(src.clone(), a).unwrap(),
            &SubgroupGens::new(src.clone(), b).unwrap(),
        )
        .unwrap();
        let got = closure(&meet.gens().iter().map(|x| x.0.clone()).collect::<Vec<_>>(), src.moduli());
        assert_eq!(got, as_set(ha.intersection(&hb).cloned()));
    }
}

#[test]
fn quotient_projection_and_lift() {
    let mut rng = common::rng(13);
    for _ in 0..300 {
        let g = random_group(&mut rng, 24);
        let gens: Vec<GroupElement> = (0..rand::Rng::gen_range(&mut rng, 0..=2)).map(|_| random_element(&mut rng, &g)).collect();
        let k = SubgroupGens::new(g.clone(), gens.clone()).unwrap();
        let kset = closure(&gens.iter().map(|x| x.0.clone()).collect::<Vec<_>>(), g.moduli());
        let q = quotient_group(&g, &k).unwrap();
        assert_eq!(q.quotient().order() * kset.len() as u64, g.order());
        // invariant-factor form: each modulus divides the next
        for w in q.quotient().moduli().windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        let kernel = as_set(g.elements().filter(|x| q.proj().apply(x).unwrap().is_zero()).map(|x| x.0));
        assert_eq!(kernel, kset);
        for y in q.quotient().elements() {
            let l = q.lift(&y).unwrap();
            assert_eq!(q.proj().apply(&l).unwrap(), y);
            let first = g.elements().find(|x| q.proj().apply(x).unwrap() == y).unwrap();
            assert_eq!(l, first, "lift is the lexicographically smallest preimage");
        }
    }
}

#[test]
fn group_arithmetic_laws() {
    let mut rng = common::rng(14);
    for _ in 0..200 {
        let g = random_group(&mut rng, 30);
        let x = random_element(&mut rng, &g);
        let y = random_element(&mut rng, &g);
        assert_eq!(g.add(&x, &y), g.add(&y, &x));
        assert!(g.add(&x, &g.neg(&x)).is_zero());
        assert_eq!(g.sub(&g.add(&x, &y), &y), x);
        assert!(g.scale(g.element_order(&x), &x).is_zero());
        assert_eq!(g.element_at(g.index_of(&x)), x);
        assert_eq!(g.exponent() % g.element_order(&x), 0);
    }
    let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
    let listed: Vec<GroupElement> = g.elements().collect();
    let mut sorted = listed.clone();
    sorted.sort();
    assert_eq!(listed, sorted);
}
