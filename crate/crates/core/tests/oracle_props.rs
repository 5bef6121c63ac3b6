mod common;

use common::{enum_oracle, lex_smallest_certificate, rng, set, z};
use cosetsat::random::{random_group, random_instance, random_subset};
use cosetsat::{oracle_solve, verify_certificate, GroupElement, OracleAnswer, ProblemInstance, SubsetS};
use rand::seq::SliceRandom;
use rand::Rng;

const BUDGET: u64 = 10_000_000;

#[test]
fn agrees_with_enumeration_and_finds_lex_smallest() {
    let mut rng = rng(21);
    let mut yes = 0;
    for _ in 0..1000 {
        let g = random_group(&mut rng, 9);
        let s = random_subset(&mut rng, &g);
        let (t, k) = (rng.gen_range(1..=3), rng.gen_range(0..=3));
        let pi = rng.gen_bool(0.3);
        let inst = random_instance(&mut rng, &g, t, k, pi);
        let want = enum_oracle(&inst, &s);
        match oracle_solve(&inst, &s, BUDGET).unwrap() {
            OracleAnswer::Yes(c) => {
                assert!(want, "{s} {inst:?}");
                assert!(verify_certificate(&inst, &s, &c).unwrap());
                assert_eq!(Some(c.0), lex_smallest_certificate(&inst, &s), "{s} {inst:?}");
                yes += 1;
            }
            OracleAnswer::No => assert!(!want, "{s} {inst:?}"),
            OracleAnswer::BudgetExceeded => panic!("budget exceeded on a tiny instance"),
        }
    }
    assert!(yes > 100 && yes < 900, "both answers should be exercised, got {yes} yes");
}

fn permute(inst: &ProblemInstance, perm: &[usize]) -> ProblemInstance {
    let p = |xs: &[GroupElement]| perm.iter().map(|&i| xs[i].clone()).collect::<Vec<_>>();
    ProblemInstance::new(inst.group().clone(), p(inst.xstar()), inst.hgens().iter().map(|h| p(h)).collect()).unwrap()
}

fn negate(inst: &ProblemInstance) -> ProblemInstance {
    let g = inst.group();
    let n = |xs: &[GroupElement]| xs.iter().map(|x| g.neg(x)).collect::<Vec<_>>();
    ProblemInstance::new(g.clone(), n(inst.xstar()), inst.hgens().iter().map(|h| n(h)).collect()).unwrap()
}

#[test]
fn invariant_under_position_permutation_and_negation() {
    let mut rng = rng(22);
    for _ in 0..500 {
        let g = random_group(&mut rng, 12);
        let s = random_subset(&mut rng, &g);
        let (t, k) = (rng.gen_range(1..=4), rng.gen_range(0..=3));
        let inst = random_instance(&mut rng, &g, t, k, false);
        let base = oracle_solve(&inst, &s, BUDGET).unwrap().is_yes();
        let mut perm: Vec<usize> = (0..t).collect();
        perm.shuffle(&mut rng);
        assert_eq!(oracle_solve(&permute(&inst, &perm), &s, BUDGET).unwrap().is_yes(), base);
        let neg_s = SubsetS::new(g.clone(), s.elements().iter().map(|x| g.neg(x)).collect()).unwrap();
        assert_eq!(oracle_solve(&negate(&inst), &neg_s, BUDGET).unwrap().is_yes(), base);
    }
}

#[test]
fn budget_is_reported_not_guessed() {
    let mut rng = rng(23);
    for _ in 0..200 {
        let g = random_group(&mut rng, 9);
        let s = random_subset(&mut rng, &g);
        let inst = random_instance(&mut rng, &g, 3, 3, false);
        let full = oracle_solve(&inst, &s, BUDGET).unwrap();
        for budget in [1, 3, 10] {
            match oracle_solve(&inst, &s, budget).unwrap() {
                OracleAnswer::BudgetExceeded => {}
                other => assert_eq!(other, full),
            }
        }
    }
}

#[test]
fn small_worked_examples() {
    let g = z(4);
    let e = |x| GroupElement(vec![x]);
    // (x*, H) = (0, <(1,1)>) meets {1,3}^2 at (1,1)
    let inst = ProblemInstance::new(g.clone(), vec![e(0), e(0)], vec![vec![e(1), e(1)]]).unwrap();
    assert_eq!(oracle_solve(&inst, &set(&g, &[1, 3]), 100).unwrap(), OracleAnswer::Yes(cosetsat::Certificate(vec![1])));
    // (1, 0) + <(1,1)> has coordinates of different parity
    let inst = ProblemInstance::new(g.clone(), vec![e(1), e(0)], vec![vec![e(1), e(1)]]).unwrap();
    assert_eq!(oracle_solve(&inst, &set(&g, &[1, 3]), 100).unwrap(), OracleAnswer::No);
    // no positions: always yes with the zero certificate
    let inst = ProblemInstance::new(g.clone(), vec![], vec![vec![], vec![]]).unwrap();
    assert_eq!(oracle_solve(&inst, &set(&g, &[]), 100).unwrap(), OracleAnswer::Yes(cosetsat::Certificate(vec![0, 0])));
}
