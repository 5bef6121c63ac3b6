//! A reduced-size version of the property suite, runnable from the binary.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::{quotient_group, smith_normal_form, solve_linear_congruence, IntMatrix, SubgroupGens};
use crate::classifier::{classify_p, classify_pi, is_coset, theta, Verdict};
use crate::compiler::{apply_pipeline, compile_hardness_p, compile_hardness_pi, ReductionPipeline};
use crate::error::Result;
use crate::format::{parse_instance, parse_pipeline, write_instance, write_pipeline};
use crate::oracle::{oracle_solve, OracleAnswer};
use crate::poly::{solve_p_coset, solve_pi_theta};
use crate::problem::{verify_certificate, SubsetS};
use crate::random::{random_coset, random_group, random_instance, random_subset, small_groups};
use crate::reductions::{divideout_lift, translate_instance, Graph};
use crate::FiniteAbelianGroup;

const BUDGET: u64 = 20_000_000;

/// Outcome of one property: how many cases ran and which ones failed.
#[derive(Clone, Debug)]
pub struct Report {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Run {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Run {
    fn new(name: &'static str) -> Self {
        Run { name, cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    fn finish(self) -> Report {
        Report { name: self.name, cases: self.cases, failures: self.failures }
    }
}

fn answer(inst: &crate::ProblemInstance, s: &SubsetS) -> Result<Option<bool>> {
    Ok(match oracle_solve(inst, s, BUDGET)? {
        OracleAnswer::Yes(_) => Some(true),
        OracleAnswer::No => Some(false),
        OracleAnswer::BudgetExceeded => None,
    })
}

fn some_instance(
    rng: &mut ChaCha8Rng,
    g: &FiniteAbelianGroup,
    t: std::ops::RangeInclusive<usize>,
    max_gens: usize,
    pi: bool,
) -> crate::ProblemInstance {
    let t = rng.gen_range(t);
    let k = rng.gen_range(0..=max_gens);
    random_instance(rng, g, t, k, pi)
}

fn snf(rng: &mut ChaCha8Rng) -> Result<Report> {
    let mut run = Run::new("smith normal form");
    for _ in 0..100 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-20..=20)).collect()).collect();
        let m = IntMatrix::from_rows(rows, c)?;
        let f = smith_normal_form(&m)?;
        let d = f.diagonal();
        let ok = f.u.mul(&m)?.mul(&f.v)? == f.d
            && f.d.is_diagonal()
            && f.u.mul(&f.u_inv)? == IntMatrix::identity(r)
            && d.iter().all(|&x| x >= 0)
            && d.windows(2).all(|w| if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 });
        run.check(ok, || format!("{m:?}"));
    }
    Ok(run.finish())
}

fn congruences(rng: &mut ChaCha8Rng) -> Result<Report> {
    let mut run = Run::new("linear congruences");
    for _ in 0..200 {
        let rows = rng.gen_range(1..=2);
        let cols = rng.gen_range(1..=2);
        let moduli: Vec<i64> = (0..rows).map(|_| rng.gen_range(2..=6)).collect();
        let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(0..6)).collect()).collect();
        let b: Vec<i64> = moduli.iter().map(|&m| rng.gen_range(0..m)).collect();
        let am = IntMatrix::from_rows(a.clone(), cols)?;
        let n: i64 = moduli.iter().product();
        let sat = |x: &[i64]| (0..rows).all(|i| (a[i].iter().zip(x).map(|(p, q)| p * q).sum::<i64>() - b[i]).rem_euclid(moduli[i]) == 0);
        let exists = (0..n.pow(cols as u32)).any(|mut k| {
            let x: Vec<i64> = (0..cols).map(|_| { let v = k % n; k /= n; v }).collect();
            sat(&x)
        });
        let got = solve_linear_congruence(&am, &b, &moduli)?;
        run.check(got.as_deref().map_or(!exists, sat), || format!("{a:?} x = {b:?} mod {moduli:?}"));
    }
    Ok(run.finish())
}

fn coset_by_closure(s: &SubsetS) -> bool {
    let g = s.group();
    let Some(base) = s.smallest() else { return false };
    let d: Vec<_> = s.elements().iter().map(|x| g.sub(x, base)).collect();
    let dset = SubsetS::new(g.clone(), d.clone()).expect("same group");
    d.iter().all(|x| d.iter().all(|y| dset.contains(&g.add(x, y))))
}

fn classifier(_: &mut ChaCha8Rng) -> Result<Report> {
    let mut run = Run::new("classifier against closure test");
    for g in small_groups(6) {
        let n = g.order() as usize;
        for mask in 1u32..(1 << n) {
            let s = SubsetS::from_predicate(&g, |x| mask >> g.index_of(x) & 1 == 1);
            let want = coset_by_closure(&s);
            let got = is_coset(&s)?.is_some();
            let verdict = classify_p(&s)?.verdict == Verdict::InP;
            run.check(got == want && verdict == want, || format!("{g} {s}"));
        }
    }
    Ok(run.finish())
}

fn theta_laws(_: &mut ChaCha8Rng) -> Result<Report> {
    let mut run = Run::new("theta laws");
    for m in [2, 3, 4, 5, 7, 8] {
        let g = FiniteAbelianGroup::cyclic(m)?;
        for mask in 1u32..(1 << m) {
            let s = SubsetS::from_predicate(&g, |x| mask >> g.index_of(x) & 1 == 1);
            let t = theta(&s);
            let prime_power = if s.contains(&g.zero()) { SubsetS::new(g.clone(), vec![g.zero()])? } else { s.clone() };
            run.check(t.is_subset_of(&s) && theta(&t) == t && t == prime_power, || format!("Z/{m} {s}"));
        }
    }
    Ok(run.finish())
}

fn poly_vs_oracle(rng: &mut ChaCha8Rng) -> Result<Report> {
    let mut run = Run::new("polynomial solvers against oracle");
    for i in 0..200 {
        let g = random_group(rng, 9);
        let pi = i % 2 == 1;
        let s = if pi { random_subset(rng, &g) } else { random_coset(rng, &g) };
        if pi && classify_pi(&s)?.verdict != Verdict::InP {
            continue;
        }
        let inst = some_instance(rng, &g, 1..=3, 3, pi);
        let d = if pi { solve_pi_theta(&inst, &s)? } else { solve_p_coset(&inst, &s)? };
        let cert_ok = match &d {
            crate::poly::Decision::Yes(c) => verify_certificate(&inst, &s, c)?,
            crate::poly::Decision::No => true,
        };
        let want = answer(&inst, &s)?;
        run.check(cert_ok && want.map_or(true, |w| w == d.is_yes()), || format!("{s} {inst:?}"));
    }
    Ok(run.finish())
}

fn reductions(rng: &mut ChaCha8Rng) -> Result<Report> {
    let mut run = Run::new("translate and divide-out preserve answers");
    for _ in 0..100 {
        let g = random_group(rng, 8);
        let s = random_subset(rng, &g);
        let inst = some_instance(rng, &g, 1..=3, 3, false);
        let h = crate::random::random_element(rng, &g);
        let moved = translate_instance(&inst, &h)?;
        let a = answer(&inst, &s)?;
        let b = answer(&moved, &s.translate(&h))?;
        run.check(a == b, || format!("translate {s} by {h}"));

        let k = SubgroupGens::new(g.clone(), vec![crate::random::random_element(rng, &g)])?;
        let q = quotient_group(&g, &k)?;
        let sq = random_subset(rng, q.quotient());
        let lifted_s = SubsetS::from_predicate(&g, |x| sq.contains(&q.proj().apply(x).expect("in g")));
        let small = some_instance(rng, q.quotient(), 1..=2, 2, false);
        let big = divideout_lift(&small, &q)?;
        let (a, b) = (answer(&small, &sq)?, answer(&big, &lifted_s)?);
        run.check(a == b, || format!("divide out {k:?}"));
    }
    Ok(run.finish())
}

fn pipelines() -> Result<Vec<(ReductionPipeline, &'static str)>> {
    let z = FiniteAbelianGroup::cyclic;
    let klein = FiniteAbelianGroup::new(vec![2, 2])?;
    Ok(vec![
        (compile_hardness_p(&SubsetS::from_residues(&z(4)?, &[0, 1])?)?, "Z/4 {0,1}"),
        (compile_hardness_p(&SubsetS::from_residues(&z(4)?, &[0, 1, 2])?)?, "Z/4 {0,1,2}"),
        (compile_hardness_p(&SubsetS::from_predicate(&klein, |x| !x.is_zero()))?, "Z/2xZ/2 nonzero"),
        (compile_hardness_pi(&SubsetS::from_residues(&z(5)?, &[1, 2, 4])?)?, "Z/5 {1,2,4}"),
        (compile_hardness_pi(&SubsetS::from_residues(&z(6)?, &[1, 2, 4])?)?, "Z/6 {1,2,4}"),
    ])
}

fn compiler() -> Result<Report> {
    let mut run = Run::new("compiled pipelines on K3 and K4");
    for (p, label) in pipelines()? {
        run.check(p.verify_trace()?.is_none(), || format!("{label}: trace replay"));
        for (graph, colorable) in [(Graph::complete(3), true), (Graph::complete(4), false)] {
            let coloring = colorable.then(|| vec![1, 2, 3]);
            let (inst, cert) = apply_pipeline(&p, &graph, coloring.as_deref())?;
            let cert_ok = match &cert {
                Some(c) => verify_certificate(&inst, &p.subset, c)?,
                None => !colorable,
            };
            let got = answer(&inst, &p.subset)?;
            run.check(cert_ok && got == Some(colorable), || format!("{label} on K{}", graph.n()));
        }
    }
    Ok(run.finish())
}

fn formats(rng: &mut ChaCha8Rng) -> Result<Report> {
    let mut run = Run::new("format round trips");
    for _ in 0..100 {
        let g = random_group(rng, 12);
        let inst = some_instance(rng, &g, 0..=3, 3, false);
        let text = write_instance(&inst);
        let back = parse_instance(&text)?;
        run.check(back == inst && write_instance(&back) == text, || text.clone());
    }
    for (p, label) in pipelines()? {
        let text = write_pipeline(&p);
        let back = parse_pipeline(&text)?;
        run.check(back == p && write_pipeline(&back) == text, || label.to_string());
    }
    Ok(run.finish())
}

/// Runs every property with `seed` and returns one report each.
pub fn run_selftest(seed: u64) -> Result<Vec<Report>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(vec![
        snf(&mut rng)?,
        congruences(&mut rng)?,
        classifier(&mut rng)?,
        theta_laws(&mut rng)?,
        poly_vs_oracle(&mut rng)?,
        reductions(&mut rng)?,
        compiler()?,
        formats(&mut rng)?,
    ])
}
