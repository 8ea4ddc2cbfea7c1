//! One line per acceptance criterion; exits nonzero if any fails.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use qfb_core::algebra::{Algebra, Quiver, Relation};
use qfb_core::correspondences::*;
use qfb_core::homological::*;
use qfb_core::knit::*;
use qfb_core::linalg::Field;
use qfb_core::module::*;
use qfb_core::relative::*;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

const Q: Field = Field::Rational;
const CAP: usize = 8;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn catalog(a: &Arc<Algebra>) -> Catalog {
    knit(a, KnitLimits::for_algebra(a)).expect("knitting closes")
}

fn pick(cat: &Catalog, labels: &[&str]) -> Rep {
    sum(&labels.iter().map(|l| cat.modules[cat.by_label(l).expect("label")].clone()).collect::<Vec<_>>())
}

fn sum(parts: &[Rep]) -> Rep {
    direct_sum(parts).0
}

fn add(x: &Rep) -> AddCat {
    AddCat::new(x).expect("nonzero module")
}

fn same_add(x: &Rep, y: &Rep) -> bool {
    add(x).same_add(&add(y))
}

fn a3_rad() -> Arc<Algebra> {
    let rel = Relation { terms: vec![(Q.one(), vec![0, 1])] };
    Algebra::from_quiver(&Quiver::linear(3), &[rel], Q).expect("admissible")
}

fn basic_modules(xs: &[Rep]) -> impl Iterator<Item = Rep> + '_ {
    (1u32..1 << xs.len()).map(move |mask| sum(&(0..xs.len()).filter(|i| mask >> i & 1 == 1).map(|i| xs[i].clone()).collect::<Vec<_>>()))
}

/// `M` = the τ⁻-orbits of the first `rows` projectives over `A_n`, `F` generated by `Λ ⊕ M`.
fn a_n_structure(n: usize, rows: usize) -> (Catalog, Rep, ExactStructure) {
    let a = Algebra::linear(n, Q);
    let cat = catalog(&a);
    let mut parts = Vec::new();
    for i in 0..rows {
        let mut x = projective_at(&a, i);
        while !x.is_zero() {
            parts.push(x.clone());
            x = tau_inv(&x);
        }
    }
    let m = sum(&parts);
    let g = sum(&[regular_module(&a), m.clone()]);
    (cat, m, ExactStructure::from_generator(&g).expect("generator"))
}

fn a3_census() -> Outcome {
    let a = Algebra::linear(3, Q);
    let cat = catalog(&a);
    let p = fb_poset(&cat).map_err(|e| e.to_string())?;
    ensure!(p.n_modules() == 21, "{} modules", p.n_modules());
    ensure!(p.n_classes() == 20, "{} classes", p.n_classes());
    let idx = |ls: &[&str]| {
        let mut v: Vec<usize> = ls.iter().map(|l| cat.by_label(l).unwrap()).collect();
        v.sort_unstable();
        v
    };
    ensure!(p.find(&idx(&["P2", "I2", "P1"])).is_some(), "P2+I2+P1 missing");
    // S1 and S3 are labelled I1 and P3
    ensure!(p.find(&idx(&["P1", "I1", "S2", "P3"])).is_none(), "P1+S1+S2+S3 present");
    let gc = &p.generator_cogenerators;
    ensure!(gc.len() == 2, "{} generator-cogenerators", gc.len());
    let lam = projective_cat(&a);
    let dlam = injective_cat(&a);
    for &i in gc {
        let m = sum(&p.modules[i].summands.iter().map(|&j| cat.modules[j].clone()).collect::<Vec<_>>());
        ensure!(lam.within(&add(&m)) && dlam.within(&add(&m)), "{} is not a generator-cogenerator", p.modules[i].label);
    }
    Ok(())
}

fn intro_triple() -> Outcome {
    let a = Algebra::linear(3, Q);
    let cat = catalog(&a);
    let p2 = projective_at(&a, 1);
    let m = sum(&[projective_at(&a, 0), p2.clone(), tau_inv(&p2)]);
    let g = sum(&[projective_at(&a, 2), m.clone()]);
    let h = sum(&[injective_at(&a, 0), m.clone()]);
    let f = ExactStructure::from_pair(&g, &h).map_err(|e| e.to_string())?;
    ensure!(f.domdim(CAP) == Bound::Exact(2), "domdim {:?}", f.domdim(CAP));
    ensure!(f.gldim(&cat.modules, CAP) == Bound::Exact(2), "gldim {:?}", f.gldim(&cat.modules, CAP));
    let e = add(&m).end().clone();
    ensure!(e.gamma.n_vertices() == 3 && e.gamma.dim() == 6, "End(M): {} vertices, dim {}", e.gamma.n_vertices(), e.gamma.dim());
    let t = TaggedTuple::new(&m, &[("G", &g)]).map_err(|e| e.to_string())?;
    let rep = verify_involution(&t, Assignment::As).map_err(|e| e.to_string())?;
    ensure!(rep.ok(), "involution fails: {rep:?}");
    let img = assign(&t, Assignment::As).map_err(|e| e.to_string())?;
    let (perm, images) = monomial_isomorphism(&a, &img.alg).ok_or("End(M) is not isomorphic to Λ")?;
    let back_m = pull_back_along(&a, &img.m, &perm, &images).map_err(|e| e.to_string())?;
    let back_g = pull_back_along(&a, img.slot("G").unwrap(), &perm, &images).map_err(|e| e.to_string())?;
    ensure!(same_add(&back_m, &m) && same_add(&back_g, &g), "image is not the same triple");
    Ok(())
}

fn intro_four_tuple() -> Outcome {
    let a = Algebra::linear(4, Q);
    let cat = catalog(&a);
    let p = projectives(&a);
    let m = sum(&[p[0].clone(), p[1].clone(), tau_inv(&p[1]), p[2].clone(), tau_inv(&p[2]), tau_inv(&tau_inv(&p[2]))]);
    let g = sum(&[p[3].clone(), m.clone()]);
    let h = sum(&[injective_at(&a, 0), m.clone()]);
    let f = ExactStructure::from_pair(&g, &h).map_err(|e| e.to_string())?;
    let l = sum(&[tau_inv(&p[3]), m.clone()]);
    let mcat = add(&m);
    ensure!(f.is_cotilting(&l, 2, &cat.modules).map_err(|e| e.to_string())?, "L is not 2-F-cotilting");
    ensure!(f.in_cogen_k(&l, &mcat, 1), "L not in cogen^1_F(M)");
    let seq = build_dualizing_sequence(&l, &m, 1).map_err(|e| e.to_string())?;
    ensure!(f.is_exact(&seq), "base sequence is not F-exact");

    let t = TaggedTuple::new(&m, &[("L", &l), ("G", &g)]).map_err(|e| e.to_string())?;
    ensure!(verify_involution(&t, Assignment::Four).map_err(|e| e.to_string())?.ok(), "4-tuple involution fails");
    let img = assign(&t, Assignment::Four).map_err(|e| e.to_string())?;
    let ft = ExactStructure::from_generator(img.slot("G").unwrap()).map_err(|e| e.to_string())?;
    let lt = img.slot("L").unwrap();
    let gcat = catalog(&img.alg);
    ensure!(ft.is_cotilting(lt, 2, &gcat.modules).map_err(|e| e.to_string())?, "image L is not 2-cotilting");
    let ncat = add(&img.m);
    ensure!(ft.in_cogen_k(lt, &ncat, 1), "image L not in cogen^1(ΓM)");
    let seq = build_dualizing_sequence(lt, &img.m, 1).map_err(|e| e.to_string())?;
    ensure!(ft.is_exact(&seq), "image sequence is not exact for the transported structure");
    Ok(())
}

fn asymmetry() -> Outcome {
    let a = a3_rad();
    let s1 = simple_at(&a, 0);
    let s2 = simple_at(&a, 1);
    let m = sum(&[regular_module(&a), s1]);
    let h = sum(&[coregular_module(&a), s2.clone()]);
    let f = ExactStructure::from_pair(&m, &h).map_err(|e| e.to_string())?;
    ensure!(f.is_k_faithful(&m, 1).map_err(|e| e.to_string())?, "M is not 1-F-faithful");
    let e = add(&m).end().clone();
    let c = e.summands.iter().position(|x| isomorphic(x, &projective_at(&a, 1))).ok_or("P2 not a summand")?;
    ensure!(isomorphic(&apply_dhom_functor(&s2, &e).rep, &simple_at(&e.gamma, c)), "D(M,S2) is not simple");
    let r = apply_dhom_functor(&h, &e).rep;
    let fr = ExactStructure::cogenerated_by(&r).map_err(|e| e.to_string())?;
    ensure!(!fr.is_k_faithful(&e.module, 1).map_err(|e| e.to_string())?, "ΓM is 1-faithful");
    Ok(())
}

fn a5_auslander() -> Outcome {
    let (cat, m, f) = a_n_structure(5, 4);
    let a = f.alg.clone();
    ensure!(f.pd(&coregular_module(&a), CAP) == Bound::Exact(4), "pd_F DΛ {:?}", f.pd(&coregular_module(&a), CAP));
    ensure!(f.domdim(CAP) == Bound::Exact(4), "domdim {:?}", f.domdim(CAP));
    ensure!(f.gldim(&cat.modules, CAP) == Bound::Exact(4), "gldim {:?}", f.gldim(&cat.modules, CAP));
    let t = cluster_tilting_by_transport(&f, &m, 3, &cat.modules, CAP).map_err(|e| e.to_string())?;
    let lam = t.tuple.alg.clone();
    let extra = strip(t.tuple.slot("L").unwrap(), &add(&regular_module(&lam))).map_err(|e| e.to_string())?;
    ensure!(is_injective(&extra), "extra summand of L is not injective");
    ensure!(projective_dim(&extra, CAP) == Some(3), "pd {:?}", projective_dim(&extra, CAP));
    ensure!(t.report.ok(), "cluster check fails: {:?}", t.report);
    Ok(())
}

fn divisibility() -> Outcome {
    let mut pairs = 0;
    for n in 4..=8 {
        for l in 2..n - 1 {
            pairs += 1;
            let (cat, _, f) = a_n_structure(n, l);
            let levels = AuslanderReport::compute(&f, &cat.modules, 2 * n).levels();
            let divides = n % (n - l + 1) == 0;
            ensure!(levels.is_some() == divides, "n={n} l={l}: {levels:?}");
            if divides {
                let k = 2 * (l - 1) / (n - l + 1);
                ensure!(levels == Some((k, Some(k))), "n={n} l={l}: {levels:?}, expected k={k}");
            }
        }
    }
    ensure!(pairs == 15, "{pairs} pairs");
    Ok(())
}

fn properties() -> Outcome {
    let a = Algebra::linear(3, Q);
    let cat = catalog(&a);
    let lam = regular_module(&a);
    let dlam = coregular_module(&a);

    // cogen by coresolution lengths agrees with the evaluation criterion
    for m in basic_modules(&cat.modules) {
        let mcat = add(&m);
        for k in 1..=2 {
            for x in &cat.modules {
                let by_cores = cogen_level(x, &mcat, k, None).is_some_and(|l| l >= k);
                ensure!(by_cores == cogen_by_evaluation(x, &mcat, k), "cogen^{k} of {} in {}", x.label(), m.label());
                let by_res = gen_level(x, &mcat, k, None).is_some_and(|l| l >= k);
                ensure!(by_res == gen_by_coevaluation(x, &mcat, k), "gen_{k} of {} in {}", x.label(), m.label());
            }
            ensure!(in_cogen_k(&lam, &mcat, k) == in_gen_k(&dlam, &mcat, k), "Λ/DΛ asymmetry at k={k}");
        }
    }

    // a module is faithfully balanced over its endomorphism ring
    for (name, alg) in [("A3", a.clone()), ("A3/rad^2", a3_rad())] {
        let c = catalog(&alg);
        let mut runner = TestRunner::new(Config { cases: 50, failure_persistence: None, ..Config::default() });
        let strategy = prop::collection::vec(0usize..=2, c.len()).prop_filter("nonzero", |v| v.iter().any(|&x| x > 0));
        runner
            .run(&strategy, |mult| {
                let parts: Vec<Rep> = c.modules.iter().zip(&mult).flat_map(|(x, &k)| std::iter::repeat_n(x.clone(), k)).collect();
                let e = add(&sum(&parts)).end().clone();
                prop_assert!(is_faithfully_balanced(&e.module).unwrap());
                Ok(())
            })
            .map_err(|e| format!("{name}: {e}"))?;
    }

    // adding X to a faithfully balanced M keeps it so iff X is generated or cogenerated by M
    let mut checked = 0;
    for m in basic_modules(&cat.modules) {
        if !is_faithfully_balanced(&m).unwrap() {
            continue;
        }
        let mcat = add(&m);
        for x in &cat.modules {
            let fb = is_faithfully_balanced(&sum(&[m.clone(), x.clone()])).unwrap();
            ensure!(fb == (in_gen_k(x, &mcat, 0) || in_cogen_k(x, &mcat, 0)), "{} + {}", m.label(), x.label());
            checked += 1;
        }
    }
    ensure!(checked == 21 * 6, "{checked} extensions checked");

    // G in cogen^k_F(M) iff H in gen_k^F(M), for every generator structure
    let rest: Vec<Rep> = cat.modules.iter().filter(|x| !projective_cat(&a).contains(x)).cloned().collect();
    let mut structures = vec![ExactStructure::standard(&a)];
    for extra in basic_modules(&rest) {
        structures.push(ExactStructure::from_generator(&sum(&[lam.clone(), extra])).unwrap());
    }
    ensure!(structures.len() == 8, "{} structures", structures.len());
    for f in &structures {
        for m in basic_modules(&cat.modules) {
            let mcat = add(&m);
            for k in 0..=2 {
                ensure!(f.in_cogen_k(&f.g, &mcat, k) == f.in_gen_k(&f.h, &mcat, k), "k={k} G={} M={}", f.g.label(), m.label());
            }
        }
    }

    // cotilting modules have cogen^{k-1}_F equal to their perpendicular category
    let a4 = Algebra::linear(4, Q);
    let cat4 = catalog(&a4);
    let p = projectives(&a4);
    let m4 = sum(&[p[0].clone(), p[1].clone(), tau_inv(&p[1]), p[2].clone(), tau_inv(&p[2]), tau_inv(&tau_inv(&p[2]))]);
    let sweeps: Vec<(&Catalog, ExactStructure)> = structures
        .iter()
        .map(|f| (&cat, f.clone()))
        .chain([(&cat4, ExactStructure::standard(&a4)), (&cat4, ExactStructure::from_generator(&sum(&[p[3].clone(), m4])).unwrap())])
        .collect();
    // split structures have no cotilting module of positive dimension, so count per algebra
    let mut found = [0usize; 2];
    for (c, f) in &sweeps {
        for x in basic_modules(&c.modules) {
            let Bound::Exact(k) = f.id(&x, CAP) else { continue };
            if k == 0 {
                continue;
            }
            let cotilting = f.cotilting_report(&x, k).unwrap().ok();
            let equal = f.cogen_equals_perp(&x, k - 1, k, &c.modules).unwrap();
            ensure!(cotilting == equal, "{} over G = {}", x.label(), f.g.label());
            found[(c.len() == cat4.len()) as usize] += cotilting as usize;
        }
    }
    ensure!(found.iter().all(|&n| n > 0), "cotilting modules found: {found:?}");

    // gldim_F <= k, via both criteria, on the intro triple
    let g = pick(&cat, &["P3", "P1", "P2", "I2"]);
    let f = ExactStructure::from_generator(&g).unwrap();
    let gldim = f.gldim(&cat.modules, CAP);
    ensure!(gldim == Bound::Exact(2), "gldim {gldim:?}");
    for k in 0..=4 {
        let [delta, sigma] = gldim_criteria(&f, k, CAP);
        ensure!(gldim.at_most(k) == delta && delta == sigma, "k={k}: {delta} {sigma}");
    }
    Ok(())
}

fn special_chain() -> Outcome {
    let (cat, m, f) = a_n_structure(5, 4);
    let ss = simples(&f.alg);
    let mut passing = Vec::new();
    for mask in 0u32..32 {
        let mut parts = vec![m.clone()];
        parts.extend((0..5).filter(|i| mask >> i & 1 == 1).map(|i| ss[i].clone()));
        let c = sum(&parts);
        let rep = m_special_test(&f, &c, &m, CAP).map_err(|e| e.to_string())?;
        ensure!(rep.is_cotilting() == rep.is_tilting(), "cotilting and tilting verdicts differ at {mask:05b}");
        if rep.is_cotilting() {
            passing.push(mask);
        }
    }
    ensure!(passing == [1, 2, 4, 8, 16], "passing subsets {passing:?}");
    ensure!(same_add(&sum(&[m.clone(), ss[4].clone()]), &f.g), "M + S5 is not G");
    ensure!(same_add(&sum(&[m.clone(), ss[0].clone()]), &f.h), "M + S1 is not H");
    for r in 1..=2 {
        let lattice = special_cotilts(&f, r, Some(&cat.modules)).map_err(|e| e.to_string())?;
        ensure!(lattice.is_full_cube(), "r={r}: {} nodes", lattice.nodes.len());
        ensure!(lattice.all_special(), "r={r}: a node is not special");
        ensure!(lattice.order_matches == Some(true), "r={r}: order mismatch");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("A3 faithfully balanced census", a3_census),
        ("intro triple over A3", intro_triple),
        ("4-tuple over A4", intro_four_tuple),
        ("asymmetric faithfulness over A3 mod rad^2", asymmetry),
        ("relative Auslander algebra over A5", a5_auslander),
        ("divisibility law for A_n, n <= 8", divisibility),
        ("property suites over A3 and A4", properties),
        ("special cotilting chain over A5", special_chain),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
