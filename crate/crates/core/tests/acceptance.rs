//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines are always printed.

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cashift::homs::{
    additivity_check, aut_group, dual_hom_search, equivariance_check, functional_eq_check, hom_search,
    verify_unit_pair, SearchOptions,
};
use cashift::laurent::{ca_normalize, divide_exact, parse_poly};
use cashift::mixing::{horizontal_mixing_check, mixing_scan, PrimitiveSet};
use cashift::shift::{evolve, language, Budgets, Configuration, CylinderEvent, MeasureValue, Window};
use cashift::{CaShift, Exponent, LaurentPoly, Prime, Shape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn ca(s: &str, p: u64) -> CaShift {
    CaShift::new(parse_poly(s, prime(p), 2).unwrap()).unwrap()
}

fn cell(v: u32) -> CylinderEvent {
    CylinderEvent::single_cell(2, v, prime(2)).unwrap()
}

fn ledrappier() -> CaShift {
    let (c, _) = ca_normalize(&parse_poly("1+x1^-1+x2^-1", prime(2), 2).unwrap()).unwrap();
    c
}

fn criterion_1() -> Outcome {
    let c = ledrappier();
    ensure!(
        c.phi() == &parse_poly("1+x1^-1", prime(2), 2).unwrap(),
        "normalized phi is {}",
        c.phi()
    );
    let (offsets, _) = PrimitiveSet::from_shape(&c.shape()).unwrap();
    let events = [cell(1), cell(0), cell(0)];
    let dil: Vec<i64> = (1..=6).map(|j| 1 << j).collect();
    let rep = mixing_scan(&c, &events, &offsets, &dil, &Budgets::default()).unwrap();
    ensure!(
        rep.product == MeasureValue::PPower(3),
        "product {:?}",
        rep.product
    );
    for e in &rep.entries {
        ensure!(e.joint == MeasureValue::Zero, "m={} joint {:?}", e.m, e.joint);
    }
    Ok("joint 0 at m = 2..64 (powers of 2), product 1/8".into())
}

fn criterion_2() -> Outcome {
    let c = ledrappier();
    let (offsets, _) = PrimitiveSet::from_shape(&c.shape()).unwrap();
    let pts = offsets.points();
    let values = [1, 0, 0];
    let dil: Vec<i64> = (2..=64).collect();
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let pair = PrimitiveSet::new(vec![Exponent::zero(2), pts[b].sub(&pts[a])]).unwrap();
        let rep = mixing_scan(
            &c,
            &[cell(values[a]), cell(values[b])],
            &pair,
            &dil,
            &Budgets::default(),
        )
        .unwrap();
        for e in &rep.entries {
            ensure!(
                e.joint == MeasureValue::PPower(2) && e.product == MeasureValue::PPower(2),
                "pair {a},{b} at m={}: joint {:?}",
                e.m,
                e.joint
            );
        }
    }
    Ok("all three pairs give joint = product = 1/4 for m = 2..64".into())
}

fn criterion_3() -> Outcome {
    let c = ca("1+x1", 2);
    let cases = [
        (vec![[0, 0], [1, 0]], vec![1, 0], 2),
        (vec![[0, 0], [1, 0], [2, 0]], vec![1, 0, 0], 3),
    ];
    for (pts, vals, k) in cases {
        let offsets = PrimitiveSet::new(pts.iter().map(|&a| Exponent::from(a)).collect()).unwrap();
        let events: Vec<_> = vals.into_iter().map(cell).collect();
        let rep = horizontal_mixing_check(&c, &offsets, &events, 64, &Budgets::default()).unwrap();
        ensure!(rep.m0 == Some(1), "offsets {pts:?}: m0 {:?}", rep.m0);
        ensure!(
            rep.scan.product == MeasureValue::PPower(k),
            "product {:?}",
            rep.scan.product
        );
        ensure!(
            rep.scan
                .entries
                .iter()
                .all(|e| e.joint == MeasureValue::PPower(k)),
            "inexact joint"
        );
    }
    Ok("m0 = 1 with products 1/4 and 1/8 (mmax 64)".into())
}

fn random_ca(rng: &mut ChaCha8Rng, p: Prime) -> CaShift {
    loop {
        let d = rng.gen_range(2..=3);
        let n = rng.gen_range(2..=5);
        let terms: Vec<(Exponent, i64)> = (0..n)
            .map(|_| {
                let mut e: Vec<i64> = (0..d - 1).map(|_| rng.gen_range(-3..=3)).collect();
                e.push(0);
                (Exponent::from(e), rng.gen_range(1..p.get()) as i64)
            })
            .collect();
        if let Ok(c) = CaShift::new(LaurentPoly::from_terms(p, d, terms)) {
            return c;
        }
    }
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    for p in [2, 3, 5] {
        let p = prime(p);
        for _ in 0..50 {
            let c = random_ca(&mut rng, p);
            let a = c.annihilator();
            // oracle: e successive p-th powers by plain ring multiplication
            let mut power = a.clone();
            for e in 0..=6u32 {
                let scale = (p.get() as i64).pow(e);
                let fast = a.frobenius_power(e).unwrap();
                ensure!(
                    fast == power,
                    "{a}: frobenius_power({e}) disagrees with repeated multiplication"
                );
                ensure!(
                    fast.shape().unwrap() == a.shape().unwrap().scale(scale),
                    "{a}: shape of p^{e} power is not p^{e} S(P)"
                );
                checked += 1;
                if e < 6 {
                    let base = power.clone();
                    for _ in 1..p.get() {
                        power = &power * &base;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} (P, e) cases over p = 2, 3, 5"))
}

fn corpus() -> Vec<CaShift> {
    ["1+x1", "1+x1+x1^2", "x1+x1^-1"]
        .iter()
        .map(|s| ca(s, 2))
        .collect()
}

/// Subsets of a 3x2 block containing the origin.
fn corpus_shapes() -> Vec<Shape> {
    let others = [[1, 0], [-1, 0], [0, 1], [1, 1], [-1, 1]];
    (0u32..1 << others.len())
        .map(|mask| {
            let mut pts = vec![Exponent::zero(2)];
            pts.extend(
                (0..others.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| Exponent::from(others[i])),
            );
            Shape::from_points(pts)
        })
        .collect()
}

fn criterion_5() -> Outcome {
    let shifts = corpus();
    let budgets = Budgets::default();
    let (mut searches, mut rules_seen) = (0, 0);
    for shape in corpus_shapes() {
        for a in &shifts {
            let lang = language(a, &Window::from(&shape), &budgets).unwrap();
            if lang.cardinality().unwrap() > 16 {
                continue;
            }
            for b in &shifts {
                let res = hom_search(a, b, &shape, &SearchOptions::default()).unwrap();
                searches += 1;
                ensure!(
                    res.consistent,
                    "{} -> {} on {shape}: nonzero rule despite S(P) not in S(Q)",
                    a.phi(),
                    b.phi()
                );
                for found in &res.rules {
                    rules_seen += 1;
                    ensure!(
                        equivariance_check(&found.rule, a, b, &budgets).unwrap(),
                        "non-equivariant rule"
                    );
                    ensure!(
                        additivity_check(&found.rule).unwrap(),
                        "non-additive rule {:?}",
                        found.rule.table()
                    );
                    let fe = functional_eq_check(&found.rule, a, b, u64::MAX, 0).unwrap();
                    ensure!(fe.exhaustive && fe.holds, "functional equation fails on {shape}");
                }
            }
        }
    }
    Ok(format!(
        "{searches} searches, {rules_seen} rules, all additive and satisfying the functional equation"
    ))
}

fn criterion_6() -> Outcome {
    let p = ca("1+x1", 2);
    let q = ca("x1+x1^-1", 2);
    for shape in corpus_shapes() {
        let res = hom_search(&p, &q, &shape, &SearchOptions::default()).unwrap();
        ensure!(
            res.rules.len() == 1 && res.rules[0].rule.is_zero(),
            "{} rules on {shape}",
            res.rules.len()
        );
    }
    let bound: Shape = (-1..=2)
        .flat_map(|s| (-1..=2).map(move |t| Exponent::from([s, t])))
        .collect();
    let shifts = corpus();
    for (i, a) in shifts.iter().enumerate() {
        for (j, b) in shifts.iter().enumerate() {
            if i == j {
                continue;
            }
            let found = dual_hom_search(a, b, &bound, 1 << 16).unwrap();
            ensure!(
                found.len() == 1 && found[0].is_zero(),
                "{} -> {}: {} classes",
                a.phi(),
                b.phi(),
                found.len()
            );
        }
    }
    Ok("zero rule only on 32 shapes; dual classes {0} for all 6 ordered pairs, 16-point bound".into())
}

fn criterion_7() -> Outcome {
    let cases = [
        ("1+x1+x1^2", vec!["x1", "1+x1+x1^2"]),
        ("1+x1^2", vec!["x1", "1+x1"]),
    ];
    for (phi, expected) in cases {
        let c = ca(phi, 2);
        let desc = aut_group(&c, None).unwrap();
        ensure!(
            desc.torsion_order == 1,
            "{phi}: torsion of order {}",
            desc.torsion_order
        );
        ensure!(desc.rank == 2, "{phi}: rank {}", desc.rank);
        let gens: Vec<LaurentPoly> = expected
            .iter()
            .map(|s| parse_poly(s, prime(2), 2).unwrap())
            .collect();
        let got: Vec<LaurentPoly> = desc.free_generators.iter().map(|g| g.unit.clone()).collect();
        ensure!(got == gens, "{phi}: generators {got:?}");
        for g in &desc.free_generators {
            ensure!(
                verify_unit_pair(&c, &g.unit, &g.inverse).unwrap(),
                "{} fails verification",
                g.unit
            );
            // independent check: P divides R * R^-1 - 1
            let one = LaurentPoly::one(prime(2), 2);
            let diff = &(&g.unit * &g.inverse) - &one;
            ensure!(
                divide_exact(&diff, c.annihilator()).is_some(),
                "{} is not a unit mod P",
                g.unit
            );
        }
    }
    Ok("rank 2, trivial torsion, generators {x1, phi} and {x1, 1+x1}, all verified".into())
}

/// All configurations on `window` obtained by filling the top layer and
/// running the update rule down.
fn brute_language(c: &CaShift, window: &[Exponent]) -> Option<BTreeSet<Vec<u32>>> {
    let p = c.prime();
    let top = window.iter().map(|e| e[1]).max().unwrap();
    let spatial: Vec<(i64, u32)> = c.phi().terms().map(|(m, v)| (m[0], v)).collect();
    let lo_m = spatial.iter().map(|s| s.0).min().unwrap();
    let hi_m = spatial.iter().map(|s| s.0).max().unwrap();
    let lo = window.iter().map(|e| e[0] - (top - e[1]) * hi_m).min().unwrap();
    let hi = window.iter().map(|e| e[0] - (top - e[1]) * lo_m).max().unwrap();
    let width = (hi - lo + 1) as u32;
    let total = (p.get() as u64).checked_pow(width)?;
    if total > 1 << 12 {
        return None;
    }
    let mut out = BTreeSet::new();
    for code in 0..total {
        let mut memo: HashMap<(i64, i64), u32> = HashMap::new();
        let mut k = code;
        for s in lo..=hi {
            memo.insert((s, top), (k % p.get() as u64) as u32);
            k /= p.get() as u64;
        }
        fn value(
            s: i64,
            t: i64,
            top: i64,
            spatial: &[(i64, u32)],
            p: Prime,
            memo: &mut HashMap<(i64, i64), u32>,
        ) -> u32 {
            if let Some(&v) = memo.get(&(s, t)) {
                return v;
            }
            assert!(t < top, "top-layer site {s} outside the enumerated interval");
            let v = spatial.iter().fold(0, |acc, &(m, c)| {
                p.add(acc, p.mul(c, value(s - m, t + 1, top, spatial, p, memo)))
            });
            memo.insert((s, t), v);
            v
        }
        out.insert(
            window
                .iter()
                .map(|e| value(e[0], e[1], top, &spatial, p, &mut memo))
                .collect(),
        );
    }
    Some(out)
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    let mut attempts = 0;
    while done < 100 {
        attempts += 1;
        ensure!(attempts < 100_000, "could not generate enough small cases");
        let p = prime(if rng.gen_bool(0.7) { 2 } else { 3 });
        let n_terms = rng.gen_range(2..=3);
        let terms: Vec<(Exponent, i64)> = (0..n_terms)
            .map(|_| {
                (
                    Exponent::from([rng.gen_range(-1..=1), 0]),
                    rng.gen_range(1..p.get()) as i64,
                )
            })
            .collect();
        let Ok(c) = CaShift::new(LaurentPoly::from_terms(p, 2, terms)) else {
            continue;
        };
        let size = rng.gen_range(1..=10);
        let cells: BTreeSet<Exponent> = (0..size)
            .map(|_| Exponent::from([rng.gen_range(-2..=2), rng.gen_range(-2..=0)]))
            .collect();
        let window = Window::new(cells);
        let Some(oracle) = brute_language(&c, window.cells()) else {
            continue;
        };
        let lang = language(&c, &window, &Budgets::default()).unwrap();
        let n = lang.cardinality().unwrap() as u64;
        let ours: BTreeSet<Vec<u32>> = (0..n).map(|i| lang.element(i)).collect();
        ensure!(
            ours == oracle,
            "phi {} window {window}: {} vs oracle {}",
            c.phi(),
            ours.len(),
            oracle.len()
        );
        done += 1;
    }
    let l = language(
        &ca("1+x1", 2),
        &Window::new([[0, 0], [0, 1], [-1, 1]].map(Exponent::from)),
        &Budgets::default(),
    )
    .unwrap();
    ensure!(
        l.cardinality() == Some(4),
        "L-shape has {:?} elements",
        l.cardinality()
    );
    let l2 = language(
        &ledrappier(),
        &Window::new([[0, 0], [1, 0], [0, -1]].map(Exponent::from)),
        &Budgets::default(),
    )
    .unwrap();
    ensure!(
        l2.cardinality() == Some(4),
        "Ledrappier L-shape has {:?} elements",
        l2.cardinality()
    );
    Ok("100 random windows match the brute-force oracle; L-shape has 4 elements".into())
}

/// `C(n, k) mod p` by Lucas' theorem.
fn lucas(mut n: u64, mut k: u64, p: u64) -> u32 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * (a - i) / (i + 1);
        }
        acc = acc * (c % p) % p;
        n /= p;
        k /= p;
    }
    acc as u32
}

fn criterion_9() -> Outcome {
    for (p, depth) in [(2u64, 32i64), (3, 9)] {
        let c = ca("1+x1", p);
        let top = Configuration::new(Window::new([Exponent::from([0, 0])]), vec![1], prime(p)).unwrap();
        let grid = evolve(&c, &top, depth).unwrap();
        ensure!(grid.height() == depth as usize + 1, "height {}", grid.height());
        for k in 0..=depth {
            for x in grid.x_min..grid.x_min + grid.width() as i64 {
                let expected = if (0..=k).contains(&x) {
                    lucas(k as u64, x as u64, p)
                } else {
                    0
                };
                ensure!(grid.at(k as usize, x) == expected, "p={p} row {k} site {x}");
            }
        }
    }
    Ok("rows 0..32 mod 2 and 0..9 mod 3 equal Lucas binomials".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Ledrappier shift is not 3-mixing at powers of 2", criterion_1, 5),
        ("pairwise events mix exactly", criterion_2, 10),
        ("zero-final-coordinate offsets mix from m0 = 1", criterion_3, 10),
        ("Frobenius power scales the shape", criterion_4, 5),
        ("desk-scale homomorphisms are additive", criterion_5, 300),
        ("distinct shifts admit only the zero map", criterion_6, 120),
        ("automorphism group description", criterion_7, 5),
        ("top-slice language equals brute force", criterion_8, 30),
        ("evolution matches Lucas binomials", criterion_9, 5),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(limit) => {
                Err(format!("took {elapsed:.2?}, limit {limit} s"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
