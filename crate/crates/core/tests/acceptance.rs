//! End-to-end acceptance checks. Runs without the libtest harness so the
//! PASS/FAIL line for each criterion is always printed; exits nonzero if
//! any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use restricted_perms::bijections::{
    enumerate_tilings, perm_to_tiling, themed_bijection, themed_bijection_inverse, tiling_to_perm,
    Theorem, Tiling, TilingConstraint,
};
use restricted_perms::constructions::mansour_gf;
use restricted_perms::families::{
    alpha_perm, beta_perm, beta_perm_display, extension_set, restriction_set, RSequence,
    RestrictionSpec,
};
use restricted_perms::perm::{count_avoiders, enumerate_avoiders, factorial, PatternSet, Permutation};
use restricted_perms::registry::{first_display_mismatch, registry};
use restricted_perms::sequences::{fibonacci, kgen_fib, pell, recurrence_count, tribonacci};
use restricted_perms::verify::{verify_all, VerifyOptions};
use restricted_perms::Gf;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn patterns(s: &str) -> PatternSet {
    PatternSet::parse_list(s).unwrap()
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    if took <= limit {
        Ok(())
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn simion_schmidt_anchor() -> Outcome {
    let start = Instant::now();
    let r = patterns("123,132,213");
    let counts: Vec<BigInt> = (1..=9).map(|n| count_avoiders(n, &r)).collect();
    expect_eq("counts", counts, ints(&[1, 2, 3, 5, 8, 13, 21, 34, 55]))?;
    within(start, Duration::from_secs(10))?;
    Ok("n = 1..9".into())
}

fn tribonacci_anchor() -> Outcome {
    let start = Instant::now();
    let r = patterns("132,213,1234");
    for n in 1..=9 {
        expect_eq(&format!("n = {n}"), count_avoiders(n, &r), tribonacci(n as i64 + 1))?;
    }
    within(start, Duration::from_secs(30))?;
    Ok("n = 1..9".into())
}

fn determinant_formula() -> Outcome {
    let start = Instant::now();
    let cases: [&[u32]; 5] = [&[5, 2, 1], &[6, 3, 1], &[6, 4, 2, 1], &[7, 3, 2, 1], &[5, 1]];
    for values in cases {
        let r = RSequence::new(values.to_vec()).map_err(|e| e.to_string())?;
        let gf: Gf = mansour_gf(&r);
        let series = gf.series_coeffs(9).map_err(|e| e.to_string())?;
        let mut class = patterns("132,213");
        class.insert(restricted_perms::families::tau_perm(&r));
        for n in 0..=9 {
            expect_eq(&format!("r = {values:?}, n = {n}"), series[n].clone(), count_avoiders(n, &class))?;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok("5 r-sequences, n <= 9".into())
}

fn definitional_cross_check() -> Outcome {
    for a in 0..=3 {
        for c in (0..=3).filter(|&c| a + c >= 1) {
            for b in 1..=4 {
                let tau = beta_perm(a, b, c).map_err(|e| e.to_string())?;
                let shown = beta_perm_display(a, b, c).map_err(|e| e.to_string())?;
                expect_eq(&format!("beta({a},{b},{c})"), tau, shown)?;
            }
        }
    }
    for s in 1..=4u32 {
        for t in 1..=4u32 {
            // one-line form: s+1, ..., s+t+1 then s, ..., 1
            let mut v: Vec<u32> = (s + 1..=s + t + 1).collect();
            v.extend((1..=s).rev());
            let direct = Permutation::new(v).unwrap();
            expect_eq(&format!("alpha({s},{t})"), alpha_perm(s, t).unwrap(), direct)?;
        }
    }
    Ok("beta a,c <= 3, b <= 4; alpha s,t <= 4".into())
}

fn registry_sweep() -> Outcome {
    let start = Instant::now();
    let ids = registry();
    let reports = verify_all(&ids, VerifyOptions::default()).map_err(|e| e.to_string())?;
    for report in &reports {
        if !report.passed {
            return Err(match (report.display_mismatch, report.first_discrepancy()) {
                (Some(i), _) => format!("{}: display {i} differs", report.id),
                (None, Some(row)) => format!("{} at n = {}: {row:?}", report.id, row.n),
                (None, None) => format!("{} failed", report.id),
            });
        }
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!("{} formulas, brute force n <= 9, series n <= 60", reports.len()))
}

fn bijection_roundtrips() -> Outcome {
    for n in 0..=12 {
        let tilings = enumerate_tilings(n, TilingConstraint::None);
        let want = if n == 0 { 1 } else { 1usize << (n - 1) };
        expect_eq(&format!("tilings of {n}"), tilings.len(), want)?;
        for t in &tilings {
            let back = perm_to_tiling(&tiling_to_perm(t)).map_err(|e| e.to_string())?;
            expect_eq("F(G(t))", &back, t)?;
        }
        for pi in enumerate_avoiders(n, &patterns("132,213")) {
            let t = perm_to_tiling(&pi).map_err(|e| e.to_string())?;
            expect_eq("G(F(pi))", tiling_to_perm(&t), pi)?;
        }
    }
    let mut theorems = vec![Theorem::T54, Theorem::T58];
    for b in 2..=4 {
        theorems.extend([Theorem::T44 { b }, Theorem::T47 { b }, Theorem::T410 { b }]);
    }
    for theorem in theorems {
        for n in 1..=9 {
            let domain = theorem.domain(n);
            let mut image = BTreeSet::new();
            for t in &domain {
                let pi = themed_bijection(theorem, t).map_err(|e| e.to_string())?;
                let back = themed_bijection_inverse(theorem, &pi).map_err(|e| e.to_string())?;
                expect_eq(&format!("{theorem} roundtrip"), &back, t)?;
                image.insert(pi);
            }
            let class: BTreeSet<_> = enumerate_avoiders(n, &theorem.class()).into_iter().collect();
            if image != class || image.len() != domain.len() {
                return Err(format!("{theorem} at n = {n}: image differs from the class"));
            }
        }
    }
    let tiling = |s: &str| s.parse::<Tiling>().unwrap();
    expect_eq("F_9", perm_to_tiling(&perm("978652341")).unwrap(), tiling("1,2,1,1,3,1"))?;
    expect_eq("F_8", perm_to_tiling(&perm("56782341")).unwrap(), tiling("4,3,1"))?;
    let examples = [
        (Theorem::T44 { b: 4 }, "4,1,1,2,1", "876954231"),
        (Theorem::T47 { b: 3 }, "3,1,1,5", "879653214"),
        (Theorem::T410 { b: 3 }, "1,2,1,5", "978643215"),
        (Theorem::T54, "1,1,2,1,2,1,1", "87564123"),
        (Theorem::T58, "1,2,2,1,1,1", "7563214"),
    ];
    for (theorem, t, pi) in examples {
        expect_eq(&format!("{theorem} example"), themed_bijection(theorem, &tiling(t)).unwrap(), perm(pi))?;
    }
    Ok("F/G n <= 12; themed n <= 9, b = 2..4; examples exact".into())
}

fn extension_operator() -> Outcome {
    for base in ["123", "123,132,213"] {
        let r = patterns(base);
        for k in 0..=2u32 {
            let ext = extension_set(&r, k);
            for n in 0..=7usize {
                let k = k as usize;
                let want = if n < k {
                    factorial(n)
                } else {
                    factorial(n) / factorial(n - k) * count_avoiders(n - k, &r)
                };
                expect_eq(&format!("E^{k}({base}) at n = {n}"), count_avoiders(n, &ext), want)?;
            }
        }
    }
    Ok("R = {123}, {123,132,213}; k <= 2; n <= 7".into())
}

fn restriction_sets() -> Outcome {
    let specs: [(u32, &[u32]); 5] = [(3, &[2]), (3, &[2, 2]), (4, &[2, 3]), (4, &[3, 3]), (5, &[4, 4])];
    for (k, a) in specs {
        let spec = RestrictionSpec::new(k, a.to_vec()).map_err(|e| e.to_string())?;
        let r = restriction_set(&spec);
        for n in 0..=8 {
            expect_eq(&format!("{spec} at n = {n}"), recurrence_count(&spec, n), count_avoiders(n, &r))?;
        }
    }
    let pell_spec = RestrictionSpec::new(4, vec![2, 3]).unwrap();
    let r = restriction_set(&pell_spec);
    for n in 1..=8i64 {
        let brute = count_avoiders(n as usize, &r);
        expect_eq(&format!("pell identity n = {n}"), brute, pell(n) + pell(n - 2))?;
    }
    expect_eq("b_4", count_avoiders(4, &r), BigInt::from(14))?;
    expect_eq("b_5", count_avoiders(5, &r), BigInt::from(34))?;
    Ok("5 specs n <= 8; b_n = p_n + p_{n-2}".into())
}

fn tiling_fibonacci() -> Outcome {
    for k in 1..=5u32 {
        for n in 0..=18usize {
            let count = enumerate_tilings(n, TilingConstraint::MaxLen(k)).len();
            expect_eq(&format!("k = {k}, n = {n}"), BigInt::from(count), kgen_fib(k, n as i64 + 1))?;
        }
    }
    Ok("k <= 5, n <= 18".into())
}

fn displayed_values() -> Outcome {
    // every printed generating function against its computed counterpart
    let mut displays = 0;
    for id in registry() {
        if let Some(i) = first_display_mismatch(&id) {
            return Err(format!("{id}: display {i} differs"));
        }
        displays += id.displayed_gfs().len();
    }
    // printed numbers outside the formula displays
    expect_eq("F_{n+2} - 1 at n = 6", count_avoiders(6, &patterns("132,213,2341")), fibonacci(8) - 1)?;
    expect_eq("|S_4(123,132,213)|", count_avoiders(4, &patterns("123,132,213")), BigInt::from(5))?;
    expect_eq("|S_5(132,213,1234)| = T_6", count_avoiders(5, &patterns("132,213,1234")), BigInt::from(13))?;
    let inverse_examples = [
        (Theorem::T44 { b: 3 }, "986743512", "1,1,2,3,2"),
        (Theorem::T47 { b: 3 }, "976845231", "1,3,2,2,2"),
        (Theorem::T410 { b: 3 }, "879643251", "3,1,4,1"),
        (Theorem::T410 { b: 3 }, "6543712", "5,2"),
        (Theorem::T54, "86745321", "1,2,2,1,1,2"),
        (Theorem::T58, "897564321", "2,1,2,1,1,1,2"),
    ];
    for (theorem, pi, t) in inverse_examples {
        let got = themed_bijection_inverse(theorem, &perm(pi)).map_err(|e| e.to_string())?;
        expect_eq(&format!("{theorem} {pi}"), got, t.parse::<Tiling>().unwrap())?;
    }
    Ok(format!("{displays} displayed generating functions, {} examples", inverse_examples.len() + 3))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Simion-Schmidt anchor", simion_schmidt_anchor),
        ("Tribonacci anchor", tribonacci_anchor),
        ("determinant formula", determinant_formula),
        ("definitional cross-check", definitional_cross_check),
        ("full registry sweep", registry_sweep),
        ("bijection roundtrips", bijection_roundtrips),
        ("extension operator", extension_operator),
        ("restriction sets", restriction_sets),
        ("tilings and F_{k,n}", tiling_fibonacci),
        ("displayed values", displayed_values),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {:.2?})", i + 1, start.elapsed()),
            Err(why) => {
                println!("criterion {}: FAIL {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
