//! Acceptance criteria AC1–AC11, one PASS/FAIL line each.
//!
//! Run with `cargo test -p upn-cli --test acceptance -- --nocapture` to see
//! the report. Every tolerance and time bound is a constant below.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_complex::Complex64;

use upn_core::oracle::{random_state, random_unitary, word_code, UnitaryMatrix};
use upn_core::standard::{
    extract_call_sequence, simulate_numeric, synthesize_baseline, synthesize_routed,
    verify_circuit, OracleKind, PermSelection,
};
use upn_core::superseq::{
    construct, is_complete, search_shortest, CheckMode, CompleteSequence, SearchOutcome, Strategy,
};
use upn_core::switchnet::{
    build_benes, build_triangular, enumerate_orderings, lower_bound_switches, propagate, route,
    switch_count, Topology,
};
use upn_core::Permutation;

const AMPLITUDE_TOLERANCE: f64 = 1e-9;
const NUMERIC_TUPLES: usize = 100;
const RANDOM_ROUTES: usize = 1000;
const SEARCH_BUDGET: u64 = 100_000_000;

const AC1_LIMIT: Duration = Duration::from_millis(1);
const AC2_SMALL_LIMIT: Duration = Duration::from_secs(1);
const AC2_LIMIT: Duration = Duration::from_secs(60);
const AC3_LIMIT: Duration = Duration::from_secs(30);
const AC4_LIMIT: Duration = Duration::from_secs(10);
const AC5_LIMIT: Duration = Duration::from_secs(10);
const AC6_LIMIT: Duration = Duration::from_secs(5);
const AC7_LIMIT: Duration = Duration::from_secs(1);
const AC8_LIMIT: Duration = Duration::from_secs(60);
const AC9_LIMIT: Duration = Duration::from_secs(30);
const AC10_LIMIT: Duration = Duration::from_secs(5);
const AC11_LIMIT: Duration = Duration::from_secs(1);

type Check = Result<(), String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Plain left-to-right subsequence test, independent of the library scan.
fn is_subsequence(needle: &[usize], hay: &[usize]) -> bool {
    let mut it = hay.iter();
    needle.iter().all(|x| it.any(|y| y == x))
}

fn covers_all(word: &[usize], n: usize) -> bool {
    (1..=n)
        .permutations(n)
        .all(|p| is_subsequence(&p, word))
}

/// Times `f` and checks both its result and the time bound.
fn timed(limit: Duration, f: impl FnOnce() -> Check) -> (Check, Duration) {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let result = result.and_then(|()| {
        ensure(elapsed <= limit, || format!("took {elapsed:?}, limit {limit:?}"))
    });
    (result, elapsed)
}

fn ac1() -> Check {
    let w = CompleteSequence::parse(3, "1,2,1,3,1,2,1").map_err(|e| e.to_string())?;
    let (r, _) = timed(AC1_LIMIT, || {
        let ok = is_complete(&w, CheckMode::Exhaustive).map_err(|e| e.to_string())?;
        ensure(ok, || "1213121 reported incomplete".into())
    });
    r?;
    ensure(covers_all(&[1, 2, 1, 3, 1, 2, 1], 3), || "oracle disagrees".into())
}

fn ac2() -> Check {
    let (small, _) = timed(AC2_SMALL_LIMIT, || {
        let found = search_shortest(3, 7, SEARCH_BUDGET).map_err(|e| e.to_string())?;
        let SearchOutcome::Found(w) = found.outcome else {
            return Err(format!("search(3, 7): {:?}", found.outcome));
        };
        ensure(w.len() == 7 && covers_all(w.symbols(), 3), || format!("bad witness {w}"))?;
        let none = search_shortest(3, 6, SEARCH_BUDGET).map_err(|e| e.to_string())?;
        ensure(none.outcome == SearchOutcome::NotFound, || {
            format!("search(3, 6): {:?}", none.outcome)
        })
    });
    small?;
    // all 3⁶ = 729 words of length 6 miss some permutation
    let words = (0..6).map(|_| 1..=3usize).multi_cartesian_product().collect_vec();
    ensure(words.len() == 729, || "enumeration size".into())?;
    ensure(words.iter().all(|w| !covers_all(w, 3)), || {
        "a complete word of length 6 exists".into()
    })?;
    let (large, _) = timed(AC2_LIMIT, || {
        let r = search_shortest(4, 12, SEARCH_BUDGET).map_err(|e| e.to_string())?;
        match r.outcome {
            SearchOutcome::Found(w) => ensure(w.len() == 12 && covers_all(w.symbols(), 4), || {
                format!("bad witness {w}")
            }),
            other => Err(format!("search(4, 12): {other:?} after {} expansions", r.expansions)),
        }
    });
    large
}

fn ac3() -> Check {
    timed(AC3_LIMIT, || {
        for n in 1..=6 {
            for s in Strategy::ALL {
                let w = construct(n, s).map_err(|e| format!("{s} n={n}: {e}"))?;
                let len = w.len();
                if s == Strategy::Lookup && n >= 3 {
                    ensure(len == n * n - 2 * n + 4, || format!("lookup n={n} has length {len}"))?;
                }
                let c = synthesize_routed(w).map_err(|e| e.to_string())?;
                ensure(c.call_count() == len, || format!("{s} n={n}: {} calls", c.call_count()))?;
                for oracle in [OracleKind::Symbolic, OracleKind::Phase] {
                    let r = verify_circuit(&c, PermSelection::All, oracle).map_err(|e| e.to_string())?;
                    ensure(r.all_passed() && r.total == factorial(n), || {
                        format!("{s} n={n} {}: {r}", oracle.name())
                    })?;
                }
            }
        }
        Ok(())
    })
    .0
}

fn ac4() -> Check {
    timed(AC4_LIMIT, || {
        for n in 1..=6 {
            let c = synthesize_baseline(n).map_err(|e| e.to_string())?;
            ensure(c.call_count() == n * n, || format!("n={n}: {} calls", c.call_count()))?;
            let r = verify_circuit(&c, PermSelection::All, OracleKind::Symbolic)
                .map_err(|e| e.to_string())?;
            ensure(r.all_passed() && r.total == factorial(n), || format!("n={n}: {r}"))?;
        }
        Ok(())
    })
    .0
}

fn mat_vec(m: &UnitaryMatrix, v: &[Complex64]) -> Vec<Complex64> {
    (0..v.len())
        .map(|r| (0..v.len()).map(|c| m.get(r, c) * v[c]).sum())
        .collect()
}

fn ac5() -> Check {
    timed(AC5_LIMIT, || {
        let mut seed = 5_000u64;
        let mut next = || {
            seed += 1;
            seed
        };
        for n in 1..=5 {
            for s in [Strategy::Zigzag, Strategy::Lookup] {
                let c = synthesize_routed(construct(n, s).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                for sigma in Permutation::sample(n, NUMERIC_TUPLES, next()) {
                    let gates: Vec<_> = (0..n)
                        .map(|_| random_unitary(2, next()).unwrap())
                        .collect();
                    let input = random_state(2, next()).unwrap();
                    let aux_a = random_state(2, next()).unwrap();
                    let aux_b = random_state(2, next()).unwrap();
                    let mut direct = input.clone();
                    for &j in sigma.images() {
                        direct = mat_vec(&gates[j - 1], &direct);
                    }
                    let a = simulate_numeric(&c, &sigma, &gates, &input, &aux_a).map_err(|e| e.to_string())?;
                    let b = simulate_numeric(&c, &sigma, &gates, &input, &aux_b).map_err(|e| e.to_string())?;
                    for k in 0..2 {
                        ensure((a[k] - direct[k]).norm() <= AMPLITUDE_TOLERANCE, || {
                            format!("{s} n={n} sigma={sigma}: amplitude {k} off by {:e}", (a[k] - direct[k]).norm())
                        })?;
                        ensure((a[k] - b[k]).norm() <= AMPLITUDE_TOLERANCE, || {
                            format!("{s} n={n} sigma={sigma}: depends on auxiliary state")
                        })?;
                    }
                }
            }
        }
        Ok(())
    })
    .0
}

fn ac6() -> Check {
    timed(AC6_LIMIT, || {
        for n in 1..=6 {
            let mut circuits = vec![synthesize_baseline(n).map_err(|e| e.to_string())?];
            for s in Strategy::ALL {
                circuits.push(synthesize_routed(construct(n, s).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?);
            }
            for c in &circuits {
                let calls = extract_call_sequence(c);
                let w = CompleteSequence::new(n, calls.clone()).map_err(|e| e.to_string())?;
                let ok = is_complete(&w, CheckMode::Exhaustive).map_err(|e| e.to_string())?;
                ensure(ok && covers_all(&calls, n), || {
                    format!("{} n={n}: call word incomplete", c.strategy_name())
                })?;
            }
        }
        for n in 2..=6 {
            let c = synthesize_routed(construct(n, Strategy::Lookup).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let mut calls = extract_call_sequence(&c);
            calls.pop();
            let w = CompleteSequence::new(n, calls).map_err(|e| e.to_string())?;
            let ok = is_complete(&w, CheckMode::Exhaustive).map_err(|e| e.to_string())?;
            ensure(!ok, || format!("truncated lookup word for n={n} still complete"))?;
        }
        Ok(())
    })
    .0
}

fn ac7() -> Check {
    timed(AC7_LIMIT, || {
        for n in 2..=1024usize {
            let k = switch_count(&build_benes(n).map_err(|e| e.to_string())?);
            let lg = (n as f64).log2();
            if n.is_power_of_two() {
                let log = n.trailing_zeros() as usize;
                ensure(2 * k == 2 * n * log - n, || format!("benes({n}) has {k} switches"))?;
            }
            ensure(k as f64 <= n as f64 * (lg - 0.5), || format!("benes({n}) has {k} switches"))?;
        }
        Ok(())
    })
    .0
}

fn round_trips(topology: Topology, n: usize, sigmas: &[Permutation]) -> Check {
    let net = match topology {
        Topology::Benes => build_benes(n),
        Topology::Triangular => build_triangular(n),
    }
    .map_err(|e| e.to_string())?;
    for s in sigmas {
        let p = route(&net, s).map_err(|e| e.to_string())?;
        let got = propagate(&net, &p).map_err(|e| e.to_string())?;
        ensure(got == s.images(), || format!("{topology} n={n}: sigma={s} gave {got:?}"))?;
    }
    Ok(())
}

fn ac8() -> Check {
    timed(AC8_LIMIT, || {
        for n in 1..=6 {
            let all = Permutation::all(n);
            ensure(all.len() == factorial(n), || "permutation count".into())?;
            for t in Topology::ALL {
                round_trips(t, n, &all)?;
            }
        }
        for n in [7, 16, 33, 64] {
            let sample = Permutation::sample(n, RANDOM_ROUTES, 8_000 + n as u64);
            for t in Topology::ALL {
                round_trips(t, n, &sample)?;
            }
        }
        for n in 1..=64 {
            let k = switch_count(&build_triangular(n).map_err(|e| e.to_string())?);
            ensure(k == n * (n - 1) / 2, || format!("triangular({n}) has {k} switches"))?;
        }
        Ok(())
    })
    .0
}

fn ac9() -> Check {
    timed(AC9_LIMIT, || {
        let b4 = enumerate_orderings(&build_benes(4).unwrap()).map_err(|e| e.to_string())?;
        ensure((24..=64).contains(&b4), || format!("benes(4) gives {b4} orderings"))?;
        let t3 = build_triangular(3).unwrap();
        let c3 = enumerate_orderings(&t3).map_err(|e| e.to_string())?;
        ensure(c3 == 6 && c3 <= 1 << switch_count(&t3), || format!("triangular(3) gives {c3}"))?;
        // 2^k ≥ n! checked exactly where u128 holds n!
        for n in 1..=34usize {
            let f: u128 = (1..=n as u128).product();
            let k = lower_bound_switches(n);
            let fits = k >= 128 || 1u128 << k >= f;
            let tight = k == 0 || (1u128 << (k - 1)) < f;
            ensure(fits && tight, || format!("lower_bound_switches({n}) = {k}"))?;
        }
        let mut log2_fact = 0.0f64;
        for n in 1..=100_000usize {
            log2_fact += (n as f64).log2();
            let nf = n as f64;
            ensure(log2_fact.ceil() + 1e-6 >= nf * nf.log2() - 2.0 * nf, || format!("n={n}"))?;
            if n % 997 == 0 || n <= 64 {
                let k = lower_bound_switches(n) as f64;
                ensure((k - log2_fact.ceil()).abs() <= 1.0 && k >= nf * nf.log2() - 2.0 * nf, || {
                    format!("lower_bound_switches({n}) = {k}")
                })?;
            }
        }
        Ok(())
    })
    .0
}

fn ac10() -> Check {
    timed(AC10_LIMIT, || {
        for n in 1..=6 {
            let mut lib = HashSet::new();
            let mut own = HashSet::new();
            for p in Permutation::all(n) {
                lib.insert(word_code(p.images(), n).map_err(|e| e.to_string())?.value().clone());
                let v: u128 = p
                    .images()
                    .iter()
                    .rev()
                    .fold(0, |acc, &s| acc * n as u128 + s as u128);
                ensure(
                    word_code(p.images(), n).unwrap().to_string() == v.to_string(),
                    || format!("code of {p} differs from {v}"),
                )?;
                own.insert(v);
            }
            ensure(lib.len() == factorial(n) && own.len() == factorial(n), || {
                format!("n={n}: {} distinct codes", lib.len())
            })?;
        }
        Ok(())
    })
    .0
}

fn ac11() -> Check {
    let run = || -> Result<String, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_upn"))
            .args(["bounds", "--n-min", "1", "--n-max", "20", "--format", "csv"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("exit {:?}", out.status.code()))?;
        String::from_utf8(out.stdout).map_err(|e| e.to_string())
    };
    let (first, _) = {
        let mut text = String::new();
        let r = timed(AC11_LIMIT, || {
            text = run()?;
            Ok(())
        });
        (r.0.map(|()| text), r.1)
    };
    let first = first?;
    let second = run()?;
    ensure(first == second, || "output differs between runs".into())?;
    let lines: Vec<&str> = first.lines().collect();
    ensure(lines.len() == 21, || format!("{} lines", lines.len()))?;
    ensure(lines[0] == "n,baseline,zigzag,best_known,benes,triangular,switch_lower", || {
        format!("header {:?}", lines[0])
    })?;
    ensure(lines[4] == "4,16,13,12,6,6,5", || format!("n=4 row {:?}", lines[4]))?;
    let n13: Vec<&str> = lines[13].split(',').collect();
    ensure(n13[0] == "13" && n13[3] == "145", || format!("n=13 row {:?}", lines[13]))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 11] = [
        ("AC1", "witness completeness", ac1),
        ("AC2", "shortest-length reproduction", ac2),
        ("AC3", "routed circuit", ac3),
        ("AC4", "baseline circuit", ac4),
        ("AC5", "numeric agreement", ac5),
        ("AC6", "call-word audit", ac6),
        ("AC7", "Benes size", ac7),
        ("AC8", "rearrangeability", ac8),
        ("AC9", "counting bound", ac9),
        ("AC10", "distinguishability", ac10),
        ("AC11", "bounds table", ac11),
    ];
    let mut failed = Vec::new();
    for (id, name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        match &result {
            Ok(()) => println!("{id:<5} PASS {name} ({elapsed:.2?})"),
            Err(e) => {
                println!("{id:<5} FAIL {name} ({elapsed:.2?}): {e}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
