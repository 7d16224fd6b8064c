//! Self-check driven by `upn verify`.

use std::collections::HashSet;
use std::fmt;

use upn_core::exec::Execution;
use upn_core::oracle::word_code;
use upn_core::standard::{
    audit_completeness, synthesize_baseline, synthesize_routed, verify_circuit, OracleKind,
    PermSelection, StandardCircuit,
};
use upn_core::superseq::{construct, is_complete, CheckMode, Strategy};
use upn_core::switchnet::{self, build, round_trip, Topology};
use upn_core::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    fn circuit_max(self) -> usize {
        match self {
            Level::Quick => 5,
            Level::Full => 7,
        }
    }

    fn network_max(self) -> usize {
        match self {
            Level::Quick => 5,
            Level::Full => 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    /// First failure, if any.
    pub detail: Option<String>,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.passed == self.total && self.detail.is_none()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}/{}", self.name, self.passed, self.total)?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }

    fn push(&mut self, name: String, passed: usize, total: usize, detail: Option<String>) {
        self.checks.push(Check {
            name,
            passed,
            total,
            detail,
        });
    }

    fn push_bool(&mut self, name: String, ok: bool, detail: impl FnOnce() -> String) {
        let detail = (!ok).then(detail);
        self.push(name, usize::from(ok), 1, detail);
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.ok()).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub level: Level,
    pub seed: u64,
    /// Inverts this routing layer in every circuit that has it.
    pub mutate_layer: Option<usize>,
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn run(cfg: SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::default();
    sequences(&mut report, cfg);
    circuits(&mut report, cfg);
    networks(&mut report, cfg);
    codes(&mut report, cfg);
    report
}

fn sequences(report: &mut SuiteReport, cfg: SuiteConfig) {
    for n in 1..=cfg.level.circuit_max() {
        for s in Strategy::ALL {
            let name = format!("seq {s} n={n}");
            match construct(n, s).and_then(|w| is_complete(&w.uncertified(), CheckMode::Exhaustive)) {
                Ok(ok) => report.push_bool(name, ok, || "incomplete".into()),
                Err(e) => report.push(name, 0, 1, Some(e.to_string())),
            }
        }
    }
}

fn circuit_set(n: usize) -> Vec<(String, upn_core::Result<StandardCircuit>)> {
    let mut out: Vec<_> = Strategy::ALL
        .iter()
        .map(|&s| {
            (
                format!("routed/{s}"),
                construct(n, s).and_then(synthesize_routed),
            )
        })
        .collect();
    out.push(("baseline".into(), synthesize_baseline(n)));
    out
}

fn circuits(report: &mut SuiteReport, cfg: SuiteConfig) {
    let oracles = [
        OracleKind::Symbolic,
        OracleKind::Phase,
        OracleKind::Numeric { seed: cfg.seed },
    ];
    for n in 1..=cfg.level.circuit_max() {
        for (label, built) in circuit_set(n) {
            let mut c = match built {
                Ok(c) => c,
                Err(e) => {
                    report.push(format!("circ {label} n={n}"), 0, 1, Some(e.to_string()));
                    continue;
                }
            };
            if let Some(i) = cfg.mutate_layer {
                if i < c.layers().len() {
                    if let Ok(m) = c.with_inverted_layer(i) {
                        c = m;
                    }
                }
            }
            for oracle in oracles {
                let name = format!("circ {label} n={n} {}", oracle.name());
                match verify_circuit(&c, PermSelection::All, oracle) {
                    Ok(r) => {
                        let detail = r
                            .failures
                            .first()
                            .map(|f| format!("first failing sigma = {}: {}", f.sigma, f.detail));
                        report.push(name, r.passed, r.total, detail);
                    }
                    Err(e) => report.push(name, 0, factorial(n), Some(e.to_string())),
                }
            }
            let name = format!("audit {label} n={n}");
            match audit_completeness(&c) {
                Ok(ok) => report.push_bool(name, ok, || "call word incomplete".into()),
                Err(e) => report.push(name, 0, 1, Some(e.to_string())),
            }
        }
    }
}

fn networks(report: &mut SuiteReport, cfg: SuiteConfig) {
    let exec = Execution::default();
    let mut add_round_trip = |name: String, t: Topology, n: usize, sigmas: &[Permutation]| {
        match build(t, n).and_then(|net| round_trip(&net, sigmas, exec)) {
            Ok(r) => {
                let detail = r.failures.first().map(|s| format!("first failing sigma = {s}"));
                report.push(name, r.total - r.failures.len(), r.total, detail);
            }
            Err(e) => report.push(name, 0, sigmas.len(), Some(e.to_string())),
        }
    };
    for n in 1..=cfg.level.network_max() {
        let all = Permutation::all(n);
        for t in Topology::ALL {
            add_round_trip(format!("switch {t} n={n} exhaustive"), t, n, &all);
        }
    }
    if cfg.level == Level::Full {
        for n in 7..=64 {
            let sample = Permutation::sample(n, 100, cfg.seed.wrapping_add(n as u64));
            for t in Topology::ALL {
                add_round_trip(format!("switch {t} n={n} sampled"), t, n, &sample);
            }
        }
    }
    let enumerations = [(Topology::Benes, 4), (Topology::Triangular, 3), (Topology::Triangular, 4)];
    for (t, n) in enumerations {
        let name = format!("orderings {t} n={n}");
        match build(t, n).and_then(|net| {
            let k = net.switch_count();
            switchnet::enumerate_orderings(&net).map(|count| (k, count))
        }) {
            Ok((k, count)) => report.push_bool(name, count == factorial(n) && count <= 1 << k, || {
                format!("{count} orderings from {k} switches")
            }),
            Err(e) => report.push(name, 0, 1, Some(e.to_string())),
        }
    }
}

fn codes(report: &mut SuiteReport, cfg: SuiteConfig) {
    for n in 1..=cfg.level.network_max() {
        let perms = Permutation::all(n);
        let distinct: Result<HashSet<_>, _> = perms
            .iter()
            .map(|p| word_code(p.images(), n).map(|c| c.value().clone()))
            .collect();
        let name = format!("codes n={n}");
        match distinct {
            Ok(set) => report.push(name, set.len(), perms.len(), None),
            Err(e) => report.push(name, 0, perms.len(), Some(e.to_string())),
        }
    }
}
