//! Standard-model circuits: routing layers interleaved with oracle calls.
//!
//! Two synthesizers are provided. [`synthesize_routed`] takes a complete word
//! `w` and builds `|w|` single-call columns on the data wire with `|w| + 1`
//! classically controlled two-wire swaps around them. [`synthesize_baseline`]
//! builds `n` columns that call every oracle in parallel, one per wire, and
//! moves the data slot from wire `σ(i)` to wire `σ(i+1)` between columns.
//!
//! The control register holds a basis permutation, so every routing layer is
//! a plain wire permutation chosen from `σ`. Simulation therefore tracks
//! which *slot* (the data slot or an auxiliary slot) sits on each wire.
//!
//! Routed layer `i` swaps iff `b_i(σ) ≠ b_{i+1}(σ)`, where `b_i(σ)` says
//! whether call `i` belongs to the leftmost embedding of `σ` in `w` and
//! `b_0 = b_{|w|+1} = 1`. The data slot is then on the data wire exactly for
//! the embedded calls, and back on it at the end.

use std::fmt;

use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::oracle::{self, word_code, PhaseOracleState, UnitaryMatrix};
use crate::perm::Permutation;
use crate::superseq::{
    self, Certification, CheckMode, CompleteSequence, NextTable, EXHAUSTIVE_LIMIT,
};

/// Largest `n` for which [`PermSelection::All`] is accepted.
pub const VERIFY_ALL_LIMIT: usize = 7;
/// Per-amplitude tolerance of numeric checks.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;
/// Samples used to vouch for an uncertified word above the exhaustive limit.
const SAMPLED_CERTIFICATION_TRIALS: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircuitStrategy {
    Routed(CompleteSequence),
    Baseline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoutingLayer {
    pub index: usize,
    /// Mutation hook: the rule is followed by a swap of wires 1 and 2.
    pub inverted: bool,
}

/// Calls executed in parallel between two routing layers, as `(wire, oracle)`
/// pairs with 0-based wires and 1-based oracle indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallColumn {
    pub calls: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardCircuit {
    n: usize,
    strategy: CircuitStrategy,
    wires: usize,
    layers: Vec<RoutingLayer>,
    columns: Vec<CallColumn>,
    /// Routed only: next-occurrence table of the word.
    table: Option<NextTable>,
}

/// Builds the routed circuit for a complete word.
///
/// A word without a certificate is checked first: exhaustively up to
/// [`EXHAUSTIVE_LIMIT`], by seeded sampling above it.
pub fn synthesize_routed(w: CompleteSequence) -> Result<StandardCircuit> {
    let w = match w.certification() {
        Certification::Complete => w,
        Certification::Incomplete => return Err(incomplete(&w)),
        Certification::Unknown => {
            let mode = if w.n() <= EXHAUSTIVE_LIMIT {
                CheckMode::Exhaustive
            } else {
                CheckMode::Sampled {
                    trials: SAMPLED_CERTIFICATION_TRIALS,
                    seed: 0,
                }
            };
            let checked = w.certify(mode)?;
            if checked.certification() == Certification::Incomplete {
                return Err(incomplete(&checked));
            }
            checked
        }
    };
    Ok(StandardCircuit::routed_unchecked(w))
}

fn incomplete(w: &CompleteSequence) -> Error {
    let missing = if w.n() <= EXHAUSTIVE_LIMIT {
        superseq::find_missing(w, CheckMode::Exhaustive, EXHAUSTIVE_LIMIT, Execution::Sequential)
            .ok()
            .flatten()
            .map(|p| p.to_string())
            .unwrap_or_default()
    } else {
        String::new()
    };
    Error::IncompleteWord { missing }
}

/// The `n²`-call circuit with `n` work wires.
pub fn synthesize_baseline(n: usize) -> Result<StandardCircuit> {
    if n == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let column = CallColumn {
        calls: (0..n).map(|wire| (wire, wire + 1)).collect(),
    };
    Ok(StandardCircuit {
        n,
        strategy: CircuitStrategy::Baseline,
        wires: n,
        layers: layers(n + 1),
        columns: vec![column; n],
        table: None,
    })
}

fn layers(count: usize) -> Vec<RoutingLayer> {
    (0..count)
        .map(|index| RoutingLayer {
            index,
            inverted: false,
        })
        .collect()
}

impl StandardCircuit {
    /// Routed circuit over any word, complete or not. Used to audit and to
    /// exercise broken circuits; [`synthesize_routed`] is the checked entry.
    pub fn routed_unchecked(w: CompleteSequence) -> StandardCircuit {
        let columns = w
            .symbols()
            .iter()
            .map(|&j| CallColumn { calls: vec![(0, j)] })
            .collect();
        StandardCircuit {
            n: w.n(),
            wires: 2,
            layers: layers(w.len() + 1),
            columns,
            table: Some(NextTable::new(&w)),
            strategy: CircuitStrategy::Routed(w),
        }
    }

    /// Copy with layer `index` followed by a swap of the first two wires.
    pub fn with_inverted_layer(&self, index: usize) -> Result<StandardCircuit> {
        if index >= self.layers.len() {
            return Err(Error::InvalidParameter(format!(
                "layer {index} out of range 0..{}",
                self.layers.len()
            )));
        }
        if self.wires < 2 {
            return Err(Error::InvalidParameter(
                "cannot invert a layer of a one-wire circuit".into(),
            ));
        }
        let mut c = self.clone();
        c.layers[index].inverted = !c.layers[index].inverted;
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn strategy(&self) -> &CircuitStrategy {
        &self.strategy
    }

    pub fn strategy_name(&self) -> &'static str {
        match self.strategy {
            CircuitStrategy::Routed(_) => "routed",
            CircuitStrategy::Baseline => "baseline",
        }
    }

    pub fn word(&self) -> Option<&CompleteSequence> {
        match &self.strategy {
            CircuitStrategy::Routed(w) => Some(w),
            CircuitStrategy::Baseline => None,
        }
    }

    /// Work wires; the control register is not counted.
    pub fn wire_count(&self) -> usize {
        self.wires
    }

    pub fn layers(&self) -> &[RoutingLayer] {
        &self.layers
    }

    pub fn columns(&self) -> &[CallColumn] {
        &self.columns
    }

    pub fn call_count(&self) -> usize {
        self.columns.iter().map(|c| c.calls.len()).sum()
    }

    fn check_alphabet(&self, sigma: &Permutation) -> Result<()> {
        if sigma.n() != self.n {
            return Err(Error::AlphabetMismatch {
                expected: self.n,
                found: sigma.n(),
            });
        }
        Ok(())
    }

    /// The rewiring `τ` of every layer for control value `σ`, 0-based, with
    /// wire `i` receiving the content of wire `τ[i]`.
    pub fn routing_plan(&self, sigma: &Permutation) -> Result<Vec<Vec<usize>>> {
        self.check_alphabet(sigma)?;
        let mut plan: Vec<Vec<usize>> = match &self.strategy {
            CircuitStrategy::Routed(w) => {
                let table = self.table.as_ref().expect("routed circuits keep a table");
                let b = match table.embed(sigma.images()) {
                    Some(idx) => {
                        let mut b = vec![false; w.len() + 2];
                        b[0] = true;
                        b[w.len() + 1] = true;
                        for i in idx {
                            b[i] = true;
                        }
                        b
                    }
                    // σ does not embed: the data slot parks on the auxiliary
                    // wire for the whole word and collects nothing.
                    None => {
                        let mut b = vec![false; w.len() + 2];
                        b[0] = true;
                        b[w.len() + 1] = true;
                        b
                    }
                };
                (0..=w.len())
                    .map(|i| if b[i] != b[i + 1] { vec![1, 0] } else { vec![0, 1] })
                    .collect()
            }
            CircuitStrategy::Baseline => {
                let n = self.n;
                let img = sigma.images();
                let mut stops = Vec::with_capacity(n + 2);
                stops.push(0);
                stops.extend(img.iter().map(|&s| s - 1));
                stops.push(0);
                stops
                    .windows(2)
                    .map(|pair| transposition(n, pair[0], pair[1]))
                    .collect()
            }
        };
        for layer in &self.layers {
            if layer.inverted {
                plan[layer.index].swap(0, 1);
            }
        }
        Ok(plan)
    }

    /// The rewiring of one layer as in `R|σ, x_1…x_k⟩ = |σ, x_τ1…x_τk⟩`,
    /// with 1-based wires.
    pub fn rewiring(&self, layer: usize, sigma: &Permutation) -> Result<Vec<usize>> {
        let plan = self.routing_plan(sigma)?;
        let tau = plan.get(layer).ok_or_else(|| {
            Error::InvalidParameter(format!("layer {layer} out of range 0..{}", plan.len()))
        })?;
        Ok(tau.iter().map(|t| t + 1).collect())
    }

    /// Serializable summary; routing rules are implied by strategy and word.
    pub fn summary(&self) -> CircuitSummary {
        CircuitSummary {
            model: "standard",
            n: self.n,
            strategy: self.strategy_name(),
            word: self.word().map(|w| w.symbols().to_vec()),
            layers: self.layers.len(),
            calls: self.call_count(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.summary()).expect("summary serializes")
    }
}

fn transposition(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut t: Vec<usize> = (0..n).collect();
    t.swap(a, b);
    t
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircuitSummary {
    pub model: &'static str,
    pub n: usize,
    pub strategy: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<usize>>,
    pub layers: usize,
    pub calls: usize,
}

/// Walks the circuit for one `σ`, calling `on_call(slot, oracle, position)` for every
/// call (with its 1-based position), and returns the slot sitting on each
/// wire at the end.
fn walk<F: FnMut(usize, usize, usize)>(
    c: &StandardCircuit,
    sigma: &Permutation,
    mut on_call: F,
) -> Result<Vec<usize>> {
    let plan = c.routing_plan(sigma)?;
    let mut at_wire: Vec<usize> = (0..c.wires).collect();
    let mut scratch = at_wire.clone();
    let mut call_index = 0;
    for (i, tau) in plan.iter().enumerate() {
        for (wire, &src) in tau.iter().enumerate() {
            scratch[wire] = at_wire[src];
        }
        std::mem::swap(&mut at_wire, &mut scratch);
        if let Some(column) = c.columns.get(i) {
            for &(wire, j) in &column.calls {
                call_index += 1;
                on_call(at_wire[wire], j, call_index);
            }
        }
    }
    Ok(at_wire)
}

/// Result of a symbolic run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicTrace {
    /// Oracles applied to whatever ends on the data wire, in order.
    pub data_word: Vec<usize>,
    /// 1-based positions, in the sequentialized call order, of those calls.
    pub data_calls: Vec<usize>,
    /// Whether the slot ending on the data wire is the one that started there.
    pub data_returned: bool,
    /// Words applied to every other slot, ordered by slot.
    pub garbage: Vec<Vec<usize>>,
}

pub fn simulate_symbolic(c: &StandardCircuit, sigma: &Permutation) -> Result<SymbolicTrace> {
    let mut words = vec![Vec::new(); c.wires];
    let mut calls = vec![Vec::new(); c.wires];
    let at_wire = walk(c, sigma, |slot, j, k| {
        words[slot].push(j);
        calls[slot].push(k);
    })?;
    let out = at_wire[0];
    let data_word = std::mem::take(&mut words[out]);
    let data_calls = std::mem::take(&mut calls[out]);
    let garbage = words
        .into_iter()
        .enumerate()
        .filter(|&(slot, _)| slot != out)
        .map(|(_, w)| w)
        .collect();
    Ok(SymbolicTrace {
        data_word,
        data_calls,
        data_returned: out == 0,
        garbage,
    })
}

/// Phase-oracle run: the data slot starts in `|0, 1⟩`, auxiliary slots in
/// `|0, 0⟩`. Returns the state on the data wire at the end.
pub fn simulate_phase(c: &StandardCircuit, sigma: &Permutation) -> Result<PhaseOracleState> {
    let n = c.n;
    let mut states: Vec<PhaseOracleState> = (0..c.wires)
        .map(|slot| PhaseOracleState::new(slot == 0, n))
        .collect();
    let mut failure = None;
    let at_wire = walk(c, sigma, |slot, j, _| {
        match oracle::phase_oracle_apply(j, &states[slot], n) {
            Ok(s) => states[slot] = s,
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(states.swap_remove(at_wire[0]))
}

/// Numeric run with one gate per oracle. Every auxiliary slot starts in
/// `aux_init`; the returned vector is the content of the data wire.
pub fn simulate_numeric(
    c: &StandardCircuit,
    sigma: &Permutation,
    gates: &[UnitaryMatrix],
    input: &[Complex64],
    aux_init: &[Complex64],
) -> Result<Vec<Complex64>> {
    if gates.len() != c.n {
        return Err(Error::GateIndexOutOfRange {
            index: c.n,
            count: gates.len(),
        });
    }
    let dim = gates[0].dim();
    for g in gates {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.dim(),
            });
        }
    }
    for v in [input, aux_init] {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
    }
    let mut states: Vec<Vec<Complex64>> = (0..c.wires)
        .map(|slot| if slot == 0 { input.to_vec() } else { aux_init.to_vec() })
        .collect();
    let at_wire = walk(c, sigma, |slot, j, _| {
        states[slot] = gates[j - 1].apply(&states[slot]).expect("dimensions checked");
    })?;
    Ok(states.swap_remove(at_wire[0]))
}

/// The `σ`-independent call order; parallel calls go top wire first.
pub fn extract_call_sequence(c: &StandardCircuit) -> Vec<usize> {
    c.columns
        .iter()
        .flat_map(|col| col.calls.iter().map(|&(_, j)| j))
        .collect()
}

/// Whether the call word is complete, a necessary condition for any
/// rewiring circuit that solves the problem.
pub fn audit_completeness(c: &StandardCircuit) -> Result<bool> {
    if c.n > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLargeForExhaustive {
            n: c.n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let word = CompleteSequence::new(c.n, extract_call_sequence(c))?;
    superseq::is_complete(&word, CheckMode::Exhaustive)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermSelection {
    All,
    Sample { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    /// Compare applied words.
    Symbolic,
    /// Compare exact phase codes and counters.
    Phase,
    /// Compare states against the direct product for seeded random gates,
    /// under two different auxiliary initializations.
    Numeric { seed: u64 },
}

impl OracleKind {
    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Symbolic => "symbolic",
            OracleKind::Phase => "phase",
            OracleKind::Numeric { .. } => "numeric",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseFailure {
    pub sigma: Permutation,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub oracle: &'static str,
    pub total: usize,
    pub passed: usize,
    /// Ordered by `σ`, lexicographically.
    pub failures: Vec<CaseFailure>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} pass", self.passed, self.total)
    }
}

pub fn selected_permutations(n: usize, perms: PermSelection) -> Result<Vec<Permutation>> {
    match perms {
        PermSelection::All => {
            if n > VERIFY_ALL_LIMIT {
                return Err(Error::TooLargeForExhaustive {
                    n,
                    limit: VERIFY_ALL_LIMIT,
                });
            }
            Ok(Permutation::all(n))
        }
        PermSelection::Sample { count, seed } => {
            if count == 0 {
                return Err(Error::NoTrials);
            }
            let mut s = Permutation::sample(n, count, seed);
            s.sort();
            Ok(s)
        }
    }
}

pub fn verify_circuit(
    c: &StandardCircuit,
    perms: PermSelection,
    oracle: OracleKind,
) -> Result<VerifyReport> {
    verify_circuit_with(c, perms, oracle, Execution::default())
}

pub fn verify_circuit_with(
    c: &StandardCircuit,
    perms: PermSelection,
    oracle: OracleKind,
    exec: Execution,
) -> Result<VerifyReport> {
    let sigmas = selected_permutations(c.n, perms)?;
    let fixture = match oracle {
        OracleKind::Numeric { seed } => Some(NumericFixture::new(c.n, seed)?),
        _ => None,
    };
    let outcomes = exec.map(&sigmas, |sigma| -> Result<Option<String>> {
        match oracle {
            OracleKind::Symbolic => check_symbolic(c, sigma),
            OracleKind::Phase => check_phase(c, sigma),
            OracleKind::Numeric { .. } => fixture.as_ref().expect("built above").check(c, sigma),
        }
    });
    let mut failures = Vec::new();
    for (sigma, outcome) in sigmas.iter().zip(outcomes) {
        if let Some(detail) = outcome? {
            failures.push(CaseFailure {
                sigma: sigma.clone(),
                detail,
            });
        }
    }
    Ok(VerifyReport {
        oracle: oracle.name(),
        total: sigmas.len(),
        passed: sigmas.len() - failures.len(),
        failures,
    })
}

fn check_symbolic(c: &StandardCircuit, sigma: &Permutation) -> Result<Option<String>> {
    let trace = simulate_symbolic(c, sigma)?;
    if !trace.data_returned {
        return Ok(Some("data slot did not return to the data wire".into()));
    }
    if trace.data_word != sigma.images() {
        return Ok(Some(format!(
            "applied {:?}, expected {:?}",
            trace.data_word,
            sigma.images()
        )));
    }
    Ok(None)
}

fn check_phase(c: &StandardCircuit, sigma: &Permutation) -> Result<Option<String>> {
    let got = simulate_phase(c, sigma)?;
    let expected = word_code(sigma.images(), c.n)?;
    if !got.bit() || got.counter() != c.n || got.code().value() != expected.value() {
        return Ok(Some(format!(
            "state |{}, {}> with exponent {}, expected |{}, 1> with exponent {}",
            got.counter(),
            u8::from(got.bit()),
            got.code(),
            c.n,
            expected
        )));
    }
    Ok(None)
}

/// Seeded gates and states shared by every `σ` of one numeric verification.
#[derive(Debug, Clone)]
pub struct NumericFixture {
    pub gates: Vec<UnitaryMatrix>,
    pub input: Vec<Complex64>,
    pub aux: [Vec<Complex64>; 2],
}

impl NumericFixture {
    pub const DIM: usize = 2;

    pub fn new(n: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gates = (0..n)
            .map(|_| oracle::random_unitary(Self::DIM, rng.next_u64()))
            .collect::<Result<_>>()?;
        let input = oracle::random_state(Self::DIM, rng.next_u64())?;
        let aux = [
            oracle::random_state(Self::DIM, rng.next_u64())?,
            oracle::random_state(Self::DIM, rng.next_u64())?,
        ];
        Ok(NumericFixture { gates, input, aux })
    }

    pub fn check(&self, c: &StandardCircuit, sigma: &Permutation) -> Result<Option<String>> {
        let direct = oracle::word_product(sigma.images(), &self.gates)?.apply(&self.input)?;
        let first = simulate_numeric(c, sigma, &self.gates, &self.input, &self.aux[0])?;
        let second = simulate_numeric(c, sigma, &self.gates, &self.input, &self.aux[1])?;
        let err = oracle::max_abs_diff(&first, &direct);
        if err > NUMERIC_TOLERANCE {
            return Ok(Some(format!("output differs from direct product by {err:.3e}")));
        }
        let drift = oracle::max_abs_diff(&first, &second);
        if drift > NUMERIC_TOLERANCE {
            return Ok(Some(format!(
                "output depends on the auxiliary state ({drift:.3e})"
            )));
        }
        Ok(None)
    }
}
