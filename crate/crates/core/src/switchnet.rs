//! Quantum-switch networks.
//!
//! A switch takes two gate operands and a control bit and passes them
//! straight (`0`) or crossed (`1`): `QS(x, U_0, U_1) = (U_x, U_x̄)`. A network
//! wires `n` input terminals carrying `U_1 … U_n` through switches to `n`
//! output terminals; output terminal 1 is the first gate applied, so a
//! network whose outputs carry `σ(1), …, σ(n)` realizes `U_σ(n) ∘ … ∘ U_σ(1)`.
//!
//! Two topologies are built here: the triangular (insertion) network with
//! `n(n−1)/2` switches and the recursive Beneš network with
//! `n·log₂ n − n/2` switches at powers of two. Nodes are numbered in a
//! topological order, so propagation is a single pass over node ids.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::perm::Permutation;

/// Enumeration over all `2^k` programs is limited to this many switches.
pub const ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Topology {
    Triangular,
    Benes,
}

impl Topology {
    pub const ALL: [Topology; 2] = [Topology::Triangular, Topology::Benes];

    pub fn name(self) -> &'static str {
        match self {
            Topology::Triangular => "triangular",
            Topology::Benes => "benes",
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangular" => Ok(Topology::Triangular),
            "benes" => Ok(Topology::Benes),
            other => Err(Error::Parse(format!("unknown topology {other:?}"))),
        }
    }
}

/// Where a wire comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    /// 0-based input terminal.
    Input(usize),
    /// Output port 0 or 1 of a switch.
    Switch(usize, u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwitchNode {
    pub inputs: [Source; 2],
}

/// Recursive layout of a Beneš block, kept for routing.
#[derive(Debug, Clone, PartialEq, Eq)]
enum BenesBlock {
    Wire,
    Single(usize),
    Split {
        size: usize,
        inputs: Vec<usize>,
        outputs: Vec<usize>,
        upper: Box<BenesBlock>,
        lower: Box<BenesBlock>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Layout {
    /// `(switch, upper line)` in schedule order; the switch acts on lines
    /// `line` and `line + 1` (0-based).
    Triangular(Vec<(usize, usize)>),
    Benes(BenesBlock),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchNetwork {
    n: usize,
    topology: Topology,
    nodes: Vec<SwitchNode>,
    outputs: Vec<Source>,
    layout: Layout,
}

/// One bit per switch, in node-id order. `0` passes, `1` crosses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ControlProgram {
    bits: Vec<bool>,
}

impl ControlProgram {
    pub fn new(bits: Vec<bool>) -> Self {
        ControlProgram { bits }
    }

    pub fn zeros(len: usize) -> Self {
        ControlProgram {
            bits: vec![false; len],
        }
    }

    /// Bit `i` is bit `i` of `mask`.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        ControlProgram {
            bits: (0..len).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

impl fmt::Display for ControlProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for ControlProgram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("not a bit: {other:?}"))),
            })
            .collect::<Result<_>>()
            .map(ControlProgram::new)
    }
}

/// Input labels (1-based) carried by each output terminal.
pub type Ordering = Vec<usize>;

struct Builder {
    nodes: Vec<SwitchNode>,
}

impl Builder {
    fn switch(&mut self, a: Source, b: Source) -> (usize, Source, Source) {
        let id = self.nodes.len();
        self.nodes.push(SwitchNode { inputs: [a, b] });
        (id, Source::Switch(id, 0), Source::Switch(id, 1))
    }

    /// Builds a Beneš block over `lines` and returns its layout and outputs.
    fn benes(&mut self, lines: &[Source]) -> (BenesBlock, Vec<Source>) {
        let m = lines.len();
        match m {
            0 | 1 => (BenesBlock::Wire, lines.to_vec()),
            2 => {
                let (id, a, b) = self.switch(lines[0], lines[1]);
                (BenesBlock::Single(id), vec![a, b])
            }
            _ => {
                let half = m / 2;
                let mut inputs = Vec::with_capacity(half);
                let mut upper_in = Vec::with_capacity(m - half);
                let mut lower_in = Vec::with_capacity(half);
                for k in 0..half {
                    let (id, a, b) = self.switch(lines[2 * k], lines[2 * k + 1]);
                    inputs.push(id);
                    upper_in.push(a);
                    lower_in.push(b);
                }
                if m % 2 == 1 {
                    upper_in.push(lines[m - 1]);
                }
                let (upper, upper_out) = self.benes(&upper_in);
                let (lower, lower_out) = self.benes(&lower_in);
                let mut outputs = Vec::with_capacity(half);
                let mut out = Vec::with_capacity(m);
                for k in 0..half {
                    let (id, a, b) = self.switch(upper_out[k], lower_out[k]);
                    outputs.push(id);
                    out.push(a);
                    out.push(b);
                }
                if m % 2 == 1 {
                    out.push(upper_out[half]);
                }
                let block = BenesBlock::Split {
                    size: m,
                    inputs,
                    outputs,
                    upper: Box::new(upper),
                    lower: Box::new(lower),
                };
                (block, out)
            }
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyAlphabet);
    }
    Ok(())
}

/// Recursive Beneš network. Odd blocks route their last line around both
/// switch columns into the upper half.
pub fn build_benes(n: usize) -> Result<SwitchNetwork> {
    check_n(n)?;
    let mut b = Builder { nodes: Vec::new() };
    let lines: Vec<Source> = (0..n).map(Source::Input).collect();
    let (block, outputs) = b.benes(&lines);
    Ok(SwitchNetwork {
        n,
        topology: Topology::Benes,
        nodes: b.nodes,
        outputs,
        layout: Layout::Benes(block),
    })
}

/// Insertion network: pass `k` sinks line `k + 1` through adjacent switches
/// `(k, k+1), (k−1, k), …, (1, 2)`.
pub fn build_triangular(n: usize) -> Result<SwitchNetwork> {
    check_n(n)?;
    let mut b = Builder { nodes: Vec::new() };
    let mut lines: Vec<Source> = (0..n).map(Source::Input).collect();
    let mut schedule = Vec::with_capacity(n * (n - 1) / 2);
    for k in 1..n {
        for j in (1..=k).rev() {
            let (id, a, c) = b.switch(lines[j - 1], lines[j]);
            lines[j - 1] = a;
            lines[j] = c;
            schedule.push((id, j - 1));
        }
    }
    Ok(SwitchNetwork {
        n,
        topology: Topology::Triangular,
        nodes: b.nodes,
        outputs: lines,
        layout: Layout::Triangular(schedule),
    })
}

pub fn build(topology: Topology, n: usize) -> Result<SwitchNetwork> {
    match topology {
        Topology::Triangular => build_triangular(n),
        Topology::Benes => build_benes(n),
    }
}

impl SwitchNetwork {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn nodes(&self) -> &[SwitchNode] {
        &self.nodes
    }

    /// Source feeding each output terminal.
    pub fn outputs(&self) -> &[Source] {
        &self.outputs
    }

    pub fn switch_count(&self) -> usize {
        self.nodes.len()
    }

    /// Checks that every terminal and port is used exactly once and that
    /// nodes only read from earlier nodes.
    pub fn validate(&self) -> Result<()> {
        let mut used = HashSet::new();
        let sources = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(id, node)| node.inputs.iter().map(move |s| (Some(id), *s)))
            .chain(self.outputs.iter().map(|s| (None, *s)));
        for (reader, src) in sources {
            match src {
                Source::Input(t) if t >= self.n => {
                    return Err(Error::InvalidParameter(format!("input terminal {t} out of range")))
                }
                Source::Switch(id, port)
                    if port > 1 || id >= self.nodes.len() || reader.is_some_and(|r| id >= r) =>
                {
                    return Err(Error::InvalidParameter(format!(
                        "switch port ({id}, {port}) breaks topological order"
                    )))
                }
                _ => {}
            }
            if !used.insert(src) {
                return Err(Error::InvalidParameter(format!("{src:?} is consumed twice")));
            }
        }
        if used.len() != self.n + 2 * self.nodes.len() {
            return Err(Error::InvalidParameter("dangling port".into()));
        }
        Ok(())
    }

    /// Edges as `(from, from_port, to, to_port)`; terminals use `None` for
    /// the node and their 1-based index for the port.
    pub fn edges(&self) -> Vec<(Option<usize>, usize, Option<usize>, usize)> {
        let from = |s: Source| match s {
            Source::Input(t) => (None, t + 1),
            Source::Switch(id, p) => (Some(id), p as usize),
        };
        let mut out = Vec::with_capacity(self.n + 2 * self.nodes.len());
        for (id, node) in self.nodes.iter().enumerate() {
            for (port, &s) in node.inputs.iter().enumerate() {
                let (f, fp) = from(s);
                out.push((f, fp, Some(id), port));
            }
        }
        for (t, &s) in self.outputs.iter().enumerate() {
            let (f, fp) = from(s);
            out.push((f, fp, None, t + 1));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&NetworkJson(self)).expect("network serializes")
    }

    fn check_program(&self, p: &ControlProgram) -> Result<()> {
        if p.len() != self.nodes.len() {
            return Err(Error::ProgramLength {
                expected: self.nodes.len(),
                found: p.len(),
            });
        }
        Ok(())
    }

    /// Propagation driven by a bit mask (bit `i` controls switch `i`).
    fn propagate_mask(&self, mask: u64, ports: &mut Vec<[usize; 2]>) -> Ordering {
        ports.clear();
        let read = |ports: &Vec<[usize; 2]>, s: Source| match s {
            Source::Input(t) => t + 1,
            Source::Switch(id, p) => ports[id][p as usize],
        };
        for (id, node) in self.nodes.iter().enumerate() {
            let a = read(ports, node.inputs[0]);
            let b = read(ports, node.inputs[1]);
            ports.push(if mask >> id & 1 == 1 { [b, a] } else { [a, b] });
        }
        self.outputs.iter().map(|&s| read(ports, s)).collect()
    }
}

struct NetworkJson<'a>(&'a SwitchNetwork);

struct EdgesJson<'a>(&'a SwitchNetwork);

impl Serialize for NetworkJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let net = self.0;
        let mut st = s.serialize_struct("SwitchNetwork", 5)?;
        st.serialize_field("model", "switch")?;
        st.serialize_field("topology", net.topology.name())?;
        st.serialize_field("n", &net.n)?;
        st.serialize_field("switches", &net.switch_count())?;
        st.serialize_field("edges", &EdgesJson(net))?;
        st.end()
    }
}

impl Serialize for EdgesJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let edges = self.0.edges();
        let mut seq = s.serialize_seq(Some(edges.len()))?;
        for (from, fp, to, tp) in edges {
            let end = |node: Option<usize>, terminal: &str| match node {
                Some(id) => serde_json::Value::from(id),
                None => serde_json::Value::from(terminal),
            };
            seq.serialize_element(&(end(from, "in"), fp, end(to, "out"), tp))?;
        }
        seq.end()
    }
}

/// Pushes labels `1..=n` through the network.
pub fn propagate(net: &SwitchNetwork, p: &ControlProgram) -> Result<Ordering> {
    net.check_program(p)?;
    let mut ports = vec![[0usize; 2]; net.nodes.len()];
    let read = |ports: &Vec<[usize; 2]>, s: Source| match s {
        Source::Input(t) => t + 1,
        Source::Switch(id, port) => ports[id][port as usize],
    };
    for (id, node) in net.nodes.iter().enumerate() {
        let a = read(&ports, node.inputs[0]);
        let b = read(&ports, node.inputs[1]);
        ports[id] = if p.bits[id] { [b, a] } else { [a, b] };
    }
    Ok(net.outputs.iter().map(|&s| read(&ports, s)).collect())
}

pub fn switch_count(net: &SwitchNetwork) -> usize {
    net.switch_count()
}

/// A program whose propagation puts input `σ(i)` on output terminal `i`.
pub fn route(net: &SwitchNetwork, sigma: &Permutation) -> Result<ControlProgram> {
    if sigma.n() != net.n {
        return Err(Error::AlphabetMismatch {
            expected: net.n,
            found: sigma.n(),
        });
    }
    let mut bits = vec![false; net.nodes.len()];
    match &net.layout {
        Layout::Triangular(schedule) => {
            // compare-exchange on each label's destination terminal
            let dest = sigma.inverse();
            let mut keys: Vec<usize> = (1..=net.n).map(|label| dest.apply(label)).collect();
            for &(id, line) in schedule {
                if keys[line] > keys[line + 1] {
                    keys.swap(line, line + 1);
                    bits[id] = true;
                }
            }
        }
        Layout::Benes(block) => {
            let want: Vec<usize> = sigma.images().iter().map(|&s| s - 1).collect();
            route_benes(block, &want, &mut bits);
        }
    }
    Ok(ControlProgram { bits })
}

/// Looping algorithm. `want[o]` is the local input that must reach local
/// output `o`.
fn route_benes(block: &BenesBlock, want: &[usize], bits: &mut [bool]) {
    match block {
        BenesBlock::Wire => {}
        BenesBlock::Single(id) => bits[*id] = want[0] == 1,
        BenesBlock::Split {
            size,
            inputs,
            outputs,
            upper,
            lower,
        } => {
            let m = *size;
            let half = m / 2;
            let odd = m % 2 == 1;
            let mut source_of = vec![0; m];
            for (o, &i) in want.iter().enumerate() {
                source_of[i] = o;
            }
            // Connections are identified by their output terminal. Partners
            // share an input switch or an output switch and must use
            // different halves.
            let input_partner = |o: usize| -> Option<usize> {
                let i = want[o];
                if odd && i == m - 1 {
                    None
                } else {
                    Some(source_of[i ^ 1])
                }
            };
            let output_partner = |o: usize| -> Option<usize> {
                if odd && o == m - 1 {
                    None
                } else {
                    Some(o ^ 1)
                }
            };
            // upper = true
            let mut side: Vec<Option<bool>> = vec![None; m];
            let walk = |start: usize, side: &mut Vec<Option<bool>>| {
                // alternate output and input constraints from `start`
                let mut o = start;
                side[o] = Some(true);
                let mut via_output = true;
                loop {
                    let next = if via_output {
                        output_partner(o)
                    } else {
                        input_partner(o)
                    };
                    via_output = !via_output;
                    match next {
                        Some(p) if side[p].is_none() => {
                            side[p] = Some(!side[o].expect("colored"));
                            o = p;
                        }
                        _ => break,
                    }
                }
            };
            if odd {
                // The bypass input must use the upper half; its chain ends at
                // the bypass output, which then lands in the upper half too.
                walk(source_of[m - 1], &mut side);
            }
            for o in 0..m {
                if side[o].is_none() {
                    walk(o, &mut side);
                }
            }
            let upper_size = m - half;
            let mut upper_want = vec![0; upper_size];
            let mut lower_want = vec![0; half];
            for o in 0..m {
                let i = want[o];
                let up = side[o].expect("every connection colored");
                if i < 2 * half {
                    let first_goes_up = i.is_multiple_of(2) == up;
                    bits[inputs[i / 2]] = !first_goes_up;
                }
                if o < 2 * half {
                    let first_from_up = o.is_multiple_of(2) == up;
                    bits[outputs[o / 2]] = !first_from_up;
                }
                let (li, lo) = (sub_index(i, half, odd, m), sub_index(o, half, odd, m));
                if up {
                    upper_want[lo] = li;
                } else {
                    lower_want[lo] = li;
                }
            }
            route_benes(upper, &upper_want, bits);
            route_benes(lower, &lower_want, bits);
        }
    }
}

fn sub_index(line: usize, half: usize, odd: bool, m: usize) -> usize {
    if odd && line == m - 1 {
        half
    } else {
        line / 2
    }
}

/// Number of distinct orderings reachable over all `2^k` programs.
pub fn enumerate_orderings(net: &SwitchNetwork) -> Result<usize> {
    enumerate_orderings_with(net, Execution::default())
}

pub fn enumerate_orderings_with(net: &SwitchNetwork, exec: Execution) -> Result<usize> {
    let k = net.switch_count();
    if k > ENUMERATION_LIMIT {
        return Err(Error::TooManySwitches {
            switches: k,
            limit: ENUMERATION_LIMIT,
        });
    }
    let seen = exec.fold_range(
        1u64 << k,
        || (HashSet::new(), Vec::new()),
        |(mut set, mut ports): (HashSet<Ordering>, Vec<[usize; 2]>), mask| {
            set.insert(net.propagate_mask(mask, &mut ports));
            (set, ports)
        },
        |(mut a, pa), (mut b, pb)| {
            if a.len() < b.len() {
                b.extend(a);
                return (b, pb);
            }
            a.extend(b);
            (a, pa)
        },
    );
    Ok(seen.0.len())
}

/// Result of a route-then-propagate sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTripReport {
    pub total: usize,
    pub failures: Vec<Permutation>,
}

impl RoundTripReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Routes and propagates every permutation in `sigmas`.
pub fn round_trip(net: &SwitchNetwork, sigmas: &[Permutation], exec: Execution) -> Result<RoundTripReport> {
    let ok = exec.map(sigmas, |s| -> Result<bool> {
        let p = route(net, s)?;
        Ok(propagate(net, &p)? == s.images())
    });
    let mut failures = Vec::new();
    for (s, ok) in sigmas.iter().zip(ok) {
        if !ok? {
            failures.push(s.clone());
        }
    }
    Ok(RoundTripReport {
        total: sigmas.len(),
        failures,
    })
}

/// Exact switch count of [`build_benes`] without building it.
pub fn benes_switch_count(n: usize) -> u64 {
    fn go(n: usize, memo: &mut HashMap<usize, u64>) -> u64 {
        match n {
            0 | 1 => 0,
            2 => 1,
            _ => {
                if let Some(&c) = memo.get(&n) {
                    return c;
                }
                let c = 2 * (n / 2) as u64 + go(n - n / 2, memo) + go(n / 2, memo);
                memo.insert(n, c);
                c
            }
        }
    }
    go(n, &mut HashMap::new())
}

pub fn triangular_switch_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// `⌈log₂ n!⌉`, the least `k` with `2^k ≥ n!`.
pub fn lower_bound_switches(n: usize) -> u64 {
    let mut acc = Log2FactorialAccumulator::default();
    for k in 2..=n {
        acc.push(k);
    }
    acc.ceil()
}

/// Running `log₂ n!` with compensated summation; [`Self::ceil`] falls back
/// to exact integer arithmetic when the float lands too close to an integer.
#[derive(Debug, Clone, Default)]
pub struct Log2FactorialAccumulator {
    n: usize,
    sum: f64,
    comp: f64,
}

impl Log2FactorialAccumulator {
    const GUARD: f64 = 1e-7;

    /// Multiplies the factorial by `k`, which must be the next integer.
    pub fn push(&mut self, k: usize) {
        debug_assert!(k == self.n + 1 || (self.n == 0 && k == 2));
        self.n = k;
        let x = (k as f64).log2();
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn n(&self) -> usize {
        self.n.max(1)
    }

    pub fn log2(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn ceil(&self) -> u64 {
        let v = self.log2();
        let nearest = v.round();
        if (v - nearest).abs() < Self::GUARD {
            return exact_ceil_log2_factorial(self.n());
        }
        v.ceil() as u64
    }
}

/// `⌈log₂ n!⌉` via big integers: the bit length of `n! − 1`.
pub fn exact_ceil_log2_factorial(n: usize) -> u64 {
    let mut f = num_bigint::BigUint::from(1u32);
    for k in 2..=n {
        f *= k;
    }
    (f - 1u32).bits()
}
