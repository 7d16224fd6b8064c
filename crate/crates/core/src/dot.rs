//! Graphviz renderings of circuits and switch networks.

use std::fmt::Write;

use crate::standard::StandardCircuit;
use crate::switchnet::{Source, SwitchNetwork};

/// Wires run left to right; routing layers and call columns alternate.
pub fn circuit_to_dot(c: &StandardCircuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph circuit {{");
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=box, fontname=monospace];");
    let _ = writeln!(
        out,
        "  label=\"{} n={} layers={} calls={}\";",
        c.strategy_name(),
        c.n(),
        c.layers().len(),
        c.call_count()
    );
    let wires = c.wire_count();
    for w in 0..wires {
        let _ = writeln!(out, "  w{w}_in [shape=plaintext, label=\"q{w}\"];");
    }
    let mut prev: Vec<String> = (0..wires).map(|w| format!("w{w}_in")).collect();
    let layers = c.layers();
    let columns = c.columns();
    for (i, layer) in layers.iter().enumerate() {
        let name = format!("R{}", layer.index);
        let label = if layer.inverted {
            format!("{name}*")
        } else {
            name.clone()
        };
        let _ = writeln!(out, "  {name} [label=\"{label}\", shape=box3d];");
        for p in &prev {
            let _ = writeln!(out, "  {p} -> {name};");
        }
        prev = vec![name.clone(); wires];
        if let Some(col) = columns.get(i) {
            for &(wire, oracle) in &col.calls {
                let node = format!("c{i}_{wire}");
                let _ = writeln!(out, "  {node} [label=\"U{oracle}\"];");
                let _ = writeln!(out, "  {name} -> {node} [label=\"{wire}\"];");
                prev[wire] = node;
            }
            prev.sort();
            prev.dedup();
        }
    }
    let _ = writeln!(out, "  out [shape=plaintext, label=\"q0\"];");
    prev.sort();
    prev.dedup();
    for p in &prev {
        let _ = writeln!(out, "  {p} -> out;");
    }
    out.push_str("}\n");
    out
}

/// Inputs are labelled `U_i`, outputs `U_sigma(i)`.
pub fn network_to_dot(net: &SwitchNetwork) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph network {{");
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(
        out,
        "  label=\"{} n={} switches={}\";",
        net.topology(),
        net.n(),
        net.switch_count()
    );
    for t in 1..=net.n() {
        let _ = writeln!(out, "  in{t} [shape=plaintext, label=\"U_{t}\"];");
        let _ = writeln!(out, "  out{t} [shape=plaintext, label=\"U_sigma({t})\"];");
    }
    for id in 0..net.switch_count() {
        let _ = writeln!(out, "  s{id} [shape=circle, label=\"QS{id}\"];");
    }
    for (id, node) in net.nodes().iter().enumerate() {
        for (port, &s) in node.inputs.iter().enumerate() {
            let _ = writeln!(out, "  {} -> s{id} [headlabel=\"{port}\"{}];", endpoint(s), port_attr(s));
        }
    }
    for (t, &s) in net.outputs().iter().enumerate() {
        let _ = writeln!(out, "  {} -> out{}{};", endpoint(s), t + 1, bracket(port_attr(s)));
    }
    out.push_str("}\n");
    out
}

fn endpoint(s: Source) -> String {
    match s {
        Source::Input(t) => format!("in{}", t + 1),
        Source::Switch(id, _) => format!("s{id}"),
    }
}

fn port_attr(s: Source) -> String {
    match s {
        Source::Input(_) => String::new(),
        Source::Switch(_, p) => format!(", taillabel=\"{p}\""),
    }
}

fn bracket(attr: String) -> String {
    match attr.strip_prefix(", ") {
        Some(a) => format!(" [{a}]"),
        None => String::new(),
    }
}
