use std::fmt::Write as _;

use crate::syntax::{Circuit, SortError};

/// One generator instance. Ports list the wires attached on the left and on
/// the right, top to bottom.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gate {
    pub kind: Circuit,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// Register slot for `reg` and `coreg`.
    pub slot: Option<usize>,
}

/// Flattened circuit: numbered wires joined by gates.
///
/// Every internal wire touches two gate ports and every boundary wire one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Netlist {
    pub wires: usize,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub gates: Vec<Gate>,
    pub registers: usize,
}

impl Netlist {
    pub fn internal_wires(&self) -> usize {
        self.wires - self.inputs.len() - self.outputs.len()
    }

    /// Graphviz text: gates are boxes, boundary ports are points, wires are
    /// edges labelled with their numbers.
    pub fn to_dot(&self) -> String {
        let mut ends: Vec<Vec<String>> = vec![Vec::new(); self.wires];
        let mut out = String::from("digraph circuit {\n  rankdir=LR;\n");
        for (i, &w) in self.inputs.iter().enumerate() {
            let _ = writeln!(out, "  in{i} [shape=point, xlabel=\"l{}\"];", i + 1);
            ends[w].push(format!("in{i}"));
        }
        for (g, gate) in self.gates.iter().enumerate() {
            let label = match gate.slot {
                Some(s) => format!("{} #{s}", gate.kind),
                None => gate.kind.to_string(),
            };
            let _ = writeln!(out, "  g{g} [shape=box, label=\"{label}\"];");
            for &w in &gate.left {
                ends[w].push(format!("g{g}"));
            }
        }
        for (j, &w) in self.outputs.iter().enumerate() {
            let _ = writeln!(out, "  out{j} [shape=point, xlabel=\"r{}\"];", j + 1);
            ends[w].push(format!("out{j}"));
        }
        // the producer of a wire is the gate holding it on its right, or an input
        let mut source: Vec<Option<String>> = vec![None; self.wires];
        for (i, &w) in self.inputs.iter().enumerate() {
            source[w] = Some(format!("in{i}"));
        }
        for (g, gate) in self.gates.iter().enumerate() {
            for &w in &gate.right {
                source[w] = Some(format!("g{g}"));
            }
        }
        for w in 0..self.wires {
            let from = source[w].as_deref().unwrap_or("?");
            for to in &ends[w] {
                if to != from {
                    let _ = writeln!(out, "  {from} -> {to} [label=\"w{w}\"];");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Flatten a circuit. Sequencing fuses the shared wires and the monoidal
/// product stacks; `id` and `sym` become gates of their own.
pub fn compile(c: &Circuit) -> Result<Netlist, SortError> {
    let sort = c.sort()?;
    let mut net = Netlist {
        wires: sort.left,
        inputs: (0..sort.left).collect(),
        outputs: Vec::new(),
        gates: Vec::new(),
        registers: 0,
    };
    let lefts = net.inputs.clone();
    net.outputs = place(c, &lefts, &mut net)?;
    Ok(net)
}

fn place(c: &Circuit, lefts: &[usize], net: &mut Netlist) -> Result<Vec<usize>, SortError> {
    match c {
        Circuit::Seq(a, b) => {
            let mid = place(a, lefts, net)?;
            place(b, &mid, net)
        }
        Circuit::Par(a, b) => {
            let split = a.sort()?.left;
            let mut top = place(a, &lefts[..split], net)?;
            top.extend(place(b, &lefts[split..], net)?);
            Ok(top)
        }
        g => {
            let sort = g.sort()?;
            let right: Vec<usize> = (net.wires..net.wires + sort.right).collect();
            net.wires += sort.right;
            let slot = matches!(g, Circuit::Reg | Circuit::CoReg).then(|| {
                net.registers += 1;
                net.registers - 1
            });
            net.gates.push(Gate {
                kind: g.clone(),
                left: lefts.to_vec(),
                right: right.clone(),
                slot,
            });
            Ok(right)
        }
    }
}
