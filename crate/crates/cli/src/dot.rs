use std::fmt::Write;

use tailbite::{ExplicitTrellis, FpVector};

fn name(i: usize, v: &FpVector) -> String {
    format!("\"t{i}_{}\"", v.digits())
}

/// Unrolled graph: one rank per time 0..n, with time n repeating the
/// vertices of time 0. Over GF(2), label 1 is solid and label 0 dashed;
/// other fields print the label.
pub fn export_dot(t: &ExplicitTrellis) -> String {
    let n = t.n();
    let binary = t.field().p() == 2;
    let mut out = String::from("digraph trellis {\n  rankdir=LR;\n  node [shape=circle, fontsize=10];\n");
    for i in 0..=n {
        let vs = t.vertices(i % n);
        let names: Vec<String> = vs.iter().map(|v| name(i, v)).collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", names.join("; "));
    }
    for i in 0..n {
        let (here, there) = (t.vertices(i), t.vertices((i + 1) % n));
        for e in t.edges(i) {
            let from = name(i, &here[e.from]);
            let to = name(i + 1, &there[e.to]);
            let attr = if binary {
                if e.label == 1 { "style=solid" } else { "style=dashed" }.to_string()
            } else {
                format!("label=\"{}\"", e.label)
            };
            let _ = writeln!(out, "  {from} -> {to} [{attr}];");
        }
    }
    out.push_str("}\n");
    out
}
