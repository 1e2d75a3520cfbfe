//! Graphviz export of the Hasse diagram.
//!
//! Arcs point from a face to its codimension-one cofaces; gradient pairs are
//! drawn reversed (coface to face). Critical simplices are filled, and arcs
//! of critical pairs are drawn bold.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::complex::SimplicialComplex;
use crate::io::VertexNames;
use crate::morse::{GradientField, GradientPair, MorseFunction};
use crate::strong::ScritReport;

pub fn hasse_dot(
    k: &SimplicialComplex,
    names: &VertexNames,
    f: Option<&MorseFunction>,
    report: Option<&ScritReport>,
) -> String {
    let field = f.map(|f| f.gradient_field()).unwrap_or_default();
    let critical = f.map(|f| f.forman_critical()).unwrap_or_default();
    let critical_pairs: BTreeSet<GradientPair> = report
        .map(|r| r.critical_pairs().cloned().collect())
        .unwrap_or_default();
    let id = |s: &crate::Simplex| format!("\"{}\"", names.key(s));

    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for s in k.simplices() {
        let label = match f {
            Some(f) => format!("{}\\n{}", names.key(s), f.value(s)),
            None => names.key(s),
        };
        let style = if critical.contains(s) {
            ", style=filled, fillcolor=\"#f4a6a6\""
        } else {
            ""
        };
        let _ = writeln!(out, "  {} [label=\"{}\"{}];", id(s), label, style);
    }
    for t in k.simplices() {
        for s in t.boundary() {
            let _ = writeln!(out, "  {};", arc(&field, &critical_pairs, &s, t, &id));
        }
    }
    out.push_str("}\n");
    out
}

fn arc(
    field: &GradientField,
    critical_pairs: &BTreeSet<GradientPair>,
    s: &crate::Simplex,
    t: &crate::Simplex,
    id: &dyn Fn(&crate::Simplex) -> String,
) -> String {
    if field.contains(s, t) {
        let pair = GradientPair::new(s.clone(), t.clone());
        let extra = if critical_pairs.contains(&pair) {
            ", penwidth=3, color=red"
        } else {
            ", color=blue"
        };
        format!("{} -> {} [dir=forward{}]", id(t), id(s), extra)
    } else {
        format!("{} -> {}", id(s), id(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::strong::{scrit, StrongConfig};
    use crate::value::int;
    use crate::{validate_dmf, Simplex};

    #[test]
    fn path_diagram() {
        let k = fixtures::path2();
        let names = VertexNames::identity(&k);
        let raw = [
            (Simplex::from([0]), int(0)),
            (Simplex::from([1]), int(2)),
            (Simplex::from([2]), int(3)),
            (Simplex::from([0, 1]), int(2)),
            (Simplex::from([1, 2]), int(3)),
        ]
        .into_iter()
        .collect();
        let f = validate_dmf(&k, raw).unwrap();
        let r = scrit(&f, StrongConfig::default());
        let dot = hasse_dot(&k, &names, Some(&f), Some(&r));
        assert!(dot.starts_with("digraph hasse {"));
        assert!(dot.contains("\"0,1\" -> \"1\" [dir=forward, color=blue]"));
        assert!(dot.contains("\"0\" -> \"0,1\";"));
        assert!(dot.contains("\"0\" [label=\"0\\n0\", style=filled"));
        assert_eq!(dot.matches(" -> ").count(), 4);
    }
}
