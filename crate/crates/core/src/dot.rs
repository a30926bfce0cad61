//! Deterministic DOT rendering of translation quivers: solid arrows for
//! irreducible morphisms, labelled with their multiplicity when it exceeds
//! one, and dashed arrows for the translation.

pub struct ArQuiverDot {
    pub title: String,
    pub labels: Vec<String>,
    /// Irreducible arrows as (source, target, multiplicity).
    pub arrows: Vec<(usize, usize, usize)>,
    /// The translation as (object, translate) pairs.
    pub tau: Vec<(usize, usize)>,
}

fn quote(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn render(d: &ArQuiverDot) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{}\" {{\n", quote(&d.title)));
    out.push_str("  rankdir=LR;\n  node [shape=box];\n");
    for (i, l) in d.labels.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", quote(l)));
    }
    let mut arrows = d.arrows.clone();
    arrows.sort();
    for (s, t, m) in arrows {
        if m > 1 {
            out.push_str(&format!("  n{s} -> n{t} [label=\"{m}\"];\n"));
        } else {
            out.push_str(&format!("  n{s} -> n{t};\n"));
        }
    }
    let mut tau = d.tau.clone();
    tau.sort();
    for (x, tx) in tau {
        out.push_str(&format!("  n{x} -> n{tx} [style=dashed, constraint=false];\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_is_deterministic_and_marks_multiplicities() {
        let d = ArQuiverDot {
            title: "demo".into(),
            labels: vec!["x".into(), "y\"z".into()],
            arrows: vec![(1, 0, 1), (0, 1, 2)],
            tau: vec![(1, 0)],
        };
        let got = render(&d);
        let want = concat!(
            "digraph \"demo\" {\n",
            "  rankdir=LR;\n",
            "  node [shape=box];\n",
            "  n0 [label=\"x\"];\n",
            "  n1 [label=\"y\\\"z\"];\n",
            "  n0 -> n1 [label=\"2\"];\n",
            "  n1 -> n0;\n",
            "  n1 -> n0 [style=dashed, constraint=false];\n",
            "}\n",
        );
        assert_eq!(got, want);
    }
}
