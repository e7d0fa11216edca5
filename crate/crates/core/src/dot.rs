//! Graphviz export.

use crate::labeling::{Labeling, LabelingError};
use crate::tree::Tree;

/// Renders the tree in DOT format. With a labeling, each node shows
/// `vertex:label` and each edge its weight; without one, nodes show the
/// vertex id alone.
pub fn export_dot(tree: &Tree, labeling: Option<&Labeling>) -> Result<String, LabelingError> {
    if let Some(l) = labeling {
        if l.len() != tree.n() {
            return Err(LabelingError::LengthMismatch {
                expected: tree.n(),
                found: l.len(),
            });
        }
    }
    let mut out = String::from("graph tree {\n  node [shape=circle];\n");
    for v in 0..tree.n() {
        match labeling {
            Some(l) => out.push_str(&format!("  {v} [label=\"{v}:{}\"];\n", l.labels()[v])),
            None => out.push_str(&format!("  {v};\n")),
        }
    }
    for &(u, v) in tree.edges() {
        match labeling {
            Some(l) => {
                let w = l.labels()[u].abs_diff(l.labels()[v]);
                out.push_str(&format!("  {u} -- {v} [label=\"{w}\"];\n"));
            }
            None => out.push_str(&format!("  {u} -- {v};\n")),
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::path;

    #[test]
    fn renders_with_and_without_labeling() {
        let p3 = path(3);
        let plain = export_dot(&p3, None).unwrap();
        assert!(plain.starts_with("graph tree {"));
        assert!(plain.contains("  0 -- 1;\n"));
        assert!(plain.contains("  2;\n"));

        let labeled = export_dot(&p3, Some(&Labeling::new(vec![0, 2, 1]).unwrap())).unwrap();
        assert!(labeled.contains("  1 [label=\"1:2\"];\n"));
        assert!(labeled.contains("  0 -- 1 [label=\"2\"];\n"));
        assert!(labeled.contains("  1 -- 2 [label=\"1\"];\n"));

        let err = export_dot(&p3, Some(&Labeling::new(vec![0, 1]).unwrap())).unwrap_err();
        assert_eq!(
            err,
            LabelingError::LengthMismatch {
                expected: 3,
                found: 2
            }
        );
    }
}
