//! Deterministic DOT rendering of digraph documents.
//!
//! Vertices come out in document order and arcs in id order, so identical
//! documents render to identical bytes.  Parallel arcs appear as parallel
//! edges; when the document carries a rotation system, each vertex line
//! ends with a comment listing its arc ends in cyclic order.

use std::fmt::Write as _;

use crate::documents::{DigraphDocument, DirDocument};

/// Renders the document as a DOT digraph.
pub fn render_dot(doc: &DigraphDocument) -> String {
    let mut out = String::from("digraph trinity {\n");
    for vertex in &doc.vertices {
        match rotation_comment(doc, vertex) {
            Some(comment) => {
                writeln!(out, "  {}; // rotation: {comment}", quote(vertex)).expect("string write")
            }
            None => writeln!(out, "  {};", quote(vertex)).expect("string write"),
        }
    }
    let mut arcs = doc.arcs.clone();
    arcs.sort_by_key(|arc| arc.id);
    for arc in &arcs {
        writeln!(
            out,
            "  {} -> {}; // arc {}",
            quote(&arc.tail),
            quote(&arc.head),
            arc.id
        )
        .expect("string write");
    }
    out.push_str("}\n");
    out
}

fn rotation_comment(doc: &DigraphDocument, vertex: &str) -> Option<String> {
    let rotation = doc.rotation.as_ref()?;
    let entry = rotation.iter().find(|entry| entry.vertex == vertex)?;
    let parts: Vec<String> = entry
        .ends
        .iter()
        .map(|end| {
            let dir = match end.dir {
                DirDocument::In => "in",
                DirDocument::Out => "out",
            };
            format!("{} {dir}", end.arc)
        })
        .collect();
    Some(parts.join(", "))
}

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::documents::{ArcDocument, EndDocument, RotationDocument};

    fn two_cycle() -> DigraphDocument {
        DigraphDocument {
            vertices: vec!["u".into(), "v".into()],
            arcs: vec![
                ArcDocument { id: 1, tail: "v".into(), head: "u".into() },
                ArcDocument { id: 0, tail: "u".into(), head: "v".into() },
            ],
            rotation: Some(vec![
                RotationDocument {
                    vertex: "u".into(),
                    ends: vec![
                        EndDocument { arc: 0, dir: DirDocument::Out },
                        EndDocument { arc: 1, dir: DirDocument::In },
                    ],
                },
                RotationDocument {
                    vertex: "v".into(),
                    ends: vec![
                        EndDocument { arc: 0, dir: DirDocument::In },
                        EndDocument { arc: 1, dir: DirDocument::Out },
                    ],
                },
            ]),
            metadata: None,
        }
    }

    #[test]
    fn arcs_render_in_id_order_with_rotation_comments() {
        let rendered = render_dot(&two_cycle());
        let expected = "digraph trinity {\n  \"u\"; // rotation: 0 out, 1 in\n  \"v\"; // rotation: 0 in, 1 out\n  \"u\" -> \"v\"; // arc 0\n  \"v\" -> \"u\"; // arc 1\n}\n";
        assert_eq!(rendered, expected);
    }

    #[test]
    fn labels_with_quotes_are_escaped() {
        let mut doc = two_cycle();
        doc.vertices[0] = "u\"x".into();
        doc.rotation = None;
        doc.arcs[1].tail = "u\"x".into();
        let rendered = render_dot(&doc);
        assert!(rendered.contains("\"u\\\"x\""));
    }
}
