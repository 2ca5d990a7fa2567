//! The JSON document formats: digraphs (optionally carrying a rotation
//! system) and bitrades, plus the conversions to and from library types.
//!
//! JSON is the single source format; everything else (DOT) is export-only.
//! Documents are normalized on write — vertices in declaration order, arcs
//! sorted by id, rotation entries in vertex order — so serialization is
//! deterministic and parsing a serialized document reproduces it exactly.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use trinity::digraph::MultiDigraph;
use trinity::latin::{LatinBitrade, PartialLatinSquare};
use trinity::surface::{Dir, EmbeddedDigraph, End};

use crate::CliError;

/// A directed multigraph, with an optional rotation system.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigraphDocument {
    pub vertices: Vec<String>,
    pub arcs: Vec<ArcDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<RotationDocument>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// One arc; `tail` and `head` are vertex labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcDocument {
    pub id: usize,
    pub tail: String,
    pub head: String,
}

/// The cyclic order of arc ends around one vertex.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RotationDocument {
    pub vertex: String,
    pub ends: Vec<EndDocument>,
}

/// One arc end inside a rotation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndDocument {
    pub arc: usize,
    pub dir: DirDocument,
}

/// Whether the end is the arc's head (`in`) or tail (`out`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirDocument {
    In,
    Out,
}

/// Optional free-form annotations; commands that know something about the
/// document record it here.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_check: Option<String>,
}

/// A latin bitrade: two lists of `[row, col, sym]` triples.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BitradeDocument {
    #[serde(rename = "W")]
    pub white: Vec<[String; 3]>,
    #[serde(rename = "B")]
    pub black: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl DigraphDocument {
    /// Serializes a digraph without a rotation system.
    pub fn from_digraph(digraph: &MultiDigraph) -> Self {
        let mut arcs: Vec<ArcDocument> = digraph
            .arcs()
            .iter()
            .map(|arc| ArcDocument {
                id: arc.id,
                tail: digraph.label(arc.tail).to_string(),
                head: digraph.label(arc.head).to_string(),
            })
            .collect();
        arcs.sort_by_key(|arc| arc.id);
        DigraphDocument {
            vertices: digraph.labels().to_vec(),
            arcs,
            rotation: None,
            metadata: None,
        }
    }

    /// Serializes an embedded digraph, rotation included.
    pub fn from_embedding(embedded: &EmbeddedDigraph) -> Self {
        let digraph = embedded.digraph();
        let mut doc = Self::from_digraph(digraph);
        let rotation = digraph
            .labels()
            .iter()
            .map(|label| RotationDocument {
                vertex: label.clone(),
                ends: embedded
                    .rotation(label)
                    .expect("every digraph label has a rotation")
                    .iter()
                    .map(|end| EndDocument {
                        arc: end.arc,
                        dir: match end.dir {
                            Dir::In => DirDocument::In,
                            Dir::Out => DirDocument::Out,
                        },
                    })
                    .collect(),
            })
            .collect();
        doc.rotation = Some(rotation);
        doc
    }

    /// Parses the document into a digraph, ignoring any rotation.
    pub fn to_digraph(&self) -> Result<MultiDigraph, CliError> {
        let mut digraph = MultiDigraph::new(self.vertices.iter().cloned())
            .map_err(|e| CliError::input(format!("invalid digraph document: {e}")))?;
        let mut arcs = self.arcs.clone();
        arcs.sort_by_key(|arc| arc.id);
        for arc in &arcs {
            digraph
                .add_arc_with_id(arc.id, &arc.tail, &arc.head)
                .map_err(|e| CliError::input(format!("invalid arc {}: {e}", arc.id)))?;
        }
        Ok(digraph)
    }

    /// Parses the document into an embedded digraph; the rotation field is
    /// required.
    pub fn to_embedding(&self) -> Result<EmbeddedDigraph, CliError> {
        let digraph = self.to_digraph()?;
        let rotation = self
            .rotation
            .as_ref()
            .ok_or_else(|| CliError::input("document has no rotation system"))?;
        let mut by_vertex: BTreeMap<String, Vec<End>> = BTreeMap::new();
        for entry in rotation {
            let ends = entry
                .ends
                .iter()
                .map(|end| {
                    End::new(
                        end.arc,
                        match end.dir {
                            DirDocument::In => Dir::In,
                            DirDocument::Out => Dir::Out,
                        },
                    )
                })
                .collect();
            if by_vertex.insert(entry.vertex.clone(), ends).is_some() {
                return Err(CliError::input(format!(
                    "vertex {:?} has two rotation entries",
                    entry.vertex
                )));
            }
        }
        EmbeddedDigraph::new(digraph, by_vertex)
            .map_err(|e| CliError::input(format!("invalid rotation system: {e}")))
    }
}

impl BitradeDocument {
    /// Serializes a bitrade. Triples come out in the squares' sorted order,
    /// so equal bitrades serialize identically.
    pub fn from_bitrade(bitrade: &LatinBitrade) -> Self {
        fn half(square: &PartialLatinSquare) -> Vec<[String; 3]> {
            square
                .triples()
                .iter()
                .map(|t| [t.row.clone(), t.col.clone(), t.sym.clone()])
                .collect()
        }
        BitradeDocument {
            white: half(bitrade.white()),
            black: half(bitrade.black()),
            metadata: None,
        }
    }

    /// Parses and validates the two halves as a latin bitrade.
    pub fn to_bitrade(&self) -> Result<LatinBitrade, CliError> {
        fn half(triples: &[[String; 3]], side: &str) -> Result<PartialLatinSquare, CliError> {
            let view: Vec<(&str, &str, &str)> = triples
                .iter()
                .map(|t| (t[0].as_str(), t[1].as_str(), t[2].as_str()))
                .collect();
            PartialLatinSquare::from_triples(&view)
                .map_err(|e| CliError::input(format!("invalid {side} half: {e}")))
        }
        let white = half(&self.white, "white")?;
        let black = half(&self.black, "black")?;
        LatinBitrade::new(white, black)
            .map_err(|e| CliError::input(format!("invalid bitrade: {e}")))
    }
}

/// Pretty JSON with a trailing newline; field order follows the struct
/// declarations, so output is deterministic.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents always serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use trinity::families::build_abc;

    #[test]
    fn digraph_documents_round_trip_byte_identically() {
        let instance = build_abc(1, 2, 3).expect("star builds");
        let doc = DigraphDocument::from_embedding(instance.embedding());
        let text = to_json_string(&doc);
        let parsed: DigraphDocument = serde_json::from_str(&text).expect("parses back");
        let reparsed = to_json_string(&DigraphDocument::from_embedding(
            &parsed.to_embedding().expect("embedding rebuilds"),
        ));
        assert_eq!(text, reparsed);
    }

    #[test]
    fn digraph_parsing_rejects_duplicate_arc_ids() {
        let doc = DigraphDocument {
            vertices: vec!["u".into(), "v".into()],
            arcs: vec![
                ArcDocument { id: 0, tail: "u".into(), head: "v".into() },
                ArcDocument { id: 0, tail: "v".into(), head: "u".into() },
            ],
            rotation: None,
            metadata: None,
        };
        assert!(doc.to_digraph().is_err());
    }

    #[test]
    fn bitrade_documents_round_trip() {
        let doc = BitradeDocument {
            white: vec![
                ["r0".into(), "c0".into(), "s0".into()],
                ["r0".into(), "c1".into(), "s1".into()],
                ["r1".into(), "c0".into(), "s1".into()],
                ["r1".into(), "c1".into(), "s0".into()],
            ],
            black: vec![
                ["r0".into(), "c0".into(), "s1".into()],
                ["r0".into(), "c1".into(), "s0".into()],
                ["r1".into(), "c0".into(), "s0".into()],
                ["r1".into(), "c1".into(), "s1".into()],
            ],
            metadata: None,
        };
        let bitrade = doc.to_bitrade().expect("intercalate validates");
        let back = BitradeDocument::from_bitrade(&bitrade);
        assert_eq!(to_json_string(&doc), to_json_string(&back));
    }

    #[test]
    fn missing_rotation_is_reported() {
        let instance = build_abc(1, 1, 1).expect("star builds");
        let doc = DigraphDocument::from_digraph(instance.digraph());
        let err = doc.to_embedding().expect_err("no rotation present");
        assert!(format!("{err:?}").contains("no rotation system"));
    }
}
