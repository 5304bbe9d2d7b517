//! The `halin-v1` JSON instance format and the coloring file format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{HalinError, Result};
use crate::graph::{EdgeColoring, HalinGraph};
use crate::tree::{PlaneTree, TreeNode};

pub const FORMAT_TAG: &str = "halin-v1";

#[derive(Debug, Clone, Serialize, Deserialize)]
struct NodeSpec {
    id: u32,
    children: Vec<u32>,
}

/// On-disk shape of an instance file.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct InstanceFile {
    format: String,
    root: u32,
    nodes: Vec<NodeSpec>,
}

/// Parse and validate an instance from its JSON text.
pub fn parse_instance(text: &str) -> std::result::Result<HalinGraph, InstanceReadError> {
    let file: InstanceFile = serde_json::from_str(text).map_err(InstanceReadError::Parse)?;
    if file.format != FORMAT_TAG {
        return Err(InstanceReadError::Parse(serde::de::Error::custom(format!(
            "unsupported format tag {:?}, expected {FORMAT_TAG:?}",
            file.format
        ))));
    }
    let tree = PlaneTree {
        root: file.root,
        nodes: file
            .nodes
            .into_iter()
            .map(|n| TreeNode { id: n.id, children: n.children })
            .collect(),
    };
    HalinGraph::from_plane_tree(tree).map_err(InstanceReadError::Invalid)
}

/// Serialize an instance back to its canonical JSON text. Node order and
/// children order are preserved, so parse followed by serialize is the
/// identity on well-formed files.
pub fn serialize_instance(g: &HalinGraph) -> String {
    let tree = g.tree();
    let file = InstanceFile {
        format: FORMAT_TAG.to_string(),
        root: tree.root,
        nodes: tree
            .nodes
            .iter()
            .map(|n| NodeSpec { id: n.id, children: n.children.clone() })
            .collect(),
    };
    serde_json::to_string(&file).expect("instance serialization cannot fail")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ColoringFile {
    palette: u32,
    colors: BTreeMap<String, u32>,
}

/// Serialize a complete coloring keyed by the deterministic edge index.
pub fn serialize_coloring(c: &EdgeColoring) -> Result<String> {
    if let Some(missing) = c.first_missing() {
        return Err(HalinError::IncompleteColoring(missing));
    }
    let colors = (0..c.len() as u32).map(|e| (e.to_string(), c.get(e).unwrap())).collect();
    let file = ColoringFile { palette: c.palette_size(), colors };
    Ok(serde_json::to_string(&file).expect("coloring serialization cannot fail"))
}

/// Parse a coloring file for a graph with `edge_count` edges.
pub fn parse_coloring(text: &str, edge_count: usize) -> std::result::Result<EdgeColoring, InstanceReadError> {
    let file: ColoringFile = serde_json::from_str(text).map_err(InstanceReadError::Parse)?;
    let mut coloring = EdgeColoring::new(edge_count, file.palette);
    for (key, color) in &file.colors {
        let index: u32 = key
            .parse()
            .map_err(|_| InstanceReadError::Parse(serde::de::Error::custom("bad edge key")))?;
        if index as usize >= edge_count {
            return Err(InstanceReadError::Invalid(HalinError::InvalidEdgeIndex(index)));
        }
        if *color >= file.palette {
            return Err(InstanceReadError::Invalid(HalinError::BadArgument(format!(
                "color {color} outside palette {}",
                file.palette
            ))));
        }
        coloring.set(index, *color);
    }
    Ok(coloring)
}

/// Reading an instance can fail in two distinct ways that map to distinct
/// process exit codes: unreadable/ill-formed JSON versus a well-formed file
/// that violates the data model.
#[derive(Debug)]
pub enum InstanceReadError {
    Parse(serde_json::Error),
    Invalid(HalinError),
}

impl std::fmt::Display for InstanceReadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InstanceReadError::Parse(e) => write!(f, "parse error: {e}"),
            InstanceReadError::Invalid(e) => write!(f, "invalid instance: {e}"),
        }
    }
}

impl std::error::Error for InstanceReadError {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_identity() {
        let text = r#"{"format":"halin-v1","root":0,"nodes":[{"id":0,"children":[1,2,3]},{"id":1,"children":[]},{"id":2,"children":[]},{"id":3,"children":[]}]}"#;
        let g = parse_instance(text).unwrap();
        assert_eq!(serialize_instance(&g), text);
    }

    #[test]
    fn rejects_unknown_format_tag() {
        let text = r#"{"format":"halin-v2","root":0,"nodes":[]}"#;
        assert!(matches!(parse_instance(text), Err(InstanceReadError::Parse(_))));
    }

    #[test]
    fn rejects_truncated_file() {
        assert!(matches!(parse_instance("{\"format\":"), Err(InstanceReadError::Parse(_))));
    }

    #[test]
    fn coloring_round_trip() {
        let c = EdgeColoring::from_colors(vec![0, 1, 2, 0], 3);
        let text = serialize_coloring(&c).unwrap();
        let back = parse_coloring(&text, 4).unwrap();
        assert_eq!(back, c);
    }
}
