//! DOT, CSV and nested JSON renderings of a breadth-first node list.

use std::fmt::Write as _;

use serde::Serialize;

use crate::tree::{NodeState, TreeNode, TreePath};

/// One row per node: `depth,path,a,alpha` for the newest region.
pub fn tree_csv(nodes: &[TreeNode]) -> String {
    let mut out = String::from("depth,path,a,alpha\n");
    for n in nodes {
        let v = n.newest();
        let _ = writeln!(out, "{},{},{},{}", n.depth, n.path, v.real, v.shadow);
    }
    out
}

/// Graph nodes keyed by their path string, labelled with the newest region;
/// edges labelled `L` or `R`.
pub fn tree_dot(nodes: &[TreeNode]) -> String {
    let mut out = String::from("digraph shadow_markov {\n  node [shape=box];\n");
    for n in nodes {
        let _ = writeln!(out, "  \"{}\" [label=\"{}\"];", n.path, n.newest());
    }
    for n in nodes {
        if let Some((&last, parent)) = n.path.0.split_last() {
            let parent = TreePath(parent.to_vec());
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                parent,
                n.path,
                last.as_char()
            );
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize)]
pub struct NestedNode {
    pub state: NodeState,
    pub path: TreePath,
    pub children: Vec<NestedNode>,
}

/// Rebuilds the nesting of a complete breadth-first list (children of node
/// `i` sit at `2i + 1` and `2i + 2`).
pub fn nest(nodes: &[TreeNode]) -> Option<NestedNode> {
    fn build(nodes: &[TreeNode], i: usize) -> NestedNode {
        let children = [2 * i + 1, 2 * i + 2]
            .into_iter()
            .filter(|&c| c < nodes.len())
            .map(|c| build(nodes, c))
            .collect();
        NestedNode {
            state: nodes[i].state.clone(),
            path: nodes[i].path.clone(),
            children,
        }
    }
    (!nodes.is_empty()).then(|| build(nodes, 0))
}

pub fn tree_json(nodes: &[TreeNode]) -> String {
    serde_json::to_string_pretty(&nest(nodes)).expect("tree serializes")
}

/// Whitespace-separated `depth path P Q N`, with `-` for the trunk path.
pub fn tree_text(nodes: &[TreeNode]) -> String {
    let mut out = String::new();
    for n in nodes {
        let path = if n.path.is_empty() {
            "-".to_string()
        } else {
            n.path.to_string()
        };
        let s = &n.state;
        let _ = writeln!(
            out,
            "{} {} {} {} {}",
            n.depth, path, s.left, s.right, s.newest
        );
    }
    out
}
