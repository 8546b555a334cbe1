//! The planar binary tree of dual Markov triples grown from a seed.
//!
//! A node stores `(P, Q, N)`: the regions to the left and right of the edge
//! leading into the node, and the newest region `N` created there. Below the
//! trunk, the L-child keeps the left neighbour and the R-child the right one:
//!
//! ```text
//! L: (P, N, (P² + N²) / Q)        R: (N, Q, (N² + Q²) / P)
//! ```
//!
//! The trunk is the first mutation of the fundamental triple. Its two
//! children mutate one seed region each, and both are drawn with the
//! surviving seed region on the left and the trunk region on the right:
//!
//! ```text
//! L: (P, N, (P² + N²) / Q)        R: (Q, N, (Q² + N²) / P)
//! ```
//!
//! With seed `(0, 1, 1)` this reproduces the classical picture: the two
//! trunk subtrees coincide, the all-`L` path runs along the odd Fibonacci
//! numbers and the all-`R` path along the Pell bisection `5, 29, 169, 985`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dual::DualInt;
use crate::error::{Error, Result};
use crate::init_space::InitialTriple;
use crate::markov::{mutate, DualTriple, Slot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    L,
    R,
}

impl Direction {
    pub fn as_char(self) -> char {
        match self {
            Direction::L => 'L',
            Direction::R => 'R',
        }
    }
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Direction> {
        match s.trim() {
            "L" | "l" => Ok(Direction::L),
            "R" | "r" => Ok(Direction::R),
            other => Err(Error::Parse(format!(
                "invalid direction {other:?}, expected L or R"
            ))),
        }
    }
}

/// A word over `{L, R}` addressing a node below the trunk.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreePath(pub Vec<Direction>);

impl TreePath {
    pub fn root() -> Self {
        TreePath(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, dir: Direction) -> TreePath {
        let mut word = self.0.clone();
        word.push(dir);
        TreePath(word)
    }

    pub fn constant(dir: Direction, len: usize) -> TreePath {
        TreePath(vec![dir; len])
    }
}

impl fmt::Display for TreePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|d| write!(f, "{}", d.as_char()))
    }
}

impl FromStr for TreePath {
    type Err = Error;
    fn from_str(s: &str) -> Result<TreePath> {
        s.trim()
            .chars()
            .map(|c| c.to_string().parse())
            .collect::<Result<Vec<_>>>()
            .map(TreePath)
    }
}

impl Serialize for TreePath {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TreePath {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `(P, Q, N)`: left neighbour, right neighbour, newest region.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodeState {
    #[serde(rename = "P")]
    pub left: DualInt,
    #[serde(rename = "Q")]
    pub right: DualInt,
    #[serde(rename = "N")]
    pub newest: DualInt,
}

impl NodeState {
    /// The state as an (unordered) solution triple.
    pub fn as_triple(&self) -> DualTriple {
        DualTriple::new(self.left.clone(), self.right.clone(), self.newest.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub state: NodeState,
    pub path: TreePath,
    pub depth: usize,
}

impl TreeNode {
    pub fn newest(&self) -> &DualInt {
        &self.state.newest
    }

    pub fn is_trunk(&self) -> bool {
        self.path.is_empty()
    }
}

/// Exchange `(x² + y²) / z`; tree states reached from an integral seed always divide.
fn exchange(x: &DualInt, y: &DualInt, z: &DualInt) -> Result<DualInt> {
    (&x.square() + &y.square()).exact_div(z)
}

/// Trunk node: mutate slot A of the fundamental triple.
pub fn trunk(seed: &InitialTriple) -> TreeNode {
    trunk_at(seed, Slot::A)
}

/// Trunk node obtained by mutating `slot` of the fundamental triple first.
/// The other two seed regions become `(P, Q)` in slot order.
pub fn trunk_at(seed: &InitialTriple, slot: Slot) -> TreeNode {
    let fundamental = seed.fundamental_triple();
    let mutated = mutate(&fundamental, slot).expect("fundamental triple has unit real parts");
    let (p, q) = slot.others();
    TreeNode {
        state: NodeState {
            left: fundamental[p].clone(),
            right: fundamental[q].clone(),
            newest: mutated[slot].clone(),
        },
        path: TreePath::root(),
        depth: 0,
    }
}

pub fn child(node: &TreeNode, dir: Direction) -> Result<TreeNode> {
    let NodeState {
        left: p,
        right: q,
        newest: n,
    } = &node.state;
    let state = match (dir, node.is_trunk()) {
        (Direction::L, _) => NodeState {
            left: p.clone(),
            right: n.clone(),
            newest: exchange(p, n, q)?,
        },
        (Direction::R, true) => NodeState {
            left: q.clone(),
            right: n.clone(),
            newest: exchange(q, n, p)?,
        },
        (Direction::R, false) => NodeState {
            left: n.clone(),
            right: q.clone(),
            newest: exchange(n, q, p)?,
        },
    };
    Ok(TreeNode {
        state,
        path: node.path.child(dir),
        depth: node.depth + 1,
    })
}

pub fn node_at(seed: &InitialTriple, path: &TreePath) -> Result<TreeNode> {
    node_at_from(trunk(seed), path)
}

pub fn node_at_from(trunk_node: TreeNode, path: &TreePath) -> Result<TreeNode> {
    path.0
        .iter()
        .try_fold(trunk_node, |node, &dir| child(&node, dir))
}

/// All `2^(depth+1) − 1` nodes down to `depth`, breadth-first, L before R.
pub fn subtree(seed: &InitialTriple, depth: usize) -> Result<Vec<TreeNode>> {
    subtree_from(trunk(seed), depth)
}

pub fn subtree_from(trunk_node: TreeNode, depth: usize) -> Result<Vec<TreeNode>> {
    let mut out = Vec::with_capacity((1usize << (depth + 1).min(30)) - 1);
    let mut queue = VecDeque::from([trunk_node]);
    while let Some(node) = queue.pop_front() {
        if node.depth < depth {
            queue.push_back(child(&node, Direction::L)?);
            queue.push_back(child(&node, Direction::R)?);
        }
        out.push(node);
    }
    Ok(out)
}

/// Walks `dir` repeatedly from the trunk and yields each node, trunk first.
pub fn branch_nodes(seed: &InitialTriple, dir: Direction, length: usize) -> Result<Vec<TreeNode>> {
    let mut out: Vec<TreeNode> = Vec::with_capacity(length);
    for i in 0..length {
        let next = match i {
            0 => trunk(seed),
            _ => child(&out[i - 1], dir)?,
        };
        out.push(next);
    }
    Ok(out)
}

/// Newest regions along the constant-letter path, trunk value included.
pub fn branch(seed: &InitialTriple, dir: Direction, length: usize) -> Result<Vec<DualInt>> {
    Ok(branch_nodes(seed, dir, length)?
        .into_iter()
        .map(|n| n.state.newest)
        .collect())
}

/// The chain of regions bordering the fixed side of a constant-letter walk.
///
/// Every step of an all-`dir` walk keeps one region fixed (the L-walk keeps
/// the trunk's left seed region, the R-walk keeps the trunk region once it
/// is below the trunk) and the newest regions obey
/// `x_{k+1} = (fixed² + x_k²) / x_{k−1}`. The chain starts with the region
/// preceding the first newest value of that recurrence:
///
/// - `L`: right seed region, trunk, then newest of `L`, `LL`, ...
/// - `R`: left neighbour of node `R`, then newest of `R`, `RR`, ...
///
/// `length` counts the returned values.
pub fn branch_chain(seed: &InitialTriple, dir: Direction, length: usize) -> Result<Vec<DualInt>> {
    if length == 0 {
        return Ok(Vec::new());
    }
    let (start, first) = match dir {
        Direction::L => {
            let t = trunk(seed);
            (t.state.right.clone(), t)
        }
        Direction::R => {
            let r = child(&trunk(seed), Direction::R)?;
            (r.state.left.clone(), r)
        }
    };
    let mut out = vec![start];
    let mut node = first;
    while out.len() < length {
        out.push(node.state.newest.clone());
        if out.len() < length {
            node = child(&node, dir)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::{is_classical_markov, seed_residual};
    use num_traits::Signed;

    fn d(a: i64, alpha: i64) -> DualInt {
        DualInt::new(a, alpha)
    }

    fn seed(a: i64, b: i64, c: i64) -> InitialTriple {
        InitialTriple::new(a, b, c)
    }

    fn newest(s: &InitialTriple, path: &str) -> DualInt {
        node_at(s, &path.parse().unwrap()).unwrap().state.newest
    }

    #[test]
    fn trunk_examples() {
        let t = trunk(&seed(0, 1, 1));
        assert_eq!(
            (t.state.left, t.state.right, t.state.newest),
            (d(1, 1), d(1, 1), d(2, 4))
        );
        let t = trunk(&seed(1, 1, 1));
        assert_eq!(
            (t.state.left, t.state.right, t.state.newest),
            (d(1, 1), d(1, 1), d(2, 2))
        );
        let t = trunk(&seed(0, 1, 0));
        assert_eq!(
            (t.state.left, t.state.right, t.state.newest),
            (d(1, 1), d(1, 0), d(2, 2))
        );
    }

    #[test]
    fn alternative_trunks() {
        let s = seed(0, 1, 1);
        let t = trunk_at(&s, Slot::B);
        assert_eq!(
            (t.state.left, t.state.right, t.state.newest),
            (d(1, 0), d(1, 1), d(2, 0))
        );
        let t = trunk_at(&s, Slot::C);
        assert_eq!(
            (t.state.left, t.state.right, t.state.newest),
            (d(1, 0), d(1, 1), d(2, 0))
        );
    }

    #[test]
    fn child_examples() {
        let s = seed(0, 1, 1);
        let l = child(&trunk(&s), Direction::L).unwrap();
        assert_eq!(l.state.newest, d(5, 13));
        assert_eq!(child(&l, Direction::L).unwrap().state.newest, d(13, 40));
        assert_eq!(child(&l, Direction::R).unwrap().state.newest, d(29, 117));
        assert_eq!(newest(&s, "LLLL"), d(89, 354));
    }

    #[test]
    fn node_at_examples() {
        let s = seed(0, 1, 1);
        assert_eq!(newest(&s, "LR"), d(29, 117));
        assert_eq!(newest(&s, ""), d(2, 4));
        assert_eq!(newest(&s, "RRRR"), d(985, 6761));
        assert_eq!(newest(&s, "LRRR"), d(985, 6761));
        let node = node_at(&s, &"RLR".parse().unwrap()).unwrap();
        assert_eq!(node.depth, 3);
        assert_eq!(node.path.to_string(), "RLR");
    }

    #[test]
    fn subtree_examples() {
        let s = seed(0, 1, 1);
        let depth3: Vec<DualInt> = subtree(&s, 3)
            .unwrap()
            .into_iter()
            .map(|n| n.state.newest)
            .collect();
        assert_eq!(depth3.len(), 15);
        for v in [d(34, 120), d(194, 976), d(433, 2592), d(169, 921)] {
            assert!(depth3.contains(&v), "missing {v}");
        }
        let depth4: Vec<DualInt> = subtree(&s, 4)
            .unwrap()
            .into_iter()
            .filter(|n| n.depth == 4)
            .map(|n| n.state.newest)
            .collect();
        assert_eq!(depth4.len(), 16);
        for v in [
            d(89, 354),
            d(1325, 7875),
            d(7561, 56287),
            d(2897, 20226),
            d(6466, 51320),
            d(37666, 352360),
            d(14701, 129640),
            d(985, 6761),
        ] {
            assert!(depth4.contains(&v), "missing {v}");
        }
        for s in [seed(0, 1, 1), seed(-3, 7, 2)] {
            let only = subtree(&s, 0).unwrap();
            assert_eq!(only, vec![trunk(&s)]);
        }
    }

    #[test]
    fn subtree_is_breadth_first() {
        let paths: Vec<String> = subtree(&seed(0, 1, 1), 2)
            .unwrap()
            .iter()
            .map(|n| n.path.to_string())
            .collect();
        assert_eq!(paths, ["", "L", "R", "LL", "LR", "RL", "RR"]);
    }

    #[test]
    fn branch_examples() {
        let s = seed(0, 1, 1);
        assert_eq!(
            branch(&s, Direction::L, 6).unwrap(),
            vec![
                d(2, 4),
                d(5, 13),
                d(13, 40),
                d(34, 120),
                d(89, 354),
                d(233, 1031)
            ]
        );
        assert_eq!(
            branch(&s, Direction::R, 5).unwrap(),
            vec![d(2, 4), d(5, 13), d(29, 117), d(169, 921), d(985, 6761)]
        );
        for v in branch(&seed(1, 1, 1), Direction::L, 4).unwrap() {
            assert_eq!(v.real, v.shadow);
        }
    }

    #[test]
    fn branch_chains() {
        let s = seed(0, 1, 1);
        let fib: Vec<i64> = branch_chain(&s, Direction::L, 9)
            .unwrap()
            .iter()
            .map(|v| i64::try_from(&v.shadow).unwrap())
            .collect();
        assert_eq!(fib, [1, 4, 13, 40, 120, 354, 1031, 2972, 8495]);
        let pell = branch_chain(&s, Direction::R, 5).unwrap();
        assert_eq!(
            pell,
            vec![d(1, 1), d(5, 13), d(29, 117), d(169, 921), d(985, 6761)]
        );
        assert!(branch_chain(&s, Direction::R, 0).unwrap().is_empty());
        assert_eq!(branch_chain(&s, Direction::L, 1).unwrap(), vec![d(1, 1)]);
    }

    #[test]
    fn every_node_solves_its_equation() {
        for s in [
            seed(0, 1, 1),
            seed(1, 1, 1),
            seed(0, 1, 0),
            seed(-3, 7, 2),
            seed(4, -9, 0),
        ] {
            for node in subtree(&s, 7).unwrap() {
                assert!(seed_residual(&node.state.as_triple(), &s).is_zero());
            }
        }
    }

    #[test]
    fn classical_projection_and_growth() {
        let s = seed(0, 1, 1);
        let nodes = subtree(&s, 8).unwrap();
        for node in &nodes {
            let [a, b, c] = node.state.as_triple().reals();
            assert!(is_classical_markov(&a, &b, &c));
            assert!(node.state.newest.real > node.state.left.real);
            assert!(node.state.newest.real > node.state.right.real);
            assert!(node.state.newest.is_positive());
        }
        for node in nodes.iter().filter(|n| n.depth > 0) {
            let parent = node_at(&s, &TreePath(node.path.0[..node.depth - 1].to_vec())).unwrap();
            assert!(node.state.newest.real > parent.state.newest.real);
        }
    }

    #[test]
    fn trunk_subtrees_coincide_for_symmetric_seeds() {
        for s in [seed(0, 1, 1), seed(5, -2, -2), seed(1, 1, 1)] {
            let nodes = subtree(&s, 6).unwrap();
            for node in nodes
                .iter()
                .filter(|n| n.path.0.first() == Some(&Direction::L))
            {
                let mut mirrored = node.path.clone();
                mirrored.0[0] = Direction::R;
                assert_eq!(node_at(&s, &mirrored).unwrap().state, node.state);
            }
        }
        // asymmetric seeds genuinely differ
        let s = seed(0, 1, 0);
        assert_ne!(newest(&s, "L"), newest(&s, "R"));
        assert!(newest(&s, "RLL").shadow.is_negative());
    }

    #[test]
    fn path_parsing() {
        assert_eq!("LRl".parse::<TreePath>().unwrap().to_string(), "LRL");
        assert!("LX".parse::<TreePath>().is_err());
        assert_eq!("".parse::<TreePath>().unwrap(), TreePath::root());
    }
}
