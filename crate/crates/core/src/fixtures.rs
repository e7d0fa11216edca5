//! Built-in reference trees.
//!
//! `T` is the 6-vertex tree obtained from the path 2-3-4-5 by attaching the
//! leaves 0 and 1 to vertex 2; it is the smallest tree whose single center
//! cannot carry the label 0 in any graceful labeling. `S` extends the same
//! double-leaf spine to 7 vertices and is the matching two-center example
//! for constrained alpha searches. `P6` is the 6-vertex path, the smallest
//! two-center tree that passes the searches `S` fails.

use std::str::FromStr;

use crate::tree::Tree;

pub fn tree_t() -> Tree {
    Tree::new(6, &[(0, 2), (1, 2), (2, 3), (3, 4), (4, 5)]).expect("fixture T is a tree")
}

pub fn tree_s() -> Tree {
    Tree::new(7, &[(0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]).expect("fixture S is a tree")
}

/// The path on `n >= 1` vertices, numbered along the path.
pub fn path(n: usize) -> Tree {
    let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Tree::new(n, &edges).expect("path is a tree")
}

/// The star with the given number of leaves attached to vertex 0.
pub fn star(leaves: usize) -> Tree {
    let edges: Vec<(usize, usize)> = (1..=leaves).map(|v| (0, v)).collect();
    Tree::new(leaves + 1, &edges).expect("star is a tree")
}

/// Named fixture selector, as exposed by the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    T,
    S,
    P6,
}

impl Fixture {
    pub fn tree(self) -> Tree {
        match self {
            Fixture::T => tree_t(),
            Fixture::S => tree_s(),
            Fixture::P6 => path(6),
        }
    }

    /// The fixture in the edge-list format accepted by [`Tree::parse`].
    pub fn edge_list(self) -> String {
        self.tree().to_edge_list()
    }
}

impl FromStr for Fixture {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "T" => Ok(Fixture::T),
            "S" => Ok(Fixture::S),
            "P6" => Ok(Fixture::P6),
            _ => Err(format!("unknown fixture {s:?} (expected T, S, or P6)")),
        }
    }
}
