//! Enumeration of free trees up to isomorphism, with structural filters.
//!
//! [`generate_trees`] grows the isomorphism classes on `n` vertices from
//! those on `n-1` by attaching one leaf in every position and deduplicating
//! by canonical code. Each class is returned once with a fixed vertex
//! numbering, sorted by canonical code, so downstream reports are stable
//! across runs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::Tree;

/// Largest supported vertex count for enumeration; there are 551 classes at
/// 12 vertices and growth is roughly a factor of 2.4 per vertex.
pub const MAX_GENERATED_VERTICES: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("tree generation supports 1..={MAX_GENERATED_VERTICES} vertices, got {0}")]
    UnsupportedVertexCount(usize),
}

/// All isomorphism classes of trees on exactly `n` vertices, one
/// representative each, sorted by canonical code.
pub fn generate_trees(n: usize) -> Result<Vec<Tree>, FamilyError> {
    if n == 0 || n > MAX_GENERATED_VERTICES {
        return Err(FamilyError::UnsupportedVertexCount(n));
    }
    let mut current = vec![Tree::new(1, &[]).expect("single vertex is a tree")];
    for grown_n in 2..=n {
        let mut classes: BTreeMap<String, Tree> = BTreeMap::new();
        for tree in &current {
            let mut edges = tree.edges().to_vec();
            for attach in 0..grown_n - 1 {
                edges.push((attach, grown_n - 1));
                let grown = Tree::new(grown_n, &edges).expect("leaf attachment keeps a tree");
                edges.pop();
                classes.entry(grown.canonical_code()).or_insert(grown);
            }
        }
        current = classes.into_values().collect();
    }
    Ok(current)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn matches(self, value: usize) -> bool {
        match self {
            Parity::Even => value.is_multiple_of(2),
            Parity::Odd => !value.is_multiple_of(2),
        }
    }
}

/// Structural predicate over trees; unset fields do not constrain.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFilter {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diameter_min: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diameter_max: Option<usize>,
    /// Upper bound on k-distance: 0 keeps paths, 1 also caterpillars,
    /// 2 also lobsters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_k_distance: Option<usize>,
    /// Required parity of every center's degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_degree_parity: Option<Parity>,
    /// Required number of centers (1 or 2).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_count: Option<usize>,
}

pub fn matches_filter(tree: &Tree, filter: &FamilyFilter) -> bool {
    let profile = tree.profile();
    filter.diameter_min.is_none_or(|d| profile.diameter >= d)
        && filter.diameter_max.is_none_or(|d| profile.diameter <= d)
        && filter
            .max_k_distance
            .is_none_or(|k| profile.k_distance <= k)
        && filter
            .center_degree_parity
            .is_none_or(|p| profile.centers.iter().all(|&c| p.matches(tree.degree(c))))
        && filter
            .center_count
            .is_none_or(|c| profile.centers.len() == c)
}

pub fn filter_family(trees: &[Tree], filter: &FamilyFilter) -> Vec<Tree> {
    trees
        .iter()
        .filter(|t| matches_filter(t, filter))
        .cloned()
        .collect()
}
