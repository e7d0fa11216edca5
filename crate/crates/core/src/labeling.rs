//! Vertex labelings and the predicates that classify them.
//!
//! A [`Labeling`] assigns the labels `0..n` bijectively to the vertices of an
//! n-vertex tree. The predicates here decide gracefulness (every edge weight
//! `|f(u) - f(v)|` distinct, hence exactly `{1, ..., n-1}`) and the bipartite
//! separation property that upgrades a graceful labeling to an alpha
//! labeling: one 2-coloring class takes all labels up to some critical value
//! `c` and the other class everything above it.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::tree::Tree;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabelingError {
    #[error("labeling has {found} entries but the tree has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("label {label} out of range for {n} vertices")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("label {0} used more than once")]
    DuplicateLabel(usize),
}

/// A bijection from vertices to labels `0..n`, stored as `labels[vertex]`.
///
/// Serializes as a bare JSON array; deserialization re-validates, so a
/// certificate read back from disk cannot smuggle in a non-bijection.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Labeling {
    labels: Vec<usize>,
}

impl Labeling {
    pub fn new(labels: Vec<usize>) -> Result<Self, LabelingError> {
        let n = labels.len();
        let mut seen = vec![false; n];
        for &label in &labels {
            if label >= n {
                return Err(LabelingError::LabelOutOfRange { label, n });
            }
            if seen[label] {
                return Err(LabelingError::DuplicateLabel(label));
            }
            seen[label] = true;
        }
        Ok(Labeling { labels })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Reflects every label through the label range: `l` becomes `n-1-l`.
    /// This is an involution and preserves every edge weight, so it maps
    /// graceful labelings to graceful labelings.
    pub fn complement(&self) -> Labeling {
        let n = self.labels.len();
        Labeling {
            labels: self.labels.iter().map(|&l| n - 1 - l).collect(),
        }
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, label) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{label}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Labeling {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.labels.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Labeling {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        Labeling::new(labels).map_err(D::Error::custom)
    }
}

/// Outcome of the bipartite separation check, independent of gracefulness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaResult {
    /// Whether one 2-coloring class takes exactly the labels `0..=critical`.
    pub is_bipartite_labeling: bool,
    /// The largest label on the low side, when separated.
    pub critical: Option<usize>,
    /// The vertices of the low side, sorted, when separated.
    pub low_side: Option<Vec<usize>>,
}

fn check_len(tree: &Tree, labeling: &Labeling) -> Result<(), LabelingError> {
    if labeling.len() != tree.n() {
        return Err(LabelingError::LengthMismatch {
            expected: tree.n(),
            found: labeling.len(),
        });
    }
    Ok(())
}

/// Edge weights `|f(u) - f(v)|` in the tree's edge order.
pub fn edge_weights(tree: &Tree, labeling: &Labeling) -> Result<Vec<usize>, LabelingError> {
    check_len(tree, labeling)?;
    let labels = labeling.labels();
    Ok(tree
        .edges()
        .iter()
        .map(|&(u, v)| labels[u].abs_diff(labels[v]))
        .collect())
}

/// Whether all edge weights are distinct, which for a bijective labeling of
/// a tree means the weights are exactly `{1, ..., n-1}`.
pub fn is_graceful(tree: &Tree, labeling: &Labeling) -> Result<bool, LabelingError> {
    check_len(tree, labeling)?;
    Ok(graceful_slice(tree, labeling.labels()))
}

/// Separation check: reports whether one 2-coloring class holds exactly the
/// labels `0..=c` for some `c`, along with that critical value and the low
/// side. For the single-vertex tree the sole class is the low side with
/// `c = 0`.
pub fn bipartite_critical(tree: &Tree, labeling: &Labeling) -> Result<AlphaResult, LabelingError> {
    check_len(tree, labeling)?;
    match separation_critical(tree, labeling.labels()) {
        Some(critical) => {
            let (a, b) = tree.bipartition();
            let labels = labeling.labels();
            let low_side = if b.is_empty() || a.iter().map(|&v| labels[v]).max().unwrap() == critical
            {
                a
            } else {
                b
            };
            Ok(AlphaResult {
                is_bipartite_labeling: true,
                critical: Some(critical),
                low_side: Some(low_side),
            })
        }
        None => Ok(AlphaResult {
            is_bipartite_labeling: false,
            critical: None,
            low_side: None,
        }),
    }
}

/// The critical value when the labeling is both graceful and separated,
/// `None` otherwise.
pub fn is_alpha(tree: &Tree, labeling: &Labeling) -> Result<Option<usize>, LabelingError> {
    check_len(tree, labeling)?;
    Ok(alpha_slice(tree, labeling.labels()))
}

/// Gracefulness on a raw label slice. Assumes `labels` is a bijection onto
/// `0..n`, which callers in this crate guarantee.
pub(crate) fn graceful_slice(tree: &Tree, labels: &[usize]) -> bool {
    let n = tree.n();
    let mut seen = 0u64;
    for &(u, v) in tree.edges() {
        let w = labels[u].abs_diff(labels[v]);
        if w == 0 || w >= n {
            return false;
        }
        if seen >> w & 1 == 1 {
            return false;
        }
        seen |= 1 << w;
    }
    true
}

/// Separation critical value on a raw label slice, `None` when no class is
/// a label prefix.
fn separation_critical(tree: &Tree, labels: &[usize]) -> Option<usize> {
    let mut max = [None::<usize>; 2];
    let mut min = [None::<usize>; 2];
    for (v, &label) in labels.iter().enumerate() {
        let class = tree.color(v) as usize;
        max[class] = Some(max[class].map_or(label, |m: usize| m.max(label)));
        min[class] = Some(min[class].map_or(label, |m: usize| m.min(label)));
    }
    match (max[0], max[1]) {
        (Some(a_max), None) => Some(a_max),
        (Some(a_max), Some(b_max)) => {
            if a_max < min[1].unwrap() {
                Some(a_max)
            } else if b_max < min[0].unwrap() {
                Some(b_max)
            } else {
                None
            }
        }
        _ => unreachable!("class 0 contains vertex 0"),
    }
}

/// Alpha check on a raw label slice: gracefulness plus separation.
pub(crate) fn alpha_slice(tree: &Tree, labels: &[usize]) -> Option<usize> {
    if !graceful_slice(tree, labels) {
        return None;
    }
    separation_critical(tree, labels)
}
