//! Independent reference constructions shared by the integration tests.
//!
//! Nothing here reuses the library's enumeration or canonicalization logic:
//! trees come from Prufer sequences and isomorphism from permutation brute
//! force, so agreement with the library is evidence, not circularity.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use graceful_lab::tree::Tree;

/// Decodes a Prufer sequence of length `n - 2` into a labeled tree on `n`
/// vertices. Every labeled tree on `n >= 2` vertices arises from exactly
/// one sequence.
pub fn prufer_tree(n: usize, seq: &[usize]) -> Tree {
    assert!(n >= 2);
    assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = leaves.pop_first().expect("a leaf always remains");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    assert_eq!(last.len(), 2);
    edges.push((last[0], last[1]));
    Tree::new(n, &edges).expect("Prufer decoding yields a tree")
}

/// Number of isomorphism classes on `n` vertices, counted by decoding all
/// `n^(n-2)` Prufer sequences and collecting distinct canonical codes.
pub fn prufer_class_count(n: usize) -> usize {
    if n == 1 {
        return 1;
    }
    let mut codes = HashSet::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        codes.insert(prufer_tree(n, &seq).canonical_code());
        // Advance the base-n counter; done when it wraps around.
        let mut i = 0;
        while i < seq.len() {
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            break;
        }
    }
    codes.len()
}

/// Applies a vertex renumbering: vertex `v` becomes `perm[v]`.
pub fn relabel(tree: &Tree, perm: &[usize]) -> Tree {
    let edges: Vec<(usize, usize)> = tree
        .edges()
        .iter()
        .map(|&(u, v)| (perm[u], perm[v]))
        .collect();
    Tree::new(tree.n(), &edges).expect("renumbering preserves the tree")
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(perm.clone());
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Isomorphism by brute force over all vertex bijections.
pub fn brute_force_isomorphic(a: &Tree, b: &Tree) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let target: HashSet<(usize, usize)> = b.edges().iter().copied().collect();
    all_permutations(a.n()).iter().any(|perm| {
        a.edges()
            .iter()
            .all(|&(u, v)| target.contains(&(perm[u].min(perm[v]), perm[u].max(perm[v]))))
    })
}
