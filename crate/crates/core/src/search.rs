//! Exhaustive search for constrained graceful and alpha labelings.
//!
//! Two independent routes answer every query. [`search_graceful`] is a
//! pruned backtracking engine over label bitmasks; [`brute_force_oracle`]
//! filters all `n!` label permutations through the predicates in
//! [`crate::labeling`] and shares no search logic with the engine. Both
//! produce a [`SearchCertificate`] that records the query, the outcome, the
//! witnesses, and enough counters to reproduce the run; certificates are
//! deterministic for a given tree and constraint set, independent of thread
//! count.
//!
//! Constraint semantics: `fixed` pins labels on vertices, `zero_on` and
//! `max_on` pin the labels `0` and `n-1`, `require_alpha` restricts to alpha
//! labelings, and `critical_on` (only with `require_alpha`) demands that the
//! named vertex carry the critical value. Since the low side of an alpha
//! labeling is forced to be a whole 2-coloring class, `critical_on` fixes
//! the critical value to `|class| - 1` before the search starts; the forced
//! value is echoed in the certificate.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::labeling::{self, Labeling};
use crate::par::parallel_map;
use crate::tree::Tree;

/// Largest vertex count the permutation oracle will enumerate (`9! = 362880`
/// permutations).
pub const MAX_ORACLE_VERTICES: usize = 9;

const UNSET: usize = usize::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("fixed label {label} out of range for {n} vertices")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("label {0} fixed on more than one vertex")]
    DuplicateFixedLabel(usize),
    #[error("vertex {vertex} is required to take both label {first} and label {second}")]
    ConflictingRequirements {
        vertex: usize,
        first: usize,
        second: usize,
    },
    #[error("critical_on is only meaningful together with require_alpha")]
    CriticalWithoutAlpha,
    #[error("critical_on and max_on name the same vertex {0}")]
    CriticalEqualsMax(usize),
    #[error("permutation oracle supports at most {max} vertices, got {n}")]
    OracleTooLarge { n: usize, max: usize },
}

/// What the search should produce: the lexicographically least witness, all
/// witnesses sorted, or only the count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    First,
    All,
    Count,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "SAT")]
    Sat,
    #[serde(rename = "UNSAT")]
    Unsat,
}

/// A conjunction of restrictions on the labelings to search for.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSet {
    /// Vertex to label pins, checked for injectivity.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fixed: BTreeMap<usize, usize>,
    /// Restrict to alpha labelings.
    #[serde(default)]
    pub require_alpha: bool,
    /// Vertex that must carry the critical value; implies `require_alpha`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub critical_on: Option<usize>,
    /// Vertex that must carry the label `n-1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_on: Option<usize>,
    /// Vertex that must carry the label `0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_on: Option<usize>,
}

/// Reproducible record of one search or oracle run.
///
/// `witnesses` is the full sorted witness list in all-mode, at most one
/// labeling in first-mode, and empty in count-mode; `witness_count` is the
/// total in all- and count-mode and absent in first-mode. `nodes_explored`
/// counts committed label placements for the engine and enumerated
/// permutations for the oracle. `oracle_checked` is set by callers that
/// verified the certificate against the independent oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCertificate {
    /// Canonical code of the tree searched.
    pub tree: String,
    pub constraints: ConstraintSet,
    /// Critical value implied by `critical_on`, when given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forced_critical: Option<usize>,
    pub status: Status,
    pub witnesses: Vec<Labeling>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_count: Option<u64>,
    pub nodes_explored: u64,
    pub oracle_checked: bool,
}

/// Validated form of a constraint set: per-vertex label domains as bitmasks,
/// one domain vector per alpha case. Unconstrained and `critical_on`
/// searches have one case; a plain `require_alpha` search has up to two
/// (either 2-coloring class may be the low side). Cases with an empty
/// domain are dropped here, which is what rejects configurations like a
/// forced maximum label inside the forced low side.
struct Prepared {
    cases: Vec<Vec<u64>>,
    forced_critical: Option<usize>,
}

fn full_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

fn prepare(tree: &Tree, cs: &ConstraintSet) -> Result<Prepared, SearchError> {
    let n = tree.n();
    let check_vertex = |v: usize| {
        if v < n {
            Ok(())
        } else {
            Err(SearchError::VertexOutOfRange { vertex: v, n })
        }
    };
    let mut fixed: BTreeMap<usize, usize> = BTreeMap::new();
    let pin = |fixed: &mut BTreeMap<usize, usize>, v: usize, l: usize| match fixed.get(&v) {
        Some(&old) if old != l => Err(SearchError::ConflictingRequirements {
            vertex: v,
            first: old,
            second: l,
        }),
        _ => {
            fixed.insert(v, l);
            Ok(())
        }
    };

    for (&v, &l) in &cs.fixed {
        check_vertex(v)?;
        if l >= n {
            return Err(SearchError::LabelOutOfRange { label: l, n });
        }
        pin(&mut fixed, v, l)?;
    }
    if let Some(v) = cs.zero_on {
        check_vertex(v)?;
        pin(&mut fixed, v, 0)?;
    }
    if let Some(v) = cs.max_on {
        check_vertex(v)?;
        pin(&mut fixed, v, n - 1)?;
    }
    if cs.critical_on.is_some() && !cs.require_alpha {
        return Err(SearchError::CriticalWithoutAlpha);
    }

    // (low side vertex mask, critical value) per alpha case.
    let mut case_specs: Vec<(u64, usize)> = Vec::new();
    let mut forced_critical = None;
    if cs.require_alpha {
        let (a, b) = tree.bipartition();
        let vertex_mask =
            |side: &[usize]| side.iter().fold(0u64, |mask, &v| mask | 1 << v);
        if let Some(cv) = cs.critical_on {
            check_vertex(cv)?;
            let low = if tree.color(cv) == 0 { &a } else { &b };
            let c = low.len() - 1;
            forced_critical = Some(c);
            pin(&mut fixed, cv, c)?;
            case_specs.push((vertex_mask(low), c));
        } else {
            case_specs.push((vertex_mask(&a), a.len() - 1));
            if !b.is_empty() {
                case_specs.push((vertex_mask(&b), b.len() - 1));
            }
        }
    }

    let mut used = 0u64;
    for &l in fixed.values() {
        if used >> l & 1 == 1 {
            return Err(SearchError::DuplicateFixedLabel(l));
        }
        used |= 1 << l;
    }

    let full = full_mask(n);
    let base: Vec<u64> = (0..n)
        .map(|v| fixed.get(&v).map_or(full, |&l| 1u64 << l))
        .collect();
    let mut cases = Vec::new();
    if case_specs.is_empty() {
        cases.push(base);
    } else {
        for (low_vertices, c) in case_specs {
            let low_labels = full_mask(c + 1);
            let domains: Vec<u64> = (0..n)
                .map(|v| {
                    base[v]
                        & if low_vertices >> v & 1 == 1 {
                            low_labels
                        } else {
                            full & !low_labels
                        }
                })
                .collect();
            if domains.iter().all(|&d| d != 0) {
                cases.push(domains);
            }
        }
    }

    Ok(Prepared {
        cases,
        forced_critical,
    })
}

/// Backtracking state for one branch of the search.
struct Dfs<'a> {
    tree: &'a Tree,
    n: usize,
    order: &'a [usize],
    /// Per order position, the neighbors assigned earlier.
    earlier: &'a [Vec<usize>],
    domains: &'a [u64],
    mode: Mode,
    /// Prune on the fact that in a graceful labeling the vertices labeled
    /// `0` and `n-1` are adjacent (the weight `n-1` arises no other way).
    adjacency_rule: bool,
    labels: Vec<usize>,
    holder: Vec<usize>,
    used_labels: u64,
    used_weights: u64,
    nodes: u64,
    count: u64,
    witnesses: Vec<Labeling>,
    stop: bool,
}

impl Dfs<'_> {
    fn try_assign(&mut self, position: usize, v: usize, label: usize) -> bool {
        if self.adjacency_rule {
            let partner = if label == 0 {
                Some(self.n - 1)
            } else if label == self.n - 1 {
                Some(0)
            } else {
                None
            };
            if let Some(p) = partner {
                let holder = self.holder[p];
                if holder != UNSET && !self.tree.adjacent(holder, v) {
                    return false;
                }
            }
        }
        let mut added = 0u64;
        for &u in &self.earlier[position] {
            let w = self.labels[u].abs_diff(label);
            let bit = 1u64 << w;
            if (self.used_weights | added) & bit != 0 {
                return false;
            }
            added |= bit;
        }
        self.labels[v] = label;
        self.holder[label] = v;
        self.used_labels |= 1 << label;
        self.used_weights |= added;
        self.nodes += 1;
        true
    }

    fn unassign(&mut self, position: usize, v: usize, label: usize) {
        let mut added = 0u64;
        for &u in &self.earlier[position] {
            added |= 1 << self.labels[u].abs_diff(label);
        }
        self.used_weights &= !added;
        self.used_labels &= !(1 << label);
        self.holder[label] = UNSET;
        self.labels[v] = UNSET;
    }

    fn record(&mut self) {
        debug_assert!(labeling::graceful_slice(self.tree, &self.labels));
        self.count += 1;
        match self.mode {
            Mode::Count => {}
            Mode::All => {
                let witness =
                    Labeling::new(self.labels.clone()).expect("search assigns a bijection");
                self.witnesses.push(witness);
            }
            Mode::First => {
                let witness =
                    Labeling::new(self.labels.clone()).expect("search assigns a bijection");
                self.witnesses.push(witness);
                self.stop = true;
            }
        }
    }

    fn descend(&mut self, position: usize) {
        if position == self.n {
            self.record();
            return;
        }
        let v = self.order[position];
        let mut candidates = self.domains[v] & !self.used_labels;
        while candidates != 0 {
            if self.stop {
                return;
            }
            let label = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if self.try_assign(position, v, label) {
                self.descend(position + 1);
                self.unassign(position, v, label);
            }
        }
    }
}

struct BranchResult {
    witnesses: Vec<Labeling>,
    count: u64,
    nodes: u64,
}

#[allow(clippy::too_many_arguments)]
fn run_branch(
    tree: &Tree,
    order: &[usize],
    earlier: &[Vec<usize>],
    domains: &[u64],
    mode: Mode,
    adjacency_rule: bool,
    first_label: usize,
) -> BranchResult {
    let n = tree.n();
    let mut dfs = Dfs {
        tree,
        n,
        order,
        earlier,
        domains,
        mode,
        adjacency_rule,
        labels: vec![UNSET; n],
        holder: vec![UNSET; n],
        used_labels: 0,
        used_weights: 0,
        nodes: 0,
        count: 0,
        witnesses: Vec::new(),
        stop: false,
    };
    if dfs.try_assign(0, order[0], first_label) {
        dfs.descend(1);
    }
    BranchResult {
        witnesses: dfs.witnesses,
        count: dfs.count,
        nodes: dfs.nodes,
    }
}

fn earlier_neighbors(tree: &Tree, order: &[usize]) -> Vec<Vec<usize>> {
    let mut position = vec![0usize; tree.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            tree.neighbors(v)
                .iter()
                .copied()
                .filter(|&u| position[u] < i)
                .collect()
        })
        .collect()
}

/// Single-threaded [`search_with_threads`].
pub fn search_graceful(
    tree: &Tree,
    cs: &ConstraintSet,
    mode: Mode,
) -> Result<SearchCertificate, SearchError> {
    search_with_threads(tree, cs, mode, 1)
}

/// Runs the backtracking engine over all constraint cases.
///
/// First-mode returns the lexicographically least witness by label sequence
/// and explores only as much as needed to prove it least; all-mode returns
/// every witness sorted; count-mode returns only the total. The certificate
/// is identical for every `threads` value.
pub fn search_with_threads(
    tree: &Tree,
    cs: &ConstraintSet,
    mode: Mode,
    threads: usize,
) -> Result<SearchCertificate, SearchError> {
    let prepared = prepare(tree, cs)?;
    let n = tree.n();
    let adjacency_rule = n >= 2;
    // Vertex-index order makes first-mode DFS emit witnesses in
    // lexicographic order; the other modes use a connected order from a
    // center, which prunes far better and cannot affect the result set.
    let order: Vec<usize> = match mode {
        Mode::First => (0..n).collect(),
        Mode::All | Mode::Count => tree.bfs_order(tree.centers()[0]),
    };
    let earlier = earlier_neighbors(tree, &order);

    let results: Vec<BranchResult> = match mode {
        Mode::First => {
            // Branch on the first vertex's label, ascending, so the first
            // label value that yields any witness ends the scan; with two
            // alpha cases both must be tried before deciding.
            let mut label_values: Vec<usize> = Vec::new();
            for domains in &prepared.cases {
                let mut mask = domains[order[0]];
                while mask != 0 {
                    label_values.push(mask.trailing_zeros() as usize);
                    mask &= mask - 1;
                }
            }
            label_values.sort_unstable();
            label_values.dedup();
            let mut results = Vec::new();
            'labels: for &label in &label_values {
                let mut found = false;
                for domains in &prepared.cases {
                    if domains[order[0]] >> label & 1 == 0 {
                        continue;
                    }
                    let r = run_branch(tree, &order, &earlier, domains, mode, adjacency_rule, label);
                    found |= !r.witnesses.is_empty();
                    results.push(r);
                }
                if found {
                    break 'labels;
                }
            }
            results
        }
        Mode::All | Mode::Count => {
            let mut branches: Vec<(usize, usize)> = Vec::new();
            for (case, domains) in prepared.cases.iter().enumerate() {
                let mut mask = domains[order[0]];
                while mask != 0 {
                    branches.push((case, mask.trailing_zeros() as usize));
                    mask &= mask - 1;
                }
            }
            parallel_map(&branches, threads, |&(case, label)| {
                run_branch(
                    tree,
                    &order,
                    &earlier,
                    &prepared.cases[case],
                    mode,
                    adjacency_rule,
                    label,
                )
            })
        }
    };

    let nodes_explored: u64 = results.iter().map(|r| r.nodes).sum();
    let count: u64 = results.iter().map(|r| r.count).sum();
    let mut witnesses: Vec<Labeling> = results.into_iter().flat_map(|r| r.witnesses).collect();
    witnesses.sort();
    let witness_count = match mode {
        Mode::First => None,
        Mode::All | Mode::Count => Some(count),
    };
    if mode == Mode::First {
        witnesses.truncate(1);
    }
    let status = if count > 0 { Status::Sat } else { Status::Unsat };

    Ok(SearchCertificate {
        tree: tree.canonical_code(),
        constraints: cs.clone(),
        forced_critical: prepared.forced_critical,
        status,
        witnesses,
        witness_count,
        nodes_explored,
        oracle_checked: false,
    })
}

/// All-mode alpha search with the critical value pinned on one vertex and
/// the maximum label on another. The two vertices must differ; when they
/// fall in the same 2-coloring class the configuration is contradictory and
/// comes back UNSAT with zero nodes explored.
pub fn exists_alpha_with(
    tree: &Tree,
    critical_on: usize,
    max_on: usize,
) -> Result<SearchCertificate, SearchError> {
    if critical_on == max_on {
        return Err(SearchError::CriticalEqualsMax(critical_on));
    }
    let cs = ConstraintSet {
        require_alpha: true,
        critical_on: Some(critical_on),
        max_on: Some(max_on),
        ..ConstraintSet::default()
    };
    search_graceful(tree, &cs, Mode::All)
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

fn oracle_accepts(tree: &Tree, cs: &ConstraintSet, labels: &[usize]) -> bool {
    let n = tree.n();
    if cs.fixed.iter().any(|(&v, &l)| labels[v] != l) {
        return false;
    }
    if let Some(v) = cs.zero_on {
        if labels[v] != 0 {
            return false;
        }
    }
    if let Some(v) = cs.max_on {
        if labels[v] != n - 1 {
            return false;
        }
    }
    if !labeling::graceful_slice(tree, labels) {
        return false;
    }
    if cs.require_alpha {
        match labeling::alpha_slice(tree, labels) {
            None => return false,
            Some(c) => {
                if let Some(cv) = cs.critical_on {
                    if labels[cv] != c {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Independent reference: filters every permutation of `0..n` through the
/// labeling predicates, with all-mode semantics. `nodes_explored` is always
/// `n!`. Validates the constraint set exactly like the engine but shares
/// none of its pruning or case analysis.
pub fn brute_force_oracle(
    tree: &Tree,
    cs: &ConstraintSet,
) -> Result<SearchCertificate, SearchError> {
    let n = tree.n();
    if n > MAX_ORACLE_VERTICES {
        return Err(SearchError::OracleTooLarge {
            n,
            max: MAX_ORACLE_VERTICES,
        });
    }
    let prepared = prepare(tree, cs)?;

    let mut perm: Vec<usize> = (0..n).collect();
    let mut witnesses = Vec::new();
    let mut nodes = 0u64;
    loop {
        nodes += 1;
        if oracle_accepts(tree, cs, &perm) {
            witnesses.push(Labeling::new(perm.clone()).expect("permutations are bijections"));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }

    let status = if witnesses.is_empty() {
        Status::Unsat
    } else {
        Status::Sat
    };
    Ok(SearchCertificate {
        tree: tree.canonical_code(),
        constraints: cs.clone(),
        forced_critical: prepared.forced_critical,
        status,
        witness_count: Some(witnesses.len() as u64),
        witnesses,
        nodes_explored: nodes,
        oracle_checked: true,
    })
}

/// Replays a certificate's constraint set through the permutation oracle and
/// checks agreement: equal status, plus witness-set equality in all-mode,
/// witness membership in first-mode, and count equality in count-mode.
pub fn oracle_agrees(
    tree: &Tree,
    certificate: &SearchCertificate,
    mode: Mode,
) -> Result<bool, SearchError> {
    let reference = brute_force_oracle(tree, &certificate.constraints)?;
    if certificate.status != reference.status {
        return Ok(false);
    }
    Ok(match mode {
        Mode::All => certificate.witnesses == reference.witnesses,
        Mode::First => certificate
            .witnesses
            .iter()
            .all(|w| reference.witnesses.contains(w)),
        Mode::Count => certificate.witness_count == reference.witness_count,
    })
}
