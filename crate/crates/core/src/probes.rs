//! Structural probes and family-wide counterexample hunts.
//!
//! Each probe asks a yes/no question about one tree and answers with full
//! search certificates. `q1` asks whether a two-center tree admits an alpha
//! labeling with the critical value on one center and the maximum label on
//! the other, for either assignment; `q2` asks whether a diameter-4 tree
//! whose single center has even degree admits a graceful labeling with the
//! maximum label on the center; `q3` asks the q1 question with the center
//! and each almost-central vertex in the two roles; `zero` asks whether a
//! single-center tree admits a graceful labeling with 0 on the center.
//! [`hunt`] runs one probe across every isomorphism class up to a size
//! bound and reports the applicable trees that fail.
//!
//! On trees small enough for the permutation oracle, every certificate
//! returned from this module is cross-checked against it and stamped
//! `oracle_checked`; a disagreement would be an engine bug and panics.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::families::{self, FamilyFilter};
use crate::fixtures;
use crate::par::parallel_map;
use crate::search::{
    self, exists_alpha_with, search_graceful, ConstraintSet, Mode, SearchCertificate, Status,
};
use crate::tree::Tree;

/// Certificates from trees up to this size are verified against
/// [`search::brute_force_oracle`] before being returned.
pub const ORACLE_CHECK_MAX_VERTICES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeId {
    Q1,
    Q2,
    Q3,
    Zero,
}

impl fmt::Display for ProbeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ProbeId::Q1 => "q1",
            ProbeId::Q2 => "q2",
            ProbeId::Q3 => "q3",
            ProbeId::Zero => "zero",
        };
        f.write_str(name)
    }
}

/// Outcome of one probe on one tree.
///
/// `passed` is `None` when the probe does not apply. For the assignment
/// probes (`q1`, `q3`), `sat_assignments` lists the satisfiable
/// `(critical_on, max_on)` pairs and `certificates` holds one certificate
/// per attempted pair, in the same order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub probe: ProbeId,
    /// Canonical code of the probed tree.
    pub tree: String,
    pub n: usize,
    pub applicable: bool,
    pub passed: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sat_assignments: Option<Vec<(usize, usize)>>,
    pub certificates: Vec<SearchCertificate>,
}

impl ProbeReport {
    fn inapplicable(probe: ProbeId, tree: &Tree) -> Self {
        ProbeReport {
            probe,
            tree: tree.canonical_code(),
            n: tree.n(),
            applicable: false,
            passed: None,
            sat_assignments: None,
            certificates: Vec::new(),
        }
    }
}

fn cross_check(tree: &Tree, certificate: &mut SearchCertificate, mode: Mode) {
    if tree.n() > ORACLE_CHECK_MAX_VERTICES {
        return;
    }
    let agrees = search::oracle_agrees(tree, certificate, mode)
        .expect("oracle bound covers the cross-check bound");
    assert!(
        agrees,
        "search engine disagrees with the permutation oracle on tree {} under {:?}",
        certificate.tree, certificate.constraints
    );
    certificate.oracle_checked = true;
}

fn checked_search(tree: &Tree, cs: ConstraintSet, mode: Mode) -> SearchCertificate {
    let mut certificate =
        search_graceful(tree, &cs, mode).expect("probe constraint sets are well formed");
    cross_check(tree, &mut certificate, mode);
    certificate
}

fn checked_alpha(tree: &Tree, critical_on: usize, max_on: usize) -> SearchCertificate {
    let mut certificate =
        exists_alpha_with(tree, critical_on, max_on).expect("probe picks distinct vertices");
    cross_check(tree, &mut certificate, Mode::All);
    certificate
}

/// Runs the probe over `(critical_on, max_on)` vertex pairs and summarizes
/// which were satisfiable.
fn assignment_probe(
    probe: ProbeId,
    tree: &Tree,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> ProbeReport {
    let mut report = ProbeReport::inapplicable(probe, tree);
    report.applicable = true;
    let mut sat = Vec::new();
    for (critical_on, max_on) in pairs {
        let certificate = checked_alpha(tree, critical_on, max_on);
        if certificate.status == Status::Sat {
            sat.push((critical_on, max_on));
        }
        report.certificates.push(certificate);
    }
    report.passed = Some(!sat.is_empty());
    report.sat_assignments = Some(sat);
    report
}

/// Two-center probe: does some assignment of critical value and maximum
/// label to the two centers admit an alpha labeling? Applies to two-center
/// trees of diameter at most 5 with k-distance at most 2.
pub fn probe_q1(tree: &Tree) -> ProbeReport {
    let profile = tree.profile();
    if !(profile.centers.len() == 2 && profile.diameter <= 5 && profile.k_distance <= 2) {
        return ProbeReport::inapplicable(ProbeId::Q1, tree);
    }
    let (c1, c2) = (profile.centers[0], profile.centers[1]);
    assignment_probe(ProbeId::Q1, tree, [(c1, c2), (c2, c1)])
}

/// Even-center probe: does a graceful labeling exist with the maximum label
/// on the center? Applies to diameter-4 trees whose single center has even
/// degree.
pub fn probe_q2(tree: &Tree) -> ProbeReport {
    let profile = tree.profile();
    let applicable = profile.diameter == 4
        && profile.centers.len() == 1
        && tree.degree(profile.centers[0]).is_multiple_of(2);
    if !applicable {
        return ProbeReport::inapplicable(ProbeId::Q2, tree);
    }
    let center = profile.centers[0];
    let certificate = checked_search(
        tree,
        ConstraintSet {
            max_on: Some(center),
            ..ConstraintSet::default()
        },
        Mode::First,
    );
    let mut report = ProbeReport::inapplicable(ProbeId::Q2, tree);
    report.applicable = true;
    report.passed = Some(certificate.status == Status::Sat);
    report.certificates.push(certificate);
    report
}

/// Near-center probe: does some almost-central vertex admit an alpha
/// labeling with the critical value on the center and the maximum label on
/// that vertex? Applies to diameter-4 trees with a single center and
/// k-distance at most 2.
pub fn probe_q3(tree: &Tree) -> ProbeReport {
    let profile = tree.profile();
    let applicable =
        profile.diameter == 4 && profile.centers.len() == 1 && profile.k_distance <= 2;
    if !applicable {
        return ProbeReport::inapplicable(ProbeId::Q3, tree);
    }
    let center = profile.centers[0];
    let pairs: Vec<(usize, usize)> = profile
        .almost_central
        .iter()
        .map(|&w| (center, w))
        .collect();
    assignment_probe(ProbeId::Q3, tree, pairs)
}

/// Does a graceful labeling exist with the label 0 on the center? Applies
/// to single-center trees.
pub fn zero_centered(tree: &Tree) -> ProbeReport {
    let centers = tree.centers();
    if centers.len() != 1 {
        return ProbeReport::inapplicable(ProbeId::Zero, tree);
    }
    let certificate = checked_search(
        tree,
        ConstraintSet {
            zero_on: Some(centers[0]),
            ..ConstraintSet::default()
        },
        Mode::First,
    );
    let mut report = ProbeReport::inapplicable(ProbeId::Zero, tree);
    report.applicable = true;
    report.passed = Some(certificate.status == Status::Sat);
    report.certificates.push(certificate);
    report
}

pub fn run_probe(probe: ProbeId, tree: &Tree) -> ProbeReport {
    match probe {
        ProbeId::Q1 => probe_q1(tree),
        ProbeId::Q2 => probe_q2(tree),
        ProbeId::Q3 => probe_q3(tree),
        ProbeId::Zero => zero_centered(tree),
    }
}

/// One probe across every isomorphism class with `1..=n_max` vertices that
/// passes the filter. `failures` lists the canonical codes of applicable
/// trees whose probe failed, in report order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HuntReport {
    pub probe: ProbeId,
    pub n_max: usize,
    pub filter: FamilyFilter,
    pub entries: Vec<ProbeReport>,
    pub failures: Vec<String>,
}

/// Runs `probe` over all filtered classes up to `n_max` vertices, fanning
/// trees out across `threads` workers. Reports are ordered by vertex count,
/// then canonical code; the output is independent of the thread count.
pub fn hunt(
    n_max: usize,
    filter: &FamilyFilter,
    probe: ProbeId,
    threads: usize,
) -> Result<HuntReport, families::FamilyError> {
    let mut trees = Vec::new();
    for n in 1..=n_max {
        trees.extend(families::filter_family(
            &families::generate_trees(n)?,
            filter,
        ));
    }
    let entries = parallel_map(&trees, threads, |tree| run_probe(probe, tree));
    let failures = entries
        .iter()
        .filter(|entry| entry.applicable && entry.passed == Some(false))
        .map(|entry| entry.tree.clone())
        .collect();
    Ok(HuntReport {
        probe,
        n_max,
        filter: filter.clone(),
        entries,
        failures,
    })
}

/// The two single-sided relaxations of the q1 question on the 7-vertex
/// reference tree `S`, probed at its degree-2 center (vertex 4): pin only
/// the critical value there, then pin only the maximum label there. Both
/// all-mode searches are satisfiable, so the q1 failure of `S` really needs
/// both pins at once.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelaxedSReport {
    pub critical_case: SearchCertificate,
    pub max_case: SearchCertificate,
}

pub fn relaxed_s_check() -> RelaxedSReport {
    let s = fixtures::tree_s();
    let center = 4;
    let critical_case = checked_search(
        &s,
        ConstraintSet {
            require_alpha: true,
            critical_on: Some(center),
            ..ConstraintSet::default()
        },
        Mode::All,
    );
    let max_case = checked_search(
        &s,
        ConstraintSet {
            require_alpha: true,
            max_on: Some(center),
            ..ConstraintSet::default()
        },
        Mode::All,
    );
    RelaxedSReport {
        critical_case,
        max_case,
    }
}
