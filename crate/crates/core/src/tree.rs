//! Tree representation and structural analysis.
//!
//! A [`Tree`] is a connected acyclic graph on vertices `0..n` with `n <= 64`.
//! Construction validates everything up front, so every other module can
//! assume a well-formed tree. Structural queries (diameter, centers, longest
//! paths, k-distance, bipartition) are bundled into a [`TreeProfile`], and
//! [`Tree::canonical_code`] gives a complete isomorphism invariant used to
//! deduplicate and name isomorphism classes.

use std::collections::VecDeque;

use thiserror::Error;

/// Hard cap on vertex count. Label and weight sets are tracked in `u64`
/// bitmasks throughout the crate, which is what fixes the bound.
pub const MAX_VERTICES: usize = 64;

/// Default cap on the number of longest paths materialized by
/// [`Tree::profile`]. Path-heavy trees (balanced spiders) can have many
/// diameter pairs; the profile keeps at most this many and computes
/// k-distance over the retained set.
pub const DEFAULT_PATH_LIMIT: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("vertex count must be at least 1")]
    NoVertices,
    #[error("vertex count {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("a tree on {n} vertices needs {expected} edges, got {found}")]
    WrongEdgeCount {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge list is not connected")]
    Disconnected,
    #[error("missing vertex count header")]
    MissingHeader,
    #[error("invalid vertex count header {0:?}")]
    BadHeader(String),
    #[error("entry {entry}: expected two vertex ids, got {found:?}")]
    MalformedEntry { entry: usize, found: String },
}

/// An immutable tree on vertices `0..n`.
///
/// Edges are stored with endpoints normalized to `(min, max)` in input
/// order. Adjacency is kept both as sorted neighbor lists and as per-vertex
/// bitmasks, and the unique 2-coloring (with vertex 0 colored 0) is computed
/// at construction time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    adj: Vec<u64>,
    color: Vec<u8>,
}

/// Structural summary of a tree, as produced by [`Tree::profile`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeProfile {
    /// Maximum pairwise distance.
    pub diameter: usize,
    /// The one or two middle vertices left by repeated leaf removal, sorted.
    pub centers: Vec<usize>,
    /// All maximum-length paths as vertex sequences, each listed once with
    /// the smaller endpoint first, sorted; capped at the configured limit.
    pub longest_paths: Vec<Vec<usize>>,
    /// Minimum over the retained longest paths of the maximum distance from
    /// any vertex to that path. 0 for paths, 1 for caterpillars that are not
    /// paths, 2 for lobsters that are not caterpillars.
    pub k_distance: usize,
    /// Vertices adjacent to a center and lying on some longest path, sorted.
    pub almost_central: Vec<usize>,
    /// The two 2-coloring classes, each sorted; the first contains vertex 0.
    pub bipartition: (Vec<usize>, Vec<usize>),
}

impl Tree {
    /// Builds a tree from an explicit edge list, validating vertex count,
    /// edge count, endpoint range, absence of loops and duplicates, and
    /// connectivity.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::NoVertices);
        }
        if n > MAX_VERTICES {
            return Err(TreeError::TooManyVertices(n));
        }
        if edges.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount {
                n,
                expected: n - 1,
                found: edges.len(),
            });
        }

        let mut norm = Vec::with_capacity(edges.len());
        let mut neighbors = vec![Vec::new(); n];
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(TreeError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(TreeError::SelfLoop(a));
            }
            let (u, v) = (a.min(b), a.max(b));
            if adj[u] >> v & 1 == 1 {
                return Err(TreeError::DuplicateEdge(u, v));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            neighbors[u].push(v);
            neighbors[v].push(u);
            norm.push((u, v));
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }

        // With exactly n-1 edges, connectivity makes the graph a tree, and
        // acyclicity in turn makes the BFS 2-coloring consistent.
        let mut color = vec![u8::MAX; n];
        color[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        let mut seen = 1usize;
        while let Some(v) = queue.pop_front() {
            for &w in &neighbors[v] {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    seen += 1;
                    queue.push_back(w);
                }
            }
        }
        if seen != n {
            return Err(TreeError::Disconnected);
        }

        Ok(Tree {
            n,
            edges: norm,
            neighbors,
            adj,
            color,
        })
    }

    /// Parses the plain edge-list format: a vertex count, then one `u v`
    /// pair per entry. Entries are separated by newlines or semicolons,
    /// `#` starts a comment, and blank entries are skipped.
    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let mut header: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.split(['\n', ';']).enumerate() {
            let entry = raw.split('#').next().unwrap_or("").trim();
            if entry.is_empty() {
                continue;
            }
            if header.is_none() {
                header = Some(
                    entry
                        .parse()
                        .map_err(|_| TreeError::BadHeader(entry.to_string()))?,
                );
                continue;
            }
            let malformed = || TreeError::MalformedEntry {
                entry: idx + 1,
                found: entry.to_string(),
            };
            let mut tokens = entry.split_whitespace();
            match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(a), Some(b), None) => {
                    let u = a.parse().map_err(|_| malformed())?;
                    let v = b.parse().map_err(|_| malformed())?;
                    edges.push((u, v));
                }
                _ => return Err(malformed()),
            }
        }
        let n = header.ok_or(TreeError::MissingHeader)?;
        Self::new(n, &edges)
    }

    /// Renders the multi-line edge-list format accepted by [`Tree::parse`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Renders the same format on a single semicolon-separated line.
    pub fn to_edge_list_line(&self) -> String {
        let mut out = self.n.to_string();
        for &(u, v) in &self.edges {
            out.push_str(&format!(";{u} {v}"));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges with endpoints normalized `(min, max)`, in input order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// 2-coloring class of a vertex, 0 or 1; vertex 0 is in class 0.
    pub(crate) fn color(&self, v: usize) -> u8 {
        self.color[v]
    }

    /// The two 2-coloring classes, each sorted ascending; the first one
    /// contains vertex 0. The second is empty only for the single vertex.
    pub fn bipartition(&self) -> (Vec<usize>, Vec<usize>) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for v in 0..self.n {
            if self.color[v] == 0 {
                a.push(v);
            } else {
                b.push(v);
            }
        }
        (a, b)
    }

    /// The one or two centers, found by stripping leaf layers until at most
    /// two vertices remain. Sorted ascending.
    pub fn centers(&self) -> Vec<usize> {
        if self.n <= 2 {
            return (0..self.n).collect();
        }
        let mut degree: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut alive = vec![true; self.n];
        let mut remaining = self.n;
        while remaining > 2 {
            let layer: Vec<usize> = (0..self.n)
                .filter(|&v| alive[v] && degree[v] <= 1)
                .collect();
            for &v in &layer {
                alive[v] = false;
                remaining -= 1;
                for &w in &self.neighbors[v] {
                    if alive[w] {
                        degree[w] -= 1;
                    }
                }
            }
        }
        (0..self.n).filter(|&v| alive[v]).collect()
    }

    fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.neighbors[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn path_between(&self, u: usize, v: usize, dist: &[Vec<usize>]) -> Vec<usize> {
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            // In a tree exactly one neighbor is strictly closer to v.
            let next = self.neighbors[cur]
                .iter()
                .copied()
                .find(|&w| dist[w][v] + 1 == dist[cur][v])
                .expect("some neighbor lies on the unique path");
            path.push(next);
            cur = next;
        }
        path
    }

    /// Computes the structural profile with the default longest-path cap.
    pub fn profile(&self) -> TreeProfile {
        self.profile_with_path_limit(DEFAULT_PATH_LIMIT)
    }

    /// Computes the structural profile, materializing at most `limit`
    /// longest paths. The k-distance is taken over the retained paths, so a
    /// tighter limit can only overestimate it; the default limit is far
    /// beyond anything a 64-vertex tree produces.
    pub fn profile_with_path_limit(&self, limit: usize) -> TreeProfile {
        let dist: Vec<Vec<usize>> = (0..self.n).map(|v| self.distances_from(v)).collect();
        let diameter = (0..self.n)
            .flat_map(|u| dist[u].iter().copied())
            .max()
            .unwrap_or(0);

        let mut longest_paths = Vec::new();
        if diameter == 0 {
            longest_paths.push(vec![0]);
        } else {
            'pairs: for u in 0..self.n {
                for v in u + 1..self.n {
                    if dist[u][v] == diameter {
                        if longest_paths.len() == limit {
                            break 'pairs;
                        }
                        longest_paths.push(self.path_between(u, v, &dist));
                    }
                }
            }
        }
        longest_paths.sort();

        let k_distance = longest_paths
            .iter()
            .map(|path| {
                (0..self.n)
                    .map(|v| path.iter().map(|&p| dist[v][p]).min().unwrap())
                    .max()
                    .unwrap()
            })
            .min()
            .expect("at least one longest path");

        let mut on_path = 0u64;
        for path in &longest_paths {
            for &v in path {
                on_path |= 1 << v;
            }
        }
        let centers = self.centers();
        let almost_central = (0..self.n)
            .filter(|&v| {
                on_path >> v & 1 == 1 && centers.iter().any(|&c| self.adjacent(v, c))
            })
            .collect();

        TreeProfile {
            diameter,
            centers,
            longest_paths,
            k_distance,
            almost_central,
            bipartition: self.bipartition(),
        }
    }

    /// BFS order from `root`, visiting neighbors in ascending id order.
    pub(crate) fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[root] = true;
        let mut order = vec![root];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        order
    }

    fn rooted_code(&self, v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = self.neighbors[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| self.rooted_code(w, v))
            .collect();
        kids.sort_unstable();
        let mut code = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        code.push('(');
        for kid in kids {
            code.push_str(&kid);
        }
        code.push(')');
        code
    }

    /// Canonical form: the lexicographically smaller of the rooted
    /// parenthesis encodings at the centers. Rooted encodings with sorted
    /// children are complete invariants for rooted trees, and rooting at the
    /// (structurally determined) centers extends that to free trees: two
    /// trees get equal codes exactly when they are isomorphic.
    pub fn canonical_code(&self) -> String {
        self.centers()
            .iter()
            .map(|&c| self.rooted_code(c, usize::MAX))
            .min()
            .expect("a tree has at least one center")
    }
}
