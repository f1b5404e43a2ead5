//! Digraphs induced by sign patterns, simple-cycle enumeration, and
//! structural nonsingularity.
//!
//! The digraph convention follows the adjacency transposition `𝒜 = Aᵀ`:
//! an edge `u → v` exists iff the matrix entry `a_vu` is nonzero, i.e. the
//! edge records that state `x_u` drives `ẋ_v`. Cycle existence is invariant
//! under transposition, so everything downstream that only asks *whether*
//! cycles of a given length exist is unaffected by the convention; witnesses
//! are reported in this orientation.
//!
//! Vertices are 1-based throughout the public surface, matching the reports
//! and the JSON wire format.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::defaults::CYCLE_BUDGET;
use crate::sign::SignPattern;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    /// Enumeration found (or searched past) more cycles than the budget
    /// allows; the pattern is too dense for exhaustive listing.
    #[error("cycle budget of {limit} exceeded")]
    CycleBudgetExceeded { limit: usize },
    #[error("edge ({u}, {v}) out of range for {n} vertices")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },
    #[error("a cycle needs at least one vertex, all distinct")]
    InvalidCycle,
}

/// Directed graph on vertices `1..=n`, self-loops permitted, no duplicate
/// edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    adj: Vec<Vec<usize>>, // adj[u-1]: sorted out-neighbors of u, 1-based
}

impl Digraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(GraphError::EdgeOutOfRange { u, v, n });
            }
            adj[u - 1].push(v);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Digraph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n && self.adj[u - 1].binary_search(&v).is_ok()
    }

    /// Sorted out-neighbors of `u` (1-based).
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u - 1]
    }

    /// All edges as ordered pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for &v in &self.adj[u - 1] {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }
}

/// A simple directed cycle `v₁ → v₂ → … → v_k → v₁` with distinct vertices,
/// stored in canonical rotation (smallest vertex first). Length 1 is a
/// self-loop.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Canonicalize a vertex list into a cycle: rotates so the smallest
    /// vertex comes first. Vertices must be distinct and nonempty.
    pub fn new(vertices: Vec<usize>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::InvalidCycle);
        }
        let mut seen = vertices.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(GraphError::InvalidCycle);
        }
        let min_pos = vertices
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| v)
            .map(|(i, _)| i)
            .unwrap();
        let mut rotated = Vec::with_capacity(vertices.len());
        rotated.extend_from_slice(&vertices[min_pos..]);
        rotated.extend_from_slice(&vertices[..min_pos]);
        Ok(Cycle { vertices: rotated })
    }

    /// Number of vertices, ≥ 1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Vertices in canonical rotation, 1-based.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, "->")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "->{}", self.vertices[0])
    }
}

/// Digraph of a pattern: edge `(u, v)` present iff `s_vu != 0`
/// (transposition per `𝒜 = Aᵀ`); self-loop `(u, u)` iff `s_uu != 0`.
pub fn digraph_of(p: &SignPattern) -> Digraph {
    let n = p.n();
    let mut edges = Vec::new();
    for row in 0..n {
        for col in 0..n {
            if !p.get(row, col).is_zero() {
                // a_{row+1, col+1} nonzero: state (col+1) drives (row+1)
                edges.push((col + 1, row + 1));
            }
        }
    }
    Digraph::new(n, edges).expect("edges derived from a pattern are in range")
}

/// Every vertex on a path-extension step costs one unit; this multiple of
/// the cycle budget bounds fruitless search in graphs whose cycles are
/// sparse relative to their path count.
const STEPS_PER_CYCLE: usize = 64;

struct CycleSearch<'a> {
    g: &'a Digraph,
    radj: Vec<Vec<usize>>, // radj[v-1]: in-neighbors of v, 1-based
    max_len: usize,
    budget: usize,
    found: usize,
    steps: usize,
    in_scc: Vec<bool>,
    on_path: Vec<bool>,
    path: Vec<usize>,
}

enum SearchFlow {
    Continue,
    Stop,
}

impl<'a> CycleSearch<'a> {
    fn new(g: &'a Digraph, max_len: usize, budget: usize) -> Self {
        let mut radj = vec![Vec::new(); g.n()];
        for (u, v) in g.edges() {
            radj[v - 1].push(u);
        }
        CycleSearch {
            g,
            radj,
            max_len,
            budget,
            found: 0,
            steps: 0,
            in_scc: vec![false; g.n() + 1],
            on_path: vec![false; g.n() + 1],
            path: Vec::new(),
        }
    }

    /// Enumerate every simple cycle of length <= max_len, in canonical
    /// rotation, calling `visit` once per cycle. Each cycle is reported
    /// exactly once: the search from start vertex `s` only explores
    /// vertices >= s, so a cycle is found from its smallest vertex.
    fn run(&mut self, visit: &mut impl FnMut(&[usize]) -> SearchFlow) -> Result<(), GraphError> {
        for start in 1..=self.g.n() {
            self.mark_scc_of(start);
            self.path.clear();
            self.path.push(start);
            self.on_path[start] = true;
            let flow = self.extend(start, start, visit)?;
            self.on_path[start] = false;
            if matches!(flow, SearchFlow::Stop) {
                return Ok(());
            }
        }
        Ok(())
    }

    fn extend(
        &mut self,
        start: usize,
        u: usize,
        visit: &mut impl FnMut(&[usize]) -> SearchFlow,
    ) -> Result<SearchFlow, GraphError> {
        let g = self.g;
        for &v in g.neighbors(u) {
            if v < start || !self.in_scc[v] {
                continue;
            }
            self.steps += 1;
            if self.steps > self.budget.saturating_mul(STEPS_PER_CYCLE) {
                return Err(GraphError::CycleBudgetExceeded { limit: self.budget });
            }
            if v == start {
                self.found += 1;
                if self.found > self.budget {
                    return Err(GraphError::CycleBudgetExceeded { limit: self.budget });
                }
                if matches!(visit(&self.path), SearchFlow::Stop) {
                    return Ok(SearchFlow::Stop);
                }
            } else if !self.on_path[v] && self.path.len() < self.max_len {
                self.path.push(v);
                self.on_path[v] = true;
                let flow = self.extend(start, v, visit)?;
                self.on_path[v] = false;
                self.path.pop();
                if matches!(flow, SearchFlow::Stop) {
                    return Ok(SearchFlow::Stop);
                }
            }
        }
        Ok(SearchFlow::Continue)
    }

    /// Mark the strongly connected component of `start` within the subgraph
    /// induced on vertices >= start. Cycles whose smallest vertex is `start`
    /// live entirely inside that component.
    fn mark_scc_of(&mut self, start: usize) {
        let n = self.g.n();
        let mut fwd = vec![false; n + 1];
        let mut back = vec![false; n + 1];
        let mut stack = vec![start];
        fwd[start] = true;
        while let Some(u) = stack.pop() {
            for &v in self.g.neighbors(u) {
                if v >= start && !fwd[v] {
                    fwd[v] = true;
                    stack.push(v);
                }
            }
        }
        stack.push(start);
        back[start] = true;
        while let Some(u) = stack.pop() {
            for &v in &self.radj[u - 1] {
                if v >= start && !back[v] {
                    back[v] = true;
                    stack.push(v);
                }
            }
        }
        for v in 0..=n {
            self.in_scc[v] = v >= start && fwd[v] && back[v];
        }
    }
}

/// Enumerate every simple cycle of length `<= max_len`, canonically rotated,
/// without duplicates, sorted by length then lexicographically.
pub fn enumerate_simple_cycles(g: &Digraph, max_len: usize) -> Result<Vec<Cycle>, GraphError> {
    enumerate_simple_cycles_with_budget(g, max_len, CYCLE_BUDGET)
}

/// [`enumerate_simple_cycles`] with an explicit cycle budget.
pub fn enumerate_simple_cycles_with_budget(
    g: &Digraph,
    max_len: usize,
    budget: usize,
) -> Result<Vec<Cycle>, GraphError> {
    let mut cycles = Vec::new();
    let mut search = CycleSearch::new(g, max_len.min(g.n()), budget);
    search.run(&mut |path| {
        cycles.push(Cycle { vertices: path.to_vec() });
        SearchFlow::Continue
    })?;
    cycles.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.vertices.cmp(&b.vertices)));
    Ok(cycles)
}

/// Does a simple cycle of length `>= k` exist? Returns one witness when so.
/// Exits as soon as a witness is found rather than enumerating everything.
pub fn has_cycle_geq(g: &Digraph, k: usize) -> Result<Option<Cycle>, GraphError> {
    has_cycle_geq_with_budget(g, k, CYCLE_BUDGET)
}

/// [`has_cycle_geq`] with an explicit cycle budget.
pub fn has_cycle_geq_with_budget(
    g: &Digraph,
    k: usize,
    budget: usize,
) -> Result<Option<Cycle>, GraphError> {
    let mut witness = None;
    let mut search = CycleSearch::new(g, g.n(), budget);
    search.run(&mut |path| {
        if path.len() >= k {
            witness = Some(Cycle { vertices: path.to_vec() });
            SearchFlow::Stop
        } else {
            SearchFlow::Continue
        }
    })?;
    Ok(witness)
}

/// Outcome of the structural-rank decision for a pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructuralRank {
    /// A transversal of nonzeros exists: `transversal[i]` is the 1-based
    /// column matched to row `i + 1`. Determinants of generic realizations
    /// are nonzero.
    Full { transversal: Vec<usize> },
    /// No transversal covers these rows (1-based): their combined nonzero
    /// columns number fewer than the rows themselves, so every realization
    /// is singular.
    Deficient { uncoverable_rows: Vec<usize> },
}

impl StructuralRank {
    pub fn is_full(&self) -> bool {
        matches!(self, StructuralRank::Full { .. })
    }
}

/// Decide whether some permutation `π` has `s_{i,π(i)} != 0` for all rows
/// `i` — a perfect matching in the bipartite rows-vs-columns graph of
/// nonzeros. Generic realizations of the pattern are nonsingular exactly
/// when such a transversal exists.
pub fn structural_rank_full(p: &SignPattern) -> StructuralRank {
    let n = p.n();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| !p.get(i, j).is_zero()).collect())
        .collect();
    let (size, match_row) = hopcroft_karp(n, n, &adj);
    if size == n {
        StructuralRank::Full {
            transversal: match_row.into_iter().map(|c| c.unwrap() + 1).collect(),
        }
    } else {
        StructuralRank::Deficient { uncoverable_rows: hall_violator(n, &adj, &match_row) }
    }
}

/// Maximum bipartite matching (Hopcroft–Karp). Returns the matching size
/// and, per left vertex, its matched right vertex.
fn hopcroft_karp(
    n_left: usize,
    n_right: usize,
    adj: &[Vec<usize>],
) -> (usize, Vec<Option<usize>>) {
    const INF: usize = usize::MAX;
    let mut match_l: Vec<Option<usize>> = vec![None; n_left];
    let mut match_r: Vec<Option<usize>> = vec![None; n_right];
    let mut dist = vec![INF; n_left];
    let mut size = 0;

    loop {
        // BFS: layer left vertices by alternating-path depth from the free ones.
        let mut queue = std::collections::VecDeque::new();
        for u in 0..n_left {
            if match_l[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found_augmenting = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_r[v] {
                    None => found_augmenting = true,
                    Some(w) => {
                        if dist[w] == INF {
                            dist[w] = dist[u] + 1;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        if !found_augmenting {
            break;
        }
        // DFS along the layering, augmenting where possible.
        fn try_augment(
            u: usize,
            adj: &[Vec<usize>],
            match_l: &mut [Option<usize>],
            match_r: &mut [Option<usize>],
            dist: &mut [usize],
        ) -> bool {
            for &v in &adj[u] {
                let ok = match match_r[v] {
                    None => true,
                    Some(w) => {
                        dist[w] == dist[u] + 1 && try_augment(w, adj, match_l, match_r, dist)
                    }
                };
                if ok {
                    match_l[u] = Some(v);
                    match_r[v] = Some(u);
                    return true;
                }
            }
            dist[u] = usize::MAX; // dead end for this phase
            false
        }
        for u in 0..n_left {
            if match_l[u].is_none() && try_augment(u, adj, &mut match_l, &mut match_r, &mut dist)
            {
                size += 1;
            }
        }
    }
    (size, match_l)
}

/// Rows reachable from the unmatched ones by alternating paths. Their
/// neighborhood is fully matched into the set, so it is smaller than the
/// set itself (the Hall/König obstruction). Returned 1-based, sorted.
fn hall_violator(n: usize, adj: &[Vec<usize>], match_row: &[Option<usize>]) -> Vec<usize> {
    let mut col_owner = vec![None; n];
    for (r, m) in match_row.iter().enumerate() {
        if let Some(c) = *m {
            col_owner[c] = Some(r);
        }
    }
    let mut row_seen = vec![false; n];
    let mut col_seen = vec![false; n];
    let mut stack: Vec<usize> =
        (0..n).filter(|&r| match_row[r].is_none()).collect();
    for &r in &stack {
        row_seen[r] = true;
    }
    while let Some(r) = stack.pop() {
        for &c in &adj[r] {
            if !col_seen[c] {
                col_seen[c] = true;
                if let Some(owner) = col_owner[c] {
                    if !row_seen[owner] {
                        row_seen[owner] = true;
                        stack.push(owner);
                    }
                }
            }
        }
    }
    (0..n).filter(|&r| row_seen[r]).map(|r| r + 1).collect()
}
