//! Loop-free digraphs with digons, their underlying graphs, and the
//! edge-list / DOT text formats.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

/// Errors raised when building a digraph from an arc list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("vertex {vertex} out of range for digraph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(usize, usize),
}

/// Errors raised by [`parse_edge_list`]. Line numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate arc {from} -> {to}")]
    DuplicateArc { line: usize, from: usize, to: usize },
    #[error("header announces {expected} arcs but {found} were given")]
    ArcCount { expected: usize, found: usize },
}

/// A directed graph on vertices `0..n` without loops or parallel arcs.
///
/// Both orientations of a pair may be present (a digon). Adjacency lists
/// are kept sorted so every traversal visits neighbours smallest id first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    arc_count: usize,
}

impl Digraph {
    /// The digraph on `n` vertices with no arcs.
    pub fn empty(n: usize) -> Self {
        Self {
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
            arc_count: 0,
        }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, DigraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut seen = BTreeSet::new();
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(DigraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(DigraphError::SelfLoop(u));
            }
            if !seen.insert((u, v)) {
                return Err(DigraphError::DuplicateArc(u, v));
            }
        }
        Ok(Self::from_arc_set(n, &seen))
    }

    /// Builds from an already deduplicated, loop-free arc set.
    pub(crate) fn from_arc_set(n: usize, arcs: &BTreeSet<(usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in arcs {
            debug_assert!(u != v && u < n && v < n);
            out[u].push(v);
            inn[v].push(u);
        }
        for list in inn.iter_mut() {
            list.sort_unstable();
        }
        Self {
            out,
            inn,
            arc_count: arcs.len(),
        }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    /// Maximum out-degree, 0 for the empty digraph.
    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_in_degree(&self) -> usize {
        self.inn.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.out[u].binary_search(&v).is_ok()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    pub fn arc_set(&self) -> BTreeSet<(usize, usize)> {
        self.arcs().collect()
    }

    /// `true` when every vertex has out-degree exactly `k`.
    pub fn is_out_regular(&self, k: usize) -> bool {
        self.out.iter().all(|l| l.len() == k)
    }

    pub fn reverse(&self) -> Self {
        Self {
            out: self.inn.clone(),
            inn: self.out.clone(),
            arc_count: self.arc_count,
        }
    }

    /// Subdigraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut arcs = BTreeSet::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.out[v] {
                if index[w] != usize::MAX {
                    arcs.insert((i, index[w]));
                }
            }
        }
        Digraph::from_arc_set(vertices.len(), &arcs)
    }

    /// Copy of `self` with the arcs `removed` deleted.
    pub fn without_arcs(&self, removed: &BTreeSet<(usize, usize)>) -> Digraph {
        let arcs: BTreeSet<_> = self.arcs().filter(|a| !removed.contains(a)).collect();
        Digraph::from_arc_set(self.n(), &arcs)
    }

    /// Strongly connected, counting the 0- and 1-vertex digraphs as strong.
    pub fn is_strong(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        reaches_all(&self.out, 0) && reaches_all(&self.inn, 0)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile {
            out_degrees: self.out.iter().map(Vec::len).collect(),
            in_degrees: self.inn.iter().map(Vec::len).collect(),
        }
    }

    pub fn underlying_graph(&self) -> Graph {
        let mut edges = BTreeSet::new();
        for (u, v) in self.arcs() {
            edges.insert((u.min(v), u.max(v)));
        }
        Graph::from_edge_set(self.n(), &edges)
    }

    /// Serializes to the edge-list format accepted by [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n(), self.arc_count);
        for (u, v) in self.arcs() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// Graphviz rendering for inspection. There is no DOT reader.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {name} {{");
        for v in self.vertices() {
            let _ = writeln!(s, "  {v};");
        }
        for (u, v) in self.arcs() {
            let _ = writeln!(s, "  {u} -> {v};");
        }
        s.push_str("}\n");
        s
    }
}

fn reaches_all(adj: &[Vec<usize>], start: usize) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == adj.len()
}

/// Per-vertex degree table of a digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub out_degrees: Vec<usize>,
    pub in_degrees: Vec<usize>,
}

impl DegreeProfile {
    pub fn max_out(&self) -> usize {
        self.out_degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn max_in(&self) -> usize {
        self.in_degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn is_out_regular(&self, k: usize) -> bool {
        self.out_degrees.iter().all(|&d| d == k)
    }

    /// `true` when in- and out-degree are both `k` everywhere.
    pub fn is_regular(&self, k: usize) -> bool {
        self.is_out_regular(k) && self.in_degrees.iter().all(|&d| d == k)
    }

    /// The common out-degree, if the digraph is out-regular.
    pub fn out_regularity(&self) -> Option<usize> {
        let first = *self.out_degrees.first()?;
        self.is_out_regular(first).then_some(first)
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph; repeated edges in either orientation are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, DigraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(DigraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(DigraphError::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_edge_set(n, &set))
    }

    fn from_edge_set(n: usize, edges: &BTreeSet<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Self {
            adj,
            edge_count: edges.len(),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || reaches_all(&self.adj, 0)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|l| l.len() + 1 == n)
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = BTreeSet::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    edges.insert((i, j));
                }
            }
        }
        Graph::from_edge_set(vertices.len(), &edges)
    }

    /// The symmetric digraph with a digon for every edge.
    pub fn to_symmetric_digraph(&self) -> Digraph {
        let arcs: BTreeSet<_> = self.edges().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
        Digraph::from_arc_set(self.n(), &arcs)
    }
}

/// Parses the edge-list format: a header line `n m`, then `m` lines `u v`.
///
/// Blank trailing lines are ignored; anything else that does not fit the
/// format is rejected.
pub fn parse_edge_list(text: &str) -> Result<Digraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty());

    let (hline, header) = lines.next().ok_or(ParseError::Malformed {
        line: 1,
        reason: "missing header".into(),
    })?;
    let (n, m) = parse_pair(hline, header)?;

    let mut arcs = BTreeSet::new();
    for (line, content) in lines {
        let (u, v) = parse_pair(line, content)?;
        for w in [u, v] {
            if w >= n {
                return Err(ParseError::OutOfRange { line, vertex: w, n });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        if !arcs.insert((u, v)) {
            return Err(ParseError::DuplicateArc {
                line,
                from: u,
                to: v,
            });
        }
    }
    if arcs.len() != m {
        return Err(ParseError::ArcCount {
            expected: m,
            found: arcs.len(),
        });
    }
    Ok(Digraph::from_arc_set(n, &arcs))
}

fn parse_pair(line: usize, content: &str) -> Result<(usize, usize), ParseError> {
    let malformed = |reason: &str| ParseError::Malformed {
        line,
        reason: reason.to_string(),
    };
    let mut it = content.split_whitespace();
    let a = it.next().ok_or_else(|| malformed("expected two integers"))?;
    let b = it.next().ok_or_else(|| malformed("expected two integers"))?;
    if it.next().is_some() {
        return Err(malformed("trailing tokens"));
    }
    let a = a.parse().map_err(|_| malformed("not a non-negative integer"))?;
    let b = b.parse().map_err(|_| malformed("not a non-negative integer"))?;
    Ok((a, b))
}
