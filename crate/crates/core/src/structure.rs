//! Structural analyses used by the solvers.

use thiserror::Error;

use crate::digraph::{Digraph, Graph};

/// Node-expansion cap used when callers have no better estimate.
pub const DEFAULT_CYCLE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    pub initial: bool,
    pub terminal: bool,
}

impl Component {
    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }
}

/// Strong components of a digraph, listed by smallest vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondensationReport {
    pub component_of: Vec<usize>,
    pub components: Vec<Component>,
}

impl CondensationReport {
    pub fn terminal(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| c.terminal)
    }

    pub fn initial(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| c.initial)
    }
}

/// Tarjan's algorithm, iterative so deep digraphs cannot overflow the stack.
pub fn strong_components(d: &Digraph) -> CondensationReport {
    let n = d.n();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut raw: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    // (vertex, position in its out-list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let out = d.out_neighbors(v);
            if *pos < out.len() {
                let w = out[*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    raw.push(comp);
                }
            }
        }
    }

    raw.sort_by_key(|c| c[0]);
    let mut component_of = vec![0; n];
    for (i, comp) in raw.iter().enumerate() {
        for &v in comp {
            component_of[v] = i;
        }
    }
    let mut initial = vec![true; raw.len()];
    let mut terminal = vec![true; raw.len()];
    for (u, v) in d.arcs() {
        let (cu, cv) = (component_of[u], component_of[v]);
        if cu != cv {
            terminal[cu] = false;
            initial[cv] = false;
        }
    }
    let components = raw
        .into_iter()
        .enumerate()
        .map(|(i, vertices)| Component {
            vertices,
            initial: initial[i],
            terminal: terminal[i],
        })
        .collect();
    CondensationReport {
        component_of,
        components,
    }
}

/// A directed simple cycle `v0 -> v1 -> ... -> v(L-1) -> v0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle(pub Vec<usize>);

impl Cycle {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.0.len() % 2 == 0
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// `true` when the vertices are distinct, `L >= 2`, and every
    /// consecutive arc (including the closing one) is in `d`.
    pub fn is_valid_in(&self, d: &Digraph) -> bool {
        let c = &self.0;
        if c.len() < 2 {
            return false;
        }
        let mut sorted = c.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == c.len() && (0..c.len()).all(|i| d.has_arc(c[i], c[(i + 1) % c.len()]))
    }

    /// Relabels through `map` (e.g. from an induced subdigraph to its host).
    pub fn mapped(&self, map: &[usize]) -> Cycle {
        Cycle(self.0.iter().map(|&v| map[v]).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget of {0} node expansions exceeded")]
pub struct BudgetExceeded(pub u64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvenCycleSearch {
    Found(Cycle),
    /// Every simple cycle was enumerated and all have odd length.
    NoneFound,
}

/// Looks for an even directed cycle by enumerating simple cycles.
///
/// Digons are returned first. Otherwise cycles are enumerated with
/// Johnson's blocking scheme, start vertices in increasing order, and the
/// first even one is returned. Each call of the circuit routine counts as
/// one expansion against `budget`.
pub fn find_even_cycle(d: &Digraph, budget: u64) -> Result<EvenCycleSearch, BudgetExceeded> {
    assert!(budget > 0, "budget must be positive");
    for (u, v) in d.arcs() {
        if u < v && d.has_arc(v, u) {
            return Ok(EvenCycleSearch::Found(Cycle(vec![u, v])));
        }
    }
    let mut found = None;
    enumerate_cycles(d, budget, &mut |c| {
        if c.len() % 2 == 0 {
            found = Some(Cycle(c.to_vec()));
            false
        } else {
            true
        }
    })?;
    Ok(match found {
        Some(c) => EvenCycleSearch::Found(c),
        None => EvenCycleSearch::NoneFound,
    })
}

/// Lengths of all simple cycles (with multiplicity), for certification
/// transcripts.
pub fn cycle_lengths(d: &Digraph, budget: u64) -> Result<Vec<usize>, BudgetExceeded> {
    let mut lengths = Vec::new();
    enumerate_cycles(d, budget, &mut |c| {
        lengths.push(c.len());
        true
    })?;
    Ok(lengths)
}

/// Johnson's elementary-circuit enumeration. The visitor returns `false`
/// to stop early.
pub fn enumerate_cycles(
    d: &Digraph,
    budget: u64,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<(), BudgetExceeded> {
    let n = d.n();
    let mut search = Johnson {
        d,
        allowed: vec![false; n],
        blocked: vec![false; n],
        block_map: vec![Vec::new(); n],
        path: Vec::new(),
        expansions: 0,
        budget,
        stopped: false,
    };
    for s in 0..n {
        // strong component of s within the subdigraph induced by {s, .., n-1}
        let rest: Vec<usize> = (s..n).collect();
        let sub = d.induced(&rest);
        let report = strong_components(&sub);
        let comp = &report.components[report.component_of[0]];
        if comp.is_trivial() {
            continue;
        }
        for v in 0..n {
            search.allowed[v] = false;
            search.blocked[v] = false;
            search.block_map[v].clear();
        }
        for &i in &comp.vertices {
            search.allowed[i + s] = true;
        }
        search.circuit(s, s, visit)?;
        if search.stopped {
            break;
        }
    }
    Ok(())
}

struct Johnson<'a> {
    d: &'a Digraph,
    allowed: Vec<bool>,
    blocked: Vec<bool>,
    block_map: Vec<Vec<usize>>,
    path: Vec<usize>,
    expansions: u64,
    budget: u64,
    stopped: bool,
}

impl Johnson<'_> {
    fn unblock(&mut self, u: usize) {
        let mut stack = vec![u];
        while let Some(w) = stack.pop() {
            if self.blocked[w] {
                self.blocked[w] = false;
                stack.append(&mut self.block_map[w]);
            }
        }
    }

    fn circuit(
        &mut self,
        v: usize,
        s: usize,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool, BudgetExceeded> {
        self.expansions += 1;
        if self.expansions > self.budget {
            return Err(BudgetExceeded(self.budget));
        }
        let mut closed = false;
        self.path.push(v);
        self.blocked[v] = true;
        let d = self.d;
        for &w in d.out_neighbors(v) {
            if self.stopped {
                break;
            }
            if !self.allowed[w] {
                continue;
            }
            if w == s {
                closed = true;
                if !visit(&self.path) {
                    self.stopped = true;
                }
            } else if !self.blocked[w] && self.circuit(w, s, visit)? {
                closed = true;
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for &w in d.out_neighbors(v) {
                if self.allowed[w] && !self.block_map[w].contains(&v) {
                    self.block_map[w].push(v);
                }
            }
        }
        self.path.pop();
        Ok(closed)
    }
}

/// Smallest-last ordering and the degeneracy it certifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrder {
    /// Vertices in removal order.
    pub order: Vec<usize>,
    pub degeneracy: usize,
}

/// Repeatedly removes a minimum-degree vertex (smallest id on ties).
pub fn degeneracy_order(g: &Graph) -> DegeneracyOrder {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertex remains");
        degeneracy = degeneracy.max(degree[v]);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
            }
        }
    }
    DegeneracyOrder { order, degeneracy }
}

/// Greedy colouring along the reverse of a degeneracy order; uses at most
/// `degeneracy + 1` colours.
pub fn greedy_degeneracy_coloring(g: &Graph) -> Vec<usize> {
    let order = degeneracy_order(g);
    let mut color = vec![usize::MAX; g.n()];
    for &v in order.order.iter().rev() {
        let used: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&w| color[w])
            .filter(|&c| c != usize::MAX)
            .collect();
        color[v] = (0..).find(|c| !used.contains(c)).expect("free colour");
    }
    color
}

pub fn is_proper_coloring(g: &Graph, color: &[usize]) -> bool {
    color.len() == g.n() && g.edges().all(|(u, v)| color[u] != color[v])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BrooksOutcome {
    Colored(Vec<usize>),
    /// The graph is complete or an odd cycle, so Brooks' bound does not apply.
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrooksError {
    #[error("graph is not connected")]
    Disconnected,
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

fn is_odd_cycle(g: &Graph) -> bool {
    g.n() >= 3 && g.n() % 2 == 1 && g.is_connected() && (0..g.n()).all(|v| g.degree(v) == 2)
}

/// Properly colours a connected graph with `Δ(g)` colours.
///
/// Guarded by the Brooks applicability test, then solved by backtracking in
/// saturation order (most constrained vertex first, smallest id on ties).
pub fn brooks_coloring(g: &Graph, budget: u64) -> Result<BrooksOutcome, BrooksError> {
    if !g.is_connected() {
        return Err(BrooksError::Disconnected);
    }
    if g.is_complete() || is_odd_cycle(g) {
        return Ok(BrooksOutcome::Inapplicable);
    }
    let colors = g.max_degree();
    let mut color = vec![usize::MAX; g.n()];
    let mut nodes = 0u64;
    if dsatur(g, colors, &mut color, &mut nodes, budget)? {
        Ok(BrooksOutcome::Colored(color))
    } else {
        // unreachable by Brooks' theorem; surfaced rather than hidden
        panic!("no {colors}-colouring found for a graph satisfying the Brooks conditions");
    }
}

fn dsatur(
    g: &Graph,
    colors: usize,
    color: &mut [usize],
    nodes: &mut u64,
    budget: u64,
) -> Result<bool, BudgetExceeded> {
    *nodes += 1;
    if *nodes > budget {
        return Err(BudgetExceeded(budget));
    }
    let pick = (0..g.n())
        .filter(|&v| color[v] == usize::MAX)
        .map(|v| {
            let mut seen: Vec<usize> = g
                .neighbors(v)
                .iter()
                .map(|&w| color[w])
                .filter(|&c| c != usize::MAX)
                .collect();
            seen.sort_unstable();
            seen.dedup();
            (v, seen.len())
        })
        .max_by(|a, b| a.1.cmp(&b.1).then(g.degree(a.0).cmp(&g.degree(b.0))).then(b.0.cmp(&a.0)));
    let Some((v, _)) = pick else {
        return Ok(true);
    };
    for c in 0..colors {
        if g.neighbors(v).iter().any(|&w| color[w] == c) {
            continue;
        }
        color[v] = c;
        if dsatur(g, colors, color, nodes, budget)? {
            return Ok(true);
        }
    }
    color[v] = usize::MAX;
    Ok(false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TournamentBalance {
    /// Every out-degree equals `k` (order `2k + 1`).
    Regular(usize),
    /// Out-degrees take two adjacent values.
    AlmostRegular,
    Irregular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TournamentClass {
    NotTournament,
    Tournament { order: usize, balance: TournamentBalance },
}

pub fn classify_tournament(d: &Digraph) -> TournamentClass {
    let n = d.n();
    if n == 0 || d.arc_count() != n * (n - 1) / 2 {
        return TournamentClass::NotTournament;
    }
    for u in 0..n {
        for v in u + 1..n {
            if d.has_arc(u, v) == d.has_arc(v, u) {
                return TournamentClass::NotTournament;
            }
        }
    }
    let degs = d.degree_profile().out_degrees;
    let lo = *degs.iter().min().expect("nonempty");
    let hi = *degs.iter().max().expect("nonempty");
    let balance = match hi - lo {
        0 => TournamentBalance::Regular(lo),
        1 => TournamentBalance::AlmostRegular,
        _ => TournamentBalance::Irregular,
    };
    TournamentClass::Tournament { order: n, balance }
}

pub fn is_regular_tournament(d: &Digraph, k: usize) -> bool {
    matches!(
        classify_tournament(d),
        TournamentClass::Tournament {
            balance: TournamentBalance::Regular(r),
            ..
        } if r == k
    )
}
