//! Ground-truth engines. None of them use the solvers: partition searches
//! only consult the certificate checkers (plus monotone per-vertex caps for
//! pruning), so they can be used to test everything else.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::CnfFormula;
use crate::digraph::{Digraph, Graph};
use crate::partition::{
    check_all_reducing, check_delta_bounded, check_kernel, check_majority_2coloring, check_max_reducing,
    Partition, PartitionError, Verdict,
};
use crate::structure::BudgetExceeded;

/// Partition properties the oracles can search for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Property {
    AllReducing { k: usize },
    MaxReducing { k: usize },
    /// Ordered: part 0 capped at `k1`, part 1 at `k2`.
    DeltaBounded { k1: usize, k2: usize },
    Majority,
}

impl Property {
    /// Whether relabelling parts preserves validity.
    pub fn is_symmetric(&self) -> bool {
        match self {
            Property::DeltaBounded { k1, k2 } => k1 == k2,
            _ => true,
        }
    }

    fn fixed_part_count(&self) -> Option<usize> {
        match self {
            Property::DeltaBounded { .. } | Property::Majority => Some(2),
            _ => None,
        }
    }

    /// Largest number of out-neighbours `v` may keep in part `part`.
    fn cap(&self, d: &Digraph, delta: usize, v: usize, part: usize) -> usize {
        match *self {
            Property::AllReducing { k } => d.out_degree(v).saturating_sub(k),
            Property::MaxReducing { k } => delta.saturating_sub(k),
            Property::DeltaBounded { k1, k2 } => {
                if part == 0 {
                    k1
                } else {
                    k2
                }
            }
            Property::Majority => d.out_degree(v) / 2,
        }
    }

    pub fn check(&self, d: &Digraph, pi: &Partition) -> Result<Verdict, PartitionError> {
        match *self {
            Property::AllReducing { k } => check_all_reducing(d, pi, k),
            Property::MaxReducing { k } => check_max_reducing(d, pi, k),
            Property::DeltaBounded { k1, k2 } => check_delta_bounded(d, pi, k1, k2),
            Property::Majority => check_majority_2coloring(d, pi),
        }
    }
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Property::AllReducing { k } => write!(f, "all:{k}"),
            Property::MaxReducing { k } => write!(f, "max:{k}"),
            Property::DeltaBounded { k1, k2 } => write!(f, "delta:{k1},{k2}"),
            Property::Majority => write!(f, "majority"),
        }
    }
}

impl std::str::FromStr for Property {
    type Err = String;

    /// `all:K`, `max:K`, `delta:K1,K2` or `majority`.
    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad number `{t}` in `{s}`"));
        match s.split_once(':') {
            Some(("all", k)) => Ok(Property::AllReducing { k: num(k)? }),
            Some(("max", k)) => Ok(Property::MaxReducing { k: num(k)? }),
            Some(("delta", ks)) => {
                let (a, b) = ks.split_once(',').ok_or_else(|| format!("expected delta:K1,K2, got `{s}`"))?;
                Ok(Property::DeltaBounded {
                    k1: num(a)?,
                    k2: num(b)?,
                })
            }
            None if s == "majority" => Ok(Property::Majority),
            _ => Err(format!("unknown property `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
}

/// Resource limits for a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum assignments (exhaustive) or search nodes (backtracking).
    pub budget: u64,
    /// Worker threads for the exhaustive engine; 1 means sequential.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: 50_000_000,
            jobs: 1,
        }
    }
}

fn validate_query(prop: Property, p: usize) -> Result<(), OracleError> {
    if p == 0 {
        return Err(OracleError::InvalidQuery("p must be positive".into()));
    }
    if let Some(fixed) = prop.fixed_part_count() {
        if p != fixed {
            return Err(OracleError::InvalidQuery(format!("{prop} needs p = {fixed}, got {p}")));
        }
    }
    Ok(())
}

fn decode(mut index: u64, n: usize, p: usize, pinned: bool) -> Vec<usize> {
    let mut parts = vec![0; n];
    let free = if pinned { 1 } else { 0 };
    for v in (free..n).rev() {
        parts[v] = (index % p as u64) as usize;
        index /= p as u64;
    }
    parts
}

/// Tries every assignment in lexicographic order (vertex 0 most
/// significant) and returns the first one the checker accepts.
///
/// For part-symmetric properties vertex 0 is pinned to part 0. With
/// `jobs > 1` the index range is searched in parallel; the result is still
/// the lexicographically least witness.
pub fn exhaustive_partition_search(
    d: &Digraph,
    prop: Property,
    p: usize,
    opts: SearchOptions,
) -> Result<Option<Partition>, OracleError> {
    validate_query(prop, p)?;
    let n = d.n();
    let pinned = prop.is_symmetric() && n > 0;
    let free = n - usize::from(pinned);
    let total = (p as u64)
        .checked_pow(free as u32)
        .filter(|&t| t <= opts.budget)
        .ok_or(BudgetExceeded(opts.budget))?;
    let valid = |index: u64| {
        let pi = Partition::new(decode(index, n, p, pinned), p).expect("parts in range");
        prop.check(d, &pi).expect("query validated").is_valid()
    };
    let found = if opts.jobs <= 1 {
        (0..total).find(|&i| valid(i))
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| OracleError::InvalidQuery(e.to_string()))?;
        pool.install(|| (0..total).into_par_iter().find_first(|&i| valid(i)))
    };
    Ok(found.map(|i| Partition::new(decode(i, n, p, pinned), p).expect("parts in range")))
}

/// Same answer as [`exhaustive_partition_search`] (the lexicographically
/// least witness), found by backtracking in vertex order.
///
/// A branch is cut as soon as some vertex has more same-part
/// out-neighbours among assigned vertices than its cap allows; the counts
/// only grow, so this never loses a witness. For part-symmetric properties
/// only assignments where each new part index is at most one above the
/// largest used so far are explored.
pub fn pruned_partition_search(
    d: &Digraph,
    prop: Property,
    p: usize,
    opts: SearchOptions,
) -> Result<Option<Partition>, OracleError> {
    validate_query(prop, p)?;
    let mut s = Pruned {
        d,
        prop,
        p,
        delta: d.max_out_degree(),
        parts: vec![usize::MAX; d.n()],
        inner: vec![0; d.n()],
        nodes: 0,
        budget: opts.budget,
    };
    if s.descend(0, 0)? {
        let pi = Partition::new(s.parts, p).expect("parts in range");
        if !prop.check(d, &pi).expect("query validated").is_valid() {
            return Err(OracleError::InvalidQuery("pruned search produced an invalid witness".into()));
        }
        Ok(Some(pi))
    } else {
        Ok(None)
    }
}

struct Pruned<'a> {
    d: &'a Digraph,
    prop: Property,
    p: usize,
    delta: usize,
    parts: Vec<usize>,
    inner: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Pruned<'_> {
    fn descend(&mut self, v: usize, used: usize) -> Result<bool, BudgetExceeded> {
        if v == self.d.n() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BudgetExceeded(self.budget));
        }
        let limit = if self.prop.is_symmetric() {
            self.p.min(used + 1)
        } else {
            self.p
        };
        for c in 0..limit {
            if self.place(v, c) && self.descend(v + 1, used.max(c + 1))? {
                return Ok(true);
            }
            self.unplace(v, c);
        }
        Ok(false)
    }

    /// Assigns `v` to `c`, updating counts; false if some cap breaks.
    /// Counts are updated even on failure so `unplace` can undo uniformly.
    fn place(&mut self, v: usize, c: usize) -> bool {
        self.parts[v] = c;
        let mut ok = true;
        for &w in self.d.out_neighbors(v) {
            if self.parts[w] == c {
                self.inner[v] += 1;
            }
        }
        if self.inner[v] > self.prop.cap(self.d, self.delta, v, c) {
            ok = false;
        }
        for &u in self.d.in_neighbors(v) {
            if self.parts[u] == c {
                self.inner[u] += 1;
                if self.inner[u] > self.prop.cap(self.d, self.delta, u, c) {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unplace(&mut self, v: usize, c: usize) {
        for &u in self.d.in_neighbors(v) {
            if self.parts[u] == c {
                self.inner[u] -= 1;
            }
        }
        self.inner[v] = 0;
        self.parts[v] = usize::MAX;
    }
}

/// Calls `f` on every `size`-subset of `items`.
fn for_each_subset(items: &[usize], size: usize, f: &mut impl FnMut(&[usize])) {
    fn go(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, size, i + 1, cur, f);
            cur.pop();
        }
    }
    go(items, size, 0, &mut Vec::new(), f);
}

/// Decides a partition query with a CDCL solver.
///
/// Each vertex gets one indicator per part (exactly one true). A cap `c`
/// on `v` in part `q` becomes one clause per `(c+1)`-subset of the
/// out-neighbours, forbidding all of them in `q` together with `v`. The
/// encoding reads only the caps, never how the digraph was built, so it
/// handles large gadget-based instances where plain backtracking stalls.
/// `opts.budget` bounds the number of clauses. The returned witness is
/// re-checked but is not necessarily the lexicographically least one.
pub fn sat_partition_search(
    d: &Digraph,
    prop: Property,
    p: usize,
    opts: SearchOptions,
) -> Result<Option<Partition>, OracleError> {
    use varisat::{ExtendFormula, Lit, Solver};
    validate_query(prop, p)?;
    let delta = d.max_out_degree();
    let mut solver = Solver::new();
    let x: Vec<Vec<Lit>> = d.vertices().map(|_| (0..p).map(|_| solver.new_lit()).collect()).collect();
    let mut clauses: u64 = 0;
    let mut budget_hit = false;
    let mut add = |solver: &mut Solver, clause: &[Lit]| {
        clauses += 1;
        if clauses > opts.budget {
            budget_hit = true;
        } else {
            solver.add_clause(clause);
        }
    };
    for v in d.vertices() {
        add(&mut solver, &x[v]);
        for a in 0..p {
            for b in a + 1..p {
                add(&mut solver, &[!x[v][a], !x[v][b]]);
            }
        }
    }
    if prop.is_symmetric() && d.n() > 0 {
        add(&mut solver, &[x[0][0]]);
    }
    for v in d.vertices() {
        let out: Vec<usize> = d.out_neighbors(v).to_vec();
        for q in 0..p {
            let cap = prop.cap(d, delta, v, q);
            if cap >= out.len() {
                continue;
            }
            for_each_subset(&out, cap + 1, &mut |s: &[usize]| {
                let mut clause = vec![!x[v][q]];
                clause.extend(s.iter().map(|&w| !x[w][q]));
                add(&mut solver, &clause);
            });
        }
    }
    if budget_hit {
        return Err(BudgetExceeded(opts.budget).into());
    }
    let sat = solver
        .solve()
        .map_err(|e| OracleError::InvalidQuery(format!("solver failure: {e}")))?;
    if !sat {
        return Ok(None);
    }
    let model = solver.model().expect("model after sat");
    let truth: std::collections::HashSet<Lit> = model.into_iter().collect();
    let parts = x
        .iter()
        .map(|lits| lits.iter().position(|l| truth.contains(l)).expect("one part per vertex"))
        .collect();
    let pi = Partition::new(parts, p).expect("parts in range");
    if !prop.check(d, &pi).expect("query validated").is_valid() {
        return Err(OracleError::InvalidQuery("solver produced an invalid witness".into()));
    }
    Ok(Some(pi))
}

/// Kernel existence through a CDCL solver: independence is one clause per
/// arc, absorption one clause per vertex. Returns some kernel, re-checked.
pub fn sat_kernel_search(d: &Digraph) -> Result<Option<Vec<usize>>, OracleError> {
    use varisat::{ExtendFormula, Lit, Solver};
    let mut solver = Solver::new();
    let x: Vec<Lit> = d.vertices().map(|_| solver.new_lit()).collect();
    for (u, v) in d.arcs() {
        solver.add_clause(&[!x[u], !x[v]]);
    }
    for v in d.vertices() {
        let mut clause = vec![x[v]];
        clause.extend(d.out_neighbors(v).iter().map(|&w| x[w]));
        solver.add_clause(&clause);
    }
    let sat = solver
        .solve()
        .map_err(|e| OracleError::InvalidQuery(format!("solver failure: {e}")))?;
    if !sat {
        return Ok(None);
    }
    let truth: std::collections::HashSet<Lit> = solver.model().expect("model after sat").into_iter().collect();
    let kernel: Vec<usize> = d.vertices().filter(|&v| truth.contains(&x[v])).collect();
    if !check_kernel(d, &kernel).expect("ids in range").is_valid() {
        return Err(OracleError::InvalidQuery("solver produced an invalid kernel".into()));
    }
    Ok(Some(kernel))
}

/// Lexicographically least kernel, or `None` when the digraph has none.
pub fn kernel_search(d: &Digraph) -> Option<Vec<usize>> {
    kernel_search_with_budget(d, u64::MAX).expect("unbounded search")
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Open,
    In,
    Out,
}

/// Backtracking kernel search with independence and domination
/// propagation: choosing `v` forces its neighbours out, and an outside
/// vertex with a single open out-neighbour forces that neighbour in.
pub fn kernel_search_with_budget(d: &Digraph, budget: u64) -> Result<Option<Vec<usize>>, BudgetExceeded> {
    let mut s = KernelSearch {
        d,
        slot: vec![Slot::Open; d.n()],
        trail: Vec::new(),
        nodes: 0,
        budget,
    };
    if s.descend(0)? {
        let k: Vec<usize> = (0..d.n()).filter(|&v| s.slot[v] == Slot::In).collect();
        assert!(check_kernel(d, &k).expect("ids in range").is_valid(), "kernel search produced a non-kernel");
        Ok(Some(k))
    } else {
        Ok(None)
    }
}

struct KernelSearch<'a> {
    d: &'a Digraph,
    slot: Vec<Slot>,
    trail: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl KernelSearch<'_> {
    fn descend(&mut self, from: usize) -> Result<bool, BudgetExceeded> {
        let Some(v) = (from..self.d.n()).find(|&v| self.slot[v] == Slot::Open) else {
            return Ok(true);
        };
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BudgetExceeded(self.budget));
        }
        for choice in [Slot::In, Slot::Out] {
            let mark = self.trail.len();
            if self.assign(v, choice) && self.descend(v + 1)? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail entry");
            self.slot[v] = Slot::Open;
        }
    }

    /// Sets `v` and propagates; false on contradiction.
    fn assign(&mut self, v: usize, value: Slot) -> bool {
        let mut queue = vec![(v, value)];
        while let Some((v, value)) = queue.pop() {
            match self.slot[v] {
                Slot::Open => {}
                s if s == value => continue,
                _ => return false,
            }
            self.slot[v] = value;
            self.trail.push(v);
            let d = self.d;
            match value {
                Slot::In => {
                    for &w in d.out_neighbors(v).iter().chain(d.in_neighbors(v)) {
                        match self.slot[w] {
                            Slot::In => return false,
                            Slot::Open => queue.push((w, Slot::Out)),
                            Slot::Out => {}
                        }
                    }
                }
                Slot::Out => {
                    for &u in std::iter::once(&v).chain(d.in_neighbors(v)) {
                        if self.slot[u] != Slot::Out {
                            continue;
                        }
                        if d.out_neighbors(u).iter().any(|&w| self.slot[w] == Slot::In) {
                            continue;
                        }
                        let mut open = d.out_neighbors(u).iter().filter(|&&w| self.slot[w] == Slot::Open);
                        match (open.next(), open.next()) {
                            (None, _) => return false,
                            (Some(&w), None) => queue.push((w, Slot::In)),
                            _ => {}
                        }
                    }
                }
                Slot::Open => unreachable!(),
            }
        }
        true
    }
}

/// Every kernel, by subset enumeration (small digraphs only).
pub fn all_kernels(d: &Digraph) -> Vec<Vec<usize>> {
    assert!(d.n() <= 24, "all_kernels enumerates 2^n subsets");
    (0u32..1 << d.n())
        .map(|m| (0..d.n()).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|k| check_kernel(d, k).expect("ids in range").is_valid())
        .collect()
}

/// Largest formula `sat_brute_force` accepts.
pub const SAT_MAX_VARS: usize = 24;

/// First satisfying assignment in counting order (bit `i` of the counter
/// is variable `i`), respecting the formula's mode.
pub fn sat_brute_force(f: &CnfFormula) -> Result<Option<Vec<bool>>, OracleError> {
    if f.num_vars > SAT_MAX_VARS {
        return Err(OracleError::InvalidQuery(format!(
            "{} variables exceed the brute-force limit of {SAT_MAX_VARS}",
            f.num_vars
        )));
    }
    Ok((0u32..1 << f.num_vars)
        .map(|m| (0..f.num_vars).map(|i| m >> i & 1 == 1).collect::<Vec<bool>>())
        .find(|a| f.is_satisfied_by(a)))
}

/// Lexicographically least proper colouring with colours `0..p`.
pub fn coloring_brute_force(g: &Graph, p: usize, budget: u64) -> Result<Option<Vec<usize>>, BudgetExceeded> {
    fn go(g: &Graph, p: usize, v: usize, color: &mut Vec<usize>, nodes: &mut u64, budget: u64) -> Result<bool, BudgetExceeded> {
        if v == g.n() {
            return Ok(true);
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(BudgetExceeded(budget));
        }
        for c in 0..p {
            if g.neighbors(v).iter().all(|&w| w > v || color[w] != c) {
                color[v] = c;
                if go(g, p, v + 1, color, nodes, budget)? {
                    return Ok(true);
                }
            }
        }
        color[v] = usize::MAX;
        Ok(false)
    }
    let mut color = vec![usize::MAX; g.n()];
    let mut nodes = 0;
    Ok(go(g, p, 0, &mut color, &mut nodes, budget)?.then_some(color))
}

/// Every proper colouring with colours `0..p` (small graphs only).
pub fn all_colorings(g: &Graph, p: usize) -> Vec<Vec<usize>> {
    fn go(g: &Graph, p: usize, v: usize, color: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v == g.n() {
            out.push(color.clone());
            return;
        }
        for c in 0..p {
            if g.neighbors(v).iter().all(|&w| w > v || color[w] != c) {
                color[v] = c;
                go(g, p, v + 1, color, out);
            }
        }
    }
    let mut out = Vec::new();
    go(g, p, 0, &mut vec![usize::MAX; g.n()], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{parse_dimacs, FormulaMode};
    use crate::generators::{all_digraphs, complete_graph, cycle_graph, directed_cycle, random_corpus, rotational_tournament};

    const OPTS: SearchOptions = SearchOptions {
        budget: 1 << 24,
        jobs: 1,
    };

    #[test]
    fn partition_search_examples() {
        let all1 = Property::AllReducing { k: 1 };
        assert_eq!(exhaustive_partition_search(&directed_cycle(3), all1, 2, OPTS).unwrap(), None);
        let w = exhaustive_partition_search(&directed_cycle(4), all1, 2, OPTS).unwrap().unwrap();
        assert_eq!(w.parts(), &[0, 1, 0, 1]);
        let all2 = Property::AllReducing { k: 2 };
        assert_eq!(exhaustive_partition_search(&rotational_tournament(5), all2, 4, OPTS).unwrap(), None);
        assert_eq!(pruned_partition_search(&rotational_tournament(5), all2, 4, OPTS).unwrap(), None);
    }

    #[test]
    fn budget_is_not_none() {
        let tiny = SearchOptions { budget: 3, jobs: 1 };
        let d = directed_cycle(6);
        let prop = Property::AllReducing { k: 1 };
        assert!(matches!(exhaustive_partition_search(&d, prop, 2, tiny), Err(OracleError::Budget(_))));
        assert!(matches!(pruned_partition_search(&d, prop, 2, tiny), Err(OracleError::Budget(_))));
    }

    #[test]
    fn pruned_and_parallel_agree_with_exhaustive() {
        let props = [
            (Property::AllReducing { k: 1 }, 2),
            (Property::MaxReducing { k: 1 }, 2),
            (Property::AllReducing { k: 2 }, 3),
            (Property::DeltaBounded { k1: 0, k2: 1 }, 2),
            (Property::DeltaBounded { k1: 1, k2: 1 }, 2),
            (Property::Majority, 2),
        ];
        let par = SearchOptions { jobs: 3, ..OPTS };
        for d in random_corpus(11, 60, 7) {
            for &(prop, p) in &props {
                let a = exhaustive_partition_search(&d, prop, p, OPTS).unwrap();
                assert_eq!(pruned_partition_search(&d, prop, p, OPTS).unwrap(), a, "{prop} on {d:?}");
                assert_eq!(exhaustive_partition_search(&d, prop, p, par).unwrap(), a);
                let cdcl = sat_partition_search(&d, prop, p, OPTS).unwrap();
                assert_eq!(cdcl.is_some(), a.is_some(), "{prop} on {d:?}");
            }
        }
    }

    #[test]
    fn delta_needs_two_parts() {
        let r = exhaustive_partition_search(&directed_cycle(3), Property::DeltaBounded { k1: 0, k2: 1 }, 3, OPTS);
        assert!(matches!(r, Err(OracleError::InvalidQuery(_))));
    }

    #[test]
    fn property_round_trip() {
        for s in ["all:1", "max:2", "delta:0,1", "majority"] {
            assert_eq!(s.parse::<Property>().unwrap().to_string(), s);
        }
        assert!("delta:1".parse::<Property>().is_err());
    }

    #[test]
    fn kernel_examples() {
        let digon = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(kernel_search(&digon), Some(vec![0]));
        assert_eq!(kernel_search(&directed_cycle(3)), None);
        assert_eq!(kernel_search(&directed_cycle(4)), Some(vec![0, 2]));
    }

    #[test]
    fn kernel_search_matches_enumeration() {
        for d in all_digraphs(3).chain(random_corpus(5, 200, 8)) {
            let all = all_kernels(&d);
            assert_eq!(sat_kernel_search(&d).unwrap().is_some(), !all.is_empty());
            assert_eq!(kernel_search(&d), all.into_iter().min(), "{d:?}");
        }
    }

    #[test]
    fn sat_examples() {
        let f = parse_dimacs("p cnf 1 1\n1 1 1 0", FormulaMode::Plain3Sat).unwrap();
        assert_eq!(sat_brute_force(&f).unwrap(), Some(vec![true]));
        let nae = parse_dimacs("p cnf 3 1\n1 2 3 0", FormulaMode::MonotoneNae).unwrap();
        assert_eq!(sat_brute_force(&nae).unwrap(), Some(vec![true, false, false]));
        let same = parse_dimacs("p cnf 1 1\n1 1 1 0", FormulaMode::MonotoneNae).unwrap();
        assert_eq!(sat_brute_force(&same).unwrap(), None);
    }

    #[test]
    fn coloring_examples() {
        assert!(coloring_brute_force(&complete_graph(3), 3, 1000).unwrap().is_some());
        assert_eq!(coloring_brute_force(&complete_graph(4), 3, 1000).unwrap(), None);
        assert_eq!(coloring_brute_force(&cycle_graph(5), 2, 1000).unwrap(), None);
        assert_eq!(all_colorings(&complete_graph(3), 3).len(), 6);
    }
}
