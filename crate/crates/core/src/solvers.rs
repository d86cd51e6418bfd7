//! Constructive polynomial-time solvers. Every partition returned has been
//! re-checked by the matching certificate checker.
//!
//! Colour convention: "colour 1" of the constructions is part 0 and
//! "colour 2" is part 1.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::digraph::{Digraph, Graph};
use crate::partition::{check_all_reducing, check_max_reducing, Partition, Verdict};
use crate::structure::{
    brooks_coloring, find_even_cycle, greedy_degeneracy_coloring, is_regular_tournament,
    strong_components, BrooksOutcome, BudgetExceeded, EvenCycleSearch, DEFAULT_CYCLE_BUDGET,
};

/// Why no partition exists: an offending terminal strong component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    /// Sorted vertex ids of the terminal component.
    pub component: Vec<usize>,
    pub reason: ObstructionKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ObstructionKind {
    /// Non-trivial terminal component with no even directed cycle.
    NoEvenCycle,
    /// Terminal component with no even cycle where every vertex has
    /// out-degree `Δ⁺(D)`.
    NoEvenCycleAllMaximum,
    /// Terminal component that is a `k`-regular tournament.
    RegularTournament(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SolveOutcome {
    Partition(Partition),
    NonExistence(Obstruction),
}

impl SolveOutcome {
    pub fn partition(&self) -> Option<&Partition> {
        match self {
            SolveOutcome::Partition(p) => Some(p),
            SolveOutcome::NonExistence(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    /// A search budget ran out; existence was not decided.
    #[error("indeterminate: {0}")]
    Indeterminate(#[from] BudgetExceeded),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    /// A constructed partition failed its own checker.
    #[error("solver bug: constructed partition rejected ({0})")]
    Internal(String),
}

fn certify(verdict: Verdict, pi: Partition) -> Result<SolveOutcome, SolveError> {
    match verdict {
        Verdict::Valid => Ok(SolveOutcome::Partition(pi)),
        Verdict::Violation(v) => Err(SolveError::Internal(v.to_string())),
    }
}

/// Propagates colours backwards: each uncoloured in-neighbour of a coloured
/// vertex gets the opposite part. Queue seeded in ascending id order.
fn propagate(d: &Digraph, part: &mut [Option<usize>]) {
    let mut queue: VecDeque<usize> = (0..d.n()).filter(|&v| part[v].is_some()).collect();
    while let Some(u) = queue.pop_front() {
        let other = 1 - part[u].expect("queued vertices are coloured");
        for &w in d.in_neighbors(u) {
            if part[w].is_none() {
                part[w] = Some(other);
                queue.push_back(w);
            }
        }
    }
}

fn even_cycle_in(d: &Digraph, comp: &[usize], budget: u64) -> Result<Option<Vec<usize>>, BudgetExceeded> {
    let sub = d.induced(comp);
    Ok(match find_even_cycle(&sub, budget)? {
        EvenCycleSearch::Found(c) => Some(c.mapped(comp).0),
        EvenCycleSearch::NoneFound => None,
    })
}

fn color_cycle(cycle: &[usize], part: &mut [Option<usize>]) {
    for (i, &v) in cycle.iter().enumerate() {
        part[v] = Some(i % 2);
    }
}

fn finish(part: Vec<Option<usize>>) -> Partition {
    Partition::new(part.into_iter().map(|p| p.expect("every vertex coloured")).collect(), 2)
        .expect("two parts")
}

/// 1-all-out-degree-reducing 2-partition, or the terminal component that
/// rules it out.
pub fn solve_one_all_2partition(d: &Digraph) -> Result<SolveOutcome, SolveError> {
    solve_one_all_2partition_with_budget(d, DEFAULT_CYCLE_BUDGET)
}

pub fn solve_one_all_2partition_with_budget(d: &Digraph, budget: u64) -> Result<SolveOutcome, SolveError> {
    let report = strong_components(d);
    let mut part = vec![None; d.n()];
    for comp in report.terminal() {
        if comp.is_trivial() {
            part[comp.vertices[0]] = Some(0);
            continue;
        }
        match even_cycle_in(d, &comp.vertices, budget)? {
            Some(cycle) => color_cycle(&cycle, &mut part),
            None => {
                return Ok(SolveOutcome::NonExistence(Obstruction {
                    component: comp.vertices.clone(),
                    reason: ObstructionKind::NoEvenCycle,
                }))
            }
        }
    }
    propagate(d, &mut part);
    let pi = finish(part);
    certify(check_all_reducing(d, &pi, 1).expect("sizes match"), pi)
}

/// 1-max-out-degree-reducing 2-partition, or the terminal component that
/// rules it out.
///
/// In each terminal component a vertex of out-degree below `Δ⁺(D)` is
/// preferred over an even cycle, since it needs no cycle search.
pub fn solve_one_max_2partition(d: &Digraph) -> Result<SolveOutcome, SolveError> {
    solve_one_max_2partition_with_budget(d, DEFAULT_CYCLE_BUDGET)
}

pub fn solve_one_max_2partition_with_budget(d: &Digraph, budget: u64) -> Result<SolveOutcome, SolveError> {
    let delta = d.max_out_degree();
    if delta == 0 {
        // nothing to reduce: every part already has Δ⁺ = 0
        return Ok(SolveOutcome::Partition(Partition::new(vec![0; d.n()], 2).expect("two parts")));
    }
    let report = strong_components(d);
    let mut part = vec![None; d.n()];
    for comp in report.terminal() {
        if let Some(&z) = comp.vertices.iter().find(|&&v| d.out_degree(v) < delta) {
            part[z] = Some(0);
            continue;
        }
        let cycle = if comp.is_trivial() {
            None
        } else {
            even_cycle_in(d, &comp.vertices, budget)?
        };
        match cycle {
            Some(cycle) => color_cycle(&cycle, &mut part),
            None => {
                return Ok(SolveOutcome::NonExistence(Obstruction {
                    component: comp.vertices.clone(),
                    reason: ObstructionKind::NoEvenCycleAllMaximum,
                }))
            }
        }
    }
    propagate(d, &mut part);
    let pi = finish(part);
    certify(check_max_reducing(d, &pi, 1).expect("sizes match"), pi)
}

/// k-all-out-degree-reducing (2k+1)-partition; always exists.
///
/// Keeps the `min(k, d⁺(v))` smallest out-arcs of each vertex and colours
/// the underlying graph of the result along a degeneracy order.
pub fn solve_k_all_partition_2k_plus_1(d: &Digraph, k: usize) -> Result<Partition, SolveError> {
    if k == 0 {
        return Err(SolveError::Unsupported("k must be positive".into()));
    }
    let kept = d
        .vertices()
        .flat_map(|v| d.out_neighbors(v).iter().take(k).map(move |&w| (v.min(w), v.max(w))));
    let h = Graph::from_edges(d.n(), kept.collect::<BTreeSet<_>>()).expect("valid edges");
    let color = greedy_degeneracy_coloring(&h);
    let pi = Partition::new(color, 2 * k + 1).map_err(|e| SolveError::Internal(e.to_string()))?;
    match check_all_reducing(d, &pi, k).expect("sizes match") {
        Verdict::Valid => Ok(pi),
        Verdict::Violation(v) => Err(SolveError::Internal(v.to_string())),
    }
}

/// Terminal components that are `k`-regular tournaments, in id order.
pub fn regular_tournament_terminals(d: &Digraph, k: usize) -> Vec<Vec<usize>> {
    strong_components(d)
        .terminal()
        .filter(|c| c.vertices.len() == 2 * k + 1 && is_regular_tournament(&d.induced(&c.vertices), k))
        .map(|c| c.vertices.clone())
        .collect()
}

/// k-all-out-degree-reducing 2k-partition for `k >= 2`, or the terminal
/// `k`-regular tournament that rules it out.
///
/// Arc deletions (out-degree above `k`) come first, then vertices of
/// underlying degree at most `2k - 1` are peeled off; the 2k-regular rest
/// is Brooks-coloured per connected component, and peeled vertices are
/// reinserted in reverse order into a part none of their neighbours use.
pub fn solve_k_all_partition_2k(d: &Digraph, k: usize) -> Result<SolveOutcome, SolveError> {
    solve_k_all_partition_2k_with_budget(d, k, DEFAULT_CYCLE_BUDGET)
}

pub fn solve_k_all_partition_2k_with_budget(d: &Digraph, k: usize, budget: u64) -> Result<SolveOutcome, SolveError> {
    if k < 2 {
        return Err(SolveError::Unsupported(
            "the 2k-partition solver needs k >= 2; use the 2-partition solver for k = 1".into(),
        ));
    }
    if let Some(t) = regular_tournament_terminals(d, k).into_iter().next() {
        return Ok(SolveOutcome::NonExistence(Obstruction {
            component: t,
            reason: ObstructionKind::RegularTournament(k),
        }));
    }
    let n = d.n();

    // Case 1, repeated: delete x -> v while some d⁺(x) > k.
    let mut out: Vec<Vec<usize>> = d.vertices().map(|v| d.out_neighbors(v).to_vec()).collect();
    let mut arcs = d.arc_set();
    for x in 0..n {
        while out[x].len() > k {
            let v = out[x]
                .iter()
                .copied()
                .find(|&v| out[x].iter().any(|&u| arcs.contains(&(u, v))))
                .unwrap_or(out[x][0]);
            out[x].retain(|&w| w != v);
            arcs.remove(&(x, v));
        }
    }
    let g = Graph::from_edges(n, arcs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect::<BTreeSet<_>>())
        .expect("valid edges");

    // Case 2, repeated: peel vertices of degree <= 2k - 1.
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut peeled = Vec::new();
    while let Some(w) = (0..n).find(|&v| alive[v] && degree[v] < 2 * k) {
        alive[w] = false;
        peeled.push(w);
        for &u in g.neighbors(w) {
            if alive[u] {
                degree[u] -= 1;
            }
        }
    }

    // Case 3: what is left is 2k-regular.
    let mut part = vec![usize::MAX; n];
    let rest: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let core = g.induced(&rest);
    for comp in core.components() {
        let sub = core.induced(&comp);
        match brooks_coloring(&sub, budget).map_err(|e| match e {
            crate::structure::BrooksError::Budget(b) => SolveError::Indeterminate(b),
            other => SolveError::Internal(other.to_string()),
        })? {
            BrooksOutcome::Colored(c) => {
                for (i, &local) in comp.iter().enumerate() {
                    part[rest[local]] = c[i];
                }
            }
            BrooksOutcome::Inapplicable => {
                return Err(SolveError::Internal(
                    "2k-regular remainder is complete or an odd cycle".into(),
                ))
            }
        }
    }
    for &w in peeled.iter().rev() {
        let used: Vec<usize> = g.neighbors(w).iter().map(|&u| part[u]).collect();
        part[w] = (0..2 * k).find(|c| !used.contains(c)).expect("at most 2k-1 neighbours");
    }
    let pi = Partition::new(part, 2 * k).map_err(|e| SolveError::Internal(e.to_string()))?;
    certify(check_all_reducing(d, &pi, k).expect("sizes match"), pi)
}

/// 2-partition of an undirected graph where every vertex has at most half
/// of its neighbours in its own part. Local search on the cut.
pub fn halve_degrees_undirected(g: &Graph) -> Partition {
    let n = g.n();
    let mut part = vec![0usize; n];
    let inside = |part: &[usize], v: usize| g.neighbors(v).iter().filter(|&&w| part[w] == part[v]).count();
    while let Some(v) = (0..n).find(|&v| 2 * inside(&part, v) > g.degree(v)) {
        part[v] = 1 - part[v];
    }
    Partition::new(part, 2).expect("two parts")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, cycle_graph, directed_cycle, rotational_tournament};
    use crate::partition::Partition;

    fn qr5_with_tail() -> Digraph {
        let mut arcs = rotational_tournament(5).arc_set();
        arcs.insert((0, 5));
        Digraph::from_arcs(6, arcs).unwrap()
    }

    #[test]
    fn one_all_examples() {
        assert_eq!(
            solve_one_all_2partition(&directed_cycle(3)).unwrap(),
            SolveOutcome::NonExistence(Obstruction {
                component: vec![0, 1, 2],
                reason: ObstructionKind::NoEvenCycle
            })
        );
        let c4 = solve_one_all_2partition(&directed_cycle(4)).unwrap();
        assert_eq!(c4.partition().unwrap().parts(), &[0, 1, 0, 1]);
        let arc = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        let pi = solve_one_all_2partition(&arc).unwrap();
        assert_eq!(pi.partition().unwrap().parts(), &[1, 0]);
    }

    #[test]
    fn one_max_examples() {
        assert!(matches!(
            solve_one_max_2partition(&directed_cycle(3)).unwrap(),
            SolveOutcome::NonExistence(_)
        ));
        let arc = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        assert!(solve_one_max_2partition(&arc).unwrap().partition().is_some());
        let mut arcs = directed_cycle(3).arc_set();
        arcs.insert((0, 3));
        let d = Digraph::from_arcs(4, arcs).unwrap();
        assert!(solve_one_max_2partition(&d).unwrap().partition().is_some());
        assert!(solve_one_max_2partition(&Digraph::empty(3)).unwrap().partition().is_some());
    }

    #[test]
    fn two_k_plus_one_examples() {
        let pi = solve_k_all_partition_2k_plus_1(&directed_cycle(3), 1).unwrap();
        let mut parts = pi.parts().to_vec();
        parts.sort_unstable();
        assert_eq!(parts, vec![0, 1, 2]);
        solve_k_all_partition_2k_plus_1(&rotational_tournament(5), 2).unwrap();
        let pi = solve_k_all_partition_2k_plus_1(&Digraph::empty(4), 2).unwrap();
        assert_eq!(pi.parts(), &[0, 0, 0, 0]);
    }

    #[test]
    fn two_k_examples() {
        assert_eq!(
            solve_k_all_partition_2k(&rotational_tournament(5), 2).unwrap(),
            SolveOutcome::NonExistence(Obstruction {
                component: vec![0, 1, 2, 3, 4],
                reason: ObstructionKind::RegularTournament(2)
            })
        );
        assert!(solve_k_all_partition_2k(&qr5_with_tail(), 2).unwrap().partition().is_some());
        assert!(solve_k_all_partition_2k(&Digraph::empty(6), 2).unwrap().partition().is_some());
        assert!(matches!(
            solve_k_all_partition_2k(&directed_cycle(3), 1),
            Err(SolveError::Unsupported(_))
        ));
    }

    #[test]
    fn halving_examples() {
        let check = |g: &Graph, pi: &Partition| {
            (0..g.n()).all(|v| {
                2 * g.neighbors(v).iter().filter(|&&w| pi.part_of(w) == pi.part_of(v)).count() <= g.degree(v)
            })
        };
        let k4 = complete_graph(4);
        let pi = halve_degrees_undirected(&k4);
        assert!(check(&k4, &pi));
        assert_eq!(pi.members(0).len(), 2);
        let c4 = cycle_graph(4);
        let pi = halve_degrees_undirected(&c4);
        assert!(check(&c4, &pi));
        assert!(c4.edges().all(|(u, v)| pi.part_of(u) != pi.part_of(v)));
        assert!(check(&Graph::empty(3), &halve_degrees_undirected(&Graph::empty(3))));
    }
}
