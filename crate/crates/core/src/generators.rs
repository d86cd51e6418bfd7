//! Instance generators: standard families, seeded random digraphs and
//! exhaustive enumeration of small labelled digraphs and tournaments.

use std::collections::{BTreeSet, HashSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::digraph::{Digraph, Graph};

/// The directed cycle `0 -> 1 -> ... -> n-1 -> 0`, `n >= 2`.
pub fn directed_cycle(n: usize) -> Digraph {
    assert!(n >= 2, "a directed cycle needs at least two vertices");
    circulant(n, &[1])
}

/// Circulant digraph with arcs `i -> i + s (mod n)` for each step `s`.
pub fn circulant(n: usize, steps: &[usize]) -> Digraph {
    let mut arcs = BTreeSet::new();
    for i in 0..n {
        for &s in steps {
            let j = (i + s) % n;
            assert!(j != i, "step {s} is a multiple of {n}");
            arcs.insert((i, j));
        }
    }
    Digraph::from_arc_set(n, &arcs)
}

/// Rotational tournament on `n` vertices.
///
/// For odd `n = 2r + 1` this is `i -> i+1, ..., i+r (mod n)`, which is
/// `r`-regular. For even `n` it is the odd one on `n + 1` vertices minus its
/// last vertex, so out-degrees are `n/2` or `n/2 - 1` (almost regular).
pub fn rotational_tournament(n: usize) -> Digraph {
    if n % 2 == 1 {
        let steps: Vec<usize> = (1..=n / 2).collect();
        if steps.is_empty() {
            return Digraph::empty(n);
        }
        circulant(n, &steps)
    } else {
        let big = rotational_tournament(n + 1);
        let keep: Vec<usize> = (0..n).collect();
        big.induced(&keep)
    }
}

/// Complete symmetric digraph: a digon on every pair.
pub fn complete_digraph(n: usize) -> Digraph {
    complete_graph(n).to_symmetric_digraph()
}

pub fn complete_graph(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("valid edges")
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid edges")
}

/// Star with centre 0 and `leaves` leaves.
pub fn star_graph(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid edges")
}

pub fn petersen_graph() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("valid edges")
}

/// Deterministic RNG used by every seeded generator in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random digraph where each ordered pair is an arc with probability `p`.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Digraph {
    let mut arcs = BTreeSet::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                arcs.insert((u, v));
            }
        }
    }
    Digraph::from_arc_set(n, &arcs)
}

/// Seeded corpus: `count` digraphs with `1..=max_n` vertices and arc
/// densities drawn from `{0.15, 0.3, 0.45, 0.6}`.
pub fn random_corpus(seed: u64, count: usize, max_n: usize) -> Vec<Digraph> {
    let mut rng = seeded_rng(seed);
    let densities = [0.15, 0.3, 0.45, 0.6];
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let p = densities[rng.gen_range(0..densities.len())];
            random_digraph(&mut rng, n, p)
        })
        .collect()
}

/// Random digraph in which every vertex has out-degree exactly `k`.
pub fn random_out_regular<R: Rng>(rng: &mut R, n: usize, k: usize) -> Digraph {
    assert!(k < n);
    let mut arcs = BTreeSet::new();
    for u in 0..n {
        let mut others: Vec<usize> = (0..n).filter(|&v| v != u).collect();
        for i in 0..k {
            let j = rng.gen_range(i..others.len());
            others.swap(i, j);
            arcs.insert((u, others[i]));
        }
    }
    Digraph::from_arc_set(n, &arcs)
}

fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect()
}

/// Every labelled digraph on `n` vertices (`2^(n(n-1))` of them).
pub fn all_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs = ordered_pairs(n);
    assert!(pairs.len() < 32, "too many digraphs to enumerate");
    (0u64..(1u64 << pairs.len())).map(move |mask| {
        let arcs: BTreeSet<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a)
            .collect();
        Digraph::from_arc_set(n, &arcs)
    })
}

/// Every labelled simple graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 32);
    (0u64..(1u64 << pairs.len())).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).expect("valid edges")
    })
}

/// Bitmask of a tournament: bit of pair `(u, v)`, `u < v`, is set iff `u -> v`.
fn tournament_from_bits(n: usize, bits: u64) -> Digraph {
    let mut arcs = BTreeSet::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits >> i & 1 == 1 {
                arcs.insert((u, v));
            } else {
                arcs.insert((v, u));
            }
            i += 1;
        }
    }
    Digraph::from_arc_set(n, &arcs)
}

fn tournament_bits(d: &Digraph, perm: &[usize]) -> u64 {
    // perm[new] = old
    let n = d.n();
    let mut bits = 0u64;
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if d.has_arc(perm[u], perm[v]) {
                bits |= 1 << i;
            }
            i += 1;
        }
    }
    bits
}

/// Canonical code of a tournament: the maximum bitmask over relabellings
/// that list vertices by non-increasing score.
fn canonical_tournament_code(d: &Digraph) -> u64 {
    let n = d.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(d.out_degree(v)));
    // blocks of equal score; permute within blocks only
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match blocks.last_mut() {
            Some(b) if d.out_degree(b[0]) == d.out_degree(v) => b.push(v),
            _ => blocks.push(vec![v]),
        }
    }
    let mut best = 0u64;
    let mut perm = Vec::with_capacity(n);
    block_perms(&blocks, 0, &mut perm, &mut |p| {
        best = best.max(tournament_bits(d, p));
    });
    best
}

fn block_perms(blocks: &[Vec<usize>], i: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if i == blocks.len() {
        f(acc);
        return;
    }
    let mut block = blocks[i].clone();
    permute(&mut block, 0, &mut |p| {
        let len = acc.len();
        acc.extend_from_slice(p);
        block_perms(blocks, i + 1, acc, f);
        acc.truncate(len);
    });
}

fn permute(items: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// One representative of every isomorphism class of tournaments on `n`
/// vertices (1, 1, 2, 4, 12, 56, 456 classes for n = 1..=7).
pub fn nonisomorphic_tournaments(n: usize) -> Vec<Digraph> {
    if n <= 1 {
        return vec![Digraph::empty(n)];
    }
    let smaller = nonisomorphic_tournaments(n - 1);
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for t in &smaller {
        for mask in 0u64..(1 << (n - 1)) {
            let mut arcs = t.arc_set();
            for u in 0..n - 1 {
                if mask >> u & 1 == 1 {
                    arcs.insert((n - 1, u));
                } else {
                    arcs.insert((u, n - 1));
                }
            }
            let d = Digraph::from_arc_set(n, &arcs);
            if seen.insert(canonical_tournament_code(&d)) {
                reps.push(d);
            }
        }
    }
    reps
}

/// Every labelled tournament on `n` vertices.
pub fn all_tournaments(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs = n * n.saturating_sub(1) / 2;
    assert!(pairs < 32);
    (0u64..(1 << pairs)).map(move |bits| tournament_from_bits(n, bits))
}
