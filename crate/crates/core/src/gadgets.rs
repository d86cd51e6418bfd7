//! Gadget constructions, the regularization transform and the search for
//! even-cycle-free out-regular seed digraphs.
//!
//! Every constructor validates its arc inventory against a declarative
//! table of [`ArcRule`]s before returning.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::digraph::Digraph;
use crate::generators::{circulant, directed_cycle, rotational_tournament};
use crate::structure::{find_even_cycle, BudgetExceeded, EvenCycleSearch, DEFAULT_CYCLE_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("seed digraph rejected: {0}")]
    UncertifiedSeed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("vertex {0} is not in the host digraph")]
    UnknownVertex(usize),
    #[error("no {k}-out-regular even-cycle-free strong digraph found with at most {max_n} vertices")]
    NotFound { k: usize, max_n: usize },
    #[error("arc inventory mismatch: {0}")]
    Inventory(String),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// A constructed gadget with named vertex roles. Roles partition the
/// vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetInstance {
    #[serde(skip)]
    pub digraph: Digraph,
    pub roles: BTreeMap<String, Vec<usize>>,
}

impl GadgetInstance {
    pub fn role(&self, name: &str) -> &[usize] {
        self.roles.get(name).map_or(&[], Vec::as_slice)
    }

    /// The single vertex of a one-vertex role.
    pub fn vertex(&self, name: &str) -> usize {
        match self.role(name) {
            [v] => *v,
            other => panic!("role `{name}` has {} vertices", other.len()),
        }
    }

    pub fn roles_json(&self) -> String {
        serde_json::to_string_pretty(&self.roles).expect("roles serialize")
    }

    fn validate(&self, rules: &[ArcRule]) -> Result<(), GadgetError> {
        check_roles_partition(self.digraph.n(), &self.roles)?;
        self.validate_arcs(rules)
    }

    /// Arc inventory only; rules may refer to overlay roles.
    fn validate_arcs(&self, rules: &[ArcRule]) -> Result<(), GadgetError> {
        let mut expected = BTreeSet::new();
        let mut removed = BTreeSet::new();
        for rule in rules {
            match rule {
                ArcRule::All(from, to) => {
                    for &u in self.role(from) {
                        for &v in self.role(to) {
                            if u != v {
                                expected.insert((u, v));
                            }
                        }
                    }
                }
                ArcRule::Except(from, to) => {
                    removed.insert((self.vertex(from), self.vertex(to)));
                }
                ArcRule::Seed(role, seed) => {
                    let ids = self.role(role);
                    if ids.len() != seed.n() {
                        return Err(GadgetError::Inventory(format!("role `{role}` does not match its seed")));
                    }
                    expected.extend(seed.arcs().map(|(a, b)| (ids[a], ids[b])));
                }
            }
        }
        let expected: BTreeSet<_> = expected.difference(&removed).copied().collect();
        let actual = self.digraph.arc_set();
        if expected != actual {
            let missing: Vec<_> = expected.difference(&actual).take(5).collect();
            let extra: Vec<_> = actual.difference(&expected).take(5).collect();
            return Err(GadgetError::Inventory(format!("missing {missing:?}, unexpected {extra:?}")));
        }
        Ok(())
    }
}

fn check_roles_partition(n: usize, roles: &BTreeMap<String, Vec<usize>>) -> Result<(), GadgetError> {
    let mut seen = vec![false; n];
    for (name, ids) in roles {
        for &v in ids {
            if v >= n || seen[v] {
                return Err(GadgetError::Inventory(format!("role `{name}` repeats or overflows vertex {v}")));
            }
            seen[v] = true;
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(v) => Err(GadgetError::Inventory(format!("vertex {v} has no role"))),
        None => Ok(()),
    }
}

/// Declarative arc inventory entries.
#[derive(Debug, Clone)]
pub enum ArcRule<'a> {
    /// Every arc from a vertex of the first role to one of the second.
    All(&'a str, &'a str),
    /// Removes the arc between two single-vertex roles.
    Except(&'a str, &'a str),
    /// Arcs of a seed digraph, mapped onto the role's vertices in order.
    Seed(&'a str, &'a Digraph),
}

/// Where a connector was glued, for witness extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectorPlacement {
    pub x: usize,
    pub y: usize,
    pub i: usize,
    pub p: usize,
    pub t: Vec<usize>,
    /// `U` minus its distinguished vertex `u`.
    pub u_rest: Vec<usize>,
    pub u: usize,
    /// `U'` minus its distinguished vertex `u'`.
    pub u_prime_rest: Vec<usize>,
    pub u_prime: usize,
    pub s: usize,
}

impl ConnectorPlacement {
    /// Extends a 2-partition known on `x` to the connector: `U` and `s`
    /// join the part of `x`, `T` and `U'` the other one.
    pub fn extend(&self, parts: &mut [usize]) {
        let same = parts[self.x];
        let other = 1 - same;
        for &v in self.u_rest.iter().chain([&self.u, &self.s]) {
            parts[v] = same;
        }
        for &v in self.t.iter().chain(&self.u_prime_rest).chain([&self.u_prime]) {
            parts[v] = other;
        }
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut all = self.t.clone();
        all.extend(&self.u_rest);
        all.push(self.u);
        all.extend(&self.u_prime_rest);
        all.push(self.u_prime);
        all.push(self.s);
        all
    }
}

/// Incremental digraph construction with one role per vertex.
#[derive(Debug, Clone, Default)]
pub struct Builder {
    arcs: BTreeSet<(usize, usize)>,
    role_of: Vec<String>,
    pub connectors: Vec<ConnectorPlacement>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn n(&self) -> usize {
        self.role_of.len()
    }

    pub fn vertex(&mut self, role: impl Into<String>) -> usize {
        self.role_of.push(role.into());
        self.role_of.len() - 1
    }

    pub fn vertices(&mut self, role: &str, count: usize) -> Vec<usize> {
        (0..count).map(|_| self.vertex(role)).collect()
    }

    pub fn arc(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n() && v < self.n(), "bad arc {u}->{v}");
        self.arcs.insert((u, v));
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.arcs.range((u, 0)..(u + 1, 0)).count()
    }

    pub fn set_role(&mut self, v: usize, role: impl Into<String>) {
        self.role_of[v] = role.into();
    }

    /// Adds a disjoint copy of `seed`; returns the new ids in seed order.
    pub fn embed(&mut self, seed: &Digraph, role: &str) -> Vec<usize> {
        let ids = self.vertices(role, seed.n());
        for (a, b) in seed.arcs() {
            self.arc(ids[a], ids[b]);
        }
        ids
    }

    /// Glues an `(x,y)-(i,p)`-connector; new vertices get roles
    /// `{label}.T`, `{label}.U`, `{label}.u`, `{label}.U'`, `{label}.u'`
    /// and `{label}.s`.
    pub fn connector(&mut self, x: usize, y: usize, i: usize, p: usize, label: &str) -> ConnectorPlacement {
        assert!(i >= 1 && p >= 1, "connector parameters must be positive");
        let t = self.vertices(&format!("{label}.T"), i);
        let u = self.vertex(format!("{label}.u"));
        let u_rest = self.vertices(&format!("{label}.U"), p - 1);
        let u_prime = self.vertex(format!("{label}.u'"));
        let u_prime_rest = self.vertices(&format!("{label}.U'"), p - 1);
        let s = self.vertex(format!("{label}.s"));
        let all_u: Vec<usize> = std::iter::once(u).chain(u_rest.iter().copied()).collect();
        let all_up: Vec<usize> = std::iter::once(u_prime).chain(u_prime_rest.iter().copied()).collect();
        for &tv in &t {
            self.arc(x, tv);
            for &uv in &all_u {
                self.arc(tv, uv);
            }
        }
        for &a in &all_u {
            for &b in &all_up {
                self.arc(a, b);
                if !(a == u && b == u_prime) {
                    self.arc(b, a);
                }
            }
        }
        for &b in &u_prime_rest {
            self.arc(s, b);
        }
        self.arc(u_prime, s);
        self.arc(s, y);
        let placement = ConnectorPlacement {
            x,
            y,
            i,
            p,
            t,
            u_rest,
            u,
            u_prime_rest,
            u_prime,
            s,
        };
        self.connectors.push(placement.clone());
        placement
    }

    pub fn roles(&self) -> BTreeMap<String, Vec<usize>> {
        let mut roles: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (v, r) in self.role_of.iter().enumerate() {
            roles.entry(r.clone()).or_default().push(v);
        }
        roles
    }

    pub fn digraph(&self) -> Digraph {
        Digraph::from_arc_set(self.n(), &self.arcs)
    }

    pub fn instance(&self) -> GadgetInstance {
        GadgetInstance {
            digraph: self.digraph(),
            roles: self.roles(),
        }
    }
}

fn positive(name: &str, value: usize) -> Result<(), GadgetError> {
    if value == 0 {
        return Err(GadgetError::InvalidParameter(format!("{name} must be positive")));
    }
    Ok(())
}

/// The `(x,y)-(i,p)`-connector on `i + 2p + 3` vertices.
///
/// Roles: `x`, `y`, `s`, `T`, `u`, `u'`, and `U`, `U'` for the remaining
/// `p - 1` vertices of each side. `u` and `u'` are the smallest ids of
/// their sides.
pub fn make_connector(i: usize, p: usize) -> Result<GadgetInstance, GadgetError> {
    positive("i", i)?;
    positive("p", p)?;
    let mut b = Builder::new();
    let x = b.vertex("x");
    let y = b.vertex("y");
    b.connector(x, y, i, p, "c");
    let mut g = b.instance();
    g.roles = g
        .roles
        .into_iter()
        .map(|(k, v)| (k.strip_prefix("c.").unwrap_or(&k).to_string(), v))
        .collect();
    g.validate(&[
        ArcRule::All("x", "T"),
        ArcRule::All("T", "U"),
        ArcRule::All("T", "u"),
        ArcRule::All("U", "U'"),
        ArcRule::All("U", "u'"),
        ArcRule::All("u", "U'"),
        ArcRule::All("u", "u'"),
        ArcRule::All("U'", "U"),
        ArcRule::All("U'", "u"),
        ArcRule::All("u'", "U"),
        ArcRule::All("s", "U'"),
        ArcRule::All("u'", "s"),
        ArcRule::All("s", "y"),
    ])?;
    Ok(g)
}

/// Glues an `(x,y)-(i,p)`-connector onto a copy of `d`. Original vertices
/// keep their ids.
pub fn attach_connector(
    d: &Digraph,
    x: usize,
    y: usize,
    i: usize,
    p: usize,
) -> Result<(Digraph, ConnectorPlacement), GadgetError> {
    positive("i", i)?;
    positive("p", p)?;
    for v in [x, y] {
        if v >= d.n() {
            return Err(GadgetError::UnknownVertex(v));
        }
    }
    let mut b = host_builder(d);
    let placement = b.connector(x, y, i, p, "connector");
    Ok((b.digraph(), placement))
}

/// Builder preloaded with a host digraph, roles `host`.
pub fn host_builder(d: &Digraph) -> Builder {
    let mut b = Builder::new();
    let ids = b.vertices("host", d.n());
    for (u, v) in d.arcs() {
        b.arc(ids[u], ids[v]);
    }
    b
}

/// How [`regularize`] makes a digraph strong and out-regular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegularizeMode {
    /// A cycle of connectors through all vertices; preserves
    /// `(Δ⁺≤k1, Δ⁺≤k2)`-partitions for `k1 >= 1`.
    ConnectorCycle,
    /// A binary out-tree over the vertices with connectors back along
    /// every tree arc; preserves `(Δ⁺≤0, Δ⁺≤k2)`-partitions.
    KernelTree,
}

#[derive(Debug, Clone)]
pub struct Regularized {
    pub digraph: Digraph,
    pub connectors: Vec<ConnectorPlacement>,
    /// Tree vertices (root first) in kernel-tree mode.
    pub tree: Vec<usize>,
    pub roles: BTreeMap<String, Vec<usize>>,
}

impl Regularized {
    /// Extends a 2-partition of the original digraph; tree vertices go to
    /// part 1.
    pub fn extend_partition(&self, original: &[usize]) -> Vec<usize> {
        let mut parts = vec![usize::MAX; self.digraph.n()];
        parts[..original.len()].copy_from_slice(original);
        for &t in &self.tree {
            parts[t] = 1;
        }
        for c in &self.connectors {
            c.extend(&mut parts);
        }
        parts
    }
}

/// Embeds `d` (with `Δ⁺(d) <= p`) into a strong `(p+1)`-out-regular
/// digraph. Original vertices keep their ids and induce `d`.
pub fn regularize(d: &Digraph, p: usize, mode: RegularizeMode) -> Result<Regularized, GadgetError> {
    if d.n() == 0 {
        return Err(GadgetError::InvalidParameter("digraph must be nonempty".into()));
    }
    if d.max_out_degree() > p {
        return Err(GadgetError::InvalidParameter(format!(
            "maximum out-degree {} exceeds p = {p}",
            d.max_out_degree()
        )));
    }
    let mut b = host_builder(d);
    let mut tree = Vec::new();
    match mode {
        RegularizeMode::ConnectorCycle => {
            positive("p", p)?;
            let n = d.n();
            for j in 0..n {
                let i = p + 1 - d.out_degree(j);
                b.connector(j, (j + 1) % n, i, p + 1, &format!("cycle[{j}]"));
            }
        }
        RegularizeMode::KernelTree => {
            if p < 2 || d.n() < 2 {
                return Err(GadgetError::InvalidParameter(
                    "kernel-tree mode needs p >= 2 and at least two vertices".into(),
                ));
            }
            // full binary tree on abstract nodes (0 = root), grown
            // breadth-first until it has n leaves
            let mut leaves = std::collections::VecDeque::from([0usize]);
            let mut abstract_arcs = Vec::new();
            let mut nodes = 1;
            while leaves.len() < d.n() {
                let parent = leaves.pop_front().expect("leaf");
                for _ in 0..2 {
                    abstract_arcs.push((parent, nodes));
                    leaves.push_back(nodes);
                    nodes += 1;
                }
            }
            let mut id = vec![usize::MAX; nodes];
            for (host, &leaf) in leaves.iter().enumerate() {
                id[leaf] = host;
            }
            for slot in id.iter_mut().filter(|s| **s == usize::MAX) {
                *slot = b.vertex("tree");
                tree.push(*slot);
            }
            let tree_arcs: Vec<(usize, usize)> = abstract_arcs.iter().map(|&(u, v)| (id[u], id[v])).collect();
            let root = id[0];
            for &(u, v) in &tree_arcs {
                b.arc(u, v);
            }
            for &(u, v) in &tree_arcs {
                let i = p + 1 - b.out_degree(v);
                b.connector(v, u, i, p + 1, &format!("tree[{u}->{v}]"));
            }
            let w = tree_arcs.iter().find(|&&(u, _)| u == root).expect("root has children").1;
            b.connector(root, w, p - 1, p + 1, "root");
        }
    }
    let out = b.digraph();
    if !out.is_out_regular(p + 1) {
        return Err(GadgetError::Postcondition("result is not out-regular".into()));
    }
    if !out.is_strong() {
        return Err(GadgetError::Postcondition("result is not strong".into()));
    }
    let keep: Vec<usize> = d.vertices().collect();
    if out.induced(&keep) != *d {
        return Err(GadgetError::Postcondition("original digraph is not induced".into()));
    }
    Ok(Regularized {
        digraph: out,
        roles: b.roles(),
        connectors: b.connectors,
        tree,
    })
}

/// A certified even-cycle-free out-regular strong digraph and how it was
/// found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedCertificate {
    pub k: usize,
    pub digraph: Digraph,
    pub transcript: Vec<String>,
}

/// Checks that `t` is strong, `k`-out-regular and has no even directed
/// cycle (by exhaustive cycle enumeration).
pub fn certify_seed(t: &Digraph, k: usize, budget: u64) -> Result<(), GadgetError> {
    if t.n() == 0 || !t.is_out_regular(k) {
        return Err(GadgetError::UncertifiedSeed(format!("not {k}-out-regular")));
    }
    if !t.is_strong() {
        return Err(GadgetError::UncertifiedSeed("not strong".into()));
    }
    match find_even_cycle(t, budget)? {
        EvenCycleSearch::NoneFound => Ok(()),
        EvenCycleSearch::Found(c) => Err(GadgetError::UncertifiedSeed(format!("even cycle {:?}", c.0))),
    }
}

/// Known seed for `k = 2`, as found by [`find_no_even_cycle_outregular`]:
/// the circulant on 7 vertices with steps 1 and 3.
pub const T2_SEED: (usize, [usize; 2]) = (7, [1, 3]);

/// Certified seed `T_k` for `k ∈ {1, 2}`: the directed triangle, or the
/// cached circulant re-certified on every call.
pub fn thomassen_seed(k: usize) -> Result<Digraph, GadgetError> {
    let t = match k {
        1 => directed_cycle(3),
        2 => circulant(T2_SEED.0, &T2_SEED.1),
        _ => {
            return Err(GadgetError::Unsupported(format!(
                "no even-cycle-free {k}-out-regular seed is available for k >= 3"
            )))
        }
    };
    certify_seed(&t, k, DEFAULT_CYCLE_BUDGET)?;
    Ok(t)
}

/// Searches for a strong `k`-out-regular digraph with no even directed
/// cycle on `min_n..=max_n` vertices.
///
/// `k = 1` gives the smallest odd directed cycle of order at least
/// `max(3, min_n)`. For `k = 2`, each order is tried with circulants
/// first (steps `a < b`, lexicographic) and then by exhaustive
/// enumeration of digon-free 2-out-regular digraphs with vertex 0's
/// out-set fixed to `{1, 2}`. Candidates whose certification runs out of
/// budget are logged and skipped.
pub fn find_no_even_cycle_outregular(
    k: usize,
    min_n: usize,
    max_n: usize,
    budget: u64,
) -> Result<SeedCertificate, GadgetError> {
    let mut transcript = Vec::new();
    match k {
        1 => {
            let m = (min_n.max(3) | 1).max(3);
            if m > max_n {
                return Err(GadgetError::NotFound { k, max_n });
            }
            let t = directed_cycle(m);
            certify_seed(&t, 1, budget)?;
            transcript.push(format!("C{m}: strong, 1-out-regular, odd cycle only"));
            Ok(SeedCertificate {
                k,
                digraph: t,
                transcript,
            })
        }
        2 => {
            for n in min_n.max(3)..=max_n {
                for a in 1..n {
                    for b in a + 1..n {
                        let t = circulant(n, &[a, b]);
                        match certify_seed(&t, 2, budget) {
                            Ok(()) => {
                                transcript.push(format!("C{n}({a},{b}): certified, no even cycle"));
                                return Ok(SeedCertificate {
                                    k,
                                    digraph: t,
                                    transcript,
                                });
                            }
                            Err(e) => transcript.push(format!("C{n}({a},{b}): rejected, {e}")),
                        }
                    }
                }
                let (found, tried) = exhaustive_seed_search(n, budget);
                transcript.push(format!("exhaustive n={n}: {tried} digon-free candidates"));
                if let Some(t) = found {
                    transcript.push(format!("exhaustive n={n}: certified {:?}", t.arc_set()));
                    return Ok(SeedCertificate {
                        k,
                        digraph: t,
                        transcript,
                    });
                }
            }
            Err(GadgetError::NotFound { k, max_n })
        }
        _ => Err(GadgetError::Unsupported(format!(
            "seed search is only implemented for k = 1 and k = 2, not {k}"
        ))),
    }
}

fn exhaustive_seed_search(n: usize, budget: u64) -> (Option<Digraph>, u64) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out: Vec<(usize, usize)> = vec![(1, 2)];
    let mut tried = 0u64;
    let found = seed_dfs(n, &pairs, &mut out, &mut tried, budget);
    (found, tried)
}

fn seed_dfs(n: usize, pairs: &[(usize, usize)], out: &mut Vec<(usize, usize)>, tried: &mut u64, budget: u64) -> Option<Digraph> {
    let v = out.len();
    let has = |out: &[(usize, usize)], u: usize, w: usize| out.get(u).is_some_and(|&(a, b)| a == w || b == w);
    if v == n {
        *tried += 1;
        let arcs = out.iter().enumerate().flat_map(|(u, &(a, b))| [(u, a), (u, b)]);
        let t = Digraph::from_arcs(n, arcs).expect("valid arcs");
        return certify_seed(&t, 2, budget).is_ok().then_some(t);
    }
    for &(a, b) in pairs {
        if a == v || b == v || has(out, a, v) || has(out, b, v) {
            continue;
        }
        out.push((a, b));
        if let Some(t) = seed_dfs(n, pairs, out, tried, budget) {
            return Some(t);
        }
        out.pop();
    }
    None
}

/// The forcing gadget: `T_k` (role `Y`) plus the head `{x, x'}` (role
/// `head`) and every arc from `Y` to the head.
pub fn make_forcing_gadget(k: usize, t_k: &Digraph) -> Result<GadgetInstance, GadgetError> {
    positive("k", k)?;
    certify_seed(t_k, k, DEFAULT_CYCLE_BUDGET)?;
    let mut b = Builder::new();
    let y = b.embed(t_k, "Y");
    let head = b.vertices("head", 2);
    for &v in &y {
        for &h in &head {
            b.arc(v, h);
        }
    }
    let g = b.instance();
    g.validate(&[ArcRule::Seed("Y", t_k), ArcRule::All("Y", "head")])?;
    Ok(g)
}

/// The two kernel gadgets, with roles `z1..z9` and `a..f`.
///
/// `H` carries all eleven listed arcs, including `a -> e`; the strong
/// kernel reduction drops that arc so that `a` keeps out-degree 2.
pub fn make_kernel_gadgets() -> (GadgetInstance, GadgetInstance) {
    let mut w = Builder::new();
    for q in 1..=9 {
        w.vertex(format!("z{q}"));
    }
    for (u, v) in W_ARCS {
        w.arc(u - 1, v - 1);
    }
    let w = w.instance();
    let w_rules: Vec<(String, String)> = W_ARCS.iter().map(|(u, v)| (format!("z{u}"), format!("z{v}"))).collect();
    let rules: Vec<ArcRule> = w_rules.iter().map(|(a, b)| ArcRule::All(a, b)).collect();
    w.validate(&rules).expect("W inventory");

    let mut h = Builder::new();
    for name in ["a", "b", "c", "d", "e", "f"] {
        h.vertex(name);
    }
    let idx = |c: char| (c as u8 - b'a') as usize;
    for (u, v) in H_ARCS {
        h.arc(idx(u), idx(v));
    }
    let h = h.instance();
    let h_rules: Vec<(String, String)> = H_ARCS.iter().map(|(u, v)| (u.to_string(), v.to_string())).collect();
    let rules: Vec<ArcRule> = h_rules.iter().map(|(a, b)| ArcRule::All(a, b)).collect();
    h.validate(&rules).expect("H inventory");
    (w, h)
}

/// Arcs of the clause gadget `W`, 1-based.
pub const W_ARCS: [(usize, usize); 9] = [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6), (5, 7), (6, 8), (7, 9)];

/// Arcs of the strong-closure gadget `H`.
pub const H_ARCS: [(char, char); 11] = [
    ('d', 'e'),
    ('e', 'f'),
    ('f', 'd'),
    ('d', 'a'),
    ('e', 'b'),
    ('f', 'c'),
    ('a', 'e'),
    ('b', 'd'),
    ('b', 'f'),
    ('c', 'd'),
    ('c', 'e'),
];

/// The forcers exactly as printed: `X` is `T_{k2-1}` plus `v` with every
/// arc into `v`, `Z` is `k2 + 1` copies of `X` plus `w` with
/// `v_1 -> v_{1+i}` (`i ∈ [k2]`) and `v_1 -> w`.
///
/// Kept for reference only: when the monochromatic vertex of the seed
/// sits in the part with the larger cap, `X` does not force `v` at all.
/// [`make_forcers`] gives working replacements.
pub fn make_xz_forcers(k2: usize, t: &Digraph) -> Result<(GadgetInstance, GadgetInstance), GadgetError> {
    if k2 < 2 {
        return Err(GadgetError::InvalidParameter("k2 must be at least 2".into()));
    }
    certify_seed(t, k2 - 1, DEFAULT_CYCLE_BUDGET)?;
    let x = single_sink_forcer(t);
    let z = chained_forcer(t, k2 + 1, k2)?;
    Ok((x, z))
}

fn single_sink_forcer(t: &Digraph) -> GadgetInstance {
    let mut b = Builder::new();
    let y = b.embed(t, "Y");
    let v = b.vertex("v");
    for &u in &y {
        b.arc(u, v);
    }
    let g = b.instance();
    g.validate(&[ArcRule::Seed("Y", t), ArcRule::All("Y", "v")]).expect("X inventory");
    g
}

/// `copies` private single-sink forcers; `v_1` points at the next
/// `fan` sinks and at the new vertex `w`.
fn chained_forcer(t: &Digraph, copies: usize, fan: usize) -> Result<GadgetInstance, GadgetError> {
    let mut b = Builder::new();
    let mut sinks = Vec::new();
    for c in 1..=copies {
        let y = b.embed(t, &format!("X{c}.Y"));
        let v = b.vertex(format!("X{c}.v"));
        for &u in &y {
            b.arc(u, v);
        }
        sinks.push(v);
    }
    let w = b.vertex("w");
    for &v in &sinks[1..=fan] {
        b.arc(sinks[0], v);
    }
    b.arc(sinks[0], w);
    let g = b.instance();
    let names: Vec<(String, String)> = (1..=copies).map(|c| (format!("X{c}.Y"), format!("X{c}.v"))).collect();
    let mut rules = Vec::new();
    for (y, v) in &names {
        rules.push(ArcRule::Seed(y, t));
        rules.push(ArcRule::All(y, v));
    }
    for (_, v) in &names[1..=fan] {
        rules.push(ArcRule::All(&names[0].1, v));
    }
    rules.push(ArcRule::All(&names[0].1, "w"));
    g.validate(&rules)?;
    Ok(g)
}

/// Working colour forcers for `(Δ⁺≤k1, Δ⁺≤k2)`-partitions, `k1 < k2`.
///
/// `one` is `T_{k2}` plus a sink `v` receiving every arc: `v` must be in
/// part 0 (colour 1), since otherwise every seed vertex would need an
/// out-neighbour in the other part, i.e. a 1-all-out-degree-reducing
/// 2-partition of `T_{k2}`, which does not exist. `two` is `k1 + 1`
/// copies of `one` with `v_1 -> v_{1+i}` (`i ∈ [k1]`) and `v_1 -> w`, so
/// `w` must be in part 1 (colour 2).
pub fn make_forcers(k1: usize, k2: usize, t: &Digraph) -> Result<(GadgetInstance, GadgetInstance), GadgetError> {
    if k1 >= k2 || k2 < 2 {
        return Err(GadgetError::InvalidParameter("forcers need k1 < k2 and k2 >= 2".into()));
    }
    certify_seed(t, k2, DEFAULT_CYCLE_BUDGET)?;
    Ok((single_sink_forcer(t), chained_forcer(t, k1 + 1, k1)?))
}

/// Variable gadget on `v, vbar, a1..a{k1}, b1..b{k2}`.
pub fn make_variable_gadget(k1: usize, k2: usize) -> Result<GadgetInstance, GadgetError> {
    if k2 < 2 {
        return Err(GadgetError::InvalidParameter("k2 must be at least 2".into()));
    }
    let mut b = Builder::new();
    let v = b.vertex("v");
    let vbar = b.vertex("vbar");
    let a: Vec<usize> = (1..=k1).map(|h| b.vertex(format!("a{h}"))).collect();
    let bs: Vec<usize> = (1..=k2).map(|h| b.vertex(format!("b{h}"))).collect();
    b.arc(v, vbar);
    b.arc(vbar, v);
    for side in [&a, &bs] {
        if let Some((&first, rest)) = side.split_first() {
            b.arc(first, v);
            b.arc(first, vbar);
            for &r in rest {
                b.arc(first, r);
            }
        }
    }
    let g = b.instance();
    let a_names: Vec<String> = (2..=k1).map(|h| format!("a{h}")).collect();
    let b_names: Vec<String> = (2..=k2).map(|h| format!("b{h}")).collect();
    let mut rules = vec![ArcRule::All("v", "vbar"), ArcRule::All("vbar", "v")];
    for (first, rest) in [("a1", &a_names), ("b1", &b_names)] {
        rules.push(ArcRule::All(first, "v"));
        rules.push(ArcRule::All(first, "vbar"));
        rules.extend(rest.iter().map(|r| ArcRule::All(first, r)));
    }
    g.validate(&rules)?;
    Ok(g)
}

/// Vertices of a variable gadget that must be forced to colour 1 (`a_h`)
/// and colour 2 (`b_h`).
pub fn variable_gadget_hooks(g: &GadgetInstance, k1: usize, k2: usize) -> (Vec<usize>, Vec<usize>) {
    let a = (1..=k1).map(|h| g.vertex(&format!("a{h}"))).collect();
    let b = (1..=k2).map(|h| g.vertex(&format!("b{h}"))).collect();
    (a, b)
}

/// Regular (odd order) or almost regular tournament of order `p - 1`.
pub fn d2_tournament(p: usize) -> Digraph {
    rotational_tournament(p - 1)
}

fn check_d2_params(k: usize, p: usize) -> Result<(), GadgetError> {
    if k < 2 || p < 3 || p > 2 * k - 1 {
        return Err(GadgetError::InvalidParameter(format!(
            "D2 needs k >= 2 and 3 <= p <= 2k - 1, got k = {k}, p = {p}"
        )));
    }
    Ok(())
}

/// `D_2(x,y)`: vertex order `x`, tournament, `y`. The tournament splits
/// into roles `V1` (out-degree `k - 1` inside it) and `T` (the rest).
pub fn make_d2_gadget(k: usize, p: usize) -> Result<GadgetInstance, GadgetError> {
    check_d2_params(k, p)?;
    let mut b = Builder::new();
    let x = b.vertex("x");
    let t = d2_tournament(p);
    let ids: Vec<usize> = (0..p - 1).map(|_| b.vertex("T")).collect();
    let y = b.vertex("y");
    for (a, c) in t.arcs() {
        b.arc(ids[a], ids[c]);
    }
    for (local, &v) in ids.iter().enumerate() {
        b.arc(v, x);
        if t.out_degree(local) + 1 == k {
            b.set_role(v, "V1");
            b.arc(y, v);
        } else {
            b.arc(v, y);
        }
    }
    let g = b.instance();
    check_roles_partition(g.digraph.n(), &g.roles)?;
    // the tournament copy spans two roles, so check it through an overlay
    let mut overlay = g.clone();
    overlay.roles.insert("tournament".into(), ids);
    overlay.validate_arcs(&[
        ArcRule::Seed("tournament", &t),
        ArcRule::All("T", "x"),
        ArcRule::All("T", "y"),
        ArcRule::All("V1", "x"),
        ArcRule::All("y", "V1"),
    ])?;
    if g.digraph.max_out_degree() > k {
        return Err(GadgetError::Postcondition("D2 exceeds out-degree k".into()));
    }
    Ok(g)
}

/// `D_n(x_1, ..., x_n)`: chained `D_2(x_q, x_{q+1})` copies with disjoint
/// tournaments. Vertex order `x1`, tournament 1, `x2`, tournament 2, ...
pub fn make_chain_gadget(k: usize, p: usize, n: usize) -> Result<GadgetInstance, GadgetError> {
    check_d2_params(k, p)?;
    positive("n", n)?;
    let mut b = Builder::new();
    add_chain(&mut b, k, p, n, "");
    Ok(b.instance())
}

/// Appends a chain to `b`; returns the ids of `x_1..x_n`. Roles are
/// `{prefix}x{q}` and `{prefix}T{q}`.
pub fn add_chain(b: &mut Builder, k: usize, p: usize, n: usize, prefix: &str) -> Vec<usize> {
    let t = d2_tournament(p);
    let mut xs = vec![b.vertex(format!("{prefix}x1"))];
    for q in 1..n {
        let ids = b.vertices(&format!("{prefix}T{q}"), t.n());
        let y = b.vertex(format!("{prefix}x{}", q + 1));
        let x = xs[q - 1];
        for (a, c) in t.arcs() {
            b.arc(ids[a], ids[c]);
        }
        for (local, &v) in ids.iter().enumerate() {
            b.arc(v, x);
            if t.out_degree(local) + 1 == k {
                b.arc(y, v);
            } else {
                b.arc(v, y);
            }
        }
        xs.push(y);
    }
    xs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{all_digraphs, rotational_tournament};
    use crate::oracle::{all_colorings, all_kernels, exhaustive_partition_search, Property, SearchOptions};
    use crate::partition::Partition;

    #[test]
    fn connector_examples() {
        let g = make_connector(1, 2).unwrap();
        assert_eq!(g.digraph.n(), 8);
        let x = g.vertex("x");
        let y = g.vertex("y");
        assert_eq!(g.digraph.out_degree(x), 1);
        assert_eq!(g.digraph.out_degree(y), 0);
        for v in g.digraph.vertices().filter(|&v| v != x && v != y) {
            assert_eq!(g.digraph.out_degree(v), 2, "vertex {v}");
        }
        let g = make_connector(3, 3).unwrap();
        assert_eq!(g.digraph.n(), 12);
        let g = make_connector(1, 1).unwrap();
        assert_eq!(g.digraph.n(), 6);
        let (u, up) = (g.vertex("u"), g.vertex("u'"));
        assert!(g.digraph.has_arc(u, up) && !g.digraph.has_arc(up, u));
        assert!(make_connector(0, 2).is_err());
    }

    #[test]
    fn attach_connector_counts() {
        let digon = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        // glued at x and y, so only i + 2p + 1 vertices are new
        let (d, c) = attach_connector(&digon, 0, 1, 1, 2).unwrap();
        assert_eq!(d.n(), 8);
        assert_eq!(d.out_degree(0), 2);
        assert_eq!(d.out_degree(1), 1);
        assert_eq!(c.vertices().len(), 6);
        assert_eq!(attach_connector(&digon, 0, 5, 1, 2).unwrap_err(), GadgetError::UnknownVertex(5));
    }

    #[test]
    fn connector_extension_is_valid() {
        let prop = Property::DeltaBounded { k1: 1, k2: 2 };
        let opts = SearchOptions::default();
        for d in all_digraphs(3) {
            let (big, c) = attach_connector(&d, 0, 2, 2, 2).unwrap();
            if let Some(w) = exhaustive_partition_search(&d, prop, 2, opts).unwrap() {
                let mut parts = w.parts().to_vec();
                parts.resize(big.n(), usize::MAX);
                c.extend(&mut parts);
                let pi = Partition::new(parts, 2).unwrap();
                assert!(prop.check(&big, &pi).unwrap().is_valid());
            }
        }
    }

    #[test]
    fn regularize_examples() {
        let arc = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        for (d, p) in [(arc, 1), (directed_cycle(3), 1), (rotational_tournament(5), 2)] {
            let r = regularize(&d, p, RegularizeMode::ConnectorCycle).unwrap();
            assert!(r.digraph.is_strong() && r.digraph.is_out_regular(p + 1));
        }
        let r = regularize(&directed_cycle(5), 2, RegularizeMode::KernelTree).unwrap();
        assert!(r.digraph.is_strong() && r.digraph.is_out_regular(3));
        assert_eq!(r.tree.len(), 4);
        assert!(regularize(&rotational_tournament(5), 1, RegularizeMode::ConnectorCycle).is_err());
    }

    #[test]
    fn seed_search() {
        let one = find_no_even_cycle_outregular(1, 0, 10, DEFAULT_CYCLE_BUDGET).unwrap();
        assert_eq!(one.digraph, directed_cycle(3));
        let five = find_no_even_cycle_outregular(1, 4, 10, DEFAULT_CYCLE_BUDGET).unwrap();
        assert_eq!(five.digraph, directed_cycle(5));
        let two = find_no_even_cycle_outregular(2, 0, 7, DEFAULT_CYCLE_BUDGET).unwrap();
        assert_eq!(two.digraph, circulant(T2_SEED.0, &T2_SEED.1), "{:#?}", two.transcript);
        assert_eq!(thomassen_seed(2).unwrap(), two.digraph);
        assert!(matches!(thomassen_seed(3), Err(GadgetError::Unsupported(_))));
        assert!(matches!(
            find_no_even_cycle_outregular(2, 0, 5, DEFAULT_CYCLE_BUDGET),
            Err(GadgetError::NotFound { .. })
        ));
    }

    #[test]
    fn forcing_gadget() {
        let f = make_forcing_gadget(1, &directed_cycle(3)).unwrap();
        assert_eq!(f.digraph.n(), 5);
        for &v in f.role("Y") {
            assert_eq!(f.digraph.out_degree(v), 3);
        }
        let head = f.role("head").to_vec();
        for pi in (0u32..32).map(|m| Partition::new((0..5).map(|v| (m >> v & 1) as usize).collect(), 2).unwrap()) {
            if (Property::DeltaBounded { k1: 1, k2: 1 }).check(&f.digraph, &pi).unwrap().is_valid() {
                assert_eq!(pi.part_of(head[0]), pi.part_of(head[1]));
            }
        }
        let f2 = make_forcing_gadget(2, &thomassen_seed(2).unwrap()).unwrap();
        assert!(f2.role("Y").iter().all(|&v| f2.digraph.out_degree(v) == 4));
        assert!(make_forcing_gadget(1, &directed_cycle(4)).is_err());
    }

    #[test]
    fn kernel_gadgets() {
        let (w, h) = make_kernel_gadgets();
        assert_eq!(w.digraph.arc_count(), 9);
        assert_eq!(h.digraph.arc_count(), 11);
        let z = |q: usize| w.vertex(&format!("z{q}"));
        // alone, z8 and z9 are sinks and W has no kernel; inside a host
        // they point at literal vertices
        assert!(all_kernels(&w.digraph).is_empty());
        let mut arcs = w.digraph.arc_set();
        arcs.extend([(9, 10), (10, 9), (z(8), 9), (z(9), 10)]);
        let host = Digraph::from_arcs(11, arcs).unwrap();
        let kernels = all_kernels(&host);
        assert!(!kernels.is_empty());
        for k in kernels {
            assert!(k.contains(&z(2)) && k.contains(&z(4)) && (k.contains(&z(6)) || k.contains(&z(7))));
        }
    }

    #[test]
    fn forcer_sizes() {
        let (x, z) = make_xz_forcers(2, &directed_cycle(3)).unwrap();
        assert_eq!(x.digraph.n(), 4);
        assert_eq!(z.digraph.n(), 13);
        let (one, two) = make_forcers(1, 2, &thomassen_seed(2).unwrap()).unwrap();
        assert_eq!(one.digraph.n(), 8);
        assert_eq!(two.digraph.n(), 17);
    }

    #[test]
    fn variable_gadget() {
        let g = make_variable_gadget(1, 2).unwrap();
        assert_eq!(g.digraph.n(), 5);
        let [v, vb, a1, b1, b2] = ["v", "vbar", "a1", "b1", "b2"].map(|r| g.vertex(r));
        let expected: BTreeSet<_> = [(v, vb), (vb, v), (a1, v), (a1, vb), (b1, v), (b1, vb), (b1, b2)].into();
        assert_eq!(g.digraph.arc_set(), expected);
        let g0 = make_variable_gadget(0, 2).unwrap();
        assert_eq!(g0.digraph.n(), 4);
        assert_eq!(variable_gadget_hooks(&g0, 0, 2).0, Vec::<usize>::new());
    }

    #[test]
    fn d2_gadget() {
        let g = make_d2_gadget(2, 3).unwrap();
        assert_eq!(g.digraph.n(), 4);
        assert_eq!(g.role("V1").len(), 1);
        let (x, y) = (g.vertex("x"), g.vertex("y"));
        assert_eq!(g.digraph.out_degree(x), 0);
        let ug = g.digraph.underlying_graph();
        assert!(!ug.has_edge(x, y));
        for c in all_colorings(&ug, 3) {
            assert_eq!(c[x], c[y]);
        }
        for (k, p) in [(3, 3), (3, 4), (3, 5), (4, 7)] {
            let g = make_d2_gadget(k, p).unwrap();
            assert_eq!(g.digraph.n(), p + 1);
            assert!(g.digraph.max_out_degree() <= k);
            assert_eq!(g.digraph.out_degree(g.vertex("x")), 0);
            let ug = g.digraph.underlying_graph();
            let missing = (0..ug.n()).flat_map(|u| (u + 1..ug.n()).map(move |v| (u, v)));
            let missing: Vec<_> = missing.filter(|&(u, v)| !ug.has_edge(u, v)).collect();
            assert_eq!(missing, vec![(g.vertex("x"), g.vertex("y"))]);
        }
        assert!(make_d2_gadget(2, 4).is_err());
        let chain = make_chain_gadget(2, 3, 4).unwrap();
        assert_eq!(chain.digraph.n(), 4 + 3 * 2);
    }

    #[test]
    fn roles_export() {
        let g = make_connector(1, 2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&g.roles_json()).unwrap();
        assert_eq!(v["x"], serde_json::json!([0]));
    }
}
