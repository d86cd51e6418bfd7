//! Compilers from SAT, NAE-SAT and colouring instances to partition and
//! kernel instances, with witness translation both ways.
//!
//! Every artifact is structurally verified before it is returned.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::cnf::{CnfFormula, FormulaMode, Literal};
use crate::digraph::{Digraph, Graph};
use crate::gadgets::{add_chain, thomassen_seed, Builder, ConnectorPlacement, GadgetError, H_ARCS, W_ARCS};
use crate::partition::{check_delta_bounded, check_kernel, check_max_reducing, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

/// A compiled instance: the digraph, one role per vertex, numeric
/// parameters and a short description of the construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionArtifact {
    #[serde(skip)]
    pub digraph: Digraph,
    pub roles: BTreeMap<String, Vec<usize>>,
    pub params: BTreeMap<String, usize>,
    pub provenance: String,
    /// Number of leading vertices forming the core instance before any
    /// strong/regular finishing; they induce the core digraph.
    pub core_vertices: usize,
}

impl ReductionArtifact {
    fn new(b: &Builder, params: &[(&str, usize)], provenance: &str, core_vertices: usize) -> Self {
        Self {
            digraph: b.digraph(),
            roles: b.roles(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            provenance: provenance.to_string(),
            core_vertices,
        }
    }

    /// Role map, parameters and provenance as JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("artifact serializes")
    }

    pub fn core(&self) -> Digraph {
        self.digraph.induced(&(0..self.core_vertices).collect::<Vec<_>>())
    }

    fn require(&self, ok: bool, what: &str) -> Result<(), ReductionError> {
        if ok {
            Ok(())
        } else {
            Err(ReductionError::Postcondition(format!("{}: {what}", self.provenance)))
        }
    }
}

fn require_mode(f: &CnfFormula, mode: FormulaMode) -> Result<(), ReductionError> {
    if f.mode != mode {
        return Err(ReductionError::InvalidInput(format!("expected a {mode:?} formula")));
    }
    if f.clauses.is_empty() {
        return Err(ReductionError::InvalidInput("formula has no clauses".into()));
    }
    Ok(())
}

fn colour_of(b: bool) -> usize {
    // colour 1 (part 0) is true
    usize::from(!b)
}

/// Groups `targets` under fresh tree vertices of fan-out at most `fan`
/// until one root remains; returns the root.
fn build_out_tree(b: &mut Builder, targets: &[usize], fan: usize, role: &str) -> usize {
    let mut level = targets.to_vec();
    loop {
        let parents: Vec<usize> = level
            .chunks(fan)
            .map(|chunk| {
                let p = b.vertex(role);
                for &c in chunk {
                    b.arc(p, c);
                }
                p
            })
            .collect();
        if parents.len() == 1 {
            return parents[0];
        }
        level = parents;
    }
}

/// 3-SAT to `(Δ⁺≤k1, Δ⁺≤k2)`-partition on strong `(k2+1)`-out-regular
/// digraphs, `max(1, k1) < k2`.
#[derive(Debug, Clone)]
pub struct SatToDelta {
    pub artifact: ReductionArtifact,
    pub formula: CnfFormula,
    pub k1: usize,
    pub k2: usize,
    /// `(v_i, vbar_i)` per variable.
    pub literals: Vec<(usize, usize)>,
    forced_one: Vec<usize>,
    forced_two: Vec<usize>,
    seeds: Vec<Vec<usize>>,
    tree: Vec<usize>,
    connectors: Vec<ConnectorPlacement>,
}

pub fn reduce_sat_to_delta_partition(f: &CnfFormula, k1: usize, k2: usize) -> Result<SatToDelta, ReductionError> {
    require_mode(f, FormulaMode::Plain3Sat)?;
    if k2 <= k1.max(1) {
        return Err(ReductionError::InvalidInput(format!("need max(1, k1) < k2, got k1 = {k1}, k2 = {k2}")));
    }
    let seed = thomassen_seed(k2).map_err(|e| match e {
        GadgetError::Unsupported(m) => ReductionError::Unsupported(format!("k2 = {k2} needs T_{k2}: {m}")),
        other => other.into(),
    })?;
    let mut b = Builder::new();
    let mut literals = Vec::new();
    let mut forced_one = Vec::new();
    let mut forced_two = Vec::new();
    let mut seeds = Vec::new();
    let mut leaves = Vec::new();

    // colour forcers are built right after the vertex they force, which
    // keeps each gadget contiguous for backtracking searches
    let force = |b: &mut Builder, u: usize, colour: usize, seeds: &mut Vec<Vec<usize>>, leaves: &mut Vec<usize>| {
        let single = |b: &mut Builder, sink: usize, role: String, seeds: &mut Vec<Vec<usize>>, leaves: &mut Vec<usize>| {
            let y = b.embed(&seed, &role);
            for &t in &y {
                b.arc(t, sink);
            }
            leaves.push(y[0]);
            seeds.push(y);
        };
        if colour == 1 {
            single(b, u, format!("force1[{u}].Y"), seeds, leaves);
        } else {
            let mut sinks = Vec::new();
            for _ in 0..=k1 {
                let v = b.vertex(format!("force2[{u}].v"));
                single(b, v, format!("force2[{u}].Y"), seeds, leaves);
                sinks.push(v);
            }
            for &v in &sinks[1..] {
                b.arc(sinks[0], v);
            }
            b.arc(sinks[0], u);
        }
    };

    for i in 0..f.num_vars {
        let v = b.vertex(format!("v[{i}]"));
        let vbar = b.vertex(format!("vbar[{i}]"));
        b.arc(v, vbar);
        b.arc(vbar, v);
        literals.push((v, vbar));
        let a: Vec<usize> = (0..k1).map(|h| b.vertex(format!("a[{i},{}]", h + 1))).collect();
        let bs: Vec<usize> = (0..k2).map(|h| b.vertex(format!("b[{i},{}]", h + 1))).collect();
        for side in [&a, &bs] {
            if let Some((&first, rest)) = side.split_first() {
                b.arc(first, v);
                b.arc(first, vbar);
                for &r in rest {
                    b.arc(first, r);
                }
            }
        }
        for &u in &a {
            force(&mut b, u, 1, &mut seeds, &mut leaves);
            forced_one.push(u);
        }
        for &u in &bs {
            force(&mut b, u, 2, &mut seeds, &mut leaves);
            forced_two.push(u);
        }
    }
    for (j, clause) in f.clauses.iter().enumerate() {
        let c = b.vertex(format!("c[{j}]"));
        let mut targets: Vec<usize> = clause
            .iter()
            .map(|l| if l.positive { literals[l.var].0 } else { literals[l.var].1 })
            .collect();
        targets.sort_unstable();
        targets.dedup();
        for &t in &targets {
            b.arc(c, t);
        }
        force(&mut b, c, 2, &mut seeds, &mut leaves);
        forced_two.push(c);
        for q in 0..k2 + 1 - targets.len() {
            let pv = b.vertex(format!("c[{j}].private[{q}]"));
            b.arc(c, pv);
            force(&mut b, pv, 2, &mut seeds, &mut leaves);
            forced_two.push(pv);
        }
    }
    let core_vertices = b.n();
    if b.digraph().max_out_degree() > k2 + 1 {
        return Err(ReductionError::Postcondition("core exceeds out-degree k2 + 1".into()));
    }

    let first_tree = b.n();
    let root = build_out_tree(&mut b, &leaves, k2, "tree");
    let tree: Vec<usize> = (first_tree..b.n()).collect();
    let deficient: Vec<usize> = (0..b.n()).filter(|&w| b.out_degree(w) < k2 + 1).collect();
    for w in deficient {
        let i = k2 + 1 - b.out_degree(w);
        b.connector(w, root, i, k2 + 1, &format!("reg[{w}]"));
    }
    let artifact = ReductionArtifact::new(
        &b,
        &[("k1", k1), ("k2", k2), ("vars", f.num_vars), ("clauses", f.clauses.len())],
        "3-SAT to (Δ⁺≤k1, Δ⁺≤k2)-partition, strong (k2+1)-out-regular",
        core_vertices,
    );
    artifact.require(artifact.digraph.is_out_regular(k2 + 1), "not (k2+1)-out-regular")?;
    artifact.require(artifact.digraph.is_strong(), "not strong")?;
    Ok(SatToDelta {
        artifact,
        formula: f.clone(),
        k1,
        k2,
        literals,
        forced_one,
        forced_two,
        seeds,
        tree,
        connectors: b.connectors.clone(),
    })
}

impl SatToDelta {
    /// Good colouring from a satisfying assignment.
    pub fn forward(&self, assignment: &[bool]) -> Result<Partition, ReductionError> {
        if !self.formula.is_satisfied_by(assignment) {
            return Err(ReductionError::InvalidInput("assignment does not satisfy the formula".into()));
        }
        let n = self.artifact.digraph.n();
        let mut parts = vec![usize::MAX; n];
        for (i, &(v, vbar)) in self.literals.iter().enumerate() {
            parts[v] = colour_of(assignment[i]);
            parts[vbar] = 1 - parts[v];
        }
        for &u in &self.forced_one {
            parts[u] = 0;
        }
        for &u in &self.forced_two {
            parts[u] = 1;
        }
        for seed in &self.seeds {
            for &t in seed {
                parts[t] = 1;
            }
        }
        // remaining core vertices are the chained forcer sinks: colour 1
        for p in parts.iter_mut().take(self.artifact.core_vertices) {
            if *p == usize::MAX {
                *p = 0;
            }
        }
        for &t in &self.tree {
            parts[t] = 1;
        }
        for c in &self.connectors {
            c.extend(&mut parts);
        }
        let pi = Partition::new(parts, 2).map_err(|e| ReductionError::Postcondition(e.to_string()))?;
        let verdict = check_delta_bounded(&self.artifact.digraph, &pi, self.k1, self.k2).expect("sizes match");
        if !verdict.is_valid() {
            return Err(ReductionError::Postcondition(format!("forward colouring rejected: {verdict:?}")));
        }
        Ok(pi)
    }

    /// Assignment read off the literal vertices (part 0 = true).
    pub fn backward(&self, pi: &Partition) -> Vec<bool> {
        self.literals.iter().map(|&(v, _)| pi.part_of(v) == 0).collect()
    }
}

/// Appends a duplicate of the last clause when the count is even.
pub fn odd_clause_count(f: &CnfFormula) -> CnfFormula {
    let mut g = f.clone();
    if g.clauses.len() % 2 == 0 {
        let last = g.clauses.last().cloned().expect("nonempty");
        g.clauses.push(last);
    }
    g
}

/// 3-SAT to kernel existence.
#[derive(Debug, Clone)]
pub struct SatToKernel {
    pub artifact: ReductionArtifact,
    /// The formula actually compiled (odd clause count).
    pub formula: CnfFormula,
    pub strong: bool,
    /// `(v_i, vbar_i)` per variable. In the strong variant a variable
    /// that occurs in no clause gets no vertices (its digon would be
    /// unreachable) and reads back as false.
    pub literals: Vec<Option<(usize, usize)>>,
    /// `z[j][q-1]` is `z_{j,q}`.
    pub z: Vec<[usize; 9]>,
    /// `a..f` of H and the path `a_1..a_m` (strong variant only).
    pub h: Option<([usize; 6], Vec<usize>)>,
}

pub fn reduce_sat_to_kernel(f: &CnfFormula, strong: bool) -> Result<SatToKernel, ReductionError> {
    require_mode(f, FormulaMode::Plain3Sat)?;
    let f = odd_clause_count(f);
    let m = f.clauses.len();
    let mut b = Builder::new();
    let mut z = Vec::with_capacity(m);
    for j in 0..m {
        let ids: [usize; 9] = std::array::from_fn(|q| b.vertex(format!("z[{},{}]", j + 1, q + 1)));
        for (u, v) in W_ARCS {
            b.arc(ids[u - 1], ids[v - 1]);
        }
        z.push(ids);
    }
    let mut literals = Vec::new();
    for i in 0..f.num_vars {
        if strong && !f.clauses.iter().flatten().any(|l| l.var == i) {
            literals.push(None);
            continue;
        }
        let v = b.vertex(format!("v[{i}]"));
        let vbar = b.vertex(format!("vbar[{i}]"));
        b.arc(v, vbar);
        b.arc(vbar, v);
        literals.push(Some((v, vbar)));
    }
    let used = literals.iter().flatten().count();
    let lit = |l: &Literal| {
        let (v, vbar) = literals[l.var].expect("occurring variable");
        if l.positive {
            v
        } else {
            vbar
        }
    };
    for (j, clause) in f.clauses.iter().enumerate() {
        b.arc(z[j][7], lit(&clause[0]));
        b.arc(z[j][8], lit(&clause[1]));
        b.arc(z[j][8], lit(&clause[2]));
    }
    let core_vertices = b.n();
    let mut h = None;
    if strong {
        let out_one: Vec<usize> = (0..core_vertices).filter(|&u| b.out_degree(u) == 1).collect();
        let hv: [usize; 6] = std::array::from_fn(|q| b.vertex(((b'a' + q as u8) as char).to_string()));
        let idx = |c: char| hv[(c as u8 - b'a') as usize];
        for (u, v) in H_ARCS {
            if (u, v) != ('a', 'e') {
                b.arc(idx(u), idx(v));
            }
        }
        let mut path = vec![idx('a')];
        for j in 1..m {
            path.push(b.vertex(format!("a[{}]", j + 1)));
        }
        for j in 0..m {
            if j + 1 < m {
                b.arc(path[j], path[j + 1]);
            }
            b.arc(path[j], z[j][0]);
        }
        b.arc(path[m - 1], z[m - 1][2]);
        for u in out_one {
            b.arc(u, idx('d'));
        }
        h = Some((hv, path));
    }
    let artifact = ReductionArtifact::new(
        &b,
        &[("vars", f.num_vars), ("clauses", m), ("strong", usize::from(strong))],
        if strong {
            "3-SAT to kernel, strong 2-out-regular"
        } else {
            "3-SAT to kernel, maximum out-degree 2"
        },
        core_vertices,
    );
    artifact.require(artifact.digraph.n() == if strong { 9 * m + 2 * used + 5 + m } else { 9 * m + 2 * used }, "vertex count")?;
    artifact.require(artifact.digraph.max_out_degree() <= 2, "out-degree above 2")?;
    if strong {
        artifact.require(artifact.digraph.is_out_regular(2), "not 2-out-regular")?;
        artifact.require(artifact.digraph.is_strong(), "not strong")?;
    }
    Ok(SatToKernel {
        artifact,
        formula: f,
        strong,
        literals,
        z,
        h,
    })
}

impl SatToKernel {
    /// Kernel from a satisfying assignment.
    pub fn forward(&self, assignment: &[bool]) -> Result<Vec<usize>, ReductionError> {
        if !self.formula.is_satisfied_by(assignment) {
            return Err(ReductionError::InvalidInput("assignment does not satisfy the formula".into()));
        }
        let mut k = Vec::new();
        for (i, pair) in self.literals.iter().enumerate() {
            if let Some((v, vbar)) = *pair {
                k.push(if assignment[i] { v } else { vbar });
            }
        }
        for (j, clause) in self.formula.clauses.iter().enumerate() {
            let z = &self.z[j];
            k.extend([z[1], z[3]]);
            k.push(if clause[0].value(assignment) { z[5] } else { z[7] });
            k.push(if clause[1].value(assignment) || clause[2].value(assignment) {
                z[6]
            } else {
                z[8]
            });
        }
        if let Some((hv, path)) = &self.h {
            k.extend([hv[1], hv[2]]);
            k.extend(path.iter().step_by(2));
        }
        k.sort_unstable();
        let verdict = check_kernel(&self.artifact.digraph, &k).expect("ids in range");
        if !verdict.is_valid() {
            return Err(ReductionError::Postcondition(format!("forward kernel rejected: {verdict:?}")));
        }
        Ok(k)
    }

    pub fn backward(&self, kernel: &[usize]) -> Vec<bool> {
        self.literals.iter().map(|pair| pair.is_some_and(|(v, _)| kernel.contains(&v))).collect()
    }
}

/// Monotone NAE-(k+2)-SAT to `(Δ⁺≤k, Δ⁺≤k)`-partition on strong
/// `(k+2)`-out-regular digraphs.
#[derive(Debug, Clone)]
pub struct NaeToPartition {
    pub artifact: ReductionArtifact,
    pub formula: CnfFormula,
    pub k: usize,
    /// `occurrence[i]` lists `(clause j, vertex x_i^j)` in clause order.
    pub occurrence: Vec<Vec<(usize, usize)>>,
    /// Clause sinks `t_j`.
    pub t: Vec<usize>,
    /// Forcing-gadget seeds `Y_i^p`, grouped by variable.
    pub y: Vec<Vec<Vec<usize>>>,
    pub u: Vec<usize>,
    connectors: Vec<ConnectorPlacement>,
}

pub fn reduce_nae_to_kk_partition(f: &CnfFormula, k: usize) -> Result<NaeToPartition, ReductionError> {
    require_mode(f, FormulaMode::MonotoneNae)?;
    if k == 0 {
        return Err(ReductionError::InvalidInput("k must be positive".into()));
    }
    for (j, clause) in f.clauses.iter().enumerate() {
        if clause.len() != k + 2 {
            return Err(ReductionError::InvalidInput(format!(
                "clause {j} has {} literals, expected k + 2 = {}",
                clause.len(),
                k + 2
            )));
        }
        let mut vars: Vec<usize> = clause.iter().map(|l| l.var).collect();
        vars.sort_unstable();
        vars.dedup();
        if vars.len() != clause.len() {
            return Err(ReductionError::InvalidInput(format!("clause {j} repeats a variable")));
        }
    }
    let seed = thomassen_seed(k).map_err(|e| match e {
        GadgetError::Unsupported(m) => ReductionError::Unsupported(format!("k = {k} needs T_{k}: {m}")),
        other => other.into(),
    })?;
    let m = f.clauses.len();
    let mut b = Builder::new();
    let mut occurrence: Vec<Vec<(usize, usize)>> = vec![Vec::new(); f.num_vars];
    let mut y: Vec<Vec<Vec<usize>>> = vec![Vec::new(); f.num_vars];
    let mut in_head = vec![false; 0];
    for i in 0..f.num_vars {
        for (j, clause) in f.clauses.iter().enumerate() {
            if clause.iter().any(|l| l.var == i) {
                let x = b.vertex(format!("x[{i}][{j}]"));
                occurrence[i].push((j, x));
                in_head.resize(b.n(), false);
            }
        }
        for pair in occurrence[i].windows(2) {
            let ids = b.embed(&seed, &format!("Y[{i}][{}]", y[i].len() + 1));
            for &t in &ids {
                b.arc(t, pair[0].1);
                b.arc(t, pair[1].1);
            }
            in_head.resize(b.n(), false);
            in_head[pair[0].1] = true;
            in_head[pair[1].1] = true;
            y[i].push(ids);
        }
    }
    let t: Vec<usize> = (0..m).map(|j| b.vertex(format!("t[{j}]"))).collect();
    let clause_vertices = |j: usize| -> Vec<usize> {
        f.clauses[j]
            .iter()
            .map(|l| occurrence[l.var].iter().find(|&&(c, _)| c == j).expect("occurrence").1)
            .collect()
    };
    for j in 0..m {
        let xs = clause_vertices(j);
        for &a in &xs {
            b.arc(a, t[j]);
            for &c in &xs {
                if a != c {
                    b.arc(a, c);
                }
            }
        }
    }
    let core_vertices = b.n();

    // entry points for the u-cycle: one vertex of every forcing-gadget
    // seed, and one occurrence vertex of every clause no head touches
    let mut entries: Vec<usize> = y.iter().flatten().map(|ids| ids[0]).collect();
    for j in 0..m {
        let xs = clause_vertices(j);
        if !xs.iter().any(|&x| in_head[x]) {
            entries.push(xs[0]);
        }
    }
    let u: Vec<usize> = (0..entries.len()).map(|q| b.vertex(format!("u[{}]", q + 1))).collect();
    for (q, &e) in entries.iter().enumerate() {
        b.connector(u[q], e, 1, k + 2, &format!("u[{}].entry", q + 1));
        b.connector(u[q], u[(q + 1) % u.len()], k + 1, k + 2, &format!("u[{}].next", q + 1));
    }
    for j in 0..m {
        b.connector(t[j], u[0], k + 2, k + 2, &format!("t[{j}].back"));
    }
    let artifact = ReductionArtifact::new(
        &b,
        &[("k", k), ("vars", f.num_vars), ("clauses", m), ("u", u.len())],
        "monotone NAE-(k+2)-SAT to (Δ⁺≤k, Δ⁺≤k)-partition, strong (k+2)-out-regular",
        core_vertices,
    );
    artifact.require(artifact.digraph.is_out_regular(k + 2), "not (k+2)-out-regular")?;
    artifact.require(artifact.digraph.is_strong(), "not strong")?;
    Ok(NaeToPartition {
        artifact,
        formula: f.clone(),
        k,
        occurrence,
        t,
        y,
        u,
        connectors: b.connectors.clone(),
    })
}

impl NaeToPartition {
    /// Good partition from an NAE-satisfying assignment.
    pub fn forward(&self, assignment: &[bool]) -> Result<Partition, ReductionError> {
        if !self.formula.is_satisfied_by(assignment) {
            return Err(ReductionError::InvalidInput("assignment does not NAE-satisfy the formula".into()));
        }
        let mut parts = vec![usize::MAX; self.artifact.digraph.n()];
        for i in 0..self.formula.num_vars {
            let c = colour_of(assignment[i]);
            for &(_, x) in &self.occurrence[i] {
                parts[x] = c;
            }
            for ids in &self.y[i] {
                for &v in ids {
                    parts[v] = 1 - c;
                }
            }
        }
        for (j, clause) in self.formula.clauses.iter().enumerate() {
            let ones = clause.iter().filter(|l| assignment[l.var]).count();
            let zeros = clause.len() - ones;
            // minority colour when it is unique; a tie goes to colour 1
            parts[self.t[j]] = if zeros == 1 && ones != 1 { 1 } else { 0 };
        }
        for &u in &self.u {
            parts[u] = 0;
        }
        for c in &self.connectors {
            c.extend(&mut parts);
        }
        let pi = Partition::new(parts, 2).map_err(|e| ReductionError::Postcondition(e.to_string()))?;
        let verdict = check_delta_bounded(&self.artifact.digraph, &pi, self.k, self.k).expect("sizes match");
        if !verdict.is_valid() {
            return Err(ReductionError::Postcondition(format!("forward partition rejected: {verdict:?}")));
        }
        Ok(pi)
    }

    /// Assignment from a good partition: a variable is true when its
    /// occurrence vertices are in part 0. Unused variables are false.
    pub fn backward(&self, pi: &Partition) -> Vec<bool> {
        self.occurrence
            .iter()
            .map(|occ| occ.first().is_some_and(|&(_, x)| pi.part_of(x) == 0))
            .collect()
    }
}

/// p-colourability to k-max-out-degree-reducing p-partition,
/// `k >= 2`, `3 <= p <= 2k - 1`.
#[derive(Debug, Clone)]
pub struct ColoringToPartition {
    pub artifact: ReductionArtifact,
    pub graph: Graph,
    pub k: usize,
    pub p: usize,
    /// `x[i][j]` is `x^i_{j+1}`.
    pub x: Vec<Vec<usize>>,
}

pub fn reduce_coloring_to_reducing_partition(g: &Graph, k: usize, p: usize) -> Result<ColoringToPartition, ReductionError> {
    if k < 2 || p < 3 || p > 2 * k - 1 {
        return Err(ReductionError::InvalidInput(format!("need k >= 2 and 3 <= p <= 2k - 1, got k = {k}, p = {p}")));
    }
    let n = g.n();
    if n == 0 {
        return Err(ReductionError::InvalidInput("graph has no vertices".into()));
    }
    let mut b = Builder::new();
    let x: Vec<Vec<usize>> = (0..n).map(|i| add_chain(&mut b, k, p, n, &format!("D[{i}]."))).collect();
    for (i, j) in g.edges() {
        // one arc per edge, from the lower-indexed gadget to the higher
        b.arc(x[i][j], x[j][i]);
    }
    let artifact = ReductionArtifact::new(
        &b,
        &[("k", k), ("p", p), ("graph_vertices", n)],
        "p-colourability to k-max-out-degree-reducing p-partition",
        b.n(),
    );
    artifact.require(artifact.digraph.max_out_degree() <= k, "out-degree above k")?;
    Ok(ColoringToPartition {
        artifact,
        graph: g.clone(),
        k,
        p,
        x,
    })
}

impl ColoringToPartition {
    /// Partition from a proper colouring with colours `0..p`.
    pub fn forward(&self, color: &[usize]) -> Result<Partition, ReductionError> {
        if color.len() != self.graph.n() || color.iter().any(|&c| c >= self.p) || self.graph.edges().any(|(u, v)| color[u] == color[v]) {
            return Err(ReductionError::InvalidInput("not a proper p-colouring".into()));
        }
        let d = &self.artifact.digraph;
        let mut parts = vec![usize::MAX; d.n()];
        for (i, xs) in self.x.iter().enumerate() {
            for &v in xs {
                parts[v] = color[i];
            }
        }
        // tournament vertices of each D_2 take the other p - 1 colours
        for (i, xs) in self.x.iter().enumerate() {
            for pair in xs.windows(2) {
                let mut free = (0..self.p).filter(|&c| c != color[i]);
                let mut tour: Vec<usize> = (pair[0] + 1..pair[1]).collect();
                tour.sort_unstable();
                for v in tour {
                    parts[v] = free.next().expect("p - 1 free colours");
                }
            }
        }
        let pi = Partition::new(parts, self.p).map_err(|e| ReductionError::Postcondition(e.to_string()))?;
        let verdict = check_max_reducing(d, &pi, self.k).expect("sizes match");
        if !verdict.is_valid() {
            return Err(ReductionError::Postcondition(format!("forward partition rejected: {verdict:?}")));
        }
        Ok(pi)
    }

    /// Colouring from a partition: vertex `i` takes the part of `x^i_1`.
    pub fn backward(&self, pi: &Partition) -> Vec<usize> {
        self.x.iter().map(|xs| pi.part_of(xs[0])).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::parse_dimacs;
    use crate::oracle::{
        coloring_brute_force, kernel_search, pruned_partition_search, sat_brute_force, sat_kernel_search, sat_partition_search,
        Property, SearchOptions,
    };

    fn sat(text: &str) -> CnfFormula {
        parse_dimacs(text, FormulaMode::Plain3Sat).unwrap()
    }

    const SAT_ONE: &str = "p cnf 3 2\n1 2 3 0\n-1 -2 3 0\n";
    const UNSAT_ONE: &str = "p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n";

    #[test]
    fn kernel_reduction_agrees_with_sat() {
        for strong in [false, true] {
            for (text, expect) in [(SAT_ONE, true), (UNSAT_ONE, false), ("p cnf 1 1\n1 1 1 0", true)] {
                let f = sat(text);
                let r = reduce_sat_to_kernel(&f, strong).unwrap();
                assert_eq!(r.formula.clauses.len() % 2, 1);
                let kernel = kernel_search(&r.artifact.digraph);
                assert_eq!(kernel.is_some(), expect, "{text} strong={strong}");
                assert_eq!(sat_kernel_search(&r.artifact.digraph).unwrap().is_some(), expect);
                if let Some(k) = kernel {
                    assert!(r.formula.is_satisfied_by(&r.backward(&k)));
                }
                if let Some(a) = sat_brute_force(&f).unwrap() {
                    let k = r.forward(&a).unwrap();
                    assert_eq!(r.backward(&k), a);
                }
            }
        }
    }

    #[test]
    fn strong_kernel_skips_unused_variables() {
        let r = reduce_sat_to_kernel(&sat("p cnf 2 1\n1 1 1 0"), true).unwrap();
        assert!(r.artifact.digraph.is_strong());
        assert_eq!(r.literals[1], None);
        let k = r.forward(&[true, true]).unwrap();
        assert_eq!(r.backward(&k), vec![true, false]);
    }

    #[test]
    fn kernel_reduction_sizes() {
        let r = reduce_sat_to_kernel(&sat("p cnf 1 1\n1 1 1 0"), false).unwrap();
        assert_eq!(r.artifact.digraph.n(), 11);
        let r = reduce_sat_to_kernel(&sat(SAT_ONE), true).unwrap();
        assert_eq!(r.artifact.digraph.n(), 27 + 6 + 5 + 3);
    }

    #[test]
    fn delta_reduction_translates_witnesses() {
        for (k1, k2) in [(0, 2), (1, 2)] {
            let f = sat(SAT_ONE);
            let r = reduce_sat_to_delta_partition(&f, k1, k2).unwrap();
            let d = &r.artifact.digraph;
            assert!(d.is_strong() && d.is_out_regular(3));
            for bits in 0..8u32 {
                let a: Vec<bool> = (0..3).map(|i| bits >> i & 1 == 1).collect();
                if f.is_satisfied_by(&a) {
                    let pi = r.forward(&a).unwrap();
                    assert_eq!(r.backward(&pi), a);
                } else {
                    assert!(r.forward(&a).is_err());
                }
            }
        }
        assert!(matches!(
            reduce_sat_to_delta_partition(&sat(SAT_ONE), 1, 3),
            Err(ReductionError::Unsupported(_))
        ));
        assert!(matches!(
            reduce_sat_to_delta_partition(&sat(SAT_ONE), 2, 2),
            Err(ReductionError::InvalidInput(_))
        ));
    }

    #[test]
    fn delta_reduction_rejects_unsatisfiable() {
        let f = sat(UNSAT_ONE);
        let r = reduce_sat_to_delta_partition(&f, 1, 2).unwrap();
        let found = sat_partition_search(
            &r.artifact.digraph,
            Property::DeltaBounded { k1: 1, k2: 2 },
            2,
            SearchOptions::default(),
        )
        .unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn nae_reduction() {
        let f = parse_dimacs("p cnf 4 2\n1 2 3 0\n2 3 4 0\n", FormulaMode::MonotoneNae).unwrap();
        let r = reduce_nae_to_kk_partition(&f, 1).unwrap();
        assert!(r.artifact.digraph.is_out_regular(3) && r.artifact.digraph.is_strong());
        for bits in 0..16u32 {
            let a: Vec<bool> = (0..4).map(|i| bits >> i & 1 == 1).collect();
            if f.is_satisfied_by(&a) {
                let pi = r.forward(&a).unwrap();
                assert_eq!(r.backward(&pi), a);
            }
        }
        let all_equal = parse_dimacs("p cnf 3 1\n1 2 2 0\n", FormulaMode::MonotoneNae).unwrap();
        assert!(matches!(reduce_nae_to_kk_partition(&all_equal, 1), Err(ReductionError::InvalidInput(_))));
        assert!(matches!(reduce_nae_to_kk_partition(&f, 2), Err(ReductionError::InvalidInput(_))));
    }

    #[test]
    fn coloring_reduction_agrees_with_colorability() {
        let triangle = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for (g, expect) in [(triangle, true), (k4, false)] {
            let r = reduce_coloring_to_reducing_partition(&g, 2, 3).unwrap();
            let found = pruned_partition_search(&r.artifact.digraph, Property::MaxReducing { k: 2 }, 3, SearchOptions::default()).unwrap();
            assert_eq!(found.is_some(), expect);
            if let Some(pi) = found {
                let c = r.backward(&pi);
                assert!(g.edges().all(|(u, v)| c[u] != c[v]));
            }
            if let Some(c) = coloring_brute_force(&g, 3, u64::MAX).unwrap() {
                let pi = r.forward(&c).unwrap();
                assert_eq!(r.backward(&pi), c);
            }
        }
        assert!(reduce_coloring_to_reducing_partition(&Graph::from_edges(2, [(0, 1)]).unwrap(), 2, 4).is_err());
    }
}
