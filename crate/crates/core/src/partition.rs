//! Vertex partitions and the certificate checkers for every partition
//! property the toolkit handles.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::Digraph;

/// Assignment of every vertex to a part in `0..p`. Parts may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
    p: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("vertex {vertex} assigned to part {part}, but only {p} parts exist")]
    PartOutOfRange { vertex: usize, part: usize, p: usize },
    #[error("partition covers {partition} vertices, digraph has {digraph}")]
    SizeMismatch { partition: usize, digraph: usize },
    #[error("expected a {expected}-partition, got p = {found}")]
    WrongPartCount { expected: usize, found: usize },
    #[error("vertex {0} is not in the digraph")]
    UnknownVertex(usize),
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
}

impl Partition {
    pub fn new(parts: Vec<usize>, p: usize) -> Result<Self, PartitionError> {
        if let Some((vertex, &part)) = parts.iter().enumerate().find(|(_, &x)| x >= p) {
            return Err(PartitionError::PartOutOfRange { vertex, part, p });
        }
        Ok(Self { parts, p })
    }

    /// Uses `max part + 1` parts (1 for the empty assignment).
    pub fn from_parts(parts: Vec<usize>) -> Self {
        let p = parts.iter().copied().max().map_or(1, |m| m + 1);
        Self { parts, p }
    }

    /// Two parts: `in_first[v]` selects part 0.
    pub fn from_bipartition(in_first: &[bool]) -> Self {
        Self {
            parts: in_first.iter().map(|&b| if b { 0 } else { 1 }).collect(),
            p: 2,
        }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part_count(&self) -> usize {
        self.p
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.parts[v]
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Vertices of part `i`, ascending.
    pub fn members(&self, i: usize) -> Vec<usize> {
        (0..self.parts.len()).filter(|&v| self.parts[v] == i).collect()
    }

    /// Out-degree of `v` inside its own part.
    pub fn inner_out_degree(&self, d: &Digraph, v: usize) -> usize {
        let own = self.parts[v];
        d.out_neighbors(v).iter().filter(|&&w| self.parts[w] == own).count()
    }

    /// `Δ⁺` of the subdigraph induced by part `i` (0 when empty).
    pub fn part_max_out_degree(&self, d: &Digraph, i: usize) -> usize {
        (0..self.len())
            .filter(|&v| self.parts[v] == i)
            .map(|v| self.inner_out_degree(d, v))
            .max()
            .unwrap_or(0)
    }

    /// Text format: one line `v part` per vertex, in vertex order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, part) in self.parts.iter().enumerate() {
            let _ = writeln!(s, "{v} {part}");
        }
        s
    }

    /// Parses `v part` lines. Every vertex `0..n` must appear exactly once.
    /// `p` defaults to `max part + 1`.
    pub fn parse(text: &str, p: Option<usize>) -> Result<Self, PartitionError> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = raw.split_whitespace().collect();
            let bad = |reason: &str| PartitionError::Format {
                line,
                reason: reason.into(),
            };
            if fields.len() != 2 {
                return Err(bad("expected `v part`"));
            }
            let v: usize = fields[0].parse().map_err(|_| bad("bad vertex id"))?;
            let part: usize = fields[1].parse().map_err(|_| bad("bad part id"))?;
            entries.push((line, v, part));
        }
        let n = entries.len();
        let mut parts = vec![usize::MAX; n];
        for (line, v, part) in entries {
            if v >= n || parts[v] != usize::MAX {
                return Err(PartitionError::Format {
                    line,
                    reason: format!("vertex {v} repeated or out of range"),
                });
            }
            parts[v] = part;
        }
        match p {
            Some(p) => Partition::new(parts, p),
            None => Ok(Partition::from_parts(parts)),
        }
    }
}

/// Kernel text format: one line of space-separated vertex ids.
pub fn kernel_to_text(kernel: &[usize]) -> String {
    let ids: Vec<String> = kernel.iter().map(ToString::to_string).collect();
    format!("{}\n", ids.join(" "))
}

pub fn parse_kernel(text: &str) -> Result<Vec<usize>, PartitionError> {
    let mut ids = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            ids.push(tok.parse().map_err(|_| PartitionError::Format {
                line: i + 1,
                reason: format!("bad vertex id `{tok}`"),
            })?);
        }
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

/// First (smallest-id) reason a certificate is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// A vertex keeps too many out-neighbours in its own part.
    Vertex {
        vertex: usize,
        part: usize,
        inner_out_degree: usize,
    },
    /// A part's induced maximum out-degree is too large.
    Part { part: usize, max_out_degree: usize },
    NotIndependent(usize, usize),
    NotDominated(usize),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Vertex {
                vertex,
                part,
                inner_out_degree,
            } => write!(f, "Violation vertex {vertex} part {part} inner-out-degree {inner_out_degree}"),
            Violation::Part {
                part,
                max_out_degree,
            } => write!(f, "Violation part {part} max-out-degree {max_out_degree}"),
            Violation::NotIndependent(u, v) => write!(f, "NotIndependent {u} {v}"),
            Violation::NotDominated(v) => write!(f, "NotDominated {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Valid,
    Violation(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

fn check_size(d: &Digraph, pi: &Partition) -> Result<(), PartitionError> {
    if pi.len() != d.n() {
        return Err(PartitionError::SizeMismatch {
            partition: pi.len(),
            digraph: d.n(),
        });
    }
    Ok(())
}

fn check_two_parts(pi: &Partition) -> Result<(), PartitionError> {
    if pi.part_count() != 2 {
        return Err(PartitionError::WrongPartCount {
            expected: 2,
            found: pi.part_count(),
        });
    }
    Ok(())
}

/// Every vertex keeps at most `max(0, d⁺(v) - k)` out-neighbours in its part.
pub fn check_all_reducing(d: &Digraph, pi: &Partition, k: usize) -> Result<Verdict, PartitionError> {
    check_size(d, pi)?;
    for v in d.vertices() {
        let inner = pi.inner_out_degree(d, v);
        if inner > d.out_degree(v).saturating_sub(k) {
            return Ok(Verdict::Violation(Violation::Vertex {
                vertex: v,
                part: pi.part_of(v),
                inner_out_degree: inner,
            }));
        }
    }
    Ok(Verdict::Valid)
}

fn check_part_caps(d: &Digraph, pi: &Partition, caps: &[usize]) -> Verdict {
    for (part, &cap) in caps.iter().enumerate() {
        let max = pi.part_max_out_degree(d, part);
        if max > cap {
            return Verdict::Violation(Violation::Part {
                part,
                max_out_degree: max,
            });
        }
    }
    Verdict::Valid
}

/// Every part has induced `Δ⁺` at most `max(0, Δ⁺(D) - k)`.
pub fn check_max_reducing(d: &Digraph, pi: &Partition, k: usize) -> Result<Verdict, PartitionError> {
    check_size(d, pi)?;
    let cap = d.max_out_degree().saturating_sub(k);
    Ok(check_part_caps(d, pi, &vec![cap; pi.part_count()]))
}

/// Ordered check: part 0 has `Δ⁺ <= k1`, part 1 has `Δ⁺ <= k2`.
pub fn check_delta_bounded(
    d: &Digraph,
    pi: &Partition,
    k1: usize,
    k2: usize,
) -> Result<Verdict, PartitionError> {
    check_size(d, pi)?;
    check_two_parts(pi)?;
    Ok(check_part_caps(d, pi, &[k1, k2]))
}

/// Independent set that every outside vertex reaches by one arc.
pub fn check_kernel(d: &Digraph, kernel: &[usize]) -> Result<Verdict, PartitionError> {
    let mut inside = vec![false; d.n()];
    for &v in kernel {
        if v >= d.n() {
            return Err(PartitionError::UnknownVertex(v));
        }
        inside[v] = true;
    }
    let mut worst: Option<(usize, usize)> = None;
    for (u, v) in d.arcs() {
        if inside[u] && inside[v] {
            let pair = (u.min(v), u.max(v));
            worst = Some(worst.map_or(pair, |w| w.min(pair)));
        }
    }
    if let Some((u, v)) = worst {
        return Ok(Verdict::Violation(Violation::NotIndependent(u, v)));
    }
    for v in d.vertices() {
        if !inside[v] && !d.out_neighbors(v).iter().any(|&w| inside[w]) {
            return Ok(Verdict::Violation(Violation::NotDominated(v)));
        }
    }
    Ok(Verdict::Valid)
}

/// Every vertex has at most `d⁺(v)/2` out-neighbours in its own part
/// (exact rational comparison).
pub fn check_majority_2coloring(d: &Digraph, pi: &Partition) -> Result<Verdict, PartitionError> {
    check_size(d, pi)?;
    check_two_parts(pi)?;
    for v in d.vertices() {
        let inner = pi.inner_out_degree(d, v);
        if 2 * inner > d.out_degree(v) {
            return Ok(Verdict::Violation(Violation::Vertex {
                vertex: v,
                part: pi.part_of(v),
                inner_out_degree: inner,
            }));
        }
    }
    Ok(Verdict::Valid)
}

/// Kernel view of a 2-partition: part 0.
pub fn kernel_of(pi: &Partition) -> Vec<usize> {
    pi.members(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_digraph, directed_cycle, rotational_tournament};

    fn digon() -> Digraph {
        Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap()
    }

    fn all_2partitions(n: usize) -> impl Iterator<Item = Partition> {
        (0u32..1 << n).map(move |m| Partition::new((0..n).map(|v| (m >> v & 1) as usize).collect(), 2).unwrap())
    }

    #[test]
    fn all_reducing_examples() {
        let pi = Partition::new(vec![0, 1], 2).unwrap();
        assert!(check_all_reducing(&digon(), &pi, 1).unwrap().is_valid());

        let c3 = directed_cycle(3);
        for pi in all_2partitions(3) {
            assert!(!check_all_reducing(&c3, &pi, 1).unwrap().is_valid());
            assert!(!check_max_reducing(&c3, &pi, 1).unwrap().is_valid());
        }

        let alt = Partition::new(vec![0, 1, 0, 1], 2).unwrap();
        let c4 = directed_cycle(4);
        assert!(check_all_reducing(&c4, &alt, 1).unwrap().is_valid());
        assert!(check_max_reducing(&c4, &alt, 1).unwrap().is_valid());
    }

    #[test]
    fn violation_reports_smallest_vertex() {
        let c3 = directed_cycle(3);
        let pi = Partition::new(vec![0, 0, 0], 2).unwrap();
        assert_eq!(
            check_all_reducing(&c3, &pi, 1).unwrap(),
            Verdict::Violation(Violation::Vertex {
                vertex: 0,
                part: 0,
                inner_out_degree: 1
            })
        );
        assert_eq!(
            check_max_reducing(&c3, &pi, 1).unwrap(),
            Verdict::Violation(Violation::Part {
                part: 0,
                max_out_degree: 1
            })
        );
    }

    #[test]
    fn max_reducing_singletons() {
        let qr5 = rotational_tournament(5);
        let pi = Partition::new((0..5).collect(), 5).unwrap();
        assert!(check_max_reducing(&qr5, &pi, 2).unwrap().is_valid());
    }

    #[test]
    fn delta_bounded_examples() {
        // bipartite digraph, parts = sides, caps 0
        let d = Digraph::from_arcs(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        let pi = Partition::new(vec![0, 0, 1, 1], 2).unwrap();
        assert!(check_delta_bounded(&d, &pi, 0, 0).unwrap().is_valid());

        let c3 = directed_cycle(3);
        let pi = Partition::new(vec![0, 1, 1], 2).unwrap();
        assert!(check_delta_bounded(&c3, &pi, 0, 1).unwrap().is_valid());
        assert!(!check_delta_bounded(&c3, &pi, 1, 0).unwrap().is_valid());
        let all_first = Partition::new(vec![0, 0, 0], 2).unwrap();
        assert!(!check_delta_bounded(&c3, &all_first, 0, 5).unwrap().is_valid());

        let three = Partition::new(vec![0, 1, 2], 3).unwrap();
        assert_eq!(
            check_delta_bounded(&c3, &three, 0, 1),
            Err(PartitionError::WrongPartCount { expected: 2, found: 3 })
        );
    }

    #[test]
    fn kernel_examples() {
        assert!(check_kernel(&digon(), &[0]).unwrap().is_valid());
        assert_eq!(
            check_kernel(&directed_cycle(3), &[0]).unwrap(),
            Verdict::Violation(Violation::NotDominated(1))
        );
        assert_eq!(
            check_kernel(&digon(), &[0, 1]).unwrap(),
            Verdict::Violation(Violation::NotIndependent(0, 1))
        );
        assert_eq!(check_kernel(&digon(), &[7]), Err(PartitionError::UnknownVertex(7)));
    }

    #[test]
    fn majority_examples() {
        let k4 = complete_digraph(4);
        let pi = Partition::new(vec![0, 0, 1, 1], 2).unwrap();
        assert!(check_majority_2coloring(&k4, &pi).unwrap().is_valid());
        let pi = Partition::new(vec![0, 0, 0, 1], 2).unwrap();
        assert!(!check_majority_2coloring(&k4, &pi).unwrap().is_valid());

        let c3 = directed_cycle(3);
        for pi in all_2partitions(3) {
            assert!(!check_majority_2coloring(&c3, &pi).unwrap().is_valid());
        }
        let iso = Digraph::empty(3);
        for pi in all_2partitions(3) {
            assert!(check_majority_2coloring(&iso, &pi).unwrap().is_valid());
        }
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let pi = Partition::new(vec![0, 1], 2).unwrap();
        assert!(matches!(
            check_all_reducing(&directed_cycle(3), &pi, 1),
            Err(PartitionError::SizeMismatch { .. })
        ));
        assert!(Partition::new(vec![0, 2], 2).is_err());
    }

    #[test]
    fn text_round_trip() {
        let pi = Partition::new(vec![1, 0, 2, 0], 3).unwrap();
        assert_eq!(Partition::parse(&pi.to_text(), Some(3)).unwrap(), pi);
        assert!(Partition::parse("0 0\n0 1\n", None).is_err());
        assert!(Partition::parse("0 3\n1 0\n", Some(2)).is_err());
        assert_eq!(parse_kernel("3 1\n").unwrap(), vec![1, 3]);
        assert_eq!(kernel_to_text(&[1, 3]), "1 3\n");
    }
}
