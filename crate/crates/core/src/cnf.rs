//! CNF formulas and a DIMACS reader.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Variables are 0-based here; DIMACS ids are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Self { var, positive: false }
    }

    pub fn value(&self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }

    fn dimacs(&self) -> i64 {
        let id = self.var as i64 + 1;
        if self.positive {
            id
        } else {
            -id
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulaMode {
    /// Ordinary satisfiability; every clause has exactly three literals.
    Plain3Sat,
    /// Not-all-equal satisfiability; only positive literals.
    MonotoneNae,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Literal>>,
    pub mode: FormulaMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("missing or malformed `p cnf <vars> <clauses>` header")]
    Header,
    #[error("line {line}: bad literal `{token}`")]
    BadToken { line: usize, token: String },
    #[error("literal {literal} out of range for {num_vars} variables")]
    OutOfRange { literal: i64, num_vars: usize },
    #[error("clause {clause} has {len} literals, expected {expected}")]
    Arity { clause: usize, len: usize, expected: usize },
    #[error("clause {clause} has a negative literal in monotone mode")]
    NotMonotone { clause: usize },
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
    #[error("last clause is not terminated by 0")]
    Unterminated,
}

impl CnfFormula {
    /// Builds and validates a formula.
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>, mode: FormulaMode) -> Result<Self, CnfError> {
        let f = Self {
            num_vars,
            clauses,
            mode,
        };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<(), CnfError> {
        for (j, clause) in self.clauses.iter().enumerate() {
            for lit in clause {
                if lit.var >= self.num_vars {
                    return Err(CnfError::OutOfRange {
                        literal: lit.dimacs(),
                        num_vars: self.num_vars,
                    });
                }
            }
            match self.mode {
                FormulaMode::Plain3Sat if clause.len() != 3 => {
                    return Err(CnfError::Arity {
                        clause: j,
                        len: clause.len(),
                        expected: 3,
                    })
                }
                FormulaMode::MonotoneNae if clause.iter().any(|l| !l.positive) => {
                    return Err(CnfError::NotMonotone { clause: j })
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn clause_satisfied(&self, j: usize, assignment: &[bool]) -> bool {
        let clause = &self.clauses[j];
        match self.mode {
            FormulaMode::Plain3Sat => clause.iter().any(|l| l.value(assignment)),
            FormulaMode::MonotoneNae => {
                clause.iter().any(|l| l.value(assignment)) && clause.iter().any(|l| !l.value(assignment))
            }
        }
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.num_vars && (0..self.clauses.len()).all(|j| self.clause_satisfied(j, assignment))
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let _ = write!(s, "{} ", lit.dimacs());
            }
            s.push_str("0\n");
        }
        s
    }
}

/// Reads DIMACS CNF. `c` lines are comments; clauses may span lines.
/// The mode is supplied by the caller, never inferred.
pub fn parse_dimacs(text: &str, mode: FormulaMode) -> Result<CnfFormula, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let f: Vec<&str> = t.split_whitespace().collect();
            if header.is_some() || f.len() != 4 || f[1] != "cnf" {
                return Err(CnfError::Header);
            }
            let n = f[2].parse().map_err(|_| CnfError::Header)?;
            let m = f[3].parse().map_err(|_| CnfError::Header)?;
            header = Some((n, m));
            continue;
        }
        let (n, _) = header.ok_or(CnfError::Header)?;
        for tok in t.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| CnfError::BadToken {
                line: line_no,
                token: tok.into(),
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if lit.unsigned_abs() as usize > n {
                return Err(CnfError::OutOfRange { literal: lit, num_vars: n });
            }
            current.push(Literal {
                var: lit.unsigned_abs() as usize - 1,
                positive: lit > 0,
            });
        }
    }
    let (n, m) = header.ok_or(CnfError::Header)?;
    if !current.is_empty() {
        return Err(CnfError::Unterminated);
    }
    if clauses.len() != m {
        return Err(CnfError::ClauseCount {
            declared: m,
            found: clauses.len(),
        });
    }
    CnfFormula::new(n, clauses, mode)
}
