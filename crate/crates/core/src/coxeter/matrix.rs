use std::fmt;

use serde::{Deserialize, Serialize};

use super::CoxeterError;
use crate::generators::MAX_GENERATORS;

/// Order `m` of the product of two generators; `Infinite` means no relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BondOrder {
    Finite(u32),
    Infinite,
}

impl BondOrder {
    pub fn finite(self) -> Option<u32> {
        match self {
            BondOrder::Finite(m) => Some(m),
            BondOrder::Infinite => None,
        }
    }
}

impl fmt::Display for BondOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BondOrder::Finite(m) => write!(f, "{m}"),
            BondOrder::Infinite => write!(f, "inf"),
        }
    }
}

/// A validated Coxeter matrix: symmetric, ones on the diagonal, off-diagonal
/// entries at least 2 or infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    entries: Vec<Vec<BondOrder>>,
}

impl CoxeterMatrix {
    /// Validates a raw square grid.
    pub fn new(raw: Vec<Vec<BondOrder>>) -> Result<Self, CoxeterError> {
        let n = raw.len();
        if n == 0 {
            return Err(CoxeterError::EmptyMatrix);
        }
        if n > MAX_GENERATORS {
            return Err(CoxeterError::TooManyGenerators(n));
        }
        if let Some(row) = raw.iter().position(|r| r.len() != n) {
            return Err(CoxeterError::NotSquare {
                row,
                len: raw[row].len(),
                expected: n,
            });
        }
        for i in 0..n {
            if raw[i][i] != BondOrder::Finite(1) {
                return Err(CoxeterError::BadDiagonal { i });
            }
            for j in 0..n {
                if raw[i][j] != raw[j][i] {
                    return Err(CoxeterError::NotSymmetric { i, j });
                }
                if i != j {
                    if let BondOrder::Finite(m) = raw[i][j] {
                        if m < 2 {
                            return Err(CoxeterError::EntryTooSmall { i, j, value: m });
                        }
                    }
                }
            }
        }
        Ok(CoxeterMatrix { entries: raw })
    }

    /// Convenience constructor from integers, with `0` standing for infinity.
    pub fn from_integers(raw: &[Vec<u32>]) -> Result<Self, CoxeterError> {
        Self::new(
            raw.iter()
                .map(|row| {
                    row.iter()
                        .map(|&m| {
                            if m == 0 {
                                BondOrder::Infinite
                            } else {
                                BondOrder::Finite(m)
                            }
                        })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> BondOrder {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<BondOrder>] {
        &self.entries
    }

    /// True when `s_i` and `s_j` commute.
    pub fn commute(&self, i: usize, j: usize) -> bool {
        i == j || self.entries[i][j] == BondOrder::Finite(2)
    }

    /// Least common multiple of all finite entries (1 when there are none
    /// above 1).
    pub fn field_order(&self) -> u64 {
        let mut l: u64 = 1;
        for row in &self.entries {
            for m in row.iter().filter_map(|m| m.finite()) {
                l = lcm(l, m as u64);
            }
        }
        l
    }

    pub fn diagram(&self) -> CoxeterDiagram {
        let n = self.rank();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                match self.entries[i][j] {
                    BondOrder::Finite(2) => {}
                    BondOrder::Finite(3) => edges.push(DiagramEdge {
                        a: i,
                        b: j,
                        label: None,
                    }),
                    other => edges.push(DiagramEdge {
                        a: i,
                        b: j,
                        label: Some(other),
                    }),
                }
            }
        }
        CoxeterDiagram { vertices: n, edges }
    }

    /// Relabels generators: new index `k` is old index `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, CoxeterError> {
        let n = self.rank();
        let raw = (0..n)
            .map(|i| (0..n).map(|j| self.entries[perm[i]][perm[j]]).collect())
            .collect();
        Self::new(raw)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// An edge of the Coxeter diagram; `label` is set when `m ≥ 4` or `m = ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramEdge {
    pub a: usize,
    pub b: usize,
    pub label: Option<BondOrder>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterDiagram {
    pub vertices: usize,
    pub edges: Vec<DiagramEdge>,
}
