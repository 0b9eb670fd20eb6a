//! Length-truncated Cambrian semilattices: the sortable elements under the
//! induced weak order, their Hasse diagrams, intervals, joins and meets.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::coxeter::{CoxeterSystem, GroupElement};
use crate::sortable::{enumerate_sortables, CoxeterWord, SortableError, SortingWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CambrianError {
    #[error("{0} is not below {1}")]
    NotComparable(String, String),
    #[error("{0} has length beyond the truncation cap {1}")]
    OutOfTruncation(String, usize),
    #[error("{0} is not sortable")]
    NotSortable(String),
    #[error("no upper bound within the truncation cap {0}; widen the cap")]
    NoUpperBoundWithinCap(usize),
    #[error("meet of an empty set")]
    EmptyInput,
    #[error(transparent)]
    Sortable(#[from] SortableError),
}

/// The sortable elements of length at most `cap`, with the weak order
/// restricted to them and the cover relation.
#[derive(Clone, Debug)]
pub struct CambrianPoset {
    sys: CoxeterSystem,
    gamma: CoxeterWord,
    cap: usize,
    elements: Vec<GroupElement>,
    sorting: Vec<SortingWord>,
    alpha: Vec<BTreeSet<usize>>,
    index: HashMap<GroupElement, usize>,
    leq: Vec<Vec<bool>>,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl CambrianPoset {
    pub fn build(sys: &CoxeterSystem, gamma: &CoxeterWord, cap: usize) -> Self {
        let sortables = enumerate_sortables(sys, gamma, cap);
        let count = sortables.len();
        let mut elements = Vec::with_capacity(count);
        let mut sorting = Vec::with_capacity(count);
        for s in sortables {
            elements.push(s.element);
            sorting.push(s.sorting);
        }
        let alpha: Vec<BTreeSet<usize>> = sorting.iter().map(SortingWord::alpha).collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();

        let mut leq = vec![vec![false; count]; count];
        for i in 0..count {
            leq[i][i] = true;
            for j in 0..count {
                if elements[i].length() < elements[j].length()
                    && alpha[i].is_subset(&alpha[j])
                    && sys.weak_leq(&elements[i], &elements[j])
                {
                    leq[i][j] = true;
                }
            }
        }

        let mut covers = Vec::new();
        let mut up = vec![Vec::new(); count];
        let mut down = vec![Vec::new(); count];
        for i in 0..count {
            for j in 0..count {
                if i == j || !leq[i][j] {
                    continue;
                }
                let between = (0..count).any(|k| k != i && k != j && leq[i][k] && leq[k][j]);
                if !between {
                    covers.push((i, j));
                    up[i].push(j);
                    down[j].push(i);
                }
            }
        }

        CambrianPoset {
            sys: sys.clone(),
            gamma: gamma.clone(),
            cap,
            elements,
            sorting,
            alpha,
            index,
            leq,
            covers,
            up,
            down,
        }
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn gamma(&self) -> &CoxeterWord {
        &self.gamma
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn sorting_word(&self, i: usize) -> &SortingWord {
        &self.sorting[i]
    }

    pub fn alpha(&self, i: usize) -> &BTreeSet<usize> {
        &self.alpha[i]
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Locates an element, explaining why it is missing.
    pub fn locate(&self, w: &GroupElement) -> Result<usize, CambrianError> {
        if let Some(i) = self.index_of(w) {
            return Ok(i);
        }
        let name = self.sys.format_element(w);
        if w.length() > self.cap {
            Err(CambrianError::OutOfTruncation(name, self.cap))
        } else {
            Err(CambrianError::NotSortable(name))
        }
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Hasse diagram edges `(lower, upper)`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(&j)
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    /// Index of the identity, the global minimum.
    pub fn bottom(&self) -> usize {
        0
    }

    /// Comparable pairs `(u, v)` with `u ≤ v`, ordered by `v` then `u`.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.len() {
            for u in 0..self.len() {
                if self.leq[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn interval(
        &self,
        lower: usize,
        upper: usize,
    ) -> Result<ClosedInterval<'_>, CambrianError> {
        if !self.leq[lower][upper] {
            return Err(CambrianError::NotComparable(
                self.sys.format_element(&self.elements[lower]),
                self.sys.format_element(&self.elements[upper]),
            ));
        }
        let members: Vec<usize> = (0..self.len())
            .filter(|&z| self.leq[lower][z] && self.leq[z][upper])
            .collect();
        let covers = self
            .covers
            .iter()
            .copied()
            .filter(|&(a, b)| self.leq[lower][a] && self.leq[b][upper])
            .collect();
        Ok(ClosedInterval {
            poset: self,
            lower,
            upper,
            members,
            covers,
        })
    }

    pub fn interval_of(
        &self,
        u: &GroupElement,
        v: &GroupElement,
    ) -> Result<ClosedInterval<'_>, CambrianError> {
        let lower = self.locate(u)?;
        let upper = self.locate(v)?;
        self.interval(lower, upper)
    }

    /// Join inside the truncated poset. Upper bounds of length at most the
    /// cap are all present, so a found join is the join in the semilattice.
    pub fn join(&self, xs: &[usize]) -> Result<usize, CambrianError> {
        if xs.is_empty() {
            return Ok(self.bottom());
        }
        // elements are sorted by length: the first upper bound is the least
        let first = (0..self.len())
            .find(|&z| xs.iter().all(|&x| self.leq[x][z]))
            .ok_or(CambrianError::NoUpperBoundWithinCap(self.cap))?;
        debug_assert!((0..self.len())
            .filter(|&z| xs.iter().all(|&x| self.leq[x][z]))
            .all(|z| self.leq[first][z]));
        Ok(first)
    }

    pub fn meet(&self, xs: &[usize]) -> Result<usize, CambrianError> {
        if xs.is_empty() {
            return Err(CambrianError::EmptyInput);
        }
        let last = (0..self.len())
            .rev()
            .find(|&z| xs.iter().all(|&x| self.leq[z][x]))
            .expect("the identity is a lower bound");
        Ok(last)
    }

    pub fn join_elements(&self, xs: &[GroupElement]) -> Result<GroupElement, CambrianError> {
        let idx = xs
            .iter()
            .map(|x| self.locate(x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.elements[self.join(&idx)?].clone())
    }

    pub fn meet_elements(&self, xs: &[GroupElement]) -> Result<GroupElement, CambrianError> {
        let idx = xs
            .iter()
            .map(|x| self.locate(x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.elements[self.meet(&idx)?].clone())
    }

    /// Human-readable label of an element: its sorting word with dividers.
    pub fn label(&self, i: usize) -> String {
        let s = self.sorting[i].format(&self.sys);
        if s.is_empty() {
            "ε".to_string()
        } else {
            s
        }
    }
}

/// A closed interval `[u, v]` of a [`CambrianPoset`].
#[derive(Clone, Debug)]
pub struct ClosedInterval<'a> {
    poset: &'a CambrianPoset,
    lower: usize,
    upper: usize,
    members: Vec<usize>,
    covers: Vec<(usize, usize)>,
}

impl<'a> ClosedInterval<'a> {
    pub fn poset(&self) -> &'a CambrianPoset {
        self.poset
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    /// Member indices into the poset, in poset order (a linear extension).
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, z: usize) -> bool {
        self.poset.leq(self.lower, z) && self.poset.leq(z, self.upper)
    }

    /// Upper covers of `z` that stay inside the interval.
    pub fn upper_covers(&self, z: usize) -> impl Iterator<Item = usize> + '_ {
        self.poset
            .upper_covers(z)
            .iter()
            .copied()
            .filter(move |&y| self.poset.leq(y, self.upper))
    }

    /// Elements covering the bottom of the interval.
    pub fn atoms(&self) -> Vec<usize> {
        self.upper_covers(self.lower).collect()
    }

    /// The top is the join of the atoms; `[u, u]` counts as nuclear.
    pub fn is_nuclear(&self) -> bool {
        let atoms = self.atoms();
        if atoms.is_empty() {
            return self.lower == self.upper;
        }
        self.poset
            .join(&atoms)
            .map(|j| j == self.upper)
            .unwrap_or(false)
    }

    /// Every pair of members has a join and a meet inside the interval.
    pub fn is_lattice(&self) -> bool {
        let p = self.poset;
        for &a in &self.members {
            for &b in &self.members {
                let join = self
                    .members
                    .iter()
                    .copied()
                    .filter(|&z| p.leq(a, z) && p.leq(b, z))
                    .collect::<Vec<_>>();
                let meet = self
                    .members
                    .iter()
                    .copied()
                    .filter(|&z| p.leq(z, a) && p.leq(z, b))
                    .collect::<Vec<_>>();
                let least = join.iter().any(|&j| join.iter().all(|&z| p.leq(j, z)));
                let greatest = meet.iter().any(|&m| meet.iter().all(|&z| p.leq(z, m)));
                if !least || !greatest {
                    return false;
                }
            }
        }
        true
    }
}
