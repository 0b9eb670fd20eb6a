//! Coxeter-element words, sorting words, sortability and the projection
//! onto sortable elements.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::coxeter::{CoxeterError, CoxeterSystem, GroupElement};
use crate::generators::GeneratorSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SortableError {
    #[error("generator {0} appears more than once in the Coxeter word")]
    RepeatedLetter(String),
    #[error("Coxeter element word must use every generator exactly once (missing {0})")]
    NotAPermutation(String),
    #[error("element {0} does not lie in the parabolic subgroup of the Coxeter word")]
    NotInParabolic(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// A reduced word for a Coxeter element of a standard parabolic subgroup:
/// each letter of its support exactly once.
///
/// The first letter is the one treated as initial by every recursion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterWord {
    letters: Vec<usize>,
}

impl CoxeterWord {
    /// A Coxeter element of the whole system: a permutation of all generators.
    pub fn coxeter_element(
        sys: &CoxeterSystem,
        letters: Vec<usize>,
    ) -> Result<Self, SortableError> {
        let word = Self::parabolic(sys, letters)?;
        if let Some(missing) = (0..sys.rank()).find(|&i| !word.support().contains(i)) {
            return Err(SortableError::NotAPermutation(
                sys.name(missing).to_string(),
            ));
        }
        Ok(word)
    }

    /// A Coxeter element of the parabolic subgroup generated by `letters`.
    pub fn parabolic(sys: &CoxeterSystem, letters: Vec<usize>) -> Result<Self, SortableError> {
        let mut seen = GeneratorSet::EMPTY;
        for &i in &letters {
            if i >= sys.rank() {
                return Err(CoxeterError::BadGenerator(i).into());
            }
            if seen.contains(i) {
                return Err(SortableError::RepeatedLetter(sys.name(i).to_string()));
            }
            seen.insert(i);
        }
        Ok(CoxeterWord { letters })
    }

    /// `s1 s2 … sn` in index order.
    pub fn standard(sys: &CoxeterSystem) -> Self {
        CoxeterWord {
            letters: (0..sys.rank()).collect(),
        }
    }

    /// Parses a comma-separated list of generator names.
    pub fn parse(sys: &CoxeterSystem, text: &str) -> Result<Self, SortableError> {
        let letters = sys.parse_word(text)?;
        Self::coxeter_element(sys, letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Number of letters, `n` in the position formula `(i−1)·n + j`.
    pub fn rank(&self) -> usize {
        self.letters.len()
    }

    pub fn support(&self) -> GeneratorSet {
        self.letters.iter().copied().collect()
    }

    pub fn initial(&self) -> Option<usize> {
        self.letters.first().copied()
    }

    /// `sγs` for the initial letter `s`: the first letter moves to the end.
    pub fn rotated(&self) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(1);
        }
        CoxeterWord { letters }
    }

    /// `sγ` for the initial letter `s`, a Coxeter element of `W_⟨s⟩`.
    pub fn without_initial(&self) -> Self {
        CoxeterWord {
            letters: self.letters.iter().skip(1).copied().collect(),
        }
    }

    /// Letter of `γ^∞` at a 1-based position.
    pub fn letter_at(&self, position: usize) -> usize {
        self.letters[(position - 1) % self.letters.len()]
    }

    pub fn element(&self, sys: &CoxeterSystem) -> GroupElement {
        sys.element(&self.letters).expect("letters were validated")
    }

    pub fn format(&self, sys: &CoxeterSystem) -> String {
        self.letters
            .iter()
            .map(|&i| sys.name(i))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Every reduced word of the same Coxeter element, found by filtering
    /// permutations of the letters by group equality. Sorted.
    pub fn reduced_words(&self, sys: &CoxeterSystem) -> Vec<CoxeterWord> {
        let target = self.element(sys);
        let mut out = Vec::new();
        let mut letters = self.letters.clone();
        letters.sort_unstable();
        permutations(&letters, &mut |perm| {
            if sys.element(perm).expect("valid letters") == target {
                out.push(CoxeterWord {
                    letters: perm.to_vec(),
                });
            }
        });
        out.sort_by(|a, b| a.letters.cmp(&b.letters));
        out
    }
}

fn permutations(items: &[usize], visit: &mut impl FnMut(&[usize])) {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if rest.is_empty() {
            visit(prefix);
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            prefix.push(x);
            go(prefix, rest, visit);
            prefix.pop();
            rest.insert(k, x);
        }
    }
    go(&mut Vec::new(), &mut items.to_vec(), visit);
}

/// The sorting word of an element: the positions it occupies inside `γ^∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SortingWord {
    gamma: Vec<usize>,
    positions: Vec<usize>,
}

impl SortingWord {
    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    /// Occupied 1-based positions, increasing.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// `α_γ(w)` as a set.
    pub fn alpha(&self) -> BTreeSet<usize> {
        self.positions.iter().copied().collect()
    }

    pub fn rank(&self) -> usize {
        self.gamma.len()
    }

    /// The reduced word spelled by the occupied positions.
    pub fn letters(&self) -> Vec<usize> {
        let n = self.gamma.len();
        self.positions
            .iter()
            .map(|&p| self.gamma[(p - 1) % n])
            .collect()
    }

    pub fn block_count(&self) -> usize {
        match self.positions.last() {
            None => 0,
            Some(&p) => (p - 1) / self.gamma.len() + 1,
        }
    }

    /// Blocks as subsets of the generators.
    pub fn blocks(&self) -> Vec<GeneratorSet> {
        let n = self.gamma.len();
        let mut out = vec![GeneratorSet::EMPTY; self.block_count()];
        for &p in &self.positions {
            out[(p - 1) / n].insert(self.gamma[(p - 1) % n]);
        }
        out
    }

    /// Blocks as subwords of `γ`, in `γ`-order.
    pub fn block_words(&self) -> Vec<Vec<usize>> {
        let n = self.gamma.len();
        let mut out = vec![Vec::new(); self.block_count()];
        for &p in &self.positions {
            out[(p - 1) / n].push(self.gamma[(p - 1) % n]);
        }
        out
    }

    /// Exponent `δ_{i,j}` (both 1-based).
    pub fn exponent(&self, block: usize, letter: usize) -> bool {
        let p = (block - 1) * self.gamma.len() + letter;
        self.positions.binary_search(&p).is_ok()
    }

    pub fn is_nested(&self) -> bool {
        self.blocks().windows(2).all(|w| w[1].is_subset(w[0]))
    }

    /// Blocks separated by `" | "`, letters by spaces; empty for the identity.
    pub fn format(&self, sys: &CoxeterSystem) -> String {
        self.block_words()
            .iter()
            .map(|b| sys.format_word(b))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

impl fmt::Display for SortingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .block_words()
            .iter()
            .map(|b| {
                b.iter()
                    .map(|i| format!("s{}", i + 1))
                    .collect::<Vec<_>>()
                    .join("")
            })
            .collect();
        write!(f, "{}", blocks.join("|"))
    }
}

/// Position-closure test: every `i > n` in `α` has `i − n` in `α`.
pub fn position_closure(alpha: &BTreeSet<usize>, n: usize) -> bool {
    alpha.iter().all(|&i| i <= n || alpha.contains(&(i - n)))
}

/// Greedy scan of `γ^∞`: take a letter whenever it is a left descent of the
/// unprocessed remainder.
pub fn sorting_word(
    sys: &CoxeterSystem,
    w: &GroupElement,
    gamma: &CoxeterWord,
) -> Result<SortingWord, SortableError> {
    if !w.support().is_subset(gamma.support()) {
        return Err(SortableError::NotInParabolic(sys.format_element(w)));
    }
    let n = gamma.rank();
    let mut positions = Vec::with_capacity(w.length());
    let mut rest = w.clone();
    let mut position = 0;
    let mut idle = 0;
    while !rest.is_identity() {
        position += 1;
        let s = gamma.letter_at(position);
        if rest.has_left_descent(s) {
            positions.push(position);
            rest = sys.left_multiply(s, &rest);
            idle = 0;
        } else {
            idle += 1;
            // a nonidentity element of W_J has a left descent in J
            assert!(idle <= n, "sorting scan stalled");
        }
    }
    Ok(SortingWord {
        gamma: gamma.letters().to_vec(),
        positions,
    })
}

/// `α_γ(w)`.
pub fn alpha_positions(
    sys: &CoxeterSystem,
    w: &GroupElement,
    gamma: &CoxeterWord,
) -> Result<BTreeSet<usize>, SortableError> {
    Ok(sorting_word(sys, w, gamma)?.alpha())
}

/// Sortability by nested blocks. Elements outside the parabolic subgroup of
/// `gamma` are not sortable.
pub fn is_sortable_blocks(sys: &CoxeterSystem, w: &GroupElement, gamma: &CoxeterWord) -> bool {
    match sorting_word(sys, w, gamma) {
        Ok(sw) => sw.is_nested(),
        Err(_) => false,
    }
}

/// Sortability by position closure of `α_γ(w)`.
pub fn is_sortable_closure(sys: &CoxeterSystem, w: &GroupElement, gamma: &CoxeterWord) -> bool {
    match sorting_word(sys, w, gamma) {
        Ok(sw) => position_closure(&sw.alpha(), gamma.rank()),
        Err(_) => false,
    }
}

/// Sortability by the initial-letter recursion: with `s` initial, `w` is
/// sortable iff either `s ≤ w` and `sw` is `sγs`-sortable, or `s ≰ w` and
/// `w ∈ W_⟨s⟩` is `sγ`-sortable.
pub fn is_sortable_recursive(sys: &CoxeterSystem, w: &GroupElement, gamma: &CoxeterWord) -> bool {
    if w.is_identity() {
        return true;
    }
    if !w.support().is_subset(gamma.support()) {
        return false;
    }
    let s = gamma.initial().expect("nonempty support");
    if w.has_left_descent(s) {
        is_sortable_recursive(sys, &sys.left_multiply(s, w), &gamma.rotated())
    } else {
        is_sortable_recursive(sys, w, &gamma.without_initial())
    }
}

/// `π↓^γ(w)`, the largest `γ`-sortable element below `w` in weak order.
pub fn pi_down(sys: &CoxeterSystem, w: &GroupElement, gamma: &CoxeterWord) -> GroupElement {
    if w.is_identity() {
        return w.clone();
    }
    let Some(s) = gamma.initial() else {
        return sys.identity();
    };
    if w.has_left_descent(s) {
        let below = pi_down(sys, &sys.left_multiply(s, w), &gamma.rotated());
        sys.left_multiply(s, &below)
    } else {
        let parabolic = gamma.support().without(s);
        pi_down(sys, &sys.restrict(w, parabolic), &gamma.without_initial())
    }
}

/// A sortable element together with its sorting word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sortable {
    pub element: GroupElement,
    pub sorting: SortingWord,
}

/// All `γ`-sortable elements of length at most `max_len`, ordered by length
/// then canonical word.
///
/// Grows sorting words one position at a time. A new position `p` must
/// satisfy position closure (`p ≤ n` or `p − n` occupied), must lengthen
/// the element, and the extended word must be the sorting word of the new
/// element. Prefixes of sorting words are sorting words, so nothing is lost.
pub fn enumerate_sortables(
    sys: &CoxeterSystem,
    gamma: &CoxeterWord,
    max_len: usize,
) -> Vec<Sortable> {
    let n = gamma.rank();
    let mut level = vec![Sortable {
        element: sys.identity(),
        sorting: SortingWord {
            gamma: gamma.letters().to_vec(),
            positions: Vec::new(),
        },
    }];
    let mut out = level.clone();
    for len in 1..=max_len {
        if n == 0 {
            break;
        }
        let mut next = Vec::new();
        for item in &level {
            let positions = &item.sorting.positions;
            let last = positions.last().copied().unwrap_or(0);
            for p in last + 1..=last + n {
                if p > n && positions.binary_search(&(p - n)).is_err() {
                    continue;
                }
                let x = sys.right_multiply(&item.element, gamma.letter_at(p));
                if x.length() != len {
                    continue;
                }
                let sw = sorting_word(sys, &x, gamma).expect("letters come from gamma");
                if sw.positions.len() == len
                    && sw.positions[..len - 1] == positions[..]
                    && sw.positions[len - 1] == p
                {
                    next.push(Sortable {
                        element: x,
                        sorting: sw,
                    });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by(|a, b| a.element.cmp(&b.element));
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// A fiber of `π↓`: all elements projecting to `bottom`.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub bottom: GroupElement,
    pub members: Vec<GroupElement>,
}

/// The fibers of `π↓^γ` over a finite group, ordered by their bottoms.
pub fn congruence_fibers(
    sys: &CoxeterSystem,
    gamma: &CoxeterWord,
) -> Result<Vec<Fiber>, SortableError> {
    let universe = sys.enumerate_finite()?;
    let mut classes: BTreeMap<GroupElement, Vec<GroupElement>> = BTreeMap::new();
    for w in universe.elements() {
        classes
            .entry(pi_down(sys, w, gamma))
            .or_default()
            .push(w.clone());
    }
    Ok(classes
        .into_iter()
        .map(|(bottom, members)| Fiber { bottom, members })
        .collect())
}

/// `{w : π↓(w) = x}` in a finite group.
pub fn congruence_fiber(
    sys: &CoxeterSystem,
    x: &GroupElement,
    gamma: &CoxeterWord,
) -> Result<Vec<GroupElement>, SortableError> {
    let universe = sys.enumerate_finite()?;
    Ok(universe
        .elements()
        .iter()
        .filter(|w| pi_down(sys, w, gamma) == *x)
        .cloned()
        .collect())
}
