//! Right weak order: comparisons, parabolic restriction, inversion sets,
//! length-truncated enumeration, and bounded joins and meets.

use std::collections::{BTreeSet, HashSet};

use super::system::{CoxeterSystem, GroupElement, Root};
use super::CoxeterError;
use crate::generators::GeneratorSet;

/// Left inversion set `inv(w)`, as positive roots.
pub type ReflectionSet = BTreeSet<Root>;

/// Every element of length at most `cap`, sorted by length then canonical word.
#[derive(Clone, Debug)]
pub struct Universe {
    cap: usize,
    elements: Vec<GroupElement>,
    exhausted: bool,
}

impl Universe {
    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// True when the enumeration stopped because the group ran out of
    /// elements, i.e. the universe is the whole (finite) group.
    pub fn is_whole_group(&self) -> bool {
        self.exhausted
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl CoxeterSystem {
    /// `u ≤_S v`: walk the canonical word of `u` through left descents of `v`.
    /// Each step changes length by one, so the walk succeeds exactly when
    /// `ℓ(u⁻¹v) = ℓ(v) − ℓ(u)`.
    pub fn weak_leq(&self, u: &GroupElement, v: &GroupElement) -> bool {
        if u.length() > v.length() {
            return false;
        }
        let mut rest = v.clone();
        for &s in u.word() {
            if !rest.has_left_descent(s) {
                return false;
            }
            rest = self.left_multiply(s, &rest);
        }
        true
    }

    /// `u ≤_S v` straight from the length identity `ℓ(v) = ℓ(u) + ℓ(u⁻¹v)`.
    pub fn weak_leq_by_length(&self, u: &GroupElement, v: &GroupElement) -> bool {
        let quotient = self.multiply(&self.inverse(u), v);
        v.length() == u.length() + quotient.length()
    }

    /// Parabolic restriction `w_J`: strip left descents in `J` while any remain.
    pub fn restrict(&self, w: &GroupElement, parabolic: GeneratorSet) -> GroupElement {
        let mut collected = self.identity();
        let mut rest = w.clone();
        while let Some(s) = rest.left_descents().intersection(parabolic).first() {
            collected = self.right_multiply(&collected, s);
            rest = self.left_multiply(s, &rest);
        }
        collected
    }

    /// `inv(w)` from the canonical word: `s_1⋯s_{j−1}(α_{s_j})` for each `j`.
    pub fn inversion_set(&self, w: &GroupElement) -> ReflectionSet {
        let mut out = BTreeSet::new();
        let word = w.word();
        for j in 0..word.len() {
            let mut r = self.simple_root(word[j]).clone();
            for &s in word[..j].iter().rev() {
                r = self.reflect(s, &r);
            }
            out.insert(r);
        }
        out
    }

    /// All elements of length at most `cap`.
    pub fn enumerate(&self, cap: usize) -> Universe {
        let mut elements = vec![self.identity()];
        let mut level = vec![self.identity()];
        let mut exhausted = false;
        for _ in 0..cap {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for w in &level {
                for s in 0..self.rank() {
                    if w.has_left_descent(s) {
                        continue;
                    }
                    let x = self.left_multiply(s, w);
                    if seen.insert(x.word().to_vec()) {
                        next.push(x);
                    }
                }
            }
            if next.is_empty() {
                exhausted = true;
                break;
            }
            next.sort();
            elements.extend(next.iter().cloned());
            level = next;
        }
        if !exhausted && !level.is_empty() {
            // one more probe to detect that the cap coincides with the top
            exhausted = level
                .iter()
                .all(|w| w.left_descents() == self.all_generators());
        }
        Universe {
            cap,
            elements,
            exhausted,
        }
    }

    /// The whole group; errors for infinite systems.
    pub fn enumerate_finite(&self) -> Result<Universe, CoxeterError> {
        if !self.is_finite() {
            return Err(CoxeterError::GroupNotFinite);
        }
        let u = self.enumerate(usize::MAX);
        debug_assert!(u.is_whole_group());
        Ok(u)
    }

    /// The longest element `w_o`, finite systems only. Found by extending
    /// on the left until every generator is a descent.
    pub fn longest_element(&self) -> Result<GroupElement, CoxeterError> {
        if !self.is_finite() {
            return Err(CoxeterError::GroupNotFinite);
        }
        let mut w = self.identity();
        while let Some(s) = complement(w.left_descents(), self.rank()).first() {
            w = self.left_multiply(s, &w);
        }
        Ok(w)
    }

    /// Least upper bound in weak order, searched inside a truncated universe.
    pub fn bounded_join(
        &self,
        xs: &[GroupElement],
        universe: &Universe,
    ) -> Result<GroupElement, CoxeterError> {
        if xs.is_empty() {
            return Ok(self.identity());
        }
        let uppers: Vec<&GroupElement> = universe
            .elements()
            .iter()
            .filter(|z| xs.iter().all(|x| self.weak_leq(x, z)))
            .collect();
        // Sorted by length, so the first candidate is the only possible least one.
        match uppers.first() {
            None => Err(CoxeterError::NoUpperBoundWithinCap(universe.cap())),
            Some(&first) => {
                debug_assert!(uppers.iter().all(|z| self.weak_leq(first, z)));
                Ok(first.clone())
            }
        }
    }

    /// Greatest lower bound in weak order, searched inside `universe`.
    pub fn bounded_meet(
        &self,
        xs: &[GroupElement],
        universe: &Universe,
    ) -> Result<GroupElement, CoxeterError> {
        if xs.is_empty() {
            return Err(CoxeterError::EmptyInput);
        }
        let lowers: Vec<&GroupElement> = universe
            .elements()
            .iter()
            .filter(|z| xs.iter().all(|x| self.weak_leq(z, x)))
            .collect();
        let last = lowers.last().expect("identity is a lower bound");
        debug_assert!(lowers.iter().all(|z| self.weak_leq(z, last)));
        Ok((*last).clone())
    }
}

fn complement(set: GeneratorSet, n: usize) -> GeneratorSet {
    GeneratorSet::from_bits(!set.bits() & GeneratorSet::full(n).bits())
}
