//! The position labeling of Cambrian covers, maximal-chain census,
//! EL verification, Möbius values and homotopy types of intervals.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cambrian::{CambrianPoset, ClosedInterval};
use crate::coxeter::{CoxeterSystem, GroupElement};
use crate::sortable::{alpha_positions, CoxeterWord, SortableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShellingError {
    #[error("({0}, {1}) is not a cover relation")]
    NotACover(String, String),
    #[error("{0} is not strictly below {1} in position order")]
    NotBelow(String, String),
    #[error("the interval has not passed the EL check")]
    ElPreconditionUnverified,
    #[error("interval has {0} falling maximal chains")]
    MultipleFallingChains(usize),
    #[error("Coxeter words {0} and {1} do not represent the same element")]
    WordsNotSameElement(String, String),
    #[error("no Coxeter words supplied")]
    NoWords,
    #[error(transparent)]
    Sortable(#[from] SortableError),
}

/// `min(α(upper) ∖ α(lower))`, if the difference is nonempty.
pub fn position_label(lower: &BTreeSet<usize>, upper: &BTreeSet<usize>) -> Option<usize> {
    upper.difference(lower).next().copied()
}

/// The position label of any pair `u <_S v`, computed directly from the
/// sorting words for `gamma` (which may be a parabolic Coxeter word).
pub fn label_between(
    sys: &CoxeterSystem,
    gamma: &CoxeterWord,
    u: &GroupElement,
    v: &GroupElement,
) -> Result<usize, ShellingError> {
    let not_below = || ShellingError::NotBelow(sys.format_element(u), sys.format_element(v));
    if u == v || !sys.weak_leq(u, v) {
        return Err(not_below());
    }
    let au = alpha_positions(sys, u, gamma)?;
    let av = alpha_positions(sys, v, gamma)?;
    position_label(&au, &av).ok_or_else(not_below)
}

impl CambrianPoset {
    /// `λ_γ` on a cover relation of the poset.
    pub fn cover_label(&self, lower: usize, upper: usize) -> Result<usize, ShellingError> {
        if !self.is_cover(lower, upper) {
            return Err(ShellingError::NotACover(
                self.system().format_element(self.element(lower)),
                self.system().format_element(self.element(upper)),
            ));
        }
        Ok(position_label(self.alpha(lower), self.alpha(upper))
            .expect("covers strictly enlarge position sets"))
    }

    /// Cover label without the cover check; for internal callers that walk
    /// Hasse edges.
    fn edge_label(&self, lower: usize, upper: usize) -> usize {
        position_label(self.alpha(lower), self.alpha(upper))
            .expect("comparable pair with equal position sets")
    }
}

/// A maximal chain `x_0 ⋖ x_1 ⋖ ⋯ ⋖ x_t` with its label sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalChain {
    pub elements: Vec<usize>,
    pub labels: Vec<usize>,
}

impl MaximalChain {
    /// Number of cover steps.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Strictly increasing labels.
    pub fn is_rising(&self) -> bool {
        self.labels.windows(2).all(|w| w[0] < w[1])
    }

    /// Weakly decreasing labels.
    pub fn is_falling(&self) -> bool {
        self.labels.windows(2).all(|w| w[0] >= w[1])
    }
}

/// All maximal chains of the interval under the position labeling.
pub fn maximal_chains(interval: &ClosedInterval<'_>) -> Vec<MaximalChain> {
    let poset = interval.poset();
    maximal_chains_with(interval, |a, b| poset.edge_label(a, b))
}

/// All maximal chains under an arbitrary edge labeling, depth first,
/// upper covers visited in poset order.
pub fn maximal_chains_with(
    interval: &ClosedInterval<'_>,
    label: impl Fn(usize, usize) -> usize,
) -> Vec<MaximalChain> {
    let mut out = Vec::new();
    let mut elements = vec![interval.lower()];
    let mut labels = Vec::new();
    walk(interval, &label, &mut elements, &mut labels, &mut out);
    out
}

fn walk(
    interval: &ClosedInterval<'_>,
    label: &impl Fn(usize, usize) -> usize,
    elements: &mut Vec<usize>,
    labels: &mut Vec<usize>,
    out: &mut Vec<MaximalChain>,
) {
    let here = *elements.last().expect("chain starts at the bottom");
    if here == interval.upper() {
        out.push(MaximalChain {
            elements: elements.clone(),
            labels: labels.clone(),
        });
        return;
    }
    let next: Vec<usize> = interval.upper_covers(here).collect();
    for y in next {
        elements.push(y);
        labels.push(label(here, y));
        walk(interval, label, elements, labels, out);
        elements.pop();
        labels.pop();
    }
}

/// Outcome of the EL verification of one interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElVerdict {
    /// Index of the unique rising chain in the chain list.
    Pass {
        rising: usize,
    },
    Fail(ElFailure),
}

impl ElVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ElVerdict::Pass { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElFailure {
    NoRisingChain,
    /// Label sequences of every rising chain found.
    MultipleRisingChains(Vec<Vec<usize>>),
    /// The rising chain is not strictly lexicographically first; the
    /// witness is a chain whose labels are not larger.
    NotLexicographicallyFirst {
        rising: Vec<usize>,
        witness: Vec<usize>,
    },
}

impl std::fmt::Display for ElFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ElFailure::NoRisingChain => write!(f, "no rising maximal chain"),
            ElFailure::MultipleRisingChains(c) => {
                write!(f, "{} rising maximal chains: {c:?}", c.len())
            }
            ElFailure::NotLexicographicallyFirst { rising, witness } => {
                write!(f, "rising chain {rising:?} is not below {witness:?}")
            }
        }
    }
}

/// Exactly one rising chain, strictly lexicographically smaller than every
/// other maximal chain. Label words are compared with the prefix rule,
/// which is the order of Rust slices.
pub fn el_check(chains: &[MaximalChain]) -> ElVerdict {
    let rising: Vec<usize> = (0..chains.len())
        .filter(|&k| chains[k].is_rising())
        .collect();
    match rising.as_slice() {
        [] => ElVerdict::Fail(ElFailure::NoRisingChain),
        [r] => {
            let first = &chains[*r].labels;
            for (k, c) in chains.iter().enumerate() {
                if k != *r && first.as_slice().cmp(c.labels.as_slice()) != Ordering::Less {
                    return ElVerdict::Fail(ElFailure::NotLexicographicallyFirst {
                        rising: first.clone(),
                        witness: c.labels.clone(),
                    });
                }
            }
            ElVerdict::Pass { rising: *r }
        }
        many => ElVerdict::Fail(ElFailure::MultipleRisingChains(
            many.iter().map(|&k| chains[k].labels.clone()).collect(),
        )),
    }
}

/// `μ(u, v)` by the defining recursion over the interval.
pub fn mobius_recursive(interval: &ClosedInterval<'_>) -> i64 {
    let poset = interval.poset();
    let members = interval.members();
    let mut mu: Vec<i64> = Vec::with_capacity(members.len());
    // members are in a linear extension of the order
    for (k, &z) in members.iter().enumerate() {
        if z == interval.lower() {
            mu.push(1);
            continue;
        }
        let sum: i64 = (0..k)
            .filter(|&y| poset.leq(members[y], z) && members[y] != z)
            .map(|y| mu[y])
            .sum();
        mu.push(-sum);
    }
    mu[members
        .iter()
        .position(|&z| z == interval.upper())
        .expect("top is a member")]
}

/// `μ(u, v) = Σ_k (−1)^k c_k` with `c_k` the number of chains
/// `u = x_0 < x_1 < ⋯ < x_k = v`.
pub fn mobius_hall(interval: &ClosedInterval<'_>) -> i64 {
    let poset = interval.poset();
    let members = interval.members();
    // signed[z] = Σ over strict chains from u to z of (−1)^{steps}
    let mut signed: Vec<i64> = vec![0; members.len()];
    for (k, &z) in members.iter().enumerate() {
        if z == interval.lower() {
            signed[k] = 1;
            continue;
        }
        signed[k] = -(0..k)
            .filter(|&y| members[y] != z && poset.leq(members[y], z))
            .map(|y| signed[y])
            .sum::<i64>();
    }
    signed[members
        .iter()
        .position(|&z| z == interval.upper())
        .expect("top is a member")]
}

/// Even-length minus odd-length falling chains; valid once EL holds.
pub fn mobius_chains(chains: &[MaximalChain], verdict: &ElVerdict) -> Result<i64, ShellingError> {
    if !verdict.passed() {
        return Err(ShellingError::ElPreconditionUnverified);
    }
    Ok(chains
        .iter()
        .filter(|c| c.is_falling())
        .map(|c| if c.len() % 2 == 0 { 1 } else { -1 })
        .sum())
}

/// Homotopy type of the open interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HomotopyType {
    Contractible,
    /// Sphere of the given dimension; `-1` is the empty complex.
    Sphere {
        dimension: i64,
    },
}

impl std::fmt::Display for HomotopyType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HomotopyType::Contractible => write!(f, "contractible"),
            HomotopyType::Sphere { dimension } => write!(f, "sphere S^{dimension}"),
        }
    }
}

/// No falling chain: contractible. One falling chain of length `t`: a
/// sphere of dimension `t − 2`.
pub fn homotopy_type(
    chains: &[MaximalChain],
    verdict: &ElVerdict,
) -> Result<HomotopyType, ShellingError> {
    if !verdict.passed() {
        return Err(ShellingError::ElPreconditionUnverified);
    }
    let falling: Vec<&MaximalChain> = chains.iter().filter(|c| c.is_falling()).collect();
    match falling.as_slice() {
        [] => Ok(HomotopyType::Contractible),
        [c] => Ok(HomotopyType::Sphere {
            dimension: c.len() as i64 - 2,
        }),
        many => Err(ShellingError::MultipleFallingChains(many.len())),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthCensus {
    pub total: usize,
    pub rising: usize,
    pub falling: usize,
}

/// Counts of maximal chains, overall and by length.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCensus {
    pub total: usize,
    pub rising: usize,
    pub falling: usize,
    pub by_length: BTreeMap<usize, LengthCensus>,
}

impl ChainCensus {
    pub fn of(chains: &[MaximalChain]) -> Self {
        let mut census = ChainCensus::default();
        for c in chains {
            let entry = census.by_length.entry(c.len()).or_default();
            census.total += 1;
            entry.total += 1;
            if c.is_rising() {
                census.rising += 1;
                entry.rising += 1;
            }
            if c.is_falling() {
                census.falling += 1;
                entry.falling += 1;
            }
        }
        census
    }
}

/// One record of the interval report stream.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalReport {
    pub lower_index: usize,
    pub upper_index: usize,
    /// Canonical words, generator names separated by spaces.
    pub lower: String,
    pub upper: String,
    /// Sorting words with `|` block dividers.
    pub lower_sorting: String,
    pub upper_sorting: String,
    pub rank: usize,
    pub size: usize,
    pub atoms: usize,
    pub census: ChainCensus,
    pub el_pass: bool,
    pub el_failure: Option<String>,
    pub rising_labels: Option<Vec<usize>>,
    pub falling_labels: Option<Vec<usize>>,
    pub mu_recursive: i64,
    pub mu_hall: i64,
    pub mu_chains: Option<i64>,
    pub nuclear: bool,
    pub homotopy: Option<HomotopyType>,
    pub homotopy_error: Option<String>,
}

impl IntervalReport {
    /// All three Möbius routes agree.
    pub fn mobius_consistent(&self) -> bool {
        self.mu_recursive == self.mu_hall && self.mu_chains == Some(self.mu_recursive)
    }

    pub fn is_spherical(&self) -> bool {
        matches!(self.homotopy, Some(HomotopyType::Sphere { .. }))
    }

    /// `μ = (−1)^{#atoms}` exactly on nuclear intervals.
    pub fn nuclear_consistent(&self) -> bool {
        let signed = if self.atoms.is_multiple_of(2) { 1 } else { -1 };
        (self.mu_recursive == signed) == self.nuclear && self.is_spherical() == self.nuclear
    }
}

/// Full analysis of one interval.
pub fn analyze(interval: &ClosedInterval<'_>) -> IntervalReport {
    let poset = interval.poset();
    let sys = poset.system();
    let chains = maximal_chains(interval);
    let verdict = el_check(&chains);
    let (homotopy, homotopy_error) = match homotopy_type(&chains, &verdict) {
        Ok(h) => (Some(h), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let falling: Vec<&MaximalChain> = chains.iter().filter(|c| c.is_falling()).collect();
    let (lo, hi) = (interval.lower(), interval.upper());
    IntervalReport {
        lower_index: lo,
        upper_index: hi,
        lower: sys.format_element(poset.element(lo)),
        upper: sys.format_element(poset.element(hi)),
        lower_sorting: poset.sorting_word(lo).format(sys),
        upper_sorting: poset.sorting_word(hi).format(sys),
        rank: poset.element(hi).length() - poset.element(lo).length(),
        size: interval.len(),
        atoms: interval.atoms().len(),
        census: ChainCensus::of(&chains),
        el_pass: verdict.passed(),
        el_failure: match &verdict {
            ElVerdict::Fail(f) => Some(f.to_string()),
            ElVerdict::Pass { .. } => None,
        },
        rising_labels: match verdict {
            ElVerdict::Pass { rising } => Some(chains[rising].labels.clone()),
            ElVerdict::Fail(_) => None,
        },
        falling_labels: match falling.as_slice() {
            [c] => Some(c.labels.clone()),
            _ => None,
        },
        mu_recursive: mobius_recursive(interval),
        mu_hall: mobius_hall(interval),
        mu_chains: mobius_chains(&chains, &verdict).ok(),
        nuclear: interval.is_nuclear(),
        homotopy,
        homotopy_error,
    }
}

/// Reports for every closed interval, analysed in parallel, returned in
/// the deterministic order of [`CambrianPoset::comparable_pairs`].
pub fn analyze_all(poset: &CambrianPoset) -> Vec<IntervalReport> {
    poset
        .comparable_pairs()
        .par_iter()
        .map(|&(u, v)| analyze(&poset.interval(u, v).expect("comparable pair")))
        .collect()
}

/// Aggregate figures over a report stream.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub elements: usize,
    pub covers: usize,
    pub cap: usize,
    pub intervals: usize,
    pub el_pass: usize,
    pub el_pass_rate: f64,
    pub mobius_histogram: BTreeMap<i64, usize>,
    pub mobius_disagreements: usize,
    pub spherical: usize,
    pub contractible: usize,
    pub nuclear: usize,
    pub nuclear_mismatches: usize,
    pub max_abs_mobius: i64,
}

impl Summary {
    pub fn of(poset: &CambrianPoset, reports: &[IntervalReport]) -> Self {
        let mut s = Summary {
            elements: poset.len(),
            covers: poset.covers().len(),
            cap: poset.cap(),
            intervals: reports.len(),
            ..Summary::default()
        };
        for r in reports {
            if r.el_pass {
                s.el_pass += 1;
            }
            *s.mobius_histogram.entry(r.mu_recursive).or_default() += 1;
            if !r.mobius_consistent() {
                s.mobius_disagreements += 1;
            }
            match r.homotopy {
                Some(HomotopyType::Contractible) => s.contractible += 1,
                Some(HomotopyType::Sphere { .. }) => s.spherical += 1,
                None => {}
            }
            if r.nuclear {
                s.nuclear += 1;
            }
            if !r.nuclear_consistent() {
                s.nuclear_mismatches += 1;
            }
            s.max_abs_mobius = s.max_abs_mobius.max(r.mu_recursive.abs());
        }
        s.el_pass_rate = if reports.is_empty() {
            1.0
        } else {
            s.el_pass as f64 / reports.len() as f64
        };
        s
    }

    /// Every interval is EL, the Möbius routes agree, and nuclear intervals
    /// are exactly the spherical ones.
    pub fn all_verified(&self) -> bool {
        self.el_pass == self.intervals
            && self.mobius_disagreements == 0
            && self.nuclear_mismatches == 0
            && self.max_abs_mobius <= 1
    }
}

/// Per-interval rising/falling counts under one reduced word of `γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub words: Vec<String>,
    pub elements: usize,
    pub intervals: usize,
    /// `(lower, upper, word)` triples where a census differed from the first word's.
    pub mismatches: Vec<(String, String, String)>,
    pub element_sets_agree: bool,
}

impl InvarianceReport {
    pub fn consistent(&self) -> bool {
        self.element_sets_agree && self.mismatches.is_empty()
    }
}

/// Compares the rising/falling census of every interval across several
/// reduced words of the same Coxeter element.
pub fn invariance_check(
    sys: &CoxeterSystem,
    words: &[CoxeterWord],
    cap: usize,
) -> Result<InvarianceReport, ShellingError> {
    let first = words.first().ok_or(ShellingError::NoWords)?;
    let target = first.element(sys);
    for w in &words[1..] {
        if w.element(sys) != target {
            return Err(ShellingError::WordsNotSameElement(
                first.format(sys),
                w.format(sys),
            ));
        }
    }
    let posets: Vec<CambrianPoset> = words
        .par_iter()
        .map(|w| CambrianPoset::build(sys, w, cap))
        .collect();
    let base = &posets[0];
    let element_sets_agree = posets.iter().all(|p| p.elements() == base.elements());
    let mut mismatches = Vec::new();
    let pairs = base.comparable_pairs();
    if element_sets_agree {
        let census = |p: &CambrianPoset, u: usize, v: usize| {
            let chains = maximal_chains(&p.interval(u, v).expect("comparable"));
            let c = ChainCensus::of(&chains);
            (c.rising, c.falling)
        };
        for &(u, v) in &pairs {
            let reference = census(base, u, v);
            for (k, p) in posets.iter().enumerate().skip(1) {
                // same element list, so indices agree
                if census(p, u, v) != reference {
                    mismatches.push((
                        sys.format_element(base.element(u)),
                        sys.format_element(base.element(v)),
                        words[k].format(sys),
                    ));
                }
            }
        }
    }
    Ok(InvarianceReport {
        words: words.iter().map(|w| w.format(sys)).collect(),
        elements: base.len(),
        intervals: pairs.len(),
        mismatches,
        element_sets_agree,
    })
}

/// Union of the unique rising chains `[ε, w]`, one tree edge per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    /// `(parent, child)` Hasse edges.
    pub edges: Vec<(usize, usize)>,
    /// Rising-chain label sequence of `[ε, w]` for every element `w`.
    pub rising_labels: Vec<Option<Vec<usize>>>,
    /// Each non-root element has exactly one parent and all elements are
    /// reachable from the identity.
    pub is_tree: bool,
    /// Labels spell the sorting-word positions of every element.
    pub decodes_sorting_words: bool,
    /// Rising-chain length equals `ℓ_S(w)` everywhere.
    pub lengths_match: bool,
}

impl SpanningTree {
    pub fn verified(&self) -> bool {
        self.is_tree && self.decodes_sorting_words && self.lengths_match
    }
}

pub fn spanning_tree(poset: &CambrianPoset) -> SpanningTree {
    let root = poset.bottom();
    let rising: Vec<Option<MaximalChain>> = (0..poset.len())
        .into_par_iter()
        .map(|w| {
            let interval = poset.interval(root, w).expect("identity is the minimum");
            let chains = maximal_chains(&interval);
            match el_check(&chains) {
                ElVerdict::Pass { rising } => Some(chains[rising].clone()),
                ElVerdict::Fail(_) => None,
            }
        })
        .collect();

    let mut edges = BTreeSet::new();
    for chain in rising.iter().flatten() {
        for pair in chain.elements.windows(2) {
            edges.insert((pair[0], pair[1]));
        }
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();

    let mut parents = vec![0usize; poset.len()];
    for &(_, child) in &edges {
        parents[child] += 1;
    }
    let mut reached = vec![false; poset.len()];
    reached[root] = true;
    // edges go upward in poset order, which is a linear extension
    let mut sorted = edges.clone();
    sorted.sort_by_key(|&(_, c)| c);
    for &(p, c) in &sorted {
        if reached[p] {
            reached[c] = true;
        }
    }
    let is_tree = rising.iter().all(Option::is_some)
        && parents[root] == 0
        && (0..poset.len())
            .filter(|&w| w != root)
            .all(|w| parents[w] == 1)
        && reached.iter().all(|&r| r)
        && edges.len() + 1 == poset.len();

    let decodes_sorting_words = rising.iter().enumerate().all(|(w, c)| {
        c.as_ref()
            .is_some_and(|c| c.labels == poset.sorting_word(w).positions())
    });
    let lengths_match = rising.iter().enumerate().all(|(w, c)| {
        c.as_ref()
            .is_some_and(|c| c.len() == poset.element(w).length())
    });

    SpanningTree {
        edges,
        rising_labels: rising.into_iter().map(|c| c.map(|c| c.labels)).collect(),
        is_tree,
        decodes_sorting_words,
        lengths_match,
    }
}
