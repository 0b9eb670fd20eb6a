//! Brute-force oracles built on concrete permutation models, sharing no
//! code with the root-system engine.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use cambrian::{CoxeterSystem, GroupElement};

/// Window notation of a (signed or affine) permutation.
pub type State = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `S_{n+1}` acting on positions; `s_i` swaps positions `i, i+1`.
    A,
    /// Signed permutations; the last generator negates the last entry.
    B,
    /// Affine permutations of period `n+1`; the last generator is `s_0`.
    AffineA,
}

/// Right weak order of a permutation model, explored by breadth-first
/// search up to a length bound.
pub struct Model {
    pub family: Family,
    pub rank: usize,
    pub cap: usize,
    pub length: HashMap<State, usize>,
    pub by_length: Vec<Vec<State>>,
}

impl Model {
    pub fn new(family: Family, rank: usize, cap: usize) -> Self {
        let start = identity(family, rank);
        let mut length = HashMap::new();
        length.insert(start.clone(), 0);
        let mut by_length = vec![vec![start.clone()]];
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            let l = length[&w];
            if l == cap {
                continue;
            }
            for s in 0..rank {
                let x = act(family, rank, &w, s);
                if !length.contains_key(&x) {
                    length.insert(x.clone(), l + 1);
                    if by_length.len() <= l + 1 {
                        by_length.push(Vec::new());
                    }
                    by_length[l + 1].push(x.clone());
                    queue.push_back(x);
                }
            }
        }
        Model {
            family,
            rank,
            cap,
            length,
            by_length,
        }
    }

    pub fn identity(&self) -> State {
        identity(self.family, self.rank)
    }

    pub fn act(&self, w: &State, s: usize) -> State {
        act(self.family, self.rank, w, s)
    }

    pub fn from_word(&self, word: &[usize]) -> State {
        word.iter().fold(self.identity(), |w, &s| self.act(&w, s))
    }

    pub fn of(&self, w: &GroupElement) -> State {
        self.from_word(w.word())
    }

    pub fn len_of(&self, w: &State) -> usize {
        self.length[w]
    }

    pub fn elements(&self) -> Vec<State> {
        self.by_length.iter().flatten().cloned().collect()
    }

    /// Every reduced word of `w`, built from right descents.
    pub fn reduced_words(&self, w: &State) -> Vec<Vec<usize>> {
        let l = self.length[w];
        if l == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for s in 0..self.rank {
            let x = self.act(w, s);
            if self.length.get(&x) == Some(&(l - 1)) {
                for mut word in self.reduced_words(&x) {
                    word.push(s);
                    out.push(word);
                }
            }
        }
        out
    }

    /// Everything reachable upward from `u` by length-increasing right
    /// multiplication, within the cap.
    pub fn above(&self, u: &State) -> HashSet<State> {
        let mut seen = HashSet::from([u.clone()]);
        let mut stack = vec![u.clone()];
        while let Some(w) = stack.pop() {
            let l = self.length[&w];
            for s in 0..self.rank {
                let x = self.act(&w, s);
                if self.length.get(&x) == Some(&(l + 1)) && seen.insert(x.clone()) {
                    stack.push(x);
                }
            }
        }
        seen
    }

    pub fn leq(&self, u: &State, v: &State) -> bool {
        self.length[u] <= self.length[v] && self.above(u).contains(v)
    }

    /// Lexicographically least position sequence of a reduced word of `w`
    /// inside `γ^∞`.
    pub fn sorting_positions(&self, w: &State, gamma: &[usize]) -> Vec<usize> {
        self.reduced_words(w)
            .iter()
            .map(|word| leftmost_embedding(word, gamma))
            .min()
            .expect("at least one reduced word")
    }

    /// Nested-block test on the brute-force sorting word.
    pub fn is_sortable(&self, w: &State, gamma: &[usize]) -> bool {
        let positions = self.sorting_positions(w, gamma);
        nested(&positions, gamma)
    }
}

/// Greedy leftmost embedding; lexicographically least for a fixed word.
pub fn leftmost_embedding(word: &[usize], gamma: &[usize]) -> Vec<usize> {
    let n = gamma.len();
    let mut out = Vec::with_capacity(word.len());
    let mut p = 0;
    for &s in word {
        loop {
            p += 1;
            if gamma[(p - 1) % n] == s {
                out.push(p);
                break;
            }
        }
    }
    out
}

pub fn nested(positions: &[usize], gamma: &[usize]) -> bool {
    let n = gamma.len();
    let mut blocks: Vec<BTreeSet<usize>> = Vec::new();
    for &p in positions {
        let b = (p - 1) / n;
        while blocks.len() <= b {
            blocks.push(BTreeSet::new());
        }
        blocks[b].insert(gamma[(p - 1) % n]);
    }
    blocks.windows(2).all(|w| w[1].is_subset(&w[0]))
}

fn identity(family: Family, rank: usize) -> State {
    match family {
        Family::A => (1..=rank as i64 + 1).collect(),
        Family::B => (1..=rank as i64).collect(),
        Family::AffineA => (1..=rank as i64).collect(),
    }
}

fn act(family: Family, rank: usize, w: &State, s: usize) -> State {
    let mut x = w.clone();
    match family {
        Family::A => x.swap(s, s + 1),
        Family::B => {
            if s + 1 == rank {
                x[s] = -x[s];
            } else {
                x.swap(s, s + 1);
            }
        }
        Family::AffineA => {
            let k = rank as i64;
            if s + 1 == rank {
                let first = x[0];
                x[0] = x[rank - 1] - k;
                x[rank - 1] = first + k;
            } else {
                x.swap(s, s + 1);
            }
        }
    }
    x
}

/// Number of maximal chains of the Hasse diagram from `lo` to `hi`,
/// by dynamic programming over a linear extension.
pub fn path_count(n: usize, covers: &[(usize, usize)], lo: usize, hi: usize) -> u64 {
    let mut count = vec![0u64; n];
    count[lo] = 1;
    let mut edges = covers.to_vec();
    edges.sort();
    // indices are a linear extension, so sorted sources are processed in order
    for &(a, b) in &edges {
        count[b] += count[a];
    }
    count[hi]
}

/// Transitive reduction of a relation given as a `leq` matrix.
pub fn transitive_reduction(leq: &[Vec<bool>]) -> BTreeSet<(usize, usize)> {
    let n = leq.len();
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || !leq[a][b] {
                continue;
            }
            if !(0..n).any(|c| c != a && c != b && leq[a][c] && leq[c][b]) {
                out.insert((a, b));
            }
        }
    }
    out
}

pub fn element_of(sys: &CoxeterSystem, model: &Model, w: &State) -> GroupElement {
    let word = &model.reduced_words(w)[0];
    sys.element(word).unwrap()
}
