use std::fmt;

/// Maximum number of generators supported by [`GeneratorSet`].
pub const MAX_GENERATORS: usize = 64;

/// A subset of the generator indices `0..n`, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSet(u64);

impl GeneratorSet {
    pub const EMPTY: GeneratorSet = GeneratorSet(0);

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GENERATORS);
        if n == MAX_GENERATORS {
            GeneratorSet(u64::MAX)
        } else {
            GeneratorSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        GeneratorSet(1u64 << i)
    }

    pub fn from_bits(bits: u64) -> Self {
        GeneratorSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_GENERATORS && self.0 & (1u64 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn without(self, i: usize) -> Self {
        GeneratorSet(self.0 & !(1u64 << i))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: GeneratorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: GeneratorSet) -> Self {
        GeneratorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GeneratorSet) -> Self {
        GeneratorSet(self.0 & other.0)
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_GENERATORS).filter(move |&i| bits & (1u64 << i) != 0)
    }
}

impl FromIterator<usize> for GeneratorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = GeneratorSet::EMPTY;
        for i in iter {
            set.insert(i);
        }
        set
    }
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
