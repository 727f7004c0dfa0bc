//! Fixed-capacity bitsets over dense state indices.
//!
//! Subset components of product states (the S of a catenation state (p,S),
//! the cell set of a tableau) are kept as packed u64 blocks so they can be
//! hashed and compared cheaply during breadth-first construction.

/// A set of indices drawn from `0..capacity`, packed 64 per block.
///
/// Bits above `capacity` are always zero, so derived equality and hashing
/// agree with set equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct StateSet {
    capacity: usize,
    blocks: Box<[u64]>,
}

impl StateSet {
    pub fn empty(capacity: usize) -> Self {
        let nblocks = capacity.div_ceil(64).max(1);
        StateSet {
            capacity,
            blocks: vec![0u64; nblocks].into_boxed_slice(),
        }
    }

    pub fn singleton(capacity: usize, index: usize) -> Self {
        let mut s = Self::empty(capacity);
        s.insert(index);
        s
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::empty(capacity);
        for i in 0..capacity {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(capacity: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(capacity);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < self.capacity, "bit {index} out of capacity {}", self.capacity);
        self.blocks[index / 64] |= 1u64 << (index % 64);
    }

    pub fn remove(&mut self, index: usize) {
        assert!(index < self.capacity);
        self.blocks[index / 64] &= !(1u64 << (index % 64));
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.capacity && self.blocks[index / 64] & (1u64 << (index % 64)) != 0
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn union_with(&mut self, other: &StateSet) {
        assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.blocks.iter_mut().zip(other.blocks.iter()) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.blocks
            .iter()
            .zip(other.blocks.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.blocks
            .iter()
            .zip(other.blocks.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            let mut rest = block;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(bi * 64 + bit)
                }
            })
        })
    }
}
