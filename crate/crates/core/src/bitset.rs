//! Node sets as bit vectors, plus fixed-size subset enumeration.

/// A set of node indices backed by 64-bit words. Works for any node count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet {
    words: Vec<u64>,
}

impl NodeSet {
    pub fn new(capacity: usize) -> Self {
        NodeSet { words: vec![0; capacity.div_ceil(64).max(1)] }
    }

    pub fn from_indices(capacity: usize, indices: &[usize]) -> Self {
        let mut s = Self::new(capacity);
        for &i in indices {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    /// True iff every index in `items` is a member.
    #[inline]
    pub fn contains_all(&self, items: &[usize]) -> bool {
        items.iter().all(|&i| self.contains(i))
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersect_with(&mut self, other: &NodeSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
        for a in self.words.iter_mut().skip(other.words.len()) {
            *a = 0;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Iterates every `k`-subset of the low `n` bits of a `u64`, in increasing
/// numeric order (Gosper's hack). Requires `n <= 64`.
#[derive(Clone, Debug)]
pub struct Combinations {
    next: Option<u64>,
    limit: u64,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n <= 64, "combination universe limited to 64 bits");
        if k > n {
            return Combinations { next: None, limit: 0 };
        }
        let first = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Combinations { next: Some(first), limit }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let (r, overflow) = cur.overflowing_add(c);
            if overflow || r == 0 {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (nxt <= self.limit && nxt & !self.limit == 0).then_some(nxt)
            }
        };
        Some(cur)
    }
}

/// Spreads the low bits of `compact` onto the positions listed in `positions`:
/// bit `t` of `compact` selects node `positions[t]`.
#[inline]
pub fn scatter(compact: u64, positions: &[usize]) -> u64 {
    let mut out = 0u64;
    let mut c = compact;
    while c != 0 {
        let t = c.trailing_zeros() as usize;
        out |= 1 << positions[t];
        c &= c - 1;
    }
    out
}

/// Node indices of the set bits in `mask`, ascending.
pub fn mask_nodes(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}
