use std::fmt;

use smallvec::SmallVec;

/// A multi-index `J = (j_1, ..., j_n)` naming the derivative `D^J`.
///
/// The derived `Ord` is plain lexicographic on the components; operator
/// printing uses [`MultiIndex::print_order`] instead.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex(SmallVec<[u32; 4]>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, n))
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut j = Self::zero(n);
        j.0[i] = 1;
        j
    }

    pub fn from_slice(parts: &[u32]) -> Self {
        MultiIndex(SmallVec::from_slice(parts))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// `|J| = j_1 + ... + j_n`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&j| j == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn bump(&self, i: usize) -> Self {
        let mut j = self.clone();
        j.0[i] += 1;
        j
    }

    /// `self - other` when `other <= self` componentwise.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<SmallVec<_>>>()
            .map(MultiIndex)
    }

    /// All `K <= self` componentwise, in lexicographic order.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zero(self.len())];
        for (i, &j) in self.0.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (j as usize + 1));
            for k in &out {
                for e in 0..=j {
                    let mut k = k.clone();
                    k.0[i] = e;
                    next.push(k);
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// `binom(J, K) = prod_i binom(j_i, k_i)`.
    pub fn binomial(&self, k: &Self) -> u64 {
        self.0
            .iter()
            .zip(&k.0)
            .map(|(&j, &k)| binomial(j, k))
            .product()
    }

    /// All multi-indices of length `n` and order exactly `d`, in print order.
    pub fn of_order(n: usize, d: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = MultiIndex::zero(n);
        fill(&mut out, &mut cur, 0, d);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// All multi-indices of length `n` with order at most `d`, in print order.
    pub fn up_to_order(n: usize, d: u32) -> Vec<MultiIndex> {
        (0..=d).rev().flat_map(|k| Self::of_order(n, k)).collect()
    }

    /// Print order: decreasing `|J|`, ties broken by decreasing lex order,
    /// so `Dx^2 > Dx*Dy > Dy^2 > Dx > Dy > 1`.
    pub fn print_order(a: &Self, b: &Self) -> std::cmp::Ordering {
        b.order().cmp(&a.order()).then_with(|| b.cmp(a))
    }
}

fn fill(out: &mut Vec<MultiIndex>, cur: &mut MultiIndex, i: usize, left: u32) {
    if i + 1 == cur.len() {
        cur.0[i] = left;
        out.push(cur.clone());
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for e in (0..=left).rev() {
        cur.0[i] = e;
        fill(out, cur, i + 1, left - e);
    }
    cur.0[i] = 0;
}

fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}
