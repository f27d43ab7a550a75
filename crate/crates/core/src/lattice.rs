//! Lattice points of `Z^r`, subsets of the branch set and box iteration.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

/// A point of `Z^r`, one coordinate per branch.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn zero(r: usize) -> Self {
        LatticePoint(vec![0; r])
    }

    pub fn splat(r: usize, x: i64) -> Self {
        LatticePoint(vec![x; r])
    }

    pub fn unit(r: usize, i: usize) -> Self {
        let mut v = vec![0; r];
        v[i] = 1;
        LatticePoint(v)
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    /// `|v|`, the sum of the coordinates.
    pub fn norm(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `v + e_K`.
    pub fn plus_mask(&self, k: SubsetMask) -> Self {
        let mut v = self.0.clone();
        for i in k.iter() {
            v[i] += 1;
        }
        LatticePoint(v)
    }

    pub fn add(&self, other: &[i64]) -> Self {
        LatticePoint(self.0.iter().zip(other).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &[i64]) -> Self {
        LatticePoint(self.0.iter().zip(other).map(|(a, b)| a - b).collect())
    }

    pub fn add_scalar(&self, x: i64) -> Self {
        LatticePoint(self.0.iter().map(|a| a + x).collect())
    }

    /// Componentwise `max(v, 0)`.
    pub fn clamp_nonneg(&self) -> Self {
        LatticePoint(self.0.iter().map(|&a| a.max(0)).collect())
    }

    pub fn join(&self, other: &[i64]) -> Self {
        LatticePoint(self.0.iter().zip(other).map(|(a, b)| *a.max(b)).collect())
    }

    /// The partial order `self ≽ other`.
    pub fn dominates(&self, other: &[i64]) -> bool {
        self.0.iter().zip(other).all(|(a, b)| a >= b)
    }

    pub fn with(&self, i: usize, x: i64) -> Self {
        let mut v = self.0.clone();
        v[i] = x;
        LatticePoint(v)
    }
}

impl Deref for LatticePoint {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

impl From<&[i64]> for LatticePoint {
    fn from(v: &[i64]) -> Self {
        LatticePoint(v.to_vec())
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

/// A subset `K` of the branch set `{0, ..., r-1}` as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn full(r: usize) -> Self {
        SubsetMask(((1u64 << r) - 1) as u32)
    }

    pub fn single(i: usize) -> Self {
        SubsetMask(1 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        SubsetMask(self.0 | 1 << i)
    }

    pub fn remove(self, i: usize) -> Self {
        SubsetMask(self.0 & !(1 << i))
    }

    pub fn union(self, o: Self) -> Self {
        SubsetMask(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        SubsetMask(self.0 & o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    /// `(-1)^{|K|}`.
    pub fn sign(self) -> i64 {
        if self.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All subsets of `{0..r}` ordered by `(|K|, mask value)`.
    pub fn all(r: usize) -> Vec<SubsetMask> {
        let mut v: Vec<SubsetMask> = (0..1u32 << r).map(SubsetMask).collect();
        v.sort_by_key(|k| (k.len(), k.0));
        v
    }
}

/// Iterates the lattice box `[lo, hi]` in row-major order (last coordinate
/// fastest).
#[derive(Clone, Debug)]
pub struct BoxIter {
    lo: Vec<i64>,
    hi: Vec<i64>,
    next: Option<Vec<i64>>,
}

impl BoxIter {
    pub fn new(lo: &[i64], hi: &[i64]) -> Self {
        let empty = lo.iter().zip(hi).any(|(a, b)| a > b);
        BoxIter { lo: lo.to_vec(), hi: hi.to_vec(), next: if empty { None } else { Some(lo.to_vec()) } }
    }
}

impl Iterator for BoxIter {
    type Item = LatticePoint;
    fn next(&mut self) -> Option<LatticePoint> {
        let cur = self.next.take()?;
        let mut n = cur.clone();
        let mut i = n.len();
        loop {
            if i == 0 {
                self.next = None;
                break;
            }
            i -= 1;
            if n[i] < self.hi[i] {
                n[i] += 1;
                self.next = Some(n);
                break;
            }
            n[i] = self.lo[i];
        }
        Some(LatticePoint(cur))
    }
}

/// Points of `[0, hi]`.
pub fn box_points(hi: &[i64]) -> BoxIter {
    BoxIter::new(&vec![0; hi.len()], hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_iteration_order() {
        let pts: Vec<Vec<i64>> = box_points(&[1, 2]).map(|p| p.into_vec()).collect();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert_eq!(BoxIter::new(&[1], &[0]).count(), 0);
        assert_eq!(box_points(&[]).count(), 1);
    }

    #[test]
    fn subset_order() {
        let all: Vec<u32> = SubsetMask::all(3).iter().map(|k| k.0).collect();
        assert_eq!(all, vec![0, 1, 2, 4, 3, 5, 6, 7]);
        assert_eq!(SubsetMask(5).iter().collect::<Vec<_>>(), vec![0, 2]);
    }
}
