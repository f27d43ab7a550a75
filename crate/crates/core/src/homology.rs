//! Finite chain complexes of free abelian groups and their integer homology.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::exactalg::{smith_normal_form, IntMatrix, LaurentPoly, Matrix};

/// Homology in one degree: free rank plus torsion divisors `> 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summand {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Summand {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// A finitely generated graded abelian group, `degree -> Z^rank ⊕ torsion`.
///
/// Zero summands are never stored, so two groups compare equal exactly when
/// they are isomorphic as graded groups.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedGroup {
    parts: BTreeMap<i64, Summand>,
}

impl GradedGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Free group with the given ranks per degree.
    pub fn free<I: IntoIterator<Item = (i64, usize)>>(ranks: I) -> Self {
        let mut g = Self::zero();
        for (d, r) in ranks {
            g.insert(d, Summand { rank: r, torsion: Vec::new() });
        }
        g
    }

    pub fn insert(&mut self, degree: i64, s: Summand) {
        if s.is_zero() {
            self.parts.remove(&degree);
        } else {
            self.parts.insert(degree, s);
        }
    }

    pub fn get(&self, degree: i64) -> Option<&Summand> {
        self.parts.get(&degree)
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.parts.get(&degree).map_or(0, |s| s.rank)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Summand)> + '_ {
        self.parts.iter().map(|(d, s)| (*d, s))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn has_torsion(&self) -> bool {
        self.parts.values().any(|s| !s.torsion.is_empty())
    }

    pub fn total_rank(&self) -> usize {
        self.parts.values().map(|s| s.rank).sum()
    }

    /// `Σ_d rank_d t^d`.
    pub fn poincare(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.parts.iter().map(|(d, s)| (*d, s.rank as i64)))
    }

    /// Shift every degree by `k`.
    pub fn shift(&self, k: i64) -> Self {
        GradedGroup { parts: self.parts.iter().map(|(d, s)| (d + k, s.clone())).collect() }
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, s)) in self.parts.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut first = true;
            if s.rank > 0 {
                if s.rank == 1 {
                    f.write_str("Z")?;
                } else {
                    write!(f, "Z^{}", s.rank)?;
                }
                first = false;
            }
            for t in &s.torsion {
                if !first {
                    f.write_str("+")?;
                }
                write!(f, "Z/{}", t)?;
                first = false;
            }
            write!(f, "[{}]", d)?;
        }
        Ok(())
    }
}

/// A chain complex of finitely generated free abelian groups whose
/// differential lowers the degree by one.
///
/// `boundary(d)` is the matrix of `C_d -> C_{d-1}` with one column per cell of
/// degree `d` and one row per cell of degree `d - 1`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    dims: BTreeMap<i64, usize>,
    boundaries: BTreeMap<i64, IntMatrix>,
}

impl ChainComplex {
    pub fn dim(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    pub fn boundary(&self, degree: i64) -> IntMatrix {
        self.boundaries
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.dim(degree - 1), self.dim(degree)))
    }

    /// Whether every composite `∂_{d-1} ∂_d` vanishes.
    pub fn is_complex(&self) -> bool {
        self.dims.keys().all(|&d| self.boundary(d - 1).mul(&self.boundary(d)).is_zero())
    }

    /// `H_d = ker ∂_d / im ∂_{d+1}` via Smith normal form.
    pub fn homology_at(&self, degree: i64) -> Summand {
        let n = self.dim(degree);
        if n == 0 {
            return Summand::default();
        }
        let out = smith_normal_form(&self.boundary(degree));
        let inc = smith_normal_form(&self.boundary(degree + 1));
        Summand { rank: n - out.rank - inc.rank, torsion: inc.torsion() }
    }

    /// Homology in every degree that carries cells.
    pub fn homology(&self) -> GradedGroup {
        self.homology_where(|_| true)
    }

    /// Homology in the degrees accepted by `keep`.
    pub fn homology_where(&self, keep: impl Fn(i64) -> bool) -> GradedGroup {
        let mut g = GradedGroup::zero();
        for d in self.dims.keys().copied().filter(|&d| keep(d)) {
            g.insert(d, self.homology_at(d));
        }
        g
    }
}

/// Assembles a [`ChainComplex`] from labelled cells.
#[derive(Clone, Debug)]
pub struct ComplexBuilder<L: Ord + Clone> {
    cells: BTreeMap<L, (i64, usize)>,
    per_degree: BTreeMap<i64, usize>,
    entries: Vec<(L, L, i64)>,
}

impl<L: Ord + Clone> Default for ComplexBuilder<L> {
    fn default() -> Self {
        ComplexBuilder { cells: BTreeMap::new(), per_degree: BTreeMap::new(), entries: Vec::new() }
    }
}

impl<L: Ord + Clone + fmt::Debug> ComplexBuilder<L> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Register a cell; registering the same label twice is a no-op.
    pub fn add_cell(&mut self, label: L, degree: i64) {
        if self.cells.contains_key(&label) {
            return;
        }
        let slot = self.per_degree.entry(degree).or_insert(0);
        self.cells.insert(label, (degree, *slot));
        *slot += 1;
    }

    pub fn contains(&self, label: &L) -> bool {
        self.cells.contains_key(label)
    }

    /// Add `coeff * face` to the boundary of `cell`. Faces that were never
    /// registered are dropped at build time.
    pub fn add_boundary(&mut self, cell: L, face: L, coeff: i64) {
        if coeff != 0 {
            self.entries.push((cell, face, coeff));
        }
    }

    /// Panics if a face does not sit exactly one degree below its cell.
    pub fn build(self) -> ChainComplex {
        let mut boundaries: BTreeMap<i64, IntMatrix> = BTreeMap::new();
        for (cell, face, c) in self.entries {
            let (Some(&(d, j)), Some(&(e, i))) = (self.cells.get(&cell), self.cells.get(&face)) else {
                continue;
            };
            assert_eq!(e, d - 1, "face {:?} of {:?} has the wrong degree", face, cell);
            let m = boundaries.entry(d).or_insert_with(|| {
                Matrix::zeros(
                    self.per_degree.get(&(d - 1)).copied().unwrap_or(0),
                    self.per_degree[&d],
                )
            });
            m[(i, j)] += c;
        }
        ChainComplex { dims: self.per_degree, boundaries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The boundary of a square, as a cell complex: a circle.
    #[test]
    fn circle() {
        let mut b = ComplexBuilder::new();
        for v in 0..4 {
            b.add_cell((0, v), 0);
        }
        for e in 0..4 {
            b.add_cell((1, e), 1);
            b.add_boundary((1, e), (0, (e + 1) % 4), 1);
            b.add_boundary((1, e), (0, e), -1);
        }
        let c = b.build();
        assert!(c.is_complex());
        assert_eq!(c.homology(), GradedGroup::free([(0, 1), (1, 1)]));
    }

    #[test]
    fn projective_plane_torsion() {
        // 0 -> Z --2--> Z --0--> Z -> 0
        let mut b = ComplexBuilder::new();
        b.add_cell("v", 0);
        b.add_cell("e", 1);
        b.add_cell("f", 2);
        b.add_boundary("f", "e", 2);
        let h = b.build().homology();
        assert_eq!(h.rank(0), 1);
        assert_eq!(h.get(1).unwrap().torsion, alloc::vec![BigInt::from(2)]);
        assert!(h.get(2).is_none());
        assert!(h.has_torsion());
        assert_eq!(h.poincare(), LaurentPoly::one());
    }

    #[test]
    fn display() {
        let g = GradedGroup::free([(-4, 1), (-5, 2)]);
        assert_eq!(alloc::format!("{}", g), "Z[-4] + Z^2[-5]");
        assert_eq!(alloc::format!("{}", GradedGroup::zero()), "0");
    }
}
