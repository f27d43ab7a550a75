//! Matroids given by rank oracles and their Orlik–Solomon complexes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactalg::{int, EchelonBasis, IntMatrix, LaurentPoly, Rational};
use crate::homology::{ComplexBuilder, GradedGroup, Summand};
use crate::lattice::SubsetMask;

/// Grading weight of `U`.
pub const LAMBDA: i64 = -2;

/// A matroid on `{0, ..., n-1}` given by all of its rank values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    ranks: Vec<u64>,
}

impl Matroid {
    /// `ranks[K.0]` is the rank of `K`. Fails unless the rank axioms hold.
    pub fn new(n: usize, ranks: Vec<u64>) -> Result<Self> {
        if n > 16 {
            return Err(Error::InvalidMatroid(format!("ground set of size {} is too large", n)));
        }
        if ranks.len() != 1 << n {
            return Err(Error::InvalidMatroid(format!("expected {} rank values, got {}", 1usize << n, ranks.len())));
        }
        let m = Matroid { n, ranks };
        m.axiom_violation().map_or(Ok(m), |msg| Err(Error::InvalidMatroid(msg)))
    }

    pub fn from_fn(n: usize, f: impl Fn(SubsetMask) -> u64) -> Result<Self> {
        Self::new(n, (0..1u32 << n).map(|k| f(SubsetMask(k))).collect())
    }

    /// Every subset independent: `ρ(K) = |K|`.
    pub fn boolean(n: usize) -> Self {
        Self::from_fn(n, |k| k.len() as u64).expect("boolean matroid")
    }

    /// `n` generic hyperplanes in a space of dimension `rank`: `ρ(K) = min(|K|, rank)`.
    pub fn uniform(n: usize, rank: u64) -> Self {
        Self::from_fn(n, |k| (k.len() as u64).min(rank)).expect("uniform matroid")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rank(&self, k: SubsetMask) -> u64 {
        self.ranks[k.0 as usize]
    }

    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    pub fn full_rank(&self) -> u64 {
        self.rank(SubsetMask::full(self.n))
    }

    pub fn is_independent(&self, k: SubsetMask) -> bool {
        self.rank(k) == k.len() as u64
    }

    fn axiom_violation(&self) -> Option<alloc::string::String> {
        let all = 1u32 << self.n;
        for a in 0..all {
            let ka = SubsetMask(a);
            if self.rank(ka) > ka.len() as u64 {
                return Some(format!("rank of {:?} exceeds its size", ka.iter().collect::<Vec<_>>()));
            }
            for b in 0..all {
                let kb = SubsetMask(b);
                if ka.is_subset(kb) && self.rank(ka) > self.rank(kb) {
                    return Some(format!("rank is not monotone at {:?} ⊂ {:?}", ka.0, kb.0));
                }
                if self.rank(ka.union(kb)) + self.rank(ka.intersection(kb)) > self.rank(ka) + self.rank(kb) {
                    return Some(format!("rank is not submodular at {:?}, {:?}", ka.0, kb.0));
                }
            }
        }
        None
    }

    /// `χ(t) = Σ_K (-1)^{|K|} t^{ρ(E) - ρ(K)}`.
    pub fn char_poly(&self) -> LaurentPoly {
        let top = self.full_rank() as i64;
        LaurentPoly::from_terms((0..1u32 << self.n).map(|k| {
            let k = SubsetMask(k);
            (top - self.rank(k) as i64, k.sign())
        }))
    }
}

/// `Σ_K (-1)^{|K|} (-t)^{ρ(K)}`.
pub fn arrangement_poincare(m: &Matroid) -> LaurentPoly {
    LaurentPoly::from_terms((0..1u32 << m.size()).map(|k| {
        let k = SubsetMask(k);
        let rho = m.rank(k) as i64;
        (rho, k.sign() * if rho % 2 == 0 { 1 } else { -1 })
    }))
}

/// `P(H, t) / (1 + t)`, the Poincaré polynomial of the projectivized complement.
pub fn projective_poincare(m: &Matroid) -> Result<LaurentPoly> {
    let (q, exact) = arrangement_poincare(m).div_linear(1, 1);
    if !exact {
        return Err(Error::Consistency(format!("{} is not divisible by 1 + t", arrangement_poincare(m))));
    }
    Ok(q)
}

/// Sign of `z_M ∧ z_K` relative to `z_{M ∪ K}` for disjoint `M`, `K`.
pub fn wedge_sign(mm: SubsetMask, k: SubsetMask) -> i64 {
    let inversions: usize = mm.iter().map(|a| k.iter().filter(|&b| a > b).count()).sum();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Which part of the boundary to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// `∂`: every face.
    Full,
    /// `∂₀`: faces of equal rank.
    RankPreserving,
    /// `∂₁`: faces of rank one less.
    RankDropping,
}

/// `Σ_i (-1)^{i-1} [face kept] z_{K ∖ α_i}` as `(face, sign)` pairs.
pub fn boundary_terms(m: &Matroid, k: SubsetMask, part: Part) -> Vec<(SubsetMask, i64)> {
    k.iter()
        .enumerate()
        .filter_map(|(pos, a)| {
            let face = k.remove(a);
            let drop = m.rank(k) - m.rank(face);
            let keep = match part {
                Part::Full => true,
                Part::RankPreserving => drop == 0,
                Part::RankDropping => drop == 1,
            };
            keep.then_some((face, if pos % 2 == 0 { 1 } else { -1 }))
        })
        .collect()
}

/// The boundary on the whole exterior algebra, indexed by masks
/// (column `K` holds the boundary of `z_K`).
pub fn boundary_matrix(m: &Matroid, part: Part) -> IntMatrix {
    let n = 1usize << m.size();
    let mut a = IntMatrix::zeros(n, n);
    for k in 0..n {
        for (face, s) in boundary_terms(m, SubsetMask(k as u32), part) {
            a[(face.0 as usize, k)] += s;
        }
    }
    a
}

/// `∂₀² = ∂₁² = 0` and `∂₀∂₁ + ∂₁∂₀ = 0`.
pub fn differential_identities(m: &Matroid) -> bool {
    let d0 = boundary_matrix(m, Part::RankPreserving);
    let d1 = boundary_matrix(m, Part::RankDropping);
    let anti = d0.mul(&d1);
    let anti2 = d1.mul(&d0);
    let mixed_zero = (0..anti.rows()).all(|i| (0..anti.cols()).all(|j| anti[(i, j)] + anti2[(i, j)] == 0));
    d0.mul(&d0).is_zero() && d1.mul(&d1).is_zero() && mixed_zero
}

/// `H_*(E, ∂₀)` graded by `|K|`.
pub fn os_homology(m: &Matroid) -> GradedGroup {
    let mut b = ComplexBuilder::new();
    for k in SubsetMask::all(m.size()) {
        b.add_cell(k, k.len() as i64);
    }
    for k in SubsetMask::all(m.size()) {
        for (face, s) in boundary_terms(m, k, Part::RankPreserving) {
            b.add_boundary(k, face, s);
        }
    }
    b.build().homology()
}

/// `H_*(E, ∂₀)` split by the bigrading `(|K|, ρ(K))`, which `∂₀` preserves
/// in the second entry.
pub fn os_homology_bigraded(m: &Matroid) -> BTreeMap<(i64, i64), Summand> {
    let mut out = BTreeMap::new();
    for rho in 0..=m.full_rank() {
        let mut b = ComplexBuilder::new();
        let cells: Vec<SubsetMask> = SubsetMask::all(m.size()).into_iter().filter(|&k| m.rank(k) == rho).collect();
        for &k in &cells {
            b.add_cell(k, k.len() as i64);
        }
        for &k in &cells {
            for (face, s) in boundary_terms(m, k, Part::RankPreserving) {
                b.add_boundary(k, face, s);
            }
        }
        for (d, s) in b.build().homology().iter() {
            out.insert((d, rho as i64), s.clone());
        }
    }
    out
}

/// `deg(U^j z_K) = |K| + λ (j + ρ(K))`.
pub fn du_degree(m: &Matroid, k: SubsetMask, j: u32) -> i64 {
    k.len() as i64 + LAMBDA * (j as i64 + m.rank(k) as i64)
}

/// Homology of the truncated complex `E[U]/(U^{M+1})` with `∂_U` in the
/// degrees it computes correctly.
fn du_truncated(m: &Matroid, top: u32, lowest: i64) -> GradedGroup {
    let mut b = ComplexBuilder::new();
    let subsets = SubsetMask::all(m.size());
    for j in 0..=top {
        for &k in &subsets {
            b.add_cell((j, k), du_degree(m, k, j));
        }
    }
    for j in 0..=top {
        for &k in &subsets {
            for (face, s) in boundary_terms(m, k, Part::Full) {
                let jj = j + (m.rank(k) - m.rank(face)) as u32;
                if jj <= top {
                    b.add_boundary((j, k), (jj, face), s);
                }
            }
        }
    }
    let c = b.build();
    debug_assert!(c.is_complex());
    c.homology_where(|d| d >= lowest)
}

/// Lowest degree whose homology is unaffected by dropping `U^{top+1}`.
pub fn du_cutoff(m: &Matroid, top: u32) -> i64 {
    let widest = SubsetMask::all(m.size()).into_iter().map(|k| du_degree(m, k, 0)).max().unwrap_or(0);
    (widest + LAMBDA * top as i64).max(-(2 * m.size() as i64 + 4))
}

/// `H_*(E[U], ∂_U)` graded by `deg_λ`, `λ = -2`, from the complex truncated
/// at `U^{u_truncation}`; degrees below the exactness cutoff are not
/// reported and the result must be unchanged by truncating two powers later.
pub fn du_homology(m: &Matroid, u_truncation: u32) -> Result<GradedGroup> {
    let lowest = du_cutoff(m, u_truncation);
    let h = du_truncated(m, u_truncation, lowest);
    let again = du_truncated(m, u_truncation + 2, lowest);
    if h != again {
        return Err(Error::Consistency(format!(
            "∂_U homology changed from {} to {} when the U-truncation grew from {} to {}",
            h,
            again,
            u_truncation,
            u_truncation + 2
        )));
    }
    Ok(h)
}

/// `∂_U² = 0` on the complex truncated at `U^{top}`.
pub fn du_squares_to_zero(m: &Matroid, top: u32) -> bool {
    let mut b = ComplexBuilder::new();
    for j in 0..=top {
        for k in SubsetMask::all(m.size()) {
            b.add_cell((j, k), du_degree(m, k, j));
        }
    }
    for j in 0..=top {
        for k in SubsetMask::all(m.size()) {
            for (face, s) in boundary_terms(m, k, Part::Full) {
                b.add_boundary((j, k), (j + (m.rank(k) - m.rank(face)) as u32, face), s);
            }
        }
    }
    b.build().is_complex()
}

fn column(a: &IntMatrix, k: usize) -> Vec<Rational> {
    (0..a.rows()).map(|i| int(a[(i, k)])).collect()
}

fn unit(n: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![int(0); n];
    v[k] = int(1);
    v
}

/// Which of the structural statements about `∂₀` hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D0Structure {
    /// The ideal generated by `∂ z_K`, `K` dependent, equals `J + ∂J`.
    pub ideal_is_j_plus_dj: bool,
    /// `∂₀ J⊥ = 0`.
    pub d0_kills_independent: bool,
    /// `∂₁ J ⊆ J`.
    pub d1_preserves_dependent: bool,
    /// `ker ∂₀ = J⊥ + im ∂₀`.
    pub kernel_split: bool,
    /// `im ∂₀ = A ⊕ B` with `A ⊆ J`, `B ⊆ J⊥`.
    pub image_split: bool,
}

impl D0Structure {
    pub fn all(&self) -> bool {
        self.ideal_is_j_plus_dj
            && self.d0_kills_independent
            && self.d1_preserves_dependent
            && self.kernel_split
            && self.image_split
    }
}

/// Exact linear-algebra verification of the structure of `∂₀` over `Q`.
pub fn d0_structure_checks(m: &Matroid) -> Result<D0Structure> {
    if m.size() > 8 {
        return Err(Error::InvalidMatroid(format!("exhaustive checks need at most 8 elements, got {}", m.size())));
    }
    let n = 1usize << m.size();
    let full = boundary_matrix(m, Part::Full);
    let d0 = boundary_matrix(m, Part::RankPreserving);
    let d1 = boundary_matrix(m, Part::RankDropping);
    let dependent: Vec<usize> = (0..n).filter(|&k| !m.is_independent(SubsetMask(k as u32))).collect();
    let independent: Vec<usize> = (0..n).filter(|&k| m.is_independent(SubsetMask(k as u32))).collect();
    let is_dep = |k: usize| !m.is_independent(SubsetMask(k as u32));

    // (a)
    let mut ideal = EchelonBasis::new(n);
    for &k in &dependent {
        let terms = boundary_terms(m, SubsetMask(k as u32), Part::Full);
        for mm in 0..n as u32 {
            let mm = SubsetMask(mm);
            let mut v = vec![int(0); n];
            for &(face, s) in &terms {
                if mm.intersection(face).is_empty() {
                    v[mm.union(face).0 as usize] += int(s * wedge_sign(mm, face));
                }
            }
            ideal.insert(&v);
        }
    }
    let mut j_plus_dj = EchelonBasis::new(n);
    for &k in &dependent {
        j_plus_dj.insert(&unit(n, k));
        j_plus_dj.insert(&column(&full, k));
    }
    let ideal_is_j_plus_dj = ideal.contains_span(&j_plus_dj) && j_plus_dj.contains_span(&ideal);

    // (b)
    let d0_kills_independent = independent.iter().all(|&k| (0..n).all(|i| d0[(i, k)] == 0));

    // (c)
    let d1_preserves_dependent =
        dependent.iter().all(|&k| (0..n).all(|i| d1[(i, k)] == 0 || is_dep(i)));

    // (d)
    let mut image = EchelonBasis::new(n);
    for k in 0..n {
        image.insert(&column(&d0, k));
    }
    let mut jperp_plus_image = image.clone();
    for &k in &independent {
        jperp_plus_image.insert(&unit(n, k));
    }
    let kernel_dim = n - image.rank();
    let inside_kernel = d0.mul(&d0).is_zero() && d0_kills_independent;
    let kernel_split = inside_kernel && jperp_plus_image.rank() == kernel_dim;

    // (e)
    let mut a = EchelonBasis::new(n);
    let mut b = EchelonBasis::new(n);
    let mut a_in_j = true;
    let mut b_in_jperp = true;
    for k in 0..n {
        let kk = SubsetMask(k as u32);
        let col = column(&d0, k);
        if (m.rank(kk) as usize) + 1 < kk.len() {
            a_in_j &= (0..n).all(|i| col[i] == int(0) || is_dep(i));
            a.insert(&col);
        } else if m.rank(kk) as usize + 1 == kk.len() {
            b_in_jperp &= (0..n).all(|i| col[i] == int(0) || !is_dep(i));
            b.insert(&col);
        }
    }
    let image_split = a_in_j && b_in_jperp && a.rank() + b.rank() == image.rank();

    Ok(D0Structure { ideal_is_j_plus_dj, d0_kills_independent, d1_preserves_dependent, kernel_split, image_split })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poincare_polynomials() {
        assert_eq!(arrangement_poincare(&Matroid::boolean(1)), LaurentPoly::from_coeffs(&[1, 1]));
        assert_eq!(arrangement_poincare(&Matroid::uniform(2, 2)), LaurentPoly::from_coeffs(&[1, 2, 1]));
        assert_eq!(arrangement_poincare(&Matroid::boolean(3)), LaurentPoly::from_coeffs(&[1, 3, 3, 1]));
        assert_eq!(projective_poincare(&Matroid::uniform(2, 2)).unwrap(), LaurentPoly::from_coeffs(&[1, 1]));
        assert_eq!(projective_poincare(&Matroid::boolean(1)).unwrap(), LaurentPoly::one());
        for r in 3..=4 {
            assert_eq!(projective_poincare(&Matroid::uniform(r, 2)).unwrap(), LaurentPoly::from_coeffs(&[1, r as i64 - 1]));
        }
    }

    #[test]
    fn os_ranks() {
        assert_eq!(os_homology(&Matroid::boolean(2)), GradedGroup::free([(0, 1), (1, 2), (2, 1)]));
        assert_eq!(os_homology(&Matroid::uniform(2, 2)), GradedGroup::free([(0, 1), (1, 2), (2, 1)]));
        assert_eq!(os_homology(&Matroid::uniform(3, 2)), GradedGroup::free([(0, 1), (1, 3), (2, 2)]));
        for ((k, rho), _) in os_homology_bigraded(&Matroid::uniform(4, 2)) {
            assert_eq!(k, rho);
        }
    }

    #[test]
    fn du_ranks() {
        for r in 2..=4 {
            let h = du_homology(&Matroid::uniform(r, 2), r as u32 + 2).unwrap();
            assert_eq!(h, GradedGroup::free([(0, 1), (-1, r - 1)]), "r = {}", r);
        }
        assert_eq!(du_homology(&Matroid::boolean(1), 3).unwrap(), GradedGroup::free([(0, 1)]));
        let m = Matroid::boolean(2);
        let expected = projective_poincare(&m).unwrap().substitute(1, LAMBDA + 1);
        assert_eq!(du_homology(&m, 4).unwrap().poincare(), expected);
        assert!(du_squares_to_zero(&Matroid::uniform(4, 2), 5));
    }

    #[test]
    fn structure() {
        assert!(d0_structure_checks(&Matroid::boolean(3)).unwrap().all());
        assert!(d0_structure_checks(&Matroid::uniform(3, 2)).unwrap().all());
        assert!(d0_structure_checks(&Matroid::uniform(5, 2)).unwrap().all());
        assert!(d0_structure_checks(&Matroid::uniform(4, 3)).unwrap().all());
        assert!(differential_identities(&Matroid::uniform(4, 2)));
    }

    #[test]
    fn axioms_are_enforced() {
        assert!(Matroid::new(1, vec![0, 2]).is_err());
        assert!(Matroid::new(2, vec![0, 1, 1, 0]).is_err());
        assert!(Matroid::new(2, vec![0, 1]).is_err());
        assert_eq!(Matroid::uniform(2, 1).char_poly(), LaurentPoly::from_coeffs(&[-1, 1]));
    }
}
