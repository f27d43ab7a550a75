//! Hilbert tables, the value semigroup, numerical invariants and local
//! matroids.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::curve::{delta_by_stabilization, h_oracle, Curve, Evaluator};
use crate::error::{Error, Result};
use crate::exactalg::LaurentPoly;
use crate::lattice::{box_points, BoxIter, LatticePoint, SubsetMask};
use crate::oslattice::Matroid;

/// `δ`, the branch deltas and multiplicities, intersection numbers and the
/// conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInvariants {
    pub delta: u64,
    pub delta_i: Vec<u64>,
    /// `μ_i = 2 δ_i`, the Milnor number of each branch.
    pub mu_i: Vec<u64>,
    /// `pairwise[i][j] = (C_i, C_j)` off the diagonal, zero on it.
    pub pairwise: Vec<Vec<u64>>,
    pub conductor: LatticePoint,
    /// `μ(C) = 2δ(C) - r + 1`.
    pub milnor: i64,
}

impl CurveInvariants {
    pub fn r(&self) -> usize {
        self.delta_i.len()
    }
}

/// Computes every invariant from `δ` values obtained by diagonal
/// stabilization on the branches, the pairs of branches and (for three or
/// more branches) the whole curve.
pub fn invariants(c: &Curve) -> Result<CurveInvariants> {
    let r = c.r();
    let mut delta_i = Vec::with_capacity(r);
    for i in 0..r {
        delta_i.push(delta_by_stabilization(&c.sub_curve(SubsetMask::single(i))?)?);
    }
    let mut pairwise = vec![vec![0u64; r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let dij = delta_by_stabilization(&c.sub_curve(SubsetMask::single(i).insert(j))?).map_err(|e| match e {
                Error::NonStabilizing { bound, .. } => Error::NonStabilizing { branches: vec![i + 1, j + 1], bound },
                e => e,
            })?;
            let cij = dij.checked_sub(delta_i[i] + delta_i[j]).ok_or_else(|| {
                Error::Consistency(format!("δ of branches {} and {} is smaller than their sum", i + 1, j + 1))
            })?;
            pairwise[i][j] = cij;
            pairwise[j][i] = cij;
        }
    }
    let delta = delta_i.iter().sum::<u64>() + (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).map(|(i, j)| pairwise[i][j]).sum::<u64>();
    if r >= 3 {
        let direct = delta_by_stabilization(c)?;
        if direct != delta {
            return Err(Error::Consistency(format!(
                "δ of the curve is {} but branches and pairs give {}",
                direct, delta
            )));
        }
    }
    let mu_i: Vec<u64> = delta_i.iter().map(|d| 2 * d).collect();
    let conductor = LatticePoint::new(
        (0..r).map(|i| (mu_i[i] + pairwise[i].iter().sum::<u64>()) as i64).collect(),
    );
    Ok(CurveInvariants { delta, delta_i, mu_i, pairwise, conductor, milnor: 2 * delta as i64 - r as i64 + 1 })
}

/// Membership in the value semigroup over `[0, corner]`, with the
/// conductor `l` covering everything beyond it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    corner: LatticePoint,
    members: Vec<bool>,
    conductor: LatticePoint,
}

impl Semigroup {
    /// Membership of `v`, or `None` when `v` leaves the box without
    /// dominating the conductor.
    pub fn contains(&self, v: &[i64]) -> Option<bool> {
        if v.iter().any(|&x| x < 0) {
            return Some(false);
        }
        if LatticePoint::from(v).dominates(&self.conductor) {
            return Some(true);
        }
        index(&self.corner, v).map(|i| self.members[i])
    }

    pub fn conductor(&self) -> &LatticePoint {
        &self.conductor
    }

    pub fn corner(&self) -> &LatticePoint {
        &self.corner
    }

    /// Members inside `[0, corner]`.
    pub fn members(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        box_points(&self.corner).zip(&self.members).filter(|(_, m)| **m).map(|(p, _)| p)
    }
}

/// Computes `S ∩ [0, max(corner, l)]` by testing for each point whether some
/// function realizes exactly that valuation vector.
pub fn semigroup(c: &Curve, inv: &CurveInvariants, corner: &[i64]) -> Result<Semigroup> {
    let sbox = inv.conductor.join(corner);
    let top = sbox.iter().copied().max().unwrap_or(0).max(1) as u32;
    let eval = Evaluator::new(c, top);
    let mut members = Vec::new();
    for p in box_points(&sbox) {
        members.push(eval.has_value(&p)?);
    }
    let s = Semigroup { corner: sbox, members, conductor: inv.conductor.clone() };
    // the conductor formula against the witnesses
    for (p, &m) in box_points(&s.corner).zip(&s.members) {
        if p.dominates(&s.conductor) && !m {
            return Err(Error::Consistency(format!("{} dominates the conductor but is not a value", p)));
        }
    }
    for i in 0..c.r() {
        let l = &s.conductor;
        if l[i] > 0 && s.members[index(&s.corner, &l.with(i, l[i] - 1)).unwrap()] {
            return Err(Error::Consistency(format!("{} is a value, so {} is not the conductor", l.with(i, l[i] - 1), l)));
        }
    }
    Ok(s)
}

fn index(corner: &[i64], v: &[i64]) -> Option<usize> {
    let mut idx = 0usize;
    for (x, b) in v.iter().zip(corner) {
        if *x < 0 || x > b {
            return None;
        }
        idx = idx * (*b as usize + 1) + *x as usize;
    }
    Some(idx)
}

/// Order in which the recursion visits the box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FillOrder {
    /// Last coordinate fastest; each value is derived from its predecessor
    /// along the last nonzero coordinate.
    #[default]
    RowMajor,
    /// First coordinate fastest; each value is derived from its predecessor
    /// along the first nonzero coordinate.
    ColumnMajor,
}

/// `h(v)` for every `0 ≼ v ≼ corner`.
#[derive(Clone, Debug)]
pub struct HilbertTable {
    curve: Curve,
    corner: LatticePoint,
    values: Vec<u64>,
    invariants: CurveInvariants,
    semigroup: Semigroup,
}

fn sampled(v: &[i64]) -> bool {
    let mut x: u64 = 0x9e37_79b9_7f4a_7c15;
    for &c in v {
        x ^= c as u64;
        x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
        x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        x ^= x >> 31;
    }
    x % 10 == 0
}

impl HilbertTable {
    pub fn build(c: &Curve, corner: &[i64]) -> Result<Self> {
        Self::build_with(c, corner, FillOrder::RowMajor)
    }

    /// Fills the box from the semigroup, using
    /// `h(v + e_i) = h(v) + [some u ∈ S has u_i = v_i and u_j ≥ v_j for j ≠ i]`,
    /// then checks the axes and a deterministic tenth of the box against
    /// direct rank computations.
    pub fn build_with(c: &Curve, corner: &[i64], order: FillOrder) -> Result<Self> {
        if corner.len() != c.r() {
            return Err(Error::Dimension(format!("box corner has {} coordinates, curve has {} branches", corner.len(), c.r())));
        }
        if corner.iter().any(|&x| x < 0) {
            return Err(Error::Dimension(format!("box corner {:?} is negative", corner)));
        }
        let corner = LatticePoint::from(corner);
        let invariants = invariants(c)?;
        let semigroup = semigroup(c, &invariants, &corner)?;
        let values = fill(&corner, &semigroup, order);
        let table = HilbertTable { curve: c.clone(), corner, values, invariants, semigroup };
        table.cross_check()?;
        Ok(table)
    }

    fn cross_check(&self) -> Result<()> {
        let top = self.corner.iter().copied().max().unwrap_or(0).max(1) as u32;
        let eval = Evaluator::new(&self.curve, top);
        let r = self.r();
        let axes = (0..r).flat_map(|i| (0..=self.corner[i]).map(move |n| LatticePoint::zero(r).with(i, n)));
        let sample = box_points(&self.corner).filter(|p| sampled(p));
        for p in axes.chain(sample).chain(core::iter::once(self.corner.clone())) {
            let direct = eval.h(&p)?;
            if direct != self.get(&p) {
                return Err(Error::Consistency(format!(
                    "recursion gives h{} = {}, rank computation gives {}",
                    p,
                    self.get(&p),
                    direct
                )));
            }
        }
        Ok(())
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn r(&self) -> usize {
        self.corner.len()
    }

    pub fn corner(&self) -> &LatticePoint {
        &self.corner
    }

    pub fn invariants(&self) -> &CurveInvariants {
        &self.invariants
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    /// Whether `max(v, 0) ≼ corner`.
    pub fn covers(&self, v: &[i64]) -> bool {
        v.iter().zip(self.corner.iter()).all(|(x, b)| *x <= *b)
    }

    /// `h(v) = h(max(v, 0))`. Panics outside the box.
    pub fn get(&self, v: &[i64]) -> u64 {
        self.try_get(v).unwrap_or_else(|| panic!("{:?} lies outside the table box {}", v, self.corner))
    }

    pub fn try_get(&self, v: &[i64]) -> Option<u64> {
        let v = LatticePoint::from(v).clamp_nonneg();
        index(&self.corner, &v).map(|i| self.values[i])
    }

    /// All `(v, h(v))` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (LatticePoint, u64)> + '_ {
        box_points(&self.corner).zip(self.values.iter().copied())
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `ρ_v(K) = h(v + e_K) - h(v)`.
    pub fn local_matroid(&self, v: &[i64]) -> Result<LocalMatroid> {
        let base = LatticePoint::from(v);
        if !self.covers(&base.add_scalar(1)) {
            return Err(Error::BoxTooSmall {
                corner: self.corner.to_vec(),
                reason: format!("the local matroid at {} needs {}", base, base.add_scalar(1)),
            });
        }
        let h0 = self.get(&base);
        let matroid = Matroid::from_fn(self.r(), |k| self.get(&base.plus_mask(k)) - h0)?;
        Ok(LocalMatroid { base, matroid })
    }
}

fn fill(corner: &LatticePoint, s: &Semigroup, order: FillOrder) -> Vec<u64> {
    let r = corner.len();
    let l = s.conductor();
    let mut values = vec![u64::MAX; corner.iter().map(|&b| b as usize + 1).product()];
    let points: Vec<LatticePoint> = match order {
        FillOrder::RowMajor => box_points(corner).collect(),
        FillOrder::ColumnMajor => {
            let rev: Vec<i64> = corner.iter().rev().copied().collect();
            box_points(&rev).map(|p| LatticePoint::new(p.iter().rev().copied().collect())).collect()
        }
    };
    for v in points {
        let step = match order {
            FillOrder::RowMajor => (0..r).rev().find(|&i| v[i] > 0),
            FillOrder::ColumnMajor => (0..r).find(|&i| v[i] > 0),
        };
        let h = match step {
            None => 0,
            Some(i) => {
                let w = v.with(i, v[i] - 1);
                values[index(corner, &w).unwrap()] + jumps(s, &w, i, l) as u64
            }
        };
        values[index(corner, &v).unwrap()] = h;
    }
    values
}

/// Whether some `u ∈ S` has `u_i = w_i` and `w_j ≤ u_j ≤ max(w_j, l_j)`.
fn jumps(s: &Semigroup, w: &LatticePoint, i: usize, l: &[i64]) -> bool {
    let lo = w.clone();
    let hi = LatticePoint::new((0..w.len()).map(|j| if j == i { w[i] } else { w[j].max(l[j]) }).collect());
    BoxIter::new(&lo, &hi).any(|u| s.contains(&u).expect("semigroup box covers the recursion"))
}

/// A local matroid `M_v` with its base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMatroid {
    pub base: LatticePoint,
    pub matroid: Matroid,
}

impl LocalMatroid {
    pub fn rank(&self, k: SubsetMask) -> u64 {
        self.matroid.rank(k)
    }

    pub fn char_poly(&self) -> LaurentPoly {
        self.matroid.char_poly()
    }
}

/// `h(l - v) - h(v) = δ - |v|` for all `0 ≼ v ≼ l`.
pub fn symmetry_check(t: &HilbertTable) -> Result<bool> {
    let inv = t.invariants();
    let l = &inv.conductor;
    if !t.covers(l) {
        return Err(Error::BoxTooSmall { corner: t.corner().to_vec(), reason: format!("symmetry needs the conductor {}", l) });
    }
    Ok(box_points(l).all(|v| {
        let lhs = t.get(&l.sub(&v)) as i64 - t.get(&v) as i64;
        lhs == inv.delta as i64 - v.norm()
    }))
}

/// `h(v + (n+1) e_i) - h(v + n e_i) = 1` for every branch `i`, every
/// `n ∈ [l_i, l_i + 3]` and every `v ≼ l` with `v_i = 0`, by direct rank
/// computation.
pub fn large_n_step_check(c: &Curve, inv: &CurveInvariants) -> Result<bool> {
    let l = &inv.conductor;
    let top = l.iter().copied().max().unwrap_or(0) as u32 + 5;
    let eval = Evaluator::new(c, top);
    for i in 0..c.r() {
        for v in box_points(&l.with(i, 0)) {
            for n in l[i]..=l[i] + 3 {
                if eval.h(&v.with(i, n + 1))? != eval.h(&v.with(i, n))? + 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `v ∈ S` exactly when every unit step at `v` is a jump, over every `v`
/// with `v + e` in the box.
pub fn semigroup_step_check(t: &HilbertTable) -> bool {
    let inner = t.corner().add_scalar(-1);
    box_points(&inner).all(|v| {
        let h = t.get(&v);
        let all_jump = (0..t.r()).all(|i| t.get(&v.plus_mask(SubsetMask::single(i))) > h);
        t.semigroup().contains(&v) == Some(all_jump)
    })
}

/// The table of every sub-curve `C_K` equals the slice `v_i = 0` for
/// `i ∉ K` of the full table.
pub fn restriction_check(t: &HilbertTable) -> Result<bool> {
    let r = t.r();
    for k in SubsetMask::all(r) {
        if k.is_empty() || k == SubsetMask::full(r) {
            continue;
        }
        let sub = t.curve().sub_curve(k)?;
        let corner: Vec<i64> = k.iter().map(|i| t.corner()[i]).collect();
        let st = HilbertTable::build(&sub, &corner)?;
        for (p, h) in st.iter() {
            let mut full = vec![0; r];
            for (slot, i) in k.iter().enumerate() {
                full[i] = p[slot];
            }
            if t.get(&full) != h {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Compares every entry of the table with a direct rank computation.
pub fn full_oracle_check(t: &HilbertTable) -> Result<Option<(LatticePoint, u64, u64)>> {
    for (p, h) in t.iter() {
        let direct = h_oracle(t.curve(), &p)?;
        if direct != h {
            return Ok(Some((p, h, direct)));
        }
    }
    Ok(None)
}

/// Renders the table with the origin in the lower-left corner, first
/// coordinate horizontal. Only meaningful for two branches.
pub fn render_grid(t: &HilbertTable) -> String {
    let mut out = String::new();
    if t.r() != 2 {
        for (p, h) in t.iter() {
            out.push_str(&format!("{} {}\n", p, h));
        }
        return out;
    }
    let (b1, b2) = (t.corner()[0], t.corner()[1]);
    let width = t.values().iter().max().map_or(1, |m| format!("{}", m).len());
    for y in (0..=b2).rev() {
        let row: Vec<String> = (0..=b1).map(|x| format!("{:>w$}", t.get(&[x, y]), w = width)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
