//! The lattice complex: cubes weighted by the Hilbert function, its graded
//! pieces `gr_v` and their homology `HL^-(v)`.
//!
//! A cube `□(v, K)` has weight `h(v + e_K)` and `U^m □(v, K)` sits in degree
//! `-2m + |K| - 2 h(v + e_K)`. The differential sends a cube to its faces
//! with the weight drop as `U`-power.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exactalg::LaurentPoly;
use crate::hilbert::HilbertTable;
use crate::homology::{ChainComplex, ComplexBuilder, GradedGroup};
use crate::lattice::{box_points, BoxIter, LatticePoint, SubsetMask};
use crate::series::{alexander, inner_corner, motivic_coefficient, BoxSeries};

/// `□(v, K) = {x : v ≼ x ≼ v + e_K}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    pub base: LatticePoint,
    pub dirs: SubsetMask,
}

impl Cube {
    pub fn new(base: LatticePoint, dirs: SubsetMask) -> Self {
        Cube { base, dirs }
    }

    pub fn dim(&self) -> usize {
        self.dirs.len()
    }

    /// The vertex `v + e_K`.
    pub fn top(&self) -> LatticePoint {
        self.base.plus_mask(self.dirs)
    }

    pub fn weight(&self, t: &HilbertTable) -> u64 {
        t.get(&self.top())
    }

    /// `deg(U^m □) = -2m + |K| - 2 h(□)`.
    pub fn degree(&self, t: &HilbertTable, m: u32) -> i64 {
        -2 * m as i64 + self.dim() as i64 - 2 * self.weight(t) as i64
    }

    /// Codimension-one faces as `(face, sign, far)`; the far face of
    /// direction `i` is based at `v + e_i`.
    pub fn faces(&self) -> Vec<(Cube, i64, bool)> {
        let mut out = Vec::with_capacity(2 * self.dim());
        for (pos, i) in self.dirs.iter().enumerate() {
            let s = if pos % 2 == 0 { 1 } else { -1 };
            let rest = self.dirs.remove(i);
            out.push((Cube::new(self.base.with(i, self.base[i] + 1), rest), s, true));
            out.push((Cube::new(self.base.clone(), rest), -s, false));
        }
        out
    }
}

/// Where a reported `HL^-(v)` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Direct,
    Formula,
}

/// `HL^-(v)` at one lattice point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HlResult {
    pub point: LatticePoint,
    pub group: GradedGroup,
    pub provenance: Provenance,
}

/// Default `U`-truncation for a curve with `r` branches.
pub fn default_u_truncation(r: usize) -> u32 {
    r as u32 + 3
}

fn needs_upper(t: &HilbertTable, v: &LatticePoint) -> Result<()> {
    if v.iter().any(|&x| x < 0) || !t.covers(&v.add_scalar(1)) {
        return Err(Error::BoxTooSmall {
            corner: t.corner().to_vec(),
            reason: format!("HL^-({}) needs h up to {}", v, v.add_scalar(1)),
        });
    }
    Ok(())
}

/// `gr_v` truncated at `U^top`: only the faces based at `v` survive.
pub fn gr_complex(t: &HilbertTable, v: &[i64], top: u32) -> Result<ChainComplex> {
    let v = LatticePoint::from(v);
    needs_upper(t, &v)?;
    let mut b = ComplexBuilder::new();
    let dirs = SubsetMask::all(t.r());
    for m in 0..=top {
        for &k in &dirs {
            b.add_cell((m, k), Cube::new(v.clone(), k).degree(t, m));
        }
    }
    for m in 0..=top {
        for &k in &dirs {
            let cube = Cube::new(v.clone(), k);
            for (face, s, far) in cube.faces() {
                if far {
                    continue;
                }
                let p = m + (cube.weight(t) - face.weight(t)) as u32;
                if p <= top {
                    b.add_boundary((m, k), (p, face.dirs), s);
                }
            }
        }
    }
    Ok(b.build())
}

/// Lowest degree whose homology survives truncation at `U^top`.
fn gr_cutoff(t: &HilbertTable, v: &LatticePoint, top: u32) -> i64 {
    let widest = SubsetMask::all(t.r()).into_iter().map(|k| Cube::new(v.clone(), k).degree(t, 0)).max().unwrap_or(0);
    widest - 2 * top as i64
}

/// `HL^-(v)` by Smith normal form of `gr_v` truncated at `U^top`; the result
/// must not change at `U^{top+2}`.
pub fn grv_homology_direct_with(t: &HilbertTable, v: &[i64], top: u32) -> Result<GradedGroup> {
    let p = LatticePoint::from(v);
    needs_upper(t, &p)?;
    let lowest = gr_cutoff(t, &p, top);
    let h = gr_complex(t, v, top)?.homology_where(|d| d >= lowest);
    let again = gr_complex(t, v, top + 2)?.homology_where(|d| d >= lowest);
    if h != again {
        return Err(Error::Consistency(format!(
            "HL^-({}) changed from {} to {} when the U-truncation grew from {} to {}",
            p,
            h,
            again,
            top,
            top + 2
        )));
    }
    Ok(h)
}

pub fn grv_homology_direct(t: &HilbertTable, v: &[i64]) -> Result<GradedGroup> {
    grv_homology_direct_with(t, v, default_u_truncation(t.r()))
}

/// `P_v(t) = (-t)^{-h(v)} H_v(-t^{-1})`.
pub fn grv_homology_formula(t: &HilbertTable, v: &[i64]) -> Result<LaurentPoly> {
    let p = LatticePoint::from(v);
    needs_upper(t, &p)?;
    let h = t.get(&p) as i64;
    let hv = motivic_coefficient(t, &p)?;
    Ok(LaurentPoly::from_terms(hv.terms().map(|(m, c)| {
        let sign = if (m + h).rem_euclid(2) == 0 { 1 } else { -1 };
        (-m - h, sign * c)
    })))
}

/// `HL^-(v)` with the requested provenance. The formula route assumes a
/// free group and fails on a negative coefficient.
pub fn hl(t: &HilbertTable, v: &[i64], provenance: Provenance) -> Result<HlResult> {
    let group = match provenance {
        Provenance::Direct => grv_homology_direct(t, v)?,
        Provenance::Formula => {
            let p = grv_homology_formula(t, v)?;
            if let Some((d, c)) = p.terms().find(|&(_, c)| c < 0) {
                return Err(Error::Consistency(format!(
                    "Poincaré polynomial of HL^-({}) has coefficient {} in degree {}",
                    LatticePoint::from(v),
                    c,
                    d
                )));
            }
            GradedGroup::free(p.terms().map(|(d, c)| (d, c as usize)))
        }
    };
    Ok(HlResult { point: LatticePoint::from(v), group, provenance })
}

/// Points `v` of the table whose `HL^-(v)` can be computed.
pub fn hl_points(t: &HilbertTable) -> impl Iterator<Item = LatticePoint> {
    box_points(&inner_corner(t))
}

/// `Σ_v P_v(-1) t^v` over the inner box.
pub fn euler_series(t: &HilbertTable) -> Result<BoxSeries> {
    let mut s = BoxSeries::new(inner_corner(t), false);
    for v in hl_points(t) {
        s.add_term(&v, 0, grv_homology_formula(t, &v)?.eval_unit(-1));
    }
    Ok(s)
}

/// `∂² = 0` on the whole complex restricted to the table, `U`-powers up to `top`.
pub fn full_complex_squares_to_zero(t: &HilbertTable, top: u32) -> bool {
    let mut cubes = Vec::new();
    for v in box_points(t.corner()) {
        for k in SubsetMask::all(t.r()) {
            let c = Cube::new(v.clone(), k);
            if t.covers(&c.top()) {
                cubes.push(c);
            }
        }
    }
    let mut b = ComplexBuilder::new();
    for m in 0..=top {
        for c in &cubes {
            b.add_cell((m, c.clone()), c.degree(t, m));
        }
    }
    for m in 0..=top {
        for c in &cubes {
            for (face, s, _) in c.faces() {
                let p = m + (c.weight(t) - face.weight(t)) as u32;
                if p <= top {
                    b.add_boundary((m, c.clone()), (p, face), s);
                }
            }
        }
    }
    b.build().is_complex()
}

/// A box corner past which every point `x ≽ u` has `h(x) > k`: each step
/// beyond the conductor raises `h` by one.
pub fn sk_corner(t: &HilbertTable, u: &[i64], k: u64) -> LatticePoint {
    let l = &t.invariants().conductor;
    let extra = k as i64 - t.get(u) as i64 + 1;
    LatticePoint::new((0..u.len()).map(|i| u[i].max(l[i]) + extra.max(1)).collect())
}

/// Cubical homology of `S_k(u)`, the cubes based at or above `u` with
/// weight at most `k`.
pub fn sk_homology(t: &HilbertTable, u: &[i64], k: u64) -> Result<GradedGroup> {
    let corner = t.corner().clone();
    if !corner.dominates(u) || u.iter().any(|&x| x < 0) {
        return Err(Error::BoxTooSmall { corner: corner.to_vec(), reason: format!("{} is outside the box", LatticePoint::from(u)) });
    }
    for x in BoxIter::new(u, &corner) {
        if (0..x.len()).any(|i| x[i] == corner[i]) && t.get(&x) <= k {
            return Err(Error::BoxTooSmall {
                corner: corner.to_vec(),
                reason: format!("S_{}({}) reaches the box boundary at {}", k, LatticePoint::from(u), x),
            });
        }
    }
    let mut b = ComplexBuilder::new();
    let mut cubes = Vec::new();
    for v in BoxIter::new(u, &corner) {
        for dirs in SubsetMask::all(t.r()) {
            let c = Cube::new(v.clone(), dirs);
            if t.covers(&c.top()) && c.weight(t) <= k {
                b.add_cell(c.clone(), c.dim() as i64);
                cubes.push(c);
            }
        }
    }
    for c in cubes {
        for (face, s, _) in c.faces() {
            b.add_boundary(c.clone(), face, s);
        }
    }
    Ok(b.build().homology())
}

/// The five local pictures of `h` around `v` for two branches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum R2Case {
    A,
    B,
    C,
    D,
    E,
}

impl R2Case {
    pub fn tag(self) -> char {
        match self {
            R2Case::A => 'a',
            R2Case::B => 'b',
            R2Case::C => 'c',
            R2Case::D => 'd',
            R2Case::E => 'e',
        }
    }
}

impl fmt::Display for R2Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// Case and predicted `HL^-(v)` from the steps
/// `(h(v+e1) - h(v), h(v+e2) - h(v), h(v+e) - h(v))`.
pub fn r2_classify(t: &HilbertTable, v: &[i64]) -> Result<(R2Case, GradedGroup)> {
    if t.r() != 2 {
        return Err(Error::Dimension(format!("two-branch classification on a curve with {} branches", t.r())));
    }
    let p = LatticePoint::from(v);
    needs_upper(t, &p)?;
    let h = t.get(&p);
    let step = |k: SubsetMask| t.get(&p.plus_mask(k)) - h;
    let pattern = [step(SubsetMask::single(0)), step(SubsetMask::single(1)), step(SubsetMask::full(2))];
    let top = -2 * h as i64;
    Ok(match pattern {
        [0, 0, 0] => (R2Case::A, GradedGroup::zero()),
        [0, 1, 1] => (R2Case::B, GradedGroup::zero()),
        [1, 0, 1] => (R2Case::C, GradedGroup::zero()),
        [1, 1, 1] => (R2Case::D, GradedGroup::free([(top, 1)])),
        [1, 1, 2] => (R2Case::E, GradedGroup::free([(top, 1), (top - 1, 1)])),
        _ => return Err(Error::UnclassifiablePattern { at: v.to_vec(), pattern }),
    })
}

/// The two kinds of one-branch `E²` generators: the vertex `a_v` and the
/// edge `α_v = □(v, {1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum E2Kind {
    Vertex,
    Edge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct E2Term {
    pub v: i64,
    pub kind: E2Kind,
    pub degree: i64,
}

impl E2Term {
    /// Parity of the homological degree.
    pub fn epsilon(&self) -> i64 {
        self.degree.rem_euclid(2)
    }

    /// Exponent `v + ε` in the signed count.
    pub fn position(&self) -> i64 {
        self.v + self.epsilon()
    }
}

/// Outcome of the one-branch structural checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct R1Checks {
    pub hl_matches_closed_form: bool,
    pub e2_matches_direct: bool,
    pub support_in_range: bool,
    pub symmetric: bool,
    pub exact_sequence: bool,
    pub euler_is_alexander: bool,
}

impl R1Checks {
    pub fn all(&self) -> bool {
        self.hl_matches_closed_form
            && self.e2_matches_direct
            && self.support_in_range
            && self.symmetric
            && self.exact_sequence
            && self.euler_is_alexander
    }
}

/// `HL^-`, the `U`-action and the `E²` page of a one-branch curve over
/// `0 ≤ v ≤ last`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct R1Structure {
    pub milnor: i64,
    pub last: i64,
    /// `HL^-(v)` by direct homology.
    pub hl: BTreeMap<i64, GradedGroup>,
    /// `U a_v` for `v ∈ S`: `Some(v + 1)` or zero.
    pub u_action: BTreeMap<i64, Option<i64>>,
    /// Closed form from the semigroup.
    pub e2: Vec<E2Term>,
    /// From `d¹` on the `E¹` page of the `U = 0` complex.
    pub e2_direct: Vec<E2Term>,
    /// `Σ (-1)^ε t^{v+ε}`.
    pub e2_euler: LaurentPoly,
    pub alexander: LaurentPoly,
    pub checks: R1Checks,
}

fn e2_closed(inside: &dyn Fn(i64) -> bool, h: &dyn Fn(i64) -> i64, last: i64) -> Vec<E2Term> {
    let mut out = Vec::new();
    for v in 0..=last {
        if !inside(v) {
            continue;
        }
        if v == 0 || !inside(v - 1) {
            out.push(E2Term { v, kind: E2Kind::Vertex, degree: -2 * h(v) });
        }
        if !inside(v + 1) {
            out.push(E2Term { v, kind: E2Kind::Edge, degree: 1 - 2 * h(v) });
        }
    }
    out
}

/// `E¹` is the homology of each `U = 0` graded piece; `E²` is the homology
/// of `d¹`, the far-face part, on it.
fn e2_from_d1(t: &HilbertTable, last: i64) -> Vec<E2Term> {
    let h = |v: i64| t.get(&[v]) as i64;
    let mut e1 = BTreeSet::new();
    for v in 0..=last + 1 {
        let mut b = ComplexBuilder::new();
        b.add_cell(E2Kind::Vertex, 0);
        b.add_cell(E2Kind::Edge, 1);
        if h(v + 1) == h(v) {
            b.add_boundary(E2Kind::Edge, E2Kind::Vertex, -1);
        }
        let piece = b.build().homology();
        for (kind, d) in [(E2Kind::Vertex, 0), (E2Kind::Edge, 1)] {
            if piece.rank(d) == 1 {
                e1.insert((v, kind));
            }
        }
    }
    let degree = |v: i64, kind: E2Kind| match kind {
        E2Kind::Vertex => -2 * h(v),
        E2Kind::Edge => 1 - 2 * h(v + 1),
    };
    let mut b = ComplexBuilder::new();
    let mut by_degree = BTreeMap::new();
    for &(v, kind) in &e1 {
        b.add_cell((v, kind), degree(v, kind));
        by_degree.insert(degree(v, kind), (v, kind));
    }
    for &(v, kind) in &e1 {
        if kind == E2Kind::Edge && e1.contains(&(v + 1, E2Kind::Vertex)) {
            b.add_boundary((v, kind), (v + 1, E2Kind::Vertex), 1);
        }
    }
    let page = b.build().homology();
    let mut out = Vec::new();
    for (d, s) in page.iter() {
        let (v, kind) = by_degree[&d];
        if v > last {
            continue;
        }
        for _ in 0..s.rank {
            let degree = match kind {
                E2Kind::Vertex => d,
                E2Kind::Edge => 1 - 2 * h(v),
            };
            out.push(E2Term { v, kind, degree });
        }
    }
    out.sort();
    out
}

/// One-branch structure on `0 ≤ v ≤ corner - 2`; the box must reach `μ + 2`.
pub fn r1_structure(t: &HilbertTable) -> Result<R1Structure> {
    if t.r() != 1 {
        return Err(Error::Dimension(format!("one-branch structure on a curve with {} branches", t.r())));
    }
    let mu = t.invariants().milnor;
    let c = t.corner()[0];
    if c < mu + 2 {
        return Err(Error::BoxTooSmall { corner: t.corner().to_vec(), reason: format!("one-branch structure needs μ + 2 = {}", mu + 2) });
    }
    let last = c - 2;
    let s = t.semigroup();
    let inside = |v: i64| v >= 0 && s.contains(&[v]).unwrap_or(true);
    let h = |v: i64| t.get(&[v]) as i64;

    let mut hl = BTreeMap::new();
    let mut hl_ok = true;
    for v in 0..=last + 1 {
        let g = grv_homology_direct(t, &[v])?;
        let expect = if inside(v) { GradedGroup::free([(-2 * h(v), 1)]) } else { GradedGroup::zero() };
        hl_ok &= g == expect;
        hl.insert(v, g);
    }
    let u_action: BTreeMap<i64, Option<i64>> =
        (0..=last).filter(|&v| inside(v)).map(|v| (v, if inside(v + 1) { Some(v + 1) } else { None })).collect();

    let e2 = e2_closed(&inside, &h, last);
    let e2_direct = e2_from_d1(t, last);

    let support = e2.iter().all(|e| (0..=mu).contains(&e.position()));
    let positions: BTreeSet<(i64, i64)> = e2.iter().map(|e| (e.epsilon(), e.position())).collect();
    let symmetric = positions.iter().all(|&(eps, p)| positions.contains(&(eps, mu - p)));

    let rank = |v: i64, kind: E2Kind| e2_direct.iter().filter(|e| e.v == v && e.kind == kind).count() as i64;
    let hl_rank = |v: i64| hl[&v].total_rank() as i64;
    let mut exact = true;
    for v in 0..last {
        let kernel = match u_action.get(&v) {
            Some(None) => 1,
            _ => 0,
        };
        let image = matches!(u_action.get(&v), Some(Some(_))) as i64;
        let cokernel = hl_rank(v + 1) - image;
        exact &= kernel == rank(v, E2Kind::Edge)
            && cokernel == rank(v + 1, E2Kind::Vertex)
            && rank(v, E2Kind::Edge) - hl_rank(v) + hl_rank(v + 1) - rank(v + 1, E2Kind::Vertex) == 0;
    }

    let e2_euler = LaurentPoly::from_terms(e2.iter().map(|e| (e.position(), if e.epsilon() == 0 { 1 } else { -1 })));
    let delta = alexander(t)?;
    let alex = LaurentPoly::from_terms(delta.poly.terms().map(|(v, _, c)| (v[0], c)));

    let checks = R1Checks {
        hl_matches_closed_form: hl_ok,
        e2_matches_direct: e2 == e2_direct,
        support_in_range: support,
        symmetric,
        exact_sequence: exact,
        euler_is_alexander: e2_euler == alex,
    };
    Ok(R1Structure { milnor: mu, last, hl, u_action, e2, e2_direct, e2_euler, alexander: alex, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::curve::Curve;

    fn table(c: Curve) -> HilbertTable {
        let inv = crate::hilbert::invariants(&c).unwrap();
        let corner = inv.conductor.add_scalar(3);
        HilbertTable::build(&c, &corner).unwrap()
    }

    #[test]
    fn a3_points() {
        let t = table(corpus::a_odd(2, 24).unwrap());
        assert!(grv_homology_direct(&t, &[1, 0]).unwrap().is_zero());
        assert_eq!(grv_homology_direct(&t, &[2, 2]).unwrap(), GradedGroup::free([(-4, 1), (-5, 1)]));
        assert_eq!(grv_homology_formula(&t, &[2, 2]).unwrap(), LaurentPoly::from_terms([(-4, 1), (-5, 1)]));
        assert_eq!(r2_classify(&t, &[1, 1]).unwrap(), (R2Case::D, GradedGroup::free([(-2, 1)])));
        assert!(r2_classify(&t, &[0, 1]).unwrap().1.is_zero());
        assert_eq!(euler_series(&t).unwrap().render(), "1 + t1*t2");
    }

    #[test]
    fn d5_case_e() {
        let t = table(corpus::d5(24).unwrap());
        let (case, g) = r2_classify(&t, &[2, 4]).unwrap();
        assert_eq!(case, R2Case::E);
        assert_eq!(g, GradedGroup::free([(-6, 1), (-7, 1)]));
        assert_eq!(grv_homology_direct(&t, &[2, 4]).unwrap(), g);
        let sk = sk_homology(&HilbertTable::build(t.curve(), &sk_corner(&t, &[1, 1], 2)).unwrap(), &[1, 1], 2).unwrap();
        assert_eq!(sk, GradedGroup::free([(0, 1)]));
    }

    #[test]
    fn cusp_structure() {
        let t = table(corpus::cusp(24).unwrap());
        assert_eq!(grv_homology_direct(&t, &[2]).unwrap(), GradedGroup::free([(-2, 1)]));
        let s = r1_structure(&t).unwrap();
        assert!(s.checks.all(), "{:?}", s.checks);
        let e2: Vec<(i64, E2Kind, i64)> = s.e2.iter().map(|e| (e.v, e.kind, e.degree)).collect();
        assert_eq!(e2, [(0, E2Kind::Vertex, 0), (0, E2Kind::Edge, 1), (2, E2Kind::Vertex, -2)]);
        assert_eq!(s.e2_euler, LaurentPoly::from_coeffs(&[1, -1, 1]));
    }

    #[test]
    fn cusp_2_5_symmetric() {
        let t = table(corpus::cusp_2_5(24).unwrap());
        let s = r1_structure(&t).unwrap();
        assert_eq!(s.milnor, 4);
        assert!(s.checks.all(), "{:?}", s.checks);
        let smooth = r1_structure(&table(corpus::smooth_line(24).unwrap())).unwrap();
        assert_eq!(smooth.e2.len(), 1);
        assert_eq!(smooth.e2_euler, LaurentPoly::one());
    }

    #[test]
    fn squares_vanish_and_box_errors() {
        let t = table(corpus::a_odd(2, 24).unwrap());
        assert!(full_complex_squares_to_zero(&t, 4));
        assert_eq!(sk_homology(&t, &[0, 0], 20).unwrap_err().name(), "BoxTooSmall");
        assert_eq!(grv_homology_direct(&t, t.corner()).unwrap_err().name(), "BoxTooSmall");
    }
}
