//! Generating series over lattice boxes: Hilbert, Poincaré, motivic and
//! Alexander.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use crate::error::{Error, Result};
use crate::exactalg::LaurentPoly;
use crate::hilbert::{CurveInvariants, HilbertTable};
use crate::lattice::{box_points, LatticePoint, SubsetMask};

/// An integer series in `t_1, ..., t_r` (and optionally `q`) known on the
/// box `[0, corner]` of `t`-exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxSeries {
    corner: LatticePoint,
    with_q: bool,
    coeffs: BTreeMap<(LatticePoint, i64), i64>,
}

impl BoxSeries {
    pub fn new(corner: LatticePoint, with_q: bool) -> Self {
        BoxSeries { corner, with_q, coeffs: BTreeMap::new() }
    }

    pub fn r(&self) -> usize {
        self.corner.len()
    }

    pub fn corner(&self) -> &LatticePoint {
        &self.corner
    }

    pub fn has_q(&self) -> bool {
        self.with_q
    }

    fn in_box(&self, v: &[i64]) -> bool {
        v.iter().zip(self.corner.iter()).all(|(x, b)| *x >= 0 && x <= b)
    }

    /// Adds `c t^v q^m`; terms outside the box are ignored.
    pub fn add_term(&mut self, v: &[i64], m: i64, c: i64) {
        if c == 0 || !self.in_box(v) {
            return;
        }
        debug_assert!(self.with_q || m == 0);
        let key = (LatticePoint::from(v), m);
        let e = self.coeffs.entry(key.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&key);
        }
    }

    /// Coefficient of `t^v q^m`; zero outside the box.
    pub fn coeff_q(&self, v: &[i64], m: i64) -> i64 {
        self.coeffs.get(&(LatticePoint::from(v), m)).copied().unwrap_or(0)
    }

    /// Coefficient of `t^v` (for series with `q`, summed over `q`, i.e. at `q = 1`).
    pub fn coeff(&self, v: &[i64]) -> i64 {
        if !self.with_q {
            return self.coeff_q(v, 0);
        }
        self.q_poly(v).eval_unit(1)
    }

    /// The coefficient of `t^v` as a polynomial in `q`.
    pub fn q_poly(&self, v: &[i64]) -> LaurentPoly {
        let v = LatticePoint::from(v);
        LaurentPoly::from_terms(
            self.coeffs.range((v.clone(), i64::MIN)..=(v, i64::MAX)).map(|((_, m), c)| (*m, *c)),
        )
    }

    /// Nonzero terms `(v, m, c)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&LatticePoint, i64, i64)> + '_ {
        self.coeffs.iter().map(|((v, m), c)| (v, *m, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `q = 1`.
    pub fn at_q_one(&self) -> BoxSeries {
        let mut out = BoxSeries::new(self.corner.clone(), false);
        for (v, _, c) in self.terms() {
            out.add_term(v, 0, c);
        }
        out
    }

    /// Same coefficients on a smaller box.
    pub fn restrict(&self, corner: &[i64]) -> BoxSeries {
        let mut out = BoxSeries::new(LatticePoint::from(corner), self.with_q);
        for (v, m, c) in self.terms() {
            out.add_term(v, m, c);
        }
        out
    }

    /// Coefficientwise equality on the box `[0, corner]`.
    pub fn agrees_on(&self, other: &BoxSeries, corner: &[i64]) -> bool {
        self.restrict(corner).coeffs == other.restrict(corner).coeffs
    }

    pub fn scale(&self, k: i64) -> BoxSeries {
        let mut out = BoxSeries::new(self.corner.clone(), self.with_q);
        for (v, m, c) in self.terms() {
            out.add_term(v, m, c * k);
        }
        out
    }

    /// Multiplies by `1 / (1 - t^step)` expanded inside the box, for a
    /// nonzero exponent vector `step ≽ 0`.
    pub fn div_one_minus(&self, step: &[i64]) -> BoxSeries {
        assert!(step.iter().all(|&x| x >= 0) && step.iter().any(|&x| x > 0));
        let mut out = BoxSeries::new(self.corner.clone(), self.with_q);
        for (v, m, c) in self.terms() {
            let mut w = v.clone();
            while self.in_box(&w) {
                out.add_term(&w, m, c);
                w = w.add(step);
            }
        }
        out
    }

    /// Multiplies by `1 - t_j^{-1}`: the result is only meaningful on
    /// `[0, corner - e_j]`, where the box shrinks to.
    pub fn mul_one_minus_inverse(&self, j: usize) -> BoxSeries {
        let corner = self.corner.with(j, self.corner[j] - 1);
        let mut out = BoxSeries::new(corner, self.with_q);
        for (v, m, c) in self.terms() {
            out.add_term(v, m, c);
            out.add_term(&v.with(j, v[j] - 1), m, -c);
        }
        out
    }

    /// `t_j = 1`: sums over the `j`-th exponent and drops the variable.
    pub fn at_t_one(&self, j: usize) -> BoxSeries {
        let drop = |v: &[i64]| -> Vec<i64> { v.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, x)| *x).collect() };
        let mut out = BoxSeries::new(LatticePoint::new(drop(&self.corner)), self.with_q);
        for (v, m, c) in self.terms() {
            out.add_term(&drop(v), m, c);
        }
        out
    }

    /// Canonical text: ascending exponent vectors, `q` last, `*` between
    /// factors, coefficient 1 written only on the constant term.
    pub fn render(&self) -> String {
        let r = self.r();
        let var = |i: usize| if r == 1 { String::from("t") } else { format!("t{}", i + 1) };
        let mut s = String::new();
        if self.is_zero() {
            s.push('0');
            return s;
        }
        for (n, (v, m, c)) in self.terms().enumerate() {
            crate::exactalg::push_sign(&mut s, n == 0, c);
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in v.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(var(i)),
                    _ => factors.push(format!("{}^{}", var(i), e)),
                }
            }
            match m {
                0 => {}
                1 => factors.push(String::from("q")),
                _ => factors.push(format!("q^{}", m)),
            }
            let abs = c.unsigned_abs();
            if factors.is_empty() {
                let _ = write!(s, "{}", abs);
            } else {
                if abs != 1 {
                    let _ = write!(s, "{}*", abs);
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for BoxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `H = Σ h(v) t^v` over the whole table.
pub fn hilbert_series(t: &HilbertTable) -> BoxSeries {
    let mut s = BoxSeries::new(t.corner().clone(), false);
    for (v, h) in t.iter() {
        s.add_term(&v, 0, h as i64);
    }
    s
}

/// Box on which every `v + e_K` lies in the table.
pub fn inner_corner(t: &HilbertTable) -> LatticePoint {
    t.corner().add_scalar(-1)
}

/// `π(v) = Σ_K (-1)^{|K|-1} h(v + e_K)` on `[0, corner - e]`.
pub fn poincare_from_hilbert(t: &HilbertTable) -> BoxSeries {
    let inner = inner_corner(t);
    let subsets = SubsetMask::all(t.r());
    let mut s = BoxSeries::new(inner.clone(), false);
    for v in box_points(&inner) {
        let pi: i64 = subsets.iter().map(|&k| -k.sign() * t.get(&v.plus_mask(k)) as i64).sum();
        s.add_term(&v, 0, pi);
    }
    s
}

/// Poincaré series of every sub-curve `C_K`, `K` nonempty, each on the
/// projection of the table box.
pub fn poincare_family(t: &HilbertTable) -> Result<BTreeMap<SubsetMask, BoxSeries>> {
    let r = t.r();
    let mut out = BTreeMap::new();
    for k in SubsetMask::all(r) {
        if k.is_empty() {
            continue;
        }
        let p = if k == SubsetMask::full(r) {
            poincare_from_hilbert(t)
        } else {
            let corner: Vec<i64> = k.iter().map(|i| t.corner()[i]).collect();
            poincare_from_hilbert(&HilbertTable::build(&t.curve().sub_curve(k)?, &corner)?)
        };
        out.insert(k, p);
    }
    Ok(out)
}

/// Rebuilds `h` on `[0, corner]` from the Poincaré series of all sub-curves:
/// `h(v) = Σ_{K ≠ ∅} (-1)^{|K|-1} Σ_{0 ≼ u ≼ v_K - e_K} π^K(u)`.
pub fn hilbert_from_poincare(family: &BTreeMap<SubsetMask, BoxSeries>, corner: &[i64]) -> Result<BoxSeries> {
    let r = corner.len();
    let mut s = BoxSeries::new(LatticePoint::from(corner), false);
    for v in box_points(corner) {
        let mut h = 0i64;
        for (&k, p) in family {
            let top: Vec<i64> = k.iter().map(|i| v[i] - 1).collect();
            if top.iter().any(|&x| x < 0) {
                continue;
            }
            if !top.iter().zip(p.corner().iter()).all(|(a, b)| a <= b) {
                return Err(Error::BoxTooSmall {
                    corner: p.corner().to_vec(),
                    reason: format!("Poincaré series of branches {:?} must reach {:?}", k.iter().map(|i| i + 1).collect::<Vec<_>>(), top),
                });
            }
            let sum: i64 = box_points(&top).map(|u| p.coeff(&u)).sum();
            h += -k.sign() * sum;
        }
        debug_assert!(r == 0 || h >= 0);
        s.add_term(&v, 0, h);
    }
    Ok(s)
}

/// `H_v(q) = Σ_K (-1)^{|K|} q^{h(v + e_K)} / (1 - q)`, the division checked
/// to be exact.
pub fn motivic_coefficient(t: &HilbertTable, v: &[i64]) -> Result<LaurentPoly> {
    let v = LatticePoint::from(v);
    let num = LaurentPoly::from_terms(SubsetMask::all(t.r()).iter().map(|&k| (t.get(&v.plus_mask(k)) as i64, k.sign())));
    let (hv, exact) = num.div_linear(1, -1);
    if !exact {
        return Err(Error::Consistency(format!("Σ ± q^h at {} is not divisible by 1 - q", v)));
    }
    Ok(hv)
}

/// `P_g = Σ_v H_v(q) t^v` on `[0, corner - e]`.
pub fn motivic_series(t: &HilbertTable) -> Result<BoxSeries> {
    let inner = inner_corner(t);
    let mut s = BoxSeries::new(inner.clone(), true);
    for v in box_points(&inner) {
        for (m, c) in motivic_coefficient(t, &v)?.terms() {
            s.add_term(&v, m, c);
        }
    }
    Ok(s)
}

/// `P̄_g = P_g · Π (1 - t_i q)`, checked to vanish outside `[0, l]`.
pub fn motivic_normalized(pg: &BoxSeries, inv: &CurveInvariants) -> Result<BoxSeries> {
    let l = &inv.conductor;
    if !pg.corner().dominates(&l.add_scalar(1)) {
        return Err(Error::BoxTooSmall {
            corner: pg.corner().to_vec(),
            reason: format!("polynomiality needs a margin past the conductor {}", l),
        });
    }
    let r = pg.r();
    let mut out = BoxSeries::new(pg.corner().clone(), true);
    for (v, m, c) in pg.terms() {
        for k in SubsetMask::all(r) {
            out.add_term(&v.plus_mask(k), m + k.len() as i64, k.sign() * c);
        }
    }
    if let Some((v, _, _)) = out.terms().find(|(v, _, _)| !l.dominates(v)) {
        return Err(Error::PolynomialityViolation { at: v.to_vec() });
    }
    Ok(out.restrict(l))
}

/// `c_{v,m} = c_{l-v, m-|v|+δ}` for every coefficient of `P̄_g`.
pub fn functional_equation_check(pbar: &BoxSeries, inv: &CurveInvariants) -> bool {
    let l = &inv.conductor;
    let d = inv.delta as i64;
    box_points(l).all(|v| {
        let w = l.sub(&v);
        pbar.q_poly(&v).terms().all(|(m, c)| pbar.coeff_q(&w, m - v.norm() + d) == c)
            && pbar.q_poly(&w).terms().all(|(n, c)| pbar.coeff_q(&v, n - w.norm() + d) == c)
    })
}

/// Coefficientwise `H · Π(1 - t_i^{-1}) = -P`, evaluated by series
/// multiplication on the box where every shifted term exists.
pub fn hpc_check(t: &HilbertTable) -> bool {
    let mut s = hilbert_series(t);
    for j in 0..t.r() {
        s = s.mul_one_minus_inverse(j);
    }
    let p = poincare_from_hilbert(t);
    s.scale(-1).agrees_on(&p, &inner_corner(t))
}

/// `(-1)^{h(v)} H_v(-t)` has non-negative coefficients for every `v`.
pub fn nonnegativity_check(t: &HilbertTable, pg: &BoxSeries) -> bool {
    box_points(pg.corner()).all(|v| {
        let sign = if t.get(&v) % 2 == 0 { 1 } else { -1 };
        pg.q_poly(&v).substitute(-1, 1).scale(sign).terms().all(|(_, c)| c >= 0)
    })
}

/// The Alexander polynomial with its symmetry convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderPoly {
    pub poly: BoxSeries,
    /// Coefficients satisfy `c_v = sign · c_{center - v}`.
    pub center: LatticePoint,
    pub sign: i64,
    /// Human-readable form of the reflection, e.g. `"v -> l - e - v"`.
    pub reflection: &'static str,
}

impl AlexanderPoly {
    pub fn is_symmetric(&self) -> bool {
        reflection_holds(&self.poly, &self.center, self.sign)
    }
}

/// Whether `c_v = sign · c_{center - v}` for every coefficient.
pub fn reflection_holds(p: &BoxSeries, center: &[i64], sign: i64) -> bool {
    p.terms().all(|(v, _, c)| {
        let w = LatticePoint::from(center).sub(v);
        w.iter().all(|&x| x >= 0) && p.coeff(&w) == sign * c
    }) && box_points(center).all(|v| p.coeff(&v) == sign * p.coeff(&LatticePoint::from(center).sub(&v)))
}

/// `Δ = (1 - t) P` for one branch and `Δ = P` for several, with the finite
/// support checked on the box.
pub fn alexander(t: &HilbertTable) -> Result<AlexanderPoly> {
    let p = poincare_from_hilbert(t);
    let inv = t.invariants();
    let r = t.r();
    if r == 1 {
        let mu = inv.milnor;
        if p.corner()[0] <= mu {
            return Err(Error::BoxTooSmall {
                corner: t.corner().to_vec(),
                reason: format!("Alexander polynomial needs Poincaré coefficients past μ = {}", mu),
            });
        }
        let mut d = BoxSeries::new(p.corner().clone(), false);
        for (v, _, c) in p.terms() {
            d.add_term(v, 0, c);
            d.add_term(&[v[0] + 1], 0, -c);
        }
        if let Some((v, _, _)) = d.terms().find(|(v, _, _)| v[0] > mu) {
            return Err(Error::SupportViolation { at: v.to_vec() });
        }
        let center = LatticePoint::new(alloc::vec![mu]);
        return Ok(AlexanderPoly { poly: d.restrict(&center), center, sign: 1, reflection: "v -> mu - v" });
    }
    let center = inv.conductor.add_scalar(-1);
    if let Some((v, _, _)) = p.terms().find(|(v, _, _)| !center.dominates(v)) {
        return Err(Error::SupportViolation { at: v.to_vec() });
    }
    if !p.corner().dominates(&center) {
        return Err(Error::BoxTooSmall {
            corner: t.corner().to_vec(),
            reason: format!("Alexander polynomial needs Poincaré coefficients up to {}", center),
        });
    }
    let sign = if r % 2 == 0 { 1 } else { -1 };
    Ok(AlexanderPoly { poly: p.restrict(&center), center, sign, reflection: "v -> l - e - v" })
}

/// How the factor `1 / (1 - ...)` in the restriction relation is formed
/// from the intersection numbers `c_j = (C_i, C_j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RestrictionFactor {
    /// `1 / (1 - Π_j t_j^{c_j})`.
    Monomial,
    /// `Π_j 1 / (1 - t_j^{c_j})`; agrees with the monomial form for two
    /// branches only.
    Product,
}

/// For every branch `i`: the Poincaré series of the curve without `C_i`
/// equals `P|_{t_i = 1} / (1 - Π_{j ≠ i} t_j^{(C_i, C_j)})` on the box.
pub fn torres_restriction_check(t: &HilbertTable) -> Result<bool> {
    restriction_check_with(t, RestrictionFactor::Monomial)
}

pub fn restriction_check_with(t: &HilbertTable, form: RestrictionFactor) -> Result<bool> {
    let r = t.r();
    if r < 2 {
        return Ok(true);
    }
    let inv = t.invariants();
    let p = poincare_from_hilbert(t);
    if !p.corner().dominates(&inv.conductor.add_scalar(-1)) {
        return Err(Error::BoxTooSmall { corner: t.corner().to_vec(), reason: String::from("restriction needs the conductor box") });
    }
    let family = poincare_family(t)?;
    for i in 0..r {
        let rest = SubsetMask::full(r).remove(i);
        let others: Vec<usize> = rest.iter().collect();
        let exps: Vec<i64> = others.iter().map(|&j| inv.pairwise[i][j] as i64).collect();
        let mut rhs = p.at_t_one(i);
        match form {
            RestrictionFactor::Monomial => rhs = rhs.div_one_minus(&exps),
            RestrictionFactor::Product => {
                for (slot, &e) in exps.iter().enumerate() {
                    let mut step = alloc::vec![0; exps.len()];
                    step[slot] = e;
                    rhs = rhs.div_one_minus(&step);
                }
            }
        }
        let lhs = &family[&rest];
        if !lhs.agrees_on(&rhs, lhs.corner()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn table(c: crate::Curve) -> HilbertTable {
        let l = crate::hilbert::invariants(&c).unwrap().conductor;
        HilbertTable::build(&c, &l.add_scalar(3)).unwrap()
    }

    #[test]
    fn poincare_of_examples() {
        let t = table(corpus::d5(24).unwrap());
        assert_eq!(poincare_from_hilbert(&t).render(), "1 + t1*t2^3");
        let t = table(corpus::a_odd(2, 24).unwrap());
        assert_eq!(poincare_from_hilbert(&t).render(), "1 + t1*t2");
        let t = table(corpus::triple_point(24).unwrap());
        assert_eq!(poincare_from_hilbert(&t).render(), "1 - t1*t2*t3");
    }

    #[test]
    fn alexander_of_examples() {
        let t = table(corpus::cusp(24).unwrap());
        let a = alexander(&t).unwrap();
        assert_eq!(a.poly.render(), "1 - t + t^2");
        assert!(a.is_symmetric());
        for c in [corpus::a_odd(2, 24).unwrap(), corpus::d5(24).unwrap(), corpus::triple_point(24).unwrap()] {
            let t = table(c);
            let a = alexander(&t).unwrap();
            assert!(a.is_symmetric(), "{}", a.poly);
            // reflecting through the conductor itself fails
            assert!(!reflection_holds(&a.poly, &t.invariants().conductor, a.sign));
        }
        let t = table(corpus::smooth_line(24).unwrap());
        assert_eq!(alexander(&t).unwrap().poly.render(), "1");
    }

    #[test]
    fn round_trip_and_identities() {
        for (name, c) in corpus::all(24).unwrap() {
            let t = table(c);
            let fam = poincare_family(&t).unwrap();
            let h = hilbert_from_poincare(&fam, t.corner()).unwrap();
            assert_eq!(h, hilbert_series(&t), "{}", name);
            assert!(hpc_check(&t), "{}", name);
            assert!(torres_restriction_check(&t).unwrap(), "{}", name);
            if t.r() == 2 {
                assert!(restriction_check_with(&t, RestrictionFactor::Product).unwrap());
            }
        }
        let t = table(corpus::triple_point(24).unwrap());
        assert!(!restriction_check_with(&t, RestrictionFactor::Product).unwrap());
    }

    #[test]
    fn motivic_d5() {
        let t = table(corpus::d5(24).unwrap());
        let pg = motivic_series(&t).unwrap();
        assert_eq!(pg.at_q_one(), poincare_from_hilbert(&t));
        assert!(nonnegativity_check(&t, &pg));
        let pbar = motivic_normalized(&pg, t.invariants()).unwrap();
        assert!(functional_equation_check(&pbar, t.invariants()));
        // the reflection (v, m) -> (l - v, δ - m) does not hold
        let l = &t.invariants().conductor;
        assert_eq!(pbar.coeff_q(&[0, 1], 1), -1);
        assert_eq!(pbar.coeff_q(&l.sub(&[0, 1]), 3 - 1), 0);
        let smooth = table(corpus::smooth_line(24).unwrap());
        let pbar1 = motivic_normalized(&motivic_series(&smooth).unwrap(), smooth.invariants()).unwrap();
        assert_eq!(pbar1.render(), "1");
    }

    #[test]
    fn case_e_motivic_coefficient() {
        // A3 at (2,2): steps (1,1,2), h = 2
        let t = table(corpus::a_odd(2, 24).unwrap());
        let pg = motivic_series(&t).unwrap();
        assert_eq!(pg.q_poly(&[2, 2]), LaurentPoly::from_terms([(2, 1), (3, -1)]));
        assert_eq!(pg.q_poly(&[1, 1]), LaurentPoly::monomial(1, 1));
        assert!(pg.q_poly(&[1, 0]).is_zero());
    }
}
