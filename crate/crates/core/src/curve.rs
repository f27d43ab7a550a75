//! Branch parametrizations, valuations and the rank oracle for
//! `h(v) = dim O/J(v)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{nullspace_rational, rank_rational, Matrix, RatMatrix, Rational, TruncSeries};
use crate::lattice::{LatticePoint, SubsetMask};

/// Largest number of branches supported (subsets are enumerated exhaustively).
pub const MAX_BRANCHES: usize = 8;

/// One branch `t -> (x(t), y(t))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchParametrization {
    x: TruncSeries,
    y: TruncSeries,
}

impl BranchParametrization {
    /// Validates that both components vanish at `t = 0`, that they are not
    /// both zero and that the parametrization is primitive (the exponents
    /// present have gcd 1).
    pub fn new(x: TruncSeries, y: TruncSeries) -> Result<Self> {
        if x.order() == Some(0) || y.order() == Some(0) {
            return Err(Error::InvalidBranch("x(t) and y(t) must vanish at t = 0".into()));
        }
        if x.is_zero() && y.is_zero() {
            return Err(Error::InvalidBranch("x(t) and y(t) are both zero modulo the truncation".into()));
        }
        let g = x.terms().chain(y.terms()).fold(0u32, |g, (e, _)| g.gcd(&e));
        if g != 1 {
            return Err(Error::InvalidBranch(format!(
                "parametrization is not primitive: every exponent is divisible by {}",
                g
            )));
        }
        Ok(BranchParametrization { x, y })
    }

    pub fn x(&self) -> &TruncSeries {
        &self.x
    }

    pub fn y(&self) -> &TruncSeries {
        &self.y
    }

    pub fn truncation(&self) -> u32 {
        self.x.truncation().min(self.y.truncation())
    }

    /// Multiplicity of the branch: the order of a generic linear form.
    pub fn multiplicity(&self) -> u32 {
        match (self.x.order(), self.y.order()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!("rejected by the constructor"),
        }
    }
}

/// A reduced plane curve germ given by its branches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    branches: Vec<BranchParametrization>,
}

impl Curve {
    pub fn new(branches: Vec<BranchParametrization>) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::InvalidCurve("a curve needs at least one branch".into()));
        }
        if branches.len() > MAX_BRANCHES {
            return Err(Error::InvalidCurve(format!("at most {} branches are supported", MAX_BRANCHES)));
        }
        for i in 0..branches.len() {
            for j in 0..i {
                if branches[i] == branches[j] {
                    return Err(Error::InvalidCurve(format!("branches {} and {} coincide", j + 1, i + 1)));
                }
            }
        }
        Ok(Curve { branches })
    }

    pub fn r(&self) -> usize {
        self.branches.len()
    }

    pub fn branches(&self) -> &[BranchParametrization] {
        &self.branches
    }

    /// Smallest truncation among the branches.
    pub fn truncation(&self) -> u32 {
        self.branches.iter().map(|b| b.truncation()).min().unwrap()
    }

    /// The curve `C_K` formed by the branches in `k`, in their original order.
    pub fn sub_curve(&self, k: SubsetMask) -> Result<Curve> {
        Curve::new(k.iter().filter(|&i| i < self.r()).map(|i| self.branches[i].clone()).collect())
    }
}

/// A polynomial in `x, y` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePoly {
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(terms: I) -> Self {
        let mut p = BivariatePoly::default();
        for (k, c) in terms {
            let e = p.terms.entry(k).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                p.terms.remove(&k);
            }
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    /// `f(x(t), y(t))` modulo the branch truncation.
    pub fn compose(&self, b: &BranchParametrization) -> TruncSeries {
        let t = b.truncation();
        let mut out = TruncSeries::zero(t);
        for (&(i, j), c) in self.terms() {
            let m = b.x().pow(i).mul(&b.y().pow(j)).truncate(t);
            out = out.add(&m.scale(c));
        }
        out
    }
}

/// Result of a valuation computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(u32),
    /// The composition vanishes modulo `t^T`; the order is at least `T`.
    AtLeastTruncation(u32),
}

/// The `t`-order of `f(x(t), y(t))`.
pub fn valuation(f: &BivariatePoly, b: &BranchParametrization) -> Valuation {
    let s = f.compose(b);
    match s.order() {
        Some(n) => Valuation::Finite(n),
        None => Valuation::AtLeastTruncation(s.truncation()),
    }
}

/// Monomials `x^a y^b` with `a + b <= max_degree`, ordered by total degree
/// and then by decreasing power of `x`.
fn monomials(max_degree: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        for a in (0..=d).rev() {
            out.push((a, d - a));
        }
    }
    out
}

/// Dense coefficients of every monomial composed with every branch, for
/// monomials up to a fixed total degree.
#[derive(Clone, Debug)]
pub struct Evaluator {
    monomials: Vec<(u32, u32)>,
    /// `images[branch][monomial]`, each of length `truncation(branch)`.
    images: Vec<Vec<Vec<Rational>>>,
    truncations: Vec<u32>,
}

impl Evaluator {
    pub fn new(c: &Curve, max_degree: u32) -> Self {
        let monomials = monomials(max_degree);
        let mut images = Vec::with_capacity(c.r());
        for b in c.branches() {
            let t = b.truncation();
            let xs: Vec<TruncSeries> = {
                let mut v = vec![TruncSeries::one(t)];
                for k in 1..=max_degree as usize {
                    let next = v[k - 1].mul(b.x()).truncate(t);
                    v.push(next);
                }
                v
            };
            let ys: Vec<TruncSeries> = {
                let mut v = vec![TruncSeries::one(t)];
                for k in 1..=max_degree as usize {
                    let next = v[k - 1].mul(b.y()).truncate(t);
                    v.push(next);
                }
                v
            };
            images.push(monomials.iter().map(|&(a, e)| xs[a as usize].mul(&ys[e as usize]).dense()).collect());
        }
        Evaluator { monomials, images, truncations: c.branches().iter().map(|b| b.truncation()).collect() }
    }

    fn check_truncation(&self, needed: u32) -> Result<()> {
        for &t in &self.truncations {
            if t < needed {
                return Err(Error::InsufficientTruncation { needed, available: t });
            }
        }
        Ok(())
    }

    /// Number of monomials of total degree `< degree_bound`.
    fn row_count(&self, degree_bound: u32) -> Result<usize> {
        let n = degree_bound as usize;
        let rows = n * (n + 1) / 2;
        if rows > self.monomials.len() {
            return Err(Error::Consistency(format!(
                "evaluator was built for total degree <= {}, requested < {}",
                self.max_degree(),
                degree_bound
            )));
        }
        Ok(rows)
    }

    /// Evaluation matrix for `v >= 0`: one row per monomial of total degree
    /// `< degree_bound`, one column per coefficient `t^0..t^{v_i - 1}` of
    /// each branch.
    pub fn matrix(&self, v: &[i64], degree_bound: u32) -> Result<RatMatrix> {
        let needed = v.iter().copied().max().unwrap_or(0).max(0) as u32;
        self.check_truncation(needed)?;
        let rows = self.row_count(degree_bound)?;
        let cols: usize = v.iter().map(|&x| x.max(0) as usize).sum();
        let mut data = Vec::with_capacity(rows);
        for m in 0..rows {
            let mut row = Vec::with_capacity(cols);
            for (i, &vi) in v.iter().enumerate() {
                row.extend_from_slice(&self.images[i][m][..vi.max(0) as usize]);
            }
            data.push(row);
        }
        Ok(Matrix::from_rows(cols, data))
    }

    pub fn max_degree(&self) -> u32 {
        self.monomials.last().map_or(0, |&(a, b)| a + b)
    }

    /// `h(v)`: rank of the evaluation matrix at `max(v, 0)`.
    pub fn h(&self, v: &[i64]) -> Result<u64> {
        let v = LatticePoint::from(v).clamp_nonneg();
        let m = v.iter().copied().max().unwrap_or(0);
        if m == 0 {
            return Ok(0);
        }
        Ok(rank_rational(&self.matrix(&v, m as u32)?) as u64)
    }

    /// Whether some `f` has valuation vector exactly `u` (`u >= 0`).
    ///
    /// Computes a basis of `J(u)` restricted to monomials of degree `<= max u`
    /// as a kernel, then checks that for every branch `i` the coefficient of
    /// `t^{u_i}` does not vanish identically on it.
    pub fn has_value(&self, u: &[i64]) -> Result<bool> {
        debug_assert!(u.iter().all(|&x| x >= 0));
        let m = u.iter().copied().max().unwrap_or(0) as u32;
        self.check_truncation(m + 1)?;
        let rows = self.row_count(m + 1)?;
        // conditions x monomials
        let mut conds = Vec::new();
        for (i, &ui) in u.iter().enumerate() {
            for k in 0..ui as usize {
                conds.push((0..rows).map(|mo| self.images[i][mo][k].clone()).collect::<Vec<_>>());
            }
        }
        let kernel = if conds.is_empty() {
            (0..rows)
                .map(|j| {
                    let mut e = vec![Rational::zero(); rows];
                    e[j] = Rational::one();
                    e
                })
                .collect()
        } else {
            nullspace_rational(&Matrix::from_rows(rows, conds))
        };
        Ok(u.iter().enumerate().all(|(i, &ui)| {
            kernel.iter().any(|b| {
                let s: Rational = b
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(mo, c)| c * &self.images[i][mo][ui as usize])
                    .sum();
                !s.is_zero()
            })
        }))
    }
}

/// `h(v) = dim O/J(v)` by exact rank computation.
pub fn h_oracle(c: &Curve, v: &[i64]) -> Result<u64> {
    if v.len() != c.r() {
        return Err(Error::Dimension(format!("point has {} coordinates, curve has {} branches", v.len(), c.r())));
    }
    let m = v.iter().copied().max().unwrap_or(0).max(0) as u32;
    Evaluator::new(c, m.saturating_sub(1)).h(v)
}

/// Default length of the run of constant `|v| - h(v)` values accepted as
/// stabilization: 4, raised to the total multiplicity when that is larger.
pub fn stabilization_window(c: &Curve) -> u32 {
    c.branches().iter().map(|b| b.multiplicity()).sum::<u32>().max(4)
}

/// `δ(C)` as the stable value of `|v| - h(v)` along the diagonal `v = n e`.
pub fn delta_by_stabilization(c: &Curve) -> Result<u64> {
    let r = c.r() as i64;
    let bound = c.truncation();
    let window = stabilization_window(c);
    let mut eval = Evaluator::new(c, 8.min(bound));
    let mut last: Option<i64> = None;
    let mut run = 0;
    for n in 0..=bound as i64 {
        if n as u32 > eval.max_degree() + 1 {
            eval = Evaluator::new(c, (2 * eval.max_degree()).clamp(n as u32, bound));
        }
        let g = r * n - eval.h(&vec![n; c.r()])? as i64;
        if last == Some(g) {
            run += 1;
        } else {
            run = 1;
            last = Some(g);
        }
        if run >= window {
            return Ok(g as u64);
        }
    }
    Err(Error::NonStabilizing { branches: (1..=c.r()).collect(), bound })
}

/// `(C_i, C_j) = δ_{ij} - δ_i - δ_j` (branch indices are 0-based).
pub fn intersection_multiplicity(c: &Curve, i: usize, j: usize) -> Result<u64> {
    if i == j || i >= c.r() || j >= c.r() {
        return Err(Error::Dimension(format!("invalid branch pair ({}, {})", i, j)));
    }
    let tag = |e: Error| match e {
        Error::NonStabilizing { bound, .. } => Error::NonStabilizing { branches: vec![i + 1, j + 1], bound },
        e => e,
    };
    let dij = delta_by_stabilization(&c.sub_curve(SubsetMask::single(i).insert(j))?).map_err(tag)?;
    let di = delta_by_stabilization(&c.sub_curve(SubsetMask::single(i))?)?;
    let dj = delta_by_stabilization(&c.sub_curve(SubsetMask::single(j))?)?;
    Ok(dij - di - dj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactalg::{int, parse_poly};

    fn branch(x: &str, y: &str, t: u32) -> BranchParametrization {
        BranchParametrization::new(parse_poly(x, t).unwrap(), parse_poly(y, t).unwrap()).unwrap()
    }

    fn xy(terms: &[((u32, u32), i64)]) -> BivariatePoly {
        BivariatePoly::from_terms(terms.iter().map(|&(k, c)| (k, int(c))))
    }

    #[test]
    fn valuation_of_y_on_parabola() {
        assert_eq!(valuation(&xy(&[((0, 1), 1)]), &branch("t", "t^2", 16)), Valuation::Finite(2));
    }

    #[test]
    fn cusp_equation_on_line() {
        let f = xy(&[((2, 0), 1), ((0, 3), -1)]);
        assert_eq!(valuation(&f, &branch("t", "0", 16)), Valuation::Finite(2));
    }

    #[test]
    fn cusp_equation_on_its_branch() {
        let f = xy(&[((2, 0), 1), ((0, 3), -1)]);
        assert_eq!(valuation(&f, &branch("t^3", "t^2", 16)), Valuation::AtLeastTruncation(16));
    }

    #[test]
    fn branch_validation() {
        let t = 8;
        let p = |s| parse_poly(s, t).unwrap();
        assert!(matches!(BranchParametrization::new(p("1 + t"), p("t")), Err(Error::InvalidBranch(_))));
        assert!(matches!(BranchParametrization::new(p("0"), p("0")), Err(Error::InvalidBranch(_))));
        assert!(matches!(BranchParametrization::new(p("t^2"), p("t^4")), Err(Error::InvalidBranch(_))));
        assert!(BranchParametrization::new(p("t^2"), p("t^3")).is_ok());
    }

    #[test]
    fn oracle_values_on_small_curves() {
        let a3 = corpus::a_odd(2, 32).unwrap();
        assert_eq!(h_oracle(&a3, &[2, 2]).unwrap(), 2);
        assert_eq!(h_oracle(&a3, &[0, 0]).unwrap(), 0);
        let d5 = corpus::d5(32).unwrap();
        assert_eq!(h_oracle(&d5, &[1, 3]).unwrap(), 2);
        assert_eq!(h_oracle(&d5, &[-1, 3]).unwrap(), 2);
        assert_eq!(h_oracle(&d5, &[0, 3]).unwrap(), 2);
    }

    #[test]
    fn smooth_branch_oracle() {
        let line = corpus::smooth_line(16).unwrap();
        for v in -3..=10 {
            assert_eq!(h_oracle(&line, &[v]).unwrap(), v.max(0) as u64);
        }
    }

    #[test]
    fn insufficient_truncation() {
        let line = corpus::smooth_line(4).unwrap();
        assert_eq!(h_oracle(&line, &[5]), Err(Error::InsufficientTruncation { needed: 5, available: 4 }));
    }

    #[test]
    fn intersection_numbers() {
        assert_eq!(intersection_multiplicity(&corpus::d5(32).unwrap(), 0, 1).unwrap(), 2);
        assert_eq!(intersection_multiplicity(&corpus::a_odd(2, 32).unwrap(), 0, 1).unwrap(), 2);
        let lines = Curve::new(vec![branch("t", "0", 16), branch("0", "t", 16)]).unwrap();
        assert_eq!(intersection_multiplicity(&lines, 0, 1).unwrap(), 1);
    }

    #[test]
    fn coincident_branches_do_not_stabilize() {
        // same branch, different parametrization
        let c = Curve::new(vec![branch("t", "t^2", 12), branch("-1*t", "t^2", 12)]).unwrap();
        assert!(matches!(intersection_multiplicity(&c, 0, 1), Err(Error::NonStabilizing { .. })));
    }

    #[test]
    fn value_witness_on_cusp() {
        let cusp = corpus::cusp(16).unwrap();
        let eval = Evaluator::new(&cusp, 12);
        let members: Vec<i64> = (0..8).filter(|&n| eval.has_value(&[n]).unwrap()).collect();
        assert_eq!(members, vec![0, 2, 3, 4, 5, 6, 7]);
    }
}
