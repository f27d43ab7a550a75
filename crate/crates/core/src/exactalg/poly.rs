use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt::{self, Write};

/// Integer Laurent polynomial in one variable.
///
/// Used for characteristic and Poincaré polynomials, for the `q`-parts of
/// motivic coefficients and for graded ranks. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// From a dense coefficient list starting at degree 0.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (e, &c) in coeffs.iter().enumerate() {
            p.add_term(e as i64, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, x)| (e, x * c)))
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, *c)).collect() }
    }

    /// Substitute `t -> s * t^k` for a sign `s` in {1, -1}.
    pub fn substitute(&self, sign: i64, k: i64) -> Self {
        Self::from_terms(
            self.terms().map(|(e, c)| (e * k, if sign < 0 && e.rem_euclid(2) == 1 { -c } else { c })),
        )
    }

    /// Value at `t = 1` or `t = -1`.
    pub fn eval_unit(&self, sign: i64) -> i64 {
        self.terms().map(|(e, c)| if sign < 0 && e.rem_euclid(2) == 1 { -c } else { c }).sum()
    }

    /// Exact division by `a + b*t` with `a, b` in {1, -1}.
    ///
    /// Returns the quotient and whether the remainder vanished.
    pub fn div_linear(&self, a: i64, b: i64) -> (Self, bool) {
        debug_assert!(a.abs() == 1 && b.abs() == 1);
        let Some(lo) = self.min_degree() else {
            return (Self::zero(), true);
        };
        let hi = self.max_degree().unwrap();
        // synthetic division from the top: q_{k-1} = (c_k - a q_k) / b
        let mut quotient = Self::zero();
        let mut carry = 0i64; // q_k of the previous step
        let mut k = hi;
        while k > lo {
            let qk = (self.coeff(k) - a * carry) * b;
            quotient.add_term(k - 1, qk);
            carry = qk;
            k -= 1;
        }
        let remainder = self.coeff(lo) - a * carry;
        (quotient, remainder == 0)
    }

    /// Render with the given variable name, ascending exponents, explicit
    /// signs between terms.
    pub fn render(&self, var: &str) -> String {
        let mut s = String::new();
        if self.is_zero() {
            s.push('0');
            return s;
        }
        for (i, (e, c)) in self.terms().enumerate() {
            push_sign(&mut s, i == 0, c);
            let abs = c.unsigned_abs();
            if e == 0 {
                let _ = write!(s, "{}", abs);
            } else {
                if abs != 1 {
                    let _ = write!(s, "{}*", abs);
                }
                s.push_str(var);
                if e != 1 {
                    let _ = write!(s, "^{}", e);
                }
            }
        }
        s
    }
}

pub(crate) fn push_sign(s: &mut String, first: bool, c: i64) {
    match (first, c < 0) {
        (true, true) => s.push('-'),
        (true, false) => {}
        (false, true) => s.push_str(" - "),
        (false, false) => s.push_str(" + "),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divide_square_by_one_plus_t() {
        let p = LaurentPoly::from_coeffs(&[1, 2, 1]);
        let (q, exact) = p.div_linear(1, 1);
        assert!(exact);
        assert_eq!(q, LaurentPoly::from_coeffs(&[1, 1]));
    }

    #[test]
    fn divide_by_one_minus_q() {
        // q^2 - 2q^3 + q^4 = q^2 (1-q)^2
        let p = LaurentPoly::from_terms([(2, 1), (3, -2), (4, 1)]);
        let (q, exact) = p.div_linear(1, -1);
        assert!(exact);
        assert_eq!(q, LaurentPoly::from_terms([(2, 1), (3, -1)]));
        let (_, exact) = LaurentPoly::from_coeffs(&[1, 1]).div_linear(1, -1);
        assert!(!exact);
    }

    #[test]
    fn substitution_and_render() {
        let p = LaurentPoly::from_coeffs(&[1, -1, 1]);
        assert_eq!(p.render("t"), "1 - t + t^2");
        assert_eq!(p.substitute(-1, -1).render("t"), "t^-2 + t^-1 + 1");
        assert_eq!(p.eval_unit(-1), 3);
        assert_eq!(LaurentPoly::monomial(-2, 3).render("q"), "-2*q^3");
        assert_eq!(LaurentPoly::zero().render("t"), "0");
    }
}
