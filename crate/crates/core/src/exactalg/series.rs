use alloc::collections::BTreeMap;
use core::fmt;

use num_traits::{One, Zero};

use super::Rational;

/// A univariate power series in `t` known modulo `t^truncation`.
///
/// Only exponents below the truncation are stored and zero coefficients are
/// never stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: BTreeMap<u32, Rational>,
    truncation: u32,
}

impl TruncSeries {
    pub fn zero(truncation: u32) -> Self {
        TruncSeries { coeffs: BTreeMap::new(), truncation }
    }

    pub fn one(truncation: u32) -> Self {
        Self::monomial(Rational::one(), 0, truncation)
    }

    /// `c * t^exp`, dropped entirely when `exp >= truncation`.
    pub fn monomial(c: Rational, exp: u32, truncation: u32) -> Self {
        let mut s = Self::zero(truncation);
        s.add_term(exp, c);
        s
    }

    pub fn from_terms<I>(terms: I, truncation: u32) -> Self
    where
        I: IntoIterator<Item = (u32, Rational)>,
    {
        let mut s = Self::zero(truncation);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub(crate) fn add_term(&mut self, exp: u32, c: Rational) {
        if exp >= self.truncation || c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: u32) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Lowest exponent with a nonzero coefficient, `None` for the zero series.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// Reduce modulo `t^truncation` (only ever lowers the truncation).
    pub fn truncate(&self, truncation: u32) -> Self {
        let truncation = truncation.min(self.truncation);
        TruncSeries {
            coeffs: self.coeffs.range(..truncation).map(|(e, c)| (*e, c.clone())).collect(),
            truncation,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(other.truncation);
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
            truncation: self.truncation,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.truncation);
        }
        TruncSeries {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
            truncation: self.truncation,
        }
    }

    /// Product modulo `t^min(T_a, T_b)`.
    pub fn mul(&self, other: &Self) -> Self {
        let truncation = self.truncation.min(other.truncation);
        let mut out = Self::zero(truncation);
        for (ea, ca) in self.terms() {
            if ea >= truncation {
                break;
            }
            for (eb, cb) in other.terms() {
                if ea + eb >= truncation {
                    break;
                }
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.truncation);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Dense coefficient vector of length `truncation`.
    pub fn dense(&self) -> alloc::vec::Vec<Rational> {
        let mut v = alloc::vec![Rational::zero(); self.truncation as usize];
        for (e, c) in self.terms() {
            v[e as usize] = c.clone();
        }
        v
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (e, abs.is_one()) {
                (0, _) => write!(f, "{}", abs)?,
                (_, true) => {}
                (_, false) => write!(f, "{}*", abs)?,
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{}", e)?,
            }
        }
        write!(f, " + O(t^{})", self.truncation)
    }
}
