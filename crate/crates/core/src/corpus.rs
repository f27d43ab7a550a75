//! The bundled example curves.

use alloc::vec;

use crate::curve::{BranchParametrization, Curve};
use crate::error::Result;
use crate::exactalg::parse_poly;

fn branch(x: &str, y: &str, truncation: u32) -> Result<BranchParametrization> {
    BranchParametrization::new(parse_poly(x, truncation)?, parse_poly(y, truncation)?)
}

/// The smooth branch `(t, 0)`.
pub fn smooth_line(truncation: u32) -> Result<Curve> {
    Curve::new(vec![branch("t", "0", truncation)?])
}

/// The ordinary cusp `(t^2, t^3)`, semigroup `<2, 3>`.
pub fn cusp(truncation: u32) -> Result<Curve> {
    Curve::new(vec![branch("t^2", "t^3", truncation)?])
}

/// The branch `(t^2, t^5)`, semigroup `<2, 5>`.
pub fn cusp_2_5(truncation: u32) -> Result<Curve> {
    Curve::new(vec![branch("t^2", "t^5", truncation)?])
}

/// `A_{2n-1}`: the two branches `(t, t^n)` and `(t, -t^n)`.
pub fn a_odd(n: u32, truncation: u32) -> Result<Curve> {
    let y = alloc::format!("t^{}", n);
    let ny = alloc::format!("-1*t^{}", n);
    Curve::new(vec![branch("t", &y, truncation)?, branch("t", &ny, truncation)?])
}

/// `D_5`, the curve `y (x^2 - y^3) = 0`: the line `(t, 0)` and the cusp `(t^3, t^2)`.
pub fn d5(truncation: u32) -> Result<Curve> {
    Curve::new(vec![branch("t", "0", truncation)?, branch("t^3", "t^2", truncation)?])
}

/// Three lines through the origin: `(t, 0)`, `(0, t)`, `(t, t)`.
pub fn triple_point(truncation: u32) -> Result<Curve> {
    Curve::new(vec![branch("t", "0", truncation)?, branch("0", "t", truncation)?, branch("t", "t", truncation)?])
}

/// Name and curve of every bundled example.
pub fn all(truncation: u32) -> Result<alloc::vec::Vec<(&'static str, Curve)>> {
    Ok(vec![
        ("smooth", smooth_line(truncation)?),
        ("cusp_2_3", cusp(truncation)?),
        ("cusp_2_5", cusp_2_5(truncation)?),
        ("a3", a_odd(2, truncation)?),
        ("a5", a_odd(3, truncation)?),
        ("a7", a_odd(4, truncation)?),
        ("d5", d5(truncation)?),
        ("triple_point", triple_point(truncation)?),
    ])
}
