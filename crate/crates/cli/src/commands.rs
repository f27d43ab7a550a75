//! One function per subcommand, each producing a [`ReportDocument`].

use latnorm::hilbert::invariants;
use latnorm::latthom::{grv_homology_direct, grv_homology_formula, hl_points};
use latnorm::series::{alexander, motivic_normalized, motivic_series, poincare_from_hilbert};
use latnorm::{Curve, Error, HilbertTable, LatticePoint, Result};

use crate::report::{hilbert_values, summands, Body, HomologyEntry, ReportDocument, Symmetry};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Poincare,
    Motivic,
    Alexander,
}

/// Parses `"2,3"` into `[2, 3]`.
pub fn parse_point(s: &str) -> std::result::Result<Vec<i64>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| format!("`{}` is not an integer: {}", p.trim(), e)))
        .collect()
}

fn check_dim(c: &Curve, v: &[i64]) -> Result<()> {
    if v.len() != c.r() {
        return Err(Error::Dimension(format!("point {:?} has {} coordinates, the curve has {} branches", v, v.len(), c.r())));
    }
    Ok(())
}

/// Conductor plus two in every direction.
pub fn default_corner(c: &Curve) -> Result<LatticePoint> {
    Ok(invariants(c)?.conductor.add_scalar(2))
}

pub fn table(c: &Curve, corner: Option<&[i64]>) -> Result<HilbertTable> {
    let corner = match corner {
        Some(b) => {
            check_dim(c, b)?;
            LatticePoint::from(b)
        }
        None => default_corner(c)?,
    };
    HilbertTable::build(c, &corner)
}

pub fn hilbert(c: &Curve, corner: Option<&[i64]>) -> Result<ReportDocument> {
    let t = table(c, corner)?;
    Ok(ReportDocument::new("hilbert", Body::Hilbert { corner: t.corner().to_vec(), values: hilbert_values(&t) }))
}

pub fn value(c: &Curve, at: &[i64]) -> Result<ReportDocument> {
    check_dim(c, at)?;
    let p = LatticePoint::from(at).clamp_nonneg();
    let t = HilbertTable::build(c, &p)?;
    Ok(ReportDocument::new("value", Body::Value { point: at.to_vec(), value: t.get(&p) }))
}

pub fn semigroup(c: &Curve, corner: Option<&[i64]>) -> Result<ReportDocument> {
    let t = table(c, corner)?;
    let s = t.semigroup();
    let members = t.iter().map(|(p, _)| p).filter(|p| s.contains(p) == Some(true)).map(|p| p.to_vec()).collect();
    Ok(ReportDocument::new(
        "semigroup",
        Body::Semigroup { corner: t.corner().to_vec(), conductor: s.conductor().to_vec(), members },
    ))
}

pub fn series(c: &Curve, kind: SeriesKind, corner: Option<&[i64]>) -> Result<ReportDocument> {
    let t = table(c, corner)?;
    let (name, poly, symmetry) = match kind {
        SeriesKind::Poincare => ("poincare", poincare_from_hilbert(&t), None),
        SeriesKind::Motivic => ("motivic", motivic_normalized(&motivic_series(&t)?, t.invariants())?, None),
        SeriesKind::Alexander => {
            let a = alexander(&t)?;
            let sym = Symmetry { reflection: a.reflection.to_string(), center: a.center.to_vec(), sign: a.sign, holds: a.is_symmetric() };
            ("alexander", a.poly, Some(sym))
        }
    };
    Ok(ReportDocument::new(
        "series",
        Body::Series { series: name.to_string(), corner: poly.corner().to_vec(), polynomial: poly.render(), symmetry },
    ))
}

fn homology_entry(t: &HilbertTable, v: &[i64]) -> Result<HomologyEntry> {
    let g = grv_homology_direct(t, v)?;
    let formula = grv_homology_formula(t, v)?;
    Ok(HomologyEntry {
        point: v.to_vec(),
        group: g.to_string(),
        summands: summands(&g),
        formula: formula.render("t"),
        agrees: g.poincare() == formula,
    })
}

/// `HL^-(v)` at one point.
pub fn homology_at(c: &Curve, at: &[i64]) -> Result<ReportDocument> {
    check_dim(c, at)?;
    let p = LatticePoint::from(at);
    if p.iter().any(|&x| x < 0) {
        return Err(Error::Dimension(format!("homology is indexed by points of the nonnegative orthant, got {}", p)));
    }
    let t = HilbertTable::build(c, &p.add_scalar(1))?;
    let entry = homology_entry(&t, &p)?;
    Ok(ReportDocument::new("homology", Body::Homology { corner: t.corner().to_vec(), entries: vec![entry] }))
}

/// `HL^-(v)` for every `v` with `v + e` in the box.
pub fn homology_box(c: &Curve, corner: Option<&[i64]>) -> Result<ReportDocument> {
    let t = table(c, corner)?;
    let entries = hl_points(&t).map(|v| homology_entry(&t, &v)).collect::<Result<Vec<_>>>()?;
    Ok(ReportDocument::new("homology", Body::Homology { corner: t.corner().to_vec(), entries }))
}

pub fn invariants_report(c: &Curve) -> Result<ReportDocument> {
    let inv = invariants(c)?;
    let r = inv.r();
    let intersections = (0..r).map(|i| (0..r).map(|j| if i == j { 0 } else { inv.pairwise[i][j] }).collect()).collect();
    Ok(ReportDocument::new(
        "invariants",
        Body::Invariants {
            branches: r,
            delta: inv.delta,
            delta_branches: inv.delta_i.clone(),
            milnor: inv.milnor,
            milnor_branches: inv.mu_i.clone(),
            conductor: inv.conductor.to_vec(),
            intersections,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_file::corpus_curve;

    #[test]
    fn examples() {
        let a3 = corpus_curve("a3").unwrap();
        assert_eq!(value(&a3, &[2, 2]).unwrap().to_table(), "2\n");
        assert_eq!(homology_at(&a3, &[1, 0]).unwrap().to_table(), "0\n");
        assert_eq!(homology_at(&a3, &[2, 2]).unwrap().to_table(), "Z[-4] + Z[-5]\n");
        let d5 = corpus_curve("d5").unwrap();
        assert_eq!(series(&d5, SeriesKind::Alexander, None).unwrap().to_table(), "1 + t1*t2^3\n");
        assert_eq!(parse_point("1, -2").unwrap(), [1, -2]);
        assert!(parse_point("1,x").is_err());
        assert_eq!(value(&a3, &[1]).unwrap_err().name(), "DimensionMismatch");
    }

    #[test]
    fn grids() {
        let a3 = corpus_curve("a3").unwrap();
        let grid = hilbert(&a3, Some(&[2, 2])).unwrap().to_table();
        assert_eq!(grid, "2 2 2\n1 1 2\n0 1 2\n");
        let sg = semigroup(&a3, Some(&[3, 3])).unwrap().to_table();
        assert_eq!(sg, ". . * *\n. . * *\n. * . .\n* . . .\nconductor (2,2)\n");
    }
}
