//! The identity suite behind `latnorm verify`.

use std::collections::BTreeSet;

use latnorm::hilbert::{
    full_oracle_check, invariants, large_n_step_check, restriction_check, semigroup_step_check, symmetry_check, FillOrder,
};
use latnorm::latthom::{
    default_u_truncation, euler_series, full_complex_squares_to_zero, grv_homology_direct_with, grv_homology_formula,
    hl_points, r1_structure, r2_classify, sk_corner, sk_homology,
};
use latnorm::oslattice::{
    arrangement_poincare, d0_structure_checks, du_homology, du_squares_to_zero, os_homology, os_homology_bigraded,
    projective_poincare, LAMBDA,
};
use latnorm::series::{
    alexander, functional_equation_check, hilbert_from_poincare, hilbert_series, hpc_check, motivic_normalized,
    motivic_series, nonnegativity_check, poincare_family, poincare_from_hilbert, torres_restriction_check,
};
use latnorm::{Curve, GradedGroup, HilbertTable, LatticePoint, Matroid, Result};

use crate::curve_file::{parse_curve, CORPUS};
use crate::report::{point, Body, CheckDoc, ReportDocument};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Boxes four steps larger and doubled `U`-truncations.
    pub deep: bool,
}

impl VerifyOptions {
    pub fn padding(&self) -> i64 {
        if self.deep {
            6
        } else {
            2
        }
    }

    pub fn u_truncation(&self, r: usize) -> u32 {
        let base = default_u_truncation(r);
        if self.deep {
            2 * base
        } else {
            base
        }
    }
}

type Outcome = Result<(bool, String)>;

fn ok(b: bool) -> Outcome {
    Ok((b, String::new()))
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, mut fails: impl FnMut(&T) -> Result<Option<String>>) -> Outcome {
    for it in items {
        if let Some(why) = fails(&it)? {
            return Ok((false, why));
        }
    }
    ok(true)
}

fn os_suite(m: &Matroid, top: u32) -> Result<Option<String>> {
    let os = os_homology(m);
    if os.has_torsion() || os.poincare() != arrangement_poincare(m) {
        return Ok(Some(format!("Orlik-Solomon homology {} of ranks {:?}", os, m.ranks())));
    }
    if os_homology_bigraded(m).keys().any(|&(k, rho)| k != rho) {
        return Ok(Some(format!("|K| and rank gradings differ for ranks {:?}", m.ranks())));
    }
    let du = du_homology(m, top)?;
    if du.has_torsion() || du.poincare() != projective_poincare(m)?.substitute(1, LAMBDA + 1) {
        return Ok(Some(format!("∂_U homology {} of ranks {:?}", du, m.ranks())));
    }
    if !du_squares_to_zero(m, top) {
        return Ok(Some(format!("∂_U² ≠ 0 for ranks {:?}", m.ranks())));
    }
    if m.size() <= 8 && !d0_structure_checks(m)?.all() {
        return Ok(Some(format!("∂₀ structure fails for ranks {:?}", m.ranks())));
    }
    Ok(None)
}

/// Points at which the sublevel sets are tested: the origin, the conductor,
/// the far corner and a diagonal midpoint.
fn sk_points(t: &HilbertTable) -> Vec<LatticePoint> {
    let inner = t.corner().add_scalar(-1);
    let l = t.invariants().conductor.clone();
    let mid = LatticePoint::new(inner.iter().map(|&x| x / 2).collect());
    let set: BTreeSet<LatticePoint> = [LatticePoint::zero(t.r()), l, inner, mid].into_iter().collect();
    set.into_iter().collect()
}

/// Every check on one curve, in a fixed order.
pub fn verify_curve(name: &str, c: &Curve, opts: VerifyOptions) -> Vec<CheckDoc> {
    let mut out = Vec::new();
    let mut record = |check: &str, outcome: Outcome| {
        let (passed, detail) = match outcome {
            Ok(r) => r,
            Err(e) => (false, format!("{}: {}", e.name(), e)),
        };
        out.push(CheckDoc { curve: name.to_string(), name: check.to_string(), passed, detail });
    };
    let inv = match invariants(c) {
        Ok(i) => i,
        Err(e) => {
            record("invariants", Err(e));
            return out;
        }
    };
    let corner = inv.conductor.add_scalar(opts.padding());
    let t = match HilbertTable::build(c, &corner) {
        Ok(t) => t,
        Err(e) => {
            record("hilbert table", Err(e));
            return out;
        }
    };
    let r = t.r();
    let top = opts.u_truncation(r);

    record(
        "table matches the rank oracle",
        full_oracle_check(&t).map(|bad| match bad {
            None => (true, String::new()),
            Some((p, h, d)) => (false, format!("h{} = {} but the oracle gives {}", p, h, d)),
        }),
    );
    record(
        "fill order does not matter",
        HilbertTable::build_with(c, &corner, FillOrder::ColumnMajor).map(|other| (other.values() == t.values(), String::new())),
    );
    record("semigroup is the set of all-jump points", ok(semigroup_step_check(&t)));
    record("symmetry about the conductor", symmetry_check(&t).and_then(ok));
    record("unit steps beyond the conductor", large_n_step_check(c, &inv).and_then(ok));
    record("sub-curve tables are slices", restriction_check(&t).and_then(ok));
    record(
        "local ranks form matroids",
        first_failure(hl_points(&t), |v| t.local_matroid(v).map(|_| None)),
    );
    record(
        "Poincaré inversion round trip",
        poincare_family(&t).and_then(|fam| hilbert_from_poincare(&fam, t.corner())).map(|h| (h == hilbert_series(&t), String::new())),
    );
    record("Hilbert and Poincaré series relation", ok(hpc_check(&t)));
    record("Torres restriction", torres_restriction_check(&t).and_then(ok));
    let pg = motivic_series(&t);
    record("motivic series at q = 1", pg.as_ref().map(|pg| (pg.at_q_one() == poincare_from_hilbert(&t), String::new())).map_err(Clone::clone));
    record("motivic coefficients alternate", pg.as_ref().map(|pg| (nonnegativity_check(&t, pg), String::new())).map_err(Clone::clone));
    record(
        "normalized motivic polynomial and functional equation",
        pg.clone().and_then(|pg| motivic_normalized(&pg, &inv)).map(|pbar| (functional_equation_check(&pbar, &inv), pbar.render())),
    );
    record(
        "Alexander polynomial symmetry",
        alexander(&t).map(|a| (a.is_symmetric(), format!("{} under {}", a.poly.render(), a.reflection))),
    );
    record("local Orlik-Solomon suite", {
        let mut seen = BTreeSet::new();
        first_failure(hl_points(&t), |v| {
            let m = t.local_matroid(v)?.matroid;
            if !seen.insert(m.ranks().to_vec()) {
                return Ok(None);
            }
            os_suite(&m, top)
        })
    });
    record(
        "direct homology equals the formula",
        first_failure(hl_points(&t), |v| {
            let g = grv_homology_direct_with(&t, v, top)?;
            let f = grv_homology_formula(&t, v)?;
            Ok((g.poincare() != f).then(|| format!("at {}: {} against {}", v, g, f.render("t"))))
        }),
    );
    record(
        "homology is torsion-free and detects the semigroup",
        first_failure(hl_points(&t), |v| {
            let g = grv_homology_direct_with(&t, v, top)?;
            let member = t.semigroup().contains(v).unwrap_or(false);
            let h = t.get(v) as i64;
            let top_class = !member || (g.rank(-2 * h) == 1 && g.iter().all(|(d, _)| d <= -2 * h));
            Ok((g.has_torsion() || g.is_zero() == member || !top_class).then(|| format!("at {}: {}", v, g)))
        }),
    );
    record("Euler characteristics give P", euler_series(&t).map(|e| (e == poincare_from_hilbert(&t), String::new())));
    record("cube sublevel sets are contractible", {
        let point_group = GradedGroup::free([(0, 1)]);
        first_failure(sk_points(&t), |u| {
            let h = t.get(u);
            let big = HilbertTable::build(c, &sk_corner(&t, u, h + 3))?;
            for k in h..=h + 3 {
                let g = sk_homology(&big, u, k)?;
                if g != point_group {
                    return Ok(Some(format!("S_{}{} has homology {}", k, point(u), g)));
                }
            }
            Ok(None)
        })
    });
    record("lattice complex squares to zero", ok(full_complex_squares_to_zero(&t, r as u32 + 2)));
    if r == 1 {
        record(
            "one-branch structure",
            r1_structure(&t).map(|s| (s.checks.all(), if s.checks.all() { String::new() } else { format!("{:?}", s.checks) })),
        );
    }
    if r == 2 {
        record(
            "two-branch cases",
            first_failure(hl_points(&t), |v| {
                let (case, g) = r2_classify(&t, v)?;
                let direct = grv_homology_direct_with(&t, v, top)?;
                Ok((g != direct).then(|| format!("case {} at {} predicts {}, direct {}", case, v, g, direct)))
            }),
        );
    }
    out
}

/// Generic arrangements and boolean matroids checked alongside the curves.
pub fn verify_matroids(opts: VerifyOptions) -> Vec<CheckDoc> {
    let mut out = Vec::new();
    let top = if opts.deep { 10 } else { 6 };
    for n in 1..=4 {
        let outcome = os_suite(&Matroid::boolean(n), top);
        out.push(matroid_doc(&format!("boolean {}", n), outcome));
    }
    for n in 2..=5 {
        let outcome = os_suite(&Matroid::uniform(n, 2), top);
        out.push(matroid_doc(&format!("{} generic lines", n), outcome));
    }
    out
}

fn matroid_doc(name: &str, outcome: Result<Option<String>>) -> CheckDoc {
    let (passed, detail) = match outcome {
        Ok(None) => (true, String::new()),
        Ok(Some(why)) => (false, why),
        Err(e) => (false, format!("{}: {}", e.name(), e)),
    };
    CheckDoc { curve: "matroid".into(), name: format!("Orlik-Solomon suite, {}", name), passed, detail }
}

pub fn report(checks: Vec<CheckDoc>, opts: VerifyOptions) -> ReportDocument {
    let passed = checks.iter().filter(|c| c.passed).count();
    let failed = checks.len() - passed;
    ReportDocument::new("verify", Body::Verify { deep: opts.deep, passed, failed, checks })
}

/// The bundled corpus plus the matroid families.
pub fn verify_corpus(opts: VerifyOptions) -> ReportDocument {
    let mut checks = verify_matroids(opts);
    for (name, text) in CORPUS {
        let c = parse_curve(text).expect("bundled curve parses");
        checks.extend(verify_curve(name, &c, opts));
    }
    report(checks, opts)
}
