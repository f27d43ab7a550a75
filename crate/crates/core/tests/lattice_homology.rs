use latnorm::corpus;
use latnorm::hilbert::{invariants, HilbertTable};
use latnorm::latthom::{
    grv_homology_direct, grv_homology_formula, hl_points, r2_classify, sk_corner, sk_homology, euler_series,
};
use latnorm::oslattice::du_homology;
use latnorm::series::poincare_from_hilbert;
use latnorm::GradedGroup;

fn tables(pad: i64) -> Vec<(&'static str, HilbertTable)> {
    corpus::all(24)
        .unwrap()
        .into_iter()
        .map(|(n, c)| {
            let corner = invariants(&c).unwrap().conductor.add_scalar(pad);
            (n, HilbertTable::build(&c, &corner).unwrap())
        })
        .collect()
}

#[test]
fn direct_homology_matches_formula_everywhere() {
    for (name, t) in tables(2) {
        for v in hl_points(&t) {
            let g = grv_homology_direct(&t, &v).unwrap();
            assert!(!g.has_torsion(), "{} {}", name, v);
            assert_eq!(g.poincare(), grv_homology_formula(&t, &v).unwrap(), "{} {}", name, v);
            let member = t.semigroup().contains(&v).unwrap();
            assert_eq!(!g.is_zero(), member, "{} {}", name, v);
            if member {
                let h = t.get(&v) as i64;
                assert_eq!(g.iter().map(|(d, _)| d).max(), Some(-2 * h), "{} {}", name, v);
                assert_eq!(g.rank(-2 * h), 1);
            }
        }
    }
}

#[test]
fn homology_through_local_matroids() {
    for (name, t) in tables(2) {
        for v in hl_points(&t) {
            let m = t.local_matroid(&v).unwrap();
            let via = du_homology(&m.matroid, t.r() as u32 + 3).unwrap().shift(-2 * t.get(&v) as i64);
            assert_eq!(via, grv_homology_direct(&t, &v).unwrap(), "{} {}", name, v);
        }
    }
}

#[test]
fn euler_characteristics_give_poincare_series() {
    for (name, t) in tables(2) {
        assert_eq!(euler_series(&t).unwrap(), poincare_from_hilbert(&t), "{}", name);
    }
}

#[test]
fn two_branch_cases_predict_homology() {
    for (name, t) in tables(2).into_iter().filter(|(_, t)| t.r() == 2) {
        for v in hl_points(&t) {
            let (_, predicted) = r2_classify(&t, &v).unwrap();
            assert_eq!(predicted, grv_homology_direct(&t, &v).unwrap(), "{} {}", name, v);
        }
    }
}

#[test]
fn cube_sublevel_sets_are_contractible() {
    let point = GradedGroup::free([(0, 1)]);
    for (name, c) in corpus::all(24).unwrap() {
        let base = HilbertTable::build(&c, &invariants(&c).unwrap().conductor.add_scalar(1)).unwrap();
        let us = [base.corner().add_scalar(-1).into_vec(), vec![0; c.r()]];
        for u in us {
            let h = base.get(&u);
            let corner = sk_corner(&base, &u, h + 3);
            let t = HilbertTable::build(&c, &corner).unwrap();
            for k in h..=h + 3 {
                assert_eq!(sk_homology(&t, &u, k).unwrap(), point, "{} {:?} {}", name, u, k);
            }
        }
    }
}
