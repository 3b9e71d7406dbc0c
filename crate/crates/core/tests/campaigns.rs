use std::sync::OnceLock;

use fieldbound_core::bounds::NumericPolicy;
use fieldbound_core::campaigns::*;
use fieldbound_core::cyclotomic::FieldKind;

fn reports() -> &'static [ScanReport] {
    static R: OnceLock<Vec<ScanReport>> = OnceLock::new();
    R.get_or_init(|| run_all(&NumericPolicy::default()).expect("campaign runs"))
}

fn report(f: FamilyId) -> &'static ScanReport {
    reports().iter().find(|r| r.family == f).unwrap()
}

fn pairs(s: u64, ks: &[u64]) -> Vec<(u64, u64)> {
    ks.iter().map(|&k| (k, s)).collect()
}

#[test]
fn family_maxima() {
    let expect = [
        (FamilyId::Gamma6_1, 56),
        (FamilyId::Gamma6_2, 75),
        (FamilyId::Gamma6_3, 138),
        (FamilyId::Gamma7_1, 42),
        (FamilyId::Gamma7_2, 138),
    ];
    for (f, n) in expect {
        assert_eq!(report(f).max_total_bound, n, "{}", f.name());
    }
    let agg = aggregate_theorem_bound(reports(), &NumericPolicy::default()).unwrap();
    assert_eq!(agg.bound, 138);
}

#[test]
fn aggregate_without_gamma63_branches() {
    let mut c: Vec<Contribution> = reports()
        .iter()
        .filter(|r| !matches!(r.family, FamilyId::Gamma6_3 | FamilyId::Gamma7_2))
        .map(|r| Contribution {
            label: r.family.name(),
            bound: r.max_total_bound,
        })
        .collect();
    c.push(Contribution {
        label: "s=3",
        bound: gamma63_special_s3(&NumericPolicy::default()).unwrap(),
    });
    c.push(Contribution {
        label: "takeuchi",
        bound: takeuchi_degree_bound(0, 5).unwrap(),
    });
    c.extend_from_slice(&PRIOR_BOUNDS);
    assert_eq!(aggregate_bound(&c), 76);
}

#[test]
fn exceptional_sets() {
    let r = report(FamilyId::Gamma6_1);
    let mut want = pairs(3, &[3, 4, 5, 7, 8, 9, 11, 13, 17, 19]);
    want.extend(pairs(4, &[4, 5]));
    want.extend(pairs(5, &[5, 7]));
    assert!(r.exceptional_ls.is_empty());
    assert_eq!(r.exceptional_pairs, want);

    assert_eq!(
        report(FamilyId::Gamma6_2).exceptional_ls,
        vec![3, 4, 5, 7, 8, 9, 11, 13, 17, 19]
    );

    let r = report(FamilyId::Gamma6_3);
    let mut want = pairs(4, &[4, 5, 7, 8, 9, 11, 13, 17, 19]);
    want.extend(pairs(5, &[5, 7, 8, 9, 11, 13, 17, 19, 23, 29, 31]));
    want.extend(pairs(7, &[7, 11, 13]));
    assert_eq!(r.exceptional_ls, vec![3]);
    assert_eq!(r.exceptional_pairs, want);

    let r = report(FamilyId::Gamma7_1);
    assert!(r.exceptional_ls.is_empty());
    assert_eq!(r.exceptional_pairs, pairs(3, &[3, 4, 5, 7]));
}

#[test]
fn windows_within_published_ones() {
    let w = &report(FamilyId::Gamma6_1).window;
    assert!(w.max_s <= Some(90) && w.max_k <= Some(420));
    assert!(w.max_k_for_s_at_least(11) <= Some(90));

    assert_eq!(report(FamilyId::Gamma6_2).window.max_l, Some(510));

    let w = &report(FamilyId::Gamma6_3).window;
    assert!(w.max_s <= Some(210) && w.max_k <= Some(870));
    assert!(w.max_k_for_s_at_least(14) <= Some(210));

    let w = &report(FamilyId::Gamma7_1).window;
    assert!(w.max_s <= Some(90) && w.max_k <= Some(240));
    assert!(w.max_k_for_s_at_least(6) <= Some(126));
}

#[test]
fn largest_field_degrees() {
    let at = |f, kind, d| {
        let r = report(f);
        assert_eq!(
            (r.max_field_degree, r.max_field_degree_at),
            (d, Some(kind)),
            "{}",
            f.name()
        );
    };
    at(FamilyId::Gamma6_1, FieldKind::Pair { k: 113, s: 3 }, 56);
    at(FamilyId::Gamma6_2, FieldKind::Single { l: 151 }, 75);
    at(FamilyId::Gamma6_3, FieldKind::Pair { k: 139, s: 5 }, 138);
    at(FamilyId::Gamma7_1, FieldKind::Pair { k: 73, s: 3 }, 36);
}

#[test]
fn gamma71_final_bound_comes_from_3_3() {
    let r = report(FamilyId::Gamma7_1);
    assert_eq!(r.max_total_at, Some(FieldKind::Pair { k: 3, s: 3 }));
    let c = r.result_for(FieldKind::Pair { k: 3, s: 3 }).unwrap();
    assert!(c.exceptional && c.method_b.is_none());
    assert_eq!(c.method_a.map(|a| a.n), Some(42));
    let top = r.result_for(FieldKind::Pair { k: 73, s: 3 }).unwrap();
    assert_eq!(top.final_n, 36);
}

#[test]
fn escalation_zones_within_published_ones() {
    let (s, k) = report(FamilyId::Gamma6_1).escalation_zone();
    assert!(s <= Some(7) && k <= Some(420));
    let (_, l) = report(FamilyId::Gamma6_2).escalation_zone();
    assert!(l <= Some(83));
    let (s, k) = report(FamilyId::Gamma6_3).escalation_zone();
    assert!(s <= Some(11) && k <= Some(870));
    let (s, k) = report(FamilyId::Gamma7_1).escalation_zone();
    assert!(s <= Some(5) && k <= Some(240));
}

#[test]
fn thresholds_do_not_exceed_published_ones() {
    let case2 = |f| match report(f).thresholds {
        Thresholds::Case2(t) => t,
        Thresholds::Case1(_) => panic!("expected pair thresholds"),
    };
    let t = case2(FamilyId::Gamma6_1);
    assert!(t.k0 <= 306 && t.k1 <= 2760 && t.delta1 >= 0.1251);
    let t = case2(FamilyId::Gamma6_3);
    assert!(t.k0 <= 630 && t.k1 <= 4684 && t.delta1 >= 0.097289);
    let t = case2(FamilyId::Gamma7_1);
    assert!(t.k0 <= 324 && t.k1 <= 1262 && t.delta1 >= 0.28956765);
    let Thresholds::Case1(t) = report(FamilyId::Gamma6_2).thresholds else {
        panic!()
    };
    assert!(t.l0 <= 1540 && t.l1 <= 1595 && t.delta >= 0.1585);
}

#[test]
fn delegation_and_special_case() {
    let a = report(FamilyId::Gamma6_3);
    let b = report(FamilyId::Gamma7_2);
    assert_eq!(b.delegated_from, Some(FamilyId::Gamma6_3));
    assert_eq!(a.results, b.results);
    assert_eq!(
        a.special,
        vec![Contribution {
            label: "s=3",
            bound: 76
        }]
    );
}

#[test]
fn only_the_tie_at_4_4_is_borderline() {
    let flagged: Vec<_> = reports()
        .iter()
        .flat_map(|r| {
            r.results
                .iter()
                .filter(|c| c.borderline)
                .map(move |c| (r.family, c.candidate.kind))
        })
        .collect();
    assert_eq!(flagged, vec![(FamilyId::Gamma6_1, FieldKind::Pair { k: 4, s: 4 })]);
}

#[test]
fn total_bound_is_max_of_finals() {
    for r in reports() {
        let m = r.results.iter().map(|c| c.final_n).max().unwrap_or(0);
        let s = r.special.iter().map(|c| c.bound).max().unwrap_or(0);
        assert_eq!(r.max_total_bound, m.max(s));
        assert!((r.gamma0 - 2.885_438_199_983).abs() < 1e-12);
    }
}
