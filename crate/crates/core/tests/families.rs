mod common;

use common::diagram;
use dunwoody::complexity::{modified_complexity, ComplexityOptions};
use dunwoody::diagram::closed_diagram;
use dunwoody::families::{
    dunwoody_formula_bound, seifert, theta_cover, torus_knot_cover, two_bridge_knot_cover,
    two_bridge_knot_cover_direct, TorusCase,
};
use dunwoody::homology::h1;
use dunwoody::report::{analyze, analyze_family, AnalyzeOptions};

fn ctilde(spec: &dunwoody::families::FamilySpec) -> usize {
    let h = closed_diagram(&spec.params).unwrap();
    modified_complexity(&h, ComplexityOptions::default())
        .unwrap()
        .ctilde
}

#[test]
fn hantzsche_wendt_from_the_direct_knot_form() {
    let spec = two_bridge_knot_cover_direct(5, 2, 3).unwrap();
    let h = closed_diagram(&spec.params).unwrap();
    assert_eq!(h1(&h).to_string(), "Z_4 + Z_4");
    assert_eq!(ctilde(&spec), 6);
}

#[test]
fn knot_cover_report_meets_its_bound() {
    let rep = analyze_family(
        two_bridge_knot_cover(5, 2, 3).unwrap(),
        &AnalyzeOptions::default(),
    )
    .unwrap();
    assert_eq!(rep.bounds.upper_formula, Some(9));
    assert_eq!(rep.bounds.upper_engine, 9);
    assert_eq!(rep.homology.group, "Z_4 + Z_4");
}

#[test]
fn torus_case_three_hits_the_bound() {
    let case = TorusCase::Three { q: 1, q1: 1, s: 2 };
    assert_eq!(case.knot(), (3, 5));
    assert_eq!(TorusCase::fits(3, 5).len(), 2);
    let spec = torus_knot_cover(case, 4, None).unwrap();
    assert_eq!(spec.params.as_tuple(), (1, 4, 1, 4, 5, 2));
    assert_eq!(ctilde(&spec), 20);
    assert_eq!(spec.upper_bound, Some(20));
}

#[test]
fn torus_case_one_and_two_match_homology() {
    for (k, h) in [(2, 5), (3, 7), (3, 5), (2, 3)] {
        for case in TorusCase::fits(k, h) {
            let spec = torus_knot_cover(case, 3, None).unwrap();
            let rep = analyze_family(spec, &AnalyzeOptions::default()).unwrap();
            let check = rep.checks.iter().find(|c| c.name == "h1_order").unwrap();
            assert!(check.pass, "T({k},{h}) case {}: {check:?}", case.number());
        }
    }
}

#[test]
fn seifert_report_marks_the_closed_form() {
    let rep = analyze_family(seifert(2, 1, 1, 4).unwrap(), &AnalyzeOptions::default()).unwrap();
    let get = |n: &str| rep.checks.iter().find(|c| c.name == n).unwrap().pass;
    assert!(get("h1_order"));
    assert!(!get("torsion_closed_form"));
    assert_eq!(rep.bounds.upper_formula, Some(8));
}

#[test]
fn theta_boundary_is_two_surfaces() {
    let rep = analyze_family(theta_cover(3, 1, 5, 3).unwrap(), &AnalyzeOptions::default()).unwrap();
    assert_eq!(rep.boundary, vec![2, 2]);
    assert!(rep.bounds.lower_formula.is_none() || !rep.bounds.lower_applicable);
}

#[test]
fn minus_b_twist_has_no_formula() {
    let h = diagram((1, 1, 1, 3, 3, 0));
    assert_eq!(dunwoody_formula_bound(h.params()), None);
    let rep = analyze(h.params(), None, &AnalyzeOptions::default()).unwrap();
    assert!(rep.flags.iter().any(|f| f.contains("formula n/a")));
}

#[test]
fn lens_regime_is_flagged() {
    let h = diagram((1, 1, 1, 1, 0, 0));
    let rep = analyze(h.params(), None, &AnalyzeOptions::default()).unwrap();
    assert!(rep.flags.iter().any(|f| f.contains("lens space")));
}
