//! One test per acceptance criterion. Each prints a single PASS/FAIL line;
//! run with `--nocapture` to see them.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{definition_ctilde, diagram, invariant_factors_by_minors, params, verdict};
use dunwoody::complexity::{
    curve_vertex_count, modified_complexity, regions, singular_count, ComplexityOptions,
};
use dunwoody::diagram::{closed_diagram, equivalent_params, validate_params, ClosedDiagram};
use dunwoody::families::{
    seifert, seifert_circulant, seifert_torsion_closed_form, theta_cover, two_bridge_knot_cover,
    two_bridge_link_cover,
};
use dunwoody::homology::{
    branched_cover_h1_order, h1, presentation_matrix, smith_normal_form, HomologyGroup,
};
use dunwoody::reduction::{
    admissible_forests, boundary_profile, classify, reduce, DEFAULT_FOREST_CAP,
};
use dunwoody::report::{analyze, AnalyzeOptions};
use dunwoody::surface::{dual_graph, euler_characteristic};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn ctilde(h: &ClosedDiagram) -> usize {
    modified_complexity(h, ComplexityOptions::default())
        .unwrap()
        .ctilde
}

fn case_one_grid() -> Vec<(i64, i64, i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for a in 1..=2 {
        for b in 1..=2 {
            for c in 1..=2 {
                for n in 2..=5 {
                    let d = 2 * a + b + c;
                    for r in 0..d {
                        if (r + b) % d == 0 {
                            continue;
                        }
                        for s in 0..n {
                            out.push((a, b, c, n, r, s));
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn criterion_1_case_one_equality() {
    let mut by_class: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    let mut first_miss = None;
    for t in case_one_grid() {
        let p = params(t);
        let h = closed_diagram(&p).unwrap();
        let (n, d) = (t.3, p.d() as i64);
        let expected = if p.twist_is_minus_b_pm1() {
            n * d - (2 * n).max(5)
        } else {
            n * d - (2 * n).max(6)
        };
        let got = ctilde(&h) as i64;
        let label = classify(h.map(), &h.c_second()).unwrap().label.as_str();
        let e = by_class.entry(label).or_default();
        e.1 += 1;
        if got == expected {
            e.0 += 1;
        } else if first_miss.is_none() {
            first_miss = Some(format!("{p}: c̃={got}, formula {expected}"));
        }
    }
    let total: usize = by_class.values().map(|v| v.1).sum();
    let hits: usize = by_class.values().map(|v| v.0).sum();
    let breakdown: Vec<String> = by_class
        .iter()
        .map(|(k, (h, t))| format!("{k} {h}/{t}"))
        .collect();
    verdict(
        1,
        hits == total,
        &format!(
            "{hits}/{total} cells equal the case-(i) formula [{}]; first miss {}",
            breakdown.join(", "),
            first_miss.unwrap_or_else(|| "none".into())
        ),
    );
}

#[test]
fn criterion_2_two_bridge_knots() {
    let mut checked = 0;
    let mut bad = Vec::new();
    for alpha in [5i64, 7, 9] {
        for beta in (2..alpha).step_by(2) {
            if num_integer::gcd(alpha, beta) != 1 {
                continue;
            }
            for n in 3..=5 {
                let spec = two_bridge_knot_cover(alpha, beta, n).unwrap();
                let h = closed_diagram(&spec.params).unwrap();
                let got = ctilde(&h) as i64;
                let bound = n * (alpha - 2);
                let ok = if n == 3 { got <= bound } else { got == bound };
                let order_ok = Some(h1(&h).order()) == spec.expect.h1_order;
                checked += 1;
                if !ok || !order_ok {
                    bad.push(format!("b({alpha},{beta}) n={n}: c̃={got} vs {bound}"));
                }
            }
        }
    }
    verdict(
        2,
        bad.is_empty(),
        &format!(
            "{checked} knot covers, {} off the n(α−2) bound {bad:?}",
            bad.len()
        ),
    );
}

/// Whether a link cell falls outside the generic picture: some admissible
/// forest is not `d−1` type-A curves plus one type-B, or some region of
/// some reduced diagram has more than `2n` vertices.
fn link_cell_is_sporadic(h: &ClosedDiagram, n: usize, d: usize, alpha: usize) -> bool {
    let g = dual_graph(h.map(), &h.c_second()).unwrap();
    for f in admissible_forests(&g, DEFAULT_FOREST_CAP) {
        let f = f.unwrap();
        let mut sizes: Vec<usize> = f.edges.iter().map(|&e| curve_vertex_count(h, e)).collect();
        sizes.sort_unstable();
        let mut generic = vec![n / d; d - 1];
        generic.push(alpha);
        generic.sort_unstable();
        if sizes != generic {
            return true;
        }
        let reduced = reduce(h, &f);
        if regions(&reduced).iter().any(|r| r.vertex_count() > 2 * n) {
            return true;
        }
    }
    false
}

#[test]
fn criterion_3_two_bridge_links() {
    let mut cells = 0;
    let mut sporadic = 0;
    let mut bad = Vec::new();
    for (alpha, beta) in [(4i64, 1i64), (6, 1), (8, 3)] {
        for n in 2..=4i64 {
            for s in 1..n {
                cells += 1;
                let spec = two_bridge_link_cover(alpha, beta, n, s).unwrap();
                let h = closed_diagram(&spec.params).unwrap();
                let d = num_integer::gcd(n, s) as usize;
                let mut profile: Vec<usize> =
                    h.c_second().curves.iter().map(|c| c.darts.len()).collect();
                profile.sort_unstable();
                let mut want = vec![n as usize / d; d];
                want.extend(std::iter::repeat_n(alpha as usize, n as usize));
                want.sort_unstable();
                let bound = n * (alpha - 2) + n / d as i64 - alpha;
                let got = ctilde(&h) as i64;
                let odd = link_cell_is_sporadic(&h, n as usize, d, alpha as usize);
                sporadic += odd as usize;
                let ok = profile == want
                    && h.c_second().len() == n as usize + d
                    && got <= bound
                    && (odd || got == bound);
                if !ok {
                    bad.push(format!(
                        "b({alpha},{beta}) n={n} s={s}: c̃={got} bound {bound} sporadic={odd}"
                    ));
                }
            }
        }
    }
    verdict(
        3,
        bad.is_empty(),
        &format!("{cells} link cells ({sporadic} sporadic), failures {bad:?}"),
    );
}

#[test]
fn criterion_4_theta_covers() {
    let mut cells = 0;
    let mut equal = 0;
    let mut bad = Vec::new();
    for (alpha, beta) in [(3i64, 1i64), (5, 3)] {
        for n in [4i64, 5, 7] {
            for s in 2..n {
                cells += 1;
                let spec = theta_cover(alpha, beta, n, s).unwrap();
                let h = closed_diagram(&spec.params).unwrap();
                let curves = (num_integer::gcd(n, s) + num_integer::gcd(n, s - 1)) as usize;
                let genus = ((1 + n as usize) - curves) / 2;
                let boundary = boundary_profile(&h).unwrap();
                let r = modified_complexity(&h, ComplexityOptions::default()).unwrap();
                let bound = (n * (alpha - 1)) as usize;
                let dominated = r.witness.n_r == 2 * n as usize;
                let ok = h.c_second().len() == curves
                    && boundary == vec![genus, genus]
                    && r.ctilde <= bound
                    && (!dominated || r.ctilde == bound);
                equal += (r.ctilde == bound) as usize;
                if !ok {
                    bad.push(format!(
                        "b({alpha},{beta}) n={n} s={s}: c̃={} {boundary:?}",
                        r.ctilde
                    ));
                }
            }
        }
    }
    verdict(
        4,
        bad.is_empty(),
        &format!("{cells} theta cells, {equal} at n(α−1), failures {bad:?}"),
    );
}

#[test]
fn criterion_5_double_covers() {
    let mut bad = Vec::new();
    let mut checked = 0;
    for alpha in [3i64, 5, 7, 9] {
        for beta in 1..=alpha / 2 {
            if num_integer::gcd(alpha, beta) != 1 {
                continue;
            }
            checked += 1;
            let h = diagram((beta, alpha - 2 * beta, 1, 2, 2 * beta + 1, 1));
            let g = h1(&h);
            let oracle = branched_cover_h1_order(alpha, beta, 2).unwrap().resultant;
            if g.order() != BigInt::from(alpha) || oracle != BigInt::from(alpha) {
                bad.push(format!("b({alpha},{beta}): {g}, oracle {oracle}"));
            }
        }
    }
    verdict(
        5,
        bad.is_empty(),
        &format!("{checked} double covers have H1 of order α, failures {bad:?}"),
    );
}

#[test]
fn criterion_6_seifert_torsion() {
    let mut lines = Vec::new();
    let mut all = true;
    for (p, q, l) in [(2i64, 1i64, 1i64), (3, 1, 2), (3, 2, 1)] {
        for n in [3i64, 4] {
            let spec = seifert(p, q, l, n).unwrap();
            let h = closed_diagram(&spec.params).unwrap();
            let engine = h1(&h).torsion_order();
            let circ = seifert_circulant(p, q, l, n).resultant;
            let closed = seifert_torsion_closed_form(p, q, l, n);
            let ok = closed.as_ref() == Some(&circ) && closed.as_ref() == Some(&engine);
            all &= ok;
            lines.push(format!(
                "({p},{q},{l}) n={n}: closed {} circulant {circ} engine {engine}",
                closed.map_or("-".into(), |c| c.to_string())
            ));
        }
    }
    verdict(6, all, &lines.join("; "));
}

#[test]
fn criterion_7_lower_below_upper() {
    let opts = AnalyzeOptions {
        assume_irreducible: true,
        ..Default::default()
    };
    let mut inputs: Vec<_> = case_one_grid().into_iter().map(params).collect();
    for alpha in [5i64, 7, 9] {
        for beta in (2..alpha).step_by(2) {
            if num_integer::gcd(alpha, beta) == 1 {
                for n in 3..=5 {
                    inputs.push(two_bridge_knot_cover(alpha, beta, n).unwrap().params);
                }
            }
        }
    }
    for (alpha, beta) in [(4i64, 1i64), (6, 1), (8, 3)] {
        for n in 2..=4i64 {
            for s in 1..n {
                inputs.push(two_bridge_link_cover(alpha, beta, n, s).unwrap().params);
            }
        }
    }
    for (alpha, beta) in [(3i64, 1i64), (5, 3)] {
        for n in [4i64, 5, 7] {
            for s in 2..n {
                inputs.push(theta_cover(alpha, beta, n, s).unwrap().params);
            }
        }
    }
    for alpha in [3i64, 5, 7, 9] {
        for beta in 1..=alpha / 2 {
            if num_integer::gcd(alpha, beta) == 1 {
                inputs.push(params((beta, alpha - 2 * beta, 1, 2, 2 * beta + 1, 1)));
            }
        }
    }
    for (p, q, l) in [(2i64, 1i64, 1i64), (3, 1, 2), (3, 2, 1)] {
        for n in [3i64, 4] {
            inputs.push(seifert(p, q, l, n).unwrap().params);
        }
    }
    let mut applicable = 0;
    let mut bad = Vec::new();
    for p in &inputs {
        let r = analyze(p, None, &opts).unwrap();
        if r.bounds.lower_applicable {
            applicable += 1;
            if r.bounds.lower > r.complexity.ctilde as f64 + 1e-9 {
                bad.push(format!(
                    "{p}: lower {:.3} > c̃ {}",
                    r.bounds.lower, r.complexity.ctilde
                ));
            }
        }
    }
    verdict(
        7,
        bad.is_empty(),
        &format!(
            "{} diagrams, {applicable} with an applicable lower bound, violations {bad:?}",
            inputs.len()
        ),
    );
}

fn random_connected(rng: &mut StdRng, max_abc: i64, max_n: i64) -> (i64, i64, i64, i64, i64, i64) {
    loop {
        let (a, b, c) = (
            rng.gen_range(0..=max_abc),
            rng.gen_range(0..=max_abc),
            rng.gen_range(0..=max_abc),
        );
        let n = rng.gen_range(1..=max_n);
        let d = 2 * a + b + c;
        if d == 0 {
            continue;
        }
        let t = (a, b, c, n, rng.gen_range(0..d), rng.gen_range(0..n));
        if closed_diagram(&params(t)).is_ok() {
            return t;
        }
    }
}

#[test]
fn criterion_8_structural_invariants() {
    let mut rng = StdRng::seed_from_u64(8);
    let mut problems = Vec::new();

    let mut euler = 0;
    for _ in 0..200 {
        let t = random_connected(&mut rng, 3, 5);
        let h = diagram(t);
        let chi = euler_characteristic(h.map()).unwrap();
        let sum: usize = (0..h.c_second_all().len())
            .map(|g| curve_vertex_count(&h, g))
            .sum();
        if chi != 2 - 2 * t.3 {
            problems.push(format!("{t:?}: χ={chi}"));
        }
        if sum != singular_count(&h) || sum != (t.3 * (2 * t.0 + t.1 + t.2)) as usize {
            problems.push(format!("{t:?}: Σn(γ)={sum}"));
        }
        euler += 1;
    }

    let mut remark = 0;
    for _ in 0..60 {
        let t = random_connected(&mut rng, 2, 4);
        let p = params(t);
        let (x, y) = (
            closed_diagram(&p).unwrap(),
            closed_diagram(&equivalent_params(&p)).unwrap(),
        );
        if ctilde(&x) != ctilde(&y) || h1(&x) != h1(&y) {
            problems.push(format!("{p}: equivalence changes c̃ or H1"));
        }
        remark += 1;
    }

    let mut snf = 0;
    for _ in 0..500 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let m: Vec<Vec<BigInt>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| BigInt::from(rng.gen_range(-6..=6)))
                    .collect()
            })
            .collect();
        let fast = smith_normal_form(&m).factors;
        let slow = invariant_factors_by_minors(&m);
        if fast != slow {
            problems.push(format!("{m:?}: snf {fast:?} minors {slow:?}"));
        }
        snf += 1;
    }

    verdict(
        8,
        problems.is_empty(),
        &format!(
            "χ and Σn(γ) on {euler} tuples, equivalence on {remark}, SNF on {snf} matrices; problems {:?}",
            problems.iter().take(5).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_9_definition_path() {
    let mut rng = StdRng::seed_from_u64(9);
    let mut seen = BTreeSet::new();
    let mut bad = Vec::new();
    let mut tuples = 0;
    while tuples < 50 {
        let t = random_connected(&mut rng, 2, 3);
        if t.3 < 2 || !seen.insert(t) {
            continue;
        }
        let h = diagram(t);
        let class = classify(h.map(), &h.c_second()).unwrap();
        if (class.proper && class.reduced) || h.c_second().len() > 14 {
            continue;
        }
        tuples += 1;
        let theorem = ctilde(&h);
        let definition = definition_ctilde(&h);
        if definition != Some(theorem) {
            bad.push(format!(
                "{t:?}: theorem {theorem}, definition {definition:?}"
            ));
        }
    }
    verdict(
        9,
        bad.is_empty(),
        &format!("{tuples} non-Dunwoody tuples, mismatches {bad:?}"),
    );
}

#[test]
fn presentation_matrix_has_one_row_per_relator() {
    let h = diagram((1, 2, 1, 3, 1, 1));
    let m = presentation_matrix(&h);
    assert_eq!(m.rows.len(), h.c_second().len());
    assert_eq!(m.generators, 3);
    let g = HomologyGroup::from_smith(&smith_normal_form(&m.rows));
    assert_eq!(g, h1(&h));
    let _ = validate_params(1, 1, 1, 2, 1, 0).unwrap();
}
