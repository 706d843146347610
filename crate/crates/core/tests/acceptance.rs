//! Acceptance suite: one test per shipping criterion, each asserting the
//! exact values and the wall-clock limits. Run with `--nocapture` to see the
//! per-criterion PASS lines.

use std::time::{Duration, Instant};

use distinguo::catalog;
use distinguo::coloring::{self, Coloring};
use distinguo::constructive;
use distinguo::enumeration;
use distinguo::gl::{self, FiniteField, GlVerification};
use distinguo::search::{self, SearchBudget};
use distinguo::GroupAction;

fn abelian_catalog_actions() -> Vec<(String, GroupAction)> {
    let mut actions: Vec<(String, GroupAction)> = Vec::new();
    for n in 1..=8 {
        actions.push((format!("cyclic:{n}"), catalog::cyclic(n).unwrap()));
    }
    for n in 2..=6 {
        actions.push((
            format!("cyclic_regular:{n}"),
            catalog::cyclic_regular(n).unwrap(),
        ));
    }
    actions.push(("v4_transitive".into(), catalog::v4_transitive().unwrap()));
    for (p, k) in [(2, 2), (2, 3), (3, 2), (5, 1)] {
        actions.push((
            format!("elementary_abelian:{p},{k}"),
            catalog::elementary_abelian(p, k).unwrap(),
        ));
    }
    actions.push((
        "direct_product(cyclic:2,cyclic:3)".into(),
        catalog::build("direct_product(cyclic:2,cyclic:3)").unwrap(),
    ));
    actions
}

#[test]
fn criterion_1_gl_small_cases_are_exactly_3() {
    for (n, q) in [(2usize, 2u64), (2, 3)] {
        let start = Instant::now();
        let action = catalog::gl_action(n, q).unwrap();
        let exact = search::distinguishing_number(&action, &SearchBudget::default()).unwrap();
        let oracle = search::oracle_distinguishing_number(&action, 8).unwrap();
        assert_eq!(exact.value, 3, "gl:{n},{q}");
        assert_eq!(oracle, Some(3), "oracle disagrees on gl:{n},{q}");
        assert!(coloring::is_distinguishing(&action, &exact.witness).unwrap());
        assert!(exact.value <= constructive::factorial_bound(action.group()));
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(5), "gl:{n},{q} took {elapsed:?}");
        println!("ACCEPTANCE 1 PASS gl:{n},{q} -> D = 3 (oracle agrees) in {elapsed:?}");
    }
}

#[test]
fn criterion_2_gl_coloring_verifies_across_the_grid() {
    let grid = [(1usize, 3u64), (1, 4), (1, 5), (2, 4), (2, 5), (2, 7), (3, 5)];
    for (n, q) in grid {
        let start = Instant::now();
        let (p, k) = gl::prime_power_decompose(q).unwrap();
        let field = FiniteField::new(p, k).unwrap();
        let c = gl::gl_distinguishing_coloring(n, &field).unwrap();
        let blue = c.assignment().iter().filter(|&&color| color == 2).count();
        assert_eq!(blue, n * (n + 1) / 2, "blue count for n={n}, q={q}");
        assert_eq!(
            gl::verify_gl_coloring(n, &field, &c, 1).unwrap(),
            GlVerification::Distinguishing,
            "n={n}, q={q}"
        );
        // The group is nontrivial on the whole grid, so the exact value is 2.
        assert!(gl::gl_order(n, q) > 1);
        let elapsed = start.elapsed();
        if (n, q) == (3, 5) {
            assert!(elapsed < Duration::from_secs(60), "(3,5) took {elapsed:?}");
        }
        println!("ACCEPTANCE 2 PASS gl coloring verified for (n={n}, q={q}) in {elapsed:?}");
    }
    // Where the action fits the exact-search budget, the search confirms 2.
    for (n, q) in [(1usize, 3u64), (1, 4), (1, 5), (2, 4), (2, 5)] {
        let action = catalog::gl_action(n, q).unwrap();
        let budget = SearchBudget {
            max_points: 25,
            ..SearchBudget::default()
        };
        assert_eq!(
            search::distinguishing_number(&action, &budget).unwrap().value,
            2,
            "exact value for gl:{n},{q}"
        );
    }
    println!("ACCEPTANCE 2 PASS exact value 2 confirmed where the action fits the budget");
}

#[test]
fn criterion_3_tn_is_2_through_n() {
    let budget = SearchBudget::default();
    let small_start = Instant::now();
    for n in 2..=5 {
        let values = enumeration::t_n_values(n, &budget).unwrap();
        assert_eq!(values, (2..=n).collect::<Vec<_>>(), "T_{n}");
    }
    let small_elapsed = small_start.elapsed();
    assert!(small_elapsed < Duration::from_secs(30), "n ≤ 5 took {small_elapsed:?}");
    println!("ACCEPTANCE 3 PASS T_n = {{2..n}} for n = 2..5 in {small_elapsed:?}");

    let big_start = Instant::now();
    let entries = enumeration::t_n(6, &budget).unwrap();
    let values: Vec<usize> = entries.iter().map(|e| e.value).collect();
    assert_eq!(values, vec![2, 3, 4, 5, 6]);
    let class_count: usize = entries.iter().map(|e| e.witnesses.len()).sum();
    assert_eq!(class_count, 16, "transitive classes of S_6");
    for entry in &entries {
        for witness in &entry.witnesses {
            assert!(entry.value <= constructive::factorial_bound(witness));
        }
    }
    let big_elapsed = big_start.elapsed();
    assert!(big_elapsed < Duration::from_secs(600), "n = 6 took {big_elapsed:?}");
    println!("ACCEPTANCE 3 PASS T_6 = {{2..6}} in {big_elapsed:?}");
}

#[test]
fn criterion_4_series_colorings_certify_the_bounds() {
    let start = Instant::now();
    for (name, action) in abelian_catalog_actions() {
        let g = action.group().clone();
        let series = constructive::NormalSeries::new(
            vec![distinguo::PermGroup::trivial(g.degree()), g],
            vec![constructive::SeriesStepKind::Central],
        )
        .unwrap_or_else(|e| panic!("{name} is abelian but [1, G] failed: {e}"));
        // series_coloring verifies the result is distinguishing before returning.
        let c = constructive::series_coloring(&action, &series)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(c.num_colors() <= 2, "{name} used {} colors", c.num_colors());
    }
    let mut metacyclic_cases: Vec<(String, GroupAction)> = vec![(
        "quaternion8_regular".into(),
        catalog::quaternion8_regular().unwrap(),
    )];
    for n in 3..=6 {
        metacyclic_cases.push((format!("dihedral:{n}"), catalog::dihedral(n).unwrap()));
    }
    for n in 3..=5 {
        metacyclic_cases.push((
            format!("dihedral_regular:{n}"),
            catalog::dihedral_regular(n).unwrap(),
        ));
    }
    for (name, action) in metacyclic_cases {
        let series = constructive::metacyclic_series(action.group())
            .unwrap()
            .unwrap_or_else(|| panic!("{name} should be metacyclic"));
        let c = constructive::series_coloring(&action, &series)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(c.num_colors() <= 3, "{name} used {} colors", c.num_colors());
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "suite took {elapsed:?}");
    println!("ACCEPTANCE 4 PASS abelian ≤ 2 colors, dihedral/quaternion ≤ 3 colors in {elapsed:?}");
}

#[test]
fn criterion_5_nilpotent_construction() {
    let start = Instant::now();
    for (name, action) in abelian_catalog_actions() {
        let series = constructive::upper_central_series(action.group())
            .unwrap_or_else(|| panic!("{name} is abelian, hence nilpotent"));
        assert_eq!(series.length(), usize::from(!action.group().is_trivial()), "{name}");
        let c = constructive::series_coloring(&action, &series).unwrap();
        assert!(c.num_colors() <= series.length() + 1);
    }
    for (name, action) in [
        ("quaternion8_regular", catalog::quaternion8_regular().unwrap()),
        ("dihedral_regular:4", catalog::dihedral_regular(4).unwrap()),
    ] {
        let series = constructive::upper_central_series(action.group())
            .unwrap_or_else(|| panic!("{name} is nilpotent"));
        assert_eq!(series.length(), 2, "{name} has class 2");
        let c = constructive::series_coloring(&action, &series).unwrap();
        assert!(c.num_colors() <= 3, "{name} used {} colors", c.num_colors());
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "suite took {elapsed:?}");
    println!("ACCEPTANCE 5 PASS upper central series classes and colorings in {elapsed:?}");
}

#[test]
fn criterion_6_prime_bound_colorings() {
    let start = Instant::now();
    let cases = [
        ("cyclic:5", catalog::cyclic(5).unwrap(), 5usize, 2usize),
        ("cyclic_regular:9", catalog::cyclic_regular(9).unwrap(), 3, 5),
        ("elementary_abelian:3,2", catalog::elementary_abelian(3, 2).unwrap(), 3, 5),
    ];
    for (name, action, p, expected_bound) in cases {
        // prime_bound_coloring verifies the coloring before returning it.
        let (c, bound) = constructive::prime_bound_coloring(&action).unwrap();
        assert_eq!(bound, expected_bound, "{name}");
        assert!(c.num_colors() <= bound);
        for orbit in action.orbits().orbits() {
            let mut sizes = vec![0usize; c.num_colors() + 1];
            for &x in orbit {
                sizes[c.color_of(x)] += 1;
            }
            assert!(
                sizes.iter().all(|&s| s < p),
                "{name}: class size over p-1 inside an orbit"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "suite took {elapsed:?}");
    println!("ACCEPTANCE 6 PASS prime-bound colorings within ⌈M/(p-1)⌉ in {elapsed:?}");
}

#[test]
fn criterion_7_search_agrees_with_the_oracle() {
    use rand::prelude::*;

    let start = Instant::now();
    let budget = SearchBudget::default();
    let mut checked = 0usize;
    for n in [4usize, 5] {
        for rep in enumeration::transitive_subgroups(n).unwrap() {
            let action = GroupAction::natural(rep);
            let exact = search::distinguishing_number(&action, &budget).unwrap();
            let oracle = search::oracle_distinguishing_number(&action, n).unwrap();
            assert_eq!(Some(exact.value), oracle, "transitive class on {n} points");
            assert!(exact.value <= constructive::factorial_bound(action.group()));
            checked += 1;
        }
    }
    assert_eq!(checked, 10, "5 transitive classes each for S_4 and S_5");

    let pool: Vec<String> = {
        let mut pool = Vec::new();
        for n in 1..=6 {
            pool.push(format!("cyclic:{n}"));
        }
        for n in 2..=6 {
            pool.push(format!("cyclic_regular:{n}"));
        }
        for n in 1..=3 {
            pool.push(format!("symmetric:{n}"));
        }
        for n in 3..=6 {
            pool.push(format!("alternating:{n}"));
            pool.push(format!("dihedral:{n}"));
        }
        pool.push("dihedral_regular:3".into());
        pool.push("v4_transitive".into());
        pool.push("quaternion8_regular".into());
        pool.push("elementary_abelian:2,2".into());
        pool.push("elementary_abelian:5,1".into());
        pool.push("gl:2,2".into());
        pool.push("direct_product(cyclic:2,cyclic:3)".into());
        pool.push("direct_product(cyclic:2,cyclic:4)".into());
        pool.push("direct_product(cyclic:3,cyclic:3)".into());
        pool.push("direct_product(cyclic:2,v4_transitive)".into());
        pool
    };
    let mut rng = StdRng::seed_from_u64(0x5eed_d157);
    for i in 0..25 {
        let spec = &pool[rng.gen_range(0..pool.len())];
        let action = catalog::build(spec).unwrap();
        assert!(action.point_count() <= 6, "{spec}");
        let exact = search::distinguishing_number(&action, &budget).unwrap();
        let oracle = search::oracle_distinguishing_number(&action, 8).unwrap();
        assert_eq!(Some(exact.value), oracle, "instance {i}: {spec}");
        assert!(exact.value <= constructive::factorial_bound(action.group()));
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "suite took {elapsed:?}");
    println!("ACCEPTANCE 7 PASS search = oracle on 10 transitive classes + 25 random instances in {elapsed:?}");
}

#[test]
fn criterion_8_preserver_subgroup_laws_on_random_colorings() {
    use rand::prelude::*;

    let start = Instant::now();
    let actions = [
        catalog::symmetric(4).unwrap(),
        catalog::dihedral(5).unwrap(),
        catalog::cyclic(6).unwrap(),
        catalog::quaternion8_regular().unwrap(),
        catalog::v4_transitive().unwrap(),
        catalog::elementary_abelian(3, 2).unwrap(),
        catalog::gl_action(2, 3).unwrap(),
        catalog::dihedral_regular(4).unwrap(),
    ];
    let mut rng = StdRng::seed_from_u64(0x0b5e_7a71);
    let per_action = 125;
    for action in &actions {
        let m = action.point_count();
        for _ in 0..per_action {
            let r = rng.gen_range(1..=4usize);
            let assignment: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=r)).collect();
            let c = Coloring::new(r, assignment.clone()).unwrap();
            let h = coloring::preserver_subgroup(action, &c).unwrap();

            // Subgroup closure, checked directly.
            for a in h.elements() {
                assert!(h.contains(&a.inverse()));
                for b in h.elements() {
                    assert!(h.contains(&a.compose(b).unwrap()));
                }
            }

            // Refining the coloring can only shrink the preservers.
            let refined_colors: Vec<usize> = (0..m)
                .map(|x| (assignment[x] - 1) * 2 + rng.gen_range(0..2) + 1)
                .collect();
            let refined = Coloring::new(2 * r, refined_colors).unwrap();
            let h_refined = coloring::preserver_subgroup(action, &refined).unwrap();
            assert!(h_refined.is_subgroup_of(&h).unwrap());

            // Injective relabeling leaves the preservers unchanged.
            let shift = rng.gen_range(1..=3usize);
            let relabeled_colors: Vec<usize> =
                assignment.iter().map(|&c| c + shift).collect();
            let relabeled = Coloring::new(r + shift, relabeled_colors).unwrap();
            assert_eq!(
                coloring::preserver_subgroup(action, &relabeled).unwrap(),
                h
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "suite took {elapsed:?}");
    println!(
        "ACCEPTANCE 8 PASS 1000 random colorings: closure, refinement, relabeling in {elapsed:?}"
    );
}

#[test]
fn criterion_9_factorial_bound_on_computed_values() {
    // The bound is also asserted inline in criteria 1, 3, and 7; this makes
    // it a visible criterion of its own across a representative sweep.
    let budget = SearchBudget::default();
    let specs = [
        "gl:2,2",
        "gl:2,3",
        "symmetric:4",
        "alternating:5",
        "dihedral:6",
        "cyclic_regular:6",
        "quaternion8_regular",
        "v4_transitive",
        "elementary_abelian:3,2",
    ];
    for spec in specs {
        let action = catalog::build(spec).unwrap();
        let value = search::distinguishing_number(&action, &budget).unwrap().value;
        let bound = constructive::factorial_bound(action.group());
        assert!(value <= bound, "{spec}: D = {value} > bound {bound}");
    }
    println!("ACCEPTANCE 9 PASS exact values respect the factorial bound");
}
