//! End-to-end acceptance battery over the bundled example categories.
//!
//! Each criterion is an independent scenario that rebuilds everything it
//! needs from the JSON descriptors in `configs/`.  The battery prints one
//! `ACCEPTANCE <n> PASS/FAIL` line per criterion and fails if any scenario
//! panics or overruns its time budget.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use tricat::cat::{category_radical, AddObj, Category, DeclaredTriangle};
use tricat::descriptor::{certify_triangles, parse_descriptor, AnyDescriptor};
use tricat::field::PrimeField;
use tricat::ideal::{CategoryIdeal, QuotientCategory};
use tricat::mesh::MeshCategory;
use tricat::modcat::ModuleCategory;
use tricat::stable::StableCategory;
use tricat::theory::{
    ar_image_checks, check_condition_a, check_condition_b, check_dense, check_full,
    find_projective_generator, harada_sai_check, is_cluster_tilting, kernel_ideal_of_hom_functor,
    l_hat, l_hat_monotonicity_check, representability_suite, t_setup, theorem_suite, Backend,
};

fn read_config(name: &str) -> String {
    let path = format!("{}/../../configs/{}", env!("CARGO_MANIFEST_DIR"), name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn algebra(name: &str) -> ModuleCategory<PrimeField> {
    match parse_descriptor(&read_config(name)).unwrap() {
        AnyDescriptor::Algebra(d) => ModuleCategory::build(d.build(None).unwrap(), 64).unwrap(),
        AnyDescriptor::Mesh(_) => panic!("{name} is not an algebra descriptor"),
    }
}

fn mesh(name: &str) -> (MeshCategory<PrimeField>, Vec<DeclaredTriangle<PrimeField>>) {
    match parse_descriptor(&read_config(name)).unwrap() {
        AnyDescriptor::Mesh(d) => d.build(None).unwrap(),
        AnyDescriptor::Algebra(_) => panic!("{name} is not a mesh descriptor"),
    }
}

fn two_cycle_stable() -> StableCategory<PrimeField> {
    StableCategory::new(algebra("example-4-1-selfinjective.json")).unwrap()
}

fn stable_family(st: &StableCategory<PrimeField>, labels: &[&str]) -> AddObj {
    AddObj::new(
        labels
            .iter()
            .map(|l| st.stable_index_of_label(l).unwrap())
            .collect(),
    )
}

fn quotient_killing_a(
    st: &StableCategory<PrimeField>,
) -> QuotientCategory<'_, PrimeField, StableCategory<PrimeField>> {
    let a = st.stable_index_of_label("a").unwrap();
    let ideal = CategoryIdeal::generate(st, &[a], &[]).unwrap();
    QuotientCategory::new(st, ideal).unwrap()
}

/// Figure-exact catalog of the two-cycle algebra, then the full pipeline:
/// stable category, quotient by a vertex module, and the hom-functor
/// checks for the family that works.
fn criterion_1() {
    let mc = algebra("example-4-1-selfinjective.json");
    assert_eq!(mc.labels, ["a", "b", "ab", "ba", "aba", "bab"]);
    let dims: Vec<&[usize]> = mc.indecs.iter().map(|m| m.dims.as_slice()).collect();
    assert_eq!(
        dims,
        [
            &[1usize, 0][..],
            &[0, 1],
            &[1, 1],
            &[1, 1],
            &[2, 1],
            &[1, 2]
        ]
    );
    assert_eq!(mc.is_projective, [false, false, false, false, true, true]);
    assert_eq!(mc.is_injective, [false, false, false, false, true, true]);
    assert_eq!(
        mc.tau,
        [Some(1), Some(0), Some(3), Some(2), None, None],
        "translate must swap a<->b and ab<->ba"
    );
    let expected_edges: BTreeMap<(usize, usize), usize> =
        [(0, 3), (1, 2), (2, 0), (2, 5), (3, 1), (3, 4), (4, 2), (5, 3)]
            .into_iter()
            .map(|e| (e, 1))
            .collect();
    assert_eq!(mc.ar_edges, expected_edges);

    let st = StableCategory::new(mc).unwrap();
    assert_eq!(st.num_stable_objects(), 4);

    let q = quotient_killing_a(&st);
    let survivors: Vec<&str> = q
        .nonzero_objects()
        .iter()
        .map(|&i| st.stable_label(i))
        .collect();
    assert_eq!(survivors, ["b", "ab", "ba"]);

    // irreducible arrows of the quotient, read off rad / rad^2
    let rad = category_radical(&q).unwrap();
    let sq = rad.square(&q);
    let mut arrows = BTreeSet::new();
    for &i in &q.nonzero_objects() {
        for &j in &q.nonzero_objects() {
            let irr = rad.spaces[i][j].dim() - sq[i][j].dim();
            if irr > 0 {
                assert_eq!(irr, 1);
                arrows.insert((st.stable_label(i), st.stable_label(j)));
            }
        }
    }
    let expected: BTreeSet<(&str, &str)> = [("ba", "b"), ("b", "ab")].into_iter().collect();
    assert_eq!(arrows, expected, "quotient must knit into ba -> b -> ab");

    let t = stable_family(&st, &["ba", "b"]);
    let backend = Backend::Stable(&st);
    let setup = t_setup(&backend, &t, 64).unwrap();
    assert!(check_full(&backend, &setup).is_pass());
    assert!(check_dense(&backend, &setup).is_pass());
    assert!(check_condition_a(&backend, &setup).unwrap().is_pass());
    assert!(check_condition_b(&backend, &setup, false).unwrap().is_pass());
    let ideal = kernel_ideal_of_hom_functor(&backend, &setup).unwrap();
    let q = QuotientCategory::new(&st, ideal).unwrap();
    for report in representability_suite(&st, &q, &t).unwrap() {
        assert!(report.is_pass(), "{}: {:?}", report.check, report.witnesses);
    }
}

/// No summand family of the two-cycle stable category is cluster tilting.
fn criterion_2() {
    let st = two_cycle_stable();
    let backend = Backend::Stable(&st);
    let n = st.num_stable_objects();
    let mut rejected = 0;
    for mask in 1usize..(1 << n) {
        let t = AddObj::new((0..n).filter(|i| mask & (1 << i) != 0).collect());
        assert!(
            !is_cluster_tilting(&backend, &t).is_pass(),
            "{} must not be cluster tilting",
            t.label(&st)
        );
        rejected += 1;
    }
    assert_eq!(rejected, 15);
}

/// The orbit catalog: certified triangles drive the pointwise conditions,
/// and the endomorphism algebra of the slice family is the linear quiver
/// algebra on three vertices.
fn criterion_3() {
    let (me, tris) = mesh("example-4-2-orbit-A3.json");
    assert_eq!(me.num_objects(), 6);
    let certificates = certify_triangles(&me, &tris);
    assert_eq!(certificates.len(), 3);
    for report in &certificates {
        assert!(report.is_pass(), "{:?}", report.witnesses);
    }

    let t = AddObj::new(
        ["321", "32", "3"]
            .iter()
            .map(|l| me.index_of_name(l).unwrap())
            .collect(),
    );
    let backend = Backend::Mesh(&me, &tris);
    let setup = t_setup(&backend, &t, 64).unwrap();
    assert_eq!(setup.ep.dim, 6);
    assert_eq!(setup.ep.pres.num_vertices(), 3);
    assert_eq!(setup.ep.pres.quiver.arrows.len(), 2);
    assert!(setup.ep.pres.relations.is_empty());
    assert_eq!(setup.gmc.num_indecs(), 6);
    assert!(check_full(&backend, &setup).is_pass());
    assert!(check_dense(&backend, &setup).is_pass());
    // the declared triangles must decide both conditions, not skip them
    assert!(check_condition_a(&backend, &setup).unwrap().is_pass());
    assert!(check_condition_b(&backend, &setup, false).unwrap().is_pass());
}

/// Functor criterion on the two-cycle stable category: for every one of
/// the 15 families, full and dense holds exactly when conditions a and b
/// both hold, with no family left undecided.
fn criterion_4() {
    let st = two_cycle_stable();
    let backend = Backend::Stable(&st);
    let (rows, reports) = theorem_suite(&backend, 64, 4096).unwrap();
    assert_eq!(rows.len(), 15);
    for row in &rows {
        let fd = row.full.zip(row.dense).map(|(f, d)| f && d);
        let ab = row.a.zip(row.b).map(|(x, y)| x && y);
        assert!(fd.is_some() && ab.is_some(), "{:?} undecided", row.labels);
        assert_eq!(fd, ab, "criterion mismatch at {:?}", row.labels);
    }
    let eq = reports
        .iter()
        .find(|r| r.check == "functor-criterion-equivalence")
        .unwrap();
    assert!(eq.is_pass());
}

/// The pentagon category is 2-Calabi-Yau; cluster-tilting families are
/// characterized by conditions a, b*, c; there are exactly five of them,
/// each with two summands; and every full-and-dense family is schurian
/// or cluster tilting.
fn criterion_5() {
    let (me, tris) = mesh("cluster-A2-pentagon.json");
    assert_eq!(me.num_objects(), 5);
    let backend = Backend::Mesh(&me, &tris);
    assert!(backend.is_2cy().unwrap());
    let (rows, reports) = theorem_suite(&backend, 64, 4096).unwrap();
    assert_eq!(rows.len(), 31);
    let mut ct_rows = 0;
    for row in &rows {
        let (a, bstar, c) = (row.a, row.bstar, row.c);
        assert!(
            a.is_some() && bstar.is_some() && c.is_some(),
            "{:?} undecided",
            row.labels
        );
        let abc = a.unwrap() && bstar.unwrap() && c.unwrap();
        assert_eq!(abc, row.ct, "characterization fails at {:?}", row.labels);
        if row.ct {
            ct_rows += 1;
            assert_eq!(row.labels.len(), 2, "{:?}", row.labels);
        }
        if row.full == Some(true) && row.dense == Some(true) {
            assert!(
                row.schurian || row.ct,
                "dichotomy fails at {:?}",
                row.labels
            );
            assert_eq!(row.dichotomy, Some(true), "{:?}", row.labels);
        }
    }
    assert_eq!(ct_rows, 5);
    for report in &reports {
        assert!(report.is_pass(), "{}: {:?}", report.check, report.witnesses);
    }
}

/// Composites of enough radical morphisms vanish: the exact radical power
/// and at least ten thousand sampled chains at the bound.
fn criterion_6() {
    let mc = algebra("example-4-1-selfinjective.json");
    let report = harada_sai_check(&mc, 10_000).unwrap();
    assert!(report.is_pass(), "{:?}", report.witnesses);
    assert!(report
        .notes
        .iter()
        .any(|n| n.contains("(bound 2^3 = 8)")));
    assert!(report
        .notes
        .iter()
        .any(|n| n == "10000 sampled chains of length 8 all vanish"));
}

/// Projective generators and length bounds: the hereditary linear quiver
/// has generator 3+32+321 with strictly monotone lengths, and the
/// quotient of the two-cycle stable category has generator b+ba.
fn criterion_7() {
    let a3 = algebra("linear-A3.json");
    let (gen, report) = find_projective_generator(&a3).unwrap();
    assert!(report.is_pass(), "{:?}", report.witnesses);
    let names: BTreeSet<&str> = gen.0.iter().map(|&i| a3.labels[i].as_str()).collect();
    assert_eq!(names, ["3", "32", "321"].into_iter().collect());
    let idx = |l: &str| a3.index_of_label(l).unwrap();
    assert_eq!(l_hat(&a3, idx("3")), 1);
    assert_eq!(l_hat(&a3, idx("32")), 2);
    assert_eq!(l_hat(&a3, idx("321")), 3);
    assert_eq!(l_hat(&a3, idx("1")), 3);
    assert!(l_hat_monotonicity_check(&a3).is_pass());

    let st = two_cycle_stable();
    let q = quotient_killing_a(&st);
    assert!(l_hat_monotonicity_check(&q).is_pass());
    let (gen, report) = find_projective_generator(&q).unwrap();
    assert!(report.is_pass(), "{:?}", report.witnesses);
    let names: BTreeSet<&str> = gen.0.iter().map(|&i| st.stable_label(i)).collect();
    assert_eq!(names, ["b", "ba"].into_iter().collect());
}

/// Images of the almost split machinery under the hom functor: connecting
/// morphisms vanish exactly off the family, translates of family summands
/// land on injectives, and the qualifying triangle maps to a certified
/// almost split sequence.
fn criterion_8() {
    let st = two_cycle_stable();
    let backend = Backend::Stable(&st);
    let t = stable_family(&st, &["ba", "b"]);
    let setup = t_setup(&backend, &t, 64).unwrap();
    let reports = ar_image_checks(&backend, &setup).unwrap();
    assert_eq!(reports.len(), 3);
    let by_name: BTreeMap<&str, _> = reports.iter().map(|r| (r.check.as_str(), r)).collect();
    for name in [
        "ar-connecting-vanishing",
        "tau-image-injective",
        "ar-sequence-image",
    ] {
        let report = by_name[name];
        assert!(report.is_pass(), "{name}: {:?}", report.witnesses);
    }
    assert!(by_name["ar-sequence-image"]
        .notes
        .iter()
        .any(|n| n.contains("ab")));
}

/// Hom dimensions against the closed-form counting oracle on both mesh
/// categories, and the Serre duality numerics on all ordered pairs of
/// all three bundled categories.
fn criterion_9() {
    for name in ["example-4-2-orbit-A3.json", "cluster-A2-pentagon.json"] {
        let (me, _) = mesh(name);
        for x in 0..me.num_objects() {
            for y in 0..me.num_objects() {
                assert_eq!(
                    me.hom_dim(x, y),
                    me.oracle_hom_dim(x, y),
                    "{name}: hom dim mismatch at ({x}, {y})"
                );
            }
        }
    }

    fn serre(backend: &Backend<PrimeField>) {
        let cat = backend.cat();
        for x in 0..backend.num_objects() {
            let sx = backend.sigma_of(backend.tau_of(x).unwrap());
            for y in 0..backend.num_objects() {
                assert_eq!(
                    cat.hom_dim(x, y),
                    cat.hom_dim(y, sx),
                    "Serre numerics fail at ({}, {})",
                    backend.label(x),
                    backend.label(y)
                );
            }
        }
    }
    let st = two_cycle_stable();
    serre(&Backend::Stable(&st));
    let (orbit, orbit_tris) = mesh("example-4-2-orbit-A3.json");
    serre(&Backend::Mesh(&orbit, &orbit_tris));
    let (pent, pent_tris) = mesh("cluster-A2-pentagon.json");
    serre(&Backend::Mesh(&pent, &pent_tris));
}

#[test]
fn acceptance_battery() {
    let criteria: Vec<(usize, &str, u64, fn())> = vec![
        (1, "two-cycle pipeline", 5, criterion_1),
        (2, "no cluster tilting in the two-cycle census", 5, criterion_2),
        (3, "orbit catalog driven by declared triangles", 5, criterion_3),
        (4, "functor criterion equivalence", 60, criterion_4),
        (5, "pentagon cluster-tilting characterization", 10, criterion_5),
        (6, "radical chain vanishing", 60, criterion_6),
        (7, "projective generators and length bounds", 60, criterion_7),
        (8, "almost split images", 60, criterion_8),
        (9, "counting oracle and Serre numerics", 60, criterion_9),
    ];
    let prev_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = vec![];
    for (n, name, budget_secs, run) in criteria {
        let budget = Duration::from_secs(budget_secs);
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        match outcome {
            Ok(()) if elapsed <= budget => {
                println!("ACCEPTANCE {n} PASS {name} ({:.2}s)", elapsed.as_secs_f64());
            }
            Ok(()) => {
                println!(
                    "ACCEPTANCE {n} FAIL {name} ({:.2}s over the {budget_secs}s budget)",
                    elapsed.as_secs_f64()
                );
                failures.push(n);
            }
            Err(payload) => {
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".to_string());
                println!("ACCEPTANCE {n} FAIL {name}: {msg}");
                failures.push(n);
            }
        }
    }
    std::panic::set_hook(prev_hook);
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
