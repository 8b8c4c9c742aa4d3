//! Acceptance suite: nine end-to-end checks, one per headline capability,
//! each with a wall-clock budget.  The single test walks all criteria in
//! order and prints one `criterion N (<name>): PASS/FAIL in <time>` line
//! per criterion, so a full report appears even when something breaks.
//!
//! Criterion 7 recomputes a bigraded saturation that takes a few minutes
//! of exact linear algebra; it only runs with `--features heavy`.

use std::any::Any;
use std::collections::HashMap;
use std::panic;
use std::sync::Arc;
use std::time::{Duration, Instant};

use macdual::algebra::{Polynomial, Rat, Subspace};
use macdual::dual::{
    phi_g, phi_i, psi_g, DegreeRegion, DualTable, Functional, GradedIdeal,
};
use macdual::grading::{ExponentVector, Grading, MultiDegree};
use macdual::idealops::{
    contains, membership, multiplicity, saturate, DualPresentation, Membership,
};
use macdual::io::{emit, parse};
use macdual::oracle::{oracle_hilbert, oracle_membership};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn md(coords: &[i64]) -> MultiDegree {
    MultiDegree::new(coords.to_vec())
}

fn ev(exps: &[u32]) -> ExponentVector {
    ExponentVector::new(exps.to_vec())
}

fn poly(grading: &Arc<Grading>, text: &str) -> Polynomial {
    parse::polynomial(grading, text, 0).unwrap()
}

/// A sum of unit operators, one per exponent vector.
fn delta_sum(grading: &Grading, parts: &[&[u32]]) -> Functional {
    let mut acc = Functional::delta(grading, ev(parts[0])).unwrap();
    for part in &parts[1..] {
        acc = acc.add(&Functional::delta(grading, ev(part)).unwrap()).unwrap();
    }
    acc
}

/// Weights deg x1 = 1, deg x2 = 2.
fn point_grading() -> Arc<Grading> {
    let names = vec!["x1".to_string(), "x2".to_string()];
    Arc::new(Grading::new(vec![vec![1, 2]], None, names).unwrap())
}

/// A multiplicity-3 point at the origin.
fn triple_point_ideal(grading: &Arc<Grading>) -> GradedIdeal {
    GradedIdeal::new(
        grading.clone(),
        vec![
            poly(grading, "29/16*x1^3 - 2*x1*x2"),
            poly(grading, "x2 - x1^2"),
        ],
    )
    .unwrap()
}

/// A fat point containing the triple point: <x2 - x1^2, x2^2>.
fn fat_point_ideal(grading: &Arc<Grading>) -> GradedIdeal {
    GradedIdeal::new(
        grading.clone(),
        vec![poly(grading, "x2 - x1^2"), poly(grading, "x2^2")],
    )
    .unwrap()
}

/// The Cox ring grading of the Hirzebruch surface H_2; the cone matrix is
/// derived from the column degrees.
fn surface_grading() -> Arc<Grading> {
    let names = ["x1", "x2", "x3", "x4"].iter().map(|s| s.to_string()).collect();
    let a = vec![vec![1, 0, 1, 0], vec![-2, 1, 0, 1]];
    Arc::new(Grading::new(a, None, names).unwrap())
}

fn payload_text(payload: Box<dyn Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic with a non-string payload".to_string()
    }
}

fn run_criterion(
    number: u32,
    name: &str,
    budget: Duration,
    failures: &mut Vec<String>,
    body: impl FnOnce(),
) {
    let start = Instant::now();
    let outcome = panic::catch_unwind(panic::AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) if elapsed <= budget => {
            println!("criterion {number} ({name}): PASS in {elapsed:.2?}");
        }
        Ok(()) => {
            println!(
                "criterion {number} ({name}): FAIL in {elapsed:.2?} (budget {budget:?})"
            );
            failures.push(format!(
                "criterion {number} ({name}): over budget, {elapsed:.2?} > {budget:?}"
            ));
        }
        Err(payload) => {
            println!("criterion {number} ({name}): FAIL in {elapsed:.2?}");
            failures.push(format!(
                "criterion {number} ({name}): {}",
                payload_text(payload)
            ));
        }
    }
}

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    let sec = Duration::from_secs;

    run_criterion(1, "multiplicity of an isolated point", sec(1), &mut failures, point_multiplicity);
    run_criterion(2, "bigraded dual space bases", sec(1), &mut failures, surface_dual_bases);
    run_criterion(3, "curve Hilbert grid", sec(60), &mut failures, curve_hilbert_grid);
    run_criterion(4, "membership witness and containment", sec(1), &mut failures, membership_and_containment);
    run_criterion(5, "quotient calculus", sec(1), &mut failures, quotient_calculus);
    run_criterion(6, "steady state count", sec(300), &mut failures, steady_state_count);
    #[cfg(feature = "heavy")]
    run_criterion(7, "parameter geography diagonal", sec(1800), &mut failures, geography_diagonal);
    #[cfg(not(feature = "heavy"))]
    println!("criterion 7 (parameter geography diagonal): SKIPPED (enable with --features heavy)");
    run_criterion(8, "oracle equivalence", sec(120), &mut failures, oracle_equivalence);
    run_criterion(9, "operator identities", sec(120), &mut failures, operator_identities);

    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}

/// Dual-space dimensions (1,1,1,0) in degrees 0..3, the pinned degree-2
/// basis, and multiplicity 3 certified complete below degree 4.
fn point_multiplicity() {
    let grading = point_grading();
    let ideal = triple_point_ideal(&grading);

    let mut table = DualTable::new(ideal.clone());
    let dims: Vec<usize> = (0..=3).map(|m| table.hilbert(&md(&[m])).unwrap()).collect();
    assert_eq!(dims, [1, 1, 1, 0]);

    let entry = table.dual_space(&md(&[2])).unwrap();
    let ambient = entry.ambient().clone();
    let witness = delta_sum(&grading, &[&[0, 1], &[2, 0]]);
    let expected = Subspace::from_rows(
        ambient.clone(),
        vec![witness.coordinates(&ambient).unwrap()],
    );
    assert_eq!(entry.to_subspace(), expected);

    let mut pres = DualPresentation::of_ideal(ideal);
    assert_eq!(multiplicity(&mut pres, &md(&[4])).unwrap(), (3, true));
}

/// Dual spaces of <x3 - x1*x2^2> on the Hirzebruch grading: dimension 3 in
/// degree (1,0) and the pinned four-element basis in degree (1,1).
fn surface_dual_bases() {
    let grading = surface_grading();
    let ideal =
        GradedIdeal::new(grading.clone(), vec![poly(&grading, "x3 - x1*x2^2")]).unwrap();
    let mut table = DualTable::new(ideal);

    assert_eq!(table.hilbert(&md(&[1, 0])).unwrap(), 3);

    let entry = table.dual_space(&md(&[1, 1])).unwrap();
    assert_eq!(entry.dim(), 4);
    let ambient = entry.ambient().clone();
    let rows = [
        delta_sum(&grading, &[&[1, 3, 0, 0], &[0, 1, 1, 0]]),
        delta_sum(&grading, &[&[1, 1, 0, 2]]),
        delta_sum(&grading, &[&[1, 2, 0, 1], &[0, 0, 1, 1]]),
        delta_sum(&grading, &[&[1, 0, 0, 3]]),
    ]
    .iter()
    .map(|f| f.coordinates(&ambient).unwrap())
    .collect();
    assert_eq!(entry.to_subspace(), Subspace::from_rows(ambient.clone(), rows));
}

/// The full 21-row Hilbert grid of a degree-(2,2) curve on the Hirzebruch
/// surface, including which cells fall outside the comparison region, and
/// the linear growth H(a,a) = 8a - 2 along the diagonal.
fn curve_hilbert_grid() {
    let grading = surface_grading();
    let curve = GradedIdeal::new(
        grading.clone(),
        vec![poly(&grading, "x1^2*x2^6 + x1^2*x2^3*x4^3 - x3^2*x4^2")],
    )
    .unwrap();
    let mut table = DualTable::new(curve);

    let bound = md(&[4, 4]);
    let values = table.hilbert_table(&DegreeRegion::Below(bound.clone())).unwrap();
    let grid = emit::table_grid(&grading, &values, &bound).unwrap();

    assert_eq!(grid.col_labels, vec![0, 1, 2, 3, 4]);
    assert_eq!(grid.row_labels, (-8..=12).rev().collect::<Vec<i64>>());

    // Rows run from the second coordinate 12 down to -8; -1 marks a cell
    // outside the region below (4,4).
    let expected: Vec<Vec<Option<usize>>> = [
        [13, -1, -1, -1, -1],
        [12, -1, -1, -1, -1],
        [11, 24, -1, -1, -1],
        [10, 22, -1, -1, -1],
        [9, 20, 26, -1, -1],
        [8, 18, 24, -1, -1],
        [7, 16, 22, 28, -1],
        [6, 14, 20, 26, -1],
        [5, 12, 18, 24, 30],
        [4, 10, 16, 22, 28],
        [3, 8, 14, 20, 26],
        [2, 6, 12, 18, 24],
        [1, 4, 9, 15, 21],
        [-1, 2, 6, 12, 18],
        [-1, 1, 4, 9, 15],
        [-1, -1, 2, 6, 12],
        [-1, -1, 1, 4, 9],
        [-1, -1, -1, 2, 6],
        [-1, -1, -1, 1, 4],
        [-1, -1, -1, -1, 2],
        [-1, -1, -1, -1, 1],
    ]
    .iter()
    .map(|row| {
        row.iter()
            .map(|&v| if v < 0 { None } else { Some(v as usize) })
            .collect()
    })
    .collect();
    assert_eq!(grid.cells, expected);

    for a in 2..=4i64 {
        assert_eq!(values[&md(&[a, a])], (8 * a - 2) as usize);
    }
}

/// x2 falls outside the fat point ideal with the pinned witness, and the
/// fat point ideal sits strictly inside the triple point ideal.
fn membership_and_containment() {
    let grading = point_grading();
    let point = triple_point_ideal(&grading);
    let fat = fat_point_ideal(&grading);

    let mut fat_pres = DualPresentation::of_ideal(fat.clone());
    match membership(&mut fat_pres, &poly(&grading, "x2")).unwrap() {
        Membership::NotMember { witness } => {
            assert_eq!(witness, delta_sum(&grading, &[&[0, 1], &[2, 0]]));
        }
        Membership::Member => panic!("x2 must not lie in the fat point ideal"),
    }

    let mut point_pres = DualPresentation::of_ideal(point.clone());
    assert!(contains(&mut point_pres, &fat).unwrap());
    assert!(!contains(&mut fat_pres, &point).unwrap());
}

/// The anti-differentiation by a generator acts exactly on a pinned
/// functional, and the colon ideal of the two point fixtures is the
/// maximal ideal <x1, x2>.
fn quotient_calculus() {
    let grading = point_grading();
    let point = triple_point_ideal(&grading);
    let fat = fat_point_ideal(&grading);

    let f1 = poly(&grading, "29/16*x1^3 - 2*x1*x2");
    let shifted = phi_g(&delta_sum(&grading, &[&[1, 1], &[3, 0]]), &f1).unwrap();
    let expected = Functional::delta(&grading, ev(&[0, 0]))
        .unwrap()
        .scale(&Rat::new(-3, 16));
    assert_eq!(shifted, expected);

    let mut colon = DualPresentation::quotient_by_ideal(
        DualPresentation::of_ideal(fat),
        point.generators().to_vec(),
    )
    .unwrap();
    let dims: Vec<usize> = (0..=4).map(|m| colon.hilbert(&md(&[m])).unwrap()).collect();
    assert_eq!(dims, [1, 0, 0, 0, 0]);

    for text in ["x1", "x2", "x1^2"] {
        let g = poly(&grading, text);
        assert!(
            matches!(membership(&mut colon, &g).unwrap(), Membership::Member),
            "{text} must lie in the colon ideal"
        );
    }
}

/// The homogenized one-site phosphorylation network with seeded rational
/// rate constants: vars xE, xF, xS0, xS1, xX1, xY1 and the homogenizing t.
fn phosphorylation_system(seed: u64) -> (Arc<Grading>, Vec<Polynomial>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = move || Rat::new(rng.gen_range(1..=9), rng.gen_range(1..=9));
    let names = ["xE", "xF", "xS0", "xS1", "xX1", "xY1", "t"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let grading = Arc::new(Grading::new(vec![vec![1; 7]], None, names).unwrap());

    let ce = draw();
    let cf = draw();
    let cs0 = draw();
    let cs1 = draw();
    let cx1 = draw();
    let cy1 = draw();
    let k01 = draw();
    let k10 = draw();
    let k12 = draw();
    let k34 = draw();
    let k43 = draw();
    let k45 = draw();

    let var = |i: usize| Polynomial::var(grading.clone(), i);
    let (xe, xf, xs0, xs1, xx1, xy1, t) =
        (var(0), var(1), var(2), var(3), var(4), var(5), var(6));

    let f1 = &(&xe + &xx1) - &t.scale(&(&ce + &cx1));
    let f2 = &(&xf + &xy1) - &t.scale(&(&cf + &cy1));
    let f3 = &(&(&(&xs0 + &xs1) - &xe) - &xf)
        - &t.scale(&(&(&(&cs0 + &cs1) - &ce) - &cf));
    let s0e = &xs0 * &xe;
    let s1f = &xs1 * &xf;
    let x1t = &xx1 * &t;
    let y1t = &xy1 * &t;
    let f4 = &(&s0e.scale(&-&k01) + &x1t.scale(&k10)) + &y1t.scale(&k45);
    let f5 = &(&s1f.scale(&-&k34) + &x1t.scale(&k12)) + &y1t.scale(&k43);
    let f6 = &s0e.scale(&k01) - &x1t.scale(&(&k10 + &k12));
    let f7 = &s1f.scale(&k34) - &y1t.scale(&(&k43 + &k45));

    (grading, vec![f1, f2, f3, f4, f5, f6, f7])
}

fn steady_state_tables(seed: u64) -> Result<(), String> {
    let (grading, gens) = phosphorylation_system(seed);
    let ideal = GradedIdeal::new(grading.clone(), gens).map_err(|e| e.to_string())?;

    let mut table = DualTable::new(ideal.clone());
    let h: Vec<usize> = (0..=10)
        .map(|m| table.hilbert(&md(&[m])).unwrap())
        .collect();
    if h != [1, 4, 7, 8, 8, 8, 8, 8, 8, 8, 8] {
        return Err(format!("network ideal table came out {h:?}"));
    }

    let t = Polynomial::var(grading.clone(), 6);
    let window = DegreeRegion::Below(md(&[6]));
    let (mut sat, steps) = saturate(DualPresentation::of_ideal(ideal), vec![t], &window)
        .map_err(|e| e.to_string())?;
    if steps != 2 {
        return Err(format!("saturation chain stabilized after {steps} steps, expected 2"));
    }
    let hs: Vec<usize> = (0..=6).map(|m| sat.hilbert(&md(&[m])).unwrap()).collect();
    if hs != [1, 3, 3, 3, 3, 3, 3] {
        return Err(format!("saturated table came out {hs:?}"));
    }
    Ok(())
}

/// Hilbert table (1,4,7,8,8,...) of the homogenized network, saturation
/// chain stabilizing after two quotients, and steady-state count 3.  The
/// tables hold for generic rate constants, so a failing seed is retried
/// once with an independent one.
fn steady_state_count() {
    if let Err(first) = steady_state_tables(11) {
        eprintln!("seed 11 missed the frozen tables ({first}); retrying with a second seed");
        if let Err(second) = steady_state_tables(777) {
            panic!("two independent seeds missed the frozen tables: {first}; {second}");
        }
    }
}

/// Engine Hilbert values and membership answers agree with the
/// brute-force oracle on 50 seeded random ideals.
fn oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    for case in 0..50 {
        let grading = random_grading(&mut rng);
        let n = grading.nvars();
        let gens: Vec<Polynomial> = (0..rng.gen_range(1..=2))
            .map(|_| random_generator(&mut rng, &grading))
            .collect();
        let ideal = GradedIdeal::new(grading.clone(), gens.clone()).unwrap();

        let bound = grading.degree_of(&ev(&vec![2; n])).unwrap();
        let mut table = DualTable::new(ideal.clone());
        for m in grading.lattice_points_below(&bound).unwrap() {
            let engine = table.hilbert(&m).unwrap();
            let oracle = oracle_hilbert(&grading, &gens, &m).unwrap();
            assert_eq!(engine, oracle, "case {case}: Hilbert mismatch at {m}");
        }

        let mut pres = DualPresentation::of_ideal(ideal);
        let forced = &Polynomial::monomial(grading.clone(), ev(&vec![1; n]), Rat::one())
            * &gens[0];
        let mut candidates = vec![forced.clone()];
        for _ in 0..2 {
            let e = ExponentVector::new((0..n).map(|_| rng.gen_range(0..=2)).collect());
            let m = grading.degree_of(&e).unwrap();
            if let Some(p) = random_homog(&mut rng, &grading, &m) {
                candidates.push(p);
            }
        }
        for candidate in &candidates {
            let engine = matches!(
                membership(&mut pres, candidate).unwrap(),
                Membership::Member
            );
            let oracle = oracle_membership(&grading, &gens, candidate).unwrap();
            assert_eq!(engine, oracle, "case {case}: membership mismatch");
        }
        assert!(
            matches!(membership(&mut pres, &forced).unwrap(), Membership::Member),
            "case {case}: a monomial multiple of a generator must be a member"
        );
    }
}

/// Operator and subspace identities on random inputs: the section of the
/// anti-differentiation really is a right inverse, shifting by a variable
/// matches the dedicated operator, dual spaces turn ideal sums into
/// intersections and degreewise ideal intersections into sums, sorted
/// lattice points form a linear extension of the cone order, and the dual
/// walk is independent of the extension chosen.
fn operator_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let pool: Vec<Arc<Grading>> = vec![
        point_grading(),
        Arc::new(
            Grading::new(
                vec![vec![1, 1, 1]],
                None,
                vec!["x1".into(), "x2".into(), "x3".into()],
            )
            .unwrap(),
        ),
        surface_grading(),
        Arc::new(
            Grading::new(
                vec![vec![1, 1], vec![0, 1]],
                None,
                vec!["x1".into(), "x2".into()],
            )
            .unwrap(),
        ),
    ];

    for _ in 0..100 {
        let grading = &pool[rng.gen_range(0..pool.len())];
        let g = random_nonzero_homog(&mut rng, grading);
        let beta = ExponentVector::new(
            (0..grading.nvars()).map(|_| rng.gen_range(0..=2)).collect(),
        );
        let section = psi_g(grading, &beta, &g).unwrap();
        assert_eq!(
            phi_g(&section, &g).unwrap(),
            Functional::delta(grading, beta).unwrap(),
            "the section must be a right inverse of the shift"
        );
    }

    for _ in 0..50 {
        let grading = &pool[rng.gen_range(0..pool.len())];
        let f = random_functional(&mut rng, grading);
        let i = rng.gen_range(0..grading.nvars());
        assert_eq!(
            phi_g(&f, &Polynomial::var(grading.clone(), i)).unwrap(),
            phi_i(grading, &f, i).unwrap(),
            "shifting by x{} must match the variable operator",
            i + 1
        );
    }

    for case in 0..20 {
        sum_and_intersection_identities(&mut rng, case);
    }

    for _ in 0..100 {
        let grading = random_grading(&mut rng);
        let e = ExponentVector::new(
            (0..grading.nvars()).map(|_| rng.gen_range(0..=3)).collect(),
        );
        let m = grading.degree_of(&e).unwrap();
        let sorted = grading.sort_lattice_points(&m).unwrap();
        let mut as_set = sorted.clone();
        as_set.sort();
        let mut below = grading.lattice_points_below(&m).unwrap();
        below.sort();
        assert_eq!(as_set, below, "sorted points must cover the interval");
        for a in 0..sorted.len() {
            for b in a + 1..sorted.len() {
                assert!(
                    sorted[a] == sorted[b] || !grading.weight_leq(&sorted[b], &sorted[a]),
                    "{} may not precede {} in a linear extension",
                    sorted[a],
                    sorted[b]
                );
            }
        }
    }

    let point = point_grading();
    extension_independence(&triple_point_ideal(&point), &md(&[3]));
    let surface = surface_grading();
    let line = GradedIdeal::new(surface.clone(), vec![poly(&surface, "x3 - x1*x2^2")])
        .unwrap();
    extension_independence(&line, &md(&[1, 1]));
    let curve = GradedIdeal::new(
        surface.clone(),
        vec![poly(&surface, "x1^2*x2^6 + x1^2*x2^3*x4^3 - x3^2*x4^2")],
    )
    .unwrap();
    extension_independence(&curve, &md(&[2, 2]));
}

/// A random pointed grading with k <= 2 and at most 3 variables.
fn random_grading(rng: &mut ChaCha8Rng) -> Arc<Grading> {
    loop {
        let k = rng.gen_range(1..=2usize);
        let n = rng.gen_range(1..=3usize);
        let mut a = vec![(0..n).map(|_| rng.gen_range(1..=3i64)).collect::<Vec<_>>()];
        if k == 2 {
            a.push((0..n).map(|_| rng.gen_range(-1..=2i64)).collect());
        }
        let names = (0..n).map(|i| format!("x{}", i + 1)).collect();
        if let Ok(g) = Grading::new(a, None, names) {
            return Arc::new(g);
        }
    }
}

/// A random homogeneous polynomial of degree `m`, if that graded piece is
/// nonzero.  The result may be zero.
fn random_homog(
    rng: &mut ChaCha8Rng,
    grading: &Arc<Grading>,
    m: &MultiDegree,
) -> Option<Polynomial> {
    let mons = grading.monomials_of_degree(m);
    if mons.is_empty() {
        return None;
    }
    let terms: Vec<(ExponentVector, Rat)> = mons
        .into_iter()
        .map(|alpha| (alpha, Rat::integer(rng.gen_range(-3..=3))))
        .collect();
    Some(Polynomial::from_terms(grading.clone(), terms))
}

/// A random nonzero homogeneous polynomial of positive degree.
fn random_nonzero_homog(rng: &mut ChaCha8Rng, grading: &Arc<Grading>) -> Polynomial {
    loop {
        let e = ExponentVector::new(
            (0..grading.nvars()).map(|_| rng.gen_range(0..=2)).collect(),
        );
        if e.is_zero() {
            continue;
        }
        let m = grading.degree_of(&e).unwrap();
        if let Some(p) = random_homog(rng, grading, &m) {
            if !p.is_zero() {
                return p;
            }
        }
    }
}

fn random_generator(rng: &mut ChaCha8Rng, grading: &Arc<Grading>) -> Polynomial {
    random_nonzero_homog(rng, grading)
}

/// A random functional of a random realized degree; may be zero.
fn random_functional(rng: &mut ChaCha8Rng, grading: &Arc<Grading>) -> Functional {
    let e = ExponentVector::new(
        (0..grading.nvars()).map(|_| rng.gen_range(0..=3)).collect(),
    );
    let m = grading.degree_of(&e).unwrap();
    let terms: Vec<(ExponentVector, Rat)> = grading
        .monomials_of_degree(&m)
        .into_iter()
        .map(|alpha| (alpha, Rat::integer(rng.gen_range(-3..=3))))
        .collect();
    Functional::new(grading, m, terms).unwrap()
}

/// The graded piece of the ideal spanned by `gens` at degree `m`, as a
/// subspace of coefficient vectors over `ambient`.
fn ideal_piece(
    grading: &Arc<Grading>,
    gens: &[Polynomial],
    m: &MultiDegree,
    ambient: &Arc<Vec<ExponentVector>>,
) -> Subspace {
    let index: HashMap<&ExponentVector, usize> =
        ambient.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut rows = Vec::new();
    for f in gens {
        let shift = m - &f.homogeneous_degree().unwrap();
        if !grading.in_weight_semigroup(&shift) {
            continue;
        }
        for beta in grading.monomials_of_degree(&shift) {
            let product = &Polynomial::monomial(grading.clone(), beta, Rat::one()) * f;
            let mut row = vec![Rat::zero(); ambient.len()];
            for (alpha, coeff) in product.terms() {
                row[index[alpha]] = coeff.clone();
            }
            rows.push(row);
        }
    }
    Subspace::from_rows(ambient.clone(), rows)
}

/// On a random pair of ideals, degree by degree: the dual of the sum is
/// the intersection of the duals, and the dual of the degreewise ideal
/// intersection is the sum of the duals (checked against independently
/// built ideal pieces, including full annihilation).
fn sum_and_intersection_identities(rng: &mut ChaCha8Rng, case: usize) {
    let grading = random_grading(rng);
    let n = grading.nvars();
    let gens_i: Vec<Polynomial> = (0..rng.gen_range(1..=2))
        .map(|_| random_generator(rng, &grading))
        .collect();
    let gens_j: Vec<Polynomial> = (0..rng.gen_range(1..=2))
        .map(|_| random_generator(rng, &grading))
        .collect();
    let mut both = gens_i.clone();
    both.extend(gens_j.iter().cloned());

    let mut table_i = DualTable::new(GradedIdeal::new(grading.clone(), gens_i.clone()).unwrap());
    let mut table_j = DualTable::new(GradedIdeal::new(grading.clone(), gens_j.clone()).unwrap());
    let mut table_sum = DualTable::new(GradedIdeal::new(grading.clone(), both).unwrap());

    let bound = grading.degree_of(&ev(&vec![2; n])).unwrap();
    for m in grading.lattice_points_below(&bound).unwrap() {
        let d_i = table_i.dual_space(&m).unwrap().to_subspace();
        let d_j = table_j.dual_space(&m).unwrap().to_subspace();
        let d_sum = table_sum.dual_space(&m).unwrap().to_subspace();
        assert_eq!(
            d_sum,
            d_i.intersect(&d_j).unwrap(),
            "case {case}: dual of the ideal sum at {m}"
        );

        let ambient = table_i.ambient_basis(&m);
        let piece = ideal_piece(&grading, &gens_i, &m, &ambient)
            .intersect(&ideal_piece(&grading, &gens_j, &m, &ambient))
            .unwrap();
        let duals = d_i.sum(&d_j).unwrap();
        assert_eq!(
            duals.dim(),
            ambient.len() - piece.dim(),
            "case {case}: dual of the degreewise intersection at {m}"
        );
        for r in 0..duals.basis_matrix().rows() {
            let f = Functional::from_coordinates(m.clone(), &ambient, duals.basis_matrix().row(r));
            for q in 0..piece.basis_matrix().rows() {
                let row = piece.basis_matrix().row(q);
                let p = Polynomial::from_terms(
                    grading.clone(),
                    ambient.iter().zip(row).map(|(a, c)| (a.clone(), c.clone())),
                );
                assert!(
                    f.eval(&p).is_zero(),
                    "case {case}: functional fails to annihilate the intersection at {m}"
                );
            }
        }
    }
}

/// A linear extension of the cone order that picks the last admissible
/// degree at every step, so it differs from the default whenever the
/// interval has incomparable degrees.
fn reverse_extension(grading: &Grading, m: &MultiDegree) -> Vec<MultiDegree> {
    let mut remaining = grading.lattice_points_below(m).unwrap();
    let mut placed: Vec<MultiDegree> = Vec::new();
    let mut placed_set: std::collections::HashSet<MultiDegree> =
        std::collections::HashSet::new();
    while !remaining.is_empty() {
        let idx = remaining
            .iter()
            .rposition(|s| {
                (0..grading.nvars()).all(|i| {
                    let pred = s - &grading.var_degree(i);
                    !grading.in_weight_semigroup(&pred) || placed_set.contains(&pred)
                })
            })
            .expect("a pointed cone order always has a next degree");
        let s = remaining.remove(idx);
        placed_set.insert(s.clone());
        placed.push(s);
    }
    placed
}

/// The dual space at `m` must not depend on which linear extension the
/// walk uses.
fn extension_independence(ideal: &GradedIdeal, m: &MultiDegree) {
    let grading = ideal.grading().clone();
    let mut walked = DualTable::new(ideal.clone());
    let expected = walked.dual_space(m).unwrap().clone();

    let order = reverse_extension(&grading, m);
    let mut swept = DualTable::new(ideal.clone());
    swept.compute_along(&order).unwrap();
    assert_eq!(swept.entry(m), Some(&expected));
}

/// The bigraded parameter-geography system: two seeded bidegree-(1,4)
/// forms on P^1 x P^2, a seeded generic (0,1) slice, and the coordinate
/// product u*v used to saturate the axes away.
#[cfg(feature = "heavy")]
fn geography_system(seed: u64) -> (Arc<Grading>, GradedIdeal, Polynomial) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = move || Rat::new(rng.gen_range(1..=9), rng.gen_range(1..=9));
    let names = ["s", "tt", "u", "v", "w"].iter().map(|x| x.to_string()).collect();
    let a = vec![vec![1, 1, 0, 0, 0], vec![0, 0, 1, 1, 1]];
    let grading = Arc::new(Grading::new(a, None, names).unwrap());

    let th: Vec<Rat> = (0..8).map(|_| draw()).collect();
    let (t1, t2, t3, t4, t5, t6, t7, t8) = (
        th[0].clone(),
        th[1].clone(),
        th[2].clone(),
        th[3].clone(),
        th[4].clone(),
        th[5].clone(),
        th[6].clone(),
        th[7].clone(),
    );
    let one = Rat::one();

    // Exponents are [s, tt, u, v, w]; a dehomogenized monomial
    // sigma^a u^b v^c becomes tt^(1-a) w^(4-b-c) times itself.
    let hom = |a: u32, b: u32, c: u32| [a, 1 - a, b, c, 4 - b - c];
    let mono = |coeff: Rat, e: [u32; 5]| {
        Polynomial::monomial(grading.clone(), ExponentVector::new(e.to_vec()), coeff)
    };
    let build = |terms: Vec<(Rat, [u32; 5])>| {
        terms
            .into_iter()
            .fold(Polynomial::zero(grading.clone()), |acc, (c, e)| &acc + &mono(c, e))
    };

    let phi1 = build(vec![
        (t1.clone(), hom(0, 0, 2)),
        (one.clone(), hom(0, 1, 1)),
        (t2.clone(), hom(0, 2, 0)),
        (&(&(&t1 * &t3) - &t1) + &t7, hom(0, 1, 2)),
        (-&(&t1 * &t3), hom(1, 1, 2)),
        (&(&t4 - &one) + &(&t2 * &t8), hom(0, 2, 1)),
        (-&t4, hom(1, 2, 1)),
        (&(&t2 * &t5) - &t2, hom(0, 3, 0)),
        (-&(&t2 * &t5), hom(1, 3, 0)),
        (&t1 * &t6, hom(0, 0, 3)),
        (-&(&(&t1 * &t3) + &t7), hom(0, 2, 2)),
        (-&(&t4 + &(&t2 * &t8)), hom(0, 3, 1)),
        (-&(&t2 * &t5), hom(0, 4, 0)),
        (-&(&t1 * &t6), hom(0, 1, 3)),
    ]);
    let phi2 = build(vec![
        (t1.clone(), hom(0, 0, 2)),
        (one.clone(), hom(0, 1, 1)),
        (t2.clone(), hom(0, 2, 0)),
        (-&t1, hom(0, 0, 3)),
        (&(&t7 - &one) + &(&t1 * &t3), hom(0, 1, 2)),
        (-&t7, hom(1, 1, 2)),
        (&(&(&t2 * &t8) - &t2) + &t4, hom(0, 2, 1)),
        (-&(&t2 * &t8), hom(1, 2, 1)),
        (&t2 * &t5, hom(0, 3, 0)),
        (-&(&(&t1 * &t3) + &t7), hom(0, 1, 3)),
        (-&(&t4 + &(&t2 * &t8)), hom(0, 2, 2)),
        (-&(&t2 * &t5), hom(0, 3, 1)),
        (-&(&t1 * &t6), hom(0, 0, 4)),
    ]);
    assert_eq!(phi1.homogeneous_degree().unwrap(), md(&[1, 4]));
    assert_eq!(phi2.homogeneous_degree().unwrap(), md(&[1, 4]));

    let ell = &(&Polynomial::var(grading.clone(), 2).scale(&draw())
        + &Polynomial::var(grading.clone(), 3).scale(&draw()))
        + &Polynomial::var(grading.clone(), 4).scale(&draw());
    let sliced = GradedIdeal::new(grading.clone(), vec![phi1, phi2, ell]).unwrap();
    let axes = &Polynomial::var(grading.clone(), 2) * &Polynomial::var(grading.clone(), 3);
    (grading, sliced, axes)
}

/// Slicing the parameter-geography curve with a seeded generic (0,1) form
/// reproduces the frozen 11x11 table; two quotients by u*v reproduce the
/// frozen intermediate table; the window-stabilized saturation needs three
/// and its diagonal settles at 7 from (3,3) on.
#[cfg(feature = "heavy")]
fn geography_diagonal() {
    const SLICED: [[usize; 11]; 11] = [
        [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
        [2, 4, 6, 8, 8, 8, 8, 8, 8, 8, 8],
        [3, 6, 9, 12, 11, 10, 9, 8, 8, 8, 8],
        [4, 8, 12, 16, 14, 12, 10, 8, 8, 8, 8],
        [5, 10, 15, 20, 17, 14, 11, 8, 8, 8, 8],
        [6, 12, 18, 24, 20, 16, 12, 8, 8, 8, 8],
        [7, 14, 21, 28, 23, 18, 13, 8, 8, 8, 8],
        [8, 16, 24, 32, 26, 20, 14, 8, 8, 8, 8],
        [9, 18, 27, 36, 29, 22, 15, 8, 8, 8, 8],
        [10, 20, 30, 40, 32, 24, 16, 8, 8, 8, 8],
        [11, 22, 33, 44, 35, 26, 17, 8, 8, 8, 8],
    ];
    const TWO_QUOTIENTS: [[usize; 7]; 7] = [
        [1, 2, 3, 4, 5, 6, 7],
        [2, 4, 6, 7, 7, 7, 7],
        [3, 6, 8, 7, 7, 7, 7],
        [4, 8, 9, 7, 7, 7, 7],
        [5, 10, 10, 7, 7, 7, 7],
        [6, 12, 11, 7, 7, 7, 7],
        [7, 14, 12, 7, 7, 7, 7],
    ];
    const SATURATED: [[usize; 7]; 7] = [
        [1, 2, 3, 4, 5, 6, 7],
        [2, 4, 6, 7, 7, 7, 7],
        [3, 6, 7, 7, 7, 7, 7],
        [4, 7, 7, 7, 7, 7, 7],
        [5, 7, 7, 7, 7, 7, 7],
        [6, 7, 7, 7, 7, 7, 7],
        [7, 7, 7, 7, 7, 7, 7],
    ];

    let (_, sliced, axes) = geography_system(5);

    let mut table = DualTable::new(sliced.clone());
    for (i, row) in SLICED.iter().enumerate() {
        for (j, expected) in row.iter().enumerate() {
            let m = md(&[i as i64, j as i64]);
            assert_eq!(table.hilbert(&m).unwrap(), *expected, "sliced table at {m}");
        }
    }

    let mut two = DualPresentation::quotient_by_poly(
        DualPresentation::quotient_by_poly(
            DualPresentation::of_ideal(sliced.clone()),
            axes.clone(),
        )
        .unwrap(),
        axes.clone(),
    )
    .unwrap();
    for (i, row) in TWO_QUOTIENTS.iter().enumerate() {
        for (j, expected) in row.iter().enumerate() {
            let m = md(&[i as i64, j as i64]);
            assert_eq!(two.hilbert(&m).unwrap(), *expected, "second quotient at {m}");
        }
    }

    let window = DegreeRegion::Below(md(&[6, 6]));
    let (mut sat, steps) =
        saturate(DualPresentation::of_ideal(sliced), vec![axes], &window).unwrap();
    assert_eq!(steps, 3, "the quotient chain must stabilize after three steps");
    for (i, row) in SATURATED.iter().enumerate() {
        for (j, expected) in row.iter().enumerate() {
            let m = md(&[i as i64, j as i64]);
            assert_eq!(sat.hilbert(&m).unwrap(), *expected, "saturated table at {m}");
        }
    }
    for i in 3..=6i64 {
        assert_eq!(sat.hilbert(&md(&[i, i])).unwrap(), 7, "diagonal at ({i},{i})");
    }
}
