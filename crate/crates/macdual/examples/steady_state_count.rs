//! Steady-state degree of the one-site phosphorylation cycle.
//!
//! The steady-state system of this reaction network has three conservation
//! relations and four rate equations in six species concentrations.  After
//! homogenizing by t, the saturation (I : t^infinity) removes the solutions
//! at infinity, and the stable value of its Hilbert function counts the
//! complex steady states for generic rate constants and totals: three.
//!
//! The rate constants are drawn as random small rationals from a seeded
//! generator; any generic choice gives the same integer tables.

use std::sync::Arc;

use macdual::algebra::{Polynomial, Rat};
use macdual::dual::{DegreeRegion, GradedIdeal};
use macdual::grading::{Grading, MultiDegree};
use macdual::idealops::{saturate, DualPresentation};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(rng.gen_range(1..=9), rng.gen_range(1..=9))
}

/// The homogenized steady-state ideal: three linear conservation relations
/// and four quadratic mass-action equations in the species
/// E, F, S0, S1, X1, Y1 plus the homogenizing variable t.
fn phosphorylation_ideal(seed: u64) -> GradedIdeal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = ["xE", "xF", "xS0", "xS1", "xX1", "xY1", "t"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let grading = Arc::new(Grading::new(vec![vec![1; 7]], None, names).unwrap());

    let c_e = small_rat(&mut rng);
    let c_f = small_rat(&mut rng);
    let c_s0 = small_rat(&mut rng);
    let c_s1 = small_rat(&mut rng);
    let c_x1 = small_rat(&mut rng);
    let c_y1 = small_rat(&mut rng);
    let k01 = small_rat(&mut rng);
    let k10 = small_rat(&mut rng);
    let k12 = small_rat(&mut rng);
    let k34 = small_rat(&mut rng);
    let k43 = small_rat(&mut rng);
    let k45 = small_rat(&mut rng);

    let var = |i: usize| Polynomial::var(grading.clone(), i);
    let (xe, xf, xs0, xs1, xx1, xy1, t) =
        (var(0), var(1), var(2), var(3), var(4), var(5), var(6));

    let conservation_e = &(&xe + &xx1) - &t.scale(&(&c_e + &c_x1));
    let conservation_f = &(&xf + &xy1) - &t.scale(&(&c_f + &c_y1));
    let conservation_s = &(&(&(&xs0 + &xs1) - &xe) - &xf)
        - &t.scale(&(&(&(&c_s0 + &c_s1) - &c_e) - &c_f));

    let s0_e = &xs0 * &xe;
    let s1_f = &xs1 * &xf;
    let x1_t = &xx1 * &t;
    let y1_t = &xy1 * &t;
    let rate_s0 = &(&s0_e.scale(&-&k01) + &x1_t.scale(&k10)) + &y1_t.scale(&k45);
    let rate_s1 = &(&s1_f.scale(&-&k34) + &x1_t.scale(&k12)) + &y1_t.scale(&k43);
    let rate_x1 = &s0_e.scale(&k01) - &x1_t.scale(&(&k10 + &k12));
    let rate_y1 = &s1_f.scale(&k34) - &y1_t.scale(&(&k43 + &k45));

    GradedIdeal::new(
        grading,
        vec![
            conservation_e,
            conservation_f,
            conservation_s,
            rate_s0,
            rate_s1,
            rate_x1,
            rate_y1,
        ],
    )
    .unwrap()
}

fn main() {
    let seed = 11;
    let ideal = phosphorylation_ideal(seed);
    let grading = ideal.grading().clone();
    println!("seed {seed}: {} generators", ideal.generators().len());

    let mut base = DualPresentation::of_ideal(ideal.clone());
    let h: Vec<usize> = (0..=10)
        .map(|m| base.hilbert(&MultiDegree::new(vec![m])).unwrap())
        .collect();
    println!("H_I(0..10)          = {h:?}");

    let t = Polynomial::var(grading, 6);
    let window = DegreeRegion::Below(MultiDegree::new(vec![6]));
    let (mut at_infinity_removed, steps) =
        saturate(DualPresentation::of_ideal(ideal), vec![t], &window).unwrap();
    let h: Vec<usize> = (0..=6)
        .map(|m| at_infinity_removed.hilbert(&MultiDegree::new(vec![m])).unwrap())
        .collect();
    println!("H_(I:t^inf)(0..6)   = {h:?}   (stabilized at p = {steps})");
    println!("steady-state degree = {}", h[6]);
}
