//! Colon ideals and saturation through dual spaces.
//!
//! The quotient I : g acts on dual spaces by the backward-shift map, so its
//! Hilbert table never touches the quotient's own generators; everything is
//! read off from dual spaces of I at shifted degrees.  Saturation iterates
//! ideal quotients until the Hilbert values on a chosen window stop
//! changing.

use std::sync::Arc;

use macdual::dual::{DegreeRegion, GradedIdeal};
use macdual::grading::{Grading, MultiDegree};
use macdual::idealops::{elements_of_degree, required_work, saturate, DualPresentation};
use macdual::io::parse;

fn main() {
    let names = vec!["x1".to_string(), "x2".to_string()];
    let grading = Arc::new(Grading::new(vec![vec![1, 2]], None, names).unwrap());

    let fat = GradedIdeal::new(
        grading.clone(),
        vec![
            parse::polynomial(&grading, "x2 - x1^2", 0).unwrap(),
            parse::polynomial(&grading, "x2^2", 0).unwrap(),
        ],
    )
    .unwrap();

    let f1 = parse::polynomial(&grading, "29/16*x1^3 - 2*x1*x2", 0).unwrap();
    let mut quotient =
        DualPresentation::quotient_by_poly(DualPresentation::of_ideal(fat.clone()), f1).unwrap();
    let window = DegreeRegion::Below(MultiDegree::new(vec![3]));
    println!("H(J : f1) below 3:");
    for (m, dim) in quotient.hilbert_table(&window).unwrap() {
        println!("  H({m}) = {dim}");
    }
    println!("work needed: {}", required_work(&quotient, &window).unwrap());

    let standard = Arc::new(Grading::new(
        vec![vec![1, 1]],
        None,
        vec!["x1".to_string(), "x2".to_string()],
    )
    .unwrap());
    let line_with_dust = GradedIdeal::new(
        standard.clone(),
        vec![
            parse::polynomial(&standard, "x1^2", 0).unwrap(),
            parse::polynomial(&standard, "x1*x2", 0).unwrap(),
        ],
    )
    .unwrap();
    let origin = vec![
        parse::polynomial(&standard, "x1", 0).unwrap(),
        parse::polynomial(&standard, "x2", 0).unwrap(),
    ];

    let window = DegreeRegion::Below(MultiDegree::new(vec![3]));
    let (mut saturated, steps) =
        saturate(DualPresentation::of_ideal(line_with_dust), origin, &window).unwrap();
    println!("\nsaturating <x1^2, x1*x2> by <x1, x2>: stabilized after {steps} step(s)");
    for (m, dim) in saturated.hilbert_table(&window).unwrap() {
        println!("  H({m}) = {dim}");
    }
    println!(
        "degree-1 part of the saturation: {:?}",
        elements_of_degree(&mut saturated, &MultiDegree::new(vec![1])).unwrap()
    );
}
