//! The Hilbert table of a curve on a Hirzebruch surface.
//!
//! The Cox ring of the Hirzebruch surface H_2 is Q[x1, x2, x3, x4] with a
//! Z^2-grading in which deg x1 = (1,-2), deg x2 = (0,1), deg x3 = (1,0),
//! deg x4 = (0,1).  The weight cone is not the positive quadrant, so the
//! cone matrix is passed explicitly.  The curve cut out by
//! x1^2*x2^6 + x1^2*x2^3*x4^3 - x3^2*x4^2 has degree (2,2); its Hilbert
//! table below (4,4) reproduces a 21-row grid whose dashes mark degrees
//! outside the comparison region, and whose diagonal grows linearly.

use std::sync::Arc;

use macdual::dual::{DegreeRegion, DualTable, GradedIdeal};
use macdual::grading::{Grading, MultiDegree};
use macdual::io::{emit, parse};

fn main() {
    let names = ["x1", "x2", "x3", "x4"].iter().map(|s| s.to_string()).collect();
    let a = vec![vec![1, 0, 1, 0], vec![-2, 1, 0, 1]];
    let b = vec![vec![1, 0], vec![2, 1]];
    let grading = Arc::new(Grading::new(a, Some(b), names).unwrap());

    let f = parse::polynomial(&grading, "x1^2*x2^6 + x1^2*x2^3*x4^3 - x3^2*x4^2", 0).unwrap();
    println!("deg f = {}", f.homogeneous_degree().unwrap());

    let ideal = GradedIdeal::new(grading.clone(), vec![f]).unwrap();
    let mut table = DualTable::new(ideal);

    let bound = MultiDegree::new(vec![4, 4]);
    let values = table.hilbert_table(&DegreeRegion::Below(bound.clone())).unwrap();
    println!("\nHilbert table below (4,4):");
    print!("{}", emit::render_hilbert_table(&grading, &values, &bound).unwrap());

    println!("\ndiagonal H(a,a):");
    for a in 0..=4i64 {
        let d = MultiDegree::new(vec![a, a]);
        println!("  H{d} = {}", table.hilbert(&d).unwrap());
    }
}
