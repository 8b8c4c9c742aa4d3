//! Dual spaces of a point sitting on a parabola, weighted so that the
//! parabola relation is homogeneous.
//!
//! The ring is Q[x1, x2] with deg x1 = 1 and deg x2 = 2, and the ideal is
//! I = <29/16*x1^3 - 2*x1*x2, x2 - x1^2>.  Its zero locus is a single point
//! of multiplicity 3, which the truncated Hilbert function recovers once
//! the bound passes the top of the support.

use std::sync::Arc;

use macdual::dual::{DegreeRegion, DualTable, GradedIdeal};
use macdual::grading::{Grading, MultiDegree};
use macdual::idealops::{multiplicity, DualPresentation};
use macdual::io::{emit, parse};

fn main() {
    let names = vec!["x1".to_string(), "x2".to_string()];
    let grading = Arc::new(Grading::new(vec![vec![1, 2]], None, names).unwrap());

    let f1 = parse::polynomial(&grading, "29/16*x1^3 - 2*x1*x2", 0).unwrap();
    let f2 = parse::polynomial(&grading, "x2 - x1^2", 0).unwrap();
    let ideal = GradedIdeal::new(grading.clone(), vec![f1, f2]).unwrap();

    let bound = MultiDegree::new(vec![4]);
    let mut table = DualTable::new(ideal.clone());
    let values = table.hilbert_table(&DegreeRegion::Below(bound.clone())).unwrap();
    println!("Hilbert function of I below degree 4:");
    print!("{}", emit::render_hilbert_table(&grading, &values, &bound).unwrap());

    let degree = MultiDegree::new(vec![2]);
    println!("\nbasis of the degree-2 dual space:");
    for f in table.dual_space(&degree).unwrap().basis_functionals(&degree) {
        println!("  {f}");
    }

    let mut pres = DualPresentation::of_ideal(ideal);
    let (total, complete) = multiplicity(&mut pres, &bound).unwrap();
    println!("\nmultiplicity below 4: {total} (complete: {complete})");

    let small_bound = MultiDegree::new(vec![2]);
    let (total, complete) = multiplicity(&mut pres, &small_bound).unwrap();
    println!("multiplicity below 2: {total} (complete: {complete})");
}
