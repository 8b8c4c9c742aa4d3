//! Gradings, weight cones, and lattice-point walks.
//!
//! A Z^k-grading is a k x n integer matrix A; the degrees of monomials live
//! in the cone spanned by A's columns, described by a matrix B of inward
//! facet normals.  B is derived from A when the cone is full-dimensional
//! and pointed, or can be passed explicitly.  Comparisons, enumeration, and
//! the order in which dual spaces must be computed all flow from B.

use std::sync::Arc;

use macdual::grading::{ExponentVector, Grading, MultiDegree};

fn main() {
    let names = ["x1", "x2", "x3", "x4"].iter().map(|s| s.to_string()).collect();
    let a = vec![vec![1, 0, 1, 0], vec![-2, 1, 0, 1]];
    let grading = Arc::new(Grading::new(a, None, names).unwrap());
    println!("A = {:?}", grading.a_matrix());
    println!("derived cone matrix B = {:?}", grading.b_matrix());

    let inside = MultiDegree::new(vec![1, -2]);
    let outside = MultiDegree::new(vec![0, -1]);
    println!(
        "\n{inside} in the weight semigroup: {}",
        grading.in_weight_semigroup(&inside)
    );
    println!(
        "{outside} in the weight semigroup: {}",
        grading.in_weight_semigroup(&outside)
    );

    let bound = MultiDegree::new(vec![1, 1]);
    let below = grading.lattice_points_below(&bound).unwrap();
    println!("\nlattice points s with s <= {bound} in the cone order:");
    println!("  {below:?}");

    println!("\nmonomials at each such degree:");
    for degree in grading.sort_lattice_points(&bound).unwrap() {
        let monomials: Vec<String> = grading
            .monomials_of_degree(&degree)
            .iter()
            .map(|alpha| monomial_name(&grading, alpha))
            .collect();
        println!("  {degree}: {}", monomials.join(", "));
    }
}

fn monomial_name(grading: &Grading, alpha: &ExponentVector) -> String {
    let mut parts = Vec::new();
    for (i, &e) in alpha.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(grading.var_name(i).to_string()),
            _ => parts.push(format!("{}^{e}", grading.var_name(i))),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}
