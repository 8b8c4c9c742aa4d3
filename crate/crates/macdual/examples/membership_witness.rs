//! Ideal membership with dual-space witnesses.
//!
//! A polynomial lies in a homogeneous ideal exactly when every dual
//! functional of its degree annihilates it, so a failed membership test
//! can hand back the functional that separates the polynomial from the
//! ideal.  Containment of ideals reduces to membership of generators.

use std::sync::Arc;

use macdual::dual::GradedIdeal;
use macdual::grading::Grading;
use macdual::idealops::{contains, membership, DualPresentation, Membership};
use macdual::io::parse;

fn main() {
    let names = vec!["x1".to_string(), "x2".to_string()];
    let grading = Arc::new(Grading::new(vec![vec![1, 2]], None, names).unwrap());

    let point = GradedIdeal::new(
        grading.clone(),
        vec![
            parse::polynomial(&grading, "29/16*x1^3 - 2*x1*x2", 0).unwrap(),
            parse::polynomial(&grading, "x2 - x1^2", 0).unwrap(),
        ],
    )
    .unwrap();
    let fat = GradedIdeal::new(
        grading.clone(),
        vec![
            parse::polynomial(&grading, "x2 - x1^2", 0).unwrap(),
            parse::polynomial(&grading, "x2^2", 0).unwrap(),
        ],
    )
    .unwrap();

    let mut fat_dual = DualPresentation::of_ideal(fat.clone());
    for text in ["x2", "x2 - x1^2", "x2^2 + x1^2*x2 - x1^4", "0"] {
        let g = parse::polynomial(&grading, text, 0).unwrap();
        match membership(&mut fat_dual, &g).unwrap() {
            Membership::Member => println!("{text:<24} is in the ideal"),
            Membership::NotMember { witness } => {
                println!("{text:<24} is NOT in the ideal; witness {witness}");
            }
        }
    }

    let mut point_dual = DualPresentation::of_ideal(point.clone());
    println!(
        "\nfat point ideal inside point ideal: {}",
        contains(&mut point_dual, &fat).unwrap()
    );
    println!(
        "point ideal inside fat point ideal: {}",
        contains(&mut fat_dual, &point).unwrap()
    );
}
