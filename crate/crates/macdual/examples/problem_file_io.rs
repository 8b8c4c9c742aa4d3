//! Reading problem files and running their queries through the library.
//!
//! A problem file bundles a graded ring, named ideals, and a list of
//! queries.  This example parses one, executes each query, and prints the
//! canonical re-emission of the file (which parses back to an equal value).

use macdual::dual::{DegreeRegion, DualTable};
use macdual::idealops::{self, DualPresentation, Membership};
use macdual::io::{emit, ProblemFile, Query, QuotientBy};

const POINT: &str = include_str!("data/point.prob");

fn main() {
    let problem = ProblemFile::parse(POINT).unwrap();
    let grading = problem.grading.clone();
    println!(
        "parsed: {} variables, {} ideals, {} queries",
        grading.nvars(),
        problem.ideals.len(),
        problem.queries.len()
    );

    for query in &problem.queries {
        match query {
            Query::Hilbert { ideal, below } => {
                let mut table = DualTable::new(problem.graded_ideal(ideal).unwrap());
                let values = table.hilbert_table(&DegreeRegion::Below(below.clone())).unwrap();
                println!("\nhilbert {ideal} {below}:");
                print!("{}", emit::render_hilbert_table(&grading, &values, below).unwrap());
            }
            Query::Member { ideal, poly } => {
                let mut pres = DualPresentation::of_ideal(problem.graded_ideal(ideal).unwrap());
                println!("\nmember {ideal} {poly}:");
                match idealops::membership(&mut pres, poly).unwrap() {
                    Membership::Member => println!("member"),
                    Membership::NotMember { witness } => {
                        println!("not a member (witness {witness})")
                    }
                }
            }
            Query::Quotient { ideal, by, max_degree } => {
                let base = DualPresentation::of_ideal(problem.graded_ideal(ideal).unwrap());
                let mut pres = match by {
                    QuotientBy::Ideal(name) => DualPresentation::quotient_by_ideal(
                        base,
                        problem.ideal_generators(name).unwrap().to_vec(),
                    )
                    .unwrap(),
                    QuotientBy::Poly(p) => {
                        DualPresentation::quotient_by_poly(base, p.clone()).unwrap()
                    }
                };
                let values =
                    pres.hilbert_table(&DegreeRegion::Below(max_degree.clone())).unwrap();
                println!("\nquotient of {ideal} up to {max_degree}:");
                print!(
                    "{}",
                    emit::render_hilbert_table(&grading, &values, max_degree).unwrap()
                );
            }
            Query::Saturate { ideal, by, window } => {
                let base = DualPresentation::of_ideal(problem.graded_ideal(ideal).unwrap());
                let region = DegreeRegion::Below(window.clone());
                let (mut sat, steps) = idealops::saturate(
                    base,
                    problem.ideal_generators(by).unwrap().to_vec(),
                    &region,
                )
                .unwrap();
                let values = sat.hilbert_table(&region).unwrap();
                println!("\nsaturate {ideal} by {by} (stabilized at {steps}):");
                print!("{}", emit::render_hilbert_table(&grading, &values, window).unwrap());
            }
            Query::Multiplicity { ideal, bound } => {
                let mut pres = DualPresentation::of_ideal(problem.graded_ideal(ideal).unwrap());
                let (total, complete) = idealops::multiplicity(&mut pres, bound).unwrap();
                println!("\nmultiplicity {ideal} bound {bound}: {total} (complete: {complete})");
            }
        }
    }

    println!("\ncanonical form:\n{}", problem.emit());
    assert_eq!(ProblemFile::parse(&problem.emit()).unwrap(), problem);
}
