//! Problem files, their parser and emitter, and the command-line front end.
//!
//! A problem file declares a polynomial ring with its grading, names some
//! ideals, and optionally lists queries to run against them.  [`ProblemFile`]
//! is the parsed form; [`parse`] and [`emit`] convert between it and text,
//! and [`cli`] drives the whole pipeline from command-line arguments.

pub mod cli;
pub mod emit;
pub mod parse;

use std::sync::Arc;

use crate::algebra::Polynomial;
use crate::dual::GradedIdeal;
use crate::grading::{Grading, MultiDegree};
use crate::{Error, Result};

/// A parsed problem file: the graded ring, named ideals in declaration
/// order, and any queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub grading: Arc<Grading>,
    pub ideals: Vec<(String, Vec<Polynomial>)>,
    pub queries: Vec<Query>,
}

/// One query line from a problem file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    /// Hilbert function on the region below a degree.
    Hilbert { ideal: String, below: MultiDegree },
    /// Does a polynomial lie in the ideal?
    Member { ideal: String, poly: Polynomial },
    /// Colon ideal, tabulated below a degree.
    Quotient { ideal: String, by: QuotientBy, max_degree: MultiDegree },
    /// Saturation, with stabilization judged on the window below a degree.
    Saturate { ideal: String, by: String, window: MultiDegree },
    /// Multiplicity from the Hilbert values below a degree.
    Multiplicity { ideal: String, bound: MultiDegree },
}

/// The divisor of a quotient query: a named ideal or a single polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientBy {
    Ideal(String),
    Poly(Polynomial),
}

impl ProblemFile {
    /// Parses problem-file text.
    pub fn parse(text: &str) -> Result<Self> {
        parse::problem(text)
    }

    /// Renders the problem back to text; see [`emit::problem`].
    pub fn emit(&self) -> String {
        emit::problem(self)
    }

    /// The generators of a named ideal, if declared.
    pub fn ideal_generators(&self, name: &str) -> Option<&[Polynomial]> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, gens)| gens.as_slice())
    }

    /// Builds the graded ideal for a declared name, reporting which
    /// generator is at fault when one is rejected.
    pub fn graded_ideal(&self, name: &str) -> Result<GradedIdeal> {
        let gens = self.ideal_generators(name).ok_or_else(|| Error::Parse {
            line: 0,
            col: 0,
            msg: format!("unknown ideal `{name}`"),
        })?;
        for (index, gen) in gens.iter().enumerate() {
            if let Err(e) = check_generator(gen) {
                return Err(Error::NonHomogeneousGenerator {
                    ideal: name.to_string(),
                    index,
                    detail: e.to_string(),
                });
            }
        }
        GradedIdeal::new(self.grading.clone(), gens.to_vec())
    }
}

fn check_generator(gen: &Polynomial) -> Result<()> {
    let degree = gen.homogeneous_degree()?;
    if degree.is_zero() {
        return Err(Error::DegreeZeroGenerator);
    }
    Ok(())
}
