//! Multivariate polynomials with rational coefficients under a shared grading.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::rat::Rat;
use crate::grading::{ExponentVector, Grading, MultiDegree};
use crate::{Error, Result};

/// A polynomial stored as a sparse map from exponent vectors to nonzero
/// coefficients.  Every polynomial carries the grading of its ring so that
/// degrees and homogeneity are always well defined.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    grading: Arc<Grading>,
    terms: BTreeMap<ExponentVector, Rat>,
}

impl Polynomial {
    pub fn zero(grading: Arc<Grading>) -> Self {
        Polynomial { grading, terms: BTreeMap::new() }
    }

    pub fn constant(grading: Arc<Grading>, value: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(ExponentVector::zero(grading.nvars()), value);
        }
        Polynomial { grading, terms }
    }

    /// The single term `coeff * x^alpha`.
    pub fn monomial(grading: Arc<Grading>, alpha: ExponentVector, coeff: Rat) -> Self {
        assert_eq!(alpha.len(), grading.nvars(), "exponent length differs from grading");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(alpha, coeff);
        }
        Polynomial { grading, terms }
    }

    /// The variable `x_i`.
    pub fn var(grading: Arc<Grading>, i: usize) -> Self {
        let alpha = ExponentVector::unit(grading.nvars(), i);
        Polynomial::monomial(grading, alpha, Rat::one())
    }

    pub fn from_terms(
        grading: Arc<Grading>,
        terms: impl IntoIterator<Item = (ExponentVector, Rat)>,
    ) -> Self {
        let mut poly = Polynomial::zero(grading);
        for (alpha, coeff) in terms {
            poly.add_term(alpha, coeff);
        }
        poly
    }

    fn add_term(&mut self, alpha: ExponentVector, coeff: Rat) {
        assert_eq!(alpha.len(), self.grading.nvars(), "exponent length differs from grading");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn grading(&self) -> &Arc<Grading> {
        &self.grading
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &ExponentVector) -> Rat {
        self.terms.get(alpha).cloned().unwrap_or_else(Rat::zero)
    }

    /// The lexicographically smallest exponent in the support.
    pub fn min_lex_exponent(&self) -> Option<&ExponentVector> {
        self.terms.keys().next()
    }

    pub fn scale(&self, factor: &Rat) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.grading.clone());
        }
        Polynomial {
            grading: self.grading.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), c * factor))
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.grading.clone(), Rat::one());
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|a| {
            self.grading.degree_of(a).expect("term lengths are checked on insert")
        });
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    /// The common degree of all terms.  Fails on the zero polynomial and on
    /// inhomogeneous ones.
    pub fn homogeneous_degree(&self) -> Result<MultiDegree> {
        let mut degrees: Vec<MultiDegree> = Vec::new();
        for alpha in self.terms.keys() {
            let d = self.grading.degree_of(alpha)?;
            if !degrees.contains(&d) {
                degrees.push(d);
            }
        }
        match degrees.len() {
            0 => Err(Error::ZeroPolynomial),
            1 => Ok(degrees.pop().expect("just checked")),
            _ => {
                let listed: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
                Err(Error::NotHomogeneous(format!(
                    "terms of degrees {}",
                    listed.join(", ")
                )))
            }
        }
    }

    fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.grading, &other.grading) || self.grading == other.grading
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.same_ring(rhs), "polynomials use different gradings");
        let mut out = self.clone();
        for (alpha, coeff) in &rhs.terms {
            out.add_term(alpha.clone(), coeff.clone());
        }
        out
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.same_ring(rhs), "polynomials use different gradings");
        let mut out = self.clone();
        for (alpha, coeff) in &rhs.terms {
            out.add_term(alpha.clone(), -coeff);
        }
        out
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rat::one())
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.same_ring(rhs), "polynomials use different gradings");
        let mut out = Polynomial::zero(self.grading.clone());
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&ExponentVector, &Rat)> = self.terms.iter().collect();
        ordered.sort_by(|x, y| x.0.canonical_cmp(y.0));
        for (pos, (alpha, coeff)) in ordered.into_iter().enumerate() {
            let negative = coeff.is_negative();
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = coeff.abs();
            let mut parts: Vec<String> = Vec::new();
            if !magnitude.is_one() || alpha.is_zero() {
                parts.push(magnitude.to_string());
            }
            for (i, &e) in alpha.exps().iter().enumerate() {
                if e == 1 {
                    parts.push(self.grading.var_name(i).to_string());
                } else if e > 1 {
                    parts.push(format!("{}^{}", self.grading.var_name(i), e));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
