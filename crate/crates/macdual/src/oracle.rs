//! Independent cross-checks computed from multiplication maps alone.
//!
//! Everything here works directly with the graded pieces of an ideal: the
//! degree-`m` piece is spanned by the shifts `x^beta * f` of the generators,
//! and dimensions, membership, and quotients reduce to ranks and kernels of
//! explicit matrices over those spans.  No code from the dual-space walk is
//! used, so agreement between the two paths checks the walk end to end.

use std::collections::HashMap;

use crate::algebra::{Matrix, Polynomial, Rat, RowReducer};
use crate::grading::{ExponentVector, Grading, MultiDegree};
use crate::{Error, Result};

/// Row-reduced basis of the degree-`m` piece of the ideal, as coordinate
/// rows over the canonical monomial basis of the graded piece.
fn ideal_piece(
    grading: &Grading,
    generators: &[Polynomial],
    m: &MultiDegree,
) -> Result<(Vec<ExponentVector>, RowReducer)> {
    let ambient = grading.monomials_of_degree(m);
    let index: HashMap<&ExponentVector, usize> =
        ambient.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut reducer = RowReducer::new(ambient.len());
    for f in generators {
        let degree = f.homogeneous_degree()?;
        let shift = m - &degree;
        if !grading.in_weight_semigroup(&shift) {
            continue;
        }
        for beta in grading.monomials_of_degree(&shift) {
            let mut row = vec![Rat::zero(); ambient.len()];
            for (alpha, coeff) in f.terms() {
                row[index[&alpha.add(&beta)]] = coeff.clone();
            }
            reducer.insert(row);
        }
    }
    Ok((ambient, reducer))
}

/// The value of the graded Hilbert function at `m`, computed as the
/// codimension of the ideal's degree-`m` piece.
pub fn oracle_hilbert(
    grading: &Grading,
    generators: &[Polynomial],
    m: &MultiDegree,
) -> Result<usize> {
    if !grading.in_weight_semigroup(m) {
        return Err(Error::NotInSemigroup(m.clone()));
    }
    let (ambient, reducer) = ideal_piece(grading, generators, m)?;
    Ok(ambient.len() - reducer.rank())
}

/// Whether `g` lies in the ideal, decided by reducing `g` against a basis
/// of the ideal's piece in the degree of `g`.  The zero polynomial is a
/// member of every ideal.
pub fn oracle_membership(
    grading: &Grading,
    generators: &[Polynomial],
    g: &Polynomial,
) -> Result<bool> {
    if g.is_zero() {
        return Ok(true);
    }
    let degree = g.homogeneous_degree()?;
    let (ambient, reducer) = ideal_piece(grading, generators, &degree)?;
    let index: HashMap<&ExponentVector, usize> =
        ambient.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut row = vec![Rat::zero(); ambient.len()];
    for (alpha, coeff) in g.terms() {
        row[index[alpha]] = coeff.clone();
    }
    Ok(reducer.reduces_to_zero(&row))
}

/// The Hilbert function of the quotient `(I : J^power)` at `m`, where `I`
/// is spanned by `generators` and `J` by `by`.  A polynomial `h` of degree
/// `m` lies in the quotient when every product of `power` elements of `by`
/// multiplies `h` into `I`; each such condition is the kernel of an
/// annihilator of the ideal piece composed with a multiplication matrix.
pub fn oracle_quotient_hilbert(
    grading: &Grading,
    generators: &[Polynomial],
    by: &[Polynomial],
    power: u32,
    m: &MultiDegree,
) -> Result<usize> {
    assert!(power >= 1, "quotient power must be positive");
    assert!(!by.is_empty(), "quotient needs at least one polynomial");
    if !grading.in_weight_semigroup(m) {
        return Err(Error::NotInSemigroup(m.clone()));
    }
    let ambient = grading.monomials_of_degree(m);
    let n = ambient.len();
    if n == 0 {
        return Ok(0);
    }
    let index: HashMap<&ExponentVector, usize> =
        ambient.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut stacked: Vec<Vec<Rat>> = Vec::new();
    for q in multiset_products(by, power)? {
        let qdeg = q.homogeneous_degree()?;
        let target = m + &qdeg;
        let (target_ambient, reducer) = ideal_piece(grading, generators, &target)?;
        let span = reducer.into_matrix();
        let annihilator = span.kernel();
        let target_index: HashMap<&ExponentVector, usize> = target_ambient
            .iter()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        let mut mul = Matrix::zero(target_ambient.len(), n);
        for (alpha, idx) in &index {
            for (gamma, coeff) in q.terms() {
                let row = target_index[&alpha.add(gamma)];
                mul.set(row, *idx, coeff.clone());
            }
        }
        let composed = annihilator.mul(&mul);
        for r in 0..composed.rows() {
            stacked.push(composed.row(r).to_vec());
        }
    }
    let constraints = Matrix::from_rows(n, stacked);
    let quotient_dim = constraints.kernel().rows();
    Ok(n - quotient_dim)
}

/// All products of `power` factors drawn from `polys` with repetition.
fn multiset_products(polys: &[Polynomial], power: u32) -> Result<Vec<Polynomial>> {
    fn extend(
        polys: &[Polynomial],
        start: usize,
        remaining: u32,
        current: &Polynomial,
        out: &mut Vec<Polynomial>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for i in start..polys.len() {
            let next = current * &polys[i];
            extend(polys, i, remaining - 1, &next, out);
        }
    }
    for p in polys {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
    }
    let one = Polynomial::constant(polys[0].grading().clone(), Rat::one());
    let mut out = Vec::new();
    extend(polys, 0, power, &one, &mut out);
    Ok(out)
}
