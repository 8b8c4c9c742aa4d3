//! Macaulay dual spaces of graded ideals, computed degree by degree.
//!
//! A functional of degree `m` is a rational combination of the scaled
//! partial-derivative operators `d[alpha]` with `A*alpha = m`; evaluated at
//! the origin, `d[alpha]` extracts the coefficient of `x^alpha`.  The dual
//! space `D^m(I)` collects the degree-`m` functionals that annihilate every
//! element of `I`.
//!
//! The walk follows a linear extension of the weight-cone order.  At each
//! degree the dual space is cut out of the closedness subspace: a functional
//! lies in `D^m(I)` exactly when every anti-differentiation `phi_i` maps it
//! into the dual space one variable degree lower and it annihilates the
//! generators of degree `m`.  Rather than intersecting preimages in the
//! ambient coordinates, the solver parametrizes a candidate functional by
//! its images in the already-computed lower dual spaces plus one free
//! coordinate per monomial no constrained operator reaches, which keeps the
//! linear systems near the size of the answer instead of the ambient space.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{Matrix, Polynomial, Rat, RowReducer, Subspace};
use crate::grading::{ExponentVector, Grading, MultiDegree};
use crate::{Error, Result};

/// A homogeneous differential functional: a rational combination of the
/// operators `d[alpha]` over exponents of one common degree.
#[derive(Clone, PartialEq, Eq)]
pub struct Functional {
    degree: MultiDegree,
    terms: BTreeMap<ExponentVector, Rat>,
}

impl Functional {
    /// Builds a functional after checking that every exponent has the
    /// stated degree under `grading`.
    pub fn new(
        grading: &Grading,
        degree: MultiDegree,
        terms: impl IntoIterator<Item = (ExponentVector, Rat)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<ExponentVector, Rat> = BTreeMap::new();
        for (alpha, coeff) in terms {
            let d = grading.degree_of(&alpha)?;
            if d != degree {
                return Err(Error::NotHomogeneous(format!(
                    "operator d{alpha:?} has degree {d}, expected {degree}"
                )));
            }
            let entry = map.entry(alpha).or_insert_with(Rat::zero);
            *entry += &coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Functional { degree, terms: map })
    }

    /// The single operator `d[alpha]`.
    pub fn delta(grading: &Grading, alpha: ExponentVector) -> Result<Self> {
        let degree = grading.degree_of(&alpha)?;
        let mut terms = BTreeMap::new();
        terms.insert(alpha, Rat::one());
        Ok(Functional { degree, terms })
    }

    pub fn zero(degree: MultiDegree) -> Self {
        Functional { degree, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &ExponentVector) -> Rat {
        self.terms.get(alpha).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, factor: &Rat) -> Functional {
        if factor.is_zero() {
            return Functional::zero(self.degree.clone());
        }
        Functional {
            degree: self.degree.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c * factor)).collect(),
        }
    }

    /// Sum of two functionals of the same degree.
    pub fn add(&self, other: &Functional) -> Result<Functional> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "functional degrees {} and {} differ",
                self.degree, other.degree
            )));
        }
        let mut terms = self.terms.clone();
        for (alpha, coeff) in &other.terms {
            let entry = terms.entry(alpha.clone()).or_insert_with(Rat::zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Functional { degree: self.degree.clone(), terms })
    }

    /// Evaluates the functional at the origin: the pairing
    /// `sum_alpha c_alpha * (coefficient of x^alpha in g)`.
    pub fn eval(&self, g: &Polynomial) -> Rat {
        let mut acc = Rat::zero();
        for (alpha, coeff) in &self.terms {
            let ga = g.coefficient(alpha);
            if !ga.is_zero() {
                acc += &(coeff * &ga);
            }
        }
        acc
    }

    /// The coordinates of the functional in an ambient monomial list, or
    /// `None` when some term lies outside the list.
    pub fn coordinates(&self, ambient: &[ExponentVector]) -> Option<Vec<Rat>> {
        let index: HashMap<&ExponentVector, usize> =
            ambient.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mut v = vec![Rat::zero(); ambient.len()];
        for (alpha, coeff) in &self.terms {
            v[*index.get(alpha)?] = coeff.clone();
        }
        Some(v)
    }

    /// Reads a coordinate row of a subspace back as a functional.
    pub fn from_coordinates(
        degree: MultiDegree,
        ambient: &[ExponentVector],
        row: &[Rat],
    ) -> Functional {
        assert_eq!(ambient.len(), row.len(), "row length differs from ambient");
        let terms = ambient
            .iter()
            .zip(row)
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| (a.clone(), c.clone()))
            .collect();
        Functional { degree, terms }
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&ExponentVector, &Rat)> = self.terms.iter().collect();
        ordered.sort_by(|x, y| x.0.display_cmp(y.0));
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
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            let exps: Vec<String> = alpha.exps().iter().map(|e| e.to_string()).collect();
            write!(f, "d[{}]", exps.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Evaluates the scaled partial-derivative operator `d[alpha]` based at the
/// point `y` on `g`: each term `g_beta * x^beta` with `beta >= alpha`
/// contributes `g_beta * prod_i binom(beta_i, alpha_i) * y^(beta - alpha)`.
/// At `y = 0` this is the coefficient of `x^alpha` in `g`.
pub fn eval_partial(alpha: &ExponentVector, point: &[Rat], g: &Polynomial) -> Rat {
    assert_eq!(alpha.len(), point.len(), "point length differs from exponent");
    let mut acc = Rat::zero();
    for (beta, coeff) in g.terms() {
        let Some(gap) = beta.checked_sub(alpha) else { continue };
        let mut term = coeff.clone();
        for i in 0..alpha.len() {
            let b = binomial_rat(beta.get(i), alpha.get(i));
            term *= &b;
            if term.is_zero() {
                break;
            }
            term *= &rat_pow(&point[i], gap.get(i));
            if term.is_zero() {
                break;
            }
        }
        acc += &term;
    }
    acc
}

fn binomial_rat(n: u32, k: u32) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let value = num_integer::binomial(BigInt::from(n), BigInt::from(k));
    Rat::from_big(num_rational::BigRational::from_integer(value))
}

fn rat_pow(base: &Rat, exp: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// The anti-differentiation `phi_i`: sends `d[alpha]` to `d[alpha - e_i]`,
/// or to zero when `alpha_i = 0`.  Lowers degree by `deg x_i`.
pub fn phi_i(grading: &Grading, f: &Functional, i: usize) -> Result<Functional> {
    if i >= grading.nvars() {
        return Err(Error::IndexOutOfRange { index: i, limit: grading.nvars() });
    }
    let unit = ExponentVector::unit(grading.nvars(), i);
    let degree = &f.degree - &grading.var_degree(i);
    let mut terms = BTreeMap::new();
    for (alpha, coeff) in &f.terms {
        if let Some(shifted) = alpha.checked_sub(&unit) {
            terms.insert(shifted, coeff.clone());
        }
    }
    Ok(Functional { degree, terms })
}

/// The anti-differentiation by a homogeneous polynomial `g`: the adjoint of
/// multiplication, `phi_g(d)(f) = d(g * f)`.  On operators,
/// `phi_g(d[alpha]) = sum_gamma g_gamma * d[alpha - gamma]`.
pub fn phi_g(f: &Functional, g: &Polynomial) -> Result<Functional> {
    let gdeg = g.homogeneous_degree()?;
    let degree = &f.degree - &gdeg;
    let mut terms: BTreeMap<ExponentVector, Rat> = BTreeMap::new();
    for (alpha, coeff) in &f.terms {
        for (gamma, gcoeff) in g.terms() {
            let Some(shifted) = alpha.checked_sub(gamma) else { continue };
            let entry = terms.entry(shifted).or_insert_with(Rat::zero);
            *entry += &(coeff * gcoeff);
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(Functional { degree, terms })
}

/// A right inverse of [`phi_g`]: returns a functional `psi` with
/// `phi_g(psi) = d[beta]`.  Exponents of the target degree are processed in
/// descending lexicographic order; each coefficient is solved against the
/// lexicographically smallest exponent of `g`.
pub fn psi_g(grading: &Grading, beta: &ExponentVector, g: &Polynomial) -> Result<Functional> {
    let gdeg = g.homogeneous_degree()?;
    let alpha0 = g.min_lex_exponent().expect("nonzero polynomial has support").clone();
    let lead = g.coefficient(&alpha0);
    let degree = &grading.degree_of(beta)? + &gdeg;
    let mut support = grading.monomials_of_degree(&degree);
    support.sort_by(|x, y| y.exps().cmp(x.exps()));
    let mut coeffs: Vec<Rat> = Vec::with_capacity(support.len());
    for (idx, alpha) in support.iter().enumerate() {
        let Some(tau) = alpha.checked_sub(&alpha0) else {
            coeffs.push(Rat::zero());
            continue;
        };
        let mut acc = if &tau == beta { Rat::one() } else { Rat::zero() };
        for (prev, gamma) in support.iter().enumerate().take(idx) {
            if coeffs[prev].is_zero() {
                continue;
            }
            let Some(delta) = gamma.checked_sub(&tau) else { continue };
            let gcoeff = g.coefficient(&delta);
            if gcoeff.is_zero() {
                continue;
            }
            acc -= &(&gcoeff * &coeffs[prev]);
        }
        coeffs.push(&acc / &lead);
    }
    let terms = support
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .collect::<Vec<_>>();
    Functional::new(grading, degree, terms)
}

/// A homogeneous ideal presented by generators.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedIdeal {
    grading: Arc<Grading>,
    generators: Vec<Polynomial>,
    degrees: Vec<MultiDegree>,
}

impl GradedIdeal {
    /// Validates generators: nonzero, homogeneous of nonzero degree, and
    /// all over `grading`.
    pub fn new(grading: Arc<Grading>, generators: Vec<Polynomial>) -> Result<Self> {
        let mut degrees = Vec::with_capacity(generators.len());
        for gen in &generators {
            if gen.grading().as_ref() != grading.as_ref() {
                return Err(Error::GradingMismatch);
            }
            let degree = gen.homogeneous_degree()?;
            if degree.is_zero() {
                return Err(Error::DegreeZeroGenerator);
            }
            degrees.push(degree);
        }
        Ok(GradedIdeal { grading, generators, degrees })
    }

    pub fn grading(&self) -> &Arc<Grading> {
        &self.grading
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn degrees(&self) -> &[MultiDegree] {
        &self.degrees
    }

    pub fn generators_of_degree(&self, m: &MultiDegree) -> Vec<&Polynomial> {
        self.generators
            .iter()
            .zip(&self.degrees)
            .filter(|(_, d)| *d == m)
            .map(|(g, _)| g)
            .collect()
    }
}

impl fmt::Debug for GradedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// One graded piece of a dual space.  Degrees whose dual space is the whole
/// graded piece are tagged `Full` so that no identity matrix is stored for
/// them and downstream operators can skip their constraints.
#[derive(Clone, PartialEq, Eq)]
pub enum DualEntry {
    Full(Arc<Vec<ExponentVector>>),
    Proper(Subspace),
}

impl DualEntry {
    pub fn dim(&self) -> usize {
        match self {
            DualEntry::Full(ambient) => ambient.len(),
            DualEntry::Proper(s) => s.dim(),
        }
    }

    pub fn ambient(&self) -> &Arc<Vec<ExponentVector>> {
        match self {
            DualEntry::Full(ambient) => ambient,
            DualEntry::Proper(s) => s.ambient(),
        }
    }

    pub fn is_full(&self) -> bool {
        matches!(self, DualEntry::Full(_))
    }

    /// Materializes the entry as a subspace; `Full` becomes an identity
    /// basis, so prefer the enum form when only dimensions are needed.
    pub fn to_subspace(&self) -> Subspace {
        match self {
            DualEntry::Full(ambient) => Subspace::full(ambient.clone()),
            DualEntry::Proper(s) => s.clone(),
        }
    }

    /// The canonical basis as functionals of the given degree.
    pub fn basis_functionals(&self, degree: &MultiDegree) -> Vec<Functional> {
        match self {
            DualEntry::Full(ambient) => ambient
                .iter()
                .map(|alpha| {
                    Functional::from_coordinates(
                        degree.clone(),
                        std::slice::from_ref(alpha),
                        &[Rat::one()],
                    )
                })
                .collect(),
            DualEntry::Proper(s) => {
                let mat = s.basis_matrix();
                (0..mat.rows())
                    .map(|r| {
                        Functional::from_coordinates(degree.clone(), s.ambient(), mat.row(r))
                    })
                    .collect()
            }
        }
    }

    fn from_subspace(ambient: Arc<Vec<ExponentVector>>, subspace: Subspace) -> DualEntry {
        if subspace.is_full() {
            DualEntry::Full(ambient)
        } else {
            DualEntry::Proper(subspace)
        }
    }
}

impl fmt::Debug for DualEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualEntry::Full(ambient) => write!(f, "Full(dim {})", ambient.len()),
            DualEntry::Proper(s) => write!(f, "{s:?}"),
        }
    }
}

/// A set of degrees to tabulate: everything below a bound in the cone
/// order, or an explicit list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeRegion {
    Below(MultiDegree),
    List(Vec<MultiDegree>),
}

impl DegreeRegion {
    /// The degrees of the region, each checked to lie in the weight cone.
    pub fn degrees(&self, grading: &Grading) -> Result<Vec<MultiDegree>> {
        match self {
            DegreeRegion::Below(m) => grading.lattice_points_below(m),
            DegreeRegion::List(list) => {
                if list.is_empty() {
                    return Err(Error::WindowEmpty);
                }
                let mut out = Vec::new();
                for m in list {
                    if !grading.in_weight_semigroup(m) {
                        return Err(Error::NotInSemigroup(m.clone()));
                    }
                    if !out.contains(m) {
                        out.push(m.clone());
                    }
                }
                Ok(out)
            }
        }
    }
}

/// The dual spaces of one ideal, memoized degree by degree.
#[derive(Clone)]
pub struct DualTable {
    ideal: GradedIdeal,
    entries: HashMap<MultiDegree, DualEntry>,
    ambients: HashMap<MultiDegree, Arc<Vec<ExponentVector>>>,
}

impl DualTable {
    pub fn new(ideal: GradedIdeal) -> Self {
        DualTable { ideal, entries: HashMap::new(), ambients: HashMap::new() }
    }

    pub fn ideal(&self) -> &GradedIdeal {
        &self.ideal
    }

    pub fn grading(&self) -> &Arc<Grading> {
        self.ideal.grading()
    }

    /// The cached canonical monomial basis of the graded piece at `m`.
    pub fn ambient_basis(&mut self, m: &MultiDegree) -> Arc<Vec<ExponentVector>> {
        if let Some(found) = self.ambients.get(m) {
            return found.clone();
        }
        let ambient = Arc::new(self.grading().monomials_of_degree(m));
        self.ambients.insert(m.clone(), ambient.clone());
        ambient
    }

    /// The already-computed entry at `m`, if any.
    pub fn entry(&self, m: &MultiDegree) -> Option<&DualEntry> {
        self.entries.get(m)
    }

    /// The dual space at `m`, walking every degree below `m` first.
    pub fn dual_space(&mut self, m: &MultiDegree) -> Result<&DualEntry> {
        if !self.grading().in_weight_semigroup(m) {
            return Err(Error::NotInSemigroup(m.clone()));
        }
        if !self.entries.contains_key(m) {
            let order = self.grading().sort_lattice_points(m)?;
            self.compute_along(&order)?;
        }
        Ok(self.entries.get(m).expect("just computed"))
    }

    /// Computes entries in the given order, which must list the
    /// predecessors of each degree before the degree itself.
    pub fn compute_along(&mut self, order: &[MultiDegree]) -> Result<()> {
        for m in order {
            if !self.entries.contains_key(m) {
                let entry = self.compute_entry(m, true)?;
                self.entries.insert(m.clone(), entry);
            }
        }
        Ok(())
    }

    /// The closedness subspace at `m`: functionals every constrained
    /// anti-differentiation sends into the dual space one step down, before
    /// the degree-`m` generators are imposed.
    pub fn closedness_subspace(&mut self, m: &MultiDegree) -> Result<DualEntry> {
        if !self.grading().in_weight_semigroup(m) {
            return Err(Error::NotInSemigroup(m.clone()));
        }
        for i in 0..self.grading().nvars() {
            let pred = m - &self.grading().var_degree(i);
            if self.grading().in_weight_semigroup(&pred) {
                self.dual_space(&pred)?;
            }
        }
        self.compute_entry(m, false)
    }

    pub fn hilbert(&mut self, m: &MultiDegree) -> Result<usize> {
        Ok(self.dual_space(m)?.dim())
    }

    pub fn hilbert_table(
        &mut self,
        region: &DegreeRegion,
    ) -> Result<BTreeMap<MultiDegree, usize>> {
        let degrees = region.degrees(self.grading())?;
        let mut out = BTreeMap::new();
        for m in degrees {
            let dim = self.hilbert(&m)?;
            out.insert(m, dim);
        }
        Ok(out)
    }

    /// Builds the entry at `m` from the memoized entries one variable
    /// degree down.  With `impose_generators` false the generator rows are
    /// left out, which yields the closedness subspace.
    fn compute_entry(&mut self, m: &MultiDegree, impose_generators: bool) -> Result<DualEntry> {
        let ambient = self.ambient_basis(m);
        if m.is_zero() {
            return Ok(DualEntry::Full(ambient));
        }
        let grading = self.grading().clone();
        let n = grading.nvars();
        let mut preds: Vec<(usize, &Subspace)> = Vec::new();
        for i in 0..n {
            let pred_degree = m - &grading.var_degree(i);
            if !grading.in_weight_semigroup(&pred_degree) {
                continue;
            }
            match self.entries.get(&pred_degree) {
                None => return Err(Error::MissingPrerequisite(pred_degree)),
                Some(DualEntry::Full(_)) => {}
                Some(DualEntry::Proper(s)) => preds.push((i, s)),
            }
        }
        let gens = if impose_generators {
            self.ideal.generators_of_degree(m)
        } else {
            Vec::new()
        };
        if preds.is_empty() && gens.is_empty() {
            return Ok(DualEntry::Full(ambient));
        }
        let subspace = solve_closedness(&grading, ambient.clone(), &preds, &gens);
        Ok(DualEntry::from_subspace(ambient, subspace))
    }

    /// Reference implementation of [`DualTable::closedness_subspace`] that
    /// intersects explicit preimages in the ambient coordinates.  Quadratic
    /// in the ambient dimension, kept for cross-checking.
    pub fn closedness_subspace_by_preimage(&mut self, m: &MultiDegree) -> Result<DualEntry> {
        if !self.grading().in_weight_semigroup(m) {
            return Err(Error::NotInSemigroup(m.clone()));
        }
        let grading = self.grading().clone();
        for i in 0..grading.nvars() {
            let pred = m - &grading.var_degree(i);
            if grading.in_weight_semigroup(&pred) {
                self.dual_space(&pred)?;
            }
        }
        let ambient = self.ambient_basis(m);
        if m.is_zero() {
            return Ok(DualEntry::Full(ambient));
        }
        let mut space = Subspace::full(ambient.clone());
        for i in 0..grading.nvars() {
            let pred_degree = m - &grading.var_degree(i);
            if !grading.in_weight_semigroup(&pred_degree) {
                continue;
            }
            let entry = self.entries.get(&pred_degree).expect("walked above");
            let DualEntry::Proper(target) = entry else { continue };
            let unit = ExponentVector::unit(grading.nvars(), i);
            let pred_index: HashMap<&ExponentVector, usize> = target
                .ambient()
                .iter()
                .enumerate()
                .map(|(idx, a)| (a, idx))
                .collect();
            let mut map = Matrix::zero(target.ambient_dim(), ambient.len());
            for (col, alpha) in ambient.iter().enumerate() {
                if let Some(shifted) = alpha.checked_sub(&unit) {
                    let row = pred_index[&shifted];
                    map.set(row, col, Rat::one());
                }
            }
            let pre = Subspace::preimage(&map, target, ambient.clone());
            space = space.intersect(&pre)?;
        }
        Ok(DualEntry::from_subspace(ambient, space))
    }
}

/// Solves for the joint kernel of the closedness and generator conditions.
///
/// Unknowns are, per constrained variable `j`, the coordinates of the image
/// `phi_j(d)` in the dual basis one step down, plus one free coordinate for
/// every ambient monomial not divisible by any constrained variable.  The
/// coefficient `c_alpha` of the candidate functional expands through the
/// first constrained variable dividing `alpha`; rows force the expansions
/// through different variables to agree and the generators to be
/// annihilated.
fn solve_closedness(
    grading: &Grading,
    ambient: Arc<Vec<ExponentVector>>,
    preds: &[(usize, &Subspace)],
    gens: &[&Polynomial],
) -> Subspace {
    let n = ambient.len();
    let mut offsets = Vec::with_capacity(preds.len());
    let mut width = 0usize;
    let mut pred_index: Vec<HashMap<&ExponentVector, usize>> = Vec::with_capacity(preds.len());
    let mut pred_units: Vec<ExponentVector> = Vec::with_capacity(preds.len());
    for (var, sub) in preds {
        offsets.push(width);
        width += sub.dim();
        pred_index.push(sub.ambient().iter().enumerate().map(|(i, a)| (a, i)).collect());
        pred_units.push(ExponentVector::unit(grading.nvars(), *var));
    }
    let mut active: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut free_slot: Vec<Option<usize>> = Vec::with_capacity(n);
    for alpha in ambient.iter() {
        let acts: Vec<usize> = preds
            .iter()
            .enumerate()
            .filter(|(_, (var, _))| alpha.get(*var) > 0)
            .map(|(j, _)| j)
            .collect();
        if acts.is_empty() {
            free_slot.push(Some(width));
            width += 1;
        } else {
            free_slot.push(None);
        }
        active.push(acts);
    }

    // Adds to `row` the expansion of `c_alpha` through constrained
    // variable block `j`, scaled by `factor`.
    let add_block = |row: &mut [Rat], j: usize, alpha: &ExponentVector, factor: &Rat| {
        let (_, sub) = preds[j];
        let shifted = alpha
            .checked_sub(&pred_units[j])
            .expect("active variable divides the monomial");
        let pos = pred_index[j][&shifted];
        let basis = sub.basis_matrix();
        for b in 0..sub.dim() {
            let coef = basis.at(b, pos);
            if coef.is_zero() {
                continue;
            }
            row[offsets[j] + b] += &(coef * factor);
        }
    };

    let mut reducer = RowReducer::new(width);
    let one = Rat::one();
    let minus_one = -Rat::one();
    for (t, alpha) in ambient.iter().enumerate() {
        let acts = &active[t];
        if acts.len() < 2 {
            continue;
        }
        for &other in &acts[1..] {
            let mut row = vec![Rat::zero(); width];
            add_block(&mut row, acts[0], alpha, &one);
            add_block(&mut row, other, alpha, &minus_one);
            reducer.insert(row);
        }
    }
    if !gens.is_empty() {
        let ambient_index: HashMap<&ExponentVector, usize> =
            ambient.iter().enumerate().map(|(i, a)| (a, i)).collect();
        for gen in gens {
            let mut row = vec![Rat::zero(); width];
            for (alpha, coeff) in gen.terms() {
                let t = *ambient_index
                    .get(alpha)
                    .expect("generator terms have the ambient degree");
                match free_slot[t] {
                    Some(slot) => row[slot] += coeff,
                    None => add_block(&mut row, active[t][0], alpha, coeff),
                }
            }
            reducer.insert(row);
        }
    }

    let constraints = reducer.into_matrix();
    let kernel = constraints.kernel();
    let mut rows = Vec::with_capacity(kernel.rows());
    for r in 0..kernel.rows() {
        let u = kernel.row(r);
        let mut row = vec![Rat::zero(); n];
        for (t, alpha) in ambient.iter().enumerate() {
            match free_slot[t] {
                Some(slot) => row[t] = u[slot].clone(),
                None => {
                    let j = active[t][0];
                    let (_, sub) = preds[j];
                    let shifted = alpha
                        .checked_sub(&pred_units[j])
                        .expect("active variable divides the monomial");
                    let pos = pred_index[j][&shifted];
                    let basis = sub.basis_matrix();
                    let mut acc = Rat::zero();
                    for b in 0..sub.dim() {
                        let coef = basis.at(b, pos);
                        if !coef.is_zero() {
                            acc += &(coef * &u[offsets[j] + b]);
                        }
                    }
                    row[t] = acc;
                }
            }
        }
        rows.push(row);
    }
    Subspace::from_rows(ambient, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn line_grading() -> Arc<Grading> {
        Arc::new(Grading::new(vec![vec![1, 2]], None, names(&["x1", "x2"])).unwrap())
    }

    fn hirzebruch_grading() -> Arc<Grading> {
        Arc::new(
            Grading::new(
                vec![vec![1, 0, 1, 0], vec![-2, 1, 0, 1]],
                None,
                names(&["x1", "x2", "x3", "x4"]),
            )
            .unwrap(),
        )
    }

    fn ev(exps: &[u32]) -> ExponentVector {
        ExponentVector::new(exps.to_vec())
    }

    fn md(coords: &[i64]) -> MultiDegree {
        MultiDegree::new(coords.to_vec())
    }

    /// The running example ideal `<29/16*x1^3 - 2*x1*x2, x2 - x1^2>` over
    /// `deg x1 = 1, deg x2 = 2`.
    fn point_ideal(g: &Arc<Grading>) -> GradedIdeal {
        let f1 = Polynomial::from_terms(
            g.clone(),
            vec![(ev(&[3, 0]), Rat::new(29, 16)), (ev(&[1, 1]), Rat::integer(-2))],
        );
        let f2 = Polynomial::from_terms(
            g.clone(),
            vec![(ev(&[0, 1]), Rat::one()), (ev(&[2, 0]), -Rat::one())],
        );
        GradedIdeal::new(g.clone(), vec![f1, f2]).unwrap()
    }

    /// The comparison ideal `<x2 - x1^2, x2^2>` over the same grading.
    fn fat_point_ideal(g: &Arc<Grading>) -> GradedIdeal {
        let f2 = Polynomial::from_terms(
            g.clone(),
            vec![(ev(&[0, 1]), Rat::one()), (ev(&[2, 0]), -Rat::one())],
        );
        let sq = Polynomial::monomial(g.clone(), ev(&[0, 2]), Rat::one());
        GradedIdeal::new(g.clone(), vec![f2, sq]).unwrap()
    }

    #[test]
    fn functional_display_and_pairing() {
        let g = line_grading();
        let f = Functional::new(
            &g,
            md(&[2]),
            vec![(ev(&[0, 1]), Rat::one()), (ev(&[2, 0]), Rat::one())],
        )
        .unwrap();
        assert_eq!(f.to_string(), "d[0,1] + d[2,0]");
        let x2 = Polynomial::var(g.clone(), 1);
        assert_eq!(f.eval(&x2), Rat::one());
    }

    #[test]
    fn mixed_degree_terms_are_rejected() {
        let g = line_grading();
        let err = Functional::new(
            &g,
            md(&[2]),
            vec![(ev(&[1, 0]), Rat::one()), (ev(&[0, 1]), Rat::one())],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotHomogeneous(_)));
    }

    #[test]
    fn partial_evaluation_away_from_the_origin() {
        let g = Arc::new(
            Grading::new(vec![vec![1, 1]], None, names(&["x1", "x2"])).unwrap(),
        );
        let poly = Polynomial::from_terms(
            g.clone(),
            vec![
                (ev(&[4, 3]), Rat::one()),
                (ev(&[3, 2]), Rat::integer(3)),
                (ev(&[2, 0]), Rat::integer(-2)),
                (ev(&[0, 1]), Rat::integer(3)),
                (ev(&[0, 0]), -Rat::one()),
            ],
        );
        let alpha = ev(&[3, 2]);
        let point = [Rat::one(), Rat::integer(2)];
        assert_eq!(eval_partial(&alpha, &point, &poly), Rat::integer(27));
        let origin = [Rat::zero(), Rat::zero()];
        assert_eq!(eval_partial(&alpha, &origin, &poly), Rat::integer(3));
    }

    #[test]
    fn anti_differentiation_by_variables() {
        let g = line_grading();
        let delta = Functional::new(
            &g,
            md(&[2]),
            vec![(ev(&[0, 1]), Rat::one()), (ev(&[2, 0]), Rat::one())],
        )
        .unwrap();
        let ideal = point_ideal(&g);
        assert_eq!(delta.eval(&ideal.generators()[1]), Rat::zero());

        let by_x1 = phi_i(&g, &delta, 0).unwrap();
        assert_eq!(by_x1.degree(), &md(&[1]));
        assert_eq!(by_x1, Functional::delta(&g, ev(&[1, 0])).unwrap());

        let by_x2 = phi_i(&g, &delta, 1).unwrap();
        assert_eq!(by_x2.degree(), &md(&[0]));
        assert_eq!(by_x2, Functional::delta(&g, ev(&[0, 0])).unwrap());

        assert!(matches!(
            phi_i(&g, &delta, 5),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn anti_differentiation_by_polynomials() {
        let g = line_grading();
        let ideal = point_ideal(&g);
        let f1 = &ideal.generators()[0];
        let f2 = &ideal.generators()[1];

        let cubic = Functional::new(
            &g,
            md(&[3]),
            vec![(ev(&[1, 1]), Rat::one()), (ev(&[3, 0]), Rat::one())],
        )
        .unwrap();
        let image = phi_g(&cubic, f1).unwrap();
        let expected = Functional::new(
            &g,
            md(&[0]),
            vec![(ev(&[0, 0]), Rat::new(-3, 16))],
        )
        .unwrap();
        assert_eq!(image, expected);

        let quadratic = Functional::new(
            &g,
            md(&[2]),
            vec![(ev(&[0, 1]), Rat::one()), (ev(&[2, 0]), Rat::one())],
        )
        .unwrap();
        assert!(phi_g(&quadratic, f2).unwrap().is_zero());
        assert!(phi_g(&cubic, f2).unwrap().is_zero());
    }

    #[test]
    fn phi_by_a_variable_matches_phi_i() {
        let g = hirzebruch_grading();
        let f = Functional::new(
            &g,
            md(&[1, 1]),
            vec![
                (ev(&[1, 3, 0, 0]), Rat::integer(2)),
                (ev(&[0, 1, 1, 0]), Rat::new(1, 3)),
                (ev(&[1, 0, 0, 3]), -Rat::one()),
            ],
        )
        .unwrap();
        for i in 0..4 {
            let var = Polynomial::var(g.clone(), i);
            assert_eq!(phi_g(&f, &var).unwrap(), phi_i(&g, &f, i).unwrap());
        }
    }

    #[test]
    fn psi_is_a_right_inverse_of_phi() {
        let g = line_grading();
        let ideal = point_ideal(&g);
        let cases: Vec<(&Polynomial, ExponentVector)> = vec![
            (&ideal.generators()[0], ev(&[0, 0])),
            (&ideal.generators()[0], ev(&[1, 0])),
            (&ideal.generators()[0], ev(&[0, 1])),
            (&ideal.generators()[1], ev(&[2, 1])),
        ];
        for (gpoly, beta) in cases {
            let psi = psi_g(&g, &beta, gpoly).unwrap();
            let back = phi_g(&psi, gpoly).unwrap();
            assert_eq!(back, Functional::delta(&g, beta.clone()).unwrap());
        }
        let monomial = Polynomial::monomial(g.clone(), ev(&[2, 0]), Rat::integer(3));
        let psi = psi_g(&g, &ev(&[1, 1]), &monomial).unwrap();
        assert_eq!(
            psi,
            Functional::new(&g, md(&[5]), vec![(ev(&[3, 1]), Rat::new(1, 3))]).unwrap()
        );
    }

    #[test]
    fn ideal_validation_rejects_bad_generators() {
        let g = line_grading();
        let zero = Polynomial::zero(g.clone());
        assert!(matches!(
            GradedIdeal::new(g.clone(), vec![zero]),
            Err(Error::ZeroPolynomial)
        ));
        let unit = Polynomial::constant(g.clone(), Rat::integer(2));
        assert!(matches!(
            GradedIdeal::new(g.clone(), vec![unit]),
            Err(Error::DegreeZeroGenerator)
        ));
        let x1 = Polynomial::var(g.clone(), 0);
        let x2 = Polynomial::var(g.clone(), 1);
        let mixed = &x1 + &x2;
        assert!(matches!(
            GradedIdeal::new(g.clone(), vec![mixed]),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn dual_spaces_of_an_isolated_point() {
        let g = line_grading();
        let mut table = DualTable::new(point_ideal(&g));
        assert_eq!(table.hilbert(&md(&[0])).unwrap(), 1);
        assert_eq!(table.hilbert(&md(&[1])).unwrap(), 1);
        assert_eq!(table.hilbert(&md(&[2])).unwrap(), 1);
        assert_eq!(table.hilbert(&md(&[3])).unwrap(), 0);
        assert_eq!(table.hilbert(&md(&[4])).unwrap(), 0);

        let d2 = table.dual_space(&md(&[2])).unwrap();
        let expected = Functional::new(
            &g,
            md(&[2]),
            vec![(ev(&[0, 1]), Rat::one()), (ev(&[2, 0]), Rat::one())],
        )
        .unwrap();
        assert_eq!(d2.basis_functionals(&md(&[2])), vec![expected]);

        assert!(matches!(
            table.hilbert(&md(&[-1])),
            Err(Error::NotInSemigroup(_))
        ));
    }

    #[test]
    fn dual_spaces_of_the_fat_point() {
        let g = line_grading();
        let mut table = DualTable::new(fat_point_ideal(&g));
        let dims: Vec<usize> = (0..=5)
            .map(|m| table.hilbert(&md(&[m])).unwrap())
            .collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 0, 0]);
        let d3 = table.dual_space(&md(&[3])).unwrap();
        let expected = Functional::new(
            &g,
            md(&[3]),
            vec![(ev(&[1, 1]), Rat::one()), (ev(&[3, 0]), Rat::one())],
        )
        .unwrap();
        assert_eq!(d3.basis_functionals(&md(&[3])), vec![expected]);
    }

    fn hirzebruch_curve_table() -> DualTable {
        let g = hirzebruch_grading();
        let f = Polynomial::from_terms(
            g.clone(),
            vec![(ev(&[0, 0, 1, 0]), Rat::one()), (ev(&[1, 2, 0, 0]), -Rat::one())],
        );
        DualTable::new(GradedIdeal::new(g.clone(), vec![f]).unwrap())
    }

    #[test]
    fn hirzebruch_dual_spaces_match_hand_computation() {
        let mut table = hirzebruch_curve_table();

        let closed = table.closedness_subspace(&md(&[1, 0])).unwrap();
        assert!(closed.is_full());
        assert_eq!(closed.dim(), 4);

        let d10 = table.dual_space(&md(&[1, 0])).unwrap().clone();
        assert_eq!(d10.dim(), 3);
        let ambient = d10.ambient().clone();
        let expected = Subspace::from_rows(
            ambient,
            vec![
                vec![Rat::one(), Rat::zero(), Rat::zero(), Rat::one()],
                vec![Rat::zero(), Rat::one(), Rat::zero(), Rat::zero()],
                vec![Rat::zero(), Rat::zero(), Rat::one(), Rat::zero()],
            ],
        );
        assert_eq!(d10.to_subspace(), expected);

        let d11 = table.dual_space(&md(&[1, 1])).unwrap().clone();
        assert_eq!(d11.dim(), 4);
        for f in d11.basis_functionals(&md(&[1, 1])) {
            let image = phi_g(&f, &table.ideal().generators()[0].clone()).unwrap();
            assert!(image.is_zero() || image.degree() == &md(&[0, 1]));
        }
        let rows = vec![
            vec![Rat::one(), Rat::zero(), Rat::zero(), Rat::zero(), Rat::one(), Rat::zero()],
            vec![Rat::zero(), Rat::one(), Rat::zero(), Rat::zero(), Rat::zero(), Rat::one()],
            vec![Rat::zero(), Rat::zero(), Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()],
            vec![Rat::zero(), Rat::zero(), Rat::zero(), Rat::one(), Rat::zero(), Rat::zero()],
        ];
        let expected = Subspace::from_rows(d11.ambient().clone(), rows);
        assert_eq!(d11.to_subspace(), expected);
    }

    #[test]
    fn walk_order_does_not_change_the_answer() {
        let mut by_sweep = hirzebruch_curve_table();
        let d_sweep = by_sweep.dual_space(&md(&[1, 1])).unwrap().clone();

        let mut by_hand = hirzebruch_curve_table();
        let order: Vec<MultiDegree> = [
            [0, 0], [1, -2], [0, 1], [1, -1], [0, 2], [0, 3], [1, 0], [1, 1],
        ]
        .iter()
        .map(|c| md(&[c[0], c[1]]))
        .collect();
        by_hand.compute_along(&order).unwrap();
        let d_hand = by_hand.entry(&md(&[1, 1])).unwrap();
        assert_eq!(&d_sweep, d_hand);
    }

    #[test]
    fn solver_matches_the_preimage_reference() {
        let mut table = hirzebruch_curve_table();
        for m in [md(&[1, 0]), md(&[1, 1]), md(&[2, 0]), md(&[2, 2])] {
            let fast = table.closedness_subspace(&m).unwrap();
            let slow = table.closedness_subspace_by_preimage(&m).unwrap();
            assert_eq!(fast, slow, "closedness mismatch at {m}");
        }
        let g = line_grading();
        let mut point = DualTable::new(point_ideal(&g));
        for m in 0..6 {
            let fast = point.closedness_subspace(&md(&[m])).unwrap();
            let slow = point.closedness_subspace_by_preimage(&md(&[m])).unwrap();
            assert_eq!(fast, slow, "closedness mismatch at {m}");
        }
    }

    #[test]
    fn missing_predecessor_is_reported() {
        let mut table = hirzebruch_curve_table();
        let err = table.compute_along(&[md(&[1, 0])]).unwrap_err();
        assert!(matches!(err, Error::MissingPrerequisite(_)));
    }

    #[test]
    fn empty_graded_pieces_have_dimension_zero() {
        let g = Arc::new(Grading::new(vec![vec![2]], None, names(&["x"])).unwrap());
        let gen = Polynomial::monomial(g.clone(), ev(&[2]), Rat::one());
        let mut table = DualTable::new(GradedIdeal::new(g.clone(), vec![gen]).unwrap());
        assert_eq!(table.hilbert(&md(&[3])).unwrap(), 0);
        assert_eq!(table.hilbert(&md(&[2])).unwrap(), 1);
        assert_eq!(table.hilbert(&md(&[4])).unwrap(), 0);
        assert_eq!(table.hilbert(&md(&[6])).unwrap(), 0);
    }

    #[test]
    fn hilbert_table_over_a_region() {
        let g = line_grading();
        let mut table = DualTable::new(point_ideal(&g));
        let below = table.hilbert_table(&DegreeRegion::Below(md(&[4]))).unwrap();
        let dims: Vec<usize> = below.values().copied().collect();
        assert_eq!(below.len(), 5);
        assert_eq!(dims.iter().sum::<usize>(), 3);
        let listed = table
            .hilbert_table(&DegreeRegion::List(vec![md(&[2]), md(&[0])]))
            .unwrap();
        assert_eq!(listed.len(), 2);
        assert!(matches!(
            table.hilbert_table(&DegreeRegion::List(vec![])),
            Err(Error::WindowEmpty)
        ));
    }
}
