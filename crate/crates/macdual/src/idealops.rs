//! Ideal arithmetic carried out on dual spaces.
//!
//! A [`DualPresentation`] is an expression tree over ideals: leaves hold a
//! dual-space table, inner nodes combine children degree by degree.  Sums
//! of ideals intersect dual spaces, intersections of ideals add them, and
//! colon quotients push dual spaces through anti-differentiation.  Every
//! node memoizes its graded pieces, so saturation chains and repeated
//! queries reuse earlier work.
//!
//! The functions at the bottom answer the questions the presentations are
//! built for: membership with an explicit witness, containment, saturation
//! with a stabilization exponent, local multiplicity with a completeness
//! certificate, and extraction of low-degree ideal elements.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Polynomial, Rat, Subspace};
use crate::dual::{DegreeRegion, DualEntry, DualTable, Functional, GradedIdeal};
use crate::grading::{ExponentVector, Grading, MultiDegree};
use crate::{Error, Result};

#[derive(Clone)]
enum Node {
    Leaf(DualTable),
    Sum(Box<DualPresentation>, Box<DualPresentation>),
    Intersect(Box<DualPresentation>, Box<DualPresentation>),
    QuotientByPoly(Box<DualPresentation>, Polynomial),
    QuotientByIdeal(Box<DualPresentation>, Vec<Polynomial>),
}

/// An ideal presented through its dual spaces, memoized degree by degree.
#[derive(Clone)]
pub struct DualPresentation {
    node: Node,
    memo: HashMap<MultiDegree, DualEntry>,
    ambients: HashMap<MultiDegree, Arc<Vec<ExponentVector>>>,
}

impl DualPresentation {
    /// A leaf presentation of a generated ideal.
    pub fn of_ideal(ideal: GradedIdeal) -> Self {
        DualPresentation {
            node: Node::Leaf(DualTable::new(ideal)),
            memo: HashMap::new(),
            ambients: HashMap::new(),
        }
    }

    /// The sum of two ideals; dual spaces intersect.
    pub fn sum(a: DualPresentation, b: DualPresentation) -> Result<Self> {
        if a.grading().as_ref() != b.grading().as_ref() {
            return Err(Error::GradingMismatch);
        }
        Ok(DualPresentation {
            node: Node::Sum(Box::new(a), Box::new(b)),
            memo: HashMap::new(),
            ambients: HashMap::new(),
        })
    }

    /// The intersection of two ideals; dual spaces add.
    pub fn intersection(a: DualPresentation, b: DualPresentation) -> Result<Self> {
        if a.grading().as_ref() != b.grading().as_ref() {
            return Err(Error::GradingMismatch);
        }
        Ok(DualPresentation {
            node: Node::Intersect(Box::new(a), Box::new(b)),
            memo: HashMap::new(),
            ambients: HashMap::new(),
        })
    }

    /// The colon quotient by one nonzero homogeneous polynomial; the dual
    /// space at `m` is the anti-differentiation image of the child's dual
    /// space at `m + deg g`.
    pub fn quotient_by_poly(child: DualPresentation, g: Polynomial) -> Result<Self> {
        if g.grading().as_ref() != child.grading().as_ref() {
            return Err(Error::GradingMismatch);
        }
        g.homogeneous_degree()?;
        Ok(DualPresentation {
            node: Node::QuotientByPoly(Box::new(child), g),
            memo: HashMap::new(),
            ambients: HashMap::new(),
        })
    }

    /// The colon quotient by a generated ideal: the intersection of the
    /// quotients by its generators, so dual spaces add images.  An empty
    /// generator list presents the quotient by the zero ideal, which is
    /// the unit ideal.
    pub fn quotient_by_ideal(child: DualPresentation, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if g.grading().as_ref() != child.grading().as_ref() {
                return Err(Error::GradingMismatch);
            }
            g.homogeneous_degree()?;
        }
        Ok(DualPresentation {
            node: Node::QuotientByIdeal(Box::new(child), gens),
            memo: HashMap::new(),
            ambients: HashMap::new(),
        })
    }

    pub fn grading(&self) -> &Arc<Grading> {
        match &self.node {
            Node::Leaf(t) => t.grading(),
            Node::Sum(a, _)
            | Node::Intersect(a, _)
            | Node::QuotientByPoly(a, _)
            | Node::QuotientByIdeal(a, _) => a.grading(),
        }
    }

    /// The dual space of the presented ideal at `m`.
    pub fn dual_at(&mut self, m: &MultiDegree) -> Result<DualEntry> {
        if let Some(found) = self.memo.get(m) {
            return Ok(found.clone());
        }
        let grading = self.grading().clone();
        if !grading.in_weight_semigroup(m) {
            return Err(Error::NotInSemigroup(m.clone()));
        }
        let DualPresentation { node, ambients, .. } = self;
        let entry = match node {
            Node::Leaf(table) => table.dual_space(m)?.clone(),
            Node::Sum(a, b) => {
                let ea = a.dual_at(m)?;
                let eb = b.dual_at(m)?;
                intersect_entries(&ea, &eb)?
            }
            Node::Intersect(a, b) => {
                let ea = a.dual_at(m)?;
                let eb = b.dual_at(m)?;
                sum_entries(&ea, &eb)?
            }
            Node::QuotientByPoly(child, g) => {
                let target = m + &g.homogeneous_degree()?;
                let inner = child.dual_at(&target)?;
                let ambient = cached_ambient(&grading, ambients, m);
                quotient_image(&inner, g, ambient)
            }
            Node::QuotientByIdeal(child, gens) => {
                let ambient = cached_ambient(&grading, ambients, m);
                let mut acc = DualEntry::Proper(Subspace::zero(ambient.clone()));
                for g in gens.iter() {
                    let target = m + &g.homogeneous_degree()?;
                    let inner = child.dual_at(&target)?;
                    let image = quotient_image(&inner, g, ambient.clone());
                    acc = sum_entries(&acc, &image)?;
                    if acc.is_full() {
                        break;
                    }
                }
                acc
            }
        };
        self.memo.insert(m.clone(), entry.clone());
        Ok(entry)
    }

    pub fn hilbert(&mut self, m: &MultiDegree) -> Result<usize> {
        Ok(self.dual_at(m)?.dim())
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
}

impl fmt::Debug for DualPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Leaf(t) => write!(f, "{:?}", t.ideal()),
            Node::Sum(a, b) => write!(f, "({a:?} + {b:?})"),
            Node::Intersect(a, b) => write!(f, "({a:?} ^ {b:?})"),
            Node::QuotientByPoly(a, g) => write!(f, "({a:?} : {g})"),
            Node::QuotientByIdeal(a, gens) => {
                let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                write!(f, "({a:?} : <{}>)", parts.join(", "))
            }
        }
    }
}

fn cached_ambient(
    grading: &Grading,
    cache: &mut HashMap<MultiDegree, Arc<Vec<ExponentVector>>>,
    m: &MultiDegree,
) -> Arc<Vec<ExponentVector>> {
    if let Some(found) = cache.get(m) {
        return found.clone();
    }
    let ambient = Arc::new(grading.monomials_of_degree(m));
    cache.insert(m.clone(), ambient.clone());
    ambient
}

fn intersect_entries(a: &DualEntry, b: &DualEntry) -> Result<DualEntry> {
    if a.is_full() {
        return Ok(b.clone());
    }
    if b.is_full() {
        return Ok(a.clone());
    }
    let meet = a.to_subspace().intersect(&b.to_subspace())?;
    Ok(normalize(a.ambient().clone(), meet))
}

fn sum_entries(a: &DualEntry, b: &DualEntry) -> Result<DualEntry> {
    if a.is_full() {
        return Ok(a.clone());
    }
    if b.is_full() {
        return Ok(b.clone());
    }
    let join = a.to_subspace().sum(&b.to_subspace())?;
    Ok(normalize(a.ambient().clone(), join))
}

fn normalize(ambient: Arc<Vec<ExponentVector>>, subspace: Subspace) -> DualEntry {
    if subspace.is_full() {
        DualEntry::Full(ambient)
    } else {
        DualEntry::Proper(subspace)
    }
}

/// Pushes a dual space through anti-differentiation by `g`: the image of
/// the span under `phi_g`, in coordinates over `ambient`.
fn quotient_image(
    inner: &DualEntry,
    g: &Polynomial,
    ambient: Arc<Vec<ExponentVector>>,
) -> DualEntry {
    if inner.is_full() {
        // `phi_g` maps the full dual space onto the full dual space one
        // degree down: `psi_g` provides a preimage for every operator.
        return DualEntry::Full(ambient);
    }
    let source = inner.ambient();
    let index: HashMap<&ExponentVector, usize> =
        ambient.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let basis = match inner {
        DualEntry::Proper(s) => s.basis_matrix(),
        DualEntry::Full(_) => unreachable!("handled above"),
    };
    let mut rows = Vec::with_capacity(basis.rows());
    for r in 0..basis.rows() {
        let mut row = vec![Rat::zero(); ambient.len()];
        for (src, coeff) in source.iter().zip(basis.row(r)) {
            if coeff.is_zero() {
                continue;
            }
            for (gamma, gcoeff) in g.terms() {
                let Some(shifted) = src.checked_sub(gamma) else { continue };
                row[index[&shifted]] += &(coeff * gcoeff);
            }
        }
        rows.push(row);
    }
    normalize(ambient.clone(), Subspace::from_rows(ambient, rows))
}

/// The outcome of a membership test, with a separating functional when the
/// answer is negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    NotMember { witness: Functional },
}

/// Whether `g` lies in the presented ideal: membership holds exactly when
/// every dual functional in the degree of `g` annihilates `g`.  The first
/// basis functional with a nonzero pairing is returned as a witness.
pub fn membership(pres: &mut DualPresentation, g: &Polynomial) -> Result<Membership> {
    if g.is_zero() {
        return Ok(Membership::Member);
    }
    let degree = g.homogeneous_degree()?;
    let entry = pres.dual_at(&degree)?;
    for f in entry.basis_functionals(&degree) {
        if !f.eval(g).is_zero() {
            return Ok(Membership::NotMember { witness: f });
        }
    }
    Ok(Membership::Member)
}

/// Whether every generator of `ideal` lies in the presented ideal.
pub fn contains(pres: &mut DualPresentation, ideal: &GradedIdeal) -> Result<bool> {
    for gen in ideal.generators() {
        if let Membership::NotMember { .. } = membership(pres, gen)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Saturates `base` by the ideal spanned by `by`, comparing Hilbert values
/// over `window`: quotients are chained until two consecutive stages agree
/// on every window degree.  Returns the stabilized presentation and the
/// number of quotients it absorbed.  The certificate is relative to the
/// window; degrees outside it are not inspected.
pub fn saturate(
    base: DualPresentation,
    by: Vec<Polynomial>,
    window: &DegreeRegion,
) -> Result<(DualPresentation, u32)> {
    let degrees = window.degrees(base.grading())?;
    let mut current = base;
    let mut current_values = window_values(&mut current, &degrees)?;
    let mut steps = 0u32;
    loop {
        let mut next = DualPresentation::quotient_by_ideal(current.clone(), by.clone())?;
        let next_values = window_values(&mut next, &degrees)?;
        if next_values == current_values {
            return Ok((current, steps));
        }
        current = next;
        current_values = next_values;
        steps += 1;
    }
}

fn window_values(
    pres: &mut DualPresentation,
    degrees: &[MultiDegree],
) -> Result<Vec<usize>> {
    degrees.iter().map(|m| pres.hilbert(m)).collect()
}

/// Sums the Hilbert function over all degrees below `bound` and reports
/// whether the sum is certified complete: every degree with a nonzero
/// value must have all of its successors inside the summation region, so
/// no nonzero dual space can escape unseen.
pub fn multiplicity(
    pres: &mut DualPresentation,
    bound: &MultiDegree,
) -> Result<(usize, bool)> {
    let grading = pres.grading().clone();
    let omega = grading.lattice_points_below(bound)?;
    let inside: HashSet<&MultiDegree> = omega.iter().collect();
    let mut total = 0usize;
    let mut complete = true;
    for m in &omega {
        let h = pres.hilbert(m)?;
        total += h;
        if h == 0 {
            continue;
        }
        for i in 0..grading.nvars() {
            let successor = m + &grading.var_degree(i);
            if !inside.contains(&successor) {
                complete = false;
            }
        }
    }
    Ok((total, complete))
}

/// A basis of the degree-`m` piece of the presented ideal, recovered as
/// the annihilator of the dual space at `m`.
pub fn elements_of_degree(
    pres: &mut DualPresentation,
    m: &MultiDegree,
) -> Result<Vec<Polynomial>> {
    let entry = pres.dual_at(m)?;
    if entry.is_full() {
        return Ok(Vec::new());
    }
    let subspace = match &entry {
        DualEntry::Proper(s) => s,
        DualEntry::Full(_) => unreachable!("handled above"),
    };
    let grading = pres.grading().clone();
    let ambient = entry.ambient();
    let ann = subspace.annihilator();
    let mut out = Vec::with_capacity(ann.rows());
    for r in 0..ann.rows() {
        let terms: Vec<(ExponentVector, Rat)> = ambient
            .iter()
            .zip(ann.row(r))
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| (a.clone(), c.clone()))
            .collect();
        out.push(Polynomial::from_terms(grading.clone(), terms));
    }
    Ok(out)
}

/// A per-leaf estimate of the walk a region query will trigger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkReport {
    pub leaves: Vec<LeafWork>,
}

/// Walk size for one leaf table: how many degrees must be visited and the
/// largest monomial basis among them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafWork {
    pub ideal: String,
    pub degrees: usize,
    pub max_ambient: usize,
}

impl fmt::Display for WorkReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, leaf) in self.leaves.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "{}: {} degrees, largest graded piece {}",
                leaf.ideal, leaf.degrees, leaf.max_ambient
            )?;
        }
        Ok(())
    }
}

/// Estimates the work a [`DualPresentation::hilbert_table`] call over
/// `region` would trigger, without computing any dual spaces.
pub fn required_work(pres: &DualPresentation, region: &DegreeRegion) -> Result<WorkReport> {
    let grading = pres.grading();
    let requested = region.degrees(grading)?;
    let mut leaves = Vec::new();
    collect_work(pres, &requested, &mut leaves)?;
    Ok(WorkReport { leaves })
}

fn collect_work(
    pres: &DualPresentation,
    requested: &[MultiDegree],
    out: &mut Vec<LeafWork>,
) -> Result<()> {
    match &pres.node {
        Node::Leaf(table) => {
            let grading = table.grading();
            let mut visited: HashSet<MultiDegree> = HashSet::new();
            for m in requested {
                for s in grading.lattice_points_below(m)? {
                    visited.insert(s);
                }
            }
            let max_ambient = visited
                .iter()
                .map(|s| grading.monomials_of_degree(s).len())
                .max()
                .unwrap_or(0);
            out.push(LeafWork {
                ideal: format!("{:?}", table.ideal()),
                degrees: visited.len(),
                max_ambient,
            });
            Ok(())
        }
        Node::Sum(a, b) | Node::Intersect(a, b) => {
            collect_work(a, requested, out)?;
            collect_work(b, requested, out)
        }
        Node::QuotientByPoly(child, g) => {
            let shift = g.homogeneous_degree()?;
            let shifted: Vec<MultiDegree> = requested.iter().map(|m| m + &shift).collect();
            collect_work(child, &shifted, out)
        }
        Node::QuotientByIdeal(child, gens) => {
            let mut shifted = Vec::new();
            for g in gens {
                let shift = g.homogeneous_degree()?;
                for m in requested {
                    let s = m + &shift;
                    if !shifted.contains(&s) {
                        shifted.push(s);
                    }
                }
            }
            collect_work(child, &shifted, out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn ev(exps: &[u32]) -> ExponentVector {
        ExponentVector::new(exps.to_vec())
    }

    fn md(coords: &[i64]) -> MultiDegree {
        MultiDegree::new(coords.to_vec())
    }

    fn line_grading() -> Arc<Grading> {
        Arc::new(Grading::new(vec![vec![1, 2]], None, names(&["x1", "x2"])).unwrap())
    }

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

    fn fat_point_ideal(g: &Arc<Grading>) -> GradedIdeal {
        let f2 = Polynomial::from_terms(
            g.clone(),
            vec![(ev(&[0, 1]), Rat::one()), (ev(&[2, 0]), -Rat::one())],
        );
        let sq = Polynomial::monomial(g.clone(), ev(&[0, 2]), Rat::one());
        GradedIdeal::new(g.clone(), vec![f2, sq]).unwrap()
    }

    fn std_grading() -> Arc<Grading> {
        Arc::new(Grading::new(vec![vec![1, 1]], None, names(&["x1", "x2"])).unwrap())
    }

    #[test]
    fn membership_produces_a_scaled_witness() {
        let g = line_grading();
        let mut fat = DualPresentation::of_ideal(fat_point_ideal(&g));
        let x2 = Polynomial::var(g.clone(), 1);
        let result = membership(&mut fat, &x2).unwrap();
        let Membership::NotMember { witness } = result else {
            panic!("x2 is not in the ideal");
        };
        assert!(!witness.eval(&x2).is_zero());
        let lead = witness.coefficient(&ev(&[0, 1]));
        assert!(!lead.is_zero());
        let scaled = witness.scale(&lead.inv());
        let expected = Functional::new(
            &g,
            md(&[2]),
            vec![(ev(&[0, 1]), Rat::one()), (ev(&[2, 0]), Rat::one())],
        )
        .unwrap();
        assert_eq!(scaled, expected);

        let parabola = &x2 - &(&Polynomial::var(g.clone(), 0) * &Polynomial::var(g.clone(), 0));
        assert_eq!(membership(&mut fat, &parabola).unwrap(), Membership::Member);
        assert_eq!(
            membership(&mut fat, &Polynomial::zero(g.clone())).unwrap(),
            Membership::Member
        );
    }

    #[test]
    fn containment_between_the_running_ideals() {
        let g = line_grading();
        let mut point = DualPresentation::of_ideal(point_ideal(&g));
        let mut fat = DualPresentation::of_ideal(fat_point_ideal(&g));
        assert!(contains(&mut point, &fat_point_ideal(&g)).unwrap());
        assert!(!contains(&mut fat, &point_ideal(&g)).unwrap());
    }

    #[test]
    fn sum_and_intersection_satisfy_the_dimension_identity() {
        let g = line_grading();
        let point = DualPresentation::of_ideal(point_ideal(&g));
        let fat = DualPresentation::of_ideal(fat_point_ideal(&g));
        let mut sum = DualPresentation::sum(point.clone(), fat.clone()).unwrap();
        let mut meet = DualPresentation::intersection(point.clone(), fat.clone()).unwrap();
        let mut point = point;
        let mut fat = fat;
        for m in 0..=4 {
            let m = md(&[m]);
            let lhs = sum.hilbert(&m).unwrap() + meet.hilbert(&m).unwrap();
            let rhs = point.hilbert(&m).unwrap() + fat.hilbert(&m).unwrap();
            assert_eq!(lhs, rhs, "dimension identity fails at {m}");
        }
        assert_eq!(meet.hilbert(&md(&[3])).unwrap(), 1);
        assert_eq!(sum.hilbert(&md(&[3])).unwrap(), 0);
    }

    #[test]
    fn quotient_tables_of_the_fat_point() {
        let g = line_grading();
        let fat = DualPresentation::of_ideal(fat_point_ideal(&g));
        let point = point_ideal(&g);

        let mut by_f1 = DualPresentation::quotient_by_poly(
            fat.clone(),
            point.generators()[0].clone(),
        )
        .unwrap();
        let dims: Vec<usize> = (0..=3)
            .map(|m| by_f1.hilbert(&md(&[m])).unwrap())
            .collect();
        assert_eq!(dims, vec![1, 0, 0, 0]);
        let d0 = by_f1.dual_at(&md(&[0])).unwrap();
        assert_eq!(
            d0.basis_functionals(&md(&[0])),
            vec![Functional::delta(&g, ev(&[0, 0])).unwrap()]
        );

        let mut by_f2 = DualPresentation::quotient_by_poly(
            fat.clone(),
            point.generators()[1].clone(),
        )
        .unwrap();
        let dims: Vec<usize> = (0..=3)
            .map(|m| by_f2.hilbert(&md(&[m])).unwrap())
            .collect();
        assert_eq!(dims, vec![0, 0, 0, 0]);

        let mut by_ideal = DualPresentation::quotient_by_ideal(
            fat.clone(),
            point.generators().to_vec(),
        )
        .unwrap();
        let dims: Vec<usize> = (0..=4)
            .map(|m| by_ideal.hilbert(&md(&[m])).unwrap())
            .collect();
        assert_eq!(dims, vec![1, 0, 0, 0, 0]);

        let x1 = Polynomial::var(g.clone(), 0);
        let x2 = Polynomial::var(g.clone(), 1);
        assert_eq!(membership(&mut by_ideal, &x1).unwrap(), Membership::Member);
        assert_eq!(membership(&mut by_ideal, &x2).unwrap(), Membership::Member);
        let one = Polynomial::constant(g.clone(), Rat::one());
        assert!(matches!(
            membership(&mut by_ideal, &one).unwrap(),
            Membership::NotMember { .. }
        ));
    }

    #[test]
    fn saturation_strips_the_embedded_origin() {
        let g = std_grading();
        let x1 = Polynomial::var(g.clone(), 0);
        let x2 = Polynomial::var(g.clone(), 1);
        let gens = vec![&x1 * &x1, &x1 * &x2];
        let ideal = GradedIdeal::new(g.clone(), gens).unwrap();
        let base = DualPresentation::of_ideal(ideal);
        let window = DegreeRegion::Below(md(&[3]));
        let (mut sat, steps) =
            saturate(base, vec![x1.clone(), x2.clone()], &window).unwrap();
        assert_eq!(steps, 1);
        let dims: Vec<usize> = (0..=3)
            .map(|m| sat.hilbert(&md(&[m])).unwrap())
            .collect();
        assert_eq!(dims, vec![1, 1, 1, 1]);
        assert_eq!(elements_of_degree(&mut sat, &md(&[1])).unwrap(), vec![x1]);
    }

    #[test]
    fn saturation_by_the_full_support_is_idempotent() {
        let g = std_grading();
        let x1 = Polynomial::var(g.clone(), 0);
        let x2 = Polynomial::var(g.clone(), 1);
        let ideal = GradedIdeal::new(g.clone(), vec![&x1 * &x2]).unwrap();
        let base = DualPresentation::of_ideal(ideal);
        let window = DegreeRegion::Below(md(&[4]));
        let (mut sat, steps) = saturate(base, vec![x1, x2], &window).unwrap();
        assert_eq!(steps, 0);
        let dims: Vec<usize> = (0..=4)
            .map(|m| sat.hilbert(&md(&[m])).unwrap())
            .collect();
        assert_eq!(dims, vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn multiplicity_of_the_running_point() {
        let g = line_grading();
        let mut point = DualPresentation::of_ideal(point_ideal(&g));
        assert_eq!(multiplicity(&mut point, &md(&[4])).unwrap(), (3, true));
        assert_eq!(multiplicity(&mut point, &md(&[2])).unwrap(), (3, false));
    }

    #[test]
    fn ideal_elements_are_recovered_from_the_dual() {
        let g = line_grading();
        let mut fat = DualPresentation::of_ideal(fat_point_ideal(&g));
        assert!(elements_of_degree(&mut fat, &md(&[1])).unwrap().is_empty());
        let quadratics = elements_of_degree(&mut fat, &md(&[2])).unwrap();
        assert_eq!(quadratics.len(), 1);
        assert_eq!(quadratics[0].to_string(), "x1^2 - x2");
    }

    #[test]
    fn work_report_counts_the_walk() {
        let g = line_grading();
        let point = DualPresentation::of_ideal(point_ideal(&g));
        let report = required_work(&point, &DegreeRegion::Below(md(&[4]))).unwrap();
        assert_eq!(report.leaves.len(), 1);
        assert_eq!(report.leaves[0].degrees, 5);
        assert_eq!(report.leaves[0].max_ambient, 3);

        let quot = DualPresentation::quotient_by_poly(
            point,
            Polynomial::var(g.clone(), 1),
        )
        .unwrap();
        let report = required_work(&quot, &DegreeRegion::Below(md(&[2]))).unwrap();
        assert_eq!(report.leaves[0].degrees, 5);
        assert!(format!("{report}").contains("degrees"));
    }
}
