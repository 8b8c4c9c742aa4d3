//! Gradings by integer matrices and the combinatorics of their weight cones.
//!
//! A grading assigns variable `x_i` the degree given by column `i` of an
//! integer matrix `A` with `k` rows.  The weight semigroup is generated by
//! those columns; the crate requires it to be pointed (no units besides the
//! constants), which holds exactly when some matrix `B` of inward facet
//! normals satisfies `B * a_i >= 0` for every column `a_i` and has rank `k`.
//! `B` is either supplied and checked or computed from `A`.
//!
//! On top of `B` the module answers the questions the dual-space walk asks:
//! is a degree inside the cone, which monomials have a given degree, which
//! degrees lie below a given one, and in which order should they be visited
//! so that every predecessor comes first.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{Matrix, Rat};
use crate::{Error, Result};

/// A degree in `Z^k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree {
    coords: Vec<i64>,
}

impl MultiDegree {
    pub fn new(coords: Vec<i64>) -> Self {
        MultiDegree { coords }
    }

    pub fn zero(k: usize) -> Self {
        MultiDegree { coords: vec![0; k] }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> i64 {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Sum of the coordinates, used as a sweep heuristic.
    pub fn coord_sum(&self) -> i64 {
        self.coords.iter().sum()
    }
}

impl std::ops::Add for &MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        assert_eq!(self.len(), rhs.len(), "degree lengths differ");
        MultiDegree::new(
            self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        )
    }
}

impl std::ops::Sub for &MultiDegree {
    type Output = MultiDegree;
    fn sub(self, rhs: &MultiDegree) -> MultiDegree {
        assert_eq!(self.len(), rhs.len(), "degree lengths differ");
        MultiDegree::new(
            self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        )
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A monomial exponent vector in `N^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector {
    exps: Vec<u32>,
}

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        ExponentVector { exps }
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector { exps: vec![0; n] }
    }

    /// The standard basis exponent `e_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i < n, "variable index out of range");
        let mut exps = vec![0; n];
        exps[i] = 1;
        ExponentVector { exps }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn get(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn add(&self, rhs: &ExponentVector) -> ExponentVector {
        assert_eq!(self.len(), rhs.len(), "exponent lengths differ");
        ExponentVector::new(
            self.exps.iter().zip(&rhs.exps).map(|(a, b)| a + b).collect(),
        )
    }

    /// Componentwise difference, or `None` when any entry would go negative.
    pub fn checked_sub(&self, rhs: &ExponentVector) -> Option<ExponentVector> {
        assert_eq!(self.len(), rhs.len(), "exponent lengths differ");
        self.exps
            .iter()
            .zip(&rhs.exps)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(ExponentVector::new)
    }

    /// The canonical monomial order used for ambient bases: total degree
    /// descending, ties broken lexicographically descending.  Sorting with
    /// this comparator puts the largest monomial first.
    pub fn canonical_cmp(&self, other: &ExponentVector) -> Ordering {
        other
            .total_degree()
            .cmp(&self.total_degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }

    /// The order used when printing functionals: total degree ascending,
    /// ties broken lexicographically ascending.
    pub fn display_cmp(&self, other: &ExponentVector) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A validated grading: the degree matrix `A`, inward facet normals `B`
/// for the weight cone, and variable names for parsing and printing.
#[derive(Clone, PartialEq, Eq)]
pub struct Grading {
    a: Vec<Vec<i64>>,
    b: Vec<Vec<i64>>,
    var_names: Vec<String>,
    /// Cached products `B * a_j`, one row per row of `B`.
    ba: Vec<Vec<i64>>,
}

impl fmt::Debug for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Grading(vars {:?}, degrees {:?}, cone {:?})",
            self.var_names, self.a, self.b
        )
    }
}

impl Grading {
    /// Validates a grading.  `a` is the `k x n` degree matrix in row-major
    /// order; `b` optionally supplies the facet normals, which are computed
    /// from `a` when absent.
    pub fn new(
        a: Vec<Vec<i64>>,
        b: Option<Vec<Vec<i64>>>,
        var_names: Vec<String>,
    ) -> Result<Self> {
        let k = a.len();
        if k == 0 {
            return Err(Error::DimensionMismatch(
                "degree matrix has no rows".to_string(),
            ));
        }
        let n = a[0].len();
        if n == 0 {
            return Err(Error::DimensionMismatch(
                "degree matrix has no columns".to_string(),
            ));
        }
        if a.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch(
                "degree matrix rows have unequal lengths".to_string(),
            ));
        }
        if var_names.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} variable names for {} degree columns",
                var_names.len(),
                n
            )));
        }
        for j in 0..n {
            if (0..k).all(|i| a[i][j] == 0) {
                return Err(Error::NotPointed(format!(
                    "variable `{}` has degree zero",
                    var_names[j]
                )));
            }
        }
        let b = match b {
            Some(rows) => {
                validate_cone_rows(&a, &rows, k, n)?;
                rows
            }
            None => compute_facet_normals(&a, k, n)?,
        };
        let ba = (0..b.len())
            .map(|r| (0..n).map(|j| dot_col(&b[r], &a, j)).collect())
            .collect();
        Ok(Grading { a, b, var_names, ba })
    }

    /// Number of grading coordinates `k`.
    pub fn k(&self) -> usize {
        self.a.len()
    }

    /// Number of ring variables.
    pub fn nvars(&self) -> usize {
        self.a[0].len()
    }

    pub fn a_matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn b_matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.var_names[i]
    }

    /// The degree of variable `x_i`, column `i` of `A`.
    pub fn var_degree(&self, i: usize) -> MultiDegree {
        assert!(i < self.nvars(), "variable index out of range");
        MultiDegree::new(self.a.iter().map(|row| row[i]).collect())
    }

    /// The degree `A * alpha` of a monomial.
    pub fn degree_of(&self, alpha: &ExponentVector) -> Result<MultiDegree> {
        if alpha.len() != self.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "exponent vector of length {} under a grading of {} variables",
                alpha.len(),
                self.nvars()
            )));
        }
        let coords = self
            .a
            .iter()
            .map(|row| row.iter().zip(alpha.exps()).map(|(c, &e)| c * e as i64).sum())
            .collect();
        Ok(MultiDegree::new(coords))
    }

    /// Whether `m` satisfies `B * m >= 0`, i.e. lies in the weight cone.
    pub fn in_weight_semigroup(&self, m: &MultiDegree) -> bool {
        assert_eq!(m.len(), self.k(), "degree length differs from grading");
        self.b.iter().all(|row| dot(row, m.coords()) >= 0)
    }

    /// The partial order of the weight cone: `s` precedes `m` when both
    /// `s` and `m - s` lie in the cone.
    pub fn weight_leq(&self, s: &MultiDegree, m: &MultiDegree) -> bool {
        self.in_weight_semigroup(s) && self.in_weight_semigroup(&(m - s))
    }

    /// All exponent vectors of degree exactly `m`, in canonical order.
    /// Empty when no monomial has that degree.
    pub fn monomials_of_degree(&self, m: &MultiDegree) -> Vec<ExponentVector> {
        assert_eq!(m.len(), self.k(), "degree length differs from grading");
        if !self.in_weight_semigroup(m) {
            return Vec::new();
        }
        let bres: Vec<i64> = self.b.iter().map(|row| dot(row, m.coords())).collect();
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars()];
        self.enumerate_from(0, m.coords().to_vec(), bres, &mut exps, &mut out);
        out.sort_by(|x, y| x.canonical_cmp(y));
        out
    }

    fn enumerate_from(
        &self,
        var: usize,
        residual: Vec<i64>,
        bres: Vec<i64>,
        exps: &mut Vec<u32>,
        out: &mut Vec<ExponentVector>,
    ) {
        if var == self.nvars() {
            if residual.iter().all(|&c| c == 0) {
                out.push(ExponentVector::new(exps.clone()));
            }
            return;
        }
        // B * a_var >= 0 with B of full rank and a_var != 0 guarantees some
        // strictly positive entry, so the exponent range below is finite.
        let mut e_max = i64::MAX;
        for (r, row_ba) in self.ba.iter().enumerate() {
            if row_ba[var] > 0 {
                e_max = e_max.min(bres[r] / row_ba[var]);
            }
        }
        debug_assert!(e_max < i64::MAX, "unbounded exponent under a pointed grading");
        let col: Vec<i64> = self.a.iter().map(|row| row[var]).collect();
        for e in 0..=e_max {
            let residual_next: Vec<i64> =
                residual.iter().zip(&col).map(|(r, c)| r - e * c).collect();
            let bres_next: Vec<i64> = bres
                .iter()
                .zip(self.ba.iter().map(|row| row[var]))
                .map(|(r, c)| r - e * c)
                .collect();
            debug_assert!(bres_next.iter().all(|&x| x >= 0));
            exps[var] = e as u32;
            self.enumerate_from(var + 1, residual_next, bres_next, exps, out);
        }
        exps[var] = 0;
    }

    /// The finite set of degrees below `m` in the cone order, sorted by
    /// coordinate sum and then lexicographically.
    pub fn lattice_points_below(&self, m: &MultiDegree) -> Result<Vec<MultiDegree>> {
        assert_eq!(m.len(), self.k(), "degree length differs from grading");
        if !self.in_weight_semigroup(m) {
            return Err(Error::NotInSemigroup(m.clone()));
        }
        let k = self.k();
        let bm: Vec<i64> = self.b.iter().map(|row| dot(row, m.coords())).collect();
        // The region is the polytope 0 <= B*s <= B*m.  Its vertices solve
        // k-subsets of the facet equalities; their bounding box limits the
        // integer search.
        let mut constraints: Vec<(Vec<i64>, i64)> = Vec::new();
        for (row, &rhs) in self.b.iter().zip(&bm) {
            constraints.push((row.clone(), 0));
            let negated: Vec<i64> = row.iter().map(|c| -c).collect();
            constraints.push((negated, -rhs));
        }
        let mut lo = vec![i64::MAX; k];
        let mut hi = vec![i64::MIN; k];
        let mut cover = |point: &[Rat]| {
            for i in 0..k {
                lo[i] = lo[i].min(rat_floor_i64(&point[i]));
                hi[i] = hi[i].max(rat_ceil_i64(&point[i]));
            }
        };
        for subset in subsets_of_size(constraints.len(), k) {
            let coef = Matrix::from_fn(k, k, |i, j| {
                Rat::integer(constraints[subset[i]].0[j])
            });
            let rhs: Vec<Rat> = subset
                .iter()
                .map(|&s| Rat::integer(constraints[s].1))
                .collect();
            let Some(vertex) = solve_unique(&coef, &rhs) else { continue };
            let feasible = constraints.iter().all(|(row, c)| {
                let mut acc = Rat::zero();
                for (coef, v) in row.iter().zip(&vertex) {
                    acc += &(&Rat::integer(*coef) * v);
                }
                acc >= Rat::integer(*c)
            });
            if feasible {
                cover(&vertex);
            }
        }
        assert!(
            (0..k).all(|i| lo[i] <= hi[i]),
            "bounded nonempty polytope must have vertices"
        );
        let mut points = Vec::new();
        let mut cursor = lo.clone();
        'grid: loop {
            let s = MultiDegree::new(cursor.clone());
            if self.in_weight_semigroup(&s) && self.weight_leq(&s, m) {
                points.push(s);
            }
            for i in (0..k).rev() {
                if cursor[i] < hi[i] {
                    cursor[i] += 1;
                    continue 'grid;
                }
                cursor[i] = lo[i];
            }
            break;
        }
        points.sort_by(|x, y| {
            x.coord_sum()
                .cmp(&y.coord_sum())
                .then_with(|| x.coords().cmp(y.coords()))
        });
        Ok(points)
    }

    /// A linear extension of the cone order on the degrees below `m`:
    /// every degree appears after all of its predecessors `s - deg x_i`.
    ///
    /// The sweep repeatedly moves the first degree whose predecessors are
    /// all either outside the cone or already placed; for a pointed grading
    /// such a degree always exists.
    pub fn sort_lattice_points(&self, m: &MultiDegree) -> Result<Vec<MultiDegree>> {
        let points = self.lattice_points_below(m)?;
        let mut pending: Vec<MultiDegree> =
            points.into_iter().filter(|p| !p.is_zero()).collect();
        let mut placed_set: HashSet<MultiDegree> = HashSet::new();
        let zero = MultiDegree::zero(self.k());
        placed_set.insert(zero.clone());
        let mut placed = vec![zero];
        while !pending.is_empty() {
            let idx = pending
                .iter()
                .position(|s| {
                    (0..self.nvars()).all(|i| {
                        let pred = s - &self.var_degree(i);
                        !self.in_weight_semigroup(&pred) || placed_set.contains(&pred)
                    })
                })
                .expect("a pointed cone order always has a next degree");
            let s = pending.remove(idx);
            placed_set.insert(s.clone());
            placed.push(s);
        }
        Ok(placed)
    }
}

fn dot(row: &[i64], v: &[i64]) -> i64 {
    row.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn dot_col(row: &[i64], a: &[Vec<i64>], j: usize) -> i64 {
    row.iter().zip(a).map(|(c, arow)| c * arow[j]).sum()
}

fn validate_cone_rows(a: &[Vec<i64>], rows: &[Vec<i64>], k: usize, n: usize) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::InvalidB("cone matrix has no rows".to_string()));
    }
    if rows.iter().any(|row| row.len() != k) {
        return Err(Error::DimensionMismatch(format!(
            "cone rows must have length {k}"
        )));
    }
    for (r, row) in rows.iter().enumerate() {
        for j in 0..n {
            if dot_col(row, a, j) < 0 {
                return Err(Error::InvalidB(format!(
                    "row {r} of the cone matrix is negative on degree column {j}"
                )));
            }
        }
    }
    let rank = Matrix::from_fn(rows.len(), k, |i, j| Rat::integer(rows[i][j])).rank();
    if rank < k {
        return Err(Error::InvalidB(format!(
            "cone matrix has rank {rank} < {k}, so it cannot certify pointedness"
        )));
    }
    Ok(())
}

/// Computes inward facet normals of the cone spanned by the columns of `a`,
/// or fails with `NotPointed` when that cone contains a line.
fn compute_facet_normals(a: &[Vec<i64>], k: usize, n: usize) -> Result<Vec<Vec<i64>>> {
    if k == 1 {
        let positives = a[0].iter().filter(|&&c| c > 0).count();
        let negatives = a[0].iter().filter(|&&c| c < 0).count();
        return if negatives == 0 && positives == n {
            Ok(vec![vec![1]])
        } else if positives == 0 && negatives == n {
            Ok(vec![vec![-1]])
        } else {
            Err(Error::NotPointed(
                "variable degrees span both signs".to_string(),
            ))
        };
    }
    let a_mat = Matrix::from_fn(k, n, |i, j| Rat::integer(a[i][j]));
    let d = a_mat.rank();
    // Vectors orthogonal to every column: both signs are valid inequalities
    // and together they pin the cone inside the column span.
    let complement = a_mat.transpose().kernel();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for r in 0..complement.rows() {
        let prim = primitive_integer_row(complement.row(r));
        rows.push(prim.iter().map(|c| -c).collect());
        rows.push(prim);
    }
    // Every facet of the column cone is spanned by d - 1 of the columns, so
    // its normal direction inside the span is the kernel of those columns
    // together with the complement.
    for subset in subsets_of_size(n, d - 1) {
        let mut stacked = Matrix::zero(0, k);
        for &j in &subset {
            let col_as_row =
                Matrix::from_fn(1, k, |_, i| Rat::integer(a[i][j]));
            stacked = stacked.stack(&col_as_row);
        }
        stacked = stacked.stack(&complement);
        let kernel = stacked.kernel();
        if kernel.rows() != 1 {
            continue;
        }
        let normal = primitive_integer_row(kernel.row(0));
        let dots: Vec<i64> = (0..n).map(|j| dot_col(&normal, a, j)).collect();
        if dots.iter().all(|&x| x >= 0) {
            rows.push(normal);
        } else if dots.iter().all(|&x| x <= 0) {
            rows.push(normal.iter().map(|c| -c).collect());
        }
    }
    rows.sort();
    rows.dedup();
    let rank = Matrix::from_fn(rows.len(), k, |i, j| Rat::integer(rows[i][j])).rank();
    if rank < k {
        return Err(Error::NotPointed(
            "weight cone contains a line".to_string(),
        ));
    }
    Ok(rows)
}

/// Scales a rational row to a primitive integer vector (gcd one), keeping
/// its direction.
fn primitive_integer_row(row: &[Rat]) -> Vec<i64> {
    let bigs: Vec<_> = row.iter().map(Rat::to_big).collect();
    let mut lcm = BigInt::from(1);
    for b in &bigs {
        lcm = lcm.lcm(b.denom());
    }
    let mut ints: Vec<BigInt> = bigs.iter().map(|b| b.numer() * &lcm / b.denom()).collect();
    let mut gcd = BigInt::zero();
    for i in &ints {
        gcd = gcd.gcd(i);
    }
    if !gcd.is_zero() && gcd != BigInt::from(1) {
        for i in &mut ints {
            *i = &*i / &gcd;
        }
    }
    ints.iter()
        .map(|i| i.to_i64().expect("facet normal exceeds i64"))
        .collect()
}

/// All strictly increasing index tuples of the given size from `0..n`.
fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(n: usize, size: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < size - current.len() {
                break;
            }
            current.push(i);
            rec(n, size, i + 1, current, out);
            current.pop();
        }
    }
    rec(n, size, 0, &mut current, &mut out);
    out
}

/// Solves `coef * x = rhs` when the solution is unique.
fn solve_unique(coef: &Matrix, rhs: &[Rat]) -> Option<Vec<Rat>> {
    let k = coef.rows();
    let augmented = Matrix::from_fn(k, k + 1, |i, j| {
        if j < k {
            coef.at(i, j).clone()
        } else {
            rhs[i].clone()
        }
    });
    let r = augmented.rref();
    if r.rows() < k {
        return None;
    }
    for row in 0..k {
        if (0..k).all(|c| r.at(row, c).is_zero()) {
            return None;
        }
    }
    Some((0..k).map(|i| r.at(i, k).clone()).collect())
}

fn rat_floor_i64(x: &Rat) -> i64 {
    x.to_big().floor().to_integer().to_i64().expect("degree bound exceeds i64")
}

fn rat_ceil_i64(x: &Rat) -> i64 {
    x.to_big().ceil().to_integer().to_i64().expect("degree bound exceeds i64")
}
