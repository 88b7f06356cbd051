//! Exact-rational matrix laboratory: projectors, partial isometries,
//! Murray-von Neumann equivalence via the rank criterion, and the failure
//! of the every-projector-equivalent-to-the-identity condition in finite
//! dimension.
//!
//! Everything is arbitrary-precision rational; there is no tolerance
//! parameter anywhere in this module. The adjoint is the transpose
//! (real symmetric scalars).

use crate::oml::{FiniteOml, OmlError, RawOml};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixError {
    ShapeMismatch { what: &'static str },
    NotSquare,
    NotProjector,
    NotPartialIsometry,
    Singular,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::ShapeMismatch { what } => write!(f, "shape mismatch in {what}"),
            MatrixError::NotSquare => write!(f, "matrix is not square"),
            MatrixError::NotProjector => write!(f, "matrix is not a projector (P = P^T = P^2)"),
            MatrixError::NotPartialIsometry => {
                write!(f, "matrix is not a partial isometry (W W^T W = W)")
            }
            MatrixError::Singular => write!(f, "matrix is singular"),
        }
    }
}

impl core::error::Error for MatrixError {}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::ShapeMismatch { what: "from_rows" });
        }
        Ok(RationalMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| Rational::from(BigInt::from(v))))
            .collect();
        RationalMatrix { rows: r, cols: c, data }
    }

    /// Square diagonal 0/1 matrix supported on the given coordinates.
    pub fn coordinate_projector(n: usize, support: &[usize]) -> Self {
        let mut m = Self::zeros(n, n);
        for &i in support {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *m.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(row, p);
            let inv = m.at(row, col).clone();
            for r in (row + 1)..m.rows {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col) / &inv;
                for c in col..m.cols {
                    let v = m.at(r, c) - &factor * m.at(row, c);
                    *m.at_mut(r, c) = v;
                }
            }
            row += 1;
            rank += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Indices of pivot columns in the reduced row-echelon form; the
    /// corresponding columns are a basis of the column space.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(row, p);
            let inv = m.at(row, col).clone();
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col) / &inv;
                for c in col..m.cols {
                    let v = m.at(r, c) - &factor * m.at(row, c);
                    *m.at_mut(r, c) = v;
                }
            }
            pivots.push(col);
            row += 1;
            if row == m.rows {
                break;
            }
        }
        pivots
    }

    /// Submatrix of the given columns.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for (k, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                *m.at_mut(r, k) = self.at(r, c).clone();
            }
        }
        m
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot =
                (col..n).find(|&r| !m.at(r, col).is_zero()).ok_or(MatrixError::Singular)?;
            m.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let scale = m.at(col, col).clone();
            for c in 0..n {
                let v = m.at(col, c) / &scale;
                *m.at_mut(col, c) = v;
                let v = inv.at(col, c) / &scale;
                *inv.at_mut(col, c) = v;
            }
            for r in 0..n {
                if r == col || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in 0..n {
                    let v = m.at(r, c) - &factor * m.at(col, c);
                    *m.at_mut(r, c) = v;
                    let v = inv.at(r, c) - &factor * inv.at(col, c);
                    *inv.at_mut(r, c) = v;
                }
            }
        }
        Ok(inv)
    }

    /// Orthogonal projector onto the column space, `B (B^T B)^-1 B^T`
    /// for a column-space basis `B`.
    pub fn column_space_projector(&self) -> Self {
        let pivots = self.pivot_columns();
        if pivots.is_empty() {
            return Self::zeros(self.rows, self.rows);
        }
        let b = self.select_columns(&pivots);
        let bt = b.transpose();
        let gram = &bt * &b;
        let gram_inv = gram.inverse().expect("Gram matrix of independent columns");
        &(&b * &gram_inv) * &bt
    }

    /// Entries as `p/q` strings, row-major.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| format!("{}", self.at(r, c))).collect())
            .collect()
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix addition shape");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        RationalMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix subtraction shape");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        RationalMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out.at(r, c) + a * rhs.at(k, c);
                    *out.at_mut(r, c) = v;
                }
            }
        }
        out
    }
}

/// A validated orthogonal projector: square with `P = P^T = P^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projector(RationalMatrix);

impl Projector {
    pub fn new(m: RationalMatrix) -> Result<Projector, MatrixError> {
        if !m.is_square() {
            return Err(MatrixError::NotSquare);
        }
        if m.transpose() != m || &(&m * &m) != &m {
            return Err(MatrixError::NotProjector);
        }
        Ok(Projector(m))
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    /// Projector onto the span of a nonzero vector: `v v^T / (v^T v)`.
    pub fn onto_line(v: &[Rational]) -> Result<Projector, MatrixError> {
        let norm2: Rational = v.iter().map(|x| x * x).sum();
        if norm2.is_zero() {
            return Err(MatrixError::NotProjector);
        }
        let n = v.len();
        let mut m = RationalMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                *m.at_mut(r, c) = &v[r] * &v[c] / &norm2;
            }
        }
        Projector::new(m)
    }

    /// Images orthogonal: `P Q = 0`.
    pub fn orthogonal_to(&self, other: &Projector) -> bool {
        (&self.0 * &other.0).is_zero()
    }
}

/// A validated partial isometry: square with `W W^T W = W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialIsometry(RationalMatrix);

impl PartialIsometry {
    pub fn new(m: RationalMatrix) -> Result<PartialIsometry, MatrixError> {
        if !m.is_square() {
            return Err(MatrixError::NotSquare);
        }
        let wt = m.transpose();
        if &(&(&m * &wt) * &m) != &m {
            return Err(MatrixError::NotPartialIsometry);
        }
        Ok(PartialIsometry(m))
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.0
    }
}

/// The five equivalent characterisations, each checked independently:
/// image-projector and kernel-complement-projector identities, the two
/// triple-product identities, and the definitional isometry condition
/// for the adjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartialIsometryReport {
    /// `W W^T` equals the projector onto the image of `W`.
    pub image_projector: bool,
    /// `W^T W` equals the projector onto the orthocomplement of the
    /// kernel (the row space).
    pub kernel_complement_projector: bool,
    /// `W W^T W = W`.
    pub triple_product: bool,
    /// `W^T W W^T = W^T`.
    pub adjoint_triple_product: bool,
    /// `W^T` restricted to the orthocomplement of its kernel preserves
    /// inner products.
    pub adjoint_is_partial_isometry: bool,
}

impl PartialIsometryReport {
    pub fn verdicts(&self) -> [bool; 5] {
        [
            self.image_projector,
            self.kernel_complement_projector,
            self.triple_product,
            self.adjoint_triple_product,
            self.adjoint_is_partial_isometry,
        ]
    }

    pub fn agree(&self) -> bool {
        let v = self.verdicts();
        v.iter().all(|&b| b == v[0])
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts().into_iter().all(|b| b)
    }
}

/// Checks the partial-isometry characterisations for a square matrix.
pub fn is_partial_isometry(w: &RationalMatrix) -> Result<PartialIsometryReport, MatrixError> {
    if !w.is_square() {
        return Err(MatrixError::NotSquare);
    }
    let wt = w.transpose();
    let wwt = w * &wt;
    let wtw = &wt * w;

    let image_projector = wwt == w.column_space_projector();
    let kernel_complement_projector = wtw == wt.column_space_projector();
    let triple_product = &(&wwt * w) == w;
    let adjoint_triple_product = &(&wtw * &wt) == &wt;

    // W^T restricted to Ker(W^T)-perp = Imag(W): on a column-space basis
    // B of W, inner products must be preserved.
    let pivots = w.pivot_columns();
    let adjoint_is_partial_isometry = if pivots.is_empty() {
        true
    } else {
        let b = w.select_columns(&pivots);
        let wtb = &wt * &b;
        &(&wtb.transpose() * &wtb) == &(&b.transpose() * &b)
    };

    Ok(PartialIsometryReport {
        image_projector,
        kernel_complement_projector,
        triple_product,
        adjoint_triple_product,
        adjoint_is_partial_isometry,
    })
}

#[derive(Clone, Debug)]
pub struct MvnReport {
    pub rank_p: usize,
    pub rank_q: usize,
    pub equivalent: bool,
    /// Explicit partial isometry with `W W^T = P` and `W^T W = Q`;
    /// emitted when P = Q or both are coordinate projectors.
    pub witness: Option<PartialIsometry>,
}

fn diagonal_support(p: &RationalMatrix) -> Option<Vec<usize>> {
    let n = p.rows();
    let mut support = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let v = p.at(r, c);
            if r == c {
                if v.is_one() {
                    support.push(r);
                } else if !v.is_zero() {
                    return None;
                }
            } else if !v.is_zero() {
                return None;
            }
        }
    }
    Some(support)
}

/// Murray-von Neumann equivalence by the rank criterion, with an explicit
/// partial-isometry witness in the coordinate cases.
pub fn mvn_equivalent(p: &Projector, q: &Projector) -> Result<MvnReport, MatrixError> {
    if p.dim() != q.dim() {
        return Err(MatrixError::ShapeMismatch { what: "mvn_equivalent" });
    }
    let rank_p = p.matrix().rank();
    let rank_q = q.matrix().rank();
    let equivalent = rank_p == rank_q;
    let mut witness = None;
    if equivalent {
        if p == q {
            witness = Some(PartialIsometry::new(p.matrix().clone())?);
        } else if let (Some(sp), Some(sq)) =
            (diagonal_support(p.matrix()), diagonal_support(q.matrix()))
        {
            let mut w = RationalMatrix::zeros(p.dim(), p.dim());
            for (&i, &j) in sp.iter().zip(&sq) {
                *w.at_mut(i, j) = Rational::one();
            }
            let w = PartialIsometry::new(w)?;
            debug_assert_eq!(&(w.matrix() * &w.matrix().transpose()), p.matrix());
            debug_assert_eq!(&(&w.matrix().transpose() * w.matrix()), q.matrix());
            witness = Some(w);
        }
    }
    Ok(MvnReport { rank_p, rank_q, equivalent, witness })
}

/// The rank as dimension value.
pub fn rank_dimension(p: &Projector) -> usize {
    p.matrix().rank()
}

/// Audit of the dimension-function requirements over a supplied family:
/// zero detection, rank equality as the equivalence criterion, and
/// additivity on orthogonal pairs (whose sum must itself be a projector,
/// and must fail to be one on non-orthogonal pairs).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DimensionAudit {
    pub zero_iff_dimension_zero: bool,
    pub equivalence_iff_equal_dimension: bool,
    pub orthogonal_additivity: bool,
    pub sum_projector_iff_orthogonal: bool,
}

impl DimensionAudit {
    pub fn all_pass(&self) -> bool {
        self.zero_iff_dimension_zero
            && self.equivalence_iff_equal_dimension
            && self.orthogonal_additivity
            && self.sum_projector_iff_orthogonal
    }
}

pub fn dimension_audit(family: &[Projector]) -> Result<DimensionAudit, MatrixError> {
    let mut audit = DimensionAudit {
        zero_iff_dimension_zero: true,
        equivalence_iff_equal_dimension: true,
        orthogonal_additivity: true,
        sum_projector_iff_orthogonal: true,
    };
    for p in family {
        audit.zero_iff_dimension_zero &= (rank_dimension(p) == 0) == p.matrix().is_zero();
    }
    for p in family {
        for q in family {
            if p.dim() != q.dim() {
                continue;
            }
            let report = mvn_equivalent(p, q)?;
            audit.equivalence_iff_equal_dimension &=
                report.equivalent == (report.rank_p == report.rank_q);
            let sum = p.matrix() + q.matrix();
            let sum_is_projector = Projector::new(sum).is_ok();
            let orthogonal = p.orthogonal_to(q);
            audit.sum_projector_iff_orthogonal &= sum_is_projector == orthogonal;
            if orthogonal {
                let sum = Projector::new(p.matrix() + q.matrix())?;
                audit.orthogonal_additivity &=
                    rank_dimension(&sum) == rank_dimension(p) + rank_dimension(q);
            }
        }
    }
    Ok(audit)
}

/// Certificate that, in dimension `n`, no projector of intermediate rank
/// is equivalent to the identity: the dimension function takes every
/// value 0..n, so the every-nonzero-projector-equivalent-to-1 condition
/// fails whenever 1 <= n.
#[derive(Clone, Debug)]
pub struct BorchersCertificate {
    pub n: usize,
    /// `(rank, identity_rank)` for each strictly intermediate rank.
    pub excluded: Vec<(usize, usize)>,
    /// Vacuous for n = 1 (no strictly intermediate projector exists).
    pub vacuous: bool,
}

pub fn borchers_fails(n: usize) -> BorchersCertificate {
    assert!((1..=6).contains(&n), "desk-scale certificate covers n in 1..=6");
    let mut excluded = Vec::new();
    for rank in 1..n {
        // A representative coordinate projector of this rank has
        // dimension value `rank`, never n.
        let support: Vec<usize> = (0..rank).collect();
        let p = Projector::new(RationalMatrix::coordinate_projector(n, &support))
            .expect("coordinate projector");
        let d = rank_dimension(&p);
        debug_assert_eq!(d, rank);
        excluded.push((d, n));
    }
    BorchersCertificate { n, excluded, vacuous: n == 1 }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateInput(pub &'static str);

impl fmt::Display for DegenerateInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degenerate input: {}", self.0)
    }
}

impl core::error::Error for DegenerateInput {}

#[derive(Clone, Debug)]
pub struct LinePairReport {
    pub first: usize,
    pub second: usize,
    /// Name, in the generated lattice, of a common complement of the two
    /// lines (a witness of perspectivity).
    pub common_complement: Option<String>,
    /// A rational orthogonal matrix mapping the first line onto the
    /// second, when one exists over the rationals.
    pub unitary_witness: Option<RationalMatrix>,
    pub mvn_equivalent: bool,
}

#[derive(Debug)]
pub struct PerspectivityDemo {
    pub lattice: FiniteOml,
    /// Lattice element name of each (deduplicated) input line.
    pub line_names: Vec<String>,
    pub pairs: Vec<LinePairReport>,
    /// The generated finite sublattice can certify perspectivity but
    /// never refute it; an absent common complement here says nothing
    /// about the full projection lattice.
    pub note: &'static str,
}

fn same_line(u: &[Rational; 2], v: &[Rational; 2]) -> bool {
    (&u[0] * &v[1] - &u[1] * &v[0]).is_zero()
}

fn perp(u: &[Rational; 2]) -> [Rational; 2] {
    [-u[1].clone(), u[0].clone()]
}

/// Exact square root of a nonnegative rational, if it is a square.
fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let num = q.numer().sqrt();
    let den = q.denom().sqrt();
    if &(&num * &num) == q.numer() && &(&den * &den) == q.denom() {
        Some(Rational::new(num, den))
    } else {
        None
    }
}

fn dot(u: &[Rational; 2], v: &[Rational; 2]) -> Rational {
    &u[0] * &v[0] + &u[1] * &v[1]
}

fn cross(u: &[Rational; 2], v: &[Rational; 2]) -> Rational {
    &u[0] * &v[1] - &u[1] * &v[0]
}

/// Rational rotation mapping span(u) onto span(v), when the product of
/// the squared norms is a rational square.
pub fn rational_rotation_between(
    u: &[Rational; 2],
    v: &[Rational; 2],
) -> Option<RationalMatrix> {
    let norms = dot(u, u) * dot(v, v);
    let r = rational_sqrt(&norms)?;
    let c = dot(u, v) / &r;
    let s = cross(u, v) / &r;
    let mut m = RationalMatrix::zeros(2, 2);
    *m.at_mut(0, 0) = c.clone();
    *m.at_mut(0, 1) = -s.clone();
    *m.at_mut(1, 0) = s;
    *m.at_mut(1, 1) = c;
    debug_assert_eq!(&(&m.transpose() * &m), &RationalMatrix::identity(2));
    Some(m)
}

/// Builds the finite sublattice of the plane generated by the given lines
/// (with their orthocomplements and bounds) and reports, for each pair of
/// distinct lines, a perspectivity witness, a rational unitary witness
/// when available, and the rank-criterion equivalence verdict.
pub fn unitary_vs_perspective_demo(
    lines: &[[Rational; 2]],
) -> Result<PerspectivityDemo, DegenerateInput> {
    if lines.iter().any(|l| l[0].is_zero() && l[1].is_zero()) {
        return Err(DegenerateInput("zero vector does not span a line"));
    }
    // Deduplicate projectively, keeping input order, then close under
    // orthocomplement.
    let mut reps: Vec<[Rational; 2]> = Vec::new();
    let mut input_positions = Vec::new();
    for l in lines {
        match reps.iter().position(|r| same_line(r, l)) {
            Some(p) => input_positions.push(p),
            None => {
                reps.push(l.clone());
                input_positions.push(reps.len() - 1);
            }
        }
    }
    if reps.len() < 2 {
        return Err(DegenerateInput("need at least 2 distinct lines"));
    }
    let mut all = reps.clone();
    for l in &reps {
        let p = perp(l);
        if !all.iter().any(|r| same_line(r, &p)) {
            all.push(p);
        }
    }

    // Carrier [0, 1, lines...]; distinct lines meet at 0 and join to 1.
    let n = all.len() + 2;
    let mut names = vec!["0".to_string(), "1".to_string()];
    names.extend((0..all.len()).map(|i| format!("line{i}")));
    let leq = (0..n)
        .map(|i| (0..n).map(|j| i == j || i == 0 || j == 1).collect())
        .collect();
    let mut neg = vec![1, 0];
    for l in &all {
        let p = perp(l);
        let target = all.iter().position(|r| same_line(r, &p)).expect("closed under perp");
        neg.push(target + 2);
    }
    let raw = RawOml { names: names.clone(), leq, neg, bottom: 0, top: 1 };
    let lattice = FiniteOml::verify(&raw).unwrap_or_else(|e: OmlError| {
        unreachable!("generated line lattice always verifies: {e}")
    });

    let mut pairs = Vec::new();
    for i in 0..reps.len() {
        for j in (i + 1)..reps.len() {
            let (ei, ej) = (i + 2, j + 2);
            let common = (0..n).find(|&c| {
                lattice.join(ei, c) == lattice.top()
                    && lattice.join(ej, c) == lattice.top()
                    && lattice.meet(ei, c) == lattice.bottom()
                    && lattice.meet(ej, c) == lattice.bottom()
            });
            debug_assert_eq!(common.is_some(), lattice.perspective(ei, ej).is_some());
            let pi = Projector::onto_line(&reps[i]).expect("nonzero line");
            let pj = Projector::onto_line(&reps[j]).expect("nonzero line");
            let mvn = mvn_equivalent(&pi, &pj).expect("same dimension");
            pairs.push(LinePairReport {
                first: i,
                second: j,
                common_complement: common.map(|c| names[c].clone()),
                unitary_witness: rational_rotation_between(&reps[i], &reps[j]),
                mvn_equivalent: mvn.equivalent,
            });
        }
    }
    Ok(PerspectivityDemo {
        lattice,
        line_names: (0..reps.len()).map(|i| format!("line{i}")).collect(),
        pairs,
        note: "perspectivity witnesses certify; their absence in the generated \
               sublattice refutes nothing about the full projection lattice",
    })
}
