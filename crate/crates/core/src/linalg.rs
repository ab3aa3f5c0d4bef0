//! Exact linear algebra over the rationals and the integers.
//!
//! Everything here is exact: rational matrices use arbitrary precision
//! fractions, and the integer routines (Smith normal form, incremental
//! echelon bases) run on `i128` with checked arithmetic and fall back to
//! `BigInt` if an intermediate value ever overflows.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in RationalMatrix::from_rows"
        );
        RationalMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_integers(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        RationalMatrix {
            rows,
            cols,
            data: entries.iter().map(|&x| rat(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Keeps only the listed columns, in the listed order.
    pub fn select_columns(&self, columns: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, columns.len());
        for i in 0..self.rows {
            for (k, &j) in columns.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Converts to an integer matrix if every entry is integral.
    pub fn to_integer(&self) -> Option<IntegerMatrix> {
        let data = self
            .data
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<Vec<_>>>()?;
        Some(IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    ///
    /// Columns are scanned left to right and the pivot in each column is the
    /// first nonzero entry at or below the current pivot row.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let idx = r * m.cols + j;
                if !m.data[idx].is_zero() {
                    m.data[idx] *= &inv;
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pivot_entry = m.get(r, j).clone();
                    if !pivot_entry.is_zero() {
                        let idx = i * m.cols + j;
                        m.data[idx] -= &factor * pivot_entry;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Rank over the rationals.
pub fn rank(m: &RationalMatrix) -> usize {
    m.rref().1.len()
}

/// Basis of the right null space.
///
/// One vector per free column of the reduced echelon form, in increasing
/// order of the free column. Each vector is scaled to integer entries with
/// gcd 1; the free variable it corresponds to is positive.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = m.rref();
    kernel_from_rref(&r, &pivots, m.cols())
}

fn kernel_from_rref(r: &RationalMatrix, pivots: &[usize], ncols: usize) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f).clone();
            }
            primitive_integer_vector(&v)
        })
        .collect()
}

/// Scales a nonzero rational vector to integer entries with gcd 1,
/// preserving the sign of every entry.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let lcm = v
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = scaled
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return v.to_vec();
    }
    scaled
        .into_iter()
        .map(|x| Rational::from_integer(x / &gcd))
        .collect()
}

/// Outcome of solving `A x = b` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    /// `particular + span(kernel)`, the kernel as returned by [`kernel_basis`].
    Affine {
        particular: Vec<Rational>,
        kernel: Vec<Vec<Rational>>,
    },
    Inconsistent,
}

impl LinearSolution {
    /// Some solution, if the system is consistent.
    pub fn any(&self) -> Option<&[Rational]> {
        match self {
            LinearSolution::Unique(x) => Some(x),
            LinearSolution::Affine { particular, .. } => Some(particular),
            LinearSolution::Inconsistent => None,
        }
    }
}

/// Solves `a x = b`. The particular solution of an underdetermined system
/// sets every free variable to zero.
pub fn solve_linear(a: &RationalMatrix, b: &[Rational]) -> LinearSolution {
    assert_eq!(a.rows(), b.len(), "right-hand side length must equal row count");
    let mut aug = RationalMatrix::zeros(a.rows(), a.cols() + 1);
    for (i, bi) in b.iter().enumerate() {
        for j in 0..a.cols() {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols(), bi.clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&a.cols()) {
        return LinearSolution::Inconsistent;
    }
    let mut x = vec![Rational::zero(); a.cols()];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r.get(i, a.cols()).clone();
    }
    if pivots.len() == a.cols() {
        LinearSolution::Unique(x)
    } else {
        LinearSolution::Affine {
            particular: x,
            kernel: kernel_from_rref(&r, &pivots, a.cols()),
        }
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols);
        IntegerMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut data = vec![BigInt::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        IntegerMatrix::new(self.rows, other.cols, data)
    }
}

/// Invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Positive, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Product of the invariant factors greater than one.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .fold(BigInt::one(), |acc, d| acc * d)
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let small: Option<Vec<i128>> = m.data.iter().map(ToPrimitive::to_i128).collect();
    let factors = small
        .and_then(|data| diagonalize(m.rows, m.cols, data))
        .map(|d| d.into_iter().map(BigInt::from).collect())
        .unwrap_or_else(|| {
            diagonalize(m.rows, m.cols, m.data.clone()).expect("BigInt arithmetic cannot overflow")
        });
    SmithForm {
        rank: factors.len(),
        invariant_factors: factors,
    }
}

/// Torsion order of the cokernel of the integer matrix whose columns are
/// given sparsely as `(row, entry)` pairs.
pub(crate) fn torsion_of_columns(rows: usize, columns: &[&[(usize, i8)]]) -> BigInt {
    let cols = columns.len();
    let mut data = vec![0i128; rows * cols];
    for (j, col) in columns.iter().enumerate() {
        for &(i, e) in col.iter() {
            data[i * cols + j] = i128::from(e);
        }
    }
    match diagonalize(rows, cols, data) {
        Some(d) => d
            .into_iter()
            .filter(|x| *x != 1)
            .fold(BigInt::one(), |acc, x| acc * BigInt::from(x)),
        None => {
            let mut big = IntegerMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols]);
            for (j, col) in columns.iter().enumerate() {
                for &(i, e) in col.iter() {
                    big.data[i * cols + j] = BigInt::from(e);
                }
            }
            smith_normal_form(&big).torsion_order()
        }
    }
}

/// Integer types usable by the checked elimination routines.
pub(crate) trait ExactInt:
    Clone + Integer + Signed + CheckedMul + CheckedSub + CheckedAdd + From<i8>
{
}

impl ExactInt for i128 {}
impl ExactInt for BigInt {}

/// Diagonalizes by unimodular row and column operations, returning the
/// nonzero diagonal as a divisibility chain, or `None` on overflow.
fn diagonalize<T: ExactInt>(rows: usize, cols: usize, mut a: Vec<T>) -> Option<Vec<T>> {
    let at = |i: usize, j: usize| i * cols + j;
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block goes to (t, t)
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &a[at(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[at(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut a, cols, t, pi);
        swap_cols(&mut a, rows, cols, t, pj);

        loop {
            let mut residue = false;
            for i in t + 1..rows {
                if a[at(i, t)].is_zero() {
                    continue;
                }
                let q = a[at(i, t)].div_floor(&a[at(t, t)]);
                for j in t..cols {
                    let sub = q.checked_mul(&a[at(t, j)])?;
                    a[at(i, j)] = a[at(i, j)].checked_sub(&sub)?;
                }
                residue |= !a[at(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[at(t, j)].is_zero() {
                    continue;
                }
                let q = a[at(t, j)].div_floor(&a[at(t, t)]);
                for i in t..rows {
                    let sub = q.checked_mul(&a[at(i, t)])?;
                    a[at(i, j)] = a[at(i, j)].checked_sub(&sub)?;
                }
                residue |= !a[at(t, j)].is_zero();
            }
            if residue {
                // a remainder smaller than the pivot survives; make it the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    let x = &a[at(i, t)];
                    if !x.is_zero() && x.abs() < a[at(best.0, best.1)].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let x = &a[at(t, j)];
                    if !x.is_zero() && x.abs() < a[at(best.0, best.1)].abs() {
                        best = (t, j);
                    }
                }
                swap_rows(&mut a, cols, t, best.0);
                swap_cols(&mut a, rows, cols, t, best.1);
                continue;
            }
            let pivot = a[at(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[at(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    for j in t..cols {
                        a[at(t, j)] = a[at(t, j)].checked_add(&a[at(i, j)])?;
                    }
                }
                None => break,
            }
        }
        t += 1;
    }
    Some((0..t).map(|i| a[at(i, i)].abs()).collect())
}

fn swap_rows<T>(a: &mut [T], cols: usize, r1: usize, r2: usize) {
    if r1 != r2 {
        for j in 0..cols {
            a.swap(r1 * cols + j, r2 * cols + j);
        }
    }
}

fn swap_cols<T>(a: &mut [T], rows: usize, cols: usize, c1: usize, c2: usize) {
    if c1 != c2 {
        for i in 0..rows {
            a.swap(i * cols + c1, i * cols + c2);
        }
    }
}

/// Echelon basis of integer vectors that supports push/pop, used to walk
/// independent column sets depth first.
#[derive(Clone, Debug)]
pub(crate) struct EchelonStack<T> {
    len: usize,
    basis: Vec<(usize, Vec<T>)>,
}

impl<T: ExactInt> EchelonStack<T> {
    pub(crate) fn new(len: usize) -> Self {
        EchelonStack {
            len,
            basis: Vec::new(),
        }
    }

    /// Reduces the sparse column against the basis. Pushes it and returns
    /// `Some(true)` when independent, returns `Some(false)` when dependent,
    /// and `None` on arithmetic overflow.
    pub(crate) fn push(&mut self, column: &[(usize, i8)]) -> Option<bool> {
        let mut v = vec![T::zero(); self.len];
        for &(i, e) in column {
            v[i] = T::from(e);
        }
        for (p, b) in &self.basis {
            if v[*p].is_zero() {
                continue;
            }
            let bp = &b[*p];
            let vp = v[*p].clone();
            for i in 0..self.len {
                let left = bp.checked_mul(&v[i])?;
                let right = vp.checked_mul(&b[i])?;
                v[i] = left.checked_sub(&right)?;
            }
            let g = v.iter().fold(T::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in v.iter_mut() {
                    *x = x.div_floor(&g);
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.basis.push((p, v));
                Some(true)
            }
            None => Some(false),
        }
    }

    pub(crate) fn pop(&mut self) {
        self.basis.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(rank(&RationalMatrix::identity(2)), 2);
        assert_eq!(rank(&RationalMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&RationalMatrix::zeros(0, 0)), 0);
    }

    #[test]
    fn rank_of_triangle_edge_boundary() {
        // rows 1,2,3; columns 12,13,23
        let d1 = RationalMatrix::from_integers(3, 3, &[-1, -1, 0, 1, 0, -1, 0, 1, 1]);
        assert_eq!(rank(&d1), 2);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&RationalMatrix::identity(2)).is_empty());
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let m = RationalMatrix::from_integers(1, 2, &[1, 1]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(k[0] == ints(&[1, -1]) || k[0] == ints(&[-1, 1]));
    }

    #[test]
    fn kernel_vectors_are_primitive() {
        let m = RationalMatrix::from_rows(vec![vec![frac(1, 2), frac(1, 3), rat(0)]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], ints(&[-2, 3, 0]));
        assert_eq!(k[1], ints(&[0, 0, 1]));
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_unique_affine_inconsistent() {
        let id = RationalMatrix::identity(2);
        assert_eq!(
            solve_linear(&id, &ints(&[3, 5])),
            LinearSolution::Unique(ints(&[3, 5]))
        );

        let row = RationalMatrix::from_integers(1, 2, &[1, 1]);
        match solve_linear(&row, &ints(&[2])) {
            LinearSolution::Affine { particular, kernel } => {
                assert_eq!(particular, ints(&[2, 0]));
                assert_eq!(kernel, vec![ints(&[-1, 1])]);
            }
            other => panic!("expected affine, got {other:?}"),
        }

        let dup = RationalMatrix::from_integers(2, 2, &[1, 1, 2, 2]);
        assert_eq!(solve_linear(&dup, &ints(&[1, 3])), LinearSolution::Inconsistent);
    }

    #[test]
    fn snf_of_diagonal() {
        let m = IntegerMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(s.rank, 2);
        assert_eq!(s.torsion_order(), BigInt::from(6));
    }

    #[test]
    fn snf_of_zero_matrix() {
        let s = smith_normal_form(&IntegerMatrix::from_i64(2, 3, &[0; 6]));
        assert!(s.invariant_factors.is_empty());
        assert_eq!(s.rank, 0);
        assert_eq!(s.torsion_order(), BigInt::from(1));
    }

    #[test]
    fn snf_handles_non_divisible_diagonal() {
        // diag(4, 6) -> (2, 12)
        let s = smith_normal_form(&IntegerMatrix::from_i64(2, 2, &[4, 0, 0, 6]));
        assert_eq!(s.invariant_factors, vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn snf_big_entries_fall_back() {
        let big = BigInt::from(i128::MAX) * BigInt::from(3);
        let m = IntegerMatrix::new(1, 2, vec![big.clone() * 2, big.clone() * 4]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors, vec![big * 2]);
    }

    #[test]
    fn echelon_stack_detects_dependence() {
        let mut e = EchelonStack::<i128>::new(3);
        assert_eq!(e.push(&[(0, -1), (1, 1)]), Some(true));
        assert_eq!(e.push(&[(1, -1), (2, 1)]), Some(true));
        assert_eq!(e.push(&[(0, -1), (2, 1)]), Some(false));
        e.pop();
        assert_eq!(e.basis.len(), 1);
        assert_eq!(e.push(&[(0, -1), (2, 1)]), Some(true));
    }
}
