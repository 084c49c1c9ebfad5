//! Exact arithmetic over prime fields and the dense linear algebra used by
//! representation search and scheme synthesis.
//!
//! Moduli fit in a machine word; products go through `u128`, so every
//! operation is exact. Elimination is plain Gauss-Jordan with the first
//! nonzero entry as pivot, which keeps reduced forms deterministic.

use crate::error::Error;

/// Arithmetic context for GF(p), p prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn check(&self, value: u64) -> Result<u64, Error> {
        if value >= self.p {
            return Err(Error::FieldValueOutOfRange { value, p: self.p });
        }
        Ok(value)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    pub fn sample(&self, rng: &mut impl rand::Rng) -> u64 {
        rng.gen_range(0..self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `>= n` by trial division.
pub fn next_prime_at_least(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Dense row-major matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = FieldMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u64>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, got: row.len() });
            }
            for &v in row {
                data.push(v % field.modulus());
            }
        }
        Ok(FieldMatrix { field, rows: r, cols: c, data })
    }

    pub fn from_columns(field: PrimeField, rows: usize, cols: &[Vec<u64>]) -> Result<Self, Error> {
        let mut m = FieldMatrix::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, got: col.len() });
            }
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v % field.modulus());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &FieldMatrix) -> Result<FieldMatrix, Error> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: other.rows });
        }
        let mut m = FieldMatrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(m)
    }

    pub fn with_column(&self, col: &[u64]) -> Result<FieldMatrix, Error> {
        let extra = FieldMatrix::from_columns(self.field, self.rows, &[col.to_vec()])?;
        self.hstack(&extra)
    }

    pub fn mat_vec(&self, v: &[u64]) -> Result<Vec<u64>, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0u64, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j])))
            })
            .collect())
    }

    /// In-place Gauss-Jordan reduction; returns the pivot columns.
    fn reduce(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for j in 0..self.cols {
                    let a = self.get(row, j);
                    let b = self.get(pr, j);
                    self.set(row, j, b);
                    self.set(pr, j, a);
                }
            }
            let inv = f.inv(self.get(row, col));
            for j in 0..self.cols {
                self.set(row, j, f.mul(self.get(row, j), inv));
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) != 0 {
                    let factor = self.get(r, col);
                    for j in 0..self.cols {
                        let v = f.sub(self.get(r, j), f.mul(factor, self.get(row, j)));
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn reduced_row_echelon(&self) -> (FieldMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.reduce();
        (m, pivots)
    }

    /// Rank via exact elimination.
    pub fn rank(&self) -> usize {
        self.clone().reduce().len()
    }

    /// Solves `self * x = rhs`; returns one coefficient vector when the
    /// system is consistent (free variables set to zero).
    pub fn solve(&self, rhs: &[u64]) -> Result<Option<Vec<u64>>, Error> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: rhs.len() });
        }
        let aug = self.with_column(rhs)?;
        let (red, pivots) = aug.reduced_row_echelon();
        if pivots.contains(&self.cols) {
            return Ok(None); // pivot in the rhs column: inconsistent
        }
        let mut x = vec![0u64; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red.get(r, self.cols);
        }
        Ok(Some(x))
    }

    /// True iff `v` lies in the column space.
    pub fn column_space_contains(&self, v: &[u64]) -> Result<bool, Error> {
        Ok(self.solve(v)?.is_some())
    }

    /// A basis of the kernel, one column per free variable.
    pub fn null_space(&self) -> FieldMatrix {
        let f = self.field;
        let (red, pivots) = self.reduced_row_echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = FieldMatrix::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, f.neg(red.get(r, fc)));
            }
        }
        basis
    }

    /// Drops dependent columns, keeping the first spanning subset.
    pub fn column_space_basis(&self) -> FieldMatrix {
        let (_, pivots) = self.reduced_row_echelon();
        let cols: Vec<Vec<u64>> = pivots.iter().map(|&j| self.column(j)).collect();
        FieldMatrix::from_columns(self.field, self.rows, &cols)
            .expect("columns share row count")
    }

    /// A basis of `colspace(self) ∩ colspace(other)`.
    pub fn column_space_intersection(&self, other: &FieldMatrix) -> Result<FieldMatrix, Error> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: other.rows });
        }
        // Kernel vectors (x, y) of [self | other] satisfy self*x = -other*y,
        // so the vectors self*x span the intersection.
        let combined = self.hstack(other)?;
        let kernel = combined.null_space();
        let mut cols = Vec::new();
        for k in 0..kernel.cols() {
            let x: Vec<u64> = (0..self.cols).map(|i| kernel.get(i, k)).collect();
            cols.push(self.mat_vec(&x)?);
        }
        let spanning = FieldMatrix::from_columns(self.field, self.rows, &cols)?;
        Ok(spanning.column_space_basis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf17() -> PrimeField {
        PrimeField::new(17).unwrap()
    }

    #[test]
    fn primality_and_next_prime() {
        assert!(PrimeField::new(4).is_err());
        assert_eq!(next_prime_at_least(5), 5);
        assert_eq!(next_prime_at_least(16), 17);
        assert_eq!(next_prime_at_least(14), 17);
        assert_eq!(next_prime_at_least(2), 2);
    }

    #[test]
    fn field_axioms_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2u64, 3, 17, 101] {
            let f = PrimeField::new(p).unwrap();
            for _ in 0..50 {
                let a = f.sample(&mut rng);
                let b = f.sample(&mut rng);
                let c = f.sample(&mut rng);
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
            }
        }
    }

    #[test]
    fn rank_reference_cases() {
        let f = gf17();
        assert_eq!(FieldMatrix::identity(f, 3).rank(), 3);
        assert_eq!(FieldMatrix::zeros(f, 3, 4).rank(), 0);
        // 2x3 Vandermonde on points 1, 2, 3
        let vdm = FieldMatrix::from_rows(f, vec![vec![1, 1, 1], vec![1, 2, 3]]).unwrap();
        assert_eq!(vdm.rank(), 2);
    }

    #[test]
    fn solve_and_span() {
        let f = gf17();
        let m =
            FieldMatrix::from_rows(f, vec![vec![1, 0], vec![2, 1], vec![3, 0]]).unwrap();
        // first column is trivially in the span
        let coeffs = m.solve(&m.column(0)).unwrap().unwrap();
        assert_eq!(coeffs, vec![1, 0]);
        // zero is in every span with zero coefficients
        assert_eq!(m.solve(&[0, 0, 0]).unwrap().unwrap(), vec![0, 0]);
        // something outside: rank grows when appended
        let v = vec![0, 0, 1];
        assert!(!m.column_space_contains(&v).unwrap());
        assert_eq!(m.with_column(&v).unwrap().rank(), m.rank() + 1);
    }

    #[test]
    fn solve_reproduces_rhs() {
        let f = gf17();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(1..5);
            let mut m = FieldMatrix::zeros(f, rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, f.sample(&mut rng));
                }
            }
            let x: Vec<u64> = (0..cols).map(|_| f.sample(&mut rng)).collect();
            let rhs = m.mat_vec(&x).unwrap();
            let sol = m.solve(&rhs).unwrap().expect("consistent by construction");
            assert_eq!(m.mat_vec(&sol).unwrap(), rhs);
        }
    }

    #[test]
    fn intersection_dimension_identity() {
        let f = gf17();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let dim = 4;
            let ca = rng.gen_range(1..4);
            let cb = rng.gen_range(1..4);
            let mut a = FieldMatrix::zeros(f, dim, ca);
            let mut b = FieldMatrix::zeros(f, dim, cb);
            for j in 0..ca {
                for i in 0..dim {
                    a.set(i, j, f.sample(&mut rng));
                }
            }
            for j in 0..cb {
                for i in 0..dim {
                    b.set(i, j, f.sample(&mut rng));
                }
            }
            let meet = a.column_space_intersection(&b).unwrap();
            let joined = a.hstack(&b).unwrap();
            assert_eq!(meet.rank(), a.rank() + b.rank() - joined.rank());
            // every intersection basis vector lies in both spaces
            for k in 0..meet.cols() {
                let v = meet.column(k);
                assert!(a.column_space_contains(&v).unwrap());
                assert!(b.column_space_contains(&v).unwrap());
            }
        }
    }

    #[test]
    fn intersection_extreme_cases() {
        let f = gf17();
        let a = FieldMatrix::from_rows(f, vec![vec![1, 0], vec![0, 1], vec![0, 0]]).unwrap();
        let same = a.column_space_intersection(&a).unwrap();
        assert_eq!(same.rank(), a.rank());

        // complementary spaces meet trivially
        let b = FieldMatrix::from_rows(f, vec![vec![0], vec![0], vec![1]]).unwrap();
        assert_eq!(a.column_space_intersection(&b).unwrap().cols(), 0);

        // columns of sub among columns of a
        let sub = FieldMatrix::from_rows(f, vec![vec![1], vec![0], vec![0]]).unwrap();
        let meet = sub.column_space_intersection(&a).unwrap();
        assert_eq!(meet.rank(), 1);
        assert!(a.column_space_contains(&meet.column(0)).unwrap());
    }

    #[test]
    fn elimination_is_deterministic() {
        let f = gf17();
        let m = FieldMatrix::from_rows(
            f,
            vec![vec![3, 5, 1, 2], vec![6, 10, 2, 4], vec![1, 1, 1, 1]],
        )
        .unwrap();
        let (r1, p1) = m.reduced_row_echelon();
        let (r2, p2) = m.reduced_row_echelon();
        assert_eq!(r1, r2);
        assert_eq!(p1, p2);
    }
}
