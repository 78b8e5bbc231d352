//! Dense linear algebra over `ℚ` and prime fields.
//!
//! The algorithms are written once against [`Field`], a small trait whose
//! methods take the field as `&self` so that the modulus of `F_p` can be a
//! runtime value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Field: Sync {
    type E: Clone + PartialEq + std::fmt::Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn from_int(&self, a: &BigInt) -> Self::E;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_int(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
}

/// The prime field `F_p`, elements stored as reduced `u64`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &a);
            }
            a = self.mul(&a, &a);
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((u128::from(*a) + u128::from(*b)) % u128::from(self.p)) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((u128::from(*a) + u128::from(self.p) - u128::from(*b)) % u128::from(self.p)) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((u128::from(*a) * u128::from(*b)) % u128::from(self.p)) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        self.pow(*a, self.p - 2)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_int(&self, a: &BigInt) -> u64 {
        let r = a.mod_floor(&BigInt::from(self.p));
        u64::try_from(&r).expect("residue fits in u64")
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let r = rows.len();
        let data: Vec<E> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * cols, "ragged rows");
        Matrix { rows: r, cols, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&Matrix<E>], cols: usize) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "column mismatch in vstack");
            data.extend(p.data.iter().cloned());
            rows += p.rows;
        }
        Matrix { rows, cols, data }
    }

    /// Places matrices with equal row counts side by side.
    pub fn hstack(parts: &[&Matrix<E>], rows: usize) -> Self {
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for p in parts {
                assert_eq!(p.rows, rows, "row mismatch in hstack");
                data.extend(p.row(r).iter().cloned());
            }
        }
        Matrix { rows, cols, data }
    }

    /// Columns `lo..hi`.
    pub fn column_block(&self, lo: usize, hi: usize) -> Self {
        let mut data = Vec::with_capacity(self.rows * (hi - lo));
        for r in 0..self.rows {
            data.extend(self.row(r)[lo..hi].iter().cloned());
        }
        Matrix { rows: self.rows, cols: hi - lo, data }
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

pub type IntMatrix = Matrix<BigInt>;

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, BigInt::zero())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn over<F: Field>(&self, f: &F) -> Matrix<F::E> {
        self.map(|x| f.from_int(x))
    }

    pub fn int_mul(&self, other: &IntMatrix) -> IntMatrix {
        mul(&Integers, self, other)
    }
}

/// The integers as a ring; only used for exact integer products.
struct Integers;

trait Ring {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
}

impl Ring for Integers {
    type E = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

struct AsRing<'a, F>(&'a F);

impl<F: Field> Ring for AsRing<'_, F> {
    type E = F::E;
    fn zero(&self) -> F::E {
        self.0.zero()
    }
    fn add(&self, a: &F::E, b: &F::E) -> F::E {
        self.0.add(a, b)
    }
    fn mul(&self, a: &F::E, b: &F::E) -> F::E {
        self.0.mul(a, b)
    }
    fn is_zero(&self, a: &F::E) -> bool {
        self.0.is_zero(a)
    }
}

fn mul<R: Ring>(r: &R, a: &Matrix<R::E>, b: &Matrix<R::E>) -> Matrix<R::E> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in product");
    let mut out = Matrix::filled(a.rows, b.cols, r.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if r.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let cur = r.add(out.get(i, j), &r.mul(x, b.get(k, j)));
                out.set(i, j, cur);
            }
        }
    }
    out
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::E>, b: &Matrix<F::E>) -> Matrix<F::E> {
    mul(&AsRing(f), a, b)
}

/// Reduced row echelon form and pivot columns.
pub fn rref<F: Field>(f: &F, m: &Matrix<F::E>) -> (Matrix<F::E>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !f.is_zero(a.get(r, col))) else {
            continue;
        };
        if p != row {
            for c in 0..a.cols {
                a.data.swap(p * a.cols + c, row * a.cols + c);
            }
        }
        let inv = f.inv(a.get(row, col));
        for c in col..a.cols {
            let v = f.mul(a.get(row, c), &inv);
            a.set(row, c, v);
        }
        for r in 0..a.rows {
            if r == row || f.is_zero(a.get(r, col)) {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in col..a.cols {
                let v = f.sub(a.get(r, c), &f.mul(&factor, a.get(row, c)));
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::E>) -> usize {
    rref(f, m).1.len()
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn nullspace<F: Field>(f: &F, m: &Matrix<F::E>) -> Vec<Vec<F::E>> {
    let (r, pivots) = rref(f, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); m.cols];
            v[fc] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(&f.zero(), r.get(row, fc));
            }
            v
        })
        .collect()
}

/// Matrix whose rows form a basis of `{y : y m = 0}`.
pub fn left_nullspace<F: Field>(f: &F, m: &Matrix<F::E>) -> Matrix<F::E> {
    Matrix::from_rows(nullspace(f, &m.transpose()), m.rows)
}

/// Scales a rational vector to a primitive integer vector.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    // make the first nonzero entry positive for a canonical sign
    let sign = ints.iter().find(|x| !x.is_zero()).map_or(BigInt::one(), |x| x.signum());
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

/// Integer matrix whose rows span the left kernel of an integer matrix over `ℚ`.
pub fn integral_left_nullspace(m: &IntMatrix) -> IntMatrix {
    let basis = nullspace(&Rationals, &m.over(&Rationals).transpose());
    let rows: Vec<Vec<BigInt>> = basis.iter().map(|v| primitive_integer(v)).collect();
    let n = m.rows;
    Matrix::from_rows(rows, n)
}

/// Integer matrix whose columns span the kernel of an integer matrix over `ℚ`.
pub fn integral_nullspace(m: &IntMatrix) -> IntMatrix {
    let basis = nullspace(&Rationals, &m.over(&Rationals));
    let rows: Vec<Vec<BigInt>> = basis.iter().map(|v| primitive_integer(v)).collect();
    Matrix::from_rows(rows, m.cols).transpose()
}
