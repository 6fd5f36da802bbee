//! Exact rational arithmetic, sparse matrices and operator-valued polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// An exact rational number, always kept in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n / d`; panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The value `k / 2`, used for weights stored as doubled integers.
    pub fn half(k: i64) -> Self {
        Rat::new(k, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "inverse of zero");
        Rat(self.0.recip())
    }

    pub fn pow(&self, e: u32) -> Rat {
        let mut acc = Rat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Returns `2 * self` as an integer when that is exact.
    pub fn to_doubled(&self) -> Option<i64> {
        let d = &self.0 * BigRational::from_integer(BigInt::from(2));
        if d.is_integer() {
            d.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Self {
        Rat::int(n as i64)
    }
}

impl From<usize> for Rat {
    fn from(n: usize) -> Self {
        Rat::int(n as i64)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rat(BigRational::new(n, d)))
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rat(BigRational::from_integer(n)))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat((&self.0).$m(&o.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat(self.0.$m(o.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat(self.0.$m(&o.0))
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat((&self.0).$m(o.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, o: &Rat) {
        self.0 += &o.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, o: &Rat) {
        self.0 -= &o.0;
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |a, b| a * b)
    }
}

/// `n!` as an exact rational. A negative argument is a contract violation.
pub fn factorial(n: i64) -> Rat {
    assert!(n >= 0, "factorial of negative number {n}");
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat(BigRational::from_integer(acc))
}

/// Dense vector of exact rationals.
pub type Vector = Vec<Rat>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Rat::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rat::one();
    v
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], c: &Rat) -> Vector {
    a.iter().map(|x| x * c).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// If `a = c * b` for a scalar `c`, returns `c`. Both zero gives `Some(0)`.
pub fn proportionality(a: &[Rat], b: &[Rat]) -> Option<Rat> {
    let k = b.iter().position(|x| !x.is_zero());
    let c = match k {
        Some(k) => &a[k] / &b[k],
        None => {
            return if is_zero_vec(a) {
                Some(Rat::zero())
            } else {
                None
            }
        }
    };
    for (x, y) in a.iter().zip(b) {
        if *x != y * &c {
            return None;
        }
    }
    Some(c)
}

/// Sparse matrix over the rationals; zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMat {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, Rat>>,
}

impl SparseMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMat {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rat::one())
    }

    pub fn scalar(n: usize, c: &Rat) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn diag(d: &[Rat]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_triplets<I>(nrows: usize, ncols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rat)>,
    {
        let mut m = Self::zeros(nrows, ncols);
        for (r, c, v) in entries {
            if r >= nrows || c >= ncols {
                return Err(Error::Shape(format!(
                    "entry ({r},{c}) outside {nrows}x{ncols}"
                )));
            }
            m.add_at(r, c, &v);
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<Rat>], ncols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors of length `nrows`.
    pub fn from_columns(nrows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.rows[r].get(&c).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.nrows && c < self.ncols, "index out of range");
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Rat) {
        if v.is_zero() {
            return;
        }
        let e = self.rows[r].entry(c).or_insert_with(Rat::zero);
        *e += v;
        if e.is_zero() {
            self.rows[r].remove(&c);
        }
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, Rat> {
        &self.rows[r]
    }

    /// Row-major iteration over stored (nonzero) entries.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rat)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(r, c, _)| r == c)
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.nrows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vector> {
        (0..self.nrows)
            .map(|r| {
                let mut v = zero_vec(self.ncols);
                for (c, x) in &self.rows[r] {
                    v[*c] = x.clone();
                }
                v
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (r, c, v) in self.entries() {
            t.rows[c].insert(r, v.clone());
        }
        t
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zeros(self.nrows, self.ncols);
        }
        let mut m = self.clone();
        for row in &mut m.rows {
            for v in row.values_mut() {
                *v = &*v * k;
            }
        }
        m
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o)?;
        let mut m = self.clone();
        for (r, c, v) in o.entries() {
            m.add_at(r, c, v);
        }
        Ok(m)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o)?;
        let mut m = self.clone();
        for (r, c, v) in o.entries() {
            m.add_at(r, c, &-v);
        }
        Ok(m)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.ncols != o.nrows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, o.nrows, o.ncols
            )));
        }
        let mut m = Self::zeros(self.nrows, o.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &o.rows[*k] {
                    *acc.entry(*c).or_insert_with(Rat::zero) += &(a * b);
                }
            }
            acc.retain(|_, v| !v.is_zero());
            m.rows[r] = acc;
        }
        Ok(m)
    }

    fn check_same_shape(&self, o: &Self) -> Result<()> {
        if self.shape() != o.shape() {
            return Err(Error::Shape(format!(
                "shape mismatch {:?} vs {:?}",
                self.shape(),
                o.shape()
            )));
        }
        Ok(())
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        &(a * b) - &(b * a)
    }

    pub fn pow(&self, e: u32) -> Self {
        assert_eq!(self.nrows, self.ncols, "power of a non-square matrix");
        let mut acc = Self::identity(self.nrows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn apply(&self, v: &[Rat]) -> Vector {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        self.rows
            .iter()
            .map(|row| {
                let mut acc = Rat::zero();
                for (c, a) in row {
                    if !v[*c].is_zero() {
                        acc += &(a * &v[*c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product, with `a` acting on the slow (outer) index.
    pub fn kron(a: &Self, b: &Self) -> Self {
        let mut m = Self::zeros(a.nrows * b.nrows, a.ncols * b.ncols);
        for (r1, c1, x) in a.entries() {
            for (r2, c2, y) in b.entries() {
                m.set(r1 * b.nrows + r2, c1 * b.ncols + c2, x * y);
            }
        }
        m
    }

    pub fn trace(&self) -> Rat {
        (0..self.nrows.min(self.ncols))
            .map(|i| self.get(i, i))
            .sum()
    }

    pub fn rank(&self) -> usize {
        rref(self.to_dense(), self.ncols).1.len()
    }
}

macro_rules! mat_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&SparseMat> for &SparseMat {
            type Output = SparseMat;
            fn $m(self, o: &SparseMat) -> SparseMat {
                self.$f(o).expect("matrix shape mismatch")
            }
        }
        impl $tr<SparseMat> for SparseMat {
            type Output = SparseMat;
            fn $m(self, o: SparseMat) -> SparseMat {
                self.$f(&o).expect("matrix shape mismatch")
            }
        }
    };
}

mat_binop!(Add, add, try_add);
mat_binop!(Sub, sub, try_sub);
mat_binop!(Mul, mul, try_mul);

impl Neg for &SparseMat {
    type Output = SparseMat;
    fn neg(self) -> SparseMat {
        self.scale(&-Rat::one())
    }
}

/// Reduced row echelon form of a dense matrix with `ncols` columns.
/// Pivots are chosen column by column from the left; returns the pivot columns.
pub fn rref(mut a: Vec<Vector>, ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// A basis of the kernel `{v : m v = 0}`, one vector per free column in increasing order.
pub fn nullspace(m: &SparseMat) -> Vec<Vector> {
    let n = m.ncols();
    let (red, pivots) = rref(m.to_dense(), n);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vec(n);
        v[free] = Rat::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -&red[row][free];
        }
        basis.push(v);
    }
    basis
}

/// Rank of a family of vectors.
pub fn rank_of(vectors: &[Vector]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v) => rref(vectors.to_vec(), v.len()).1.len(),
    }
}

/// Indices of a maximal linearly independent subfamily, chosen greedily from the front.
pub fn independent_subset(vectors: &[Vector]) -> Vec<usize> {
    let Some(first) = vectors.first() else {
        return Vec::new();
    };
    let dim = first.len();
    let cols: Vec<Vector> = (0..dim)
        .map(|i| vectors.iter().map(|v| v[i].clone()).collect())
        .collect();
    rref(cols, vectors.len()).1
}

/// Solves `sum_j x_j cols[j] = v`. Returns `None` when `v` is not in the span.
/// The columns need not be independent; a particular solution is returned.
pub fn solve_in_span(cols: &[Vector], v: &[Rat]) -> Option<Vector> {
    let k = cols.len();
    let dim = v.len();
    let aug: Vec<Vector> = (0..dim)
        .map(|i| {
            let mut row: Vector = cols.iter().map(|c| c[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let (red, pivots) = rref(aug, k + 1);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = zero_vec(k);
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = red[row][k].clone();
    }
    Some(x)
}

/// Inverse of a dense square matrix, or `None` if singular.
pub fn inverse(a: &[Vector]) -> Option<Vec<Vector>> {
    let n = a.len();
    let aug: Vec<Vector> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit_vec(n, i));
            r
        })
        .collect();
    let (red, pivots) = rref(aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Polynomial in a formal variable `u` with sparse matrix coefficients;
/// `coeffs[j]` multiplies `u^j`. Trailing zero coefficients are trimmed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpPoly {
    nrows: usize,
    ncols: usize,
    coeffs: Vec<SparseMat>,
}

impl OpPoly {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        OpPoly {
            nrows,
            ncols,
            coeffs: Vec::new(),
        }
    }

    pub fn from_coeffs(nrows: usize, ncols: usize, coeffs: Vec<SparseMat>) -> Result<Self> {
        if coeffs.iter().any(|c| c.shape() != (nrows, ncols)) {
            return Err(Error::Shape(
                "operator polynomial coefficients disagree in shape".into(),
            ));
        }
        let mut p = OpPoly {
            nrows,
            ncols,
            coeffs,
        };
        p.trim();
        Ok(p)
    }

    pub fn constant(m: SparseMat) -> Self {
        let (r, c) = m.shape();
        Self::from_coeffs(r, c, vec![m]).expect("shape")
    }

    /// `p(u) * Id` for a scalar polynomial with coefficients in increasing degree.
    pub fn scalar_poly(n: usize, p: &[Rat]) -> Self {
        let coeffs = p.iter().map(|c| SparseMat::scalar(n, c)).collect();
        Self::from_coeffs(n, n, coeffs).expect("shape")
    }

    /// `a * u + b`.
    pub fn linear(a: SparseMat, b: SparseMat) -> Result<Self> {
        let (r, c) = b.shape();
        Self::from_coeffs(r, c, vec![b, a])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(SparseMat::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn coeffs(&self) -> &[SparseMat] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> SparseMat {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| SparseMat::zeros(self.nrows, self.ncols))
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        if self.shape() != o.shape() {
            return Err(Error::Shape("operator polynomial shapes differ".into()));
        }
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|j| &self.coeff(j) + &o.coeff(j)).collect();
        Self::from_coeffs(self.nrows, self.ncols, coeffs)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.scale(&-Rat::one()))
    }

    /// Product of polynomials; `u` is central so coefficients multiply in order.
    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.ncols != o.nrows {
            return Err(Error::Shape(
                "operator polynomial shapes cannot be multiplied".into(),
            ));
        }
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(self.nrows, o.ncols));
        }
        let mut coeffs =
            vec![SparseMat::zeros(self.nrows, o.ncols); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(self.nrows, o.ncols, coeffs)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.scale(k)).collect();
        Self::from_coeffs(self.nrows, self.ncols, coeffs).expect("shape")
    }

    /// Multiplies by a scalar polynomial `q(u)`.
    pub fn mul_scalar_poly(&self, q: &[Rat]) -> Self {
        self.try_mul(&OpPoly::scalar_poly(self.ncols, q))
            .expect("shape")
    }

    /// Left multiplication by a constant matrix.
    pub fn left_mul(&self, m: &SparseMat) -> Result<Self> {
        OpPoly::constant(m.clone()).try_mul(self)
    }

    /// Right multiplication by a constant matrix.
    pub fn right_mul(&self, m: &SparseMat) -> Result<Self> {
        self.try_mul(&OpPoly::constant(m.clone()))
    }

    /// Substitution `u -> u + c`.
    pub fn shift(&self, c: &Rat) -> Self {
        let d = self.coeffs.len();
        let mut out = vec![SparseMat::zeros(self.nrows, self.ncols); d];
        for (j, a) in self.coeffs.iter().enumerate() {
            // (u + c)^j = sum_k binom(j, k) c^(j-k) u^k
            let mut binom = Rat::one();
            for k in (0..=j).rev() {
                let w = &binom * &c.pow((j - k) as u32);
                out[k] = &out[k] + &a.scale(&w);
                if k > 0 {
                    binom = &binom * &Rat::from(k) / Rat::from(j - k + 1);
                }
            }
        }
        Self::from_coeffs(self.nrows, self.ncols, out).expect("shape")
    }

    /// Substitution `u -> -u`.
    pub fn neg_var(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| if j % 2 == 1 { -a } else { a.clone() })
            .collect();
        Self::from_coeffs(self.nrows, self.ncols, coeffs).expect("shape")
    }

    /// Value at a scalar `u = x`.
    pub fn eval(&self, x: &Rat) -> SparseMat {
        let mut acc = SparseMat::zeros(self.nrows, self.ncols);
        for a in self.coeffs.iter().rev() {
            acc = &acc.scale(x) + a;
        }
        acc
    }

    /// `sum_j coeff_j * h^j`: coefficients stay to the left of the powers of `h`.
    pub fn eval_left(&self, h: &SparseMat) -> Result<SparseMat> {
        if h.nrows() != h.ncols() || h.nrows() != self.ncols {
            return Err(Error::Shape(format!(
                "cannot evaluate a {}x{} operator polynomial at a {}x{} matrix",
                self.nrows,
                self.ncols,
                h.nrows(),
                h.ncols()
            )));
        }
        let mut acc = SparseMat::zeros(self.nrows, self.ncols);
        let mut hp = SparseMat::identity(self.ncols);
        for a in &self.coeffs {
            acc = &acc + &(a * &hp);
            hp = &hp * h;
        }
        Ok(acc)
    }

    /// Exact division by `u`; `None` if the constant term is nonzero.
    pub fn div_u(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if !self.coeffs[0].is_zero() {
            return None;
        }
        Some(Self::from_coeffs(self.nrows, self.ncols, self.coeffs[1..].to_vec()).expect("shape"))
    }

    /// Exact division by a scalar polynomial; `None` when a remainder is left.
    pub fn div_scalar_poly(&self, q: &[Rat]) -> Option<Self> {
        let dq = q
            .iter()
            .rposition(|c| !c.is_zero())
            .expect("division by zero polynomial");
        let lead = q[dq].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dq {
            return if self.is_zero() {
                Some(self.clone())
            } else {
                None
            };
        }
        let mut quot = vec![SparseMat::zeros(self.nrows, self.ncols); rem.len() - dq];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dq].scale(&lead);
            if c.is_zero() {
                continue;
            }
            for (i, qi) in q.iter().enumerate().take(dq + 1) {
                rem[k + i] = &rem[k + i] - &c.scale(qi);
            }
            quot[k] = c;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.nrows, self.ncols, quot).expect("shape"))
    }

    /// True when every odd coefficient vanishes.
    pub fn is_even(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(j, a)| j % 2 == 0 || a.is_zero())
    }

    /// Conjugates every coefficient into a subspace: returns `X^+ P X` coefficientwise
    /// where the columns of `basis` span an invariant subspace and `left_inv` is a left inverse.
    pub fn restrict(&self, basis: &SparseMat, left_inv: &SparseMat) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| &(left_inv * a) * basis)
            .collect();
        Self::from_coeffs(left_inv.nrows(), basis.ncols(), coeffs).expect("shape")
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&OpPoly> for &OpPoly {
            type Output = OpPoly;
            fn $m(self, o: &OpPoly) -> OpPoly {
                self.$f(o).expect("operator polynomial shape mismatch")
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

/// Multiplies scalar polynomials given by coefficient lists in increasing degree.
pub fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = zero_vec(a.len() + b.len() - 1);
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

/// Evaluates a scalar polynomial.
pub fn poly_eval(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| &(&acc * x) + c)
}

/// `prod_i (u + r_i)` as a coefficient list.
pub fn poly_from_shifts(shifts: &[Rat]) -> Vec<Rat> {
    shifts.iter().fold(vec![Rat::one()], |acc, r| {
        poly_mul(&acc, &[r.clone(), Rat::one()])
    })
}

/// Strips trailing zeros from a scalar polynomial.
pub fn poly_trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(Rat::is_zero) {
        p.pop();
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::int(n)
    }

    #[test]
    fn rat_normalizes() {
        assert_eq!(Rat::new(2, -4), Rat::new(-1, 2));
        assert_eq!(Rat::new(0, 5), Rat::zero());
        assert_eq!(Rat::new(3, 6).to_string(), "1/2");
        assert_eq!("-6/4".parse::<Rat>().unwrap(), Rat::new(-3, 2));
        assert!("1/0".parse::<Rat>().is_err());
        assert_eq!(Rat::half(-3).to_doubled(), Some(-3));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), r(1));
        assert_eq!(factorial(4), r(24));
    }

    #[test]
    #[should_panic]
    fn negative_factorial_panics() {
        factorial(-1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&SparseMat::identity(2)).is_empty());
        let m = SparseMat::from_dense(&[vec![r(1), r(1)], vec![r(2), r(2)]], 2);
        let ns = nullspace(&m);
        assert_eq!(ns, vec![vec![r(-1), r(1)]]);
        assert_eq!(nullspace(&SparseMat::zeros(1, 2)).len(), 2);
    }

    #[test]
    fn matmul_identity() {
        let m = SparseMat::from_dense(&[vec![r(1), r(2)], vec![r(0), r(3)]], 2);
        assert_eq!(&SparseMat::identity(2) * &m, m);
        assert_eq!(m.nnz(), 3);
    }

    #[test]
    fn eval_left_examples() {
        let h = SparseMat::diag(&[r(2), r(3)]);
        let p = OpPoly::linear(SparseMat::identity(2), SparseMat::zeros(2, 2)).unwrap();
        assert_eq!(p.eval_left(&h).unwrap(), h);

        let a = SparseMat::from_dense(&[vec![r(1), r(5)], vec![r(-2), r(0)]], 2);
        let b = SparseMat::from_dense(&[vec![r(0), r(1)], vec![r(1), r(7)]], 2);
        assert_eq!(OpPoly::constant(a.clone()).eval_left(&h).unwrap(), a);

        let p = OpPoly::linear(a.clone(), b.clone()).unwrap();
        assert_eq!(p.eval_left(&h).unwrap(), &(&a * &h) + &b);
        assert!(p.eval_left(&SparseMat::identity(3)).is_err());
    }

    #[test]
    fn shift_and_neg_var() {
        // p(u) = u^2 + 1, p(u + 2) = u^2 + 4u + 5
        let p = OpPoly::scalar_poly(1, &[r(1), r(0), r(1)]);
        let q = p.shift(&r(2));
        assert_eq!(q, OpPoly::scalar_poly(1, &[r(5), r(4), r(1)]));
        let s = OpPoly::scalar_poly(1, &[r(1), r(3)]).neg_var();
        assert_eq!(s, OpPoly::scalar_poly(1, &[r(1), r(-3)]));
    }

    #[test]
    fn scalar_division() {
        let p = OpPoly::scalar_poly(2, &poly_mul(&[r(1), r(2)], &[r(-3), r(1)]));
        let q = p.div_scalar_poly(&[r(1), r(2)]).unwrap();
        assert_eq!(q, OpPoly::scalar_poly(2, &[r(-3), r(1)]));
        assert!(OpPoly::scalar_poly(1, &[r(1), r(1)])
            .div_scalar_poly(&[r(0), r(1)])
            .is_none());
    }

    #[test]
    fn inverse_and_solve() {
        let a = vec![vec![r(2), r(1)], vec![r(1), r(1)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![r(1), r(-1)], vec![r(-1), r(2)]]);
        assert!(inverse(&[vec![r(1), r(2)], vec![r(2), r(4)]]).is_none());
        let x = solve_in_span(&[vec![r(1), r(0)], vec![r(1), r(1)]], &[r(3), r(2)]).unwrap();
        assert_eq!(x, vec![r(1), r(2)]);
        assert!(solve_in_span(&[vec![r(1), r(1)]], &[r(1), r(0)]).is_none());
    }
}
