//! Exact coefficient fields and sparse Gaussian elimination.

use crate::error::{Error, Result};
use crate::int::Int;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt::Debug;

pub trait Field: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, x: &Int) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, x: &Int) -> BigRational {
        BigRational::from_integer(x.to_big())
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
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
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

/// `F_p` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !prime || p >= 1 << 31 {
            return Err(Error::input(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_int(&self, x: &Int) -> u64 {
        x.rem_euclid(self.p)
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        self.pow(*a, self.p - 2)
    }
    fn render(&self, a: &u64) -> String {
        format!("{}:{a}", self.p)
    }
}

/// Sparse row: sorted `(column, value)` pairs without zeros.
pub type Row<E> = Vec<(usize, E)>;

/// Incremental echelon form of a homogeneous linear system in `nvars` unknowns.
pub struct Echelon<'f, F: Field> {
    field: &'f F,
    nvars: usize,
    /// pivot column -> row with leading coefficient 1 at that column
    rows: BTreeMap<usize, Row<F::Elem>>,
}

impl<'f, F: Field> Echelon<'f, F> {
    pub fn new(field: &'f F, nvars: usize) -> Self {
        Echelon { field, nvars, rows: BTreeMap::new() }
    }

    pub fn field(&self) -> &'f F {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn nullity(&self) -> usize {
        self.nvars - self.rows.len()
    }

    fn axpy(&self, a: &Row<F::Elem>, s: &F::Elem, b: &Row<F::Elem>) -> Row<F::Elem> {
        // a - s * b
        let f = self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, f.sub(&f.zero(), &f.mul(s, &b[j].1))));
                j += 1;
            } else {
                let v = f.sub(&a[i].1, &f.mul(s, &b[j].1));
                if !f.is_zero(&v) {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    fn reduce(&self, mut row: Row<F::Elem>) -> Row<F::Elem> {
        let mut k = 0;
        while k < row.len() {
            let (col, ref v) = row[k];
            if let Some(p) = self.rows.get(&col) {
                let s = v.clone();
                row = self.axpy(&row, &s, p);
            } else {
                k += 1;
            }
        }
        row
    }

    /// Adds an equation; returns whether it increased the rank.
    pub fn push(&mut self, row: Row<F::Elem>) -> bool {
        let row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        let f = self.field;
        let inv = f.inv(&row[0].1);
        let row: Row<F::Elem> = row.into_iter().map(|(c, v)| (c, f.mul(&v, &inv))).collect();
        self.rows.insert(row[0].0, row);
        true
    }

    /// Whether `x` satisfies every stored equation.
    pub fn satisfies(&self, x: &[F::Elem]) -> bool {
        let f = self.field;
        self.rows.values().all(|row| {
            let mut acc = f.zero();
            for (c, v) in row {
                acc = f.add(&acc, &f.mul(v, &x[*c]));
            }
            f.is_zero(&acc)
        })
    }

    /// Basis of the solution space, one vector per free column (free column entry 1).
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field;
        // back substitution to reduced echelon form, from the last pivot upwards
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        let mut reduced: BTreeMap<usize, Row<F::Elem>> = BTreeMap::new();
        for p in pivots {
            let mut row = self.rows[&p].clone();
            let mut k = 1;
            while k < row.len() {
                let (col, ref v) = row[k];
                if let Some(q) = reduced.get(&col) {
                    let s = v.clone();
                    row = self.axpy(&row, &s, q);
                } else {
                    k += 1;
                }
            }
            reduced.insert(p, row);
        }
        let free: Vec<usize> = (0..self.nvars).filter(|c| !reduced.contains_key(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![f.zero(); self.nvars];
                x[fc] = f.one();
                for (&p, row) in &reduced {
                    if let Some((_, v)) = row.iter().find(|(c, _)| *c == fc) {
                        x[p] = f.sub(&f.zero(), v);
                    }
                }
                x
            })
            .collect()
    }
}
