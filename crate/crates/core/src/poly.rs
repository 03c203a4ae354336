//! Sparse multivariate polynomials over Q with arbitrary-precision coefficients.
//!
//! Monomials are exponent vectors over the even coordinates, ordered
//! lexicographically by the `BTreeMap` key order. Zero coefficients are never
//! stored, so structural equality is semantic equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector; entry `k` is the power of the `k`-th even coordinate.
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

pub(crate) fn rat_pow(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Polynomial {
        Polynomial::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_int(nvars: usize, c: i64) -> Polynomial {
        Polynomial::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The coordinate polynomial `x_i`.
    pub fn var(nvars: usize, i: usize) -> Polynomial {
        assert!(i < nvars, "variable index out of range");
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        Polynomial::monomial(nvars, exp, BigRational::one())
    }

    pub fn monomial(nvars: usize, exp: Monomial, c: BigRational) -> Polynomial {
        assert_eq!(exp.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Leading (lexicographically largest) term.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, BigRational>, exp: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, t)| (e.clone(), t * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to the `i`-th variable.
    pub fn derivative(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exp = e.clone();
            exp[i] -= 1;
            let coeff = c * BigRational::from_integer(BigInt::from(e[i]));
            Self::insert_term(&mut terms, exp, coeff);
        }
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    /// Evaluation at a rational point; `point.len()` must equal `nvars`.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (k, &power) in e.iter().enumerate() {
                if power > 0 {
                    term *= rat_pow(&point[k], power);
                }
            }
            acc += term;
        }
        acc
    }

    /// Exact division: `Some(q)` with `self = q * divisor` when the divisor
    /// divides exactly, `None` otherwise. Single-divisor reduction in lex
    /// order decides divisibility, since any nonzero multiple of the divisor
    /// has a leading term divisible by the divisor's leading term.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Polynomial::zero(self.nvars));
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&(BigRational::one() / c)));
        }
        let (dexp, dcoef) = divisor.leading().unwrap();
        let dexp = dexp.clone();
        let dcoef = dcoef.clone();
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        while let Some((rexp, rcoef)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))
        {
            let mut qexp = Vec::with_capacity(self.nvars);
            for (a, b) in rexp.iter().zip(dexp.iter()) {
                if a < b {
                    return None;
                }
                qexp.push(a - b);
            }
            let qcoef = &rcoef / &dcoef;
            for (e, c) in &divisor.terms {
                let mut target = qexp.clone();
                for (t, add) in target.iter_mut().zip(e.iter()) {
                    *t += add;
                }
                Self::insert_term(&mut rem, target, -(&qcoef * c));
            }
            quot.insert(qexp, qcoef);
        }
        Some(Polynomial {
            nvars: self.nvars,
            terms: quot,
        })
    }

    /// Scales numerator-style data to integer coefficients: returns the
    /// polynomial with all-integer, content-one coefficients together with the
    /// rational factor `r` such that `self = r * returned`.
    pub fn integer_primitive(&self) -> (Polynomial, BigRational) {
        use num_integer::Integer;
        if self.is_zero() {
            return (self.clone(), BigRational::one());
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c * BigRational::from_integer(denom_lcm.clone());
            numer_gcd = numer_gcd.gcd(scaled.numer());
        }
        let factor = BigRational::new(numer_gcd, denom_lcm);
        let inv = BigRational::one() / factor.clone();
        (self.scale(&inv), factor)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            Polynomial::insert_term(&mut terms, e.clone(), c.clone());
        }
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            Polynomial::insert_term(&mut terms, e.clone(), -c.clone());
        }
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count mismatch");
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Monomial = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                Polynomial::insert_term(&mut terms, exp, ca * cb);
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

/// Sign of the leading coefficient: true when negative.
pub(crate) fn leading_is_negative(p: &Polynomial) -> bool {
    p.leading().is_some_and(|(_, c)| c.is_negative())
}
