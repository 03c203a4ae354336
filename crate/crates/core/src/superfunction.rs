//! Superfunctions: Grassmann-algebra elements with rational-function
//! coefficients in the even coordinates.
//!
//! A superfunction on a chart of signature `(p|q)` is stored as a sparse map
//! from odd-index subsets (bitmasks over the `q` odd generators) to rational
//! functions in the `p` even coordinates. Coefficients are written to the left
//! of Grassmann monomials and monomials are kept in ascending index order;
//! odd derivatives are left derivatives. This single convention fixes every
//! sign in the geometric layer.

use crate::error::{Error, Result};
use crate::parity::{Parity, ParityClass};
use crate::rational::RationalFunction;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// A chart coordinate resolved to its slot in the scalar ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    /// The `i`-th even coordinate, `0 <= i < p`.
    Even(usize),
    /// The `m`-th odd generator, `0 <= m < q`.
    Odd(usize),
}

/// Grassmann monomial index set as a bitmask; bit `m` is the `m`-th odd
/// generator.
pub type OddMask = u32;

#[derive(Debug, Clone)]
pub struct Superfunction {
    p: usize,
    q: usize,
    components: BTreeMap<OddMask, RationalFunction>,
}

/// Sign picked up when multiplying two ascending Grassmann monomials:
/// `None` when they share a generator (the product vanishes), otherwise the
/// parity of the number of transpositions needed to interleave them.
fn mono_mul_sign(a: OddMask, b: OddMask) -> Option<i8> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
}

impl Superfunction {
    pub fn zero(p: usize, q: usize) -> Superfunction {
        Superfunction {
            p,
            q,
            components: BTreeMap::new(),
        }
    }

    pub fn one(p: usize, q: usize) -> Superfunction {
        Superfunction::from_rf(p, q, RationalFunction::one(p))
    }

    pub fn constant(p: usize, q: usize, c: BigRational) -> Superfunction {
        Superfunction::from_rf(p, q, RationalFunction::constant(p, c))
    }

    pub fn from_int(p: usize, q: usize, c: i64) -> Superfunction {
        Superfunction::constant(p, q, BigRational::from_integer(c.into()))
    }

    /// Lifts a rational function of the even coordinates into the body slot.
    pub fn from_rf(p: usize, q: usize, rf: RationalFunction) -> Superfunction {
        assert_eq!(rf.nvars(), p);
        let mut components = BTreeMap::new();
        if !rf.is_zero() {
            components.insert(0, rf);
        }
        Superfunction { p, q, components }
    }

    /// The even coordinate `x_i` as a superfunction.
    pub fn even_var(p: usize, q: usize, i: usize) -> Superfunction {
        Superfunction::from_rf(
            p,
            q,
            RationalFunction::from_poly(crate::poly::Polynomial::var(p, i)),
        )
    }

    /// The odd generator `theta_m` as a superfunction.
    pub fn odd_var(p: usize, q: usize, m: usize) -> Superfunction {
        assert!(m < q, "odd index out of range");
        Superfunction::monomial(p, q, 1 << m, RationalFunction::one(p))
    }

    /// The Grassmann monomial `theta^I` (ascending index order).
    pub fn grassmann(p: usize, q: usize, mask: OddMask) -> Superfunction {
        Superfunction::monomial(p, q, mask, RationalFunction::one(p))
    }

    pub fn monomial(p: usize, q: usize, mask: OddMask, rf: RationalFunction) -> Superfunction {
        assert!(
            q >= (32 - mask.leading_zeros()) as usize,
            "odd mask out of range"
        );
        assert_eq!(rf.nvars(), p);
        let mut components = BTreeMap::new();
        if !rf.is_zero() {
            components.insert(mask, rf);
        }
        Superfunction { p, q, components }
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.components.len() == 1 && self.components.get(&0).is_some_and(|rf| rf.is_one())
    }

    pub fn components(&self) -> impl Iterator<Item = (OddMask, &RationalFunction)> {
        self.components.iter().map(|(&m, rf)| (m, rf))
    }

    pub fn component(&self, mask: OddMask) -> Option<&RationalFunction> {
        self.components.get(&mask)
    }

    /// The theta-free part.
    pub fn body(&self) -> RationalFunction {
        self.components
            .get(&0)
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.p))
    }

    /// Everything but the body; nilpotent of order at most `q + 1`.
    pub fn soul(&self) -> Superfunction {
        Superfunction {
            p: self.p,
            q: self.q,
            components: self
                .components
                .iter()
                .filter(|(&m, _)| m != 0)
                .map(|(&m, rf)| (m, rf.clone()))
                .collect(),
        }
    }

    /// Parity classification per the component Grassmann degrees.
    pub fn parity_class(&self) -> ParityClass {
        let mut seen_even = false;
        let mut seen_odd = false;
        for mask in self.components.keys() {
            if mask.count_ones() % 2 == 0 {
                seen_even = true;
            } else {
                seen_odd = true;
            }
        }
        match (seen_even, seen_odd) {
            (false, false) => ParityClass::Zero,
            (true, false) => ParityClass::Even,
            (false, true) => ParityClass::Odd,
            (true, true) => ParityClass::Mixed,
        }
    }

    /// The grade involution: negates the odd part. Implements the Koszul
    /// factor `(-1)^{|f|}` on arbitrary (not necessarily homogeneous) values.
    pub fn grade_involution(&self) -> Superfunction {
        Superfunction {
            p: self.p,
            q: self.q,
            components: self
                .components
                .iter()
                .map(|(&m, rf)| {
                    (
                        m,
                        if m.count_ones() % 2 == 1 {
                            -rf
                        } else {
                            rf.clone()
                        },
                    )
                })
                .collect(),
        }
    }

    /// Applies the grade involution when `twist` is odd.
    pub fn twist(&self, twist: Parity) -> Superfunction {
        if twist.is_odd() {
            self.grade_involution()
        } else {
            self.clone()
        }
    }

    fn insert(
        components: &mut BTreeMap<OddMask, RationalFunction>,
        mask: OddMask,
        rf: RationalFunction,
    ) {
        if rf.is_zero() {
            return;
        }
        match components.entry(mask) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(rf);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &rf;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_signature(&self, other: &Superfunction) -> Result<()> {
        if self.p != other.p || self.q != other.q {
            return Err(Error::SignatureMismatch(self.p, self.q, other.p, other.q));
        }
        Ok(())
    }

    /// Grassmann product with the signature check the public surface demands;
    /// the `Mul` operator panics on mismatch instead.
    pub fn try_mul(&self, other: &Superfunction) -> Result<Superfunction> {
        self.check_signature(other)?;
        let mut components = BTreeMap::new();
        for (&ma, ra) in &self.components {
            for (&mb, rb) in &other.components {
                if let Some(sign) = mono_mul_sign(ma, mb) {
                    let prod = ra * rb;
                    let prod = if sign < 0 { -&prod } else { prod };
                    Self::insert(&mut components, ma | mb, prod);
                }
            }
        }
        Ok(Superfunction {
            p: self.p,
            q: self.q,
            components,
        })
    }

    pub fn try_add(&self, other: &Superfunction) -> Result<Superfunction> {
        self.check_signature(other)?;
        let mut components = self.components.clone();
        for (&m, rf) in &other.components {
            Self::insert(&mut components, m, rf.clone());
        }
        Ok(Superfunction {
            p: self.p,
            q: self.q,
            components,
        })
    }

    /// Multiplicative inverse. The body must be a nonzero rational function;
    /// the soul is handled by the finite geometric series
    /// `body^{-1} * sum_k (-soul/body)^k`, which terminates by nilpotency.
    pub fn invert(&self) -> Result<Superfunction> {
        let body_inv = self.body().invert().ok_or(Error::NotInvertible)?;
        let soul = self.soul();
        if soul.is_zero() {
            return Ok(Superfunction::from_rf(self.p, self.q, body_inv));
        }
        let u = -&soul.scale_rf(&body_inv);
        let mut acc = Superfunction::one(self.p, self.q);
        let mut pow = Superfunction::one(self.p, self.q);
        for _ in 0..self.q {
            pow = &pow * &u;
            if pow.is_zero() {
                break;
            }
            acc = &acc + &pow;
        }
        Ok(acc.scale_rf(&body_inv))
    }

    pub fn pow(&self, exp: u32) -> Superfunction {
        let mut acc = Superfunction::one(self.p, self.q);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative along a coordinate. Even derivatives act on the
    /// rational-function coefficients; odd derivatives are left derivatives:
    /// `d/d theta_m (theta_m * rest) = rest` after moving `theta_m` to the
    /// front, which costs one sign per generator below `m` in the monomial.
    pub fn partial(&self, var: Var) -> Result<Superfunction> {
        match var {
            Var::Even(i) => {
                if i >= self.p {
                    return Err(Error::IndexOutOfRange {
                        index: i,
                        dim: self.p,
                    });
                }
                let mut components = BTreeMap::new();
                for (&m, rf) in &self.components {
                    Self::insert(&mut components, m, rf.derivative(i));
                }
                Ok(Superfunction {
                    p: self.p,
                    q: self.q,
                    components,
                })
            }
            Var::Odd(m) => {
                if m >= self.q {
                    return Err(Error::IndexOutOfRange {
                        index: m,
                        dim: self.q,
                    });
                }
                let bit = 1u32 << m;
                let mut components = BTreeMap::new();
                for (&mask, rf) in &self.components {
                    if mask & bit == 0 {
                        continue;
                    }
                    let below = (mask & (bit - 1)).count_ones();
                    let rf = if below % 2 == 1 { -rf } else { rf.clone() };
                    Self::insert(&mut components, mask ^ bit, rf);
                }
                Ok(Superfunction {
                    p: self.p,
                    q: self.q,
                    components,
                })
            }
        }
    }

    /// Substitutes exact rationals for all even coordinates, leaving a purely
    /// Grassmann superfunction. Errors when a stored denominator vanishes at
    /// the point.
    pub fn evaluate_even(&self, point: &[BigRational]) -> Result<Superfunction> {
        assert_eq!(point.len(), self.p, "evaluation point has wrong length");
        let mut components = BTreeMap::new();
        for (&m, rf) in &self.components {
            let v = rf.eval(point).ok_or(Error::Pole)?;
            Self::insert(&mut components, m, RationalFunction::constant(self.p, v));
        }
        Ok(Superfunction {
            p: self.p,
            q: self.q,
            components,
        })
    }

    pub fn scale(&self, c: &BigRational) -> Superfunction {
        let mut components = BTreeMap::new();
        for (&m, rf) in &self.components {
            Self::insert(&mut components, m, rf.scale(c));
        }
        Superfunction {
            p: self.p,
            q: self.q,
            components,
        }
    }

    pub fn scale_rf(&self, rf: &RationalFunction) -> Superfunction {
        let mut components = BTreeMap::new();
        for (&m, c) in &self.components {
            Self::insert(&mut components, m, c * rf);
        }
        Superfunction {
            p: self.p,
            q: self.q,
            components,
        }
    }

    pub fn neg_if(&self, sign: i8) -> Superfunction {
        if sign < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Total number of stored polynomial terms; used to pick the "worst"
    /// residual for diagnostics.
    pub fn term_count(&self) -> usize {
        self.components
            .values()
            .map(|rf| rf.numerator().nterms() + rf.denominator().nterms())
            .sum()
    }
}

impl PartialEq for Superfunction {
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p || self.q != other.q || self.components.len() != other.components.len()
        {
            return false;
        }
        self.components
            .iter()
            .zip(other.components.iter())
            .all(|((ma, ra), (mb, rb))| ma == mb && ra == rb)
    }
}

impl Eq for Superfunction {}

impl Add for &Superfunction {
    type Output = Superfunction;

    fn add(self, rhs: &Superfunction) -> Superfunction {
        self.try_add(rhs).expect("superfunction signature mismatch")
    }
}

impl Sub for &Superfunction {
    type Output = Superfunction;

    fn sub(self, rhs: &Superfunction) -> Superfunction {
        self + &(-rhs)
    }
}

impl Mul for &Superfunction {
    type Output = Superfunction;

    fn mul(self, rhs: &Superfunction) -> Superfunction {
        self.try_mul(rhs).expect("superfunction signature mismatch")
    }
}

impl Neg for &Superfunction {
    type Output = Superfunction;

    fn neg(self) -> Superfunction {
        Superfunction {
            p: self.p,
            q: self.q,
            components: self.components.iter().map(|(&m, rf)| (m, -rf)).collect(),
        }
    }
}
