//! Rational functions: quotients of polynomials compared by cross-multiplication.
//!
//! Fractions are stored unreduced except for two cheap normalizations: the
//! denominator is kept monic in lex order, and exact trial division cancels a
//! denominator that divides the numerator (or vice versa). Equality is decided
//! by cross-multiplication, which is exact without any multivariate gcd.

use crate::poly::{leading_is_negative, Polynomial};
use num_rational::BigRational;
use num_traits::One;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Builds `num/den`; `None` when `den` is the zero polynomial.
    pub fn new(num: Polynomial, den: Polynomial) -> Option<RationalFunction> {
        if den.is_zero() {
            return None;
        }
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        Some(rf)
    }

    pub fn from_poly(num: Polynomial) -> RationalFunction {
        let nvars = num.nvars();
        RationalFunction {
            num,
            den: Polynomial::one(nvars),
        }
    }

    pub fn zero(nvars: usize) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: BigRational) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::constant(nvars, c))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// `Some(c)` when the value is the constant `c`.
    pub fn constant_value(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one(self.den.nvars());
            return;
        }
        if let Some(c) = self.den.constant_value() {
            let inv = BigRational::one() / c;
            self.num = self.num.scale(&inv);
            self.den = Polynomial::one(self.den.nvars());
            return;
        }
        // Cancel by trial division, then make the denominator monic.
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = Polynomial::one(self.den.nvars());
            return;
        }
        if let Some(q) = self.den.div_exact(&self.num) {
            self.num = Polynomial::one(self.den.nvars());
            self.den = q;
        }
        let lc = self
            .den
            .leading()
            .map(|(_, c)| c.clone())
            .expect("nonzero denominator");
        if !lc.is_one() {
            let inv = BigRational::one() / lc;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn invert(&self) -> Option<RationalFunction> {
        if self.is_zero() {
            return None;
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &BigRational) -> RationalFunction {
        let mut rf = RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        };
        rf.normalize();
        rf
    }

    /// Quotient-rule derivative with respect to the `i`-th variable.
    pub fn derivative(&self, i: usize) -> RationalFunction {
        if self.den.is_one() {
            return RationalFunction::from_poly(self.num.derivative(i));
        }
        let num = &(&self.num.derivative(i) * &self.den) - &(&self.num * &self.den.derivative(i));
        let den = &self.den * &self.den;
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        rf
    }

    /// Evaluation at a rational point. `None` signals a pole of the stored
    /// representation (the denominator vanishes at the point).
    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let d = self.den.eval(point);
        if d == BigRational::from_integer(0.into()) {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    /// Representation with integer coefficients on both sides, content one
    /// overall, and a positive leading denominator coefficient. Used by the
    /// canonical printer; semantically equal to `self`.
    pub fn integer_normalized(&self) -> (Polynomial, Polynomial) {
        let (nprim, nfac) = self.num.integer_primitive();
        let (dprim, dfac) = self.den.integer_primitive();
        // self = (nfac/dfac) * nprim/dprim with nfac/dfac a rational constant.
        let ratio = nfac / dfac;
        let num = nprim.scale(&BigRational::from_integer(ratio.numer().clone()));
        let den = dprim.scale(&BigRational::from_integer(ratio.denom().clone()));
        if leading_is_negative(&den) {
            (
                num.scale(&BigRational::from_integer((-1).into())),
                den.scale(&BigRational::from_integer((-1).into())),
            )
        } else {
            (num, den)
        }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (num, den) = if self.den == rhs.den {
            (&self.num + &rhs.num, self.den.clone())
        } else if let Some(t) = rhs.den.div_exact(&self.den) {
            (&(&self.num * &t) + &rhs.num, rhs.den.clone())
        } else if let Some(t) = self.den.div_exact(&rhs.den) {
            (&self.num + &(&rhs.num * &t), self.den.clone())
        } else {
            (
                &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                &self.den * &rhs.den,
            )
        };
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        rf
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(self.nvars());
        }
        let mut an = self.num.clone();
        let mut ad = self.den.clone();
        let mut bn = rhs.num.clone();
        let mut bd = rhs.den.clone();
        // Cross-cancel before multiplying; trial division fails fast.
        if !bd.is_one() {
            if let Some(q) = an.div_exact(&bd) {
                an = q;
                bd = Polynomial::one(bd.nvars());
            }
        }
        if !ad.is_one() {
            if let Some(q) = bn.div_exact(&ad) {
                bn = q;
                ad = Polynomial::one(ad.nvars());
            }
        }
        let mut rf = RationalFunction {
            num: &an * &bn,
            den: &ad * &bd,
        };
        rf.normalize();
        rf
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
