//! The Z/2 grading that drives every Koszul sign in the crate.

use std::fmt;
use std::ops::Add;

/// Parity of a homogeneous object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_usize(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// The Koszul sign `(-1)^{|a||b|}` as a signed unit.
    pub fn koszul(self, other: Parity) -> i8 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }

    pub fn flip(self) -> Parity {
        self + Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Parity classification of a superfunction or vector field.
///
/// `Zero` is homogeneous of every parity; `Mixed` values are representable but
/// rejected by the operations that consume parities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityClass {
    Zero,
    Even,
    Odd,
    Mixed,
}

impl ParityClass {
    pub fn is_homogeneous(self) -> bool {
        self != ParityClass::Mixed
    }

    /// The parity used in sign computations; `Zero` counts as even since the
    /// term it multiplies vanishes anyway. `None` for mixed values.
    pub fn sign_parity(self) -> Option<Parity> {
        match self {
            ParityClass::Zero | ParityClass::Even => Some(Parity::Even),
            ParityClass::Odd => Some(Parity::Odd),
            ParityClass::Mixed => None,
        }
    }

    /// True when a component of this class is allowed in a slot whose
    /// homogeneous parity must be `expected`.
    pub fn matches(self, expected: Parity) -> bool {
        match self {
            ParityClass::Zero => true,
            ParityClass::Even => expected == Parity::Even,
            ParityClass::Odd => expected == Parity::Odd,
            ParityClass::Mixed => false,
        }
    }
}

impl Add for ParityClass {
    type Output = ParityClass;

    fn add(self, rhs: ParityClass) -> ParityClass {
        use ParityClass::*;
        match (self, rhs) {
            (Mixed, _) | (_, Mixed) => Mixed,
            (Zero, x) | (x, Zero) => x,
            (Even, Even) | (Odd, Odd) => Even,
            _ => Odd,
        }
    }
}
