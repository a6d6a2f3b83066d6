//! Exact arithmetic in prime fields F_p, extension fields F_{p^k}, and
//! cyclotomic integer rings `Z[zeta_e]`.
//!
//! Everything in here is integer arithmetic; there is no floating point
//! anywhere in the crate.

mod brauer;
mod cyclotomic;
mod ext;
mod poly;

pub use brauer::{brauer_det, eigenvalues_bar, eigenvalues_in, BrauerLift};
pub use cyclotomic::{cyclotomic_polynomial, CycInt};
pub use ext::{ExtElem, ExtField};
pub use poly::UniPoly;

use std::fmt;

/// Errors from field arithmetic and field construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// Multiplicative inverse of zero requested.
    ZeroInverse,
    /// Two operands live in fields with different moduli.
    ModulusMismatch { left: u32, right: u32 },
    /// The modulus is not a prime number.
    NotPrime(u32),
    /// A defining polynomial for an extension field is reducible.
    NotIrreducible(String),
    /// An element's multiplicative order does not divide the requested root order.
    OrderDoesNotDivide { order: u32, target: u32 },
    /// A matrix (or group element) has order divisible by the characteristic,
    /// so its eigenvalues cannot be lifted multiplicatively.
    ModularElement { order: u32, p: u32 },
    /// The root order e shares a factor with the characteristic p.
    RootOrderNotCoprime { e: u32, p: u32 },
    /// A characteristic polynomial does not split in the given field.
    DoesNotSplit,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::ZeroInverse => write!(f, "inverse of zero"),
            FieldError::ModulusMismatch { left, right } => {
                write!(f, "mixed-field operands: modulus {left} vs {right}")
            }
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::NotIrreducible(s) => write!(f, "polynomial {s} is reducible"),
            FieldError::OrderDoesNotDivide { order, target } => {
                write!(f, "element order {order} does not divide {target}")
            }
            FieldError::ModularElement { order, p } => {
                write!(f, "modular element: order {order} divisible by characteristic {p}")
            }
            FieldError::RootOrderNotCoprime { e, p } => {
                write!(f, "root order {e} is not coprime to characteristic {p}")
            }
            FieldError::DoesNotSplit => write!(f, "polynomial does not split in the field"),
        }
    }
}

impl std::error::Error for FieldError {}

/// An element of the prime field F_p, stored as a residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    /// Reduce an integer into F_p. Panics if `p` is not prime.
    pub fn new(value: i64, p: u32) -> Fp {
        assert!(is_prime(p), "modulus {p} is not prime");
        let m = p as i64;
        let v = ((value % m) + m) % m;
        Fp { value: v as u32, modulus: p }
    }

    pub fn zero(p: u32) -> Fp {
        Fp::new(0, p)
    }

    pub fn one(p: u32) -> Fp {
        Fp::new(1, p)
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Fp) -> Result<(), FieldError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(FieldError::ModulusMismatch { left: self.modulus, right: other.modulus })
        }
    }

    pub fn try_add(&self, other: &Fp) -> Result<Fp, FieldError> {
        self.same_field(other)?;
        Ok(Fp { value: (self.value + other.value) % self.modulus, modulus: self.modulus })
    }

    pub fn try_sub(&self, other: &Fp) -> Result<Fp, FieldError> {
        self.same_field(other)?;
        Ok(Fp {
            value: (self.value + self.modulus - other.value) % self.modulus,
            modulus: self.modulus,
        })
    }

    pub fn try_mul(&self, other: &Fp) -> Result<Fp, FieldError> {
        self.same_field(other)?;
        let prod = (self.value as u64 * other.value as u64) % self.modulus as u64;
        Ok(Fp { value: prod as u32, modulus: self.modulus })
    }

    pub fn pow(&self, mut exp: u64) -> Fp {
        let mut base = *self;
        let mut acc = Fp::one(self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; an explicit error on zero.
    pub fn inv(&self) -> Result<Fp, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        // p is prime, so a^(p-2) = a^(-1).
        Ok(self.pow(self.modulus as u64 - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self) -> Result<u32, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let mut acc = *self;
        let mut n = 1u32;
        while acc.value != 1 {
            acc = acc * *self;
            n += 1;
        }
        Ok(n)
    }
}

impl std::ops::Add for Fp {
    type Output = Fp;
    fn add(self, other: Fp) -> Fp {
        self.try_add(&other).expect("field mismatch in +")
    }
}

impl std::ops::Sub for Fp {
    type Output = Fp;
    fn sub(self, other: Fp) -> Fp {
        self.try_sub(&other).expect("field mismatch in -")
    }
}

impl std::ops::Mul for Fp {
    type Output = Fp;
    fn mul(self, other: Fp) -> Fp {
        self.try_mul(&other).expect("field mismatch in *")
    }
}

impl std::ops::Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
