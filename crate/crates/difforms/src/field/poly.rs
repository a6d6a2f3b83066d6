//! Dense univariate polynomials over F_p: the substrate for characteristic
//! polynomials, irreducibility testing, and extension-field construction.

use super::{FieldError, Fp};
use std::fmt;

/// A univariate polynomial over F_p, dense by degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    p: u32,
    coeffs: Vec<Fp>,
}

impl UniPoly {
    pub fn new(p: u32, coeffs: Vec<Fp>) -> UniPoly {
        let mut poly = UniPoly { p, coeffs };
        poly.normalize();
        poly
    }

    pub fn from_ints(p: u32, coeffs: &[i64]) -> UniPoly {
        UniPoly::new(p, coeffs.iter().map(|&c| Fp::new(c, p)).collect())
    }

    pub fn zero(p: u32) -> UniPoly {
        UniPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u32) -> UniPoly {
        UniPoly::from_ints(p, &[1])
    }

    /// The monomial c * x^d.
    pub fn monomial(c: Fp, d: usize) -> UniPoly {
        let mut coeffs = vec![Fp::zero(c.modulus()); d + 1];
        coeffs[d] = c;
        UniPoly::new(c.modulus(), coeffs)
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, d: usize) -> Fp {
        self.coeffs.get(d).copied().unwrap_or_else(|| Fp::zero(self.p))
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<Fp> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().map(|c| c.value() == 1).unwrap_or(false)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        UniPoly::new(self.p, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        UniPoly::new(self.p, coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.p, self.coeffs.iter().map(|&c| -c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.p);
        }
        let mut coeffs = vec![Fp::zero(self.p); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        UniPoly::new(self.p, coeffs)
    }

    pub fn scale(&self, c: Fp) -> UniPoly {
        UniPoly::new(self.p, self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divrem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), FieldError> {
        let dd = match divisor.degree() {
            Some(d) => d,
            None => return Err(FieldError::ZeroInverse),
        };
        let lead_inv = divisor.leading_coeff().unwrap().inv()?;
        let mut rem = self.clone();
        let mut quot = vec![Fp::zero(self.p); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading_coeff().unwrap() * lead_inv;
            let shift = rd - dd;
            quot[shift] = factor;
            // rem -= factor * x^shift * divisor
            let mut coeffs = rem.coeffs;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                coeffs[shift + j] = coeffs[shift + j] - factor * b;
            }
            rem = UniPoly::new(self.p, coeffs);
        }
        Ok((UniPoly::new(self.p, quot), rem))
    }

    pub fn eval(&self, x: Fp) -> Fp {
        let mut acc = Fp::zero(self.p);
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    /// Fine at the tiny degrees this crate works with.
    pub fn is_irreducible(&self) -> bool {
        let deg = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if deg == 1 {
            return true;
        }
        for d in 1..=deg / 2 {
            let mut found = false;
            for_each_monic(self.p, d, |cand| {
                if !found {
                    let (_, rem) = self.divrem(cand).expect("nonzero divisor");
                    if rem.is_zero() {
                        found = true;
                    }
                }
            });
            if found {
                return false;
            }
        }
        true
    }

    /// The first monic irreducible polynomial of degree k over F_p, where
    /// candidates are ordered lexicographically on the coefficient tuple
    /// (c_0, c_1, ..., c_{k-1}) with c_0 most significant. Fixing this
    /// enumeration makes every extension field reproducible across runs.
    pub fn first_irreducible(p: u32, k: usize) -> UniPoly {
        assert!(k >= 1);
        let total = (p as u64).pow(k as u32);
        for idx in 0..total {
            // idx encodes (c_0, ..., c_{k-1}) with c_0 most significant
            let mut digits = vec![0u32; k];
            let mut rest = idx;
            for d in (0..k).rev() {
                digits[d] = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            // digits[0] is c_0 ... digits[k-1] is c_{k-1}; append leading 1
            let mut coeffs: Vec<Fp> = digits.iter().map(|&c| Fp::new(c as i64, p)).collect();
            coeffs.push(Fp::one(p));
            let cand = UniPoly::new(p, coeffs);
            if cand.is_irreducible() {
                return cand;
            }
        }
        unreachable!("an irreducible polynomial of degree {k} exists over F_{p}");
    }

    /// Monic irreducible factors with multiplicity, found by trial division
    /// against enumerated monic irreducibles of ascending degree.
    pub fn irreducible_factors(&self) -> Vec<(UniPoly, usize)> {
        let mut rest = self.clone();
        let mut factors = Vec::new();
        if let Some(lc) = rest.leading_coeff() {
            if lc.value() != 1 {
                rest = rest.scale(lc.inv().expect("nonzero leading coefficient"));
            }
        }
        let mut d = 1usize;
        while rest.degree().map(|deg| deg >= 1).unwrap_or(false) {
            let deg = rest.degree().unwrap();
            if d > deg / 2 {
                // what is left is irreducible
                factors.push((rest.clone(), 1));
                break;
            }
            let mut found: Option<UniPoly> = None;
            for_each_monic(self.p, d, |cand| {
                if found.is_none() && cand.is_irreducible() {
                    let (_, rem) = rest.divrem(cand).expect("nonzero divisor");
                    if rem.is_zero() {
                        found = Some(cand.clone());
                    }
                }
            });
            match found {
                Some(f) => {
                    let mut mult = 0usize;
                    loop {
                        let (q, rem) = rest.divrem(&f).expect("nonzero divisor");
                        if rem.is_zero() {
                            rest = q;
                            mult += 1;
                        } else {
                            break;
                        }
                    }
                    factors.push((f, mult));
                }
                None => d += 1,
            }
        }
        factors
    }
}

/// Visit every monic polynomial of exact degree d over F_p.
fn for_each_monic<F: FnMut(&UniPoly)>(p: u32, d: usize, mut visit: F) {
    let total = (p as u64).pow(d as u32);
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut rest = idx;
        for _ in 0..d {
            coeffs.push(Fp::new((rest % p as u64) as i64, p));
            rest /= p as u64;
        }
        coeffs.push(Fp::one(p));
        visit(&UniPoly::new(p, coeffs));
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match d {
                0 => write!(f, "{}", c.value())?,
                1 if c.value() == 1 => write!(f, "x")?,
                1 => write!(f, "{}x", c.value())?,
                _ if c.value() == 1 => write!(f, "x^{d}")?,
                _ => write!(f, "{}x^{d}", c.value())?,
            }
        }
        Ok(())
    }
}
