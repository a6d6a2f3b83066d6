//! Extension fields F_{p^k}, used as splitting fields for eigenvalue
//! extraction. Elements are coefficient vectors modulo a fixed monic
//! irreducible; the field acts as the arithmetic context.

use super::poly::UniPoly;
use super::{FieldError, Fp};
use std::fmt;

/// An element of F_{p^k}: k coefficients in F_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtElem {
    coeffs: Vec<Fp>,
}

impl ExtElem {
    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.value().to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The field F_{p^k} presented as `F_p[x]` modulo a monic irreducible of
/// degree k. The defining polynomial is checked at construction.
#[derive(Debug, Clone)]
pub struct ExtField {
    p: u32,
    k: usize,
    modulus: UniPoly,
}

impl ExtField {
    /// Build F_{p^k} with the deterministic defining polynomial: the first
    /// monic irreducible of degree k in lexicographic coefficient order.
    pub fn new(p: u32, k: usize) -> ExtField {
        let modulus = UniPoly::first_irreducible(p, k);
        ExtField { p, k, modulus }
    }

    /// Build with an explicit defining polynomial; errors if reducible.
    pub fn with_modulus(modulus: UniPoly) -> Result<ExtField, FieldError> {
        if !modulus.is_irreducible() {
            return Err(FieldError::NotIrreducible(modulus.to_string()));
        }
        let p = modulus.modulus();
        let k = modulus.degree().expect("irreducible implies nonzero");
        Ok(ExtField { p, k, modulus })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus_poly(&self) -> &UniPoly {
        &self.modulus
    }

    /// Number of elements p^k.
    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.k as u32)
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem { coeffs: vec![Fp::zero(self.p); self.k] }
    }

    pub fn one(&self) -> ExtElem {
        self.embed(Fp::one(self.p))
    }

    pub fn embed(&self, c: Fp) -> ExtElem {
        let mut coeffs = vec![Fp::zero(self.p); self.k];
        coeffs[0] = c;
        ExtElem { coeffs }
    }

    /// The element numbered `idx` in the fixed enumeration: base-p digits of
    /// `idx`, least significant digit = constant coefficient.
    pub fn element(&self, idx: u64) -> ExtElem {
        let mut coeffs = Vec::with_capacity(self.k);
        let mut rest = idx;
        for _ in 0..self.k {
            coeffs.push(Fp::new((rest % self.p as u64) as i64, self.p));
            rest /= self.p as u64;
        }
        ExtElem { coeffs }
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| x + y).collect() }
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| x - y).collect() }
    }

    pub fn neg(&self, a: &ExtElem) -> ExtElem {
        ExtElem { coeffs: a.coeffs.iter().map(|&x| -x).collect() }
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let pa = UniPoly::new(self.p, a.coeffs.clone());
        let pb = UniPoly::new(self.p, b.coeffs.clone());
        let prod = pa.mul(&pb);
        let (_, rem) = prod.divrem(&self.modulus).expect("nonzero modulus");
        self.reduce_poly(&rem)
    }

    fn reduce_poly(&self, poly: &UniPoly) -> ExtElem {
        let mut coeffs = vec![Fp::zero(self.p); self.k];
        for (i, slot) in coeffs.iter_mut().enumerate() {
            *slot = poly.coeff(i);
        }
        ExtElem { coeffs }
    }

    pub fn pow(&self, a: &ExtElem, mut exp: u64) -> ExtElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &ExtElem) -> Result<ExtElem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(a, self.size() - 2))
    }

    /// Multiplicative order of a nonzero element; divides p^k - 1.
    pub fn order(&self, a: &ExtElem) -> Result<u32, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let one = self.one();
        let mut acc = a.clone();
        let mut n = 1u32;
        while acc != one {
            acc = self.mul(&acc, a);
            n += 1;
        }
        Ok(n)
    }

    /// The deterministic generator of F_{p^k}^x: the first element in the
    /// fixed enumeration with full multiplicative order.
    pub fn generator(&self) -> ExtElem {
        let full = (self.size() - 1) as u32;
        for idx in 1..self.size() {
            let cand = self.element(idx);
            if self.order(&cand).expect("nonzero") == full {
                return cand;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }

    /// Evaluate a polynomial with F_p coefficients at an extension element.
    pub fn eval_base_poly(&self, poly: &UniPoly, x: &ExtElem) -> ExtElem {
        let mut acc = self.zero();
        for &c in poly.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, &self.embed(c));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_uses_x_squared_plus_one() {
        let f9 = ExtField::new(3, 2);
        assert_eq!(f9.modulus_poly(), &UniPoly::from_ints(3, &[1, 0, 1]));
        // u^2 = -1 in F_3[u]/(u^2+1)
        let u = f9.element(3);
        assert_eq!(f9.mul(&u, &u), f9.embed(Fp::new(-1, 3)));
    }

    #[test]
    fn f9_generator_is_u_plus_one() {
        let f9 = ExtField::new(3, 2);
        let g = f9.generator();
        assert_eq!(g, f9.element(4)); // coefficients (1, 1)
        assert_eq!(f9.order(&g).unwrap(), 8);
    }

    #[test]
    fn element_orders_divide_group_order() {
        let f9 = ExtField::new(3, 2);
        for idx in 1..f9.size() {
            let a = f9.element(idx);
            assert_eq!(8 % f9.order(&a).unwrap(), 0);
        }
    }

    #[test]
    fn inverses_work() {
        let f27 = ExtField::new(3, 3);
        for idx in 1..f27.size() {
            let a = f27.element(idx);
            let ai = f27.inv(&a).unwrap();
            assert_eq!(f27.mul(&a, &ai), f27.one());
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        let sq = UniPoly::from_ints(3, &[0, 0, 1]); // x^2
        assert!(matches!(ExtField::with_modulus(sq), Err(FieldError::NotIrreducible(_))));
    }
}
