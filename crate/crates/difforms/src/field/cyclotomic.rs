//! Exact arithmetic in Z[zeta_e], integers extended by a primitive e-th root
//! of unity. Elements are integer vectors modulo the e-th cyclotomic
//! polynomial. This is where Brauer-lifted eigenvalues live.

use std::fmt;

/// Coefficients of the e-th cyclotomic polynomial, ascending by degree.
/// Computed by the recursion Phi_e = (x^e - 1) / prod_{d | e, d < e} Phi_d,
/// with exact integer division.
pub fn cyclotomic_polynomial(e: u32) -> Vec<i64> {
    assert!(e >= 1);
    if e == 1 {
        return vec![-1, 1];
    }
    // numerator x^e - 1
    let mut num = vec![0i64; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    for d in 1..e {
        if e.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of integer polynomials (panics on a nonzero remainder;
/// only used where divisibility is guaranteed).
fn div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd);
    let lead = den[dd];
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; dn - dd + 1];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        assert_eq!(c % lead, 0, "non-exact cyclotomic division");
        let q = c / lead;
        quot[i] = q;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= q * d;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "non-exact cyclotomic division");
    quot
}

/// An element of `Z[zeta_e]`: phi(e) integer coefficients in the power basis
/// 1, zeta, ..., zeta^(phi(e)-1) modulo Phi_e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycInt {
    e: u32,
    coeffs: Vec<i64>,
}

impl CycInt {
    pub fn zero(e: u32) -> CycInt {
        let deg = cyclotomic_polynomial(e).len() - 1;
        CycInt { e, coeffs: vec![0; deg] }
    }

    pub fn one(e: u32) -> CycInt {
        CycInt::from_int(e, 1)
    }

    pub fn from_int(e: u32, n: i64) -> CycInt {
        let mut z = CycInt::zero(e);
        z.coeffs[0] = n;
        z
    }

    /// zeta_e^j, reduced modulo Phi_e.
    pub fn zeta_pow(e: u32, j: u32) -> CycInt {
        let mut raw = vec![0i64; (j % e) as usize + 1];
        *raw.last_mut().unwrap() = 1;
        CycInt::reduce(e, raw)
    }

    fn reduce(e: u32, mut raw: Vec<i64>) -> CycInt {
        let phi = cyclotomic_polynomial(e);
        let deg = phi.len() - 1;
        // replace x^deg by -(phi - x^deg), repeatedly from the top
        while raw.len() > deg {
            let top = raw.len() - 1;
            let c = raw[top];
            raw.pop();
            if c != 0 {
                for (j, &pc) in phi.iter().enumerate().take(deg) {
                    raw[top - deg + j] -= c * pc;
                }
            }
        }
        raw.resize(deg, 0);
        CycInt { e, coeffs: raw }
    }

    pub fn root_order(&self) -> u32 {
        self.e
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Some(n) when the element is the rational integer n.
    pub fn as_int(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.e, other.e, "mixed root orders");
        CycInt {
            e: self.e,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.e, other.e, "mixed root orders");
        CycInt {
            e: self.e,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> CycInt {
        CycInt { e: self.e, coeffs: self.coeffs.iter().map(|&c| -c).collect() }
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.e, other.e, "mixed root orders");
        let mut raw = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        CycInt::reduce(self.e, raw)
    }

    pub fn mul_int(&self, n: i64) -> CycInt {
        CycInt { e: self.e, coeffs: self.coeffs.iter().map(|&c| c * n).collect() }
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_int() {
            return write!(f, "{n}");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(d, &c)| match d {
                0 => format!("{c}"),
                1 => format!("{c}z"),
                _ => format!("{c}z^{d}"),
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_powers_cycle() {
        for e in [1u32, 2, 3, 4, 6, 8, 12] {
            assert_eq!(CycInt::zeta_pow(e, e), CycInt::one(e), "zeta_{e}^{e} = 1");
            let z = CycInt::zeta_pow(e, 1);
            let mut acc = CycInt::one(e);
            for j in 0..e {
                assert_eq!(acc, CycInt::zeta_pow(e, j));
                acc = acc.mul(&z);
            }
            assert_eq!(acc, CycInt::one(e));
        }
    }

    #[test]
    fn zeta_half_is_minus_one_for_even_orders() {
        for e in [2u32, 4, 6, 8, 12] {
            assert_eq!(CycInt::zeta_pow(e, e / 2), CycInt::from_int(e, -1));
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycInt::zeta_pow(4, 1);
        assert_eq!(i.mul(&i), CycInt::from_int(4, -1));
    }
}
