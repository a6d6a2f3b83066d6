//! Exact rational-function and power-series bookkeeping: Hilbert series,
//! Molien's formula in cross characteristic via Brauer lifts, and the
//! series identities behind the freeness certificates.

use crate::field::{brauer_det, cyclotomic_polynomial, BrauerLift, CycInt, FieldError};
use crate::group::{LinearCharacter, MatrixGroup};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Denominator has constant term other than +-1, so no integer expansion.
    BadDenominator,
    /// A group element has order divisible by p; Molien does not apply.
    Modular(FieldError),
    /// The summed Molien series failed to have integer coefficients,
    /// indicating a broken lift.
    NonIntegralSeries(String),
    /// The claimed hsop degrees do not divide the series exactly.
    NotFreeOverHsop { remainder_degree: usize },
    /// Series reconstruction from dimensions did not terminate.
    ReconstructionFailed,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::BadDenominator => {
                write!(f, "denominator constant term must be a unit")
            }
            SeriesError::Modular(e) => write!(f, "{e}"),
            SeriesError::NonIntegralSeries(s) => {
                write!(f, "internal consistency: Molien sum is not integral ({s})")
            }
            SeriesError::NotFreeOverHsop { remainder_degree } => {
                write!(
                    f,
                    "series is not free over the claimed hsop degrees (remainder at degree {remainder_degree})"
                )
            }
            SeriesError::ReconstructionFailed => write!(f, "series reconstruction failed"),
        }
    }
}

impl std::error::Error for SeriesError {}

/// Integer-coefficient polynomial, dense by degree, trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<i64>) -> IntPoly {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly::new(vec![1])
    }

    pub fn monomial(c: i64, d: usize) -> IntPoly {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = c;
        IntPoly::new(coeffs)
    }

    /// 1 - t^e.
    pub fn one_minus_t_pow(e: u32) -> IntPoly {
        let mut coeffs = vec![0i64; e as usize + 1];
        coeffs[0] = 1;
        coeffs[e as usize] = -1;
        IntPoly::new(coeffs)
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(0)) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| -c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }

    pub fn scale(&self, c: i64) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Exact division: Some(q) iff self = q * divisor over the integers.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = divisor.degree()?;
        let lead = divisor.coeff(dd);
        if lead == 0 {
            return None;
        }
        let dn = self.degree().unwrap();
        if dn < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i64; dn - dd + 1];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd];
            if c % lead != 0 {
                return None;
            }
            let q = c / lead;
            quot[i] = q;
            if q != 0 {
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= q * d;
                }
            }
        }
        if rem.iter().all(|&c| c == 0) {
            Some(IntPoly::new(quot))
        } else {
            None
        }
    }

    /// gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> i64 {
        self.coeffs.iter().fold(0i64, |acc, &c| gcd_i64(acc, c.abs()))
    }

    pub fn eval_i64(&self, x: i64) -> i64 {
        self.coeffs.iter().rev().fold(0i64, |acc, &c| acc * x + c)
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd_i64(b, a % b)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let a = c.abs();
            match d {
                0 => write!(f, "{a}")?,
                1 if a == 1 => write!(f, "t")?,
                1 => write!(f, "{a}t")?,
                _ if a == 1 => write!(f, "t^{d}")?,
                _ => write!(f, "{a}t^{d}")?,
            }
        }
        Ok(())
    }
}

/// A rational function numerator/denominator over the integers with
/// denominator constant term normalized to +1, so an exact power-series
/// expansion always exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    num: IntPoly,
    den: IntPoly,
}

impl RationalSeries {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<RationalSeries, SeriesError> {
        match den.coeff(0) {
            1 => Ok(RationalSeries { num, den }),
            -1 => Ok(RationalSeries { num: num.neg(), den: den.neg() }),
            _ => Err(SeriesError::BadDenominator),
        }
    }

    pub fn from_poly(num: IntPoly) -> RationalSeries {
        RationalSeries { num, den: IntPoly::one() }
    }

    /// numerator / prod (1 - t^e) over the given hsop degrees.
    pub fn over_hsop(num: IntPoly, degrees: &[u32]) -> RationalSeries {
        RationalSeries { num, den: hsop_denominator(degrees) }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    /// Exact Taylor coefficients 0..=order.
    pub fn expand(&self, order: usize) -> Vec<i64> {
        let mut out = Vec::with_capacity(order + 1);
        for k in 0..=order {
            // den[0] = 1: c_k = num_k - sum_{j=1..k} den_j c_{k-j}
            let mut c = self.num.coeff(k);
            for j in 1..=k {
                let d = self.den.coeff(j);
                if d != 0 {
                    c -= d * out[k - j];
                }
            }
            out.push(c);
        }
        out
    }

    /// Equality as rational functions (cross multiplication).
    pub fn equivalent(&self, other: &RationalSeries) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Lowest terms, computed by peeling the reciprocal cyclotomic factors
    /// that make up every denominator in this crate. Denominators here are
    /// always products of polynomials 1 - t^e, i.e. products of reversed
    /// cyclotomic polynomials, which are irreducible over Q; dividing out
    /// every shared factor therefore reaches the reduced form exactly.
    pub fn reduced(&self) -> RationalSeries {
        if self.num.is_zero() {
            return RationalSeries::from_poly(IntPoly::zero());
        }
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let max_e = den.degree().unwrap_or(0) as u32;
        let mut changed = true;
        while changed {
            changed = false;
            for e in 1..=max_e.max(1) {
                let f = reversed_cyclotomic(e);
                while let (Some(dq), Some(nq)) = (den.div_exact(&f), num.div_exact(&f)) {
                    den = dq;
                    num = nq;
                    changed = true;
                }
            }
        }
        // content cancellation: den(0) stays 1, so only the numerator carries content
        RationalSeries::new(num, den).expect("reduced denominator keeps unit constant term")
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// prod (1 - t^e) over the hsop degrees.
pub fn hsop_denominator(degrees: &[u32]) -> IntPoly {
    degrees.iter().fold(IntPoly::one(), |acc, &e| acc.mul(&IntPoly::one_minus_t_pow(e)))
}

/// The reversed e-th cyclotomic polynomial t^phi(e) Phi_e(1/t), normalized
/// to constant term +1: the product of (1 - z t) over the primitive e-th
/// roots of unity z.
pub fn reversed_cyclotomic(e: u32) -> IntPoly {
    let phi = cyclotomic_polynomial(e);
    let mut coeffs: Vec<i64> = phi.iter().rev().copied().collect();
    if coeffs[0] < 0 {
        for c in coeffs.iter_mut() {
            *c = -*c;
        }
    }
    IntPoly::new(coeffs)
}

/// Which value the character contributes for a summand; the two readings of
/// the relative Molien formula found in the literature. They agree whenever
/// all character values are +-1 (as with every fixture here); the flag
/// exposes the convention instead of hard-coding a guess.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MolienConvention {
    /// chi(g) paired with det(1 - t g): the classical pairing.
    #[default]
    CharacterValue,
    /// chi(g^{-1}) paired with det(1 - t g).
    CharacterInverse,
}

/// Molien's formula for the Hilbert series of the chi-relative invariants,
/// in cross characteristic:
///
///   (1/|G|) sum over g of chi0(g) / det0(1 - t g),
///
/// where chi0 and det0 lift eigenvalues into `Z[zeta_e]` multiplicatively
/// (e = exponent of the group). The sum is carried out exactly over a
/// common denominator in `Z[zeta_e][t]`; Galois stability forces integer
/// coefficients, which is asserted, and the division by |G| on the reduced
/// numerator is asserted exact. Any element of order divisible by p is
/// rejected up front.
pub fn molien(
    group: &MatrixGroup,
    chi: &LinearCharacter,
    convention: MolienConvention,
) -> Result<RationalSeries, SeriesError> {
    let p = group.p();
    for idx in 0..group.order() {
        let o = group.element_order(idx);
        if o.is_multiple_of(p) {
            return Err(SeriesError::Modular(FieldError::ModularElement { order: o, p }));
        }
    }
    let e = group.exponent();
    let lift = BrauerLift::new(p, e).map_err(SeriesError::Modular)?;
    // per-element det0(1 - t g) with the eigenvalue-order multiset recorded
    let mut dets: Vec<Vec<CycInt>> = Vec::with_capacity(group.order());
    let mut eigen_orders: BTreeMap<u32, usize> = BTreeMap::new();
    for idx in 0..group.order() {
        let m = group.element(idx);
        let eigen = crate::field::eigenvalues_in(lift.field(), m)
            .ok_or(SeriesError::Modular(FieldError::DoesNotSplit))?;
        for l in &eigen {
            let o = lift.field().order(l).expect("eigenvalues are units");
            *eigen_orders.entry(o).or_insert(0) += 1;
        }
        dets.push(brauer_det(m, &lift).map_err(SeriesError::Modular)?);
    }
    // the common denominator factors as prod_d Phi_d^rev(t)^{m_d}: each
    // reversed cyclotomic covers one full Galois orbit of phi(d) primitive
    // d-th roots, and the Galois-stable eigenvalue multiset splits evenly
    let mut factor_orders: BTreeMap<u32, usize> = BTreeMap::new();
    for (&order, &count) in &eigen_orders {
        let phi_deg = reversed_cyclotomic(order).degree().unwrap_or(1).max(1);
        assert_eq!(count % phi_deg, 0, "eigenvalue multiset is Galois-stable");
        factor_orders.insert(order, count / phi_deg);
    }
    // numerator sum_g chi0(g) prod_{h != g} det0(1 - t h), denominator prod_g
    let mut num = vec![CycInt::zero(e)];
    for g in 0..group.order() {
        let chi_val = match convention {
            MolienConvention::CharacterValue => chi.value(g),
            MolienConvention::CharacterInverse => chi.value(group.inv_idx(g)),
        };
        let mut term = vec![lift.lift_base(chi_val).map_err(SeriesError::Modular)?];
        for (h, det) in dets.iter().enumerate() {
            if h != g {
                term = cyc_poly_mul(&term, det);
            }
        }
        num = cyc_poly_add(&num, &term);
    }
    let num = cyc_poly_to_int(&num)?;
    // peel shared reciprocal-cyclotomic factors; the denominator's factor
    // multiset is known exactly from the eigenvalue orders, and each factor
    // is irreducible over Q, so this reaches lowest terms
    let mut num = num;
    let mut remaining = factor_orders;
    if num.is_zero() {
        return RationalSeries::new(IntPoly::zero(), IntPoly::one())
            .map_err(|_| SeriesError::BadDenominator);
    }
    for (&order, mult) in remaining.clone().iter() {
        let f = reversed_cyclotomic(order);
        let mut left = *mult;
        while left > 0 {
            match num.div_exact(&f) {
                Some(q) => {
                    num = q;
                    left -= 1;
                }
                None => break,
            }
        }
        *remaining.get_mut(&order).unwrap() = left;
    }
    let order = group.order() as i64;
    let div = num.scale(1).div_exact(&IntPoly::new(vec![order]));
    let num = div.ok_or_else(|| {
        SeriesError::NonIntegralSeries(format!("numerator content not divisible by {order}"))
    })?;
    let mut den = IntPoly::one();
    for (&ord, &mult) in &remaining {
        let f = reversed_cyclotomic(ord);
        for _ in 0..mult {
            den = den.mul(&f);
        }
    }
    RationalSeries::new(num, den).map_err(|_| SeriesError::BadDenominator)
}

fn cyc_poly_mul(a: &[CycInt], b: &[CycInt]) -> Vec<CycInt> {
    let e = a[0].root_order();
    let mut out = vec![CycInt::zero(e); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&ca.mul(cb));
        }
    }
    out
}

fn cyc_poly_add(a: &[CycInt], b: &[CycInt]) -> Vec<CycInt> {
    let e = a[0].root_order();
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| CycInt::zero(e));
            let y = b.get(i).cloned().unwrap_or_else(|| CycInt::zero(e));
            x.add(&y)
        })
        .collect()
}

fn cyc_poly_to_int(a: &[CycInt]) -> Result<IntPoly, SeriesError> {
    let mut coeffs = Vec::with_capacity(a.len());
    for (d, c) in a.iter().enumerate() {
        match c.as_int() {
            Some(n) => coeffs.push(n),
            None => {
                return Err(SeriesError::NonIntegralSeries(format!(
                    "coefficient of t^{d} is {c}, not a rational integer"
                )))
            }
        }
    }
    Ok(IntPoly::new(coeffs))
}

/// Result of rewriting a series over hsop degrees: the numerator polynomial
/// and whether all its coefficients are non-negative (a precondition for
/// reading them as free-module generator counts).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HsopRewrite {
    pub numerator: IntPoly,
    pub nonnegative: bool,
}

/// Rewrite r as numerator / prod (1 - t^{e_j}): multiply through and divide
/// exactly, failing when the series is not a polynomial multiple of the
/// claimed denominator.
pub fn rewrite_over_hsop(r: &RationalSeries, degrees: &[u32]) -> Result<HsopRewrite, SeriesError> {
    let target = r.numerator().mul(&hsop_denominator(degrees));
    match target.div_exact(r.denominator()) {
        Some(numerator) => {
            let nonnegative = numerator.coeffs().iter().all(|&c| c >= 0);
            Ok(HsopRewrite { numerator, nonnegative })
        }
        None => Err(SeriesError::NotFreeOverHsop {
            remainder_degree: r.denominator().degree().unwrap_or(0),
        }),
    }
}

/// Reconstruct the numerator over given hsop degrees from a dimension table:
/// multiply the truncated series by prod (1 - t^{e_j}) and require the tail
/// to vanish, which pins the numerator exactly when its degree is at most
/// dims.len() - 1 - sum(e_j).
pub fn numerator_from_dims(dims: &[usize], degrees: &[u32]) -> Result<IntPoly, SeriesError> {
    let den = hsop_denominator(degrees);
    let n = dims.len();
    let margin: usize = degrees.iter().map(|&e| e as usize).sum();
    if n <= margin {
        return Err(SeriesError::ReconstructionFailed);
    }
    let mut prod = vec![0i64; n];
    for (i, &d) in dims.iter().enumerate() {
        let d = d as i64;
        if d == 0 {
            continue;
        }
        for (j, &c) in den.coeffs().iter().enumerate() {
            if i + j < n {
                prod[i + j] += d * c;
            }
        }
    }
    // the last `margin` entries are contaminated by truncation only if the
    // true numerator reached that high; require them to vanish
    if prod[n - margin..].iter().any(|&c| c != 0) {
        return Err(SeriesError::ReconstructionFailed);
    }
    Ok(IntPoly::new(prod))
}
