//! Eigenvalue extraction in splitting fields and the Brauer lift: the
//! multiplicative transport of finite-field roots of unity to genuine
//! characteristic-zero roots of unity in Z[zeta_e]. This is what lets the
//! Molien sum run in cross characteristic.

use super::cyclotomic::CycInt;
use super::ext::{ExtElem, ExtField};
use super::{FieldError, Fp};
use crate::linalg::{char_poly, matrix_order, FpMatrix};

/// A fixed isomorphism from the order-e cyclic subgroup of F_{p^k}^x onto
/// the group of e-th roots of unity in `Z[zeta_e]`.
///
/// The subgroup generator is pinned deterministically: gamma = g^((p^k-1)/e)
/// where g is the first full-order element of F_{p^k}^x in the fixed
/// enumeration, and the lift sends gamma^j to zeta_e^j.
#[derive(Debug, Clone)]
pub struct BrauerLift {
    e: u32,
    field: ExtField,
    /// gamma^j for j in 0..e, in order; lifting is table lookup.
    gamma_powers: Vec<ExtElem>,
}

impl BrauerLift {
    /// Build the lift for root order e over characteristic p. The ambient
    /// field is F_{p^k} with k the multiplicative order of p mod e, the
    /// smallest field containing all e-th roots of unity.
    pub fn new(p: u32, e: u32) -> Result<BrauerLift, FieldError> {
        assert!(e >= 1);
        if e.is_multiple_of(p) {
            return Err(FieldError::RootOrderNotCoprime { e, p });
        }
        let mut k = 1usize;
        let mut pk = p as u64 % e as u64;
        while pk != 1 % e as u64 {
            pk = pk * (p as u64 % e as u64) % e as u64;
            k += 1;
        }
        let field = ExtField::new(p, k);
        let g = field.generator();
        let gamma = field.pow(&g, (field.size() - 1) / e as u64);
        let mut gamma_powers = Vec::with_capacity(e as usize);
        let mut acc = field.one();
        for _ in 0..e {
            gamma_powers.push(acc.clone());
            acc = field.mul(&acc, &gamma);
        }
        Ok(BrauerLift { e, field, gamma_powers })
    }

    pub fn root_order(&self) -> u32 {
        self.e
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    /// Lift an element of order dividing e to the matching power of zeta_e.
    pub fn lift(&self, x: &ExtElem) -> Result<CycInt, FieldError> {
        for (j, gp) in self.gamma_powers.iter().enumerate() {
            if gp == x {
                return Ok(CycInt::zeta_pow(self.e, j as u32));
            }
        }
        let order =
            self.field.order(x).map_err(|_| FieldError::ZeroInverse)?;
        Err(FieldError::OrderDoesNotDivide { order, target: self.e })
    }

    /// Lift a base-field element (character values live in F_p).
    pub fn lift_base(&self, x: Fp) -> Result<CycInt, FieldError> {
        self.lift(&self.field.embed(x))
    }
}

/// All roots of the characteristic polynomial of `m` in a splitting field
/// F_{p^k}, with multiplicity. k is the lcm of the degrees of the
/// irreducible factors, so the polynomial splits completely and the product
/// of (x - lambda) recovers it.
pub fn eigenvalues_bar(m: &FpMatrix) -> (ExtField, Vec<ExtElem>) {
    let cp = char_poly(m);
    let factors = cp.irreducible_factors();
    let k = factors.iter().fold(1usize, |acc, (f, _)| lcm(acc, f.degree().unwrap()));
    let field = ExtField::new(m.p(), k);
    let eigen = eigenvalues_in(&field, m).expect("characteristic polynomial splits by construction");
    (field, eigen)
}

/// Roots of the characteristic polynomial of `m` inside a given field, with
/// multiplicity, or None when it does not split there. Root scan plus
/// repeated division; the fields involved are tiny.
pub fn eigenvalues_in(field: &ExtField, m: &FpMatrix) -> Option<Vec<ExtElem>> {
    let cp = char_poly(m);
    let n = cp.degree().expect("characteristic polynomial is monic");
    // work with extension coefficients, dividing out roots as found
    let mut coeffs: Vec<ExtElem> = cp.coeffs().iter().map(|&c| field.embed(c)).collect();
    let mut roots = Vec::with_capacity(n);
    'outer: while coeffs.len() > 1 {
        for idx in 0..field.size() {
            let cand = field.element(idx);
            if eval_ext(field, &coeffs, &cand).is_zero() {
                coeffs = divide_out_root(field, &coeffs, &cand);
                roots.push(cand);
                continue 'outer;
            }
        }
        return None;
    }
    Some(roots)
}

fn eval_ext(field: &ExtField, coeffs: &[ExtElem], x: &ExtElem) -> ExtElem {
    let mut acc = field.zero();
    for c in coeffs.iter().rev() {
        acc = field.mul(&acc, x);
        acc = field.add(&acc, c);
    }
    acc
}

/// Synthetic division by (x - r); the remainder is known to vanish.
fn divide_out_root(field: &ExtField, coeffs: &[ExtElem], r: &ExtElem) -> Vec<ExtElem> {
    let n = coeffs.len() - 1;
    let mut quot = vec![field.zero(); n];
    let mut carry = field.zero();
    for i in (0..n).rev() {
        carry = field.add(&coeffs[i + 1], &field.mul(&carry, r));
        quot[i] = carry.clone();
    }
    quot
}

/// det^0(1 - t m): the polynomial prod (1 - lift(lambda) t) over the
/// eigenvalues of m, with exact cyclotomic-integer coefficients.
///
/// Requires the order of m to be coprime to p: a matrix of order divisible
/// by p is not semisimple, its finite-field eigenvalue multiset forgets the
/// unipotent part, and no multiplicative lift exists. Such elements are
/// rejected with a "modular element" error. Given that, every eigenvalue is
/// a root of unity of order dividing ord(m), and all of them live in the
/// lift's field whenever ord(m) divides e.
pub fn brauer_det(m: &FpMatrix, lift: &BrauerLift) -> Result<Vec<CycInt>, FieldError> {
    let p = m.p();
    let order = matrix_order(m)?;
    if order % p == 0 {
        return Err(FieldError::ModularElement { order, p });
    }
    let eigen = eigenvalues_in(lift.field(), m).ok_or(FieldError::DoesNotSplit)?;
    let e = lift.root_order();
    let mut poly = vec![CycInt::one(e)];
    for lambda in &eigen {
        let z = lift.lift(lambda)?;
        // multiply by (1 - z t)
        let mut next = vec![CycInt::zero(e); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d] = next[d].add(c);
            next[d + 1] = next[d + 1].sub(&c.mul(&z));
        }
        poly = next;
    }
    Ok(poly)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::UniPoly;

    fn int_coeffs(poly: &[CycInt]) -> Vec<i64> {
        poly.iter().map(|c| c.as_int().expect("integer coefficient")).collect()
    }

    #[test]
    fn identity_eigenvalues_are_ones() {
        let id = FpMatrix::identity(3, 3);
        let (field, eigen) = eigenvalues_bar(&id);
        assert_eq!(field.degree(), 1);
        assert_eq!(eigen, vec![field.one(), field.one(), field.one()]);
    }

    #[test]
    fn diagonal_action_eigenvalues() {
        let m = FpMatrix::from_rows(3, &[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        let (field, eigen) = eigenvalues_bar(&m);
        assert_eq!(field.degree(), 1);
        let minus_one = field.embed(Fp::new(-1, 3));
        assert_eq!(eigen.iter().filter(|&l| *l == field.one()).count(), 1);
        assert_eq!(eigen.iter().filter(|&l| *l == minus_one).count(), 2);
    }

    #[test]
    fn cyclic_permutation_is_inseparable_over_f3() {
        // char poly x^3 - 1 = (x - 1)^3 over F_3: all eigenvalues equal 1
        let m = FpMatrix::from_rows(3, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let (field, eigen) = eigenvalues_bar(&m);
        assert_eq!(field.degree(), 1);
        assert!(eigen.iter().all(|l| *l == field.one()));
    }

    #[test]
    fn order_four_rotation_splits_in_f9() {
        let m = FpMatrix::from_rows(3, &[&[0, 1], &[-1, 0]]);
        let (field, eigen) = eigenvalues_bar(&m);
        assert_eq!(field.degree(), 2);
        assert_eq!(eigen.len(), 2);
        // product of (x - lambda) rebuilds x^2 + 1
        let cp = char_poly(&m);
        assert_eq!(cp, UniPoly::from_ints(3, &[1, 0, 1]));
        for l in &eigen {
            assert_eq!(field.order(l).unwrap(), 4);
        }
    }

    #[test]
    fn brauer_det_of_identity_is_one_minus_t_cubed() {
        let lift = BrauerLift::new(3, 2).unwrap();
        let d = brauer_det(&FpMatrix::identity(3, 3), &lift).unwrap();
        assert_eq!(int_coeffs(&d), vec![1, -3, 3, -1]);
    }

    #[test]
    fn brauer_det_of_sign_diagonals() {
        let lift = BrauerLift::new(3, 2).unwrap();
        // (1 - t)(1 + t)^2 = 1 + t - t^2 - t^3, for any diagonal with one +1
        for rows in [
            [[1i64, 0, 0], [0, -1, 0], [0, 0, -1]],
            [[-1, 0, 0], [0, -1, 0], [0, 0, 1]],
            [[-1, 0, 0], [0, 1, 0], [0, 0, -1]],
        ] {
            let m = FpMatrix::from_rows(3, &[&rows[0], &rows[1], &rows[2]]);
            let d = brauer_det(&m, &lift).unwrap();
            assert_eq!(int_coeffs(&d), vec![1, 1, -1, -1]);
        }
    }

    #[test]
    fn trivial_lift_on_identity() {
        let lift = BrauerLift::new(3, 1).unwrap();
        let d = brauer_det(&FpMatrix::identity(3, 2), &lift).unwrap();
        assert_eq!(int_coeffs(&d), vec![1, -2, 1]);
    }

    #[test]
    fn modular_element_is_rejected() {
        let lift = BrauerLift::new(3, 2).unwrap();
        let t3 = FpMatrix::from_rows(3, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert!(matches!(
            brauer_det(&t3, &lift),
            Err(FieldError::ModularElement { order: 3, p: 3 })
        ));
    }

    #[test]
    fn order_four_rotation_lifts_to_gaussian_integers() {
        let lift = BrauerLift::new(3, 4).unwrap();
        let m = FpMatrix::from_rows(3, &[&[0, 1], &[-1, 0]]);
        // (1 - it)(1 + it) = 1 + t^2
        let d = brauer_det(&m, &lift).unwrap();
        assert_eq!(int_coeffs(&d), vec![1, 0, 1]);
    }

    #[test]
    fn lift_is_multiplicative_and_fixes_signs() {
        for e in [2u32, 4, 8] {
            let lift = BrauerLift::new(3, e).unwrap();
            let field = lift.field().clone();
            assert_eq!(lift.lift(&field.one()).unwrap(), CycInt::one(e));
            let minus_one = field.embed(Fp::new(-1, 3));
            assert_eq!(lift.lift(&minus_one).unwrap(), CycInt::from_int(e, -1));
            // multiplicativity over the full order-e subgroup
            for a in 0..e {
                for b in 0..e {
                    let ga = &lift.gamma_powers[a as usize];
                    let gb = &lift.gamma_powers[b as usize];
                    let prod = field.mul(ga, gb);
                    assert_eq!(
                        lift.lift(&prod).unwrap(),
                        lift.lift(ga).unwrap().mul(&lift.lift(gb).unwrap())
                    );
                }
            }
        }
    }

    #[test]
    fn lift_rejects_orders_outside_e() {
        // e = 4 lives in F_9; the generator of F_9^x has order 8 and cannot lift
        let lift = BrauerLift::new(3, 4).unwrap();
        let g = lift.field().generator();
        assert!(matches!(
            lift.lift(&g),
            Err(FieldError::OrderDoesNotDivide { order: 8, target: 4 })
        ));
    }

    #[test]
    fn brauer_det_palindrome_with_inverse() {
        // for m of order coprime to p, det0(m) * det0(m^-1) is palindromic
        let lift = BrauerLift::new(3, 4).unwrap();
        for m in [
            FpMatrix::from_rows(3, &[&[0, 1], &[-1, 0]]),
            FpMatrix::from_rows(3, &[&[1, 0], &[0, -1]]),
            FpMatrix::from_rows(3, &[&[2, 0], &[0, 2]]),
        ] {
            let mi = m.inverse().unwrap();
            let a = brauer_det(&m, &lift).unwrap();
            let b = brauer_det(&mi, &lift).unwrap();
            // multiply
            let mut prod = vec![CycInt::zero(4); a.len() + b.len() - 1];
            for (i, ca) in a.iter().enumerate() {
                for (j, cb) in b.iter().enumerate() {
                    prod[i + j] = prod[i + j].add(&ca.mul(cb));
                }
            }
            let ints = int_coeffs(&prod);
            let rev: Vec<i64> = ints.iter().rev().copied().collect();
            assert_eq!(ints, rev);
        }
    }
}
