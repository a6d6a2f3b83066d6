//! The built-in computation target: SL_2(F_3) acting by conjugation on the
//! trace-zero 2x2 matrices over F_3, together with the quaternion subgroup,
//! its sign character, and the named invariant elements.
//!
//! Everything else in the crate is generic; this module pins the concrete
//! matrices and elements that the command-line pipeline certifies.

use crate::field::Fp;
use crate::forms::{parse, Element};
use crate::group::{
    closure, conjugation_rep, descend_character, transversal, CosetTransversal, GroupError,
    LinearCharacter, MatrixGroup, Representation,
};
use crate::linalg::FpMatrix;

pub const P: u32 = 3;
pub const RANK: usize = 3;

/// The order-3 generator t: upper triangular with a single off-diagonal 1.
pub fn gen_t() -> FpMatrix {
    FpMatrix::from_rows(P, &[&[1, 1], &[0, 1]])
}

/// The order-4 generator i (also the basis vector v1).
pub fn gen_i() -> FpMatrix {
    FpMatrix::from_rows(P, &[&[0, 1], &[-1, 0]])
}

/// The basis v1, v2, v3 of the trace-zero matrices; v2 and v3 coincide with
/// k and j, which is what makes t cycle the basis.
pub fn v_basis() -> [FpMatrix; 3] {
    [
        FpMatrix::from_rows(P, &[&[0, 1], &[-1, 0]]),
        FpMatrix::from_rows(P, &[&[-1, -1], &[-1, 1]]),
        FpMatrix::from_rows(P, &[&[1, -1], &[-1, -1]]),
    ]
}

/// All the fixture structure in one place, built once.
pub struct Fixture {
    /// SL_2(F_3), order 24.
    pub g: MatrixGroup,
    /// The quaternion subgroup generated by i and j = t^-1 i t, order 8.
    pub h: MatrixGroup,
    /// Conjugation representation of G on the trace-zero matrices.
    pub rep_g: Representation,
    /// The same representation restricted to H (its own element order).
    pub rep_h: Representation,
    /// Image of G in GL_3, order 12.
    pub gbar: MatrixGroup,
    /// Image of H in GL_3, order 4.
    pub hbar: MatrixGroup,
    /// The sign character on H: i -> 1, j, k -> -1.
    pub chi: LinearCharacter,
    /// The same character on the image group.
    pub chibar: LinearCharacter,
    /// Left transversal of H in G: e, t, t^2.
    pub transversal: CosetTransversal,
}

impl Fixture {
    pub fn new() -> Result<Fixture, GroupError> {
        Fixture::from_parts(gen_t(), gen_i(), v_basis(), [Fp::one(P), Fp::new(-1, P)])
    }

    /// Build the same structure from explicit parts: generators t and i, a
    /// basis of the conjugation module, and the w-character values on i and
    /// on j = t^-1 i t. This is the hook the config override uses.
    pub fn from_parts(
        t: FpMatrix,
        i: FpMatrix,
        basis: [FpMatrix; 3],
        chi_gen_values: [Fp; 2],
    ) -> Result<Fixture, GroupError> {
        let g = closure(&[t.clone(), i.clone()])?;
        let ti = g.index_of(&t).expect("t generates");
        let ii = g.index_of(&i).expect("i generates");
        let j_idx = g.mul_idx(g.mul_idx(g.inv_idx(ti), ii), ti);
        let j = g.element(j_idx).clone();
        let h = closure(&[i, j])?;
        let rep_g = conjugation_rep(&g, &basis)?;
        let rep_h = conjugation_rep(&h, &basis)?;
        let gbar = rep_g.image_group();
        let hbar = rep_h.image_group();
        let chi = LinearCharacter::from_generator_values(&h, &chi_gen_values)?;
        let chibar = descend_character(&h, &rep_h, &chi, &hbar)?;
        let trans = transversal(&g, &h)?;
        Ok(Fixture { g, h, rep_g, rep_h, gbar, hbar, chi, chibar, transversal: trans })
    }

    /// Index of t in G.
    pub fn t_index(&self) -> usize {
        self.g.index_of(&gen_t()).expect("t is a generator")
    }

    /// Index of i in G.
    pub fn i_index(&self) -> usize {
        self.g.index_of(&gen_i()).expect("i is a generator")
    }
}

fn el(s: &str) -> Element {
    parse(s, P, RANK).expect("fixture element parses")
}

/// The invariant hsop: a1, a2, a3 of degrees 2, 3, 4.
pub fn hsop_a() -> Vec<Element> {
    vec![a1(), a2(), a3()]
}

pub fn hsop_a_degrees() -> Vec<u32> {
    vec![2, 3, 4]
}

/// The squares hsop for the subgroup invariants, degrees 2, 2, 2.
pub fn hsop_squares() -> Vec<Element> {
    vec![el("x1^2"), el("x2^2"), el("x3^2")]
}

pub fn a1() -> Element {
    el("x1^2+x2^2+x3^2")
}

pub fn a2() -> Element {
    el("x1*x2*x3")
}

pub fn a3() -> Element {
    el("x1^4+x2^4+x3^4")
}

/// The degree-6 secondary invariant.
pub fn b() -> Element {
    el("x1^4*x2^2+x1^2*x3^4+x2^4*x3^2")
}

/// The six relative-invariant module generators, degrees 1, 2, 3, 3, 4, 5.
pub fn relative_generators() -> Vec<(String, Element)> {
    [
        ("x1", "x1"),
        ("x2x3", "x2*x3"),
        ("x1^3", "x1^3"),
        ("x1x2^2", "x1*x2^2"),
        ("x2^3x3", "x2^3*x3"),
        ("x1^3x2^2", "x1^3*x2^2"),
    ]
    .iter()
    .map(|(name, s)| (name.to_string(), el(s)))
    .collect()
}

/// The degree-1-form covariants c1..c6.
pub fn c_elements() -> Vec<(String, Element)> {
    [
        ("c1", "x1*y1+x2*y2+x3*y3"),
        ("c2", "x2*x3*y1+x3*x1*y2+x1*x2*y3"),
        ("c3", "x1^3*y1+x2^3*y2+x3^3*y3"),
        ("c4", "x1*x2^2*y1+x2*x3^2*y2+x3*x1^2*y3"),
        ("c5", "x2^3*x3*y1+x3^3*x1*y2+x1^3*x2*y3"),
        ("c6", "x1^3*x2^2*y1+x2^3*x3^2*y2+x3^3*x1^2*y3"),
    ]
    .iter()
    .map(|(name, s)| (name.to_string(), el(s)))
    .collect()
}

/// The 2-form covariants d1..d6.
pub fn d_elements() -> Vec<(String, Element)> {
    [
        ("d1", "x1*y2*y3+x2*y3*y1+x3*y1*y2"),
        ("d2", "x2*x3*y2*y3+x3*x1*y3*y1+x1*x2*y1*y2"),
        ("d3", "x1^3*y2*y3+x2^3*y3*y1+x3^3*y1*y2"),
        ("d4", "x1*x2^2*y2*y3+x2*x3^2*y3*y1+x3*x1^2*y1*y2"),
        ("d5", "x2^3*x3*y2*y3+x3^3*x1*y3*y1+x1^3*x2*y1*y2"),
        ("d6", "x1^3*x2^2*y2*y3+x2^3*x3^2*y3*y1+x3^3*x1^2*y1*y2"),
    ]
    .iter()
    .map(|(name, s)| (name.to_string(), el(s)))
    .collect()
}

/// The top exterior generator.
pub fn yyy() -> Element {
    el("y1*y2*y3")
}

/// The 14 minimal algebra generators with their conventional names.
pub fn minimal_generator_names() -> Vec<(String, Element)> {
    let mut out = vec![
        ("a1".to_string(), a1()),
        ("a2".to_string(), a2()),
        ("a3".to_string(), a3()),
        ("b".to_string(), b()),
    ];
    out.extend(c_elements());
    out.extend(d_elements().into_iter().take(3));
    out.push(("y1y2y3".to_string(), yyy()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_builds_with_expected_orders() {
        let fx = Fixture::new().unwrap();
        assert_eq!(fx.g.order(), 24);
        assert_eq!(fx.h.order(), 8);
        assert_eq!(fx.gbar.order(), 12);
        assert_eq!(fx.hbar.order(), 4);
        assert_eq!(fx.rep_g.kernel().len(), 2);
        assert_eq!(fx.transversal.reps.len(), 3);
    }

    #[test]
    fn named_elements_have_expected_bidegrees() {
        use crate::forms::Bidegree;
        assert_eq!(a1().bidegree(), Some(Bidegree::new(2, 0)));
        assert_eq!(a2().bidegree(), Some(Bidegree::new(3, 0)));
        assert_eq!(a3().bidegree(), Some(Bidegree::new(4, 0)));
        assert_eq!(b().bidegree(), Some(Bidegree::new(6, 0)));
        let cs = c_elements();
        let xdegs: Vec<u32> = cs.iter().map(|(_, e)| e.bidegree().unwrap().xdeg).collect();
        assert_eq!(xdegs, vec![1, 2, 3, 3, 4, 5]);
        assert!(cs.iter().all(|(_, e)| e.bidegree().unwrap().ydeg == 1));
        let ds = d_elements();
        let xdegs: Vec<u32> = ds.iter().map(|(_, e)| e.bidegree().unwrap().xdeg).collect();
        assert_eq!(xdegs, vec![1, 2, 3, 3, 4, 5]);
        assert!(ds.iter().all(|(_, e)| e.bidegree().unwrap().ydeg == 2));
        assert_eq!(yyy().bidegree(), Some(Bidegree::new(0, 3)));
        assert_eq!(minimal_generator_names().len(), 14);
    }

    #[test]
    fn named_elements_are_invariant() {
        let fx = Fixture::new().unwrap();
        let action = crate::group::GroupAction::new(&fx.rep_g);
        for (name, elem) in minimal_generator_names() {
            for idx in 0..fx.g.order() {
                assert_eq!(action.act(idx, &elem), elem, "{name} fails at element {idx}");
            }
        }
    }
}
