//! Sparse exact arithmetic in the free graded-commutative algebra on even
//! generators x_1..x_n (polynomial part) and odd generators y_1..y_n
//! (exterior part), over F_p.
//!
//! The native grading is the bidegree (xdeg, ydeg): total polynomial degree
//! in the x's, and the number of y factors. The topological degree
//! 2*xdeg + ydeg is a derived view.

use crate::field::Fp;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Errors from forms arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormsError {
    RankMismatch { left: usize, right: usize },
    Parse { position: usize, message: String },
}

impl fmt::Display for FormsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormsError::RankMismatch { left, right } => {
                write!(f, "rank mismatch: {left} vs {right}")
            }
            FormsError::Parse { position, message } => {
                write!(f, "parse error at byte {position}: {message}")
            }
        }
    }
}

impl std::error::Error for FormsError {}

/// The bidegree of a homogeneous element: x-degree and y-degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bidegree {
    pub xdeg: u32,
    pub ydeg: u32,
}

impl Bidegree {
    pub fn new(xdeg: u32, ydeg: u32) -> Bidegree {
        Bidegree { xdeg, ydeg }
    }

    /// Topological degree with deg(x) = 2, deg(y) = 1.
    pub fn topdeg(&self) -> u32 {
        2 * self.xdeg + self.ydeg
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.xdeg, self.ydeg)
    }
}

/// A monomial x_1^{e_1}...x_n^{e_n} * y_{i_1}...y_{i_k} in canonical form:
/// the odd part is a strictly increasing index set, stored as a bitmask.
/// Any construction from unordered odd factors pushes the Koszul sign out
/// to the coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    mask: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u16>, mask: u32) -> Monomial {
        let rank = exps.len();
        assert!(rank <= 32, "rank bounded by the mask width");
        assert_eq!(mask >> rank, 0, "mask uses only the first {rank} bits");
        Monomial { exps, mask }
    }

    /// The empty monomial (the constant 1).
    pub fn one(rank: usize) -> Monomial {
        Monomial::new(vec![0; rank], 0)
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn xdeg(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn ydeg(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn bidegree(&self) -> Bidegree {
        Bidegree::new(self.xdeg(), self.ydeg())
    }

    pub fn topdeg(&self) -> u32 {
        self.bidegree().topdeg()
    }

    /// Product with Koszul sign: None when an odd generator repeats.
    /// The sign counts the transpositions needed to interleave the two
    /// ordered odd index sets.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, i32)> {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        if self.mask & other.mask != 0 {
            return None;
        }
        // each bit of other.mask jumps over the bits of self.mask above it
        let mut swaps = 0u32;
        for j in 0..other.rank() as u32 {
            if other.mask >> j & 1 == 1 {
                swaps += (self.mask >> (j + 1)).count_ones();
            }
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(&a, &b)| a + b).collect();
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((Monomial::new(exps, self.mask | other.mask), sign))
    }
}

/// Canonical term order (ascending): by topological degree, then x-degree,
/// then exponent tuple lexicographically with x_1 most significant, then
/// mask descending. Reverse iteration therefore lists x_1-leading monomials
/// first and y_1 before y_2, which is the display and coordinate order.
impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.topdeg()
            .cmp(&other.topdeg())
            .then(self.xdeg().cmp(&other.xdeg()))
            .then_with(|| self.exps.cmp(&other.exps))
            .then(other.mask.cmp(&self.mask))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{}", i + 1, e)),
            }
        }
        for i in 0..self.rank() {
            if self.mask >> i & 1 == 1 {
                parts.push(format!("y{}", i + 1));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Canonicalize a list of odd-generator indices (1-based): returns the
/// sorted index set as a mask and the permutation sign, with sign 0 when an
/// index repeats (the product vanishes).
pub fn sign_normalize(indices: &[u32]) -> (u32, i8) {
    let mut mask = 0u32;
    let mut swaps = 0u32;
    for (pos, &idx) in indices.iter().enumerate() {
        assert!((1..=32).contains(&idx), "odd generator index out of range");
        let bit = 1u32 << (idx - 1);
        if mask & bit != 0 {
            return (0, 0);
        }
        // count earlier indices larger than this one
        for &prev in &indices[..pos] {
            if prev > idx {
                swaps += 1;
            }
        }
        mask |= bit;
    }
    (mask, if swaps.is_multiple_of(2) { 1 } else { -1 })
}

/// A sparse element: monomial -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    p: u32,
    rank: usize,
    terms: BTreeMap<Monomial, Fp>,
}

impl Element {
    pub fn zero(p: u32, rank: usize) -> Element {
        Element { p, rank, terms: BTreeMap::new() }
    }

    pub fn constant(c: Fp, rank: usize) -> Element {
        let mut e = Element::zero(c.modulus(), rank);
        e.add_term(Monomial::one(rank), c);
        e
    }

    pub fn one(p: u32, rank: usize) -> Element {
        Element::constant(Fp::one(p), rank)
    }

    /// A single generator: x_i for odd = false, y_i for odd = true (1-based).
    pub fn generator(p: u32, rank: usize, index: usize, odd: bool) -> Element {
        assert!(index >= 1 && index <= rank);
        let m = if odd {
            Monomial::new(vec![0; rank], 1 << (index - 1))
        } else {
            let mut exps = vec![0; rank];
            exps[index - 1] = 1;
            Monomial::new(exps, 0)
        };
        let mut e = Element::zero(p, rank);
        e.add_term(m, Fp::one(p));
        e
    }

    pub fn from_terms(p: u32, rank: usize, terms: Vec<(Monomial, Fp)>) -> Element {
        let mut e = Element::zero(p, rank);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Fp)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Fp {
        self.terms.get(m).copied().unwrap_or_else(|| Fp::zero(self.p))
    }

    /// Add c * m, dropping the entry if the total cancels.
    pub fn add_term(&mut self, m: Monomial, c: Fp) {
        assert_eq!(m.rank(), self.rank, "rank mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    o.insert(s);
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, &c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, &c) in other.terms() {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Element {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        out
    }

    pub fn scale(&self, c: Fp) -> Element {
        if c.is_zero() {
            return Element::zero(self.p, self.rank);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = *v * c;
        }
        out
    }

    /// Graded-commutative product: odd squares vanish, transposing adjacent
    /// odd generators flips the sign, even generators are central.
    pub fn try_mul(&self, other: &Element) -> Result<Element, FormsError> {
        if self.rank != other.rank {
            return Err(FormsError::RankMismatch { left: self.rank, right: other.rank });
        }
        let mut out = Element::zero(self.p, self.rank);
        for (ma, &ca) in self.terms() {
            for (mb, &cb) in other.terms() {
                if let Some((m, sign)) = ma.mul(mb) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Element) -> Element {
        self.try_mul(other).expect("rank mismatch in product")
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut acc = Element::one(self.p, self.rank);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The common bidegree of all terms, when the element is homogeneous.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.keys();
        let first = it.next()?.bidegree();
        if it.all(|m| m.bidegree() == first) {
            Some(first)
        } else {
            None
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms().rev() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let is_const = m.xdeg() == 0 && m.ydeg() == 0;
            if is_const {
                write!(f, "{}", c.value())?;
            } else if c.value() == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", c.value())?;
            }
        }
        Ok(())
    }
}

/// Parse the plain-text element syntax: terms joined by `+`/`-`, monomials
/// like `x1^4*x2^2*y1*y3`, integer coefficients reduced mod p. Odd factors
/// multiply with graded-commutative semantics, so `y2*y1` parses to the
/// canonical `-y1*y2` and `y1*y1` to zero. Printing always emits canonical
/// form, and parse(print(e)) == e exactly.
pub fn parse(input: &str, p: u32, rank: usize) -> Result<Element, FormsError> {
    Parser { input: input.as_bytes(), pos: 0, p, rank }.parse_element()
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    p: u32,
    rank: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: &str) -> Result<T, FormsError> {
        Err(FormsError::Parse { position: self.pos, message: message.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn parse_element(&mut self) -> Result<Element, FormsError> {
        let mut out = Element::zero(self.p, self.rank);
        let mut negate = false;
        match self.peek() {
            Some(b'+') => self.pos += 1,
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(_) => {}
            None => return self.error("empty input"),
        }
        loop {
            let term = self.parse_term()?;
            out = if negate { out.sub(&term) } else { out.add(&term) };
            match self.peek() {
                Some(b'+') => {
                    negate = false;
                    self.pos += 1;
                }
                Some(b'-') => {
                    negate = true;
                    self.pos += 1;
                }
                Some(_) => return self.error("expected '+' or '-'"),
                None => break,
            }
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<Element, FormsError> {
        let mut term = Element::one(self.p, self.rank);
        let mut any = false;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.parse_number()?;
                    term = term.scale(Fp::new(n, self.p));
                    any = true;
                }
                Some(b'x') | Some(b'y') => {
                    let odd = self.input[self.pos] == b'y';
                    self.pos += 1;
                    let idx = self.parse_number()?;
                    if idx < 1 || idx as usize > self.rank {
                        return self.error("generator index out of range");
                    }
                    let mut exp = 1i64;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        exp = self.parse_number()?;
                        if exp < 0 {
                            return self.error("negative exponent");
                        }
                    }
                    let g = Element::generator(self.p, self.rank, idx as usize, odd);
                    for _ in 0..exp {
                        term = term.mul(&g);
                    }
                    any = true;
                }
                _ => break,
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if !any {
            return self.error("expected a term");
        }
        Ok(term)
    }

    fn parse_number(&mut self) -> Result<i64, FormsError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected a number");
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| FormsError::Parse { position: start, message: "bad number".into() })
    }
}

/// All monomials of a given bidegree in descending canonical order: this is
/// the coordinate order used by every matrix in the crate.
/// Size: C(xdeg + n - 1, n - 1) * C(n, ydeg).
pub fn bidegree_basis(bd: Bidegree, rank: usize) -> Vec<Monomial> {
    let mut exps_list = Vec::new();
    enumerate_exps(bd.xdeg, rank, &mut Vec::with_capacity(rank), &mut exps_list);
    let mut masks = Vec::new();
    for mask in 0u32..(1 << rank) {
        if mask.count_ones() == bd.ydeg {
            masks.push(mask);
        }
    }
    let mut out = Vec::with_capacity(exps_list.len() * masks.len());
    for exps in &exps_list {
        for &mask in &masks {
            out.push(Monomial::new(exps.clone(), mask));
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn enumerate_exps(total: u32, slots: usize, acc: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
    if slots == 1 {
        let mut v = acc.clone();
        v.push(total as u16);
        out.push(v);
        return;
    }
    for e in 0..=total {
        acc.push(e as u16);
        enumerate_exps(total - e, slots - 1, acc, out);
        acc.pop();
    }
}

/// A bidegree slice with its coordinate order and reverse index, used to
/// move between elements and coordinate vectors.
#[derive(Debug, Clone)]
pub struct BasisIndex {
    pub bidegree: Bidegree,
    pub rank: usize,
    pub monomials: Vec<Monomial>,
    index: std::collections::HashMap<Monomial, usize>,
}

impl BasisIndex {
    pub fn new(bd: Bidegree, rank: usize) -> BasisIndex {
        let monomials = bidegree_basis(bd, rank);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        BasisIndex { bidegree: bd, rank, monomials, index }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// Coordinates of a homogeneous element in this bidegree; None when a
    /// term lies outside the slice.
    pub fn coords(&self, f: &Element) -> Option<Vec<u8>> {
        let mut v = vec![0u8; self.monomials.len()];
        for (m, c) in f.terms() {
            let &i = self.index.get(m)?;
            v[i] = c.value() as u8;
        }
        Some(v)
    }

    pub fn element(&self, coords: &[u8], p: u32) -> Element {
        assert_eq!(coords.len(), self.monomials.len());
        let terms = coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.monomials[i].clone(), Fp::new(c as i64, p)))
            .collect();
        Element::from_terms(p, self.rank, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 3;
    const N: usize = 3;

    fn el(s: &str) -> Element {
        parse(s, P, N).unwrap()
    }

    #[test]
    fn koszul_sign_on_transposition() {
        assert_eq!(el("y2*y1"), el("2*y1*y2"));
        assert_eq!(el("y2*y1"), el("y1*y2").neg());
    }

    #[test]
    fn odd_squares_vanish() {
        assert!(el("y1*y1").is_zero());
        assert!(el("y1*y2*y1").is_zero());
    }

    #[test]
    fn disjoint_masks_multiply_without_sign() {
        assert_eq!(el("x1*y1").mul(&el("x2*y2")), el("x1*x2*y1*y2"));
    }

    #[test]
    fn c1_squares_to_zero() {
        let c1 = el("x1*y1+x2*y2+x3*y3");
        assert!(c1.mul(&c1).is_zero());
    }

    #[test]
    fn sign_normalize_examples() {
        assert_eq!(sign_normalize(&[2, 1]), (0b11, -1));
        assert_eq!(sign_normalize(&[1, 2, 3]), (0b111, 1));
        assert_eq!(sign_normalize(&[3, 1, 2]), (0b111, 1));
        assert_eq!(sign_normalize(&[2, 2]).1, 0);
    }

    #[test]
    fn bidegree_basis_sizes() {
        assert_eq!(
            bidegree_basis(Bidegree::new(1, 0), N),
            vec![
                Monomial::new(vec![1, 0, 0], 0),
                Monomial::new(vec![0, 1, 0], 0),
                Monomial::new(vec![0, 0, 1], 0)
            ]
        );
        assert_eq!(bidegree_basis(Bidegree::new(0, 3), N).len(), 1);
        assert_eq!(bidegree_basis(Bidegree::new(2, 1), N).len(), 18);
    }

    #[test]
    fn dimension_counts_match_binomials() {
        fn binom(n: u32, k: u32) -> usize {
            if k > n {
                return 0;
            }
            let mut acc = 1usize;
            for i in 0..k {
                acc = acc * (n - i) as usize / (i + 1) as usize;
            }
            acc
        }
        // generating function (1/(1-t))^n in t times (1+s)^n in s
        for x in 0..=6u32 {
            for y in 0..=3u32 {
                let expect = binom(x + N as u32 - 1, N as u32 - 1) * binom(N as u32, y);
                assert_eq!(bidegree_basis(Bidegree::new(x, y), N).len(), expect);
            }
        }
    }

    #[test]
    fn parse_print_roundtrip() {
        for s in [
            "x1^4*x2^2*y1*y3",
            "x1^2+x2^2+x3^2",
            "2*x2*x3",
            "x1*y2*y3+2*x2*y1*y3+x3*y1*y2",
            "1",
            "2",
            "0",
            "y1*y2*y3",
        ] {
            let e = el(s);
            assert_eq!(e.to_string(), s, "canonical print of {s}");
            assert_eq!(parse(&e.to_string(), P, N).unwrap(), e);
        }
    }

    #[test]
    fn parser_normalizes_signs() {
        // y3*y1 = -y1*y3, so x2*y3*y1 prints with coefficient 2
        assert_eq!(el("x2*y3*y1").to_string(), "2*x2*y1*y3");
        assert_eq!(el("x1-x2").to_string(), "x1+2*x2");
    }

    #[test]
    fn parse_errors() {
        assert!(parse("x4", P, N).is_err());
        assert!(parse("", P, N).is_err());
        assert!(parse("x1^", P, N).is_err());
        assert!(parse("x1 x2", P, N).is_err());
    }

    fn rand_element(state: &mut u64, max_deg: u16) -> Element {
        let mut out = Element::zero(P, N);
        for _ in 0..4 {
            *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let r = *state >> 33;
            let exps = vec![
                (r % max_deg as u64) as u16,
                ((r >> 8) % max_deg as u64) as u16,
                ((r >> 12) % max_deg as u64) as u16,
            ];
            let mask = ((r >> 16) % 8) as u32;
            let coef = (r >> 20) % 3;
            out.add_term(Monomial::new(exps, mask), Fp::new(coef as i64, P));
        }
        out
    }

    #[test]
    fn graded_commutativity_on_random_elements() {
        let mut state = 17u64;
        for _ in 0..50 {
            let a = rand_element(&mut state, 3);
            let b = rand_element(&mut state, 3);
            // check homogeneous pieces: split by ydeg parity
            let split = |e: &Element| {
                let mut even = Element::zero(P, N);
                let mut odd = Element::zero(P, N);
                for (m, &c) in e.terms() {
                    if m.ydeg() % 2 == 0 {
                        even.add_term(m.clone(), c);
                    } else {
                        odd.add_term(m.clone(), c);
                    }
                }
                (even, odd)
            };
            let (ae, ao) = split(&a);
            let (be, bo) = split(&b);
            // even parts are central; odd*odd anticommutes
            assert_eq!(ae.mul(&be), be.mul(&ae));
            assert_eq!(ae.mul(&bo), bo.mul(&ae));
            assert_eq!(ao.mul(&bo), bo.mul(&ao).neg());
        }
    }

    #[test]
    fn associativity_and_distributivity_on_random_triples() {
        let mut state = 23u64;
        for _ in 0..30 {
            let a = rand_element(&mut state, 2);
            let b = rand_element(&mut state, 2);
            let c = rand_element(&mut state, 2);
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }
    }

    #[test]
    fn even_part_is_plain_polynomial_multiplication() {
        let a = el("x1^2+2*x2");
        let b = el("x1+x3^2");
        let prod = a.mul(&b);
        assert_eq!(prod, el("x1^3+x1^2*x3^2+2*x1*x2+2*x2*x3^2"));
        assert_eq!(prod, b.mul(&a));
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = parse("x1", P, 2).unwrap();
        let b = parse("x1", P, 3).unwrap();
        assert!(matches!(a.try_mul(&b), Err(FormsError::RankMismatch { .. })));
    }

    #[test]
    fn coords_roundtrip() {
        let bd = Bidegree::new(2, 1);
        let basis = BasisIndex::new(bd, N);
        let f = el("x1^2*y1+2*x2*x3*y2");
        let coords = basis.coords(&f).unwrap();
        assert_eq!(basis.element(&coords, P), f);
        // terms outside the bidegree are rejected
        assert!(basis.coords(&el("x1")).is_none());
    }
}
