//! Module-structure certificates over an hsop subalgebra A: parameter-system
//! verification, free-generation checks, generator discovery, the covariant
//! transfer into the exterior summands, relation extraction, and minimal
//! algebra generators.
//!
//! Generation and freeness are certified to a finite x-degree bound paired
//! with the exact rational-function identity: the numerator read off the
//! generator degrees, the A-span dimensions, and the brute-force fixed-space
//! dimensions must agree degree by degree.

use crate::field::Fp;
use crate::forms::{BasisIndex, Bidegree, Element};
use crate::group::{GroupAction, LinearCharacter, MatrixGroup};
use crate::invariant::{product_span, FixedSpaceTable};
use crate::linalg::{solve_combination, SpanBuilder};
use crate::series::{IntPoly, RationalSeries};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureError {
    /// An hsop must have exactly as many elements as the Krull dimension.
    WrongParameterCount { expected: usize, got: usize },
    /// hsop elements must be homogeneous with no exterior part.
    NotPolynomialHomogeneous,
    /// theta requires a chi-relative invariant input.
    NotRelativeInvariant,
    /// The element is not homogeneous, so it has no bidegree.
    NotHomogeneous,
    /// The element does not lie in the A-span of the generators.
    NotInSpan(Bidegree),
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureError::WrongParameterCount { expected, got } => {
                write!(f, "parameter count {got} does not match the Krull dimension {expected}")
            }
            StructureError::NotPolynomialHomogeneous => {
                write!(f, "hsop elements must be homogeneous of exterior degree zero")
            }
            StructureError::NotRelativeInvariant => {
                write!(f, "input is not a relative invariant for the subgroup character")
            }
            StructureError::NotHomogeneous => write!(f, "element is not homogeneous"),
            StructureError::NotInSpan(bd) => {
                write!(f, "element lies outside the A-span at bidegree {bd}")
            }
        }
    }
}

impl std::error::Error for StructureError {}

/// Check that `polys` is a homogeneous system of parameters for the
/// polynomial part: the ideal they generate must contain every monomial in
/// all degrees of a window beyond sum(e_i - 1), which by graded Nakayama
/// (one vanishing degree propagates upward, since the algebra is generated
/// in degree one) certifies the quotient is finite dimensional.
pub fn hsop_check(polys: &[Element]) -> Result<bool, StructureError> {
    if polys.is_empty() {
        return Err(StructureError::WrongParameterCount { expected: 1, got: 0 });
    }
    let p = polys[0].p();
    let rank = polys[0].rank();
    if polys.len() != rank {
        return Err(StructureError::WrongParameterCount { expected: rank, got: polys.len() });
    }
    let mut degrees = Vec::with_capacity(polys.len());
    for f in polys {
        match f.bidegree() {
            Some(bd) if bd.ydeg == 0 && bd.xdeg > 0 => degrees.push(bd.xdeg),
            _ => return Err(StructureError::NotPolynomialHomogeneous),
        }
    }
    let d0: u32 = degrees.iter().map(|&e| e - 1).sum::<u32>() + 1;
    let dmax = d0 + degrees.iter().max().copied().unwrap_or(0);
    for d in d0..=dmax {
        let basis = BasisIndex::new(Bidegree::new(d, 0), rank);
        let mut span = SpanBuilder::new(p, basis.dim());
        'fill: for (f, &e) in polys.iter().zip(&degrees) {
            if e > d {
                continue;
            }
            let mult = BasisIndex::new(Bidegree::new(d - e, 0), rank);
            for m in &mult.monomials {
                let mono = Element::from_terms(p, rank, vec![(m.clone(), Fp::one(p))]);
                let prod = mono.mul(f);
                let coords = basis.coords(&prod).expect("product is homogeneous of degree d");
                span.insert(&coords);
                if span.rank() == basis.dim() {
                    break 'fill;
                }
            }
        }
        if span.rank() != basis.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cached products of hsop-generator powers: the degreewise monomial basis
/// of the parameter subalgebra A.
pub struct ASpan {
    p: u32,
    rank: usize,
    hsop: Vec<Element>,
    degrees: Vec<u32>,
    cache: HashMap<Vec<u16>, Element>,
}

impl ASpan {
    pub fn new(hsop: &[Element]) -> ASpan {
        assert!(!hsop.is_empty());
        let p = hsop[0].p();
        let rank = hsop[0].rank();
        let degrees = hsop
            .iter()
            .map(|f| {
                let bd = f.bidegree().expect("hsop elements are homogeneous");
                assert_eq!(bd.ydeg, 0, "hsop elements have no exterior part");
                bd.xdeg
            })
            .collect();
        let mut cache = HashMap::new();
        cache.insert(vec![0u16; hsop.len()], Element::one(p, rank));
        ASpan { p, rank, hsop: hsop.to_vec(), degrees, cache }
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// The monomial a_1^{k_1} ... a_m^{k_m}, built incrementally and cached.
    pub fn monomial(&mut self, exps: &[u16]) -> Element {
        if let Some(e) = self.cache.get(exps) {
            return e.clone();
        }
        let i = exps.iter().position(|&k| k > 0).expect("zero tuple is pre-seeded");
        let mut smaller = exps.to_vec();
        smaller[i] -= 1;
        let prev = self.monomial(&smaller);
        let result = prev.mul(&self.hsop[i]);
        self.cache.insert(exps.to_vec(), result.clone());
        result
    }

    /// All exponent tuples with total weighted degree `degree`.
    pub fn exponents_of_degree(&self, degree: u32) -> Vec<Vec<u16>> {
        let mut out = Vec::new();
        let mut acc = vec![0u16; self.degrees.len()];
        self.enumerate(degree, 0, &mut acc, &mut out);
        out
    }

    fn enumerate(&self, remaining: u32, pos: usize, acc: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if pos == self.degrees.len() {
            if remaining == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let e = self.degrees[pos];
        let max = remaining / e;
        for k in 0..=max {
            acc[pos] = k as u16;
            self.enumerate(remaining - k * e, pos + 1, acc, out);
        }
        acc[pos] = 0;
    }

    /// Span vectors (a-monomial * generator) at one bidegree, labeled by the
    /// exponent tuple and generator index.
    pub fn span_vectors(
        &mut self,
        gens: &[(String, Element)],
        bd: Bidegree,
        basis: &BasisIndex,
    ) -> Vec<(Vec<u16>, usize, Vec<u8>)> {
        let mut out = Vec::new();
        for (gi, (_, g)) in gens.iter().enumerate() {
            let Some(gbd) = g.bidegree() else { continue };
            if gbd.ydeg != bd.ydeg || gbd.xdeg > bd.xdeg {
                continue;
            }
            for exps in self.exponents_of_degree(bd.xdeg - gbd.xdeg) {
                let prod = self.monomial(&exps).mul(g);
                if prod.is_zero() {
                    continue;
                }
                let coords = basis
                    .coords(&prod)
                    .expect("a-multiple stays in the bidegree");
                out.push((exps, gi, coords));
            }
        }
        out
    }

    /// Dimension of the span sum_i A * g_i at each x-degree of a fixed
    /// y-degree row.
    pub fn span_dims(
        &mut self,
        gens: &[(String, Element)],
        ydeg: u32,
        xmax: u32,
    ) -> Vec<usize> {
        (0..=xmax)
            .map(|x| {
                let bd = Bidegree::new(x, ydeg);
                let basis = BasisIndex::new(bd, self.rank);
                let mut span = SpanBuilder::new(self.p, basis.dim());
                for (_, _, v) in self.span_vectors(gens, bd, &basis) {
                    span.insert(&v);
                }
                span.rank()
            })
            .collect()
    }
}

/// Outcome of a generation check: the span of A-multiples of the generators
/// against the full fixed space, degree by degree.
#[derive(Debug, Clone)]
pub struct GenerationCheck {
    pub ok: bool,
    /// On failure, the first bidegree where the span is proper, and an
    /// invariant outside the span.
    pub witness: Option<(Bidegree, Element)>,
}

/// True iff the A-span of the generators fills the fixed space at every
/// x-degree up to `xmax` for the given y-degree.
pub fn generation_check(
    gens: &[(String, Element)],
    aspan: &mut ASpan,
    table: &mut FixedSpaceTable,
    ydeg: u32,
    xmax: u32,
) -> GenerationCheck {
    let p = table.p();
    for x in 0..=xmax {
        let bd = Bidegree::new(x, ydeg);
        let basis = table.basis_index(bd).clone();
        let mut span = SpanBuilder::new(p, basis.dim());
        for (_, _, v) in aspan.span_vectors(gens, bd, &basis) {
            span.insert(&v);
        }
        let space = table.space(bd);
        if span.rank() != space.dim() {
            for (row, elem) in space.coords().iter().zip(&space.basis) {
                if !span.contains(row) {
                    return GenerationCheck { ok: false, witness: Some((bd, elem.clone())) };
                }
            }
            unreachable!("span dimension differs, so some basis vector escapes");
        }
    }
    GenerationCheck { ok: true, witness: None }
}

/// A labeled module generator.
#[derive(Debug, Clone)]
pub struct LabeledGenerator {
    pub label: String,
    pub bidegree: Bidegree,
    pub element: Element,
}

/// Labeled generator set for one fixed-space family, with its freeness
/// certificate: the numerator whose coefficients are the generator counts
/// per degree, checked against both the span dimensions and the fixed-space
/// dimensions up to `checked_to`.
#[derive(Debug, Clone)]
pub struct GeneratorReport {
    pub context: String,
    pub hsop_degrees: Vec<u32>,
    pub generators: Vec<LabeledGenerator>,
    pub numerator: IntPoly,
    pub checked_to: u32,
}

impl GeneratorReport {
    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.bidegree.xdeg).collect()
    }

    pub fn labeled(&self) -> Vec<(String, Element)> {
        self.generators.iter().map(|g| (g.label.clone(), g.element.clone())).collect()
    }
}

/// Discover module generators degree by degree: at each x-degree, append a
/// reduced-echelon basis of the complement of the current A-span inside the
/// fixed space. The resulting set passes `generation_check` by construction.
pub fn find_module_generators(
    aspan: &mut ASpan,
    table: &mut FixedSpaceTable,
    context: &str,
    ydeg: u32,
    xmax: u32,
) -> GeneratorReport {
    let p = table.p();
    let mut gens: Vec<(String, Element)> = Vec::new();
    let mut report_gens = Vec::new();
    let mut numerator = IntPoly::zero();
    for x in 0..=xmax {
        let bd = Bidegree::new(x, ydeg);
        let basis = table.basis_index(bd).clone();
        let mut span = SpanBuilder::new(p, basis.dim());
        for (_, _, v) in aspan.span_vectors(&gens, bd, &basis) {
            span.insert(&v);
        }
        let space = table.space(bd).clone();
        let mut new_at_degree = 0usize;
        for row in space.coords() {
            let residual = span.reduce(row);
            if residual.iter().all(|&c| c == 0) {
                continue;
            }
            span.insert(&residual);
            // normalize leading coefficient to 1 for the stored generator
            let lead = residual.iter().find(|&&c| c != 0).copied().unwrap();
            let inv = Fp::new(lead as i64, p).inv().expect("nonzero lead");
            let elem = basis.element(&residual, p).scale(inv);
            let label = format!("g{}_{}", x, new_at_degree);
            gens.push((label.clone(), elem.clone()));
            report_gens.push(LabeledGenerator { label, bidegree: bd, element: elem });
            new_at_degree += 1;
        }
        if new_at_degree > 0 {
            numerator = numerator.add(&IntPoly::monomial(new_at_degree as i64, x as usize));
        }
    }
    GeneratorReport {
        context: context.to_string(),
        hsop_degrees: aspan.degrees().to_vec(),
        generators: report_gens,
        numerator,
        checked_to: xmax,
    }
}

/// The three-way freeness identity for a generator set: series expansion of
/// numerator / prod(1 - t^{e_j}), A-span dimensions, and fixed-space
/// dimensions, all x-degrees up to `xmax`.
#[derive(Debug, Clone)]
pub struct FreenessTriangle {
    pub ok: bool,
    pub series_dims: Vec<i64>,
    pub span_dims: Vec<usize>,
    pub fixed_dims: Vec<usize>,
}

pub fn freeness_triangle(
    gens: &[(String, Element)],
    aspan: &mut ASpan,
    table: &mut FixedSpaceTable,
    ydeg: u32,
    xmax: u32,
) -> FreenessTriangle {
    let mut numerator = IntPoly::zero();
    for (_, g) in gens {
        let bd = g.bidegree().expect("generators are homogeneous");
        numerator = numerator.add(&IntPoly::monomial(1, bd.xdeg as usize));
    }
    let series = RationalSeries::over_hsop(numerator, aspan.degrees());
    let series_dims = series.expand(xmax as usize);
    let span_dims = aspan.span_dims(gens, ydeg, xmax);
    let fixed_dims: Vec<usize> =
        (0..=xmax).map(|x| table.dim(Bidegree::new(x, ydeg))).collect();
    let ok = series_dims.iter().zip(&span_dims).all(|(&s, &a)| s == a as i64)
        && span_dims == fixed_dims;
    FreenessTriangle { ok, series_dims, span_dims, fixed_dims }
}

/// The covariant transfer into the exterior summands: for a chi-relative
/// invariant f of the subgroup,
///
///   theta_1(f) = sum_j tau_j(f * y1),   theta_2(f) = sum_j tau_j(f * y2 y3)
///
/// summed over a left transversal tau_j of the subgroup. The seeds y1 and
/// y2 y3 carry exactly the character chi under the subgroup, which makes
/// each summand subgroup-invariant and the total sum invariant under the
/// full group.
pub fn theta(
    f: &Element,
    wedge: u32,
    gaction: &GroupAction,
    transversal_elems: &[usize],
    hgroup: &MatrixGroup,
    haction: &GroupAction,
    chi: &LinearCharacter,
) -> Result<Element, StructureError> {
    let p = f.p();
    let rank = f.rank();
    for &h in &hgroup.generator_indices() {
        if haction.act(h, f) != f.scale(chi.value(h)) {
            return Err(StructureError::NotRelativeInvariant);
        }
    }
    let seed = match wedge {
        1 => Element::generator(p, rank, 1, true),
        2 => Element::generator(p, rank, 2, true).mul(&Element::generator(p, rank, 3, true)),
        _ => panic!("theta is defined for exterior degrees 1 and 2"),
    };
    let fw = f.mul(&seed);
    let mut sum = Element::zero(p, rank);
    for &tau in transversal_elems {
        sum = sum.add(&gaction.act(tau, &fw));
    }
    Ok(sum)
}

/// Degreewise bijectivity of theta: for every x-degree up to `xmax` and both
/// exterior degrees, the images of a relative fixed-space basis must land in
/// the invariants of the exterior summand, be independent, and fill it.
#[derive(Debug, Clone)]
pub struct ThetaIsoCheck {
    pub ok: bool,
    pub failures: Vec<Bidegree>,
}

#[allow(clippy::too_many_arguments)]
pub fn theta_iso_check(
    rel_table: &mut FixedSpaceTable,
    g_table: &mut FixedSpaceTable,
    gaction: &GroupAction,
    transversal_elems: &[usize],
    hgroup: &MatrixGroup,
    haction: &GroupAction,
    chi: &LinearCharacter,
    xmax: u32,
) -> ThetaIsoCheck {
    let p = rel_table.p();
    let mut failures = Vec::new();
    for wedge in [1u32, 2] {
        for x in 0..=xmax {
            let source = rel_table.space(Bidegree::new(x, 0)).clone();
            let target_bd = Bidegree::new(x, wedge);
            let target = g_table.space(target_bd).clone();
            let basis = g_table.basis_index(target_bd).clone();
            let mut ok = source.dim() == target.dim();
            if ok {
                let mut image_span = SpanBuilder::new(p, basis.dim());
                for fsrc in &source.basis {
                    let img = match theta(
                        fsrc,
                        wedge,
                        gaction,
                        transversal_elems,
                        hgroup,
                        haction,
                        chi,
                    ) {
                        Ok(img) => img,
                        Err(_) => {
                            ok = false;
                            break;
                        }
                    };
                    let Some(coords) = basis.coords(&img) else {
                        ok = false;
                        break;
                    };
                    if !target.contains_coords(&coords, p) || !image_span.insert(&coords) {
                        // image escapes the invariants or is dependent
                        ok = false;
                        break;
                    }
                }
                if ok && image_span.rank() != target.dim() {
                    ok = false;
                }
            }
            if !ok {
                failures.push(target_bd);
            }
        }
    }
    ThetaIsoCheck { ok: failures.is_empty(), failures }
}

/// One term of an A-linear combination: coeff * a-monomial * generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTerm {
    pub coeff: Fp,
    pub a_exponents: Vec<u16>,
    pub generator: String,
}

/// An extracted relation: `label` (the product) equals the recorded A-linear
/// combination of module generators, with zero residual by construction.
#[derive(Debug, Clone)]
pub struct RelationRecord {
    pub label: String,
    pub bidegree: Bidegree,
    pub terms: Vec<RelationTerm>,
}

impl RelationRecord {
    /// Re-evaluate the right-hand side.
    pub fn rhs(&self, aspan: &mut ASpan, gens: &[(String, Element)]) -> Element {
        let p = gens[0].1.p();
        let rank = gens[0].1.rank();
        let mut sum = Element::zero(p, rank);
        for term in &self.terms {
            let gen = &gens
                .iter()
                .find(|(n, _)| n == &term.generator)
                .expect("generator label exists")
                .1;
            let amon = aspan.monomial(&term.a_exponents);
            sum = sum.add(&amon.mul(gen).scale(term.coeff));
        }
        sum
    }

    /// Human-readable form like "2*a1*d1 + d3".
    pub fn format_rhs(&self, a_names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut factors = Vec::new();
                if t.coeff.value() != 1 {
                    factors.push(t.coeff.value().to_string());
                }
                for (i, &k) in t.a_exponents.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => factors.push(a_names[i].to_string()),
                        _ => factors.push(format!("{}^{}", a_names[i], k)),
                    }
                }
                factors.push(t.generator.clone());
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }
}

/// Express a homogeneous element as an A-linear combination of the given
/// module generators. The span vectors are required to be linearly
/// independent (true over a free module), which makes the coefficients
/// unique; an element outside the span is an explicit error.
pub fn relation_extract(
    label: &str,
    p_elem: &Element,
    gens: &[(String, Element)],
    aspan: &mut ASpan,
) -> Result<RelationRecord, StructureError> {
    let bd = p_elem.bidegree().ok_or(StructureError::NotHomogeneous)?;
    let basis = BasisIndex::new(bd, p_elem.rank());
    let vectors = aspan.span_vectors(gens, bd, &basis);
    let coords: Vec<Vec<u8>> = vectors.iter().map(|(_, _, v)| v.clone()).collect();
    let target = basis.coords(p_elem).expect("homogeneous element of the bidegree");
    let solution = solve_combination(p_elem.p(), &coords, &target, true)
        .ok_or(StructureError::NotInSpan(bd))?;
    let p = p_elem.p();
    let terms = vectors
        .iter()
        .zip(&solution)
        .filter(|(_, &c)| c != 0)
        .map(|((exps, gi, _), &c)| RelationTerm {
            coeff: Fp::new(c as i64, p),
            a_exponents: exps.clone(),
            generator: gens[*gi].0.clone(),
        })
        .collect();
    Ok(RelationRecord { label: label.to_string(), bidegree: bd, terms })
}

/// Minimal algebra generators: per bidegree, the dimension of the fixed
/// space modulo the span of products of lower positive-degree invariants.
/// Representatives are a reduced-echelon basis of the complement. Constants
/// are excluded (positive-degree convention).
#[derive(Debug, Clone)]
pub struct MinimalGenerators {
    pub counts: BTreeMap<(u32, u32), usize>,
    pub representatives: Vec<LabeledGenerator>,
    pub total: usize,
}

pub fn minimal_algebra_generators(table: &mut FixedSpaceTable, xmax: u32) -> MinimalGenerators {
    let p = table.p();
    let rank = table.rank() as u32;
    let mut counts = BTreeMap::new();
    let mut representatives = Vec::new();
    let mut total = 0usize;
    for x in 0..=xmax {
        for y in 0..=rank {
            let bd = Bidegree::new(x, y);
            if bd.topdeg() == 0 {
                continue;
            }
            let dim = table.dim(bd);
            if dim == 0 {
                continue;
            }
            let mut span = product_span(table, bd, &[]);
            let space = table.space(bd).clone();
            let basis = table.basis_index(bd).clone();
            let mut new_count = 0usize;
            for row in space.coords() {
                let residual = span.reduce(row);
                if residual.iter().all(|&c| c == 0) {
                    continue;
                }
                span.insert(&residual);
                let lead = residual.iter().find(|&&c| c != 0).copied().unwrap();
                let inv = Fp::new(lead as i64, p).inv().expect("nonzero lead");
                representatives.push(LabeledGenerator {
                    label: format!("m{}_{}_{}", x, y, new_count),
                    bidegree: bd,
                    element: basis.element(&residual, p).scale(inv),
                });
                new_count += 1;
            }
            if new_count > 0 {
                counts.insert((x, y), new_count);
                total += new_count;
            }
        }
    }
    MinimalGenerators { counts, representatives, total }
}

/// Dimension of the complement of the product span at one bidegree, with
/// extra elements adjoined to the products first. Exposes the
/// decomposability question directly: adjoining an element that spans the
/// complement drives the count to zero.
pub fn indecomposables_at(table: &mut FixedSpaceTable, bd: Bidegree, extra: &[Element]) -> usize {
    let span = product_span(table, bd, extra);
    table.dim(bd) - span.rank()
}

/// Check that named elements represent the minimal-generator complements:
/// at each bidegree, the named elements at that bidegree must be invariants,
/// independent modulo the product span, and together with the products span
/// the whole fixed space.
pub fn named_generators_span_complements(
    table: &mut FixedSpaceTable,
    minimal: &MinimalGenerators,
    named: &[(String, Element)],
) -> bool {
    let p = table.p();
    let mut by_bd: BTreeMap<(u32, u32), Vec<&Element>> = BTreeMap::new();
    for (_, e) in named {
        let Some(bd) = e.bidegree() else { return false };
        by_bd.entry((bd.xdeg, bd.ydeg)).or_default().push(e);
    }
    // the named multiset must hit exactly the computed profile
    let profile: BTreeMap<(u32, u32), usize> =
        by_bd.iter().map(|(&k, v)| (k, v.len())).collect();
    if profile != minimal.counts {
        return false;
    }
    for (&(x, y), elems) in &by_bd {
        let bd = Bidegree::new(x, y);
        let mut span = product_span(table, bd, &[]);
        let base_rank = span.rank();
        let basis = table.basis_index(bd).clone();
        let space = table.space(bd).clone();
        for e in elems {
            let Some(coords) = basis.coords(e) else { return false };
            if !space.contains_coords(&coords, p) {
                return false;
            }
            if !span.insert(&coords) {
                return false; // dependent on products or earlier named elements
            }
        }
        if span.rank() != base_rank + elems.len() || span.rank() != space.dim() {
            return false;
        }
    }
    true
}

/// All products of powers of the given generators landing at one bidegree:
/// the degreewise piece of the subalgebra they generate. Used to certify
/// that a claimed generator is decomposable over the others.
pub fn algebra_span_contains(
    table: &mut FixedSpaceTable,
    gens: &[(String, Element)],
    target: &Element,
) -> bool {
    let Some(bd) = target.bidegree() else { return false };
    let basis = table.basis_index(bd).clone();
    let p = table.p();
    let mut span = SpanBuilder::new(p, basis.dim());
    let mut current = vec![Element::one(p, basis.rank)];
    // breadth-first products: multiply by generators until the bidegree is
    // exceeded; collect everything matching the target bidegree
    let mut seen: Vec<Element> = current.clone();
    while !current.is_empty() {
        let mut next = Vec::new();
        for base in &current {
            for (_, g) in gens {
                let prod = base.mul(g);
                if prod.is_zero() {
                    continue;
                }
                let pbd = prod.bidegree().expect("products of homogeneous are homogeneous");
                if pbd.xdeg > bd.xdeg || pbd.ydeg > bd.ydeg {
                    continue;
                }
                if seen.contains(&prod) {
                    continue;
                }
                seen.push(prod.clone());
                if pbd == bd {
                    if let Some(coords) = basis.coords(&prod) {
                        span.insert(&coords);
                    }
                }
                next.push(prod);
            }
        }
        current = next;
    }
    let target_coords = basis.coords(target).expect("target is homogeneous");
    span.contains(&target_coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, Fixture};
    use crate::forms::parse;
    use crate::invariant::FixedSpaceTable;

    const P: u32 = 3;

    fn el(s: &str) -> Element {
        parse(s, P, 3).unwrap()
    }

    #[test]
    fn hsop_checks() {
        assert!(hsop_check(&fixtures::hsop_a()).unwrap());
        assert!(hsop_check(&fixtures::hsop_squares()).unwrap());
        // third element inside the ideal of the first two: common zeros
        // beyond the origin remain
        let bad = vec![fixtures::a1(), fixtures::a2(), fixtures::a1().mul(&fixtures::a2())];
        assert!(!hsop_check(&bad).unwrap());
        // wrong count
        assert!(matches!(
            hsop_check(&[fixtures::a1(), fixtures::a2()]),
            Err(StructureError::WrongParameterCount { expected: 3, got: 2 })
        ));
    }

    fn g_table(fx: &Fixture) -> FixedSpaceTable {
        FixedSpaceTable::new(&fx.g, &fx.rep_g, None)
    }

    fn rel_table(fx: &Fixture) -> FixedSpaceTable {
        FixedSpaceTable::new(&fx.h, &fx.rep_h, Some(&fx.chi))
    }

    #[test]
    fn a_span_dims_for_the_secondary_invariants() {
        let fx = Fixture::new().unwrap();
        let mut table = g_table(&fx);
        let mut aspan = ASpan::new(&fixtures::hsop_a());
        let gens = vec![
            ("one".to_string(), Element::one(P, 3)),
            ("b".to_string(), fixtures::b()),
        ];
        assert_eq!(aspan.span_dims(&gens, 0, 6), vec![1, 0, 1, 1, 2, 1, 4]);
        // matches the fixed-space dimensions
        assert_eq!(table.dims_row(0, 6), vec![1, 0, 1, 1, 2, 1, 4]);
        // empty generator set spans nothing
        assert_eq!(aspan.span_dims(&[], 0, 4), vec![0; 5]);
    }

    #[test]
    fn a_span_dims_for_the_relative_generators() {
        let mut aspan = ASpan::new(&fixtures::hsop_a());
        let gens = fixtures::relative_generators();
        assert_eq!(aspan.span_dims(&gens, 0, 5), vec![0, 1, 1, 3, 3, 6]);
    }

    #[test]
    fn generation_check_passes_for_the_paper_generators() {
        let fx = Fixture::new().unwrap();
        let mut table = rel_table(&fx);
        let mut aspan = ASpan::new(&fixtures::hsop_a());
        let gens = fixtures::relative_generators();
        let check = generation_check(&gens, &mut aspan, &mut table, 0, 12);
        assert!(check.ok);
    }

    #[test]
    fn generation_check_fails_with_witness_when_a_generator_is_dropped() {
        let fx = Fixture::new().unwrap();
        let all = fixtures::relative_generators();
        for drop_idx in 0..all.len() {
            let mut gens = all.clone();
            let (dropped_name, dropped) = gens.remove(drop_idx);
            let expected_degree = dropped.bidegree().unwrap().xdeg;
            let mut table = rel_table(&fx);
            let mut aspan = ASpan::new(&fixtures::hsop_a());
            let check = generation_check(&gens, &mut aspan, &mut table, 0, 12);
            assert!(!check.ok, "dropping {dropped_name} must fail");
            let (bd, witness) = check.witness.unwrap();
            assert_eq!(bd.xdeg, expected_degree, "witness degree for {dropped_name}");
            // the witness is a genuine relative invariant outside the span
            let basis = table.basis_index(bd).clone();
            let coords = basis.coords(&witness).unwrap();
            assert!(table.space(bd).contains_coords(&coords, P));
        }
    }

    #[test]
    fn secondary_invariants_found_in_degrees_zero_and_six() {
        let fx = Fixture::new().unwrap();
        let mut table = g_table(&fx);
        let mut aspan = ASpan::new(&fixtures::hsop_a());
        let report = find_module_generators(&mut aspan, &mut table, "S^G", 0, 10);
        assert_eq!(report.degrees(), vec![0, 6]);
        assert_eq!(report.numerator, IntPoly::new(vec![1, 0, 0, 0, 0, 0, 1]));
        // the degree-6 complement is spanned by b: adjoining b to the
        // degree-6 A-span of {1} gives the same span as adjoining the
        // computed generator
        let bd = Bidegree::new(6, 0);
        let basis = table.basis_index(bd).clone();
        let one_gen = vec![("one".to_string(), Element::one(P, 3))];
        let mut base = SpanBuilder::new(P, basis.dim());
        for (_, _, v) in aspan.span_vectors(&one_gen, bd, &basis) {
            base.insert(&v);
        }
        let mut with_b = base.clone();
        assert!(with_b.insert(&basis.coords(&fixtures::b()).unwrap()));
        let mut with_computed = base.clone();
        assert!(with_computed
            .insert(&basis.coords(&report.generators[1].element).unwrap()));
        assert_eq!(with_b.basis(), with_computed.basis());
    }

    #[test]
    fn relative_generators_found_in_the_expected_degrees() {
        let fx = Fixture::new().unwrap();
        let mut table = rel_table(&fx);
        let mut aspan = ASpan::new(&fixtures::hsop_a());
        let report = find_module_generators(&mut aspan, &mut table, "S^H_chi", 0, 8);
        assert_eq!(report.degrees(), vec![1, 2, 3, 3, 4, 5]);
        // the named monomial set generates the same module
        let check =
            generation_check(&fixtures::relative_generators(), &mut aspan, &mut table, 0, 8);
        assert!(check.ok);
    }

    #[test]
    fn empty_family_yields_no_generators() {
        let fx = Fixture::new().unwrap();
        // chi-relative invariants at exterior degree 3 vanish in low degrees:
        // the seed y1y2y3 is G-invariant, so the chi-twist empties it
        let mut table = rel_table(&fx);
        let mut aspan = ASpan::new(&fixtures::hsop_a());
        let report = find_module_generators(&mut aspan, &mut table, "empty", 3, 0);
        assert!(report.generators.is_empty());
        assert!(report.numerator.is_zero());
    }

    #[test]
    fn freeness_triangle_for_all_exterior_summands() {
        let fx = Fixture::new().unwrap();
        let mut aspan = ASpan::new(&fixtures::hsop_a());
        let mut table = g_table(&fx);
        let one = Element::one(P, 3);
        let lambda0 = vec![("1".to_string(), one.clone()), ("b".to_string(), fixtures::b())];
        let tri0 = freeness_triangle(&lambda0, &mut aspan, &mut table, 0, 10);
        assert!(tri0.ok, "{:?}", tri0);
        let yyy = fixtures::yyy();
        let lambda3 = vec![
            ("y1y2y3".to_string(), yyy.clone()),
            ("b*y1y2y3".to_string(), fixtures::b().mul(&yyy)),
        ];
        let tri3 = freeness_triangle(&lambda3, &mut aspan, &mut table, 3, 10);
        assert!(tri3.ok, "{:?}", tri3);
        let lambda1 = fixtures::c_elements();
        let tri1 = freeness_triangle(&lambda1, &mut aspan, &mut table, 1, 10);
        assert!(tri1.ok, "{:?}", tri1);
        let lambda2 = fixtures::d_elements();
        let tri2 = freeness_triangle(&lambda2, &mut aspan, &mut table, 2, 10);
        assert!(tri2.ok, "{:?}", tri2);
    }

    fn theta_args(fx: &Fixture) -> (GroupAction, Vec<usize>, GroupAction) {
        let gaction = GroupAction::new(&fx.rep_g);
        let haction = GroupAction::new(&fx.rep_h);
        (gaction, fx.transversal.reps.clone(), haction)
    }

    #[test]
    fn theta_images_match_the_named_covariants() {
        let fx = Fixture::new().unwrap();
        let (gaction, trans, haction) = theta_args(&fx);
        let cs = fixtures::c_elements();
        let ds = fixtures::d_elements();
        for (i, (_, gen)) in fixtures::relative_generators().iter().enumerate() {
            let c = theta(gen, 1, &gaction, &trans, &fx.h, &haction, &fx.chi).unwrap();
            assert_eq!(c, cs[i].1, "theta_1 of generator {i}");
            let d = theta(gen, 2, &gaction, &trans, &fx.h, &haction, &fx.chi).unwrap();
            assert_eq!(d, ds[i].1, "theta_2 of generator {i}");
        }
    }

    #[test]
    fn theta_rejects_non_relative_invariants() {
        let fx = Fixture::new().unwrap();
        let (gaction, trans, haction) = theta_args(&fx);
        assert!(matches!(
            theta(&el("x2"), 1, &gaction, &trans, &fx.h, &haction, &fx.chi),
            Err(StructureError::NotRelativeInvariant)
        ));
    }

    #[test]
    fn theta_is_a_linear_over_the_hsop() {
        let fx = Fixture::new().unwrap();
        let (gaction, trans, haction) = theta_args(&fx);
        let mut aspan = ASpan::new(&fixtures::hsop_a());
        for exps in [vec![1u16, 0, 0], vec![0, 1, 0], vec![1, 1, 0]] {
            let a = aspan.monomial(&exps);
            for (_, f) in fixtures::relative_generators().iter().take(3) {
                let lhs =
                    theta(&a.mul(f), 1, &gaction, &trans, &fx.h, &haction, &fx.chi).unwrap();
                let rhs =
                    a.mul(&theta(f, 1, &gaction, &trans, &fx.h, &haction, &fx.chi).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn theta_iso_check_holds_to_degree_eight() {
        let fx = Fixture::new().unwrap();
        let (gaction, trans, haction) = theta_args(&fx);
        let mut rel = rel_table(&fx);
        let mut g = g_table(&fx);
        let check = theta_iso_check(
            &mut rel, &mut g, &gaction, &trans, &fx.h, &haction, &fx.chi, 8,
        );
        assert!(check.ok, "failures: {:?}", check.failures);
    }

    #[test]
    fn theta_iso_check_fails_on_a_non_transversal() {
        let fx = Fixture::new().unwrap();
        let (gaction, trans, haction) = theta_args(&fx);
        let bogus = vec![trans[0], trans[1], trans[1]];
        let mut rel = rel_table(&fx);
        let mut g = g_table(&fx);
        let check = theta_iso_check(
            &mut rel, &mut g, &gaction, &bogus, &fx.h, &haction, &fx.chi, 3,
        );
        assert!(!check.ok);
    }

    #[test]
    fn relation_records_match_the_expected_relations() {
        let mut aspan = ASpan::new(&fixtures::hsop_a());
        let ds = fixtures::d_elements();
        let cs = fixtures::c_elements();
        let c = |i: usize| cs[i - 1].1.clone();
        // c1 c2 = -d4 - a1 d1 + d3
        let rec =
            relation_extract("c1*c2", &c(1).mul(&c(2)), &ds, &mut aspan).unwrap();
        let expect = ds[3].1.neg().sub(&fixtures::a1().mul(&ds[0].1)).add(&ds[2].1);
        assert_eq!(rec.rhs(&mut aspan, &ds), expect);
        assert_eq!(rec.rhs(&mut aspan, &ds), c(1).mul(&c(2)));
        // c1 c3 = a1 d2 + d5 - a2 d1
        let rec2 = relation_extract("c1*c3", &c(1).mul(&c(3)), &ds, &mut aspan).unwrap();
        let expect2 = fixtures::a1()
            .mul(&ds[1].1)
            .add(&ds[4].1)
            .sub(&fixtures::a2().mul(&ds[0].1));
        assert_eq!(rec2.rhs(&mut aspan, &ds), expect2);
        // c2 c3 = -d6 + a1 d4 - a1 d3 + a2 d2 - a3 d1 - a1^2 d1
        let rec3 = relation_extract("c2*c3", &c(2).mul(&c(3)), &ds, &mut aspan).unwrap();
        let expect3 = ds[5]
            .1
            .neg()
            .add(&fixtures::a1().mul(&ds[3].1))
            .sub(&fixtures::a1().mul(&ds[2].1))
            .add(&fixtures::a2().mul(&ds[1].1))
            .sub(&fixtures::a3().mul(&ds[0].1))
            .sub(&fixtures::a1().mul(&fixtures::a1()).mul(&ds[0].1));
        assert_eq!(rec3.rhs(&mut aspan, &ds), expect3);
        assert_eq!(rec3.rhs(&mut aspan, &ds), c(2).mul(&c(3)));
    }

    #[test]
    fn relation_extract_rejects_elements_outside_the_span() {
        let mut aspan = ASpan::new(&fixtures::hsop_a());
        let ds = fixtures::d_elements();
        // d-module at exterior degree 2 does not contain c1
        let cs = fixtures::c_elements();
        assert!(matches!(
            relation_extract("c1", &cs[0].1, &ds[..2], &mut aspan),
            Err(StructureError::NotInSpan(_))
        ));
    }

    #[test]
    fn c1_squared_is_zero() {
        let cs = fixtures::c_elements();
        assert!(cs[0].1.mul(&cs[0].1).is_zero());
    }

    #[test]
    fn minimal_generator_profile_to_degree_eight() {
        let fx = Fixture::new().unwrap();
        let mut table = g_table(&fx);
        let minimal = minimal_algebra_generators(&mut table, 8);
        let expected: BTreeMap<(u32, u32), usize> = [
            ((2, 0), 1),
            ((3, 0), 1),
            ((4, 0), 1),
            ((6, 0), 1),
            ((1, 1), 1),
            ((2, 1), 1),
            ((3, 1), 2),
            ((4, 1), 1),
            ((5, 1), 1),
            ((1, 2), 1),
            ((2, 2), 1),
            ((3, 2), 1),
            ((0, 3), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(minimal.counts, expected);
        assert_eq!(minimal.total, 14);
        // the named elements represent the complements
        assert!(named_generators_span_complements(
            &mut table,
            &minimal,
            &fixtures::minimal_generator_names()
        ));
    }

    #[test]
    fn adjoining_d1_makes_its_bidegree_decomposable() {
        let fx = Fixture::new().unwrap();
        let mut table = g_table(&fx);
        let ds = fixtures::d_elements();
        let bd = Bidegree::new(1, 2);
        assert_eq!(indecomposables_at(&mut table, bd, &[]), 1);
        assert_eq!(indecomposables_at(&mut table, bd, &[ds[0].1.clone()]), 0);
    }

    #[test]
    fn d4_d5_d6_are_decomposable_over_the_minimal_set() {
        let fx = Fixture::new().unwrap();
        let mut table = g_table(&fx);
        let named = fixtures::minimal_generator_names();
        let ds = fixtures::d_elements();
        for (name, d) in ds.iter().skip(3) {
            assert!(
                algebra_span_contains(&mut table, &named, d),
                "{name} must decompose over the minimal generators"
            );
        }
    }

    #[test]
    fn minimal_generators_are_not_decomposable_over_the_others() {
        let fx = Fixture::new().unwrap();
        let mut table = g_table(&fx);
        let named = fixtures::minimal_generator_names();
        for skip in 0..named.len() {
            let others: Vec<(String, Element)> = named
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, p)| p.clone())
                .collect();
            assert!(
                !algebra_span_contains(&mut table, &others, &named[skip].1),
                "{} must be indecomposable",
                named[skip].0
            );
        }
    }
}
