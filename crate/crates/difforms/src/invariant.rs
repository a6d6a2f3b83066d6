//! Fixed spaces, relative invariants, and Reynolds averaging.
//!
//! The workhorse is the nullspace path: the chi-relative fixed space at a
//! bidegree is the joint kernel of (M_g - chi(g) I) over the generators,
//! where M_g is the action matrix on the bidegree coordinates. That path is
//! sound in every characteristic, which matters here because the full group
//! order is divisible by p. Averaging is only offered where it is legal.

use crate::field::Fp;
use crate::forms::{BasisIndex, Bidegree, Element};
use crate::group::{GroupAction, LinearCharacter, MatrixGroup, Representation};
use crate::linalg::{FpMatrix, SpanBuilder};
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantError {
    /// Averaging over a group whose image order is divisible by p.
    ModularGroupOrder { order: usize, p: u32 },
    /// The character does not descend to the acting image group.
    CharacterDoesNotDescend,
}

impl fmt::Display for InvariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantError::ModularGroupOrder { order, p } => {
                write!(f, "group image order {order} is divisible by the characteristic {p}; averaging is unsound, use the nullspace path")
            }
            InvariantError::CharacterDoesNotDescend => {
                write!(f, "character is not constant on the kernel of the action")
            }
        }
    }
}

impl std::error::Error for InvariantError {}

/// Which elements to stack when building the fixed-space system. The result
/// is independent of the choice; `Generators` is the cheap default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StackMode {
    Generators,
    AllElements,
}

/// An echelonized basis of a (relative) fixed space at one bidegree.
/// Rows are in canonical reduced echelon form over the bidegree coordinates,
/// so the basis depends only on the space.
#[derive(Debug, Clone)]
pub struct FixedSpace {
    pub bidegree: Bidegree,
    pub basis: Vec<Element>,
    coords: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl FixedSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self) -> &[Vec<u8>] {
        &self.coords
    }

    /// Reduce a coordinate vector against the basis; zero residual means
    /// membership.
    pub fn reduce(&self, v: &[u8], p: u32) -> Vec<u8> {
        let mut w = v.to_vec();
        for (row, &pc) in self.coords.iter().zip(&self.pivots) {
            let c = w[pc] as u32;
            if c != 0 {
                for (wj, &rj) in w.iter_mut().zip(row) {
                    let sub = (c * rj as u32) % p;
                    *wj = ((*wj as u32 + p - sub) % p) as u8;
                }
            }
        }
        w
    }

    pub fn contains_coords(&self, v: &[u8], p: u32) -> bool {
        self.reduce(v, p).iter().all(|&c| c == 0)
    }
}

/// Per-(group, representation, character) computation context with caches
/// for bidegree bases, action matrices, and computed fixed spaces. All the
/// heavy lifting in the crate funnels through here so that a pipeline run
/// solves each nullspace exactly once.
pub struct FixedSpaceTable {
    group: MatrixGroup,
    action: GroupAction,
    character: LinearCharacter,
    stack: StackMode,
    bases: HashMap<Bidegree, BasisIndex>,
    spaces: HashMap<Bidegree, FixedSpace>,
}

impl FixedSpaceTable {
    pub fn new(
        group: &MatrixGroup,
        rep: &Representation,
        character: Option<&LinearCharacter>,
    ) -> FixedSpaceTable {
        let character =
            character.cloned().unwrap_or_else(|| LinearCharacter::trivial(group));
        FixedSpaceTable {
            group: group.clone(),
            action: GroupAction::new(rep),
            character,
            stack: StackMode::Generators,
            bases: HashMap::new(),
            spaces: HashMap::new(),
        }
    }

    pub fn with_stack_mode(mut self, stack: StackMode) -> FixedSpaceTable {
        self.stack = stack;
        self
    }

    pub fn p(&self) -> u32 {
        self.group.p()
    }

    pub fn rank(&self) -> usize {
        self.action.rank()
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn character(&self) -> &LinearCharacter {
        &self.character
    }

    pub fn basis_index(&mut self, bd: Bidegree) -> &BasisIndex {
        let rank = self.rank();
        self.bases.entry(bd).or_insert_with(|| BasisIndex::new(bd, rank))
    }

    /// Matrix of act(g, -) on the bidegree coordinates.
    pub fn action_matrix(&mut self, elem: usize, bd: Bidegree) -> FpMatrix {
        let p = self.p();
        let basis = self.basis_index(bd).clone();
        let n = basis.dim();
        let mut m = FpMatrix::zeros(p, n, n);
        for (j, mono) in basis.monomials.iter().enumerate() {
            let e = Element::from_terms(
                p,
                basis.rank,
                vec![(mono.clone(), Fp::one(p))],
            );
            let img = self.action.act(elem, &e);
            let coords = basis
                .coords(&img)
                .expect("the action preserves the bidegree");
            for (i, &c) in coords.iter().enumerate() {
                if c != 0 {
                    m.set(i, j, c);
                }
            }
        }
        m
    }

    /// The chi-relative fixed space at a bidegree (cached).
    pub fn space(&mut self, bd: Bidegree) -> &FixedSpace {
        if !self.spaces.contains_key(&bd) {
            let space = self.compute_space(bd);
            self.spaces.insert(bd, space);
        }
        &self.spaces[&bd]
    }

    pub fn dim(&mut self, bd: Bidegree) -> usize {
        self.space(bd).dim()
    }

    fn compute_space(&mut self, bd: Bidegree) -> FixedSpace {
        let p = self.p();
        let basis = self.basis_index(bd).clone();
        let n = basis.dim();
        if n == 0 {
            return FixedSpace { bidegree: bd, basis: Vec::new(), coords: Vec::new(), pivots: Vec::new() };
        }
        let elems: Vec<usize> = match self.stack {
            StackMode::Generators => self.group.generator_indices(),
            StackMode::AllElements => (0..self.group.order()).collect(),
        };
        // stacked system: rows of (M_g - chi(g) I) for each g
        let mut stacked = FpMatrix::zeros(p, n * elems.len(), n);
        for (block, &g) in elems.iter().enumerate() {
            let mg = self.action_matrix(g, bd);
            let chi = self.character.value(g).value();
            for i in 0..n {
                for j in 0..n {
                    let mut v = mg.get(i, j) as i64;
                    if i == j {
                        v -= chi as i64;
                    }
                    stacked.set_i64(block * n + i, j, v);
                }
            }
        }
        let null = stacked.nullspace();
        let basis_elems =
            null.iter().map(|v| basis.element(v, p)).collect();
        let pivots = null
            .iter()
            .map(|v| v.iter().position(|&c| c != 0).expect("nonzero basis row"))
            .collect();
        FixedSpace { bidegree: bd, basis: basis_elems, coords: null, pivots }
    }

    /// Dimensions for xdeg = 0..=xmax at one ydeg.
    pub fn dims_row(&mut self, ydeg: u32, xmax: u32) -> Vec<usize> {
        (0..=xmax).map(|x| self.dim(Bidegree::new(x, ydeg))).collect()
    }
}

/// One-shot fixed-space computation.
pub fn fixed_space(
    group: &MatrixGroup,
    rep: &Representation,
    character: Option<&LinearCharacter>,
    bd: Bidegree,
) -> FixedSpace {
    let mut table = FixedSpaceTable::new(group, rep, character);
    table.space(bd).clone()
}

/// Same, stacking every group element instead of just the generators.
pub fn fixed_space_full_stack(
    group: &MatrixGroup,
    rep: &Representation,
    character: Option<&LinearCharacter>,
    bd: Bidegree,
) -> FixedSpace {
    let mut table =
        FixedSpaceTable::new(group, rep, character).with_stack_mode(StackMode::AllElements);
    table.space(bd).clone()
}

/// Full dimension table: `dims[ydeg][xdeg]` for ydeg = 0..=rank, xdeg = 0..=xmax.
pub fn dimension_table(
    group: &MatrixGroup,
    rep: &Representation,
    character: Option<&LinearCharacter>,
    xmax: u32,
) -> Vec<Vec<usize>> {
    let mut table = FixedSpaceTable::new(group, rep, character);
    let rank = table.rank() as u32;
    (0..=rank).map(|y| table.dims_row(y, xmax)).collect()
}

/// The Reynolds projector onto the chi-relative fixed space:
/// (1/|image|) sum over the image group of chi(g)^{-1} act(g, f).
///
/// Averaging runs over the image of the representation (the group that
/// actually acts), so it is legal exactly when that image has order coprime
/// to p; anything else is rejected. The character must be constant on the
/// fibers of the image map.
pub fn reynolds(
    group: &MatrixGroup,
    rep: &Representation,
    character: Option<&LinearCharacter>,
    f: &Element,
) -> Result<Element, InvariantError> {
    let p = group.p();
    let character =
        character.cloned().unwrap_or_else(|| LinearCharacter::trivial(group));
    // group elements by distinct image
    let mut by_image: Vec<(FpMatrix, usize)> = Vec::new();
    for idx in 0..group.order() {
        let img = rep.image(idx);
        match by_image.iter().position(|(m, _)| m == img) {
            Some(pos) => {
                let rep_idx = by_image[pos].1;
                if character.value(rep_idx) != character.value(idx) {
                    return Err(InvariantError::CharacterDoesNotDescend);
                }
            }
            None => by_image.push((img.clone(), idx)),
        }
    }
    let image_order = by_image.len();
    if image_order.is_multiple_of(p as usize) {
        return Err(InvariantError::ModularGroupOrder { order: image_order, p });
    }
    let action = GroupAction::new(rep);
    let mut sum = Element::zero(p, f.rank());
    for &(_, idx) in &by_image {
        let chi_inv = character.value(idx).inv().expect("character values are units");
        sum = sum.add(&action.act(idx, f).scale(chi_inv));
    }
    let scale = Fp::new(image_order as i64, p).inv().expect("image order is a unit");
    Ok(sum.scale(scale))
}

/// Product-span rank at a bidegree: the dimension of the span of all
/// products u*v with u, v running over fixed-space bases at complementary
/// positive bidegrees, plus any extra seed elements. Generation stops as
/// soon as the span fills the fixed space. Used for minimal-generator
/// counting.
pub fn product_span(
    table: &mut FixedSpaceTable,
    bd: Bidegree,
    extra: &[Element],
) -> SpanBuilder {
    let p = table.p();
    let basis = table.basis_index(bd).clone();
    let full_dim = table.dim(bd);
    let mut span = SpanBuilder::new(p, basis.dim());
    for e in extra {
        if let Some(v) = basis.coords(e) {
            span.insert(&v);
        }
    }
    // splits (x1,y1) + (x2,y2) = bd, both of positive topological degree;
    // symmetric, so only visit each unordered pair once
    'outer: for x1 in 0..=bd.xdeg {
        for y1 in 0..=bd.ydeg {
            let b1 = Bidegree::new(x1, y1);
            let b2 = Bidegree::new(bd.xdeg - x1, bd.ydeg - y1);
            if b1.topdeg() == 0 || b2.topdeg() == 0 || b1.topdeg() > b2.topdeg() {
                continue;
            }
            if span.rank() == full_dim {
                break 'outer;
            }
            let left = table.space(b1).basis.clone();
            let right = table.space(b2).basis.clone();
            for u in &left {
                for v in &right {
                    let prod = u.mul(v);
                    if prod.is_zero() {
                        continue;
                    }
                    let coords = basis.coords(&prod).expect("product stays in the bidegree");
                    span.insert(&coords);
                    if span.rank() == full_dim {
                        break 'outer;
                    }
                }
            }
        }
    }
    span
}
