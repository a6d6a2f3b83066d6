//! Finite matrix groups from generators: closure enumeration, dual actions
//! on the forms algebra, linear characters, coset transversals, and induced
//! permutation modules.

use crate::field::Fp;
use crate::forms::Element;
use crate::linalg::FpMatrix;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    NonInvertibleGenerator(usize),
    NotSubgroup,
    NotMultiplicative { g: usize, h: usize },
    InconsistentCharacter { element: usize },
    BasisNotSpanning,
    DimensionMismatch { expected: usize, got: usize },
    ClosureTooLarge(usize),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NonInvertibleGenerator(i) => {
                write!(f, "generator {i} is not invertible")
            }
            GroupError::NotSubgroup => write!(f, "claimed subgroup is not a subgroup"),
            GroupError::NotMultiplicative { g, h } => {
                write!(f, "images fail image(gh) = image(g)image(h) at pair ({g},{h})")
            }
            GroupError::InconsistentCharacter { element } => {
                write!(f, "character values inconsistent at element {element}")
            }
            GroupError::BasisNotSpanning => write!(f, "basis does not span the module"),
            GroupError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            GroupError::ClosureTooLarge(n) => write!(f, "closure exceeded {n} elements"),
        }
    }
}

impl std::error::Error for GroupError {}

const CLOSURE_BOUND: usize = 100_000;

/// A finite matrix group, enumerated by breadth-first closure from the
/// identity (element 0), multiplying by the generators in the order given.
/// The element order, multiplication table and inverse table are all fixed
/// by that enumeration, which makes every downstream report deterministic.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    p: u32,
    dim: usize,
    generators: Vec<FpMatrix>,
    elements: Vec<FpMatrix>,
    index: HashMap<FpMatrix, usize>,
    mul_table: Vec<Vec<u16>>,
    inv_table: Vec<u16>,
}

/// Breadth-first product closure of a set of invertible generators.
pub fn closure(generators: &[FpMatrix]) -> Result<MatrixGroup, GroupError> {
    assert!(!generators.is_empty(), "need at least one generator");
    let p = generators[0].p();
    let dim = generators[0].rows();
    for (i, g) in generators.iter().enumerate() {
        assert_eq!(g.p(), p, "mixed moduli among generators");
        assert!(g.is_square() && g.rows() == dim, "mixed dimensions among generators");
        if g.inverse().is_none() {
            return Err(GroupError::NonInvertibleGenerator(i));
        }
    }
    let identity = FpMatrix::identity(p, dim);
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity, 0usize);
    let mut head = 0usize;
    while head < elements.len() {
        let current = elements[head].clone();
        for g in generators {
            let next = current.mul(g);
            if !index.contains_key(&next) {
                index.insert(next.clone(), elements.len());
                elements.push(next);
                if elements.len() > CLOSURE_BOUND {
                    return Err(GroupError::ClosureTooLarge(CLOSURE_BOUND));
                }
            }
        }
        head += 1;
    }
    let n = elements.len();
    let mut mul_table = vec![vec![0u16; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod = elements[i].mul(&elements[j]);
            mul_table[i][j] = index[&prod] as u16;
        }
    }
    let mut inv_table = vec![0u16; n];
    for i in 0..n {
        let inv = elements[i].inverse().expect("group elements are invertible");
        inv_table[i] = index[&inv] as u16;
    }
    Ok(MatrixGroup { p, dim, generators: generators.to_vec(), elements, index, mul_table, inv_table })
}

impl MatrixGroup {
    pub fn trivial(p: u32, dim: usize) -> MatrixGroup {
        closure(&[FpMatrix::identity(p, dim)]).expect("identity closure")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[FpMatrix] {
        &self.generators
    }

    /// Indices of the generators in the element enumeration.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn element(&self, idx: usize) -> &FpMatrix {
        &self.elements[idx]
    }

    pub fn elements(&self) -> &[FpMatrix] {
        &self.elements
    }

    pub fn index_of(&self, m: &FpMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &FpMatrix) -> bool {
        self.index.contains_key(m)
    }

    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.mul_table[i][j] as usize
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.inv_table[i] as usize
    }

    pub fn element_order(&self, idx: usize) -> u32 {
        let mut acc = idx;
        let mut n = 1u32;
        while acc != 0 {
            acc = self.mul_idx(acc, idx);
            n += 1;
        }
        n
    }

    /// lcm of the element orders.
    pub fn exponent(&self) -> u32 {
        let mut e = 1u64;
        for idx in 0..self.order() {
            let o = self.element_order(idx) as u64;
            e = e / gcd_u64(e, o) * o;
        }
        e as u32
    }

    pub fn is_subgroup_of(&self, other: &MatrixGroup) -> bool {
        self.p == other.p
            && self.dim == other.dim
            && self.elements.iter().all(|m| other.contains(m))
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// The inverse-transpose, i.e. the matrix of the dual (contragredient)
/// action on the dual basis.
pub fn dual_action_matrix(m: &FpMatrix) -> FpMatrix {
    m.inverse().expect("dual action of a singular matrix").transpose()
}

/// A representation of a MatrixGroup: one image matrix per element, indexed
/// by the group's element order, checked multiplicative on construction.
#[derive(Debug, Clone)]
pub struct Representation {
    dim: usize,
    images: Vec<FpMatrix>,
}

impl Representation {
    pub fn new(group: &MatrixGroup, images: Vec<FpMatrix>) -> Result<Representation, GroupError> {
        assert_eq!(images.len(), group.order());
        let dim = images[0].rows();
        for (g, img) in images.iter().enumerate() {
            assert!(img.is_square() && img.rows() == dim);
            if img.inverse().is_none() {
                return Err(GroupError::NonInvertibleGenerator(g));
            }
        }
        for g in 0..images.len() {
            for h in 0..images.len() {
                let gh = group.mul_idx(g, h);
                if images[gh] != images[g].mul(&images[h]) {
                    return Err(GroupError::NotMultiplicative { g, h });
                }
            }
        }
        Ok(Representation { dim, images })
    }

    /// The group acting on its own natural module: image(g) = g.
    pub fn tautological(group: &MatrixGroup) -> Representation {
        Representation { dim: group.dim(), images: group.elements().to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, idx: usize) -> &FpMatrix {
        &self.images[idx]
    }

    pub fn images(&self) -> &[FpMatrix] {
        &self.images
    }

    /// Element indices whose image is the identity.
    pub fn kernel(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_identity())
            .map(|(i, _)| i)
            .collect()
    }

    /// Closure of the image matrices as a group in its own right.
    pub fn image_group(&self) -> MatrixGroup {
        let mut distinct: Vec<FpMatrix> = Vec::new();
        for m in &self.images {
            if !distinct.contains(m) {
                distinct.push(m.clone());
            }
        }
        closure(&distinct).expect("images of a representation are invertible")
    }
}

/// The conjugation representation: `group` consists of d x d matrices acting
/// on a space of d x d matrices by g(v) = g v g^{-1}, expressed in the given
/// basis of that space. Images are in the column convention: column j of
/// image(g) holds the coordinates of g(basis_j), so image(gh) =
/// image(g) * image(h).
pub fn conjugation_rep(
    group: &MatrixGroup,
    basis: &[FpMatrix],
) -> Result<Representation, GroupError> {
    let p = group.p();
    let d = group.dim();
    let n = basis.len();
    // coordinate matrix: columns are the flattened basis matrices
    let mut coord = FpMatrix::zeros(p, d * d, n);
    for (j, b) in basis.iter().enumerate() {
        assert_eq!(b.rows(), d);
        for r in 0..d {
            for c in 0..d {
                coord.set(r * d + c, j, b.get(r, c));
            }
        }
    }
    if coord.rank() != n {
        return Err(GroupError::BasisNotSpanning);
    }
    let mut images = Vec::with_capacity(group.order());
    for idx in 0..group.order() {
        let g = group.element(idx);
        let ginv = group.element(group.inv_idx(idx));
        let mut img = FpMatrix::zeros(p, n, n);
        for (j, b) in basis.iter().enumerate() {
            let conj = g.mul(b).mul(ginv);
            let mut flat = vec![0u8; d * d];
            for r in 0..d {
                for c in 0..d {
                    flat[r * d + c] = conj.get(r, c);
                }
            }
            let coords = crate::linalg::solve_combination(
                p,
                &basis_columns(&coord),
                &flat,
                false,
            )
            .ok_or(GroupError::BasisNotSpanning)?;
            for (i, &v) in coords.iter().enumerate() {
                img.set(i, j, v);
            }
        }
        images.push(img);
    }
    Representation::new(group, images)
}

fn basis_columns(coord: &FpMatrix) -> Vec<Vec<u8>> {
    (0..coord.cols())
        .map(|j| (0..coord.rows()).map(|i| coord.get(i, j)).collect())
        .collect()
}

/// The action of the group on the forms algebra through a representation:
/// each x_j and y_j is substituted by the dual-action image of the same
/// index, extended as an algebra automorphism.
#[derive(Debug, Clone)]
pub struct GroupAction {
    rank: usize,
    dual_mats: Vec<FpMatrix>,
}

impl GroupAction {
    pub fn new(rep: &Representation) -> GroupAction {
        let dual_mats: Vec<FpMatrix> = rep.images().iter().map(dual_action_matrix).collect();
        GroupAction { rank: rep.dim(), dual_mats }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn act(&self, idx: usize, f: &Element) -> Element {
        act_by_dual_matrix(&self.dual_mats[idx], f)
    }

    pub fn dual_matrix(&self, idx: usize) -> &FpMatrix {
        &self.dual_mats[idx]
    }
}

/// Apply the algebra automorphism determined by a dual-action matrix D:
/// x_j maps to sum_i D_ij x_i, and y_j to the same linear form in the y's.
pub fn act_by_dual_matrix(dual: &FpMatrix, f: &Element) -> Element {
    let p = f.p();
    let rank = f.rank();
    assert_eq!(dual.rows(), rank, "representation dimension must equal the rank");
    // linear images of the generators
    let mut x_imgs = Vec::with_capacity(rank);
    let mut y_imgs = Vec::with_capacity(rank);
    for j in 0..rank {
        let mut xi = Element::zero(p, rank);
        let mut yi = Element::zero(p, rank);
        for i in 0..rank {
            let c = Fp::new(dual.get(i, j) as i64, p);
            if !c.is_zero() {
                xi = xi.add(&Element::generator(p, rank, i + 1, false).scale(c));
                yi = yi.add(&Element::generator(p, rank, i + 1, true).scale(c));
            }
        }
        x_imgs.push(xi);
        y_imgs.push(yi);
    }
    let mut out = Element::zero(p, rank);
    for (m, &c) in f.terms() {
        let mut term = Element::constant(c, rank);
        for (j, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                term = term.mul(&x_imgs[j]);
            }
        }
        for (j, img) in y_imgs.iter().enumerate() {
            if m.mask() >> j & 1 == 1 {
                term = term.mul(img);
            }
        }
        out = out.add(&term);
    }
    out
}

/// Convenience form: act by a single representation image.
pub fn act(rep_image: &FpMatrix, f: &Element) -> Element {
    act_by_dual_matrix(&dual_action_matrix(rep_image), f)
}

/// An F_p^x-valued character, one value per group element, multiplicative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCharacter {
    values: Vec<Fp>,
}

impl LinearCharacter {
    pub fn trivial(group: &MatrixGroup) -> LinearCharacter {
        LinearCharacter { values: vec![Fp::one(group.p()); group.order()] }
    }

    /// Extend values on the generators multiplicatively along the BFS
    /// enumeration, then verify full multiplicativity.
    pub fn from_generator_values(
        group: &MatrixGroup,
        gen_values: &[Fp],
    ) -> Result<LinearCharacter, GroupError> {
        assert_eq!(gen_values.len(), group.generators().len());
        let p = group.p();
        let mut values: Vec<Option<Fp>> = vec![None; group.order()];
        values[0] = Some(Fp::one(p));
        // walk the same BFS: element k was first reached as elements[i] * gen[j]
        let mut head = 0usize;
        let gen_indices = group.generator_indices();
        while head < group.order() {
            if values[head].is_none() {
                head += 1;
                continue;
            }
            let base = values[head].unwrap();
            for (j, &gi) in gen_indices.iter().enumerate() {
                let next = group.mul_idx(head, gi);
                let v = base * gen_values[j];
                match values[next] {
                    None => values[next] = Some(v),
                    Some(existing) if existing == v => {}
                    Some(_) => return Err(GroupError::InconsistentCharacter { element: next }),
                }
            }
            head += 1;
        }
        let values: Vec<Fp> = values
            .into_iter()
            .map(|v| v.expect("BFS reaches every element"))
            .collect();
        // exhaustive multiplicativity check
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul_idx(g, h);
                if values[gh] != values[g] * values[h] {
                    return Err(GroupError::InconsistentCharacter { element: gh });
                }
            }
        }
        Ok(LinearCharacter { values })
    }

    pub fn value(&self, idx: usize) -> Fp {
        self.values[idx]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.value() == 1)
    }
}

/// Push a character through a representation to the image group: requires
/// the character to be constant on the fibers of the image map.
pub fn descend_character(
    group: &MatrixGroup,
    rep: &Representation,
    chi: &LinearCharacter,
    image_group: &MatrixGroup,
) -> Result<LinearCharacter, GroupError> {
    let mut values: Vec<Option<Fp>> = vec![None; image_group.order()];
    for idx in 0..group.order() {
        let img_idx = image_group
            .index_of(rep.image(idx))
            .ok_or(GroupError::NotSubgroup)?;
        let v = chi.value(idx);
        match values[img_idx] {
            None => values[img_idx] = Some(v),
            Some(existing) if existing == v => {}
            Some(_) => return Err(GroupError::InconsistentCharacter { element: idx }),
        }
    }
    let values = values
        .into_iter()
        .map(|v| v.ok_or(GroupError::NotSubgroup))
        .collect::<Result<Vec<Fp>, _>>()?;
    Ok(LinearCharacter { values })
}

/// Left coset representatives of a subgroup, with the coset assignment of
/// every group element. Representatives are the first member of each coset
/// in the BFS enumeration of the parent group.
#[derive(Debug, Clone)]
pub struct CosetTransversal {
    pub reps: Vec<usize>,
    /// `coset_of[g]` = position of the representative of gH in `reps`.
    pub coset_of: Vec<u16>,
}

pub fn transversal(
    group: &MatrixGroup,
    subgroup: &MatrixGroup,
) -> Result<CosetTransversal, GroupError> {
    if !subgroup.is_subgroup_of(group) {
        return Err(GroupError::NotSubgroup);
    }
    let n = group.order();
    let mut coset_of = vec![u16::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n {
        if coset_of[g] != u16::MAX {
            continue;
        }
        let pos = reps.len() as u16;
        reps.push(g);
        for h in subgroup.elements() {
            let hi = group.index_of(h).expect("subgroup elements lie in the group");
            let gh = group.mul_idx(g, hi);
            if coset_of[gh] != u16::MAX && coset_of[gh] != pos {
                return Err(GroupError::NotSubgroup);
            }
            coset_of[gh] = pos;
        }
    }
    if reps.len() * subgroup.order() != n {
        return Err(GroupError::NotSubgroup);
    }
    Ok(CosetTransversal { reps, coset_of })
}

/// Outcome of the induced-module isomorphism check; on failure, `witness`
/// names the group generator and source basis vector where equivariance
/// breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleIsoResult {
    pub holds: bool,
    pub witness: Option<(usize, usize)>,
}

/// Verify that phi is an isomorphism from a source module onto the induced
/// module k(G/H) (x) W, for W the one-dimensional H-module with character
/// `w_character`.
///
/// * `source_action[g]` is the matrix of g on the source coordinates.
/// * The induced module has one basis vector e_tau (x) w per transversal
///   representative tau, and g(e_tau (x) w) = w_character(h) e_tau' (x) w
///   where g tau = tau' h.
/// * `phi` maps source coordinates to induced coordinates.
///
/// Checked: phi invertible, and phi(g.v) = g.phi(v) for every generator g
/// and source basis vector v (which extends to the whole group).
pub fn verify_module_iso(
    group: &MatrixGroup,
    subgroup: &MatrixGroup,
    trans: &CosetTransversal,
    w_character: &LinearCharacter,
    source_action: &[FpMatrix],
    phi: &FpMatrix,
) -> ModuleIsoResult {
    let p = group.p();
    let k = trans.reps.len();
    if phi.rows() != k || phi.inverse().is_none() {
        return ModuleIsoResult { holds: false, witness: None };
    }
    for &g in &group.generator_indices() {
        // induced action matrix of g
        let mut induced = FpMatrix::zeros(p, k, k);
        for (tpos, &tau) in trans.reps.iter().enumerate() {
            let gt = group.mul_idx(g, tau);
            let tprime_pos = trans.coset_of[gt] as usize;
            let tprime = trans.reps[tprime_pos];
            // h = tau'^{-1} g tau
            let h = group.mul_idx(group.inv_idx(tprime), gt);
            let h_in_sub = subgroup
                .index_of(group.element(h))
                .expect("coset arithmetic lands in the subgroup");
            let chi = w_character.value(h_in_sub);
            induced.set(tprime_pos, tpos, chi.value() as u8);
        }
        // phi . source_action[g] must equal induced . phi
        let lhs = phi.mul(&source_action[g]);
        let rhs = induced.mul(phi);
        if lhs != rhs {
            // find the offending basis vector (column)
            for j in 0..phi.cols() {
                if (0..k).any(|i| lhs.get(i, j) != rhs.get(i, j)) {
                    return ModuleIsoResult { holds: false, witness: Some((g, j)) };
                }
            }
        }
    }
    ModuleIsoResult { holds: true, witness: None }
}
