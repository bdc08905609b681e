//! The matrix side: exact tensor operators on powers of a graded space,
//! the images of the diagram generators, the functors from the plain and
//! oriented diagram categories, adjoints with respect to the product form,
//! supertraces, and an independent equivariant-hom oracle that knows
//! nothing about diagrams.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::diagram::BrauerDiagram;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::oriented::{OrientedDiagram, Sign, SignedSequence};
use crate::perm::Perm;
use crate::poly::Rat;
use crate::space::{Group, SuperSpace};
use crate::sum::DiagramSum;
use crate::word::{from_diagram, Gen, Slice, Word};

/// One tensor factor of a domain or codomain word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    V,
    Dual,
}

pub type TensorWord = Vec<Factor>;

pub fn power_word(r: usize) -> TensorWord {
    vec![Factor::V; r]
}

pub fn signed_word(seq: &SignedSequence) -> TensorWord {
    seq.0
        .iter()
        .map(|s| match s {
            Sign::Plus => Factor::V,
            Sign::Minus => Factor::Dual,
        })
        .collect()
}

/// An exact matrix of a morphism between tensor words over a fixed space.
/// Indexing is mixed-radix with the leftmost factor most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorOperator {
    pub space: SuperSpace,
    pub domain: TensorWord,
    pub codomain: TensorWord,
    pub matrix: Matrix,
}

impl TensorOperator {
    pub fn identity(space: SuperSpace, word: TensorWord) -> Self {
        let dim = space.dim().pow(word.len() as u32);
        TensorOperator { space, domain: word.clone(), codomain: word, matrix: Matrix::identity(dim) }
    }

    pub fn domain_dim(&self) -> usize {
        self.space.dim().pow(self.domain.len() as u32)
    }

    pub fn codomain_dim(&self) -> usize {
        self.space.dim().pow(self.codomain.len() as u32)
    }

    pub fn compose(&self, rhs: &TensorOperator) -> Result<TensorOperator> {
        if self.domain != rhs.codomain {
            return Err(Error::ValencyMismatch(
                self.domain.len(),
                self.codomain.len(),
                rhs.domain.len(),
                rhs.codomain.len(),
            ));
        }
        Ok(TensorOperator {
            space: self.space,
            domain: rhs.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.mul(&rhs.matrix),
        })
    }

    /// Tensor product; all operators here are even, so this is a plain
    /// Kronecker product.
    pub fn tensor(&self, rhs: &TensorOperator) -> TensorOperator {
        let mut domain = self.domain.clone();
        domain.extend(rhs.domain.iter().copied());
        let mut codomain = self.codomain.clone();
        codomain.extend(rhs.codomain.iter().copied());
        TensorOperator {
            space: self.space,
            domain,
            codomain,
            matrix: self.matrix.kron(&rhs.matrix),
        }
    }

    pub fn scale(&self, c: &Rat) -> TensorOperator {
        TensorOperator {
            space: self.space,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.scale(c),
        }
    }

    pub fn add(&self, rhs: &TensorOperator) -> Result<TensorOperator> {
        if self.domain != rhs.domain || self.codomain != rhs.codomain {
            return Err(Error::ValencyMismatch(
                self.domain.len(),
                self.codomain.len(),
                rhs.domain.len(),
                rhs.codomain.len(),
            ));
        }
        Ok(TensorOperator {
            space: self.space,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.add(&rhs.matrix),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Supertrace of a square operator: the diagonal signed by the parity
    /// of the basis tensor.
    pub fn supertrace(&self) -> Result<Rat> {
        if self.domain != self.codomain {
            return Err(Error::NonSquare { rows: self.codomain_dim(), cols: self.domain_dim() });
        }
        let d = self.space.dim();
        let r = self.domain.len();
        let mut acc = Rat::zero();
        for i in 0..self.domain_dim() {
            let digits = to_digits(i, d, r);
            let parity: u8 = digits.iter().map(|&x| self.space.parity(x)).sum::<u8>() % 2;
            let term = self.matrix.at(i, i);
            if parity == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        Ok(acc)
    }
}

pub fn to_digits(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut digits = vec![0; len];
    for slot in (0..len).rev() {
        digits[slot] = index % base;
        index /= base;
    }
    digits
}

pub fn from_digits(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base + d)
}

type SparseCol = BTreeMap<usize, Rat>;

fn insert_into(col: &mut SparseCol, idx: usize, coeff: Rat) {
    if coeff.is_zero() {
        return;
    }
    let entry = col.entry(idx).or_insert_with(Rat::zero);
    *entry += coeff;
    if entry.is_zero() {
        col.remove(&idx);
    }
}

/// The three generator images on an orthosymplectic space: swap with the
/// Koszul sign, the invariant element of V (x) V, and the form.
pub struct GeneratorOps {
    pub space: SuperSpace,
    pub swap: TensorOperator,
    pub coform: TensorOperator,
    pub form: TensorOperator,
}

/// Builds P, C-check (from c_0) and C-hat for a space with a form.
pub fn generator_ops(space: SuperSpace) -> GeneratorOps {
    let d = space.dim();
    let g = space.gram();
    let ginv = space.gram_inv();
    // P(e_x (x) e_y) = (-1)^{[x][y]} e_y (x) e_x
    let mut swap = Matrix::zero(d * d, d * d);
    for x in 0..d {
        for y in 0..d {
            let sign = if space.parity(x) == 1 && space.parity(y) == 1 {
                -Rat::one()
            } else {
                Rat::one()
            };
            swap.set(y * d + x, x * d + y, sign);
        }
    }
    // c_0 = sum_{a,b} Ginv[a][b] e_a (x) e_b
    let mut coform = Matrix::zero(d * d, 1);
    for a in 0..d {
        for b in 0..d {
            if !ginv.at(a, b).is_zero() {
                coform.set(a * d + b, 0, ginv.at(a, b).clone());
            }
        }
    }
    // C-hat(e_x (x) e_y) = (x, y)
    let mut form = Matrix::zero(1, d * d);
    for x in 0..d {
        for y in 0..d {
            if !g.at(x, y).is_zero() {
                form.set(0, x * d + y, g.at(x, y).clone());
            }
        }
    }
    GeneratorOps {
        space,
        swap: TensorOperator {
            space,
            domain: power_word(2),
            codomain: power_word(2),
            matrix: swap,
        },
        coform: TensorOperator { space, domain: vec![], codomain: power_word(2), matrix: coform },
        form: TensorOperator { space, domain: power_word(2), codomain: vec![], matrix: form },
    }
}

/// The generator images on a space without a form: super swaps on all four
/// factor patterns, the two coevaluations, the two evaluations.
pub struct GlOps {
    pub space: SuperSpace,
    pub swap_vv: TensorOperator,
    pub swap_vd: TensorOperator,
    pub swap_dv: TensorOperator,
    pub swap_dd: TensorOperator,
    pub coeval_vd: TensorOperator,
    pub coeval_dv: TensorOperator,
    pub eval_dv: TensorOperator,
    pub eval_vd: TensorOperator,
}

fn super_swap(space: SuperSpace, dom: TensorWord) -> TensorOperator {
    let d = space.dim();
    let mut m = Matrix::zero(d * d, d * d);
    for x in 0..d {
        for y in 0..d {
            let sign = if space.parity(x) == 1 && space.parity(y) == 1 {
                -Rat::one()
            } else {
                Rat::one()
            };
            m.set(y * d + x, x * d + y, sign);
        }
    }
    let codomain = vec![dom[1], dom[0]];
    TensorOperator { space, domain: dom, codomain, matrix: m }
}

/// Builds the images of the oriented generators for GL(V).
pub fn gl_ops(space: SuperSpace) -> GlOps {
    let d = space.dim();
    use Factor::{Dual, V};
    // C-check^{+-}: 1 -> sum b_i (x) b*_i
    let mut cvd = Matrix::zero(d * d, 1);
    for i in 0..d {
        cvd.set(i * d + i, 0, Rat::one());
    }
    // C-check^{-+}: 1 -> sum (-1)^{[i]} b*_i (x) b_i
    let mut cdv = Matrix::zero(d * d, 1);
    for i in 0..d {
        let sign = if space.parity(i) == 1 { -Rat::one() } else { Rat::one() };
        cdv.set(i * d + i, 0, sign);
    }
    // C-hat_{-+}: b*_x (x) b_y -> delta_{xy}
    let mut edv = Matrix::zero(1, d * d);
    for i in 0..d {
        edv.set(0, i * d + i, Rat::one());
    }
    // C-hat_{+-}: b_x (x) b*_y -> (-1)^{[x]} delta_{xy}
    let mut evd = Matrix::zero(1, d * d);
    for i in 0..d {
        let sign = if space.parity(i) == 1 { -Rat::one() } else { Rat::one() };
        evd.set(0, i * d + i, sign);
    }
    GlOps {
        space,
        swap_vv: super_swap(space, vec![V, V]),
        swap_vd: super_swap(space, vec![V, Dual]),
        swap_dv: super_swap(space, vec![Dual, V]),
        swap_dd: super_swap(space, vec![Dual, Dual]),
        coeval_vd: TensorOperator { space, domain: vec![], codomain: vec![V, Dual], matrix: cvd },
        coeval_dv: TensorOperator { space, domain: vec![], codomain: vec![Dual, V], matrix: cdv },
        eval_dv: TensorOperator { space, domain: vec![Dual, V], codomain: vec![], matrix: edv },
        eval_vd: TensorOperator { space, domain: vec![V, Dual], codomain: vec![], matrix: evd },
    }
}

/// Applies one unoriented slice to a sparse column over V-words.
fn apply_slice(space: &SuperSpace, slice: &Slice, width_in: usize, col: &SparseCol) -> SparseCol {
    let d = space.dim();
    let g = space.gram();
    let ginv = space.gram_inv();
    let p = slice.left;
    let mut out = SparseCol::new();
    for (&idx, coeff) in col {
        let digits = to_digits(idx, d, width_in);
        match slice.gen {
            Gen::X => {
                let mut nd = digits.clone();
                nd.swap(p, p + 1);
                let sign = if space.parity(digits[p]) == 1 && space.parity(digits[p + 1]) == 1 {
                    -coeff.clone()
                } else {
                    coeff.clone()
                };
                insert_into(&mut out, from_digits(&nd, d), sign);
            }
            Gen::A => {
                let pairing = g.at(digits[p], digits[p + 1]);
                if !pairing.is_zero() {
                    let mut nd = digits.clone();
                    nd.drain(p..p + 2);
                    insert_into(&mut out, from_digits(&nd, d), coeff * pairing);
                }
            }
            Gen::U => {
                for a in 0..d {
                    for b in 0..d {
                        let c = ginv.at(a, b);
                        if c.is_zero() {
                            continue;
                        }
                        let mut nd = digits.clone();
                        nd.insert(p, b);
                        nd.insert(p, a);
                        insert_into(&mut out, from_digits(&nd, d), coeff * c);
                    }
                }
            }
        }
    }
    out
}

/// F on a single diagram for a space with a form, through the word
/// decomposition. Independent of the word chosen.
pub fn functor_diagram(space: SuperSpace, d: &BrauerDiagram) -> TensorOperator {
    functor_word(space, &from_diagram(d))
}

pub fn functor_word(space: SuperSpace, word: &Word) -> TensorOperator {
    use rayon::prelude::*;
    let dim = space.dim();
    let k = word.k();
    let dom_dim = dim.pow(k as u32);
    let cod_dim = dim.pow(word.ell() as u32);
    // columns are independent; collected in index order, so the result is
    // the same for any thread count
    let columns: Vec<SparseCol> = (0..dom_dim)
        .into_par_iter()
        .map(|j| {
            let mut col = SparseCol::new();
            col.insert(j, Rat::one());
            let mut width = k;
            for slice in word.slices() {
                col = apply_slice(&space, slice, width, &col);
                width = slice.out_width();
            }
            col
        })
        .collect();
    let mut matrix = Matrix::zero(cod_dim, dom_dim);
    for (j, col) in columns.into_iter().enumerate() {
        for (i, c) in col {
            matrix.set(i, j, c);
        }
    }
    TensorOperator { space, domain: power_word(k), codomain: power_word(word.ell()), matrix }
}

/// F extended linearly to a formal sum; coefficients are specialised at
/// the superdimension first. Columns are accumulated sparsely across the
/// terms, which matters for sums with many hundreds of diagrams.
pub fn functor_sum(space: SuperSpace, x: &DiagramSum) -> TensorOperator {
    use rayon::prelude::*;
    let at = Rat::from_integer(space.sdim().into());
    let v = x.valency();
    let dim = space.dim();
    let dom_dim = dim.pow(v.k as u32);
    let cod_dim = dim.pow(v.ell as u32);
    let terms: Vec<(Word, Rat)> = x
        .terms()
        .filter_map(|(d, c)| {
            let value = c.eval(&at);
            if value.is_zero() {
                None
            } else {
                Some((from_diagram(d), value))
            }
        })
        .collect();
    let columns: Vec<SparseCol> = (0..dom_dim)
        .into_par_iter()
        .map(|j| {
            let mut acc = SparseCol::new();
            for (word, value) in &terms {
                let mut col = SparseCol::new();
                col.insert(j, Rat::one());
                let mut width = v.k;
                for slice in word.slices() {
                    col = apply_slice(&space, slice, width, &col);
                    width = slice.out_width();
                }
                for (i, coeff) in col {
                    insert_into(&mut acc, i, coeff * value);
                }
            }
            acc
        })
        .collect();
    let mut matrix = Matrix::zero(cod_dim, dom_dim);
    for (j, col) in columns.into_iter().enumerate() {
        for (i, coeff) in col {
            matrix.set(i, j, coeff);
        }
    }
    TensorOperator { space, domain: power_word(v.k), codomain: power_word(v.ell), matrix }
}

/// The place-permutation operator on V^(x) r with Koszul signs: the factor
/// in slot i moves to slot perm(i).
pub fn perm_operator(space: SuperSpace, perm: &Perm) -> TensorOperator {
    let r = perm.degree();
    let d = space.dim();
    let dim = d.pow(r as u32);
    let mut matrix = Matrix::zero(dim, dim);
    for j in 0..dim {
        let digits = to_digits(j, d, r);
        let mut nd = vec![0usize; r];
        for (slot, &digit) in digits.iter().enumerate() {
            nd[perm.apply(slot)] = digit;
        }
        // sign: one factor (-1)^{[v_i][v_j]} per crossed pair
        let mut sign = Rat::one();
        for i in 0..r {
            for jj in i + 1..r {
                if perm.apply(i) > perm.apply(jj)
                    && space.parity(digits[i]) == 1
                    && space.parity(digits[jj]) == 1
                {
                    sign = -sign;
                }
            }
        }
        matrix.set(from_digits(&nd, d), j, sign);
    }
    TensorOperator { space, domain: power_word(r), codomain: power_word(r), matrix }
}

/// The adjoint with respect to the product form on V-words: the unique
/// operator with ((F v, w)) = ((v, F* w)).
pub fn adjoint(op: &TensorOperator) -> Result<TensorOperator> {
    if op.domain.iter().any(|f| *f == Factor::Dual)
        || op.codomain.iter().any(|f| *f == Factor::Dual)
    {
        return Err(Error::InvalidDiagram("adjoint needs pure V words".into()));
    }
    let gt = product_form(op.space, op.domain.len());
    let gs = product_form(op.space, op.codomain.len());
    let matrix = gt.inverse()?.mul(&op.matrix.transpose()).mul(&gs);
    Ok(TensorOperator {
        space: op.space,
        domain: op.codomain.clone(),
        codomain: op.domain.clone(),
        matrix,
    })
}

/// The Gram matrix of the product form on V^(x) t, which pairs slot i with
/// slot t+1-i: ((v_1..v_t, w_t..w_1)) = prod (v_i, w_i).
pub fn product_form(space: SuperSpace, t: usize) -> Matrix {
    let d = space.dim();
    let g = space.gram();
    let dim = d.pow(t as u32);
    Matrix::from_fn(dim, dim, |i, j| {
        let di = to_digits(i, d, t);
        let dj = to_digits(j, d, t);
        let mut acc = Rat::one();
        for s in 0..t {
            let f = g.at(di[s], dj[t - 1 - s]);
            if f.is_zero() {
                return Rat::zero();
            }
            acc *= f;
        }
        acc
    })
}

/// Oriented functor: per-slice signs are recovered from the arc
/// orientations by tracking strand segments through the word.
pub fn functor_oriented(space: SuperSpace, gamma: &OrientedDiagram) -> TensorOperator {
    let word = from_diagram(gamma.diagram());
    let signs = segment_signs(gamma, &word);
    let d = space.dim();
    let k = word.k();
    let dom_dim = d.pow(k as u32);
    let cod_dim = d.pow(word.ell() as u32);
    let mut matrix = Matrix::zero(cod_dim, dom_dim);
    for j in 0..dom_dim {
        let mut col = SparseCol::new();
        col.insert(j, Rat::one());
        let mut width = k;
        for (t, slice) in word.slices().iter().enumerate() {
            col = apply_oriented_slice(&space, slice, &signs[t], width, &col);
            width = slice.out_width();
        }
        for (i, c) in col {
            matrix.set(i, j, c);
        }
    }
    TensorOperator {
        space,
        domain: signed_word(&gamma.source()),
        codomain: signed_word(&gamma.target()),
        matrix,
    }
}

/// The signs of the two strands each slice acts on (for X: the pair being
/// swapped; for A: the pair being consumed; for U: the pair created).
fn segment_signs(gamma: &OrientedDiagram, word: &Word) -> Vec<(Sign, Sign)> {
    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    enum End {
        Boundary(usize),
        Join(usize),
    }
    let k = gamma.diagram().k;
    // replay the word, assigning segment ids and recording their two ends
    let mut seg_ends: Vec<Vec<End>> = Vec::new();
    let mut joins: Vec<Vec<usize>> = Vec::new(); // join id -> the two segments
    let mut strands: Vec<usize> = Vec::new();
    for node in 1..=k {
        seg_ends.push(vec![End::Boundary(node)]);
        strands.push(node - 1);
    }
    let mut slice_segs: Vec<(usize, usize)> = Vec::new();
    for slice in word.slices() {
        let p = slice.left;
        match slice.gen {
            Gen::X => {
                slice_segs.push((strands[p], strands[p + 1]));
                strands.swap(p, p + 1);
            }
            Gen::A => {
                let (a, b) = (strands[p], strands[p + 1]);
                slice_segs.push((a, b));
                let join = joins.len();
                joins.push(vec![a, b]);
                seg_ends[a].push(End::Join(join));
                seg_ends[b].push(End::Join(join));
                strands.drain(p..p + 2);
            }
            Gen::U => {
                let s1 = seg_ends.len();
                let s2 = s1 + 1;
                let join = joins.len();
                joins.push(vec![s1, s2]);
                seg_ends.push(vec![End::Join(join)]);
                seg_ends.push(vec![End::Join(join)]);
                slice_segs.push((s1, s2));
                strands.insert(p, s2);
                strands.insert(p, s1);
            }
        }
    }
    for (pos, &seg) in strands.iter().enumerate() {
        seg_ends[seg].push(End::Boundary(k + pos + 1));
    }
    debug_assert!(seg_ends.iter().all(|e| e.len() == 2));
    // orient each arc: walk from the tail, flipping flow at each join
    let mut sign_of_seg: Vec<Option<Sign>> = vec![None; seg_ends.len()];
    for (arc_idx, &(a, b)) in gamma.diagram().pairs().iter().enumerate() {
        let tail = gamma.tails()[arc_idx];
        let head = if tail == a { b } else { a };
        let mut current = seg_ends
            .iter()
            .position(|ends| ends.contains(&End::Boundary(tail)))
            .expect("tail segment");
        // flow away from the tail: downward reads +
        let mut sign = if tail <= k { Sign::Minus } else { Sign::Plus };
        let mut entered = End::Boundary(tail);
        loop {
            sign_of_seg[current] = Some(sign);
            let other = seg_ends[current]
                .iter()
                .copied()
                .find(|e| *e != entered)
                .expect("two distinct ends");
            match other {
                End::Boundary(node) => {
                    debug_assert_eq!(node, head);
                    break;
                }
                End::Join(j) => {
                    let partner = joins[j]
                        .iter()
                        .copied()
                        .find(|&s| s != current)
                        .expect("join partner");
                    current = partner;
                    entered = End::Join(j);
                    sign = sign.flip();
                }
            }
        }
    }
    slice_segs
        .iter()
        .map(|&(s1, s2)| {
            (
                sign_of_seg[s1].expect("segment oriented"),
                sign_of_seg[s2].expect("segment oriented"),
            )
        })
        .collect()
}

fn apply_oriented_slice(
    space: &SuperSpace,
    slice: &Slice,
    signs: &(Sign, Sign),
    width_in: usize,
    col: &SparseCol,
) -> SparseCol {
    let d = space.dim();
    let p = slice.left;
    let mut out = SparseCol::new();
    for (&idx, coeff) in col {
        let digits = to_digits(idx, d, width_in);
        match slice.gen {
            Gen::X => {
                let mut nd = digits.clone();
                nd.swap(p, p + 1);
                let sign = if space.parity(digits[p]) == 1 && space.parity(digits[p + 1]) == 1 {
                    -coeff.clone()
                } else {
                    coeff.clone()
                };
                insert_into(&mut out, from_digits(&nd, d), sign);
            }
            Gen::A => {
                let (x, y) = (digits[p], digits[p + 1]);
                if x != y {
                    continue;
                }
                // (+,-): evaluation with the super sign; (-,+): plain
                let c = match signs {
                    (Sign::Plus, Sign::Minus) => {
                        if space.parity(x) == 1 {
                            -coeff.clone()
                        } else {
                            coeff.clone()
                        }
                    }
                    (Sign::Minus, Sign::Plus) => coeff.clone(),
                    _ => panic!("cap must consume opposite flows"),
                };
                let mut nd = digits.clone();
                nd.drain(p..p + 2);
                insert_into(&mut out, from_digits(&nd, d), c);
            }
            Gen::U => {
                for i in 0..d {
                    // (+,-): sum b_i (x) b*_i; (-,+): signed order swap
                    let c = match signs {
                        (Sign::Plus, Sign::Minus) => coeff.clone(),
                        (Sign::Minus, Sign::Plus) => {
                            if space.parity(i) == 1 {
                                -coeff.clone()
                            } else {
                                coeff.clone()
                            }
                        }
                        _ => panic!("cup must create opposite flows"),
                    };
                    let mut nd = digits.clone();
                    nd.insert(p, i);
                    nd.insert(p, i);
                    insert_into(&mut out, from_digits(&nd, d), c);
                }
            }
        }
    }
    out
}

/// The action of a Lie algebra element (with parity) on a tensor word, as
/// a matrix; dual factors carry the negative super-transpose.
pub fn word_action(space: SuperSpace, x: &Matrix, parity: u8, word: &TensorWord) -> Matrix {
    let d = space.dim();
    let r = word.len();
    let dim = d.pow(r as u32);
    let mut out = Matrix::zero(dim, dim);
    for j in 0..dim {
        let digits = to_digits(j, d, r);
        for slot in 0..r {
            // Koszul sign from moving x past the first factors
            let mut sign = Rat::one();
            if parity == 1 {
                let before: u8 =
                    digits[..slot].iter().map(|&t| space.parity(t)).sum::<u8>() % 2;
                if before == 1 {
                    sign = -sign;
                }
            }
            match word[slot] {
                Factor::V => {
                    for rdx in 0..d {
                        let v = x.at(rdx, digits[slot]);
                        if v.is_zero() {
                            continue;
                        }
                        let mut nd = digits.clone();
                        nd[slot] = rdx;
                        out.add_at(from_digits(&nd, d), j, &(&sign * v));
                    }
                }
                Factor::Dual => {
                    for rdx in 0..d {
                        // x . b*_j = -(-1)^{[x][b_j]} sum_i x[j][i] b*_i
                        let v = x.at(digits[slot], rdx);
                        if v.is_zero() {
                            continue;
                        }
                        let mut c = -(&sign * v);
                        if parity == 1 && space.parity(digits[slot]) == 1 {
                            c = -c;
                        }
                        let mut nd = digits.clone();
                        nd[slot] = rdx;
                        out.add_at(from_digits(&nd, d), j, &c);
                    }
                }
            }
        }
    }
    out
}

/// A group element (even) acting diagonally on a word.
pub fn group_element_action(space: SuperSpace, g: &Matrix, word: &TensorWord) -> Matrix {
    let d = space.dim();
    let mut out = Matrix::identity(1);
    let ginv_t = g.inverse().expect("group element invertible").transpose();
    for factor in word {
        let m = match factor {
            Factor::V => g.clone(),
            // g . phi = phi o g^{-1}
            Factor::Dual => ginv_t.clone(),
        };
        out = out.kron(&m);
    }
    let dim = d.pow(word.len() as u32);
    debug_assert_eq!(out.rows, dim);
    out
}

/// Basis of Hom_G(domain, codomain) computed from Lie-algebra equivariance
/// plus the component-group reflections; independent of any diagram
/// machinery. `max_entries` caps the unknown-matrix size.
pub fn equivariant_hom(
    group: &Group,
    domain: &TensorWord,
    codomain: &TensorWord,
    max_entries: usize,
) -> Result<Vec<Matrix>> {
    let space = group.space();
    let d = space.dim();
    let dom_dim = d.pow(domain.len() as u32);
    let cod_dim = d.pow(codomain.len() as u32);
    if dom_dim * cod_dim > max_entries {
        return Err(Error::Budget(format!(
            "hom space has {} unknowns, cap is {max_entries}",
            dom_dim * cod_dim
        )));
    }
    let word_parity = |w: &TensorWord, idx: usize| -> u8 {
        to_digits(idx, d, w.len())
            .iter()
            .map(|&t| space.parity(t))
            .sum::<u8>()
            % 2
    };
    let lie = group.lie_basis();
    let reflections = group.reflections();
    let mut solutions = Vec::new();
    for sector in [0u8, 1u8] {
        // unknown entries M[i][j] with parity(i) + parity(j) = sector
        let mut slots = Vec::new();
        for i in 0..cod_dim {
            for j in 0..dom_dim {
                if (word_parity(codomain, i) + word_parity(domain, j)) % 2 == sector {
                    slots.push((i, j));
                }
            }
        }
        if slots.is_empty() {
            continue;
        }
        let slot_index: std::collections::HashMap<(usize, usize), usize> =
            slots.iter().enumerate().map(|(n, &s)| (s, n)).collect();
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for (x, p) in &lie {
            let rho_c = word_action(space, x, *p, codomain);
            let rho_d = word_action(space, x, *p, domain);
            // rho_c M - (-1)^{p * sector} M rho_d = 0
            let msign = if *p == 1 && sector == 1 { -Rat::one() } else { Rat::one() };
            for i in 0..cod_dim {
                for j in 0..dom_dim {
                    let mut row = vec![Rat::zero(); slots.len()];
                    let mut nonzero = false;
                    for t in 0..cod_dim {
                        if !rho_c.at(i, t).is_zero() {
                            if let Some(&s) = slot_index.get(&(t, j)) {
                                row[s] = &row[s] + rho_c.at(i, t);
                                nonzero = true;
                            }
                        }
                    }
                    for t in 0..dom_dim {
                        if !rho_d.at(t, j).is_zero() {
                            if let Some(&s) = slot_index.get(&(i, t)) {
                                row[s] = &row[s] - &(&msign * rho_d.at(t, j));
                                nonzero = true;
                            }
                        }
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }
        for refl in &reflections {
            let rc = group_element_action(space, refl, codomain);
            let rd = group_element_action(space, refl, domain);
            // rc M = M rd
            for i in 0..cod_dim {
                for j in 0..dom_dim {
                    let mut row = vec![Rat::zero(); slots.len()];
                    let mut nonzero = false;
                    for t in 0..cod_dim {
                        if !rc.at(i, t).is_zero() {
                            if let Some(&s) = slot_index.get(&(t, j)) {
                                row[s] = &row[s] + rc.at(i, t);
                                nonzero = true;
                            }
                        }
                    }
                    for t in 0..dom_dim {
                        if !rd.at(t, j).is_zero() {
                            if let Some(&s) = slot_index.get(&(i, t)) {
                                row[s] = &row[s] - rd.at(t, j);
                                nonzero = true;
                            }
                        }
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }
        let mut system = Matrix::zero(rows.len().max(1), slots.len());
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    system.set(r, c, v.clone());
                }
            }
        }
        for v in system.nullspace() {
            let mut m = Matrix::zero(cod_dim, dom_dim);
            for (n, &(i, j)) in slots.iter().enumerate() {
                if !v[n].is_zero() {
                    m.set(i, j, v[n].clone());
                }
            }
            solutions.push(m);
        }
    }
    Ok(solutions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn osp_spaces() -> Vec<SuperSpace> {
        vec![
            SuperSpace::new(1, 0),
            SuperSpace::new(2, 0),
            SuperSpace::new(3, 0),
            SuperSpace::new(0, 2),
            SuperSpace::new(2, 2),
        ]
    }

    #[test]
    fn generator_relations() {
        for space in osp_spaces() {
            let ops = generator_ops(space);
            let id1 = TensorOperator::identity(space, power_word(1));
            let id2 = TensorOperator::identity(space, power_word(2));
            // P^2 = id
            assert_eq!(ops.swap.compose(&ops.swap).unwrap(), id2);
            // C-hat after C-check = sdim
            let scalar = ops.form.compose(&ops.coform).unwrap();
            assert_eq!(scalar.matrix.at(0, 0), &rat(space.sdim()));
            // (C-hat (x) id)(id (x) C-check) = id = (id (x) C-hat)(C-check (x) id)
            let left = ops
                .form
                .tensor(&id1)
                .compose(&id1.tensor(&ops.coform))
                .unwrap();
            assert_eq!(left, id1);
            let right = id1
                .tensor(&ops.form)
                .compose(&ops.coform.tensor(&id1))
                .unwrap();
            assert_eq!(right, id1);
            // P C-check = C-check, C-hat P = C-hat
            assert_eq!(ops.swap.compose(&ops.coform).unwrap(), ops.coform);
            assert_eq!(ops.form.compose(&ops.swap).unwrap(), ops.form);
            // braid relation
            let pi = ops.swap.tensor(&id1);
            let ip = id1.tensor(&ops.swap);
            let lhs = pi.compose(&ip).unwrap().compose(&pi).unwrap();
            let rhs = ip.compose(&pi).unwrap().compose(&ip).unwrap();
            assert_eq!(lhs, rhs);
            // sliding: (C-hat (x) id)(id (x) P) = (id (x) C-hat)(P (x) id)
            let l = ops.form.tensor(&id1).compose(&id1.tensor(&ops.swap)).unwrap();
            let r = id1.tensor(&ops.form).compose(&ops.swap.tensor(&id1)).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn functor_agrees_with_generators() {
        for space in osp_spaces() {
            let ops = generator_ops(space);
            assert_eq!(functor_diagram(space, &BrauerDiagram::cross()), ops.swap);
            assert_eq!(functor_diagram(space, &BrauerDiagram::cup()), ops.coform);
            assert_eq!(functor_diagram(space, &BrauerDiagram::cap()), ops.form);
            assert_eq!(
                functor_diagram(space, &BrauerDiagram::identity(2)),
                TensorOperator::identity(space, power_word(2))
            );
        }
    }

    #[test]
    fn functor_word_independent() {
        // the functor value agrees across distinct words for a diagram
        for space in [SuperSpace::new(2, 0), SuperSpace::new(1, 2)] {
            for d in BrauerDiagram::enumerate(2, 2) {
                let via_scan = functor_word(space, &crate::word::from_diagram(&d));
                let via_build = functor_word(space, &crate::word::build_word(&d));
                assert_eq!(via_scan, via_build);
            }
        }
    }

    #[test]
    fn functoriality_with_loop_powers() {
        for space in [SuperSpace::new(2, 0), SuperSpace::new(0, 2), SuperSpace::new(2, 2)] {
            let delta = rat(space.sdim());
            for d1 in BrauerDiagram::enumerate(2, 2) {
                for d2 in BrauerDiagram::enumerate(2, 2) {
                    let scaled = d1.compose(&d2).unwrap();
                    let mut lhs = functor_diagram(space, &scaled.diagram);
                    for _ in 0..scaled.loops {
                        lhs = lhs.scale(&delta);
                    }
                    let rhs = functor_diagram(space, &d1)
                        .compose(&functor_diagram(space, &d2))
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn perm_operator_matches_functor() {
        let space = SuperSpace::new(1, 2);
        for p in Perm::all(3) {
            let d = BrauerDiagram::from_perm(&p);
            assert_eq!(perm_operator(space, &p), functor_diagram(space, &d));
        }
    }

    #[test]
    fn e1_image_on_o2() {
        // F(e_1) on O(2) is a rank one 4x4 matrix with trace 2
        let space = SuperSpace::new(2, 0);
        let e1 = functor_diagram(space, &BrauerDiagram::e_i(2, 1).unwrap());
        assert_eq!(e1.matrix.rank(), 1);
        assert_eq!(e1.supertrace().unwrap(), rat(2));
    }

    #[test]
    fn antisymmetrizer_dies_on_small_space() {
        // F(1 - s) = 0 on a 1-dimensional space
        let space = SuperSpace::new(1, 0);
        let sigma = DiagramSum::symmetrizer(2, 1);
        assert!(functor_sum(space, &sigma).is_zero());
        // negative control: it is not zero on O(2)
        let space = SuperSpace::new(2, 0);
        assert!(!functor_sum(space, &sigma).is_zero());
    }

    #[test]
    fn adjoint_properties() {
        let space = SuperSpace::new(2, 0);
        // adjoint(F(A)) = F(U) and adjoint is an involution
        let fa = functor_diagram(space, &BrauerDiagram::cap());
        let fu = functor_diagram(space, &BrauerDiagram::cup());
        assert_eq!(adjoint(&fa).unwrap(), fu);
        assert_eq!(
            adjoint(&TensorOperator::identity(space, power_word(2))).unwrap(),
            TensorOperator::identity(space, power_word(2))
        );
        // the reversed-slot product form realises the rotation
        // anti-involution: adjoint(F(D)) = F(*D) with *D = (D sharp) star
        for d in BrauerDiagram::enumerate(3, 3).into_iter().take(6) {
            let f = functor_diagram(space, &d);
            assert_eq!(adjoint(&adjoint(&f).unwrap()).unwrap(), f);
            assert_eq!(functor_diagram(space, &d.star_sharp()), adjoint(&f).unwrap());
        }
        // also on a super space
        let space = SuperSpace::new(1, 2);
        for d in BrauerDiagram::enumerate(2, 2) {
            let f = functor_diagram(space, &d);
            assert_eq!(functor_diagram(space, &d.star_sharp()), adjoint(&f).unwrap());
        }
        // s_1 is sent to s_2 in degree 3, matching *s_i = s_{r+1-i}
        let space = SuperSpace::new(2, 0);
        let s1 = functor_diagram(space, &BrauerDiagram::s_i(3, 1).unwrap());
        let s2 = functor_diagram(space, &BrauerDiagram::s_i(3, 2).unwrap());
        assert_eq!(adjoint(&s1).unwrap(), s2);
    }

    #[test]
    fn supertrace_of_identity_powers() {
        let space = SuperSpace::new(2, 2);
        let id2 = TensorOperator::identity(space, power_word(2));
        assert_eq!(id2.supertrace().unwrap(), rat(space.sdim() * space.sdim()));
    }

    #[test]
    fn equivariance_of_functor_images() {
        // every functor image commutes with the group action, including
        // the odd generators of the mixed case
        for group in [
            Group::Orthogonal(2),
            Group::Symplectic(2),
            Group::OrthoSymplectic(2, 2),
        ] {
            let space = group.space();
            for d in BrauerDiagram::enumerate(2, 2) {
                let f = functor_diagram(space, &d);
                for (x, p) in group.lie_basis() {
                    let rho2 = word_action(space, &x, p, &power_word(2));
                    assert_eq!(rho2.mul(&f.matrix), f.matrix.mul(&rho2));
                }
                for refl in group.reflections() {
                    let r2 = group_element_action(space, &refl, &power_word(2));
                    assert_eq!(r2.mul(&f.matrix), f.matrix.mul(&r2));
                }
            }
        }
    }

    #[test]
    fn functoriality_spot_checks_at_higher_valency() {
        // composable pairs through valency (3, 3) on a small orthogonal
        // space, with the loop power carried by the superdimension
        let space = SuperSpace::new(2, 0);
        let delta = rat(space.sdim());
        let left: Vec<_> = BrauerDiagram::enumerate(3, 3).into_iter().take(5).collect();
        let right: Vec<_> = BrauerDiagram::enumerate(3, 3).into_iter().skip(7).take(5).collect();
        for d1 in &left {
            for d2 in &right {
                let scaled = d1.compose(d2).unwrap();
                let mut lhs = functor_diagram(space, &scaled.diagram);
                for _ in 0..scaled.loops {
                    lhs = lhs.scale(&delta);
                }
                let rhs = functor_diagram(space, d1)
                    .compose(&functor_diagram(space, d2))
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn oracle_small_dimensions() {
        // Hom_{O(2)}(K, V (x) V) is spanned by c_0
        let dims = equivariant_hom(&Group::Orthogonal(2), &power_word(0), &power_word(2), 100_000)
            .unwrap();
        assert_eq!(dims.len(), 1);
        // Hom_{Sp(2)}(V, V) is 1-dimensional
        let dims = equivariant_hom(&Group::Symplectic(2), &power_word(1), &power_word(1), 100_000)
            .unwrap();
        assert_eq!(dims.len(), 1);
        // Hom_{GL(1|0)}(V (x) V*, K) is 1-dimensional
        let dims = equivariant_hom(
            &Group::GeneralLinear(1, 0),
            &vec![Factor::V, Factor::Dual],
            &vec![],
            100_000,
        )
        .unwrap();
        assert_eq!(dims.len(), 1);
        // SO(2) invariants of V (x) V have dimension 2, O(2) only 1
        let so = equivariant_hom(
            &Group::SpecialOrthogonal(2),
            &power_word(0),
            &power_word(2),
            100_000,
        )
        .unwrap();
        assert_eq!(so.len(), 2);
    }

    #[test]
    fn oriented_functor_generators() {
        use crate::oriented::generators as og;
        let space = SuperSpace::new(2, 1);
        let d = space.dim();
        // cap (+,-) is the signed evaluation
        let cap = functor_oriented(space, &og::cap_plus_minus());
        for x in 0..d {
            for y in 0..d {
                let expected = if x == y {
                    if space.parity(x) == 1 {
                        -Rat::one()
                    } else {
                        Rat::one()
                    }
                } else {
                    Rat::zero()
                };
                assert_eq!(cap.matrix.at(0, x * d + y), &expected);
            }
        }
        // cap (-,+) is the plain evaluation
        let cap = functor_oriented(space, &og::cap_minus_plus());
        for x in 0..d {
            for y in 0..d {
                let expected = if x == y { Rat::one() } else { Rat::zero() };
                assert_eq!(cap.matrix.at(0, x * d + y), &expected);
            }
        }
        // crossing is the super swap on V (x) V
        let swap = perm_operator(space, &Perm::adjacent(2, 0));
        let cross = functor_oriented(space, &og::cross());
        assert_eq!(cross.matrix, swap.matrix);
    }

    #[test]
    fn gl_relation_spot_checks() {
        use Factor::{Dual, V};
        for space in [SuperSpace::new(2, 0), SuperSpace::new(1, 1), SuperSpace::new(2, 1)] {
            let ops = gl_ops(space);
            let id_v = TensorOperator::identity(space, vec![V]);
            let id_d = TensorOperator::identity(space, vec![Dual]);
            // evaluation after coevaluation is the superdimension
            let s = ops.eval_vd.compose(&ops.coeval_vd).unwrap();
            assert_eq!(s.matrix.at(0, 0), &rat(space.sdim()));
            let s = ops.eval_dv.compose(&ops.coeval_dv).unwrap();
            assert_eq!(s.matrix.at(0, 0), &rat(space.sdim()));
            // the two zigzags on V
            let z = ops
                .eval_vd
                .tensor(&id_v)
                .compose(&id_v.tensor(&ops.coeval_dv))
                .unwrap();
            assert_eq!(z, id_v);
            let z = id_v
                .tensor(&ops.eval_dv)
                .compose(&ops.coeval_vd.tensor(&id_v))
                .unwrap();
            assert_eq!(z, id_v);
            // twist: (id (x) eval_{+-})(P (x) id)(id (x) coeval^{+-}) = id
            let tw = id_v
                .tensor(&ops.eval_vd)
                .compose(&ops.swap_vv.tensor(&id_d))
                .unwrap()
                .compose(&id_v.tensor(&ops.coeval_vd))
                .unwrap();
            assert_eq!(tw, id_v);
        }
    }

    #[test]
    fn oriented_functor_matches_gl_ops() {
        use crate::oriented::generators as og;
        for space in [SuperSpace::new(2, 0), SuperSpace::new(1, 1)] {
            let ops = gl_ops(space);
            assert_eq!(functor_oriented(space, &og::cup_plus_minus()), ops.coeval_vd);
            assert_eq!(functor_oriented(space, &og::cup_minus_plus()), ops.coeval_dv);
            assert_eq!(functor_oriented(space, &og::cap_plus_minus()), ops.eval_vd);
            assert_eq!(functor_oriented(space, &og::cap_minus_plus()), ops.eval_dv);
            assert_eq!(functor_oriented(space, &og::cross()), ops.swap_vv);
        }
    }

    #[test]
    fn oriented_functor_respects_composition() {
        for space in [SuperSpace::new(1, 1), SuperSpace::new(2, 1)] {
            let delta = rat(space.sdim());
            let eta = SignedSequence::parse("+-").unwrap();
            let basis = OrientedDiagram::enumerate(&eta, &eta);
            for a in &basis {
                for b in &basis {
                    let (ab, loops) = a.compose(b).unwrap();
                    let mut lhs = functor_oriented(space, &ab);
                    for _ in 0..loops {
                        lhs = lhs.scale(&delta);
                    }
                    let rhs = functor_oriented(space, a)
                        .compose(&functor_oriented(space, b))
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
