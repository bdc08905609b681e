//! Kernel generators and fundamental-theorem checks: the rectangle
//! quasi-idempotent of the symmetric group, the bent antisymmetrizers of
//! the orthogonal kernel, the symplectic kernel element, ideal closures by
//! exact rank, functor kernels, and the instance reports comparing both.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::diagram::{BrauerDiagram, Valency};
use crate::error::{Error, Result};
use crate::functor::{equivariant_hom, functor_sum, perm_operator, power_word};
use crate::linalg::RowSpace;
use crate::perm::Perm;
use crate::poly::{factorial, rat, ratio, Poly, Rat};
use crate::space::Group;
use crate::sum::DiagramSum;
use crate::word::{Gen, Slice};

/// The rectangle quasi-idempotent: row-symmetrized, column-antisymmetrized
/// element of the group algebra on (rows+1) x (cols+1) symbols, with its
/// computed quasi-idempotency constant.
#[derive(Clone, Debug)]
pub struct YoungRectangleIdempotent {
    pub rows_minus_one: usize,
    pub cols_minus_one: usize,
    pub element: DiagramSum,
    pub kappa: Rat,
}

/// Builds e(m, l) = (sum over row group) (signed sum over column group) in
/// degree (m+1)(l+1), and computes kappa with e^2 = kappa e.
pub fn young_idempotent(m: usize, l: usize) -> Result<YoungRectangleIdempotent> {
    let rows = m + 1;
    let cols = l + 1;
    let n = rows * cols;
    if n > 8 {
        return Err(Error::Budget(format!("rectangle has {n} boxes, cap is 8")));
    }
    // cell (r, c) holds symbol r*cols + c (0-based)
    let row_sets: Vec<Vec<usize>> =
        (0..rows).map(|r| (0..cols).map(|c| r * cols + c).collect()).collect();
    let col_sets: Vec<Vec<usize>> =
        (0..cols).map(|c| (0..rows).map(|r| r * cols + c).collect()).collect();
    let alpha_plus = subgroup_sum(n, &row_sets, false);
    let alpha_minus = subgroup_sum(n, &col_sets, true);
    let element = alpha_plus.compose(&alpha_minus)?;
    // kappa from the identity coefficient (the identity has coefficient 1
    // in e), then verified in full
    let square = element.compose(&element)?;
    let id_coeff = square.coeff_of(&BrauerDiagram::identity(n));
    let kappa = id_coeff.coeff(0);
    if square != element.scale_rat(&kappa) || kappa.is_zero() {
        return Err(Error::InvalidDiagram(
            "rectangle element is not quasi-idempotent".into(),
        ));
    }
    Ok(YoungRectangleIdempotent {
        rows_minus_one: m,
        cols_minus_one: l,
        element,
        kappa,
    })
}

/// Sum over the direct product of symmetric groups on the given disjoint
/// symbol sets, signed when requested.
fn subgroup_sum(n: usize, sets: &[Vec<usize>], signed: bool) -> DiagramSum {
    let mut elements = vec![Perm::identity(n)];
    for set in sets {
        let local = Perm::all(set.len());
        let mut next = Vec::with_capacity(elements.len() * local.len());
        for base in &elements {
            for p in &local {
                let mut images: Vec<usize> = base.images().to_vec();
                for (offset, &sym) in set.iter().enumerate() {
                    images[sym] = base.apply(set[p.apply(offset)]);
                }
                next.push(Perm::from_images(images));
            }
        }
        elements = next;
    }
    let mut out = DiagramSum::zero(n, n);
    for p in elements {
        let coeff = if signed { rat(p.sign()) } else { Rat::one() };
        out.add_term(BrauerDiagram::from_perm(&p), Poly::constant(coeff));
    }
    out
}

/// Bends the rightmost `p` strands of a permutation diagram around to the
/// right: bottom leg m+1-p+j becomes top node m+2-j and top leg m+1-p+j
/// becomes bottom node m+2-j, nested outward.
fn bend_diagram(d: &BrauerDiagram, p: usize) -> BrauerDiagram {
    let r = d.k;
    debug_assert_eq!(d.ell, r);
    let keep = r - p;
    let map = |node: usize| -> usize {
        if node <= r {
            if node <= keep {
                node
            } else {
                // bottom leg bends up: node keep + j -> top r + 1 - j + r
                r + (r + 1 - (node - keep))
            }
        } else {
            let t = node - r;
            if t <= keep {
                node
            } else {
                r + 1 - (t - keep)
            }
        }
    };
    BrauerDiagram::new(
        r,
        r,
        d.pairs().iter().map(|&(a, b)| (map(a), map(b))).collect(),
    )
    .unwrap()
}

/// The orthogonal kernel element E_i in degree m+1 built diagrammatically:
/// the rightmost m+1-i strands of the antisymmetrizer bent around.
pub fn e_element_diagrammatic(m: usize, i: usize) -> Result<DiagramSum> {
    if i > m + 1 {
        return Err(Error::IndexRange(format!("E_{i} undefined for m={m}")));
    }
    let p = m + 1 - i;
    let mut out = DiagramSum::zero(m + 1, m + 1);
    for w in Perm::all(m + 1) {
        out.add_term(
            bend_diagram(&BrauerDiagram::from_perm(&w), p),
            Poly::int(w.sign()),
        );
    }
    Ok(out)
}

/// The double antisymmetrizer F_i = A(1, i) A(i+1, m+1).
pub fn f_element(m: usize, i: usize) -> DiagramSum {
    let r = m + 1;
    DiagramSum::antisymmetrizer_range(r, 1, i)
        .compose(&DiagramSum::antisymmetrizer_range(r, i + 1, r))
        .expect("same degree")
}

/// The nested contraction e_i(j) = e_{i,i+1} e_{i-1,i+2} ... in degree m+1.
pub fn nested_contraction(m: usize, i: usize, j: usize) -> Result<DiagramSum> {
    let r = m + 1;
    let mut out = DiagramSum::identity(r);
    for s in 1..=j {
        if s > i || i + s > r {
            return Err(Error::IndexRange(format!("e_{i}({j}) leaves degree {r}")));
        }
        let pair = DiagramSum::from_diagram(BrauerDiagram::e_pair(r, i - s + 1, i + s)?);
        out = out.compose(&pair)?;
    }
    Ok(out)
}

/// The closed formula for E_i: an alternating sum of F_i e_i(j) F_i with
/// factorial coefficients.
pub fn e_element_formula(m: usize, i: usize) -> Result<DiagramSum> {
    if i > m + 1 {
        return Err(Error::IndexRange(format!("E_{i} undefined for m={m}")));
    }
    let f_i = f_element(m, i);
    let min_i = i.min(m + 1 - i);
    let mut out = DiagramSum::zero(m + 1, m + 1);
    for j in 0..=min_i {
        let c = Rat::one()
            / (factorial(i - j) * factorial(m + 1 - i - j) * factorial(j) * factorial(j));
        let xi = f_i.compose(&nested_contraction(m, i, j)?)?.compose(&f_i)?;
        let signed = if j % 2 == 0 { c } else { -c };
        out = out.add(&xi.scale_rat(&signed))?;
    }
    Ok(out)
}

/// The symplectic kernel element in degree n+1: the alternating-coefficient
/// sandwich sum, which equals the sum of all diagrams.
pub fn phi_element(n: usize) -> Result<DiagramSum> {
    let r = n + 1;
    let sigma = DiagramSum::symmetrizer(r, -1);
    let mut out = DiagramSum::zero(r, r);
    for k in 0..=(n + 1) / 2 {
        // E(k) = product of e_{n+2-2j} for j = 1..k
        let mut contraction = DiagramSum::identity(r);
        for j in 1..=k {
            let idx = n + 2 - 2 * j;
            contraction =
                contraction.compose(&DiagramSum::from_diagram(BrauerDiagram::e_i(r, idx)?))?;
        }
        let xi = sigma.compose(&contraction)?.compose(&sigma)?;
        let a_k = Rat::one()
            / (ratio(2, 1).pow_usize(2 * k) * factorial(k) * factorial(k) * factorial(n + 1 - 2 * k));
        out = out.add(&xi.scale_rat(&a_k))?;
    }
    Ok(out)
}

trait PowUsize {
    fn pow_usize(self, e: usize) -> Rat;
}

impl PowUsize for Rat {
    fn pow_usize(self, e: usize) -> Rat {
        let mut out = Rat::one();
        for _ in 0..e {
            out *= &self;
        }
        out
    }
}

/// The symplectic kernel generator of mixed degree: the degree-(2n+1)
/// antisymmetrizer with p-q nested caps on top, q top legs bent down and p
/// bottom legs bent up; lives in degree k = 2n+1-p+q.
pub fn d_pq_element(n: usize, p: usize, q: usize) -> Result<DiagramSum> {
    if q > p || p > n {
        return Err(Error::IndexRange(format!("need q <= p <= n, got p={p} q={q}")));
    }
    let box_deg = 2 * n + 1;
    let k = 2 * n + 1 - p + q;
    let straight_top = box_deg - 2 * (p - q) - q;
    let cap_lo = straight_top + 1;
    let cap_hi = straight_top + 2 * (p - q);
    let mut out = DiagramSum::zero(k, k);
    for w in Perm::all(box_deg) {
        // arcs of the permutation diagram, then join through the caps
        let cap_partner = |t: usize| -> usize { cap_lo + cap_hi - t };
        let map_bottom = |b: usize| -> usize {
            if b <= box_deg - p {
                b
            } else {
                k + (k + 1 - (b - (box_deg - p)))
            }
        };
        let map_top = |t: usize| -> usize {
            debug_assert!(t <= straight_top || t > cap_hi);
            if t <= straight_top {
                k + t
            } else {
                k + 1 - (t - (box_deg - q))
            }
        };
        let mut pairs = Vec::with_capacity(k);
        let mut seen_caps = vec![false; box_deg + 1];
        for b in 1..=box_deg {
            let t = w.apply(b - 1) + 1;
            if t < cap_lo || t > cap_hi {
                pairs.push((map_bottom(b), map_top(t)));
            } else if !seen_caps[t] {
                let t2 = cap_partner(t);
                seen_caps[t] = true;
                seen_caps[t2] = true;
                let b2 = w.inverse().apply(t2 - 1) + 1;
                pairs.push((map_bottom(b), map_bottom(b2)));
            }
        }
        out.add_term(BrauerDiagram::new(k, k, pairs)?, Poly::one());
    }
    Ok(out)
}

/// Vectorizes an endomorphism sum over the fixed diagram basis order.
fn vectorize(x: &DiagramSum, basis_index: &std::collections::HashMap<BrauerDiagram, usize>, at: &Rat) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); basis_index.len()];
    for (d, c) in x.terms() {
        v[basis_index[d]] = c.eval(at);
    }
    v
}

/// The two-sided ideal of the degree-r diagram algebra at a specialised
/// loop value generated by the given elements: closure under left and
/// right multiplication by the algebra generators, to a rank fixed point.
/// Returns the dimension and a basis.
pub fn algebra_ideal_span(
    generators: &[DiagramSum],
    r: usize,
    at: &Rat,
) -> Result<(usize, Vec<DiagramSum>)> {
    if r > 5 {
        return Err(Error::Budget(format!("degree {r} exceeds the cap of 5")));
    }
    let basis = BrauerDiagram::enumerate(r, r);
    let index: std::collections::HashMap<BrauerDiagram, usize> =
        basis.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
    let mut mult: Vec<DiagramSum> = Vec::new();
    for i in 1..r {
        mult.push(DiagramSum::from_diagram(BrauerDiagram::s_i(r, i)?));
        mult.push(DiagramSum::from_diagram(BrauerDiagram::e_i(r, i)?));
    }
    ideal_closure(generators, &basis, &index, &mult, at)
}

/// The two-sided ideal inside the group algebra of the symmetric group
/// (permutation diagrams only, closure by the transpositions).
pub fn sym_algebra_ideal_span(
    generators: &[DiagramSum],
    r: usize,
    at: &Rat,
) -> Result<(usize, Vec<DiagramSum>)> {
    let basis: Vec<BrauerDiagram> = Perm::all(r).iter().map(BrauerDiagram::from_perm).collect();
    let index: std::collections::HashMap<BrauerDiagram, usize> =
        basis.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
    let mut mult: Vec<DiagramSum> = Vec::new();
    for i in 1..r {
        mult.push(DiagramSum::from_diagram(BrauerDiagram::s_i(r, i)?));
    }
    ideal_closure(generators, &basis, &index, &mult, at)
}

fn ideal_closure(
    generators: &[DiagramSum],
    basis: &[BrauerDiagram],
    index: &std::collections::HashMap<BrauerDiagram, usize>,
    mult: &[DiagramSum],
    at: &Rat,
) -> Result<(usize, Vec<DiagramSum>)> {
    let _ = basis;
    let mut space = RowSpace::new(index.len());
    let mut worklist: Vec<DiagramSum> = Vec::new();
    for g in generators {
        let g = g.specialize(at);
        if space.insert(vectorize(&g, index, at)) {
            worklist.push(g.clone());
        }
    }
    let mut kept: Vec<DiagramSum> = worklist.clone();
    while let Some(x) = worklist.pop() {
        for m in mult {
            for product in [m.compose(&x)?, x.compose(m)?] {
                let product = product.specialize(at);
                if space.insert(vectorize(&product, index, at)) {
                    worklist.push(product.clone());
                    kept.push(product);
                }
            }
        }
    }
    Ok((space.rank(), kept))
}

/// Windowed tensor-ideal closure: the span of everything reachable from
/// the generator by composing with elementary slices (top and bottom) and
/// tensoring with identity strands, inside valencies with k + l bounded by
/// the window. Returns the basis at the requested valency.
pub fn tensor_ideal_span(
    generator: &DiagramSum,
    target: Valency,
    at: &Rat,
    window: usize,
) -> Result<(usize, Vec<DiagramSum>)> {
    use std::collections::HashMap;
    let mut spaces: HashMap<Valency, (RowSpace, Vec<BrauerDiagram>, HashMap<BrauerDiagram, usize>)> =
        HashMap::new();
    let ensure = |spaces: &mut HashMap<
        Valency,
        (RowSpace, Vec<BrauerDiagram>, HashMap<BrauerDiagram, usize>),
    >,
                      v: Valency| {
        spaces.entry(v).or_insert_with(|| {
            let basis = BrauerDiagram::enumerate(v.k, v.ell);
            let index: HashMap<BrauerDiagram, usize> =
                basis.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
            (RowSpace::new(basis.len().max(1)), basis, index)
        });
    };
    let mut elements: HashMap<Valency, Vec<DiagramSum>> = HashMap::new();
    let mut worklist: Vec<DiagramSum> = Vec::new();
    let g = generator.specialize(at);
    let gv = g.valency();
    if gv.k + gv.ell > window {
        return Err(Error::Budget("generator exceeds the window".into()));
    }
    if !g.is_zero() {
        ensure(&mut spaces, gv);
        let (space, _, index) = spaces.get_mut(&gv).unwrap();
        if space.insert(vectorize(&g, index, at)) {
            elements.entry(gv).or_default().push(g.clone());
            worklist.push(g);
        }
    }
    while let Some(x) = worklist.pop() {
        let v = x.valency();
        let mut moves: Vec<DiagramSum> = Vec::new();
        // tensor with an identity strand on either side
        if v.k + v.ell + 2 <= window {
            moves.push(DiagramSum::identity(1).tensor(&x));
            moves.push(x.tensor(&DiagramSum::identity(1)));
        }
        // compose with elementary slices above
        for left in 0..=v.ell {
            for gen in [Gen::A, Gen::U, Gen::X] {
                let needed = gen.in_width();
                if left + needed > v.ell {
                    continue;
                }
                let slice = Slice::new(left, gen, v.ell - left - needed);
                let out_width = slice.out_width();
                if v.k + out_width > window {
                    continue;
                }
                moves.push(
                    DiagramSum::from_diagram(slice.to_diagram()).compose(&x)?,
                );
            }
        }
        // compose with elementary slices below
        for left in 0..=v.k {
            for gen in [Gen::A, Gen::U, Gen::X] {
                let out_w = gen.out_width();
                if left + out_w > v.k {
                    continue;
                }
                let right = v.k - left - out_w;
                let slice = Slice::new(left, gen, right);
                if slice.in_width() + v.ell > window {
                    continue;
                }
                moves.push(x.compose(&DiagramSum::from_diagram(slice.to_diagram()))?);
            }
        }
        for next in moves {
            let next = next.specialize(at);
            if next.is_zero() {
                continue;
            }
            let nv = next.valency();
            ensure(&mut spaces, nv);
            let (space, _, index) = spaces.get_mut(&nv).unwrap();
            if space.insert(vectorize(&next, index, at)) {
                elements.entry(nv).or_default().push(next.clone());
                worklist.push(next);
            }
        }
    }
    let found = elements.remove(&target).unwrap_or_default();
    let dim = spaces.get(&target).map_or(0, |(s, _, _)| s.rank());
    Ok((dim, found))
}

/// Basis of the kernel of the functor on the (k, l) hom space, as exact
/// nullspace vectors over the diagram basis.
pub fn kernel_basis(group: &Group, k: usize, l: usize, max_entries: usize) -> Result<Vec<DiagramSum>> {
    if !group.has_form() {
        return Err(Error::InvalidDiagram(
            "use sym_kernel_basis for the general linear case".into(),
        ));
    }
    let space = group.space();
    let basis = BrauerDiagram::enumerate(k, l);
    let dim = space.dim().pow((k + l) as u32);
    if dim * basis.len().max(1) > max_entries {
        return Err(Error::Budget(format!(
            "kernel computation needs {} entries",
            dim * basis.len().max(1)
        )));
    }
    let mut images = crate::linalg::Matrix::zero(dim.max(1), basis.len());
    for (j, d) in basis.iter().enumerate() {
        let f = functor_sum(space, &DiagramSum::from_diagram(d.clone()));
        for (i, e) in f.matrix.entries_flat().iter().enumerate() {
            if !e.is_zero() {
                images.set(i, j, e.clone());
            }
        }
    }
    let mut out = Vec::new();
    for v in images.nullspace() {
        let mut sum = DiagramSum::zero(k, l);
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                sum.add_term(basis[j].clone(), Poly::constant(c.clone()));
            }
        }
        out.push(sum);
    }
    Ok(out)
}

/// Kernel of the symmetric-group action map on r-th tensor power for the
/// general linear case.
pub fn sym_kernel_basis(group: &Group, r: usize, max_entries: usize) -> Result<Vec<DiagramSum>> {
    let space = group.space();
    let perms = Perm::all(r);
    let dim = space.dim().pow(2 * r as u32);
    if dim * perms.len() > max_entries {
        return Err(Error::Budget("kernel computation exceeds the cap".into()));
    }
    let mut images = crate::linalg::Matrix::zero(dim.max(1), perms.len());
    for (j, p) in perms.iter().enumerate() {
        let f = perm_operator(space, p);
        for (i, e) in f.matrix.entries_flat().iter().enumerate() {
            if !e.is_zero() {
                images.set(i, j, e.clone());
            }
        }
    }
    let mut out = Vec::new();
    for v in images.nullspace() {
        let mut sum = DiagramSum::zero(r, r);
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                sum.add_term(BrauerDiagram::from_perm(&perms[j]), Poly::constant(c.clone()));
            }
        }
        out.push(sum);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct FftReport {
    pub group: String,
    pub k: usize,
    pub l: usize,
    pub functor_rank: usize,
    pub oracle_dim: usize,
    pub pass: bool,
}

/// First-fundamental-theorem instance: the rank of the functor on the
/// diagram basis must match the equivariant oracle dimension.
pub fn verify_fft(group: &Group, k: usize, l: usize, max_entries: usize) -> Result<FftReport> {
    let space = group.space();
    let dim = space.dim().pow((k + l) as u32);
    if dim > max_entries {
        return Err(Error::Budget(format!("fft check needs {dim} entries")));
    }
    let mut span = RowSpace::new(dim.max(1));
    if group.has_form() {
        for d in BrauerDiagram::enumerate(k, l) {
            let f = functor_sum(space, &DiagramSum::from_diagram(d));
            span.insert(f.matrix.entries_flat().to_vec());
        }
    } else {
        if k != l {
            return Err(Error::InvalidDiagram(
                "general linear instances use endomorphism spaces".into(),
            ));
        }
        for p in Perm::all(k) {
            let f = perm_operator(space, &p);
            span.insert(f.matrix.entries_flat().to_vec());
        }
    }
    let oracle = equivariant_hom(group, &power_word(k), &power_word(l), max_entries)?;
    Ok(FftReport {
        group: group.name(),
        k,
        l,
        functor_rank: span.rank(),
        oracle_dim: oracle.len(),
        pass: span.rank() == oracle.len(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SftReport {
    pub group: String,
    pub r: usize,
    pub kernel_dim: usize,
    pub ideal_dim: usize,
    pub ideal_inside_kernel: bool,
    pub pass: bool,
}

/// Second-fundamental-theorem instance: the functor kernel on degree-r
/// endomorphisms equals the two-sided ideal of the named generator.
/// Equality is dimension match plus one-way containment via the functor.
pub fn verify_sft(group: &Group, r: usize, max_entries: usize) -> Result<SftReport> {
    let at = rat(group.sdim());
    let space = group.space();
    let (kernel_dim, ideal_dim, ideal_basis): (usize, usize, Vec<DiagramSum>) = match group {
        Group::Orthogonal(m) | Group::SpecialOrthogonal(m) => {
            let kernel = kernel_basis(group, r, r, max_entries)?;
            let ell = (m + 1) / 2;
            let gen = e_element_diagrammatic(*m, ell)?;
            let embedded = embed_endomorphism(&gen, r)?;
            let (dim, basis) = algebra_ideal_span(&[embedded], r, &at)?;
            (kernel.len(), dim, basis)
        }
        Group::Symplectic(two_n) => {
            let n = two_n / 2;
            let kernel = kernel_basis(group, r, r, max_entries)?;
            let gen = phi_element(n)?;
            let embedded = embed_endomorphism(&gen, r)?;
            let (dim, basis) = algebra_ideal_span(&[embedded], r, &at)?;
            (kernel.len(), dim, basis)
        }
        Group::GeneralLinear(m, l) => {
            let kernel = sym_kernel_basis(group, r, max_entries)?;
            let young = young_idempotent(*m, *l)?;
            let embedded = embed_endomorphism(&young.element, r)?;
            let (dim, basis) = sym_algebra_ideal_span(&[embedded], r, &at)?;
            (kernel.len(), dim, basis)
        }
        Group::OrthoSymplectic(_, _) => {
            return Err(Error::InvalidDiagram(
                "no single named generator for the mixed case at desk scale".into(),
            ))
        }
    };
    let ideal_inside_kernel = ideal_basis
        .iter()
        .all(|x| functor_sum(space, x).is_zero());
    Ok(SftReport {
        group: group.name(),
        r,
        kernel_dim,
        ideal_dim,
        ideal_inside_kernel,
        pass: kernel_dim == ideal_dim && ideal_inside_kernel,
    })
}

/// Embeds a degree-s endomorphism into degree r by tensoring identity
/// strands on the right.
pub fn embed_endomorphism(x: &DiagramSum, r: usize) -> Result<DiagramSum> {
    let v = x.valency();
    if v.k != v.ell {
        return Err(Error::InvalidDiagram("embedding needs an endomorphism".into()));
    }
    if v.k > r {
        return Err(Error::IndexRange(format!(
            "cannot embed degree {} into degree {r}",
            v.k
        )));
    }
    Ok(x.tensor(&DiagramSum::identity(r - v.k)))
}

/// The alternating binomial sum that controls the vanishing of the
/// symplectic kernel element's supertrace.
pub fn phi_trace_binomial_sum(n: usize) -> Rat {
    let mut acc = Rat::zero();
    for k in 0..=(n + 1) / 2 {
        let term = crate::poly::binomial(n, k) * crate::poly::binomial(2 * n - 2 * k, n - 1);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::SuperSpace;

    #[test]
    fn young_small_cases() {
        // e(1,0) = 1 - (12)
        let y = young_idempotent(1, 0).unwrap();
        let expected = DiagramSum::symmetrizer(2, 1);
        assert_eq!(y.element, expected);
        assert_eq!(y.kappa, rat(2));
        // e(0,1) = 1 + (12)
        let y = young_idempotent(0, 1).unwrap();
        assert_eq!(y.element, DiagramSum::symmetrizer(2, -1));
        assert_eq!(y.kappa, rat(2));
        // e(1,1) has 16 supported terms
        let y = young_idempotent(1, 1).unwrap();
        assert_eq!(y.element.len(), 16);
        // kappa = n!/f^lambda = 24/2 for the square
        assert_eq!(y.kappa, rat(12));
    }

    #[test]
    fn e_elements_match_both_routes() {
        for m in 1..=2 {
            for i in 0..=m + 1 {
                let diag = e_element_diagrammatic(m, i).unwrap();
                let formula = e_element_formula(m, i).unwrap();
                assert_eq!(diag, formula, "m={m}, i={i}");
            }
        }
    }

    #[test]
    fn e_small_values() {
        // m=1: E_0 = 1 - s_1, E_1 = 1 - e_1
        let e0 = e_element_diagrammatic(1, 0).unwrap();
        assert_eq!(e0, DiagramSum::symmetrizer(2, 1));
        let e1 = e_element_diagrammatic(1, 1).unwrap();
        let expected = DiagramSum::identity(2)
            .sub(&DiagramSum::from_diagram(BrauerDiagram::e_i(2, 1).unwrap()))
            .unwrap();
        assert_eq!(e1, expected);
        // integrality: every coefficient is an integer
        for m in 1..=3 {
            for i in 0..=m + 1 {
                let e = e_element_diagrammatic(m, i).unwrap();
                for (_, c) in e.terms() {
                    for power in 0..=c.degree().unwrap_or(0) {
                        assert!(c.coeff(power).denom().is_one() || c.coeff(power).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn e_annihilation_and_sandwich() {
        // in degree m+1 at loop value m: e_i E_p = E_p e_i = 0 and
        // F_p E_p = E_p F_p = p!(m+1-p)! E_p
        for m in 1..=2usize {
            let at = rat(m as i64);
            for p in 0..=m + 1 {
                let e_p = e_element_diagrammatic(m, p).unwrap();
                for i in 1..=m {
                    let ei = DiagramSum::from_diagram(BrauerDiagram::e_i(m + 1, i).unwrap());
                    assert!(ei.compose(&e_p).unwrap().specialize(&at).is_zero());
                    assert!(e_p.compose(&ei).unwrap().specialize(&at).is_zero());
                }
                let f_p = f_element(m, p);
                let scale = factorial(p) * factorial(m + 1 - p);
                let left = f_p.compose(&e_p).unwrap().specialize(&at);
                let right = e_p.compose(&f_p).unwrap().specialize(&at);
                let expected = e_p.specialize(&at).scale_rat(&scale);
                assert_eq!(left, expected, "m={m} p={p}");
                assert_eq!(right, expected, "m={m} p={p}");
            }
        }
    }

    #[test]
    fn e_star_and_braiding_conjugation() {
        for m in 1..=3usize {
            for i in 0..=m + 1 {
                let e_i = e_element_diagrammatic(m, i).unwrap();
                let e_opp = e_element_diagrammatic(m, m + 1 - i).unwrap();
                // the rotation anti-involution swaps the index
                assert_eq!(e_i.star_sharp(), e_opp);
                // conjugation by the block braiding swaps it too
                let x_fwd =
                    DiagramSum::from_diagram(BrauerDiagram::x_cross(i, m + 1 - i));
                let x_bwd =
                    DiagramSum::from_diagram(BrauerDiagram::x_cross(m + 1 - i, i));
                let conj = x_fwd.compose(&e_i).unwrap().compose(&x_bwd).unwrap();
                assert_eq!(conj, e_opp, "m={m}, i={i}");
            }
        }
    }

    #[test]
    fn low_through_diagrams_annihilate_e() {
        for m in 1..=2usize {
            let at = rat(m as i64);
            for i in 0..=m + 1 {
                let e_i = e_element_diagrammatic(m, i).unwrap();
                for d in BrauerDiagram::enumerate(m + 1, m + 1) {
                    if d.through_strings() == m + 1 {
                        continue;
                    }
                    let ds = DiagramSum::from_diagram(d);
                    assert!(ds.compose(&e_i).unwrap().specialize(&at).is_zero());
                    assert!(e_i.compose(&ds).unwrap().specialize(&at).is_zero());
                }
            }
        }
    }

    #[test]
    fn phi_is_the_sum_of_all_diagrams() {
        for n in 1..=3 {
            let phi = phi_element(n).unwrap();
            let all = BrauerDiagram::enumerate(n + 1, n + 1);
            assert_eq!(phi.len(), all.len(), "n={n}");
            for d in all {
                assert_eq!(phi.coeff_of(&d), Poly::one(), "n={n}");
            }
        }
    }

    #[test]
    fn phi_properties() {
        for n in 1..=2usize {
            let at = rat(-2 * (n as i64));
            let phi = phi_element(n).unwrap();
            // e_i Phi = Phi e_i = 0
            for i in 1..=n {
                let ei = DiagramSum::from_diagram(BrauerDiagram::e_i(n + 1, i).unwrap());
                assert!(ei.compose(&phi).unwrap().specialize(&at).is_zero());
                assert!(phi.compose(&ei).unwrap().specialize(&at).is_zero());
            }
            // Phi^2 = (n+1)! Phi
            let square = phi.compose(&phi).unwrap().specialize(&at);
            assert_eq!(square, phi.specialize(&at).scale_rat(&factorial(n + 1)));
            // star-invariance
            assert_eq!(phi.star_sharp(), phi);
            // the functor kills it
            let space = SuperSpace::new(0, 2 * n);
            assert!(functor_sum(space, &phi).is_zero(), "n={n}");
        }
    }

    #[test]
    fn phi_generates_a_line() {
        // the ideal of Phi in degree n+1 is one-dimensional
        for n in 1..=2usize {
            let at = rat(-2 * (n as i64));
            let phi = phi_element(n).unwrap();
            let (dim, _) = algebra_ideal_span(&[phi], n + 1, &at).unwrap();
            assert_eq!(dim, 1, "n={n}");
        }
    }

    #[test]
    fn binomial_sum_vanishes() {
        assert_eq!(
            phi_trace_binomial_sum(2),
            Rat::zero(),
            "n=2: 4 - 4 = 0"
        );
        for n in 1..=4 {
            assert!(phi_trace_binomial_sum(n).is_zero(), "n={n}");
        }
    }

    #[test]
    fn d_pq_shapes() {
        // D(0,0) is the full symmetrizer sum
        let d = d_pq_element(1, 0, 0).unwrap();
        assert_eq!(d, DiagramSum::symmetrizer(3, -1));
        // n=1: D(1,0) lives in degree 2 and is twice the sum of all
        // degree-2 diagrams (the symplectic kernel element, doubled)
        let d = d_pq_element(1, 1, 0).unwrap();
        assert_eq!(d.valency(), Valency::new(2, 2));
        assert_eq!(d, phi_element(1).unwrap().scale_rat(&rat(2)));
        // the functor kills every D(p,q) and its rotation
        for (n, p, q) in [(1, 1, 0), (1, 1, 1), (2, 1, 0), (2, 2, 1)] {
            let d = d_pq_element(n, p, q).unwrap();
            let space = SuperSpace::new(0, 2 * n);
            assert!(functor_sum(space, &d).is_zero(), "n={n} p={p} q={q}");
            if n == 1 {
                assert!(
                    functor_sum(space, &d.star_sharp()).is_zero(),
                    "rotated n={n} p={p} q={q}"
                );
            }
        }
    }

    #[test]
    fn ideal_examples() {
        // <E_1> in degree 2 at loop value 1 has dimension 2
        let e1 = e_element_diagrammatic(1, 1).unwrap();
        let (dim, _) = algebra_ideal_span(&[e1], 2, &rat(1)).unwrap();
        assert_eq!(dim, 2);
        // the zero ideal
        let (dim, _) = algebra_ideal_span(&[DiagramSum::zero(2, 2)], 2, &rat(1)).unwrap();
        assert_eq!(dim, 0);
        // the ideal of e(1,0) inside the degree-2 group algebra
        let y = young_idempotent(1, 0).unwrap();
        let (dim, _) = sym_algebra_ideal_span(&[y.element], 2, &rat(1)).unwrap();
        assert_eq!(dim, 1);
    }

    #[test]
    fn kernels_match_reports() {
        // O(1) at r=2: kernel dim 2, generated by E_1
        let report = verify_sft(&Group::Orthogonal(1), 2, 1_000_000).unwrap();
        assert_eq!(report.kernel_dim, 2);
        assert_eq!(report.ideal_dim, 2);
        assert!(report.pass);
        // Sp(2) at r=2: kernel dim 1, generated by Phi
        let report = verify_sft(&Group::Symplectic(2), 2, 1_000_000).unwrap();
        assert_eq!(report.kernel_dim, 1);
        assert!(report.pass);
        // GL(1|0) at r=2: kernel of the action map is the line of e(1,0)
        let report = verify_sft(&Group::GeneralLinear(1, 0), 2, 1_000_000).unwrap();
        assert_eq!(report.kernel_dim, 1);
        assert!(report.pass);
        // O(3) at r=2 is injective
        let kernel = kernel_basis(&Group::Orthogonal(3), 2, 2, 1_000_000).unwrap();
        assert!(kernel.is_empty());
    }

    #[test]
    fn fft_examples() {
        let report = verify_fft(&Group::Orthogonal(3), 2, 2, 4_000_000).unwrap();
        assert_eq!(report.functor_rank, 3);
        assert_eq!(report.oracle_dim, 3);
        assert!(report.pass);
        let report = verify_fft(&Group::Symplectic(2), 0, 2, 1_000_000).unwrap();
        assert_eq!(report.functor_rank, 1);
        assert!(report.pass);
        let report = verify_fft(&Group::GeneralLinear(2, 1), 2, 2, 4_000_000).unwrap();
        assert_eq!(report.functor_rank, 2);
        assert_eq!(report.oracle_dim, 2);
        assert!(report.pass);
    }

    #[test]
    fn tensor_ideal_examples() {
        // the tensor ideal of E_1 at (2,2) for O(1) has the kernel's
        // dimension
        let e1 = e_element_diagrammatic(1, 1).unwrap();
        let (dim, _) = tensor_ideal_span(&e1, Valency::new(2, 2), &rat(1), 8).unwrap();
        assert_eq!(dim, 2);
        // the zero generator spans nothing
        let (dim, basis) =
            tensor_ideal_span(&DiagramSum::zero(2, 2), Valency::new(2, 2), &rat(1), 8).unwrap();
        assert_eq!(dim, 0);
        assert!(basis.is_empty());
    }

    #[test]
    fn functor_kills_rectangle_idempotents() {
        // F(e(m, 2n)) = 0 on the orthosymplectic space of size (m, 2n)
        for (m, two_n) in [(1usize, 0usize), (0, 2), (1, 2)] {
            let y = young_idempotent(m, two_n).unwrap();
            let space = SuperSpace::new(m, two_n);
            assert!(
                functor_sum(space, &y.element).is_zero(),
                "(m, 2n) = ({m}, {two_n})"
            );
        }
    }
}
