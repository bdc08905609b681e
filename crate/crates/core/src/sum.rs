//! Formal linear combinations of Brauer diagrams with coefficients in the
//! polynomial ring of the loop parameter over exact rationals.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::diagram::{BrauerDiagram, ScaledDiagram, Valency};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::poly::{Poly, Rat};

/// A morphism of the linearised diagram category: a finite formal sum of
/// (k, ell) diagrams. The empty sum is the zero morphism.
#[derive(Clone, PartialEq, Eq)]
pub struct DiagramSum {
    valency: Valency,
    terms: BTreeMap<BrauerDiagram, Poly>,
}

impl fmt::Debug for DiagramSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sum{}[", self.valency)?;
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{d:?}")?;
        }
        write!(f, "]")
    }
}

impl DiagramSum {
    pub fn zero(k: usize, ell: usize) -> Self {
        DiagramSum { valency: Valency::new(k, ell), terms: BTreeMap::new() }
    }

    pub fn from_diagram(d: BrauerDiagram) -> Self {
        let valency = d.valency();
        let mut terms = BTreeMap::new();
        terms.insert(d, Poly::one());
        DiagramSum { valency, terms }
    }

    pub fn from_scaled(s: ScaledDiagram) -> Self {
        let valency = s.diagram.valency();
        let mut terms = BTreeMap::new();
        terms.insert(s.diagram, Poly::delta().pow(s.loops));
        DiagramSum { valency, terms }
    }

    pub fn identity(r: usize) -> Self {
        DiagramSum::from_diagram(BrauerDiagram::identity(r))
    }

    pub fn term(d: BrauerDiagram, c: Poly) -> Self {
        let mut s = DiagramSum::zero(d.k, d.ell);
        s.add_term(d, c);
        s
    }

    pub fn valency(&self) -> Valency {
        self.valency
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BrauerDiagram, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, d: &BrauerDiagram) -> Poly {
        self.terms.get(d).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add_term(&mut self, d: BrauerDiagram, c: Poly) {
        debug_assert_eq!(d.valency(), self.valency);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(d);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let next = &*o.get() + &c;
                if next.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = next;
                }
            }
        }
    }

    pub fn add(&self, rhs: &DiagramSum) -> Result<DiagramSum> {
        if self.valency != rhs.valency {
            return Err(Error::ValencyMismatch(
                self.valency.k,
                self.valency.ell,
                rhs.valency.k,
                rhs.valency.ell,
            ));
        }
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &DiagramSum) -> Result<DiagramSum> {
        self.add(&rhs.scale(&Poly::int(-1)))
    }

    pub fn scale(&self, c: &Poly) -> DiagramSum {
        let mut out = DiagramSum::zero(self.valency.k, self.valency.ell);
        for (d, p) in &self.terms {
            out.add_term(d.clone(), p * c);
        }
        out
    }

    pub fn scale_rat(&self, c: &Rat) -> DiagramSum {
        self.scale(&Poly::constant(c.clone()))
    }

    /// Bilinear extension of diagram composition; each extracted loop
    /// becomes a factor of the loop parameter.
    pub fn compose(&self, rhs: &DiagramSum) -> Result<DiagramSum> {
        if self.valency.k != rhs.valency.ell {
            return Err(Error::ValencyMismatch(
                self.valency.k,
                self.valency.ell,
                rhs.valency.k,
                rhs.valency.ell,
            ));
        }
        let mut out = DiagramSum::zero(rhs.valency.k, self.valency.ell);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                let scaled = d1.compose(d2)?;
                let coeff = &(c1 * c2) * &Poly::delta().pow(scaled.loops);
                out.add_term(scaled.diagram, coeff);
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, rhs: &DiagramSum) -> DiagramSum {
        let mut out = DiagramSum::zero(
            self.valency.k + rhs.valency.k,
            self.valency.ell + rhs.valency.ell,
        );
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                out.add_term(d1.tensor(d2), c1 * c2);
            }
        }
        out
    }

    /// Evaluation homomorphism sending the loop parameter to `at`.
    pub fn specialize(&self, at: &Rat) -> DiagramSum {
        let mut out = DiagramSum::zero(self.valency.k, self.valency.ell);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), Poly::constant(c.eval(at)));
        }
        out
    }

    /// Term-wise star (reflection in a horizontal line); anti-multiplicative
    /// for composition.
    pub fn star(&self) -> DiagramSum {
        let mut out = DiagramSum::zero(self.valency.ell, self.valency.k);
        for (d, c) in &self.terms {
            out.add_term(d.star(), c.clone());
        }
        out
    }

    /// Term-wise sharp (reflection in a vertical line).
    pub fn sharp(&self) -> DiagramSum {
        let mut out = DiagramSum::zero(self.valency.k, self.valency.ell);
        for (d, c) in &self.terms {
            out.add_term(d.sharp(), c.clone());
        }
        out
    }

    /// Term-wise composite anti-involution D -> (D sharp) star.
    pub fn star_sharp(&self) -> DiagramSum {
        self.sharp().star()
    }

    /// The sum over Sym_r of (-eps)^length sigma; eps is +1 or -1.
    pub fn symmetrizer(r: usize, eps: i64) -> DiagramSum {
        assert!(eps == 1 || eps == -1);
        let mut out = DiagramSum::zero(r, r);
        for p in Perm::all(r) {
            let sign = if eps == 1 && p.inversions() % 2 == 1 { -1 } else { 1 };
            out.add_term(BrauerDiagram::from_perm(&p), Poly::int(sign));
        }
        out
    }

    /// Signed sum over the permutations moving only positions lo..=hi
    /// (1-based) inside degree r, with sign (-1)^length. The unnormalised
    /// antisymmetrizer of a consecutive block.
    pub fn antisymmetrizer_range(r: usize, lo: usize, hi: usize) -> DiagramSum {
        if lo >= hi {
            return DiagramSum::identity(r);
        }
        let width = hi - lo + 1;
        let mut out = DiagramSum::zero(r, r);
        for p in Perm::all(width) {
            let mut images: Vec<usize> = (0..r).collect();
            for (offset, &im) in p.images().iter().enumerate() {
                images[lo - 1 + offset] = lo - 1 + im;
            }
            let full = Perm::from_images(images);
            out.add_term(BrauerDiagram::from_perm(&full), Poly::int(p.sign()));
        }
        out
    }

    /// Closes the rightmost q strands of an endomorphism around to the right:
    /// (I^(r-q) tensor A_q) after (x tensor I_q) after (I^(r-q) tensor U_q).
    pub fn partial_close(&self, q: usize) -> Result<DiagramSum> {
        let r = self.valency.k;
        if self.valency.ell != r {
            return Err(Error::InvalidDiagram(format!(
                "partial_close needs an endomorphism, got {}",
                self.valency
            )));
        }
        if q > r {
            return Err(Error::IndexRange(format!("cannot close {q} of {r} strands")));
        }
        let rest = r - q;
        let cap = DiagramSum::from_diagram(
            BrauerDiagram::identity(rest).tensor(&BrauerDiagram::a_q(q)),
        );
        let cup = DiagramSum::from_diagram(
            BrauerDiagram::identity(rest).tensor(&BrauerDiagram::u_q(q)),
        );
        let mid = self.tensor(&DiagramSum::identity(q));
        cap.compose(&mid)?.compose(&cup)
    }
}

/// Serialized form: {"valency":[k,l],"terms":[{"pairs":..., "coeff":...}]}.
#[derive(Serialize, Deserialize)]
struct SumRepr {
    valency: (usize, usize),
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    pairs: Vec<(usize, usize)>,
    coeff: Poly,
}

impl Serialize for DiagramSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = SumRepr {
            valency: (self.valency.k, self.valency.ell),
            terms: self
                .terms
                .iter()
                .map(|(d, c)| TermRepr { pairs: d.pairs().to_vec(), coeff: c.clone() })
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagramSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SumRepr::deserialize(d)?;
        let (k, ell) = repr.valency;
        let mut out = DiagramSum::zero(k, ell);
        for t in repr.terms {
            let diag = BrauerDiagram::new(k, ell, t.pairs).map_err(serde::de::Error::custom)?;
            out.add_term(diag, t.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn s1_sum(r: usize) -> DiagramSum {
        DiagramSum::from_diagram(BrauerDiagram::s_i(r, 1).unwrap())
    }

    #[test]
    fn e1_times_e1_is_delta_e1() {
        let e1 = DiagramSum::from_diagram(BrauerDiagram::e_i(2, 1).unwrap());
        let sq = e1.compose(&e1).unwrap();
        assert_eq!(sq, e1.scale(&Poly::delta()));
    }

    #[test]
    fn zero_composes_to_zero() {
        let z = DiagramSum::zero(2, 2);
        let e1 = DiagramSum::from_diagram(BrauerDiagram::e_i(2, 1).unwrap());
        assert!(z.compose(&e1).unwrap().is_zero());
        assert!(e1.compose(&z).unwrap().is_zero());
    }

    #[test]
    fn sym_projector_annihilates_antisym() {
        // (1 + s1)(1 - s1) = 0 in degree 2
        let one = DiagramSum::identity(2);
        let plus = one.add(&s1_sum(2)).unwrap();
        let minus = one.sub(&s1_sum(2)).unwrap();
        assert!(plus.compose(&minus).unwrap().is_zero());
    }

    #[test]
    fn symmetrizer_small_cases() {
        let one = DiagramSum::identity(2);
        assert_eq!(
            DiagramSum::symmetrizer(2, 1),
            one.sub(&s1_sum(2)).unwrap()
        );
        assert_eq!(
            DiagramSum::symmetrizer(2, -1),
            one.add(&s1_sum(2)).unwrap()
        );
        assert_eq!(DiagramSum::symmetrizer(1, 1), DiagramSum::identity(1));
        assert_eq!(DiagramSum::symmetrizer(1, -1), DiagramSum::identity(1));
    }

    #[test]
    fn symmetrizer_is_quasi_idempotent() {
        for r in 0..=5 {
            for eps in [1i64, -1] {
                let s = DiagramSum::symmetrizer(r, eps);
                let sq = s.compose(&s).unwrap();
                assert_eq!(sq, s.scale(&Poly::constant(crate::poly::factorial(r))));
            }
        }
    }

    #[test]
    fn partial_close_examples() {
        // closing one strand of the identity creates one loop
        let id2 = DiagramSum::identity(2);
        assert_eq!(
            id2.partial_close(1).unwrap(),
            DiagramSum::identity(1).scale(&Poly::delta())
        );
        // closing one strand of s1 straightens it
        assert_eq!(s1_sum(2).partial_close(1).unwrap(), DiagramSum::identity(1));
        // closing one strand of 1 + s1 gives (delta + 1) * identity
        let sig = DiagramSum::symmetrizer(2, -1);
        assert_eq!(
            sig.partial_close(1).unwrap(),
            DiagramSum::identity(1).scale(&(&Poly::delta() + &Poly::one()))
        );
    }

    #[test]
    fn specialize_evaluates() {
        let sig = DiagramSum::symmetrizer(2, -1);
        let closed = sig.partial_close(1).unwrap();
        let at = closed.specialize(&rat(-2));
        assert_eq!(at, DiagramSum::identity(1).scale(&Poly::int(-1)));
        assert!(DiagramSum::zero(1, 1).specialize(&rat(7)).is_zero());
    }

    #[test]
    fn interchange_law() {
        let top: Vec<_> = BrauerDiagram::enumerate(2, 2);
        for a in &top {
            for b in &top {
                for ap in &top {
                    for bp in &top {
                        let left = DiagramSum::from_diagram(a.clone())
                            .tensor(&DiagramSum::from_diagram(b.clone()))
                            .compose(
                                &DiagramSum::from_diagram(ap.clone())
                                    .tensor(&DiagramSum::from_diagram(bp.clone())),
                            )
                            .unwrap();
                        let right = DiagramSum::from_diagram(a.clone())
                            .compose(&DiagramSum::from_diagram(ap.clone()))
                            .unwrap()
                            .tensor(
                                &DiagramSum::from_diagram(b.clone())
                                    .compose(&DiagramSum::from_diagram(bp.clone()))
                                    .unwrap(),
                            );
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let sig = DiagramSum::symmetrizer(3, 1).scale(&Poly::delta());
        let json = serde_json::to_string(&sig).unwrap();
        let back: DiagramSum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sig);
    }
}
