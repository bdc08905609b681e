//! Oriented Brauer diagrams over signed sequences: matchings with a chosen
//! arc direction, composition with loop removal, juxtaposition, walled
//! Brauer bases, and the sorting isomorphisms between hom spaces.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::diagram::BrauerDiagram;
use crate::error::{Error, Result};

/// A sign, + or -.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A finite sequence of signs; the objects of the oriented category.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct SignedSequence(pub Vec<Sign>);

impl fmt::Debug for SignedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self.as_string())
    }
}

impl SignedSequence {
    pub fn empty() -> Self {
        SignedSequence(vec![])
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut signs = Vec::new();
        for c in s.chars() {
            match c {
                '+' => signs.push(Sign::Plus),
                '-' => signs.push(Sign::Minus),
                c if c.is_whitespace() => {}
                _ => return Err(Error::Parse(format!("bad sign character {c:?}"))),
            }
        }
        Ok(SignedSequence(signs))
    }

    pub fn as_string(&self) -> String {
        self.0.iter().map(|s| s.as_char()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// (number of plus signs, number of minus signs).
    pub fn sign_counts(&self) -> (usize, usize) {
        let plus = self.0.iter().filter(|s| **s == Sign::Plus).count();
        (plus, self.0.len() - plus)
    }

    /// Concatenation.
    pub fn join(&self, other: &SignedSequence) -> SignedSequence {
        let mut v = self.0.clone();
        v.extend(other.0.iter().copied());
        SignedSequence(v)
    }

    /// Sign-wise negation.
    pub fn negative(&self) -> SignedSequence {
        SignedSequence(self.0.iter().map(|s| s.flip()).collect())
    }

    /// Reversal.
    pub fn reverse(&self) -> SignedSequence {
        SignedSequence(self.0.iter().rev().copied().collect())
    }

    pub fn repeat(sign: Sign, n: usize) -> SignedSequence {
        SignedSequence(vec![sign; n])
    }

    /// The sorted form: all plus signs then all minus signs.
    pub fn sorted(&self) -> SignedSequence {
        let (p, m) = self.sign_counts();
        SignedSequence::repeat(Sign::Plus, p).join(&SignedSequence::repeat(Sign::Minus, m))
    }
}

/// An oriented Brauer diagram: an underlying matching plus, per arc, the
/// node at which the arc starts (the tail). Source and target signed
/// sequences are derived: a strand oriented downward reads + at its bottom
/// endpoint and + at its top endpoint.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedDiagram {
    diagram: BrauerDiagram,
    /// For each pair of the underlying diagram (in canonical order), the
    /// endpoint that is the tail of the arc.
    tails: Vec<usize>,
}

impl fmt::Debug for OrientedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "O[{:?} tails {:?} {} -> {}]",
            self.diagram,
            self.tails,
            self.source().as_string(),
            self.target().as_string()
        )
    }
}

impl OrientedDiagram {
    pub fn new(diagram: BrauerDiagram, tails: Vec<usize>) -> Result<Self> {
        if tails.len() != diagram.pairs().len() {
            return Err(Error::InvalidDiagram(format!(
                "need one tail per arc: {} arcs, {} tails",
                diagram.pairs().len(),
                tails.len()
            )));
        }
        for (i, &(a, b)) in diagram.pairs().iter().enumerate() {
            if tails[i] != a && tails[i] != b {
                return Err(Error::InvalidDiagram(format!(
                    "tail {} is not an endpoint of arc ({a}, {b})",
                    tails[i]
                )));
            }
        }
        Ok(OrientedDiagram { diagram, tails })
    }

    pub fn diagram(&self) -> &BrauerDiagram {
        &self.diagram
    }

    pub fn tails(&self) -> &[usize] {
        &self.tails
    }

    fn sign_at(&self, node: usize) -> Sign {
        let arc = self
            .diagram
            .pairs()
            .iter()
            .position(|&(a, b)| a == node || b == node)
            .expect("node in range");
        let is_tail = self.tails[arc] == node;
        let is_bottom = node <= self.diagram.k;
        // heads read + at the bottom, tails read + at the top
        match (is_tail, is_bottom) {
            (false, true) => Sign::Plus,
            (true, true) => Sign::Minus,
            (true, false) => Sign::Plus,
            (false, false) => Sign::Minus,
        }
    }

    /// The derived source sequence (bottom boundary).
    pub fn source(&self) -> SignedSequence {
        SignedSequence((1..=self.diagram.k).map(|n| self.sign_at(n)).collect())
    }

    /// The derived target sequence (top boundary).
    pub fn target(&self) -> SignedSequence {
        SignedSequence(
            (self.diagram.k + 1..=self.diagram.k + self.diagram.ell)
                .map(|n| self.sign_at(n))
                .collect(),
        )
    }

    /// The identity on a signed sequence: vertical strands oriented by the
    /// signs.
    pub fn identity(seq: &SignedSequence) -> Self {
        let r = seq.len();
        let diagram = BrauerDiagram::identity(r);
        let tails = diagram
            .pairs()
            .iter()
            .map(|&(a, b)| match seq.0[a - 1] {
                // + flows downward: tail at the top endpoint
                Sign::Plus => b,
                Sign::Minus => a,
            })
            .collect();
        OrientedDiagram::new(diagram, tails).unwrap()
    }

    /// Composition self after rhs; requires target(rhs) == source(self).
    /// Loops contribute one loop factor regardless of their orientation.
    pub fn compose(&self, rhs: &OrientedDiagram) -> Result<(OrientedDiagram, usize)> {
        let expected = rhs.target();
        let found = self.source();
        if expected != found {
            return Err(Error::SequenceMismatch {
                expected: expected.as_string(),
                found: found.as_string(),
            });
        }
        let scaled = self.diagram.compose(&rhs.diagram)?;
        let source = rhs.source();
        let target = self.target();
        let k = scaled.diagram.k;
        // orient each resulting arc from the boundary signs
        let mut tails = Vec::with_capacity(scaled.diagram.pairs().len());
        for &(a, b) in scaled.diagram.pairs() {
            let sign_of = |n: usize| {
                if n <= k {
                    source.0[n - 1]
                } else {
                    target.0[n - k - 1]
                }
            };
            // a bottom head reads +, a bottom tail -, a top tail +, a top head -
            let a_is_tail = match (a <= k, sign_of(a)) {
                (true, Sign::Minus) | (false, Sign::Plus) => true,
                _ => false,
            };
            let b_is_tail = match (b <= k, sign_of(b)) {
                (true, Sign::Minus) | (false, Sign::Plus) => true,
                _ => false,
            };
            if a_is_tail == b_is_tail {
                return Err(Error::InvalidDiagram(
                    "orientation inconsistency after composition".into(),
                ));
            }
            tails.push(if a_is_tail { a } else { b });
        }
        Ok((
            OrientedDiagram::new(scaled.diagram, tails)?,
            scaled.loops,
        ))
    }

    /// Juxtaposition; sources and targets concatenate.
    pub fn tensor(&self, rhs: &OrientedDiagram) -> OrientedDiagram {
        let diagram = self.diagram.tensor(&rhs.diagram);
        // recover tails through the node relabelling of tensor
        let (k1, l1) = (self.diagram.k, self.diagram.ell);
        let (k2, _l2) = (rhs.diagram.k, rhs.diagram.ell);
        let map_left = |n: usize| if n <= k1 { n } else { k1 + k2 + (n - k1) };
        let map_right = |n: usize| if n <= k2 { k1 + n } else { k1 + k2 + l1 + (n - k2) };
        let mut tail_of: std::collections::HashMap<usize, bool> = std::collections::HashMap::new();
        for (i, &(a, b)) in self.diagram.pairs().iter().enumerate() {
            tail_of.insert(map_left(a), self.tails[i] == a);
            tail_of.insert(map_left(b), self.tails[i] == b);
        }
        for (i, &(a, b)) in rhs.diagram.pairs().iter().enumerate() {
            tail_of.insert(map_right(a), rhs.tails[i] == a);
            tail_of.insert(map_right(b), rhs.tails[i] == b);
        }
        let tails = diagram
            .pairs()
            .iter()
            .map(|&(a, b)| if tail_of[&a] { a } else { b })
            .collect();
        OrientedDiagram::new(diagram, tails).unwrap()
    }

    /// Reflection in a horizontal line; arrows carried along, so the
    /// boundary readings flip: this maps Hom(eta, zeta) to
    /// Hom(negative(zeta), negative(eta)).
    pub fn star(&self) -> OrientedDiagram {
        let k = self.diagram.k;
        let ell = self.diagram.ell;
        let map = |n: usize| if n <= k { ell + n } else { n - k };
        let starred = self.diagram.star();
        let mut tail_of: std::collections::HashMap<usize, bool> = std::collections::HashMap::new();
        for (i, &(a, b)) in self.diagram.pairs().iter().enumerate() {
            tail_of.insert(map(a), self.tails[i] == a);
            tail_of.insert(map(b), self.tails[i] == b);
        }
        let tails = starred
            .pairs()
            .iter()
            .map(|&(a, b)| if tail_of[&a] { a } else { b })
            .collect();
        OrientedDiagram::new(starred, tails).unwrap()
    }

    /// All oriented diagrams with the given source and target, in a fixed
    /// order. Empty when parity or sign counts forbid a consistent
    /// orientation.
    pub fn enumerate(source: &SignedSequence, target: &SignedSequence) -> Vec<OrientedDiagram> {
        let k = source.len();
        let ell = target.len();
        let mut out = Vec::new();
        for d in BrauerDiagram::enumerate(k, ell) {
            let sign_of = |n: usize| {
                if n <= k {
                    source.0[n - 1]
                } else {
                    target.0[n - k - 1]
                }
            };
            let mut tails = Vec::with_capacity(d.pairs().len());
            let mut ok = true;
            for &(a, b) in d.pairs() {
                let a_is_tail = matches!(
                    (a <= k, sign_of(a)),
                    (true, Sign::Minus) | (false, Sign::Plus)
                );
                let b_is_tail = matches!(
                    (b <= k, sign_of(b)),
                    (true, Sign::Minus) | (false, Sign::Plus)
                );
                if a_is_tail == b_is_tail {
                    ok = false;
                    break;
                }
                tails.push(if a_is_tail { a } else { b });
            }
            if ok {
                out.push(OrientedDiagram::new(d, tails).unwrap());
            }
        }
        out
    }
}

/// Generators of the oriented category: oriented identities, crossings,
/// caps and cups in both orientations.
pub mod generators {
    use super::*;

    /// Downward strand: + to +.
    pub fn id_plus() -> OrientedDiagram {
        OrientedDiagram::identity(&SignedSequence(vec![Sign::Plus]))
    }

    /// Upward strand: - to -.
    pub fn id_minus() -> OrientedDiagram {
        OrientedDiagram::identity(&SignedSequence(vec![Sign::Minus]))
    }

    /// Crossing of two downward strands: (+,+) to (+,+).
    pub fn cross() -> OrientedDiagram {
        let d = BrauerDiagram::cross();
        // arcs (1,4) and (2,3); downward flow means tails at the top
        OrientedDiagram::new(d, vec![4, 3]).unwrap()
    }

    /// Cap consuming (+,-): flow right to left.
    pub fn cap_plus_minus() -> OrientedDiagram {
        OrientedDiagram::new(BrauerDiagram::cap(), vec![2]).unwrap()
    }

    /// Cap consuming (-,+): flow left to right.
    pub fn cap_minus_plus() -> OrientedDiagram {
        OrientedDiagram::new(BrauerDiagram::cap(), vec![1]).unwrap()
    }

    /// Cup producing (+,-): flow left to right over the cup.
    pub fn cup_plus_minus() -> OrientedDiagram {
        OrientedDiagram::new(BrauerDiagram::cup(), vec![1]).unwrap()
    }

    /// Cup producing (-,+): flow right to left over the cup.
    pub fn cup_minus_plus() -> OrientedDiagram {
        OrientedDiagram::new(BrauerDiagram::cup(), vec![2]).unwrap()
    }
}

/// Basis of the walled Brauer algebra: all oriented endomorphisms of
/// (+)^r (-)^s. Its dimension is (r+s)!.
pub fn walled_brauer_basis(r: usize, s: usize) -> Vec<OrientedDiagram> {
    let eta = SignedSequence::repeat(Sign::Plus, r).join(&SignedSequence::repeat(Sign::Minus, s));
    OrientedDiagram::enumerate(&eta, &eta)
}

/// The oriented permutation diagram sending bottom i to top images[i-1]+1,
/// with strands oriented by the source signs.
fn oriented_perm(source: &SignedSequence, images: &[usize]) -> OrientedDiagram {
    let r = source.len();
    let pairs: Vec<(usize, usize)> = (1..=r).map(|i| (i, r + images[i - 1] + 1)).collect();
    let d = BrauerDiagram::new(r, r, pairs).unwrap();
    let tails = d
        .pairs()
        .iter()
        .map(|&(a, b)| match source.0[a - 1] {
            Sign::Plus => b,
            Sign::Minus => a,
        })
        .collect();
    OrientedDiagram::new(d, tails).unwrap()
}

/// The stable-sort images gathering plus signs to the left.
fn sorting_images(eta: &SignedSequence) -> Vec<usize> {
    let r = eta.len();
    let mut images = vec![0usize; r];
    let (plus_count, _) = eta.sign_counts();
    let mut next_plus = 0;
    let mut next_minus = plus_count;
    for (i, s) in eta.0.iter().enumerate() {
        match s {
            Sign::Plus => {
                images[i] = next_plus;
                next_plus += 1;
            }
            Sign::Minus => {
                images[i] = next_minus;
                next_minus += 1;
            }
        }
    }
    images
}

/// The minimal-crossing sorting diagram from eta to its sorted form: all
/// strands through, plus signs gathered to the left by a stable sort.
pub fn sorting_diagram(eta: &SignedSequence) -> OrientedDiagram {
    oriented_perm(eta, &sorting_images(eta))
}

/// The inverse sorting diagram, from the sorted form back to eta.
pub fn unsorting_diagram(eta: &SignedSequence) -> OrientedDiagram {
    let images = sorting_images(eta);
    let mut inverse = vec![0usize; images.len()];
    for (i, &im) in images.iter().enumerate() {
        inverse[im] = i;
    }
    oriented_perm(&eta.sorted(), &inverse)
}

/// The mutually inverse conjugation maps between endomorphisms of eta and
/// of its sorted form, as explicit closures over basis elements.
pub struct TransportIso {
    pub eta: SignedSequence,
    pub sorted: SignedSequence,
    to_sorted: OrientedDiagram,
    to_eta: OrientedDiagram,
}

impl TransportIso {
    pub fn new(eta: &SignedSequence) -> Result<TransportIso> {
        let to_sorted = sorting_diagram(eta);
        let to_eta = unsorting_diagram(eta);
        // both composites must be identities
        let (id1, loops1) = to_eta.compose(&to_sorted)?;
        let (id2, loops2) = to_sorted.compose(&to_eta)?;
        if loops1 != 0 || loops2 != 0 || id1 != OrientedDiagram::identity(eta)
            || id2 != OrientedDiagram::identity(&eta.sorted())
        {
            return Err(Error::InvalidDiagram(
                "sorting diagrams are not mutually inverse".into(),
            ));
        }
        Ok(TransportIso {
            eta: eta.clone(),
            sorted: eta.sorted(),
            to_sorted,
            to_eta,
        })
    }

    /// Conjugation eta-endomorphism -> sorted-endomorphism.
    pub fn forward(&self, d: &OrientedDiagram) -> Result<(OrientedDiagram, usize)> {
        let (mid, l1) = d.compose(&self.to_eta)?;
        let (out, l2) = self.to_sorted.compose(&mid)?;
        Ok((out, l1 + l2))
    }

    /// Conjugation sorted-endomorphism -> eta-endomorphism.
    pub fn backward(&self, d: &OrientedDiagram) -> Result<(OrientedDiagram, usize)> {
        let (mid, l1) = d.compose(&self.to_sorted)?;
        let (out, l2) = self.to_eta.compose(&mid)?;
        Ok((out, l1 + l2))
    }
}

/// Serialized form adds tails and the derived boundary strings.
#[derive(Serialize, Deserialize)]
struct OrientedRepr {
    k: usize,
    ell: usize,
    pairs: Vec<(usize, usize)>,
    tails: Vec<usize>,
    source: String,
    target: String,
}

impl Serialize for OrientedDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OrientedRepr {
            k: self.diagram.k,
            ell: self.diagram.ell,
            pairs: self.diagram.pairs().to_vec(),
            tails: self.tails.clone(),
            source: self.source().as_string(),
            target: self.target().as_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrientedDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = OrientedRepr::deserialize(d)?;
        let diagram =
            BrauerDiagram::new(repr.k, repr.ell, repr.pairs).map_err(serde::de::Error::custom)?;
        OrientedDiagram::new(diagram, repr.tails).map_err(serde::de::Error::custom)
    }
}
