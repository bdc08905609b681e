//! Brauer diagrams: perfect matchings of `k` bottom and `ell` top nodes,
//! with concatenation (loops extracted as a counter), juxtaposition and the
//! two reflections.
//!
//! Node convention: `1..=k` are bottom nodes left to right, `k+1..=k+ell`
//! are top nodes left to right.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// The boundary shape (k bottom nodes, ell top nodes) of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Valency {
    pub k: usize,
    pub ell: usize,
}

impl Valency {
    pub fn new(k: usize, ell: usize) -> Self {
        Valency { k, ell }
    }
}

impl fmt::Display for Valency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.ell)
    }
}

/// A perfect matching of the k + ell boundary nodes. Pairs are stored
/// canonically (each sorted ascending, list sorted by first entry) so that
/// structural equality coincides with equality of diagrams.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BrauerDiagram {
    pub k: usize,
    pub ell: usize,
    pairs: Vec<(usize, usize)>,
}

impl<'de> Deserialize<'de> for BrauerDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            k: usize,
            ell: usize,
            pairs: Vec<(usize, usize)>,
        }
        let raw = Raw::deserialize(d)?;
        BrauerDiagram::new(raw.k, raw.ell, raw.pairs).map_err(serde::de::Error::custom)
    }
}

/// A diagram together with an accumulated power of the loop parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledDiagram {
    pub diagram: BrauerDiagram,
    pub loops: usize,
}

impl fmt::Debug for BrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({},{}){:?}", self.k, self.ell, self.pairs)
    }
}

impl BrauerDiagram {
    /// Builds a diagram from pairs over `1..=k+ell`, checking the matching
    /// and canonicalising storage.
    pub fn new(k: usize, ell: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let n = k + ell;
        if n % 2 != 0 {
            return Err(Error::InvalidDiagram(format!(
                "k + ell = {n} is odd, no perfect matching exists"
            )));
        }
        if pairs.len() * 2 != n {
            return Err(Error::InvalidDiagram(format!(
                "expected {} pairs for {} nodes, got {}",
                n / 2,
                n,
                pairs.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        let mut canon: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            if a == 0 || b == 0 || a > n || b > n || a == b {
                return Err(Error::InvalidDiagram(format!("bad pair ({a}, {b})")));
            }
            if seen[a] || seen[b] {
                return Err(Error::InvalidDiagram(format!(
                    "node repeated in pair ({a}, {b})"
                )));
            }
            seen[a] = true;
            seen[b] = true;
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort();
        Ok(BrauerDiagram { k, ell, pairs: canon })
    }

    pub fn valency(&self) -> Valency {
        Valency::new(self.k, self.ell)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The partner of a node.
    pub fn partner(&self, node: usize) -> usize {
        for &(a, b) in &self.pairs {
            if a == node {
                return b;
            }
            if b == node {
                return a;
            }
        }
        panic!("node {node} out of range");
    }

    fn is_top(&self, node: usize) -> bool {
        node > self.k
    }

    /// Number of arcs joining a bottom node to a top node.
    pub fn through_strings(&self) -> usize {
        self.pairs
            .iter()
            .filter(|&&(a, b)| !self.is_top(a) && self.is_top(b))
            .count()
    }

    /// The identity on r strands.
    pub fn identity(r: usize) -> Self {
        BrauerDiagram::new(r, r, (1..=r).map(|i| (i, r + i)).collect()).unwrap()
    }

    /// The cap: (2, 0) diagram joining the two bottom nodes.
    pub fn cap() -> Self {
        BrauerDiagram::new(2, 0, vec![(1, 2)]).unwrap()
    }

    /// The cup: (0, 2) diagram joining the two top nodes.
    pub fn cup() -> Self {
        BrauerDiagram::new(0, 2, vec![(1, 2)]).unwrap()
    }

    /// The simple crossing on two strands.
    pub fn cross() -> Self {
        BrauerDiagram::new(2, 2, vec![(1, 4), (2, 3)]).unwrap()
    }

    /// Simple transposition diagram s_i in degree r (1-based, i < r).
    pub fn s_i(r: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= r {
            return Err(Error::IndexRange(format!("s_{i} undefined in degree {r}")));
        }
        let mut pairs = Vec::with_capacity(r);
        for j in 1..=r {
            let top = if j == i {
                i + 1
            } else if j == i + 1 {
                i
            } else {
                j
            };
            pairs.push((j, r + top));
        }
        BrauerDiagram::new(r, r, pairs)
    }

    /// Contraction diagram e_i in degree r (1-based, i < r).
    pub fn e_i(r: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= r {
            return Err(Error::IndexRange(format!("e_{i} undefined in degree {r}")));
        }
        Self::e_pair(r, i, i + 1)
    }

    /// Degree-r diagram with a bottom arc {a, b}, a top arc {a, b} and all
    /// other strands vertical.
    pub fn e_pair(r: usize, a: usize, b: usize) -> Result<Self> {
        if a == b || a == 0 || b == 0 || a > r || b > r {
            return Err(Error::IndexRange(format!("e pair ({a}, {b}) in degree {r}")));
        }
        let mut pairs = vec![(a, b), (r + a, r + b)];
        for j in 1..=r {
            if j != a && j != b {
                pairs.push((j, r + j));
            }
        }
        BrauerDiagram::new(r, r, pairs)
    }

    /// Nested cap A_q: the (2q, 0) diagram pairing i with 2q+1-i.
    pub fn a_q(q: usize) -> Self {
        BrauerDiagram::new(2 * q, 0, (1..=q).map(|i| (i, 2 * q + 1 - i)).collect()).unwrap()
    }

    /// Nested cup U_q: the (0, 2q) diagram pairing i with 2q+1-i.
    pub fn u_q(q: usize) -> Self {
        BrauerDiagram::new(0, 2 * q, (1..=q).map(|i| (i, 2 * q + 1 - i)).collect()).unwrap()
    }

    /// The braiding X_{s,t}: the block of s strands crosses over the block
    /// of t strands.
    pub fn x_cross(s: usize, t: usize) -> Self {
        let n = s + t;
        let mut pairs = Vec::with_capacity(n);
        for i in 1..=s {
            pairs.push((i, n + t + i));
        }
        for j in 1..=t {
            pairs.push((s + j, n + j));
        }
        BrauerDiagram::new(n, n, pairs).unwrap()
    }

    /// The permutation diagram of `p`: bottom i joins top p(i).
    pub fn from_perm(p: &Perm) -> Self {
        let r = p.degree();
        BrauerDiagram::new(r, r, (1..=r).map(|i| (i, r + p.apply(i - 1) + 1)).collect()).unwrap()
    }

    /// If this diagram is a permutation diagram, the permutation it induces.
    pub fn to_perm(&self) -> Option<Perm> {
        if self.k != self.ell || self.through_strings() != self.k {
            return None;
        }
        let mut map = vec![0; self.k];
        for &(a, b) in &self.pairs {
            map[a - 1] = b - self.k - 1;
        }
        Some(Perm::from_images(map))
    }

    /// Composition self after rhs (rhs is applied first):
    /// self: ell -> p, rhs: k -> ell. Loops removed and counted.
    pub fn compose(&self, rhs: &BrauerDiagram) -> Result<ScaledDiagram> {
        if self.k != rhs.ell {
            return Err(Error::ValencyMismatch(self.k, self.ell, rhs.k, rhs.ell));
        }
        let k = rhs.k;
        let mid = rhs.ell;
        let p = self.ell;
        // Union-find over k bottom nodes, mid seam nodes, p top nodes.
        let mut uf = UnionFind::new(k + mid + p);
        for &(a, b) in &rhs.pairs {
            let idx = |n: usize| if n <= k { n - 1 } else { k + (n - k - 1) };
            uf.union(idx(a), idx(b));
        }
        for &(a, b) in &self.pairs {
            let idx = |n: usize| {
                if n <= mid {
                    k + (n - 1)
                } else {
                    k + mid + (n - mid - 1)
                }
            };
            uf.union(idx(a), idx(b));
        }
        // Boundary nodes of the result, in union-find indexing.
        let boundary = |i: usize| i < k || i >= k + mid;
        let mut rep_to_boundary: std::collections::HashMap<usize, Vec<usize>> =
            std::collections::HashMap::new();
        for i in 0..k + mid + p {
            if boundary(i) {
                rep_to_boundary.entry(uf.find(i)).or_default().push(i);
            }
        }
        let mut pairs = Vec::new();
        for members in rep_to_boundary.values() {
            debug_assert_eq!(members.len(), 2, "path must have two boundary ends");
            let node = |i: usize| if i < k { i + 1 } else { k + (i - (k + mid)) + 1 };
            pairs.push((node(members[0]), node(members[1])));
        }
        // Loops: components made entirely of seam nodes.
        let mut loops = 0;
        for i in k..k + mid {
            if uf.find(i) == i && !rep_to_boundary.contains_key(&i) {
                loops += 1;
            }
        }
        Ok(ScaledDiagram {
            diagram: BrauerDiagram::new(k, p, pairs)?,
            loops,
        })
    }

    /// Juxtaposition: rhs placed to the right of self.
    pub fn tensor(&self, rhs: &BrauerDiagram) -> BrauerDiagram {
        let k = self.k + rhs.k;
        let ell = self.ell + rhs.ell;
        let map_left = |n: usize| if n <= self.k { n } else { self.k + rhs.k + (n - self.k) };
        let map_right = |n: usize| {
            if n <= rhs.k {
                self.k + n
            } else {
                k + self.ell + (n - rhs.k)
            }
        };
        let mut pairs: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&(a, b)| (map_left(a), map_left(b)))
            .collect();
        pairs.extend(rhs.pairs.iter().map(|&(a, b)| (map_right(a), map_right(b))));
        BrauerDiagram::new(k, ell, pairs).unwrap()
    }

    /// Reflection in a horizontal line: top and bottom swap roles.
    pub fn star(&self) -> BrauerDiagram {
        let map = |n: usize| if n <= self.k { self.ell + n } else { n - self.k };
        BrauerDiagram::new(
            self.ell,
            self.k,
            self.pairs.iter().map(|&(a, b)| (map(a), map(b))).collect(),
        )
        .unwrap()
    }

    /// Reflection in a vertical line.
    pub fn sharp(&self) -> BrauerDiagram {
        let map = |n: usize| {
            if n <= self.k {
                self.k + 1 - n
            } else {
                self.k + (self.ell + 1 - (n - self.k))
            }
        };
        BrauerDiagram::new(
            self.k,
            self.ell,
            self.pairs.iter().map(|&(a, b)| (map(a), map(b))).collect(),
        )
        .unwrap()
    }

    /// The composite anti-involution D -> *D = (D sharp) star.
    pub fn star_sharp(&self) -> BrauerDiagram {
        self.sharp().star()
    }

    /// Raising: bends the rightmost bottom strand up, (k, ell) -> (k-1, ell+1).
    pub fn raise(&self) -> Result<ScaledDiagram> {
        if self.k == 0 {
            return Err(Error::IndexRange("raise needs k >= 1".into()));
        }
        let rhs = BrauerDiagram::identity(self.k - 1).tensor(&BrauerDiagram::cup());
        self.tensor(&BrauerDiagram::identity(1)).compose(&rhs)
    }

    /// Lowering: bends the rightmost top strand down, (k, ell) -> (k+1, ell-1).
    pub fn lower(&self) -> Result<ScaledDiagram> {
        if self.ell == 0 {
            return Err(Error::IndexRange("lower needs ell >= 1".into()));
        }
        let lhs = BrauerDiagram::identity(self.ell - 1).tensor(&BrauerDiagram::cap());
        lhs.compose(&self.tensor(&BrauerDiagram::identity(1)))
    }

    /// All (k, ell) diagrams in a fixed lexicographic order; empty when
    /// k + ell is odd, the sole empty diagram when k + ell = 0.
    pub fn enumerate(k: usize, ell: usize) -> Vec<BrauerDiagram> {
        let n = k + ell;
        if n % 2 != 0 {
            return vec![];
        }
        let mut out = Vec::new();
        let mut used = vec![false; n + 1];
        let mut pairs = Vec::new();
        enumerate_matchings(n, &mut used, &mut pairs, &mut |pairs| {
            out.push(BrauerDiagram::new(k, ell, pairs.to_vec()).unwrap());
        });
        out
    }
}

fn enumerate_matchings(
    n: usize,
    used: &mut Vec<bool>,
    pairs: &mut Vec<(usize, usize)>,
    emit: &mut impl FnMut(&[(usize, usize)]),
) {
    let first = (1..=n).find(|&i| !used[i]);
    match first {
        None => emit(pairs),
        Some(a) => {
            for b in a + 1..=n {
                if used[b] {
                    continue;
                }
                used[a] = true;
                used[b] = true;
                pairs.push((a, b));
                enumerate_matchings(n, used, pairs, emit);
                pairs.pop();
                used[a] = false;
                used[b] = false;
            }
        }
    }
}

/// Union-find with path compression, used for loop counting during
/// concatenation.
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, i: usize, j: usize) {
        let (a, b) = (self.find(i), self.find(j));
        if a != b {
            // keep the smaller root so loop detection is deterministic
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
        }
    }
}

/// (k + ell - 1)!! counted the way `enumerate` does: 1 when k + ell = 0,
/// 0 when odd.
pub fn double_factorial_count(n: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    if n % 2 == 1 {
        return 0;
    }
    let mut out = 1u64;
    let mut i = n as u64 - 1;
    loop {
        out *= i;
        if i <= 2 {
            break;
        }
        i -= 2;
    }
    out
}
