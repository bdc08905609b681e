//! Graded vector spaces with orthosymplectic forms, the classical groups
//! and supergroups acting on them, and exact bases of their Lie
//! (super)algebras. Everything is over the rationals: the even part
//! carries the identity Gram matrix, the odd part the standard symplectic
//! block.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{rat, Rat};
use num_traits::{One, Zero};

/// A Z2-graded space: `even` even dimensions then `odd` odd dimensions
/// (odd must be even for a form to exist).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuperSpace {
    pub even: usize,
    pub odd: usize,
}

impl SuperSpace {
    pub fn new(even: usize, odd: usize) -> Self {
        SuperSpace { even, odd }
    }

    pub fn dim(&self) -> usize {
        self.even + self.odd
    }

    pub fn sdim(&self) -> i64 {
        self.even as i64 - self.odd as i64
    }

    /// Parity of the i-th basis vector (0-based).
    pub fn parity(&self, i: usize) -> u8 {
        if i < self.even {
            0
        } else {
            1
        }
    }

    /// Gram matrix: identity on the even part, standard symplectic block
    /// on the odd part.
    pub fn gram(&self) -> Matrix {
        let d = self.dim();
        let n = self.odd / 2;
        let mut g = Matrix::zero(d, d);
        for i in 0..self.even {
            g.set(i, i, Rat::one());
        }
        for i in 0..n {
            g.set(self.even + i, self.even + n + i, Rat::one());
            g.set(self.even + n + i, self.even + i, -Rat::one());
        }
        g
    }

    pub fn gram_inv(&self) -> Matrix {
        self.gram().inverse().expect("gram is invertible")
    }
}

/// One of the groups the functors land in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    /// O(m): purely even with symmetric form.
    Orthogonal(usize),
    /// SO(m): the connected part only.
    SpecialOrthogonal(usize),
    /// Sp(2n): purely odd with antisymmetric form (as a super space).
    Symplectic(usize),
    /// OSp(m|2n).
    OrthoSymplectic(usize, usize),
    /// GL(m|l): no form; acts on words in V and its dual.
    GeneralLinear(usize, usize),
}

impl Group {
    pub fn space(&self) -> SuperSpace {
        match *self {
            Group::Orthogonal(m) | Group::SpecialOrthogonal(m) => SuperSpace::new(m, 0),
            Group::Symplectic(two_n) => SuperSpace::new(0, two_n),
            Group::OrthoSymplectic(m, two_n) => SuperSpace::new(m, two_n),
            Group::GeneralLinear(m, l) => SuperSpace::new(m, l),
        }
    }

    pub fn has_form(&self) -> bool {
        !matches!(self, Group::GeneralLinear(_, _))
    }

    pub fn sdim(&self) -> i64 {
        self.space().sdim()
    }

    /// Parses names like "o3", "so2", "sp2", "osp2|2", "gl2|1".
    pub fn parse(name: &str) -> Result<Group> {
        let name = name.trim().to_lowercase();
        let body = |prefix: &str| name[prefix.len()..].to_string();
        let split_bar = |s: &str| -> Result<(usize, usize)> {
            let mut parts = s.split('|');
            let a = parts
                .next()
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad group {name:?}")))?;
            let b = parts
                .next()
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad group {name:?}")))?;
            Ok((a, b))
        };
        if name.starts_with("osp") {
            let (m, two_n) = split_bar(&body("osp"))?;
            if two_n % 2 != 0 {
                return Err(Error::Parse("osp odd dimension must be even".into()));
            }
            Ok(Group::OrthoSymplectic(m, two_n))
        } else if name.starts_with("so") {
            body("so")
                .parse()
                .map(Group::SpecialOrthogonal)
                .map_err(|_| Error::Parse(format!("bad group {name:?}")))
        } else if name.starts_with("sp") {
            let n: usize = body("sp")
                .parse()
                .map_err(|_| Error::Parse(format!("bad group {name:?}")))?;
            if n % 2 != 0 {
                return Err(Error::Parse("sp dimension must be even".into()));
            }
            Ok(Group::Symplectic(n))
        } else if name.starts_with("gl") {
            let (m, l) = split_bar(&body("gl"))?;
            Ok(Group::GeneralLinear(m, l))
        } else if name.starts_with('o') {
            body("o")
                .parse()
                .map(Group::Orthogonal)
                .map_err(|_| Error::Parse(format!("bad group {name:?}")))
        } else {
            Err(Error::Parse(format!("unknown group {name:?}")))
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Group::Orthogonal(m) => format!("o{m}"),
            Group::SpecialOrthogonal(m) => format!("so{m}"),
            Group::Symplectic(n) => format!("sp{n}"),
            Group::OrthoSymplectic(m, n) => format!("osp{m}|{n}"),
            Group::GeneralLinear(m, l) => format!("gl{m}|{l}"),
        }
    }

    /// A basis of the Lie (super)algebra as matrices on V, each with a
    /// definite parity.
    pub fn lie_basis(&self) -> Vec<(Matrix, u8)> {
        let space = self.space();
        match self {
            Group::GeneralLinear(_, _) => {
                let d = space.dim();
                let mut out = Vec::new();
                for r in 0..d {
                    for c in 0..d {
                        let mut m = Matrix::zero(d, d);
                        m.set(r, c, Rat::one());
                        out.push((m, (space.parity(r) + space.parity(c)) % 2));
                    }
                }
                out
            }
            _ => form_preserving_basis(&space),
        }
    }

    /// Component-group generators beyond the connected part: the even
    /// reflection for the full (ortho)symplectic groups.
    pub fn reflections(&self) -> Vec<Matrix> {
        match *self {
            Group::Orthogonal(m) | Group::OrthoSymplectic(m, _) if m >= 1 => {
                let space = self.space();
                let d = space.dim();
                let mut r = Matrix::identity(d);
                r.set(0, 0, -Rat::one());
                vec![r]
            }
            _ => vec![],
        }
    }
}

/// Basis of {x : (x v, w) + (-1)^{[x][v]} (v, x w) = 0} split by parity
/// blocks, via an exact nullspace computation.
fn form_preserving_basis(space: &SuperSpace) -> Vec<(Matrix, u8)> {
    let d = space.dim();
    let g = space.gram();
    let mut out = Vec::new();
    for p in [0u8, 1u8] {
        // unknowns: entries x[r][c] with parity(r) + parity(c) = p (mod 2)
        let mut slots = Vec::new();
        for r in 0..d {
            for c in 0..d {
                if (space.parity(r) + space.parity(c)) % 2 == p {
                    slots.push((r, c));
                }
            }
        }
        if slots.is_empty() {
            continue;
        }
        let index_of = |r: usize, c: usize| slots.iter().position(|&s| s == (r, c));
        // one equation per (i, j)
        let mut system = Matrix::zero(d * d, slots.len());
        for i in 0..d {
            for j in 0..d {
                let row = i * d + j;
                let sign = if p == 1 && space.parity(i) == 1 {
                    -Rat::one()
                } else {
                    Rat::one()
                };
                for r in 0..d {
                    // (x b_i, b_j): x[r][i] G[r][j]
                    if !g.at(r, j).is_zero() {
                        if let Some(s) = index_of(r, i) {
                            system.add_at(row, s, g.at(r, j));
                        }
                    }
                    // (-1)^{p [b_i]} (b_i, x b_j): sign * G[i][r] x[r][j]
                    if !g.at(i, r).is_zero() {
                        if let Some(s) = index_of(r, j) {
                            system.add_at(row, s, &(&sign * g.at(i, r)));
                        }
                    }
                }
            }
        }
        for v in system.nullspace() {
            let mut m = Matrix::zero(d, d);
            for (idx, &(r, c)) in slots.iter().enumerate() {
                if !v[idx].is_zero() {
                    m.set(r, c, v[idx].clone());
                }
            }
            out.push((m, p));
        }
    }
    out
}

/// Checks x is in the form-preserving algebra; used as an internal sanity
/// oracle in tests.
pub fn preserves_form(space: &SuperSpace, x: &Matrix, parity: u8) -> bool {
    let d = space.dim();
    let g = space.gram();
    for i in 0..d {
        for j in 0..d {
            let mut acc = Rat::zero();
            for r in 0..d {
                acc += x.at(r, i) * g.at(r, j);
                let sign = if parity == 1 && space.parity(i) == 1 {
                    -Rat::one()
                } else {
                    Rat::one()
                };
                acc += &sign * g.at(i, r) * x.at(r, j);
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Convenience: the rational delta value the loop parameter specialises to
/// for this group.
pub fn loop_value(group: &Group) -> Rat {
    rat(group.sdim())
}
