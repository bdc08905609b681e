//! Plain permutations on `{0, .., n-1}`, used to build permutation diagrams
//! and the symmetric-group sums that appear throughout the kernel elements.

/// A permutation stored as the image vector: `i` maps to `map[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { map: (0..n).collect() }
    }

    /// Builds from an image vector; panics if `map` is not a bijection.
    pub fn from_images(map: Vec<usize>) -> Self {
        let n = map.len();
        let mut seen = vec![false; n];
        for &im in &map {
            assert!(im < n && !seen[im], "not a permutation: {map:?}");
            seen[im] = true;
        }
        Perm { map }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    /// Adjacent transposition (i, i+1), 0-based.
    pub fn adjacent(n: usize, i: usize) -> Self {
        assert!(i + 1 < n);
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(i, i + 1);
        Perm { map }
    }

    /// `self` after `other`: (self * other)(i) = self(other(i)).
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut map = vec![0; self.map.len()];
        for (i, &im) in self.map.iter().enumerate() {
            map[im] = i;
        }
        Perm { map }
    }

    /// Coxeter length: the number of inversions.
    pub fn inversions(&self) -> usize {
        let n = self.map.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.map[i] > self.map[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn sign(&self) -> i64 {
        if self.inversions() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations of degree `n` in lexicographic order of image vectors.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm { map: current.clone() });
            // next lexicographic permutation
            let mut i = n.wrapping_sub(1);
            loop {
                if i == 0 || i == usize::MAX {
                    return out;
                }
                if current[i - 1] < current[i] {
                    break;
                }
                i -= 1;
            }
            let pivot = i - 1;
            let mut j = n - 1;
            while current[j] <= current[pivot] {
                j -= 1;
            }
            current.swap(pivot, j);
            current[pivot + 1..].reverse();
        }
    }

    /// A reduced word in adjacent transpositions, as 0-based positions:
    /// applying the swaps bottom-to-top to the identity arrangement
    /// realises `self`. Generated by selection sort, so it is deterministic.
    pub fn reduced_word(&self) -> Vec<usize> {
        // We seek swaps w_1, ..., w_m so that s_{w_m} ... s_{w_1} = self as a
        // function on positions. Bubble the inverse arrangement into order.
        let mut arr: Vec<usize> = self.inverse().map.clone();
        let mut word = Vec::new();
        let n = arr.len();
        for target in 0..n {
            let pos = arr.iter().position(|&x| x == target).unwrap();
            for p in (target..pos).rev() {
                arr.swap(p, p + 1);
                word.push(p);
            }
        }
        word.reverse();
        word
    }
}
