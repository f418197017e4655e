//! Permutations of `{0, .., n-1}` in image notation.

use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Perm, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// The transposition `(i j)` inside `S_n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Perm {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self * other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: (0..self.degree())
                .map(|i| self.apply(other.apply(i)))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }

    /// Extend to a permutation of `n` points fixing everything above.
    pub fn extend(&self, n: usize) -> Perm {
        debug_assert!(n >= self.degree());
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[i] = j;
        }
        Perm { images }
    }

    /// Shift all points by `offset` inside a permutation of `n` points.
    pub fn shift(&self, offset: usize, n: usize) -> Perm {
        debug_assert!(offset + self.degree() <= n);
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = offset + j;
        }
        Perm { images }
    }
}
