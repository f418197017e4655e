//! Schur algebras and strict polynomial functors.
//!
//! The algebra `S(D, n)` is the invariant subalgebra of the `n`-fold
//! tensor power of `End(K^D)` under place permutation, with its orbit-sum
//! basis indexed by size-`n` multisets of index pairs. Orbit sums are 0/1
//! matrices with disjoint supports on the tensor space, so multiplication
//! happens faithfully through the tensor representation and coordinates
//! are read off at representative entries.
//!
//! A polynomial functor is an evaluable expression; its value at a chosen
//! dimension is a module over the corresponding Schur algebra.

mod bridge;
mod derived;
mod diagrams;
mod expr;
mod homext;
mod linearize;
mod modules;

pub use bridge::{
    counit_j, gamma_module, gamma_resolution, j_bang, j_bang_with_data, j_bangstar,
    j_lowerstar, j_lowerstar_with_data, j_star, j_star_morphism, norm_transformation,
    s_module, tensor_group_module, unit_counit_isos, unit_j, young_data, young_module,
    GammaLevel, GammaResolution, YoungData,
};
pub use derived::derived_j_star;
pub use diagrams::{commuting_diagram_checks, DiagramReport};
pub use expr::{parse_expr, PolyExpr};
pub use homext::{
    algebra_for, ext_poly, ext_schur, free_resolution_a, hom_poly, schur_hom,
    schur_modules_isomorphic, SchurHomBasis,
};
pub use linearize::{c_bang, c_lowerstar, c_star, d_shriek, d_star};
pub use modules::{
    compose_modules, dual_module_schur, eval_expr, gamma_data, lambda_data, norm_map,
    schur_quotient, schur_submodule, sym_data, tensor_modules, tensor_space_module, GammaData,
    NormData, SchurModule, SymData,
};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Error;
use crate::linalg::Field;
use crate::Limits;

/// A size-`n` multiset of index pairs, kept sorted.
pub(crate) type PairMultiset = Vec<(u8, u8)>;

/// Sparse 0/1 operator on the tensor space: the set of (row, column)
/// positions of its unit entries.
pub(crate) type SparseOp = Vec<(u32, u32)>;

pub struct SchurAlgebra {
    pub field: Field,
    pub d: usize,
    pub n: usize,
    pub basis: Vec<PairMultiset>,
    index: HashMap<PairMultiset, usize>,
    /// faithful sparse action of each basis element on `(K^D)^{⊗n}`
    pub(crate) ops: Vec<SparseOp>,
    pub t_dim: usize,
    /// coordinates of the unit element
    pub unit: Vec<u32>,
    /// small algebra generating set, computed once
    gen_set: OnceLock<Vec<usize>>,
    /// memoized structure constants for products of basis elements
    products: Mutex<HashMap<(usize, usize), Vec<(usize, u32)>>>,
}

impl std::fmt::Debug for SchurAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SchurAlgebra(D={}, n={}, dim={})", self.d, self.n, self.dim())
    }
}

impl PartialEq for SchurAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.d == other.d && self.n == other.n
    }
}

/// All distinct arrangements (sequences) of a multiset.
fn distinct_arrangements(multiset: &[(u8, u8)]) -> Vec<Vec<(u8, u8)>> {
    let mut items: Vec<((u8, u8), usize)> = Vec::new();
    for &p in multiset {
        if let Some(last) = items.last_mut() {
            if last.0 == p {
                last.1 += 1;
                continue;
            }
        }
        items.push((p, 1));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(multiset.len());
    fn go(
        items: &mut Vec<((u8, u8), usize)>,
        current: &mut Vec<(u8, u8)>,
        len: usize,
        out: &mut Vec<Vec<(u8, u8)>>,
    ) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for i in 0..items.len() {
            if items[i].1 == 0 {
                continue;
            }
            items[i].1 -= 1;
            current.push(items[i].0);
            go(items, current, len, out);
            current.pop();
            items[i].1 += 1;
        }
    }
    go(&mut items, &mut current, multiset.len(), &mut out);
    out
}

/// Enumerate all size-`n` multisets over the `D²` index pairs.
fn enumerate_multisets(d: usize, n: usize) -> Vec<PairMultiset> {
    let pairs: Vec<(u8, u8)> = (0..d as u8)
        .flat_map(|i| (0..d as u8).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn go(
        pairs: &[(u8, u8)],
        start: usize,
        n: usize,
        current: &mut PairMultiset,
        out: &mut Vec<PairMultiset>,
    ) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in start..pairs.len() {
            current.push(pairs[i]);
            go(pairs, i, n, current, out);
            current.pop();
        }
    }
    go(&pairs, 0, n, &mut current, &mut out);
    out
}

/// Global registry so repeated constructions share the memoized structure
/// constants.
static ALGEBRA_REGISTRY: Mutex<Vec<((usize, usize, u32), Arc<SchurAlgebra>)>> = Mutex::new(Vec::new());

impl SchurAlgebra {
    pub fn new(d: usize, n: usize, field: Field, limits: &Limits) -> Result<Arc<SchurAlgebra>, Error> {
        if d == 0 || n == 0 {
            return Err(Error::Shape("Schur algebra needs D ≥ 1, n ≥ 1".into()));
        }
        let t_dim = d.checked_pow(n as u32).ok_or_else(|| {
            Error::ResourceGuard("tensor space dimension overflows".into())
        })?;
        limits.check_tensor_dim(t_dim, "Schur algebra tensor space")?;
        {
            let registry = ALGEBRA_REGISTRY.lock().expect("poisoned");
            if let Some((_, a)) = registry
                .iter()
                .find(|(key, _)| *key == (d, n, field.p()))
            {
                return Ok(a.clone());
            }
        }
        let basis = enumerate_multisets(d, n);
        let index: HashMap<PairMultiset, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        let mut ops = Vec::with_capacity(basis.len());
        for b in &basis {
            let mut op = Vec::new();
            for arr in distinct_arrangements(b) {
                let mut row = 0u32;
                let mut col = 0u32;
                for &(i, j) in &arr {
                    row = row * d as u32 + i as u32;
                    col = col * d as u32 + j as u32;
                }
                op.push((row, col));
            }
            op.sort_unstable();
            ops.push(op);
        }
        // the unit is the sum of the all-diagonal multiset elements
        let mut unit = vec![0u32; basis.len()];
        for (bi, b) in basis.iter().enumerate() {
            if b.iter().all(|&(i, j)| i == j) {
                unit[bi] = 1;
            }
        }
        let algebra = Arc::new(SchurAlgebra {
            field,
            d,
            n,
            basis,
            index,
            ops,
            t_dim,
            unit,
            gen_set: OnceLock::new(),
            products: Mutex::new(HashMap::new()),
        });
        ALGEBRA_REGISTRY
            .lock()
            .expect("poisoned")
            .push(((d, n, field.p()), algebra.clone()));
        Ok(algebra)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_index(&self, b: &PairMultiset) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// Decode a tensor-space index into its digit sequence.
    pub(crate) fn digits(&self, mut idx: u32) -> Vec<u8> {
        let mut out = vec![0u8; self.n];
        for slot in (0..self.n).rev() {
            out[slot] = (idx % self.d as u32) as u8;
            idx /= self.d as u32;
        }
        out
    }

    /// Structure constants: the product of two basis elements as a sparse
    /// coefficient vector. Memoized.
    pub fn product(&self, a: usize, b: usize) -> Vec<(usize, u32)> {
        if let Some(hit) = self.products.lock().expect("poisoned").get(&(a, b)) {
            return hit.clone();
        }
        // compose the sparse operators, then read off coefficients at
        // representative entries of each orbit
        let mut by_row: HashMap<u32, Vec<u32>> = HashMap::new();
        for &(r, c) in &self.ops[b] {
            by_row.entry(r).or_default().push(c);
        }
        let mut entries: HashMap<(u32, u32), u32> = HashMap::new();
        for &(r, k) in &self.ops[a] {
            if let Some(cols) = by_row.get(&k) {
                for &c in cols {
                    *entries.entry((r, c)).or_insert(0) += 1;
                }
            }
        }
        let mut coeffs: HashMap<usize, u32> = HashMap::new();
        for ((r, c), count) in entries {
            let v = count % self.field.p();
            if v == 0 {
                continue;
            }
            let rd = self.digits(r);
            let cd = self.digits(c);
            let mut multiset: PairMultiset =
                rd.into_iter().zip(cd).collect();
            multiset.sort_unstable();
            let bi = self.index[&multiset];
            // all entries of one orbit carry the same coefficient
            coeffs.entry(bi).or_insert(v);
        }
        let mut out: Vec<(usize, u32)> = coeffs.into_iter().collect();
        out.sort_unstable();
        self.products
            .lock()
            .expect("poisoned")
            .insert((a, b), out.clone());
        out
    }

    /// Left multiplication of a basis element on a coefficient vector.
    pub fn left_mul(&self, b: usize, x: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.dim()];
        for (j, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (k, v) in self.product(b, j) {
                out[k] = self.field.add(out[k], self.field.mul(c, v));
            }
        }
        out
    }

    /// Basis indices of the diagonal orbit sums, the orthogonal weight
    /// idempotents summing to the unit.
    pub fn weight_idempotents(&self) -> Vec<usize> {
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, b)| b.iter().all(|&(i, j)| i == j))
            .map(|(i, _)| i)
            .collect()
    }

    /// Column content of a basis element: the sorted multiset of column
    /// indices. `b · ξ_ω ≠ 0` exactly when the column content is `ω`.
    pub fn col_content(&self, b: usize) -> Vec<u8> {
        let mut c: Vec<u8> = self.basis[b].iter().map(|&(_, j)| j).collect();
        c.sort_unstable();
        c
    }

    /// Row content: the sorted multiset of row indices; governs left
    /// multiplication by the idempotents.
    pub fn row_content(&self, b: usize) -> Vec<u8> {
        let mut c: Vec<u8> = self.basis[b].iter().map(|&(i, _)| i).collect();
        c.sort_unstable();
        c
    }

    /// Basis indices of the corner `A ξ_ω` for the idempotent at `xi`
    /// (elements whose column content matches the idempotent's content).
    pub fn corner_basis(&self, xi: usize) -> Vec<usize> {
        let content = self.col_content(xi);
        (0..self.dim())
            .filter(|&b| self.col_content(b) == content)
            .collect()
    }

    /// A small unital generating set, computed greedily by closing spans
    /// under left and right multiplication. Candidates with exactly one
    /// off-diagonal pair come first (the classical raising and lowering
    /// elements), then the diagonal idempotents, then the rest.
    pub fn generating_set(&self) -> &[usize] {
        self.gen_set.get_or_init(|| {
            let dim = self.dim();
            let off_diag = |b: usize| {
                self.basis[b].iter().filter(|&&(i, j)| i != j).count()
            };
            let mut order: Vec<usize> = (0..dim).collect();
            order.sort_by_key(|&b| match off_diag(b) {
                1 => 0usize,
                0 => 1,
                k => 1 + k,
            });
            let mut chosen: Vec<usize> = Vec::new();
            let mut span = crate::linalg::IncrementalRref::new(self.field, dim);
            span.push_row(self.unit.clone());
            for candidate in order {
                if span.rank() == dim {
                    break;
                }
                let mut probe = vec![0u32; dim];
                probe[candidate] = 1;
                let before = span.rank();
                span.push_row(probe);
                if span.rank() == before {
                    continue;
                }
                chosen.push(candidate);
                // close under multiplication by the chosen generators on
                // both sides (words in the generators)
                loop {
                    let rank_before = span.rank();
                    let current = span.row_basis();
                    for &g in &chosen {
                        for v in &current {
                            span.push_row(self.left_mul(g, v));
                            span.push_row(self.right_mul(g, v));
                        }
                    }
                    if span.rank() == rank_before {
                        break;
                    }
                }
            }
            chosen
        })
    }

    /// Right multiplication of a basis element on a coefficient vector.
    pub fn right_mul(&self, b: usize, x: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.dim()];
        for (j, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (k, v) in self.product(j, b) {
                out[k] = self.field.add(out[k], self.field.mul(c, v));
            }
        }
        out
    }

    /// Spot-check associativity through the faithful representation on a
    /// few seeded triples.
    pub fn spot_check_associativity(&self, samples: usize) -> bool {
        let mut state = 0x5ca1ab1eu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state as usize
        };
        for _ in 0..samples {
            let a = next() % self.dim();
            let b = next() % self.dim();
            let c = next() % self.dim();
            let ab = self.product(a, b);
            let bc = self.product(b, c);
            let mut left = vec![0u32; self.dim()];
            for &(k, v) in &ab {
                for (t, w) in self.product(k, c) {
                    left[t] = self.field.add(left[t], self.field.mul(v, w));
                }
            }
            let mut right = vec![0u32; self.dim()];
            for &(k, v) in &bc {
                for (t, w) in self.product(a, k) {
                    right[t] = self.field.add(right[t], self.field.mul(w, v));
                }
            }
            if left != right {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn dims_match_binomial() {
        // dim S(D,n) = C(D²+n−1, n)
        let binom = |n: usize, k: usize| -> usize {
            let mut num = 1usize;
            let mut den = 1usize;
            for i in 0..k {
                num *= n - i;
                den *= i + 1;
            }
            num / den
        };
        let limits = Limits::default();
        let a = SchurAlgebra::new(2, 2, f(2), &limits).unwrap();
        assert_eq!(a.dim(), 10);
        assert_eq!(a.dim(), binom(4 + 2 - 1, 2));
        let b = SchurAlgebra::new(3, 2, f(3), &limits).unwrap();
        assert_eq!(b.dim(), 45);
        assert_eq!(b.dim(), binom(9 + 2 - 1, 2));
        let c = SchurAlgebra::new(1, 4, f(2), &limits).unwrap();
        assert_eq!(c.dim(), 1);
        let d = SchurAlgebra::new(3, 3, f(3), &limits).unwrap();
        assert_eq!(d.dim(), binom(9 + 3 - 1, 3));
        assert_eq!(d.dim(), 165);
    }

    #[test]
    fn unit_acts_as_identity() {
        let limits = Limits::default();
        let a = SchurAlgebra::new(2, 2, f(2), &limits).unwrap();
        for b in 0..a.dim() {
            let mut x = vec![0u32; a.dim()];
            x[b] = 1;
            // unit · b = b
            let mut out = vec![0u32; a.dim()];
            for (u, &cu) in a.unit.iter().enumerate() {
                if cu == 0 {
                    continue;
                }
                for (k, v) in a.product(u, b) {
                    out[k] = a.field.add(out[k], a.field.mul(cu, v));
                }
            }
            assert_eq!(out, x);
        }
    }

    #[test]
    fn associativity_spot_checks() {
        let limits = Limits::default();
        let a = SchurAlgebra::new(2, 2, f(2), &limits).unwrap();
        assert!(a.spot_check_associativity(64));
        let b = SchurAlgebra::new(3, 2, f(3), &limits).unwrap();
        assert!(b.spot_check_associativity(64));
    }

    #[test]
    fn generating_set_is_small_and_generates() {
        let limits = Limits::default();
        let a = SchurAlgebra::new(2, 2, f(2), &limits).unwrap();
        let gens = a.generating_set();
        assert!(!gens.is_empty());
        assert!(gens.len() < a.dim());
    }

    #[test]
    fn resource_guard_trips() {
        let limits = Limits {
            max_tensor_dim: 8,
            ..Limits::default()
        };
        assert!(SchurAlgebra::new(2, 4, f(2), &limits).is_err());
    }
}
