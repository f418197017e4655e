//! Homological primitives over the group algebra: free covers, syzygies,
//! Tor, resolutions, and the subset complex.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::Error;
use crate::linalg::{self, Field, FieldMatrix, IncrementalRref};

use super::group::PermGroup;
use super::module::{
    coinvariant_tensor, dual_module, free_module, quotient_module, submodule_from_basis,
    GroupModule, Module, ModuleMap,
};
use super::perm::Perm;
use std::sync::Arc;

/// A chain of modules with differentials composing to zero.
/// Terms are indexed by ascending degree; `diffs[i] : terms[i] → terms[i+1]`.
#[derive(Debug, Clone)]
pub struct ModuleComplex {
    pub terms: Vec<Module>,
    pub diffs: Vec<ModuleMap>,
}

impl ModuleComplex {
    pub fn new(terms: Vec<Module>, diffs: Vec<ModuleMap>) -> Result<ModuleComplex, Error> {
        if diffs.len() + 1 != terms.len() && !(terms.is_empty() && diffs.is_empty()) {
            return Err(Error::Shape("complex needs one differential per gap".into()));
        }
        for w in diffs.windows(2) {
            let sq = w[1].compose(&w[0])?;
            if !sq.is_zero() {
                return Err(Error::Shape("differentials do not square to zero".into()));
            }
        }
        Ok(ModuleComplex { terms, diffs })
    }

    /// Cohomology dimension at position `i` by rank bookkeeping.
    pub fn cohomology_dim(&self, i: usize) -> usize {
        let dim = self.terms[i].dim();
        let rank_out = if i < self.diffs.len() {
            linalg::rank(&self.diffs[i].matrix)
        } else {
            0
        };
        let rank_in = if i > 0 {
            linalg::rank(&self.diffs[i - 1].matrix)
        } else {
            0
        };
        dim - rank_out - rank_in
    }

    pub fn is_exact(&self) -> bool {
        (0..self.terms.len()).all(|i| self.cohomology_dim(i) == 0)
    }
}

/// Generators of a module: a greedy minimal set of basis vectors whose
/// orbits span. Returns indices into the standard basis.
pub fn greedy_generators(m: &Module) -> Vec<usize> {
    let field = m.field();
    let dim = m.dim();
    let mut span = IncrementalRref::new(field, dim);
    let mut gens = Vec::new();
    for i in 0..dim {
        if span.rank() == dim {
            break;
        }
        let mut e = vec![0u32; dim];
        e[i] = 1;
        let before = span.rank();
        span.push_row(e.clone());
        if span.rank() == before {
            continue;
        }
        gens.push(i);
        for idx in 0..m.group().order() {
            span.push_row(m.act_vec(idx, &e));
        }
    }
    gens
}

/// Free cover `K[G]^k → M` built on greedy generators: the (copy i,
/// element h) basis vector maps to `ρ(h) · v_i`.
pub fn free_cover(m: &Module) -> (Module, ModuleMap) {
    let field = m.field();
    let group = m.group().clone();
    let gens = greedy_generators(m);
    let k = gens.len();
    let free = free_module(&group, field, k);
    let order = group.order();
    let mut mat = FieldMatrix::zero(field, m.dim(), k * order);
    for (ci, &gi) in gens.iter().enumerate() {
        let mut e = vec![0u32; m.dim()];
        e[gi] = 1;
        for h in 0..order {
            let img = m.act_vec(h, &e);
            for (r, &v) in img.iter().enumerate() {
                mat.set(r, ci * order + h, v);
            }
        }
    }
    let cover = ModuleMap::new_unchecked(free.clone(), m.clone(), mat);
    (free, cover)
}

/// Kernel of a module map as a module with its inclusion.
pub fn kernel_module(phi: &ModuleMap) -> (Module, ModuleMap) {
    let basis_rows = linalg::kernel_basis(&phi.matrix);
    let basis = basis_rows.transpose(); // columns span the kernel
    submodule_from_basis(&phi.source, &basis)
}

/// Cokernel of a module map as a quotient module with its projection.
pub fn cokernel_module(phi: &ModuleMap) -> (Module, ModuleMap) {
    let (q, data) = quotient_module(&phi.target, &phi.matrix);
    let proj = ModuleMap::new_unchecked(phi.target.clone(), q.clone(), data.proj);
    (q, proj)
}

/// Syzygy data: an embedding of `M` into a free module with its cokernel,
/// `0 → M → P → ΣM → 0`.
pub struct Syzygy {
    pub embedding: ModuleMap,
    pub free: Module,
    pub cosyzygy: Module,
    pub projection: ModuleMap,
}

/// Embed `M` into a free module by dualizing a free cover of `M^du`.
/// The contragredient of the free module in its regular basis is the
/// same matrices, so the transposed cover is a genuine map `M → K[G]^k`.
pub fn syzygy(m: &Module) -> Syzygy {
    let md = dual_module(m);
    let (free, cover) = free_cover(&md);
    let emb = ModuleMap::new_unchecked(m.clone(), free.clone(), cover.matrix.transpose());
    let (cosyz, proj) = cokernel_module(&emb);
    Syzygy {
        embedding: emb,
        free,
        cosyzygy: cosyz,
        projection: proj,
    }
}

/// Free resolution `F_len → … → F_1 → F_0 → M → 0`. Returns the free
/// terms (ascending homological degree) and the differentials
/// `d_i : F_i → F_{i-1}` along with the augmentation `F_0 → M`.
pub struct FreeResolution {
    pub terms: Vec<Module>,
    /// `diffs[i] : terms[i+1] → terms[i]`
    pub diffs: Vec<ModuleMap>,
    pub augmentation: ModuleMap,
}

pub fn free_resolution(m: &Module, length: usize) -> FreeResolution {
    let (f0, aug) = free_cover(m);
    let mut terms = vec![f0];
    let mut diffs = Vec::new();
    let mut last_map = aug.clone();
    for _ in 0..length {
        if last_map.matrix.is_zero() && last_map.source.dim() == 0 {
            break;
        }
        let (ker, incl) = kernel_module(&last_map);
        if ker.dim() == 0 {
            // resolution has terminated; append a zero term
            let zero = zero_module(m.group(), m.field());
            let d = ModuleMap::zero(zero.clone(), terms.last().unwrap().clone());
            terms.push(zero);
            diffs.push(d);
            last_map = diffs.last().unwrap().clone();
            continue;
        }
        let (f, cover) = free_cover(&ker);
        let d = incl.compose(&cover).expect("dims");
        terms.push(f);
        diffs.push(d.clone());
        last_map = d;
    }
    FreeResolution {
        terms,
        diffs,
        augmentation: aug,
    }
}

pub fn zero_module(group: &Arc<PermGroup>, field: Field) -> Module {
    let actions = group
        .gens()
        .iter()
        .map(|_| FieldMatrix::zero(field, 0, 0))
        .collect();
    GroupModule::derived_with_dim(group.clone(), field, 0, actions, Some(vec![vec![]; group.gens().len()]))
}

/// `Tor_1^G(X, M)` as a dimension, computed from a free presentation
/// `F_2 → F_1 → F_0 → M`: homology of `X ⊗_G F_*` in the middle.
pub fn tor1_dim(x: &Module, m: &Module) -> Result<usize, Error> {
    x.same_ambient(m)?;
    let res = free_resolution(m, 2);
    let c1 = coinvariant_tensor(x, &res.terms[1])?;
    let c0 = coinvariant_tensor(x, &res.terms[0])?;
    // induced maps on coinvariants: Q_target ∘ (I ⊗ d) ∘ section
    let id_x = FieldMatrix::identity(x.field(), x.dim());
    let d1 = c0
        .proj
        .mul(&linalg::kron(&id_x, &res.diffs[0].matrix)?)?
        .mul(&c1.section)?;
    let rank_d2 = if res.diffs.len() > 1 {
        let c2 = coinvariant_tensor(x, &res.terms[2])?;
        let d2 = c1
            .proj
            .mul(&linalg::kron(&id_x, &res.diffs[1].matrix)?)?
            .mul(&c2.section)?;
        linalg::rank(&d2)
    } else {
        0
    };
    let ker_d1 = c1.dim - linalg::rank(&d1);
    Ok(ker_d1 - rank_d2)
}

/// The subset complex over F_2: `B_k` is spanned by the k-element subsets
/// of `{1..n}` and `d(X) = Σ_{X ⊂ Y} Y` over the (k+1)-element supersets.
pub fn subset_complex(n: usize, field: Field) -> Result<ModuleComplex, Error> {
    if field.p() != 2 {
        return Err(Error::Other("subset complex requires p = 2".into()));
    }
    let group = PermGroup::symmetric(n);
    // enumerate subsets by size, as sorted index vectors
    let mut by_size: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n + 1];
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        by_size[subset.len()].push(subset);
    }
    for level in &mut by_size {
        level.sort();
    }
    let index_of = |subset: &Vec<usize>, level: &Vec<Vec<usize>>| -> usize {
        level.binary_search(subset).expect("subset enumerated")
    };
    let mut terms = Vec::new();
    for level in &by_size {
        let points: Vec<Vec<usize>> = group
            .gens()
            .iter()
            .map(|g| {
                level
                    .iter()
                    .map(|s| {
                        let mut img: Vec<usize> = s.iter().map(|&i| g.apply(i)).collect();
                        img.sort();
                        index_of(&img, level)
                    })
                    .collect()
            })
            .collect();
        terms.push(GroupModule::from_points(
            group.clone(),
            field,
            level.len(),
            points,
        ));
    }
    let mut diffs = Vec::new();
    for k in 0..n {
        let mut d = FieldMatrix::zero(field, by_size[k + 1].len(), by_size[k].len());
        for (j, s) in by_size[k].iter().enumerate() {
            for extra in 0..n {
                if s.contains(&extra) {
                    continue;
                }
                let mut sup = s.clone();
                sup.push(extra);
                sup.sort();
                let i = index_of(&sup, &by_size[k + 1]);
                d.set(i, j, d.get(i, j) ^ 1);
            }
        }
        diffs.push(ModuleMap::new_unchecked(
            terms[k].clone(),
            terms[k + 1].clone(),
            d,
        ));
    }
    ModuleComplex::new(terms, diffs)
}

/// Seeded random module of dimension at most `max_dim`: a random submodule
/// of `K[G] ⊕ K[G]` conjugated by a random change of basis.
pub fn random_module(group: &Arc<PermGroup>, field: Field, seed: u64, max_dim: usize) -> Module {
    let mut rng = StdRng::seed_from_u64(seed);
    let reg = free_module(group, field, 2);
    let ambient_dim = reg.dim();
    for _attempt in 0..64 {
        let v: Vec<u32> = (0..ambient_dim)
            .map(|_| rng.gen_range(0..field.p()))
            .collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        // span of the orbit of v
        let mut span = IncrementalRref::new(field, ambient_dim);
        for idx in 0..group.order() {
            span.push_row(reg.act_vec(idx, &v));
        }
        let dim = span.rank();
        if dim == 0 || dim > max_dim {
            continue;
        }
        // pick an independent subset of the orbit as the basis
        let mut basis_cols: Vec<Vec<u32>> = Vec::new();
        let mut collect = IncrementalRref::new(field, ambient_dim);
        'orbit: for idx in 0..group.order() {
            let w = reg.act_vec(idx, &v);
            let before = collect.rank();
            collect.push_row(w.clone());
            if collect.rank() > before {
                basis_cols.push(w);
                if basis_cols.len() == dim {
                    break 'orbit;
                }
            }
        }
        let mut basis = FieldMatrix::zero(field, ambient_dim, dim);
        for (j, col) in basis_cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                basis.set(i, j, x);
            }
        }
        let (sub, _incl) = submodule_from_basis(&reg, &basis);
        // conjugate by a random invertible matrix to shed the special basis
        let s = loop {
            let cand = FieldMatrix::from_fn(field, dim, dim, |_, _| rng.gen_range(0..field.p()));
            if linalg::is_invertible(&cand) {
                break cand;
            }
        };
        let s_inv = linalg::inverse(&s).expect("square").expect("invertible");
        let actions = sub
            .gen_actions()
            .iter()
            .map(|a| s.mul(a).expect("dim").mul(&s_inv).expect("dim"))
            .collect();
        return GroupModule::derived_with_dim(group.clone(), field, dim, actions, None);
    }
    // fall back to the trivial module if sampling kept overshooting
    super::module::trivial_module(group, field)
}

/// Extend a permutation of `{0..n}` to group element words: helper for
/// tests needing explicit elements.
pub fn perm_in(group: &Arc<PermGroup>, images: &[usize]) -> Option<Perm> {
    let p = Perm::new(images.to_vec()).ok()?;
    group.contains(&p).then_some(p)
}
