//! Finite-dimensional representations of permutation groups.
//!
//! A module stores one invertible matrix per group generator. Arbitrary
//! elements act through the group's stored generator words. Modules whose
//! basis is permuted by the action additionally carry the point action,
//! which unlocks a much faster Hom solver.
//!
//! All modules are left modules; vectors are columns, so maps compose as
//! matrices do. Where a right action is needed (tensor over the group) the
//! conversion `g ↦ g⁻¹` happens inside the operation.

use std::sync::Arc;

use crate::error::Error;
use crate::linalg::{
    self, cokernel_data, kron, Field, FieldMatrix, IncrementalRref, QuotientData,
};

use super::group::{GroupTag, PermGroup, Subgroup};
use super::perm::Perm;

pub type Module = Arc<GroupModule>;

#[derive(Debug, Clone)]
pub struct GroupModule {
    group: Arc<PermGroup>,
    field: Field,
    dim: usize,
    gen_actions: Vec<FieldMatrix>,
    /// When the action permutes the basis: per-generator point action.
    perm_points: Option<Vec<Vec<usize>>>,
}

impl GroupModule {
    /// Validating constructor: checks invertibility of every generator
    /// action and the group relations (all braid relations for symmetric
    /// groups, 32 seeded random relation words otherwise).
    pub fn new(
        group: Arc<PermGroup>,
        field: Field,
        gen_actions: Vec<FieldMatrix>,
    ) -> Result<Module, Error> {
        let m = GroupModule::from_parts(group, field, gen_actions, None, None)?;
        m.check_invertible()?;
        m.check_relations()?;
        Ok(Arc::new(m))
    }

    /// Like [`GroupModule::new`] for groups without generators, where the
    /// dimension cannot be read off the (empty) action list.
    pub fn new_with_dim(
        group: Arc<PermGroup>,
        field: Field,
        dim: usize,
        gen_actions: Vec<FieldMatrix>,
    ) -> Result<Module, Error> {
        let m = GroupModule::from_parts(group, field, gen_actions, None, Some(dim))?;
        m.check_invertible()?;
        m.check_relations()?;
        Ok(Arc::new(m))
    }

    /// Constructor for internally derived modules whose validity is forced
    /// by construction (submodules, quotients, tensors of valid modules).
    /// Test-only constructor mirroring `derived_with_dim`.
    #[doc(hidden)]
    pub fn derived_for_tests(
        group: Arc<PermGroup>,
        field: Field,
        dim: usize,
        gen_actions: Vec<FieldMatrix>,
    ) -> Module {
        GroupModule::derived_with_dim(group, field, dim, gen_actions, None)
    }

    pub(crate) fn derived_with_dim(
        group: Arc<PermGroup>,
        field: Field,
        dim: usize,
        gen_actions: Vec<FieldMatrix>,
        perm_points: Option<Vec<Vec<usize>>>,
    ) -> Module {
        Arc::new(
            GroupModule::from_parts(group, field, gen_actions, perm_points, Some(dim))
                .expect("derived module shapes"),
        )
    }

    fn from_parts(
        group: Arc<PermGroup>,
        field: Field,
        gen_actions: Vec<FieldMatrix>,
        perm_points: Option<Vec<Vec<usize>>>,
        declared_dim: Option<usize>,
    ) -> Result<GroupModule, Error> {
        if gen_actions.len() != group.gens().len() {
            return Err(Error::Shape("one action matrix per generator".into()));
        }
        let dim = declared_dim
            .or_else(|| gen_actions.first().map(|m| m.rows()))
            .unwrap_or(0);
        for a in &gen_actions {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::Shape("action matrices must be square of equal size".into()));
            }
            if a.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(GroupModule {
            group,
            field,
            dim,
            gen_actions,
            perm_points,
        })
    }

    /// Permutation module from per-generator point actions.
    pub fn from_points(
        group: Arc<PermGroup>,
        field: Field,
        dim: usize,
        points: Vec<Vec<usize>>,
    ) -> Module {
        let gen_actions = points
            .iter()
            .map(|pts| {
                debug_assert_eq!(pts.len(), dim);
                FieldMatrix::from_fn(field, dim, dim, |i, j| u32::from(pts[j] == i))
            })
            .collect();
        GroupModule::derived_with_dim(group, field, dim, gen_actions, Some(points))
    }

    fn check_invertible(&self) -> Result<(), Error> {
        for (generator, a) in self.gen_actions.iter().enumerate() {
            if !linalg::is_invertible(a) {
                return Err(Error::NotInvertible { generator });
            }
        }
        Ok(())
    }

    fn check_relations(&self) -> Result<(), Error> {
        match self.group.tag() {
            GroupTag::Symmetric(_) => self.check_braid_relations(),
            _ => self.check_random_relations(32),
        }
    }

    fn check_braid_relations(&self) -> Result<(), Error> {
        let id = FieldMatrix::identity(self.field, self.dim);
        let a = &self.gen_actions;
        for s in a {
            if s.mul(s).expect("square") != id {
                return Err(Error::RelationViolated);
            }
        }
        for i in 0..a.len() {
            for j in 0..a.len() {
                if i + 1 == j {
                    let st = a[i].mul(&a[j]).expect("square");
                    if st.mul(&st).expect("sq").mul(&st).expect("sq") != id {
                        return Err(Error::RelationViolated);
                    }
                } else if i + 2 <= j {
                    let st = a[i].mul(&a[j]).expect("square");
                    if st.mul(&st).expect("sq") != id {
                        return Err(Error::RelationViolated);
                    }
                }
            }
        }
        Ok(())
    }

    /// Spot-check: random words evaluating to the identity permutation must
    /// act as the identity matrix.
    fn check_random_relations(&self, count: usize) -> Result<(), Error> {
        if self.group.gens().is_empty() {
            return Ok(());
        }
        let id = FieldMatrix::identity(self.field, self.dim);
        let mut state = 0x5eedu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..count {
            let len = 2 + (next() % 7) as usize;
            let word: Vec<usize> = (0..len)
                .map(|_| (next() % self.group.gens().len() as u64) as usize)
                .collect();
            // close the word into a relation using the stored word of the
            // inverse element
            let perm = word.iter().fold(
                Perm::identity(self.group.degree()),
                |acc, &gi| self.group.gens()[gi].compose(&acc),
            );
            let inv_idx = self
                .group
                .element_index(&perm.inverse())
                .ok_or(Error::RelationViolated)?;
            let mut mat = word
                .iter()
                .fold(id.clone(), |acc, &gi| {
                    self.gen_actions[gi].mul(&acc).expect("square")
                });
            mat = self.group.fold_word(inv_idx, mat, |acc, gi| {
                self.gen_actions[gi].mul(&acc).expect("square")
            });
            if mat != id {
                return Err(Error::RelationViolated);
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gen_action(&self, i: usize) -> &FieldMatrix {
        &self.gen_actions[i]
    }

    pub fn gen_actions(&self) -> &[FieldMatrix] {
        &self.gen_actions
    }

    pub fn perm_points(&self) -> Option<&Vec<Vec<usize>>> {
        self.perm_points.as_ref()
    }

    /// Matrix of the element at group index `idx`.
    pub fn act(&self, idx: usize) -> FieldMatrix {
        self.group.fold_word(
            idx,
            FieldMatrix::identity(self.field, self.dim),
            |acc, gi| self.gen_actions[gi].mul(&acc).expect("square"),
        )
    }

    /// Image of a vector under the element at group index `idx`, folding
    /// generator actions without materializing the element's matrix.
    pub fn act_vec(&self, idx: usize, v: &[u32]) -> Vec<u32> {
        self.group.fold_word(idx, v.to_vec(), |acc, gi| {
            self.gen_actions[gi].mul_vec(&acc).expect("square")
        })
    }

    /// Matrix of an arbitrary group element.
    pub fn act_by(&self, p: &Perm) -> Result<FieldMatrix, Error> {
        let idx = self
            .group
            .element_index(p)
            .ok_or_else(|| Error::InvalidPermutation(format!("{:?} not in group", p.images())))?;
        Ok(self.act(idx))
    }

    /// Point action of the element at group index `idx`, when permutation.
    pub fn act_points(&self, idx: usize) -> Option<Vec<usize>> {
        let pts = self.perm_points.as_ref()?;
        Some(self.group.fold_word(idx, (0..self.dim).collect(), |acc: Vec<usize>, gi| {
            acc.into_iter().map(|x| pts[gi][x]).collect()
        }))
    }

    pub fn same_ambient(&self, other: &GroupModule) -> Result<(), Error> {
        if self.group.as_ref() != other.group.as_ref() {
            return Err(Error::GroupMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }
}

/// The regular module `K[G]` on the element basis, `g · e_h = e_{gh}`.
pub fn regular_module(group: &Arc<PermGroup>, field: Field) -> Module {
    let n = group.order();
    let points: Vec<Vec<usize>> = group
        .gens()
        .iter()
        .map(|g| {
            (0..n)
                .map(|h| {
                    let gh = g.compose(&group.elements()[h]);
                    group.element_index(&gh).expect("closed")
                })
                .collect()
        })
        .collect();
    GroupModule::from_points(group.clone(), field, n, points)
}

/// The trivial one-dimensional module.
pub fn trivial_module(group: &Arc<PermGroup>, field: Field) -> Module {
    let points = vec![vec![0usize]; group.gens().len()];
    GroupModule::from_points(group.clone(), field, 1, points)
}

/// The sign module; coincides with the trivial module when p = 2.
pub fn sign_module(group: &Arc<PermGroup>, field: Field) -> Module {
    let actions = group
        .gens()
        .iter()
        .map(|g| {
            let sgn = perm_sign(g);
            let v = if sgn == 1 { 1 } else { field.neg(1) };
            FieldMatrix::from_entries(field, 1, 1, vec![v]).expect("1x1")
        })
        .collect();
    GroupModule::derived_with_dim(group.clone(), field, 1, actions, None)
}

fn perm_sign(p: &Perm) -> i32 {
    let mut seen = vec![false; p.degree()];
    let mut sign = 1;
    for i in 0..p.degree() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p.apply(j);
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Free module `K[G]^rank` on the (copy, element) basis, copy-major.
pub fn free_module(group: &Arc<PermGroup>, field: Field, rank: usize) -> Module {
    let n = group.order();
    let points: Vec<Vec<usize>> = group
        .gens()
        .iter()
        .map(|g| {
            let mut pts = Vec::with_capacity(rank * n);
            for copy in 0..rank {
                for h in 0..n {
                    let gh = g.compose(&group.elements()[h]);
                    pts.push(copy * n + group.element_index(&gh).expect("closed"));
                }
            }
            pts
        })
        .collect();
    GroupModule::from_points(group.clone(), field, rank * n, points)
}

/// The Young permutation module `K[S_n/S_λ]` on the coset basis.
pub fn permutation_module(n: usize, lambda: &[usize], field: Field) -> Result<Module, Error> {
    let sn = PermGroup::symmetric(n);
    let young = PermGroup::young(lambda)?;
    if young.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            got: young.degree(),
        });
    }
    let sub = Subgroup::inclusion(young, sn.clone())?;
    Ok(coset_module(&sub, field))
}

/// Permutation module of `G` on the cosets `G / im(H)` of an embedding.
pub fn coset_module(sub: &Subgroup, field: Field) -> Module {
    let k = sub.index();
    let points: Vec<Vec<usize>> = sub
        .amb
        .gens()
        .iter()
        .map(|g| {
            (0..k)
                .map(|i| {
                    let gt = g.compose(&sub.transversal()[i]);
                    sub.factor(&gt).expect("factors").0
                })
                .collect()
        })
        .collect();
    GroupModule::from_points(sub.amb.clone(), field, k, points)
}

/// A map of modules: `matrix · ρ_src(g) = ρ_tgt(g) · matrix` for all g.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    pub matrix: FieldMatrix,
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, matrix: FieldMatrix) -> Result<ModuleMap, Error> {
        source.same_ambient(&target)?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Shape(format!(
                "map matrix {}x{} between modules of dims {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        let map = ModuleMap {
            source,
            target,
            matrix,
        };
        map.check_equivariant()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: Module, target: Module, matrix: FieldMatrix) -> ModuleMap {
        debug_assert_eq!(matrix.rows(), target.dim());
        debug_assert_eq!(matrix.cols(), source.dim());
        ModuleMap {
            source,
            target,
            matrix,
        }
    }

    pub fn zero(source: Module, target: Module) -> ModuleMap {
        let field = source.field();
        let m = FieldMatrix::zero(field, target.dim(), source.dim());
        ModuleMap::new_unchecked(source, target, m)
    }

    pub fn identity(module: Module) -> ModuleMap {
        let m = FieldMatrix::identity(module.field(), module.dim());
        ModuleMap::new_unchecked(module.clone(), module, m)
    }

    fn check_equivariant(&self) -> Result<(), Error> {
        for (generator, (a, b)) in self
            .source
            .gen_actions()
            .iter()
            .zip(self.target.gen_actions())
            .enumerate()
        {
            let left = self.matrix.mul(a).expect("shapes");
            let right = b.mul(&self.matrix).expect("shapes");
            if left != right {
                return Err(Error::NotEquivariant { generator });
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap, Error> {
        if other.target.dim() != self.source.dim() {
            return Err(Error::Shape("composition dims".into()));
        }
        Ok(ModuleMap::new_unchecked(
            other.source.clone(),
            self.target.clone(),
            self.matrix.mul(&other.matrix)?,
        ))
    }

    /// The dual map between contragredient modules (transpose matrix).
    pub fn dual(&self) -> ModuleMap {
        ModuleMap::new_unchecked(
            dual_module(&self.target),
            dual_module(&self.source),
            self.matrix.transpose(),
        )
    }
}

/// Direct sum, first summand's basis first.
pub fn direct_sum(a: &Module, b: &Module) -> Module {
    a.same_ambient(b).expect("same ambient");
    let actions = a
        .gen_actions()
        .iter()
        .zip(b.gen_actions())
        .map(|(x, y)| x.block_diag(y))
        .collect();
    let points = match (a.perm_points(), b.perm_points()) {
        (Some(pa), Some(pb)) => Some(
            pa.iter()
                .zip(pb)
                .map(|(x, y)| {
                    x.iter()
                        .copied()
                        .chain(y.iter().map(|&v| v + a.dim()))
                        .collect()
                })
                .collect(),
        ),
        _ => None,
    };
    GroupModule::derived_with_dim(a.group().clone(), a.field(), a.dim() + b.dim(), actions, points)
}

pub fn direct_sum_map(f: &ModuleMap, g: &ModuleMap) -> ModuleMap {
    ModuleMap::new_unchecked(
        direct_sum(&f.source, &g.source),
        direct_sum(&f.target, &g.target),
        f.matrix.block_diag(&g.matrix),
    )
}

/// Tensor product with the diagonal action, lexicographic basis order.
pub fn tensor_module(a: &Module, b: &Module) -> Module {
    a.same_ambient(b).expect("same ambient");
    let actions: Vec<FieldMatrix> = a
        .gen_actions()
        .iter()
        .zip(b.gen_actions())
        .map(|(x, y)| kron(x, y).expect("same field"))
        .collect();
    let points = match (a.perm_points(), b.perm_points()) {
        (Some(pa), Some(pb)) => Some(
            pa.iter()
                .zip(pb)
                .map(|(x, y)| {
                    let mut pts = Vec::with_capacity(a.dim() * b.dim());
                    for i in 0..a.dim() {
                        for k in 0..b.dim() {
                            pts.push(x[i] * b.dim() + y[k]);
                        }
                    }
                    pts
                })
                .collect(),
        ),
        _ => None,
    };
    GroupModule::derived_with_dim(a.group().clone(), a.field(), a.dim() * b.dim(), actions, points)
}

/// Contragredient module: `ρ*(g) = (ρ(g)⁻¹)ᵀ`.
///
/// For permutation actions this is the same matrix, so the double dual is
/// the identical module on the nose.
pub fn dual_module(m: &Module) -> Module {
    let actions = m
        .gen_actions()
        .iter()
        .map(|a| {
            linalg::inverse(a)
                .expect("square")
                .expect("invertible")
                .transpose()
        })
        .collect();
    GroupModule::derived_with_dim(m.group().clone(), m.field(), m.dim(), actions, m.perm_points().cloned())
}

/// External product `M ⊠ N` over `G × H`: the product group's generators
/// are G's followed by H's, acting on the lexicographic tensor basis.
pub fn external_box(product: &Arc<PermGroup>, m: &Module, n: &Module) -> Result<Module, Error> {
    if m.field() != n.field() {
        return Err(Error::FieldMismatch);
    }
    let expected = m.group().gens().len() + n.group().gens().len();
    if product.gens().len() != expected {
        return Err(Error::BadSubgroup(
            "product group generator count mismatch".into(),
        ));
    }
    let id_m = FieldMatrix::identity(m.field(), m.dim());
    let id_n = FieldMatrix::identity(n.field(), n.dim());
    let mut actions = Vec::with_capacity(expected);
    for a in m.gen_actions() {
        actions.push(kron(a, &id_n)?);
    }
    for b in n.gen_actions() {
        actions.push(kron(&id_m, b)?);
    }
    let points = match (m.perm_points(), n.perm_points()) {
        (Some(pm), Some(pn)) => {
            let mut pts = Vec::with_capacity(expected);
            for pa in pm {
                let mut v = Vec::with_capacity(m.dim() * n.dim());
                for i in 0..m.dim() {
                    for k in 0..n.dim() {
                        v.push(pa[i] * n.dim() + k);
                    }
                }
                pts.push(v);
            }
            for pb in pn {
                let mut v = Vec::with_capacity(m.dim() * n.dim());
                for i in 0..m.dim() {
                    for k in 0..n.dim() {
                        v.push(i * n.dim() + pb[k]);
                    }
                }
                pts.push(v);
            }
            Some(pts)
        }
        _ => None,
    };
    Ok(GroupModule::derived_with_dim(
        product.clone(),
        m.field(),
        m.dim() * n.dim(),
        actions,
        points,
    ))
}

/// The space `M ⊗_G N` (coinvariants of the diagonal action on `M ⊗ N`,
/// which agrees with the tensor over the group after the `g ↦ g⁻¹` right
/// module conversion on `M`).
pub struct CoinvariantSpace {
    pub dim: usize,
    /// projection from the `dim(M)·dim(N)` tensor coordinates
    pub proj: FieldMatrix,
    pub section: FieldMatrix,
}

pub fn coinvariant_tensor(m: &Module, n: &Module) -> Result<CoinvariantSpace, Error> {
    m.same_ambient(n)?;
    let t = tensor_module(m, n);
    let q = coinvariants_of(&t);
    Ok(CoinvariantSpace {
        dim: q.dim,
        proj: q.proj,
        section: q.section,
    })
}

/// Quotient of a module by the span of `g·v - v` over all generators.
pub fn coinvariants_of(t: &Module) -> QuotientData {
    let field = t.field();
    let dim = t.dim();
    if t.group().gens().is_empty() {
        let id = FieldMatrix::identity(field, dim);
        return QuotientData {
            dim,
            proj: id.clone(),
            section: id,
        };
    }
    let id = FieldMatrix::identity(field, dim);
    let mut span = t.gen_action(0).sub(&id).expect("shape");
    for g in 1..t.group().gens().len() {
        let d = t.gen_action(g).sub(&id).expect("shape");
        span = span.hcat(&d).expect("same rows");
    }
    cokernel_data(&span)
}

/// Invariant vectors of a module: kernel of all `g - 1`.
pub fn invariants_of(t: &Module) -> FieldMatrix {
    let field = t.field();
    let dim = t.dim();
    if t.group().gens().is_empty() {
        return FieldMatrix::identity(field, dim);
    }
    let mut acc = IncrementalRref::new(field, dim);
    let id = FieldMatrix::identity(field, dim);
    for g in 0..t.group().gens().len() {
        let d = t.gen_action(g).sub(&id).expect("shape");
        for r in 0..d.rows() {
            acc.push_row(d.row(r).to_vec());
        }
    }
    acc.kernel()
}

/// Quotient module by a submodule given as the column span of `span`
/// (which must be G-stable). Returns the quotient with its projection
/// and section maps.
pub fn quotient_module(t: &Module, span: &FieldMatrix) -> (Module, QuotientData) {
    let q = cokernel_data(span);
    let actions = t
        .gen_actions()
        .iter()
        .map(|a| {
            q.proj
                .mul(a)
                .expect("shape")
                .mul(&q.section)
                .expect("shape")
        })
        .collect();
    let module = GroupModule::derived_with_dim(t.group().clone(), t.field(), q.dim, actions, None);
    (module, q)
}

/// Submodule spanned by the columns of `basis` (must be G-stable and
/// linearly independent). Action is solved through the basis.
pub fn submodule_from_basis(t: &Module, basis: &FieldMatrix) -> (Module, ModuleMap) {
    let field = t.field();
    let k = basis.cols();
    let cols: Vec<Vec<u32>> = (0..k).map(|j| basis.col(j)).collect();
    let solver = linalg::CoordSolver::new(field, t.dim(), &cols);
    let actions: Vec<FieldMatrix> = t
        .gen_actions()
        .iter()
        .map(|a| {
            let image = a.mul(basis).expect("shape");
            let mut act = FieldMatrix::zero(field, k, k);
            for j in 0..k {
                // column j of a·basis expressed in the basis
                let coords = solver
                    .coords(&image.col(j))
                    .expect("submodule is not G-stable");
                for (i, &v) in coords.iter().enumerate() {
                    act.set(i, j, v);
                }
            }
            act
        })
        .collect();
    let sub = GroupModule::derived_with_dim(t.group().clone(), field, k, actions, None);
    let incl = ModuleMap::new_unchecked(sub.clone(), t.clone(), basis.clone());
    (sub, incl)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    #[test]
    fn regular_module_of_s2() {
        let g = PermGroup::symmetric(2);
        let m = regular_module(&g, f2());
        assert_eq!(m.dim(), 2);
        // permutation_module(2, (1,1)) is the regular module
        let y = permutation_module(2, &[1, 1], f2()).unwrap();
        assert_eq!(y.dim(), 2);
        assert_eq!(y.gen_actions(), m.gen_actions());
    }

    #[test]
    fn young_permutation_dims() {
        // index [S_3 : S_(2,1)] = 3
        let m = permutation_module(3, &[2, 1], f3()).unwrap();
        assert_eq!(m.dim(), 3);
        // K[S_n/S_n] is trivial
        let t = permutation_module(3, &[3], f3()).unwrap();
        assert_eq!(t.dim(), 1);
        assert_eq!(t.gen_actions()[0], FieldMatrix::identity(f3(), 1));
    }

    #[test]
    fn sign_is_trivial_at_p2() {
        let g = PermGroup::symmetric(3);
        let s = sign_module(&g, f2());
        for a in s.gen_actions() {
            assert_eq!(a.get(0, 0), 1);
        }
        let s3 = sign_module(&g, f3());
        for a in s3.gen_actions() {
            assert_eq!(a.get(0, 0), 2); // -1 mod 3
        }
    }

    #[test]
    fn double_dual_is_identical() {
        let g = PermGroup::symmetric(3);
        let m = permutation_module(3, &[2, 1], f3()).unwrap();
        let dd = dual_module(&dual_module(&m));
        assert_eq!(dd.gen_actions(), m.gen_actions());
    }

    #[test]
    fn module_map_rejects_non_equivariant() {
        let g = PermGroup::symmetric(2);
        let m = regular_module(&g, f2());
        let t = trivial_module(&g, f2());
        // the augmentation (1 1) is equivariant
        let aug = FieldMatrix::from_rows(f2(), vec![vec![1, 1]]).unwrap();
        assert!(ModuleMap::new(m.clone(), t.clone(), aug).is_ok());
        // (1 0) is not
        let bad = FieldMatrix::from_rows(f2(), vec![vec![1, 0]]).unwrap();
        assert!(ModuleMap::new(m, t, bad).is_err());
    }

    #[test]
    fn coinvariants_of_free_rank_one() {
        // K ⊗_{S_2} K[S_2] has dim 1
        let g = PermGroup::symmetric(2);
        let k = trivial_module(&g, f2());
        let reg = regular_module(&g, f2());
        let c = coinvariant_tensor(&k, &reg).unwrap();
        assert_eq!(c.dim, 1);
        // K ⊗_{S_2} K at p = 2 has dim 1
        let c2 = coinvariant_tensor(&k, &k).unwrap();
        assert_eq!(c2.dim, 1);
    }

    #[test]
    fn invariants_of_regular() {
        // the norm element spans the invariants of K[S_2] at p=2
        let g = PermGroup::symmetric(2);
        let reg = regular_module(&g, f2());
        let inv = invariants_of(&reg);
        assert_eq!(inv.rows(), 1);
        assert_eq!(inv.row(0), &[1, 1]);
    }
}
