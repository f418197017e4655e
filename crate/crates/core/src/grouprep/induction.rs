//! Induction and restriction along registered subgroup embeddings, the
//! external product over direct products, and wreath-product induction.

use std::sync::Arc;

use crate::error::Error;
use crate::linalg::{kron, FieldMatrix};

use super::group::{PermGroup, Subgroup};
use super::module::{GroupModule, Module, ModuleMap};

/// Induced module `Ind_H^G M` on the (coset, module-basis) basis,
/// coset-major in the fixed transversal order.
pub fn induce(sub: &Subgroup, m: &Module) -> Result<Module, Error> {
    if m.group().as_ref() != sub.sub.as_ref() {
        return Err(Error::GroupMismatch);
    }
    let k = sub.index();
    let dm = m.dim();
    let field = m.field();
    let dim = k * dm;
    // for each ambient generator: g · t_i = t_j · h, block (j, i) = ρ(h)
    let mut actions = Vec::with_capacity(sub.amb.gens().len());
    let mut point_actions: Option<Vec<Vec<usize>>> = m.perm_points().map(|_| Vec::new());
    for g in sub.amb.gens() {
        let mut mat = FieldMatrix::zero(field, dim, dim);
        let mut pts = vec![0usize; dim];
        let mut pts_ok = m.perm_points().is_some();
        for i in 0..k {
            let gt = g.compose(&sub.transversal()[i]);
            let (j, h_idx) = sub.factor(&gt).expect("transversal covers the group");
            let block = m.act(h_idx);
            for r in 0..dm {
                for c in 0..dm {
                    let v = block.get(r, c);
                    if v != 0 {
                        mat.set(j * dm + r, i * dm + c, v);
                    }
                }
            }
            if pts_ok {
                if let Some(hpts) = m.act_points(h_idx) {
                    for (c, &r) in hpts.iter().enumerate() {
                        pts[i * dm + c] = j * dm + r;
                    }
                } else {
                    pts_ok = false;
                }
            }
        }
        actions.push(mat);
        if pts_ok {
            if let Some(pa) = point_actions.as_mut() {
                pa.push(pts);
            }
        } else {
            point_actions = None;
        }
    }
    Ok(GroupModule::derived_with_dim(
        sub.amb.clone(),
        field,
        dim,
        actions,
        point_actions,
    ))
}

/// Induction applied to a map: `Ind(φ) = I_k ⊗ φ` in the coset-major basis.
pub fn induce_map(sub: &Subgroup, phi: &ModuleMap) -> Result<ModuleMap, Error> {
    let src = induce(sub, &phi.source)?;
    let tgt = induce(sub, &phi.target)?;
    let ik = FieldMatrix::identity(phi.source.field(), sub.index());
    let mat = kron(&ik, &phi.matrix)?;
    Ok(ModuleMap::new_unchecked(src, tgt, mat))
}

/// Restriction along an embedding: the subgroup's generators act through
/// their ambient images.
pub fn restrict(sub: &Subgroup, m: &Module) -> Result<Module, Error> {
    if m.group().as_ref() != sub.amb.as_ref() {
        return Err(Error::GroupMismatch);
    }
    let mut actions = Vec::with_capacity(sub.sub.gens().len());
    let mut points: Option<Vec<Vec<usize>>> = m.perm_points().map(|_| Vec::new());
    for i in 0..sub.sub.gens().len() {
        let img = sub.gen_image(i);
        let idx = sub
            .amb
            .element_index(img)
            .ok_or_else(|| Error::BadSubgroup("image not in ambient group".into()))?;
        actions.push(m.act(idx));
        match (points.as_mut(), m.act_points(idx)) {
            (Some(pa), Some(p)) => pa.push(p),
            _ => points = None,
        }
    }
    Ok(GroupModule::derived_with_dim(
        sub.sub.clone(),
        m.field(),
        m.dim(),
        actions,
        points,
    ))
}

pub fn restrict_map(sub: &Subgroup, phi: &ModuleMap) -> Result<ModuleMap, Error> {
    let src = restrict(sub, &phi.source)?;
    let tgt = restrict(sub, &phi.target)?;
    Ok(ModuleMap::new_unchecked(src, tgt, phi.matrix.clone()))
}

/// The base module `M ⊗ N^{⊗m}` of the wreath product `S_m ≀ S_n`:
/// the block copies of `S_n` act factorwise and the top `S_m` permutes
/// the tensor factors while acting on `M`.
fn wreath_base_module(
    wreath: &Arc<PermGroup>,
    m_top: &Module,
    n_base: &Module,
    m: usize,
    n: usize,
) -> Module {
    let field = m_top.field();
    let dn = n_base.dim();
    let dim_tensor = dn.pow(m as u32);
    let dim = m_top.dim() * dim_tensor;
    let mut actions = Vec::new();
    // generator order must match PermGroup::wreath: base blocks then top swaps
    let id_m = FieldMatrix::identity(field, m_top.dim());
    for block in 0..m {
        for gi in 0..n.saturating_sub(1) {
            // I_M ⊗ I^{⊗block} ⊗ ρ_N(s_gi) ⊗ I^{⊗(m-1-block)}
            let left = FieldMatrix::identity(field, dn.pow(block as u32));
            let right = FieldMatrix::identity(field, dn.pow((m - 1 - block) as u32));
            let tens = kron(&left, &kron(n_base.gen_action(gi), &right).expect("field"))
                .expect("field");
            actions.push(kron(&id_m, &tens).expect("field"));
        }
    }
    for b in 0..m.saturating_sub(1) {
        // ρ_M(s_b) ⊗ swap of adjacent tensor slots b, b+1
        let mut swap = FieldMatrix::zero(field, dim_tensor, dim_tensor);
        for idx in 0..dim_tensor {
            let digits = to_digits(idx, dn, m);
            let mut swapped = digits.clone();
            swapped.swap(b, b + 1);
            swap.set(from_digits(&swapped, dn), idx, 1);
        }
        actions.push(kron(m_top.gen_action(b), &swap).expect("field"));
    }
    debug_assert_eq!(actions.len(), wreath.gens().len());
    GroupModule::derived_with_dim(wreath.clone(), field, dim, actions, None)
}

fn to_digits(mut idx: usize, base: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in (0..len).rev() {
        d[slot] = idx % base;
        idx /= base;
    }
    d
}

fn from_digits(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base + d)
}

/// `M • N = Ind_{S_m ≀ S_n}^{S_mn} (M ⊗ N^{⊗m})` for `M` over `S_m` and
/// `N` over `S_n`.
pub fn wreath_induce(m_top: &Module, n_base: &Module) -> Result<Module, Error> {
    let (m, n) = wreath_degrees(m_top, n_base)?;
    let w = PermGroup::wreath(m, n);
    let base = wreath_base_module(&w, m_top, n_base, m, n);
    let smn = PermGroup::symmetric(m * n);
    let sub = Subgroup::inclusion(w.clone(), smn)?;
    induce(&sub, &base)
}

/// `•` applied to a map in the first slot: `φ • id_N`.
pub fn wreath_induce_map_left(phi: &ModuleMap, n_base: &Module) -> Result<ModuleMap, Error> {
    let (m, n) = wreath_degrees(&phi.source, n_base)?;
    let w = PermGroup::wreath(m, n);
    let smn = PermGroup::symmetric(m * n);
    let sub = Subgroup::inclusion(w.clone(), smn)?;
    let src_base = wreath_base_module(&w, &phi.source, n_base, m, n);
    let tgt_base = wreath_base_module(&w, &phi.target, n_base, m, n);
    let dn_pow = FieldMatrix::identity(phi.source.field(), n_base.dim().pow(m as u32));
    let base_map = ModuleMap::new_unchecked(src_base, tgt_base, kron(&phi.matrix, &dn_pow)?);
    induce_map(&sub, &base_map)
}

/// `•` applied to a map in the second slot: `id_M • ψ`.
pub fn wreath_induce_map_right(m_top: &Module, psi: &ModuleMap) -> Result<ModuleMap, Error> {
    let (m, n) = wreath_degrees(m_top, &psi.source)?;
    if psi.target.group().degree() != n {
        return Err(Error::GroupMismatch);
    }
    let w = PermGroup::wreath(m, n);
    let smn = PermGroup::symmetric(m * n);
    let sub = Subgroup::inclusion(w.clone(), smn)?;
    let src_base = wreath_base_module(&w, m_top, &psi.source, m, n);
    let tgt_base = wreath_base_module(&w, m_top, &psi.target, m, n);
    // ψ^{⊗m} on the tensor slots
    let mut tensor_pow = FieldMatrix::identity(m_top.field(), 1);
    for _ in 0..m {
        tensor_pow = kron(&tensor_pow, &psi.matrix)?;
    }
    let id_m = FieldMatrix::identity(m_top.field(), m_top.dim());
    let base_map = ModuleMap::new_unchecked(src_base, tgt_base, kron(&id_m, &tensor_pow)?);
    induce_map(&sub, &base_map)
}

fn wreath_degrees(m_top: &Module, n_base: &Module) -> Result<(usize, usize), Error> {
    if m_top.field() != n_base.field() {
        return Err(Error::FieldMismatch);
    }
    Ok((m_top.group().degree(), n_base.group().degree()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::hom::hom_dim;
    use crate::grouprep::module::{
        external_box, permutation_module, regular_module, trivial_module,
    };
    use crate::linalg::Field;

    fn f(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    fn s2_in_s3() -> Subgroup {
        let s3 = PermGroup::symmetric(3);
        let y = PermGroup::young(&[2, 1]).unwrap();
        Subgroup::inclusion(y, s3).unwrap()
    }

    #[test]
    fn induced_trivial_has_index_dim() {
        let sub = s2_in_s3();
        let k = trivial_module(&sub.sub, f(3));
        let ind = induce(&sub, &k).unwrap();
        assert_eq!(ind.dim(), 3);
    }

    #[test]
    fn restriction_of_regular_is_free() {
        let sub = s2_in_s3();
        let reg = regular_module(&sub.amb, f(2));
        let res = restrict(&sub, &reg).unwrap();
        assert_eq!(res.dim(), 6);
        // free of rank 3 over S_2: Hom(res, res) has dim 3·3·|S_2| / ... use
        // the Yoneda count: Hom(K[H]^3, X) = (dim X)^3
        let k = trivial_module(&sub.sub, f(2));
        assert_eq!(hom_dim(&res, &k).unwrap(), 3);
    }

    #[test]
    fn frobenius_reciprocity_dims() {
        // dim Hom_G(Ind M, N) = dim Hom_H(M, Res N) at p = 3
        let sub = s2_in_s3();
        let m = trivial_module(&sub.sub, f(3));
        let n = permutation_module(3, &[2, 1], f(3)).unwrap();
        let lhs = hom_dim(&induce(&sub, &m).unwrap(), &n).unwrap();
        let rhs = hom_dim(&m, &restrict(&sub, &n).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // and the other adjunction
        let lhs2 = hom_dim(&n, &induce(&sub, &m).unwrap()).unwrap();
        let rhs2 = hom_dim(&restrict(&sub, &n).unwrap(), &m).unwrap();
        assert_eq!(lhs2, rhs2);
    }

    #[test]
    fn external_box_of_regulars_is_regular() {
        let s2 = PermGroup::symmetric(2);
        let prod = PermGroup::product(&s2, &s2);
        let r = regular_module(&s2, f(2));
        let boxed = external_box(&prod, &r, &r).unwrap();
        assert_eq!(boxed.dim(), 4);
        // free of rank 1 over G×H: Hom to anything = dim of target
        let k2 = external_box(&prod, &trivial_module(&s2, f(2)), &trivial_module(&s2, f(2))).unwrap();
        assert_eq!(hom_dim(&boxed, &k2).unwrap(), 1);
        assert_eq!(hom_dim(&boxed, &boxed).unwrap(), 4);
    }

    #[test]
    fn wreath_induce_trivials() {
        // K • K for m = n = 2 has dim [S_4 : S_2≀S_2] = 24/8 = 3
        let s2 = PermGroup::symmetric(2);
        let k = trivial_module(&s2, f(2));
        let kk = wreath_induce(&k, &k).unwrap();
        assert_eq!(kk.dim(), 3);
    }

    #[test]
    fn wreath_induce_dim_formula() {
        // (m,n) = (2,2), M = K[S_2], N = K: dim = 3 · 2 · 1 = 6
        let s2 = PermGroup::symmetric(2);
        let reg = regular_module(&s2, f(2));
        let k = trivial_module(&s2, f(2));
        let m = wreath_induce(&reg, &k).unwrap();
        assert_eq!(m.dim(), 6);
    }

    #[test]
    fn wreath_with_m_one_is_identity() {
        // K • N ≅ N when m = 1
        let s1 = PermGroup::symmetric(1);
        let s3 = PermGroup::symmetric(3);
        let k = trivial_module(&s1, f(2));
        let n = permutation_module(3, &[2, 1], f(2)).unwrap();
        let out = wreath_induce(&k, &n).unwrap();
        assert_eq!(out.dim(), n.dim());
        assert_eq!(out.group().degree(), 3);
        assert_eq!(hom_dim(&out, &n).unwrap(), hom_dim(&n, &n).unwrap());
        let _ = s3;
    }
}
