//! The linearization functor and its adjoints: from polynomial functors to
//! symmetric group representations and back through (co)invariants of the
//! place permutation action.

use std::sync::Arc;

use crate::error::Error;
use crate::grouprep::{GroupModule, Module, PermGroup};
use crate::linalg::{kron, FieldMatrix, IncrementalRref};

use super::modules::{place_permutation, schur_quotient, schur_submodule, tensor_space_module, SchurModule};
use super::homext::{schur_hom, SchurHomBasis};
use super::SchurAlgebra;

/// `c*(F) = Hom(T^n, F)` with the symmetric group acting by precomposing
/// with place permutations.
pub fn c_star(f: &SchurModule) -> Result<(Module, SchurHomBasis), Error> {
    let algebra = &f.algebra;
    let t = tensor_space_module(algebra);
    let hom = schur_hom(&t, f)?;
    let group = PermGroup::symmetric(algebra.n);
    let field = algebra.field;
    let k = hom.dim();
    let mut actions = Vec::new();
    for s in group.gens() {
        let pts = place_permutation(algebra, s);
        let pmat = FieldMatrix::from_fn(field, algebra.t_dim, algebra.t_dim, |i, j| {
            u32::from(pts[j] == i)
        });
        let mut act = FieldMatrix::zero(field, k, k);
        for j in 0..k {
            let composed = hom.basis[j].mul(&pmat)?;
            let coords = hom
                .coords(&composed)
                .expect("precomposition is an intertwiner");
            for (i, &v) in coords.iter().enumerate() {
                act.set(i, j, v);
            }
        }
        actions.push(act);
    }
    Ok((
        GroupModule::derived_for_tests(group, field, k, actions),
        hom,
    ))
}

/// The diagonal module `M ⊗ T` over the symmetric group with place
/// permutation on the tensor side, plus its Schur-algebra action on the
/// tensor side only.
fn diagonal_data(
    algebra: &Arc<SchurAlgebra>,
    m: &Module,
) -> Result<(Vec<FieldMatrix>, Vec<FieldMatrix>), Error> {
    let field = algebra.field;
    let group = m.group();
    if group.degree() != algebra.n {
        return Err(Error::DegreeMismatch {
            expected: algebra.n,
            got: group.degree(),
        });
    }
    let t = tensor_space_module(algebra);
    let mut sym_actions = Vec::new();
    for (gi, s) in group.gens().iter().enumerate() {
        let pts = place_permutation(algebra, s);
        let pmat = FieldMatrix::from_fn(field, algebra.t_dim, algebra.t_dim, |i, j| {
            u32::from(pts[j] == i)
        });
        sym_actions.push(kron(m.gen_action(gi), &pmat)?);
    }
    let id_m = FieldMatrix::identity(field, m.dim());
    let mut alg_actions = Vec::new();
    for b in 0..algebra.dim() {
        alg_actions.push(kron(&id_m, &t.actions[b])?);
    }
    Ok((sym_actions, alg_actions))
}

/// `c_!(M) = (M ⊗ T)_{S_n}` as a module over the Schur algebra.
pub fn c_bang(algebra: &Arc<SchurAlgebra>, m: &Module) -> Result<SchurModule, Error> {
    let field = algebra.field;
    let (sym_actions, alg_actions) = diagonal_data(algebra, m)?;
    let dim = m.dim() * algebra.t_dim;
    let id = FieldMatrix::identity(field, dim);
    let mut span: Option<FieldMatrix> = None;
    for a in &sym_actions {
        let d = a.sub(&id)?;
        span = Some(match span {
            None => d,
            Some(s) => s.hcat(&d)?,
        });
    }
    let span = span.unwrap_or_else(|| FieldMatrix::zero(field, dim, 0));
    let parent = SchurModule {
        algebra: algebra.clone(),
        dim,
        actions: alg_actions,
    };
    Ok(schur_quotient(&parent, &span).0)
}

/// `c_*(M) = (M ⊗ T)^{S_n}`.
pub fn c_lowerstar(algebra: &Arc<SchurAlgebra>, m: &Module) -> Result<SchurModule, Error> {
    let field = algebra.field;
    let (sym_actions, alg_actions) = diagonal_data(algebra, m)?;
    let dim = m.dim() * algebra.t_dim;
    let id = FieldMatrix::identity(field, dim);
    let mut acc = IncrementalRref::new(field, dim);
    for a in &sym_actions {
        let d = a.sub(&id)?;
        for r in 0..d.rows() {
            acc.push_row(d.row(r).to_vec());
        }
    }
    let basis = acc.kernel().transpose();
    let parent = SchurModule {
        algebra: algebra.clone(),
        dim,
        actions: alg_actions,
    };
    Ok(schur_submodule(&parent, &basis))
}

/// `d*(F)`: the cokernel of the counit `c_! c*(F) → F`, given by
/// evaluation `Φ ⊗ t ↦ Φ(t)`.
pub fn d_star(f: &SchurModule) -> Result<SchurModule, Error> {
    let algebra = &f.algebra;
    let field = algebra.field;
    let (_, hom) = c_star(f)?;
    let k = hom.dim();
    // the image of evaluation is already the image of the counit, no need
    // to pass through the coinvariant quotient
    let mut image = FieldMatrix::zero(field, f.dim, k * algebra.t_dim);
    for j in 0..k {
        for t in 0..algebra.t_dim {
            for r in 0..f.dim {
                image.set(r, j * algebra.t_dim + t, hom.basis[j].get(r, t));
            }
        }
    }
    Ok(schur_quotient(f, &image).0)
}

/// `d^!(F)`: the kernel of the unit `F → c_* c*(F)`, solved from the
/// adjunction normalization (the contraction of the unit against every
/// `Φ : T → F` is the identity on the linearization).
pub fn d_shriek(f: &SchurModule) -> Result<SchurModule, Error> {
    let algebra = &f.algebra;
    let field = algebra.field;
    let (n_mod, hom) = c_star(f)?;
    let k = hom.dim();
    if k == 0 {
        // the linearization vanishes; the unit is zero and the kernel is F
        return Ok(f.clone());
    }
    let cstar_module = c_lowerstar_of_group_module(algebra, &n_mod)?;
    let candidates = schur_hom(f, &cstar_module.0)?;
    // contraction data: Hom_A(T, N ⊗ T) has basis {e_a ⊗ P_σ}
    let group = PermGroup::symmetric(algebra.n);
    let t_dim = algebra.t_dim;
    let perm_mats: Vec<FieldMatrix> = group
        .elements()
        .iter()
        .map(|sigma| {
            let pts = place_permutation(algebra, sigma);
            FieldMatrix::from_fn(field, t_dim, t_dim, |i, j| u32::from(pts[j] == i))
        })
        .collect();
    // flattened solver columns for the expansion
    let unknowns = k * group.order();
    let flat = k * t_dim * t_dim;
    let mut expansion = FieldMatrix::zero(field, flat, unknowns);
    for a in 0..k {
        for (si, pm) in perm_mats.iter().enumerate() {
            for tr in 0..t_dim {
                for tc in 0..t_dim {
                    let v = pm.get(tr, tc);
                    if v != 0 {
                        expansion.set((a * t_dim + tr) * t_dim + tc, a * group.order() + si, v);
                    }
                }
            }
        }
    }
    let mut ad_mats = Vec::new();
    for psi in &candidates.basis {
        // incl ∘ ψ : F → N ⊗ T
        let into_big = cstar_module.1.mul(psi)?;
        let mut ad = FieldMatrix::zero(field, k, k);
        for (i, phi) in hom.basis.iter().enumerate() {
            let theta = into_big.mul(phi)?; // T → N ⊗ T
            let coeffs = crate::linalg::solve_linear(&expansion, theta.entries())?
                .ok_or(Error::BadMorphism)?;
            for a in 0..k {
                ad.set(a, i, coeffs[a * group.order()]); // identity is element 0
            }
        }
        ad_mats.push(ad);
    }
    // solve Σ c_i ad_i = id
    let mut system = FieldMatrix::zero(field, k * k, ad_mats.len());
    for (j, m) in ad_mats.iter().enumerate() {
        for (r, &v) in m.entries().iter().enumerate() {
            system.set(r, j, v);
        }
    }
    let id = FieldMatrix::identity(field, k);
    let coeffs = crate::linalg::solve_linear(&system, id.entries())?.ok_or(Error::BadMorphism)?;
    let unit = candidates.combination(&coeffs);
    let kernel = crate::linalg::kernel_basis(&unit).transpose();
    Ok(schur_submodule(f, &kernel))
}

/// `c_*` with the inclusion matrix into `M ⊗ T` retained.
fn c_lowerstar_of_group_module(
    algebra: &Arc<SchurAlgebra>,
    m: &Module,
) -> Result<(SchurModule, FieldMatrix), Error> {
    let field = algebra.field;
    let (sym_actions, alg_actions) = diagonal_data(algebra, m)?;
    let dim = m.dim() * algebra.t_dim;
    let id = FieldMatrix::identity(field, dim);
    let mut acc = IncrementalRref::new(field, dim);
    for a in &sym_actions {
        let d = a.sub(&id)?;
        for r in 0..d.rows() {
            acc.push_row(d.row(r).to_vec());
        }
    }
    let basis = acc.kernel().transpose();
    let parent = SchurModule {
        algebra: algebra.clone(),
        dim,
        actions: alg_actions,
    };
    Ok((schur_submodule(&parent, &basis), basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::{modules_isomorphic, regular_module, trivial_module};
    use crate::linalg::Field;
    use crate::schur::{eval_expr, parse_expr};
    use crate::Limits;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn linearization_of_tensor_square_is_regular() {
        // c*(T²) ≅ K[S_2]
        let alg = SchurAlgebra::new(2, 2, f2(), &Limits::default()).unwrap();
        let t = tensor_space_module(&alg);
        let (m, _) = c_star(&t).unwrap();
        let s2 = PermGroup::symmetric(2);
        let reg = regular_module(&s2, f2());
        assert!(modules_isomorphic(&m, &reg).unwrap());
    }

    #[test]
    fn linearization_of_divided_square_is_trivial() {
        // c*(Γ²) ≅ K with the trivial swap action
        let g = eval_expr(&parse_expr("gamma(2)").unwrap(), 2, f2(), &Limits::default()).unwrap();
        let (m, _) = c_star(&g).unwrap();
        assert_eq!(m.dim(), 1);
        let s2 = PermGroup::symmetric(2);
        let k = trivial_module(&s2, f2());
        assert!(modules_isomorphic(&m, &k).unwrap());
    }

    #[test]
    fn counit_is_onto_tensor_powers() {
        // d*(T^n) = 0
        let alg = SchurAlgebra::new(2, 2, f2(), &Limits::default()).unwrap();
        let t = tensor_space_module(&alg);
        assert_eq!(d_star(&t).unwrap().dim, 0);
    }

    #[test]
    fn unit_is_injective_on_tensor_powers() {
        // d^!(T^n) = 0
        let alg = SchurAlgebra::new(2, 2, f2(), &Limits::default()).unwrap();
        let t = tensor_space_module(&alg);
        assert_eq!(d_shriek(&t).unwrap().dim, 0);
    }

    #[test]
    fn c_adjoint_dims() {
        // dim Hom_P(c_!(M), F) = dim Hom_{S_n}(M, c*(F)) on a sample
        let alg = SchurAlgebra::new(2, 2, f2(), &Limits::default()).unwrap();
        let s2 = PermGroup::symmetric(2);
        let k = trivial_module(&s2, f2());
        let t = tensor_space_module(&alg);
        let cb = c_bang(&alg, &k).unwrap();
        let lhs = schur_hom(&cb, &t).unwrap().dim();
        let (ct, _) = c_star(&t).unwrap();
        let rhs = crate::grouprep::hom_dim(&k, &ct).unwrap();
        assert_eq!(lhs, rhs);
        // and the other adjunction
        let cs = c_lowerstar(&alg, &k).unwrap();
        let lhs2 = schur_hom(&t, &cs).unwrap().dim();
        let rhs2 = crate::grouprep::hom_dim(&ct, &k).unwrap();
        assert_eq!(lhs2, rhs2);
    }
}
