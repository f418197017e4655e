//! Tensor functors as presentations, and duality.
//!
//! `t_M = M ⊗_G (−)` is presented through a free presentation
//! `F_1 → F_0 → M → 0`: since the contragredient of a free module in its
//! regular basis has identical matrices, `t` of a free module is `h` of
//! the same module and `t_M = pres(dᵀ : F_0 → F_1)`.
//!
//! Duality `Df = ker(t_M → t_N)` follows from the kernel construction.

use crate::error::Error;
use crate::grouprep::{free_resolution, zero_module, Module, ModuleMap};
use crate::linalg::solve_linear;

use super::ops::{factor_through_kernel, kernel_c};
use super::{CoherentMorphism, CoherentPresentation};

/// Presentation of `t_M` with the resolution data used to build it.
pub struct TData {
    pub pres: CoherentPresentation,
    pub f0: Module,
    pub f1: Module,
    /// `d : F_1 → F_0`
    pub d: ModuleMap,
    /// `F_0 → M`
    pub aug: ModuleMap,
}

pub fn t_of_with_data(m: &Module) -> TData {
    let res = free_resolution(m, 1);
    let f0 = res.terms[0].clone();
    let (f1, d) = if res.diffs.is_empty() {
        let z = zero_module(m.group(), m.field());
        (z.clone(), ModuleMap::zero(z, f0.clone()))
    } else {
        (res.terms[1].clone(), res.diffs[0].clone())
    };
    let alpha = ModuleMap::new_unchecked(f0.clone(), f1.clone(), d.matrix.transpose());
    TData {
        pres: CoherentPresentation::new(alpha),
        f0,
        f1,
        d,
        aug: res.augmentation,
    }
}

/// The injective object `t_M` as a presentation.
pub fn t_of(m: &Module) -> CoherentPresentation {
    t_of_with_data(m).pres
}

/// Lift a module map `φ : M → N` through free presentations of both sides
/// and transpose, giving the morphism `t_M → t_N`.
pub fn t_of_map(phi: &ModuleMap) -> Result<CoherentMorphism, Error> {
    let src = t_of_with_data(&phi.source);
    let tgt = t_of_with_data(&phi.target);
    // b0 : F_0^M → F_0^N covering φ: choose generator images by solving
    let b0 = lift_free_map(&src.f0, &tgt.f0, &tgt.aug, &phi.compose(&src.aug)?)?;
    // b1 : F_1^M → F_1^N with d_N b1 = b0 d_M
    let b1 = lift_free_map(&src.f1, &tgt.f1, &tgt.d, &b0.compose(&src.d)?)?;
    Ok(CoherentMorphism::new_unchecked(
        src.pres,
        tgt.pres,
        ModuleMap::new_unchecked(
            tgt.f0.clone(),
            src.f0.clone(),
            b0.matrix.transpose(),
        ),
        ModuleMap::new_unchecked(tgt.f1.clone(), src.f1.clone(), b1.matrix.transpose()),
    ))
}

/// Solve `through ∘ b = want` for a map `b` out of a free module, choosing
/// preimages on the free generators and extending equivariantly.
fn lift_free_map(
    free_src: &Module,
    free_tgt: &Module,
    through: &ModuleMap,
    want: &ModuleMap,
) -> Result<ModuleMap, Error> {
    let field = free_src.field();
    let order = free_src.group().order();
    let rank = if order == 0 { 0 } else { free_src.dim() / order };
    let mut matrix = crate::linalg::FieldMatrix::zero(field, free_tgt.dim(), free_src.dim());
    for copy in 0..rank {
        // generator of this copy sits at the identity coordinate
        let gen_col = copy * order;
        let target_vec = want.matrix.col(gen_col);
        let image = solve_linear(&through.matrix, &target_vec)?
            .ok_or(Error::BadMorphism)?;
        // extend equivariantly: column (copy, h) is ρ(h) · image
        for h in 0..order {
            let col = free_tgt.act_vec(h, &image);
            for (r, &v) in col.iter().enumerate() {
                matrix.set(r, copy * order + h, v);
            }
        }
    }
    Ok(ModuleMap::new_unchecked(
        free_src.clone(),
        free_tgt.clone(),
        matrix,
    ))
}

/// The dual presentation `Df = ker(t_M → t_N)`.
pub fn dualize(f: &CoherentPresentation) -> Result<CoherentPresentation, Error> {
    let t_alpha = t_of_map(&f.alpha)?;
    Ok(kernel_c(&t_alpha)?.0)
}

/// `D` on morphisms: `Dφ : Dg → Df` by factoring through the kernel.
pub fn dualize_morphism(phi: &CoherentMorphism) -> Result<CoherentMorphism, Error> {
    let t_alpha_src = t_of_map(&phi.source.alpha)?;
    let t_alpha_tgt = t_of_map(&phi.target.alpha)?;
    let (d_src, mono_src) = kernel_c(&t_alpha_src)?;
    let (d_tgt, mono_tgt) = kernel_c(&t_alpha_tgt)?;
    let t_mu = t_of_map(&phi.mu)?; // t_{M_tgt} → t_{M_src}
    let psi = t_mu.compose(&mono_tgt)?; // Dg → t_{M_src}
    let _ = t_alpha_tgt;
    factor_through_kernel(&psi, &d_src, &mono_src)?
        .map(|factored| {
            CoherentMorphism::new_unchecked(
                d_tgt.clone(),
                d_src.clone(),
                factored.mu.clone(),
                factored.nu.clone(),
            )
        })
        .ok_or(Error::BadMorphism)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{eval_dim, h_of, presentations_isomorphic};
    use crate::grouprep::{
        dual_module, permutation_module, probe_family, random_module, regular_module,
        trivial_module, PermGroup,
    };
    use crate::linalg::Field;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn t_of_free_is_representable() {
        let g = PermGroup::symmetric(2);
        let reg = regular_module(&g, f2());
        let t = t_of(&reg);
        // eval(t_{K[G]}, X) = X (forgetful)
        for x in probe_family(&g, f2()) {
            assert_eq!(eval_dim(&t, &x).unwrap(), x.dim());
        }
    }

    #[test]
    fn t_of_trivial_evaluates_to_coinvariants() {
        let g = PermGroup::symmetric(2);
        let k = trivial_module(&g, f2());
        let t = t_of(&k);
        let reg = regular_module(&g, f2());
        // eval(t_K, K[S_2]) has dim 1
        assert_eq!(eval_dim(&t, &reg).unwrap(), 1);
        assert_eq!(eval_dim(&t, &k).unwrap(), 1);
    }

    #[test]
    fn dual_of_representable_is_tensor() {
        // D(h_M) ≅ t_M
        let g = PermGroup::symmetric(2);
        let k = trivial_module(&g, f2());
        let d = dualize(&h_of(&k)).unwrap();
        assert!(presentations_isomorphic(&d, &t_of(&k)).unwrap());
        let _ = g;
    }

    #[test]
    fn dual_dims_match_on_probes() {
        // dim Df(X) = dim f(X^du)
        let g = PermGroup::symmetric(3);
        let y = permutation_module(3, &[2, 1], f2()).unwrap();
        let k = trivial_module(&g, f2());
        let hom = crate::grouprep::hom_basis(&y, &k).unwrap();
        assert!(hom.dim() > 0);
        let f = CoherentPresentation::new(hom.map(0));
        let df = dualize(&f).unwrap();
        for x in probe_family(&g, f2()).into_iter().take(5) {
            assert_eq!(
                eval_dim(&df, &x).unwrap(),
                eval_dim(&f, &dual_module(&x)).unwrap()
            );
        }
    }

    #[test]
    fn double_dual_is_isomorphic() {
        let g = PermGroup::symmetric(2);
        for seed in 0..2u64 {
            let a = random_module(&g, f2(), 500 + seed, 4);
            let f = h_of(&a);
            let ddf = dualize(&dualize(&f).unwrap()).unwrap();
            assert!(presentations_isomorphic(&ddf, &f).unwrap(), "seed {seed}");
        }
    }
}
