//! Kernels, cokernels, images and isomorphism testing for presented
//! functors. All constructions are pointwise exact: evaluating the output
//! at any module gives the kernel/cokernel of the evaluated map.

use crate::error::Error;
use crate::grouprep::{direct_sum, hom_basis, quotient_module, Module, ModuleMap};
use crate::linalg::{solve_linear, FieldMatrix};

use super::hom::hom_coherent;
use super::{CoherentMorphism, CoherentPresentation};

/// Cokernel `pres(M_g → N_g ⊕ M_f)` with its epi from the target.
pub fn cokernel_c(
    phi: &CoherentMorphism,
) -> Result<(CoherentPresentation, CoherentMorphism), Error> {
    let f = &phi.source;
    let g = &phi.target;
    let beta_matrix = g.alpha.matrix.vcat(&phi.mu.matrix)?;
    let n_new = direct_sum(g.n(), f.m());
    let beta = ModuleMap::new_unchecked(g.m().clone(), n_new.clone(), beta_matrix);
    let coker = CoherentPresentation::new(beta);
    // epi g → coker: identity on generators, project relations onto N_g
    let field = f.field();
    let proj = FieldMatrix::from_fn(field, g.n().dim(), n_new.dim(), |i, j| u32::from(i == j));
    let epi = CoherentMorphism::new_unchecked(
        g.clone(),
        coker.clone(),
        ModuleMap::identity(g.m().clone()),
        ModuleMap::new_unchecked(n_new, g.n().clone(), proj),
    );
    Ok((coker, epi))
}

/// Kernel with its mono into the source, by the pullback construction:
/// quotient twice and present the result.
pub fn kernel_c(
    phi: &CoherentMorphism,
) -> Result<(CoherentPresentation, CoherentMorphism), Error> {
    let f = &phi.source;
    let g = &phi.target;
    let field = f.field();
    // δ1 : M_g → M_f ⊕ N_g, x ↦ (μ x, −α_g x)
    let delta1 = phi
        .mu
        .matrix
        .vcat(&g.alpha.matrix.scale(field.neg(1)))?;
    let mf_ng = direct_sum(f.m(), g.n());
    let (c, q1) = quotient_module_map(&mf_ng, &delta1);
    // π : M_f → C through the first summand
    let incl_mf = inclusion_matrix(field, mf_ng.dim(), 0, f.m().dim());
    let pi = q1.matrix.mul(&incl_mf)?;
    // δ2 : M_f → C ⊕ N_f, y ↦ (π y, −α_f y)
    let delta2 = pi.vcat(&f.alpha.matrix.scale(field.neg(1)))?;
    let c_nf = direct_sum(&c, f.n());
    let (c2, q2) = quotient_module_map(&c_nf, &delta2);
    // π'' : C → C'' through the first summand
    let incl_c = inclusion_matrix(field, c_nf.dim(), 0, c.dim());
    let pi2 = q2.matrix.mul(&incl_c)?;
    let kernel = CoherentPresentation::new(ModuleMap::new_unchecked(c.clone(), c2.clone(), pi2));
    // mono K → f: μ = π, ν = q2 restricted to the N_f summand
    let incl_nf = inclusion_matrix(field, c_nf.dim(), c.dim(), f.n().dim());
    let nu = q2.matrix.mul(&incl_nf)?;
    let mono = CoherentMorphism::new_unchecked(
        kernel.clone(),
        f.clone(),
        ModuleMap::new_unchecked(f.m().clone(), c, pi),
        ModuleMap::new_unchecked(f.n().clone(), c2, nu),
    );
    Ok((kernel, mono))
}

/// Image as the kernel of the cokernel's epi, with its mono into the target.
pub fn image_c(
    phi: &CoherentMorphism,
) -> Result<(CoherentPresentation, CoherentMorphism), Error> {
    let (_, epi) = cokernel_c(phi)?;
    kernel_c(&epi)
}

/// A presented functor is zero iff its presentation map splits, i.e.
/// `ρ ∘ α = id_M` is solvable.
pub fn is_zero_object(f: &CoherentPresentation) -> Result<bool, Error> {
    if f.m().dim() == 0 {
        return Ok(true);
    }
    let rho = hom_basis(f.n(), f.m())?;
    if rho.dim() == 0 {
        return Ok(false);
    }
    let field = f.field();
    let flat = f.m().dim() * f.m().dim();
    let mut system = FieldMatrix::zero(field, flat, rho.dim());
    for j in 0..rho.dim() {
        let m = rho.basis[j].mul(&f.alpha.matrix)?;
        for (r, &v) in m.entries().iter().enumerate() {
            system.set(r, j, v);
        }
    }
    let id = FieldMatrix::identity(field, f.m().dim());
    Ok(solve_linear(&system, id.entries())?.is_some())
}

/// A morphism is an isomorphism iff its kernel and cokernel vanish.
pub fn is_isomorphism(phi: &CoherentMorphism) -> Result<bool, Error> {
    let (ker, _) = kernel_c(phi)?;
    if !is_zero_object(&ker)? {
        return Ok(false);
    }
    let (cok, _) = cokernel_c(phi)?;
    is_zero_object(&cok)
}

/// Direct sum of presentations with the two inclusion morphisms.
pub fn direct_sum_pres(
    f: &CoherentPresentation,
    g: &CoherentPresentation,
) -> (CoherentPresentation, [CoherentMorphism; 2], [CoherentMorphism; 2]) {
    let field = f.field();
    let m_sum = direct_sum(f.m(), g.m());
    let n_sum = direct_sum(f.n(), g.n());
    let alpha = ModuleMap::new_unchecked(
        m_sum.clone(),
        n_sum.clone(),
        f.alpha.matrix.block_diag(&g.alpha.matrix),
    );
    let sum = CoherentPresentation::new(alpha);
    let proj = |from: usize, len: usize, total: usize| {
        FieldMatrix::from_fn(field, len, total, |i, j| u32::from(j == from + i))
    };
    let incl = |from: usize, len: usize, total: usize| {
        FieldMatrix::from_fn(field, total, len, |i, j| u32::from(i == from + j))
    };
    // inclusions f → sum, g → sum: μ projects M_sum onto the summand
    let incl_f = CoherentMorphism::new_unchecked(
        f.clone(),
        sum.clone(),
        ModuleMap::new_unchecked(m_sum.clone(), f.m().clone(), proj(0, f.m().dim(), m_sum.dim())),
        ModuleMap::new_unchecked(n_sum.clone(), f.n().clone(), proj(0, f.n().dim(), n_sum.dim())),
    );
    let incl_g = CoherentMorphism::new_unchecked(
        g.clone(),
        sum.clone(),
        ModuleMap::new_unchecked(
            m_sum.clone(),
            g.m().clone(),
            proj(f.m().dim(), g.m().dim(), m_sum.dim()),
        ),
        ModuleMap::new_unchecked(
            n_sum.clone(),
            g.n().clone(),
            proj(f.n().dim(), g.n().dim(), n_sum.dim()),
        ),
    );
    // projections sum → f, sum → g: μ includes the summand into M_sum
    let proj_f = CoherentMorphism::new_unchecked(
        sum.clone(),
        f.clone(),
        ModuleMap::new_unchecked(f.m().clone(), m_sum.clone(), incl(0, f.m().dim(), m_sum.dim())),
        ModuleMap::new_unchecked(f.n().clone(), n_sum.clone(), incl(0, f.n().dim(), n_sum.dim())),
    );
    let proj_g = CoherentMorphism::new_unchecked(
        sum.clone(),
        g.clone(),
        ModuleMap::new_unchecked(
            g.m().clone(),
            m_sum.clone(),
            incl(f.m().dim(), g.m().dim(), m_sum.dim()),
        ),
        ModuleMap::new_unchecked(
            g.n().clone(),
            n_sum.clone(),
            incl(f.n().dim(), g.n().dim(), n_sum.dim()),
        ),
    );
    (sum, [incl_f, incl_g], [proj_f, proj_g])
}

fn inclusion_matrix(
    field: crate::linalg::Field,
    total: usize,
    offset: usize,
    len: usize,
) -> FieldMatrix {
    FieldMatrix::from_fn(field, total, len, |i, j| u32::from(i == offset + j))
}

fn quotient_module_map(ambient: &Module, span: &FieldMatrix) -> (Module, ModuleMap) {
    let (q, data) = quotient_module(ambient, span);
    let proj = ModuleMap::new_unchecked(ambient.clone(), q.clone(), data.proj);
    (q, proj)
}

/// Factor `ψ : A → B` through a kernel `m : K → B` when `(B → C) ∘ ψ = 0`,
/// solving for a morphism `A → K` with `m ∘ σ = ψ`.
pub fn factor_through_kernel(
    psi: &CoherentMorphism,
    kernel: &CoherentPresentation,
    mono: &CoherentMorphism,
) -> Result<Option<CoherentMorphism>, Error> {
    let a = &psi.source;
    let b = &psi.target;
    let sigmas = hom_coherent(a, kernel)?;
    let rho = hom_basis(b.n(), a.m())?;
    let field = a.field();
    let flat = b.m().dim() * a.m().dim();
    let cols = sigmas.dim() + rho.dim();
    let mut system = FieldMatrix::zero(field, flat, cols);
    for (j, sigma) in sigmas.basis.iter().enumerate() {
        let composed = mono.compose(sigma)?;
        for (r, &v) in composed.mu.matrix.entries().iter().enumerate() {
            system.set(r, j, v);
        }
    }
    for j in 0..rho.dim() {
        let m = rho.basis[j].mul(&b.alpha.matrix)?;
        for (r, &v) in m.entries().iter().enumerate() {
            system.set(r, sigmas.dim() + j, v);
        }
    }
    match solve_linear(&system, psi.mu.matrix.entries())? {
        None => Ok(None),
        Some(x) => Ok(Some(sigmas.combination(&x[..sigmas.dim()]))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{eval, eval_dim, h_of, morphism_eval};
    use crate::grouprep::{
        probe_family, random_module, regular_module, trivial_module, PermGroup,
    };
    use crate::linalg::{rank, Field};

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn cokernel_of_identity_is_zero() {
        let g = PermGroup::symmetric(2);
        let k = trivial_module(&g, f2());
        let f = h_of(&k);
        let (cok, _) = cokernel_c(&CoherentMorphism::identity(&f)).unwrap();
        assert!(is_zero_object(&cok).unwrap());
        // and evaluates to zero on probes
        for x in probe_family(&g, f2()) {
            assert_eq!(eval_dim(&cok, &x).unwrap(), 0);
        }
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let g = PermGroup::symmetric(2);
        let reg = regular_module(&g, f2());
        let f = h_of(&reg);
        let (ker, _) = kernel_c(&CoherentMorphism::identity(&f)).unwrap();
        assert!(is_zero_object(&ker).unwrap());
    }

    #[test]
    fn pointwise_exactness_on_probes() {
        // eval(ker φ, X) = ker(φ_X) and eval(coker φ, X) = coker(φ_X)
        let g = PermGroup::symmetric(3);
        for seed in 0..4u64 {
            let a = random_module(&g, f2(), 40 + seed, 5);
            let b = random_module(&g, f2(), 50 + seed, 5);
            let hom = crate::grouprep::hom_basis(&a, &b).unwrap();
            if hom.dim() == 0 {
                continue;
            }
            // morphism h_b → h_a induced by the first hom basis element
            let phi = crate::coherent::h_of_map(&hom.map(0));
            let (ker, mono) = kernel_c(&phi).unwrap();
            let (cok, epi) = cokernel_c(&phi).unwrap();
            for x in probe_family(&g, f2()).into_iter().take(4) {
                let phix = morphism_eval(&phi, &x).unwrap();
                let ker_expected = phix.cols() - rank(&phix);
                let cok_expected = phix.rows() - rank(&phix);
                assert_eq!(eval_dim(&ker, &x).unwrap(), ker_expected);
                assert_eq!(eval_dim(&cok, &x).unwrap(), cok_expected);
                // the mono and epi evaluate to injections/surjections
                let mx = morphism_eval(&mono, &x).unwrap();
                assert_eq!(rank(&mx), eval_dim(&ker, &x).unwrap());
                let ex = morphism_eval(&epi, &x).unwrap();
                assert_eq!(rank(&ex), eval_dim(&cok, &x).unwrap());
            }
        }
    }

    #[test]
    fn rank_additivity_of_image() {
        let g = PermGroup::symmetric(2);
        let k = trivial_module(&g, f2());
        let reg = regular_module(&g, f2());
        let hom = crate::grouprep::hom_basis(&reg, &k).unwrap();
        let phi = crate::coherent::h_of_map(&hom.map(0)); // h_K → h_{K[S_2]}
        let (ker, _) = kernel_c(&phi).unwrap();
        let (im, _) = image_c(&phi).unwrap();
        for x in probe_family(&g, f2()) {
            let f_dim = eval(&phi.source, &x).unwrap().dim();
            assert_eq!(
                f_dim,
                eval_dim(&ker, &x).unwrap() + eval_dim(&im, &x).unwrap()
            );
        }
    }
}
