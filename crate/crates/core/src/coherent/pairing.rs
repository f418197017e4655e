//! Pairing a presented functor with a group object of an abelian host
//! category: graded vector spaces with group action, or presentations
//! over another group carrying an action by automorphism morphisms.
//!
//! In both hosts the pairing is the cokernel of
//! `HomBold_G(N, A) → HomBold_G(M, A)` computed inside the host; for the
//! graded host this is evaluation degree by degree.

use crate::error::Error;
use crate::graded::{GradedModule, GradedSpace};
use crate::grouprep::ModuleMap;
use crate::linalg::FieldMatrix;

use super::eval::eval_dim;
use super::ops::{cokernel_c, factor_through_kernel, kernel_c};
use super::{CoherentMorphism, CoherentPresentation};

/// Pairing with a graded module: degreewise evaluation.
pub fn pairing_graded(
    f: &CoherentPresentation,
    a: &GradedModule,
) -> Result<GradedSpace, Error> {
    let mut out = GradedSpace::new();
    for (&degree, module) in &a.degrees {
        out.set(degree, eval_dim(f, module)?);
    }
    Ok(out)
}

/// A `G`-object in the category of presentations over another group:
/// an object with one automorphism morphism per generator of `G`.
pub struct GAction {
    pub object: CoherentPresentation,
    pub gens: Vec<CoherentMorphism>,
}

/// `dim M` copies of `a`, with the morphism given by a scalar matrix of
/// copies of `σ` (entry `(r, c)` acts by `coeffs[r][c] · σ`).
fn block_object(a: &CoherentPresentation, copies: usize) -> CoherentPresentation {
    if copies == 0 {
        return CoherentPresentation::zero(a.group(), a.field());
    }
    let mut acc = a.clone();
    for _ in 1..copies {
        acc = super::ops::direct_sum_pres(&acc, a).0;
    }
    acc
}

/// Morphism `a^{⊕cols} → a^{⊕rows}` with matrix of scalar multiples of
/// per-entry morphisms: entry `(r, c)` is `coeffs(r, c) · entry`.
fn block_morphism(
    source: &CoherentPresentation,
    target: &CoherentPresentation,
    a: &CoherentPresentation,
    entry: &CoherentMorphism,
    rows: usize,
    cols: usize,
    coeffs: &FieldMatrix,
) -> CoherentMorphism {
    let field = a.field();
    let (am, an) = (a.m().dim(), a.n().dim());
    // μ : M_target = M_a^{rows} → M_source = M_a^{cols}
    let mut mu = FieldMatrix::zero(field, cols * am, rows * am);
    let mut nu = FieldMatrix::zero(field, cols * an, rows * an);
    for r in 0..rows {
        for c in 0..cols {
            let s = coeffs.get(r, c);
            if s == 0 {
                continue;
            }
            for i in 0..am {
                for j in 0..am {
                    let v = entry.mu.matrix.get(i, j);
                    if v != 0 {
                        mu.set(c * am + i, r * am + j, field.mul(s, v));
                    }
                }
            }
            for i in 0..an {
                for j in 0..an {
                    let v = entry.nu.matrix.get(i, j);
                    if v != 0 {
                        nu.set(c * an + i, r * an + j, field.mul(s, v));
                    }
                }
            }
        }
    }
    CoherentMorphism::new_unchecked(
        source.clone(),
        target.clone(),
        ModuleMap::new_unchecked(target.m().clone(), source.m().clone(), mu),
        ModuleMap::new_unchecked(target.n().clone(), source.n().clone(), nu),
    )
}

/// Identity-on-`a` block morphism with plain scalar coefficients.
fn scalar_block_morphism(
    source: &CoherentPresentation,
    target: &CoherentPresentation,
    a: &CoherentPresentation,
    rows: usize,
    cols: usize,
    coeffs: &FieldMatrix,
) -> CoherentMorphism {
    let id = CoherentMorphism::identity(a);
    block_morphism(source, target, a, &id, rows, cols, coeffs)
}

/// `H⁰(G, B)` of a presentation `B` with automorphisms `taus`: the kernel
/// of the stacked morphism `(τ_i − id) : B → B^{⊕gens}`.
fn invariants_object(
    b: &CoherentPresentation,
    taus: &[CoherentMorphism],
) -> Result<(CoherentPresentation, CoherentMorphism), Error> {
    if taus.is_empty() {
        return Ok((b.clone(), CoherentMorphism::identity(b)));
    }
    // stack the morphisms τ_i − id into one morphism B → B^{⊕k}
    let mut target = b.clone();
    for _ in 1..taus.len() {
        target = super::ops::direct_sum_pres(&target, b).0;
    }
    let field = b.field();
    let (bm, bn) = (b.m().dim(), b.n().dim());
    let k = taus.len();
    let mut mu = FieldMatrix::zero(field, bm, k * bm);
    let mut nu = FieldMatrix::zero(field, bn, k * bn);
    for (i, tau) in taus.iter().enumerate() {
        let dmu = tau
            .mu
            .matrix
            .sub(&FieldMatrix::identity(field, bm))?;
        let dnu = tau
            .nu
            .matrix
            .sub(&FieldMatrix::identity(field, bn))?;
        for r in 0..bm {
            for c in 0..bm {
                let v = dmu.get(r, c);
                if v != 0 {
                    mu.set(r, i * bm + c, v);
                }
            }
        }
        for r in 0..bn {
            for c in 0..bn {
                let v = dnu.get(r, c);
                if v != 0 {
                    nu.set(r, i * bn + c, v);
                }
            }
        }
    }
    let delta = CoherentMorphism::new_unchecked(
        b.clone(),
        target.clone(),
        ModuleMap::new_unchecked(target.m().clone(), b.m().clone(), mu),
        ModuleMap::new_unchecked(target.n().clone(), b.n().clone(), nu),
    );
    kernel_c(&delta)
}

/// Pairing with host the presentations over another group: the cokernel of
/// `H⁰(G, N^du ⊗ A) → H⁰(G, M^du ⊗ A)` computed with explicit block
/// morphisms.
pub fn pairing_coherent_host(
    f: &CoherentPresentation,
    a: &GAction,
) -> Result<CoherentPresentation, Error> {
    if a.gens.len() != f.group().gens().len() {
        return Err(Error::UnsupportedHost(
            "one action morphism per generator of the pairing group".into(),
        ));
    }
    let field = f.field();
    let dm = f.m().dim();
    let dn = f.n().dim();
    let mdual = crate::grouprep::dual_module(f.m());
    let ndual = crate::grouprep::dual_module(f.n());
    // Hom(M, A) = A^{dim M} with the contragredient-twisted action
    let bm = block_object(&a.object, dm);
    let bn = block_object(&a.object, dn);
    let taus_m: Vec<CoherentMorphism> = (0..a.gens.len())
        .map(|i| block_morphism(&bm, &bm, &a.object, &a.gens[i], dm, dm, mdual.gen_action(i)))
        .collect();
    let taus_n: Vec<CoherentMorphism> = (0..a.gens.len())
        .map(|i| block_morphism(&bn, &bn, &a.object, &a.gens[i], dn, dn, ndual.gen_action(i)))
        .collect();
    let (hm, mono_m) = invariants_object(&bm, &taus_m)?;
    let (_hn, mono_n) = invariants_object(&bn, &taus_n)?;
    // the connecting morphism B_N → B_M induced by α: scalar blocks αᵀ
    let alpha_t = f.alpha.matrix.transpose();
    let connect = scalar_block_morphism(&bn, &bm, &a.object, dm, dn, &alpha_t);
    let composite = connect.compose(&mono_n)?;
    let factored = factor_through_kernel(&composite, &hm, &mono_m)?
        .ok_or(Error::BadMorphism)?;
    let _ = field;
    Ok(cokernel_c(&factored)?.0)
}
