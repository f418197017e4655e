//! Evaluation of a presented functor at a module, with functoriality.

use crate::error::Error;
use crate::grouprep::{hom_basis, HomBasis, Module, ModuleMap};
use crate::linalg::{cokernel_data, FieldMatrix, QuotientData};

use super::{CoherentMorphism, CoherentPresentation};

/// The value `f(X)` with a distinguished basis: the cokernel of
/// `Hom_G(N, X) → Hom_G(M, X)` in the computed Hom bases.
pub struct Evaluation {
    pub hom_m: HomBasis,
    pub quot: QuotientData,
}

impl Evaluation {
    pub fn dim(&self) -> usize {
        self.quot.dim
    }

    /// Class of a module map `u : M → X` given by its matrix.
    pub fn class_of(&self, u: &FieldMatrix) -> Option<Vec<u32>> {
        let coords = self.hom_m.coords(u)?;
        self.quot.proj.mul_vec(&coords).ok()
    }

    /// A representative module map for a class in the distinguished basis.
    pub fn representative(&self, class: &[u32]) -> ModuleMap {
        let coords = self.quot.section.mul_vec(class).expect("dims");
        self.hom_m.combination(&coords)
    }
}

/// Evaluate `f` at `X`.
pub fn eval(f: &CoherentPresentation, x: &Module) -> Result<Evaluation, Error> {
    f.m().same_ambient(x)?;
    let hom_m = hom_basis(f.m(), x)?;
    let hom_n = hom_basis(f.n(), x)?;
    // the relations map sends φ : N → X to φ ∘ α : M → X
    let field = f.field();
    let mut rel = FieldMatrix::zero(field, hom_m.dim(), hom_n.dim());
    for j in 0..hom_n.dim() {
        let composed = hom_n.basis[j].mul(&f.alpha.matrix)?;
        let coords = hom_m.coords_unchecked(&composed);
        for (i, &v) in coords.iter().enumerate() {
            rel.set(i, j, v);
        }
    }
    let quot = cokernel_data(&rel);
    Ok(Evaluation { hom_m, quot })
}

pub fn eval_dim(f: &CoherentPresentation, x: &Module) -> Result<usize, Error> {
    Ok(eval(f, x)?.dim())
}

/// The induced map `f(φ) : f(X) → f(Y)` for `φ : X → Y`, in the
/// distinguished bases of precomputed evaluations.
pub fn eval_map_with(
    f: &CoherentPresentation,
    ev_x: &Evaluation,
    ev_y: &Evaluation,
    phi: &ModuleMap,
) -> Result<FieldMatrix, Error> {
    let field = f.field();
    // post-composition on representatives
    let mut post = FieldMatrix::zero(field, ev_y.hom_m.dim(), ev_x.hom_m.dim());
    for j in 0..ev_x.hom_m.dim() {
        let composed = phi.matrix.mul(&ev_x.hom_m.basis[j])?;
        let coords = ev_y.hom_m.coords_unchecked(&composed);
        for (i, &v) in coords.iter().enumerate() {
            post.set(i, j, v);
        }
    }
    ev_y
        .quot
        .proj
        .mul(&post)?
        .mul(&ev_x.quot.section)
        .map_err(Into::into)
}

pub fn eval_map(f: &CoherentPresentation, phi: &ModuleMap) -> Result<FieldMatrix, Error> {
    let ev_x = eval(f, &phi.source)?;
    let ev_y = eval(f, &phi.target)?;
    eval_map_with(f, &ev_x, &ev_y, phi)
}

/// The component at `X` of a morphism of presentations, as a matrix
/// between the distinguished bases of the two evaluations:
/// `[u] ↦ [u ∘ μ]`.
pub fn morphism_eval_with(
    phi: &CoherentMorphism,
    ev_src: &Evaluation,
    ev_tgt: &Evaluation,
) -> Result<FieldMatrix, Error> {
    let field = phi.source.field();
    let mut pre = FieldMatrix::zero(field, ev_tgt.hom_m.dim(), ev_src.hom_m.dim());
    for j in 0..ev_src.hom_m.dim() {
        let composed = ev_src.hom_m.basis[j].mul(&phi.mu.matrix)?;
        let coords = ev_tgt.hom_m.coords_unchecked(&composed);
        for (i, &v) in coords.iter().enumerate() {
            pre.set(i, j, v);
        }
    }
    ev_tgt
        .quot
        .proj
        .mul(&pre)?
        .mul(&ev_src.quot.section)
        .map_err(Into::into)
}

pub fn morphism_eval(phi: &CoherentMorphism, x: &Module) -> Result<FieldMatrix, Error> {
    let ev_src = eval(&phi.source, x)?;
    let ev_tgt = eval(&phi.target, x)?;
    morphism_eval_with(phi, &ev_src, &ev_tgt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::h_of;
    use crate::grouprep::{
        direct_sum, hom_dim, permutation_module, regular_module, trivial_module, PermGroup,
    };
    use crate::linalg::Field;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn representable_evaluates_to_hom() {
        let g = PermGroup::symmetric(2);
        let k = trivial_module(&g, f2());
        let reg = regular_module(&g, f2());
        // eval(h_K, X) = X^{S_2}: dim 1 at X = K[S_2] over F_2
        assert_eq!(eval_dim(&h_of(&k), &reg).unwrap(), 1);
        // eval(h_M, X) = Hom(M, X) in general
        let y = permutation_module(3, &[2, 1], f2()).unwrap();
        let s3reg = regular_module(&PermGroup::symmetric(3), f2());
        assert_eq!(
            eval_dim(&h_of(&y), &s3reg).unwrap(),
            hom_dim(&y, &s3reg).unwrap()
        );
    }

    #[test]
    fn eval_respects_direct_sums() {
        let g = PermGroup::symmetric(2);
        let k = trivial_module(&g, f2());
        let reg = regular_module(&g, f2());
        let f = h_of(&k);
        let sum = direct_sum(&k, &reg);
        assert_eq!(
            eval_dim(&f, &sum).unwrap(),
            eval_dim(&f, &k).unwrap() + eval_dim(&f, &reg).unwrap()
        );
    }
}
