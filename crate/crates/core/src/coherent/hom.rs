//! Morphism spaces between presented functors.
//!
//! The solver works in two stages: the lifting square `α_f ∘ μ = ν ∘ α_g`
//! is a joint linear condition on the pair `(μ, ν)` ranging over the
//! equivariant Hom spaces, and the factoring relation (pairs whose `μ`
//! factors through `α_g`) is quotiented away by a greedy complement.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::Error;
use crate::grouprep::{hom_basis, ModuleMap};
use crate::linalg::{solve_linear, FieldMatrix, IncrementalRref};

use super::ops::{cokernel_c, is_zero_object, kernel_c};
use super::{CoherentMorphism, CoherentPresentation};

/// A basis of `Hom(f, g)` as explicit morphisms.
pub struct HomCoherent {
    pub source: CoherentPresentation,
    pub target: CoherentPresentation,
    pub basis: Vec<CoherentMorphism>,
}

impl HomCoherent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combination(&self, coeffs: &[u32]) -> CoherentMorphism {
        let mut acc = CoherentMorphism::zero(&self.source, &self.target);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c != 0 {
                acc = acc.add(&b.scale(*c)).expect("same shapes");
            }
        }
        acc
    }
}

/// Basis of the space of natural transformations `f → g`.
pub fn hom_coherent(
    f: &CoherentPresentation,
    g: &CoherentPresentation,
) -> Result<HomCoherent, Error> {
    f.same_ambient(g)?;
    let field = f.field();
    let hom_mu = hom_basis(g.m(), f.m())?; // μ : M_g → M_f
    let hom_nu = hom_basis(g.n(), f.n())?; // ν : N_g → N_f
    let hom_rho = hom_basis(g.n(), f.m())?; // ρ : N_g → M_f

    // joint kernel of (μ, ν) ↦ α_f∘μ − ν∘α_g, flattened over Hom(M_g, N_f)
    let flat = f.n().dim() * g.m().dim();
    let k_mu = hom_mu.dim();
    let k_nu = hom_nu.dim();
    let mut constraint = FieldMatrix::zero(field, flat, k_mu + k_nu);
    for i in 0..k_mu {
        let m = f.alpha.matrix.mul(&hom_mu.basis[i])?;
        for (r, &v) in m.entries().iter().enumerate() {
            constraint.set(r, i, v);
        }
    }
    for j in 0..k_nu {
        let m = hom_nu.basis[j].mul(&g.alpha.matrix)?;
        for (r, &v) in m.entries().iter().enumerate() {
            constraint.set(r, k_mu + j, field.neg(v));
        }
    }
    let solutions = crate::linalg::kernel_basis(&constraint);

    // subspace of pairs inducing the zero transformation
    let mut zero_space = IncrementalRref::new(field, k_mu + k_nu);
    for j in 0..hom_rho.dim() {
        let mu_part = hom_rho.basis[j].mul(&g.alpha.matrix)?;
        let nu_part = f.alpha.matrix.mul(&hom_rho.basis[j])?;
        let mut v = hom_mu.coords(&mu_part).expect("equivariant");
        v.extend(hom_nu.coords(&nu_part).expect("equivariant"));
        zero_space.push_row(v);
    }
    // pairs (0, ν) with ν ∘ α_g = 0 are also zero transformations
    {
        let mut w = FieldMatrix::zero(field, flat, k_nu);
        for j in 0..k_nu {
            let m = hom_nu.basis[j].mul(&g.alpha.matrix)?;
            for (r, &v) in m.entries().iter().enumerate() {
                w.set(r, j, v);
            }
        }
        let wk = crate::linalg::kernel_basis(&w);
        for r in 0..wk.rows() {
            let mut v = vec![0u32; k_mu];
            v.extend(wk.row(r).iter().copied());
            zero_space.push_row(v);
        }
    }

    let mut basis = Vec::new();
    for r in 0..solutions.rows() {
        let before = zero_space.rank();
        zero_space.push_row(solutions.row(r).to_vec());
        if zero_space.rank() > before {
            let coeffs = solutions.row(r);
            let mu = hom_mu.combination(&coeffs[..k_mu]);
            let nu = hom_nu.combination(&coeffs[k_mu..]);
            basis.push(CoherentMorphism::new_unchecked(
                f.clone(),
                g.clone(),
                mu,
                nu,
            ));
        }
    }
    Ok(HomCoherent {
        source: f.clone(),
        target: g.clone(),
        basis,
    })
}

/// Does `μ : M_target → M` factor as `ρ ∘ α_target`? This is the zero test
/// for natural transformations into `target`'s functor.
pub(super) fn mu_factors_through_relations(
    mu: &ModuleMap,
    target: &CoherentPresentation,
) -> bool {
    if mu.matrix.is_zero() {
        return true;
    }
    let rho = match hom_basis(target.n(), &mu.target) {
        Ok(h) => h,
        Err(_) => return false,
    };
    let field = mu.source.field();
    let flat = mu.target.dim() * mu.source.dim();
    let mut system = FieldMatrix::zero(field, flat, rho.dim());
    for j in 0..rho.dim() {
        let m = rho.basis[j].mul(&target.alpha.matrix).expect("shapes");
        for (r, &v) in m.entries().iter().enumerate() {
            system.set(r, j, v);
        }
    }
    solve_linear(&system, mu.matrix.entries())
        .map(|s| s.is_some())
        .unwrap_or(false)
}

/// Search for an isomorphism `f ≅ g`: single basis morphisms first, then
/// exhaustive enumeration when cheap, then seeded random combinations.
pub fn find_isomorphism(
    f: &CoherentPresentation,
    g: &CoherentPresentation,
) -> Result<Option<CoherentMorphism>, Error> {
    // a zero pair is isomorphic through the zero morphism
    if is_zero_object(f)? && is_zero_object(g)? {
        return Ok(Some(CoherentMorphism::zero(f, g)));
    }
    let hom = hom_coherent(f, g)?;
    let field = f.field();
    let k = hom.dim();
    if k == 0 {
        return Ok(None);
    }
    let check = |phi: &CoherentMorphism| -> Result<bool, Error> {
        let (ker, _) = kernel_c(phi)?;
        if !is_zero_object(&ker)? {
            return Ok(false);
        }
        let (cok, _) = cokernel_c(phi)?;
        is_zero_object(&cok)
    };
    for b in &hom.basis {
        if check(b)? {
            return Ok(Some(b.clone()));
        }
    }
    let space: u64 = (field.p() as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if space <= 2048 {
        for code in 1..space {
            let mut c = code;
            let coeffs: Vec<u32> = (0..k)
                .map(|_| {
                    let v = (c % field.p() as u64) as u32;
                    c /= field.p() as u64;
                    v
                })
                .collect();
            let phi = hom.combination(&coeffs);
            if check(&phi)? {
                return Ok(Some(phi));
            }
        }
        return Ok(None);
    }
    let mut rng = StdRng::seed_from_u64(0x0c0ffee);
    for _ in 0..200 {
        let coeffs: Vec<u32> = (0..k).map(|_| rng.gen_range(0..field.p())).collect();
        let phi = hom.combination(&coeffs);
        if check(&phi)? {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

pub fn presentations_isomorphic(
    f: &CoherentPresentation,
    g: &CoherentPresentation,
) -> Result<bool, Error> {
    Ok(find_isomorphism(f, g)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{eval_dim, h_of};
    use crate::grouprep::{
        hom_dim, permutation_module, random_module, regular_module, trivial_module, PermGroup,
    };
    use crate::linalg::Field;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn hom_between_representables_is_contravariant_hom() {
        // Hom(h_K, h_{K[S_2]}) ≅ Hom_{S_2}(K[S_2], K), dim 1 at p=2
        let g = PermGroup::symmetric(2);
        let k = trivial_module(&g, f2());
        let reg = regular_module(&g, f2());
        let h = hom_coherent(&h_of(&k), &h_of(&reg)).unwrap();
        assert_eq!(h.dim(), hom_dim(&reg, &k).unwrap());
        assert_eq!(h.dim(), 1);
    }

    #[test]
    fn yoneda_dims_on_random_pairs() {
        // dim Hom(h_M, f) = dim f(M)
        let g = PermGroup::symmetric(3);
        for seed in 0..5u64 {
            let m = random_module(&g, f2(), 100 + seed, 5);
            let a = random_module(&g, f2(), 200 + seed, 5);
            let b = random_module(&g, f2(), 300 + seed, 5);
            let alpha = crate::grouprep::hom_basis(&a, &b).unwrap();
            if alpha.dim() == 0 {
                continue;
            }
            let f = CoherentPresentation::new(alpha.map(0));
            let lhs = hom_coherent(&h_of(&m), &f).unwrap().dim();
            let rhs = eval_dim(&f, &m).unwrap();
            assert_eq!(lhs, rhs, "seed {seed}");
        }
    }

    #[test]
    fn representables_of_isomorphic_modules_are_isomorphic() {
        let y1 = permutation_module(3, &[2, 1], f2()).unwrap();
        let y2 = permutation_module(3, &[2, 1], f2()).unwrap();
        assert!(presentations_isomorphic(&h_of(&y1), &h_of(&y2)).unwrap());
        let k = trivial_module(&PermGroup::symmetric(3), f2());
        assert!(!presentations_isomorphic(&h_of(&y1), &h_of(&k)).unwrap());
    }
}
