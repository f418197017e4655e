//! The abelian category of coherent functors on group modules, as a
//! calculus of presentations.
//!
//! An object is a module map `α : M → N` standing for the functor
//! `f = coker(h_N → h_M)`, so `f(X) = coker(Hom_G(N, X) → Hom_G(M, X))`
//! with the map given by precomposition with `α`. A morphism `f → g` is a
//! pair of module maps `μ : M_g → M_f`, `ν : N_g → N_f` making the square
//! `α_f ∘ μ = ν ∘ α_g` commute; two pairs are equal as morphisms exactly
//! when the `μ`-parts differ by `ρ ∘ α_g` for some `ρ : N_g → M_f`.
//!
//! Objects are never normalized: equality of objects is always tested as
//! isomorphism, witnessed by an explicit morphism with vanishing kernel
//! and cokernel.

mod cohomology;
mod compose;
mod dual;
mod eval;
mod ext;
mod hom;
mod ops;
mod pairing;
mod products;
mod recollement;
mod transport;

pub use cohomology::{cohomology_functor, hat_tate, homology_at, norm_morphism, CoherentComplex};
pub use compose::{bullet_compose, compose_bar, tensor_power_with_symmetry};
pub use dual::{dualize, dualize_morphism, t_of, t_of_map, t_of_with_data, TData};
pub use eval::{eval, eval_dim, eval_map, eval_map_with, morphism_eval, morphism_eval_with, Evaluation};
pub use ext::{classify_coherent, ext_coherent, Classification};
pub use hom::{find_isomorphism, hom_coherent, presentations_isomorphic, HomCoherent};
pub use ops::{
    cokernel_c, direct_sum_pres, factor_through_kernel, image_c, is_isomorphism, is_zero_object,
    kernel_c,
};
pub use pairing::{pairing_coherent_host, pairing_graded, GAction};
pub use products::{box_l, box_r, boxl_to_odot, dot_product, odot, odot_to_boxr, tensor_l};
pub use recollement::{
    counit_t, r_shriek, r_star, t_bang, t_lowerstar, t_star, t_star_morphism, unit_t,
};
pub use transport::{transport_down, transport_up};

use crate::error::Error;
use crate::grouprep::{zero_module, Module, ModuleMap, PermGroup};
use crate::linalg::{Field, FieldMatrix};
use std::sync::Arc;

/// A coherent functor presented by `α : M → N`.
#[derive(Debug, Clone)]
pub struct CoherentPresentation {
    pub alpha: ModuleMap,
}

impl CoherentPresentation {
    pub fn new(alpha: ModuleMap) -> CoherentPresentation {
        CoherentPresentation { alpha }
    }

    /// The representable functor `h_M = Hom_G(M, −)`.
    pub fn h_of(m: &Module) -> CoherentPresentation {
        let zero = zero_module(m.group(), m.field());
        CoherentPresentation {
            alpha: ModuleMap::zero(m.clone(), zero),
        }
    }

    /// The zero object.
    pub fn zero(group: &Arc<PermGroup>, field: Field) -> CoherentPresentation {
        let z = zero_module(group, field);
        CoherentPresentation {
            alpha: ModuleMap::zero(z.clone(), z),
        }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        self.alpha.source.group()
    }

    pub fn field(&self) -> Field {
        self.alpha.source.field()
    }

    /// The generator module `M` of the presentation.
    pub fn m(&self) -> &Module {
        &self.alpha.source
    }

    /// The relation module `N` of the presentation.
    pub fn n(&self) -> &Module {
        &self.alpha.target
    }

    pub fn same_ambient(&self, other: &CoherentPresentation) -> Result<(), Error> {
        self.alpha.source.same_ambient(other.alpha.source.as_ref())
    }
}

/// The representable functor `h_M`.
pub fn h_of(m: &Module) -> CoherentPresentation {
    CoherentPresentation::h_of(m)
}

/// A morphism of presentations; see the module docs for the convention.
#[derive(Debug, Clone)]
pub struct CoherentMorphism {
    pub source: CoherentPresentation,
    pub target: CoherentPresentation,
    /// `μ : M_target → M_source`
    pub mu: ModuleMap,
    /// `ν : N_target → N_source`
    pub nu: ModuleMap,
}

impl CoherentMorphism {
    /// Validating constructor: checks the lifting square.
    pub fn new(
        source: CoherentPresentation,
        target: CoherentPresentation,
        mu: ModuleMap,
        nu: ModuleMap,
    ) -> Result<CoherentMorphism, Error> {
        let left = source.alpha.compose(&mu)?;
        let right = nu.compose(&target.alpha)?;
        if left.matrix != right.matrix {
            return Err(Error::BadMorphism);
        }
        Ok(CoherentMorphism {
            source,
            target,
            mu,
            nu,
        })
    }

    pub(crate) fn new_unchecked(
        source: CoherentPresentation,
        target: CoherentPresentation,
        mu: ModuleMap,
        nu: ModuleMap,
    ) -> CoherentMorphism {
        debug_assert_eq!(
            source
                .alpha
                .compose(&mu)
                .expect("shapes")
                .matrix,
            nu.compose(&target.alpha).expect("shapes").matrix,
            "lifting square"
        );
        CoherentMorphism {
            source,
            target,
            mu,
            nu,
        }
    }

    pub fn identity(f: &CoherentPresentation) -> CoherentMorphism {
        CoherentMorphism {
            source: f.clone(),
            target: f.clone(),
            mu: ModuleMap::identity(f.m().clone()),
            nu: ModuleMap::identity(f.n().clone()),
        }
    }

    pub fn zero(source: &CoherentPresentation, target: &CoherentPresentation) -> CoherentMorphism {
        CoherentMorphism {
            source: source.clone(),
            target: target.clone(),
            mu: ModuleMap::zero(target.m().clone(), source.m().clone()),
            nu: ModuleMap::zero(target.n().clone(), source.n().clone()),
        }
    }

    /// Composition `self ∘ earlier` (apply `earlier` first).
    pub fn compose(&self, earlier: &CoherentMorphism) -> Result<CoherentMorphism, Error> {
        // contravariant on the module data
        let mu = earlier.mu.compose(&self.mu)?;
        let nu = earlier.nu.compose(&self.nu)?;
        Ok(CoherentMorphism {
            source: earlier.source.clone(),
            target: self.target.clone(),
            mu,
            nu,
        })
    }

    pub fn add(&self, other: &CoherentMorphism) -> Result<CoherentMorphism, Error> {
        Ok(CoherentMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            mu: ModuleMap::new_unchecked(
                self.mu.source.clone(),
                self.mu.target.clone(),
                self.mu.matrix.add(&other.mu.matrix)?,
            ),
            nu: ModuleMap::new_unchecked(
                self.nu.source.clone(),
                self.nu.target.clone(),
                self.nu.matrix.add(&other.nu.matrix)?,
            ),
        })
    }

    pub fn sub(&self, other: &CoherentMorphism) -> Result<CoherentMorphism, Error> {
        Ok(CoherentMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            mu: ModuleMap::new_unchecked(
                self.mu.source.clone(),
                self.mu.target.clone(),
                self.mu.matrix.sub(&other.mu.matrix)?,
            ),
            nu: ModuleMap::new_unchecked(
                self.nu.source.clone(),
                self.nu.target.clone(),
                self.nu.matrix.sub(&other.nu.matrix)?,
            ),
        })
    }

    pub fn scale(&self, c: u32) -> CoherentMorphism {
        CoherentMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            mu: ModuleMap::new_unchecked(
                self.mu.source.clone(),
                self.mu.target.clone(),
                self.mu.matrix.scale(c),
            ),
            nu: ModuleMap::new_unchecked(
                self.nu.source.clone(),
                self.nu.target.clone(),
                self.nu.matrix.scale(c),
            ),
        }
    }

    /// Is this the zero natural transformation? The transformation is
    /// determined by `μ` alone: zero iff `μ` factors as `ρ ∘ α_target`.
    pub fn is_zero_morphism(&self) -> bool {
        hom::mu_factors_through_relations(&self.mu, &self.target)
    }

    pub fn equals(&self, other: &CoherentMorphism) -> bool {
        self.sub(other).map(|d| d.is_zero_morphism()).unwrap_or(false)
    }
}

/// The morphism `h_N → h_M` induced by `φ : M → N` (Yoneda, contravariant).
pub fn h_of_map(phi: &ModuleMap) -> CoherentMorphism {
    let source = h_of(&phi.target);
    let target = h_of(&phi.source);
    let nu = ModuleMap::zero(target.n().clone(), source.n().clone());
    CoherentMorphism {
        source,
        target,
        mu: phi.clone(),
        nu,
    }
}

/// The morphism `h_Y → g` picked out by an element of `g(Y)` represented
/// by a module map `u : M_g → Y` (Yoneda).
pub fn yoneda_morphism(
    y: &Module,
    g: &CoherentPresentation,
    representative: &FieldMatrix,
) -> CoherentMorphism {
    let source = h_of(y);
    let mu = ModuleMap::new_unchecked(g.m().clone(), y.clone(), representative.clone());
    let nu = ModuleMap::zero(g.n().clone(), source.n().clone());
    CoherentMorphism {
        source,
        target: g.clone(),
        mu,
        nu,
    }
}
