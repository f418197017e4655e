//! Ext groups in the category of presented functors, through the explicit
//! length-two projective resolution
//! `0 → h_{coker α} → h_N → h_M → f → 0`,
//! and the projectivity/injectivity classification.

use crate::error::Error;
use crate::grouprep::{cokernel_module, hom_basis};
use crate::linalg::{rank, solve_linear, FieldMatrix};

use super::dual::dualize;
use super::eval::{eval, eval_map_with};
use super::ops::{is_zero_object, kernel_c};
use super::{h_of, CoherentMorphism, CoherentPresentation};

/// Graded dimensions of `Ext^i(f, g)` for `0 ≤ i ≤ max_degree`.
/// Degrees three and above are always zero.
pub fn ext_coherent(
    f: &CoherentPresentation,
    g: &CoherentPresentation,
    max_degree: usize,
) -> Result<Vec<usize>, Error> {
    f.same_ambient(g)?;
    // Hom(h_M, g) = g(M) and the resolution differentials evaluate g at
    // α : M → N and at the projection N → coker α
    let (_, beta) = cokernel_module(&f.alpha);
    let ev_m = eval(g, f.m())?;
    let ev_n = eval(g, f.n())?;
    let ev_c = eval(g, &beta.target)?;
    let d0 = eval_map_with(g, &ev_m, &ev_n, &f.alpha)?;
    let d1 = eval_map_with(g, &ev_n, &ev_c, &beta)?;
    let rank_d0 = rank(&d0);
    let rank_d1 = rank(&d1);
    let ext0 = ev_m.dim() - rank_d0;
    let ext1 = (ev_n.dim() - rank_d1) - rank_d0;
    let ext2 = ev_c.dim() - rank_d1;
    let mut out = vec![0usize; max_degree + 1];
    out[0] = ext0;
    if max_degree >= 1 {
        out[1] = ext1;
    }
    if max_degree >= 2 {
        out[2] = ext2;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub projective: bool,
    pub injective: bool,
    pub pd_at_most_one: bool,
    pub id_at_most_one: bool,
}

/// Projectivity: the canonical epi `h_M → f` splits, which reduces to the
/// solvability of `α ∘ ρ ∘ α = -α` over equivariant `ρ : N → M`.
fn is_projective(f: &CoherentPresentation) -> Result<bool, Error> {
    if f.m().dim() == 0 {
        return Ok(true);
    }
    let rho = hom_basis(f.n(), f.m())?;
    let field = f.field();
    let flat = f.n().dim() * f.m().dim();
    let mut system = FieldMatrix::zero(field, flat, rho.dim());
    for j in 0..rho.dim() {
        let m = f
            .alpha
            .matrix
            .mul(&rho.basis[j])?
            .mul(&f.alpha.matrix)?;
        for (r, &v) in m.entries().iter().enumerate() {
            system.set(r, j, v);
        }
    }
    let target = f.alpha.matrix.scale(field.neg(1));
    Ok(solve_linear(&system, target.entries())?.is_some())
}

/// The canonical epi `h_M → f`.
fn canonical_epi(f: &CoherentPresentation) -> CoherentMorphism {
    let h = h_of(f.m());
    CoherentMorphism::new_unchecked(
        h.clone(),
        f.clone(),
        crate::grouprep::ModuleMap::identity(f.m().clone()),
        crate::grouprep::ModuleMap::zero(f.n().clone(), h.n().clone()),
    )
}

pub fn classify_coherent(f: &CoherentPresentation) -> Result<Classification, Error> {
    let projective = is_projective(f)?;
    let pd_at_most_one = if projective {
        true
    } else {
        let (ker, _) = kernel_c(&canonical_epi(f))?;
        is_projective(&ker)? || is_zero_object(&ker)?
    };
    let df = dualize(f)?;
    let injective = is_projective(&df)?;
    let id_at_most_one = if injective {
        true
    } else {
        let (ker, _) = kernel_c(&canonical_epi(&df))?;
        is_projective(&ker)? || is_zero_object(&ker)?
    };
    Ok(Classification {
        projective,
        injective,
        pd_at_most_one,
        id_at_most_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{hat_tate, hom_coherent, t_of};
    use crate::grouprep::{random_module, trivial_module, PermGroup};
    use crate::linalg::Field;

    fn f(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn representables_have_no_higher_ext() {
        let g = PermGroup::symmetric(2);
        let k = trivial_module(&g, f(2));
        let tate = hat_tate(&g, f(2), 0).unwrap();
        let e = ext_coherent(&h_of(&k), &tate, 3).unwrap();
        assert_eq!(&e[1..], &[0, 0, 0]);
    }

    #[test]
    fn ext_degree_zero_matches_hom() {
        let g = PermGroup::symmetric(2);
        let tate = hat_tate(&g, f(2), 0).unwrap();
        let k = trivial_module(&g, f(2));
        for a in [h_of(&k), tate.clone(), t_of(&k)] {
            for b in [h_of(&k), tate.clone(), t_of(&k)] {
                let e = ext_coherent(&a, &b, 0).unwrap();
                let h = hom_coherent(&a, &b).unwrap();
                assert_eq!(e[0], h.dim());
            }
        }
    }

    #[test]
    fn semisimple_case_has_no_ext() {
        // over S_2 at p = 3 the group order is invertible
        let g = PermGroup::symmetric(2);
        for seed in 0..4u64 {
            let a = random_module(&g, f(3), 20 + seed, 4);
            let b = random_module(&g, f(3), 30 + seed, 4);
            let hom = crate::grouprep::hom_basis(&a, &b).unwrap();
            if hom.dim() == 0 {
                continue;
            }
            let phi = CoherentPresentation::new(hom.map(0));
            let psi = h_of(&b);
            let e = ext_coherent(&phi, &psi, 2).unwrap();
            assert_eq!(&e[1..], &[0, 0]);
        }
    }

    #[test]
    fn classification_of_generators() {
        let g = PermGroup::symmetric(2);
        let k = trivial_module(&g, f(2));
        let c = classify_coherent(&h_of(&k)).unwrap();
        assert!(c.projective);
        // t_K is injective but not projective over S_2 at p = 2
        let c = classify_coherent(&t_of(&k)).unwrap();
        assert!(c.injective);
        assert!(!c.projective);
        // Ĥ⁰ has both dimensions equal to 2
        let tate = hat_tate(&g, f(2), 0).unwrap();
        let c = classify_coherent(&tate).unwrap();
        assert!(!c.projective && !c.injective);
        assert!(!c.pd_at_most_one && !c.id_at_most_one);
    }
}
