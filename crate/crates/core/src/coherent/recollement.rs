//! The recollement functors around the evaluation-at-`K[G]` functor:
//! `t*(f) = f(K[G])` with its action through right multiplications,
//! its adjoints `t_! = t`, `t_* = h ∘ (−)^du`, the adjunction unit and
//! counit solved from their defining normalization, and the two functors
//! into the subcategory of functors vanishing on projectives.

use crate::error::Error;
use crate::grouprep::{
    dual_module, regular_module, GroupModule, Module, ModuleMap, Perm,
};
use crate::linalg::{inverse, FieldMatrix};

use super::dual::{t_of, t_of_with_data};
use super::eval::{eval, morphism_eval_with, Evaluation};
use super::hom::hom_coherent;
use super::ops::{cokernel_c, kernel_c};
use super::{h_of, CoherentMorphism, CoherentPresentation};

/// Right multiplication by `h` as a map of left modules `K[G] → K[G]`.
fn right_mult(group_module: &Module, h: &Perm) -> ModuleMap {
    let group = group_module.group();
    let n = group.order();
    let field = group_module.field();
    let mut m = FieldMatrix::zero(field, n, n);
    for (x, elt) in group.elements().iter().enumerate() {
        let xh = elt.compose(h);
        let i = group.element_index(&xh).expect("closed");
        m.set(i, x, 1);
    }
    ModuleMap::new_unchecked(group_module.clone(), group_module.clone(), m)
}

/// `t*(f) = f(K[G])` with the action `g ↦ f(right mult by g⁻¹)`.
pub fn t_star(f: &CoherentPresentation) -> Result<Module, Error> {
    let (module, _) = t_star_with_eval(f)?;
    Ok(module)
}

pub(super) fn t_star_with_eval(
    f: &CoherentPresentation,
) -> Result<(Module, Evaluation), Error> {
    let group = f.group().clone();
    let field = f.field();
    let reg = regular_module(&group, field);
    let ev = eval(f, &reg)?;
    let mut actions = Vec::with_capacity(group.gens().len());
    for s in group.gens() {
        let r = right_mult(&reg, &s.inverse());
        actions.push(super::eval::eval_map_with(f, &ev, &ev, &r)?);
    }
    Ok((
        GroupModule::derived_with_dim(group, field, ev.dim(), actions, None),
        ev,
    ))
}

/// `t*` applied to a morphism: the matrix of `φ_{K[G]}` between the
/// distinguished bases of the two evaluations.
pub fn t_star_morphism(phi: &CoherentMorphism) -> Result<FieldMatrix, Error> {
    let reg = regular_module(phi.source.group(), phi.source.field());
    let ev_src = eval(&phi.source, &reg)?;
    let ev_tgt = eval(&phi.target, &reg)?;
    morphism_eval_with(phi, &ev_src, &ev_tgt)
}

/// `t_!(M) = t_M`.
pub fn t_bang(m: &Module) -> CoherentPresentation {
    t_of(m)
}

/// `t_*(M) = h_{M^du}`.
pub fn t_lowerstar(m: &Module) -> CoherentPresentation {
    h_of(&dual_module(m))
}

/// The identification `t*(t_! V) ≅ V`: τ-coordinates of the Hom basis
/// composed with the augmentation of the free presentation.
fn t_bang_identification(
    v: &Module,
    tdata: &super::dual::TData,
    ev: &Evaluation,
) -> Result<FieldMatrix, Error> {
    let field = v.field();
    // τ step: a hom F_0 → K[G] corresponds to the F_0-vector of its
    // identity-row coefficients
    let tau = FieldMatrix::from_fn(field, tdata.f0.dim(), ev.hom_m.dim(), |i, j| {
        ev.hom_m.basis[j].get(0, i)
    });
    let iso = tdata.aug.matrix.mul(&tau)?.mul(&ev.quot.section)?;
    debug_assert!(crate::linalg::is_invertible(&iso));
    Ok(iso)
}

/// The identification `t*(t_* V) = Hom(V^du, K[G]) ≅ V` through τ.
fn t_lowerstar_identification(v: &Module, ev: &Evaluation) -> Result<FieldMatrix, Error> {
    let field = v.field();
    let tau = FieldMatrix::from_fn(field, v.dim(), ev.hom_m.dim(), |i, j| {
        ev.hom_m.basis[j].get(0, i)
    });
    let iso = tau.mul(&ev.quot.section)?;
    debug_assert!(crate::linalg::is_invertible(&iso));
    Ok(iso)
}

/// The counit `t_! t*(f) → f`, normalized so that `t*` of it is the
/// canonical identification.
pub fn counit_t(f: &CoherentPresentation) -> Result<CoherentMorphism, Error> {
    let group = f.group().clone();
    let field = f.field();
    let reg = regular_module(&group, field);
    let (v, ev_f) = t_star_with_eval(f)?;
    let tdata = t_of_with_data(&v);
    let hom = hom_coherent(&tdata.pres, f)?;
    let ev_tb = eval(&tdata.pres, &reg)?;
    let iota = t_bang_identification(&v, &tdata, &ev_tb)?;
    let iota_inv = inverse(&iota)?.ok_or(Error::BadMorphism)?;
    // solve Σ c_i (φ_i at K[G]) ∘ ι⁻¹ = id on V
    let dim_v = v.dim();
    let mut system = FieldMatrix::zero(field, dim_v * dim_v, hom.dim());
    for (j, phi) in hom.basis.iter().enumerate() {
        let a = morphism_eval_with(phi, &ev_tb, &ev_f)?.mul(&iota_inv)?;
        for (r, &val) in a.entries().iter().enumerate() {
            system.set(r, j, val);
        }
    }
    let id = FieldMatrix::identity(field, dim_v);
    let coeffs = crate::linalg::solve_linear(&system, id.entries())?
        .ok_or(Error::BadMorphism)?;
    Ok(hom.combination(&coeffs))
}

/// The unit `f → t_* t*(f)`, normalized dually.
pub fn unit_t(f: &CoherentPresentation) -> Result<CoherentMorphism, Error> {
    let group = f.group().clone();
    let field = f.field();
    let reg = regular_module(&group, field);
    let (v, ev_f) = t_star_with_eval(f)?;
    let w = t_lowerstar(&v);
    let hom = hom_coherent(f, &w)?;
    let ev_w = eval(&w, &reg)?;
    let kappa = t_lowerstar_identification(&v, &ev_w)?;
    let dim_v = v.dim();
    let mut system = FieldMatrix::zero(field, dim_v * dim_v, hom.dim());
    for (j, phi) in hom.basis.iter().enumerate() {
        let a = kappa.mul(&morphism_eval_with(phi, &ev_f, &ev_w)?)?;
        for (r, &val) in a.entries().iter().enumerate() {
            system.set(r, j, val);
        }
    }
    let id = FieldMatrix::identity(field, dim_v);
    let coeffs = crate::linalg::solve_linear(&system, id.entries())?
        .ok_or(Error::BadMorphism)?;
    Ok(hom.combination(&coeffs))
}

/// `r*(f)`: the cokernel of the counit; vanishes on projectives.
pub fn r_star(f: &CoherentPresentation) -> Result<CoherentPresentation, Error> {
    Ok(cokernel_c(&counit_t(f)?)?.0)
}

/// `r^!(f)`: the kernel of the unit; vanishes on projectives.
pub fn r_shriek(f: &CoherentPresentation) -> Result<CoherentPresentation, Error> {
    Ok(kernel_c(&unit_t(f)?)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{eval_dim, hat_tate, t_of};
    use crate::grouprep::{
        dual_module, modules_isomorphic, random_module, trivial_module, PermGroup,
    };
    use crate::linalg::Field;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn t_star_of_representable_is_dual() {
        // t*(h_M) ≅ M^du
        let g = PermGroup::symmetric(3);
        for seed in 0..3u64 {
            let m = random_module(&g, f2(), 700 + seed, 5);
            let ts = t_star(&h_of(&m)).unwrap();
            assert!(modules_isomorphic(&ts, &dual_module(&m)).unwrap());
        }
    }

    #[test]
    fn t_star_t_bang_is_identity() {
        // t*(t_!(M)) ≅ M
        let g = PermGroup::symmetric(2);
        for seed in 0..3u64 {
            let m = random_module(&g, f2(), 800 + seed, 4);
            let ts = t_star(&t_bang(&m)).unwrap();
            assert!(modules_isomorphic(&ts, &m).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn t_star_t_lowerstar_is_identity() {
        let g = PermGroup::symmetric(2);
        for seed in 0..3u64 {
            let m = random_module(&g, f2(), 900 + seed, 4);
            let ts = t_star(&t_lowerstar(&m)).unwrap();
            assert!(modules_isomorphic(&ts, &m).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn tate_vanishes_at_regular() {
        // t*(Ĥ⁰) = 0 for S_2 at p = 2
        let g = PermGroup::symmetric(2);
        let tate0 = hat_tate(&g, f2(), 0).unwrap();
        assert_eq!(t_star(&tate0).unwrap().dim(), 0);
    }

    #[test]
    fn r_functors_vanish_on_regular_probe() {
        let g = PermGroup::symmetric(2);
        let k = trivial_module(&g, f2());
        let reg = crate::grouprep::regular_module(&g, f2());
        let f = t_of(&k);
        let rs = r_star(&f).unwrap();
        let rk = r_shriek(&f).unwrap();
        assert_eq!(eval_dim(&rs, &reg).unwrap(), 0);
        assert_eq!(eval_dim(&rk, &reg).unwrap(), 0);
    }

    #[test]
    fn r_star_of_representable_vanishes() {
        // the counit is onto h_{K[G]}, so r*(h_{K[G]}) = 0
        let g = PermGroup::symmetric(2);
        let reg = crate::grouprep::regular_module(&g, f2());
        let rs = r_star(&h_of(&reg)).unwrap();
        assert!(crate::coherent::is_zero_object(&rs).unwrap());
    }

    #[test]
    fn r_shriek_of_tensor_matches_tor() {
        // eval(r^!(t_K), K) = Tor_1(K, ΣK) has dim 1 for S_2 at p=2
        let g = PermGroup::symmetric(2);
        let k = trivial_module(&g, f2());
        let f = t_of(&k);
        let rk = r_shriek(&f).unwrap();
        let d = eval_dim(&rk, &k).unwrap();
        // oracle through the syzygy: ΣK ≅ K, Tor_1(K, K) = 1
        let syz = crate::grouprep::syzygy(&k);
        let tor = crate::grouprep::tor1_dim(&k, &syz.cosyzygy).unwrap();
        assert_eq!(d, tor);
        assert_eq!(d, 1);
    }
}
