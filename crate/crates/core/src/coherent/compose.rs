//! Composition operations landing in degree `m·n`.
//!
//! `f ⊚ g` extends plethysm to presentations: exact in `f` through the
//! wreath induction `M • N` on generators, and extended in `g` through the
//! reflexive-coequalizer recipe applied to the projective presentation of
//! `g`: `f ⊚ g = coker(T(δ₁) − T(δ₂) : f ⊚ h_{P⊕Q} → f ⊚ h_P)`.
//!
//! `f ∘̄ g = ⟨f, g^{⊗ℓ m}⟩` pairs `f` with the m-fold graded tensor power
//! of `g`, carrying its block-permutation action.

use std::sync::Arc;

use crate::error::Error;
use crate::grouprep::{
    wreath_induce_map_left, wreath_induce_map_right, GroupModule, GroupTag, Module, ModuleMap,
    Perm, PermGroup, Subgroup,
};
use crate::linalg::{kron, FieldMatrix};

use super::ops::cokernel_c;
use super::pairing::{pairing_coherent_host, GAction};
use super::{CoherentMorphism, CoherentPresentation};

fn degree_of(f: &CoherentPresentation) -> usize {
    match f.group().tag() {
        GroupTag::Symmetric(n) => *n,
        _ => f.group().degree(),
    }
}

/// `f ⊚ h_Y = pres(α_f • id_Y)`.
fn bullet_with_module(
    f: &CoherentPresentation,
    y: &Module,
) -> Result<CoherentPresentation, Error> {
    Ok(CoherentPresentation::new(wreath_induce_map_left(
        &f.alpha, y,
    )?))
}

/// `f ⊚ g` by the reflexive-coequalizer extension along the presentation
/// of `g`.
pub fn bullet_compose(
    f: &CoherentPresentation,
    g: &CoherentPresentation,
) -> Result<CoherentPresentation, Error> {
    let p = g.m();
    let q = g.n();
    if q.dim() == 0 {
        return bullet_with_module(f, p);
    }
    let pq = crate::grouprep::direct_sum(p, q);
    let field = f.field();
    let idp = FieldMatrix::identity(field, p.dim());
    let delta1 = ModuleMap::new_unchecked(p.clone(), pq.clone(), idp.vcat(&g.alpha.matrix)?);
    let delta2 = ModuleMap::new_unchecked(
        p.clone(),
        pq.clone(),
        idp.vcat(&FieldMatrix::zero(field, q.dim(), p.dim()))?,
    );
    let src = bullet_with_module(f, &pq)?;
    let tgt = bullet_with_module(f, p)?;
    let t1 = bullet_morphism(f, &src, &tgt, &delta1)?;
    let t2 = bullet_morphism(f, &src, &tgt, &delta2)?;
    let diff = t1.sub(&t2)?;
    Ok(cokernel_c(&diff)?.0)
}

/// `T(h_ψ) : (f ⊚ h_Y) → (f ⊚ h_{Y'})` for `ψ : Y' → Y`.
fn bullet_morphism(
    f: &CoherentPresentation,
    source: &CoherentPresentation,
    target: &CoherentPresentation,
    psi: &ModuleMap,
) -> Result<CoherentMorphism, Error> {
    let mu = wreath_induce_map_right(f.m(), psi)?;
    let nu = wreath_induce_map_right(f.n(), psi)?;
    Ok(CoherentMorphism::new_unchecked(
        source.clone(),
        target.clone(),
        ModuleMap::new_unchecked(target.m().clone(), source.m().clone(), mu.matrix),
        ModuleMap::new_unchecked(target.n().clone(), source.n().clone(), nu.matrix),
    ))
}

/// The direct product `(S_n)^m` inside `S_{nm}`, block-major generators.
fn base_power_group(m: usize, n: usize) -> Arc<PermGroup> {
    let degree = m * n;
    let mut gens = Vec::new();
    for block in 0..m {
        for i in 0..n.saturating_sub(1) {
            gens.push(Perm::transposition(degree, block * n + i, block * n + i + 1));
        }
    }
    PermGroup::new(degree, gens, GroupTag::Product).expect("valid generators")
}

/// The block swap `w_b` exchanging blocks `b` and `b+1` wholesale.
fn block_swap(m: usize, n: usize, b: usize) -> Perm {
    let degree = m * n;
    let mut images: Vec<usize> = (0..degree).collect();
    for i in 0..n {
        images[b * n + i] = (b + 1) * n + i;
        images[(b + 1) * n + i] = b * n + i;
    }
    let _ = m;
    Perm::new(images).expect("block swap")
}

/// Tensor power of a module over `(S_n)^m`, factorwise action.
fn power_module(h: &Arc<PermGroup>, base: &Module, m: usize, n: usize) -> Module {
    let field = base.field();
    let d = base.dim();
    let total = d.pow(m as u32);
    let mut actions = Vec::new();
    for block in 0..m {
        for gi in 0..n.saturating_sub(1) {
            let left = FieldMatrix::identity(field, d.pow(block as u32));
            let right = FieldMatrix::identity(field, d.pow((m - 1 - block) as u32));
            actions.push(kron(&left, &kron(base.gen_action(gi), &right).expect("field")).expect("field"));
        }
    }
    GroupModule::derived_for_tests(h.clone(), field, total, actions)
}

/// Mixed tensor with `special` in slot `s` and `base` elsewhere.
fn mixed_module(
    h: &Arc<PermGroup>,
    base: &Module,
    special: &Module,
    s: usize,
    m: usize,
    n: usize,
) -> Module {
    let field = base.field();
    let dim_at = |slot: usize| if slot == s { special.dim() } else { base.dim() };
    let total: usize = (0..m).map(dim_at).product();
    let mut actions = Vec::new();
    for block in 0..m {
        for gi in 0..n.saturating_sub(1) {
            let left: usize = (0..block).map(dim_at).product();
            let right: usize = (block + 1..m).map(dim_at).product();
            let mid = if block == s {
                special.gen_action(gi).clone()
            } else {
                base.gen_action(gi).clone()
            };
            actions.push(
                kron(
                    &FieldMatrix::identity(field, left),
                    &kron(&mid, &FieldMatrix::identity(field, right)).expect("field"),
                )
                .expect("field"),
            );
        }
    }
    GroupModule::derived_for_tests(h.clone(), field, total, actions)
}

/// The m-fold graded tensor power `g^{⊗ℓ m}` over `S_{nm}` with the
/// block-permutation action of `S_m`: the presentation, and one
/// automorphism per adjacent transposition of blocks.
pub fn tensor_power_with_symmetry(
    g: &CoherentPresentation,
    m: usize,
) -> Result<(CoherentPresentation, Vec<CoherentMorphism>), Error> {
    let n = degree_of(g);
    let h = base_power_group(m, n);
    let amb = PermGroup::symmetric(m * n);
    let sub = Subgroup::inclusion(h.clone(), amb)?;
    let p = g.m();
    let q = g.n();
    let field = g.field();

    let p_pow = power_module(&h, p, m, n);
    let mixed: Vec<Module> = (0..m).map(|s| mixed_module(&h, p, q, s, m, n)).collect();
    let mut n_slot = mixed[0].clone();
    for piece in &mixed[1..] {
        n_slot = crate::grouprep::direct_sum(&n_slot, piece);
    }
    // γ_m : P^{⊠m} → ⊕_s (… Q in slot s …), components id ⊗ … α_g … ⊗ id
    let mut gamma = FieldMatrix::zero(field, 0, p_pow.dim());
    for s in 0..m {
        let left = FieldMatrix::identity(field, p.dim().pow(s as u32));
        let right = FieldMatrix::identity(field, p.dim().pow((m - 1 - s) as u32));
        let comp = kron(&left, &kron(&g.alpha.matrix, &right)?)?;
        gamma = if gamma.rows() == 0 {
            comp
        } else {
            gamma.vcat(&comp)?
        };
    }
    let gamma_map = ModuleMap::new_unchecked(p_pow.clone(), n_slot.clone(), gamma);
    let ind_gamma = crate::grouprep::induce_map(&sub, &gamma_map)?;
    let power = CoherentPresentation::new(ind_gamma);

    // block-permutation automorphisms for adjacent transpositions
    let mut sym = Vec::new();
    for b in 0..m.saturating_sub(1) {
        let w = block_swap(m, n, b);
        let theta_m = induced_twist(&sub, &p_pow, &w, &slot_swap_perm(p, q, m, b, None))?;
        let theta_n = induced_twist(&sub, &n_slot, &w, &slot_swap_perm_mixed(p, q, m, b, &mixed))?;
        let mu = ModuleMap::new_unchecked(
            power.m().clone(),
            power.m().clone(),
            theta_m,
        );
        let nu = ModuleMap::new_unchecked(
            power.n().clone(),
            power.n().clone(),
            theta_n,
        );
        sym.push(CoherentMorphism::new_unchecked(
            power.clone(),
            power.clone(),
            mu,
            nu,
        ));
    }
    Ok((power, sym))
}

/// Permutation matrix swapping tensor slots `b` and `b+1` of `P^{⊗m}`.
fn slot_swap_perm(
    p: &Module,
    _q: &Module,
    m: usize,
    b: usize,
    _unused: Option<()>,
) -> FieldMatrix {
    let d = p.dim();
    let total = d.pow(m as u32);
    let field = p.field();
    let mut mat = FieldMatrix::zero(field, total, total);
    for idx in 0..total {
        let mut digits = to_digits(idx, &vec![d; m]);
        digits.swap(b, b + 1);
        mat.set(from_digits(&digits, &vec![d; m]), idx, 1);
    }
    mat
}

/// Slot swap on the direct sum of mixed tensors: summand `s` maps to
/// summand `σ_b(s)` with the tensor coordinates swapped accordingly.
fn slot_swap_perm_mixed(
    p: &Module,
    q: &Module,
    m: usize,
    b: usize,
    mixed: &[Module],
) -> FieldMatrix {
    let field = p.field();
    let total: usize = mixed.iter().map(|x| x.dim()).sum();
    let offsets: Vec<usize> = mixed
        .iter()
        .scan(0, |acc, x| {
            let o = *acc;
            *acc += x.dim();
            Some(o)
        })
        .collect();
    let sigma = |s: usize| {
        if s == b {
            b + 1
        } else if s == b + 1 {
            b
        } else {
            s
        }
    };
    let mut mat = FieldMatrix::zero(field, total, total);
    for (s, piece) in mixed.iter().enumerate() {
        let dims: Vec<usize> = (0..m)
            .map(|slot| if slot == s { q.dim() } else { p.dim() })
            .collect();
        let s2 = sigma(s);
        let dims2: Vec<usize> = (0..m)
            .map(|slot| if slot == s2 { q.dim() } else { p.dim() })
            .collect();
        for idx in 0..piece.dim() {
            let mut digits = to_digits(idx, &dims);
            digits.swap(b, b + 1);
            let target = from_digits(&digits, &dims2);
            mat.set(offsets[s2] + target, offsets[s] + idx, 1);
        }
    }
    mat
}

fn to_digits(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut d = vec![0; dims.len()];
    for slot in (0..dims.len()).rev() {
        d[slot] = idx % dims[slot];
        idx /= dims[slot];
    }
    d
}

fn from_digits(digits: &[usize], dims: &[usize]) -> usize {
    digits
        .iter()
        .zip(dims)
        .fold(0, |acc, (&d, &base)| acc * base + d)
}

/// The induced twist `[t ⊗ v] ↦ [t w⁻¹ ⊗ h·(τ v)]` on `Ind_H^G(V)` for a
/// block permutation `w` normalizing `H` and a compatible `τ`.
fn induced_twist(
    sub: &Subgroup,
    base: &Module,
    w: &Perm,
    tau: &FieldMatrix,
) -> Result<FieldMatrix, Error> {
    let field = base.field();
    let k = sub.index();
    let d = base.dim();
    let mut mat = FieldMatrix::zero(field, k * d, k * d);
    let w_inv = w.inverse();
    for i in 0..k {
        let twi = sub.transversal()[i].compose(&w_inv);
        let (j, h_idx) = sub
            .factor(&twi)
            .ok_or_else(|| Error::BadSubgroup("twist leaves the group".into()))?;
        let block = base.act(h_idx).mul(tau)?;
        for r in 0..d {
            for c in 0..d {
                let v = block.get(r, c);
                if v != 0 {
                    mat.set(j * d + r, i * d + c, v);
                }
            }
        }
    }
    Ok(mat)
}

/// `f ∘̄ g = ⟨f, g^{⊗ℓ m}⟩` with the pairing host the presentations in
/// degree `n·m`.
pub fn compose_bar(
    f: &CoherentPresentation,
    g: &CoherentPresentation,
) -> Result<CoherentPresentation, Error> {
    let m = degree_of(f);
    let (power, sym) = tensor_power_with_symmetry(g, m)?;
    pairing_coherent_host(
        f,
        &GAction {
            object: power,
            gens: sym,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{h_of, presentations_isomorphic, t_of};
    use crate::grouprep::{permutation_module, regular_module, trivial_module};
    use crate::linalg::Field;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn bullet_of_representables_is_wreath_induction() {
        // h_K ⊚ h_K for m = n = 2 is represented by the dim-3 module
        // K[S_4 / S_2≀S_2]
        let s2 = PermGroup::symmetric(2);
        let k = trivial_module(&s2, f2());
        let out = bullet_compose(&h_of(&k), &h_of(&k)).unwrap();
        assert_eq!(out.m().dim(), 3);
        // compare against the coset module on S_4 / (S_2 ≀ S_2)
        let w = PermGroup::wreath(2, 2);
        let s4 = PermGroup::symmetric(4);
        let sub = Subgroup::inclusion(w, s4).unwrap();
        let coset = crate::grouprep::coset_module(&sub, f2());
        assert!(presentations_isomorphic(&out, &h_of(&coset)).unwrap());
    }

    #[test]
    fn bullet_on_tensor_generators() {
        // t_M ⊚ t_N = t_{M • N} on small instances
        let s2 = PermGroup::symmetric(2);
        let k = trivial_module(&s2, f2());
        let bullet = bullet_compose(&t_of(&k), &t_of(&k)).unwrap();
        let mn = crate::grouprep::wreath_induce(&k, &k).unwrap();
        assert!(presentations_isomorphic(&bullet, &t_of(&mn)).unwrap());
    }

    #[test]
    fn compose_bar_agrees_with_bullet_on_representable_second_slot() {
        let s2 = PermGroup::symmetric(2);
        let k = trivial_module(&s2, f2());
        let reg = regular_module(&s2, f2());
        for f in [h_of(&k), h_of(&reg), t_of(&k)] {
            let a = bullet_compose(&f, &h_of(&k)).unwrap();
            let b = compose_bar(&f, &h_of(&k)).unwrap();
            assert!(
                presentations_isomorphic(&a, &b).unwrap(),
                "f with generator dim {}",
                f.m().dim()
            );
        }
    }

    #[test]
    fn compose_bar_with_free_first_slot_forgets_action() {
        // h_{K[S_m]} ∘̄ g evaluates like the m-th tensor power with the
        // action forgotten: compare dims at a probe
        let s2 = PermGroup::symmetric(2);
        let reg = regular_module(&s2, f2());
        let k = trivial_module(&s2, f2());
        let g = h_of(&k);
        let out = compose_bar(&h_of(&reg), &g).unwrap();
        let (power, _) = tensor_power_with_symmetry(&g, 2).unwrap();
        let probe = permutation_module(4, &[2, 2], f2()).unwrap();
        let lhs = crate::coherent::eval_dim(&out, &probe).unwrap();
        let rhs = crate::coherent::eval_dim(&power, &probe).unwrap();
        // Hom(K[S_2], −) on the power contributes |basis| copies of the
        // underlying space: dim Hom(K[G], V) = dim V with G-action forgotten
        assert_eq!(lhs, rhs * 1);
    }

    #[test]
    fn compose_bar_with_m_one_is_identity() {
        let s1 = PermGroup::symmetric(1);
        let k1 = trivial_module(&s1, f2());
        let s3 = PermGroup::symmetric(3);
        let y = permutation_module(3, &[2, 1], f2()).unwrap();
        let g = h_of(&y);
        let out = compose_bar(&h_of(&k1), &g).unwrap();
        assert!(presentations_isomorphic(&out, &g).unwrap());
        let _ = s3;
    }
}
