//! Representations of symmetric groups and their subgroups, with the
//! homological primitives consumed by the functor calculus: Hom, duals,
//! tensor over the group, induction and restriction, syzygies, Tor, free
//! resolutions, and the subset complex.

pub mod group;
pub mod hom;
pub mod homology;
pub mod induction;
pub mod module;
pub mod perm;

pub use group::{partitions, GroupTag, PermGroup, Subgroup};
pub use hom::{hom_basis, hom_dim, regular_dual_iso, HomBasis};
pub use homology::{
    cokernel_module, free_cover, free_resolution, kernel_module, random_module, subset_complex,
    syzygy, tor1_dim, zero_module, FreeResolution, ModuleComplex, Syzygy,
};
pub use induction::{
    induce, induce_map, restrict, restrict_map, wreath_induce, wreath_induce_map_left,
    wreath_induce_map_right,
};
pub use module::{
    coinvariant_tensor, coinvariants_of, direct_sum, direct_sum_map, dual_module, external_box,
    free_module, invariants_of, permutation_module, coset_module, quotient_module, regular_module,
    sign_module, submodule_from_basis, tensor_module, trivial_module, CoinvariantSpace,
    GroupModule, Module, ModuleMap,
};
pub use perm::Perm;

use crate::error::Error;
use crate::linalg::Field;
use std::sync::Arc;

/// Modules isomorphic? Searches `Hom_G(a, b)` for an invertible element:
/// single basis maps first, then seeded random combinations, then full
/// enumeration when the search space is small.
pub fn modules_isomorphic(a: &Module, b: &Module) -> Result<bool, Error> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    if a.dim() == 0 {
        return Ok(true);
    }
    let hom = hom_basis(a, b)?;
    Ok(find_invertible(&hom).is_some())
}

/// An invertible combination of a Hom basis, if one can be found.
pub fn find_invertible(hom: &HomBasis) -> Option<ModuleMap> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let field = hom.source.field();
    let k = hom.dim();
    if k == 0 {
        return None;
    }
    for i in 0..k {
        let m = hom.map(i);
        if crate::linalg::is_invertible(&m.matrix) {
            return Some(m);
        }
    }
    // exhaustive when cheap
    let space: u64 = (field.p() as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if space <= 4096 {
        for code in 1..space {
            let mut c = code;
            let coeffs: Vec<u32> = (0..k)
                .map(|_| {
                    let v = (c % field.p() as u64) as u32;
                    c /= field.p() as u64;
                    v
                })
                .collect();
            let m = hom.combination(&coeffs);
            if crate::linalg::is_invertible(&m.matrix) {
                return Some(m);
            }
        }
        return None;
    }
    let mut rng = StdRng::seed_from_u64(0x15011357);
    for _ in 0..400 {
        let coeffs: Vec<u32> = (0..k).map(|_| rng.gen_range(0..field.p())).collect();
        let m = hom.combination(&coeffs);
        if crate::linalg::is_invertible(&m.matrix) {
            return Some(m);
        }
    }
    None
}

/// The probe family used by pointwise tests: the trivial module, the sign
/// module (p odd), the regular module, every Young permutation module, and
/// three seeded random modules of dimension at most 6.
pub fn probe_family(group: &Arc<PermGroup>, field: Field) -> Vec<Module> {
    let mut probes = vec![trivial_module(group, field)];
    if field.p() != 2 {
        probes.push(sign_module(group, field));
    }
    probes.push(regular_module(group, field));
    if let GroupTag::Symmetric(n) = group.tag() {
        for lambda in partitions(*n) {
            if lambda.len() > 1 {
                if let Ok(m) = permutation_module(*n, &lambda, field) {
                    probes.push(m);
                }
            }
        }
    }
    for seed in 0..3u64 {
        probes.push(random_module(group, field, 0xbeef + seed, 6));
    }
    probes
}
