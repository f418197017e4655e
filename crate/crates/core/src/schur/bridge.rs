//! The exact functor from presented functors to Schur-algebra modules,
//! `j*(f)(V) = f(V^{⊗n})`, with its two adjoints.
//!
//! `j_!` sends divided powers to representables on Young permutation
//! modules; a projective presentation of a polynomial functor by sums of
//! divided powers therefore translates into a presentation by Young
//! modules once the full-and-faithful correspondence between maps of
//! divided powers and maps of Young modules is inverted, which is a
//! linear solve. Dually `j_*` is a kernel of tensor functors on a
//! copresentation by symmetric powers. The norm `j_! → j_*` is the
//! morphism whose image under `j*` is the identity.

use std::sync::Arc;

use crate::coherent::{
    eval, hom_coherent, image_c, kernel_c, morphism_eval_with, t_of_map, CoherentMorphism,
    CoherentPresentation, Evaluation,
};
use crate::error::Error;
use crate::grouprep::{
    hom_basis, GroupModule, Module, ModuleMap, PermGroup, Subgroup,
};
use crate::linalg::{inverse, solve_linear, CoordSolver, Field, FieldMatrix};

use super::modules::{
    dual_module_schur, gamma_data, place_permutation, sym_data, GammaData,
    SchurModule, SymData,
};
use super::homext::{schur_hom, schur_modules_isomorphic};
use super::SchurAlgebra;

/// The tensor space as a permutation module over the symmetric group.
pub fn tensor_group_module(algebra: &Arc<SchurAlgebra>) -> Module {
    let group = PermGroup::symmetric(algebra.n);
    let field = algebra.field;
    let points: Vec<Vec<usize>> = group
        .gens()
        .iter()
        .map(|s| place_permutation(algebra, s))
        .collect();
    GroupModule::from_points(group, field, algebra.t_dim, points)
}

fn algebra_basis_map(algebra: &Arc<SchurAlgebra>, x_t: &Module, b: usize) -> ModuleMap {
    let field = algebra.field;
    let mut m = FieldMatrix::zero(field, algebra.t_dim, algebra.t_dim);
    for &(r, c) in &algebra.ops[b] {
        m.set(r as usize, c as usize, field.add(m.get(r as usize, c as usize), 1));
    }
    ModuleMap::new_unchecked(x_t.clone(), x_t.clone(), m)
}

/// `j*(f)`: evaluate at the tensor space and act through functoriality on
/// the equivariant operators.
pub fn j_star(
    f: &CoherentPresentation,
    algebra: &Arc<SchurAlgebra>,
) -> Result<SchurModule, Error> {
    let x_t = tensor_group_module(algebra);
    let ev = eval(f, &x_t)?;
    let mut actions = Vec::with_capacity(algebra.dim());
    for b in 0..algebra.dim() {
        let map = algebra_basis_map(algebra, &x_t, b);
        actions.push(crate::coherent::eval_map_with(f, &ev, &ev, &map)?);
    }
    Ok(SchurModule {
        algebra: algebra.clone(),
        dim: ev.dim(),
        actions,
    })
}

/// `j*` of a morphism: its component at the tensor space.
pub fn j_star_morphism(
    phi: &CoherentMorphism,
    algebra: &Arc<SchurAlgebra>,
) -> Result<FieldMatrix, Error> {
    let x_t = tensor_group_module(algebra);
    let ev_src = eval(&phi.source, &x_t)?;
    let ev_tgt = eval(&phi.target, &x_t)?;
    morphism_eval_with(phi, &ev_src, &ev_tgt)
}

/// Young data: the subgroup embedding and the coset module.
pub struct YoungData {
    pub sub: Subgroup,
    pub module: Module,
}

pub fn young_data(n: usize, lambda: &[usize], field: Field) -> Result<YoungData, Error> {
    let sn = PermGroup::symmetric(n);
    let young = PermGroup::young(lambda)?;
    let sub = Subgroup::inclusion(young, sn)?;
    let module = crate::grouprep::coset_module(&sub, field);
    Ok(YoungData { sub, module })
}

pub fn young_module(n: usize, lambda: &[usize], field: Field) -> Result<Module, Error> {
    Ok(young_data(n, lambda, field)?.module)
}

pub fn gamma_module(algebra: &Arc<SchurAlgebra>, lambda: &[usize]) -> GammaData {
    gamma_data(algebra, lambda)
}

pub fn s_module(algebra: &Arc<SchurAlgebra>, lambda: &[usize]) -> SymData {
    sym_data(algebra, lambda)
}

/// Direct sum of Schur modules.
fn schur_direct_sum(mods: &[&SchurModule]) -> SchurModule {
    let algebra = mods[0].algebra.clone();
    let field = algebra.field;
    let dim = mods.iter().map(|m| m.dim).sum();
    let actions = (0..algebra.dim())
        .map(|b| {
            let mut acc = FieldMatrix::zero(field, 0, 0);
            for m in mods {
                acc = acc.block_diag(&m.actions[b]);
            }
            acc
        })
        .collect();
    SchurModule {
        algebra,
        dim,
        actions,
    }
}

/// One level of a resolution by sums of divided powers: the chosen
/// partitions (with multiplicity) and the underlying matrix of the map
/// into the previous level's sum (level zero maps into the module itself).
pub struct GammaLevel {
    pub parts: Vec<Vec<usize>>,
    pub part_dims: Vec<usize>,
    pub map: FieldMatrix,
}

/// A resolution `… → P_1 → P_0 → F → 0` by sums of divided powers.
pub struct GammaResolution {
    pub levels: Vec<GammaLevel>,
}

impl GammaResolution {
    /// The block of the level-`i` map from summand `col` to summand `row`
    /// of level `i-1`.
    pub fn block(
        &self,
        level: usize,
        row: usize,
        col: usize,
    ) -> FieldMatrix {
        let prev_dims = if level == 0 {
            unreachable!("level zero has no blocks")
        } else {
            &self.levels[level - 1].part_dims
        };
        let cur = &self.levels[level];
        let row_offset: usize = prev_dims[..row].iter().sum();
        let col_offset: usize = cur.part_dims[..col].iter().sum();
        self.levels[level].map.submatrix(
            row_offset..row_offset + prev_dims[row],
            col_offset..col_offset + cur.part_dims[col],
        )
    }
}


/// Divided-power candidates ordered by dimension, built lazily and
/// guarded against materializing modules beyond desk scale.
fn lazy_gammas(algebra: &Arc<SchurAlgebra>) -> Result<Vec<(Vec<usize>, GammaData)>, Error> {
    const MAX_ACTION_ENTRIES: usize = 60_000_000;
    let mut parts: Vec<(usize, Vec<usize>)> = crate::grouprep::partitions(algebra.n)
        .into_iter()
        .map(|l| (gamma_dim_estimate(algebra.d, &l), l))
        .collect();
    parts.sort();
    let mut out = Vec::new();
    for (dim_est, l) in parts {
        if algebra.dim().saturating_mul(dim_est * dim_est) > MAX_ACTION_ENTRIES {
            // larger candidates are only reached if the smaller ones fail
            // to cover, which the cover reports as an error
            continue;
        }
        out.push((l.clone(), gamma_data(algebra, &l)));
    }
    if out.is_empty() {
        return Err(Error::ResourceGuard(
            "no divided-power candidate fits the memory guard".into(),
        ));
    }
    Ok(out)
}

fn gamma_dim_estimate(d: usize, lambda: &[usize]) -> usize {
    // dim Γ^k(K^D) = C(D+k-1, k); the product over the parts
    lambda
        .iter()
        .map(|&k| {
            let mut num = 1usize;
            let mut den = 1usize;
            for i in 0..k {
                num = num.saturating_mul(d + k - 1 - i);
                den *= i + 1;
            }
            num / den
        })
        .product()
}

/// Greedy cover of a module by maps from divided powers, preferring a
/// single isomorphic summand when one exists.
fn gamma_cover(
    algebra: &Arc<SchurAlgebra>,
    gammas: &[(Vec<usize>, GammaData)],
    target: &SchurModule,
) -> Result<GammaLevel, Error> {
    let field = algebra.field;
    // single-step isomorphism shortcut
    for (lambda, gd) in gammas {
        if gd.module.dim == target.dim {
            let hom = schur_hom(&gd.module, target)?;
            if let Some(iso) = find_invertible_schur(&hom, field) {
                return Ok(GammaLevel {
                    parts: vec![lambda.clone()],
                    part_dims: vec![gd.module.dim],
                    map: iso,
                });
            }
        }
    }
    let mut image = crate::linalg::IncrementalRref::new(field, target.dim);
    let mut parts = Vec::new();
    let mut part_dims = Vec::new();
    let mut map: Option<FieldMatrix> = None;
    for (lambda, gd) in gammas {
        if image.rank() == target.dim {
            break;
        }
        let hom = schur_hom(&gd.module, target)?;
        for phi in &hom.basis {
            let before = image.rank();
            for j in 0..phi.cols() {
                image.push_row(phi.col(j));
            }
            if image.rank() > before {
                parts.push(lambda.clone());
                part_dims.push(gd.module.dim);
                map = Some(match map {
                    None => phi.clone(),
                    Some(m) => m.hcat(phi)?,
                });
            }
            if image.rank() == target.dim {
                break;
            }
        }
    }
    if image.rank() != target.dim && target.dim > 0 {
        return Err(Error::Other(
            "divided powers failed to cover the module".into(),
        ));
    }
    Ok(GammaLevel {
        parts,
        part_dims,
        map: map.unwrap_or_else(|| FieldMatrix::zero(field, target.dim, 0)),
    })
}

fn find_invertible_schur(
    hom: &super::homext::SchurHomBasis,
    field: Field,
) -> Option<FieldMatrix> {
    for b in &hom.basis {
        if crate::linalg::is_invertible(b) {
            return Some(b.clone());
        }
    }
    let k = hom.dim();
    let space: u64 = (field.p() as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if k > 0 && space <= 2048 {
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
            if crate::linalg::is_invertible(&m) {
                return Some(m);
            }
        }
    }
    None
}

fn module_fingerprint(f: &SchurModule) -> u64 {
    // FNV over the action entries; cheap and collision-safe enough for a
    // cache keyed alongside the exact dimensions
    let mut h = 0xcbf29ce484222325u64;
    let mut eat = |v: u64| {
        h ^= v;
        h = h.wrapping_mul(0x100000001b3);
    };
    eat(f.dim as u64);
    for a in &f.actions {
        for &e in a.entries() {
            eat(e as u64);
        }
    }
    h
}

#[allow(clippy::type_complexity)]
static RESOLUTION_CACHE: std::sync::Mutex<
    Vec<((usize, usize, u32, usize, u64, usize), Arc<GammaResolution>)>,
> = std::sync::Mutex::new(Vec::new());

/// Resolution by sums of divided powers to the requested length, cached
/// by a fingerprint of the module.
pub fn gamma_resolution(f: &SchurModule, length: usize) -> Result<Arc<GammaResolution>, Error> {
    let key = (
        f.algebra.d,
        f.algebra.n,
        f.algebra.field.p(),
        f.dim,
        module_fingerprint(f),
        length,
    );
    if let Some((_, hit)) = RESOLUTION_CACHE
        .lock()
        .expect("poisoned")
        .iter()
        .find(|(k, _)| *k == key)
    {
        return Ok(hit.clone());
    }
    let out = Arc::new(gamma_resolution_uncached(f, length)?);
    RESOLUTION_CACHE
        .lock()
        .expect("poisoned")
        .push((key, out.clone()));
    Ok(out)
}

fn gamma_resolution_uncached(
    f: &SchurModule,
    length: usize,
) -> Result<GammaResolution, Error> {
    let algebra = f.algebra.clone();
    // lazy, dimension-ordered candidate list: the cover rarely needs the
    // huge powers, and the full tensor power at large D is too big to
    // materialize
    let gammas = lazy_gammas(&algebra)?;
    let mut levels = vec![gamma_cover(&algebra, &gammas, f)?];
    for _ in 0..length {
        let prev = levels.last().expect("nonempty");
        // the sum module of the previous level
        let prev_mods: Vec<&SchurModule> = prev
            .parts
            .iter()
            .map(|l| {
                &gammas
                    .iter()
                    .find(|(pl, _)| pl == l)
                    .expect("partition present")
                    .1
                    .module
            })
            .collect();
        if prev_mods.is_empty() {
            levels.push(GammaLevel {
                parts: Vec::new(),
                part_dims: Vec::new(),
                map: FieldMatrix::zero(algebra.field, 0, 0),
            });
            continue;
        }
        let sum = schur_direct_sum(&prev_mods);
        let kernel = crate::linalg::kernel_basis(&prev.map).transpose();
        if kernel.cols() == 0 {
            levels.push(GammaLevel {
                parts: Vec::new(),
                part_dims: Vec::new(),
                map: FieldMatrix::zero(algebra.field, sum.dim, 0),
            });
            continue;
        }
        let k_mod = super::modules::schur_submodule(&sum, &kernel);
        let cover = gamma_cover(&algebra, &gammas, &k_mod)?;
        // compose with the inclusion to express the map into the sum
        let map = kernel.mul(&cover.map)?;
        levels.push(GammaLevel {
            parts: cover.parts,
            part_dims: cover.part_dims,
            map,
        });
    }
    Ok(GammaResolution { levels })
}

/// The correspondence `ψ ↦ (u ↦ Σ coef_c P_{g_c} u)` from maps of Young
/// modules `Y_a → Y_b` to linear maps `Γ^b → Γ^a`; full and faithful onto
/// the intertwiners, so the inverse is a linear solve.
fn j_corr_matrix(
    algebra: &Arc<SchurAlgebra>,
    psi: &FieldMatrix,
    young_b: &YoungData,
    gamma_b: &GammaData,
    gamma_a: &GammaData,
) -> Result<FieldMatrix, Error> {
    let field = algebra.field;
    // ψ(e_a) = column 0 (identity coset first in the transversal).
    // Individual translates leave the invariants, only the sum over the
    // coset coefficients returns, so accumulate in tensor coordinates
    // before expressing in Γ^a.
    let coefs = psi.col(0);
    let mut acc: Vec<Vec<u32>> = vec![vec![0; algebra.t_dim]; gamma_b.module.dim];
    for (c, &coef) in coefs.iter().enumerate() {
        if coef == 0 {
            continue;
        }
        let g = &young_b.sub.transversal()[c];
        let pts = place_permutation(algebra, g);
        for (j, column) in acc.iter_mut().enumerate() {
            let u = gamma_b.basis.col(j);
            for (idx, &v) in u.iter().enumerate() {
                if v != 0 {
                    column[pts[idx]] = field.add(column[pts[idx]], field.mul(coef, v));
                }
            }
        }
    }
    let mut out = FieldMatrix::zero(field, gamma_a.module.dim, gamma_b.module.dim);
    for (j, column) in acc.iter().enumerate() {
        let coords = gamma_a.solver.coords(column).ok_or(Error::BadMorphism)?;
        for (i, &v) in coords.iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Solve the Young-module map whose correspondence image is `phi`.
fn solve_young_map(
    algebra: &Arc<SchurAlgebra>,
    young_a: &YoungData,
    young_b: &YoungData,
    gamma_a: &GammaData,
    gamma_b: &GammaData,
    phi: &FieldMatrix,
) -> Result<FieldMatrix, Error> {
    let field = algebra.field;
    let hom = hom_basis(&young_a.module, &young_b.module)?;
    let flat = gamma_a.module.dim * gamma_b.module.dim;
    let mut system = FieldMatrix::zero(field, flat, hom.dim());
    for (j, psi) in hom.basis.iter().enumerate() {
        let image = j_corr_matrix(algebra, psi, young_b, gamma_b, gamma_a)?;
        for (r, &v) in image.entries().iter().enumerate() {
            system.set(r, j, v);
        }
    }
    let coeffs = solve_linear(&system, phi.entries())?.ok_or(Error::BadMorphism)?;
    Ok(hom.combination(&coeffs).matrix)
}

/// `j_!(F)` with the data needed to identify `j*(j_! F)` with `F`.
pub struct JBangData {
    pub pres: CoherentPresentation,
    pub parts0: Vec<Vec<usize>>,
    pub gammas0: Vec<GammaData>,
    pub cover: FieldMatrix,
    /// offsets of the summands inside Y₀
    pub offsets0: Vec<usize>,
}

pub fn j_bang_with_data(
    f: &SchurModule,
) -> Result<JBangData, Error> {
    let algebra = f.algebra.clone();
    let field = algebra.field;
    let res = gamma_resolution(f, 1)?;
    let level0 = &res.levels[0];
    let level1 = &res.levels[1];
    let youngs0: Vec<YoungData> = level0
        .parts
        .iter()
        .map(|l| young_data(algebra.n, l, field))
        .collect::<Result<_, _>>()?;
    let youngs1: Vec<YoungData> = level1
        .parts
        .iter()
        .map(|l| young_data(algebra.n, l, field))
        .collect::<Result<_, _>>()?;
    let gammas0: Vec<GammaData> = level0.parts.iter().map(|l| gamma_data(&algebra, l)).collect();
    let gammas1: Vec<GammaData> = level1.parts.iter().map(|l| gamma_data(&algebra, l)).collect();
    let y0 = direct_sum_modules(&youngs0, &algebra, field)?;
    let y1 = direct_sum_modules(&youngs1, &algebra, field)?;
    // blocks: ψ_{ab} : Y_{λ_a} → Y_{μ_b} solving the correspondence
    let mut psi = FieldMatrix::zero(field, y1.dim(), y0.dim());
    let offsets_a = offsets(&youngs0);
    let offsets_b = offsets(&youngs1);
    for (a, ya) in youngs0.iter().enumerate() {
        for (b, yb) in youngs1.iter().enumerate() {
            let phi = res.block(1, a, b);
            let block = solve_young_map(&algebra, ya, yb, &gammas0[a], &gammas1[b], &phi)?;
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    let v = block.get(r, c);
                    if v != 0 {
                        psi.set(offsets_b[b] + r, offsets_a[a] + c, v);
                    }
                }
            }
        }
    }
    let alpha = ModuleMap::new_unchecked(y0.clone(), y1, psi);
    let offsets0 = offsets(&youngs0);
    Ok(JBangData {
        pres: CoherentPresentation::new(alpha),
        parts0: level0.parts.clone(),
        gammas0,
        cover: level0.map.clone(),
        offsets0,
    })
}

fn offsets(youngs: &[YoungData]) -> Vec<usize> {
    let mut out = Vec::with_capacity(youngs.len());
    let mut acc = 0;
    for y in youngs {
        out.push(acc);
        acc += y.module.dim();
    }
    out
}

fn direct_sum_modules(
    youngs: &[YoungData],
    algebra: &Arc<SchurAlgebra>,
    field: Field,
) -> Result<Module, Error> {
    let group = PermGroup::symmetric(algebra.n);
    if youngs.is_empty() {
        return Ok(crate::grouprep::zero_module(&group, field));
    }
    let mut acc = youngs[0].module.clone();
    for y in &youngs[1..] {
        acc = crate::grouprep::direct_sum(&acc, &y.module);
    }
    Ok(acc)
}

pub fn j_bang(f: &SchurModule) -> Result<CoherentPresentation, Error> {
    Ok(j_bang_with_data(f)?.pres)
}

/// The identification `j*(j_! F) → F` on evaluation coordinates.
fn j_bang_identification(
    data: &JBangData,
    f: &SchurModule,
    ev: &Evaluation,
) -> Result<FieldMatrix, Error> {
    let field = f.algebra.field;
    // a Hom basis element Y₀ → T restricts per summand; evaluation at the
    // identity coset lands in the invariants Γ^{λ_a}
    let p0_dim: usize = data.gammas0.iter().map(|g| g.module.dim).sum();
    let mut block_eval = FieldMatrix::zero(field, p0_dim, ev.hom_m.dim());
    for (j, phi) in ev.hom_m.basis.iter().enumerate() {
        let mut offset_rows = 0;
        for (a, gd) in data.gammas0.iter().enumerate() {
            let col = phi.col(data.offsets0[a]);
            let coords = gd.solver.coords(&col).ok_or(Error::BadMorphism)?;
            for (i, &v) in coords.iter().enumerate() {
                block_eval.set(offset_rows + i, j, v);
            }
            offset_rows += gd.module.dim;
        }
    }
    let iso = data.cover.mul(&block_eval)?.mul(&ev.quot.section)?;
    Ok(iso)
}

/// `j_*(F)` with identification data.
pub struct JLowerstarData {
    pub pres: CoherentPresentation,
    pub mono: CoherentMorphism,
    /// the ambient tensor presentation `t(Y₀')`
    pub ambient: CoherentPresentation,
    pub t_data: crate::coherent::TData,
    pub syms0: Vec<SymData>,
    pub offsets0: Vec<usize>,
    /// the embedding `F → I₀` in underlying coordinates
    pub embedding: FieldMatrix,
}

pub fn j_lowerstar_with_data(f: &SchurModule) -> Result<JLowerstarData, Error> {
    let algebra = f.algebra.clone();
    let field = algebra.field;
    let df = dual_module_schur(f);
    let res = gamma_resolution(&df, 1)?;
    let level0 = &res.levels[0];
    let level1 = &res.levels[1];
    // isomorphisms D(Γ^λ) ≅ S^λ per summand
    let syms0: Vec<SymData> = level0.parts.iter().map(|l| sym_data(&algebra, l)).collect();
    let syms1: Vec<SymData> = level1.parts.iter().map(|l| sym_data(&algebra, l)).collect();
    let iota0 = dual_gamma_to_sym(&algebra, &level0.parts, &syms0)?;
    let iota1 = dual_gamma_to_sym(&algebra, &level1.parts, &syms1)?;
    // embedding F = D(DF) → I₀ and the copresentation map I₀ → I₁
    let embedding = iota0.mul(&level0.map.transpose())?;
    let eps = iota1
        .mul(&level1.map.transpose())?
        .mul(&inverse(&iota0)?.ok_or(Error::BadMorphism)?)?;
    // translate ε blockwise to Young-module maps and take t of the result
    let youngs0: Vec<YoungData> = level0
        .parts
        .iter()
        .map(|l| young_data(algebra.n, l, field))
        .collect::<Result<_, _>>()?;
    let youngs1: Vec<YoungData> = level1
        .parts
        .iter()
        .map(|l| young_data(algebra.n, l, field))
        .collect::<Result<_, _>>()?;
    let y0 = direct_sum_modules(&youngs0, &algebra, field)?;
    let y1 = direct_sum_modules(&youngs1, &algebra, field)?;
    let offsets_a = offsets(&youngs0);
    let offsets_b = offsets(&youngs1);
    let sym_offsets_a = sym_offsets(&syms0);
    let sym_offsets_b = sym_offsets(&syms1);
    let mut psi = FieldMatrix::zero(field, y1.dim(), y0.dim());
    for (a, ya) in youngs0.iter().enumerate() {
        for (b, yb) in youngs1.iter().enumerate() {
            let block = eps.submatrix(
                sym_offsets_b[b]..sym_offsets_b[b] + syms1[b].module.dim,
                sym_offsets_a[a]..sym_offsets_a[a] + syms0[a].module.dim,
            );
            let solved = solve_young_map_sym(
                &algebra, ya, yb, &syms0[a], &syms1[b], &block,
            )?;
            for r in 0..solved.rows() {
                for c in 0..solved.cols() {
                    let v = solved.get(r, c);
                    if v != 0 {
                        psi.set(offsets_b[b] + r, offsets_a[a] + c, v);
                    }
                }
            }
        }
    }
    let psi_map = ModuleMap::new_unchecked(y0.clone(), y1, psi);
    let t_data = crate::coherent::t_of_with_data(&y0);
    let t_psi = t_of_map(&psi_map)?;
    let (pres, mono) = kernel_c(&t_psi)?;
    Ok(JLowerstarData {
        pres,
        mono,
        ambient: t_psi.source.clone(),
        t_data,
        syms0,
        offsets0: offsets_a,
        embedding,
    })
}

fn sym_offsets(syms: &[SymData]) -> Vec<usize> {
    let mut out = Vec::with_capacity(syms.len());
    let mut acc = 0;
    for s in syms {
        out.push(acc);
        acc += s.module.dim;
    }
    out
}

static IOTA_CACHE: std::sync::Mutex<
    Vec<((usize, usize, u32, Vec<usize>), FieldMatrix)>,
> = std::sync::Mutex::new(Vec::new());

fn dual_gamma_to_sym_part(
    algebra: &Arc<SchurAlgebra>,
    lambda: &[usize],
    sym: &SymData,
) -> Result<FieldMatrix, Error> {
    let field = algebra.field;
    let key = (algebra.d, algebra.n, field.p(), lambda.to_vec());
    if let Some((_, hit)) = IOTA_CACHE
        .lock()
        .expect("poisoned")
        .iter()
        .find(|(k, _)| *k == key)
    {
        return Ok(hit.clone());
    }
    let dg = dual_module_schur(&gamma_data(algebra, lambda).module);
    let hom = schur_hom(&dg, &sym.module)?;
    let iso = find_invertible_schur(&hom, field).ok_or(Error::BadMorphism)?;
    IOTA_CACHE
        .lock()
        .expect("poisoned")
        .push((key, iso.clone()));
    Ok(iso)
}

/// Isomorphism `⊕ D(Γ^λ) → ⊕ S^λ` as one block-diagonal matrix.
fn dual_gamma_to_sym(
    algebra: &Arc<SchurAlgebra>,
    parts: &[Vec<usize>],
    syms: &[SymData],
) -> Result<FieldMatrix, Error> {
    let field = algebra.field;
    let mut acc = FieldMatrix::zero(field, 0, 0);
    for (lambda, sym) in parts.iter().zip(syms) {
        acc = acc.block_diag(&dual_gamma_to_sym_part(algebra, lambda, sym)?);
    }
    Ok(acc)
}

/// `K(ψ) : S^a → S^b` for `ψ : Y_a → Y_b`, through coinvariant classes.
fn k_corr_matrix(
    algebra: &Arc<SchurAlgebra>,
    psi: &FieldMatrix,
    young_b: &YoungData,
    sym_a: &SymData,
    sym_b: &SymData,
) -> Result<FieldMatrix, Error> {
    let field = algebra.field;
    let coefs = psi.col(0);
    let mut total = FieldMatrix::zero(field, algebra.t_dim, algebra.t_dim);
    for (c, &coef) in coefs.iter().enumerate() {
        if coef == 0 {
            continue;
        }
        let ginv = young_b.sub.transversal()[c].inverse();
        let pts = place_permutation(algebra, &ginv);
        for idx in 0..algebra.t_dim {
            total.set(
                pts[idx],
                idx,
                field.add(total.get(pts[idx], idx), coef),
            );
        }
    }
    sym_b
        .proj
        .mul(&total)?
        .mul(&sym_a.section)
        .map_err(Into::into)
}

fn solve_young_map_sym(
    algebra: &Arc<SchurAlgebra>,
    young_a: &YoungData,
    young_b: &YoungData,
    sym_a: &SymData,
    sym_b: &SymData,
    phi: &FieldMatrix,
) -> Result<FieldMatrix, Error> {
    let field = algebra.field;
    let hom = hom_basis(&young_a.module, &young_b.module)?;
    let flat = sym_a.module.dim * sym_b.module.dim;
    let mut system = FieldMatrix::zero(field, flat, hom.dim());
    for (j, psi) in hom.basis.iter().enumerate() {
        let image = k_corr_matrix(algebra, psi, young_b, sym_a, sym_b)?;
        for (r, &v) in image.entries().iter().enumerate() {
            system.set(r, j, v);
        }
    }
    let coeffs = solve_linear(&system, phi.entries())?.ok_or(Error::BadMorphism)?;
    Ok(hom.combination(&coeffs).matrix)
}

pub fn j_lowerstar(f: &SchurModule) -> Result<CoherentPresentation, Error> {
    Ok(j_lowerstar_with_data(f)?.pres)
}

pub(crate) fn solve_young_map_sym_public(
    algebra: &Arc<SchurAlgebra>,
    young_a: &YoungData,
    young_b: &YoungData,
    sym_a: &SymData,
    sym_b: &SymData,
    phi: &FieldMatrix,
) -> Result<FieldMatrix, Error> {
    solve_young_map_sym(algebra, young_a, young_b, sym_a, sym_b, phi)
}

/// Identification `j*(j_* F) → F` on evaluation coordinates.
fn j_lowerstar_identification(
    data: &JLowerstarData,
    f: &SchurModule,
    ev_jl: &Evaluation,
    x_t: &Module,
) -> Result<FieldMatrix, Error> {
    let field = f.algebra.field;
    let ev_amb = eval(&data.ambient, x_t)?;
    let mono_eval = morphism_eval_with(&data.mono, ev_jl, &ev_amb)?;
    // classes in the ambient evaluation are Hom(F₀, T)-classes; read the
    // generator columns and project into the symmetric powers
    let i0_dim: usize = data.syms0.iter().map(|s| s.module.dim).sum();
    let order = data.t_data.f0.group().order();
    let mut to_i0 = FieldMatrix::zero(field, i0_dim, ev_amb.hom_m.dim());
    for (j, phi) in ev_amb.hom_m.basis.iter().enumerate() {
        let mut row_offset = 0;
        for (a, sym) in data.syms0.iter().enumerate() {
            // copy a of the free cover corresponds to the a-th summand's
            // identity coset generator
            let col = phi.col(a * order);
            let proj = sym.proj.mul_vec(&col)?;
            for (i, &v) in proj.iter().enumerate() {
                to_i0.set(row_offset + i, j, v);
            }
            row_offset += sym.module.dim;
        }
    }
    let into_i0 = to_i0.mul(&ev_amb.quot.section)?.mul(&mono_eval)?;
    // solve back through the embedding F → I₀
    let cols: Vec<Vec<u32>> = (0..data.embedding.cols())
        .map(|j| data.embedding.col(j))
        .collect();
    let solver = CoordSolver::new(field, i0_dim, &cols);
    let mut out = FieldMatrix::zero(field, f.dim, ev_jl.dim());
    for j in 0..ev_jl.dim() {
        let coords = solver
            .coords(&into_i0.col(j))
            .ok_or(Error::BadMorphism)?;
        for (i, &v) in coords.iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// The norm `j_!(F) → j_*(F)`: the morphism whose `j*`-image is the
/// identity of `F` under the unit and counit identifications.
pub fn norm_transformation(f: &SchurModule) -> Result<CoherentMorphism, Error> {
    let algebra = f.algebra.clone();
    let jb = j_bang_with_data(f)?;
    let jl = j_lowerstar_with_data(f)?;
    let x_t = tensor_group_module(&algebra);
    let ev_jb = eval(&jb.pres, &x_t)?;
    let ev_jl = eval(&jl.pres, &x_t)?;
    let eta = j_bang_identification(&jb, f, &ev_jb)?;
    let eta_inv = inverse(&eta)?.ok_or(Error::BadMorphism)?;
    let kappa = j_lowerstar_identification(&jl, f, &ev_jl, &x_t)?;
    let hom = hom_coherent(&jb.pres, &jl.pres)?;
    let field = algebra.field;
    let mut system = FieldMatrix::zero(field, f.dim * f.dim, hom.dim());
    for (j, theta) in hom.basis.iter().enumerate() {
        let at_t = morphism_eval_with(theta, &ev_jb, &ev_jl)?;
        let on_f = kappa.mul(&at_t)?.mul(&eta_inv)?;
        for (r, &v) in on_f.entries().iter().enumerate() {
            system.set(r, j, v);
        }
    }
    let id = FieldMatrix::identity(field, f.dim);
    let coeffs = solve_linear(&system, id.entries())?.ok_or(Error::BadMorphism)?;
    Ok(hom.combination(&coeffs))
}

/// The image of the norm.
pub fn j_bangstar(f: &SchurModule) -> Result<CoherentPresentation, Error> {
    Ok(image_c(&norm_transformation(f)?)?.0)
}

/// The counit `j_!(j* f) → f`, normalized so its `j*`-image is the
/// identity on the evaluation coordinates.
pub fn counit_j(
    f: &CoherentPresentation,
    algebra: &Arc<SchurAlgebra>,
) -> Result<CoherentMorphism, Error> {
    let field = algebra.field;
    let x_t = tensor_group_module(algebra);
    let js = j_star(f, algebra)?;
    let jb = j_bang_with_data(&js)?;
    let ev_jb = eval(&jb.pres, &x_t)?;
    let ev_f = eval(f, &x_t)?;
    let eta = j_bang_identification(&jb, &js, &ev_jb)?;
    let eta_inv = inverse(&eta)?.ok_or(Error::BadMorphism)?;
    let hom = hom_coherent(&jb.pres, f)?;
    let dim = js.dim;
    let mut system = FieldMatrix::zero(field, dim * dim, hom.dim());
    for (j, theta) in hom.basis.iter().enumerate() {
        let at_t = morphism_eval_with(theta, &ev_jb, &ev_f)?;
        let on_f = at_t.mul(&eta_inv)?;
        for (r, &v) in on_f.entries().iter().enumerate() {
            system.set(r, j, v);
        }
    }
    let id = FieldMatrix::identity(field, dim);
    let coeffs = solve_linear(&system, id.entries())?.ok_or(Error::BadMorphism)?;
    Ok(hom.combination(&coeffs))
}

/// The unit `f → j_*(j* f)`, normalized dually.
pub fn unit_j(
    f: &CoherentPresentation,
    algebra: &Arc<SchurAlgebra>,
) -> Result<CoherentMorphism, Error> {
    let field = algebra.field;
    let x_t = tensor_group_module(algebra);
    let js = j_star(f, algebra)?;
    let jl = j_lowerstar_with_data(&js)?;
    let ev_jl = eval(&jl.pres, &x_t)?;
    let ev_f = eval(f, &x_t)?;
    let kappa = j_lowerstar_identification(&jl, &js, &ev_jl, &x_t)?;
    let hom = hom_coherent(f, &jl.pres)?;
    let dim = js.dim;
    let mut system = FieldMatrix::zero(field, dim * dim, hom.dim());
    for (j, theta) in hom.basis.iter().enumerate() {
        let at_t = morphism_eval_with(theta, &ev_f, &ev_jl)?;
        let on_f = kappa.mul(&at_t)?;
        for (r, &v) in on_f.entries().iter().enumerate() {
            system.set(r, j, v);
        }
    }
    let id = FieldMatrix::identity(field, dim);
    let coeffs = solve_linear(&system, id.entries())?.ok_or(Error::BadMorphism)?;
    Ok(hom.combination(&coeffs))
}

/// Round-trip check `j*(j_! F) ≅ F ≅ j*(j_* F)` as modules.
pub fn unit_counit_isos(f: &SchurModule) -> Result<bool, Error> {
    let algebra = f.algebra.clone();
    let jb = j_bang(f)?;
    let jl = j_lowerstar(f)?;
    Ok(schur_modules_isomorphic(&j_star(&jb, &algebra)?, f)?
        && schur_modules_isomorphic(&j_star(&jl, &algebra)?, f)?)
}
