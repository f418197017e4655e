//! Right derived functors of `j_*`, through an injective copresentation
//! by symmetric powers of the requested length.

use std::sync::Arc;

use crate::coherent::{homology_at, t_of_map, CoherentComplex, CoherentPresentation};
use crate::error::Error;
use crate::grouprep::ModuleMap;
use crate::linalg::{inverse, FieldMatrix};
use crate::Limits;

use super::bridge::{gamma_resolution, young_data, YoungData};
use super::modules::{dual_module_schur, gamma_data, sym_data, SchurModule, SymData};
use super::SchurAlgebra;

/// `R^q j_*(F)` as a presentation.
pub fn derived_j_star(
    f: &SchurModule,
    q: usize,
    limits: &Limits,
) -> Result<CoherentPresentation, Error> {
    let algebra = f.algebra.clone();
    let field = algebra.field;
    let df = dual_module_schur(f);
    let res = gamma_resolution(&df, q + 1)?;
    // dualize level by level into symmetric-power copresentations
    let syms: Vec<Vec<SymData>> = res
        .levels
        .iter()
        .map(|l| l.parts.iter().map(|p| sym_data(&algebra, p)).collect())
        .collect();
    let iotas: Vec<FieldMatrix> = res
        .levels
        .iter()
        .zip(&syms)
        .map(|(l, s)| dual_gamma_to_sym_block(&algebra, &l.parts, s))
        .collect::<Result<_, _>>()?;
    let youngs: Vec<Vec<YoungData>> = res
        .levels
        .iter()
        .map(|l| {
            l.parts
                .iter()
                .map(|p| young_data(algebra.n, p, field))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for level in 0..res.levels.len() {
        let y_sum = sum_young(&youngs[level], &algebra, field)?;
        limits.check_matrix(y_sum.dim(), y_sum.dim(), "derived copresentation")?;
        terms.push(crate::coherent::t_of(&y_sum));
        if level > 0 {
            // ε_level : I_{level-1} → I_level dualized from the resolution
            let eps = iotas[level]
                .mul(&res.levels[level].map.transpose())?
                .mul(&inverse(&iotas[level - 1])?.ok_or(Error::BadMorphism)?)?;
            let psi = translate_blocks(
                &algebra,
                &youngs[level - 1],
                &youngs[level],
                &syms[level - 1],
                &syms[level],
                &eps,
            )?;
            let prev_sum = sum_young(&youngs[level - 1], &algebra, field)?;
            let psi_map = ModuleMap::new_unchecked(prev_sum, y_sum.clone(), psi);
            diffs.push(t_of_map(&psi_map)?);
        }
    }
    let complex = CoherentComplex::new(terms, diffs)?;
    homology_at(&complex, q)
}

fn sum_young(
    youngs: &[YoungData],
    algebra: &Arc<SchurAlgebra>,
    field: crate::linalg::Field,
) -> Result<crate::grouprep::Module, Error> {
    let group = crate::grouprep::PermGroup::symmetric(algebra.n);
    if youngs.is_empty() {
        return Ok(crate::grouprep::zero_module(&group, field));
    }
    let mut acc = youngs[0].module.clone();
    for y in &youngs[1..] {
        acc = crate::grouprep::direct_sum(&acc, &y.module);
    }
    Ok(acc)
}

fn dual_gamma_to_sym_block(
    algebra: &Arc<SchurAlgebra>,
    parts: &[Vec<usize>],
    syms: &[SymData],
) -> Result<FieldMatrix, Error> {
    let field = algebra.field;
    let mut acc = FieldMatrix::zero(field, 0, 0);
    for (lambda, sym) in parts.iter().zip(syms) {
        let dg = dual_module_schur(&gamma_data(algebra, lambda).module);
        let hom = super::homext::schur_hom(&dg, &sym.module)?;
        let iso = hom
            .basis
            .iter()
            .find(|m| crate::linalg::is_invertible(m))
            .cloned()
            .or_else(|| {
                // small exhaustive search
                let k = hom.dim();
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
                        let m = hom.combination(&coeffs);
                        if crate::linalg::is_invertible(&m) {
                            return Some(m);
                        }
                    }
                }
                None
            })
            .ok_or(Error::BadMorphism)?;
        acc = acc.block_diag(&iso);
    }
    Ok(acc)
}

fn translate_blocks(
    algebra: &Arc<SchurAlgebra>,
    youngs_a: &[YoungData],
    youngs_b: &[YoungData],
    syms_a: &[SymData],
    syms_b: &[SymData],
    eps: &FieldMatrix,
) -> Result<FieldMatrix, Error> {
    let field = algebra.field;
    let dim_a: usize = youngs_a.iter().map(|y| y.module.dim()).sum();
    let dim_b: usize = youngs_b.iter().map(|y| y.module.dim()).sum();
    let mut psi = FieldMatrix::zero(field, dim_b, dim_a);
    let mut sym_off_a = Vec::new();
    let mut acc = 0;
    for s in syms_a {
        sym_off_a.push(acc);
        acc += s.module.dim;
    }
    let mut sym_off_b = Vec::new();
    acc = 0;
    for s in syms_b {
        sym_off_b.push(acc);
        acc += s.module.dim;
    }
    let mut y_off_a = Vec::new();
    acc = 0;
    for y in youngs_a {
        y_off_a.push(acc);
        acc += y.module.dim();
    }
    let mut y_off_b = Vec::new();
    acc = 0;
    for y in youngs_b {
        y_off_b.push(acc);
        acc += y.module.dim();
    }
    for (a, ya) in youngs_a.iter().enumerate() {
        for (b, yb) in youngs_b.iter().enumerate() {
            let block = eps.submatrix(
                sym_off_b[b]..sym_off_b[b] + syms_b[b].module.dim,
                sym_off_a[a]..sym_off_a[a] + syms_a[a].module.dim,
            );
            let solved =
                super::bridge::solve_young_map_sym_public(algebra, ya, yb, &syms_a[a], &syms_b[b], &block)?;
            for r in 0..solved.rows() {
                for c in 0..solved.cols() {
                    let v = solved.get(r, c);
                    if v != 0 {
                        psi.set(y_off_b[b] + r, y_off_a[a] + c, v);
                    }
                }
            }
        }
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{eval_dim, is_zero_object, presentations_isomorphic};
    use crate::linalg::Field;
    use crate::schur::{eval_expr, j_lowerstar, parse_expr};

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn degree_zero_is_j_lowerstar() {
        let m = eval_expr(&parse_expr("s(2)").unwrap(), 2, f2(), &Limits::default()).unwrap();
        let r0 = derived_j_star(&m, 0, &Limits::default()).unwrap();
        let jl = j_lowerstar(&m).unwrap();
        assert!(presentations_isomorphic(&r0, &jl).unwrap());
    }

    #[test]
    fn injectives_have_no_higher_derived_functors() {
        let m = eval_expr(&parse_expr("s(2)").unwrap(), 2, f2(), &Limits::default()).unwrap();
        let r1 = derived_j_star(&m, 1, &Limits::default()).unwrap();
        assert!(is_zero_object(&r1).unwrap());
        let s2 = crate::grouprep::PermGroup::symmetric(2);
        let k = crate::grouprep::trivial_module(&s2, f2());
        assert_eq!(eval_dim(&r1, &k).unwrap(), 0);
    }

    #[test]
    fn derived_functors_vanish_when_restrictions_are_projective() {
        // over n = 2, p = 2 every module is a sum of K and K[S_2], whose
        // evaluations under j* are the projectives Γ² and T²; so even for
        // the non-injective I^{(1)} the higher derived functors vanish
        let m = eval_expr(&parse_expr("twist(1,id)").unwrap(), 2, f2(), &Limits::default()).unwrap();
        let r1 = derived_j_star(&m, 1, &Limits::default()).unwrap();
        assert!(is_zero_object(&r1).unwrap());
    }
}
