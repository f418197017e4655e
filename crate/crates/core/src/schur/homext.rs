//! Hom and Ext over a Schur algebra.
//!
//! Hom spaces are intertwiner solves over a small generating set of the
//! algebra. Ext comes from a non-minimal free resolution kept in matrix
//! form over the algebra, so free modules never materialize: the Hom
//! complex of a free module is just a power of the target.

use std::sync::Arc;

use crate::error::Error;
use crate::linalg::{CoordSolver, Field, FieldMatrix, IncrementalRref};
use crate::Limits;

use super::modules::{eval_expr, SchurModule};
use super::{PolyExpr, SchurAlgebra};

/// Basis of `Hom` between two modules over the same algebra.
pub struct SchurHomBasis {
    pub basis: Vec<FieldMatrix>,
    solver: Option<CoordSolver>,
    source_dim: usize,
    target_dim: usize,
    field: Field,
}

impl SchurHomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, m: &FieldMatrix) -> Option<Vec<u32>> {
        self.solver.as_ref()?.coords(m.entries())
    }

    pub fn combination(&self, coeffs: &[u32]) -> FieldMatrix {
        let mut out = FieldMatrix::zero(self.field, self.target_dim, self.source_dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c != 0 {
                out = out.add(&b.scale(*c)).expect("shape");
            }
        }
        out
    }
}

/// Intertwiners `a → b`, solved with lazy constraints: a few operators
/// seed the linear system, the candidate kernel is verified against every
/// basis element, and violated operators are added until the verification
/// is clean. The exit condition makes the result exact.
pub fn schur_hom(a: &SchurModule, b: &SchurModule) -> Result<SchurHomBasis, Error> {
    if a.algebra.as_ref() != b.algebra.as_ref() {
        return Err(Error::DegreeMismatch {
            expected: a.algebra.n,
            got: b.algebra.n,
        });
    }
    let field = a.algebra.field;
    let (da, db) = (a.dim, b.dim);
    let adim = a.algebra.dim();
    // seed with a handful of operators, single-off-diagonal ones first
    let off_diag =
        |bi: usize| a.algebra.basis[bi].iter().filter(|&&(i, j)| i != j).count();
    let mut order: Vec<usize> = (0..adim).collect();
    order.sort_by_key(|&bi| match off_diag(bi) {
        1 => 0usize,
        0 => 1,
        k => 1 + k,
    });
    let seed_count = if da * db > 2000 { 16 } else { 4 };
    let mut active: Vec<usize> = order.iter().copied().take(seed_count).collect();
    let push_constraints = |acc: &mut IncrementalRref, g: usize| {
        let am = &a.actions[g];
        let bm = &b.actions[g];
        let mut row: Vec<(usize, u32)> = Vec::new();
        // X ρ_a(g) − ρ_b(g) X = 0, X is db×da flattened row-major
        for i in 0..db {
            for j in 0..da {
                row.clear();
                for k in 0..da {
                    let v = am.get(k, j);
                    if v != 0 {
                        row.push((i * da + k, v));
                    }
                }
                for k in 0..db {
                    let v = bm.get(i, k);
                    if v != 0 {
                        row.push((k * da + j, field.neg(v)));
                    }
                }
                acc.push_sparse(&row);
            }
        }
    };
    let mut acc = IncrementalRref::new(field, da * db);
    for &g in &active {
        push_constraints(&mut acc, g);
    }
    let basis: Vec<FieldMatrix> = loop {
        let kernel = acc.kernel();
        let candidates: Vec<FieldMatrix> = (0..kernel.rows())
            .map(|r| {
                FieldMatrix::from_entries(field, db, da, kernel.row(r).to_vec()).expect("sized")
            })
            .collect();
        let mut violators = Vec::new();
        'scan: for x in &candidates {
            for g in 0..adim {
                if active.contains(&g) || violators.contains(&g) {
                    continue;
                }
                let lhs = x.mul(&a.actions[g])?;
                let rhs = b.actions[g].mul(x)?;
                if lhs != rhs {
                    violators.push(g);
                    if violators.len() >= 4 {
                        break 'scan;
                    }
                    continue 'scan;
                }
            }
        }
        if violators.is_empty() {
            break candidates;
        }
        for g in violators {
            active.push(g);
            push_constraints(&mut acc, g);
        }
    };
    let solver = if basis.is_empty() {
        None
    } else {
        let cols: Vec<Vec<u32>> = basis.iter().map(|m| m.entries().to_vec()).collect();
        Some(CoordSolver::new(field, da * db, &cols))
    };
    Ok(SchurHomBasis {
        basis,
        solver,
        source_dim: da,
        target_dim: db,
        field,
    })
}

/// Are two modules isomorphic? Searches the Hom space for an invertible
/// intertwiner.
pub fn schur_modules_isomorphic(a: &SchurModule, b: &SchurModule) -> Result<bool, Error> {
    if a.dim != b.dim {
        return Ok(false);
    }
    if a.dim == 0 {
        return Ok(true);
    }
    let hom = schur_hom(a, b)?;
    let field = a.algebra.field;
    let k = hom.dim();
    for i in 0..k {
        if crate::linalg::is_invertible(&hom.basis[i]) {
            return Ok(true);
        }
    }
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
            if crate::linalg::is_invertible(&hom.combination(&coeffs)) {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(0x5eaf00d);
    for _ in 0..400 {
        let coeffs: Vec<u32> = (0..k).map(|_| rng.gen_range(0..field.p())).collect();
        if crate::linalg::is_invertible(&hom.combination(&coeffs)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `Hom_{P_n}(F, G)` dimension for expressions evaluated at `D`.
pub fn hom_poly(
    f: &PolyExpr,
    g: &PolyExpr,
    d: usize,
    field: Field,
    limits: &Limits,
) -> Result<SchurHomBasis, Error> {
    let p = field.p();
    if f.degree(p) != g.degree(p) {
        return Err(Error::DegreeMismatch {
            expected: f.degree(p),
            got: g.degree(p),
        });
    }
    let mf = eval_expr(f, d, field, limits)?;
    let mg = eval_expr(g, d, field, limits)?;
    schur_hom(&mf, &mg)
}

/// A projective resolution by sums of corner projectives `A ξ_ω`:
/// `levels[i]` lists the weight idempotent of each summand, and
/// `diffs[i][j][c]` gives the algebra element (full coefficient vector,
/// supported on the corner) of the component from summand `j` of level
/// `i+1` to summand `c` of level `i`.
pub struct FreeResolutionA {
    pub levels: Vec<Vec<usize>>,
    pub diffs: Vec<Vec<Vec<Vec<u32>>>>,
}

/// The weighted coordinate layout of `⊕_c A ξ_{ω_c}`: per summand, the
/// corner's basis indices into the algebra.
struct WeightedLayout {
    corners: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    total: usize,
}

impl WeightedLayout {
    fn new(algebra: &SchurAlgebra, xis: &[usize]) -> WeightedLayout {
        let corners: Vec<Vec<usize>> = xis.iter().map(|&x| algebra.corner_basis(x)).collect();
        let mut offsets = Vec::with_capacity(corners.len());
        let mut acc = 0;
        for c in &corners {
            offsets.push(acc);
            acc += c.len();
        }
        WeightedLayout {
            corners,
            offsets,
            total: acc,
        }
    }

    /// Left multiplication by basis element `b` in weighted coordinates.
    fn left_mul(&self, algebra: &SchurAlgebra, b: usize, x: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.total];
        for (copy, corner) in self.corners.iter().enumerate() {
            let off = self.offsets[copy];
            // lift to full algebra coordinates, multiply, restrict back
            for (slot, &basis_idx) in corner.iter().enumerate() {
                let c = x[off + slot];
                if c == 0 {
                    continue;
                }
                for (k, v) in algebra.product(b, basis_idx) {
                    // k stays in the same corner (column content preserved)
                    let pos = corner.binary_search(&k).expect("corner closed");
                    out[off + pos] =
                        algebra.field.add(out[off + pos], algebra.field.mul(c, v));
                }
            }
        }
        out
    }
}

/// Weight-space generators of a module: per idempotent, an independent
/// family spanning the image of the idempotent, with orbit sizes for the
/// greedy ordering.
fn weighted_candidates(m: &SchurModule) -> Vec<(usize, usize, Vec<u32>)> {
    let algebra = &m.algebra;
    let mut out = Vec::new();
    for &xi in &algebra.weight_idempotents() {
        let projector = &m.actions[xi];
        let red = crate::linalg::rref_rank(&projector.transpose());
        // pivot columns of the transpose index independent image columns
        for &c in &red.pivots {
            let v = projector.col(c);
            let mut span = IncrementalRref::new(algebra.field, m.dim);
            for b in 0..algebra.dim() {
                span.push_row(m.actions[b].mul_vec(&v).expect("dim"));
            }
            out.push((span.rank(), xi, v));
        }
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out.into_iter().map(|(_, xi, v)| (0, xi, v)).collect()
}

/// Cover `⊕ A ξ_ω → M` on weight-vector generators: the underlying matrix
/// and the chosen idempotents.
fn weighted_cover(m: &SchurModule) -> (Vec<usize>, WeightedLayout, FieldMatrix) {
    let algebra = &m.algebra;
    let field = algebra.field;
    let mut span = IncrementalRref::new(field, m.dim);
    let mut xis = Vec::new();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for (_, xi, v) in weighted_candidates(m) {
        if span.rank() == m.dim {
            break;
        }
        let before = span.rank();
        span.push_row(v.clone());
        if span.rank() == before {
            continue;
        }
        xis.push(xi);
        gens.push(v.clone());
        for b in 0..algebra.dim() {
            span.push_row(m.actions[b].mul_vec(&v).expect("dim"));
        }
    }
    let layout = WeightedLayout::new(algebra, &xis);
    let mut cover = FieldMatrix::zero(field, m.dim, layout.total);
    for (copy, g) in gens.iter().enumerate() {
        let off = layout.offsets[copy];
        for (slot, &b) in layout.corners[copy].iter().enumerate() {
            let img = m.actions[b].mul_vec(g).expect("dim");
            for (r, &v) in img.iter().enumerate() {
                cover.set(r, off + slot, v);
            }
        }
    }
    (xis, layout, cover)
}

/// Projective resolution by corner summands to the requested length.
pub fn free_resolution_a(
    m: &SchurModule,
    length: usize,
    limits: &Limits,
) -> Result<FreeResolutionA, Error> {
    let algebra = m.algebra.clone();
    let field = algebra.field;
    let (xis0, mut layout, cover) = weighted_cover(m);
    let mut levels = vec![xis0];
    let mut diffs: Vec<Vec<Vec<Vec<u32>>>> = Vec::new();
    let mut kernel = crate::linalg::kernel_basis(&cover);
    for _ in 0..length {
        limits.check_width(levels.last().expect("nonempty").len(), "resolution")?;
        if kernel.rows() == 0 {
            levels.push(Vec::new());
            diffs.push(Vec::new());
            kernel = FieldMatrix::zero(field, 0, 0);
            continue;
        }
        // candidates: left-weight components of the kernel basis vectors
        let total = layout.total;
        limits.check_matrix(kernel.rows(), total, "resolution kernel")?;
        let idempotents = algebra.weight_idempotents();
        let mut candidates: Vec<(usize, usize, Vec<u32>)> = Vec::new();
        for r in 0..kernel.rows() {
            let v = kernel.row(r);
            for &xi in &idempotents {
                let comp = layout.left_mul(&algebra, xi, v);
                if comp.iter().all(|&x| x == 0) {
                    continue;
                }
                let mut probe = IncrementalRref::new(field, total);
                for b in 0..algebra.dim() {
                    probe.push_row(layout.left_mul(&algebra, b, &comp));
                }
                candidates.push((probe.rank(), xi, comp));
            }
        }
        candidates.sort_by(|a, b| b.0.cmp(&a.0));
        let mut span = IncrementalRref::new(field, total);
        let mut xis = Vec::new();
        let mut gens: Vec<Vec<u32>> = Vec::new();
        for (_, xi, v) in candidates {
            if span.rank() == kernel.rows() {
                break;
            }
            let before = span.rank();
            span.push_row(v.clone());
            if span.rank() == before {
                continue;
            }
            xis.push(xi);
            gens.push(v.clone());
            for b in 0..algebra.dim() {
                span.push_row(layout.left_mul(&algebra, b, &v));
            }
        }
        debug_assert_eq!(span.rank(), kernel.rows(), "kernel generated");
        // differential entries: the weighted coordinates of each generator
        // per target summand, lifted to full algebra coefficient vectors
        let diff: Vec<Vec<Vec<u32>>> = gens
            .iter()
            .map(|g| {
                (0..layout.corners.len())
                    .map(|copy| {
                        let mut full = vec![0u32; algebra.dim()];
                        let off = layout.offsets[copy];
                        for (slot, &b) in layout.corners[copy].iter().enumerate() {
                            full[b] = g[off + slot];
                        }
                        full
                    })
                    .collect()
            })
            .collect();
        diffs.push(diff);
        // underlying matrix of the new map for the next kernel
        let new_layout = WeightedLayout::new(&algebra, &xis);
        limits.check_width(xis.len(), "resolution")?;
        limits.check_matrix(layout.total, new_layout.total, "resolution differential")?;
        let mut under = FieldMatrix::zero(field, layout.total, new_layout.total);
        for (src_copy, g) in gens.iter().enumerate() {
            let soff = new_layout.offsets[src_copy];
            for (slot, &b) in new_layout.corners[src_copy].iter().enumerate() {
                let img = layout.left_mul(&algebra, b, g);
                for (t, &v) in img.iter().enumerate() {
                    if v != 0 {
                        under.set(t, soff + slot, v);
                    }
                }
            }
        }
        levels.push(xis);
        kernel = crate::linalg::kernel_basis(&under);
        layout = new_layout;
    }
    Ok(FreeResolutionA { levels, diffs })
}

/// Basis of the weight space `ξ N` with a coordinate solver.
fn weight_space(n: &SchurModule, xi: usize) -> (Vec<Vec<u32>>, Option<CoordSolver>) {
    let projector = &n.actions[xi];
    let red = crate::linalg::rref_rank(&projector.transpose());
    let cols: Vec<Vec<u32>> = red.pivots.iter().map(|&c| projector.col(c)).collect();
    if cols.is_empty() {
        return (cols, None);
    }
    let solver = CoordSolver::new(n.algebra.field, n.dim, &cols);
    (cols, Some(solver))
}

/// Ext dimensions up to `max_degree` between modules over the same
/// algebra: `Hom(A ξ, N) = ξ N`, so the Hom complex is assembled from
/// weight spaces of the target.
pub fn ext_schur(
    source: &SchurModule,
    target: &SchurModule,
    max_degree: usize,
    limits: &Limits,
) -> Result<Vec<usize>, Error> {
    if source.algebra.as_ref() != target.algebra.as_ref() {
        return Err(Error::DegreeMismatch {
            expected: source.algebra.n,
            got: target.algebra.n,
        });
    }
    let res = free_resolution_a(source, max_degree + 1, limits)?;
    let field = source.algebra.field;
    // weight-space data per idempotent, computed once
    let mut spaces: std::collections::HashMap<usize, (Vec<Vec<u32>>, Option<CoordSolver>)> =
        std::collections::HashMap::new();
    for level in &res.levels {
        for &xi in level {
            spaces
                .entry(xi)
                .or_insert_with(|| weight_space(target, xi));
        }
    }
    let level_dims: Vec<usize> = res
        .levels
        .iter()
        .map(|l| l.iter().map(|xi| spaces[xi].0.len()).sum())
        .collect();
    let mut hom_diffs: Vec<FieldMatrix> = Vec::new();
    for i in 0..res.diffs.len() {
        let src_level = &res.levels[i];
        let tgt_level = &res.levels[i + 1];
        let rows: usize = tgt_level.iter().map(|xi| spaces[xi].0.len()).sum();
        let cols: usize = src_level.iter().map(|xi| spaces[xi].0.len()).sum();
        let mut mat = FieldMatrix::zero(field, rows, cols);
        let mut row_off = 0;
        for (j, &xi_j) in tgt_level.iter().enumerate() {
            let (ref basis_j, ref solver_j) = spaces[&xi_j];
            let mut col_off = 0;
            for (c, &xi_c) in src_level.iter().enumerate() {
                let (ref basis_c, _) = spaces[&xi_c];
                if !basis_j.is_empty() && !basis_c.is_empty() {
                    let block = target.act(&res.diffs[i][j][c]);
                    for (bc, vcol) in basis_c.iter().enumerate() {
                        let image = block.mul_vec(vcol).expect("dim");
                        let coords = solver_j
                            .as_ref()
                            .expect("nonempty")
                            .coords(&image)
                            .expect("weight space stable");
                        for (br, &v) in coords.iter().enumerate() {
                            mat.set(row_off + br, col_off + bc, v);
                        }
                    }
                }
                col_off += basis_c.len();
            }
            row_off += basis_j.len();
        }
        hom_diffs.push(mat);
    }
    let mut out = Vec::with_capacity(max_degree + 1);
    for i in 0..=max_degree {
        let dim_i = level_dims[i];
        let rank_out = if i < hom_diffs.len() {
            crate::linalg::rank(&hom_diffs[i])
        } else {
            0
        };
        let rank_in = if i > 0 {
            crate::linalg::rank(&hom_diffs[i - 1])
        } else {
            0
        };
        out.push(dim_i - rank_out - rank_in);
    }
    Ok(out)
}

/// `Ext^*_{P_n}(F, G)` dims for expressions at dimension `D`.
pub fn ext_poly(
    f: &PolyExpr,
    g: &PolyExpr,
    d: usize,
    field: Field,
    max_degree: usize,
    limits: &Limits,
) -> Result<Vec<usize>, Error> {
    let p = field.p();
    if f.degree(p) != g.degree(p) {
        return Err(Error::DegreeMismatch {
            expected: f.degree(p),
            got: g.degree(p),
        });
    }
    let mf = eval_expr(f, d, field, limits)?;
    let mg = eval_expr(g, d, field, limits)?;
    ext_schur(&mf, &mg, max_degree, limits)
}

/// Construct the algebra shared by expression evaluations at `(d, n)`.
pub fn algebra_for(
    d: usize,
    n: usize,
    field: Field,
    limits: &Limits,
) -> Result<Arc<SchurAlgebra>, Error> {
    SchurAlgebra::new(d, n, field, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::parse_expr;

    fn f(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn endomorphisms_of_tensor_square() {
        // dim Hom(T², T²) = dim K[S_2] = 2
        let e = parse_expr("T(2)").unwrap();
        let h = hom_poly(&e, &e, 2, f(2), &limits()).unwrap();
        assert_eq!(h.dim(), 2);
    }

    #[test]
    fn gamma_tensor_is_tensor_square() {
        // Γ¹⊗Γ¹ ≅ T²
        let a = eval_expr(&parse_expr("tensor(gamma(1),gamma(1))").unwrap(), 2, f(2), &limits()).unwrap();
        let b = eval_expr(&parse_expr("T(2)").unwrap(), 2, f(2), &limits()).unwrap();
        assert!(schur_modules_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn twist_self_ext_ground_truth() {
        // Ext*(I^{(1)}, I^{(1)}) at p = 2, D = 2: one-dimensional in even
        // degrees below 2p = 4, zero elsewhere up to degree 5
        let e = parse_expr("twist(1,id)").unwrap();
        let ext = ext_poly(&e, &e, 2, f(2), 5, &limits()).unwrap();
        assert_eq!(ext, vec![1, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn ext_degree_zero_matches_hom() {
        let a = parse_expr("gamma(2)").unwrap();
        let b = parse_expr("s(2)").unwrap();
        let ext = ext_poly(&a, &b, 2, f(2), 2, &limits()).unwrap();
        let hom = hom_poly(&a, &b, 2, f(2), &limits()).unwrap();
        assert_eq!(ext[0], hom.dim());
    }

    #[test]
    fn ext_independent_of_dimension() {
        // checked for n = 2 at D = 2 and D = 3
        let a = parse_expr("twist(1,id)").unwrap();
        let e2 = ext_poly(&a, &a, 2, f(2), 4, &limits()).unwrap();
        let e3 = ext_poly(&a, &a, 3, f(2), 4, &limits()).unwrap();
        assert_eq!(e2, e3);
    }

    #[test]
    fn hom_of_symmetric_powers_matches_young_homs() {
        // dim Hom(S^λ, S^μ) = dim Hom_{S_n}(Y_λ, Y_μ) for partitions of 2
        let field = f(2);
        for (l, m) in [("s(2)", "s(2)"), ("s(2)", "s(1,1)"), ("s(1,1)", "s(2)"), ("s(1,1)", "s(1,1)")] {
            let a = parse_expr(l).unwrap();
            let b = parse_expr(m).unwrap();
            let h = hom_poly(&a, &b, 2, field, &limits()).unwrap().dim();
            let la = if l == "s(2)" { vec![2] } else { vec![1, 1] };
            let lb = if m == "s(2)" { vec![2] } else { vec![1, 1] };
            let ya = crate::grouprep::permutation_module(2, &la, field).unwrap();
            let yb = crate::grouprep::permutation_module(2, &lb, field).unwrap();
            let hy = crate::grouprep::hom_dim(&ya, &yb).unwrap();
            assert_eq!(h, hy, "{l} vs {m}");
        }
    }
}
