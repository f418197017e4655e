//! Equivariant Hom spaces.
//!
//! `hom_basis(M, N)` returns a basis of `Hom_G(M, N)` together with a
//! coordinate solver for expressing arbitrary equivariant maps in that
//! basis. Two solvers are used:
//!
//! - when `N` permutes its basis, Hom is assembled orbit by orbit from
//!   stabilizer invariants of `M^du` (Schreier generators give the
//!   stabilizers), which avoids the big intertwiner system entirely;
//! - otherwise the intertwiner equations are streamed through an
//!   incremental row reduction.

use crate::error::Error;
use crate::linalg::{CoordSolver, FieldMatrix, IncrementalRref};

use super::group::orbits_with_stabilizers;
use super::module::{dual_module, Module, ModuleMap};

/// A basis of `Hom_G(M, N)` with coordinate extraction.
pub struct HomBasis {
    pub source: Module,
    pub target: Module,
    pub basis: Vec<FieldMatrix>,
    solver: CoordSolver,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn map(&self, i: usize) -> ModuleMap {
        ModuleMap::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.basis[i].clone(),
        )
    }

    /// Coordinates of an equivariant matrix in this basis.
    pub fn coords(&self, m: &FieldMatrix) -> Option<Vec<u32>> {
        self.solver.coords(m.entries())
    }

    /// Coordinates of a matrix known to lie in the span (composites of
    /// basis maps with equivariant maps always do).
    pub fn coords_unchecked(&self, m: &FieldMatrix) -> Vec<u32> {
        self.solver.coords_unchecked(m.entries())
    }

    /// Linear combination of the basis.
    pub fn combination(&self, coeffs: &[u32]) -> ModuleMap {
        let field = self.source.field();
        let mut m = FieldMatrix::zero(field, self.target.dim(), self.source.dim());
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c != 0 {
                m = m.add(&b.scale(*c)).expect("same shape");
            }
        }
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), m)
    }
}

/// Basis of the space of equivariant maps `M → N`.
pub fn hom_basis(m: &Module, n: &Module) -> Result<HomBasis, Error> {
    m.same_ambient(n)?;
    let basis = if n.perm_points().is_some() {
        hom_into_permutation(m, n)
    } else {
        hom_generic(m, n)
    };
    let field = m.field();
    let cols: Vec<Vec<u32>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    let solver = CoordSolver::new(field, m.dim() * n.dim(), &cols);
    Ok(HomBasis {
        source: m.clone(),
        target: n.clone(),
        basis,
        solver,
    })
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize, Error> {
    Ok(hom_basis(m, n)?.dim())
}

fn hom_generic(m: &Module, n: &Module) -> Vec<FieldMatrix> {
    let field = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let ncols = dm * dn;
    let mut acc = IncrementalRref::new(field, ncols);
    // F ρ_M(g) - ρ_N(g) F = 0, unknowns F_{ik} flattened row-major
    let mut row: Vec<(usize, u32)> = Vec::new();
    for (a, b) in m.gen_actions().iter().zip(n.gen_actions()) {
        for i in 0..dn {
            for j in 0..dm {
                row.clear();
                for k in 0..dm {
                    let v = a.get(k, j);
                    if v != 0 {
                        row.push((i * dm + k, v));
                    }
                }
                for k in 0..dn {
                    let v = b.get(i, k);
                    if v != 0 {
                        row.push((k * dm + j, field.neg(v)));
                    }
                }
                acc.push_sparse(&row);
            }
        }
    }
    let kernel = acc.kernel();
    (0..kernel.rows())
        .map(|r| {
            FieldMatrix::from_entries(field, dn, dm, kernel.row(r).to_vec()).expect("sized")
        })
        .collect()
}

/// Orbit-by-orbit solver for maps into a permutation module:
/// `Hom_G(M, K[orbit]) ≅ (M^du)^{Stab(representative)}`.
fn hom_into_permutation(m: &Module, n: &Module) -> Vec<FieldMatrix> {
    let field = m.field();
    let group = m.group();
    let points = n.perm_points().expect("permutation target");
    let orbits = orbits_with_stabilizers(n.dim(), points, group.gens(), group.degree());
    let mdual = dual_module(m);
    let mut basis = Vec::new();
    for orbit in &orbits {
        // invariant functionals of M^du under the stabilizer
        let invariants = {
            let mut acc = IncrementalRref::new(field, m.dim());
            let id = FieldMatrix::identity(field, m.dim());
            for s in &orbit.stabilizer {
                let d = mdual.act_by(s).expect("stabilizer element").sub(&id).expect("shape");
                for r in 0..d.rows() {
                    acc.push_row(d.row(r).to_vec());
                }
            }
            acc.kernel()
        };
        for xi_idx in 0..invariants.rows() {
            let xi = invariants.row(xi_idx);
            // φ(v)[member_k] = ξ(ρ(u_k)⁻¹ v): row member_k is
            // (ρ(u_k⁻¹))ᵀ ξ = ρ_{M^du}(u_k) ξ
            let mut mat = FieldMatrix::zero(field, n.dim(), m.dim());
            for (k, &member) in orbit.members.iter().enumerate() {
                let u_idx = group
                    .element_index(&orbit.transversal[k])
                    .expect("transversal element in group");
                let row = mdual.act_vec(u_idx, xi);
                for (j, &v) in row.iter().enumerate() {
                    mat.set(member, j, v);
                }
            }
            basis.push(mat);
        }
    }
    basis
}

/// The isomorphism `Hom_G(X, K[G]) ≅ X^du` given by composing with the
/// coordinate functional at the identity element. Columns index the Hom
/// basis, rows the dual basis of `X`; invertibility witnesses that the
/// group algebra is self-injective.
pub fn regular_dual_iso(hom: &HomBasis) -> FieldMatrix {
    let field = hom.source.field();
    let dim_x = hom.source.dim();
    // row 0 of each basis map is evaluation at the identity coordinate,
    // because the regular basis lists the identity first
    FieldMatrix::from_fn(field, dim_x, hom.dim(), |i, j| hom.basis[j].get(0, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::group::PermGroup;
    use crate::grouprep::module::{
        permutation_module, regular_module, trivial_module,
    };
    use crate::linalg::{is_invertible, Field};
    use std::collections::HashSet;

    fn f(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn endomorphisms_of_regular_s2() {
        // dim Hom(K[S_2], K[S_2]) = |S_2| = 2 over F_2
        let g = PermGroup::symmetric(2);
        let reg = regular_module(&g, f(2));
        assert_eq!(hom_dim(&reg, &reg).unwrap(), 2);
    }

    #[test]
    fn socle_of_regular_s2() {
        // dim Hom(K, K[S_2]) = 1 over F_2
        let g = PermGroup::symmetric(2);
        let reg = regular_module(&g, f(2));
        let k = trivial_module(&g, f(2));
        assert_eq!(hom_dim(&k, &reg).unwrap(), 1);
    }

    #[test]
    fn young_endomorphisms_match_double_cosets() {
        // dim Hom(K[S_3/S_2], K[S_3/S_2]) = #(S_2\S_3/S_2) = 2 over F_3
        let m = permutation_module(3, &[2, 1], f(3)).unwrap();
        assert_eq!(hom_dim(&m, &m).unwrap(), 2);

        // oracle: enumerate double cosets
        let s3 = PermGroup::symmetric(3);
        let y = PermGroup::young(&[2, 1]).unwrap();
        let h: Vec<_> = y.elements().to_vec();
        let mut cosets = HashSet::new();
        for g in s3.elements() {
            let mut orbit: Vec<_> = h
                .iter()
                .flat_map(|a| h.iter().map(move |b| a.compose(g).compose(b)))
                .map(|p| p.images().to_vec())
                .collect();
            orbit.sort();
            orbit.dedup();
            cosets.insert(orbit);
        }
        assert_eq!(cosets.len(), 2);
    }

    #[test]
    fn generic_and_permutation_paths_agree() {
        let g = PermGroup::symmetric(3);
        let reg = regular_module(&g, f(3));
        let y = permutation_module(3, &[2, 1], f(3)).unwrap();
        let fast = hom_basis(&y, &reg).unwrap();
        let slow_basis = hom_generic(&y, &reg);
        assert_eq!(fast.dim(), slow_basis.len());
        // same span: every slow basis element has coordinates in the fast one
        for b in &slow_basis {
            assert!(fast.coords(b).is_some());
        }
    }

    #[test]
    fn free_module_yoneda() {
        // dim Hom(K[G], X) = dim X
        let g = PermGroup::symmetric(3);
        let reg = regular_module(&g, f(2));
        let y = permutation_module(3, &[2, 1], f(2)).unwrap();
        assert_eq!(hom_dim(&reg, &y).unwrap(), y.dim());
    }

    #[test]
    fn duality_of_hom_dims() {
        let g = PermGroup::symmetric(3);
        let a = permutation_module(3, &[2, 1], f(2)).unwrap();
        let b = regular_module(&g, f(2));
        let lhs = hom_dim(&a, &b).unwrap();
        let rhs = hom_dim(&dual_module(&b), &dual_module(&a)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tau_iso_on_regular() {
        // τ_X invertible of size |G| for X = K[G]
        let g = PermGroup::symmetric(3);
        let reg = regular_module(&g, f(2));
        let hom = hom_basis(&reg, &reg).unwrap();
        let tau = regular_dual_iso(&hom);
        assert_eq!(tau.rows(), 6);
        assert_eq!(tau.cols(), 6);
        assert!(is_invertible(&tau));
    }

    #[test]
    fn tau_iso_trivial_module_p2() {
        // X = K, G = S_2, p = 2: both sides have dim 1
        let g = PermGroup::symmetric(2);
        let k = trivial_module(&g, f(2));
        let reg = regular_module(&g, f(2));
        let hom = hom_basis(&k, &reg).unwrap();
        let tau = regular_dual_iso(&hom);
        assert_eq!((tau.rows(), tau.cols()), (1, 1));
        assert!(is_invertible(&tau));
    }

    #[test]
    fn tau_naturality_square() {
        // for a map φ: X → Y, τ_X ∘ (−∘φ) = φᵀ ∘ τ_Y on Hom(Y, K[G])
        let g = PermGroup::symmetric(2);
        let reg = regular_module(&g, f(2));
        let k = trivial_module(&g, f(2));
        let aug = FieldMatrix::from_rows(f(2), vec![vec![1, 1]]).unwrap(); // φ: K[S_2] → K
        let hom_y = hom_basis(&k, &reg).unwrap(); // Hom(Y=K, K[G])
        let tau_y = regular_dual_iso(&hom_y);
        let hom_x = hom_basis(&reg, &reg).unwrap(); // Hom(X=K[G], K[G])
        let tau_x = regular_dual_iso(&hom_x);
        // precomposition with φ in hom coordinates
        let pre = FieldMatrix::from_fn(f(2), hom_x.dim(), hom_y.dim(), |i, j| {
            let composed = hom_y.basis[j].mul(&aug).unwrap();
            hom_x.coords(&composed).unwrap()[i]
        });
        let left = tau_x.mul(&pre).unwrap();
        let right = aug.transpose().mul(&tau_y).unwrap();
        assert_eq!(left, right);
    }
}
