//! Exact computations with coherent functors over symmetric groups,
//! Schur algebras, and the functors connecting the two worlds.
//!
//! The crate is organized around five layers:
//!
//! - [`linalg`]: dense exact linear algebra over prime fields, with a
//!   bit-packed GF(2) elimination path.
//! - [`grouprep`]: permutation groups and their finite-dimensional
//!   representations, with homological primitives (Hom, tensor over the
//!   group, induction, syzygies, Tor).
//! - [`coherent`]: finitely presented functors on group modules as a
//!   presentation calculus, with evaluation, duality, recollement functors,
//!   Ext, external products, pairings and composition operations.
//! - [`schur`]: Schur algebras, strict polynomial functors as evaluable
//!   expressions, and the exact functor relating coherent functors to
//!   polynomial functors together with its two adjoints.
//! - [`twistext`]: graded Ext computations for Frobenius twists driven by
//!   the pairing machinery.

pub mod error;
pub mod graded;
pub mod grouprep;
pub mod io;
pub mod linalg;
pub mod coherent;
pub mod schur;
pub mod twistext;
pub mod verify;

pub use error::Error;

/// Resource guards for the operations that can blow up at large parameters.
///
/// Defaults are sized for desk-scale runs: carrier matrices up to 400 000
/// entries, resolutions up to width 2048, and tensor spaces up to 65 536
/// dimensions.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_matrix_entries: usize,
    pub max_resolution_width: usize,
    pub max_tensor_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_matrix_entries: 400_000,
            max_resolution_width: 2048,
            max_tensor_dim: 65_536,
        }
    }
}

impl Limits {
    pub fn check_matrix(&self, rows: usize, cols: usize, what: &str) -> Result<(), Error> {
        if rows.saturating_mul(cols) > self.max_matrix_entries {
            return Err(Error::ResourceGuard(format!(
                "{what}: {rows}x{cols} exceeds {} entries",
                self.max_matrix_entries
            )));
        }
        Ok(())
    }

    pub fn check_width(&self, width: usize, what: &str) -> Result<(), Error> {
        if width > self.max_resolution_width {
            return Err(Error::ResourceGuard(format!(
                "{what}: width {width} exceeds {}",
                self.max_resolution_width
            )));
        }
        Ok(())
    }

    pub fn check_tensor_dim(&self, dim: usize, what: &str) -> Result<(), Error> {
        if dim > self.max_tensor_dim {
            return Err(Error::ResourceGuard(format!(
                "{what}: tensor dimension {dim} exceeds {}",
                self.max_tensor_dim
            )));
        }
        Ok(())
    }
}
