//! Compatibility of the two recollements: the linearization of an
//! evaluated functor matches evaluation at the group algebra, and the two
//! adjoint routes agree on generators.

use std::sync::Arc;

use crate::coherent::{h_of, presentations_isomorphic, t_of, t_star};
use crate::error::Error;
use crate::grouprep::{dual_module, modules_isomorphic, Module};
use crate::Limits;

use super::bridge::{j_bang, j_lowerstar, j_star};
use super::linearize::{c_bang, c_lowerstar, c_star};
use super::SchurAlgebra;

#[derive(Debug, Default)]
pub struct DiagramReport {
    pub checks: Vec<(String, bool)>,
}

impl DiagramReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }
}

/// Verify the commuting squares on a list of sample modules:
/// `c* ∘ j* ≅ t*`, `j_! ∘ c_! ≅ t_!`, and `j_* ∘ c_* ≅ t_*`.
pub fn commuting_diagram_checks(
    algebra: &Arc<SchurAlgebra>,
    samples: &[Module],
    limits: &Limits,
) -> Result<DiagramReport, Error> {
    let _ = limits;
    let mut report = DiagramReport::default();
    for (i, m) in samples.iter().enumerate() {
        // c*(j*(h_M)) ≅ t*(h_M) ≅ M^du
        let h = h_of(m);
        let js = j_star(&h, algebra)?;
        let (lin, _) = c_star(&js)?;
        let ts = t_star(&h)?;
        report.push(
            format!("c*j*(h) = t*(h) on sample {i}"),
            modules_isomorphic(&lin, &ts)? && modules_isomorphic(&lin, &dual_module(m))?,
        );
        // j_!(c_!(M)) ≅ t_!(M)
        let cb = c_bang(algebra, m)?;
        let jb = j_bang(&cb)?;
        report.push(
            format!("j_!c_!(M) = t_!(M) on sample {i}"),
            presentations_isomorphic(&jb, &t_of(m))?,
        );
        // j_*(c_*(M)) ≅ t_*(M) = h_{M^du}
        let cs = c_lowerstar(algebra, m)?;
        let jl = j_lowerstar(&cs)?;
        report.push(
            format!("j_*c_*(M) = t_*(M) on sample {i}"),
            presentations_isomorphic(&jl, &h_of(&dual_module(m)))?,
        );
    }
    Ok(report)
}
