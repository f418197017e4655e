//! Finitely supported graded objects: plain dimension tables, graded
//! modules, and graded bimodules over a product group.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::grouprep::{Module, PermGroup};

/// Graded dimensions, degree → dimension; zero entries are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedSpace {
    dims: BTreeMap<usize, usize>,
}

impl GradedSpace {
    pub fn new() -> GradedSpace {
        GradedSpace::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> GradedSpace {
        let mut g = GradedSpace::new();
        for (d, dim) in pairs {
            g.set(d, dim);
        }
        g
    }

    pub fn set(&mut self, degree: usize, dim: usize) {
        if dim == 0 {
            self.dims.remove(&degree);
        } else {
            self.dims.insert(degree, dim);
        }
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.dims.iter().map(|(&d, &v)| (d, v))
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.dims.keys().next_back().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Dimensions as a dense vector for degrees `0..=max_degree`.
    pub fn dense(&self, max_degree: usize) -> Vec<usize> {
        (0..=max_degree).map(|d| self.dim(d)).collect()
    }
}

/// A graded module: one group module per degree, finitely supported.
/// With the group a product `G × G` this doubles as a graded bimodule,
/// the first factor encoding the op-side action through inversion.
#[derive(Clone)]
pub struct GradedModule {
    pub group: Arc<PermGroup>,
    pub degrees: BTreeMap<usize, Module>,
}

impl GradedModule {
    pub fn new(group: Arc<PermGroup>) -> GradedModule {
        GradedModule {
            group,
            degrees: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, degree: usize, m: Module) {
        debug_assert_eq!(m.group().as_ref(), self.group.as_ref());
        self.degrees.insert(degree, m);
    }

    pub fn graded_dims(&self) -> GradedSpace {
        GradedSpace::from_pairs(self.degrees.iter().map(|(&d, m)| (d, m.dim())))
    }
}
