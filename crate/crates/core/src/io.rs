//! JSON file formats: modules, presentations, and graded objects.
//!
//! Readers validate everything they load: permutations must be bijections,
//! action matrices invertible and relation-compatible, presentation maps
//! equivariant. Writers emit canonical residues `0..p-1` row-major.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graded::GradedModule;
use crate::grouprep::{GroupModule, GroupTag, Module, ModuleMap, Perm, PermGroup};
use crate::linalg::{Field, FieldMatrix};
use crate::coherent::CoherentPresentation;

#[derive(Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub p: u32,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    pub dim: usize,
    pub action: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PresentationFile {
    pub module_m: ModuleFile,
    pub module_n: ModuleFile,
    pub alpha: Vec<Vec<u32>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GradedFile {
    pub degrees: BTreeMap<String, ModuleFile>,
}

pub fn module_to_file(m: &Module) -> ModuleFile {
    ModuleFile {
        p: m.field().p(),
        degree: m.group().degree(),
        generators: m
            .group()
            .gens()
            .iter()
            .map(|g| g.images().to_vec())
            .collect(),
        dim: m.dim(),
        action: m
            .gen_actions()
            .iter()
            .map(|a| (0..a.rows()).map(|i| a.row(i).to_vec()).collect())
            .collect(),
    }
}

/// Rebuild and validate a module from its file form. The group is
/// reconstructed from the listed generators; symmetric groups are
/// recognized by their adjacent-transposition generators so the full
/// braid-relation check applies to them.
pub fn module_from_file(file: &ModuleFile) -> Result<Module, Error> {
    let field = Field::new(file.p)?;
    let gens: Vec<Perm> = file
        .generators
        .iter()
        .map(|im| Perm::new(im.clone()))
        .collect::<Result<_, _>>()?;
    let tag = if gens.len() + 1 == file.degree.max(1)
        && gens
            .iter()
            .enumerate()
            .all(|(i, g)| *g == Perm::transposition(file.degree, i, i + 1))
    {
        GroupTag::Symmetric(file.degree)
    } else {
        GroupTag::Custom
    };
    let group = PermGroup::new(file.degree, gens, tag)?;
    let actions: Vec<FieldMatrix> = file
        .action
        .iter()
        .map(|rows| FieldMatrix::from_rows(field, rows.clone()))
        .collect::<Result<_, _>>()?;
    for a in &actions {
        if a.rows() != file.dim || a.cols() != file.dim {
            return Err(Error::Shape(format!(
                "action matrix {}x{} for a module of dim {}",
                a.rows(),
                a.cols(),
                file.dim
            )));
        }
    }
    if actions.is_empty() {
        GroupModule::new_with_dim(group, field, file.dim, actions)
    } else {
        GroupModule::new(group, field, actions)
    }
}

pub fn presentation_to_file(f: &CoherentPresentation) -> PresentationFile {
    PresentationFile {
        module_m: module_to_file(f.m()),
        module_n: module_to_file(f.n()),
        alpha: (0..f.alpha.matrix.rows())
            .map(|i| f.alpha.matrix.row(i).to_vec())
            .collect(),
    }
}

pub fn presentation_from_file(file: &PresentationFile) -> Result<CoherentPresentation, Error> {
    let m = module_from_file(&file.module_m)?;
    let n = module_from_file(&file.module_n)?;
    let field = m.field();
    // dimensions come from the modules so degenerate shapes (no rows)
    // round-trip correctly
    if file.alpha.len() != n.dim() || file.alpha.iter().any(|r| r.len() != m.dim()) {
        return Err(Error::Shape(format!(
            "alpha must be {}x{}",
            n.dim(),
            m.dim()
        )));
    }
    let alpha = FieldMatrix::from_fn(field, n.dim(), m.dim(), |i, j| file.alpha[i][j]);
    // the validating constructor checks equivariance
    let map = ModuleMap::new(m, n, alpha)?;
    Ok(CoherentPresentation::new(map))
}

pub fn graded_to_file(g: &GradedModule) -> GradedFile {
    GradedFile {
        degrees: g
            .degrees
            .iter()
            .map(|(&d, m)| (d.to_string(), module_to_file(m)))
            .collect(),
    }
}

pub fn graded_from_file(file: &GradedFile) -> Result<GradedModule, Error> {
    let mut group: Option<Arc<PermGroup>> = None;
    let mut out: Option<GradedModule> = None;
    for (k, mf) in &file.degrees {
        let degree: usize = k
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree key '{k}'")))?;
        let m = module_from_file(mf)?;
        if group.is_none() {
            group = Some(m.group().clone());
            out = Some(GradedModule::new(m.group().clone()));
        }
        if m.group().as_ref() != group.as_ref().expect("set").as_ref() {
            return Err(Error::GroupMismatch);
        }
        out.as_mut().expect("set").insert(degree, m);
    }
    out.ok_or_else(|| Error::Parse("empty graded object".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::h_of;
    use crate::grouprep::{permutation_module, trivial_module};

    #[test]
    fn module_roundtrip() {
        let m = permutation_module(3, &[2, 1], Field::new(3).unwrap()).unwrap();
        let file = module_to_file(&m);
        let text = serde_json::to_string(&file).unwrap();
        let parsed: ModuleFile = serde_json::from_str(&text).unwrap();
        let back = module_from_file(&parsed).unwrap();
        assert_eq!(back.dim(), m.dim());
        assert_eq!(back.gen_actions(), m.gen_actions());
    }

    #[test]
    fn reader_rejects_non_invertible_action() {
        let m = permutation_module(2, &[1, 1], Field::new(2).unwrap()).unwrap();
        let mut file = module_to_file(&m);
        file.action[0][0] = vec![0, 0]; // break invertibility
        assert!(module_from_file(&file).is_err());
    }

    #[test]
    fn reader_rejects_braid_violation() {
        let m = permutation_module(3, &[2, 1], Field::new(2).unwrap()).unwrap();
        let mut file = module_to_file(&m);
        // replace one transposition action by the identity: still
        // invertible but violates the defining relations
        let n = file.dim;
        file.action[0] = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        assert!(module_from_file(&file).is_err());
    }

    #[test]
    fn presentation_roundtrip() {
        let g = crate::grouprep::PermGroup::symmetric(2);
        let k = trivial_module(&g, Field::new(2).unwrap());
        let f = h_of(&k);
        let file = presentation_to_file(&f);
        let back = presentation_from_file(&file).unwrap();
        assert_eq!(back.m().dim(), 1);
        assert_eq!(back.n().dim(), 0);
    }

    #[test]
    fn presentation_reader_rejects_non_equivariant_alpha() {
        let g = crate::grouprep::PermGroup::symmetric(2);
        let k = trivial_module(&g, Field::new(2).unwrap());
        let reg = crate::grouprep::regular_module(&g, Field::new(2).unwrap());
        let mut file = PresentationFile {
            module_m: module_to_file(&k),
            module_n: module_to_file(&reg),
            alpha: vec![vec![1], vec![0]], // picks out one group element: not a map
        };
        assert!(presentation_from_file(&file).is_err());
        file.alpha = vec![vec![1], vec![1]]; // the norm embedding is one
        assert!(presentation_from_file(&file).is_ok());
    }
}
