//! Induction and restriction of presented functors along a registered
//! subgroup embedding, by applying the module-level functors to the
//! presentation map. The arrow `↑` evaluates through restriction of the
//! argument, `↓` through induction, and they are two-sided adjoints.

use crate::error::Error;
use crate::grouprep::{induce_map, restrict_map, Subgroup};

use super::CoherentPresentation;

/// `↑(f)` for `f` over the subgroup: a functor over the ambient group with
/// `(↑f)(X) = f(Res X)`; on presentations, induce the presentation map.
pub fn transport_up(sub: &Subgroup, f: &CoherentPresentation) -> Result<CoherentPresentation, Error> {
    Ok(CoherentPresentation::new(induce_map(sub, &f.alpha)?))
}

/// `↓(f)` for `f` over the ambient group: `(↓f)(Y) = f(Ind Y)`; on
/// presentations, restrict the presentation map.
pub fn transport_down(
    sub: &Subgroup,
    f: &CoherentPresentation,
) -> Result<CoherentPresentation, Error> {
    Ok(CoherentPresentation::new(restrict_map(sub, &f.alpha)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{eval_dim, h_of, hom_coherent, presentations_isomorphic};
    use crate::grouprep::{
        induce, probe_family, random_module, restrict, trivial_module, PermGroup,
    };
    use crate::linalg::Field;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    fn s2_in_s3() -> Subgroup {
        let s3 = PermGroup::symmetric(3);
        let y = PermGroup::young(&[2, 1]).unwrap();
        Subgroup::inclusion(y, s3).unwrap()
    }

    #[test]
    fn up_of_representable_is_induced_representable() {
        let sub = s2_in_s3();
        let k = trivial_module(&sub.sub, f3());
        let up = transport_up(&sub, &h_of(&k)).unwrap();
        let ind = induce(&sub, &k).unwrap();
        assert!(presentations_isomorphic(&up, &h_of(&ind)).unwrap());
    }

    #[test]
    fn up_evaluates_through_restriction() {
        let sub = s2_in_s3();
        let m = random_module(&sub.sub, f3(), 3, 4);
        let n = random_module(&sub.sub, f3(), 4, 4);
        let hom = crate::grouprep::hom_basis(&m, &n).unwrap();
        if hom.dim() == 0 {
            return;
        }
        let f = CoherentPresentation::new(hom.map(0));
        let up = transport_up(&sub, &f).unwrap();
        for x in probe_family(&sub.amb, f3()).into_iter().take(4) {
            let resx = restrict(&sub, &x).unwrap();
            assert_eq!(
                eval_dim(&up, &x).unwrap(),
                eval_dim(&f, &resx).unwrap()
            );
        }
    }

    #[test]
    fn adjunction_dims_between_up_and_down() {
        let sub = s2_in_s3();
        let kh = trivial_module(&sub.sub, f3());
        let kg = trivial_module(&sub.amb, f3());
        for (f_down, g_up) in [(h_of(&kg), h_of(&kh))] {
            let lhs = hom_coherent(&transport_down(&sub, &f_down).unwrap(), &g_up)
                .unwrap()
                .dim();
            let rhs = hom_coherent(&f_down, &transport_up(&sub, &g_up).unwrap())
                .unwrap()
                .dim();
            assert_eq!(lhs, rhs);
        }
    }
}
