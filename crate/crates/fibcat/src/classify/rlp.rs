//! The right-lifting characterization of acyclicity for deloopings: a
//! delooped group object is acyclic exactly when every generalized element
//! of the carrier extends along every designated mono.

use serde::Serialize;

use crate::classify::predicates::{is_acyclic_generic, FlagResult};
use crate::constructions::groth::externalize;
use crate::constructions::internal::{internal_deloop, GroupObject, InternalCatError};
use crate::fibration::MonoClass;

/// A generalized element with no extension along a mono.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RlpFailure {
    pub mono: usize,
    pub element: usize,
}

/// Every generalized element of the carrier extends along `m`.
pub fn has_rlp(group: &GroupObject, m: usize) -> Result<(), RlpFailure> {
    let base = &group.base;
    let (j, i) = (base.src(m), base.tgt(m));
    for &x in base.hom(j, group.carrier) {
        let x = x as usize;
        let extends = base
            .hom(i, group.carrier)
            .iter()
            .any(|&xe| base.comp2(xe as usize, m) == x);
        if !extends {
            return Err(RlpFailure { mono: m, element: x });
        }
    }
    Ok(())
}

/// Both sides of the equivalence, decided independently and compared.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RlpVerdict {
    pub acyclic: FlagResult,
    pub rlp_holds: bool,
    pub rlp_failures: Vec<RlpFailure>,
    pub agree: bool,
}

/// Builds the externalized delooping, decides acyclicity of its canonical
/// generic object against the mono class, decides the lifting property of
/// the carrier against every member, and reports whether the verdicts
/// agree.
pub fn acyclic_iff_rlp_check(
    group: &GroupObject,
    monos: &MonoClass,
) -> Result<RlpVerdict, InternalCatError> {
    let ic = internal_deloop(group)?;
    let ext = externalize(&ic);
    let acyclic = is_acyclic_generic(&ext.groth.fib, ext.t, monos);
    let rlp_failures: Vec<RlpFailure> = group
        .base
        .morphisms()
        .filter(|&m| monos.contains(m))
        .filter_map(|m| has_rlp(group, m).err())
        .collect();
    let rlp_holds = rlp_failures.is_empty();
    Ok(RlpVerdict {
        agree: acyclic.holds == rlp_holds,
        acyclic,
        rlp_holds,
        rlp_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::arrow::z2_arrow_base;
    use crate::constructions::finset::finset_with_sizes;
    use crate::constructions::internal::GroupObject;
    use crate::fibration::PullbackCone;

    fn z2_in_finsets() -> GroupObject {
        let fs = finset_with_sizes(&[0, 1, 2, 4]);
        let one = fs.object_of_size(1).unwrap();
        let two = fs.object_of_size(2).unwrap();
        let four = fs.object_of_size(4).unwrap();
        GroupObject::validate(
            &fs.cat,
            two,
            one,
            PullbackCone {
                apex: four,
                to_x: fs.mor_of(four, two, &[0, 0, 1, 1]),
                to_y: fs.mor_of(four, two, &[0, 1, 0, 1]),
            },
            fs.mor_of(one, two, &[0]),
            fs.mor_of(four, two, &[0, 1, 1, 0]),
            fs.mor_of(two, two, &[0, 1]),
        )
        .unwrap()
    }

    #[test]
    fn over_finite_sets_every_element_extends() {
        let g = z2_in_finsets();
        let monos = MonoClass::all_monos(&g.base);
        for m in g.base.morphisms() {
            if monos.contains(m) {
                assert!(has_rlp(&g, m).is_ok(), "mono {m} should lift");
            }
        }
        let verdict = acyclic_iff_rlp_check(&g, &monos).unwrap();
        assert!(verdict.acyclic.holds);
        assert!(verdict.rlp_holds);
        assert!(verdict.agree);
    }

    #[test]
    fn over_the_arrow_fragment_the_flip_fails_to_extend() {
        let (arrow, g) = z2_arrow_base();
        let monos = MonoClass::all_monos(&arrow.cat);
        let verdict = acyclic_iff_rlp_check(&g, &monos).unwrap();
        assert!(!verdict.acyclic.holds);
        assert!(!verdict.rlp_holds);
        assert!(verdict.agree);
        // the forced value is the unit: the non-unit element of the carrier
        // at ∅→1 has no extension to 1→1
        assert!(!verdict.rlp_failures.is_empty());
    }
}
