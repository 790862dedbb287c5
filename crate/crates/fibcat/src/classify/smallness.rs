//! Global and local smallness of a fibered category.

use serde::Serialize;

use crate::classify::predicates::is_generic;
use crate::fibration::Fibration;

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SmallnessReport {
    pub globally_small: bool,
    /// The least generic object, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic_object: Option<usize>,
    pub locally_small: bool,
    /// A fiber pair with no universal span, when local smallness fails:
    /// (base object, first object, second object).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local_failure: Option<(usize, usize, usize)>,
}

/// A span `x ← h → y` whose legs lie over a common base morphism, with the
/// leg into `x` cartesian.
fn spans(fib: &Fibration, x: usize, y: usize) -> Vec<(usize, usize, usize)> {
    let total = fib.total();
    let mut out = Vec::new();
    for h in total.objects() {
        for &f in total.hom(h, x) {
            let f = f as usize;
            if !fib.is_cartesian(f) {
                continue;
            }
            for &g in total.hom(h, y) {
                let g = g as usize;
                if fib.functor().on_mor(f) == fib.functor().on_mor(g) {
                    out.push((h, f, g));
                }
            }
        }
    }
    out
}

/// Globally small: some object is generic. Locally small: every pair of
/// objects in a common fiber admits a universal span, decided by
/// enumerating spans and checking unique factorization.
pub fn smallness(fib: &Fibration) -> SmallnessReport {
    let generic_object = fib.total().objects().find(|&t| is_generic(fib, t).holds);

    let total = fib.total();
    let mut locally_small = true;
    let mut local_failure = None;
    'outer: for i in fib.base().objects() {
        let fiber_objs: Vec<usize> = total
            .objects()
            .filter(|&x| fib.functor().on_obj(x) == i)
            .collect();
        for &x in &fiber_objs {
            for &y in &fiber_objs {
                let candidates = spans(fib, x, y);
                let universal = candidates.iter().any(|&(h, f, g)| {
                    candidates.iter().all(|&(k, f2, g2)| {
                        total
                            .hom(k, h)
                            .iter()
                            .filter(|&&m| {
                                total.comp2(f, m as usize) == f2
                                    && total.comp2(g, m as usize) == g2
                            })
                            .count()
                            == 1
                    })
                });
                if !universal {
                    locally_small = false;
                    local_failure = Some((i, x, y));
                    break 'outer;
                }
            }
        }
    }
    SmallnessReport {
        globally_small: generic_object.is_some(),
        generic_object,
        locally_small,
        local_failure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fam::fam;
    use crate::constructions::zoo;

    #[test]
    fn family_fibrations_of_finite_categories_are_small() {
        for c in [zoo::walking_iso(), zoo::walking_arrow()] {
            let f = fam(&c, 2);
            let report = smallness(&f.fib);
            assert!(report.globally_small);
            assert!(report.locally_small);
        }
    }

    #[test]
    fn discrete_two_family_fibration_is_not_globally_small() {
        let f = fam(&zoo::discrete(2), 1);
        let report = smallness(&f.fib);
        assert!(!report.globally_small);
        assert!(report.locally_small);
    }

    #[test]
    fn externalizations_are_globally_small() {
        use crate::constructions::groth::externalize;
        use crate::constructions::internal::{encode_fincat, internal_deloop};

        let fs = crate::constructions::finset::finset_skel(2);
        let ic = encode_fincat(&zoo::discrete(2), &fs).unwrap();
        let ext = externalize(&ic);
        let report = smallness(&ext.groth.fib);
        assert!(report.globally_small);
        assert_eq!(report.generic_object, Some(ext.t));

        let (_, group) = crate::constructions::arrow::z2_arrow_base();
        let ext = externalize(&internal_deloop(&group).unwrap());
        assert!(smallness(&ext.groth.fib).globally_small);
    }
}
