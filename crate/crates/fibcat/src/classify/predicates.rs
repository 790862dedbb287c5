//! Decision procedures for the generic-object notions, each quantifying
//! exhaustively over the total category and reporting a replayable witness
//! on failure.

use serde::Serialize;

use crate::fibration::{is_cover_cartesian, Cleavage, CoverClass, Fibration, MonoClass, SplitViolation};

/// A concrete violating configuration, in total/base morphism indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum Witness {
    /// No cartesian morphism from `object` into the candidate.
    NoCartesianToCandidate { object: usize },
    /// The base morphisms under which `object` admits a cartesian morphism
    /// into the candidate; empty or at least two.
    BaseMapCount {
        object: usize,
        base_maps: Vec<usize>,
    },
    /// Two distinct cartesian morphisms from `object` into the candidate.
    CartesianPair { object: usize, first: usize, second: usize },
    /// The base maps whose cleavage reindexing of the candidate equals
    /// `object`; empty or at least two.
    StrictReindexCount {
        object: usize,
        base_maps: Vec<usize>,
    },
    /// A cartesian span (into the candidate, along a designated mono) with
    /// no commuting cartesian filler.
    SpanWithoutFiller { to_candidate: usize, along_mono: usize },
    /// No object covers `object` cover-cartesianly while mapping
    /// cartesianly into the candidate.
    NoCoveringSpan { object: usize },
}

/// Outcome of one predicate: the verdict, a witness when false, and the
/// number of objects the universal quantifier ranged over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagResult {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub checked_objects: usize,
}

impl FlagResult {
    fn ok(checked: usize) -> FlagResult {
        FlagResult {
            holds: true,
            witness: None,
            checked_objects: checked,
        }
    }

    fn fail(witness: Witness, checked: usize) -> FlagResult {
        FlagResult {
            holds: false,
            witness: Some(witness),
            checked_objects: checked,
        }
    }
}

fn cartesian_homs(fib: &Fibration, x: usize, t: usize) -> Vec<usize> {
    fib.total()
        .hom(x, t)
        .iter()
        .map(|&m| m as usize)
        .filter(|&m| fib.is_cartesian(m))
        .collect()
}

/// Every object admits a cartesian morphism into `t`.
pub fn is_generic(fib: &Fibration, t: usize) -> FlagResult {
    let n = fib.total().n_objects();
    for x in fib.total().objects() {
        if cartesian_homs(fib, x, t).is_empty() {
            return FlagResult::fail(Witness::NoCartesianToCandidate { object: x }, n);
        }
    }
    FlagResult::ok(n)
}

/// Every object admits a cartesian morphism into `t` over exactly one base
/// morphism.
pub fn is_skeletal_generic(fib: &Fibration, t: usize) -> FlagResult {
    let n = fib.total().n_objects();
    for x in fib.total().objects() {
        let mut base_maps: Vec<usize> = cartesian_homs(fib, x, t)
            .iter()
            .map(|&m| fib.functor().on_mor(m))
            .collect();
        base_maps.sort_unstable();
        base_maps.dedup();
        if base_maps.len() != 1 {
            base_maps.truncate(2);
            return FlagResult::fail(Witness::BaseMapCount { object: x, base_maps }, n);
        }
    }
    FlagResult::ok(n)
}

/// Every object admits exactly one cartesian morphism into `t`.
pub fn is_gaunt_generic(fib: &Fibration, t: usize) -> FlagResult {
    let n = fib.total().n_objects();
    for x in fib.total().objects() {
        let carts = cartesian_homs(fib, x, t);
        match carts.len() {
            1 => {}
            0 => return FlagResult::fail(Witness::NoCartesianToCandidate { object: x }, n),
            _ => {
                return FlagResult::fail(
                    Witness::CartesianPair {
                        object: x,
                        first: carts[0],
                        second: carts[1],
                    },
                    n,
                )
            }
        }
    }
    FlagResult::ok(n)
}

/// The cleavage supplied to a split-genericity check must itself be split.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("the supplied cleavage is not split")]
pub struct NotSplitCleavage(pub SplitViolation);

/// Every object equals the strict reindexing of `t` along exactly one base
/// morphism, relative to a split cleavage.
pub fn is_split_generic(
    fib: &Fibration,
    cl: &Cleavage,
    t: usize,
) -> Result<FlagResult, NotSplitCleavage> {
    crate::fibration::is_split(fib, cl).map_err(NotSplitCleavage)?;
    Ok(split_generic_unchecked(fib, cl, t))
}

pub(crate) fn split_generic_unchecked(fib: &Fibration, cl: &Cleavage, t: usize) -> FlagResult {
    let n = fib.total().n_objects();
    let pt = fib.functor().on_obj(t);
    for x in fib.total().objects() {
        let px = fib.functor().on_obj(x);
        let mut matching: Vec<usize> = fib
            .base()
            .hom(px, pt)
            .iter()
            .map(|&u| u as usize)
            .filter(|&u| cl.reindex_obj(fib, u, t) == x)
            .collect();
        if matching.len() != 1 {
            matching.truncate(2);
            return FlagResult::fail(
                Witness::StrictReindexCount {
                    object: x,
                    base_maps: matching,
                },
                n,
            );
        }
    }
    FlagResult::ok(n)
}

/// A generic object is acyclic for a mono class when every cartesian span
/// out of a common source — one leg into `t`, the other along a designated
/// mono — admits a commuting cartesian filler.
pub fn is_acyclic_generic(fib: &Fibration, t: usize, monos: &MonoClass) -> FlagResult {
    let generic = is_generic(fib, t);
    if !generic.holds {
        return generic;
    }
    let total = fib.total();
    let n = total.n_objects();
    for u_obj in total.objects() {
        let to_t = cartesian_homs(fib, u_obj, t);
        if to_t.is_empty() {
            continue;
        }
        for m in total.morphisms() {
            if total.src(m) != u_obj
                || !fib.is_cartesian(m)
                || !monos.contains(fib.functor().on_mor(m))
            {
                continue;
            }
            let x = total.tgt(m);
            let fillers = cartesian_homs(fib, x, t);
            for &a in &to_t {
                if !fillers.iter().any(|&c| total.comp2(c, m) == a) {
                    return FlagResult::fail(
                        Witness::SpanWithoutFiller {
                            to_candidate: a,
                            along_mono: m,
                        },
                        n,
                    );
                }
            }
        }
    }
    FlagResult::ok(n)
}

/// Every object is covered, via a cover-cartesian morphism, by something
/// mapping cartesianly into `t`.
pub fn is_weak_generic_stack(fib: &Fibration, t: usize, covers: &CoverClass) -> FlagResult {
    let total = fib.total();
    let n = total.n_objects();
    let maps_to_t: Vec<bool> = total
        .objects()
        .map(|x| !cartesian_homs(fib, x, t).is_empty())
        .collect();
    for x in total.objects() {
        let covered = total.morphisms().any(|m| {
            total.tgt(m) == x && is_cover_cartesian(fib, covers, m) && maps_to_t[total.src(m)]
        });
        if !covered {
            return FlagResult::fail(Witness::NoCoveringSpan { object: x }, n);
        }
    }
    FlagResult::ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fam::{fam, skeletal_generic_candidate};
    use crate::constructions::zoo;

    #[test]
    fn deloop_generic_skeletal_not_gaunt() {
        let f = fam(&zoo::deloop(&zoo::GroupTable::cyclic(2)), 1);
        let t = f.canonical_generic().unwrap();
        assert!(is_generic(&f.fib, t).holds);
        assert!(is_skeletal_generic(&f.fib, t).holds);
        let gaunt = is_gaunt_generic(&f.fib, t);
        assert!(!gaunt.holds);
        assert!(matches!(gaunt.witness, Some(Witness::CartesianPair { .. })));
    }

    #[test]
    fn walking_iso_split_but_not_skeletal() {
        let f = fam(&zoo::walking_iso(), 2);
        let t = f.canonical_generic().unwrap();
        let split = is_split_generic(&f.fib, &f.canonical, t).unwrap();
        assert!(split.holds);
        let skel = is_skeletal_generic(&f.fib, t);
        assert!(!skel.holds);
        match skel.witness {
            Some(Witness::BaseMapCount { base_maps, .. }) => assert_eq!(base_maps.len(), 2),
            other => panic!("expected two base maps, got {other:?}"),
        }
    }

    #[test]
    fn skeletal_candidate_is_skeletal_for_every_test_category() {
        for c in [
            zoo::walking_iso(),
            zoo::deloop(&zoo::GroupTable::cyclic(2)),
            zoo::walking_arrow(),
            zoo::two_class_groupoid(),
        ] {
            let f = fam(&c, 2);
            let t = skeletal_generic_candidate(&f).unwrap();
            assert!(is_skeletal_generic(&f.fib, t).holds);
        }
    }

    #[test]
    fn no_generic_object_in_fam_of_discrete_two() {
        let f = fam(&zoo::discrete(2), 1);
        for t in f.fib.total().objects() {
            assert!(!is_generic(&f.fib, t).holds);
        }
    }

    #[test]
    fn walking_iso_candidate_is_acyclic() {
        let f = fam(&zoo::walking_iso(), 2);
        let t = f.canonical_generic().unwrap();
        let monos = MonoClass::all_monos(f.fib.base());
        assert!(is_acyclic_generic(&f.fib, t, &monos).holds);
    }

    #[test]
    fn generic_implies_weak_stack_with_identity_covers() {
        let f = fam(&zoo::deloop(&zoo::GroupTable::cyclic(2)), 1);
        let t = f.canonical_generic().unwrap();
        let covers = CoverClass::regular_epis(f.fib.base());
        assert!(covers.contains_identities(f.fib.base()));
        assert!(is_weak_generic_stack(&f.fib, t, &covers).holds);
    }
}
