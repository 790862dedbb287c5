//! The built-in example suite: every separation and lemma the toolkit is
//! expected to reproduce, keyed by a stable anchor name. The `acceptance`
//! integration test and the `paper-examples` command both drive this module.

use std::time::Instant;

use serde::Serialize;

use crate::classify::predicates::{
    is_gaunt_generic, is_generic, is_skeletal_generic, is_split_generic, is_weak_generic_stack,
    Witness,
};
use crate::classify::rlp::acyclic_iff_rlp_check;
use crate::classify::search::{counterexample_search, SearchBounds, REQUIRED_SEPARATIONS};
use crate::constructions::arrow::{arrow_category, z2_arrow_base};
use crate::constructions::fam::{fam, skeletal_generic_candidate, FamFibration};
use crate::constructions::finset::{finset_skel, finset_with_sizes};
use crate::constructions::groth::externalize;
use crate::constructions::gset::gset_category;
use crate::constructions::internal::{internal_deloop, GroupObject};
use crate::constructions::stack::{stack_completion, subfibration_from_map};
use crate::constructions::weak_split::split_from_weak;
use crate::constructions::zoo::{self, GroupTable};
use crate::fibration::{
    fiber, is_pullback_cone, is_split, CoverClass, Fibration, MonoClass, PullbackCone,
};
use crate::fincat::category_predicates;

/// Result of one suite check.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckOutcome {
    pub anchor: &'static str,
    pub pass: bool,
    pub details: String,
    pub millis: u128,
    /// The time budget the check is expected to fit in.
    pub budget_millis: u128,
}

fn run(
    anchor: &'static str,
    budget_millis: u128,
    body: impl FnOnce() -> (bool, String),
) -> CheckOutcome {
    let start = Instant::now();
    let (pass, details) = body();
    CheckOutcome {
        anchor,
        pass,
        details,
        millis: start.elapsed().as_millis(),
        budget_millis,
    }
}

fn fam_z2() -> FamFibration {
    fam(&zoo::deloop(&GroupTable::cyclic(2)), 1)
}

/// A split generic object need not be skeletal: the canonical candidate of
/// the two-isomorphic-objects groupoid, over indices of size at most two.
pub fn check_split_not_skeletal() -> CheckOutcome {
    run("Lemma 5.2.2 sep", 1_000, || {
        let f = fam(&zoo::walking_iso(), 2);
        let t = f.canonical_generic().expect("bound admits the candidate");
        let split = match is_split_generic(&f.fib, &f.canonical, t) {
            Ok(r) => r,
            Err(e) => return (false, format!("canonical cleavage not split: {e}")),
        };
        let skeletal = is_skeletal_generic(&f.fib, t);
        let two_maps = matches!(
            &skeletal.witness,
            Some(Witness::BaseMapCount { base_maps, .. }) if base_maps.len() == 2
        );
        (
            split.holds && !skeletal.holds && two_maps,
            format!(
                "split={} skeletal={} two-base-map witness={}",
                split.holds, skeletal.holds, two_maps
            ),
        )
    })
}

pub(crate) fn delooping_expectations(skeletal: bool, gaunt: bool, endos: usize) -> bool {
    skeletal && !gaunt && endos == 2
}

/// The delooping of the two-element group is skeletal but not gaunt, with
/// exactly two cartesian endomorphisms of the candidate.
pub fn check_delooping() -> CheckOutcome {
    run("ex:delooping", 1_000, || {
        let f = fam_z2();
        let t = f.canonical_generic().expect("bound admits the candidate");
        let skeletal = is_skeletal_generic(&f.fib, t).holds;
        let gaunt = is_gaunt_generic(&f.fib, t).holds;
        let endos = f
            .fib
            .total()
            .hom(t, t)
            .iter()
            .filter(|&&m| f.fib.is_cartesian(m as usize))
            .count();
        (
            delooping_expectations(skeletal, gaunt, endos),
            format!("skeletal={skeletal} gaunt={gaunt} cartesian endomorphisms={endos}"),
        )
    })
}

/// The quotient candidate is always skeletal; it is split generic exactly
/// when the fiber category is skeletal and gaunt generic exactly when the
/// fiber category is gaunt.
pub fn check_skeleton_lemmas() -> CheckOutcome {
    run("sec 2.3 skeleton lemmas", 5_000, || {
        let cases = [
            ("walking_iso", zoo::walking_iso()),
            ("deloopZ2", zoo::deloop(&GroupTable::cyclic(2))),
            ("walking_arrow", zoo::walking_arrow()),
            ("two_class_groupoid", zoo::two_class_groupoid()),
        ];
        let mut lines = Vec::new();
        let mut pass = true;
        for (name, cat) in cases {
            let flags = category_predicates(&cat);
            let f = fam(&cat, 2);
            let t = match skeletal_generic_candidate(&f) {
                Ok(t) => t,
                Err(e) => return (false, format!("{name}: {e}")),
            };
            let skeletal = is_skeletal_generic(&f.fib, t).holds;
            let split = match is_split_generic(&f.fib, &f.canonical, t) {
                Ok(r) => r.holds,
                Err(e) => return (false, format!("{name}: {e}")),
            };
            let gaunt = is_gaunt_generic(&f.fib, t).holds;
            let ok = skeletal && (split == flags.skeletal) && (gaunt == flags.gaunt);
            pass &= ok;
            lines.push(format!(
                "{name}: skeletal={skeletal} split={split}(cat {}) gaunt={gaunt}(cat {})",
                flags.skeletal, flags.gaunt
            ));
        }
        (pass, lines.join("; "))
    })
}

/// Every built-in fibration with a generic object splits through the
/// presheaf of chosen lifts, with an equivalence back to the original.
pub fn check_weak_split_correspondence() -> CheckOutcome {
    run("sec 2.4 weak-split", 10_000, || {
        let mut cases: Vec<(String, Fibration, usize)> = Vec::new();
        for (name, cat) in [
            ("walking_iso", zoo::walking_iso()),
            ("deloopZ2", zoo::deloop(&GroupTable::cyclic(2))),
            ("deloopZ3", zoo::deloop(&GroupTable::cyclic(3))),
            ("walking_arrow", zoo::walking_arrow()),
            ("walking_idempotent", zoo::walking_idempotent()),
        ] {
            let f = fam(&cat, 2);
            let t = f.canonical_generic().expect("bound admits the candidate");
            cases.push((format!("fam:{name}:2"), f.fib, t));
        }
        {
            let f = fam(&zoo::two_class_groupoid(), 2);
            let t = skeletal_generic_candidate(&f).expect("two classes fit");
            cases.push(("fam:two_class_groupoid:2 (quotient candidate)".into(), f.fib, t));
        }
        {
            let (_, group) = z2_arrow_base();
            let ic = internal_deloop(&group).expect("delooping equations hold");
            let ext = externalize(&ic);
            cases.push(("externalize:deloopZ2@z2_arrow_base".into(), ext.groth.fib, ext.t));
        }
        let mut pass = true;
        let mut lines = Vec::new();
        for (name, fib, t) in &cases {
            match split_from_weak(fib, *t) {
                Ok(s) => {
                    pass &= s.verdict.holds();
                    lines.push(format!("{name}: {}", if s.verdict.holds() { "ok" } else { "FAIL" }));
                }
                Err(e) => {
                    pass = false;
                    lines.push(format!("{name}: {e}"));
                }
            }
        }
        (pass, lines.join("; "))
    })
}

/// The implication audit holds on every classified object, and the search
/// rediscovers all five strict separations — the incomparability of the
/// skeletal and acyclic notions in both directions included.
pub fn check_strength_diagram() -> CheckOutcome {
    run("Fig strength", 120_000, || {
        let catalogue = match counterexample_search(SearchBounds::default()) {
            Ok(c) => c,
            Err(e) => return (false, format!("audit violation: {e}")),
        };
        let mut pass = true;
        let mut lines = vec![format!(
            "{} objects across {} fibrations, audit clean",
            catalogue.objects_classified,
            catalogue.fibrations_searched.len()
        )];
        for (have, lack) in REQUIRED_SEPARATIONS {
            match &catalogue.entry(have, lack).example {
                Some(ex) => lines.push(format!(
                    "{}∧¬{}: {} object {}",
                    have.name(),
                    lack.name(),
                    ex.fibration,
                    ex.object
                )),
                None => {
                    pass = false;
                    lines.push(format!("{}∧¬{}: MISSING", have.name(), lack.name()));
                }
            }
        }
        // the two named instances of the incomparability
        {
            let f = fam(&zoo::walking_iso(), 2);
            let t = f.canonical_generic().expect("bound admits the candidate");
            let monos = MonoClass::all_monos(f.fib.base());
            let acyclic = crate::classify::predicates::is_acyclic_generic(&f.fib, t, &monos);
            let skeletal = is_skeletal_generic(&f.fib, t);
            let ok = acyclic.holds && !skeletal.holds;
            pass &= ok;
            lines.push(format!("walking-iso candidate acyclic∧¬skeletal: {ok}"));
        }
        {
            let (_, group) = z2_arrow_base();
            let ext = externalize(&internal_deloop(&group).expect("valid delooping"));
            let monos = MonoClass::all_monos(ext.groth.fib.base());
            let acyclic =
                crate::classify::predicates::is_acyclic_generic(&ext.groth.fib, ext.t, &monos);
            let skeletal = is_skeletal_generic(&ext.groth.fib, ext.t);
            let ok = skeletal.holds && !acyclic.holds;
            pass &= ok;
            lines.push(format!("arrow-fragment delooping skeletal∧¬acyclic: {ok}"));
        }
        (pass, lines.join("; "))
    })
}

/// Acyclicity of a delooped group object coincides with the right lifting
/// property of its carrier, across the test matrix.
pub fn check_rlp_lemma() -> CheckOutcome {
    run("sec 4.3.1 rlp", 30_000, || {
        let mut pass = true;
        let mut lines = Vec::new();
        let mut case = |name: &str, group: &GroupObject, expected: bool| {
            let monos = MonoClass::all_monos(&group.base);
            match acyclic_iff_rlp_check(group, &monos) {
                Ok(v) => {
                    let ok = v.agree && v.acyclic.holds == expected && v.rlp_holds == expected;
                    pass &= ok;
                    lines.push(format!(
                        "{name}: acyclic={} rlp={} agree={}",
                        v.acyclic.holds, v.rlp_holds, v.agree
                    ));
                }
                Err(e) => {
                    pass = false;
                    lines.push(format!("{name}: {e}"));
                }
            }
        };

        let fs = finset_with_sizes(&[0, 1, 2, 4]);
        let one = fs.object_of_size(1).unwrap();
        let two = fs.object_of_size(2).unwrap();
        let four = fs.object_of_size(4).unwrap();
        let z2_sets = GroupObject::validate(
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
        .expect("Z2 is a group object over finite sets");
        case("finset_sizes:0,1,2,4 x Z2", &z2_sets, true);

        let (_, z2_arrows) = z2_arrow_base();
        case("z2_arrow_base x (1 -> Z2)", &z2_arrows, false);

        for (name, base) in [
            ("finset_skel:2", finset_skel(2).cat),
            ("gsets:Z2:2", gset_category(&GroupTable::cyclic(2), 2).cat),
        ] {
            let terminal = base
                .objects()
                .find(|&o| base.objects().all(|x| base.hom(x, o).len() == 1))
                .expect("base has a terminal object");
            let trivial = GroupObject::validate(
                &base,
                terminal,
                terminal,
                PullbackCone {
                    apex: terminal,
                    to_x: base.id_of(terminal),
                    to_y: base.id_of(terminal),
                },
                base.id_of(terminal),
                base.id_of(terminal),
                base.id_of(terminal),
            )
            .expect("the trivial group deloops anywhere with a terminal object");
            case(&format!("{name} x trivial"), &trivial, true);
        }
        (pass, lines.join("; "))
    })
}

/// The distinguished map of a stack completion is weak generic but not
/// generic once a locally-trivial non-member joins; over finite sets the
/// completion adds nothing.
pub fn check_stack_completion() -> CheckOutcome {
    run("ex:stack-completion", 30_000, || {
        let gs = gset_category(&GroupTable::cyclic(2), 4);
        let two_triv = gs.object_with_orbits(&[1, 1]).unwrap();
        let point = gs.object_with_orbits(&[1]).unwrap();
        let rho = gs.object_with_orbits(&[2]).unwrap();
        let pi = gs.mor_of(two_triv, point, &[0, 0]);
        let quotient = gs.mor_of(rho, point, &[0, 0]);
        let covers = CoverClass::regular_epis(&gs.cat);

        let sub = subfibration_from_map(&gs.cat, pi);
        let sub_generic = is_generic(&sub.fib, sub.pi_object).holds;

        let stack = stack_completion(&gs.cat, pi, &covers);
        let quotient_in = stack.arrow.object_of(quotient);
        let generic = is_generic(&stack.fib, stack.pi_object);
        let witness_is_quotient = matches!(
            generic.witness,
            Some(Witness::NoCartesianToCandidate { object }) if Some(object) == quotient_in
        );
        let weak = is_weak_generic_stack(&stack.fib, stack.pi_object, &covers).holds;

        let fs = finset_skel(3);
        let pi3 = fs.mor_of(2, 1, &[0, 0]);
        let covers3 = CoverClass::regular_epis(&fs.cat);
        let sub3 = subfibration_from_map(&fs.cat, pi3);
        let stack3 = stack_completion(&fs.cat, pi3, &covers3);
        let sets_equal = sub3.arrow.objects == stack3.arrow.objects;

        let pass = sub_generic
            && quotient_in.is_some()
            && !generic.holds
            && witness_is_quotient
            && weak
            && sets_equal;
        (
            pass,
            format!(
                "subfib generic={sub_generic}; completion: quotient joined={} generic={} \
                 witness-is-quotient={witness_is_quotient} weakStack={weak}; \
                 finite sets: completion equals subfibration={sets_equal}",
                quotient_in.is_some(),
                generic.holds
            ),
        )
    })
}

/// Cartesianness in the codomain functor coincides with being a pullback
/// square; codomain functors are fibrations exactly over pullback-complete
/// bases; family and Grothendieck totals are split fibrations.
pub fn check_foundations() -> CheckOutcome {
    run("ex:cod-pullback", 30_000, || {
        let mut pass = true;
        let mut lines = Vec::new();

        // cartesian squares = pullback squares over a base with missing
        // pullbacks as well
        let fs = finset_skel(2);
        let arrow = arrow_category(&fs.cat);
        let fib = Fibration::analyze(arrow.codomain.clone());
        let agree = arrow.cat.morphisms().all(|sq| {
            // the square (u, v) from f to g is cartesian over the codomain
            // functor iff (src f; f, u) is a pullback cone of (v, g)
            let (from, to, u, v) = arrow.squares[sq];
            let f_arrow = arrow.objects[from];
            let cone = PullbackCone {
                apex: fs.cat.src(f_arrow),
                to_x: f_arrow,
                to_y: u,
            };
            fib.is_cartesian(sq) == is_pullback_cone(&fs.cat, v, arrow.objects[to], &cone)
        });
        pass &= agree;
        lines.push(format!(
            "cartesian=pullback on {} squares: {agree}",
            arrow.cat.n_morphisms()
        ));

        // fibration exactly when the base has pullbacks
        let complete = [
            ("finset_skel:1", finset_skel(1).cat),
            ("diamond_lattice", zoo::diamond_lattice()),
        ];
        for (name, base) in complete {
            let ok = Fibration::analyze(arrow_category(&base).codomain).is_total_fibration();
            pass &= ok;
            lines.push(format!("codomain over {name}: fibration={ok}"));
        }
        let incomplete = [
            ("finset_skel:2", fs.cat.clone()),
            ("vee_poset", zoo::vee_poset()),
        ];
        for (name, base) in incomplete {
            let failure = Fibration::analyze(arrow_category(&base).codomain).lift_failure();
            pass &= failure.is_some();
            lines.push(format!("codomain over {name}: lift failure={failure:?}"));
        }

        // family and Grothendieck outputs are split fibrations
        for (name, cat) in [
            ("walking_iso", zoo::walking_iso()),
            ("deloopZ2", zoo::deloop(&GroupTable::cyclic(2))),
            ("vee_poset", zoo::vee_poset()),
        ] {
            let f = fam(&cat, 2);
            let ok = f.fib.is_total_fibration() && is_split(&f.fib, &f.canonical).is_ok();
            pass &= ok;
            lines.push(format!("fam:{name}:2 split fibration={ok}"));
        }
        {
            let (_, group) = z2_arrow_base();
            let ext = externalize(&internal_deloop(&group).expect("valid delooping"));
            let ok = ext.groth.fib.is_total_fibration()
                && is_split(&ext.groth.fib, &ext.groth.canonical).is_ok();
            pass &= ok;
            lines.push(format!("externalize:deloopZ2@z2_arrow_base split fibration={ok}"));
        }
        (pass, lines.join("; "))
    })
}

/// On fibered preorders the skeletal and gaunt verdicts agree object by
/// object.
pub fn check_preorder_coincidence() -> CheckOutcome {
    run("sec 2.1 preorder coincidence", 5_000, || {
        let mut cases: Vec<(String, Fibration)> = Vec::new();
        for (name, cat) in [
            ("terminal", zoo::terminal()),
            ("walking_arrow", zoo::walking_arrow()),
            ("vee_poset", zoo::vee_poset()),
        ] {
            cases.push((format!("fam:{name}:2"), fam(&cat, 2).fib));
        }
        cases.push((
            "codomain:diamond_lattice".into(),
            Fibration::analyze(arrow_category(&zoo::diamond_lattice()).codomain),
        ));
        let mut pass = true;
        let mut lines = Vec::new();
        for (name, fib) in &cases {
            let fibered_preorder = fib.base().objects().all(|i| {
                let (f, _) = fiber(fib.functor(), i);
                category_predicates(&f).preorder
            });
            let agree = fib
                .total()
                .objects()
                .all(|t| is_skeletal_generic(fib, t).holds == is_gaunt_generic(fib, t).holds);
            pass &= fibered_preorder && agree;
            lines.push(format!("{name}: fibered preorder={fibered_preorder} agree={agree}"));
        }
        (pass, lines.join("; "))
    })
}

/// Runs every check in anchor order.
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        check_split_not_skeletal(),
        check_delooping(),
        check_skeleton_lemmas(),
        check_weak_split_correspondence(),
        check_strength_diagram(),
        check_rlp_lemma(),
        check_stack_completion(),
        check_foundations(),
        check_preorder_coincidence(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverted_gaunt_flag_fails_the_delooping_check() {
        // the delooping expectations discriminate a lying gaunt flag
        assert!(delooping_expectations(true, false, 2));
        assert!(!delooping_expectations(true, true, 2));
        assert!(!delooping_expectations(false, false, 2));
        assert!(!delooping_expectations(true, false, 1));
    }
}
