//! Full subfibrations of the fundamental fibration: arrows that are
//! pullbacks of a fixed map, and the arrows that become so after a cover.

use std::sync::Arc;

use crate::constructions::arrow::{arrow_full_subcategory, ArrowCat};
use crate::fibration::{cone_is_universal, cones_over, pullback, CoverClass, Fibration, PullbackCone};
use crate::fincat::FinCat;

/// A full subcategory of the arrow category projected by codomain, recording
/// which arrows qualify and where the distinguished map landed.
#[derive(Debug, Clone)]
pub struct ArrowSubfibration {
    pub arrow: ArrowCat,
    pub fib: Fibration,
    /// The distinguished map as an object of the total category.
    pub pi_object: usize,
}

/// The chosen pullback of `pi` along each morphism into its codomain, where
/// one exists.
fn pullbacks_of(base: &Arc<FinCat>, pi: usize) -> Vec<Option<PullbackCone>> {
    base.morphisms()
        .map(|u| (base.tgt(u) == base.tgt(pi)).then(|| pullback(base, u, pi)).flatten())
        .collect()
}

/// Per base morphism, whether it is isomorphic over its codomain to a
/// pullback of `pi`.
fn pullback_class(base: &Arc<FinCat>, pi: usize) -> Vec<bool> {
    let pulled = pullbacks_of(base, pi);
    base.morphisms()
        .map(|f| {
            let i = base.tgt(f);
            base.hom(i, base.tgt(pi)).iter().any(|&u| {
                let Some(cone) = &pulled[u as usize] else {
                    return false;
                };
                base.hom(base.src(f), cone.apex)
                    .iter()
                    .any(|&v| base.is_iso(v as usize) && base.comp2(cone.to_x, v as usize) == f)
            })
        })
        .collect()
}

/// `f` is isomorphic over its codomain to the pullback of `pi` along some
/// map into the codomain of `pi`.
pub fn is_pullback_of(base: &Arc<FinCat>, pi: usize, f: usize) -> bool {
    pullback_class(base, pi)[f]
}

/// The full subfibration of arrows isomorphic over their codomain to a
/// pullback of `pi`.
pub fn subfibration_from_map(base: &Arc<FinCat>, pi: usize) -> ArrowSubfibration {
    let class = pullback_class(base, pi);
    let arrows: Vec<usize> = base.morphisms().filter(|&f| class[f]).collect();
    build(base, pi, arrows)
}

/// The stack completion of the subfibration of `pi`: arrows some cover of
/// whose codomain pulls them back into the subfibration.
pub fn stack_completion(base: &Arc<FinCat>, pi: usize, covers: &CoverClass) -> ArrowSubfibration {
    let in_pi_class = pullback_class(base, pi);
    // Only covers out of an object that already carries a member can yield a
    // member pullback leg.
    let mut member_source = vec![false; base.n_objects()];
    for f in base.morphisms() {
        if in_pi_class[f] {
            member_source[base.tgt(f)] = true;
        }
    }
    let arrows: Vec<usize> = base
        .morphisms()
        .filter(|&f| {
            let i = base.tgt(f);
            if in_pi_class[f] && covers.contains(base.id_of(i)) {
                return true;
            }
            base.morphisms().any(|c| {
                if base.tgt(c) != i || !covers.contains(c) || !member_source[base.src(c)] {
                    return false;
                }
                // a member leg over the cover that is universal exhibits f
                // as locally a pullback of pi
                let cones = cones_over(base, c, f);
                cones
                    .iter()
                    .any(|cone| in_pi_class[cone.to_x] && cone_is_universal(base, cone, &cones))
            })
        })
        .collect();
    build(base, pi, arrows)
}

fn build(base: &Arc<FinCat>, pi: usize, arrows: Vec<usize>) -> ArrowSubfibration {
    let arrow = arrow_full_subcategory(base, &arrows);
    let pi_object = arrow
        .object_of(pi)
        .expect("the distinguished map is a pullback of itself");
    let fib = Fibration::analyze(arrow.codomain.clone());
    ArrowSubfibration {
        arrow,
        fib,
        pi_object,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::predicates::{is_generic, is_weak_generic_stack};
    use crate::constructions::finset::finset_skel;
    use crate::constructions::gset::gset_category;
    use crate::constructions::zoo::GroupTable;

    #[test]
    fn subfibration_of_the_terminal_identity_is_the_isos() {
        let fs = finset_skel(2);
        let id1 = fs.cat.id_of(1);
        let sub = subfibration_from_map(&fs.cat, id1);
        // members are exactly the isomorphisms
        for &f in &sub.arrow.objects {
            assert!(fs.cat.is_iso(f));
        }
        assert!(is_generic(&sub.fib, sub.pi_object).holds);
    }

    #[test]
    fn two_to_one_covers_over_finite_sets() {
        let fs = finset_skel(3);
        let pi = fs.mor_of(2, 1, &[0, 0]);
        let sub = subfibration_from_map(&fs.cat, pi);
        // members over each index are the trivial double covers that fit
        for &f in &sub.arrow.objects {
            let (src, tgt, table) = &fs.tables[f];
            assert_eq!(fs.sizes[*src], 2 * fs.sizes[*tgt]);
            for y in 0..fs.sizes[*tgt] {
                assert_eq!(table.iter().filter(|&&v| v == y).count(), 2);
            }
        }
        assert!(is_generic(&sub.fib, sub.pi_object).holds);

        // over finite sets every cover splits, so the completion adds nothing
        let covers = CoverClass::regular_epis(&fs.cat);
        let stack = stack_completion(&fs.cat, pi, &covers);
        assert_eq!(stack.arrow.objects, sub.arrow.objects);
    }

    #[test]
    fn orbit_quotient_enters_the_stack_completion() {
        let g = GroupTable::cyclic(2);
        let gs = gset_category(&g, 4);
        let two_triv = gs.object_with_orbits(&[1, 1]).unwrap();
        let point = gs.object_with_orbits(&[1]).unwrap();
        let rho = gs.object_with_orbits(&[2]).unwrap();
        let pi = gs.mor_of(two_triv, point, &[0, 0]);
        let quotient = gs.mor_of(rho, point, &[0, 0]);

        let sub = subfibration_from_map(&gs.cat, pi);
        assert!(sub.arrow.object_of(quotient).is_none());
        assert!(is_generic(&sub.fib, sub.pi_object).holds);

        let covers = CoverClass::regular_epis(&gs.cat);
        let stack = stack_completion(&gs.cat, pi, &covers);
        let q_obj = stack.arrow.object_of(quotient);
        assert!(q_obj.is_some(), "the free-orbit quotient is locally trivial");

        // pi stays weak generic for the completion but is no longer generic
        let generic = is_generic(&stack.fib, stack.pi_object);
        assert!(!generic.holds);
        assert!(is_weak_generic_stack(&stack.fib, stack.pi_object, &covers).holds);
    }

    #[test]
    fn cover_cartesian_morphisms_over_group_actions() {
        use crate::fibration::is_cover_cartesian;
        let g = GroupTable::cyclic(2);
        let gs = gset_category(&g, 4);
        let two_triv = gs.object_with_orbits(&[1, 1]).unwrap();
        let point = gs.object_with_orbits(&[1]).unwrap();
        let pi = gs.mor_of(two_triv, point, &[0, 0]);
        let sub = subfibration_from_map(&gs.cat, pi);
        let covers = CoverClass::regular_epis(&gs.cat);

        // the cartesian lift over the orbit quotient is cover-cartesian
        let rho = gs.object_with_orbits(&[2]).unwrap();
        let quotient = gs.mor_of(rho, point, &[0, 0]);
        let lifts = sub.fib.cartesian_lifts(quotient, sub.pi_object);
        assert!(!lifts.is_empty());
        assert!(lifts
            .iter()
            .all(|&m| is_cover_cartesian(&sub.fib, &covers, m as usize)));

        // identities are regular epis, hence cover-cartesian
        for o in sub.fib.total().objects() {
            assert!(is_cover_cartesian(
                &sub.fib,
                &covers,
                sub.fib.total().id_of(o)
            ));
        }

        // a cartesian lift over a non-epi mono is not
        let member_over_2t = sub
            .fib
            .total()
            .objects()
            .find(|&x| sub.fib.functor().on_obj(x) == two_triv)
            .unwrap();
        let include = gs.mor_of(point, two_triv, &[0]);
        let lifts = sub.fib.cartesian_lifts(include, member_over_2t);
        assert!(!lifts.is_empty());
        assert!(lifts
            .iter()
            .all(|&m| !is_cover_cartesian(&sub.fib, &covers, m as usize)));
    }
}
