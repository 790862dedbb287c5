//! The family fibration: tuples of objects of a fiber category indexed by
//! finite sets, projected to the index.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::constructions::finset::{finset_skel, FinSetCat};
use crate::fibration::{Cleavage, Fibration};
use crate::fincat::{skeleton_data, FinCat, FinFunctor};

/// The family fibration of a category over the skeleton of finite sets of
/// size at most `n`, with its canonical split cleavage.
///
/// An object over `k` is a `k`-tuple of objects of the fiber category; a
/// morphism over `u` is a tuple of component morphisms `F_j → E_{u(j)}`.
/// The canonical cleavage reindexes by precomposition.
#[derive(Debug, Clone)]
pub struct FamFibration {
    pub fiber_cat: Arc<FinCat>,
    pub finset: FinSetCat,
    pub fib: Fibration,
    pub canonical: Cleavage,
    /// Families, ordered by (length, lexicographic entries).
    pub families: Vec<Vec<usize>>,
    /// Per total morphism: (src object, tgt object, base morphism, components).
    pub mors: Vec<(usize, usize, usize, Vec<usize>)>,
    family_index: HashMap<Vec<usize>, usize>,
    mor_index: HashMap<(usize, usize, usize, Vec<usize>), usize>,
}

impl FamFibration {
    pub fn object_of(&self, family: &[usize]) -> Option<usize> {
        self.family_index.get(family).copied()
    }

    pub fn mor_of(&self, src: usize, tgt: usize, u: usize, comps: &[usize]) -> usize {
        self.mor_index[&(src, tgt, u, comps.to_vec())]
    }

    /// The family listing every object of the fiber category in index order,
    /// when the index bound admits it.
    pub fn canonical_generic(&self) -> Option<usize> {
        let all: Vec<usize> = self.fiber_cat.objects().collect();
        self.object_of(&all)
    }
}

fn tuples(alphabet: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    if alphabet == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; len];
    loop {
        out.push(cur.clone());
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < alphabet {
                break;
            }
            cur[i] = 0;
        }
    }
}

pub fn fam(fiber_cat: &Arc<FinCat>, n: usize) -> FamFibration {
    let finset = finset_skel(n);
    let mut families = Vec::new();
    for k in 0..=n {
        families.extend(tuples(fiber_cat.n_objects(), k));
    }
    let family_index: HashMap<Vec<usize>, usize> = families
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), i))
        .collect();

    // Morphisms (k,F) → (l,E): a base u: k → l and components F_j → E_{u(j)}.
    let mut mors: Vec<(usize, usize, usize, Vec<usize>)> = Vec::new();
    let mut identities = vec![0usize; families.len()];
    for (a, fam_a) in families.iter().enumerate() {
        for (b, fam_b) in families.iter().enumerate() {
            for &u in finset.cat.hom(fam_a.len(), fam_b.len()) {
                let table = finset.table(u as usize);
                // component choices per position, lexicographic
                let per_pos: Vec<&[u32]> = fam_a
                    .iter()
                    .enumerate()
                    .map(|(j, &fj)| fiber_cat.hom(fj, fam_b[table[j]]))
                    .collect();
                if per_pos.iter().any(|h| h.is_empty()) {
                    continue;
                }
                let mut pick = vec![0usize; fam_a.len()];
                loop {
                    let comps: Vec<usize> =
                        pick.iter().zip(&per_pos).map(|(&i, h)| h[i] as usize).collect();
                    if a == b
                        && u as usize == finset.cat.id_of(fam_a.len())
                        && comps
                            .iter()
                            .zip(fam_a.iter())
                            .all(|(&c, &o)| c == fiber_cat.id_of(o))
                    {
                        identities[a] = mors.len();
                    }
                    mors.push((a, b, u as usize, comps));
                    let mut i = pick.len();
                    loop {
                        if i == 0 {
                            break;
                        }
                        i -= 1;
                        pick[i] += 1;
                        if pick[i] < per_pos[i].len() {
                            break;
                        }
                        pick[i] = 0;
                    }
                    if pick.iter().all(|&x| x == 0) {
                        break;
                    }
                }
            }
        }
    }
    let mor_index: HashMap<(usize, usize, usize, Vec<usize>), usize> = mors
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();

    let n_mor = mors.len();
    let mut comp = vec![u32::MAX; n_mor * n_mor];
    for (gi, (gs, gt, gu, gc)) in mors.iter().enumerate() {
        for (fi, (fs, ft, fu, fc)) in mors.iter().enumerate() {
            if ft != gs {
                continue;
            }
            let u = finset.cat.comp2(*gu, *fu);
            let ftab = finset.table(*fu);
            let comps: Vec<usize> = fc
                .iter()
                .enumerate()
                .map(|(j, &cj)| fiber_cat.comp2(gc[ftab[j]], cj))
                .collect();
            comp[gi * n_mor + fi] = mor_index[&(*fs, *gt, u, comps)] as u32;
        }
    }
    let total = Arc::new(FinCat::from_parts_trusted(
        families.len(),
        mors.iter().map(|m| m.0 as u32).collect(),
        mors.iter().map(|m| m.1 as u32).collect(),
        identities.iter().map(|&x| x as u32).collect(),
        comp,
    ));
    let p = FinFunctor::from_parts_trusted(
        total,
        finset.cat.clone(),
        families.iter().map(Vec::len).collect(),
        mors.iter().map(|m| m.2).collect(),
    );
    let fib = Fibration::analyze(p);

    // Canonical cleavage: reindex by precomposition, identity components.
    let n_obj = fib.total().n_objects();
    let mut choice = vec![u32::MAX; finset.cat.n_morphisms() * n_obj];
    for u in finset.cat.morphisms() {
        let table = finset.table(u);
        let k = finset.cat.tgt(u);
        for (x, fam_x) in families.iter().enumerate() {
            if fam_x.len() != k {
                continue;
            }
            let reindexed: Vec<usize> = table.iter().map(|&i| fam_x[i]).collect();
            let src = family_index[&reindexed];
            let comps: Vec<usize> = reindexed.iter().map(|&o| fiber_cat.id_of(o)).collect();
            let m = mor_index[&(src, x, u, comps)];
            debug_assert!(fib.cartesian_lifts(u, x).contains(&(m as u32)));
            choice[u * n_obj + x] = m as u32;
        }
    }
    let canonical = Cleavage::from_choice_trusted(choice);

    FamFibration {
        fiber_cat: fiber_cat.clone(),
        finset,
        fib,
        canonical,
        families,
        mors,
        family_index,
        mor_index,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the fiber category has {classes} isomorphism classes, exceeding the index bound {bound}")]
pub struct BoundTooSmall {
    pub classes: usize,
    pub bound: usize,
}

/// The generic candidate built from the isomorphism-class quotient: the
/// family over the class set listing the chosen representatives.
pub fn skeletal_generic_candidate(
    famfib: &FamFibration,
) -> Result<usize, BoundTooSmall> {
    let sk = skeleton_data(&famfib.fiber_cat);
    let bound = famfib.finset.sizes.len() - 1;
    if sk.section.len() > bound {
        return Err(BoundTooSmall {
            classes: sk.section.len(),
            bound,
        });
    }
    Ok(famfib
        .object_of(&sk.section)
        .expect("representative family is within the bound"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::zoo;
    use crate::fibration::{fiber, is_split};

    #[test]
    fn fam_over_empty_index_only_has_the_empty_family() {
        let f = fam(&zoo::walking_iso(), 0);
        assert_eq!(f.fib.total().n_objects(), 1);
        assert_eq!(f.fib.total().n_morphisms(), 1);
    }

    #[test]
    fn fam_of_walking_iso_sizes() {
        let f = fam(&zoo::walking_iso(), 2);
        assert_eq!(f.fib.total().n_objects(), 7);
        assert_eq!(f.fib.total().n_morphisms(), 99);
        // fiber over 2 has the four families drawn from two objects
        let (f2, incl) = fiber(f.fib.functor(), 2);
        assert_eq!(f2.n_objects(), 4);
        incl.revalidate().unwrap();
    }

    #[test]
    fn fam_total_category_satisfies_axioms() {
        for c in [zoo::walking_iso(), zoo::walking_arrow(), zoo::deloop(&zoo::GroupTable::cyclic(2))] {
            let f = fam(&c, 2);
            crate::fincat::FinCat::validate(&f.fib.total().to_raw()).unwrap();
            f.fib.functor().revalidate().unwrap();
        }
    }

    #[test]
    fn fam_is_a_split_fibration() {
        let f = fam(&zoo::deloop(&zoo::GroupTable::cyclic(2)), 1);
        assert!(f.fib.is_total_fibration());
        is_split(&f.fib, &f.canonical).unwrap();
    }

    #[test]
    fn fiber_over_one_matches_the_fiber_category() {
        let c = zoo::deloop(&zoo::GroupTable::cyclic(2));
        let f = fam(&c, 1);
        let (f1, _) = fiber(f.fib.functor(), 1);
        assert_eq!(f1.n_objects(), c.n_objects());
        assert_eq!(f1.n_morphisms(), c.n_morphisms());
        // fiber over the empty index: one object, one morphism
        let (f0, _) = fiber(f.fib.functor(), 0);
        assert_eq!((f0.n_objects(), f0.n_morphisms()), (1, 1));
    }

    #[test]
    fn two_cartesian_endomorphisms_of_the_generic_object() {
        let f = fam(&zoo::deloop(&zoo::GroupTable::cyclic(2)), 1);
        let t = f.canonical_generic().unwrap();
        let id1 = f.finset.cat.id_of(1);
        assert_eq!(f.fib.cartesian_lifts(id1, t).len(), 2);
    }

    #[test]
    fn skeletal_candidate_respects_the_bound() {
        let f = fam(&zoo::walking_iso(), 2);
        let t = skeletal_generic_candidate(&f).unwrap();
        assert_eq!(f.families[t], vec![0]);

        let f = fam(&zoo::walking_arrow(), 1);
        assert!(skeletal_generic_candidate(&f).is_err());
    }

    #[test]
    fn cartesian_morphisms_have_invertible_components() {
        let f = fam(&zoo::walking_arrow(), 2);
        for m in f.fib.total().morphisms() {
            let comps = &f.mors[m].3;
            let all_iso = comps.iter().all(|&c| f.fiber_cat.is_iso(c));
            assert_eq!(f.fib.is_cartesian(m), all_iso, "morphism {m}");
        }
    }
}
