//! Presheaves of categories, the Grothendieck construction, and the
//! externalization of an internal category.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::constructions::internal::InternalCat;
use crate::fibration::{Cleavage, Fibration};
use crate::fincat::{FinCat, FinFunctor};

/// A strictly functorial assignment of a fiber category to each base object
/// and a reindexing functor to each base morphism.
#[derive(Debug, Clone)]
pub struct PshCat {
    pub base: Arc<FinCat>,
    pub fibers: Vec<Arc<FinCat>>,
    /// Per base morphism `u: J → I`, the reindexing `fiber(I) → fiber(J)`
    /// as object and morphism tables.
    pub reindex_obj: Vec<Vec<usize>>,
    pub reindex_mor: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PshError {
    #[error("reindexing along identity of object {0} is not the identity functor")]
    IdentityNotStrict(usize),
    #[error("reindexing along composite of v={v}, u={u} is not the composite of reindexings")]
    CompositeNotStrict { v: usize, u: usize },
    #[error("reindexing along morphism {0} is not functorial")]
    NotAFunctor(usize),
}

impl PshCat {
    /// Checks strict functoriality of the reindexing assignment and
    /// functoriality of each reindexing.
    pub fn validate_strictness(&self) -> Result<(), PshError> {
        let base = &self.base;
        for o in base.objects() {
            let u = base.id_of(o);
            let n_o = self.fibers[o].n_objects();
            let n_m = self.fibers[o].n_morphisms();
            if self.reindex_obj[u] != (0..n_o).collect::<Vec<_>>()
                || self.reindex_mor[u] != (0..n_m).collect::<Vec<_>>()
            {
                return Err(PshError::IdentityNotStrict(o));
            }
        }
        for u in base.morphisms() {
            let (j, i) = (base.src(u), base.tgt(u));
            let fib_i = &self.fibers[i];
            let fib_j = &self.fibers[j];
            FinFunctor::validate(
                fib_i.clone(),
                fib_j.clone(),
                self.reindex_obj[u].clone(),
                self.reindex_mor[u].clone(),
            )
            .map_err(|_| PshError::NotAFunctor(u))?;
            for v in base.morphisms() {
                if base.src(v) != i {
                    continue;
                }
                let vu = base.comp2(v, u);
                let k = base.tgt(v);
                let strict_obj = (0..self.fibers[k].n_objects())
                    .all(|x| self.reindex_obj[vu][x] == self.reindex_obj[u][self.reindex_obj[v][x]]);
                let strict_mor = (0..self.fibers[k].n_morphisms())
                    .all(|m| self.reindex_mor[vu][m] == self.reindex_mor[u][self.reindex_mor[v][m]]);
                if !strict_obj || !strict_mor {
                    return Err(PshError::CompositeNotStrict { v, u });
                }
            }
        }
        Ok(())
    }
}

/// The presheaf of categories of an internal category: the fiber at `I` has
/// objects the generalized elements `I → C0` and morphisms the elements
/// `I → C1` with matching source and target; reindexing is precomposition.
pub fn psh_of_cats(ic: &InternalCat) -> PshCat {
    let base = &ic.base;
    // fiber objects: hom(I, c0) in index order; fiber morphisms: hom(I, c1).
    let mut fibers = Vec::with_capacity(base.n_objects());
    let mut obj_pos: Vec<HashMap<usize, usize>> = Vec::new();
    let mut mor_pos: Vec<HashMap<usize, usize>> = Vec::new();
    for x in base.objects() {
        let objs: Vec<usize> = base.hom(x, ic.c0).iter().map(|&a| a as usize).collect();
        let mors: Vec<usize> = base.hom(x, ic.c1).iter().map(|&h| h as usize).collect();
        let opos: HashMap<usize, usize> = objs.iter().enumerate().map(|(k, &a)| (a, k)).collect();
        let mpos: HashMap<usize, usize> = mors.iter().enumerate().map(|(k, &h)| (h, k)).collect();
        // pairing through the chosen pullback for fiber composition
        let mut pairing: HashMap<(usize, usize), usize> = HashMap::new();
        for &w in base.hom(x, ic.pairs.apex) {
            let w = w as usize;
            let h = base.comp2(ic.pairs.to_x, w);
            let k = base.comp2(ic.pairs.to_y, w);
            pairing.insert((h, k), w);
        }
        let n = mors.len();
        let mut comp = vec![u32::MAX; n * n];
        for (gi, &g) in mors.iter().enumerate() {
            for (fi, &f) in mors.iter().enumerate() {
                // g after f: f then g, defined when t∘f = s∘g
                if base.comp2(ic.t, f) == base.comp2(ic.s, g) {
                    let w = pairing[&(f, g)];
                    comp[gi * n + fi] = mpos[&base.comp2(ic.c, w)] as u32;
                }
            }
        }
        let src: Vec<u32> = mors.iter().map(|&h| opos[&base.comp2(ic.s, h)] as u32).collect();
        let tgt: Vec<u32> = mors.iter().map(|&h| opos[&base.comp2(ic.t, h)] as u32).collect();
        let id_of: Vec<u32> = objs.iter().map(|&a| mpos[&base.comp2(ic.i, a)] as u32).collect();
        fibers.push(Arc::new(FinCat::from_parts_trusted(
            objs.len(),
            src,
            tgt,
            id_of,
            comp,
        )));
        obj_pos.push(opos);
        mor_pos.push(mpos);
    }
    let mut reindex_obj = Vec::with_capacity(base.n_morphisms());
    let mut reindex_mor = Vec::with_capacity(base.n_morphisms());
    for u in base.morphisms() {
        let (j, i) = (base.src(u), base.tgt(u));
        let objs_i: Vec<usize> = base.hom(i, ic.c0).iter().map(|&a| a as usize).collect();
        let mors_i: Vec<usize> = base.hom(i, ic.c1).iter().map(|&h| h as usize).collect();
        reindex_obj.push(
            objs_i
                .iter()
                .map(|&a| obj_pos[j][&base.comp2(a, u)])
                .collect(),
        );
        reindex_mor.push(
            mors_i
                .iter()
                .map(|&h| mor_pos[j][&base.comp2(h, u)])
                .collect(),
        );
    }
    PshCat {
        base: base.clone(),
        fibers,
        reindex_obj,
        reindex_mor,
    }
}

/// The total category of a presheaf of categories with its projection,
/// canonical split cleavage included.
#[derive(Debug, Clone)]
pub struct GrothFibration {
    pub fib: Fibration,
    pub canonical: Cleavage,
    /// Total objects as (base object, fiber object).
    pub objects: Vec<(usize, usize)>,
    /// Total morphisms as (base morphism, fiber morphism of the source
    /// fiber).
    pub mors: Vec<(usize, usize)>,
    object_index: HashMap<(usize, usize), usize>,
    mor_index: HashMap<(usize, usize, usize), usize>,
}

impl GrothFibration {
    pub fn object_of(&self, base_obj: usize, fiber_obj: usize) -> usize {
        self.object_index[&(base_obj, fiber_obj)]
    }

    /// Morphism with target total object `tgt`, base morphism `u`, and
    /// fiber-of-source morphism `phi`.
    pub fn mor_of(&self, tgt: usize, u: usize, phi: usize) -> usize {
        self.mor_index[&(tgt, u, phi)]
    }
}

pub fn grothendieck(psh: &PshCat) -> GrothFibration {
    let base = &psh.base;
    let mut objects = Vec::new();
    for i in base.objects() {
        for c in 0..psh.fibers[i].n_objects() {
            objects.push((i, c));
        }
    }
    let object_index: HashMap<(usize, usize), usize> = objects
        .iter()
        .enumerate()
        .map(|(k, &o)| (o, k))
        .collect();

    // A morphism (J,c) → (I,d) is (u: J → I, φ: c → u*(d) in fiber J).
    let mut mors: Vec<(usize, usize)> = Vec::new();
    let mut mor_src = Vec::new();
    let mut mor_tgt = Vec::new();
    let mut identities = vec![0usize; objects.len()];
    let mut mor_index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (a, &(j, c)) in objects.iter().enumerate() {
        for (b, &(i, d)) in objects.iter().enumerate() {
            for &u in base.hom(j, i) {
                let u = u as usize;
                let ud = psh.reindex_obj[u][d];
                for &phi in psh.fibers[j].hom(c, ud) {
                    let phi = phi as usize;
                    if a == b && u == base.id_of(j) && phi == psh.fibers[j].id_of(c) {
                        identities[a] = mors.len();
                    }
                    mor_index.insert((b, u, phi), mors.len());
                    mor_src.push(a as u32);
                    mor_tgt.push(b as u32);
                    mors.push((u, phi));
                }
            }
        }
    }
    let n_mor = mors.len();
    let mut comp = vec![u32::MAX; n_mor * n_mor];
    for (gi, &(v, psi)) in mors.iter().enumerate() {
        let g_tgt = mor_tgt[gi] as usize;
        for (fi, &(u, phi)) in mors.iter().enumerate() {
            if mor_tgt[fi] as usize != mor_src[gi] as usize {
                continue;
            }
            let j = objects[mor_src[fi] as usize].0;
            let vu = base.comp2(v, u);
            let psi_u = psh.reindex_mor[u][psi];
            let composite_phi = psh.fibers[j].comp2(psi_u, phi);
            comp[gi * n_mor + fi] = mor_index[&(g_tgt, vu, composite_phi)] as u32;
        }
    }
    let total = Arc::new(FinCat::from_parts_trusted(
        objects.len(),
        mor_src,
        mor_tgt,
        identities.iter().map(|&x| x as u32).collect(),
        comp,
    ));
    let p = FinFunctor::from_parts_trusted(
        total,
        base.clone(),
        objects.iter().map(|o| o.0).collect(),
        mors.iter().map(|m| m.0).collect(),
    );
    let fib = Fibration::analyze(p);

    let n_obj = fib.total().n_objects();
    let mut choice = vec![u32::MAX; base.n_morphisms() * n_obj];
    for u in base.morphisms() {
        for (x, &(i, d)) in objects.iter().enumerate() {
            if i != base.tgt(u) {
                continue;
            }
            let j = base.src(u);
            let ud = psh.reindex_obj[u][d];
            let m = mor_index[&(x, u, psh.fibers[j].id_of(ud))];
            debug_assert!(fib.cartesian_lifts(u, x).contains(&(m as u32)));
            choice[u * n_obj + x] = m as u32;
        }
    }
    let canonical = Cleavage::from_choice_trusted(choice);
    GrothFibration {
        fib,
        canonical,
        objects,
        mors,
        object_index,
        mor_index,
    }
}

/// The externalization of an internal category: the Grothendieck
/// construction of its presheaf of categories, with the distinguished
/// object carried by the identity of the object of objects.
#[derive(Debug, Clone)]
pub struct Externalization {
    pub groth: GrothFibration,
    pub psh: PshCat,
    /// The distinguished object (C0, id_{C0}).
    pub t: usize,
}

pub fn externalize(ic: &InternalCat) -> Externalization {
    let psh = psh_of_cats(ic);
    let groth = grothendieck(&psh);
    let id_c0 = ic.base.id_of(ic.c0);
    let fiber_obj = ic
        .base
        .hom(ic.c0, ic.c0)
        .iter()
        .position(|&a| a as usize == id_c0)
        .expect("identity is an element of its own hom-set");
    let t = groth.object_of(ic.c0, fiber_obj);
    Externalization { groth, psh, t }
}

/// The presheaf constantly a given category, with identity reindexing.
pub fn constant_psh(base: &Arc<FinCat>, fiber: &Arc<FinCat>) -> PshCat {
    PshCat {
        base: base.clone(),
        fibers: vec![fiber.clone(); base.n_objects()],
        reindex_obj: vec![(0..fiber.n_objects()).collect(); base.n_morphisms()],
        reindex_mor: vec![(0..fiber.n_morphisms()).collect(); base.n_morphisms()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::finset::finset_skel;
    use crate::constructions::internal::encode_fincat;
    use crate::constructions::zoo;
    use crate::fibration::{fiber, is_split};

    #[test]
    fn constant_terminal_presheaf_grothendieck_is_the_base() {
        let base = zoo::walking_iso();
        let psh = constant_psh(&base, &zoo::terminal());
        psh.validate_strictness().unwrap();
        let g = grothendieck(&psh);
        assert_eq!(g.fib.total().n_objects(), base.n_objects());
        assert_eq!(g.fib.total().n_morphisms(), base.n_morphisms());
        assert!(g.fib.is_total_fibration());
        is_split(&g.fib, &g.canonical).unwrap();
    }

    #[test]
    fn psh_of_encoded_category_is_strict() {
        let fs = finset_skel(2);
        let ic = encode_fincat(&zoo::discrete(2), &fs).unwrap();
        let psh = psh_of_cats(&ic);
        psh.validate_strictness().unwrap();
        // fiber at the one-element set names the objects of the category
        assert_eq!(psh.fibers[1].n_objects(), 2);
        assert_eq!(psh.fibers[1].n_morphisms(), 2);
    }

    #[test]
    fn externalization_of_encoded_deloop_z2() {
        let fs = crate::constructions::finset::finset_with_sizes(&[0, 1, 2, 4]);
        let c = zoo::deloop(&zoo::GroupTable::cyclic(2));
        let ic = encode_fincat(&c, &fs).unwrap();
        let ext = externalize(&ic);
        ext.psh.validate_strictness().unwrap();
        assert!(ext.groth.fib.is_total_fibration());
        is_split(&ext.groth.fib, &ext.groth.canonical).unwrap();
        // every morphism of a fibered groupoid is cartesian
        assert!(ext
            .groth
            .fib
            .total()
            .morphisms()
            .all(|m| ext.groth.fib.is_cartesian(m)));
        // each fiber over k is the k-fold power of the delooping
        for (i, &k) in fs.sizes.iter().enumerate() {
            let (fe, incl) = fiber(ext.groth.fib.functor(), i);
            assert_eq!(fe.n_objects(), 1usize.pow(k as u32));
            assert_eq!(fe.n_morphisms(), 2usize.pow(k as u32));
            incl.revalidate().unwrap();
        }
    }

    #[test]
    fn externalization_of_encoded_discrete_two_matches_fam_fiberwise() {
        let fs = finset_skel(2);
        let c = zoo::discrete(2);
        let ic = encode_fincat(&c, &fs).unwrap();
        let ext = externalize(&ic);
        let famfib = crate::constructions::fam::fam(&c, 2);
        assert!(ext.groth.fib.is_total_fibration());
        for i in fs.cat.objects() {
            let (fe, _) = fiber(ext.groth.fib.functor(), i);
            let (ff, _) = fiber(famfib.fib.functor(), i);
            assert_eq!(fe.n_objects(), ff.n_objects());
            assert_eq!(fe.n_morphisms(), ff.n_morphisms());
        }
    }

    #[test]
    fn fiber_with_no_elements_of_c0_is_empty() {
        // discrete two-object base: an internal category at object 0 has an
        // empty fiber at object 1
        let base = zoo::discrete(2);
        let ic = crate::constructions::internal::validate_internal_cat(
            &base,
            0,
            0,
            base.id_of(0),
            base.id_of(0),
            base.id_of(0),
            crate::fibration::PullbackCone {
                apex: 0,
                to_x: base.id_of(0),
                to_y: base.id_of(0),
            },
            base.id_of(0),
        )
        .unwrap();
        let psh = psh_of_cats(&ic);
        assert_eq!(psh.fibers[1].n_objects(), 0);
        assert_eq!(psh.fibers[0].n_objects(), 1);
    }

    #[test]
    fn reindexing_along_identity_is_identity() {
        let fs = finset_skel(2);
        let ic = encode_fincat(&zoo::discrete(2), &fs).unwrap();
        let psh = psh_of_cats(&ic);
        let id1 = fs.cat.id_of(1);
        assert_eq!(psh.reindex_obj[id1], vec![0, 1]);
    }
}
