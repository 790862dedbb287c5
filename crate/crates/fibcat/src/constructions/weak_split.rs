//! From a generic object to an equivalent split fibration with a split
//! generic object: the presheaf of chosen cartesian lifts, its Grothendieck
//! construction, and the comparison functor back to the original total
//! category.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::classify::predicates::{is_generic, split_generic_unchecked};
use crate::constructions::groth::{grothendieck, GrothFibration, PshCat};
use crate::fibration::{is_split, Fibration};
use crate::fincat::{FinCat, FinFunctor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeakSplitError {
    #[error("the chosen object is not generic; object {witness} has no cartesian morphism into it")]
    NotGeneric { witness: usize },
    #[error("no cartesian lift of base morphism {base_mor} at the candidate")]
    MissingLift { base_mor: usize },
}

/// What the comparison functor verifies, fiberwise and on cartesian
/// structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EquivalenceVerdict {
    pub split: bool,
    pub split_generic: bool,
    pub fiberwise_essentially_surjective: bool,
    pub fully_faithful: bool,
    pub preserves_cartesian: bool,
}

impl EquivalenceVerdict {
    pub fn holds(&self) -> bool {
        self.split
            && self.split_generic
            && self.fiberwise_essentially_surjective
            && self.fully_faithful
            && self.preserves_cartesian
    }
}

/// The split fibration generated by a generic object, with its distinguished
/// split generic object and the comparison functor into the original total
/// category.
#[derive(Debug, Clone)]
pub struct SplitFromWeak {
    pub psh: PshCat,
    pub groth: GrothFibration,
    /// The pair of the base object under the generic object and its
    /// identity.
    pub t_prime: usize,
    pub comparison: FinFunctor,
    pub verdict: EquivalenceVerdict,
}

/// Builds the presheaf whose fiber at `I` has objects the base morphisms
/// `I → p(t)` and morphisms the verticals between the chosen (least-index)
/// cartesian lifts; hom-classes of spans into `t` collapse onto these
/// representatives along the unique vertical comparisons.
pub fn split_from_weak(fib: &Fibration, t: usize) -> Result<SplitFromWeak, WeakSplitError> {
    let generic = is_generic(fib, t);
    if let Some(crate::classify::predicates::Witness::NoCartesianToCandidate { object }) =
        generic.witness
    {
        return Err(WeakSplitError::NotGeneric { witness: object });
    }
    let total = fib.total();
    let base = fib.base();
    let pt = fib.functor().on_obj(t);

    // Chosen cartesian lift into t per base morphism into p(t).
    let mut lift0: HashMap<usize, usize> = HashMap::new();
    for i in base.objects() {
        for &alpha in base.hom(i, pt) {
            let alpha = alpha as usize;
            let m = *fib
                .cartesian_lifts(alpha, t)
                .first()
                .ok_or(WeakSplitError::MissingLift { base_mor: alpha })?;
            lift0.insert(alpha, m as usize);
        }
    }
    let dom_of = |alpha: usize| total.src(lift0[&alpha]);

    // The connecting morphism X_{α∘u} → X_α over u: the unique factorization
    // of the chosen lift of α∘u through the chosen lift of α.
    let connect = |u: usize, alpha: usize| -> usize {
        let au = base.comp2(alpha, u);
        let target = lift0[&au];
        let through = lift0[&alpha];
        let mut found = None;
        for &m in total.hom(dom_of(au), dom_of(alpha)) {
            let m = m as usize;
            if fib.functor().on_mor(m) == u && total.comp2(through, m) == target {
                debug_assert!(found.is_none());
                found = Some(m);
            }
        }
        found.expect("cartesian lift factors uniquely")
    };

    // Fibers: objects are morphisms into p(t); morphisms are verticals
    // between chosen lift domains, tagged with their endpoints.
    let mut fibers = Vec::with_capacity(base.n_objects());
    let mut fiber_mors: Vec<Vec<(usize, usize, usize)>> = Vec::new();
    let mut fiber_mor_pos: Vec<HashMap<(usize, usize, usize), usize>> = Vec::new();
    let mut fiber_objs: Vec<Vec<usize>> = Vec::new();
    for i in base.objects() {
        let objs: Vec<usize> = base.hom(i, pt).iter().map(|&a| a as usize).collect();
        let mut mors = Vec::new();
        for (a_pos, &alpha) in objs.iter().enumerate() {
            for (b_pos, &beta) in objs.iter().enumerate() {
                for &h in total.hom(dom_of(alpha), dom_of(beta)) {
                    let h = h as usize;
                    if fib.is_vertical(h) {
                        mors.push((a_pos, b_pos, h));
                    }
                }
            }
        }
        let pos: HashMap<(usize, usize, usize), usize> =
            mors.iter().enumerate().map(|(k, &m)| (m, k)).collect();
        let n = mors.len();
        let mut comp = vec![u32::MAX; n * n];
        for (gi, &(gb, gc, k)) in mors.iter().enumerate() {
            for (fi, &(fa, fb, h)) in mors.iter().enumerate() {
                if fb == gb {
                    comp[gi * n + fi] = pos[&(fa, gc, total.comp2(k, h))] as u32;
                }
            }
        }
        fibers.push(Arc::new(FinCat::from_parts_trusted(
            objs.len(),
            mors.iter().map(|m| m.0 as u32).collect(),
            mors.iter().map(|m| m.1 as u32).collect(),
            objs.iter()
                .enumerate()
                .map(|(a_pos, &alpha)| pos[&(a_pos, a_pos, total.id_of(dom_of(alpha)))] as u32)
                .collect(),
            comp,
        )));
        fiber_mors.push(mors);
        fiber_mor_pos.push(pos);
        fiber_objs.push(objs);
    }

    // Reindexing along u: precomposition on objects, transport along the
    // connecting morphisms on verticals.
    let mut reindex_obj = Vec::with_capacity(base.n_morphisms());
    let mut reindex_mor = Vec::with_capacity(base.n_morphisms());
    for u in base.morphisms() {
        let (j, i) = (base.src(u), base.tgt(u));
        let obj_map: Vec<usize> = fiber_objs[i]
            .iter()
            .map(|&alpha| {
                let au = base.comp2(alpha, u);
                fiber_objs[j]
                    .iter()
                    .position(|&b| b == au)
                    .expect("composite is a morphism into p(t)")
            })
            .collect();
        let mor_map: Vec<usize> = fiber_mors[i]
            .iter()
            .map(|&(a_pos, b_pos, h)| {
                let alpha = fiber_objs[i][a_pos];
                let beta = fiber_objs[i][b_pos];
                let ka = connect(u, alpha);
                let kb = connect(u, beta);
                let rhs = total.comp2(h, ka);
                let au_dom = dom_of(base.comp2(alpha, u));
                let bu_dom = dom_of(base.comp2(beta, u));
                let mut found = None;
                for &w in total.hom(au_dom, bu_dom) {
                    let w = w as usize;
                    if fib.is_vertical(w) && total.comp2(kb, w) == rhs {
                        debug_assert!(found.is_none());
                        found = Some(w);
                    }
                }
                let w = found.expect("vertical transport exists");
                fiber_mor_pos[j][&(obj_map[a_pos], obj_map[b_pos], w)]
            })
            .collect();
        reindex_obj.push(obj_map);
        reindex_mor.push(mor_map);
    }
    let psh = PshCat {
        base: base.clone(),
        fibers,
        reindex_obj,
        reindex_mor,
    };
    let groth = grothendieck(&psh);

    let id_pt_pos = fiber_objs[pt]
        .iter()
        .position(|&a| a == base.id_of(pt))
        .expect("identity of p(t) is a fiber object");
    let t_prime = groth.object_of(pt, id_pt_pos);

    // Comparison functor: (I, α) ↦ X_α; (u, φ) ↦ connect(u, β) ∘ φ.
    let obj_map: Vec<usize> = groth
        .objects
        .iter()
        .map(|&(i, a_pos)| dom_of(fiber_objs[i][a_pos]))
        .collect();
    let mor_map: Vec<usize> = groth
        .mors
        .iter()
        .enumerate()
        .map(|(m, &(u, phi))| {
            let src_total = groth.fib.total().src(m);
            let (j, _) = groth.objects[src_total];
            let tgt_total = groth.fib.total().tgt(m);
            let (i, d_pos) = groth.objects[tgt_total];
            let beta = fiber_objs[i][d_pos];
            let (_, _, h) = fiber_mors[j][phi];
            total.comp2(connect(u, beta), h)
        })
        .collect();
    let comparison = FinFunctor::validate(
        groth.fib.total().clone(),
        total.clone(),
        obj_map.clone(),
        mor_map.clone(),
    )
    .expect("comparison assignment is functorial");

    let split = is_split(&groth.fib, &groth.canonical).is_ok();
    let split_generic = split_generic_unchecked(&groth.fib, &groth.canonical, t_prime).holds;
    let fiberwise_essentially_surjective = total.objects().all(|y| {
        let i = fib.functor().on_obj(y);
        fiber_objs[i].iter().any(|&alpha| {
            total
                .hom(dom_of(alpha), y)
                .iter()
                .any(|&v| fib.is_vertical(v as usize) && total.is_iso(v as usize))
        })
    });
    let fully_faithful = groth.fib.total().objects().all(|a| {
        groth.fib.total().objects().all(|b| {
            let upstairs = groth.fib.total().hom(a, b);
            let mut images: Vec<usize> = upstairs.iter().map(|&m| mor_map[m as usize]).collect();
            images.sort_unstable();
            images.dedup();
            images.len() == upstairs.len()
                && images.len() == total.hom(obj_map[a], obj_map[b]).len()
        })
    });
    let preserves_cartesian = groth
        .fib
        .total()
        .morphisms()
        .all(|m| !groth.fib.is_cartesian(m) || fib.is_cartesian(mor_map[m]));
    let verdict = EquivalenceVerdict {
        split,
        split_generic,
        fiberwise_essentially_surjective,
        fully_faithful,
        preserves_cartesian,
    };
    Ok(SplitFromWeak {
        psh,
        groth,
        t_prime,
        comparison,
        verdict,
    })
}
