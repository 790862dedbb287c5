//! Cartesian-morphism analysis over a functor: fibration verification,
//! fibers, cleavages and splittings, and base-category structure (monos,
//! epis, pullbacks).

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::fincat::{FinCat, FinFunctor};

/// Cartesian-structure analysis of a functor `p: E → B`.
///
/// Construction decides, exhaustively, which morphisms of the total category
/// are cartesian and tabulates the cartesian lifts of every pair of a base
/// morphism `u` and a total object over its target. The table may have empty
/// entries; [`Fibration::lift_failure`] reports whether the functor is an
/// actual fibration.
#[derive(Debug, Clone)]
pub struct Fibration {
    p: FinFunctor,
    cartesian: Vec<bool>,
    /// Entry `u * n_obj_total + x`: cartesian morphisms into `x` over `u`.
    lifts: Vec<Vec<u32>>,
    lift_failure: Option<(usize, usize)>,
}

impl Fibration {
    pub fn analyze(p: FinFunctor) -> Fibration {
        let total = p.dom().clone();
        let base = p.cod().clone();
        let n_obj = total.n_objects();

        // hom_E(h, x) grouped by base image, per object pair.
        let mut by_base: Vec<BTreeMap<u32, Vec<u32>>> = vec![BTreeMap::new(); n_obj * n_obj];
        for m in total.morphisms() {
            by_base[total.src(m) * n_obj + total.tgt(m)]
                .entry(p.on_mor(m) as u32)
                .or_default()
                .push(m as u32);
        }

        let cartesian: Vec<bool> = total
            .morphisms()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&f| is_cartesian_raw(&total, &base, &p, &by_base, f))
            .collect();

        let mut lifts = vec![Vec::new(); base.n_morphisms() * n_obj];
        for m in total.morphisms() {
            if cartesian[m] {
                lifts[p.on_mor(m) * n_obj + total.tgt(m)].push(m as u32);
            }
        }

        let mut lift_failure = None;
        'scan: for u in base.morphisms() {
            for x in total.objects() {
                if p.on_obj(x) == base.tgt(u) && lifts[u * n_obj + x].is_empty() {
                    lift_failure = Some((u, x));
                    break 'scan;
                }
            }
        }

        Fibration {
            p,
            cartesian,
            lifts,
            lift_failure,
        }
    }

    pub fn functor(&self) -> &FinFunctor {
        &self.p
    }

    pub fn total(&self) -> &Arc<FinCat> {
        self.p.dom()
    }

    pub fn base(&self) -> &Arc<FinCat> {
        self.p.cod()
    }

    pub fn is_cartesian(&self, m: usize) -> bool {
        self.cartesian[m]
    }

    /// Cartesian morphisms into `x` lying over `u`, ascending.
    pub fn cartesian_lifts(&self, u: usize, x: usize) -> &[u32] {
        &self.lifts[u * self.total().n_objects() + x]
    }

    /// `None` when every `(u, x)` has a cartesian lift; otherwise the first
    /// failing pair.
    pub fn lift_failure(&self) -> Option<(usize, usize)> {
        self.lift_failure
    }

    pub fn is_total_fibration(&self) -> bool {
        self.lift_failure.is_none()
    }

    /// Morphisms over an identity of the base.
    pub fn is_vertical(&self, m: usize) -> bool {
        self.base().is_identity(self.p.on_mor(m))
    }
}

/// Why a morphism fails to be cartesian: the competitor `h: H → cod(f)` over
/// `p(f) ∘ g` does not factor uniquely through `f` over `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartesianFailure {
    pub h: usize,
    pub g: usize,
    pub n_factorizations: usize,
}

/// Decides cartesianness of one morphism, with a counterexample on failure.
pub fn cartesian_witness(fib: &Fibration, f: usize) -> Result<(), CartesianFailure> {
    let total = fib.total();
    let base = fib.base();
    let p = fib.functor();
    let (x, y) = (total.src(f), total.tgt(f));
    for h_obj in total.objects() {
        for &g in base.hom(p.on_obj(h_obj), p.on_obj(x)) {
            let g = g as usize;
            let w = base.comp2(p.on_mor(f), g);
            for &h in total.hom(h_obj, y) {
                let h = h as usize;
                if p.on_mor(h) != w {
                    continue;
                }
                let n = total
                    .hom(h_obj, x)
                    .iter()
                    .filter(|&&l| {
                        p.on_mor(l as usize) == g && total.comp2(f, l as usize) == h
                    })
                    .count();
                if n != 1 {
                    return Err(CartesianFailure {
                        h,
                        g,
                        n_factorizations: n,
                    });
                }
            }
        }
    }
    Ok(())
}

fn is_cartesian_raw(
    total: &FinCat,
    base: &FinCat,
    p: &FinFunctor,
    by_base: &[BTreeMap<u32, Vec<u32>>],
    f: usize,
) -> bool {
    let n_obj = total.n_objects();
    let (x, y) = (total.src(f), total.tgt(f));
    let pf = p.on_mor(f);
    let mut seen: Vec<u32> = Vec::new();
    for h_obj in total.objects() {
        let into_x = &by_base[h_obj * n_obj + x];
        let into_y = &by_base[h_obj * n_obj + y];
        for &g in base.hom(p.on_obj(h_obj), p.on_obj(x)) {
            let w = base.comp2(pf, g as usize) as u32;
            let lifts = into_x.get(&g).map(Vec::as_slice).unwrap_or(&[]);
            let targets = into_y.get(&w).map(Vec::as_slice).unwrap_or(&[]);
            if lifts.len() != targets.len() {
                return false;
            }
            // l ↦ f∘l must be injective into the targets over w; equal counts
            // then force a bijection.
            seen.clear();
            for &l in lifts {
                seen.push(total.comp2(f, l as usize) as u32);
            }
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
        }
    }
    true
}

/// The fiber of `p` over base object `i`: total objects over `i` and
/// morphisms over its identity, with the inclusion functor.
pub fn fiber(p: &FinFunctor, i: usize) -> (Arc<FinCat>, FinFunctor) {
    let total = p.dom();
    let objects: Vec<usize> = total.objects().filter(|&x| p.on_obj(x) == i).collect();
    let id_i = p.cod().id_of(i);
    let morphisms: Vec<usize> = total
        .morphisms()
        .filter(|&m| p.on_mor(m) == id_i)
        .collect();
    let obj_back: BTreeMap<usize, usize> =
        objects.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let mor_back: BTreeMap<usize, usize> =
        morphisms.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let n = morphisms.len();
    let mut comp = vec![u32::MAX; n * n];
    for (gi, &g) in morphisms.iter().enumerate() {
        for (fi, &f) in morphisms.iter().enumerate() {
            if let Some(gf) = total.comp(g, f) {
                comp[gi * n + fi] = mor_back[&gf] as u32;
            }
        }
    }
    let cat = Arc::new(FinCat::from_parts_trusted(
        objects.len(),
        morphisms.iter().map(|&m| obj_back[&total.src(m)] as u32).collect(),
        morphisms.iter().map(|&m| obj_back[&total.tgt(m)] as u32).collect(),
        objects.iter().map(|&x| mor_back[&total.id_of(x)] as u32).collect(),
        comp,
    ));
    let incl = FinFunctor::from_parts_trusted(cat.clone(), total.clone(), objects, morphisms);
    (cat, incl)
}

// ---------------------------------------------------------------------------
// Base-category structure: monos, epis, pullbacks.
// ---------------------------------------------------------------------------

/// Per-morphism structural flags, each decided by enumeration.
#[derive(Debug, Clone)]
pub struct MorClassification {
    pub mono: Vec<bool>,
    pub epi: Vec<bool>,
    pub split_epi: Vec<bool>,
    pub regular_epi: Vec<bool>,
    pub iso: Vec<bool>,
}

pub fn monos(cat: &FinCat) -> Vec<bool> {
    cat.morphisms()
        .map(|f| {
            let x = cat.src(f);
            cat.objects().all(|w| {
                let hs = cat.hom(w, x);
                hs.iter().enumerate().all(|(i, &a)| {
                    hs[i + 1..]
                        .iter()
                        .all(|&b| cat.comp2(f, a as usize) != cat.comp2(f, b as usize))
                })
            })
        })
        .collect()
}

pub fn epis(cat: &FinCat) -> Vec<bool> {
    cat.morphisms()
        .map(|f| {
            let y = cat.tgt(f);
            cat.objects().all(|w| {
                let hs = cat.hom(y, w);
                hs.iter().enumerate().all(|(i, &a)| {
                    hs[i + 1..]
                        .iter()
                        .all(|&b| cat.comp2(a as usize, f) != cat.comp2(b as usize, f))
                })
            })
        })
        .collect()
}

pub fn split_epis(cat: &FinCat) -> Vec<bool> {
    cat.morphisms()
        .map(|f| {
            let idy = cat.id_of(cat.tgt(f));
            cat.hom(cat.tgt(f), cat.src(f))
                .iter()
                .any(|&s| cat.comp2(f, s as usize) == idy)
        })
        .collect()
}

pub fn isos(cat: &FinCat) -> Vec<bool> {
    cat.morphisms().map(|m| cat.is_iso(m)).collect()
}

/// A pullback cone over a cospan `f: X → Z ← Y :g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PullbackCone {
    pub apex: usize,
    /// Projection `apex → X`.
    pub to_x: usize,
    /// Projection `apex → Y`.
    pub to_y: usize,
}

/// All commuting cones over a cospan, in (apex, to_x, to_y) order.
pub(crate) fn cones_over(cat: &FinCat, f: usize, g: usize) -> Vec<PullbackCone> {
    let x = cat.src(f);
    let y = cat.src(g);
    let mut cones = Vec::new();
    for w in cat.objects() {
        for &p in cat.hom(w, x) {
            let fp = cat.comp2(f, p as usize);
            for &q in cat.hom(w, y) {
                if fp == cat.comp2(g, q as usize) {
                    cones.push(PullbackCone {
                        apex: w,
                        to_x: p as usize,
                        to_y: q as usize,
                    });
                }
            }
        }
    }
    cones
}

/// Checks the universal property of a given cone by enumeration.
pub fn is_pullback_cone(cat: &FinCat, f: usize, g: usize, cone: &PullbackCone) -> bool {
    debug_assert_eq!(cat.tgt(f), cat.tgt(g));
    if cat.tgt(cone.to_x) != cat.src(f)
        || cat.tgt(cone.to_y) != cat.src(g)
        || cat.src(cone.to_x) != cone.apex
        || cat.src(cone.to_y) != cone.apex
        || cat.comp2(f, cone.to_x) != cat.comp2(g, cone.to_y)
    {
        return false;
    }
    cone_is_universal(cat, cone, &cones_over(cat, f, g))
}

pub(crate) fn cone_is_universal(cat: &FinCat, cone: &PullbackCone, cones: &[PullbackCone]) -> bool {
    cones.iter().all(|other| {
        let n = cat
            .hom(other.apex, cone.apex)
            .iter()
            .filter(|&&m| {
                cat.comp2(cone.to_x, m as usize) == other.to_x
                    && cat.comp2(cone.to_y, m as usize) == other.to_y
            })
            .count();
        n == 1
    })
}

/// Searches for a pullback of the cospan `f: X → Z ← Y :g`, returning the
/// first universal cone in (apex, to_x, to_y) order, or `None`.
pub fn pullback(cat: &FinCat, f: usize, g: usize) -> Option<PullbackCone> {
    assert_eq!(cat.tgt(f), cat.tgt(g), "not a cospan");
    let cones = cones_over(cat, f, g);
    cones
        .iter()
        .find(|cone| cone_is_universal(cat, cone, &cones))
        .copied()
}

/// `e` coequalizes `(a, b)` and is universal among morphisms doing so.
fn is_coequalizer_of(cat: &FinCat, e: usize, a: usize, b: usize) -> bool {
    if cat.comp2(e, a) != cat.comp2(e, b) {
        return false;
    }
    let x = cat.src(e);
    let y = cat.tgt(e);
    cat.objects().all(|z| {
        cat.hom(x, z)
            .iter()
            .filter(|&&q| cat.comp2(q as usize, a) == cat.comp2(q as usize, b))
            .all(|&q| {
                cat.hom(y, z)
                    .iter()
                    .filter(|&&m| cat.comp2(m as usize, e) == q as usize)
                    .count()
                    == 1
            })
    })
}

/// Regular epimorphisms: coequalizers of their kernel pair when it exists,
/// otherwise of some parallel pair found by enumeration.
pub fn regular_epis(cat: &FinCat) -> Vec<bool> {
    let epi = epis(cat);
    cat.morphisms()
        .map(|f| {
            if !epi[f] {
                return false;
            }
            if let Some(kp) = pullback(cat, f, f) {
                return is_coequalizer_of(cat, f, kp.to_x, kp.to_y);
            }
            let x = cat.src(f);
            cat.objects().any(|w| {
                let hs = cat.hom(w, x);
                hs.iter().any(|&a| {
                    hs.iter()
                        .any(|&b| is_coequalizer_of(cat, f, a as usize, b as usize))
                })
            })
        })
        .collect()
}

pub fn mono_epi_analysis(cat: &FinCat) -> MorClassification {
    MorClassification {
        mono: monos(cat),
        epi: epis(cat),
        split_epi: split_epis(cat),
        regular_epi: regular_epis(cat),
        iso: isos(cat),
    }
}

/// A designated class of monomorphisms in a base category.
#[derive(Debug, Clone)]
pub struct MonoClass {
    pub members: Vec<bool>,
}

impl MonoClass {
    /// Every monomorphism of the base.
    pub fn all_monos(base: &FinCat) -> MonoClass {
        MonoClass {
            members: monos(base),
        }
    }

    /// A custom subclass; every member must be a monomorphism.
    pub fn from_members(base: &FinCat, members: &[usize]) -> Result<MonoClass, usize> {
        let mono = monos(base);
        let mut flags = vec![false; base.n_morphisms()];
        for &m in members {
            if !mono[m] {
                return Err(m);
            }
            flags[m] = true;
        }
        Ok(MonoClass { members: flags })
    }

    pub fn contains(&self, m: usize) -> bool {
        self.members[m]
    }
}

/// A designated class of covers in a base category.
#[derive(Debug, Clone)]
pub struct CoverClass {
    pub members: Vec<bool>,
}

impl CoverClass {
    pub fn regular_epis(base: &FinCat) -> CoverClass {
        CoverClass {
            members: regular_epis(base),
        }
    }

    pub fn all_epis(base: &FinCat) -> CoverClass {
        CoverClass {
            members: epis(base),
        }
    }

    pub fn contains(&self, m: usize) -> bool {
        self.members[m]
    }

    pub fn contains_identities(&self, base: &FinCat) -> bool {
        base.objects().all(|o| self.members[base.id_of(o)])
    }
}

/// Cartesian with a covering base image.
pub fn is_cover_cartesian(fib: &Fibration, covers: &CoverClass, m: usize) -> bool {
    fib.is_cartesian(m) && covers.contains(fib.functor().on_mor(m))
}

// ---------------------------------------------------------------------------
// Cleavages and splittings.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CleavageError {
    #[error("no cartesian lift of base morphism {u} at object {x}")]
    NoLift { u: usize, x: usize },
    #[error("chosen morphism for ({u}, {x}) is not a cartesian lift")]
    InvalidChoice { u: usize, x: usize },
}

/// A choice of one cartesian lift per (base morphism, object over its
/// target).
#[derive(Debug, Clone)]
pub struct Cleavage {
    /// Entry `u * n_obj_total + x`; `u32::MAX` where `x` is not over `tgt u`.
    choice: Vec<u32>,
}

impl Cleavage {
    /// Selects the least-index cartesian lift everywhere.
    pub fn least_index(fib: &Fibration) -> Result<Cleavage, CleavageError> {
        let n_obj = fib.total().n_objects();
        let mut choice = vec![u32::MAX; fib.base().n_morphisms() * n_obj];
        for u in fib.base().morphisms() {
            for x in fib.total().objects() {
                if fib.functor().on_obj(x) != fib.base().tgt(u) {
                    continue;
                }
                let lifts = fib.cartesian_lifts(u, x);
                match lifts.first() {
                    Some(&m) => choice[u * n_obj + x] = m,
                    None => return Err(CleavageError::NoLift { u, x }),
                }
            }
        }
        Ok(Cleavage { choice })
    }

    /// Replaces chosen entries, rejecting any that are not cartesian lifts.
    pub fn with_choices(
        mut self,
        fib: &Fibration,
        table: &BTreeMap<(usize, usize), usize>,
    ) -> Result<Cleavage, CleavageError> {
        let n_obj = fib.total().n_objects();
        for (&(u, x), &m) in table {
            if !fib.cartesian_lifts(u, x).contains(&(m as u32)) {
                return Err(CleavageError::InvalidChoice { u, x });
            }
            self.choice[u * n_obj + x] = m as u32;
        }
        Ok(self)
    }

    pub(crate) fn from_choice_trusted(choice: Vec<u32>) -> Cleavage {
        Cleavage { choice }
    }

    /// The chosen cartesian lift of `u` at `x`.
    pub fn lift(&self, fib: &Fibration, u: usize, x: usize) -> usize {
        let m = self.choice[u * fib.total().n_objects() + x];
        debug_assert_ne!(m, u32::MAX);
        m as usize
    }

    /// The reindexing of object `x` along `u`.
    pub fn reindex_obj(&self, fib: &Fibration, u: usize, x: usize) -> usize {
        fib.total().src(self.lift(fib, u, x))
    }

    /// The reindexing of a vertical morphism `v: x → x'` (over `tgt u`) along
    /// `u`: the unique vertical `w` with `lift(u,x') ∘ w = v ∘ lift(u,x)`.
    pub fn reindex_vertical(&self, fib: &Fibration, u: usize, v: usize) -> usize {
        let total = fib.total();
        let lx = self.lift(fib, u, total.src(v));
        let lx2 = self.lift(fib, u, total.tgt(v));
        let rhs = total.comp2(v, lx);
        let a = total.src(lx);
        let b = total.src(lx2);
        let id_base = fib.base().id_of(fib.base().src(u));
        let mut found = None;
        for &w in total.hom(a, b) {
            let w = w as usize;
            if fib.functor().on_mor(w) == id_base && total.comp2(lx2, w) == rhs {
                debug_assert!(found.is_none(), "cartesian factorization not unique");
                found = Some(w);
            }
        }
        found.expect("cartesian lift admits a factorization")
    }
}

/// Why a cleavage fails to be split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitViolation {
    /// The chosen lift of an identity is not the identity.
    IdentityChoice { x: usize },
    /// Reindexing along `v∘u` disagrees with reindexing in two steps on the
    /// object `x`.
    ObjectComposite { u: usize, v: usize, x: usize },
    /// Reindexing functors disagree on a vertical morphism.
    MorphismComposite { u: usize, v: usize, vertical: usize },
}

/// Checks strict functoriality of the reindexing assignment.
pub fn is_split(fib: &Fibration, cl: &Cleavage) -> Result<(), SplitViolation> {
    let total = fib.total();
    let base = fib.base();
    for x in total.objects() {
        let idb = base.id_of(fib.functor().on_obj(x));
        if cl.lift(fib, idb, x) != total.id_of(x) {
            return Err(SplitViolation::IdentityChoice { x });
        }
    }
    // Objects and verticals grouped by the base object they live over.
    let mut objects_over: Vec<Vec<usize>> = vec![Vec::new(); base.n_objects()];
    for x in total.objects() {
        objects_over[fib.functor().on_obj(x)].push(x);
    }
    let mut verticals_over: Vec<Vec<usize>> = vec![Vec::new(); base.n_objects()];
    for m in total.morphisms() {
        if fib.is_vertical(m) {
            verticals_over[fib.functor().on_obj(total.src(m))].push(m);
        }
    }
    // Tabulate each reindexing functor once.
    let reobj: Vec<BTreeMap<usize, usize>> = base
        .morphisms()
        .map(|u| {
            objects_over[base.tgt(u)]
                .iter()
                .map(|&x| (x, cl.reindex_obj(fib, u, x)))
                .collect()
        })
        .collect();
    let remor: Vec<BTreeMap<usize, usize>> = base
        .morphisms()
        .map(|u| {
            verticals_over[base.tgt(u)]
                .iter()
                .map(|&m| (m, cl.reindex_vertical(fib, u, m)))
                .collect()
        })
        .collect();
    // All composable base pairs u: I → J, v: J → K against data over K.
    for v in base.morphisms() {
        for u in base.morphisms() {
            if base.tgt(u) != base.src(v) {
                continue;
            }
            let vu = base.comp2(v, u);
            for &x in &objects_over[base.tgt(v)] {
                if reobj[u][&reobj[v][&x]] != reobj[vu][&x] {
                    return Err(SplitViolation::ObjectComposite { u, v, x });
                }
            }
            for &m in &verticals_over[base.tgt(v)] {
                if remor[u][&remor[v][&m]] != remor[vu][&m] {
                    return Err(SplitViolation::MorphismComposite { u, v, vertical: m });
                }
            }
        }
    }
    Ok(())
}
