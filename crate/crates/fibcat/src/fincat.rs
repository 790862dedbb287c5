//! Finite category and functor presentations.
//!
//! A [`FinCat`] is a fully tabulated category: objects and morphisms are
//! contiguous index ranges, sources/targets/identities are arrays, and
//! composition is a dense partial table. Everything downstream (cartesian
//! morphisms, fibrations, generic objects) is decided by exhaustive
//! quantification over these tables, so validation here is complete: a value
//! of [`FinCat`] satisfies every unit and associativity instance.

use std::sync::Arc;

use thiserror::Error;

/// Sentinel for an undefined entry in the dense composition table.
const UNDEFINED: u32 = u32::MAX;

/// A raw category presentation, prior to validation.
///
/// `comp[g][f]` is the composite `g ∘ f` (apply `f` first), defined exactly
/// when `tgt(f) = src(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCategory {
    pub n_objects: usize,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub identities: Vec<usize>,
    pub comp: Vec<Vec<Option<usize>>>,
}

/// A violation of the category axioms, naming the offending indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("{what} index {index} out of range (bound {bound})")]
    BadIndex {
        what: &'static str,
        index: usize,
        bound: usize,
    },
    /// The identity assigned to `object` is malformed or fails a unit law at
    /// `morphism`.
    #[error("identity of object {object} fails at morphism {morphism}")]
    MissingIdentity { object: usize, morphism: usize },
    /// `comp[g][f]` is defined on a non-composable pair, undefined on a
    /// composable one, or has the wrong source/target.
    #[error("composition table malformed at g={g}, f={f}")]
    BadCompositionDomain { g: usize, f: usize },
    #[error("associativity fails on the triple h={h}, g={g}, f={f}")]
    NonAssociative { h: usize, g: usize, f: usize },
}

/// A validated finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    n_obj: usize,
    src: Vec<u32>,
    tgt: Vec<u32>,
    id_of: Vec<u32>,
    /// Dense row-major table: entry `g * n_mor + f` is `g ∘ f`.
    comp: Vec<u32>,
    /// Hom-set index: entry `a * n_obj + b` lists morphisms `a → b`, sorted.
    hom: Vec<Vec<u32>>,
}

impl FinCat {
    /// Validates a raw presentation, returning the first violated axiom on
    /// failure.
    pub fn validate(raw: &RawCategory) -> Result<FinCat, CategoryError> {
        let n_obj = raw.n_objects;
        let n_mor = raw.src.len();
        if raw.tgt.len() != n_mor {
            return Err(CategoryError::BadIndex {
                what: "tgt array length",
                index: raw.tgt.len(),
                bound: n_mor,
            });
        }
        if raw.identities.len() != n_obj {
            return Err(CategoryError::BadIndex {
                what: "identities array length",
                index: raw.identities.len(),
                bound: n_obj,
            });
        }
        for (what, v, bound) in [
            ("src object", &raw.src, n_obj),
            ("tgt object", &raw.tgt, n_obj),
            ("identity morphism", &raw.identities, n_mor),
        ] {
            for &x in v {
                if x >= bound {
                    return Err(CategoryError::BadIndex {
                        what,
                        index: x,
                        bound,
                    });
                }
            }
        }
        if raw.comp.len() != n_mor {
            return Err(CategoryError::BadIndex {
                what: "comp table rows",
                index: raw.comp.len(),
                bound: n_mor,
            });
        }
        for row in &raw.comp {
            if row.len() != n_mor {
                return Err(CategoryError::BadIndex {
                    what: "comp table row length",
                    index: row.len(),
                    bound: n_mor,
                });
            }
            for &e in row {
                if let Some(h) = e {
                    if h >= n_mor {
                        return Err(CategoryError::BadIndex {
                            what: "composite morphism",
                            index: h,
                            bound: n_mor,
                        });
                    }
                }
            }
        }

        // Identity endpoints.
        for o in 0..n_obj {
            let i = raw.identities[o];
            if raw.src[i] != o || raw.tgt[i] != o {
                return Err(CategoryError::MissingIdentity {
                    object: o,
                    morphism: i,
                });
            }
        }
        // Definedness and endpoints of composites.
        for g in 0..n_mor {
            for f in 0..n_mor {
                let composable = raw.tgt[f] == raw.src[g];
                match raw.comp[g][f] {
                    Some(h) => {
                        if !composable || raw.src[h] != raw.src[f] || raw.tgt[h] != raw.tgt[g] {
                            return Err(CategoryError::BadCompositionDomain { g, f });
                        }
                    }
                    None => {
                        if composable {
                            return Err(CategoryError::BadCompositionDomain { g, f });
                        }
                    }
                }
            }
        }
        // Unit laws.
        for f in 0..n_mor {
            let lid = raw.identities[raw.tgt[f]];
            let rid = raw.identities[raw.src[f]];
            if raw.comp[lid][f] != Some(f) {
                return Err(CategoryError::MissingIdentity {
                    object: raw.tgt[f],
                    morphism: f,
                });
            }
            if raw.comp[f][rid] != Some(f) {
                return Err(CategoryError::MissingIdentity {
                    object: raw.src[f],
                    morphism: f,
                });
            }
        }
        // Associativity on all composable triples.
        for f in 0..n_mor {
            for g in 0..n_mor {
                let Some(gf) = raw.comp[g][f] else { continue };
                for h in 0..n_mor {
                    if raw.src[h] != raw.tgt[g] {
                        continue;
                    }
                    let hg = raw.comp[h][g].expect("definedness already checked");
                    if raw.comp[h][gf] != raw.comp[hg][f] {
                        return Err(CategoryError::NonAssociative { h, g, f });
                    }
                }
            }
        }

        let comp = {
            let mut t = vec![UNDEFINED; n_mor * n_mor];
            for g in 0..n_mor {
                for f in 0..n_mor {
                    if let Some(h) = raw.comp[g][f] {
                        t[g * n_mor + f] = h as u32;
                    }
                }
            }
            t
        };
        Ok(FinCat::assemble(
            n_obj,
            raw.src.iter().map(|&x| x as u32).collect(),
            raw.tgt.iter().map(|&x| x as u32).collect(),
            raw.identities.iter().map(|&x| x as u32).collect(),
            comp,
        ))
    }

    /// Assembles a category from parts already known to satisfy the axioms.
    /// Builders use this; file input goes through [`FinCat::validate`].
    pub(crate) fn from_parts_trusted(
        n_obj: usize,
        src: Vec<u32>,
        tgt: Vec<u32>,
        id_of: Vec<u32>,
        comp: Vec<u32>,
    ) -> FinCat {
        debug_assert_eq!(src.len(), tgt.len());
        debug_assert_eq!(comp.len(), src.len() * src.len());
        FinCat::assemble(n_obj, src, tgt, id_of, comp)
    }

    fn assemble(n_obj: usize, src: Vec<u32>, tgt: Vec<u32>, id_of: Vec<u32>, comp: Vec<u32>) -> FinCat {
        assert!(src.len() < u32::MAX as usize, "morphism count overflow");
        let mut hom = vec![Vec::new(); n_obj * n_obj];
        for m in 0..src.len() {
            hom[src[m] as usize * n_obj + tgt[m] as usize].push(m as u32);
        }
        FinCat {
            n_obj,
            src,
            tgt,
            id_of,
            comp,
            hom,
        }
    }

    pub fn n_objects(&self) -> usize {
        self.n_obj
    }

    pub fn n_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.n_obj
    }

    pub fn morphisms(&self) -> std::ops::Range<usize> {
        0..self.src.len()
    }

    pub fn src(&self, m: usize) -> usize {
        self.src[m] as usize
    }

    pub fn tgt(&self, m: usize) -> usize {
        self.tgt[m] as usize
    }

    pub fn id_of(&self, o: usize) -> usize {
        self.id_of[o] as usize
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.id_of[self.src[m] as usize] as usize == m
    }

    /// The composite `g ∘ f` (apply `f` first), if the pair is composable.
    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        let e = self.comp[g * self.src.len() + f];
        (e != UNDEFINED).then_some(e as usize)
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn comp2(&self, g: usize, f: usize) -> usize {
        let e = self.comp[g * self.src.len() + f];
        debug_assert_ne!(e, UNDEFINED, "non-composable pair g={g}, f={f}");
        e as usize
    }

    /// Morphisms `a → b`, ascending.
    pub fn hom(&self, a: usize, b: usize) -> &[u32] {
        &self.hom[a * self.n_obj + b]
    }

    /// A two-sided inverse of `m`, if one exists.
    pub fn inverse(&self, m: usize) -> Option<usize> {
        let (a, b) = (self.src(m), self.tgt(m));
        self.hom(b, a)
            .iter()
            .map(|&g| g as usize)
            .find(|&g| self.comp2(g, m) == self.id_of(a) && self.comp2(m, g) == self.id_of(b))
    }

    pub fn is_iso(&self, m: usize) -> bool {
        self.inverse(m).is_some()
    }

    pub fn to_raw(&self) -> RawCategory {
        let n_mor = self.n_morphisms();
        RawCategory {
            n_objects: self.n_obj,
            src: self.src.iter().map(|&x| x as usize).collect(),
            tgt: self.tgt.iter().map(|&x| x as usize).collect(),
            identities: self.id_of.iter().map(|&x| x as usize).collect(),
            comp: (0..n_mor)
                .map(|g| (0..n_mor).map(|f| self.comp(g, f)).collect())
                .collect(),
        }
    }
}

/// Validates a raw presentation and wraps it for sharing.
pub fn validate_category(raw: &RawCategory) -> Result<Arc<FinCat>, CategoryError> {
    FinCat::validate(raw).map(Arc::new)
}

/// A violation of functoriality, naming the offending indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("{what} index {index} out of range (bound {bound})")]
    BadIndex {
        what: &'static str,
        index: usize,
        bound: usize,
    },
    #[error("morphism {morphism} does not map to a morphism {src} -> {tgt}")]
    NotPreservingEndpoints {
        morphism: usize,
        src: usize,
        tgt: usize,
    },
    #[error("identity of object {0} is not preserved")]
    NotPreservingIdentity(usize),
    #[error("composite of g={g} and f={f} is not preserved")]
    NotPreservingComposite { g: usize, f: usize },
}

/// A validated functor between two [`FinCat`]s.
#[derive(Debug, Clone)]
pub struct FinFunctor {
    dom: Arc<FinCat>,
    cod: Arc<FinCat>,
    obj_map: Vec<u32>,
    mor_map: Vec<u32>,
}

impl FinFunctor {
    /// Validates an object/morphism assignment as a functor.
    pub fn validate(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<FinFunctor, FunctorError> {
        if obj_map.len() != dom.n_objects() {
            return Err(FunctorError::BadIndex {
                what: "object map length",
                index: obj_map.len(),
                bound: dom.n_objects(),
            });
        }
        if mor_map.len() != dom.n_morphisms() {
            return Err(FunctorError::BadIndex {
                what: "morphism map length",
                index: mor_map.len(),
                bound: dom.n_morphisms(),
            });
        }
        for &o in &obj_map {
            if o >= cod.n_objects() {
                return Err(FunctorError::BadIndex {
                    what: "object image",
                    index: o,
                    bound: cod.n_objects(),
                });
            }
        }
        for &m in &mor_map {
            if m >= cod.n_morphisms() {
                return Err(FunctorError::BadIndex {
                    what: "morphism image",
                    index: m,
                    bound: cod.n_morphisms(),
                });
            }
        }
        for m in dom.morphisms() {
            let fm = mor_map[m];
            if cod.src(fm) != obj_map[dom.src(m)] || cod.tgt(fm) != obj_map[dom.tgt(m)] {
                return Err(FunctorError::NotPreservingEndpoints {
                    morphism: m,
                    src: dom.src(m),
                    tgt: dom.tgt(m),
                });
            }
        }
        for o in dom.objects() {
            if mor_map[dom.id_of(o)] != cod.id_of(obj_map[o]) {
                return Err(FunctorError::NotPreservingIdentity(o));
            }
        }
        for g in dom.morphisms() {
            for f in dom.morphisms() {
                if let Some(gf) = dom.comp(g, f) {
                    if cod.comp(mor_map[g], mor_map[f]) != Some(mor_map[gf]) {
                        return Err(FunctorError::NotPreservingComposite { g, f });
                    }
                }
            }
        }
        Ok(FinFunctor::from_parts_trusted(dom, cod, obj_map, mor_map))
    }

    /// Wraps assignments already known to be functorial.
    pub(crate) fn from_parts_trusted(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> FinFunctor {
        FinFunctor {
            dom,
            cod,
            obj_map: obj_map.into_iter().map(|x| x as u32).collect(),
            mor_map: mor_map.into_iter().map(|x| x as u32).collect(),
        }
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        &self.cod
    }

    pub fn on_obj(&self, o: usize) -> usize {
        self.obj_map[o] as usize
    }

    pub fn on_mor(&self, m: usize) -> usize {
        self.mor_map[m] as usize
    }

    pub fn identity(cat: Arc<FinCat>) -> FinFunctor {
        let obj_map = (0..cat.n_objects()).collect();
        let mor_map = (0..cat.n_morphisms()).collect();
        FinFunctor::from_parts_trusted(cat.clone(), cat, obj_map, mor_map)
    }

    /// Re-runs the full functoriality check on this value.
    pub fn revalidate(&self) -> Result<(), FunctorError> {
        FinFunctor::validate(
            self.dom.clone(),
            self.cod.clone(),
            self.obj_map.iter().map(|&x| x as usize).collect(),
            self.mor_map.iter().map(|&x| x as usize).collect(),
        )
        .map(|_| ())
    }
}

/// Partition of objects into isomorphism classes, with witnesses.
#[derive(Debug, Clone)]
pub struct IsoClasses {
    /// Class index per object; classes are numbered by least member.
    pub class_of: Vec<usize>,
    /// Members of each class, ascending.
    pub classes: Vec<Vec<usize>>,
    /// For each ordered object pair `(a, b)`, an isomorphism `a → b` and its
    /// inverse, when one exists. Indexed `a * n_obj + b`.
    pub witness: Vec<Option<(usize, usize)>>,
}

impl IsoClasses {
    pub fn isomorphic(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }
}

/// Computes the isomorphism-class partition by exhaustive hom-set search.
pub fn iso_classes(cat: &FinCat) -> IsoClasses {
    let n = cat.n_objects();
    let mut witness = vec![None; n * n];
    for a in 0..n {
        for b in 0..n {
            witness[a * n + b] = cat
                .hom(a, b)
                .iter()
                .map(|&f| f as usize)
                .find_map(|f| cat.inverse(f).map(|g| (f, g)));
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let k = classes.len();
        let mut members = Vec::new();
        for b in a..n {
            if class_of[b] == usize::MAX && witness[a * n + b].is_some() {
                class_of[b] = k;
                members.push(b);
            }
        }
        classes.push(members);
    }
    IsoClasses {
        class_of,
        classes,
        witness,
    }
}

/// Structural flags of a category, each decided by exhaustive checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatFlags {
    /// Isomorphic objects are equal.
    pub skeletal: bool,
    /// Every automorphism is an identity.
    pub gaunt: bool,
    /// Every morphism is invertible.
    pub groupoid: bool,
    /// Every hom-set has at most one element.
    pub preorder: bool,
}

pub fn category_predicates(cat: &FinCat) -> CatFlags {
    let iso = iso_classes(cat);
    let n = cat.n_objects();
    let skeletal = (0..n).all(|a| (0..n).all(|b| a == b || iso.witness[a * n + b].is_none()));
    let gaunt = (0..n).all(|o| {
        cat.hom(o, o)
            .iter()
            .all(|&f| !cat.is_iso(f as usize) || cat.is_identity(f as usize))
    });
    let groupoid = cat.morphisms().all(|m| cat.is_iso(m));
    let preorder = (0..n).all(|a| (0..n).all(|b| cat.hom(a, b).len() <= 1));
    CatFlags {
        skeletal,
        gaunt,
        groupoid,
        preorder,
    }
}

/// A choice of representatives and comparison isomorphisms for the
/// isomorphism-class quotient.
///
/// Deterministic: the representative of a class is its least object, the
/// comparison iso is the least-index isomorphism into it, and representatives
/// are compared to themselves by their identity.
#[derive(Debug, Clone)]
pub struct SkeletonData {
    pub classes: IsoClasses,
    /// Representative object per class.
    pub section: Vec<usize>,
    /// Per object, an isomorphism `o → section(class_of(o))`.
    pub chosen_iso: Vec<usize>,
}

pub fn skeleton_data(cat: &FinCat) -> SkeletonData {
    let classes = iso_classes(cat);
    let n = cat.n_objects();
    let section: Vec<usize> = classes.classes.iter().map(|c| c[0]).collect();
    let chosen_iso = (0..n)
        .map(|o| {
            let rep = section[classes.class_of[o]];
            if o == rep {
                cat.id_of(o)
            } else {
                classes.witness[o * n + rep]
                    .expect("object is isomorphic to its representative")
                    .0
            }
        })
        .collect();
    SkeletonData {
        classes,
        section,
        chosen_iso,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn terminal_raw() -> RawCategory {
        RawCategory {
            n_objects: 1,
            src: vec![0],
            tgt: vec![0],
            identities: vec![0],
            comp: vec![vec![Some(0)]],
        }
    }

    // Objects a=0, b=1; morphisms id_a=0, id_b=1, f: a -> b = 2.
    pub(crate) fn walking_arrow_raw() -> RawCategory {
        RawCategory {
            n_objects: 2,
            src: vec![0, 1, 0],
            tgt: vec![0, 1, 1],
            identities: vec![0, 1],
            comp: vec![
                vec![Some(0), None, None],
                vec![None, Some(1), Some(2)],
                vec![Some(2), None, None],
            ],
        }
    }

    // One object, morphisms id=0 and f=1 with f∘f given by the argument.
    fn one_object_two_mor(ff: usize) -> RawCategory {
        RawCategory {
            n_objects: 1,
            src: vec![0, 0],
            tgt: vec![0, 0],
            identities: vec![0],
            comp: vec![vec![Some(0), Some(1)], vec![Some(1), Some(ff)]],
        }
    }

    // Objects 0, 1; f: 0 -> 1 = 2 and g: 1 -> 0 = 3 mutually inverse.
    pub(crate) fn walking_iso_raw() -> RawCategory {
        RawCategory {
            n_objects: 2,
            src: vec![0, 1, 0, 1],
            tgt: vec![0, 1, 1, 0],
            identities: vec![0, 1],
            comp: vec![
                vec![Some(0), None, None, Some(3)],
                vec![None, Some(1), Some(2), None],
                vec![Some(2), None, None, Some(1)],
                vec![None, Some(3), Some(0), None],
            ],
        }
    }

    #[test]
    fn terminal_category_is_valid() {
        let c = FinCat::validate(&terminal_raw()).unwrap();
        assert_eq!((c.n_objects(), c.n_morphisms()), (1, 1));
    }

    #[test]
    fn walking_arrow_is_valid() {
        let c = FinCat::validate(&walking_arrow_raw()).unwrap();
        assert_eq!((c.n_objects(), c.n_morphisms()), (2, 3));
        assert_eq!(c.comp(1, 2), Some(2));
        assert_eq!(c.comp(2, 2), None);
    }

    #[test]
    fn both_one_object_two_morphism_tables_are_categories() {
        // f∘f = id is the two-element group; f∘f = f is the idempotent monoid.
        assert!(FinCat::validate(&one_object_two_mor(0)).is_ok());
        assert!(FinCat::validate(&one_object_two_mor(1)).is_ok());
    }

    /// Independent oracle: enumerate every composition table on one object
    /// and two morphisms and count how many satisfy the axioms directly.
    #[test]
    fn exactly_two_one_object_two_morphism_categories() {
        let mut valid = 0;
        for id in 0..2usize {
            for &ff in &[0usize, 1] {
                // unit laws pin every entry except f∘f
                let entry = |g: usize, h: usize| {
                    if g == id {
                        h
                    } else if h == id {
                        g
                    } else {
                        ff
                    }
                };
                let assoc = (0..2).all(|a| {
                    (0..2).all(|b| (0..2).all(|c| entry(a, entry(b, c)) == entry(entry(a, b), c)))
                });
                if assoc {
                    valid += 1;
                }
            }
        }
        // Two tables per identity choice; relabelling identifies the choices.
        assert_eq!(valid / 2, 2);
    }

    #[test]
    fn broken_associativity_names_the_triple() {
        // Three parallel endomorphisms with a deliberately non-associative table.
        let raw = RawCategory {
            n_objects: 1,
            src: vec![0, 0, 0],
            tgt: vec![0, 0, 0],
            identities: vec![0],
            comp: vec![
                vec![Some(0), Some(1), Some(2)],
                vec![Some(1), Some(2), Some(1)],
                vec![Some(2), Some(1), Some(1)],
            ],
        };
        match FinCat::validate(&raw) {
            Err(CategoryError::NonAssociative { .. }) => {}
            other => panic!("expected NonAssociative, got {other:?}"),
        }
    }

    #[test]
    fn missing_identity_is_reported() {
        let mut raw = walking_arrow_raw();
        raw.comp[1][2] = None; // id_b ∘ f no longer defined
        match FinCat::validate(&raw) {
            Err(CategoryError::BadCompositionDomain { g: 1, f: 2 }) => {}
            other => panic!("expected BadCompositionDomain, got {other:?}"),
        }
        let mut raw = walking_arrow_raw();
        raw.identities = vec![0, 0];
        assert!(matches!(
            FinCat::validate(&raw),
            Err(CategoryError::MissingIdentity { object: 1, .. })
        ));
    }

    #[test]
    fn identity_functor_validates() {
        let c = validate_category(&walking_arrow_raw()).unwrap();
        FinFunctor::identity(c).revalidate().unwrap();
    }

    #[test]
    fn constant_functor_to_terminal_validates() {
        let c = validate_category(&walking_iso_raw()).unwrap();
        let t = validate_category(&terminal_raw()).unwrap();
        FinFunctor::validate(c.clone(), t, vec![0, 0], vec![0, 0, 0, 0]).unwrap();
    }

    #[test]
    fn walking_arrow_to_deloop_z2_edge_to_flip_validates() {
        let c = validate_category(&walking_arrow_raw()).unwrap();
        let z2 = validate_category(&one_object_two_mor(0)).unwrap();
        // Nothing non-trivial to compose in the walking arrow, so sending the
        // edge to the flip is functorial.
        FinFunctor::validate(c, z2, vec![0, 0], vec![0, 0, 1]).unwrap();
    }

    #[test]
    fn non_functor_is_rejected() {
        let c = validate_category(&walking_iso_raw()).unwrap();
        let z2 = validate_category(&one_object_two_mor(0)).unwrap();
        // f ↦ flip, g ↦ id breaks g∘f = id_0.
        let err = FinFunctor::validate(c, z2, vec![0, 0], vec![0, 0, 1, 0]).unwrap_err();
        assert!(matches!(err, FunctorError::NotPreservingComposite { .. }));
    }

    #[test]
    fn iso_classes_of_walking_iso_collapse() {
        let c = FinCat::validate(&walking_iso_raw()).unwrap();
        let iso = iso_classes(&c);
        assert_eq!(iso.classes, vec![vec![0, 1]]);
        let (f, g) = iso.witness[1].unwrap(); // pair (0, 1)
        assert_eq!(c.comp(g, f), Some(c.id_of(0)));
    }

    #[test]
    fn iso_classes_of_walking_arrow_are_separate() {
        let c = FinCat::validate(&walking_arrow_raw()).unwrap();
        assert_eq!(iso_classes(&c).classes.len(), 2);
    }

    #[test]
    fn predicates_on_small_categories() {
        let z2 = FinCat::validate(&one_object_two_mor(0)).unwrap();
        let flags = category_predicates(&z2);
        assert!(flags.skeletal && !flags.gaunt && flags.groupoid && !flags.preorder);

        let wi = FinCat::validate(&walking_iso_raw()).unwrap();
        let flags = category_predicates(&wi);
        assert!(!flags.skeletal && flags.gaunt && flags.groupoid);

        let wa = FinCat::validate(&walking_arrow_raw()).unwrap();
        let flags = category_predicates(&wa);
        assert!(flags.skeletal && flags.gaunt && !flags.groupoid && flags.preorder);
    }

    #[test]
    fn skeleton_of_walking_iso_uses_least_object() {
        let c = FinCat::validate(&walking_iso_raw()).unwrap();
        let sk = skeleton_data(&c);
        assert_eq!(sk.section, vec![0]);
        assert_eq!(sk.chosen_iso[0], c.id_of(0));
        assert_eq!(sk.chosen_iso[1], 3); // the leg 1 -> 0
    }

    #[test]
    fn skeleton_of_deloop_is_identity() {
        let c = FinCat::validate(&one_object_two_mor(0)).unwrap();
        let sk = skeleton_data(&c);
        assert_eq!(sk.section, vec![0]);
        assert_eq!(sk.chosen_iso[0], c.id_of(0));
    }
}
