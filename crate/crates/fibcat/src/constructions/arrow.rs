//! Arrow categories and the codomain functor.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{FinCat, FinFunctor};

/// The arrow category of a base, or a full subcategory of it: objects are
/// selected base morphisms, morphisms are commuting squares, and the
/// codomain functor projects targets.
#[derive(Debug, Clone)]
pub struct ArrowCat {
    pub cat: Arc<FinCat>,
    pub codomain: FinFunctor,
    /// The base morphism behind each object.
    pub objects: Vec<usize>,
    /// Each square as (from-object, to-object, top `u`, bottom `v`) where the
    /// square from `f: A → B` to `g: C → D` has `u: A → C`, `v: B → D`,
    /// and `g ∘ u = v ∘ f`.
    pub squares: Vec<(usize, usize, usize, usize)>,
    square_index: HashMap<(usize, usize, usize, usize), usize>,
}

impl ArrowCat {
    /// The arrow-category object carrying a given base morphism.
    pub fn object_of(&self, base_mor: usize) -> Option<usize> {
        self.objects.iter().position(|&m| m == base_mor)
    }

    pub fn square_of(&self, from: usize, to: usize, u: usize, v: usize) -> usize {
        self.square_index[&(from, to, u, v)]
    }
}

/// The full subcategory of the arrow category of `base` on the given
/// morphisms-as-objects.
pub fn arrow_full_subcategory(base: &Arc<FinCat>, objects: &[usize]) -> ArrowCat {
    let mut squares = Vec::new();
    let mut identities = vec![0usize; objects.len()];
    for (i, &f) in objects.iter().enumerate() {
        for (j, &g) in objects.iter().enumerate() {
            for &u in base.hom(base.src(f), base.src(g)) {
                let gu = base.comp2(g, u as usize);
                for &v in base.hom(base.tgt(f), base.tgt(g)) {
                    if gu != base.comp2(v as usize, f) {
                        continue;
                    }
                    if i == j
                        && u as usize == base.id_of(base.src(f))
                        && v as usize == base.id_of(base.tgt(f))
                    {
                        identities[i] = squares.len();
                    }
                    squares.push((i, j, u as usize, v as usize));
                }
            }
        }
    }
    let square_index: HashMap<(usize, usize, usize, usize), usize> = squares
        .iter()
        .enumerate()
        .map(|(k, &s)| (s, k))
        .collect();
    let n = squares.len();
    let mut comp = vec![u32::MAX; n * n];
    for (gi, &(gf, gt, gu, gv)) in squares.iter().enumerate() {
        for (fi, &(ff, ft, fu, fv)) in squares.iter().enumerate() {
            if ft == gf {
                let u = base.comp2(gu, fu);
                let v = base.comp2(gv, fv);
                comp[gi * n + fi] = square_index[&(ff, gt, u, v)] as u32;
            }
        }
    }
    let cat = Arc::new(FinCat::from_parts_trusted(
        objects.len(),
        squares.iter().map(|s| s.0 as u32).collect(),
        squares.iter().map(|s| s.1 as u32).collect(),
        identities.iter().map(|&x| x as u32).collect(),
        comp,
    ));
    let codomain = FinFunctor::from_parts_trusted(
        cat.clone(),
        base.clone(),
        objects.iter().map(|&f| base.tgt(f)).collect(),
        squares.iter().map(|s| s.3).collect(),
    );
    ArrowCat {
        cat,
        codomain,
        objects: objects.to_vec(),
        squares,
        square_index,
    }
}

/// The full arrow category of a base, with its codomain functor.
pub fn arrow_category(base: &Arc<FinCat>) -> ArrowCat {
    let objects: Vec<usize> = base.morphisms().collect();
    arrow_full_subcategory(base, &objects)
}

/// A fragment of the arrow category of finite sets carrying the two-element
/// group as a group object.
///
/// The full subcategory on the arrows ∅→1, 1→1, 1→2 (selecting 0), and
/// 1→2² (selecting (0,0)) contains a terminal object, the carrier, and its
/// self-product, which is all the delooping needs. The point ∅→1 admits two
/// generalized elements of the carrier while 1→1 admits only the unit, so
/// extensions along the mono (∅→1) ↣ (1→1) can fail.
pub fn z2_arrow_base() -> (ArrowCat, crate::constructions::internal::GroupObject) {
    use crate::constructions::finset::finset_with_sizes;
    use crate::constructions::internal::GroupObject;
    use crate::fibration::PullbackCone;

    let fs = finset_with_sizes(&[0, 1, 2, 4]);
    let o0 = fs.object_of_size(0).unwrap();
    let o1 = fs.object_of_size(1).unwrap();
    let o2 = fs.object_of_size(2).unwrap();
    let o4 = fs.object_of_size(4).unwrap();
    let j_arrow = fs.mor_of(o0, o1, &[]);
    let t_arrow = fs.cat.id_of(o1);
    let g_arrow = fs.mor_of(o1, o2, &[0]);
    let gg_arrow = fs.mor_of(o1, o4, &[0]);
    let arrow = arrow_full_subcategory(&fs.cat, &[j_arrow, t_arrow, g_arrow, gg_arrow]);

    let terminal = arrow.object_of(t_arrow).unwrap();
    let carrier = arrow.object_of(g_arrow).unwrap();
    let apex = arrow.object_of(gg_arrow).unwrap();
    let id1 = fs.cat.id_of(o1);
    // pairing 2×2 ≅ 4 by (a, b) ↦ 2a + b
    let product = PullbackCone {
        apex,
        to_x: arrow.square_of(apex, carrier, id1, fs.mor_of(o4, o2, &[0, 0, 1, 1])),
        to_y: arrow.square_of(apex, carrier, id1, fs.mor_of(o4, o2, &[0, 1, 0, 1])),
    };
    let unit = arrow.square_of(terminal, carrier, id1, g_arrow);
    let mult = arrow.square_of(apex, carrier, id1, fs.mor_of(o4, o2, &[0, 1, 1, 0]));
    let inv = arrow.cat.id_of(carrier);
    let group = GroupObject::validate(&arrow.cat, carrier, terminal, product, unit, mult, inv)
        .expect("the two-element group deloops over the arrow fragment");
    (arrow, group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::zoo;

    #[test]
    fn arrow_category_of_terminal() {
        let a = arrow_category(&zoo::terminal());
        assert_eq!((a.cat.n_objects(), a.cat.n_morphisms()), (1, 1));
    }

    #[test]
    fn arrow_category_of_walking_arrow() {
        let a = arrow_category(&zoo::walking_arrow());
        assert_eq!((a.cat.n_objects(), a.cat.n_morphisms()), (3, 6));
        crate::fincat::FinCat::validate(&a.cat.to_raw()).unwrap();
        a.codomain.revalidate().unwrap();
    }

    /// Independent square count: for every pair of base morphisms, count the
    /// commuting (u, v) pairs directly.
    #[test]
    fn square_count_oracle() {
        let base = zoo::two_class_groupoid();
        let a = arrow_category(&base);
        let mut expected = 0usize;
        for f in base.morphisms() {
            for g in base.morphisms() {
                for &u in base.hom(base.src(f), base.src(g)) {
                    for &v in base.hom(base.tgt(f), base.tgt(g)) {
                        if base.comp2(g, u as usize) == base.comp2(v as usize, f) {
                            expected += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(a.cat.n_morphisms(), expected);
    }
}
