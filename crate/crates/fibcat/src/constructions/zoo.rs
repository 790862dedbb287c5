//! Named small categories and finite group tables used throughout the
//! builders and the test suites.

use std::sync::Arc;

use crate::fincat::{FinCat, RawCategory};

/// A finite group as a multiplication table; element 0 is the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    pub order: usize,
    /// `mult[a * order + b]` is a·b.
    pub mult: Vec<usize>,
}

impl GroupTable {
    pub fn trivial() -> GroupTable {
        GroupTable::cyclic(1)
    }

    pub fn cyclic(n: usize) -> GroupTable {
        assert!(n >= 1);
        let mult = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a + b) % n))
            .collect();
        GroupTable { order: n, mult }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.mul(a, b) == 0 && self.mul(b, a) == 0)
            .expect("group table has inverses")
    }

    /// Checks unit, associativity, and inverses exhaustively.
    pub fn is_valid(&self) -> bool {
        let n = self.order;
        if self.mult.len() != n * n || self.mult.iter().any(|&x| x >= n) {
            return false;
        }
        let unit = (0..n).all(|a| self.mul(0, a) == a && self.mul(a, 0) == a);
        let assoc = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.mul(a, self.mul(b, c)) == self.mul(self.mul(a, b), c)))
        });
        let inv = (0..n).all(|a| (0..n).any(|b| self.mul(a, b) == 0 && self.mul(b, a) == 0));
        unit && assoc && inv
    }
}

fn validated(raw: RawCategory) -> Arc<FinCat> {
    Arc::new(FinCat::validate(&raw).expect("built-in category satisfies the axioms"))
}

/// One object, one morphism.
pub fn terminal() -> Arc<FinCat> {
    validated(RawCategory {
        n_objects: 1,
        src: vec![0],
        tgt: vec![0],
        identities: vec![0],
        comp: vec![vec![Some(0)]],
    })
}

/// `n` objects and only their identities.
pub fn discrete(n: usize) -> Arc<FinCat> {
    let comp = (0..n)
        .map(|g| (0..n).map(|f| (f == g).then_some(f)).collect())
        .collect();
    validated(RawCategory {
        n_objects: n,
        src: (0..n).collect(),
        tgt: (0..n).collect(),
        identities: (0..n).collect(),
        comp,
    })
}

/// Objects a=0, b=1 and a single non-identity arrow f: a → b (index 2).
pub fn walking_arrow() -> Arc<FinCat> {
    validated(RawCategory {
        n_objects: 2,
        src: vec![0, 1, 0],
        tgt: vec![0, 1, 1],
        identities: vec![0, 1],
        comp: vec![
            vec![Some(0), None, None],
            vec![None, Some(1), Some(2)],
            vec![Some(2), None, None],
        ],
    })
}

/// Two objects joined by a pair of mutually inverse arrows f=2, g=3.
pub fn walking_iso() -> Arc<FinCat> {
    validated(RawCategory {
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
    })
}

/// One object with an idempotent non-identity endomorphism.
pub fn walking_idempotent() -> Arc<FinCat> {
    validated(RawCategory {
        n_objects: 1,
        src: vec![0, 0],
        tgt: vec![0, 0],
        identities: vec![0],
        comp: vec![vec![Some(0), Some(1)], vec![Some(1), Some(1)]],
    })
}

/// The poset a → c ← b, which lacks the pullback of its single cospan.
pub fn vee_poset() -> Arc<FinCat> {
    validated(RawCategory {
        n_objects: 3,
        src: vec![0, 1, 2, 0, 1],
        tgt: vec![0, 1, 2, 2, 2],
        identities: vec![0, 1, 2],
        comp: vec![
            vec![Some(0), None, None, None, None],
            vec![None, Some(1), None, None, None],
            vec![None, None, Some(2), Some(3), Some(4)],
            vec![Some(3), None, None, None, None],
            vec![None, Some(4), None, None, None],
        ],
    })
}

/// The four-element lattice ⊥ < a, b < ⊤. Binary meets exist, so the poset
/// has all pullbacks.
pub fn diamond_lattice() -> Arc<FinCat> {
    // objects: ⊥=0, a=1, b=2, ⊤=3
    let order = |x: usize, y: usize| x == y || x == 0 || y == 3;
    let n_obj = 4;
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    let mut identities = vec![0; n_obj];
    for (x, id_slot) in identities.iter_mut().enumerate() {
        for y in 0..n_obj {
            if order(x, y) {
                if x == y {
                    *id_slot = src.len();
                }
                src.push(x);
                tgt.push(y);
            }
        }
    }
    let n = src.len();
    let comp = (0..n)
        .map(|g| {
            (0..n)
                .map(|f| {
                    (tgt[f] == src[g]).then(|| {
                        (0..n)
                            .find(|&h| src[h] == src[f] && tgt[h] == tgt[g])
                            .expect("order relation is transitive")
                    })
                })
                .collect()
        })
        .collect();
    validated(RawCategory {
        n_objects: n_obj,
        src,
        tgt,
        identities,
        comp,
    })
}

/// A groupoid with four objects and two isomorphism classes {0,1} and {2,3},
/// all hom-sets within a class singletons.
pub fn two_class_groupoid() -> Arc<FinCat> {
    // morphisms: ids 0-3, then 4: 0→1, 5: 1→0, 6: 2→3, 7: 3→2
    let src = vec![0, 1, 2, 3, 0, 1, 2, 3];
    let tgt = vec![0, 1, 2, 3, 1, 0, 3, 2];
    let n = 8;
    let comp = (0..n)
        .map(|g| {
            (0..n)
                .map(|f| {
                    (tgt[f] == src[g]).then(|| {
                        (0..n)
                            .find(|&h| src[h] == src[f] && tgt[h] == tgt[g])
                            .expect("singleton hom-sets compose")
                    })
                })
                .collect()
        })
        .collect();
    validated(RawCategory {
        n_objects: 4,
        src,
        tgt,
        identities: vec![0, 1, 2, 3],
        comp,
    })
}

/// The delooping of a group: one object, morphisms the group elements.
pub fn deloop(group: &GroupTable) -> Arc<FinCat> {
    assert!(group.is_valid(), "deloop requires a valid group table");
    let n = group.order;
    let comp = (0..n)
        .map(|g| (0..n).map(|f| Some(group.mul(g, f))).collect())
        .collect();
    validated(RawCategory {
        n_objects: 1,
        src: vec![0; n],
        tgt: vec![0; n],
        identities: vec![0],
        comp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{category_predicates, iso_classes};

    #[test]
    fn group_tables_validate() {
        assert!(GroupTable::trivial().is_valid());
        assert!(GroupTable::cyclic(2).is_valid());
        assert!(GroupTable::cyclic(3).is_valid());
        let mut broken = GroupTable::cyclic(2);
        broken.mult = vec![0, 1, 1, 1];
        assert!(!broken.is_valid());
    }

    #[test]
    fn deloop_of_trivial_group_is_terminal() {
        let c = deloop(&GroupTable::trivial());
        assert_eq!((c.n_objects(), c.n_morphisms()), (1, 1));
    }

    #[test]
    fn deloop_z2_squares_to_identity() {
        let c = deloop(&GroupTable::cyclic(2));
        assert_eq!((c.n_objects(), c.n_morphisms()), (1, 2));
        assert_eq!(c.comp(1, 1), Some(0));
    }

    #[test]
    fn two_class_groupoid_predicates() {
        let c = two_class_groupoid();
        let iso = iso_classes(&c);
        assert_eq!(iso.classes, vec![vec![0, 1], vec![2, 3]]);
        let flags = category_predicates(&c);
        assert!(!flags.skeletal && flags.gaunt && flags.groupoid);
    }

    #[test]
    fn diamond_lattice_is_a_preorder() {
        let c = diamond_lattice();
        assert_eq!((c.n_objects(), c.n_morphisms()), (4, 9));
        assert!(category_predicates(&c).preorder);
    }
}
