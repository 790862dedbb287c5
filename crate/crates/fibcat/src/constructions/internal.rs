//! Internal categories and group objects in a finite base, with exhaustive
//! validation of their equations.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::constructions::finset::FinSetCat;
use crate::fibration::{is_pullback_cone, PullbackCone};
use crate::fincat::FinCat;

/// Category-object data in a base with a chosen pullback of composable
/// pairs.
#[derive(Debug, Clone)]
pub struct InternalCat {
    pub base: Arc<FinCat>,
    /// Object of objects.
    pub c0: usize,
    /// Object of morphisms.
    pub c1: usize,
    /// Source and target maps `c1 → c0`.
    pub s: usize,
    pub t: usize,
    /// Identity-choosing map `c0 → c1`.
    pub i: usize,
    /// Chosen pullback of `t` against `s`: composable pairs.
    pub pairs: PullbackCone,
    /// Composition `pairs.apex → c1`.
    pub c: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InternalCatError {
    #[error("structure map {what} has endpoints {src} -> {tgt}, expected {want_src} -> {want_tgt}")]
    BadEndpoints {
        what: &'static str,
        src: usize,
        tgt: usize,
        want_src: usize,
        want_tgt: usize,
    },
    #[error("equation failed: {0}")]
    EquationFailed(&'static str),
    #[error("the chosen composable-pairs cone is not a pullback")]
    NotAPullback,
}

/// Generalized-element view of an internal category at one base object:
/// pairing of composable elements through the chosen pullback, and the
/// induced composition.
struct ElementCalculus<'a> {
    ic: &'a InternalCat,
    /// (h, k) with t∘h = s∘k, mapped to the pairing morphism into the apex.
    pairing: HashMap<(usize, usize), usize>,
}

impl<'a> ElementCalculus<'a> {
    fn at(ic: &'a InternalCat, x: usize) -> Result<ElementCalculus<'a>, InternalCatError> {
        let base = &ic.base;
        let mut pairing = HashMap::new();
        for &w in base.hom(x, ic.pairs.apex) {
            let w = w as usize;
            let h = base.comp2(ic.pairs.to_x, w);
            let k = base.comp2(ic.pairs.to_y, w);
            if pairing.insert((h, k), w).is_some() {
                return Err(InternalCatError::NotAPullback);
            }
        }
        Ok(ElementCalculus { ic, pairing })
    }

    fn compose(&self, h: usize, k: usize) -> Result<usize, InternalCatError> {
        let w = *self
            .pairing
            .get(&(h, k))
            .ok_or(InternalCatError::NotAPullback)?;
        Ok(self.ic.base.comp2(self.ic.c, w))
    }
}

/// Validates internal-category data: endpoint typing, the chosen pullback,
/// the identity and composition equations, and the unit and associativity
/// laws instantiated at every generalized element.
#[allow(clippy::too_many_arguments)]
pub fn validate_internal_cat(
    base: &Arc<FinCat>,
    c0: usize,
    c1: usize,
    s: usize,
    t: usize,
    i: usize,
    pairs: PullbackCone,
    c: usize,
) -> Result<InternalCat, InternalCatError> {
    let expect = |what, m, ws, wt| {
        if base.src(m) != ws || base.tgt(m) != wt {
            Err(InternalCatError::BadEndpoints {
                what,
                src: base.src(m),
                tgt: base.tgt(m),
                want_src: ws,
                want_tgt: wt,
            })
        } else {
            Ok(())
        }
    };
    expect("s", s, c1, c0)?;
    expect("t", t, c1, c0)?;
    expect("i", i, c0, c1)?;
    expect("c", c, pairs.apex, c1)?;
    expect("pair projection 1", pairs.to_x, pairs.apex, c1)?;
    expect("pair projection 2", pairs.to_y, pairs.apex, c1)?;

    if !is_pullback_cone(base, t, s, &pairs) {
        return Err(InternalCatError::NotAPullback);
    }
    if base.comp2(s, i) != base.id_of(c0) {
        return Err(InternalCatError::EquationFailed("s∘i = id"));
    }
    if base.comp2(t, i) != base.id_of(c0) {
        return Err(InternalCatError::EquationFailed("t∘i = id"));
    }
    if base.comp2(s, c) != base.comp2(s, pairs.to_x) {
        return Err(InternalCatError::EquationFailed("s∘c = s∘π1"));
    }
    if base.comp2(t, c) != base.comp2(t, pairs.to_y) {
        return Err(InternalCatError::EquationFailed("t∘c = t∘π2"));
    }

    let ic = InternalCat {
        base: base.clone(),
        c0,
        c1,
        s,
        t,
        i,
        pairs,
        c,
    };
    // Unit and associativity laws over all generalized elements. When the
    // triple pullback exists in the base these instances are equivalent to
    // the diagrammatic equations; bounded bases often lack that object, and
    // the instances are what the downstream constructions consume.
    for x in base.objects() {
        let calc = ElementCalculus::at(&ic, x)?;
        let elements: Vec<usize> = base.hom(x, c1).iter().map(|&h| h as usize).collect();
        for &a in &elements {
            let sa = base.comp2(ic.s, a);
            let ta = base.comp2(ic.t, a);
            let left_unit = calc.compose(base.comp2(ic.i, sa), a)?;
            if left_unit != a {
                return Err(InternalCatError::EquationFailed("c∘⟨i∘s, id⟩ = id"));
            }
            let right_unit = calc.compose(a, base.comp2(ic.i, ta))?;
            if right_unit != a {
                return Err(InternalCatError::EquationFailed("c∘⟨id, i∘t⟩ = id"));
            }
        }
        for &a in &elements {
            let ta = base.comp2(ic.t, a);
            for &b in &elements {
                if base.comp2(ic.s, b) != ta {
                    continue;
                }
                let ab = calc.compose(a, b)?;
                let tb = base.comp2(ic.t, b);
                for &d in &elements {
                    if base.comp2(ic.s, d) != tb {
                        continue;
                    }
                    let bd = calc.compose(b, d)?;
                    if calc.compose(ab, d)? != calc.compose(a, bd)? {
                        return Err(InternalCatError::EquationFailed("associativity"));
                    }
                }
            }
        }
    }
    Ok(ic)
}

/// A group object: a carrier with unit, multiplication, and inverse against
/// a chosen terminal object and binary product.
#[derive(Debug, Clone)]
pub struct GroupObject {
    pub base: Arc<FinCat>,
    pub carrier: usize,
    pub terminal: usize,
    /// Chosen product carrier×carrier with its projections.
    pub product: PullbackCone,
    /// `terminal → carrier`.
    pub unit: usize,
    /// `product.apex → carrier`.
    pub mult: usize,
    /// `carrier → carrier`.
    pub inv: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupObjectError {
    #[error("object {0} is not terminal")]
    NoTerminalObject(usize),
    #[error("the chosen cone is not a product of the carrier with itself")]
    NotAProduct,
    #[error("group law failed: {0}")]
    LawFailed(&'static str),
    #[error("structure map {0} has wrong endpoints")]
    BadEndpoints(&'static str),
}

impl GroupObject {
    /// Validates the data. The product cone is checked as a pullback over
    /// the terminal object; the group laws are checked on every hom-set,
    /// which is equivalent to the diagrammatic laws whenever the iterated
    /// products exist.
    pub fn validate(
        base: &Arc<FinCat>,
        carrier: usize,
        terminal: usize,
        product: PullbackCone,
        unit: usize,
        mult: usize,
        inv: usize,
    ) -> Result<GroupObject, GroupObjectError> {
        for x in base.objects() {
            if base.hom(x, terminal).len() != 1 {
                return Err(GroupObjectError::NoTerminalObject(terminal));
            }
        }
        let bang = |x: usize| base.hom(x, terminal)[0] as usize;
        let bang_carrier = bang(carrier);
        if !is_pullback_cone(base, bang_carrier, bang_carrier, &product) {
            return Err(GroupObjectError::NotAProduct);
        }
        let ends = |m: usize, s, t| base.src(m) == s && base.tgt(m) == t;
        if !ends(unit, terminal, carrier) {
            return Err(GroupObjectError::BadEndpoints("unit"));
        }
        if !ends(mult, product.apex, carrier) {
            return Err(GroupObjectError::BadEndpoints("mult"));
        }
        if !ends(inv, carrier, carrier) {
            return Err(GroupObjectError::BadEndpoints("inv"));
        }
        let g = GroupObject {
            base: base.clone(),
            carrier,
            terminal,
            product,
            unit,
            mult,
            inv,
        };
        for x in base.objects() {
            let mut pairing = HashMap::new();
            for &w in base.hom(x, product.apex) {
                let w = w as usize;
                let a = base.comp2(product.to_x, w);
                let b = base.comp2(product.to_y, w);
                if pairing.insert((a, b), w).is_some() {
                    return Err(GroupObjectError::NotAProduct);
                }
            }
            let elems: Vec<usize> = base.hom(x, carrier).iter().map(|&h| h as usize).collect();
            if !elems.is_empty() && pairing.len() != elems.len() * elems.len() {
                return Err(GroupObjectError::NotAProduct);
            }
            let mul = |a: usize, b: usize| -> usize { base.comp2(mult, pairing[&(a, b)]) };
            let e = base.comp2(unit, bang(x));
            for &a in &elems {
                if mul(e, a) != a || mul(a, e) != a {
                    return Err(GroupObjectError::LawFailed("unit"));
                }
                let ai = base.comp2(inv, a);
                if mul(ai, a) != e || mul(a, ai) != e {
                    return Err(GroupObjectError::LawFailed("inverse"));
                }
                for &b in &elems {
                    for &cc in &elems {
                        if mul(mul(a, b), cc) != mul(a, mul(b, cc)) {
                            return Err(GroupObjectError::LawFailed("associativity"));
                        }
                    }
                }
            }
        }
        Ok(g)
    }
}

/// Regards a group object as an internal groupoid with a single object: the
/// terminal object of objects, the carrier as object of morphisms, and
/// multiplication as composition.
pub fn internal_deloop(g: &GroupObject) -> Result<InternalCat, InternalCatError> {
    let base = &g.base;
    let bang_carrier = base.hom(g.carrier, g.terminal)[0] as usize;
    validate_internal_cat(
        base,
        g.terminal,
        g.carrier,
        bang_carrier,
        bang_carrier,
        g.unit,
        g.product,
        g.mult,
    )
}

/// Encodes a finite category as an internal category of a finite-set base.
/// The base must contain objects of the cardinalities of the object set,
/// the morphism set, and the set of composable pairs.
pub fn encode_fincat(c: &FinCat, fs: &FinSetCat) -> Result<InternalCat, InternalCatError> {
    let n_obj = c.n_objects();
    let n_mor = c.n_morphisms();
    let mut pair_list = Vec::new();
    for f in c.morphisms() {
        for g in c.morphisms() {
            if c.tgt(f) == c.src(g) {
                pair_list.push((f, g));
            }
        }
    }
    let want = |size: usize| {
        fs.object_of_size(size).ok_or(InternalCatError::EquationFailed(
            "base lacks an object of the required cardinality",
        ))
    };
    let c0 = want(n_obj)?;
    let c1 = want(n_mor)?;
    let apex = want(pair_list.len())?;
    let s = fs.mor_of(c1, c0, &(0..n_mor).map(|m| c.src(m)).collect::<Vec<_>>());
    let t = fs.mor_of(c1, c0, &(0..n_mor).map(|m| c.tgt(m)).collect::<Vec<_>>());
    let i = fs.mor_of(c0, c1, &(0..n_obj).map(|o| c.id_of(o)).collect::<Vec<_>>());
    let p1 = fs.mor_of(apex, c1, &pair_list.iter().map(|p| p.0).collect::<Vec<_>>());
    let p2 = fs.mor_of(apex, c1, &pair_list.iter().map(|p| p.1).collect::<Vec<_>>());
    let comp_table: Vec<usize> = pair_list.iter().map(|&(f, g)| c.comp2(g, f)).collect();
    let cmor = fs.mor_of(apex, c1, &comp_table);
    validate_internal_cat(
        &fs.cat,
        c0,
        c1,
        s,
        t,
        i,
        PullbackCone {
            apex,
            to_x: p1,
            to_y: p2,
        },
        cmor,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::finset::finset_skel;
    use crate::constructions::zoo;

    #[test]
    fn encode_terminal_category() {
        let fs = finset_skel(1);
        let ic = encode_fincat(&zoo::terminal(), &fs).unwrap();
        assert_eq!(ic.c0, 1);
        assert_eq!(ic.c1, 1);
    }

    #[test]
    fn encode_deloop_z2_in_finset4() {
        let fs = finset_skel(4);
        let c = zoo::deloop(&zoo::GroupTable::cyclic(2));
        let ic = encode_fincat(&c, &fs).unwrap();
        assert_eq!(ic.c0, 1);
        assert_eq!(ic.c1, 2);
        assert_eq!(ic.pairs.apex, 4);
    }

    #[test]
    fn encode_discrete_two_in_finset2() {
        let fs = finset_skel(2);
        let ic = encode_fincat(&zoo::discrete(2), &fs).unwrap();
        assert_eq!(ic.pairs.apex, 2);
    }

    #[test]
    fn corrupted_identity_map_fails() {
        let fs = finset_skel(4);
        let c = zoo::deloop(&zoo::GroupTable::cyclic(2));
        let good = encode_fincat(&c, &fs).unwrap();
        // swap i for the map choosing the non-identity element
        let bad_i = fs.mor_of(1, 2, &[1]);
        let err = validate_internal_cat(
            &fs.cat, good.c0, good.c1, good.s, good.t, bad_i, good.pairs, good.c,
        )
        .unwrap_err();
        assert!(matches!(err, InternalCatError::EquationFailed(_)));
    }

    #[test]
    fn corrupted_composition_fails_associativity_or_units() {
        let fs = finset_skel(4);
        let c = zoo::deloop(&zoo::GroupTable::cyclic(2));
        let good = encode_fincat(&c, &fs).unwrap();
        // composition constantly the identity element is not a group law
        let bad_c = fs.mor_of(4, 2, &[0, 0, 0, 0]);
        assert!(validate_internal_cat(
            &fs.cat, good.c0, good.c1, good.s, good.t, good.i, good.pairs, bad_c,
        )
        .is_err());
    }

    #[test]
    fn z2_group_object_in_finsets() {
        let fs = crate::constructions::finset::finset_with_sizes(&[0, 1, 2, 4]);
        let g = z2_group_in_finset(&fs);
        assert_eq!(g.carrier, fs.object_of_size(2).unwrap());
        internal_deloop(&g).unwrap();
    }

    /// Z/2 as a group object on the two-element set: the product is the
    /// four-element set under the pairing (a, b) ↦ 2a + b.
    pub(crate) fn z2_group_in_finset(fs: &FinSetCat) -> GroupObject {
        let one = fs.object_of_size(1).unwrap();
        let two = fs.object_of_size(2).unwrap();
        let four = fs.object_of_size(4).unwrap();
        let product = PullbackCone {
            apex: four,
            to_x: fs.mor_of(four, two, &[0, 0, 1, 1]),
            to_y: fs.mor_of(four, two, &[0, 1, 0, 1]),
        };
        GroupObject::validate(
            &fs.cat,
            two,
            one,
            product,
            fs.mor_of(one, two, &[0]),
            fs.mor_of(four, two, &[0, 1, 1, 0]),
            fs.mor_of(two, two, &[0, 1]),
        )
        .unwrap()
    }

    #[test]
    fn trivial_group_object_anywhere_with_terminal() {
        let fs = finset_skel(2);
        let one = fs.object_of_size(1).unwrap();
        let product = PullbackCone {
            apex: one,
            to_x: fs.cat.id_of(one),
            to_y: fs.cat.id_of(one),
        };
        let g = GroupObject::validate(
            &fs.cat,
            one,
            one,
            product,
            fs.cat.id_of(one),
            fs.cat.id_of(one),
            fs.cat.id_of(one),
        )
        .unwrap();
        internal_deloop(&g).unwrap();
    }
}
