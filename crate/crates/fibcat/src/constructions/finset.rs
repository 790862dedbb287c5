//! Skeletal categories of finite sets: objects are chosen cardinalities,
//! morphisms are all functions between them.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::FinCat;

/// A category of finite sets together with the function table behind each
/// morphism index.
#[derive(Debug, Clone)]
pub struct FinSetCat {
    pub cat: Arc<FinCat>,
    /// Cardinality of each object.
    pub sizes: Vec<usize>,
    /// Per morphism: source object, target object, and the function as a
    /// table over `0..sizes[src]`.
    pub tables: Vec<(usize, usize, Vec<usize>)>,
    index: HashMap<(usize, usize, Vec<usize>), usize>,
}

impl FinSetCat {
    /// The morphism index of a function table.
    pub fn mor_of(&self, src: usize, tgt: usize, table: &[usize]) -> usize {
        self.index[&(src, tgt, table.to_vec())]
    }

    pub fn table(&self, m: usize) -> &[usize] {
        &self.tables[m].2
    }

    /// The object of a given cardinality, if present.
    pub fn object_of_size(&self, size: usize) -> Option<usize> {
        self.sizes.iter().position(|&s| s == size)
    }
}

/// All function tables `{0..m-1} → {0..n-1}` in lexicographic order.
pub(crate) fn all_functions(m: usize, n: usize) -> Vec<Vec<usize>> {
    // The empty product is the empty function.
    if m == 0 {
        return vec![vec![]];
    }
    if n == 0 {
        return vec![];
    }
    let mut out = Vec::with_capacity(n.pow(m as u32));
    let mut cur = vec![0usize; m];
    loop {
        out.push(cur.clone());
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < n {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// The full subcategory of finite sets on the given cardinalities
/// (ascending, no duplicates).
pub fn finset_with_sizes(sizes: &[usize]) -> FinSetCat {
    assert!(sizes.windows(2).all(|w| w[0] < w[1]), "sizes ascending");
    let n_obj = sizes.len();
    let mut tables = Vec::new();
    let mut identities = vec![0usize; n_obj];
    for (a, &m) in sizes.iter().enumerate() {
        for (b, &n) in sizes.iter().enumerate() {
            for t in all_functions(m, n) {
                if a == b && t.iter().enumerate().all(|(i, &x)| i == x) {
                    identities[a] = tables.len();
                }
                tables.push((a, b, t));
            }
        }
    }
    let index: HashMap<(usize, usize, Vec<usize>), usize> = tables
        .iter()
        .enumerate()
        .map(|(i, (a, b, t))| ((*a, *b, t.clone()), i))
        .collect();
    let n_mor = tables.len();
    let mut comp = vec![u32::MAX; n_mor * n_mor];
    for (gi, (gs, gt, g)) in tables.iter().enumerate() {
        for (fi, (fs, ft, f)) in tables.iter().enumerate() {
            if ft == gs {
                let composite: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                comp[gi * n_mor + fi] = index[&(*fs, *gt, composite)] as u32;
            }
        }
    }
    let cat = Arc::new(FinCat::from_parts_trusted(
        n_obj,
        tables.iter().map(|t| t.0 as u32).collect(),
        tables.iter().map(|t| t.1 as u32).collect(),
        identities.iter().map(|&x| x as u32).collect(),
        comp,
    ));
    FinSetCat {
        cat,
        sizes: sizes.to_vec(),
        tables,
        index,
    }
}

/// The skeleton of finite sets of size at most `n`: objects `0..=n`
/// interpreted as `{0..k-1}`, morphisms all functions.
pub fn finset_skel(n: usize) -> FinSetCat {
    let sizes: Vec<usize> = (0..=n).collect();
    finset_with_sizes(&sizes)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count: sum of n^m over the chosen sizes, with 0^0 = 1.
    fn expected_morphisms(sizes: &[usize]) -> usize {
        sizes
            .iter()
            .flat_map(|&m| sizes.iter().map(move |&n| n.checked_pow(m as u32).unwrap_or(0)))
            .sum()
    }

    #[test]
    fn skeleton_sizes_match_the_power_sum() {
        for n in 0..=3 {
            let fs = finset_skel(n);
            assert_eq!(fs.cat.n_objects(), n + 1);
            let sizes: Vec<usize> = (0..=n).collect();
            assert_eq!(fs.cat.n_morphisms(), expected_morphisms(&sizes));
        }
        assert_eq!(finset_skel(0).cat.n_morphisms(), 1);
        assert_eq!(finset_skel(1).cat.n_morphisms(), 3);
        assert_eq!(finset_skel(2).cat.n_morphisms(), 11);
        assert_eq!(finset_skel(3).cat.n_morphisms(), 60);
    }

    #[test]
    fn composition_agrees_with_table_composition() {
        let fs = finset_skel(2);
        for g in fs.cat.morphisms() {
            for f in fs.cat.morphisms() {
                let (fs_src, fs_tgt, ft) = &fs.tables[f];
                let (gs_src, g_tgt, gt) = &fs.tables[g];
                if fs_tgt != gs_src {
                    assert_eq!(fs.cat.comp(g, f), None);
                    continue;
                }
                let composite: Vec<usize> = ft.iter().map(|&x| gt[x]).collect();
                assert_eq!(fs.cat.comp(g, f), Some(fs.mor_of(*fs_src, *g_tgt, &composite)));
            }
        }
    }

    #[test]
    fn full_axioms_hold_on_small_skeleta() {
        for n in 0..=2 {
            let fs = finset_skel(n);
            crate::fincat::FinCat::validate(&fs.cat.to_raw()).unwrap();
        }
    }

    #[test]
    fn subcategory_on_selected_sizes() {
        let fs = finset_with_sizes(&[0, 1, 2, 4]);
        assert_eq!(fs.cat.n_objects(), 4);
        assert_eq!(fs.cat.n_morphisms(), expected_morphisms(&[0, 1, 2, 4]));
        assert_eq!(fs.object_of_size(4), Some(3));
    }
}
