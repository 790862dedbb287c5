//! Categories of finite group actions and equivariant maps.

use std::collections::HashMap;
use std::sync::Arc;

use crate::constructions::zoo::GroupTable;
use crate::fincat::FinCat;

/// A finite G-set: an action table per group element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GSet {
    pub size: usize,
    /// `action[g][x]` is g·x; rows follow group element order.
    pub action: Vec<Vec<usize>>,
}

impl GSet {
    /// Orbit sizes, ascending. `[1,1]` is the trivial two-element set,
    /// `[2]` a free Z/2 orbit.
    pub fn orbit_profile(&self, group: &GroupTable) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        let mut profile = Vec::new();
        for x in 0..self.size {
            if seen[x] {
                continue;
            }
            let mut orbit = 0;
            for g in 0..group.order {
                let y = self.action[g][x];
                if !seen[y] {
                    seen[y] = true;
                    orbit += 1;
                }
            }
            profile.push(orbit);
        }
        profile.sort_unstable();
        profile
    }
}

/// The category of G-actions on sets of size at most `bound`, deduplicated
/// up to isomorphism by least lexicographic action table.
#[derive(Debug, Clone)]
pub struct GSetCat {
    pub group: GroupTable,
    pub cat: Arc<FinCat>,
    pub objects: Vec<GSet>,
    /// Per morphism: source object, target object, underlying function.
    pub tables: Vec<(usize, usize, Vec<usize>)>,
    index: HashMap<(usize, usize, Vec<usize>), usize>,
}

impl GSetCat {
    pub fn mor_of(&self, src: usize, tgt: usize, table: &[usize]) -> usize {
        self.index[&(src, tgt, table.to_vec())]
    }

    /// The object with the given orbit profile (ascending), if present.
    pub fn object_with_orbits(&self, profile: &[usize]) -> Option<usize> {
        self.objects
            .iter()
            .position(|o| o.orbit_profile(&self.group) == profile)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    let mut items: Vec<usize> = (0..n).collect();
    out.push(items.clone());
    // Heap's algorithm, then sort for lexicographic determinism.
    let mut i = 0;
    while i < n {
        if idx[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(idx[i], i);
            }
            out.push(items.clone());
            idx[i] += 1;
            i = 0;
        } else {
            idx[i] = 0;
            i += 1;
        }
    }
    out.sort();
    out
}

/// Canonical form of an action: the least concatenated action table over all
/// relabelings of the underlying set.
fn canonical_form(group: &GroupTable, action: &[Vec<usize>]) -> Vec<usize> {
    let size = action.first().map_or(0, Vec::len);
    let mut best: Option<Vec<usize>> = None;
    for perm in permutations(size) {
        let mut inv = vec![0usize; size];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let mut relabeled = Vec::with_capacity(group.order * size);
        for g in 0..group.order {
            for x in 0..size {
                relabeled.push(perm[action[g][inv[x]]]);
            }
        }
        if best.as_ref().is_none_or(|b| relabeled < *b) {
            best = Some(relabeled);
        }
    }
    best.unwrap_or_default()
}

/// All actions of the group on sets of size at most `bound`, up to the
/// canonical labeling, with all equivariant maps between them.
pub fn gset_category(group: &GroupTable, bound: usize) -> GSetCat {
    assert!(group.is_valid(), "gset_category requires a valid group");
    let mut objects: Vec<GSet> = Vec::new();
    for size in 0..=bound {
        let mut canon_seen: Vec<Vec<usize>> = Vec::new();
        let perms = permutations(size);
        // Enumerate assignments of a permutation per group element and keep
        // the homomorphisms.
        let mut assignment = vec![0usize; group.order];
        'next: loop {
            let action: Vec<Vec<usize>> = assignment
                .iter()
                .map(|&k| perms[k].clone())
                .collect();
            let is_hom = (0..group.order).all(|a| {
                (0..group.order).all(|b| {
                    let ab = group.mul(a, b);
                    (0..size).all(|x| action[ab][x] == action[a][action[b][x]])
                })
            }) && (0..size).all(|x| action[0][x] == x);
            if is_hom {
                let canon = canonical_form(group, &action);
                if !canon_seen.contains(&canon) {
                    canon_seen.push(canon);
                }
            }
            let mut i = group.order;
            loop {
                if i == 0 {
                    break 'next;
                }
                i -= 1;
                assignment[i] += 1;
                if assignment[i] < perms.len() {
                    break;
                }
                assignment[i] = 0;
            }
        }
        canon_seen.sort();
        for canon in canon_seen {
            let action: Vec<Vec<usize>> = (0..group.order)
                .map(|g| canon[g * size..(g + 1) * size].to_vec())
                .collect();
            objects.push(GSet { size, action });
        }
    }

    let mut tables = Vec::new();
    let mut identities = vec![0usize; objects.len()];
    for (a, x) in objects.iter().enumerate() {
        for (b, y) in objects.iter().enumerate() {
            for t in super::finset::all_functions(x.size, y.size) {
                let equivariant = (0..group.order)
                    .all(|g| (0..x.size).all(|i| t[x.action[g][i]] == y.action[g][t[i]]));
                if !equivariant {
                    continue;
                }
                if a == b && t.iter().enumerate().all(|(i, &v)| i == v) {
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
        objects.len(),
        tables.iter().map(|t| t.0 as u32).collect(),
        tables.iter().map(|t| t.1 as u32).collect(),
        identities.iter().map(|&x| x as u32).collect(),
        comp,
    ));
    GSetCat {
        group: group.clone(),
        cat,
        objects,
        tables,
        index,
    }
}
