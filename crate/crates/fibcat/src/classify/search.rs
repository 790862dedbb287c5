//! Bounded counterexample search: classify every object of every builder
//! fibration within bounds and tabulate, for each ordered pair of notions,
//! a separating example or its absence.

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::report::{
    classify_object, ClassifyError, ClassifyOptions, GenericKind, GenericReport,
};
use crate::constructions::arrow::z2_arrow_base;
use crate::constructions::fam::fam;
use crate::constructions::groth::externalize;
use crate::constructions::gset::gset_category;
use crate::constructions::internal::internal_deloop;
use crate::constructions::stack::{stack_completion, subfibration_from_map};
use crate::constructions::zoo::{self, GroupTable};
use crate::fibration::{Cleavage, CoverClass, Fibration, MonoClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    /// Categories with more morphisms than this are left out of the family
    /// fibration grid.
    pub max_fiber_morphisms: usize,
    /// Include the fixed base builders: the arrow-fragment delooping and
    /// the subfibrations and stack completions over finite sets and group
    /// actions.
    pub base_builders: bool,
}

impl Default for SearchBounds {
    fn default() -> SearchBounds {
        SearchBounds {
            max_fiber_morphisms: 6,
            base_builders: true,
        }
    }
}

/// The largest bound the search accepts; the grid is meant for desk scale.
pub const MAX_SEARCH_BOUND: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SeparationExample {
    /// Builder expression of the fibration the example lives in.
    pub fibration: String,
    pub object: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairEntry {
    pub have: GenericKind,
    pub lack: GenericKind,
    /// `None` means no example within bounds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<SeparationExample>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SeparationCatalogue {
    pub bounds: SearchBounds,
    pub fibrations_searched: Vec<String>,
    pub objects_classified: usize,
    pub entries: Vec<PairEntry>,
}

impl SeparationCatalogue {
    pub fn entry(&self, have: GenericKind, lack: GenericKind) -> &PairEntry {
        self.entries
            .iter()
            .find(|e| e.have == have && e.lack == lack)
            .expect("all ordered pairs are tabulated")
    }
}

/// The separations the catalogue must rediscover.
pub const REQUIRED_SEPARATIONS: [(GenericKind, GenericKind); 5] = [
    (GenericKind::Split, GenericKind::Skeletal),
    (GenericKind::Skeletal, GenericKind::Gaunt),
    (GenericKind::Acyclic, GenericKind::Skeletal),
    (GenericKind::Skeletal, GenericKind::Acyclic),
    (GenericKind::WeakStack, GenericKind::Generic),
];

struct GridFibration {
    name: String,
    fib: Fibration,
    cleavage: Option<Cleavage>,
    monos: MonoClass,
    covers: CoverClass,
}

fn grid_entry(
    name: String,
    fib: Fibration,
    cleavage: Option<Cleavage>,
    base_classes: Option<(&MonoClass, &CoverClass)>,
) -> GridFibration {
    let (monos, covers) = match base_classes {
        Some((m, c)) => (m.clone(), c.clone()),
        None => (
            MonoClass::all_monos(fib.base()),
            CoverClass::regular_epis(fib.base()),
        ),
    };
    GridFibration {
        name,
        fib,
        cleavage,
        monos,
        covers,
    }
}

fn build_grid(bounds: SearchBounds) -> Vec<GridFibration> {
    let catalog: Vec<(&str, std::sync::Arc<crate::fincat::FinCat>)> = vec![
        ("terminal", zoo::terminal()),
        ("discrete2", zoo::discrete(2)),
        ("walking_arrow", zoo::walking_arrow()),
        ("walking_iso", zoo::walking_iso()),
        ("walking_idempotent", zoo::walking_idempotent()),
        ("deloopZ2", zoo::deloop(&GroupTable::cyclic(2))),
        ("deloopZ3", zoo::deloop(&GroupTable::cyclic(3))),
        ("vee_poset", zoo::vee_poset()),
        ("two_class_groupoid", zoo::two_class_groupoid()),
    ];
    let mut grid = Vec::new();
    for n in [1usize, 2] {
        let index_base = crate::constructions::finset::finset_skel(n);
        let monos = MonoClass::all_monos(&index_base.cat);
        let covers = CoverClass::regular_epis(&index_base.cat);
        for (name, cat) in &catalog {
            if cat.n_morphisms() > bounds.max_fiber_morphisms {
                continue;
            }
            let f = fam(cat, n);
            grid.push(grid_entry(
                format!("fam:{name}:{n}"),
                f.fib,
                Some(f.canonical),
                Some((&monos, &covers)),
            ));
        }
    }

    if !bounds.base_builders {
        return grid;
    }

    // The delooping of the two-element group over the arrow fragment.
    let (_, group) = z2_arrow_base();
    let ic = internal_deloop(&group).expect("the delooping equations hold");
    let ext = externalize(&ic);
    grid.push(grid_entry(
        "externalize:deloopZ2@z2_arrow_base".to_string(),
        ext.groth.fib,
        Some(ext.groth.canonical),
        None,
    ));

    // Subfibrations and stack completions of a two-to-one map.
    let fs = crate::constructions::finset::finset_skel(3);
    let pi = fs.mor_of(2, 1, &[0, 0]);
    let monos = MonoClass::all_monos(&fs.cat);
    let covers = CoverClass::regular_epis(&fs.cat);
    let sub = subfibration_from_map(&fs.cat, pi);
    grid.push(grid_entry(
        "subfib:finset_skel:3:2->1".to_string(),
        sub.fib,
        None,
        Some((&monos, &covers)),
    ));
    let stack = stack_completion(&fs.cat, pi, &covers);
    grid.push(grid_entry(
        "stack:finset_skel:3:2->1".to_string(),
        stack.fib,
        None,
        Some((&monos, &covers)),
    ));

    let gs = gset_category(&GroupTable::cyclic(2), 4);
    let two_triv = gs.object_with_orbits(&[1, 1]).expect("trivial pair exists");
    let point = gs.object_with_orbits(&[1]).expect("point exists");
    let pi = gs.mor_of(two_triv, point, &[0, 0]);
    let monos = MonoClass::all_monos(&gs.cat);
    let covers = CoverClass::regular_epis(&gs.cat);
    let sub = subfibration_from_map(&gs.cat, pi);
    grid.push(grid_entry(
        "subfib:gsets:Z2:4:2t->1".to_string(),
        sub.fib,
        None,
        Some((&monos, &covers)),
    ));
    let stack = stack_completion(&gs.cat, pi, &covers);
    grid.push(grid_entry(
        "stack:gsets:Z2:4:2t->1".to_string(),
        stack.fib,
        None,
        Some((&monos, &covers)),
    ));
    grid
}

/// Classifies every object of every grid fibration and tabulates the
/// ordered separations found.
pub fn counterexample_search(bounds: SearchBounds) -> Result<SeparationCatalogue, ClassifyError> {
    let grid = build_grid(bounds);
    let classified: Vec<(String, Vec<GenericReport>)> = grid
        .par_iter()
        .map(|entry| {
            let opts = ClassifyOptions {
                cleavage: entry.cleavage.as_ref(),
                monos: Some(&entry.monos),
                covers: Some(&entry.covers),
            };
            let reports = entry
                .fib
                .total()
                .objects()
                .map(|t| classify_object(&entry.fib, t, opts))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((entry.name.clone(), reports))
        })
        .collect::<Result<_, ClassifyError>>()?;

    let objects_classified = classified.iter().map(|(_, r)| r.len()).sum();
    let mut entries = Vec::new();
    for have in GenericKind::ALL {
        for lack in GenericKind::ALL {
            if have == lack {
                continue;
            }
            let example = classified.iter().find_map(|(name, reports)| {
                reports.iter().find_map(|r| {
                    (have.of(r) == Some(true) && lack.of(r) == Some(false)).then(|| {
                        SeparationExample {
                            fibration: name.clone(),
                            object: r.candidate,
                        }
                    })
                })
            });
            entries.push(PairEntry {
                have,
                lack,
                example,
            });
        }
    }
    Ok(SeparationCatalogue {
        bounds,
        fibrations_searched: grid.into_iter().map(|g| g.name).collect(),
        objects_classified,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_search_rediscovers_the_required_separations() {
        let catalogue = counterexample_search(SearchBounds::default()).unwrap();
        for (have, lack) in REQUIRED_SEPARATIONS {
            let entry = catalogue.entry(have, lack);
            assert!(
                entry.example.is_some(),
                "no example of {} without {}",
                have.name(),
                lack.name()
            );
        }
        // implications of the strength diagram admit no counterexample
        for (have, lack) in [
            (GenericKind::Gaunt, GenericKind::Skeletal),
            (GenericKind::Gaunt, GenericKind::Acyclic),
            (GenericKind::Skeletal, GenericKind::Generic),
            (GenericKind::Acyclic, GenericKind::Generic),
            (GenericKind::Generic, GenericKind::WeakStack),
            (GenericKind::Split, GenericKind::Generic),
        ] {
            assert!(
                catalogue.entry(have, lack).example.is_none(),
                "found impossible separation {} without {}",
                have.name(),
                lack.name()
            );
        }
    }

    #[test]
    fn expected_witnesses_appear_where_the_examples_live() {
        let catalogue = counterexample_search(SearchBounds::default()).unwrap();
        let split_not_skeletal = catalogue
            .entry(GenericKind::Split, GenericKind::Skeletal)
            .example
            .as_ref()
            .unwrap();
        assert!(split_not_skeletal.fibration.contains("walking_iso"));
        let weak_not_generic = catalogue
            .entry(GenericKind::WeakStack, GenericKind::Generic)
            .example
            .as_ref()
            .unwrap();
        assert!(weak_not_generic.fibration.contains("stack"));
        let skeletal_not_acyclic = catalogue
            .entry(GenericKind::Skeletal, GenericKind::Acyclic)
            .example
            .as_ref()
            .unwrap();
        assert!(skeletal_not_acyclic.fibration.contains("z2_arrow_base"));
    }

    #[test]
    fn zero_bounds_empty_the_catalogue() {
        let catalogue = counterexample_search(SearchBounds {
            max_fiber_morphisms: 0,
            base_builders: false,
        })
        .unwrap();
        assert!(catalogue.fibrations_searched.is_empty());
        assert_eq!(catalogue.objects_classified, 0);
        assert!(catalogue.entries.iter().all(|e| e.example.is_none()));
    }
}
