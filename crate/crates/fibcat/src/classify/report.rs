//! Per-candidate classification reports and the implication audit.

use serde::Serialize;
use thiserror::Error;

use crate::classify::predicates::{
    is_acyclic_generic, is_gaunt_generic, is_generic, is_skeletal_generic, is_weak_generic_stack,
    split_generic_unchecked, FlagResult, NotSplitCleavage,
};
use crate::fibration::{is_split, Cleavage, CoverClass, Fibration, MonoClass};

/// Optional structure a classification runs against. Flags depending on a
/// cleavage, mono class, or cover class are reported only when the
/// corresponding structure is supplied.
#[derive(Default, Clone, Copy)]
pub struct ClassifyOptions<'a> {
    pub cleavage: Option<&'a Cleavage>,
    pub monos: Option<&'a MonoClass>,
    pub covers: Option<&'a CoverClass>,
}

/// The flags of one candidate object, with witnesses.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GenericReport {
    pub candidate: usize,
    pub generic: FlagResult,
    pub skeletal: FlagResult,
    pub gaunt: FlagResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<FlagResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub acyclic: Option<FlagResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_stack: Option<FlagResult>,
}

/// The implication diagram the flags must satisfy. A violation is an
/// implementation bug, never a valid classification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("implication violated on candidate {candidate}: {have} holds but {lack} fails")]
pub struct ImplicationViolated {
    pub candidate: usize,
    pub have: &'static str,
    pub lack: &'static str,
}

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    NotSplitCleavage(#[from] NotSplitCleavage),
    #[error(transparent)]
    ImplicationViolated(#[from] ImplicationViolated),
}

fn audit(report: &GenericReport, covers_include_identities: bool) -> Result<(), ImplicationViolated> {
    let violated = |have: &'static str, lack: &'static str| ImplicationViolated {
        candidate: report.candidate,
        have,
        lack,
    };
    if report.gaunt.holds && !report.skeletal.holds {
        return Err(violated("gaunt", "skeletal"));
    }
    if let Some(acyclic) = &report.acyclic {
        if report.gaunt.holds && !acyclic.holds {
            return Err(violated("gaunt", "acyclic"));
        }
        if acyclic.holds && !report.generic.holds {
            return Err(violated("acyclic", "generic"));
        }
    }
    if report.skeletal.holds && !report.generic.holds {
        return Err(violated("skeletal", "generic"));
    }
    if let Some(weak) = &report.weak_stack {
        if covers_include_identities && report.generic.holds && !weak.holds {
            return Err(violated("generic", "weakStack"));
        }
    }
    Ok(())
}

/// Runs every applicable predicate on a candidate and audits the implication
/// diagram over the outcome.
pub fn classify_object(
    fib: &Fibration,
    candidate: usize,
    opts: ClassifyOptions,
) -> Result<GenericReport, ClassifyError> {
    let split = match opts.cleavage {
        Some(cl) => {
            is_split(fib, cl).map_err(NotSplitCleavage)?;
            Some(split_generic_unchecked(fib, cl, candidate))
        }
        None => None,
    };
    let report = GenericReport {
        candidate,
        generic: is_generic(fib, candidate),
        skeletal: is_skeletal_generic(fib, candidate),
        gaunt: is_gaunt_generic(fib, candidate),
        split,
        acyclic: opts.monos.map(|m| is_acyclic_generic(fib, candidate, m)),
        weak_stack: opts.covers.map(|c| is_weak_generic_stack(fib, candidate, c)),
    };
    let covers_include_identities = opts
        .covers
        .map(|c| c.contains_identities(fib.base()))
        .unwrap_or(false);
    audit(&report, covers_include_identities)?;
    Ok(report)
}

/// The kinds of generic object a search can ask for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum GenericKind {
    Generic,
    Skeletal,
    Gaunt,
    Split,
    Acyclic,
    WeakStack,
}

impl GenericKind {
    pub const ALL: [GenericKind; 6] = [
        GenericKind::Generic,
        GenericKind::Skeletal,
        GenericKind::Gaunt,
        GenericKind::Split,
        GenericKind::Acyclic,
        GenericKind::WeakStack,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenericKind::Generic => "generic",
            GenericKind::Skeletal => "skeletal",
            GenericKind::Gaunt => "gaunt",
            GenericKind::Split => "split",
            GenericKind::Acyclic => "acyclic",
            GenericKind::WeakStack => "weakStack",
        }
    }

    /// Reads the corresponding flag off a report; `None` when the report was
    /// produced without the structure the flag needs.
    pub fn of(self, report: &GenericReport) -> Option<bool> {
        match self {
            GenericKind::Generic => Some(report.generic.holds),
            GenericKind::Skeletal => Some(report.skeletal.holds),
            GenericKind::Gaunt => Some(report.gaunt.holds),
            GenericKind::Split => report.split.as_ref().map(|f| f.holds),
            GenericKind::Acyclic => report.acyclic.as_ref().map(|f| f.holds),
            GenericKind::WeakStack => report.weak_stack.as_ref().map(|f| f.holds),
        }
    }
}

/// All objects satisfying the requested notion.
pub fn find_generic_objects(
    fib: &Fibration,
    kind: GenericKind,
    opts: ClassifyOptions,
) -> Result<Vec<usize>, ClassifyError> {
    let mut found = Vec::new();
    for t in fib.total().objects() {
        let report = classify_object(fib, t, opts)?;
        if kind.of(&report) == Some(true) {
            found.push(t);
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fam::fam;
    use crate::constructions::zoo;

    #[test]
    fn deloop_report_matches_expectations() {
        let f = fam(&zoo::deloop(&zoo::GroupTable::cyclic(2)), 1);
        let t = f.canonical_generic().unwrap();
        let monos = MonoClass::all_monos(f.fib.base());
        let covers = CoverClass::regular_epis(f.fib.base());
        let report = classify_object(
            &f.fib,
            t,
            ClassifyOptions {
                cleavage: Some(&f.canonical),
                monos: Some(&monos),
                covers: Some(&covers),
            },
        )
        .unwrap();
        assert!(report.generic.holds);
        assert!(report.skeletal.holds);
        assert!(!report.gaunt.holds);
        assert!(report.split.unwrap().holds);
        assert!(report.acyclic.unwrap().holds);
        assert!(report.weak_stack.unwrap().holds);
    }

    #[test]
    fn walking_iso_report_matches_expectations() {
        let f = fam(&zoo::walking_iso(), 2);
        let t = f.canonical_generic().unwrap();
        let monos = MonoClass::all_monos(f.fib.base());
        let report = classify_object(
            &f.fib,
            t,
            ClassifyOptions {
                cleavage: Some(&f.canonical),
                monos: Some(&monos),
                covers: None,
            },
        )
        .unwrap();
        assert!(report.generic.holds);
        assert!(!report.skeletal.holds);
        assert!(!report.gaunt.holds);
        assert!(report.split.unwrap().holds);
        assert!(report.acyclic.unwrap().holds);
    }

    #[test]
    fn find_generic_objects_in_small_fibrations() {
        let f = fam(&zoo::deloop(&zoo::GroupTable::cyclic(2)), 1);
        let skeletal =
            find_generic_objects(&f.fib, GenericKind::Skeletal, ClassifyOptions::default())
                .unwrap();
        assert_eq!(skeletal, vec![f.canonical_generic().unwrap()]);
        let gaunt =
            find_generic_objects(&f.fib, GenericKind::Gaunt, ClassifyOptions::default()).unwrap();
        assert!(gaunt.is_empty());

        let f = fam(&zoo::discrete(2), 1);
        let generic =
            find_generic_objects(&f.fib, GenericKind::Generic, ClassifyOptions::default())
                .unwrap();
        assert!(generic.is_empty());
    }

    #[test]
    fn audit_rejects_a_forged_report() {
        let f = fam(&zoo::deloop(&zoo::GroupTable::cyclic(2)), 1);
        let t = f.canonical_generic().unwrap();
        let mut report = classify_object(&f.fib, t, ClassifyOptions::default()).unwrap();
        report.gaunt.holds = true;
        report.skeletal.holds = false;
        assert!(audit(&report, false).is_err());
    }
}
