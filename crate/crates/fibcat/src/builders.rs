//! Named builders addressable from the command line and the search grid.
//!
//! Category expressions: `terminal`, `walking_arrow`, `walking_iso`,
//! `walking_idempotent`, `two_class_groupoid`, `vee_poset`,
//! `diamond_lattice`, `discrete:N`, `deloop:ZN`, `finset_skel:N`,
//! `finset_sizes:a,b,...`, `gsets:ZN:B`, `arrow:<cat>`, `z2_arrow_base`.
//!
//! Fibration expressions: `fam:<cat>:N`, `externalize:<cat>@finset_skel:N`,
//! `externalize:deloopZ2@z2_arrow_base`, `codomain:<cat>`,
//! `subfib:<base>:<mor>`, `stack:<base>:<mor>` where `<mor>` is `mK` (a
//! morphism index) or a named map such as `2->1` over finite sets and
//! `2t->1` or `rho->1` over group actions.

use std::sync::Arc;

use thiserror::Error;

use crate::constructions::arrow::{arrow_category, z2_arrow_base};
use crate::constructions::fam::{fam, skeletal_generic_candidate, BoundTooSmall};
use crate::constructions::finset::{finset_skel, finset_with_sizes, FinSetCat};
use crate::constructions::groth::externalize;
use crate::constructions::gset::{gset_category, GSetCat};
use crate::constructions::internal::internal_deloop;
use crate::constructions::stack::{stack_completion, subfibration_from_map};
use crate::constructions::zoo::{self, GroupTable};
use crate::fibration::{Cleavage, CoverClass, Fibration};
use crate::fincat::FinCat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("unknown builder `{0}`")]
    UnknownBuilder(String),
    #[error("invalid argument in `{expr}`: {msg}")]
    BadArgument { expr: String, msg: String },
    #[error(transparent)]
    BoundTooSmall(#[from] BoundTooSmall),
}

/// A built fibration with whatever extras its construction provides.
pub struct FibrationArtifact {
    pub expr: String,
    pub fib: Fibration,
    pub canonical: Option<Cleavage>,
    /// The construction's distinguished object, when it has one.
    pub distinguished: Option<usize>,
}

pub enum Artifact {
    Category(Arc<FinCat>),
    Fibration(Box<FibrationArtifact>),
}

fn bad(expr: &str, msg: impl Into<String>) -> BuildError {
    BuildError::BadArgument {
        expr: expr.to_string(),
        msg: msg.into(),
    }
}

fn parse_group(token: &str) -> Option<GroupTable> {
    if token == "trivial" {
        return Some(GroupTable::trivial());
    }
    let rest = token.strip_prefix('Z').or_else(|| token.strip_prefix('z'))?;
    let n: usize = rest.parse().ok()?;
    (n >= 1).then(|| GroupTable::cyclic(n))
}

/// Builds a category from an expression.
pub fn build_category(expr: &str) -> Result<Arc<FinCat>, BuildError> {
    match expr {
        "terminal" => return Ok(zoo::terminal()),
        "walking_arrow" | "walkingArrow" => return Ok(zoo::walking_arrow()),
        "walking_iso" | "walkingIso" => return Ok(zoo::walking_iso()),
        "walking_idempotent" => return Ok(zoo::walking_idempotent()),
        "two_class_groupoid" | "twoClassGroupoid" => return Ok(zoo::two_class_groupoid()),
        "vee_poset" | "veePoset" => return Ok(zoo::vee_poset()),
        "diamond_lattice" => return Ok(zoo::diamond_lattice()),
        "discrete2" => return Ok(zoo::discrete(2)),
        "deloopZ2" => return Ok(zoo::deloop(&GroupTable::cyclic(2))),
        "deloopZ3" => return Ok(zoo::deloop(&GroupTable::cyclic(3))),
        "z2_arrow_base" => return Ok(z2_arrow_base().0.cat),
        _ => {}
    }
    if let Some(rest) = expr.strip_prefix("discrete:") {
        let n: usize = rest.parse().map_err(|_| bad(expr, "expected a count"))?;
        return Ok(zoo::discrete(n));
    }
    if let Some(rest) = expr.strip_prefix("deloop:") {
        let group = parse_group(rest).ok_or_else(|| bad(expr, "expected a group such as Z2"))?;
        return Ok(zoo::deloop(&group));
    }
    if let Some(rest) = expr.strip_prefix("arrow:") {
        let base = build_category(rest)?;
        return Ok(arrow_category(&base).cat);
    }
    if expr.starts_with("finset_skel:") || expr.starts_with("finset_sizes:") || expr.starts_with("gsets:")
    {
        return Ok(match build_base(expr)? {
            BaseMeta::FinSet(fs) => fs.cat,
            BaseMeta::GSet(gs) => gs.cat,
        });
    }
    Err(BuildError::UnknownBuilder(expr.to_string()))
}

enum BaseMeta {
    FinSet(FinSetCat),
    GSet(GSetCat),
}

impl BaseMeta {
    fn cat(&self) -> &Arc<FinCat> {
        match self {
            BaseMeta::FinSet(fs) => &fs.cat,
            BaseMeta::GSet(gs) => &gs.cat,
        }
    }
}

fn build_base(expr: &str) -> Result<BaseMeta, BuildError> {
    if let Some(rest) = expr.strip_prefix("finset_skel:") {
        let n: usize = rest.parse().map_err(|_| bad(expr, "expected a size bound"))?;
        return Ok(BaseMeta::FinSet(finset_skel(n)));
    }
    if let Some(rest) = expr.strip_prefix("finset_sizes:") {
        let sizes: Result<Vec<usize>, _> = rest.split(',').map(str::parse).collect();
        let sizes = sizes.map_err(|_| bad(expr, "expected comma-separated sizes"))?;
        return Ok(BaseMeta::FinSet(finset_with_sizes(&sizes)));
    }
    // gsets:<group>:<bound>, with gsetsZN:<bound> accepted as shorthand
    let gset_args = expr
        .strip_prefix("gsets:")
        .map(str::to_string)
        .or_else(|| {
            expr.strip_prefix("gsets")
                .and_then(|rest| rest.split_once(':'))
                .map(|(g, b)| format!("{g}:{b}"))
        });
    if let Some(rest) = gset_args {
        let (group_token, bound) = rest
            .split_once(':')
            .ok_or_else(|| bad(expr, "expected gsets:<group>:<bound>"))?;
        let group =
            parse_group(group_token).ok_or_else(|| bad(expr, "expected a group such as Z2"))?;
        let bound: usize = bound.parse().map_err(|_| bad(expr, "expected a size bound"))?;
        return Ok(BaseMeta::GSet(gset_category(&group, bound)));
    }
    Err(BuildError::UnknownBuilder(expr.to_string()))
}

/// Resolves `mK`, or a named map such as `2->1` (finite sets, by sizes) or
/// `2t->1` / `rho->1` (group actions, by orbit profile), to a morphism
/// index. The named form must pick out exactly one morphism.
fn resolve_morphism(expr: &str, base: &BaseMeta, spec: &str) -> Result<usize, BuildError> {
    let spec = spec.strip_prefix("pi=").unwrap_or(spec);
    if let Some(rest) = spec.strip_prefix('m') {
        if let Ok(m) = rest.parse::<usize>() {
            if m < base.cat().n_morphisms() {
                return Ok(m);
            }
            return Err(bad(expr, format!("morphism index {m} out of range")));
        }
    }
    let (from, to) = spec
        .split_once("->")
        .ok_or_else(|| bad(expr, "expected mK or <src>-><tgt>"))?;
    let (src, tgt) = match base {
        BaseMeta::FinSet(fs) => {
            let parse_size = |s: &str| -> Result<usize, BuildError> {
                let size: usize = s.parse().map_err(|_| bad(expr, "expected a set size"))?;
                fs.object_of_size(size)
                    .ok_or_else(|| bad(expr, format!("no object of size {size}")))
            };
            (parse_size(from)?, parse_size(to)?)
        }
        BaseMeta::GSet(gs) => {
            let parse_profile = |s: &str| -> Result<usize, BuildError> {
                let profile: Vec<usize> = match s {
                    "1" => vec![1],
                    "2t" | "2triv" => vec![1, 1],
                    "rho" => vec![2],
                    "0" => vec![],
                    other => {
                        return Err(bad(expr, format!("unknown action name `{other}`")));
                    }
                };
                gs.object_with_orbits(&profile)
                    .ok_or_else(|| bad(expr, format!("no action named `{s}` within the bound")))
            };
            (parse_profile(from)?, parse_profile(to)?)
        }
    };
    let hom = base.cat().hom(src, tgt);
    match hom {
        [only] => Ok(*only as usize),
        [] => Err(bad(expr, "no morphism with those endpoints")),
        _ => Err(bad(
            expr,
            "several morphisms with those endpoints; use an mK index",
        )),
    }
}

/// Builds a fibration (with canonical cleavage and distinguished object
/// where the construction provides them) from an expression.
pub fn build_fibration(expr: &str) -> Result<FibrationArtifact, BuildError> {
    if let Some(rest) = expr.strip_prefix("fam:") {
        let (cat_expr, n) = rest
            .rsplit_once(':')
            .ok_or_else(|| bad(expr, "expected fam:<cat>:<bound>"))?;
        let n: usize = n.parse().map_err(|_| bad(expr, "expected a size bound"))?;
        let cat = build_category(cat_expr)?;
        let f = fam(&cat, n);
        let distinguished = f.canonical_generic();
        return Ok(FibrationArtifact {
            expr: expr.to_string(),
            fib: f.fib,
            canonical: Some(f.canonical),
            distinguished,
        });
    }
    if let Some(rest) = expr.strip_prefix("externalize:") {
        let (cat_expr, base_expr) = rest
            .split_once('@')
            .ok_or_else(|| bad(expr, "expected externalize:<cat>@<base>"))?;
        if base_expr == "z2_arrow_base" {
            if !matches!(cat_expr, "deloopZ2" | "deloop:Z2") {
                return Err(bad(expr, "the arrow fragment only deloops Z2"));
            }
            let (_, group) = z2_arrow_base();
            let ic = internal_deloop(&group).expect("the delooping equations hold");
            let ext = externalize(&ic);
            return Ok(FibrationArtifact {
                expr: expr.to_string(),
                fib: ext.groth.fib,
                canonical: Some(ext.groth.canonical),
                distinguished: Some(ext.t),
            });
        }
        if let Some(n) = base_expr.strip_prefix("finset_skel:") {
            let n: usize = n.parse().map_err(|_| bad(expr, "expected a size bound"))?;
            let cat = build_category(cat_expr)?;
            let f = fam(&cat, n);
            let t = f.canonical_generic().ok_or(BuildError::BoundTooSmall(BoundTooSmall {
                classes: cat.n_objects(),
                bound: n,
            }))?;
            return Ok(FibrationArtifact {
                expr: expr.to_string(),
                fib: f.fib,
                canonical: Some(f.canonical),
                distinguished: Some(t),
            });
        }
        return Err(bad(expr, "expected finset_skel:<n> or z2_arrow_base after @"));
    }
    if let Some(rest) = expr.strip_prefix("codomain:") {
        let base = build_category(rest)?;
        let arrow = arrow_category(&base);
        return Ok(FibrationArtifact {
            expr: expr.to_string(),
            fib: Fibration::analyze(arrow.codomain),
            canonical: None,
            distinguished: None,
        });
    }
    for (prefix, stack) in [("subfib:", false), ("stack:", true)] {
        if let Some(rest) = expr.strip_prefix(prefix) {
            let (base_expr, spec) = rest
                .rsplit_once(':')
                .ok_or_else(|| bad(expr, "expected <base>:<morphism>"))?;
            let base = build_base(base_expr)?;
            let pi = resolve_morphism(expr, &base, spec)?;
            let sub = if stack {
                let covers = CoverClass::regular_epis(base.cat());
                stack_completion(base.cat(), pi, &covers)
            } else {
                subfibration_from_map(base.cat(), pi)
            };
            return Ok(FibrationArtifact {
                expr: expr.to_string(),
                fib: sub.fib,
                canonical: None,
                distinguished: Some(sub.pi_object),
            });
        }
    }
    Err(BuildError::UnknownBuilder(expr.to_string()))
}

/// Builds whichever kind of artifact the expression denotes.
pub fn build(expr: &str) -> Result<Artifact, BuildError> {
    let fibration_prefixes = ["fam:", "externalize:", "codomain:", "subfib:", "stack:"];
    if fibration_prefixes.iter().any(|p| expr.starts_with(p)) {
        return build_fibration(expr).map(|f| Artifact::Fibration(Box::new(f)));
    }
    build_category(expr).map(Artifact::Category)
}

/// The candidate produced by quotienting the fiber category by isomorphism,
/// exposed for classification commands.
pub fn skeletal_candidate_for(cat_expr: &str, n: usize) -> Result<usize, BuildError> {
    let cat = build_category(cat_expr)?;
    let f = fam(&cat, n);
    Ok(skeletal_generic_candidate(&f)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn category_expressions_build() {
        for expr in [
            "terminal",
            "walking_iso",
            "discrete:3",
            "deloop:Z3",
            "finset_skel:2",
            "finset_sizes:0,1,2,4",
            "gsets:Z2:2",
            "arrow:walking_arrow",
            "z2_arrow_base",
            "diamond_lattice",
        ] {
            build_category(expr).unwrap_or_else(|e| panic!("{expr}: {e}"));
        }
        assert_eq!(build_category("finset_skel:2").unwrap().n_morphisms(), 11);
    }

    #[test]
    fn fibration_expressions_build() {
        for expr in [
            "fam:deloopZ2:1",
            "fam:walking_iso:2",
            "externalize:walkingIso@finset_skel:2",
            "externalize:deloopZ2@z2_arrow_base",
            "codomain:finset_skel:1",
            "subfib:finset_skel:3:2->1",
            "stack:gsets:Z2:4:2t->1",
            "stack:gsetsZ2:2:pi=2triv->1",
        ] {
            let f = build_fibration(expr).unwrap_or_else(|e| panic!("{expr}: {e}"));
            assert_eq!(f.expr, expr);
        }
    }

    #[test]
    fn externalize_requires_the_bound_to_fit() {
        assert!(matches!(
            build_fibration("externalize:walkingIso@finset_skel:1"),
            Err(BuildError::BoundTooSmall(_))
        ));
    }

    #[test]
    fn unknown_builders_are_reported() {
        assert!(matches!(
            build("no_such_thing"),
            Err(BuildError::UnknownBuilder(_))
        ));
        assert!(matches!(
            build_fibration("subfib:gsets:Z2:2:rho->2t"),
            Err(BuildError::BadArgument { .. })
        ));
    }
}
