//! The acceptance gate: every check of the built-in suite must pass within
//! its time budget. Run with `cargo test -p fibcat --test acceptance`
//! (add `-- --nocapture` to see the per-check lines).

use fibcat::suite;

#[test]
fn acceptance_suite() {
    let outcomes = suite::run_all();
    let mut failed = Vec::new();
    for o in &outcomes {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("{verdict} [{}] ({} ms) {}", o.anchor, o.millis, o.details);
        if !o.pass {
            failed.push(o.anchor);
        }
        assert!(
            o.millis <= o.budget_millis,
            "{} exceeded its {} ms budget ({} ms)",
            o.anchor,
            o.budget_millis,
            o.millis
        );
    }
    assert!(failed.is_empty(), "failing checks: {failed:?}");
}
