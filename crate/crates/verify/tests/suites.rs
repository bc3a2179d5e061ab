use kinspace_verify::{run, SUITES};

// A different seed from the acceptance run, so two independent draws are exercised.
const SEED: u64 = 7;

#[test]
fn all_suites_pass() {
    let mut failed = Vec::new();
    for &(id, _) in SUITES.iter() {
        let report = run(id, SEED).unwrap();
        println!("{}", report.summary());
        for check in &report.checks {
            println!("    {check}");
        }
        if !report.passed() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

#[test]
fn unknown_suite() {
    assert!(run(0, SEED).is_none());
    assert!(run(10, SEED).is_none());
}
