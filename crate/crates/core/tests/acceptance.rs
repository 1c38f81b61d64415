use verbal_core::acceptance::{run_all, DEFAULT_SEED};

#[test]
fn acceptance_suite() {
    let results = run_all(DEFAULT_SEED);
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
