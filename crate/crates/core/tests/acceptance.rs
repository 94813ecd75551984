//! Reproduction criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use tmfres::verify::{Budgets, Check, Suite};

fn main() {
    let budgets = Budgets::from_env();
    let mut checks: Vec<Check> = Suite::ALL.iter().flat_map(|s| s.run(budgets)).collect();
    checks.sort_by_key(|c| c.id);
    assert_eq!(checks.len(), 10);
    println!("\nrunning {} acceptance criteria", checks.len());
    for c in &checks {
        println!("{c}  ({:.1?})", c.elapsed);
    }
    let failed: Vec<u32> = checks.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass\n", checks.len());
    } else {
        println!("acceptance: failing criteria {failed:?}\n");
        std::process::exit(1);
    }
}
