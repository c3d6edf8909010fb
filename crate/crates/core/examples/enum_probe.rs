// Scratch probe: candidate counts and full-check cost in the enumeration.

use ncgram::classify::{classify_rank4, enumerate_solutions, SearchParams};

fn main() {
    for bound in [4i64, 6, 8] {
        let t = std::time::Instant::now();
        let sols = enumerate_solutions(4, bound, 2);
        println!(
            "n=4 bound={bound}: {} solutions in {:?}",
            sols.len(),
            t.elapsed()
        );
    }
    let t = std::time::Instant::now();
    let sols = enumerate_solutions(3, 30, 2);
    println!("n=3 bound=30: {} solutions in {:?}", sols.len(), t.elapsed());

    let t = std::time::Instant::now();
    let report = classify_rank4(8, &SearchParams::default());
    println!(
        "classify_rank4(8): {} records, {} unresolved, family cap {}, in {:?}",
        report.records.len(),
        report.unresolved_count(),
        report.family_cap,
        t.elapsed()
    );
}
