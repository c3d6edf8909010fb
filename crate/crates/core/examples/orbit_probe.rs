// Scratch probe: measure capped orbit component sizes. Not part of the
// deliverable surface; used to size search budgets.

use ncgram::classify::{canonical_form, SearchParams};
use ncgram::ncalgebra::{gram_family, gram_p2, gram_quadric};

fn main() {
    for cap in [30i64, 60, 100, 200] {
        let params = SearchParams {
            entry_bound_enumeration: 8,
            entry_cap_orbit: cap,
            max_orbit_size: 20_000_000,
            max_word_length: 60,
        };
        let t = std::time::Instant::now();
        let p2 = canonical_form(&gram_p2(), &params);
        let p2_note = match &p2 {
            Ok(_) => "complete".to_string(),
            Err(e) => format!("{e}"),
        };
        println!("rank3 P2   cap {cap:4}: {p2_note} in {:?}", t.elapsed());

        let t = std::time::Instant::now();
        let b0 = canonical_form(&gram_family(0), &params);
        let b0_note = match &b0 {
            Ok(c) => format!("complete, rep upper row0 {:?}", c.representative.at(0, 1)),
            Err(e) => format!("{e}"),
        };
        println!("rank4 B0   cap {cap:4}: {b0_note} in {:?}", t.elapsed());

        let t = std::time::Instant::now();
        let b3 = canonical_form(&gram_family(3), &params);
        let b3_note = match &b3 {
            Ok(_) => "complete".to_string(),
            Err(e) => format!("{e}"),
        };
        println!("rank4 B3   cap {cap:4}: {b3_note} in {:?}", t.elapsed());

        let t = std::time::Instant::now();
        let a = canonical_form(&gram_quadric(), &params);
        let a_note = match &a {
            Ok(_) => "complete".to_string(),
            Err(e) => format!("{e}"),
        };
        println!("rank4 A    cap {cap:4}: {a_note} in {:?}", t.elapsed());
        println!();
    }
}
