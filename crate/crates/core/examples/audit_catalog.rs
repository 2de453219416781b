//! Audits every default catalog entry and prints one line per group.
//!
//! `cargo run --release --example audit_catalog [-- --all]`

use intergroup::catalog::standard_families;
use intergroup::classify::audit;
use intergroup::Limits;

fn main() {
    let all = std::env::args().any(|a| a == "--all");
    let limits = Limits::default();
    let mut bad = 0;
    for entry in standard_families().into_iter().filter(|e| all || !e.opt_in) {
        let g = entry.build(&limits).expect("catalog entry builds");
        let r = audit(g, &limits).expect("audit");
        if !r.agrees() {
            bad += 1;
        }
        println!("{}", r.csv_record().join(","));
    }
    println!("disagreements: {bad}");
}
