//! One pass/fail line per acceptance criterion; exits non-zero on any failure
//! or time-budget overrun.

use heptalift::selftest::run_one;
use heptalift::selftest::CRITERIA;
use heptalift::util::default_threads;

fn main() {
    let threads = default_threads();
    let mut failed = 0;
    for &(id, ..) in CRITERIA.iter() {
        let r = run_one(id, threads).expect("known criterion");
        let over = r.seconds > r.budget_seconds;
        println!("{}{}", r.line(), if over { " [over time budget]" } else { "" });
        if !r.pass || over {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
