use cohfun::verify;
use cohfun::Limits;
use std::time::Instant;

#[test]
fn profile_products() {
    let t = Instant::now();
    let report = verify::run_products(2, 42, &Limits::default());
    println!("products: {:.1}s, pass={}", t.elapsed().as_secs_f64(), report.all_pass());
    for (name, ok) in &report.checks { if !ok { println!("  FAIL {name}"); } }
}

#[test]
fn profile_composition() {
    let t = Instant::now();
    let report = verify::run_composition(2, 42, &Limits::default());
    println!("composition: {:.1}s, pass={}", t.elapsed().as_secs_f64(), report.all_pass());
    for (name, ok) in &report.checks { if !ok { println!("  FAIL {name}"); } }
}
