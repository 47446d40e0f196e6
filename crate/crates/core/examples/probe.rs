use hecke_core::suites::*;
fn main() {
    let levels = degenerate_levels();
    let rep = klr_suite(&levels[..2], 3).unwrap();
    println!("degenerate d<=3: {}", rep.summary());
    for f in rep.failures().take(12) { println!("  FAIL {} :: {}", f.key, f.detail); }
    let levels_q = quantum_levels();
    let repq = klr_suite(&levels_q[..2], 3).unwrap();
    println!("quantum d<=3: {}", repq.summary());
    for f in repq.failures().take(12) { println!("  FAIL {} :: {}", f.key, f.detail); }
}
