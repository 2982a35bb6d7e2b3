use std::time::Instant;

fn main() {
    for id in qpbeta::verify::EXPERIMENT_IDS {
        let t = Instant::now();
        match qpbeta::verify::run_experiment(id, None) {
            Ok(r) => println!(
                "{id}: {:?} passed={} spread={:?} max={:?}",
                t.elapsed(),
                r.passed,
                r.spread,
                r.max_ratio
            ),
            Err(e) => println!("{id}: {:?} ERROR {e}", t.elapsed()),
        }
    }
}
