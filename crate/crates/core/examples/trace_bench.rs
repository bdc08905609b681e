use brauer_core::diagram::BrauerDiagram;
use brauer_core::word::{build_word, from_diagram, replay, rewrite_trace};
use std::time::Instant;

fn main() {
    let start = Instant::now();
    let mut count = 0usize;
    let mut max_steps = 0usize;
    for total in [8usize] {
        for k in 0..=total {
            let ell = total - k;
            let t0 = Instant::now();
            for d in BrauerDiagram::enumerate(k, ell) {
                let w1 = from_diagram(&d);
                let w2 = build_word(&d);
                match rewrite_trace(&w1, &w2) {
                    Ok(steps) => {
                        let end = replay(&w1, &steps).expect("replay");
                        assert_eq!(end.word.slices(), w2.slices());
                        max_steps = max_steps.max(steps.len());
                    }
                    Err(e) => {
                        eprintln!("STALL at {:?}: {e}", d);
                        std::process::exit(1);
                    }
                }
                count += 1;
            }
            eprintln!("({k},{ell}) done in {:?}", t0.elapsed());
        }
    }
    eprintln!("{count} diagrams joined, max trace {max_steps} steps, total {:?}", start.elapsed());
}
