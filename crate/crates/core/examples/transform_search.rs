//! Searches for a re-ranking of the pool under which plain priority hiring
//! is minority fair and respects minority rights.

use poolhire::oracle::transform_search;
use poolhire::{Rational, Worker, WorkerId};

fn main() {
    let workers: Vec<Worker> = [100, 90, 80, 70]
        .iter()
        .enumerate()
        .map(|(i, &s)| Worker::new(format!("w{}", i + 1), s).minority(i % 2 == 1))
        .collect();
    let m = Rational::new(1, 2);
    let whole: Vec<WorkerId> = workers.iter().map(|w| w.id.clone()).collect();
    let without_w2: Vec<WorkerId> = ["w1", "w3", "w4"].map(WorkerId::from).to_vec();

    for (label, subpools) in [("whole pool", vec![whole.clone()]), ("both subpools", vec![whole, without_w2])] {
        let result = transform_search(&workers, m, &subpools).expect("small pool");
        println!("{label}: {} of {} orderings qualify", result.orderings.len(), result.examined);
        for o in result.orderings {
            let names: Vec<_> = o.iter().map(|w| w.as_str()).collect();
            println!("  {}", names.join(" > "));
        }
    }
}
