use std::io::Write;
use std::time::Instant;
use tvx::diagram::perturb_and_saturate;
use tvx::factorize::StandardLine;
use tvx::lattice::LatticeVec;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which: usize = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(0);
    let configs: Vec<(Vec<(i64, i64)>, Vec<i64>, u8)> = vec![
        (vec![(1, 0), (0, 1)], vec![1, 1], 4),
        (vec![(1, 0), (0, 1)], vec![2, 2], 4),
        (vec![(1, 0), (0, 1), (1, 1)], vec![1, 1, 1], 2),
        (vec![(1, 0), (0, 1), (1, 1)], vec![1, 1, 1], 3),
        (vec![(1, 0), (0, 1), (1, 1)], vec![2, 2, 2], 3),
        (vec![(1, 0), (0, 1), (1, 1)], vec![1, 1, 1], 4),
    ];
    let (dirs, ls, k) = &configs[which];
    let lines: Vec<StandardLine> = dirs
        .iter()
        .zip(ls.iter())
        .enumerate()
        .map(|(i, ((a, b), l))| StandardLine::power(LatticeVec::new(*a, *b), i, *l))
        .collect();
    let t0 = Instant::now();
    match perturb_and_saturate(&lines, *k, 1) {
        Ok(d) => {
            eprintln!(
                "cfg {which}: dirs={dirs:?} ls={ls:?} k={k}: walls={} rounds={} in {:?}",
                d.walls.len(),
                d.rounds,
                t0.elapsed()
            );
        }
        Err(e) => eprintln!("cfg {which}: ERROR {e} in {:?}", t0.elapsed()),
    }
    std::io::stderr().flush().unwrap();
}
