use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::collections::BTreeMap;
use tvx::diagram::{perturb_standard, scatter_pair};
use tvx::factorize::StandardLine;
use tvx::geom::QPoint;
use tvx::lattice::LatticeVec;

fn main() {
    let lines = vec![
        StandardLine::power(LatticeVec::new(1, 0), 0, 1),
        StandardLine::power(LatticeVec::new(0, 1), 1, 1),
        StandardLine::power(LatticeVec::new(1, 1), 2, 1),
    ];
    let mut rng = ChaCha12Rng::seed_from_u64(1);
    let mut d = perturb_standard(&lines, 2, &mut rng, 1).unwrap();
    eprintln!("initial walls: {}", d.n_initial);
    // manual rounds with verbose registry
    let ctx = d.ctx.clone();
    let mut registry: BTreeMap<QPoint, (usize, usize)> = BTreeMap::new();
    let mut round = 1u32;
    loop {
        let new_range: Vec<usize> = (0..d.walls.len())
            .filter(|&i| d.walls[i].born == round - 1)
            .collect();
        if new_range.is_empty() {
            break;
        }
        let mut rays = Vec::new();
        for &i in &new_range {
            for j in 0..d.walls.len() {
                let both_new = d.walls[j].born == round - 1;
                if (both_new && j >= i) || (!both_new && d.walls[j].born > round - 1) {
                    continue;
                }
                if let Some((p, ray)) = scatter_pair(&ctx, (i, &d.walls[i]), (j, &d.walls[j]), round) {
                    rays.push((i.min(j), i.max(j), p, ray));
                }
            }
        }
        eprintln!("round {round}: {} candidate rays", rays.len());
        for (a, b, p, ray) in rays {
            if let Some(&(ra, rb)) = registry.get(&p) {
                eprintln!("COLLISION at {:?}", p);
                eprintln!("  registered pair: {} {}", ra, rb);
                eprintln!("    {:?}", d.walls[ra]);
                eprintln!("    {:?}", d.walls[rb]);
                eprintln!("  new pair: {} {}", a, b);
                eprintln!("    {:?}", d.walls[a]);
                eprintln!("    {:?}", d.walls[b]);
                return;
            }
            registry.insert(p, (a, b));
            d.walls.push(ray);
        }
        round += 1;
        if round > 12 { break; }
    }
    eprintln!("no collision; walls = {}", d.walls.len());
}
