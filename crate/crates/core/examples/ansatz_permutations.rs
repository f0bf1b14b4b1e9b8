//! Inspect the circular Ansatz: its wiring, the permutations it reaches at
//! integer-π parameters, and how rounding samples them.

use std::f64::consts::PI;

use qsubiso::ansatz::{circular_topology, classical_permutation, reachable_permutations, ParamVector};
use qsubiso::solver::{probabilistic_round, triangle_wave};

fn main() -> qsubiso::Result<()> {
    for k in 2..=4 {
        let t = circular_topology(k)?;
        println!("{t}");
        if t.num_params() <= 16 {
            println!("  reachable permutations of {} indices: {}", t.dimension(), reachable_permutations(&t)?.len());
        }
    }

    let t = circular_topology(3)?;
    let mut g = vec![false; t.num_params()];
    g[0] = true;
    g[7] = true;
    println!(
        "g = {:?} -> {:?}",
        g.iter().map(|&b| b as u8).collect::<Vec<_>>(),
        classical_permutation(&t, &g)?.as_slice()
    );

    let theta = ParamVector::new(vec![0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI, 1.5 * PI])?;
    let probs: Vec<String> = theta.as_slice().iter().map(|x| format!("{:.2}", triangle_wave(x / PI))).collect();
    println!("rounding probabilities {probs:?}");
    for seed in 0..3 {
        let bits: Vec<u8> = probabilistic_round(&theta, seed).into_iter().map(u8::from).collect();
        println!("  seed {seed}: {bits:?}");
    }
    Ok(())
}
