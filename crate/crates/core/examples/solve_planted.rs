//! Plant an Ansatz-reachable pattern in a random graph and train on it.
//!
//! Usage: `cargo run --release --example solve_planted -- [N_A] [N_B] [RUNS] [SEED]`

use qsubiso::ansatz::circular_topology;
use qsubiso::graph::{erdos_renyi, pad_to_power_of_two};
use qsubiso::solver::{plant_instance, run_batch, BatchMode, SolverConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qsubiso::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let arg = |i: usize, default: u64| args.get(i).copied().unwrap_or(default);
    let (na, nb, runs, seed) = (arg(0, 8) as usize, arg(1, 4) as usize, arg(2, 20) as usize, arg(3, 1));

    let source = pad_to_power_of_two(&erdos_renyi(na, 0.5, seed)?)?;
    let topology = circular_topology(source.log2_order())?;
    let plant = plant_instance(&source, nb, &topology, &mut ChaCha8Rng::seed_from_u64(seed))?;
    println!("source {na} vertices, planted pattern {nb} vertices, {} parameters", topology.num_params());
    println!("planted map: {:?}", plant.solution.image());

    let config = SolverConfig::exact(seed);
    let batch = run_batch(&source, &plant.pattern, &topology, &config, runs, BatchMode::Convergence)?;
    for (i, r) in batch.runs.iter().enumerate() {
        let found = r.solutions.first().map(|s| format!("{:?}", s.image())).unwrap_or_else(|| "-".into());
        println!("run {i:2}: converged={} steps={:3} first solution {found}", r.converged, r.steps_used);
    }
    let s = &batch.statistics;
    println!(
        "convergent {:.0}%  unique solutions {}  avg steps {}  max steps {}",
        s.convergent_percent,
        s.unique_solutions,
        s.avg_steps.map_or("NA".into(), |v| format!("{v:.1}")),
        s.max_steps.map_or("NA".into(), |v| v.to_string()),
    );
    Ok(())
}
