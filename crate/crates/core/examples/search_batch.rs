//! Search regime: random 16-vertex source, random 4-vertex pattern, each run
//! on a freshly relabeled source. Solutions are checked against the oracle.
//!
//! Usage: `cargo run --release --example search_batch -- [RUNS] [SEED]`

use qsubiso::ansatz::circular_topology;
use qsubiso::graph::{erdos_renyi, pad_to_power_of_two};
use qsubiso::oracle::enumerate_matches;
use qsubiso::solver::{run_batch, BatchMode, SolverConfig, StatsRow};

fn main() -> qsubiso::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let runs = args.first().copied().unwrap_or(10) as usize;
    let seed = args.get(1).copied().unwrap_or(7);

    let source = pad_to_power_of_two(&erdos_renyi(16, 0.5, seed)?)?;
    let pattern = pad_to_power_of_two(&erdos_renyi(4, 0.5, seed + 1)?)?;
    let census = enumerate_matches(&source, &pattern)?.census().expect("16/4 is within the cap");
    println!("oracle: {} matches on {} vertex subsets", census.total_matches, census.unique_solutions);

    let topology = circular_topology(4)?;
    let config = SolverConfig { seed, ..SolverConfig::default() };
    let batch = run_batch(&source, &pattern, &topology, &config, runs, BatchMode::Search)?;
    let found = batch.all_solutions();
    let contained = found.iter().all(|s| census.contains(s) == Some(true));
    println!("found {} distinct maps, all in the oracle set: {contained}", found.len());

    let row = StatsRow::new("search-16-4", 16, 4, &topology, &batch.statistics)?;
    qsubiso::solver::write_stats_csv(std::io::stdout(), &[row], None)?;
    Ok(())
}
