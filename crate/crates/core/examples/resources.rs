//! Qubit requirements of this encoding against QUBO formulations.

use qsubiso::cli::cmd_resources;

fn main() -> qsubiso::Result<()> {
    let ns: Vec<usize> = (2..=32).collect();
    print!("{}", cmd_resources(&ns)?);
    Ok(())
}
