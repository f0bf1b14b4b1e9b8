//! Build the GI and SGI loss circuits and compare the simulated amplitude
//! with the classical disparity at integer-π parameters.

use qsubiso::ansatz::{circular_topology, classical_permutation, ParamVector};
use qsubiso::graph::{disparity, erdos_renyi, pad_to_power_of_two, permute, AdjacencyMatrix};
use qsubiso::oracle::closed_form_amplitude;
use qsubiso::solver::{build_circuit, exact_utility, zero_probability, LossCircuitSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> qsubiso::Result<()> {
    let paw = AdjacencyMatrix::from_rows(&[vec![0, 1, 0, 1], vec![1, 0, 1, 1], vec![0, 1, 0, 0], vec![1, 1, 0, 0]])?;
    let t2 = circular_topology(2)?;
    let gi = LossCircuitSpec::auto(paw.clone(), AdjacencyMatrix::zeros(4)?, t2)?;
    let zero = ParamVector::zeros(10);
    println!(
        "GI paw vs empty graph at θ=0: {} gates, P0 = {:.4}",
        build_circuit(&gi, &zero)?.len(),
        zero_probability(&gi, &zero)?
    );

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = pad_to_power_of_two(&erdos_renyi(8, 0.5, 1)?)?;
    let b = pad_to_power_of_two(&erdos_renyi(4, 0.5, 2)?)?;
    let t3 = circular_topology(3)?;
    let sgi = LossCircuitSpec::auto(a.clone(), b.clone(), t3.clone())?;
    println!("SGI 8/4 circuit on {} qubits, mode {:?}", sgi.num_qubits(), sgi.mode());
    for _ in 0..5 {
        let g: Vec<bool> = (0..t3.num_params()).map(|_| rng.gen()).collect();
        let p = classical_permutation(&t3, &g)?;
        let quantum = 1.0 - exact_utility(&sgi, &ParamVector::from_bits(&g))?;
        let block = permute(&a, &p)?.upper_block(4)?;
        println!(
            "  quantum loss {quantum:.6}  disparity {:.6}  1 - closed form {:.6}",
            disparity(&block, &b)?,
            1.0 - closed_form_amplitude(&a, &b, &p)?
        );
    }
    Ok(())
}
