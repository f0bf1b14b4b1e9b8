//! Load a small graph, pad it, and look at its sign-diagonal encoding.

use qsubiso::encoding::{compose, distinguishable, log_hadamard_operator, phase_diagonal};
use qsubiso::graph::{pad_to_power_of_two, AdjacencyMatrix, Graph};

fn main() -> qsubiso::Result<()> {
    // The paw: a triangle 0-1-3 with a pendant vertex 2 on 1.
    let paw = Graph::from_edges(4, &[(0, 1), (0, 3), (1, 3), (1, 2)])?;
    let a = pad_to_power_of_two(&paw)?;
    println!("adjacency {a:?}");

    let d = phase_diagonal(&a);
    println!("sign diagonal over |i,j> = |i*N + j>: {:?}", d.signs());

    // Diagonals compose like XOR of the adjacency matrices.
    let star = AdjacencyMatrix::from_rows(&[vec![0, 1, 1, 1], vec![1, 0, 0, 0], vec![1, 0, 0, 0], vec![1, 0, 0, 0]])?;
    let lhs = compose(&d, &phase_diagonal(&star))?;
    let rhs = phase_diagonal(&a.xor(&star)?);
    println!("D(A)·D(B) == D(A xor B): {}", lhs == rhs);

    let op = log_hadamard_operator(&d, true);
    println!("log-Hadamard operator: {0}x{0} on {1} qubits", op.dim(), op.dim().trailing_zeros());
    println!("paw vs star distinguishable: {}", distinguishable(&a, &star)?);
    println!("paw vs itself distinguishable: {}", distinguishable(&a, &a)?);

    // Five vertices pad to eight.
    let five = Graph::from_edges(5, &[(0, 4), (2, 3)])?;
    println!("5-vertex graph pads to order {}", pad_to_power_of_two(&five)?.order());
    Ok(())
}
