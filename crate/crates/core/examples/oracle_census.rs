//! Classical ground truth: exhaustive census, backtracking matcher and the
//! typed refusal above the enumeration cap.

use qsubiso::graph::{erdos_renyi, pad_to_power_of_two, search_space_size};
use qsubiso::oracle::{automorphism_count, backtracking_match, enumerate_matches, Enumeration};

fn main() -> qsubiso::Result<()> {
    let source = pad_to_power_of_two(&erdos_renyi(8, 0.5, 11)?)?;
    let pattern = pad_to_power_of_two(&erdos_renyi(4, 0.5, 16)?)?;
    println!("search space 8 -> 4: {}", search_space_size(8, 4)?);
    match enumerate_matches(&source, &pattern)? {
        Enumeration::Census(c) => {
            println!("census {}", serde_json::to_string(&c.summary())?);
            println!("pattern automorphisms: {}", automorphism_count(&pattern)?);
            let bt = backtracking_match(&source, &pattern)?;
            println!("backtracking agrees: {}", c.matches.as_deref() == Some(bt.as_slice()));
            for m in bt.iter().take(5) {
                println!("  {:?}", m.image());
            }
        }
        Enumeration::Refused { .. } => unreachable!("1680 candidates"),
    }

    let big = pad_to_power_of_two(&erdos_renyi(16, 0.5, 1)?)?;
    let half = pad_to_power_of_two(&erdos_renyi(8, 0.5, 2)?)?;
    if let Enumeration::Refused { space_size, cap } = enumerate_matches(&big, &half)? {
        println!("16 -> 8 refused: {space_size} candidates exceeds cap {cap}");
    }
    Ok(())
}
