//! Classical ground truth for the quantum pipeline.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{permute, search_space_size, AdjacencyMatrix, PartialPermutation, VertexPermutation};

/// Default ceiling on the number of injective maps [`enumerate_matches`]
/// will visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Matches beyond this count are tallied but not stored.
pub const MATCH_LIST_CAP: usize = 100_000;

/// Exhaustive count of zero-loss maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchCensus {
    /// Zero-loss partial permutations.
    pub total_matches: u64,
    /// Distinct image vertex subsets among them.
    pub unique_solutions: u64,
    /// All matches in lexicographic image order, unless there are more
    /// than [`MATCH_LIST_CAP`].
    pub matches: Option<Vec<PartialPermutation>>,
}

/// Compact census form, `{"unique": u, "total": t}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub unique: u64,
    pub total: u64,
}

impl MatchCensus {
    pub fn summary(&self) -> CensusSummary {
        CensusSummary { unique: self.unique_solutions, total: self.total_matches }
    }

    pub fn contains(&self, candidate: &PartialPermutation) -> Option<bool> {
        self.matches.as_ref().map(|m| m.binary_search(candidate).is_ok())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumeration {
    Census(MatchCensus),
    /// The search space exceeds the cap; nothing was enumerated.
    Refused {
        space_size: BigUint,
        cap: u64,
    },
}

impl Enumeration {
    pub fn census(self) -> Option<MatchCensus> {
        match self {
            Enumeration::Census(c) => Some(c),
            Enumeration::Refused { .. } => None,
        }
    }
}

fn check_sizes(source: &AdjacencyMatrix, pattern: &AdjacencyMatrix) -> Result<()> {
    if pattern.order() > source.order() {
        return Err(Error::SizeMismatch(format!(
            "pattern order {} exceeds source order {}",
            pattern.order(),
            source.order()
        )));
    }
    Ok(())
}

/// Brute force over every injective map with the default cap.
pub fn enumerate_matches(source: &AdjacencyMatrix, pattern: &AdjacencyMatrix) -> Result<Enumeration> {
    enumerate_matches_with_cap(source, pattern, DEFAULT_ENUMERATION_CAP)
}

/// Visits all `N_A!/(N_A−N_B)!` injective maps in lexicographic order and
/// keeps those with zero classical loss. Each candidate is only rejected on
/// its first mismatching pair; prefixes are never pruned.
pub fn enumerate_matches_with_cap(
    source: &AdjacencyMatrix,
    pattern: &AdjacencyMatrix,
    cap: u64,
) -> Result<Enumeration> {
    check_sizes(source, pattern)?;
    let space_size = search_space_size(source.order(), pattern.order())?;
    if space_size > BigUint::from(cap) {
        return Ok(Enumeration::Refused { space_size, cap });
    }
    let (na, nb) = (source.order(), pattern.order());
    let mut image = Vec::with_capacity(nb);
    let mut used = vec![false; na];
    let mut total = 0u64;
    let mut matches = Vec::new();
    let mut subsets = BTreeSet::new();
    let mut visit = |image: &[usize]| {
        let ok = (0..nb).all(|i| (0..i).all(|j| source.get(image[i], image[j]) == pattern.get(i, j)));
        if ok {
            total += 1;
            let mut s = image.to_vec();
            s.sort_unstable();
            subsets.insert(s);
            if matches.len() <= MATCH_LIST_CAP {
                matches.push(image.to_vec());
            }
        }
    };
    all_injective(na, nb, &mut image, &mut used, &mut visit);
    let matches = (matches.len() <= MATCH_LIST_CAP).then(|| {
        matches.into_iter().map(|m| PartialPermutation::new(na, m).expect("injective by construction")).collect()
    });
    Ok(Enumeration::Census(MatchCensus { total_matches: total, unique_solutions: subsets.len() as u64, matches }))
}

fn all_injective(na: usize, nb: usize, image: &mut Vec<usize>, used: &mut [bool], visit: &mut impl FnMut(&[usize])) {
    if image.len() == nb {
        visit(image);
        return;
    }
    for v in 0..na {
        if !used[v] {
            used[v] = true;
            image.push(v);
            all_injective(na, nb, image, used, visit);
            image.pop();
            used[v] = false;
        }
    }
}

/// Depth-first induced-subgraph matcher: pattern vertex `i` is placed only
/// if its adjacency to every earlier vertex agrees with the source.
/// Results come out in lexicographic image order.
pub fn backtracking_match(source: &AdjacencyMatrix, pattern: &AdjacencyMatrix) -> Result<Vec<PartialPermutation>> {
    check_sizes(source, pattern)?;
    let (na, nb) = (source.order(), pattern.order());
    let mut out = Vec::new();
    let mut image = Vec::with_capacity(nb);
    let mut used = vec![false; na];
    extend(source, pattern, &mut image, &mut used, &mut out);
    Ok(out.into_iter().map(|m| PartialPermutation::new(na, m).expect("injective by construction")).collect())
}

fn extend(
    source: &AdjacencyMatrix,
    pattern: &AdjacencyMatrix,
    image: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let i = image.len();
    if i == pattern.order() {
        out.push(image.clone());
        return;
    }
    for v in 0..source.order() {
        if used[v] || (0..i).any(|j| source.get(v, image[j]) != pattern.get(i, j)) {
            continue;
        }
        used[v] = true;
        image.push(v);
        extend(source, pattern, image, used, out);
        image.pop();
        used[v] = false;
    }
}

/// `½ + (1/(2N_B²)) Σ_{i,j<N_B} (−1)^{A[p⁻¹(i)][p⁻¹(j)] + B[i][j]}`, the
/// loss-circuit amplitude at the parameters encoding `p`.
pub fn closed_form_amplitude(
    source: &AdjacencyMatrix,
    pattern: &AdjacencyMatrix,
    p: &VertexPermutation,
) -> Result<f64> {
    check_sizes(source, pattern)?;
    if p.len() != source.order() {
        return Err(Error::SizeMismatch(format!("permutation of length {} on order {}", p.len(), source.order())));
    }
    let inv = p.inverse();
    let nb = pattern.order();
    let mut sum = 0i64;
    for i in 0..nb {
        for j in 0..nb {
            let a = source.get(inv.apply(i), inv.apply(j));
            sum += if a == pattern.get(i, j) { 1 } else { -1 };
        }
    }
    Ok(0.5 + sum as f64 / (2 * nb * nb) as f64)
}

/// Qubit counts for an `n`-vertex problem under this method and the QUBO
/// baselines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitRequirements {
    pub n: usize,
    pub this_method: usize,
    pub qubo_full: usize,
    pub compressed_min: usize,
    pub compressed_max: usize,
}

/// `2⌈log₂ n⌉ + 1` against `n²`, `n + 2` and `n²`.
pub fn qubit_requirements(n: usize) -> QubitRequirements {
    let log = n.next_power_of_two().trailing_zeros() as usize;
    QubitRequirements { n, this_method: 2 * log + 1, qubo_full: n * n, compressed_min: n + 2, compressed_max: n * n }
}

/// Number of automorphisms of `a`.
pub fn automorphism_count(a: &AdjacencyMatrix) -> Result<u64> {
    match enumerate_matches(a, a)? {
        Enumeration::Census(c) => Ok(c.total_matches),
        Enumeration::Refused { space_size, cap } => {
            Err(Error::InvalidParameter(format!("{space_size} permutations exceeds the cap {cap}")))
        }
    }
}

/// Whether selecting the upper block of `source` relabeled by any completion
/// of `m` reproduces `pattern`.
pub fn reproduces_pattern(source: &AdjacencyMatrix, pattern: &AdjacencyMatrix, m: &PartialPermutation) -> Result<bool> {
    let block = permute(source, &m.completion())?.upper_block(pattern.order())?;
    Ok(&block == pattern)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{erdos_renyi, pad_to_power_of_two};

    fn paw() -> AdjacencyMatrix {
        AdjacencyMatrix::from_rows(&[vec![0, 1, 0, 1], vec![1, 0, 1, 1], vec![0, 1, 0, 0], vec![1, 1, 0, 0]]).unwrap()
    }

    fn census(a: &AdjacencyMatrix, b: &AdjacencyMatrix) -> MatchCensus {
        enumerate_matches(a, b).unwrap().census().unwrap()
    }

    #[test]
    fn paw_automorphisms() {
        // Swapping the two degree-2 vertices 0 and 3 is the paw's only
        // nontrivial symmetry.
        let c = census(&paw(), &paw());
        assert_eq!(c.total_matches, 2);
        assert_eq!(c.unique_solutions, 1);
        let ms = c.matches.unwrap();
        assert!(ms.contains(&PartialPermutation::new(4, vec![0, 1, 2, 3]).unwrap()));
    }

    #[test]
    fn single_vertex_pattern_matches_everywhere() {
        let a = pad_to_power_of_two(&erdos_renyi(8, 0.5, 1).unwrap()).unwrap();
        let c = census(&a, &AdjacencyMatrix::zeros(1).unwrap());
        assert_eq!((c.total_matches, c.unique_solutions), (8, 8));
    }

    #[test]
    fn clique_into_tree_is_empty() {
        let k4 = AdjacencyMatrix::from_rows(&[vec![0, 1, 1, 1], vec![1, 0, 1, 1], vec![1, 1, 0, 1], vec![1, 1, 1, 0]])
            .unwrap();
        let mut rows = vec![vec![0u8; 8]; 8];
        for (u, v) in [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (4, 6), (6, 7)] {
            rows[u][v] = 1;
            rows[v][u] = 1;
        }
        let tree = AdjacencyMatrix::from_rows(&rows).unwrap();
        assert!(backtracking_match(&tree, &k4).unwrap().is_empty());
        assert_eq!(census(&tree, &k4).total_matches, 0);
    }

    #[test]
    fn oracles_agree() {
        for seed in 0..4 {
            let a = pad_to_power_of_two(&erdos_renyi(16, 0.4, seed).unwrap()).unwrap();
            let b = pad_to_power_of_two(&erdos_renyi(4, 0.5, 50 + seed).unwrap()).unwrap();
            let c = census(&a, &b);
            let bt = backtracking_match(&a, &b).unwrap();
            assert_eq!(c.matches.as_ref().unwrap(), &bt);
            assert!(c.unique_solutions <= c.total_matches);
            assert_eq!(c.total_matches % automorphism_count(&b).unwrap(), 0);
            for m in &bt {
                assert!(reproduces_pattern(&a, &b, m).unwrap());
            }
        }
    }

    #[test]
    fn cap_refusal_is_typed() {
        let a = AdjacencyMatrix::zeros(16).unwrap();
        let b = AdjacencyMatrix::zeros(8).unwrap();
        match enumerate_matches(&a, &b).unwrap() {
            Enumeration::Refused { space_size, cap } => {
                assert_eq!(space_size, BigUint::from(518_918_400u64));
                assert_eq!(cap, DEFAULT_ENUMERATION_CAP);
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn closed_form_examples() {
        let a = paw();
        let id = VertexPermutation::identity(4);
        assert_eq!(closed_form_amplitude(&a, &a, &id).unwrap(), 1.0);
        assert_eq!(closed_form_amplitude(&a, &AdjacencyMatrix::zeros(4).unwrap(), &id).unwrap(), 0.5);
    }

    #[test]
    fn resource_formulas() {
        assert_eq!(qubit_requirements(16).this_method, 9);
        assert_eq!(qubit_requirements(8).this_method, 7);
        assert_eq!(qubit_requirements(17).this_method, 11);
        assert_eq!(qubit_requirements(4).this_method, 5);
        let r = qubit_requirements(4);
        assert_eq!((r.qubo_full, r.compressed_min, r.compressed_max), (16, 6, 16));
    }

    #[test]
    fn census_summary_json() {
        let c = census(&paw(), &paw());
        assert_eq!(serde_json::to_string(&c.summary()).unwrap(), r#"{"unique":1,"total":2}"#);
    }
}
