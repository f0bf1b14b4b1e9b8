//! Undirected graphs, their adjacency matrices over Z2, vertex permutations,
//! and the classical mismatch loss.
//!
//! Adjacency matrices always have a power-of-two order `N = 2^k`. Graphs with
//! other vertex counts are padded with isolated vertices at the high indices,
//! so a solution over padded indices maps back to original labels by dropping
//! every index `>= num_vertices`.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest adjacency order accepted anywhere in the crate.
pub const MAX_ORDER: usize = 1 << 10;

/// A finite undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(num_vertices: usize) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        Ok(Self { num_vertices, edges: BTreeSet::new() })
    }

    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(num_vertices)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts `{u, v}`. Re-inserting an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop on vertex {u}")));
        }
        if u >= self.num_vertices || v >= self.num_vertices {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.num_vertices
            )));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(low, high)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson { n: self.num_vertices, edges: self.edges.iter().map(|&(u, v)| [u, v]).collect() }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let mut g = Self::new(json.n)?;
        for &[u, v] in &json.edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Reads the plain edge-list format: one `u v` pair per line, 0-based.
    ///
    /// Blank lines are skipped. A `# n <count>` line fixes the vertex count
    /// (needed for trailing isolated vertices); other `#` lines are comments.
    /// Without a header the vertex count is one more than the largest label.
    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        let mut declared = None;
        let mut pairs = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let mut words = rest.split_whitespace();
                if words.next() == Some("n") {
                    let n = words
                        .next()
                        .and_then(|w| w.parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse(format!("line {}: bad `# n` header", lineno + 1)))?;
                    declared = Some(n);
                }
                continue;
            }
            let mut words = line.split_whitespace();
            let mut next = || -> Result<usize> {
                words
                    .next()
                    .ok_or_else(|| Error::Parse(format!("line {}: expected `u v`", lineno + 1)))?
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
            };
            let (u, v) = (next()?, next()?);
            pairs.push((u, v));
        }
        let inferred = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1);
        let n = declared.unwrap_or(inferred);
        Self::from_edges(n, &pairs)
    }

    pub fn write_edge_list<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# n {}", self.num_vertices)?;
        for (u, v) in self.edges() {
            writeln!(w, "{u} {v}")?;
        }
        Ok(())
    }
}

/// On-disk graph format: `{"n": <int>, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// Symmetric binary matrix with zero diagonal and power-of-two order,
/// stored as a dense row-major bit field.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u8>>", into = "Vec<Vec<u8>>")]
pub struct AdjacencyMatrix {
    order: usize,
    words: Vec<u64>,
}

impl AdjacencyMatrix {
    pub fn zeros(order: usize) -> Result<Self> {
        check_order(order)?;
        Ok(Self { order, words: vec![0; (order * order).div_ceil(64)] })
    }

    /// Builds from explicit rows, validating symmetry, zero diagonal and
    /// binary entries.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let order = rows.len();
        let mut m = Self::zeros(order)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGraph(format!("row {i} has length {}, expected {order}", row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 if i == j => return Err(Error::InvalidGraph(format!("nonzero diagonal at {i}"))),
                    1 => m.set_bit(i, j),
                    _ => return Err(Error::InvalidGraph(format!("entry ({i}, {j}) = {x} is not binary"))),
                }
            }
        }
        for i in 0..order {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::InvalidGraph(format!("asymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(m)
    }

    /// Adjacency of a graph whose vertex count is already a power of two.
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let mut m = Self::zeros(g.num_vertices())?;
        for (u, v) in g.edges() {
            m.set_edge(u, v);
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `k` with `order = 2^k`.
    pub fn log2_order(&self) -> usize {
        self.order.trailing_zeros() as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        let idx = i * self.order + j;
        (self.words[idx / 64] >> (idx % 64)) & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Entries as nested rows of 0/1.
    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.order).map(|i| (0..self.order).map(|j| self.get(i, j) as u8).collect()).collect()
    }

    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.order).expect("order >= 1");
        for i in 0..self.order {
            for j in i + 1..self.order {
                if self.get(i, j) {
                    g.add_edge(i, j).expect("valid edge");
                }
            }
        }
        g
    }

    /// Entrywise sum over Z2.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::SizeMismatch(format!("orders {} and {}", self.order, other.order)));
        }
        Ok(Self { order: self.order, words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect() })
    }

    /// The leading `size x size` block.
    pub fn upper_block(&self, size: usize) -> Result<Self> {
        if size > self.order {
            return Err(Error::SizeMismatch(format!("block {size} larger than order {}", self.order)));
        }
        let mut m = Self::zeros(size)?;
        for i in 0..size {
            for j in 0..size {
                if self.get(i, j) {
                    m.set_bit(i, j);
                }
            }
        }
        Ok(m)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.set_bit(u, v);
        self.set_bit(v, u);
    }

    fn set_bit(&mut self, i: usize, j: usize) {
        let idx = i * self.order + j;
        self.words[idx / 64] |= 1 << (idx % 64);
    }
}

impl fmt::Debug for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "AdjacencyMatrix({}x{})", self.order, self.order)?;
        for i in 0..self.order {
            let row: String = (0..self.order).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<Vec<u8>>> for AdjacencyMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<u8>>) -> Result<Self> {
        Self::from_rows(&rows)
    }
}

impl From<AdjacencyMatrix> for Vec<Vec<u8>> {
    fn from(m: AdjacencyMatrix) -> Self {
        m.rows()
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || !order.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(order));
    }
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge { order, max: MAX_ORDER });
    }
    Ok(())
}

/// A bijection `i -> p(i)` on `[0, N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexPermutation {
    mapping: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &x in &mapping {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("{mapping:?} is not a bijection on [0, {n})")));
            }
        }
        Ok(Self { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Self { mapping: (0..n).collect() }
    }

    /// Uniformly random permutation (Fisher-Yates).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut mapping: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            mapping.swap(i, j);
        }
        Self { mapping }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mapping
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &p) in self.mapping.iter().enumerate() {
            inv[p] = i;
        }
        Self { mapping: inv }
    }

    /// `self ∘ other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch(format!("permutations of length {} and {}", self.len(), other.len())));
        }
        Ok(Self { mapping: other.mapping.iter().map(|&i| self.mapping[i]).collect() })
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &p)| i == p)
    }
}

impl TryFrom<Vec<usize>> for VertexPermutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<VertexPermutation> for Vec<usize> {
    fn from(p: VertexPermutation) -> Self {
        p.mapping
    }
}

/// An injective vertex map from an `N_B`-vertex pattern into an `N_A`-vertex
/// source: pattern vertex `i` goes to source vertex `image[i]`.
///
/// As a matrix this is `W = S P`, the first `N_B` rows of a permutation
/// matrix, where `image[i] = p^{-1}(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartialPermutation {
    source_order: usize,
    image: Vec<usize>,
}

impl PartialPermutation {
    pub fn new(source_order: usize, image: Vec<usize>) -> Result<Self> {
        if image.len() > source_order {
            return Err(Error::SizeMismatch(format!(
                "pattern of {} vertices cannot embed into {source_order}",
                image.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for &x in &image {
            if x >= source_order || !seen.insert(x) {
                return Err(Error::InvalidPermutation(format!("{image:?} is not injective into [0, {source_order})")));
            }
        }
        Ok(Self { source_order, image })
    }

    /// Selects the first `target_order` rows of `P_p`.
    pub fn from_permutation(p: &VertexPermutation, target_order: usize) -> Result<Self> {
        if target_order > p.len() {
            return Err(Error::SizeMismatch(format!("target {target_order} > permutation length {}", p.len())));
        }
        let inv = p.inverse();
        Ok(Self { source_order: p.len(), image: inv.mapping[..target_order].to_vec() })
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    pub fn target_order(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// The set of source vertices hit by the map, sorted.
    pub fn image_subset(&self) -> Vec<usize> {
        let mut s = self.image.clone();
        s.sort_unstable();
        s
    }

    /// A full permutation `p` with `p^{-1}(i) = image[i]` for `i < N_B`;
    /// unused source vertices fill the remaining slots in increasing order.
    pub fn completion(&self) -> VertexPermutation {
        let used: BTreeSet<usize> = self.image.iter().copied().collect();
        let mut inv = self.image.clone();
        inv.extend((0..self.source_order).filter(|v| !used.contains(v)));
        VertexPermutation { mapping: inv }.inverse()
    }

    /// Relabels source vertices: pattern vertex `i` goes to `relabel(image[i])`.
    pub fn map_source(&self, relabel: &VertexPermutation) -> Result<Self> {
        if relabel.len() != self.source_order {
            return Err(Error::SizeMismatch("relabeling has wrong length".into()));
        }
        Ok(Self { source_order: self.source_order, image: self.image.iter().map(|&v| relabel.apply(v)).collect() })
    }
}

/// Pads a graph with isolated vertices up to the next power of two.
pub fn pad_to_power_of_two(g: &Graph) -> Result<AdjacencyMatrix> {
    let order = g.num_vertices().next_power_of_two();
    let mut m = AdjacencyMatrix::zeros(order)?;
    for (u, v) in g.edges() {
        m.set_edge(u, v);
    }
    Ok(m)
}

/// G(n, p) random graph; each unordered pair is drawn in `(i, j)`, `i < j`
/// lexicographic order from a ChaCha8 stream seeded with `seed`.
pub fn erdos_renyi(n: usize, prob: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&prob) {
        return Err(Error::InvalidParameter(format!("edge probability {prob} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n)?;
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < prob {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// `P A P^T`: entry `(i, j)` of the result is `a[p^{-1}(i)][p^{-1}(j)]`.
pub fn permute(a: &AdjacencyMatrix, p: &VertexPermutation) -> Result<AdjacencyMatrix> {
    if p.len() != a.order() {
        return Err(Error::SizeMismatch(format!("permutation of length {} on order {}", p.len(), a.order())));
    }
    let mut out = AdjacencyMatrix::zeros(a.order())?;
    for i in 0..a.order() {
        for j in i + 1..a.order() {
            if a.get(i, j) {
                out.set_edge(p.apply(i), p.apply(j));
            }
        }
    }
    Ok(out)
}

/// Number of entries `(i, j)`, `i, j < N_B`, where `a[image[i]][image[j]]`
/// disagrees with `b[i][j]`.
pub fn mismatch_count(a: &AdjacencyMatrix, b: &AdjacencyMatrix, image: &[usize]) -> usize {
    let nb = b.order().min(image.len());
    let mut count = 0;
    for i in 0..nb {
        for j in 0..nb {
            if a.get(image[i], image[j]) != b.get(i, j) {
                count += 1;
            }
        }
    }
    count
}

/// `||S P A P^T S^T - B||_F^2`.
pub fn classical_loss(a: &AdjacencyMatrix, b: &AdjacencyMatrix, p: &VertexPermutation) -> Result<usize> {
    if b.order() > a.order() {
        return Err(Error::SizeMismatch(format!("pattern order {} exceeds source order {}", b.order(), a.order())));
    }
    if p.len() != a.order() {
        return Err(Error::SizeMismatch(format!("permutation of length {} on order {}", p.len(), a.order())));
    }
    let inv = p.inverse();
    Ok(mismatch_count(a, b, &inv.as_slice()[..b.order()]))
}

/// Normalized squared Frobenius distance between equal-order matrices.
pub fn disparity(a: &AdjacencyMatrix, b: &AdjacencyMatrix) -> Result<f64> {
    if a.order() != b.order() {
        return Err(Error::SizeMismatch(format!("orders {} and {}", a.order(), b.order())));
    }
    let diff = a.xor(b)?;
    let ones: usize = diff.words.iter().map(|w| w.count_ones() as usize).sum();
    Ok(ones as f64 / (a.order() * a.order()) as f64)
}

/// `N_A! / (N_A - N_B)!`, the number of injective maps of `N_B` vertices
/// into `N_A`.
pub fn search_space_size(n_a: usize, n_b: usize) -> Result<BigUint> {
    if n_b > n_a {
        return Err(Error::SizeMismatch(format!("{n_b} > {n_a}")));
    }
    Ok((n_a - n_b + 1..=n_a).fold(BigUint::from(1u32), |acc, x| acc * BigUint::from(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn paw() -> AdjacencyMatrix {
        AdjacencyMatrix::from_rows(&[vec![0, 1, 0, 1], vec![1, 0, 1, 1], vec![0, 1, 0, 0], vec![1, 1, 0, 0]]).unwrap()
    }

    #[test]
    fn pad_paw_graph() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 3), (1, 3), (1, 2)]).unwrap();
        assert_eq!(pad_to_power_of_two(&g).unwrap(), paw());
    }

    #[test]
    fn pad_single_vertex() {
        let m = pad_to_power_of_two(&Graph::new(1).unwrap()).unwrap();
        assert_eq!(m.order(), 1);
        assert!(!m.get(0, 0));
    }

    #[test]
    fn pad_path_of_five() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let m = pad_to_power_of_two(&g).unwrap();
        assert_eq!(m.order(), 8);
        let mut expected = vec![vec![0u8; 8]; 8];
        for i in 0..4 {
            expected[i][i + 1] = 1;
            expected[i + 1][i] = 1;
        }
        assert_eq!(m.rows(), expected);
        for i in 5..8 {
            assert!((0..8).all(|j| !m.get(i, j) && !m.get(j, i)));
        }
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(AdjacencyMatrix::zeros(3).is_err());
        assert!(AdjacencyMatrix::zeros(MAX_ORDER * 2).is_err());
        assert!(AdjacencyMatrix::from_rows(&[vec![1, 0], vec![0, 0]]).is_err());
        assert!(AdjacencyMatrix::from_rows(&[vec![0, 1], vec![0, 0]]).is_err());
        assert!(AdjacencyMatrix::from_rows(&[vec![0, 2], vec![2, 0]]).is_err());
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 3)]).is_err());
    }

    #[test]
    fn erdos_renyi_extremes_and_determinism() {
        assert_eq!(erdos_renyi(8, 0.0, 11).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(8, 1.0, 11).unwrap().edge_count(), 28);
        assert_eq!(erdos_renyi(16, 0.3, 7).unwrap(), erdos_renyi(16, 0.3, 7).unwrap());
        assert!(erdos_renyi(4, 1.5, 0).is_err());
    }

    #[test]
    fn permute_relabels_paw() {
        // The paw relabelled by p = [2, 3, 1, 0].
        let a = paw();
        let p = VertexPermutation::new(vec![2, 3, 1, 0]).unwrap();
        let out = permute(&a, &p).unwrap();
        let expected = Graph::from_edges(4, &[(2, 3), (2, 0), (3, 0), (3, 1)]).unwrap();
        assert_eq!(out, AdjacencyMatrix::from_graph(&expected).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(out.get(i, j), a.get(p.inverse().apply(i), p.inverse().apply(j)));
            }
        }
        assert_eq!(permute(&a, &VertexPermutation::identity(4)).unwrap(), a);
        assert!(permute(&a, &VertexPermutation::identity(8)).is_err());
    }

    #[test]
    fn classical_loss_examples() {
        let a = paw();
        let id = VertexPermutation::identity(4);
        assert_eq!(classical_loss(&a, &a, &id).unwrap(), 0);
        assert_eq!(classical_loss(&a, &AdjacencyMatrix::zeros(4).unwrap(), &id).unwrap(), 8);
        assert!(classical_loss(&AdjacencyMatrix::zeros(2).unwrap(), &a, &VertexPermutation::identity(2)).is_err());
    }

    #[test]
    fn isomorphic_pair_loss() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let a = AdjacencyMatrix::from_graph(&erdos_renyi(8, 0.5, 3).unwrap()).unwrap();
        let p_star = VertexPermutation::random(8, &mut rng);
        let b = permute(&a, &p_star).unwrap();
        assert_eq!(classical_loss(&a, &b, &p_star).unwrap(), 0);
        let nonzero = (0..50).any(|_| {
            let q = VertexPermutation::random(8, &mut rng);
            classical_loss(&a, &b, &q).unwrap() > 0
        });
        assert!(nonzero);
    }

    #[test]
    fn disparity_examples() {
        let a = paw();
        let zero = AdjacencyMatrix::zeros(4).unwrap();
        assert_eq!(disparity(&a, &a).unwrap(), 0.0);
        assert_eq!(disparity(&a, &zero).unwrap(), 0.5);
        let k4 = AdjacencyMatrix::from_graph(&erdos_renyi(4, 1.0, 0).unwrap()).unwrap();
        assert_eq!(disparity(&k4, &zero).unwrap(), 0.75);
    }

    #[test]
    fn search_space_examples() {
        assert_eq!(search_space_size(8, 4).unwrap(), BigUint::from(1680u32));
        assert_eq!(search_space_size(16, 8).unwrap(), BigUint::from(518_918_400u64));
        assert_eq!(search_space_size(4, 4).unwrap(), BigUint::from(24u32));
        assert!(search_space_size(2, 4).is_err());
    }

    #[test]
    fn partial_permutation_roundtrip() {
        let p = VertexPermutation::new(vec![3, 0, 2, 1]).unwrap();
        let w = PartialPermutation::from_permutation(&p, 2).unwrap();
        assert_eq!(w.image(), &[1, 3]);
        let c = w.completion();
        assert_eq!(&c.inverse().as_slice()[..2], w.image());
        assert!(PartialPermutation::new(4, vec![1, 1]).is_err());
        assert!(PartialPermutation::new(4, vec![4]).is_err());
    }

    #[test]
    fn edge_list_roundtrip() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 4)]).unwrap();
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        assert_eq!(Graph::read_edge_list(&buf[..]).unwrap(), g);
        let bare = Graph::read_edge_list("0 1\n\n1 2\n".as_bytes()).unwrap();
        assert_eq!(bare.num_vertices(), 3);
        assert!(Graph::read_edge_list("0 x\n".as_bytes()).is_err());
    }

    #[test]
    fn graph_json_roundtrip() {
        let g = erdos_renyi(7, 0.4, 2).unwrap();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        let back: GraphJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Graph::from_json(&back).unwrap(), g);
    }
}
