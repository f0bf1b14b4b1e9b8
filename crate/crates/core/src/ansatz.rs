//! The parametric permutation Ansatz.
//!
//! Every primitive is `exp(-i θ/2 · P)` (up to a global phase) for a
//! self-inverse basis permutation `P`, so at `θ ∈ πℤ` the whole circuit
//! collapses to one permutation that can be read off classically.

use std::f64::consts::PI;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexPermutation;
use crate::simulator::{Gate, GateProgram};

/// Largest register width a topology may address.
pub const MAX_REGISTER_QUBITS: usize = 10;

/// Entangling directions used by [`block`].
pub const DEFAULT_BLOCK_DIRECTIONS: [u8; 3] = [0, 1, 0];

/// A parameterized primitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimitiveSpec {
    /// X-rotation `H · U1(θ) · H` on one qubit.
    NonEntangling { qubit: usize },
    /// Hadamard-conjugated controlled phase. `a = 0` controls on `qubits.0`
    /// and targets `qubits.1`; `a = 1` swaps the roles.
    Entangling { qubits: (usize, usize), a: u8 },
}

impl PrimitiveSpec {
    fn control_target(&self) -> Option<(usize, usize)> {
        match *self {
            PrimitiveSpec::NonEntangling { .. } => None,
            PrimitiveSpec::Entangling { qubits: (qa, qb), a: 0 } => Some((qa, qb)),
            PrimitiveSpec::Entangling { qubits: (qa, qb), .. } => Some((qb, qa)),
        }
    }

    /// Basis-index action of the generator.
    fn act(&self, x: usize) -> usize {
        match *self {
            PrimitiveSpec::NonEntangling { qubit } => x ^ (1 << qubit),
            _ => {
                let (c, t) = self.control_target().expect("entangling");
                if x >> c & 1 == 1 {
                    x ^ (1 << t)
                } else {
                    x
                }
            }
        }
    }
}

/// One slot of a topology: a parameterized primitive or a fixed wire swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ElementRecord", into = "ElementRecord")]
pub enum TopologyElement {
    Primitive(PrimitiveSpec),
    Swap(usize, usize),
}

impl TopologyElement {
    fn qubits(&self) -> Vec<usize> {
        match *self {
            TopologyElement::Primitive(PrimitiveSpec::NonEntangling { qubit }) => vec![qubit],
            TopologyElement::Primitive(PrimitiveSpec::Entangling { qubits: (a, b), .. }) => vec![a, b],
            TopologyElement::Swap(a, b) => vec![a, b],
        }
    }

    fn act(&self, x: usize) -> usize {
        match *self {
            TopologyElement::Primitive(p) => p.act(x),
            TopologyElement::Swap(a, b) => {
                let (ba, bb) = (x >> a & 1, x >> b & 1);
                if ba == bb {
                    x
                } else {
                    x ^ (1 << a) ^ (1 << b)
                }
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ElementRecord {
    kind: String,
    qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<u8>,
}

impl From<TopologyElement> for ElementRecord {
    fn from(e: TopologyElement) -> Self {
        let (kind, a) = match e {
            TopologyElement::Primitive(PrimitiveSpec::NonEntangling { .. }) => ("non_entangling", None),
            TopologyElement::Primitive(PrimitiveSpec::Entangling { a, .. }) => ("entangling", Some(a)),
            TopologyElement::Swap(..) => ("swap", None),
        };
        ElementRecord { kind: kind.into(), qubits: e.qubits(), a }
    }
}

impl TryFrom<ElementRecord> for TopologyElement {
    type Error = Error;

    fn try_from(r: ElementRecord) -> Result<Self> {
        let bad = || Error::InvalidTopology(format!("malformed element {r:?}"));
        match (r.kind.as_str(), r.qubits.as_slice(), r.a) {
            ("non_entangling", &[q], None) => Ok(TopologyElement::Primitive(PrimitiveSpec::NonEntangling { qubit: q })),
            ("entangling", &[qa, qb], Some(a)) => {
                Ok(TopologyElement::Primitive(PrimitiveSpec::Entangling { qubits: (qa, qb), a }))
            }
            ("swap", &[qa, qb], None) => Ok(TopologyElement::Swap(qa, qb)),
            _ => Err(bad()),
        }
    }
}

/// The five primitives of a basic block with the default directions.
pub fn block(qa: usize, qb: usize) -> Vec<PrimitiveSpec> {
    block_with_directions(qa, qb, DEFAULT_BLOCK_DIRECTIONS)
}

/// Two non-entangling primitives followed by three entangling ones with the
/// given directions.
pub fn block_with_directions(qa: usize, qb: usize, directions: [u8; 3]) -> Vec<PrimitiveSpec> {
    let mut out = vec![PrimitiveSpec::NonEntangling { qubit: qa }, PrimitiveSpec::NonEntangling { qubit: qb }];
    out.extend(directions.iter().map(|&a| PrimitiveSpec::Entangling { qubits: (qa, qb), a }));
    out
}

/// Ring of blocks on `(0,1), (1,2), …` closed by a wrap-around block.
pub fn circular_topology(k: usize) -> Result<AnsatzTopology> {
    circular_topology_with(k, DEFAULT_BLOCK_DIRECTIONS)
}

/// [`circular_topology`] with custom block directions.
///
/// For `k = 2` the wrap block sits directly on `(1, 0)`. For larger `k` it is
/// a block on `(0, 1)` sandwiched between `Swap(1, k-1)` gates, so the
/// logical pair is `(0, k-1)` while all gates stay nearest-neighbour.
pub fn circular_topology_with(k: usize, directions: [u8; 3]) -> Result<AnsatzTopology> {
    if k < 2 {
        return Err(Error::InvalidTopology(format!("circular topology needs k >= 2, got {k}")));
    }
    let mut elements = Vec::with_capacity(5 * k + 2);
    let prims = |v: Vec<PrimitiveSpec>| v.into_iter().map(TopologyElement::Primitive);
    for i in 0..k - 1 {
        elements.extend(prims(block_with_directions(i, i + 1, directions)));
    }
    if k == 2 {
        elements.extend(prims(block_with_directions(1, 0, directions)));
    } else {
        elements.push(TopologyElement::Swap(1, k - 1));
        elements.extend(prims(block_with_directions(0, 1, directions)));
        elements.push(TopologyElement::Swap(1, k - 1));
    }
    AnsatzTopology::new(k, elements)
}

/// An ordered list of primitives (and wiring swaps) on a `k`-qubit register.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TopologyJson", into = "TopologyJson")]
pub struct AnsatzTopology {
    k: usize,
    elements: Vec<TopologyElement>,
    num_params: usize,
}

#[derive(Serialize, Deserialize)]
struct TopologyJson {
    k: usize,
    elements: Vec<TopologyElement>,
}

impl From<AnsatzTopology> for TopologyJson {
    fn from(t: AnsatzTopology) -> Self {
        TopologyJson { k: t.k, elements: t.elements }
    }
}

impl TryFrom<TopologyJson> for AnsatzTopology {
    type Error = Error;

    fn try_from(j: TopologyJson) -> Result<Self> {
        AnsatzTopology::new(j.k, j.elements)
    }
}

impl AnsatzTopology {
    pub fn new(k: usize, elements: Vec<TopologyElement>) -> Result<Self> {
        if k == 0 || k > MAX_REGISTER_QUBITS {
            return Err(Error::InvalidTopology(format!("register width {k} outside 1..={MAX_REGISTER_QUBITS}")));
        }
        for e in &elements {
            let qs = e.qubits();
            if let Some(&q) = qs.iter().find(|&&q| q >= k) {
                return Err(Error::InvalidTopology(format!("qubit {q} out of range for k = {k} in {e:?}")));
            }
            if qs.len() == 2 && qs[0] == qs[1] {
                return Err(Error::InvalidTopology(format!("repeated qubit in {e:?}")));
            }
            if let TopologyElement::Primitive(PrimitiveSpec::Entangling { a, .. }) = e {
                if *a > 1 {
                    return Err(Error::InvalidTopology(format!("direction a = {a} is not 0 or 1")));
                }
            }
        }
        let num_params = elements.iter().filter(|e| matches!(e, TopologyElement::Primitive(_))).count();
        Ok(Self { k, elements, num_params })
    }

    /// Builds a topology from primitives only.
    pub fn from_primitives(k: usize, primitives: Vec<PrimitiveSpec>) -> Result<Self> {
        Self::new(k, primitives.into_iter().map(TopologyElement::Primitive).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of basis states the register spans, `2^k`.
    pub fn dimension(&self) -> usize {
        1 << self.k
    }

    /// Parameter count `n`.
    pub fn num_params(&self) -> usize {
        self.num_params
    }

    pub fn elements(&self) -> &[TopologyElement] {
        &self.elements
    }

    pub fn primitives(&self) -> impl Iterator<Item = &PrimitiveSpec> + '_ {
        self.elements.iter().filter_map(|e| match e {
            TopologyElement::Primitive(p) => Some(p),
            TopologyElement::Swap(..) => None,
        })
    }

    /// Logical generator of each parameter as a basis permutation, with any
    /// preceding wiring swaps folded in (`F⁻¹ · G · F`).
    pub fn generators(&self) -> Vec<VertexPermutation> {
        let dim = self.dimension();
        let mut frame: Vec<TopologyElement> = Vec::new();
        let mut out = Vec::with_capacity(self.num_params);
        for e in &self.elements {
            match e {
                TopologyElement::Swap(..) => frame.push(*e),
                TopologyElement::Primitive(p) => {
                    let mapping = (0..dim)
                        .map(|x| {
                            let mut y = frame.iter().fold(x, |y, f| f.act(y));
                            y = p.act(y);
                            // Swaps are self-inverse, so undo the frame in reverse.
                            frame.iter().rev().fold(y, |y, f| f.act(y))
                        })
                        .collect();
                    out.push(VertexPermutation::new(mapping).expect("generator is a bijection"));
                }
            }
        }
        out
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Display for AnsatzTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} n={}:", self.k, self.num_params)?;
        for e in &self.elements {
            match e {
                TopologyElement::Primitive(PrimitiveSpec::NonEntangling { qubit }) => write!(f, " X{qubit}")?,
                TopologyElement::Primitive(PrimitiveSpec::Entangling { qubits: (a, b), a: d }) => {
                    write!(f, " C{a}{b}/{d}")?
                }
                TopologyElement::Swap(a, b) => write!(f, " S{a}{b}")?,
            }
        }
        Ok(())
    }
}

/// Real parameter vector `θ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ParamVector {
    theta: Vec<f64>,
}

impl TryFrom<Vec<f64>> for ParamVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ParamVector> for Vec<f64> {
    fn from(p: ParamVector) -> Self {
        p.theta
    }
}

impl ParamVector {
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        if let Some(bad) = theta.iter().find(|t| !t.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite parameter {bad}")));
        }
        Ok(Self { theta })
    }

    pub fn zeros(n: usize) -> Self {
        Self { theta: vec![0.0; n] }
    }

    /// `θ = π·g`.
    pub fn from_bits(g: &[bool]) -> Self {
        Self { theta: g.iter().map(|&b| if b { PI } else { 0.0 }).collect() }
    }

    /// Uniform draw from `[0, π]ⁿ`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self { theta: (0..n).map(|_| rng.gen_range(0.0..=PI)).collect() }
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.theta
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.theta
    }

    /// Copy with `theta[i] += delta`.
    pub fn shifted(&self, i: usize, delta: f64) -> Self {
        let mut out = self.clone();
        out.theta[i] += delta;
        out
    }
}

/// Gate fragment for `P̃(θ)` (or its adjoint) with all qubits shifted by
/// `register_offset`.
pub fn emit_gates(
    t: &AnsatzTopology,
    theta: &ParamVector,
    adjoint: bool,
    register_offset: usize,
) -> Result<GateProgram> {
    if theta.len() != t.num_params() {
        return Err(Error::SizeMismatch(format!(
            "topology has {} parameters, theta has {}",
            t.num_params(),
            theta.len()
        )));
    }
    let mut per_element: Vec<Vec<Gate>> = Vec::with_capacity(t.elements.len());
    let mut params = theta.as_slice().iter();
    let sign = if adjoint { -1.0 } else { 1.0 };
    let o = register_offset;
    for e in &t.elements {
        let gates = match *e {
            TopologyElement::Swap(a, b) => vec![Gate::Swap(a + o, b + o)],
            TopologyElement::Primitive(p) => {
                let angle = sign * params.next().expect("length checked");
                match p {
                    PrimitiveSpec::NonEntangling { qubit } => vec![
                        Gate::HadamardLayer(vec![qubit + o]),
                        Gate::Phase { qubit: qubit + o, angle },
                        Gate::HadamardLayer(vec![qubit + o]),
                    ],
                    PrimitiveSpec::Entangling { .. } => {
                        let (c, tq) = p.control_target().expect("entangling");
                        vec![
                            Gate::HadamardLayer(vec![tq + o]),
                            Gate::ControlledPhase { control: c + o, target: tq + o, angle },
                            Gate::HadamardLayer(vec![tq + o]),
                        ]
                    }
                }
            }
        };
        per_element.push(gates);
    }
    // Each element is a palindrome, so reversing element order suffices.
    if adjoint {
        per_element.reverse();
    }
    Ok(per_element.into_iter().flatten().collect())
}

/// The basis permutation realized by the fragment at `θ = π·g`:
/// `mapping[x]` is the basis state that `|x>` is sent to.
pub fn classical_permutation(t: &AnsatzTopology, g: &[bool]) -> Result<VertexPermutation> {
    if g.len() != t.num_params() {
        return Err(Error::SizeMismatch(format!("topology has {} parameters, g has {}", t.num_params(), g.len())));
    }
    // Only active elements matter; resolve them once, then walk each index.
    let mut bits = g.iter();
    let active: Vec<TopologyElement> = t
        .elements
        .iter()
        .filter(|e| match e {
            TopologyElement::Swap(..) => true,
            TopologyElement::Primitive(_) => *bits.next().expect("length checked"),
        })
        .copied()
        .collect();
    let mapping = (0..t.dimension()).map(|x| active.iter().fold(x, |y, e| e.act(y))).collect();
    VertexPermutation::new(mapping)
}

/// Every permutation reachable at integer-π parameters, deduplicated.
/// Enumerates all `2ⁿ` bit strings, so only sensible for small `n`.
pub fn reachable_permutations(t: &AnsatzTopology) -> Result<Vec<VertexPermutation>> {
    let n = t.num_params();
    if n > 24 {
        return Err(Error::InvalidParameter(format!("2^{n} bit strings is too many to enumerate")));
    }
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u64..(1 << n) {
        let g: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        seen.insert(classical_permutation(t, &g)?.as_slice().to_vec());
    }
    seen.into_iter().map(VertexPermutation::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::{Statevector, EXACT_TOLERANCE};
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn apply(program: &GateProgram, num_qubits: usize, x: usize) -> Statevector {
        let mut s = Statevector::basis(num_qubits, x).unwrap();
        s.apply_program(program).unwrap();
        s
    }

    fn random_bits(n: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
        (0..n).map(|_| rng.gen()).collect()
    }

    #[test]
    fn block_layout() {
        let b = block(0, 1);
        assert_eq!(
            b,
            vec![
                PrimitiveSpec::NonEntangling { qubit: 0 },
                PrimitiveSpec::NonEntangling { qubit: 1 },
                PrimitiveSpec::Entangling { qubits: (0, 1), a: 0 },
                PrimitiveSpec::Entangling { qubits: (0, 1), a: 1 },
                PrimitiveSpec::Entangling { qubits: (0, 1), a: 0 },
            ]
        );
        let r = block(1, 0);
        assert_eq!(r[0], PrimitiveSpec::NonEntangling { qubit: 1 });
        assert_eq!(r[2], PrimitiveSpec::Entangling { qubits: (1, 0), a: 0 });
    }

    #[test]
    fn circular_parameter_counts() {
        assert_eq!(circular_topology(2).unwrap().num_params(), 10);
        assert_eq!(circular_topology(3).unwrap().num_params(), 15);
        assert_eq!(circular_topology(4).unwrap().num_params(), 20);
        assert!(circular_topology(1).is_err());
    }

    #[test]
    fn circular_pairs() {
        let pairs = |k| {
            let t = circular_topology(k).unwrap();
            let mut v: Vec<(usize, usize)> = Vec::new();
            for g in t.generators().iter().step_by(5) {
                // A non-entangling generator flips exactly one bit.
                let q = g.apply(0).trailing_zeros() as usize;
                v.push((q, 0));
            }
            let mut out = Vec::new();
            for (i, g) in t.generators().iter().enumerate().skip(1).step_by(5) {
                let first = v[i / 5].0;
                out.push((first, g.apply(0).trailing_zeros() as usize));
            }
            out
        };
        assert_eq!(pairs(2), vec![(0, 1), (1, 0)]);
        assert_eq!(pairs(3), vec![(0, 1), (1, 2), (0, 2)]);
        assert_eq!(pairs(4), vec![(0, 1), (1, 2), (2, 3), (0, 3)]);
    }

    #[test]
    fn generators_are_involutions() {
        for k in 2..=5 {
            let t = circular_topology(k).unwrap();
            for g in t.generators() {
                assert!(g.compose(&g).unwrap().is_identity());
                assert!(!g.is_identity());
            }
        }
    }

    #[test]
    fn invalid_topologies_rejected() {
        let e = |qa, qb, a| TopologyElement::Primitive(PrimitiveSpec::Entangling { qubits: (qa, qb), a });
        assert!(AnsatzTopology::new(2, vec![e(0, 2, 0)]).is_err());
        assert!(AnsatzTopology::new(2, vec![e(1, 1, 0)]).is_err());
        assert!(AnsatzTopology::new(2, vec![e(0, 1, 2)]).is_err());
        assert!(AnsatzTopology::new(0, vec![]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = circular_topology(3).unwrap();
        let s = t.to_json_string().unwrap();
        assert!(s.contains("\"kind\": \"swap\""));
        assert_eq!(AnsatzTopology::from_json_str(&s).unwrap(), t);
        let bad = r#"{"k":2,"elements":[{"kind":"entangling","qubits":[0]}]}"#;
        assert!(AnsatzTopology::from_json_str(bad).is_err());
        let theta = ParamVector::new(vec![0.5, 1.0]).unwrap();
        let back: ParamVector = serde_json::from_str(&serde_json::to_string(&theta).unwrap()).unwrap();
        assert_eq!(back, theta);
    }

    #[test]
    fn theta_zero_is_identity() {
        let t = circular_topology(3).unwrap();
        let prog = emit_gates(&t, &ParamVector::zeros(15), false, 0).unwrap();
        for x in 0..8 {
            let s = apply(&prog, 3, x);
            assert!((s.amplitude(x).norm() - 1.0).abs() < EXACT_TOLERANCE);
        }
    }

    #[test]
    fn length_mismatch_rejected() {
        let t = circular_topology(2).unwrap();
        assert!(emit_gates(&t, &ParamVector::zeros(9), false, 0).is_err());
        assert!(classical_permutation(&t, &[true; 3]).is_err());
        assert!(ParamVector::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn single_primitives_at_pi() {
        let ne = AnsatzTopology::from_primitives(1, vec![PrimitiveSpec::NonEntangling { qubit: 0 }]).unwrap();
        let prog = emit_gates(&ne, &ParamVector::from_bits(&[true]), false, 0).unwrap();
        for x in 0..2 {
            assert!((apply(&prog, 1, x).amplitude(x ^ 1).norm() - 1.0).abs() < EXACT_TOLERANCE);
        }
        assert_eq!(classical_permutation(&ne, &[true]).unwrap().as_slice(), &[1, 0]);

        let cx = AnsatzTopology::from_primitives(2, vec![PrimitiveSpec::Entangling { qubits: (0, 1), a: 0 }]).unwrap();
        let prog = emit_gates(&cx, &ParamVector::from_bits(&[true]), false, 0).unwrap();
        let cnot = [0, 3, 2, 1];
        for (x, &y) in cnot.iter().enumerate() {
            assert!((apply(&prog, 2, x).amplitude(y).norm() - 1.0).abs() < EXACT_TOLERANCE);
        }
        assert_eq!(classical_permutation(&cx, &[true]).unwrap().as_slice(), &cnot);
    }

    #[test]
    fn integer_pi_collapse_matches_classical_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in 2..=4 {
            let t = circular_topology(k).unwrap();
            for _ in 0..20 {
                let g = random_bits(t.num_params(), &mut rng);
                let perm = classical_permutation(&t, &g).unwrap();
                let prog = emit_gates(&t, &ParamVector::from_bits(&g), false, 0).unwrap();
                let mut phase: Option<Complex64> = None;
                for x in 0..t.dimension() {
                    let amp = apply(&prog, k, x).amplitude(perm.apply(x));
                    assert!((amp.norm() - 1.0).abs() < EXACT_TOLERANCE);
                    let ph = *phase.get_or_insert(amp);
                    assert!((amp - ph).norm() < EXACT_TOLERANCE);
                }
            }
        }
    }

    #[test]
    fn adjoint_inverts_fragment() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = circular_topology(3).unwrap();
        let theta = ParamVector::random(t.num_params(), &mut rng);
        let mut prog = emit_gates(&t, &theta, false, 1).unwrap();
        prog.extend(emit_gates(&t, &theta, true, 1).unwrap());
        for x in 0..16 {
            let s = apply(&prog, 4, x);
            assert!((s.norm_sqr() - 1.0).abs() < EXACT_TOLERANCE);
            assert!((s.amplitude(x).norm() - 1.0).abs() < EXACT_TOLERANCE);
        }
    }

    #[test]
    fn plus_state_is_stabilized() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for k in 2..=4 {
            let t = circular_topology(k).unwrap();
            let theta = ParamVector::random(t.num_params(), &mut rng);
            let mut prog = GateProgram::new();
            prog.push(Gate::HadamardLayer((0..k).collect()));
            let plus = crate::simulator::run(&prog, k).unwrap();
            prog.extend(emit_gates(&t, &theta, false, 0).unwrap());
            let out = crate::simulator::run(&prog, k).unwrap();
            assert!((plus.inner(&out).norm() - 1.0).abs() < EXACT_TOLERANCE);
        }
    }

    #[test]
    fn half_pi_expands_over_all_words() {
        // At θ = (π/2)·1 the fragment is 2^{-n/2} Σ_g (-i)^{|g|} P_g up to a
        // global phase, summed over every bit string g.
        for k in 2..=3 {
            let t = circular_topology(k).unwrap();
            let n = t.num_params();
            let theta = ParamVector::new(vec![PI / 2.0; n]).unwrap();
            let s = apply(&emit_gates(&t, &theta, false, 0).unwrap(), k, 0);
            let mut expected = vec![Complex64::default(); t.dimension()];
            let powers = [
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(0.0, 1.0),
            ];
            for mask in 0u64..(1 << n) {
                let g: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                let y = classical_permutation(&t, &g).unwrap().apply(0);
                expected[y] += powers[mask.count_ones() as usize % 4];
            }
            let scale = 2f64.powf(-(n as f64) / 2.0);
            let global = Complex64::from_polar(1.0, n as f64 * PI / 4.0);
            for (y, e) in expected.iter().enumerate() {
                assert!((s.amplitude(y) - global * e * scale).norm() < EXACT_TOLERANCE, "k={k} y={y}");
            }
        }
    }

    #[test]
    fn primitive_is_rotation_about_its_generator() {
        // exp(iφP) = cos φ I + i sin φ P for P² = I; each primitive equals
        // e^{iθ/2} · exp(-iθ/2 · P).
        let t = circular_topology(2).unwrap();
        let gens = t.generators();
        let theta_val = 0.731;
        for (i, p) in t.primitives().enumerate() {
            let single = AnsatzTopology::from_primitives(2, vec![*p]).unwrap();
            let prog = emit_gates(&single, &ParamVector::new(vec![theta_val]).unwrap(), false, 0).unwrap();
            let global = Complex64::from_polar(1.0, theta_val / 2.0);
            let c = Complex64::new((theta_val / 2.0).cos(), 0.0);
            let s = Complex64::new(0.0, -(theta_val / 2.0).sin());
            for x in 0..4 {
                let out = apply(&prog, 2, x);
                for y in 0..4 {
                    let mut expected = Complex64::default();
                    if y == x {
                        expected += c;
                    }
                    if y == gens[i].apply(x) {
                        expected += s;
                    }
                    assert!((out.amplitude(y) - global * expected).norm() < EXACT_TOLERANCE);
                }
            }
        }
    }

    #[test]
    fn reachable_set_for_two_qubits_is_full() {
        let t = circular_topology(2).unwrap();
        assert_eq!(reachable_permutations(&t).unwrap().len(), 24);
        // Three qubits reach at most the affine group AGL(3, 2).
        let t3 = circular_topology(3).unwrap();
        let r = reachable_permutations(&t3).unwrap();
        assert!(r.len() <= 1344 && r.len() > 24);
    }
}
