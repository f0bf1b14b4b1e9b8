//! Exact statevector simulation for the small gate set the loss circuits use.
//!
//! Qubit `q` is bit `q` of the basis index (qubit 0 least significant).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::encoding::PhaseDiagonal;
use crate::error::{Error, Result};

/// Tolerance for every exact-mode equality check in the crate.
pub const EXACT_TOLERANCE: f64 = 1e-10;

/// Upper bound on simulated register width.
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    /// One Hadamard on each listed qubit.
    HadamardLayer(Vec<usize>),
    /// `diag(1, e^{iλ})`.
    Phase {
        qubit: usize,
        angle: f64,
    },
    /// Phase `e^{iλ}` on `|11>` of (control, target).
    ControlledPhase {
        control: usize,
        target: usize,
        angle: f64,
    },
    Swap(usize, usize),
    /// `I ⊕ D` with `D` acting on the `2k` qubits starting at `offset`
    /// (`D` index `= (x >> offset) mod N^2`), conditioned on `control`.
    ControlledSignDiagonal {
        control: usize,
        offset: usize,
        diagonal: PhaseDiagonal,
    },
}

impl Gate {
    fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::HadamardLayer(qs) => qs.clone(),
            Gate::Phase { qubit, .. } => vec![*qubit],
            Gate::ControlledPhase { control, target, .. } => vec![*control, *target],
            Gate::Swap(a, b) => vec![*a, *b],
            Gate::ControlledSignDiagonal { control, offset, diagonal } => {
                let width = 2 * diagonal.order().trailing_zeros() as usize;
                let mut qs = vec![*control];
                qs.extend(*offset..offset + width);
                qs
            }
        }
    }

    fn validate(&self, num_qubits: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange { index: q, num_qubits });
            }
        }
        match self {
            Gate::ControlledPhase { control, target, .. } if control == target => {
                Err(Error::InvalidGate(format!("controlled phase with control = target = {control}")))
            }
            Gate::ControlledSignDiagonal { control, offset, diagonal } => {
                let width = 2 * diagonal.order().trailing_zeros() as usize;
                if (*offset..offset + width).contains(control) {
                    return Err(Error::InvalidGate(format!("control {control} inside diagonal target range")));
                }
                Ok(())
            }
            Gate::Phase { angle, .. } | Gate::ControlledPhase { angle, .. } if !angle.is_finite() => {
                Err(Error::InvalidGate(format!("non-finite angle {angle}")))
            }
            _ => Ok(()),
        }
    }
}

/// An ordered gate list.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GateProgram {
    gates: Vec<Gate>,
}

impl GateProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    pub fn extend(&mut self, other: GateProgram) -> &mut Self {
        self.gates.extend(other.gates);
        self
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        self.gates.iter().try_for_each(|g| g.validate(num_qubits))
    }
}

impl FromIterator<Gate> for GateProgram {
    fn from_iter<I: IntoIterator<Item = Gate>>(iter: I) -> Self {
        Self { gates: iter.into_iter().collect() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|0...0>`.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits > MAX_QUBITS {
            return Err(Error::InvalidParameter(format!("{num_qubits} qubits exceeds {MAX_QUBITS}")));
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::InvalidParameter(format!("basis index {index} >= {dim}")));
        }
        let mut amps = vec![Complex64::default(); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    /// Wraps raw amplitudes; the length must be a power of two and the norm 1.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() || !amps.len().is_power_of_two() {
            return Err(Error::InvalidParameter(format!("{} amplitudes is not a power of two", amps.len())));
        }
        let s = Self { num_qubits: amps.len().trailing_zeros() as usize, amps };
        if (s.norm_sqr() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!("state norm² {} is not 1", s.norm_sqr())));
        }
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Index-ordered `[re, im]` pairs, for fixture dumps.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(self.amps.iter().map(|a| vec![a.re, a.im]).collect::<Vec<_>>())
    }

    pub fn apply_program(&mut self, program: &GateProgram) -> Result<()> {
        program.validate(self.num_qubits)?;
        for g in program.gates() {
            self.apply_unchecked(g);
        }
        Ok(())
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.apply_unchecked(gate);
        Ok(())
    }

    fn apply_unchecked(&mut self, gate: &Gate) {
        match gate {
            Gate::HadamardLayer(qs) => {
                for &q in qs {
                    self.hadamard(q);
                }
            }
            Gate::Phase { qubit, angle } => {
                let phase = Complex64::from_polar(1.0, *angle);
                let mask = 1 << qubit;
                for (x, a) in self.amps.iter_mut().enumerate() {
                    if x & mask != 0 {
                        *a *= phase;
                    }
                }
            }
            Gate::ControlledPhase { control, target, angle } => {
                let phase = Complex64::from_polar(1.0, *angle);
                let mask = (1 << control) | (1 << target);
                for (x, a) in self.amps.iter_mut().enumerate() {
                    if x & mask == mask {
                        *a *= phase;
                    }
                }
            }
            Gate::Swap(qa, qb) => {
                if qa == qb {
                    return;
                }
                let (ma, mb) = (1 << qa, 1 << qb);
                for x in 0..self.amps.len() {
                    if x & ma != 0 && x & mb == 0 {
                        self.amps.swap(x, x ^ ma ^ mb);
                    }
                }
            }
            Gate::ControlledSignDiagonal { control, offset, diagonal } => {
                let cmask = 1 << control;
                let dmask = diagonal.len() - 1;
                for (x, a) in self.amps.iter_mut().enumerate() {
                    if x & cmask != 0 && diagonal.is_negative((x >> offset) & dmask) {
                        *a = -*a;
                    }
                }
            }
        }
    }

    fn hadamard(&mut self, q: usize) {
        let mask = 1 << q;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for x in 0..self.amps.len() {
            if x & mask == 0 {
                let (a, b) = (self.amps[x], self.amps[x | mask]);
                self.amps[x] = (a + b) * s;
                self.amps[x | mask] = (a - b) * s;
            }
        }
    }
}

/// Applies `program` to `|0>^{⊗ num_qubits}`.
pub fn run(program: &GateProgram, num_qubits: usize) -> Result<Statevector> {
    let mut state = Statevector::zero(num_qubits)?;
    state.apply_program(program)?;
    Ok(state)
}

/// Probability of reading all zeros after `program`.
pub fn zero_probability(program: &GateProgram, num_qubits: usize) -> Result<f64> {
    Ok(run(program, num_qubits)?.amplitude(0).norm_sqr())
}

/// Success fraction over `shots` Bernoulli(`p`) draws seeded by `seed`;
/// `shots == 0` returns `p` exactly.
pub fn estimate_probability(p: f64, shots: u32, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    estimate_probability_with(p, shots, &mut rng)
}

/// [`estimate_probability`] drawing from a caller-owned stream.
pub fn estimate_probability_with<R: Rng + ?Sized>(p: f64, shots: u32, rng: &mut R) -> Result<f64> {
    // Round-off can push an exact probability a hair outside [0, 1].
    let slack = 1e-12;
    if !(-slack..=1.0 + slack).contains(&p) || p.is_nan() {
        return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
    }
    let p = p.clamp(0.0, 1.0);
    if shots == 0 {
        return Ok(p);
    }
    let hits = (0..shots).filter(|_| rng.gen::<f64>() < p).count();
    Ok(hits as f64 / shots as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn h(qs: &[usize]) -> Gate {
        Gate::HadamardLayer(qs.to_vec())
    }

    #[test]
    fn empty_program_is_zero_state() {
        let s = run(&GateProgram::new(), 3).unwrap();
        assert_eq!(s.amplitude(0), Complex64::new(1.0, 0.0));
        assert!(s.amplitudes()[1..].iter().all(|a| a.norm() == 0.0));
        assert_eq!(zero_probability(&GateProgram::new(), 3).unwrap(), 1.0);
    }

    #[test]
    fn hadamard_layer_gives_uniform_state() {
        let s = run(&[h(&[0, 1])].into_iter().collect(), 2).unwrap();
        for a in s.amplitudes() {
            assert!((a - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        }
        let p = zero_probability(&[h(&[2])].into_iter().collect(), 4).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
    }

    #[test]
    fn hadamard_conjugated_cz_is_cnot() {
        // H on the target around CZ, then compare against the CNOT table.
        let prog: GateProgram =
            [h(&[1]), Gate::ControlledPhase { control: 0, target: 1, angle: PI }, h(&[1])].into_iter().collect();
        let cnot = |x: usize| if x & 1 == 1 { x ^ 2 } else { x };
        for x in 0..4 {
            let mut s = Statevector::basis(2, x).unwrap();
            s.apply_program(&prog).unwrap();
            let expected = Statevector::basis(2, cnot(x)).unwrap();
            assert!((s.inner(&expected).norm() - 1.0).abs() < 1e-12);
        }
        // H on both sides of both qubits yields the same CNOT up to relabeling.
        let both: GateProgram =
            [h(&[0, 1]), Gate::ControlledPhase { control: 0, target: 1, angle: PI }, h(&[0, 1])].into_iter().collect();
        let s = run(&both, 2).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn out_of_range_is_rejected() {
        let prog: GateProgram = [Gate::Phase { qubit: 3, angle: 0.1 }].into_iter().collect();
        assert!(matches!(run(&prog, 3), Err(Error::QubitOutOfRange { index: 3, .. })));
        let bad: GateProgram = [Gate::ControlledPhase { control: 1, target: 1, angle: 0.1 }].into_iter().collect();
        assert!(run(&bad, 3).is_err());
        let overlap: GateProgram =
            [Gate::ControlledSignDiagonal { control: 1, offset: 0, diagonal: PhaseDiagonal::identity(2) }]
                .into_iter()
                .collect();
        assert!(run(&overlap, 3).is_err());
    }

    #[test]
    fn swap_twice_restores() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let amps: Vec<Complex64> = (0..8).map(|_| Complex64::new(rng.gen(), rng.gen())).collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let s0 = Statevector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap();
        let mut s = s0.clone();
        s.apply(&Gate::Swap(0, 2)).unwrap();
        assert_ne!(s, s0);
        s.apply(&Gate::Swap(0, 2)).unwrap();
        assert_eq!(s, s0);
    }

    #[test]
    fn estimate_probability_contract() {
        assert_eq!(estimate_probability(1.0, 1024, 3).unwrap(), 1.0);
        assert_eq!(estimate_probability(0.0, 1024, 3).unwrap(), 0.0);
        assert_eq!(estimate_probability(0.37, 0, 3).unwrap(), 0.37);
        let e = estimate_probability(0.25, 1024, 42).unwrap();
        assert!((e - 0.25).abs() < 0.05);
        assert_eq!(e, estimate_probability(0.25, 1024, 42).unwrap());
        assert!(estimate_probability(1.5, 10, 0).is_err());
        assert!(estimate_probability(-0.1, 10, 0).is_err());
    }

    #[test]
    fn json_dump_is_index_ordered_pairs() {
        let s = run(&[h(&[0])].into_iter().collect(), 1).unwrap();
        let v = s.to_json();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        assert!((arr[1][0].as_f64().unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }
}
