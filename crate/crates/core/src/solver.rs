//! Loss circuits, SGD training and the sample-and-verify loop.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ansatz::{classical_permutation, emit_gates, AnsatzTopology, ParamVector};
use crate::encoding::{extend_pattern, phase_diagonal, PhaseDiagonal};
use crate::error::{Error, Result};
use crate::graph::{
    mismatch_count, permute, search_space_size, AdjacencyMatrix, PartialPermutation, VertexPermutation,
};
use crate::oracle::{qubit_requirements, reproduces_pattern};
use crate::simulator::{estimate_probability_with, Gate, GateProgram, Statevector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GradientScheme {
    #[default]
    Central,
    Forward,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub learning_rate: f64,
    pub momentum: f64,
    pub fd_epsilon: f64,
    pub max_steps: usize,
    pub samples_per_step: usize,
    /// Measurement shots per utility estimate; 0 evaluates exactly.
    pub shots: u32,
    pub seed: u64,
    pub gradient: GradientScheme,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.1,
            momentum: 0.9,
            fd_epsilon: 0.1,
            max_steps: 128,
            samples_per_step: 64,
            shots: 1024,
            seed: 0,
            gradient: GradientScheme::Central,
        }
    }
}

impl SolverConfig {
    /// Default configuration with exact utilities.
    pub fn exact(seed: u64) -> Self {
        Self { shots: 0, seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad(format!("learning rate {} must be positive", self.learning_rate));
        }
        if !(self.fd_epsilon > 0.0 && self.fd_epsilon.is_finite()) {
            return bad(format!("finite-difference step {} must be positive", self.fd_epsilon));
        }
        if !(0.0..1.0).contains(&self.momentum) {
            return bad(format!("momentum {} outside [0, 1)", self.momentum));
        }
        if self.max_steps == 0 {
            return bad("max_steps must be at least 1".into());
        }
        if self.samples_per_step == 0 {
            return bad("samples_per_step must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LossMode {
    /// Equal orders; the adjoint fragment is omitted.
    Gi,
    Sgi,
}

/// Everything needed to assemble a loss circuit.
#[derive(Debug, Clone)]
pub struct LossCircuitSpec {
    source: AdjacencyMatrix,
    pattern: AdjacencyMatrix,
    topology: AnsatzTopology,
    mode: LossMode,
    source_diagonal: PhaseDiagonal,
    pattern_diagonal: PhaseDiagonal,
}

impl LossCircuitSpec {
    pub fn new(
        source: AdjacencyMatrix,
        pattern: AdjacencyMatrix,
        topology: AnsatzTopology,
        mode: LossMode,
    ) -> Result<Self> {
        let k = source.log2_order();
        if topology.k() != k {
            return Err(Error::SizeMismatch(format!(
                "topology acts on {} qubits but the source needs {k}",
                topology.k()
            )));
        }
        if pattern.order() > source.order() {
            return Err(Error::SizeMismatch(format!(
                "pattern order {} exceeds source order {}",
                pattern.order(),
                source.order()
            )));
        }
        if mode == LossMode::Gi && pattern.order() != source.order() {
            return Err(Error::SizeMismatch("GI mode requires equal orders".into()));
        }
        let source_diagonal = phase_diagonal(&source);
        let pattern_diagonal = phase_diagonal(&extend_pattern(&pattern, source.order())?);
        Ok(Self { source, pattern, topology, mode, source_diagonal, pattern_diagonal })
    }

    /// GI when the orders agree, SGI otherwise.
    pub fn auto(source: AdjacencyMatrix, pattern: AdjacencyMatrix, topology: AnsatzTopology) -> Result<Self> {
        let mode = if source.order() == pattern.order() { LossMode::Gi } else { LossMode::Sgi };
        Self::new(source, pattern, topology, mode)
    }

    pub fn source(&self) -> &AdjacencyMatrix {
        &self.source
    }

    pub fn pattern(&self) -> &AdjacencyMatrix {
        &self.pattern
    }

    pub fn topology(&self) -> &AnsatzTopology {
        &self.topology
    }

    pub fn mode(&self) -> LossMode {
        self.mode
    }

    /// `2k + 1`.
    pub fn num_qubits(&self) -> usize {
        2 * self.topology.k() + 1
    }
}

/// Assembles the loss circuit on `2k + 1` qubits: the `j` register on
/// qubits `0..k`, the `i` register on `k..2k`, the control on `2k`.
pub fn build_circuit(spec: &LossCircuitSpec, theta: &ParamVector) -> Result<GateProgram> {
    let k = spec.topology.k();
    let kp = spec.pattern.log2_order();
    let control = 2 * k;
    let mut prep: Vec<usize> = (0..kp).chain(k..k + kp).collect();
    prep.push(control);

    let mut prog = GateProgram::new();
    prog.push(Gate::HadamardLayer(prep.clone()));
    if spec.mode == LossMode::Sgi {
        for offset in [0, k] {
            prog.extend(emit_gates(&spec.topology, theta, true, offset)?);
        }
    }
    prog.push(Gate::ControlledSignDiagonal { control, offset: 0, diagonal: spec.source_diagonal.clone() });
    for offset in [0, k] {
        prog.extend(emit_gates(&spec.topology, theta, false, offset)?);
    }
    prog.push(Gate::ControlledSignDiagonal { control, offset: 0, diagonal: spec.pattern_diagonal.clone() });
    prog.push(Gate::HadamardLayer(prep));
    Ok(prog)
}

/// Exact probability of the all-zeros outcome.
pub fn zero_probability(spec: &LossCircuitSpec, theta: &ParamVector) -> Result<f64> {
    let prog = build_circuit(spec, theta)?;
    let mut state = Statevector::zero(spec.num_qubits())?;
    state.apply_program(&prog)?;
    Ok(state.amplitude(0).norm_sqr())
}

/// `√P₀` without shot noise.
pub fn exact_utility(spec: &LossCircuitSpec, theta: &ParamVector) -> Result<f64> {
    Ok(zero_probability(spec, theta)?.sqrt())
}

/// `√P₀` estimated with `config.shots` shots drawn from `rng` (exact when 0).
pub fn utility<R: Rng + ?Sized>(
    spec: &LossCircuitSpec,
    theta: &ParamVector,
    config: &SolverConfig,
    rng: &mut R,
) -> Result<f64> {
    let p = zero_probability(spec, theta)?;
    Ok(estimate_probability_with(p, config.shots, rng)?.sqrt())
}

/// Finite-difference gradient of the utility.
pub fn numerical_gradient<R: Rng + ?Sized>(
    spec: &LossCircuitSpec,
    theta: &ParamVector,
    config: &SolverConfig,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let eps = config.fd_epsilon;
    match config.gradient {
        GradientScheme::Central => (0..theta.len())
            .map(|i| {
                let up = utility(spec, &theta.shifted(i, eps), config, rng)?;
                let down = utility(spec, &theta.shifted(i, -eps), config, rng)?;
                Ok((up - down) / (2.0 * eps))
            })
            .collect(),
        GradientScheme::Forward => {
            let base = utility(spec, theta, config, rng)?;
            (0..theta.len()).map(|i| Ok((utility(spec, &theta.shifted(i, eps), config, rng)? - base) / eps)).collect()
        }
    }
}

/// Heavy-ball momentum: `v' = λv + g`, `θ' = θ - ηv'`, where `g` is the
/// gradient of the quantity being minimized.
pub fn sgd_step(
    theta: &ParamVector,
    velocity: &[f64],
    gradient: &[f64],
    config: &SolverConfig,
) -> Result<(ParamVector, Vec<f64>)> {
    if velocity.len() != theta.len() || gradient.len() != theta.len() {
        return Err(Error::SizeMismatch(format!(
            "theta {}, velocity {}, gradient {}",
            theta.len(),
            velocity.len(),
            gradient.len()
        )));
    }
    let v: Vec<f64> = velocity.iter().zip(gradient).map(|(v, g)| config.momentum * v + g).collect();
    let t = theta.as_slice().iter().zip(&v).map(|(t, v)| t - config.learning_rate * v).collect();
    Ok((ParamVector::new(t)?, v))
}

/// `Λ(x) = |(⌊x⌋ mod 2) − (x mod 1)|`: distance from `x` to the nearest even
/// integer.
pub fn triangle_wave(x: f64) -> f64 {
    (x.floor().rem_euclid(2.0) - x.rem_euclid(1.0)).abs()
}

/// Draws `g` with `P(gᵢ = 1) = Λ(θᵢ/π)`.
pub fn probabilistic_round(theta: &ParamVector, seed: u64) -> Vec<bool> {
    probabilistic_round_with(theta, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn probabilistic_round_with<R: Rng + ?Sized>(theta: &ParamVector, rng: &mut R) -> Vec<bool> {
    let probs: Vec<f64> = theta.as_slice().iter().map(|t| triangle_wave(t / std::f64::consts::PI)).collect();
    sample_bits(&probs, rng)
}

fn sample_bits<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> Vec<bool> {
    // u in (0, 1] so that p = 0 never fires and p = 1 always does.
    probs.iter().map(|&p| 1.0 - rng.gen::<f64>() <= p).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    /// Verified zero-loss maps, deduplicated by image, in discovery order.
    pub solutions: Vec<PartialPermutation>,
    pub steps_used: usize,
    pub quantum_loss_trace: Vec<f64>,
    pub best_classical_loss_trace: Vec<usize>,
    pub converged: bool,
    pub final_theta: ParamVector,
}

fn check_inputs(source: &AdjacencyMatrix, pattern: &AdjacencyMatrix, topology: &AnsatzTopology) -> Result<()> {
    if pattern.order() > source.order() {
        return Err(Error::SizeMismatch(format!(
            "pattern order {} exceeds source order {}",
            pattern.order(),
            source.order()
        )));
    }
    if topology.k() != source.log2_order() {
        return Err(Error::SizeMismatch(format!(
            "topology on {} qubits for a source of order {}",
            topology.k(),
            source.order()
        )));
    }
    Ok(())
}

/// One training run: SGD on `-utility`, sampling rounded permutations after
/// every step and stopping at the first step that yields a verified match.
pub fn run_single(
    source: &AdjacencyMatrix,
    pattern: &AdjacencyMatrix,
    topology: &AnsatzTopology,
    config: &SolverConfig,
) -> Result<RunResult> {
    config.validate()?;
    check_inputs(source, pattern, topology)?;
    let spec = LossCircuitSpec::auto(source.clone(), pattern.clone(), topology.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = topology.num_params();
    let nb = pattern.order();

    let mut theta = ParamVector::random(n, &mut rng);
    let mut velocity = vec![0.0; n];
    let mut solutions = Vec::new();
    let mut seen = BTreeSet::new();
    let mut quantum_loss_trace = Vec::with_capacity(config.max_steps);
    let mut best_classical_loss_trace = Vec::with_capacity(config.max_steps);
    let mut best = usize::MAX;
    let mut steps_used = config.max_steps;

    for step in 1..=config.max_steps {
        let grad = numerical_gradient(&spec, &theta, config, &mut rng)?;
        let descent: Vec<f64> = grad.iter().map(|g| -g).collect();
        (theta, velocity) = sgd_step(&theta, &velocity, &descent, config)?;
        quantum_loss_trace.push(1.0 - utility(&spec, &theta, config, &mut rng)?);

        let probs: Vec<f64> = theta.as_slice().iter().map(|t| triangle_wave(t / std::f64::consts::PI)).collect();
        for _ in 0..config.samples_per_step {
            let g = sample_bits(&probs, &mut rng);
            let p = classical_permutation(topology, &g)?;
            let candidate = PartialPermutation::from_permutation(&p, nb)?;
            let d = mismatch_count(source, pattern, candidate.image());
            best = best.min(d);
            if d == 0 && !seen.contains(candidate.image()) {
                // Cross-check through the full relabelled matrix.
                if !reproduces_pattern(source, pattern, &candidate)? {
                    return Err(Error::InvalidPermutation(format!("unstable match {candidate:?}")));
                }
                seen.insert(candidate.image().to_vec());
                solutions.push(candidate);
            }
        }
        best_classical_loss_trace.push(best);
        if !solutions.is_empty() {
            steps_used = step;
            break;
        }
    }

    Ok(RunResult {
        converged: !solutions.is_empty(),
        solutions,
        steps_used,
        quantum_loss_trace,
        best_classical_loss_trace,
        final_theta: theta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BatchMode {
    /// Each run sees the source under a fresh random relabeling.
    Search,
    /// The source is used as given (typically a planted instance).
    Convergence,
}

/// Aggregate over a batch: convergence rate, distinct solutions, step counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchStatistics {
    pub runs: usize,
    pub convergent_runs: usize,
    pub convergent_percent: f64,
    /// Distinct image vertex subsets across all runs.
    pub unique_solutions: usize,
    /// Distinct maps across all runs.
    pub distinct_maps: usize,
    /// Mean steps over convergent runs; `None` when no run converged.
    pub avg_steps: Option<f64>,
    pub max_steps: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchResult {
    pub runs: Vec<RunResult>,
    /// Per-run seed handed to [`run_single`].
    pub run_seeds: Vec<u64>,
    pub statistics: BatchStatistics,
}

impl BatchResult {
    /// Every distinct solution across the batch, ordered by image.
    pub fn all_solutions(&self) -> Vec<PartialPermutation> {
        let set: BTreeSet<&PartialPermutation> = self.runs.iter().flat_map(|r| &r.solutions).collect();
        set.into_iter().cloned().collect()
    }
}

/// SplitMix64 finalizer over (base, index).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs [`run_single`] `runs` times in parallel with seeds derived from
/// `config.seed`; results are ordered by run index.
pub fn run_batch(
    source: &AdjacencyMatrix,
    pattern: &AdjacencyMatrix,
    topology: &AnsatzTopology,
    config: &SolverConfig,
    runs: usize,
    mode: BatchMode,
) -> Result<BatchResult> {
    config.validate()?;
    check_inputs(source, pattern, topology)?;
    if runs == 0 {
        return Err(Error::InvalidConfig("runs must be at least 1".into()));
    }
    let run_seeds: Vec<u64> = (0..runs as u64).map(|i| derive_seed(config.seed, i)).collect();
    let results: Vec<RunResult> = run_seeds
        .par_iter()
        .map(|&seed| {
            let cfg = SolverConfig { seed, ..config.clone() };
            match mode {
                BatchMode::Convergence => run_single(source, pattern, topology, &cfg),
                BatchMode::Search => {
                    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, u64::MAX));
                    let q = VertexPermutation::random(source.order(), &mut rng);
                    let shuffled = permute(source, &q)?;
                    let mut r = run_single(&shuffled, pattern, topology, &cfg)?;
                    let back = q.inverse();
                    r.solutions = r.solutions.iter().map(|s| s.map_source(&back)).collect::<Result<_>>()?;
                    Ok(r)
                }
            }
        })
        .collect::<Result<_>>()?;
    let statistics = batch_statistics(&results);
    Ok(BatchResult { runs: results, run_seeds, statistics })
}

pub fn batch_statistics(results: &[RunResult]) -> BatchStatistics {
    let convergent: Vec<&RunResult> = results.iter().filter(|r| r.converged).collect();
    let subsets: BTreeSet<Vec<usize>> = results.iter().flat_map(|r| &r.solutions).map(|s| s.image_subset()).collect();
    let maps: BTreeSet<&[usize]> = results.iter().flat_map(|r| &r.solutions).map(|s| s.image()).collect();
    let avg_steps = (!convergent.is_empty())
        .then(|| convergent.iter().map(|r| r.steps_used as f64).sum::<f64>() / convergent.len() as f64);
    BatchStatistics {
        runs: results.len(),
        convergent_runs: convergent.len(),
        convergent_percent: if results.is_empty() {
            0.0
        } else {
            100.0 * convergent.len() as f64 / results.len() as f64
        },
        unique_solutions: subsets.len(),
        distinct_maps: maps.len(),
        avg_steps,
        max_steps: convergent.iter().map(|r| r.steps_used).max(),
    }
}

/// A planted instance: `pattern` is the top-left block of the source after
/// relabeling by a permutation the Ansatz reaches at `θ = π·g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedInstance {
    pub pattern: AdjacencyMatrix,
    pub g: Vec<bool>,
    pub permutation: VertexPermutation,
    pub solution: PartialPermutation,
}

pub fn plant_instance<R: Rng + ?Sized>(
    source: &AdjacencyMatrix,
    pattern_order: usize,
    topology: &AnsatzTopology,
    rng: &mut R,
) -> Result<PlantedInstance> {
    check_inputs(source, &AdjacencyMatrix::zeros(pattern_order)?, topology)?;
    let g: Vec<bool> = (0..topology.num_params()).map(|_| rng.gen()).collect();
    let permutation = classical_permutation(topology, &g)?;
    let pattern = permute(source, &permutation)?.upper_block(pattern_order)?;
    let solution = PartialPermutation::from_permutation(&permutation, pattern_order)?;
    Ok(PlantedInstance { pattern, g, permutation, solution })
}

/// One summary row of batch statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRow {
    pub problem_id: String,
    pub n_a: usize,
    pub n_b: usize,
    pub space_size: String,
    pub unique_solutions_found: usize,
    pub parameter_count: usize,
    pub qubit_count: usize,
    pub convergent_percent: f64,
    pub avg_steps: String,
    pub max_steps: String,
}

impl StatsRow {
    pub fn new(
        problem_id: &str,
        n_a: usize,
        n_b: usize,
        topology: &AnsatzTopology,
        stats: &BatchStatistics,
    ) -> Result<Self> {
        Ok(Self {
            problem_id: problem_id.to_string(),
            n_a,
            n_b,
            space_size: search_space_size(n_a, n_b)?.to_string(),
            unique_solutions_found: stats.unique_solutions,
            parameter_count: topology.num_params(),
            qubit_count: qubit_requirements(n_a).this_method,
            convergent_percent: stats.convergent_percent,
            avg_steps: stats.avg_steps.map_or("NA".into(), |s| format!("{s:.2}")),
            max_steps: stats.max_steps.map_or("NA".into(), |s| s.to_string()),
        })
    }
}

fn write_comment<W: Write>(w: &mut W, comment: Option<&str>) -> Result<()> {
    if let Some(c) = comment {
        for line in c.lines() {
            writeln!(w, "# {line}")?;
        }
    }
    Ok(())
}

/// `step,quantum_loss,best_classical_loss`, steps counted from 1.
pub fn write_trace_csv<W: Write>(mut w: W, result: &RunResult, comment: Option<&str>) -> Result<()> {
    write_comment(&mut w, comment)?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["step", "quantum_loss", "best_classical_loss"])?;
    for (i, (q, c)) in result.quantum_loss_trace.iter().zip(&result.best_classical_loss_trace).enumerate() {
        out.write_record([(i + 1).to_string(), format!("{q:.12}"), c.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_stats_csv<W: Write>(mut w: W, rows: &[StatsRow], comment: Option<&str>) -> Result<()> {
    write_comment(&mut w, comment)?;
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    if rows.is_empty() {
        out.write_record([
            "problem_id",
            "n_a",
            "n_b",
            "space_size",
            "unique_solutions_found",
            "parameter_count",
            "qubit_count",
            "convergent_percent",
            "avg_steps",
            "max_steps",
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Groups solutions by image subset: subset -> number of maps onto it.
pub fn solutions_by_subset(solutions: &[PartialPermutation]) -> BTreeMap<Vec<usize>, usize> {
    let mut m = BTreeMap::new();
    for s in solutions {
        *m.entry(s.image_subset()).or_insert(0) += 1;
    }
    m
}
