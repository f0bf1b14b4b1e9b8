//! Command-line surface: `gen`, `solve`, `verify` and `resources`.
//!
//! Everything here is reachable in-process through [`run`], which the
//! `qsubiso` binary wraps.

use std::ffi::OsString;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ansatz::{circular_topology, AnsatzTopology};
use crate::error::{Error, Result};
use crate::graph::{erdos_renyi, mismatch_count, pad_to_power_of_two, AdjacencyMatrix, Graph, PartialPermutation};
use crate::oracle::{enumerate_matches, qubit_requirements, Enumeration};
use crate::solver::{
    plant_instance, run_batch, write_stats_csv, write_trace_csv, BatchMode, GradientScheme, SolverConfig, StatsRow,
};

#[derive(Debug, Parser)]
#[command(name = "qsubiso", version, about = "Variational quantum (sub)graph isomorphism")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random graph, or a planted source/pattern pair.
    Gen(GenArgs),
    /// Train on an instance and write traces, solutions and statistics.
    Solve(SolveArgs),
    /// Re-check a solutions file classically.
    Verify(VerifyArgs),
    /// Print qubit requirements as CSV.
    Resources(ResourcesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyKind {
    Circular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Search,
    Convergence,
}

impl From<ModeArg> for BatchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Search => BatchMode::Search,
            ModeArg::Convergence => BatchMode::Convergence,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GradientArg {
    Central,
    Forward,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Vertex count of a plain random graph.
    #[arg(long, required_unless_present = "plant")]
    pub n: Option<usize>,
    /// Edge probability.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long)]
    pub seed: u64,
    /// Generate a source and an Ansatz-reachable pattern inside it.
    #[arg(long)]
    pub plant: bool,
    #[arg(long, requires = "plant")]
    pub na: Option<usize>,
    #[arg(long, requires = "plant")]
    pub nb: Option<usize>,
    #[arg(long, value_enum, default_value_t = TopologyKind::Circular)]
    pub topology: TopologyKind,
    /// Output file (plain) or directory (planted).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Experiment manifest; when given, the instance and solver flags below
    /// are ignored.
    #[arg(long, conflicts_with_all = ["source", "pattern"])]
    pub manifest: Option<PathBuf>,
    #[arg(long, required_unless_present = "manifest")]
    pub source: Option<PathBuf>,
    #[arg(long, required_unless_present = "manifest")]
    pub pattern: Option<PathBuf>,
    #[arg(long, required_unless_present = "manifest")]
    pub seed: Option<u64>,
    /// Shots per utility estimate; 0 evaluates exactly.
    #[arg(long, default_value_t = 1024)]
    pub shots: u32,
    #[arg(long, default_value_t = 128)]
    pub steps: usize,
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    #[arg(long, default_value_t = 0.1)]
    pub eta: f64,
    #[arg(long, default_value_t = 0.9)]
    pub momentum: f64,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, value_enum, default_value_t = GradientArg::Central)]
    pub gradient: GradientArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Search)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 100)]
    pub runs: usize,
    #[arg(long, value_enum, default_value_t = TopologyKind::Circular)]
    pub topology: TopologyKind,
    #[arg(long, default_value = "instance")]
    pub problem_id: String,
    /// Output directory; overrides the manifest's.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub source: PathBuf,
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long)]
    pub solutions: PathBuf,
}

#[derive(Debug, Args)]
pub struct ResourcesArgs {
    /// Vertex counts, e.g. `4 8 16 17`.
    #[arg(required = true)]
    pub n: Vec<usize>,
}

/// A graph file plus the padding applied on load.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub original_vertices: usize,
    pub matrix: AdjacencyMatrix,
}

/// Reads a graph from JSON (`.json`) or an edge list (anything else) and
/// pads it to a power-of-two order.
pub fn load_graph(path: &Path) -> Result<LoadedGraph> {
    let file = fs::File::open(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let graph = if path.extension().is_some_and(|e| e == "json") {
        Graph::from_json(&serde_json::from_reader(BufReader::new(file))?)?
    } else {
        Graph::read_edge_list(BufReader::new(file))?
    };
    Ok(LoadedGraph { original_vertices: graph.num_vertices(), matrix: pad_to_power_of_two(&graph)? })
}

fn write_graph(path: &Path, g: &Graph) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, serde_json::to_string_pretty(&g.to_json())? + "\n")?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologySpec {
    Circular,
    /// A topology JSON file.
    File(PathBuf),
}

/// A reproducible experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentManifest {
    #[serde(default = "default_problem_id")]
    pub problem_id: String,
    pub source: PathBuf,
    pub pattern: PathBuf,
    #[serde(default = "default_topology")]
    pub topology: TopologySpec,
    pub seed: u64,
    #[serde(default)]
    pub solver: SolverSettings,
    pub runs: usize,
    pub mode: BatchMode,
    pub output_dir: PathBuf,
}

fn default_problem_id() -> String {
    "instance".into()
}

fn default_topology() -> TopologySpec {
    TopologySpec::Circular
}

/// [`SolverConfig`] without the seed, which the manifest owns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSettings {
    pub learning_rate: f64,
    pub momentum: f64,
    pub fd_epsilon: f64,
    pub max_steps: usize,
    pub samples_per_step: usize,
    pub shots: u32,
    pub gradient: GradientScheme,
}

impl Default for SolverSettings {
    fn default() -> Self {
        let c = SolverConfig::default();
        Self {
            learning_rate: c.learning_rate,
            momentum: c.momentum,
            fd_epsilon: c.fd_epsilon,
            max_steps: c.max_steps,
            samples_per_step: c.samples_per_step,
            shots: c.shots,
            gradient: c.gradient,
        }
    }
}

impl ExperimentManifest {
    /// Reads a manifest; relative paths resolve against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let mut m: Self = serde_json::from_str(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        resolve(&mut m.source);
        resolve(&mut m.pattern);
        resolve(&mut m.output_dir);
        if let TopologySpec::File(p) = &mut m.topology {
            resolve(p);
        }
        m.absolutize()?;
        m.check_files()?;
        Ok(m)
    }

    /// Makes every path absolute so the manifest written next to the results
    /// can be re-run from anywhere and hashes identically.
    pub fn absolutize(&mut self) -> Result<()> {
        self.source = std::path::absolute(&self.source)?;
        self.pattern = std::path::absolute(&self.pattern)?;
        self.output_dir = std::path::absolute(&self.output_dir)?;
        if let TopologySpec::File(p) = &mut self.topology {
            *p = std::path::absolute(&*p)?;
        }
        Ok(())
    }

    pub fn check_files(&self) -> Result<()> {
        let mut paths = vec![&self.source, &self.pattern];
        if let TopologySpec::File(p) = &self.topology {
            paths.push(p);
        }
        for p in paths {
            if !p.is_file() {
                return Err(Error::InvalidConfig(format!("referenced file {} does not exist", p.display())));
            }
        }
        Ok(())
    }

    pub fn solver_config(&self) -> SolverConfig {
        let s = &self.solver;
        SolverConfig {
            learning_rate: s.learning_rate,
            momentum: s.momentum,
            fd_epsilon: s.fd_epsilon,
            max_steps: s.max_steps,
            samples_per_step: s.samples_per_step,
            shots: s.shots,
            seed: self.seed,
            gradient: s.gradient,
        }
    }

    /// SHA-256 over the canonical JSON form, ignoring `output_dir` so the
    /// same experiment hashes alike wherever its results land.
    pub fn hash(&self) -> Result<String> {
        let keyed = Self { output_dir: PathBuf::new(), ..self.clone() };
        let digest = Sha256::digest(serde_json::to_vec(&keyed)?);
        Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
    }

    pub fn topology(&self, k: usize) -> Result<AnsatzTopology> {
        let t = match &self.topology {
            TopologySpec::Circular => circular_topology(k)?,
            TopologySpec::File(p) => AnsatzTopology::from_json_str(&fs::read_to_string(p)?)?,
        };
        if t.k() != k {
            return Err(Error::InvalidTopology(format!("topology acts on {} qubits, instance needs {k}", t.k())));
        }
        Ok(t)
    }
}

/// Sidecar written next to a planted pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantRecord {
    pub seed: u64,
    pub edge_probability: f64,
    pub g: Vec<u8>,
    /// `image[i]` is the source vertex hosting pattern vertex `i`.
    pub image: Vec<usize>,
}

/// One reported solution in `solutions.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionEntry {
    /// Runs (by index) that found this map.
    pub runs: Vec<usize>,
    /// Image over the padded vertex range.
    pub image: Vec<usize>,
    /// `[pattern_vertex, source_vertex]` for the original pattern vertices.
    pub mapping: Vec<[usize; 2]>,
    /// Whether an original pattern vertex lands on a padding vertex.
    pub uses_padding: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionsFile {
    pub manifest_sha256: String,
    pub seed: u64,
    pub source_vertices: usize,
    pub pattern_vertices: usize,
    pub source_order: usize,
    pub pattern_order: usize,
    pub solutions: Vec<SolutionEntry>,
}

/// Outcome of `gen`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenReport {
    pub written: Vec<PathBuf>,
    pub padded_from: Option<usize>,
}

pub fn cmd_gen(args: &GenArgs) -> Result<GenReport> {
    if !(0.0..=1.0).contains(&args.p) {
        return Err(Error::InvalidParameter(format!("edge probability {} outside [0, 1]", args.p)));
    }
    if !args.plant {
        let n = args.n.ok_or_else(|| Error::InvalidConfig("--n is required".into()))?;
        if n == 0 {
            return Err(Error::InvalidParameter("graph needs at least one vertex".into()));
        }
        let g = erdos_renyi(n, args.p, args.seed)?;
        let padded = pad_to_power_of_two(&g)?;
        write_graph(&args.out, &padded.to_graph())?;
        let padded_from = (padded.order() != n).then_some(n);
        return Ok(GenReport { written: vec![args.out.clone()], padded_from });
    }

    let (na, nb) = match (args.na, args.nb) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InvalidConfig("--plant needs --na and --nb".into())),
    };
    for n in [na, nb] {
        if !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
    }
    if nb > na {
        return Err(Error::SizeMismatch(format!("pattern {nb} larger than source {na}")));
    }
    let source = pad_to_power_of_two(&erdos_renyi(na, args.p, args.seed)?)?;
    let topology = match args.topology {
        TopologyKind::Circular => circular_topology(source.log2_order())?,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed ^ 0x5EED_F00D);
    let plant = plant_instance(&source, nb, &topology, &mut rng)?;
    fs::create_dir_all(&args.out)?;
    let (sp, pp, rp) = (args.out.join("source.json"), args.out.join("pattern.json"), args.out.join("plant.json"));
    write_graph(&sp, &source.to_graph())?;
    write_graph(&pp, &plant.pattern.to_graph())?;
    let record = PlantRecord {
        seed: args.seed,
        edge_probability: args.p,
        g: plant.g.iter().map(|&b| b as u8).collect(),
        image: plant.solution.image().to_vec(),
    };
    fs::write(&rp, serde_json::to_string_pretty(&record)? + "\n")?;
    Ok(GenReport { written: vec![sp, pp, rp], padded_from: None })
}

/// Outcome of `solve`.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub manifest_hash: String,
    pub output_dir: PathBuf,
    pub stats: StatsRow,
}

fn manifest_from_args(args: &SolveArgs) -> Result<ExperimentManifest> {
    if let Some(path) = &args.manifest {
        let mut m = ExperimentManifest::load(path)?;
        if let Some(out) = &args.out {
            m.output_dir = std::path::absolute(out)?;
        }
        return Ok(m);
    }
    let missing = |f: &str| Error::InvalidConfig(format!("--{f} is required without --manifest"));
    let mut m = ExperimentManifest {
        problem_id: args.problem_id.clone(),
        source: args.source.clone().ok_or_else(|| missing("source"))?,
        pattern: args.pattern.clone().ok_or_else(|| missing("pattern"))?,
        topology: match args.topology {
            TopologyKind::Circular => TopologySpec::Circular,
        },
        seed: args.seed.ok_or_else(|| missing("seed"))?,
        solver: SolverSettings {
            learning_rate: args.eta,
            momentum: args.momentum,
            fd_epsilon: args.epsilon,
            max_steps: args.steps,
            samples_per_step: args.samples,
            shots: args.shots,
            gradient: match args.gradient {
                GradientArg::Central => GradientScheme::Central,
                GradientArg::Forward => GradientScheme::Forward,
            },
        },
        runs: args.runs,
        mode: args.mode.into(),
        output_dir: args.out.clone().ok_or_else(|| missing("out"))?,
    };
    m.absolutize()?;
    m.check_files()?;
    Ok(m)
}

pub fn cmd_solve(args: &SolveArgs) -> Result<SolveReport> {
    solve_manifest(&manifest_from_args(args)?)
}

/// Runs a manifest and writes `manifest.json`, `traces/run_NNN.csv`,
/// `solutions.json` and `stats.csv` under its output directory.
pub fn solve_manifest(m: &ExperimentManifest) -> Result<SolveReport> {
    let source = load_graph(&m.source)?;
    let pattern = load_graph(&m.pattern)?;
    let topology = m.topology(source.matrix.log2_order())?;
    let config = m.solver_config();
    let hash = m.hash()?;
    let batch = run_batch(&source.matrix, &pattern.matrix, &topology, &config, m.runs, m.mode)?;

    let out = &m.output_dir;
    fs::create_dir_all(out.join("traces"))?;
    fs::write(out.join("manifest.json"), serde_json::to_string_pretty(m)? + "\n")?;
    let comment = format!("manifest={hash} seed={}", m.seed);
    for (i, r) in batch.runs.iter().enumerate() {
        let f = fs::File::create(out.join("traces").join(format!("run_{i:03}.csv")))?;
        write_trace_csv(std::io::BufWriter::new(f), r, Some(&comment))?;
    }

    let mut entries: Vec<SolutionEntry> = Vec::new();
    for (i, r) in batch.runs.iter().enumerate() {
        for s in &r.solutions {
            if let Some(e) = entries.iter_mut().find(|e| e.image == s.image()) {
                e.runs.push(i);
                continue;
            }
            let mapping: Vec<[usize; 2]> =
                s.image().iter().take(pattern.original_vertices).enumerate().map(|(p, &v)| [p, v]).collect();
            let uses_padding = mapping.iter().any(|&[_, v]| v >= source.original_vertices);
            entries.push(SolutionEntry { runs: vec![i], image: s.image().to_vec(), mapping, uses_padding });
        }
    }
    entries.sort_by(|a, b| a.image.cmp(&b.image));
    let file = SolutionsFile {
        manifest_sha256: hash.clone(),
        seed: m.seed,
        source_vertices: source.original_vertices,
        pattern_vertices: pattern.original_vertices,
        source_order: source.matrix.order(),
        pattern_order: pattern.matrix.order(),
        solutions: entries,
    };
    fs::write(out.join("solutions.json"), serde_json::to_string_pretty(&file)? + "\n")?;

    let row =
        StatsRow::new(&m.problem_id, source.matrix.order(), pattern.matrix.order(), &topology, &batch.statistics)?;
    write_stats_csv(fs::File::create(out.join("stats.csv"))?, std::slice::from_ref(&row), Some(&comment))?;
    Ok(SolveReport { manifest_hash: hash, output_dir: out.clone(), stats: row })
}

/// Outcome of `verify`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checked: usize,
    /// One message per failing entry, naming it.
    pub failures: Vec<String>,
    /// `{"unique", "total"}` when the census was within its cap.
    pub census: Option<crate::oracle::CensusSummary>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<VerifyReport> {
    let source = load_graph(&args.source)?;
    let pattern = load_graph(&args.pattern)?;
    let file: SolutionsFile = serde_json::from_str(&fs::read_to_string(&args.solutions)?)?;
    let (a, b) = (&source.matrix, &pattern.matrix);
    let census = match enumerate_matches(a, b)? {
        Enumeration::Census(c) => Some(c),
        Enumeration::Refused { .. } => None,
    };
    let mut failures = Vec::new();
    for (idx, e) in file.solutions.iter().enumerate() {
        let name = format!("solution #{idx} (image {:?})", e.image);
        let pp = match PartialPermutation::new(a.order(), e.image.clone()) {
            Ok(pp) if pp.target_order() == b.order() => pp,
            Ok(pp) => {
                failures.push(format!("{name}: maps {} vertices, pattern has {}", pp.target_order(), b.order()));
                continue;
            }
            Err(err) => {
                failures.push(format!("{name}: {err}"));
                continue;
            }
        };
        if e.mapping.iter().any(|&[p, v]| e.image.get(p) != Some(&v)) {
            failures.push(format!("{name}: mapping disagrees with image"));
            continue;
        }
        let loss = mismatch_count(a, b, pp.image());
        if loss != 0 {
            failures.push(format!("{name}: classical loss {loss}"));
            continue;
        }
        if let Some(false) = census.as_ref().and_then(|c| c.contains(&pp)) {
            failures.push(format!("{name}: not in the oracle match set"));
        }
    }
    Ok(VerifyReport { checked: file.solutions.len(), failures, census: census.map(|c| c.summary()) })
}

/// `n,this_method,qubo_full,compressed_min,compressed_max` rows.
pub fn cmd_resources(ns: &[usize]) -> Result<String> {
    let mut out = csv::Writer::from_writer(Vec::new());
    for &n in ns {
        out.serialize(qubit_requirements(n))?;
    }
    let bytes = out.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses `args` (including the program name) and executes the command,
/// writing human-readable output to `stdout`/`stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(stderr, "{text}") } else { write!(stdout, "{text}") };
            return code;
        }
    };
    match execute(&cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn execute(command: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Gen(a) => {
            let r = cmd_gen(a)?;
            if let Some(n) = r.padded_from {
                writeln!(stderr, "note: {n} vertices padded to {} with isolated vertices", n.next_power_of_two())?;
            }
            for p in &r.written {
                writeln!(stdout, "wrote {}", p.display())?;
            }
            Ok(0)
        }
        Command::Solve(a) => {
            let r = cmd_solve(a)?;
            let s = &r.stats;
            writeln!(stdout, "manifest {}", r.manifest_hash)?;
            writeln!(
                stdout,
                "{}: N_A={} N_B={} convergent {:.1}% unique {} avg steps {} max steps {}",
                s.problem_id, s.n_a, s.n_b, s.convergent_percent, s.unique_solutions_found, s.avg_steps, s.max_steps
            )?;
            writeln!(stdout, "results in {}", r.output_dir.display())?;
            Ok(0)
        }
        Command::Verify(a) => {
            let r = cmd_verify(a)?;
            for f in &r.failures {
                writeln!(stderr, "FAIL {f}")?;
            }
            if let Some(c) = r.census {
                writeln!(stdout, "census {}", serde_json::to_string(&c)?)?;
            }
            writeln!(stdout, "{} of {} solutions verified", r.checked - r.failures.len(), r.checked)?;
            Ok(if r.passed() { 0 } else { 1 })
        }
        Command::Resources(a) => {
            write!(stdout, "{}", cmd_resources(&a.n)?)?;
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resources_csv() {
        let s = cmd_resources(&[4, 16, 17]).unwrap();
        assert_eq!(
            s,
            "n,this_method,qubo_full,compressed_min,compressed_max\n4,5,16,6,16\n16,9,256,18,256\n17,11,289,19,289\n"
        );
    }

    #[test]
    fn manifest_hash_is_stable_and_sensitive() {
        let m = ExperimentManifest {
            problem_id: "x".into(),
            source: "a.json".into(),
            pattern: "b.json".into(),
            topology: TopologySpec::Circular,
            seed: 3,
            solver: SolverSettings::default(),
            runs: 2,
            mode: BatchMode::Search,
            output_dir: "out".into(),
        };
        let h = m.hash().unwrap();
        assert_eq!(h.len(), 64);
        assert_eq!(h, m.clone().hash().unwrap());
        assert_ne!(h, ExperimentManifest { seed: 4, ..m.clone() }.hash().unwrap());
        assert_eq!(h, ExperimentManifest { output_dir: "elsewhere".into(), ..m.clone() }.hash().unwrap());
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"topology\":\"circular\""));
        assert_eq!(serde_json::from_str::<ExperimentManifest>(&text).unwrap(), m);
    }

    #[test]
    fn manifest_requires_seed() {
        let text = r#"{"source":"a","pattern":"b","runs":1,"mode":"search","output_dir":"o"}"#;
        assert!(serde_json::from_str::<ExperimentManifest>(text).is_err());
    }

    #[test]
    fn bad_arguments_exit_nonzero() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["qsubiso", "frobnicate"], &mut out, &mut err), 2);
        assert_eq!(run(["qsubiso", "resources"], &mut out, &mut err), 2);
        let code = run(
            ["qsubiso", "gen", "--n", "4", "--p", "1.5", "--seed", "1", "--out", "/nonexistent/x.json"],
            &mut out,
            &mut err,
        );
        assert_eq!(code, 1);
    }
}
