use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use catlift::catmodel::{bounded_soa, default_acyclic_cofibrations, find_unliftable, has_rlp, is_isofibration, squares};
use catlift::chaincx::{homotopy_truncate, naive_truncate, Field, Fp};
use catlift::cycops::{
    associative, random_two_element, right_adjoint_r, terminal, validate_cyclic, validate_operad, TruncatedOperad,
};
use catlift::fincat::CatFunctor;
use catlift::nabla::{boundary_inclusion, build_nabla, simplex_to_point};
use catlift::semidirect::verify_lan_formula;
use catlift::setval::{certify_adjunction, lan, ran, Corpus, Diagrams, LanAdjunction, RanAdjunction, SetDiagram};
use catlift::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::catspec::{emit, parse, with_prime, ComplexData, Failure, Loaded, PRIMES};
use crate::output::{diagram, diagram_map, render};
use crate::paper;
use crate::suite::{self, sample_maps, Outcome, Settings};

#[derive(Parser, Debug)]
#[command(
    name = "catlift",
    version,
    about = "Finite category theory checks: Kan extensions, lifting, nabla, cyclic operads, chain complexes"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Print a key/value table instead of JSON
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Search budget: candidate assignments tried before giving up
    #[arg(long, global = true, env = "CATLIFT_BUDGET", default_value_t = 200_000)]
    pub budget: usize,
    #[arg(long, global = true, default_value_t = 12)]
    pub max_morphisms: usize,
    #[arg(long, global = true, default_value_t = 4)]
    pub max_stages: usize,
    #[arg(long, global = true, default_value_t = 3)]
    pub arity_bound: usize,
    /// Truncation level for simplicial and real simplicial data
    #[arg(long, global = true, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl Global {
    fn settings(&self) -> Settings {
        Settings {
            budget: self.budget,
            max_morphisms: self.max_morphisms,
            max_stages: self.max_stages,
            arity_bound: self.arity_bound,
            dim: self.dim,
            seed: self.seed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Kan,
    FullyFaithful,
    Involutive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BuiltinOperad {
    Terminal,
    Associative,
    Random,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load a catspec file and check every block
    Validate {
        file: PathBuf,
        /// Print the canonical form of the file instead
        #[arg(long)]
        canonical: bool,
    },
    /// Left (or right) Kan extension of a diagram along a functor
    Kan {
        file: PathBuf,
        #[arg(long)]
        functor: String,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        right: bool,
    },
    /// Certify the Kan adjunctions, on a given functor or on random ones
    Adjoint {
        file: Option<PathBuf>,
        #[arg(long, requires = "file")]
        functor: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Kan)]
        mode: Mode,
        #[arg(long, default_value_t = 100)]
        instances: usize,
    },
    /// Search for an unliftable square from `left` to `right`
    Lift {
        file: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Compare the isofibration test with lifting against pt → E
    Rlp {
        file: Option<PathBuf>,
        #[arg(long, requires = "file")]
        functor: Option<String>,
    },
    /// Bounded small object argument against boundary inclusions
    Soa {
        /// Factor the map from the n-simplex to the point only
        #[arg(long)]
        simplex: Option<usize>,
    },
    /// Compare Lan along C → C⋊G with the twisted coproduct
    Semidirect {
        file: Option<PathBuf>,
        #[arg(long, requires_all = ["file", "diagram"])]
        action: Option<String>,
        #[arg(long, requires = "action")]
        diagram: Option<String>,
    },
    /// Check both presentations of ∇, or count one hom-set
    Nabla {
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        homcount: Option<Vec<usize>>,
    },
    /// Real simplicial sets against involutive simplicial sets
    Rsset {
        file: Option<PathBuf>,
        #[arg(long, requires = "file")]
        rsset: Option<String>,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 30)]
        max_simplices: usize,
    },
    /// The right adjoint R from operads to cyclic operads
    Cyclic {
        file: Option<PathBuf>,
        #[arg(long, requires = "file", conflicts_with = "builtin")]
        operad: Option<String>,
        #[arg(long, value_enum)]
        builtin: Option<BuiltinOperad>,
    },
    /// Truncation and change-of-rings checks over prime fields
    Chain {
        #[arg(long = "p", value_delimiter = ',', default_values_t = [2u32, 5])]
        primes: Vec<u32>,
        file: Option<PathBuf>,
        #[arg(long, requires = "file")]
        complex: Option<String>,
    },
    /// Every worked example with a known answer
    PaperSuite {
        #[arg(long)]
        case: Option<String>,
    },
}

/// What a command prints and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Exit {
    code: i32,
    message: String,
}

fn input_error(message: impl Into<String>) -> Exit {
    Exit { code: 2, message: message.into() }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        input_error(e.to_string())
    }
}

/// A report and whether the property it describes held.
type Answer = Result<(bool, Value), Exit>;

fn outcome(o: Outcome) -> Answer {
    Ok((o.passed, o.report))
}

pub fn run<I, T>(args: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Run { code, stdout: text, stderr: String::new() }
            } else {
                Run { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let pretty = cli.global.pretty;
    match dispatch(&cli) {
        Ok(Printed::Text(t)) => Run { code: 0, stdout: t, stderr: String::new() },
        Ok(Printed::Report(passed, v)) => {
            Run { code: if passed { 0 } else { 1 }, stdout: render(&v, pretty), stderr: String::new() }
        }
        Err(e) => Run { code: e.code, stdout: String::new(), stderr: format!("error: {}\n", e.message) },
    }
}

enum Printed {
    Text(String),
    Report(bool, Value),
}

fn dispatch(cli: &Cli) -> Result<Printed, Exit> {
    let s = cli.global.settings();
    let report = |a: Answer| a.map(|(ok, v)| Printed::Report(ok, v));
    match &cli.command {
        Command::Validate { file, canonical } => validate(file, *canonical),
        Command::Kan { file, functor, diagram, right } => report(kan(file, functor, diagram, *right)),
        Command::Adjoint { file, functor, mode, instances } => {
            report(adjoint(&s, file.as_deref(), functor.as_deref(), *mode, *instances))
        }
        Command::Lift { file, left, right } => report(lift(&s, file, left, right)),
        Command::Rlp { file, functor } => report(rlp(&s, file.as_deref(), functor.as_deref())),
        Command::Soa { simplex } => report(soa(&s, *simplex)),
        Command::Semidirect { file, action, diagram } => {
            report(semidirect(&s, file.as_deref(), action.as_deref(), diagram.as_deref()))
        }
        Command::Nabla { homcount: Some(mn) } => {
            let nb = build_nabla(s.dim)?;
            if mn.iter().any(|&k| k > s.dim) {
                return Err(input_error(format!("--homcount needs objects at most --dim {}", s.dim)));
            }
            Ok(Printed::Text(format!("{}\n", nb.hom_count(mn[0], mn[1]))))
        }
        Command::Nabla { homcount: None } => report(outcome(suite::nabla_consistency(s.dim)?)),
        Command::Rsset { file, rsset, count, max_simplices } => {
            report(rsset_command(&s, file.as_deref(), rsset.as_deref(), *count, *max_simplices))
        }
        Command::Cyclic { file, operad, builtin } => report(cyclic(&s, file.as_deref(), operad.as_deref(), *builtin)),
        Command::Chain { primes, file, complex } => report(chain(&s, primes, file.as_deref(), complex.as_deref())),
        Command::PaperSuite { case } => report(paper_suite(&s, case.as_deref())),
    }
}

fn load(path: &Path) -> Result<Loaded, Exit> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let doc = parse(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Loaded::from_document(&doc).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn lookup<'a, T>(map: &'a std::collections::BTreeMap<String, T>, kind: &str, name: &str) -> Result<&'a T, Exit> {
    map.get(name).ok_or_else(|| input_error(format!("no {kind} named `{name}`")))
}

fn validate(path: &Path, canonical: bool) -> Result<Printed, Exit> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let doc = parse(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    if canonical {
        return Ok(Printed::Text(emit(&doc)));
    }
    match Loaded::from_document(&doc) {
        Ok(_) => {
            let mut blocks = serde_json::Map::new();
            for b in &doc.blocks {
                let names = blocks.entry(b.kind.clone()).or_insert_with(|| json!([]));
                names.as_array_mut().expect("array").push(json!(b.name));
            }
            Ok(Printed::Report(true, json!({"valid": true, "blocks": blocks})))
        }
        Err(e) if e.failure == Failure::Invalid => {
            Ok(Printed::Report(false, json!({"valid": false, "line": e.line, "error": e.message})))
        }
        Err(e) => Err(input_error(format!("{}: {e}", path.display()))),
    }
}

fn diagram_over(l: &Loaded, name: &str, shape: &catlift::fincat::FiniteCategory, role: &str) -> Result<Arc<SetDiagram>, Exit> {
    let x = lookup(&l.diagrams, "diagram", name)?;
    if **x.shape() != *shape {
        return Err(input_error(format!("diagram `{name}` is not over the {role} of the functor")));
    }
    Ok(x.clone())
}

fn kan(file: &Path, functor: &str, name: &str, right: bool) -> Answer {
    let l = load(file)?;
    let f = lookup(&l.functors, "functor", functor)?;
    let x = diagram_over(&l, name, f.dom(), "domain")?;
    if right {
        let k = ran(f, &x)?;
        let counit = k.counit()?;
        Ok((true, json!({"extension": diagram(k.diagram()), "counit": diagram_map(&counit), "counit_iso": counit.is_iso()})))
    } else {
        let k = lan(f, &x)?;
        let unit = k.unit()?;
        Ok((true, json!({"extension": diagram(k.diagram()), "unit": diagram_map(&unit), "unit_iso": unit.is_iso()})))
    }
}

fn adjoint(s: &Settings, file: Option<&Path>, functor: Option<&str>, mode: Mode, instances: usize) -> Answer {
    match (file, functor) {
        (Some(file), Some(functor)) => {
            let l = load(file)?;
            let iota = lookup(&l.functors, "functor", functor)?;
            certify_functor(s, &l, iota)
        }
        (Some(_), None) => Err(input_error("a file needs --functor")),
        _ => match mode {
            Mode::Kan => outcome(suite::kan_adjunctions(s, instances)?),
            Mode::FullyFaithful => outcome(suite::fully_faithful(s, instances)?),
            Mode::Involutive => outcome(suite::involutive(s)?),
        },
    }
}

/// Representables plus every file diagram over each side, with sampled maps.
fn certify_functor(s: &Settings, l: &Loaded, iota: &CatFunctor) -> Answer {
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let objects = |c: &Arc<catlift::fincat::FiniteCategory>| -> Vec<Arc<SetDiagram>> {
        let mut xs: Vec<_> = (0..c.num_objects()).map(|k| Arc::new(SetDiagram::representable(c.clone(), k))).collect();
        xs.extend(l.diagrams.values().filter(|x| **x.shape() == **c).cloned());
        xs
    };
    let (left, right) = (objects(iota.dom()), objects(iota.cod()));
    let left_maps = sample_maps(&mut rng, &left, 6, s.budget)?;
    let right_maps = sample_maps(&mut rng, &right, 6, s.budget)?;
    let diagrams = Diagrams { budget: s.budget };
    let lan_report = certify_adjunction(
        &LanAdjunction::new(iota.clone(), diagrams.clone()),
        &Corpus { left_objects: &left, right_objects: &right, left_maps: &left_maps, right_maps: &right_maps },
    )?;
    let ran_report = certify_adjunction(
        &RanAdjunction::new(iota.clone(), diagrams),
        &Corpus { left_objects: &right, right_objects: &left, left_maps: &right_maps, right_maps: &left_maps },
    )?;
    let passed = lan_report.passed && ran_report.passed;
    Ok((passed, json!({"lan": report_json(&lan_report), "ran": report_json(&ran_report)})))
}

fn report_json(r: &catlift::setval::AdjunctionReport) -> Value {
    json!({"passed": r.passed, "checks": r.checks, "failure": r.failure})
}

fn lift(s: &Settings, file: &Path, left: &str, right: &str) -> Answer {
    let l = load(file)?;
    let i = lookup(&l.functors, "functor", left)?;
    let p = lookup(&l.functors, "functor", right)?;
    let count = squares(i, p, s.budget)?.len();
    let bad = find_unliftable(std::slice::from_ref(i), p, s.budget)?;
    let witness = bad.map(|sq| {
        let (top, bottom) = (sq.top.describe(), sq.bottom.describe());
        json!({"top": top.0, "bottom": bottom.0})
    });
    Ok((true, json!({"squares": count, "lifts": witness.is_none(), "unliftable": witness})))
}

fn rlp(s: &Settings, file: Option<&Path>, functor: Option<&str>) -> Answer {
    let (Some(file), Some(functor)) = (file, functor) else {
        if file.is_some() {
            return Err(input_error("a file needs --functor"));
        }
        return outcome(suite::isofibration_oracle(s)?);
    };
    let l = load(file)?;
    let p = lookup(&l.functors, "functor", functor)?;
    let iso = is_isofibration(p);
    let rlp = has_rlp(&default_acyclic_cofibrations().maps, p, s.budget)?;
    Ok((iso == rlp, json!({"isofibration": iso, "rlp": rlp})))
}

fn soa(s: &Settings, simplex: Option<usize>) -> Answer {
    let Some(n) = simplex else {
        return outcome(suite::soa_factorizations(s)?);
    };
    let dim = s.dim.min(2).max(n);
    let gens: Vec<_> = (0..=dim).map(|k| boundary_inclusion(k, dim)).collect();
    let f = simplex_to_point(n, dim);
    let r = bounded_soa(&gens, &f, s.max_stages, s.budget)?;
    let summary = r.summary(&gens, &f);
    let ok = summary.recomposes && summary.cell_record_valid;
    Ok((ok, json!({"dim": dim, "simplex": n, "summary": summary})))
}

fn semidirect(s: &Settings, file: Option<&Path>, action: Option<&str>, name: Option<&str>) -> Answer {
    let (Some(file), Some(action), Some(name)) = (file, action, name) else {
        if file.is_some() {
            return Err(input_error("a file needs --action and --diagram"));
        }
        return outcome(suite::semidirect_lan(s)?);
    };
    let l = load(file)?;
    let act = lookup(&l.actions, "action", action)?;
    let f = lookup(&l.diagrams, "diagram", name)?;
    if **f.shape() != **act.target() {
        return Err(input_error(format!("diagram `{name}` is not over the category acted on by `{action}`")));
    }
    let r = verify_lan_formula(act, f)?;
    Ok((
        r.passed,
        json!({"passed": r.passed, "restricted_sizes": r.restricted_sizes, "coproduct_sizes": r.coproduct_sizes, "failure": r.failure}),
    ))
}

fn rsset_command(s: &Settings, file: Option<&Path>, name: Option<&str>, count: usize, max_simplices: usize) -> Answer {
    let (Some(file), Some(name)) = (file, name) else {
        if file.is_some() {
            return Err(input_error("a file needs --rsset"));
        }
        return outcome(suite::rsset_roundtrip(s, count, max_simplices)?);
    };
    let mut l = load(file)?;
    let data = lookup(&l.rssets, "rsset", name)?.clone();
    let nb = l.nabla(data.dim)?;
    let (a, sigma) = nb.to_involutive(&data.diagram)?;
    let back = nb.from_involutive(&a, &sigma)?;
    let squares = nb.sigma_square_failures(&data.diagram);
    let roundtrip = back == *data.diagram;
    Ok((
        roundtrip && squares.is_empty(),
        json!({"dim": data.dim, "simplices": data.diagram.total_size(), "roundtrip": roundtrip, "square_failures": squares}),
    ))
}

fn cyclic(s: &Settings, file: Option<&Path>, operad: Option<&str>, builtin: Option<BuiltinOperad>) -> Answer {
    let bound = s.arity_bound;
    let p: TruncatedOperad = match (file, operad, builtin) {
        (Some(file), Some(name), _) => lookup(&load(file)?.operads, "operad", name)?.operad.clone(),
        (Some(_), None, _) => return Err(input_error("a file needs --operad")),
        (None, _, Some(BuiltinOperad::Terminal)) => terminal(bound, true),
        (None, _, Some(BuiltinOperad::Associative)) => associative(bound),
        (None, _, Some(BuiltinOperad::Random)) => random_two_element(&mut ChaCha8Rng::seed_from_u64(s.seed), bound)?.1,
        (None, _, None) => return outcome(suite::cyclic_operads(s)?),
    };
    if !validate_operad(&p).valid {
        return Err(input_error("the operad fails its axioms"));
    }
    let rp = right_adjoint_r(&p)?;
    let report = validate_cyclic(&rp);
    let sizes: Vec<usize> = (0..=p.bound()).map(|n| p.size(n)).collect();
    let r_sizes: Vec<usize> = (0..=p.bound()).map(|n| rp.operad().size(n)).collect();
    let predicted = (0..=p.bound()).all(|n| r_sizes[n] == sizes[n].pow(n as u32 + 1));
    Ok((
        report.valid && predicted,
        json!({"sizes": sizes, "r_sizes": r_sizes, "cyclic_valid": report.valid, "checks": report.checks, "violations": report.violations}),
    ))
}

fn complex_report<F: Field>(c: &ComplexData) -> catlift::Result<Value> {
    let x = c.build::<F>()?;
    let (naive, homotopy) = (naive_truncate(&x), homotopy_truncate(&x));
    Ok(json!({
        "p": c.p,
        "homology": x.homology_dims(),
        "acyclic": x.is_acyclic(),
        "naive_truncation_homology": naive.homology_dims(),
        "homotopy_truncation_homology": homotopy.homology_dims(),
    }))
}

fn chain(s: &Settings, primes: &[u32], file: Option<&Path>, complex: Option<&str>) -> Answer {
    let (Some(file), Some(name)) = (file, complex) else {
        if file.is_some() {
            return Err(input_error("a file needs --complex"));
        }
        if let Some(p) = primes.iter().find(|p| ![2, 3, 5, 7].contains(*p)) {
            return Err(input_error(format!("--p {p}: the suite runs over 2, 3, 5 and 7")));
        }
        return outcome(suite::chain_suite(s, primes)?);
    };
    let l = load(file)?;
    let c = lookup(&l.complexes, "complex", name)?;
    let v = with_prime!(c.p, complex_report, c).ok_or_else(|| input_error(format!("p must be one of {PRIMES:?}")))??;
    Ok((true, v))
}

fn paper_suite(s: &Settings, case: Option<&str>) -> Answer {
    let cases = paper::cases();
    if let Some(name) = case {
        let run = cases.get(name).ok_or_else(|| {
            input_error(format!("unknown case `{name}`; known: {}", cases.keys().copied().collect::<Vec<_>>().join(", ")))
        })?;
        return Ok(run(s)?);
    }
    let mut all = serde_json::Map::new();
    let mut passed = true;
    for (name, run) in &cases {
        let (ok, v) = run(s)?;
        passed &= ok;
        all.insert(name.to_string(), json!({"passed": ok, "report": v}));
    }
    Ok((passed, json!({"cases": all, "passed": passed})))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn homcount_is_a_bare_integer() {
        let r = run(["catlift", "nabla", "--dim", "1", "--homcount", "1", "1"]);
        assert_eq!((r.code, r.stdout.as_str()), (0, "6\n"));
        let r = run(["catlift", "nabla", "--dim", "1", "--homcount", "2", "0"]);
        assert_eq!(r.code, 2);
    }

    #[test]
    fn unknown_case_is_an_input_error() {
        let r = run(["catlift", "paper-suite", "--case", "nope"]);
        assert_eq!(r.code, 2);
        assert!(r.stderr.contains("dagger"));
    }
}
