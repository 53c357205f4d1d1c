//! Command-line front end for `gradmf`.
//!
//! Every command prints a short text report and, with `--json PATH`, writes
//! a deterministic JSON document carrying `"schema": 1` and a provenance
//! block. Exit codes: 0 verified, 1 mathematical failure or non-generic
//! parameters, 2 usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use gradmf::collection::{check_collection, exceptional_collection};
use gradmf::generation::verify_generation;
use gradmf::hom::{general_window, spectrum_in, twist_window, HomTable, Window};
use gradmf::mf::build_f_i;
use gradmf::mutation::{left_mutation_step, serre_check};
use gradmf::report::rational_string;
use gradmf::stab::residue_field_stab;
use gradmf::{canonical, iso_equivalent, parse_rational, DeformationParams, GradedMF, Rational, SubsetIndex};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "gradmf", version, about = "Graded matrix factorizations of prod (x + s_i q)")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Roots s_1, ..., s_{mu+1}, comma separated; "p/q" allowed.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub s: Vec<String>,
    /// Expected t-parameters, checked against the ones derived from --s.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub t: Vec<String>,
    /// Expected mu, checked against the length of --s.
    #[arg(long, global = true)]
    pub mu: Option<usize>,
    /// Accept roots whose sum is not zero.
    #[arg(long, global = true)]
    pub relax_sum: bool,
    /// Twist window override "lo:hi" for Hom tables.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Seed for randomized isomorphism certificates.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here ("-" for stdout).
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub parallel: Option<usize>,
    /// Print intermediate data.
    #[arg(short, long, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print f, the t-parameters and the genericity verdict.
    CheckGeneric,
    /// Check that the collection attached to an order is strongly exceptional.
    VerifyCollection {
        /// Order a_1, ..., a_mu (default 1, ..., mu).
        #[arg(long, value_delimiter = ',')]
        order: Vec<usize>,
        /// Reorder the objects: a permutation of 1, ..., 2mu.
        #[arg(long, value_delimiter = ',')]
        order_override: Vec<usize>,
    },
    /// Spectrum of (tau^a F_I, tau^b F_J).
    Spectrum(PairArgs),
    /// Cone of the canonical map between F_I and F_J.
    Cone(PairArgs),
    /// Left mutation of tau^b F_J across tau^a F_I.
    Mutate(PairArgs),
    /// Serre functor check on E_i.
    Serre {
        #[arg(long)]
        i: usize,
        #[arg(long, value_delimiter = ',')]
        order: Vec<usize>,
    },
    /// Replay the generation triangles and the residue field check.
    Generation {
        #[arg(long, value_delimiter = ',')]
        order: Vec<usize>,
    },
    /// Stabilized residue field against its cone description.
    Stab {
        /// Index k of the map q: F_{k} -> tau F_{k}.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    #[arg(long = "I", value_delimiter = ',')]
    pub i: Vec<usize>,
    #[arg(long = "J", value_delimiter = ',')]
    pub j: Vec<usize>,
    /// Twist of the first object.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub a: i64,
    /// Twist of the second object.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub b: i64,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Math(#[from] gradmf::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(_) | CliError::Io(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Result of a command before it is written out.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub ok: bool,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Serialize)]
struct Provenance {
    command: String,
    s: Vec<String>,
    mu: usize,
    seed: u64,
    version: &'static str,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_roots(common: &Common) -> CliResult<Vec<Rational>> {
    if common.s.is_empty() {
        return Err(usage("--s is required"));
    }
    common
        .s
        .iter()
        .map(|v| parse_rational(v.trim()).map_err(|e| usage(format!("bad root {v:?}: {e}"))))
        .collect()
}

/// Validated parameters. Repeated roots are a mathematical failure; other
/// problems are usage errors.
pub fn params(common: &Common) -> CliResult<DeformationParams> {
    let s = parse_roots(common)?;
    let p = match DeformationParams::new(s, common.relax_sum) {
        Ok(p) => p,
        Err(e @ gradmf::Error::DuplicateRoot { .. }) => return Err(CliError::Math(e)),
        Err(e) => return Err(usage(e.to_string())),
    };
    cross_check(common, &p)?;
    Ok(p)
}

fn cross_check(common: &Common, p: &DeformationParams) -> CliResult<()> {
    if let Some(mu) = common.mu {
        if mu != p.mu() {
            return Err(usage(format!("--mu {mu} but --s has {} roots", p.s().len())));
        }
    }
    if !common.t.is_empty() {
        let t: Vec<Rational> = common
            .t
            .iter()
            .map(|v| parse_rational(v.trim()).map_err(|e| usage(format!("bad t value {v:?}: {e}"))))
            .collect::<CliResult<_>>()?;
        if t != p.t() {
            return Err(usage(format!(
                "--t {:?} does not match the values {} derived from --s",
                common.t,
                rationals(p.t())
            )));
        }
    }
    Ok(())
}

fn window(common: &Common) -> CliResult<Option<Window>> {
    let Some(w) = &common.window else {
        return Ok(None);
    };
    let (lo, hi) = w
        .split_once(':')
        .ok_or_else(|| usage(format!("window {w:?} is not lo:hi")))?;
    let lo: i64 = lo.trim().parse().map_err(|_| usage(format!("bad window start {lo:?}")))?;
    let hi: i64 = hi.trim().parse().map_err(|_| usage(format!("bad window end {hi:?}")))?;
    if lo > hi {
        return Err(usage(format!("empty window {lo}:{hi}")));
    }
    Ok(Some(Window::fixed(lo, hi)))
}

fn order(p: &DeformationParams, given: &[usize]) -> CliResult<Vec<usize>> {
    let mu = p.mu();
    if given.is_empty() {
        return Ok((1..=mu).collect());
    }
    let mut seen = given.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if given.len() != mu || seen.len() != mu || seen.iter().any(|&v| v == 0 || v > mu + 1) {
        return Err(usage(format!(
            "--order needs {mu} distinct values in 1..={}",
            mu + 1
        )));
    }
    Ok(given.to_vec())
}

fn subset(p: &DeformationParams, v: &[usize], flag: &str) -> CliResult<SubsetIndex> {
    let n = p.h() as usize;
    let s = SubsetIndex::new(v.to_vec(), n).map_err(|e| usage(format!("{flag}: {e}")))?;
    if !s.is_proper_nonempty(n) || s.len() != v.len() {
        return Err(usage(format!("{flag} must list distinct indices of a proper nonempty subset of 1..={n}")));
    }
    Ok(s)
}

fn rationals(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(rational_string).collect();
    format!("[{}]", parts.join(", "))
}

fn label(i: &SubsetIndex, t: i64) -> String {
    match t {
        0 => format!("F_{i}"),
        1 => format!("tau F_{i}"),
        _ => format!("tau^{t} F_{i}"),
    }
}

fn describe_object(x: &GradedMF, p: &DeformationParams) -> String {
    if x.is_zero_object() {
        return "0".into();
    }
    match x.rank1_normal_form(p) {
        Ok((i, t)) => label(&i, t),
        Err(_) => format!("rank {} object", x.rank()),
    }
}

fn collection_labels(p: &DeformationParams, a: &[usize]) -> Vec<String> {
    let n = p.h() as usize;
    let mut out = Vec::new();
    for t in [0, 1] {
        for k in 1..=a.len() {
            let i = SubsetIndex::new(a[..k].to_vec(), n).expect("validated order");
            out.push(label(&i, t));
        }
    }
    out
}

pub fn configure_threads(common: &Common) {
    if let Some(k) = common.parallel {
        // a pool already set up by an earlier call stays in place
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global();
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> CliResult<Outcome> {
    configure_threads(&cli.common);
    let common = &cli.common;
    let (name, mut outcome, p) = match &cli.command {
        Command::CheckGeneric => {
            let (o, s) = check_generic(common)?;
            ("check-generic", o, s)
        }
        cmd => {
            let p = params(common)?;
            let o = match cmd {
                Command::VerifyCollection { order: o, order_override } => {
                    verify_collection(common, &p, o, order_override)?
                }
                Command::Spectrum(args) => spectrum(common, &p, args)?,
                Command::Cone(args) => cone(common, &p, args)?,
                Command::Mutate(args) => mutate(common, &p, args)?,
                Command::Serre { i, order: o } => serre(common, &p, *i, o)?,
                Command::Generation { order: o } => generation(common, &p, o)?,
                Command::Stab { k } => stab(common, &p, *k)?,
                Command::CheckGeneric => unreachable!(),
            };
            let name = match cmd {
                Command::VerifyCollection { .. } => "verify-collection",
                Command::Spectrum(_) => "spectrum",
                Command::Cone(_) => "cone",
                Command::Mutate(_) => "mutate",
                Command::Serre { .. } => "serre",
                Command::Generation { .. } => "generation",
                Command::Stab { .. } => "stab",
                Command::CheckGeneric => unreachable!(),
            };
            (name, o, p.s().to_vec())
        }
    };
    let provenance = Provenance {
        command: name.into(),
        s: p.iter().map(rational_string).collect(),
        mu: p.len().saturating_sub(1),
        seed: common.seed,
        version: env!("CARGO_PKG_VERSION"),
    };
    if let Value::Object(map) = &mut outcome.json {
        map.insert("schema".into(), json!(SCHEMA));
        map.insert("provenance".into(), serde_json::to_value(provenance).expect("serializable"));
        map.insert("ok".into(), json!(outcome.ok));
    }
    Ok(outcome)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn check_generic(common: &Common) -> CliResult<(Outcome, Vec<Rational>)> {
    let s = parse_roots(common)?;
    let p = DeformationParams::degenerate(s.clone()).map_err(|e| usage(e.to_string()))?;
    cross_check(common, &p)?;
    let sum: Rational = s.iter().sum();
    if !common.relax_sum && sum != Rational::from_integer(0.into()) {
        return Err(usage(format!("roots sum to {}, expected 0", rational_string(&sum))));
    }
    let cert = p.is_generic_isolated();
    let mut text = String::new();
    writeln!(text, "f = {}", p.f()).unwrap();
    writeln!(text, "t = {}", rationals(p.t())).unwrap();
    writeln!(text, "generic: {}", cert.generic).unwrap();
    writeln!(text, "resultant: {}", rational_string(&cert.resultant)).unwrap();
    if let Some(c) = &cert.common_factor {
        writeln!(text, "certificate: {c} = 0").unwrap();
    }
    if cert.common_q {
        writeln!(text, "certificate: q = 0").unwrap();
    }
    let json = json!({
        "f": p.f().to_string(),
        "t": p.t().iter().map(rational_string).collect::<Vec<_>>(),
        "mu": p.mu(),
        "genericity": cert,
        "roots_distinct": p.roots_distinct(),
    });
    Ok((
        Outcome {
            ok: cert.generic,
            text,
            json,
        },
        s,
    ))
}

fn verify_collection(
    common: &Common,
    p: &DeformationParams,
    given: &[usize],
    reorder: &[usize],
) -> CliResult<Outcome> {
    let a = order(p, given)?;
    let mut objects = exceptional_collection(p, &a)?;
    let mut labels = collection_labels(p, &a);
    let l = objects.len();
    let mut perm: Vec<usize> = (1..=l).collect();
    if !reorder.is_empty() {
        let mut sorted = reorder.to_vec();
        sorted.sort_unstable();
        if sorted != perm {
            return Err(usage(format!("--order-override must be a permutation of 1..={l}")));
        }
        perm = reorder.to_vec();
        objects = perm.iter().map(|&k| objects[k - 1].clone()).collect();
        labels = perm.iter().map(|&k| labels[k - 1].clone()).collect();
    }
    let rep = check_collection(&objects, &labels)?;
    let ok = rep.is_exceptional_collection && rep.is_strong;
    let mut text = String::new();
    writeln!(text, "f = {}", p.f()).unwrap();
    writeln!(text, "order a = {a:?}").unwrap();
    for (k, lab) in labels.iter().enumerate() {
        writeln!(text, "E{} = {lab}", k + 1).unwrap();
    }
    writeln!(text, "each object exceptional: {}", rep.each_exceptional).unwrap();
    writeln!(text, "exceptional collection: {}", rep.is_exceptional_collection).unwrap();
    writeln!(text, "strong: {}", rep.is_strong).unwrap();
    writeln!(text, "gram:").unwrap();
    for row in &rep.gram {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
        writeln!(text, "  {}", cells.join("")).unwrap();
    }
    if common.verbose {
        for pe in &rep.pairs {
            if !pe.homs.by_shift.is_empty() {
                writeln!(
                    text,
                    "Hom(E{}, T^p E{}): {:?}",
                    pe.source, pe.target, pe.homs.by_shift
                )
                .unwrap();
            }
        }
    }
    if let Some(first) = rep.failures.first() {
        writeln!(text, "first failure: {first}").unwrap();
    }
    writeln!(
        text,
        "verdict: {}",
        if ok {
            format!("strongly exceptional collection of length {l}")
        } else {
            "not a strongly exceptional collection".into()
        }
    )
    .unwrap();
    let json = json!({
        "order": a,
        "permutation": perm,
        "report": rep,
    });
    Ok(Outcome { ok, text, json })
}

fn pair_objects(p: &DeformationParams, args: &PairArgs) -> CliResult<(SubsetIndex, SubsetIndex, GradedMF, GradedMF)> {
    let i = subset(p, &args.i, "--I")?;
    let j = subset(p, &args.j, "--J")?;
    let f = build_f_i(p, &i, args.a)?;
    let g = build_f_i(p, &j, args.b)?;
    Ok((i, j, f, g))
}

fn spectrum(common: &Common, p: &DeformationParams, args: &PairArgs) -> CliResult<Outcome> {
    let (i, j, f, g) = pair_objects(p, args)?;
    let w = match window(common)? {
        Some(w) => w,
        None => twist_window(&f, &g, Some(p)),
    };
    let (lf, lg) = (label(&i, args.a), label(&j, args.b));
    let table = HomTable::compute(&f, &g, w, (&lf, &lg))?;
    let sp = spectrum_in(&f, &g, w)?;
    let mut text = String::new();
    writeln!(text, "pair: ({lf}, {lg})").unwrap();
    writeln!(text, "window: [{}, {}] ({:?})", w.lo, w.hi, w.kind).unwrap();
    for (n, d) in &table.dims {
        writeln!(text, "dim Hom({lf}, tau^{n} {lg}) = {d}").unwrap();
    }
    writeln!(text, "spectrum: {}", rationals(&sp.entries)).unwrap();
    if !table.review.is_empty() {
        writeln!(text, "review: nonzero twists inside the safety margin {:?}", table.review).unwrap();
    }
    let json = json!({ "table": table, "spectrum": sp });
    Ok(Outcome { ok: true, text, json })
}

fn cone(common: &Common, p: &DeformationParams, args: &PairArgs) -> CliResult<Outcome> {
    let (i, j, _, _) = pair_objects(p, args)?;
    let n = p.h() as usize;
    let (m, predicted) = if i.is_subset(&j) && i != j {
        (canonical::build_phi(p, &i, &j)?, (i.complement(n).intersection(&j), i.len() as i64))
    } else if j.is_subset(&i) && i != j {
        (
            canonical::build_phibar(p, &i, &j)?,
            (i.complement(n).union(&j), i.len() as i64 - j.len() as i64),
        )
    } else {
        return Err(usage("--I and --J must be properly nested"));
    };
    let m = m.tau_shift(args.a);
    let predicted = (predicted.0, predicted.1 + args.a);
    let raw = GradedMF::cone(&m)?;
    let (reduced, stripped) = raw.reduce();
    let expected = build_f_i(p, &predicted.0, predicted.1)?;
    let v = iso_equivalent(&reduced, &expected, Some(p), common.seed)?;
    let mut text = String::new();
    writeln!(text, "map: phi0 = {}, phi1 = {}, twist {}", m.phi0, m.phi1, m.twist).unwrap();
    writeln!(text, "cone: q0 = {}, q1 = {}", raw.q0, raw.q1).unwrap();
    writeln!(text, "reduced ({stripped} trivial summands removed): {}", describe_object(&reduced, p)).unwrap();
    writeln!(text, "predicted: {}", label(&predicted.0, predicted.1)).unwrap();
    writeln!(text, "verdict: {}", v.label()).unwrap();
    if common.verbose {
        let w = window(common)?.unwrap_or_else(|| general_window(&reduced, &reduced));
        let t = HomTable::compute(&reduced, &reduced, w, ("C", "C"))?;
        writeln!(text, "End(C) by twist: {:?}", t.dims).unwrap();
    }
    let json = json!({
        "morphism": { "phi0": m.phi0.string_rows(), "phi1": m.phi1.string_rows(), "twist": m.twist },
        "cone": raw,
        "reduced": reduced,
        "stripped": stripped,
        "predicted": label(&predicted.0, predicted.1),
        "verdict": v.label(),
    });
    Ok(Outcome { ok: v.is_iso(), text, json })
}

fn mutate(_common: &Common, p: &DeformationParams, args: &PairArgs) -> CliResult<Outcome> {
    let (i, j, e, x) = pair_objects(p, args)?;
    let step = left_mutation_step(&e, &x)?;
    let (le, lx) = (label(&i, args.a), label(&j, args.b));
    let mut text = String::new();
    writeln!(text, "E = {le}, X = {lx}").unwrap();
    for (sh, d) in &step.support {
        writeln!(text, "dim Hom(E, T^{sh} X) = {d}").unwrap();
    }
    if step.support.is_empty() {
        writeln!(text, "no maps: L_E X = T^-1 X").unwrap();
    }
    writeln!(text, "L_E X = {}", describe_object(&step.result, p)).unwrap();
    let json = json!({
        "E": le,
        "X": lx,
        "support": step.support,
        "result": step.result,
        "stripped": step.stripped,
        "result_label": describe_object(&step.result, p),
    });
    Ok(Outcome { ok: true, text, json })
}

fn serre(common: &Common, p: &DeformationParams, i: usize, given: &[usize]) -> CliResult<Outcome> {
    let a = order(p, given)?;
    let objects = exceptional_collection(p, &a)?;
    let l = objects.len();
    if i == 0 || i > l {
        return Err(usage(format!("--i must lie in 1..={l}")));
    }
    let rep = serre_check(&objects, i, p, common.seed)?;
    let mut text = String::new();
    for c in &rep.chain {
        let across = if c.across >= 1 { format!("E{}", c.across) } else { format!("E({})", c.across) };
        writeln!(text, "L^{} across {across}: {}", c.k, describe_object(&c.object, p)).unwrap();
    }
    let shift = p.mu() - 1;
    let rhs = match shift {
        0 => format!("E{i}"),
        1 => format!("tau^1 E{i}"),
        k => format!("tau^{k} E{i}"),
    };
    writeln!(text, "T^{} L^{} E{i} vs {rhs}", l - 1, l - 1).unwrap();
    writeln!(text, "{}: {rhs}", rep.verdict).unwrap();
    let json = json!({ "order": a, "report": rep });
    Ok(Outcome { ok: rep.passed(), text, json })
}

fn generation(common: &Common, p: &DeformationParams, given: &[usize]) -> CliResult<Outcome> {
    let a = order(p, given)?;
    let rep = verify_generation(p, &a, common.seed)?;
    let mut text = String::new();
    for c in &rep.claims {
        let cones = c.steps.iter().filter(|s| matches!(s.kind, gradmf::generation::StepKind::Cone)).count();
        writeln!(
            text,
            "{}: {} ({} targets, {} cones, {} steps) {}",
            c.id,
            if c.passed { "pass" } else { "FAIL" },
            c.targets.len(),
            cones,
            c.steps.len(),
            c.statement
        )
        .unwrap();
        if common.verbose {
            for s in &c.steps {
                writeln!(text, "    {:?} {} via {} -> {}", s.kind, s.target, s.via, s.verdict).unwrap();
            }
        }
        for m in &c.missing {
            writeln!(text, "    missing {m}").unwrap();
        }
    }
    writeln!(
        text,
        "stab: {} (residue field vs T^-1 tau^{} C(q), {})",
        if rep.stab.passed { "pass" } else { "FAIL" },
        p.h() - 2,
        rep.stab.verdict
    )
    .unwrap();
    let json = json!({ "report": rep });
    Ok(Outcome { ok: rep.passed, text, json })
}

fn stab(common: &Common, p: &DeformationParams, k: usize) -> CliResult<Outcome> {
    if k == 0 || k as i64 > p.h() {
        return Err(usage(format!("--k must lie in 1..={}", p.h())));
    }
    let rf = residue_field_stab(p, k)?;
    let v = iso_equivalent(&rf.stab, &rf.comparison, Some(p), common.seed)?;
    let mut text = String::new();
    writeln!(text, "stab: q0 = {}, q1 = {}", rf.stab.q0, rf.stab.q1).unwrap();
    writeln!(text, "      F0 = {:?}, F1 = {:?}", rf.stab.f0, rf.stab.f1).unwrap();
    writeln!(text, "C(q): q0 = {}, q1 = {}", rf.cone.q0, rf.cone.q1).unwrap();
    writeln!(text, "comparison T^-1 tau^{} C(q): F0 = {:?}, F1 = {:?}", p.h() - 2, rf.comparison.f0, rf.comparison.f1).unwrap();
    writeln!(text, "verdict: {}", v.label()).unwrap();
    let json = json!({
        "k": k,
        "stab": rf.stab,
        "cone": rf.cone,
        "comparison": rf.comparison,
        "verdict": v.label(),
    });
    Ok(Outcome { ok: v.is_iso(), text, json })
}

/// Parses, runs and writes output; returns the exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match run(&cli) {
        Ok(o) => {
            let _ = write!(stdout, "{}", o.text);
            if let Some(path) = &cli.common.json {
                let body = render_json(&o.json);
                if path.as_os_str() == "-" {
                    let _ = write!(stdout, "{body}");
                } else if let Err(e) = std::fs::write(path, body) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return 1;
                }
            }
            o.exit_code()
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
