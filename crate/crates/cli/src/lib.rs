//! Command-line front end: parses tables, runs the analyses and renders the
//! results as canonical JSON or plain text.

pub mod format;
pub mod report;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use hyperkernel::freeprod::{FactorRegistry, WordParseError, WordSet};
use hyperkernel::quotients::{self, Fundamental};
use hyperkernel::relations::{self, Limits};
use hyperkernel::{ElementSet, HyperTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use format::FormatError;

/// Environment variable overriding the default census cap.
pub const CENSUS_CAP_ENV: &str = "HYPERKERNEL_CENSUS_CAP";

#[derive(Parser, Debug)]
#[command(name = "hyperkernel", version, about = "Fundamental relations, hearts and quotients of finite hypergroups")]
pub struct Cli {
    /// Emit canonical JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of distinct product sets explored.
    #[arg(long, global = true)]
    pub census_cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Axioms and structure flags.
    Check { file: String },
    /// Print a table in `.hyp` or JSON form.
    Show {
        file: String,
        #[arg(long, value_parser = ["hyp", "json"], default_value = "hyp")]
        format: String,
    },
    /// The relation beta, its quotient group and kernel.
    Beta { file: String },
    /// The relation gamma, optionally cross-checked by brute force.
    Gamma {
        file: String,
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    /// The heart by complete parts, against the beta kernel.
    Heart { file: String },
    /// The derived subhypergroup, against the gamma kernel.
    Derived { file: String },
    /// Subhypergroups with their classification.
    Subs {
        file: String,
        #[arg(long)]
        closed: bool,
        #[arg(long)]
        normal: bool,
        #[arg(long)]
        complete_part: bool,
        #[arg(long)]
        contains_heart: bool,
    },
    /// The quotient by a normal subhypergroup.
    Quotient {
        file: String,
        /// Comma-separated labels.
        #[arg(long)]
        sub: String,
    },
    /// Direct-product identities.
    Product { file1: String, file2: String },
    /// All strongly regular relations, against normal closed subhypergroups
    /// containing the heart.
    SrEnum {
        file: String,
        #[arg(long, default_value_t = 30_000)]
        budget: u128,
    },
    /// Word arithmetic in a free product.
    Freeprod(FreeprodArgs),
}

#[derive(Args, Debug)]
pub struct FreeprodArgs {
    /// Comma-separated factor files or fixture names.
    #[arg(long)]
    pub factors: String,
    #[command(subcommand)]
    pub action: FreeprodAction,
}

#[derive(Subcommand, Debug)]
pub enum FreeprodAction {
    /// Evaluate `<word> * <word> * ...`.
    Eval { expr: String },
    /// Image in the direct sum of abelianized quotients.
    Psi { word: String },
    /// Image in the free product of the fundamental groups.
    Phi { word: String },
    /// Sampled axiom checks.
    Check {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hyperkernel::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Word(#[from] WordParseError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) | CliError::Word(WordParseError::Invalid(e)) if e.is_exhaustion() => 2,
            _ => 1,
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    match execute(&cli) {
        Ok(v) => Outcome {
            code: 0,
            stdout: render(&v, cli.json),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn render(v: &Value, as_json: bool) -> String {
    match v {
        Value::String(s) if !as_json => s.clone(),
        _ if as_json => format!("{}\n", serde_json::to_string_pretty(v).expect("values serialize")),
        _ => report::render_text(v),
    }
}

fn limits(cli: &Cli) -> Result<Limits, CliError> {
    let mut l = Limits::default();
    if let Some(cap) = cli.census_cap {
        l.census_cap = cap;
    } else if let Ok(s) = std::env::var(CENSUS_CAP_ENV) {
        l.census_cap = s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{CENSUS_CAP_ENV} must be a number, got `{s}`")))?;
    }
    Ok(l)
}

fn load(source: &str) -> Result<HyperTable, CliError> {
    Ok(format::load(source)?.table)
}

fn parse_subset(h: &HyperTable, labels: &str) -> Result<ElementSet, CliError> {
    labels
        .split(',')
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            h.index_of(l)
                .ok_or_else(|| CliError::Usage(format!("unknown element `{l}`")))
        })
        .collect()
}

/// Runs a parsed command and returns its result document.
pub fn execute(cli: &Cli) -> Result<Value, CliError> {
    let limits = limits(cli)?;
    match &cli.command {
        Command::Check { file } => {
            let h = load(file)?;
            Ok(report::structure(&h, &h.structure_report()))
        }
        Command::Show { file, format } => {
            let f = format::load(file)?;
            Ok(if format == "json" {
                format::to_json(&f)
            } else {
                Value::String(format::emit_hyp(&f))
            })
        }
        Command::Beta { file } => fundamental(&load(file)?, Fundamental::Beta, &limits),
        Command::Gamma { file, oracle, nmax } => {
            let h = load(file)?;
            let mut v = fundamental(&h, Fundamental::Gamma, &limits)?;
            if *oracle {
                let o = relations::gamma_oracle(&h, *nmax, limits.oracle_budget)?;
                let g = relations::gamma_with(&h, &limits)?;
                v["oracle"] = json!({
                    "nmax": nmax,
                    "classes": report::partition(&h, &o),
                    "agrees": o == g,
                });
            }
            Ok(v)
        }
        Command::Heart { file } => {
            let h = load(file)?;
            let kernel = relations::kernel_s(&h, &relations::beta_with(&h, &limits)?)?;
            let (by_parts, agree) = match quotients::heart_with(&h, &limits) {
                Ok(s) => (s, true),
                Err(hyperkernel::Error::InconsistentHeart { complete_parts, .. }) => {
                    (complete_parts.iter().collect(), false)
                }
                Err(e) => return Err(e.into()),
            };
            Ok(json!({
                "heart": report::set(&h, by_parts),
                "kernel_beta": report::set(&h, kernel),
                "routes_agree": agree,
            }))
        }
        Command::Derived { file } => {
            let h = load(file)?;
            let kernel = relations::kernel_s(&h, &relations::gamma_with(&h, &limits)?)?;
            let (by_parts, agree) = match quotients::derived_with(&h, &limits) {
                Ok(s) => (s, true),
                Err(hyperkernel::Error::InconsistentDerived { construction, .. }) => {
                    (construction.iter().collect(), false)
                }
                Err(e) => return Err(e.into()),
            };
            Ok(json!({
                "derived": report::set(&h, by_parts),
                "commutator_set": report::set(&h, quotients::commutator_set(&h)),
                "kernel_gamma": report::set(&h, kernel),
                "routes_agree": agree,
            }))
        }
        Command::Subs {
            file,
            closed,
            normal,
            complete_part,
            contains_heart,
        } => {
            let h = load(file)?;
            let lattice = quotients::subhypergroups_with(&h, &limits)?;
            let entries: Vec<Value> = lattice
                .entries
                .iter()
                .filter(|e| {
                    (!closed || e.closed)
                        && (!normal || e.normal)
                        && (!complete_part || e.complete_part)
                        && (!contains_heart || e.contains_s_beta)
                })
                .map(|e| {
                    json!({
                        "set": report::set(&h, e.set),
                        "closed": e.closed,
                        "normal": e.normal,
                        "complete_part": e.complete_part,
                        "conjugable": e.conjugable,
                        "contains_heart": e.contains_s_beta,
                        "contains_derived": e.contains_s_gamma,
                    })
                })
                .collect();
            Ok(json!({
                "count": entries.len(),
                "subhypergroups": entries,
                "kernel_beta": report::set(&h, lattice.s_beta),
                "kernel_gamma": report::set(&h, lattice.s_gamma),
            }))
        }
        Command::Quotient { file, sub } => {
            let h = load(file)?;
            let k = parse_subset(&h, sub)?;
            quotient(&h, k, &limits)
        }
        Command::Product { file1, file2 } => {
            let (h1, h2) = (load(file1)?, load(file2)?);
            let r = quotients::product_identities_check_with(&h1, &h2, &limits)?;
            let p = &r.product;
            Ok(json!({
                "product_size": p.n(),
                "kernel_beta": report::set(p, r.kernel),
                "expected_kernel_beta": report::set(p, r.expected_kernel),
                "kernel_ok": r.kernel_ok,
                "gamma_relation_ok": r.gamma_relation_ok,
                "gamma_quotient_ok": r.gamma_quotient_ok,
                "beta_quotient_ok": r.beta_quotient_ok,
                "passed": r.passed(),
            }))
        }
        Command::SrEnum { file, budget } => {
            let h = load(file)?;
            let rels = relations::enumerate_strongly_regular(&h, *budget)?;
            let lattice = quotients::subhypergroups_with(&h, &limits)?;
            let subs: Vec<ElementSet> = lattice
                .entries
                .iter()
                .filter(|e| e.normal && e.closed && e.contains_s_beta)
                .map(|e| e.set)
                .collect();
            let relations: Vec<Value> = rels
                .iter()
                .map(|r| {
                    Ok(json!({
                        "classes": report::partition(&h, r),
                        "kernel": report::set(&h, relations::kernel_s(&h, r)?),
                    }))
                })
                .collect::<Result<_, CliError>>()?;
            Ok(json!({
                "strongly_regular": relations,
                "count": rels.len(),
                "normal_closed_over_heart": subs.iter().map(|&s| report::set(&h, s)).collect::<Vec<_>>(),
                "subhypergroup_count": subs.len(),
                "counts_agree": rels.len() == subs.len(),
            }))
        }
        Command::Freeprod(args) => freeprod(args, cli.seed),
    }
}

fn fundamental(h: &HyperTable, rho: Fundamental, limits: &Limits) -> Result<Value, CliError> {
    let p = rho.compute(h, limits)?;
    let g = relations::quotient_group_by(h, &p)?;
    let kernel = relations::kernel_s(h, &p)?;
    Ok(json!({
        "relation": rho.as_str(),
        "classes": report::partition(h, &p),
        "kernel": report::set(h, kernel),
        "quotient_group": report::group(&g),
    }))
}

fn quotient(h: &HyperTable, k: ElementSet, limits: &Limits) -> Result<Value, CliError> {
    let q = quotients::quotient_hypergroup(h, k)?;
    let qt = &q.table;
    let group = q.group();
    let beta_q = relations::beta_with(qt, limits)?;
    let kernel_q = relations::kernel_s(qt, &beta_q)?;
    let kernel_h = relations::kernel_s(h, &relations::beta_with(h, limits)?)?;
    let correspondence = match quotients::correspondence_check_with(h, k, limits) {
        Ok(r) => {
            let entries: Map<String, Value> = r
                .entries
                .iter()
                .map(|e| {
                    (
                        e.relation.as_str().to_string(),
                        json!({
                            "kernel": report::set(h, e.kernel),
                            "kernel_times_sub": report::set(h, e.kernel_times_k),
                            "quotient_kernel": report::set(qt, e.quotient_kernel),
                            "expected_quotient_kernel": report::set(qt, e.expected_quotient_kernel),
                            "kernel_ok": e.kernel_ok,
                            "isomorphism_ok": e.isomorphism_ok,
                            "join_ok": e.join_ok,
                        }),
                    )
                })
                .collect();
            json!({ "relations": entries, "derived_ok": r.derived_ok, "passed": r.passed() })
        }
        Err(hyperkernel::Error::NotCanonical(why)) => json!({ "skipped": why }),
        Err(e) => return Err(e.into()),
    };
    Ok(json!({
        "sub": report::set(h, k),
        "closed": h.is_closed(k),
        "cosets": report::partition(h, &q.cosets),
        "quotient": report::table(qt),
        "is_group": group.is_some(),
        "is_abelian_group": group.as_ref().is_some_and(|g| g.is_abelian()),
        "quotient_kernel_beta": report::set(qt, kernel_q),
        "kernel_beta_times_sub": report::set(h, h.product(kernel_h, k)),
        "correspondence": correspondence,
    }))
}

fn freeprod(args: &FreeprodArgs, seed: u64) -> Result<Value, CliError> {
    let tables = args
        .factors
        .split(',')
        .map(|s| load(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let reg = FactorRegistry::new(tables)?;
    let show = |w| reg.display(w).to_string();
    match &args.action {
        FreeprodAction::Eval { expr } => {
            let words = expr
                .split('*')
                .map(|t| reg.parse_word(t))
                .collect::<Result<Vec<_>, _>>()?;
            let result: WordSet = reg.multiply_all(&words);
            Ok(json!({ "words": result.iter().map(show).collect::<Vec<_>>() }))
        }
        FreeprodAction::Phi { word } => {
            let w = reg.parse_word(word)?;
            let q = reg.quotient_registry();
            Ok(json!({ "phi": q.display(&reg.phi(&w)).to_string() }))
        }
        FreeprodAction::Psi { word } => {
            let w = reg.parse_word(word)?;
            let all_groups = reg.factors().iter().all(|f| f.group.is_some());
            let (value, target) = if all_groups {
                (reg.psi(&w)?, reg.clone())
            } else {
                (reg.psi_phi(&w), reg.quotient_registry())
            };
            let components: Map<String, Value> = value
                .support()
                .iter()
                .map(|(&i, &x)| {
                    let (ab, _) = target.factor(i).abelian.as_ref().expect("group factor");
                    (i.to_string(), json!(ab.name(x)))
                })
                .collect();
            Ok(json!({ "components": components, "zero": value.is_zero(), "via_phi": !all_groups }))
        }
        FreeprodAction::Check { samples, max_len } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = reg.sample_check(&mut rng, *max_len, *samples, (*samples / 4).max(1));
            let closure = match reg.polygroup_closure_check(&mut rng, *max_len, *samples) {
                Ok(c) => json!({ "checked": c.checked, "failures": c.failures.len() }),
                Err(hyperkernel::Error::FactorsNotPolygroups { factor }) => {
                    json!({ "skipped": format!("factor {factor} is not a polygroup") })
                }
                Err(e) => return Err(e.into()),
            };
            Ok(json!({
                "seed": seed,
                "pairs": s.pairs,
                "commutators": s.commutator_count,
                "failures": {
                    "associativity": s.associativity.len(),
                    "inverse": s.inverse.len(),
                    "phi": s.phi.len(),
                    "psi": s.psi.len(),
                    "commutator": s.commutator.len(),
                },
                "reversibility": closure,
                "passed": s.passed(),
            }))
        }
    }
}

