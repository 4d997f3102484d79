//! Command-line front end.
//!
//! Exit status: 0 pass/true, 1 fail/false/counterexample, 2 usage or input
//! error, 3 resource limit.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::engine::{enumerate_with, is_j_trivial, EngineChoice, Limits, MonoidTable};
use crate::error::{Error, Result};
use crate::identities::{
    bounded_derivation, counterexample, holds_in_stylic, AxiomSet, Derivation, DerivationBounds, Identity,
};
use crate::presentations::{Family, Presentation};
use crate::verify::{
    verify_corollary2, verify_corollary2c, verify_lemma1, verify_lemma2, verify_surjection_chain, verify_theorem,
    Corollary2Part, Report, DEFAULT_SEED,
};
use crate::wordcore::{distinguishing_subword, simon_equivalent, subwords_up_to, Alphabet};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Environment variable holding `key=value` limit overrides.
pub const LIMITS_ENV: &str = "STYLIC_LIMITS";

#[derive(Parser, Debug)]
#[command(name = "stylic", version, about = "Stylic, Kiselman and Catalan monoids and their identities")]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Stylic,
    Kiselman,
    Catalan,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Stylic => Family::Stylic,
            FamilyArg::Kiselman => Family::Kiselman,
            FamilyArg::Catalan => Family::Catalan,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Auto,
    Kb,
    Closure,
    Both,
}

impl From<EngineArg> for EngineChoice {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Auto => EngineChoice::Auto,
            EngineArg::Kb => EngineChoice::Completion,
            EngineArg::Closure => EngineChoice::Closure,
            EngineArg::Both => EngineChoice::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Claim {
    Lemma1,
    Lemma2,
    Chain,
    Theorem,
    Corollary2a,
    Corollary2b,
    Corollary2c,
}

/// A presentation given as a file or a preset.
#[derive(Args, Debug)]
struct PresentationSource {
    /// Presentation file.
    #[arg(long, conflicts_with = "family")]
    presentation: Option<PathBuf>,
    /// Preset family.
    #[arg(long, value_enum, requires = "n")]
    family: Option<FamilyArg>,
    /// Number of generators of the preset.
    #[arg(long)]
    n: Option<usize>,
}

impl PresentationSource {
    fn load(&self) -> Result<Presentation> {
        match (&self.presentation, self.family, self.n) {
            (Some(path), _, _) => Presentation::from_json(&fs::read_to_string(path)?),
            (None, Some(f), Some(n)) => Family::from(f).presentation(n),
            _ => Err(Error::input("give --presentation FILE or --family F --n K")),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a preset presentation.
    Preset {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Write the presentation file here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Enumerate a presentation into a multiplication table.
    Enumerate {
        #[command(flatten)]
        source: PresentationSource,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
        /// Write the table file here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Normal form of a generator word, e.g. `a2.a1.a2`.
    Nf {
        word: String,
        #[command(flatten)]
        source: PresentationSource,
    },
    /// Scattered subwords of a word up to length k.
    Subwords {
        word: String,
        #[arg(long)]
        k: usize,
        /// Letters in order.
        #[arg(long, default_value = "xyztuv")]
        alphabet: String,
    },
    /// Simon k-equivalence of two words.
    Simon {
        u: String,
        v: String,
        #[arg(long)]
        k: usize,
        /// Print a shortest distinguishing subword.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value = "xyztuv")]
        alphabet: String,
    },
    /// Check an identity against a table, a preset, or the stylic criterion.
    Check {
        identity: String,
        #[arg(long, conflicts_with_all = ["stylic", "family"])]
        table: Option<PathBuf>,
        /// Use the subword criterion for Styl_N.
        #[arg(long, conflicts_with = "family")]
        stylic: Option<usize>,
        #[arg(long, value_enum, requires = "n")]
        family: Option<FamilyArg>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Derive an identity from an axiom file by bounded search.
    Derive {
        identity: String,
        #[arg(long)]
        axioms: PathBuf,
        #[arg(long)]
        max_length: Option<usize>,
        #[arg(long)]
        image_length: Option<usize>,
        #[arg(long)]
        max_states: Option<usize>,
    },
    /// Run a verification workflow.
    Verify {
        #[arg(value_enum)]
        claim: Claim,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long, default_value_t = 4)]
        len: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Is a monoid J-trivial?
    Jtrivial {
        #[arg(long, conflicts_with = "family")]
        table: Option<PathBuf>,
        #[arg(long, value_enum, requires = "n")]
        family: Option<FamilyArg>,
        #[arg(long)]
        n: Option<usize>,
    },
}

/// Limits from the environment, or the defaults.
pub fn limits_from_env() -> Result<Limits> {
    match std::env::var(LIMITS_ENV) {
        Ok(spec) => Limits::default().with_overrides(&spec),
        Err(_) => Ok(Limits::default()),
    }
}

fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Resource { .. } => EXIT_RESOURCE,
        Error::EngineMismatch(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    let result = match cli.threads {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => {
                let mut buffer = Vec::new();
                let result = pool.install(|| dispatch(&cli, &mut buffer));
                let _ = out.write_all(&buffer);
                result
            }
            Err(e) => Err(Error::input(format!("cannot start {threads} threads: {e}"))),
        },
        None => dispatch(&cli, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn records(out: &mut dyn Write, value: &serde_json::Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn bool_code(value: bool) -> i32 {
    if value {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn load_table(path: &PathBuf) -> Result<MonoidTable> {
    MonoidTable::from_json(&fs::read_to_string(path)?)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let limits = limits_from_env()?;
    let records_format = cli.format == Format::Records;
    match &cli.command {
        Command::Preset { family, n, output } => {
            let p = Family::from(*family).presentation(*n)?;
            if let Some(path) = output {
                fs::write(path, p.to_json())?;
            }
            if records_format {
                writeln!(out, "{}", p.to_json())?;
            } else {
                write!(out, "{p}")?;
            }
            Ok(EXIT_PASS)
        }
        Command::Enumerate { source, engine, output } => {
            let p = source.load()?;
            let e = enumerate_with(&p, &limits, (*engine).into())?;
            let json = e.table.to_json();
            if let Some(path) = output {
                fs::write(path, &json)?;
            }
            if records_format {
                writeln!(out, "{json}")?;
            } else {
                let alphabet = p.alphabet();
                writeln!(out, "size {} (engine {})", e.table.size(), e.engine)?;
                for (id, rep) in e.table.representatives().iter().enumerate() {
                    writeln!(out, "{id}: {}", alphabet.format(rep))?;
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Nf { word, source } => {
            let p = source.load()?;
            let alphabet = p.alphabet();
            let w = alphabet.parse(word)?;
            let e = enumerate_with(&p, &limits, EngineChoice::Auto)?;
            let nf = match &e.system {
                Some(system) => system.normal_form(&w),
                None => e.table.representative(e.table.evaluate(&w)).clone(),
            };
            if records_format {
                records(out, &json!({ "word": alphabet.format(&w), "normal_form": alphabet.format(&nf) }))?;
            } else {
                writeln!(out, "{}", alphabet.format(&nf))?;
            }
            Ok(EXIT_PASS)
        }
        Command::Subwords { word, k, alphabet } => {
            let alphabet = Alphabet::from_chars(alphabet)?;
            let set = subwords_up_to(&alphabet.parse(word)?, *k);
            let members: Vec<_> = set.iter().map(|m| alphabet.format(m)).collect();
            if records_format {
                records(out, &json!({ "k": k, "members": members }))?;
            } else {
                writeln!(out, "{}", members.join(" "))?;
            }
            Ok(EXIT_PASS)
        }
        Command::Simon { u, v, k, witness, alphabet } => {
            let alphabet = Alphabet::from_chars(alphabet)?;
            let (u, v) = (alphabet.parse(u)?, alphabet.parse(v)?);
            let equivalent = simon_equivalent(&u, &v, *k);
            let shown = if *witness {
                distinguishing_subword(&u, &v, *k).map(|w| alphabet.format(&w))
            } else {
                None
            };
            if records_format {
                records(out, &json!({ "equivalent": equivalent, "witness": shown }))?;
            } else if equivalent {
                writeln!(out, "equivalent")?;
            } else if let Some(w) = shown {
                writeln!(out, "distinct; witness {w}")?;
            } else {
                writeln!(out, "distinct")?;
            }
            Ok(bool_code(equivalent))
        }
        Command::Check { identity, table, stylic, family, n } => {
            let identity = Identity::parse(identity)?;
            if let Some(n) = stylic {
                let holds = holds_in_stylic(&identity, *n);
                let witness = distinguishing_subword(identity.lhs(), identity.rhs(), *n)
                    .map(|w| identity.alphabet().format(&w));
                if records_format {
                    records(out, &json!({ "identity": identity.to_string(), "holds": holds, "witness": witness }))?;
                } else if holds {
                    writeln!(out, "holds in Styl_{n}")?;
                } else {
                    writeln!(out, "fails in Styl_{n}; witness {}", witness.unwrap_or_default())?;
                }
                return Ok(bool_code(holds));
            }
            let t = match (table, family, n) {
                (Some(path), _, _) => load_table(path)?,
                (None, Some(f), Some(n)) => {
                    enumerate_with(&Family::from(*f).presentation(*n)?, &limits, EngineChoice::Auto)?.table
                }
                _ => return Err(Error::input("give --table FILE, --stylic N or --family F --n K")),
            };
            let found = counterexample(&identity, &t, limits.max_steps)?;
            let generators = Alphabet::generators(t.generator_count().max(1))?;
            let assignment: Option<Vec<String>> = found.as_ref().map(|a| {
                a.iter()
                    .enumerate()
                    .map(|(v, &e)| format!("{}={}", crate::identities::VARIABLES[v], generators.format(t.representative(e))))
                    .collect()
            });
            if records_format {
                records(
                    out,
                    &json!({ "identity": identity.to_string(), "holds": found.is_none(), "counterexample": assignment }),
                )?;
            } else if let Some(a) = &assignment {
                writeln!(out, "fails; counterexample {}", a.join(", "))?;
            } else {
                writeln!(out, "holds")?;
            }
            Ok(bool_code(found.is_none()))
        }
        Command::Derive { identity, axioms, max_length, image_length, max_states } => {
            let goal = Identity::parse(identity)?;
            let axioms = AxiomSet::parse(&fs::read_to_string(axioms)?)?;
            let mut bounds = DerivationBounds::default();
            if let Some(v) = max_length {
                bounds.max_word_length = *v;
            }
            if let Some(v) = image_length {
                bounds.max_image_length = *v;
            }
            if let Some(v) = max_states {
                bounds.max_states = *v;
            }
            let derivation = bounded_derivation(&axioms, &goal, &bounds);
            match &derivation {
                Derivation::Derived(trace) => {
                    trace.replay(&axioms)?;
                    if records_format {
                        records(out, &json!({ "derived": true, "trace": trace.records() }))?;
                    } else {
                        writeln!(out, "derived in {} steps", trace.steps.len())?;
                        for r in trace.records() {
                            writeln!(
                                out,
                                "{}. axiom {} {:?} at {} with [{}] -> {}",
                                r.step,
                                r.axiom,
                                r.direction,
                                r.position,
                                r.substitution.join(", "),
                                r.result
                            )?;
                        }
                    }
                }
                Derivation::Unknown { explored } => {
                    if records_format {
                        records(out, &json!({ "derived": false, "explored": explored }))?;
                    } else {
                        writeln!(out, "unknown after exploring {explored} words")?;
                    }
                }
            }
            Ok(bool_code(derivation.is_derived()))
        }
        Command::Verify { claim, n, vars, len, seed } => {
            let report: Report = match claim {
                Claim::Lemma1 => verify_lemma1(n.unwrap_or(3), &limits)?,
                Claim::Lemma2 => verify_lemma2(n.unwrap_or(3), &limits)?,
                Claim::Chain => verify_surjection_chain(n.unwrap_or(3), &limits)?,
                Claim::Theorem => verify_theorem(n.unwrap_or(2), *vars, *len, &limits)?,
                Claim::Corollary2a => verify_corollary2(Corollary2Part::A, *seed, &limits)?,
                Claim::Corollary2b => verify_corollary2(Corollary2Part::B, *seed, &limits)?,
                Claim::Corollary2c => verify_corollary2c(),
            };
            if records_format {
                writeln!(out, "{}", report.to_json())?;
            } else {
                write!(out, "{report}")?;
            }
            Ok(bool_code(report.passed()))
        }
        Command::Jtrivial { table, family, n } => {
            let t = match (table, family, n) {
                (Some(path), _, _) => load_table(path)?,
                (None, Some(f), Some(n)) => {
                    enumerate_with(&Family::from(*f).presentation(*n)?, &limits, EngineChoice::Auto)?.table
                }
                _ => return Err(Error::input("give --table FILE or --family F --n K")),
            };
            let answer = is_j_trivial(&t);
            if records_format {
                records(out, &json!({ "j_trivial": answer, "size": t.size() }))?;
            } else {
                writeln!(out, "{}", if answer { "J-trivial" } else { "not J-trivial" })?;
            }
            Ok(bool_code(answer))
        }
    }
}
