//! The `choicelogic` command line.
//!
//! Every verb prints one JSON report on standard output. Exit codes: 0 when
//! every requested check holds (or the query is entailed), 1 when one fails,
//! 2 on bad input.

mod report;
mod search;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use choice_logic::connectives::{check_rules, embed_atomic, render_rule_witness, represent_classical};
use choice_logic::consequence::{represent, Representation};
use choice_logic::format::{
    choice_to_value, measure_to_value, operator_from_json, operator_to_value, parse_formula, read, relation_to_value,
    universe_from_json, Loader,
};
use choice_logic::klm::{lift, relation_from_operator};
use choice_logic::qmeasure::{choice_from_measure, measure_from_choice};
use choice_logic::{
    ChoiceFunction, ChoiceProperty, Closure, ConsequenceOperator, Formula, KlmAxiom, MeasureProperty, Postulate,
    PreferentialRelation, QualMeasure, Rule, Universe,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

pub use report::{Outcome, Report};
pub use search::SearchKind;

use report::{formula_witness, push_verdict, world_witness};

#[derive(Debug, Parser)]
#[command(name = "choicelogic", version, about = "Choice functions, measures and nonmonotonic consequence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ChoiceArgs {
    /// Universe file; overrides the universe named in the choice file.
    #[arg(long)]
    universe: Option<PathBuf>,
    /// Choice-function file (`table` or `rank` form).
    #[arg(long)]
    choice: PathBuf,
}

#[derive(Debug, Args)]
struct OperatorArgs {
    /// Tabulated operator file.
    #[arg(long, conflicts_with_all = ["universe", "choice"])]
    operator: Option<PathBuf>,
    /// Universe file for a semantic operator.
    #[arg(long)]
    universe: Option<PathBuf>,
    /// Choice-function file for a semantic operator.
    #[arg(long, required_unless_present = "operator")]
    choice: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    /// Measure of a choice function.
    Measure,
    /// Choice function of the heavy elements of a measure.
    Choice,
    /// Preferential relation of a propositional operator.
    Relation,
    /// Operator of a relation (lifted) or table of an abstract semantic operator.
    Operator,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Variant {
    AllTheories,
    ConsistentCnClosed,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check choice-function properties.
    CheckChoice {
        #[command(flatten)]
        choice: ChoiceArgs,
        /// Property to check; all when omitted.
        #[arg(long = "property")]
        properties: Vec<String>,
    },
    /// Check measure properties.
    CheckMeasure {
        #[arg(long)]
        universe: Option<PathBuf>,
        #[arg(long)]
        measure: PathBuf,
        /// Property to check (or `expansion_transfer`); all when omitted.
        #[arg(long = "property")]
        properties: Vec<String>,
    },
    /// Check postulates of a consequence operator.
    CheckOperator {
        #[command(flatten)]
        operator: OperatorArgs,
        /// Postulate to check; all when omitted.
        #[arg(long = "postulate")]
        postulates: Vec<String>,
    },
    /// Check the connective rules of a propositional semantic operator.
    CheckRules {
        #[command(flatten)]
        choice: ChoiceArgs,
        /// Rule to check; all when omitted.
        #[arg(long = "rule")]
        rules: Vec<String>,
    },
    /// Check the preferential axioms of a relation.
    CheckKlm {
        #[arg(long)]
        universe: Option<PathBuf>,
        /// Relation file.
        #[arg(long, required_unless_present = "choice")]
        relation: Option<PathBuf>,
        /// Extract the relation from this choice function instead.
        #[arg(long, conflicts_with = "relation")]
        choice: Option<PathBuf>,
        /// Axiom to check; all when omitted.
        #[arg(long = "axiom")]
        axioms: Vec<String>,
    },
    /// Decide whether premises entail a query.
    Entail {
        #[command(flatten)]
        operator: OperatorArgs,
        /// Premise formulas (sentence names for tabulated operators).
        #[arg(long, num_args = 0..)]
        premises: Vec<String>,
        #[arg(long)]
        query: String,
    },
    /// Convert between choice functions, measures, relations and operators.
    Convert {
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long)]
        universe: Option<PathBuf>,
        #[arg(long)]
        choice: Option<PathBuf>,
        #[arg(long)]
        measure: Option<PathBuf>,
        #[arg(long)]
        relation: Option<PathBuf>,
        /// Allow lifting relations over more than two atoms.
        #[arg(long)]
        allow_large: bool,
    },
    /// Build the choice-function representation of an operator.
    Represent {
        /// Tabulated operator to represent over its theories.
        #[arg(long, conflicts_with_all = ["universe", "choice"])]
        operator: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "all-theories")]
        variant: Variant,
        /// Embed the operator into the propositional language over its sentences.
        #[arg(long, requires = "operator")]
        atomic: bool,
        /// Universe of a propositional semantic operator to rebuild over maximal consistent sets.
        #[arg(long)]
        universe: Option<PathBuf>,
        #[arg(long, required_unless_present = "operator")]
        choice: Option<PathBuf>,
    },
    /// Search for a choice function exhibiting a failure.
    Search {
        #[arg(long, value_enum)]
        kind: SearchKind,
        /// Search the discrete universe with this many worlds.
        #[arg(long, conflicts_with = "universe", required_unless_present = "universe")]
        worlds: Option<usize>,
        #[arg(long)]
        universe: Option<PathBuf>,
        /// Only ranked choice functions.
        #[arg(long)]
        ranked: bool,
        /// Sample this many functions instead of enumerating.
        #[arg(long)]
        sample: Option<usize>,
        /// Seed for sampling; required with `--sample`.
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Runs one invocation, writing the report to `out` and diagnostics to
/// `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let text = report.to_json();
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &text) {
                    let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            let _ = out.write_all(text.as_bytes());
            if report.all_hold() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", describe(&e));
            2
        }
    }
}

/// The error chain, skipping causes already spelled out by their parent.
fn describe(e: &anyhow::Error) -> String {
    let mut text = String::new();
    for cause in e.chain() {
        let part = cause.to_string();
        if !text.ends_with(&part) {
            if !text.is_empty() {
                text.push_str(": ");
            }
            text.push_str(&part);
        }
    }
    text
}

fn execute(command: &Command) -> Result<Report> {
    match command {
        Command::CheckChoice { choice, properties } => check_choice(choice, properties),
        Command::CheckMeasure {
            universe,
            measure,
            properties,
        } => check_measure(universe.as_deref(), measure, properties),
        Command::CheckOperator { operator, postulates } => check_operator(operator, postulates),
        Command::CheckRules { choice, rules } => check_rule_set(choice, rules),
        Command::CheckKlm {
            universe,
            relation,
            choice,
            axioms,
        } => check_klm(universe.as_deref(), relation.as_deref(), choice.as_deref(), axioms),
        Command::Entail {
            operator,
            premises,
            query,
        } => entail(operator, premises, query),
        Command::Convert {
            to,
            universe,
            choice,
            measure,
            relation,
            allow_large,
        } => convert(*to, universe.as_deref(), choice.as_deref(), measure.as_deref(), relation.as_deref(), *allow_large),
        Command::Represent {
            operator,
            variant,
            atomic,
            universe,
            choice,
        } => represent_verb(operator.as_deref(), *variant, *atomic, universe.as_deref(), choice.as_deref()),
        Command::Search {
            kind,
            worlds,
            universe,
            ranked,
            sample,
            seed,
        } => {
            let mut report = Report::new("search");
            report.input("kind", kind.name());
            let u = match (worlds, universe) {
                (Some(n), _) => {
                    report.input("worlds", *n);
                    Arc::new(Universe::discrete(*n)?)
                }
                (None, Some(p)) => {
                    report.input("universe", path_value(p));
                    load_universe(p)?
                }
                (None, None) => bail!("`--worlds` or `--universe` is required"),
            };
            if *ranked {
                report.input("ranked", true);
            }
            let sampling = match (sample, seed) {
                (Some(k), Some(s)) => {
                    report.input("sample", *k);
                    report.input("seed", *s);
                    Some((*k, *s))
                }
                (Some(_), None) => bail!("sampling needs an explicit `--seed`"),
                (None, Some(_)) => bail!("`--seed` is only used with `--sample`"),
                (None, None) => None,
            };
            search::run(&mut report, *kind, &u, *ranked, sampling)?;
            Ok(report)
        }
    }
}

fn path_value(p: &Path) -> Value {
    json!(p.display().to_string())
}

fn load_universe(path: &Path) -> Result<Arc<Universe>> {
    let text = read(path)?;
    Ok(Arc::new(
        universe_from_json(&text).with_context(|| format!("universe {}", path.display()))?,
    ))
}

fn loader_for(file: &Path, universe: Option<&Path>) -> Result<Loader> {
    let dir = file.parent().map(Path::to_path_buf).unwrap_or_default();
    let loader = Loader::in_dir(dir);
    Ok(match universe {
        Some(u) => loader.with_universe(load_universe(u)?),
        None => loader,
    })
}

fn load_choice(universe: Option<&Path>, choice: &Path) -> Result<ChoiceFunction> {
    let loader = loader_for(choice, universe)?;
    let text = read(choice)?;
    loader
        .choice_from_json(&text)
        .with_context(|| format!("choice function {}", choice.display()))
}

fn load_measure(universe: Option<&Path>, measure: &Path) -> Result<QualMeasure> {
    let loader = loader_for(measure, universe)?;
    let text = read(measure)?;
    loader
        .measure_from_json(&text)
        .with_context(|| format!("measure {}", measure.display()))
}

fn load_relation(universe: Option<&Path>, relation: &Path) -> Result<PreferentialRelation> {
    let loader = loader_for(relation, universe)?;
    let text = read(relation)?;
    loader
        .relation_from_json(&text)
        .with_context(|| format!("relation {}", relation.display()))
}

fn load_operator(args: &OperatorArgs, report: &mut Report) -> Result<ConsequenceOperator> {
    if let Some(path) = &args.operator {
        report.input("operator", path_value(path));
        let text = read(path)?;
        let t = operator_from_json(&text).with_context(|| format!("operator {}", path.display()))?;
        return Ok(ConsequenceOperator::Tabulated(t));
    }
    let choice = args.choice.as_deref().ok_or_else(|| anyhow!("`--operator` or `--choice` is required"))?;
    if let Some(u) = &args.universe {
        report.input("universe", path_value(u));
    }
    report.input("choice", path_value(choice));
    Ok(ConsequenceOperator::Semantic(load_choice(args.universe.as_deref(), choice)?))
}

fn choice_inputs(report: &mut Report, args: &ChoiceArgs) {
    if let Some(u) = &args.universe {
        report.input("universe", path_value(u));
    }
    report.input("choice", path_value(&args.choice));
}

/// Parses selector names, defaulting to `all` when none are given.
fn selectors<T: FromStr + Copy>(names: &[String], all: &[T], what: &str) -> Result<Vec<T>> {
    if names.is_empty() {
        return Ok(all.to_vec());
    }
    names
        .iter()
        .map(|n| T::from_str(n).map_err(|_| anyhow!("unknown {what} `{n}`")))
        .collect()
}

fn check_choice(args: &ChoiceArgs, properties: &[String]) -> Result<Report> {
    let mut report = Report::new("check-choice");
    choice_inputs(&mut report, args);
    let props = selectors(properties, &ChoiceProperty::ALL, "property")?;
    report.input("properties", json!(props.iter().map(|p| p.name()).collect::<Vec<_>>()));
    let f = load_choice(args.universe.as_deref(), &args.choice)?;
    let u = Arc::clone(f.universe());
    for p in props {
        push_verdict(&mut report, &f.check(p), |w| world_witness(&u, w));
    }
    Ok(report)
}

fn check_measure(universe: Option<&Path>, measure: &Path, properties: &[String]) -> Result<Report> {
    let mut report = Report::new("check-measure");
    if let Some(u) = universe {
        report.input("universe", path_value(u));
    }
    report.input("measure", path_value(measure));
    let transfer = "expansion_transfer";
    let wants_transfer = properties.is_empty() || properties.iter().any(|p| p == transfer);
    let named: Vec<String> = properties.iter().filter(|p| *p != transfer).cloned().collect();
    let props = if properties.is_empty() || !named.is_empty() {
        selectors(&named, &MeasureProperty::ALL, "property")?
    } else {
        Vec::new()
    };
    let mut listed: Vec<&str> = props.iter().map(|p| p.name()).collect();
    if wants_transfer {
        listed.push(transfer);
    }
    report.input("properties", json!(listed));
    let m = load_measure(universe, measure)?;
    let u = Arc::clone(m.universe());
    for p in props {
        push_verdict(&mut report, &m.check(p), |w| world_witness(&u, w));
    }
    if wants_transfer {
        push_verdict(&mut report, &m.check_expansion_transfer(), |w| world_witness(&u, w));
    }
    Ok(report)
}

fn check_operator(args: &OperatorArgs, postulates: &[String]) -> Result<Report> {
    let mut report = Report::new("check-operator");
    let ps = selectors(postulates, &Postulate::ALL, "postulate")?;
    report.input("postulates", json!(ps.iter().map(|p| p.name()).collect::<Vec<_>>()));
    let op = load_operator(args, &mut report)?;
    for p in ps {
        let v = op.check_postulate(p);
        let witness = v.witness.as_ref().map(|w| {
            let mut m = Map::new();
            for (name, set) in &w.sets {
                m.insert((*name).to_owned(), json!(op.premise_names(set)));
            }
            Value::Object(m)
        });
        report.push(v.postulate, v.holds, witness);
    }
    Ok(report)
}

fn check_rule_set(args: &ChoiceArgs, rules: &[String]) -> Result<Report> {
    let mut report = Report::new("check-rules");
    choice_inputs(&mut report, args);
    let rs = selectors(rules, &Rule::ALL, "rule")?;
    report.input("rules", json!(rs.iter().map(|r| r.name()).collect::<Vec<_>>()));
    let op = ConsequenceOperator::Semantic(load_choice(args.universe.as_deref(), &args.choice)?);
    let u = Arc::clone(op.universe().expect("semantic"));
    for v in check_rules(&op, &rs)? {
        let witness = match &v.witness {
            Some(w) => {
                let (premises, a, b) = render_rule_witness(&u, w)?;
                let mut m = Map::new();
                m.insert("premises".to_owned(), json!(premises));
                m.insert("a".to_owned(), json!(a));
                if let Some(b) = b {
                    m.insert("b".to_owned(), json!(b));
                }
                Some(Value::Object(m))
            }
            None => None,
        };
        report.push(v.rule, v.holds, witness);
    }
    Ok(report)
}

fn check_klm(universe: Option<&Path>, relation: Option<&Path>, choice: Option<&Path>, axioms: &[String]) -> Result<Report> {
    let mut report = Report::new("check-klm");
    let xs = selectors(axioms, &KlmAxiom::ALL, "axiom")?;
    report.input("axioms", json!(xs.iter().map(|a| a.name()).collect::<Vec<_>>()));
    if let Some(u) = universe {
        report.input("universe", path_value(u));
    }
    let rel = match (relation, choice) {
        (Some(r), _) => {
            report.input("relation", path_value(r));
            load_relation(universe, r)?
        }
        (None, Some(c)) => {
            report.input("choice", path_value(c));
            relation_from_operator(&ConsequenceOperator::Semantic(load_choice(universe, c)?))?
        }
        (None, None) => bail!("`--relation` or `--choice` is required"),
    };
    let u = Arc::clone(rel.universe());
    for a in xs {
        push_verdict(&mut report, &rel.check(a), |w| formula_witness(&u, w));
    }
    Ok(report)
}

fn parse_premises(op: &ConsequenceOperator, texts: &[String]) -> Result<Vec<Formula>> {
    let formulas = texts.iter().map(|t| parse_formula(t)).collect::<Result<Vec<_>, _>>()?;
    if let Some(u) = op.universe() {
        for f in &formulas {
            u.mod_sentence(f)?;
        }
    }
    Ok(formulas)
}

fn entail(args: &OperatorArgs, premises: &[String], query: &str) -> Result<Report> {
    let mut report = Report::new("entail");
    report.input("premises", json!(premises));
    report.input("query", query);
    let op = load_operator(args, &mut report)?;
    let a = parse_premises(&op, premises)?;
    let q = parse_formula(query)?;
    let closure = op.close(&a)?;
    let holds = closure.contains(&q)?;
    let witness = (!holds).then(|| match &closure {
        Closure::Theory(t) => {
            let u = t.universe();
            let countermodels = t.worlds().difference(u.mod_sentence(&q).unwrap_or_default());
            json!({"countermodels": u.world_set_names(countermodels)})
        }
        Closure::Set { .. } => json!({"closure": closure.names()}),
    });
    report.push("entails", holds, witness);
    report.entails = Some(holds);
    Ok(report)
}

fn convert(
    to: Target,
    universe: Option<&Path>,
    choice: Option<&Path>,
    measure: Option<&Path>,
    relation: Option<&Path>,
    allow_large: bool,
) -> Result<Report> {
    let mut report = Report::new("convert");
    report.input("to", to.to_possible_value().expect("named").get_name().to_owned());
    if let Some(u) = universe {
        report.input("universe", path_value(u));
    }
    let need = |p: Option<&Path>, flag: &str| p.map(Path::to_path_buf).ok_or_else(|| anyhow!("`--{flag}` is required"));
    let output = match to {
        Target::Measure => {
            let c = need(choice, "choice")?;
            report.input("choice", path_value(&c));
            measure_to_value(&measure_from_choice(&load_choice(universe, &c)?)?)
        }
        Target::Choice => {
            let m = need(measure, "measure")?;
            report.input("measure", path_value(&m));
            choice_to_value(&choice_from_measure(&load_measure(universe, &m)?)?)
        }
        Target::Relation => {
            let c = need(choice, "choice")?;
            report.input("choice", path_value(&c));
            let op = ConsequenceOperator::Semantic(load_choice(universe, &c)?);
            relation_to_value(&relation_from_operator(&op)?)
        }
        Target::Operator => match (relation, choice) {
            (Some(r), _) => {
                report.input("relation", path_value(r));
                if allow_large {
                    report.input("allow_large", true);
                }
                let op = lift(&load_relation(universe, r)?, allow_large)?;
                choice_to_value(op.choice().expect("lifted operators are semantic"))
            }
            (None, Some(c)) => {
                report.input("choice", path_value(c));
                let op = ConsequenceOperator::Semantic(load_choice(universe, c)?);
                operator_to_value(&op.tabulate()?)
            }
            (None, None) => bail!("`--relation` or `--choice` is required"),
        },
    };
    report.push(format!("to_{}", to.to_possible_value().expect("named").get_name()), true, None);
    report.output = Some(output);
    Ok(report)
}

fn represent_verb(
    operator: Option<&Path>,
    variant: Variant,
    atomic: bool,
    universe: Option<&Path>,
    choice: Option<&Path>,
) -> Result<Report> {
    let mut report = Report::new("represent");
    let (op, f, note) = match (operator, choice) {
        (Some(path), _) => {
            report.input("operator", path_value(path));
            let t = operator_from_json(&read(path)?).with_context(|| format!("operator {}", path.display()))?;
            let op = ConsequenceOperator::Tabulated(t.clone());
            if atomic {
                report.input("atomic", true);
                let e = embed_atomic(&t)?;
                let f = e.operator.choice().expect("semantic").clone();
                (op, f, Some(json!({"direct": e.direct})))
            } else {
                let v = match variant {
                    Variant::AllTheories => Representation::AllTheories,
                    Variant::ConsistentCnClosed => Representation::ConsistentCnClosed,
                };
                report.input("variant", variant.to_possible_value().expect("named").get_name().to_owned());
                let (_, f) = represent(&op, v)?;
                (op, f, None)
            }
        }
        (None, Some(c)) => {
            if let Some(u) = universe {
                report.input("universe", path_value(u));
            }
            report.input("choice", path_value(c));
            let op = ConsequenceOperator::Semantic(load_choice(universe, c)?);
            let (_, f) = represent_classical(&op)?;
            (op, f, None)
        }
        (None, None) => bail!("`--operator` or `--choice` is required"),
    };
    let regenerated = ConsequenceOperator::Semantic(f.clone());
    let agrees = if atomic {
        let t = op.tabulate()?;
        let atoms = t.language().to_vec();
        choice_logic::bits::all_sentence_sets(atoms.len()).try_fold(true, |ok, a| {
            Ok::<bool, anyhow::Error>(ok && choice_logic::connectives::atoms_entailed(&regenerated, &atoms, a)? == t.close_set(a))
        })?
    } else {
        regenerated.extensionally_equal(&op)?
    };
    report.push("round_trip", agrees, None);
    let mut output = choice_to_value(&f);
    if let (Some(extra), Value::Object(m)) = (note, &mut output) {
        m.insert("embedding".to_owned(), extra);
    }
    report.output = Some(output);
    Ok(report)
}
