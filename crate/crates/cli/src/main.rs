use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nlml::nlml::{to_tree, validate};
use nlml::nlom::{negate_with, NegationStyle};
use nlml::{
    answer, build_model, classify_expression, deserialize, render_text, serialize, transform_mood, DbClass, DbError,
    GrammarError, Lexicon, Mood, NlmlDocument, NlomError, ParseResult, Query, Store, TokenStream,
};

const DEFAULT_LEXICON: &str = "lexicon/en-demo.lex";

#[derive(Parser)]
#[command(name = "nlml", version, about = "Parse English into NLML markup and work with the markup")]
struct Cli {
    /// Lexicon file. Falls back to the built-in lexicon when the default path is missing.
    #[arg(long, global = true, env = "NLML_LEXICON")]
    lexicon: Option<PathBuf>,
    /// Record store file used by `db`.
    #[arg(long, global = true, env = "NLML_STORE", default_value = "nlml-store.tsv")]
    store: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Nlml)]
    format: Format,
    /// Print every analysis instead of the best one.
    #[arg(long, global = true)]
    all: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Nlml,
    Tree,
    JsonLines,
}

#[derive(Subcommand)]
enum Command {
    /// Parse text and print its NLML.
    Parse { text: Vec<String> },
    /// Negate a statement or convert between statement and question.
    Transform {
        #[arg(value_enum)]
        op: TransformOp,
        /// Text or NLML; read from stdin when absent.
        input: Vec<String>,
        /// Also print the rendered sentence.
        #[arg(long)]
        text: bool,
        /// Use contracted negation (`don't`).
        #[arg(long)]
        contracted: bool,
    },
    /// Answer a grammar question about one simple sentence of the input.
    Answer {
        #[arg(value_enum)]
        query: QueryArg,
        part: usize,
        input: Vec<String>,
    },
    /// Store and retrieve documents.
    Db {
        #[command(subcommand)]
        action: DbAction,
    },
    /// Check an NLML document against the tag value sets.
    Validate { input: Vec<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformOp {
    Negate,
    ToQuestion,
    ToStatement,
}

#[derive(Clone, Copy, ValueEnum)]
enum QueryArg {
    Subject,
    VerbWord,
    Object,
    Tense,
    Mood,
    Complexity,
    Subordinator,
}

impl From<QueryArg> for Query {
    fn from(q: QueryArg) -> Query {
        match q {
            QueryArg::Subject => Query::Subject,
            QueryArg::VerbWord => Query::VerbWord,
            QueryArg::Object => Query::Object,
            QueryArg::Tense => Query::Tense,
            QueryArg::Mood => Query::Mood,
            QueryArg::Complexity => Query::Complexity,
            QueryArg::Subordinator => Query::Subordinator,
        }
    }
}

#[derive(Subcommand)]
enum DbAction {
    /// Store a document and print its key.
    Put { input: Vec<String> },
    /// Print the NLML stored under a key.
    Get { key: u64 },
    /// Print the records of one class.
    Query {
        #[arg(value_enum)]
        class: ClassArg,
    },
    /// Rebuild models for the given keys (all records when none are given).
    Rebuild { keys: Vec<u64> },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Fact,
    Question,
    Relation,
}

impl From<ClassArg> for DbClass {
    fn from(c: ClassArg) -> DbClass {
        match c {
            ClassArg::Fact => DbClass::Fact,
            ClassArg::Question => DbClass::Question,
            ClassArg::Relation => DbClass::Relation,
        }
    }
}

/// A failed command: exit status 1 for domain errors, 2 for usage and setup.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn domain(message: impl Into<String>) -> Failure {
        Failure { code: 1, message: message.into() }
    }

    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }
}

impl From<GrammarError> for Failure {
    fn from(e: GrammarError) -> Failure {
        Failure::domain(e.to_string())
    }
}

impl From<NlomError> for Failure {
    fn from(e: NlomError) -> Failure {
        Failure::domain(format!("{}: {e}", e.name()))
    }
}

impl From<DbError> for Failure {
    fn from(e: DbError) -> Failure {
        match e {
            DbError::StorageFailure(_) => Failure::usage(e.to_string()),
            e => Failure::domain(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(&cli, &mut out) {
        Ok(()) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            print!("{out}");
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_lexicon(cli: &Cli) -> Result<Lexicon, Failure> {
    match &cli.lexicon {
        Some(p) => nlml::load_lexicon(p).map_err(|e| Failure::usage(e.to_string())),
        None if Path::new(DEFAULT_LEXICON).exists() => {
            nlml::load_lexicon(DEFAULT_LEXICON).map_err(|e| Failure::usage(e.to_string()))
        }
        None => Ok(Lexicon::demo()),
    }
}

fn input_text(args: &[String]) -> Result<String, Failure> {
    if !args.is_empty() && args != ["-"] {
        return Ok(args.join(" "));
    }
    let mut s = String::new();
    io::stdin().read_to_string(&mut s).map_err(|e| Failure::usage(format!("cannot read stdin: {e}")))?;
    Ok(s.trim().to_string())
}

/// Input starting with `<` is NLML; anything else is parsed as text.
fn read_document(args: &[String], lex: &Lexicon) -> Result<NlmlDocument, Failure> {
    let text = input_text(args)?;
    if text.trim_start().starts_with('<') {
        return deserialize(text.trim()).map_err(|e| Failure::domain(e.to_string()));
    }
    Ok(parse(&text, lex)?.remove(0).document)
}

fn parse(text: &str, lex: &Lexicon) -> Result<Vec<ParseResult>, GrammarError> {
    classify_expression(&TokenStream::tokenize(text)?, lex)
}

fn run(cli: &Cli, out: &mut String) -> Result<(), Failure> {
    let lex = load_lexicon(cli)?;
    match &cli.command {
        Command::Parse { text } => {
            let text = input_text(text)?;
            let results = parse(&text, &lex)?;
            let shown = if cli.all { &results[..] } else { &results[..1] };
            for (rank, r) in shown.iter().enumerate() {
                print_result(cli, rank, r, out);
            }
        }
        Command::Transform { op, input, text, contracted } => {
            let doc = read_document(input, &lex)?;
            let model = build_model(&doc, &lex)?;
            let style = if *contracted { NegationStyle::Contracted } else { NegationStyle::Full };
            let result = match op {
                TransformOp::Negate => negate_with(&model, &lex, style)?,
                TransformOp::ToQuestion => transform_mood(&model, &lex, Mood::Question)?,
                TransformOp::ToStatement => transform_mood(&model, &lex, Mood::Statement)?,
            };
            print_document(cli, &result.to_document(), out);
            if *text {
                out.push_str(&render_text(&result));
                out.push('\n');
            }
        }
        Command::Answer { query, part, input } => {
            let doc = read_document(input, &lex)?;
            let model = build_model(&doc, &lex)?;
            if let Some(a) = answer(&model, (*query).into(), *part)? {
                out.push_str(&a);
                out.push('\n');
            }
        }
        Command::Db { action } => db(cli, action, &lex, out)?,
        Command::Validate { input } => {
            let doc = read_document(input, &lex)?;
            let violations = validate(&doc);
            if violations.is_empty() {
                out.push_str("valid\n");
            } else {
                let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
                return Err(Failure::domain(list.join("; ")));
            }
        }
    }
    Ok(())
}

fn db(cli: &Cli, action: &DbAction, lex: &Lexicon, out: &mut String) -> Result<(), Failure> {
    let store = Store::open(&cli.store)?;
    match action {
        DbAction::Put { input } => {
            let doc = read_document(input, lex)?;
            let key = store.put(&doc)?;
            out.push_str(&format!("{key}\n"));
        }
        DbAction::Get { key } => {
            let r = store.get(*key)?;
            match cli.format {
                Format::JsonLines => out.push_str(&format!("{}\n", record_json(&r))),
                Format::Tree => {
                    let doc = deserialize(&r.nlml).map_err(|e| Failure::domain(e.to_string()))?;
                    out.push_str(&to_tree(&doc));
                }
                Format::Nlml => out.push_str(&format!("{}\n", r.nlml)),
            }
        }
        DbAction::Query { class } => {
            for r in store.query((*class).into())? {
                match cli.format {
                    Format::JsonLines => out.push_str(&format!("{}\n", record_json(&r))),
                    _ => out.push_str(&format!("{}\n", r.to_line())),
                }
            }
        }
        DbAction::Rebuild { keys } => {
            let keys = if keys.is_empty() { store.records()?.iter().map(|r| r.key).collect() } else { keys.clone() };
            let models = store.rebuild(&keys, lex)?;
            for (key, m) in keys.iter().zip(&models) {
                out.push_str(&format!("{key}\t{}\t{}\t{}\n", m.mood, m.complexity, render_text(m)));
            }
        }
    }
    Ok(())
}

fn record_json(r: &nlml::DbRecord) -> serde_json::Value {
    json!({
        "key": r.key,
        "class": r.class.as_str(),
        "created_at": r.timestamp(),
        "nlml": r.nlml,
    })
}

fn print_document(cli: &Cli, doc: &NlmlDocument, out: &mut String) {
    match cli.format {
        Format::Nlml => out.push_str(&format!("{}\n", serialize(doc))),
        Format::Tree => out.push_str(&to_tree(doc)),
        Format::JsonLines => out.push_str(&format!("{}\n", json!({ "nlml": serialize(doc) }))),
    }
}

fn print_result(cli: &Cli, rank: usize, r: &ParseResult, out: &mut String) {
    let nlml = serialize(&r.document);
    match cli.format {
        Format::Nlml if cli.all => {
            out.push_str(&format!("penalty={} probability={:.6} rule={}\t{nlml}\n", r.penalty, r.probability, r.rule))
        }
        Format::Nlml => out.push_str(&format!("{nlml}\n")),
        Format::Tree => {
            if cli.all {
                out.push_str(&format!("# rank {rank} penalty={} probability={:.6} rule={}\n", r.penalty, r.probability, r.rule));
            }
            out.push_str(&to_tree(&r.document));
        }
        Format::JsonLines => {
            let v = json!({
                "rank": rank,
                "mood": r.mood().map(|m| m.to_string()),
                "penalty": r.penalty,
                "probability": r.probability,
                "rule": r.rule,
                "nlml": nlml,
            });
            out.push_str(&format!("{v}\n"));
        }
    }
}
