use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use treeset::codes::{
    compose_codes, decompose_over, group_code_intersection, internal_factors, is_bifix_code, is_code, is_prefix_code,
    is_suffix_code, kernel, s_degree, s_maximal_bifix_verdict, CodeSet, CodingMorphism, Decomposition,
    GroupAutomatonSpec, GroupMorphism, Perm,
};
use treeset::decoding::{
    degree_multiplicativity, max_bifix_decode, primitivity_of_sequence, run_checks, sadic_extract, sadic_replay,
    verify_group_morphism_props, verify_main_theorem, DecodingJob, HarnessReport, SadicSequence,
};
use treeset::freegroup::{fold, is_basis, tame_decompose, Index, SignedWord, TameOutcome};
use treeset::generators::{factor_set_of_fixed_point, FixedPointSpec, Morphism};
use treeset::iet::IntervalExchange;
use treeset::presets::Preset;
use treeset::properties::{run_property, DEFAULT_SEED, PROPERTY_NAMES};
use treeset::returns::{derived_set, left_right_conjugation, return_words};
use treeset::words::{extension_graph, Alphabet, FactorSet, FactorSetJson};
use treeset::{Error, Result};

#[derive(Parser)]
#[command(name = "treeset", version, about = "Factor sets, bifix codes, return words and free-group certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a truncated factor set.
    Generate {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run named checks on a factor set, or print an extension graph.
    Analyze {
        #[command(flatten)]
        source: SourceArgs,
        /// Comma-separated: tree, acyclic, complexity, recurrent, uniform, certified.
        #[arg(long, default_value = "tree,complexity")]
        check: String,
        /// Longest word tested by the checks.
        #[arg(long)]
        bound: Option<usize>,
        /// Print the extension graph of this word as DOT instead.
        #[arg(long)]
        graph: Option<String>,
    },
    /// Return words of a member, optionally with the derived set.
    Returns {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        word: String,
        #[arg(long)]
        derived: bool,
    },
    /// Code verdicts, degrees, composition and group codes.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Free-group foldings, indices, bases and elementary decompositions.
    #[command(subcommand)]
    Fg(FgCommand),
    /// Maximal bifix decoding by a coding morphism.
    Decode {
        #[command(flatten)]
        source: SourceArgs,
        /// Rules such as `c->aa; d->ab; e->ba`.
        #[arg(long)]
        coding: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Closure, degree, group-image and randomized property checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Return-word S-adic representations.
    #[command(subcommand)]
    Sadic(SadicCommand),
}

#[derive(Subcommand)]
enum CodeCommand {
    /// Code, prefix, suffix, bifix and maximality verdicts.
    Check {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        code: String,
    },
    /// S-degree, kernel and internal factors.
    Degree {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        code: String,
    },
    /// `X = f(Y)` for a coding morphism `f`.
    Compose {
        /// Target alphabet of the coding, e.g. `ab`.
        #[arg(long)]
        alphabet: String,
        #[arg(long)]
        coding: String,
        #[arg(long)]
        y: String,
    },
    /// Write `X = Y ∘ Z`.
    Decompose {
        #[arg(long)]
        alphabet: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        z: String,
        /// Letters for the intermediate alphabet, e.g. `uvw`.
        #[arg(long)]
        names: Option<String>,
    },
    /// `Z ∩ S` for the group code of `φ⁻¹(H)`.
    Groupcode {
        #[command(flatten)]
        source: SourceArgs,
        /// Letter images in cycle notation, e.g. `a=(12); b=(13)`.
        #[arg(long)]
        group: String,
        /// Degree of the permutations.
        #[arg(long)]
        degree: usize,
        /// Generators of `H` in cycle notation, separated by `;`. Trivial if absent.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct SignedArgs {
    /// Comma-separated free-group words, e.g. `ab,ca^-1b`.
    #[arg(long, alias = "basis")]
    words: String,
    /// Alphabet; defaults to the letters used.
    #[arg(long)]
    alphabet: Option<String>,
}

#[derive(Subcommand)]
enum FgCommand {
    /// Stallings folding of the generated subgroup.
    Fold {
        #[command(flatten)]
        words: SignedArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Index of the generated subgroup.
    Index {
        #[command(flatten)]
        words: SignedArgs,
    },
    /// Whether the words form a basis of the free group.
    Basis {
        #[command(flatten)]
        words: SignedArgs,
    },
    /// Elementary decomposition of a positive basis.
    Tame {
        #[command(flatten)]
        words: SignedArgs,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Decoded set stays a uniformly recurrent tree set.
    TreeClosure {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        coding: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// `d_X(S) = d_Y(T)·d_Z(S)`.
    DegreeMult {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        names: Option<String>,
    },
    /// Images of the set and of return words under a group morphism.
    Group {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        group: String,
        #[arg(long)]
        degree: usize,
        /// Comma-separated members whose return words are tested.
        #[arg(long, default_value = "")]
        samples: String,
    },
    /// Randomized property suites.
    Props {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        /// Comma-separated subset of the suites.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Subcommand)]
enum SadicCommand {
    /// Return-word S-adic representation of a set.
    Extract {
        #[command(flatten)]
        source: SourceArgs,
        /// Equality with the source at the replay depth needs enough steps.
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[arg(long, default_value_t = 1024)]
        max_depth: usize,
        /// Depth at which the replay is compared with the source.
        #[arg(long, default_value_t = 8)]
        replay_depth: usize,
    },
    /// Factors of `σ_0⋯σ_n(A*)` for an explicit sequence.
    Replay {
        /// Endomorphisms separated by `|`, e.g. `a->ac; b->b; c->c | a->a; b->ba; c->c`.
        #[arg(long)]
        morphisms: String,
        /// Repeat the list this many times.
        #[arg(long, default_value_t = 1)]
        repeat: usize,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Compare with this preset at the same depth.
        #[arg(long)]
        against: Option<String>,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["preset", "morphism", "iet", "file"])))]
struct SourceArgs {
    #[arg(long)]
    preset: Option<String>,
    /// Rules such as `a->ab; b->a`; the fixed point starts at `--seed`.
    #[arg(long)]
    morphism: Option<String>,
    #[arg(long, requires = "morphism")]
    seed: Option<String>,
    /// Interval exchange, e.g. `d=5; a=3/2-1/2*sqrt(5); b=-1/2+1/2*sqrt(5); bottom=b a; minimal`.
    #[arg(long)]
    iet: Option<String>,
    /// Factor set JSON written by `generate`.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 12)]
    depth: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

enum Failure {
    Check,
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

impl SourceArgs {
    fn generator(&self) -> Result<Box<dyn Fn(usize) -> Result<FactorSet>>> {
        if let Some(name) = &self.preset {
            let p = Preset::by_name(name)?;
            return Ok(Box::new(move |d| p.factor_set(d)));
        }
        if let Some(rules) = &self.morphism {
            let m = Morphism::parse(rules)?;
            let seed = match &self.seed {
                Some(s) => s.clone(),
                None => m.source().symbol(0).to_string(),
            };
            let spec = FixedPointSpec::with_symbol(m, &seed)?;
            return Ok(Box::new(move |d| factor_set_of_fixed_point(&spec, d)));
        }
        if let Some(text) = &self.iet {
            let t = IntervalExchange::parse(text)?;
            return Ok(Box::new(move |d| t.factor_set(d)));
        }
        Err(Error::Parse("a file source cannot be regenerated at other depths".into()))
    }

    fn load(&self) -> Result<FactorSet> {
        if self.depth == 0 {
            return Err(Error::Parse("depth must be at least 1".into()));
        }
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let json: FactorSetJson = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            return Ok(FactorSet::from_json(&json)?.truncate(self.depth));
        }
        (self.generator()?)(self.depth)
    }
}

fn print_json<T: Serialize>(value: &T) {
    emit(&format!("{}\n", serde_json::to_string_pretty(value).expect("serializable")));
}

fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_set(s: &FactorSet, format: Format) {
    match format {
        Format::Text => {
            for n in 0..=s.depth() {
                let level = s.factors_of_length(n).expect("within depth");
                let words: Vec<String> = level.iter().map(|w| s.format(w)).collect();
                emit(&format!("{n}\t{}\t{}\n", level.len(), words.join(" ")));
            }
        }
        _ => print_json(&s.to_json()),
    }
}

fn report(r: &HarnessReport) -> Outcome {
    print_json(r);
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn code(s: &FactorSet, text: &str) -> Result<CodeSet> {
    CodeSet::parse(s.alphabet(), text)
}

fn alphabet_of(text: &str) -> Result<Alphabet> {
    if text.chars().count() == text.len() && !text.contains([',', ' ']) {
        Alphabet::from_chars(text)
    } else {
        Alphabet::new(text.split([',', ' ']).filter(|s| !s.is_empty()).map(str::to_string))
    }
}

fn signed_words(args: &SignedArgs) -> Result<(Alphabet, Vec<SignedWord>)> {
    let alphabet = match &args.alphabet {
        Some(a) => alphabet_of(a)?,
        None => {
            let letters: BTreeSet<char> = args.words.chars().filter(|c| c.is_alphabetic()).collect();
            Alphabet::from_chars(&letters.into_iter().collect::<String>())?
        }
    };
    let words = args
        .words
        .split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(|w| SignedWord::parse(&alphabet, w))
        .collect::<Result<Vec<_>>>()?;
    Ok((alphabet, words))
}

fn index_json(i: Index) -> serde_json::Value {
    match i {
        Index::Finite(n) => json!(n),
        Index::Infinite => json!("infinite"),
    }
}

fn perms(text: &str, degree: usize) -> Result<Vec<Perm>> {
    text.split(';').map(str::trim).filter(|t| !t.is_empty()).map(|t| Perm::parse_cycles(t, degree)).collect()
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Generate { source, format } => print_set(&source.load()?, format),
        Command::Analyze { source, check, bound, graph } => {
            let s = source.load()?;
            if let Some(w) = graph {
                let w = s.member(&w)?;
                emit(&extension_graph(&s, &w)?.to_dot(s.alphabet(), &s.format(&w)));
                return Ok(());
            }
            let names: Vec<&str> = check.split(',').map(str::trim).filter(|c| !c.is_empty()).collect();
            return report(&run_checks(&s, &names, bound.unwrap_or(s.depth()))?);
        }
        Command::Returns { source, word, derived } => {
            let s = source.load()?;
            let w = s.member(&word)?;
            let rd = return_words(&s, &w)?;
            let conj: Option<Vec<[String; 2]>> =
                left_right_conjugation(&rd).ok().map(|p| p.iter().map(|(x, y)| [s.format(x), s.format(y)]).collect());
            let d = if derived { Some(derived_set(&s, &w, None)?) } else { None };
            print_json(&json!({
                "returns": rd.to_json(s.depth()),
                "conjugation": conj,
                "derived": d.as_ref().map(|d| json!({
                    "coding": d.coding.morphism().format_rules(),
                    "set": d.set.to_json(),
                    "recurrent": d.recurrence.holds(),
                })),
            }));
        }
        Command::Code(c) => return run_code(c),
        Command::Fg(c) => return run_fg(c),
        Command::Decode { source, coding, format } => {
            let s = source.load()?;
            let f = CodingMorphism::parse(s.alphabet(), &coding)?;
            print_set(&max_bifix_decode(&DecodingJob::new(s, f)?)?, format);
        }
        Command::Verify(c) => return run_verify(c),
        Command::Sadic(c) => return run_sadic(c),
    }
    Ok(())
}

fn run_code(c: CodeCommand) -> Outcome {
    match c {
        CodeCommand::Check { source, code: text } => {
            let s = source.load()?;
            let x = code(&s, &text)?;
            let w = x.words();
            let maximal = if is_bifix_code(w) && w.iter().all(|v| s.contains(v)) && x.max_len() <= s.depth() {
                Some(s_maximal_bifix_verdict(w, &s)?)
            } else {
                None
            };
            print_json(&json!({
                "words": x.format_words(),
                "code": is_code(w),
                "prefix": is_prefix_code(w),
                "suffix": is_suffix_code(w),
                "bifix": is_bifix_code(w),
                "s_maximal_bifix": maximal.map(|m| m.0),
                "method": maximal.map(|m| m.1),
            }));
        }
        CodeCommand::Degree { source, code: text } => {
            let s = source.load()?;
            let x = code(&s, &text)?;
            let fmt = |ws: Vec<treeset::words::Word>| ws.iter().map(|w| s.format(w)).collect::<Vec<_>>();
            print_json(&json!({
                "words": x.format_words(),
                "degree": s_degree(x.words(), &s)?,
                "kernel": fmt(kernel(x.words(), &s)?),
                "internal_factors": fmt(internal_factors(x.words(), &s)?),
            }));
        }
        CodeCommand::Compose { alphabet, coding, y } => {
            let a = alphabet_of(&alphabet)?;
            let f = CodingMorphism::parse(&a, &coding)?;
            let y = CodeSet::parse(f.source(), &y)?;
            print_json(&json!({ "x": compose_codes(&y, &f)?.format_words() }));
        }
        CodeCommand::Decompose { alphabet, x, z, names } => {
            let a = alphabet_of(&alphabet)?;
            let (x, z) = (CodeSet::parse(&a, &x)?, CodeSet::parse(&a, &z)?);
            let names = names.as_deref().map(alphabet_of).transpose()?;
            match decompose_over(&x, &z, names.as_ref())? {
                Decomposition::Composed { y, f } => {
                    print_json(&json!({ "y": y.format_words(), "coding": f.morphism().format_rules() }))
                }
                Decomposition::Impossible(why) => {
                    print_json(&json!({ "impossible": why }));
                    return Err(Failure::Check);
                }
            }
        }
        CodeCommand::Groupcode { source, group, degree, subgroup, format } => {
            let s = source.load()?;
            let phi = GroupMorphism::parse(s.alphabet(), &group, degree)?;
            let h = perms(subgroup.as_deref().unwrap_or(""), degree)?;
            let spec = GroupAutomatonSpec::cosets(&phi, &h)?;
            let x = group_code_intersection(&spec, &s)?;
            let g = fold(s.alphabet().len(), x.words().iter().map(|w| SignedWord::positive(w)));
            if format == Format::Dot {
                emit(&spec.automaton().to_dot(s.alphabet()));
                return Ok(());
            }
            print_json(&json!({
                "x": x.format_words(),
                "states": spec.automaton().state_count(),
                "fold_vertices": g.vertex_count(),
                "fold_complete": g.is_complete(),
                "index": index_json(g.index()),
                "rank": g.rank(),
            }));
        }
    }
    Ok(())
}

fn run_fg(c: FgCommand) -> Outcome {
    match c {
        FgCommand::Fold { words, format } => {
            let (a, x) = signed_words(&words)?;
            let g = fold(a.len(), x);
            if format == Format::Dot {
                emit(&g.to_dot(&a, "H"));
                return Ok(());
            }
            let edges: Vec<(usize, &str, usize)> = g.edges().into_iter().map(|(u, c, v)| (u, a.symbol(c), v)).collect();
            print_json(&json!({
                "vertices": g.vertex_count(),
                "edges": edges,
                "rank": g.rank(),
                "complete": g.is_complete(),
                "index": index_json(g.index()),
                "basis": g.basis().iter().map(|w| w.format(&a)).collect::<Vec<_>>(),
            }));
        }
        FgCommand::Index { words } => {
            let (a, x) = signed_words(&words)?;
            let g = fold(a.len(), x);
            print_json(&json!({ "index": index_json(g.index()), "rank": g.rank() }));
        }
        FgCommand::Basis { words } => {
            let (a, x) = signed_words(&words)?;
            let ok = is_basis(&x, &a);
            print_json(&json!({ "basis": ok }));
            if !ok {
                return Err(Failure::Check);
            }
        }
        FgCommand::Tame { words } => {
            let (a, x) = signed_words(&words)?;
            let positive = x
                .iter()
                .map(|w| w.as_positive().ok_or_else(|| Error::Parse(format!("`{}` is not positive", w.format(&a)))))
                .collect::<Result<Vec<_>>>()?;
            match tame_decompose(&CodeSet::new(a.clone(), positive)?)? {
                TameOutcome::Tame(d) => print_json(&json!({
                    "outcome": "tame",
                    "steps": d.steps.iter().map(|s| s.to_json(&a)).collect::<Vec<_>>(),
                    "images": d.images.iter().map(|w| a.format(w)).collect::<Vec<_>>(),
                })),
                TameOutcome::NotTame { stuck } => {
                    print_json(&json!({ "outcome": "not-tame", "stuck": stuck.format_words() }));
                    return Err(Failure::Check);
                }
                TameOutcome::UndeterminedByGreedy { stuck } => {
                    print_json(&json!({ "outcome": "undetermined", "stuck": stuck.format_words() }));
                    return Err(Failure::Check);
                }
            }
        }
    }
    Ok(())
}

fn run_verify(c: VerifyCommand) -> Outcome {
    match c {
        VerifyCommand::TreeClosure { source, coding, bound } => {
            let s = source.load()?;
            let f = CodingMorphism::parse(s.alphabet(), &coding)?;
            let (_, r) = verify_main_theorem(&DecodingJob::new(s, f)?, bound)?;
            report(&r)
        }
        VerifyCommand::DegreeMult { source, x, z, names } => {
            let s = source.load()?;
            let (x, z) = (code(&s, &x)?, code(&s, &z)?);
            let names = names.as_deref().map(alphabet_of).transpose()?;
            let r = degree_multiplicativity(&s, &x, &z, names.as_ref())?;
            print_json(&r);
            if r.product_holds == Some(true) {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        VerifyCommand::Group { source, group, degree, samples } => {
            let s = source.load()?;
            let phi = GroupMorphism::parse(s.alphabet(), &group, degree)?;
            let samples = s.alphabet().parse_list(&samples)?;
            report(&verify_group_morphism_props(&s, &phi, &samples)?)
        }
        VerifyCommand::Props { seed, cases, only } => {
            let names: Vec<String> = match only {
                Some(o) => o.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
                None => PROPERTY_NAMES.iter().map(|s| s.to_string()).collect(),
            };
            let reports = names.iter().map(|n| run_property(n, cases, seed)).collect::<Result<Vec<_>>>()?;
            print_json(&reports);
            if reports.iter().all(|r| r.holds()) {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

fn run_sadic(c: SadicCommand) -> Outcome {
    match c {
        SadicCommand::Extract { source, steps, max_depth, replay_depth } => {
            let gen = source.generator()?;
            let seq = sadic_extract(&*gen, steps, source.depth, max_depth)?;
            let replay = sadic_replay(&seq, seq.len().saturating_sub(1), replay_depth)?;
            let matches = replay == gen(replay_depth)?;
            let bases = seq.steps().iter().all(|s| s.basis && s.elementary.is_some());
            print_json(&json!({
                "steps": seq.to_json(),
                "replay_depth": replay_depth,
                "replay_matches": matches,
                "all_tame_bases": bases,
            }));
            if matches && bases {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        SadicCommand::Replay { morphisms, repeat, depth, against } => {
            let list = morphisms.split('|').map(Morphism::parse).collect::<Result<Vec<_>>>()?;
            let all: Vec<Morphism> = (0..repeat.max(1)).flat_map(|_| list.iter().cloned()).collect();
            let horizon = all.len();
            let seq = SadicSequence::from_morphisms(all)?;
            let t = sadic_replay(&seq, seq.len() - 1, depth)?;
            let primitive = primitivity_of_sequence(&seq.morphisms(), 0, horizon)?;
            let matches = match &against {
                Some(name) => Some(t == Preset::by_name(name)?.factor_set(depth)?),
                None => None,
            };
            print_json(&json!({ "set": t.to_json(), "primitivity": primitive, "matches": matches }));
            if matches == Some(false) {
                Err(Failure::Check)
            } else {
                Ok(())
            }
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::LetterNotInAlphabet(_)
        | Error::EmptyWordInCode
        | Error::LengthsNotNormalized(_)
        | Error::NonPositiveLength(_)
        | Error::MixedRadicand(..) => 2,
        Error::Invalid(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
