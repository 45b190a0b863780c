//! Command-line front end for instkit: load documents, run checkers, apply
//! the functors and the adjunction, and print deterministic reports.

pub mod document;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::json;

use instkit::adjunction::SearchLimits;
use instkit::generate::{self, GenConfig};
use instkit::pi_institution::{check_closure_laws_with, check_coherence_with, validate_pi_institution_with};
use instkit::proplogic::{
    build_logics_pi_institution, build_matrix_institution, check_logic_morphism_with, matrix_consequence, parse_loose,
    translate_formula, LogicError,
};
use instkit::subset::render_key;
use instkit::*;

use document::{
    inst_comorphism_doc, institution_doc, load_document, load_fragment, load_inst_comorphism, load_inst_morphism,
    load_institution, load_logic, load_pi, load_pi_comorphism, load_translation, pi_comorphism_doc, pi_doc, to_json,
    DocError, Document,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "instkit",
    version,
    about = "Check institutions, pi-institutions and the adjunction between them"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Enumeration cap: largest sentence universe swept exhaustively.
    #[arg(long, global = true, env = "INSTKIT_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Seed for the random generator.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the primary output here instead of standard output.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a checker and print its report.
    #[command(subcommand)]
    Check(Check),
    /// Apply F (institutions to pi-institutions) or G (back).
    Apply {
        #[arg(value_enum)]
        functor: FunctorName,
        /// An object document, or a map followed by its source and target.
        #[arg(num_args = 1..=3, required = true)]
        docs: Vec<PathBuf>,
    },
    /// Unit, counit, transpose and the laws of the adjunction.
    #[command(subcommand)]
    Adjunction(Adjunction),
    /// Propositional logics given by matrices.
    #[command(subcommand)]
    Logic(LogicCommand),
    /// Print the closure of a set of sentences.
    Closure {
        pi: PathBuf,
        signature: String,
        sentences: Vec<String>,
    },
    /// Write seeded random documents.
    #[command(subcommand)]
    Generate(Generate),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctorName {
    #[value(name = "F")]
    F,
    #[value(name = "G")]
    G,
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Category laws of the signature category of any document.
    Category {
        doc: PathBuf,
    },
    /// Functor laws, satisfaction shape and the satisfaction condition.
    Institution {
        doc: PathBuf,
    },
    /// Closure laws and coherence.
    Pi {
        doc: PathBuf,
        /// Above the cap, sweep subsets of at most this size instead of failing.
        #[arg(long)]
        sample: Option<usize>,
    },
    InstComorphism {
        map: PathBuf,
        src: PathBuf,
        dst: PathBuf,
    },
    InstMorphism {
        map: PathBuf,
        src: PathBuf,
        dst: PathBuf,
    },
    PiComorphism {
        map: PathBuf,
        src: PathBuf,
        dst: PathBuf,
    },
    /// The closure inclusions induced by a comorphism.
    Lemma1 {
        map: PathBuf,
        src: PathBuf,
        dst: PathBuf,
    },
    /// Galois-connection laws of the two stars.
    Galois {
        doc: PathBuf,
        /// Only this signature.
        #[arg(long)]
        signature: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Adjunction {
    Unit {
        pi: PathBuf,
    },
    /// Transpose `h : J -> F(I)` to `G(J) -> I`.
    Transpose {
        h: PathBuf,
        j: PathBuf,
        i: PathBuf,
    },
    FgIdentity {
        pi: PathBuf,
    },
    /// Triangle and uniqueness of the transpose, by brute force.
    Universal {
        h: PathBuf,
        j: PathBuf,
        i: PathBuf,
        /// Largest number of candidate families to enumerate.
        #[arg(long, default_value_t = 1 << 20)]
        bound: u128,
    },
    /// The counit is a comorphism and both triangle identities hold.
    Counit {
        inst: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum LogicCommand {
    BuildInstitution {
        logic: PathBuf,
    },
    BuildPi {
        fragment: PathBuf,
        #[arg(long)]
        sample: Option<usize>,
    },
    CheckMorphism {
        translation: PathBuf,
        src: PathBuf,
        dst: PathBuf,
    },
    /// Formulas of the truncated universe entailed by the given ones.
    Closure {
        logic: PathBuf,
        formulas: Vec<String>,
    },
    Translate {
        translation: PathBuf,
        formulas: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Generate {
    Institution,
    Pi,
    /// Writes map.json, src.json and dst.json into the output directory.
    Comorphism,
}

/// Every library checker and the one command that runs it.
pub const CHECKER_COMMANDS: &[(&str, &str)] = &[
    ("check_category", "check category"),
    ("check_functor", "check pi-comorphism"),
    ("check_set_functor", "check institution"),
    ("check_naturality", "check inst-comorphism"),
    ("check_satisfaction_condition", "check institution"),
    ("check_inst_comorphism", "check inst-comorphism"),
    ("check_inst_morphism", "check inst-morphism"),
    ("check_closure_laws", "check pi"),
    ("check_closure_laws_with", "check pi"),
    ("check_coherence", "check pi"),
    ("check_coherence_with", "check pi"),
    ("check_pi_comorphism", "check pi-comorphism"),
    ("check_galois_laws", "check galois"),
    ("check_polarity", "check galois"),
    ("check_lemma1", "check lemma1"),
    ("check_preimage_closed", "apply G"),
    ("check_unit", "adjunction unit"),
    ("check_universal_property", "adjunction universal"),
    ("check_fg_identity", "adjunction fg-identity"),
    ("check_counit", "adjunction counit"),
    ("check_triangle_f", "adjunction counit"),
    ("check_triangle_g", "adjunction counit"),
    ("check_logic_morphism", "logic check-morphism"),
    ("check_logic_morphism_with", "logic check-morphism"),
];

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Output {
    Report(ValidationReport),
    Document {
        json: String,
        report: ValidationReport,
    },
    Files {
        files: Vec<(String, String)>,
        report: ValidationReport,
    },
    Value {
        text: String,
        json: serde_json::Value,
    },
}

enum Failure {
    Usage(String),
    Violations(ValidationReport),
    Bound(String),
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UniverseTooLarge { .. } | Error::SearchSpaceTooLarge { .. } => Failure::Bound(e.to_string()),
            Error::InvalidInstitution(r) | Error::InvalidPiInstitution(r) | Error::InvalidComorphism(r) => {
                Failure::Violations(r)
            }
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<LogicError> for Failure {
    fn from(e: LogicError) -> Self {
        match e {
            LogicError::Core(e) => e.into(),
            LogicError::ExplosionGuard { .. } | LogicError::DepthOverflow { .. } => Failure::Bound(e.to_string()),
            LogicError::InvalidLogicMorphism { report, .. } => Failure::Violations(report),
            e => Failure::Usage(e.to_string()),
        }
    }
}

type Run<T> = Result<T, Failure>;

fn sampler(k: Option<usize>) -> Option<SmallSubsets> {
    k.map(SmallSubsets)
}

fn check(cli: &Cli, c: &Check) -> Run<Output> {
    let cap = cli.cap;
    let report = match c {
        Check::Category { doc } => {
            let sig = match load_document(doc)? {
                Document::Institution(i) => i.sig,
                Document::PiInstitution(j) => j.sig,
                other => {
                    return Err(Failure::Usage(format!(
                        "{}: a {} has no signature category",
                        doc.display(),
                        other.kind()
                    )))
                }
            };
            check_category(&sig)
        }
        Check::Institution { doc } => validate_institution(&load_institution(doc)?),
        Check::Pi { doc, sample } => {
            let j = load_pi(doc)?;
            let s = sampler(*sample);
            let sp = s.as_ref().map(|s| s as &dyn SubsetSampler);
            let mut r = check_category(&j.sig);
            if r.is_clean() {
                r.merge(check_closure_laws_with(&j, cap, sp)?);
                r.merge(check_coherence_with(&j, cap, sp)?);
            }
            r
        }
        Check::InstComorphism { map, src, dst } => {
            let (src, dst) = (load_institution(src)?, load_institution(dst)?);
            let mut f = load_inst_comorphism(map)?;
            f.phi.complete(&src.sig, &dst.sig);
            check_inst_comorphism(&f, &src, &dst)
        }
        Check::InstMorphism { map, src, dst } => {
            let (src, dst) = (load_institution(src)?, load_institution(dst)?);
            let mut f = load_inst_morphism(map)?;
            f.phi.complete(&src.sig, &dst.sig);
            check_inst_morphism(&f, &src, &dst)
        }
        Check::PiComorphism { map, src, dst } => {
            let (src, dst) = (load_pi(src)?, load_pi(dst)?);
            let mut f = load_pi_comorphism(map)?;
            f.phi.complete(&src.sig, &dst.sig);
            check_pi_comorphism(&f, &src, &dst, cap)?
        }
        Check::Lemma1 { map, src, dst } => {
            let (src, dst) = (load_institution(src)?, load_institution(dst)?);
            let mut f = load_inst_comorphism(map)?;
            f.phi.complete(&src.sig, &dst.sig);
            check_lemma1(&f, &src, &dst, cap)?
        }
        Check::Galois { doc, signature } => {
            let inst = load_institution(doc)?;
            let mut r = ValidationReport::new();
            let sigs: Vec<String> = match signature {
                Some(s) => vec![s.clone()],
                None => inst.sig.objects.iter().cloned().collect(),
            };
            for o in sigs {
                r.merge(check_galois_laws(&inst, &o, cap)?);
            }
            r
        }
    };
    Ok(Output::Report(report))
}

fn apply(cli: &Cli, functor: FunctorName, docs: &[PathBuf]) -> Run<Output> {
    let cap = cli.cap;
    match (functor, docs) {
        (FunctorName::F, [doc]) => {
            let j = f_object(&load_institution(doc)?)?;
            let report = validate_pi_institution(&j, cap)?;
            Ok(Output::Document {
                json: to_json(&pi_doc(&j, cap)?),
                report,
            })
        }
        (FunctorName::F, [map, src, dst]) => {
            let (src, dst) = (load_institution(src)?, load_institution(dst)?);
            let mut f = load_inst_comorphism(map)?;
            f.phi.complete(&src.sig, &dst.sig);
            let ff = f_morphism(&f, &src, &dst)?;
            let report = check_pi_comorphism(&ff, &f_object(&src)?, &f_object(&dst)?, cap)?;
            Ok(Output::Document {
                json: to_json(&pi_comorphism_doc(&ff)),
                report,
            })
        }
        (FunctorName::G, [doc]) => {
            let j = load_pi(doc)?;
            let mut report = ValidationReport::new();
            for f in j.sig.morphisms.keys() {
                report.merge(check_preimage_closed(&j, f, cap)?);
            }
            if !report.is_clean() {
                return Err(Failure::Violations(report));
            }
            let g = g_object(&j, cap)?;
            report.merge(validate_institution(&g));
            Ok(Output::Document {
                json: to_json(&institution_doc(&g)),
                report,
            })
        }
        (FunctorName::G, [map, src, dst]) => {
            let (src, dst) = (load_pi(src)?, load_pi(dst)?);
            let mut h = load_pi_comorphism(map)?;
            h.phi.complete(&src.sig, &dst.sig);
            let gh = g_morphism(&h, &src, &dst, cap)?;
            let report = check_inst_comorphism(&gh, &g_object(&src, cap)?, &g_object(&dst, cap)?);
            Ok(Output::Document {
                json: to_json(&inst_comorphism_doc(&gh)),
                report,
            })
        }
        _ => Err(Failure::Usage(
            "apply takes one object document, or a map with its source and target".into(),
        )),
    }
}

fn adjunction(cli: &Cli, a: &Adjunction) -> Run<Output> {
    let cap = cli.cap;
    Ok(match a {
        Adjunction::Unit { pi } => Output::Report(check_unit(&load_pi(pi)?, cap)?),
        Adjunction::FgIdentity { pi } => Output::Report(check_fg_identity(&load_pi(pi)?, cap)?),
        Adjunction::Counit { inst } => Output::Report(check_counit(&load_institution(inst)?, cap)?),
        Adjunction::Transpose { h, j, i } => {
            let (j, i) = (load_pi(j)?, load_institution(i)?);
            let fi = f_object(&i)?;
            let mut h = load_pi_comorphism(h)?;
            h.phi.complete(&j.sig, &fi.sig);
            let t = transpose(&h, &j, &i, cap)?;
            let report = check_inst_comorphism(&t, &g_object(&j, cap)?, &i);
            Output::Document {
                json: to_json(&inst_comorphism_doc(&t)),
                report,
            }
        }
        Adjunction::Universal { h, j, i, bound } => {
            let (j, i) = (load_pi(j)?, load_institution(i)?);
            let mut h = load_pi_comorphism(h)?;
            h.phi.complete(&j.sig, &i.sig);
            let limits = SearchLimits {
                cap,
                search_bound: *bound,
            };
            Output::Report(check_universal_property(&h, &j, &i, &limits)?)
        }
    })
}

fn logic(cli: &Cli, l: &LogicCommand) -> Run<Output> {
    let cap = cli.cap;
    Ok(match l {
        LogicCommand::BuildInstitution { logic } => {
            let inst = build_matrix_institution(&load_logic(logic)?)?;
            let report = validate_institution(&inst);
            Output::Document {
                json: to_json(&institution_doc(&inst)),
                report,
            }
        }
        LogicCommand::BuildPi { fragment, sample } => {
            let fr = load_fragment(fragment)?;
            let j = build_logics_pi_institution(fr.morphism_kind, &fr.logics, &fr.arrows, cap)?;
            let s = sampler(*sample);
            let report = validate_pi_institution_with(&j, cap, s.as_ref().map(|s| s as &dyn SubsetSampler))?;
            Output::Document {
                json: to_json(&pi_doc(&j, cap)?),
                report,
            }
        }
        LogicCommand::CheckMorphism { translation, src, dst } => {
            let t = load_translation(translation)?;
            Output::Report(check_logic_morphism_with(
                &t,
                &load_logic(src)?,
                &load_logic(dst)?,
                cap,
            )?)
        }
        LogicCommand::Closure { logic, formulas } => {
            let l = load_logic(logic)?;
            let gamma = formulas.iter().map(|f| l.parse(f)).collect::<Result<Vec<_>, _>>()?;
            let mut out = Vec::new();
            for phi in l.universe()? {
                if matrix_consequence(&l, &gamma, &phi)? {
                    out.push(phi.to_string());
                }
            }
            Output::Value {
                text: render_key(out.iter().map(String::as_str)),
                json: json!(out),
            }
        }
        LogicCommand::Translate { translation, formulas } => {
            let t = load_translation(translation)?;
            let mut out = Vec::new();
            for f in formulas {
                out.push(translate_formula(&t, &parse_loose(f)?)?.to_string());
            }
            Output::Value {
                text: out.join("\n"),
                json: json!(out),
            }
        }
    })
}

fn generate_docs(cli: &Cli, g: &Generate) -> Run<Output> {
    let mut rng = generate::rng(cli.seed);
    let cfg = GenConfig::default();
    Ok(match g {
        Generate::Institution => {
            let inst = generate::random_institution(&mut rng, &cfg);
            Output::Document {
                report: validate_institution(&inst),
                json: to_json(&institution_doc(&inst)),
            }
        }
        Generate::Pi => {
            let j = generate::random_pi_institution(&mut rng, &cfg, cli.cap);
            Output::Document {
                report: validate_pi_institution(&j, cli.cap)?,
                json: to_json(&pi_doc(&j, cli.cap)?),
            }
        }
        Generate::Comorphism => {
            let (f, src, dst) = generate::random_comorphism(&mut rng, &cfg);
            Output::Files {
                report: check_inst_comorphism(&f, &src, &dst),
                files: vec![
                    ("map.json".into(), to_json(&inst_comorphism_doc(&f))),
                    ("src.json".into(), to_json(&institution_doc(&src))),
                    ("dst.json".into(), to_json(&institution_doc(&dst))),
                ],
            }
        }
    })
}

fn dispatch(cli: &Cli) -> Run<Output> {
    match &cli.command {
        Command::Check(c) => check(cli, c),
        Command::Apply { functor, docs } => apply(cli, *functor, docs),
        Command::Adjunction(a) => adjunction(cli, a),
        Command::Logic(l) => logic(cli, l),
        Command::Generate(g) => generate_docs(cli, g),
        Command::Closure {
            pi,
            signature,
            sentences,
        } => {
            let j = load_pi(pi)?;
            let c = closure_of(&j, signature, sentences)?;
            Ok(Output::Value {
                text: render_key(c.iter().map(String::as_str)),
                json: json!(c),
            })
        }
    }
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Renders a report; the json form parses back to an equal report.
pub fn write_report(r: &ValidationReport, format: Format) -> String {
    match format {
        Format::Text => format!("{r}\n"),
        Format::Json => to_json(r),
    }
}

fn report_code(r: &ValidationReport) -> i32 {
    if r.is_clean() {
        0
    } else {
        1
    }
}

/// Runs one command line (without the program name) and returns exit code
/// and output. Nothing is printed.
pub fn run_command<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("instkit")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let write = |path: &Path, contents: &str| {
        write_atomic(path, contents).map_err(|e| Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: cannot write {}: {e}\n", path.display()),
        })
    };
    let result = dispatch(&cli);
    let outcome = match result {
        Ok(Output::Report(r)) => {
            let text = write_report(&r, cli.format);
            if let Some(p) = &cli.output {
                if let Err(o) = write(p, &text) {
                    return o;
                }
            }
            Outcome {
                code: report_code(&r),
                stdout: text,
                stderr: String::new(),
            }
        }
        Ok(Output::Document { json, report }) => match &cli.output {
            Some(p) => {
                if let Err(o) = write(p, &json) {
                    return o;
                }
                Outcome {
                    code: report_code(&report),
                    stdout: write_report(&report, cli.format),
                    stderr: String::new(),
                }
            }
            None => Outcome {
                code: report_code(&report),
                stdout: json,
                stderr: if report.is_clean() {
                    String::new()
                } else {
                    write_report(&report, Format::Text)
                },
            },
        },
        Ok(Output::Files { files, report }) => {
            let Some(dir) = &cli.output else {
                return Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: "error: this command needs -o <directory>\n".into(),
                };
            };
            if let Err(e) = fs::create_dir_all(dir) {
                return Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: format!("error: cannot create {}: {e}\n", dir.display()),
                };
            }
            for (name, contents) in &files {
                if let Err(o) = write(&dir.join(name), contents) {
                    return o;
                }
            }
            Outcome {
                code: report_code(&report),
                stdout: write_report(&report, cli.format),
                stderr: String::new(),
            }
        }
        Ok(Output::Value { text, json }) => {
            let rendered = match cli.format {
                Format::Text => format!("{text}\n"),
                Format::Json => to_json(&json),
            };
            if let Some(p) = &cli.output {
                if let Err(o) = write(p, &rendered) {
                    return o;
                }
            }
            Outcome {
                code: 0,
                stdout: rendered,
                stderr: String::new(),
            }
        }
        Err(Failure::Violations(r)) => Outcome {
            code: 1,
            stdout: write_report(&r, cli.format),
            stderr: String::new(),
        },
        Err(Failure::Usage(m)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Bound(m)) => Outcome {
            code: 3,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
    };
    outcome
}

/// Command paths such as `check pi`, for coverage checks.
pub fn command_paths() -> Vec<String> {
    fn walk(prefix: &str, c: &clap::Command, out: &mut Vec<String>) {
        for sub in c.get_subcommands() {
            let path = if prefix.is_empty() {
                sub.get_name().to_owned()
            } else {
                format!("{prefix} {}", sub.get_name())
            };
            if sub.has_subcommands() {
                walk(&path, sub, out);
            } else {
                out.push(path);
            }
        }
    }
    let mut out = Vec::new();
    walk("", &Cli::command(), &mut out);
    out.retain(|p| p != "help" && !p.ends_with(" help"));
    out
}
