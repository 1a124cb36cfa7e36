//! The `rbmod` command line: argument parsing, reference resolution and
//! rendering. Exit codes: 0 verdict true, 1 verdict false, 2 usage, parse or
//! input errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::fixtures::Corpus;
use crate::format::{AlgebraFile, Document, ModuleFile, SCHEMA_VERSION};
use crate::freemod::free_rb_module;
use crate::linalg::{vector, Field};
use crate::opring::{check_local_confluence, OpRing, Strategy, Token};
use crate::rbmod::{hom_space, module_constants, RbModule, Side};
use crate::report::AxiomReport;
use crate::tensorflat::{
    baer_extension_test, flatness_evidence, op_ring_ideals, projective_summand_split,
    standard_catalog, tensor_product,
};
use crate::verify::{verify_paper, VerifyOptions, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(
    name = "rbmod",
    version,
    about = "Rota-Baxter algebras and their modules, computed exactly"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Only run verification entries whose id contains this substring.
    #[arg(long, global = true)]
    pub filter: Option<String>,
    /// Scalar field: `rational` or `fp:PRIME`.
    #[arg(long, global = true, default_value = "rational")]
    pub field: Field,
    #[command(subcommand)]
    pub command: Command,
}

/// Algebra and module arguments name a bundled fixture or a JSON file.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms declared by an algebra or module file.
    Check { path: PathBuf },
    /// Run the full verification suite over the bundled corpus.
    VerifyPaper,
    /// Reduce a word such as `["Q", [0, 1], "Q"]` to normal form.
    NormalForm {
        algebra: String,
        word: String,
        /// Rewrite the rightmost `QrQ` first instead of the leftmost.
        #[arg(long)]
        rightmost: bool,
    },
    /// Module constants of a left module.
    Mc { module: String },
    /// Basis of the space of module homomorphisms.
    Hom { source: String, target: String },
    /// Tensor product of a right and a left module.
    Tensor { right: String, left: String },
    /// Free module on the given generators.
    Free {
        algebra: String,
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Flatness evidence against the bundled monomorphism catalog.
    FlatEvidence { module: String },
    /// Lift the identity through the canonical epimorphism from a free module.
    ProjLift { module: String },
    /// Extend maps from left ideals of the operator ring into a left module.
    Baer { module: String },
    /// Compare leftmost and rightmost rewriting on overlap words.
    Confluence {
        algebra: String,
        #[arg(long, default_value_t = 4)]
        max_q: usize,
    },
}

/// What a command prints and the exit code it ends with.
#[derive(Debug)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn error(e: &Error) -> Output {
        Output {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

struct Rendered {
    verdict: bool,
    text: String,
    json: Value,
}

impl Rendered {
    fn ok(text: String, json: Value) -> Rendered {
        Rendered {
            verdict: true,
            text,
            json,
        }
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let json_mode = cli.json;
    match execute(&cli) {
        Ok(r) => {
            let stdout = if json_mode {
                let mut body = r.json;
                if let Value::Object(map) = &mut body {
                    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
                }
                serde_json::to_string_pretty(&body).expect("JSON values serialize") + "\n"
            } else {
                r.text
            };
            Output {
                code: if r.verdict { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Output::error(&e),
    }
}

struct Session {
    corpus: Corpus,
}

impl Session {
    fn algebra(&self, reference: &str) -> Result<Arc<AlgebraPresentation>> {
        if let Ok(a) = self.corpus.algebra(reference) {
            return Ok(a.clone());
        }
        if Path::new(reference).is_file() {
            return self.algebra_file(Path::new(reference));
        }
        Err(self.unknown(reference))
    }

    fn algebra_file(&self, path: &Path) -> Result<Arc<AlgebraPresentation>> {
        match Document::parse(&std::fs::read_to_string(path)?)? {
            Document::Algebra(file) => Ok(Arc::new(file.to_presentation(self.corpus.field())?)),
            Document::Module(_) => Err(Error::Mismatch(format!(
                "{} holds a module, not an algebra",
                path.display()
            ))),
        }
    }

    /// A module fixture or file, verified against its side's identity.
    fn module(&self, reference: &str) -> Result<RbModule> {
        if let Ok(m) = self.corpus.module(reference) {
            return Ok(m.clone());
        }
        let path = Path::new(reference);
        if path.is_file() {
            return match Document::parse(&std::fs::read_to_string(path)?)? {
                Document::Module(file) => self.module_file(&file, path)?.verify(),
                Document::Algebra(_) => Err(Error::Mismatch(format!(
                    "{reference} holds an algebra, not a module"
                ))),
            };
        }
        Err(self.unknown(reference))
    }

    fn module_file(&self, file: &ModuleFile, path: &Path) -> Result<RbModule> {
        let algebra = match self.corpus.algebra(&file.algebra_ref) {
            Ok(a) => a.clone(),
            Err(_) => {
                let relative = path
                    .parent()
                    .unwrap_or(Path::new("."))
                    .join(&file.algebra_ref);
                if !relative.is_file() {
                    return Err(self.unknown(&file.algebra_ref));
                }
                self.algebra_file(&relative)?
            }
        };
        file.to_module(algebra)
    }

    fn unknown(&self, reference: &str) -> Error {
        Error::UnknownFixture(format!(
            "{reference:?} is neither a file nor a bundled name; algebras: {}",
            self.corpus
                .algebras()
                .iter()
                .map(|a| a.name.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        ))
    }
}

fn execute(cli: &Cli) -> Result<Rendered> {
    let session = Session {
        corpus: Corpus::bundled(cli.field)?,
    };
    match &cli.command {
        Command::Check { path } => cmd_check(&session, path),
        Command::VerifyPaper => {
            let options = VerifyOptions {
                seed: cli.seed,
                filter: cli.filter.clone(),
                field: cli.field,
                ..Default::default()
            };
            let report = verify_paper(&options)?;
            Ok(Rendered {
                verdict: report.overall,
                text: report.render_text(),
                json: to_value(&report),
            })
        }
        Command::NormalForm {
            algebra,
            word,
            rightmost,
        } => cmd_normal_form(&session, algebra, word, *rightmost),
        Command::Mc { module } => {
            let m = session.module(module)?;
            let mc = module_constants(&m)?;
            let basis: Vec<String> = mc.basis().iter().map(|v| vector::render(v)).collect();
            Ok(Rendered::ok(
                format!(
                    "MC has dimension {} of {}\nbasis: {}\n",
                    mc.dim(),
                    m.dim(),
                    render_list(&basis)
                ),
                json!({ "module": module, "module_dim": m.dim(), "dim": mc.dim(), "basis": mc.basis() }),
            ))
        }
        Command::Hom { source, target } => {
            let (m, n) = (session.module(source)?, session.module(target)?);
            let h = hom_space(&m, &n)?;
            let basis = h.basis_matrices();
            let mut text = format!("Hom({source}, {target}) has dimension {}\n", h.dim());
            for (k, b) in basis.iter().enumerate() {
                text.push_str(&format!("f{k} = {b:?}\n"));
            }
            Ok(Rendered::ok(
                text,
                json!({ "source": source, "target": target, "dim": h.dim(), "basis": basis }),
            ))
        }
        Command::Tensor { right, left } => {
            let t = tensor_product(&session.module(right)?, &session.module(left)?)?;
            let labels = t.basis_labels();
            Ok(Rendered::ok(
                format!(
                    "{right} ⊗ {left} has dimension {}\nbasis: {}\n",
                    t.dim(),
                    render_list(&labels)
                ),
                json!({
                    "right": right, "left": left, "dim": t.dim(), "ambient": t.ambient(),
                    "basis": labels, "projection": t.projection(), "relations": t.relations().basis(),
                }),
            ))
        }
        Command::Free {
            algebra,
            generators,
        } => {
            let alg = session.algebra(algebra)?;
            let free = free_rb_module(&alg, generators.clone())?;
            let j: Vec<_> = (0..generators.len()).map(|x| free.j(x)).collect();
            let labels: Vec<String> = (0..free.module().dim())
                .map(|k| free.basis_label(k))
                .collect();
            Ok(Rendered::ok(
                format!(
                    "free module of dimension {}\nbasis: {}\n",
                    free.module().dim(),
                    render_list(&labels)
                ),
                json!({
                    "module": ModuleFile::from_module(free.module(), algebra.clone()),
                    "basis": labels,
                    "j": j,
                }),
            ))
        }
        Command::FlatEvidence { module } => {
            let m = session.module(module)?;
            let side = match m.side() {
                Side::Left => Side::Right,
                Side::Right => Side::Left,
            };
            let report = flatness_evidence(&m, &standard_catalog(m.algebra(), side)?)?;
            let mut text = String::new();
            for e in &report.entries {
                text.push_str(&format!(
                    "{} {}: {} → {} after tensoring, rank {}\n",
                    if e.injective { "ok  " } else { "FAIL" },
                    e.mono,
                    e.tensored_source_dim,
                    e.tensored_target_dim,
                    e.rank_after
                ));
            }
            text.push_str(&report.summary());
            text.push('\n');
            Ok(Rendered {
                verdict: report.verdict,
                text,
                json: to_value(&report),
            })
        }
        Command::ProjLift { module } => {
            let m = session.module(module)?;
            match projective_summand_split(&m)? {
                Some(split) => {
                    let s = split.summary();
                    Ok(Rendered {
                        verdict: s.verified,
                        text: format!(
                            "identity lifts through F → {module}: F = im β ⊕ ker f with dimensions {} = {} + {}\n{}\n",
                            s.free_dim,
                            s.image_dim,
                            s.kernel_dim,
                            split.report.render()
                        ),
                        json: json!({ "projective": true, "split": s, "section": split.section.matrix(), "report": split.report }),
                    })
                }
                None => Ok(Rendered {
                    verdict: false,
                    text: format!("the identity of {module} does not lift through the free module on its basis: not projective\n"),
                    json: json!({ "projective": false }),
                }),
            }
        }
        Command::Baer { module } => {
            let m = session.module(module)?;
            let ring = OpRing::new(m.algebra().clone());
            let report = baer_extension_test(&m, &ring, &op_ring_ideals(&ring)?)?;
            let mut text = String::new();
            for e in &report.entries {
                text.push_str(&format!(
                    "{}: {} of {} basis maps extend (ideal dimension {})\n",
                    e.ideal, e.extended, e.hom_dim, e.ideal_dim
                ));
            }
            text.push_str(&format!(
                "{}: {}\n",
                report.scope,
                if report.verdict {
                    "all extend"
                } else {
                    "some do not extend"
                }
            ));
            Ok(Rendered {
                verdict: report.verdict,
                text,
                json: to_value(&report),
            })
        }
        Command::Confluence { algebra, max_q } => {
            let ring = OpRing::new(session.algebra(algebra)?);
            let report = check_local_confluence(&ring, *max_q)?;
            let mut text = format!(
                "{} words checked, {} discrepancies\n",
                report.words_checked,
                report.discrepancies.len()
            );
            for d in report.discrepancies.iter().take(5) {
                text.push_str(&format!(
                    "  {}: {} vs {}\n",
                    d.word,
                    ring.render(&d.leftmost),
                    ring.render(&d.rightmost)
                ));
            }
            Ok(Rendered {
                verdict: report.verdict,
                text,
                json: to_value(&report),
            })
        }
    }
}

fn cmd_check(session: &Session, path: &Path) -> Result<Rendered> {
    let doc = Document::parse(&std::fs::read_to_string(path)?)?;
    let mut reports: Vec<AxiomReport> = Vec::new();
    let kind = match &doc {
        Document::Algebra(file) => {
            let alg = file.to_presentation(session.corpus.field())?;
            reports.push(alg.check_rota_baxter());
            "algebra"
        }
        Document::Module(file) => {
            match session.module_file(file, path) {
                Ok(m) => reports.push(m.check()),
                Err(Error::NotAModule(detail)) => {
                    let mut r = AxiomReport::new("module axioms");
                    r.fail(detail, Vec::new(), Vec::new());
                    reports.push(r);
                }
                Err(e) => return Err(e),
            }
            "module"
        }
    };
    let verdict = reports.iter().all(AxiomReport::passed);
    let text = reports.iter().map(|r| r.render() + "\n").collect();
    Ok(Rendered {
        verdict,
        text,
        json: json!({ "kind": kind, "verdict": verdict, "reports": reports }),
    })
}

fn cmd_normal_form(
    session: &Session,
    algebra: &str,
    word: &str,
    rightmost: bool,
) -> Result<Rendered> {
    let ring = OpRing::new(session.algebra(algebra)?);
    let tokens: Vec<Token> = serde_json::from_str(word)?;
    let w = ring.parse_word(&tokens)?;
    let strategy = if rightmost {
        Strategy::Rightmost
    } else {
        Strategy::Leftmost
    };
    let (nf, stats) = ring.reduce_with(&w, strategy)?;
    Ok(Rendered::ok(
        format!("{} = {}\n", ring.render_word(&w), ring.render(&nf)),
        json!({
            "algebra": algebra,
            "word": ring.render_word(&w),
            "normal_form": nf,
            "rendered": ring.render(&nf),
            "stats": stats,
        }),
    ))
}

fn render_list(items: &[String]) -> String {
    if items.is_empty() {
        "(empty)".into()
    } else {
        items.join(", ")
    }
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Writes an algebra fixture as a JSON document, for use with `check`.
pub fn algebra_document(corpus: &Corpus, name: &str) -> Result<String> {
    let file = AlgebraFile::from_presentation(corpus.algebra(name)?);
    Ok(serde_json::to_string_pretty(&Document::Algebra(file))?)
}
