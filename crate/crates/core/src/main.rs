use clap::{Args, Parser, Subcommand, ValueEnum};
use esli::congruence::{all_congruences, least_inverse_congruence, least_inverse_congruence_oracle, Congruence};
use esli::constructors::{rees_matrix, strong_semilattice};
use esli::embedding::{ArrowAlgebra, DerivationConfig, PrimeRule};
use esli::io::format::{parse_action, parse_congruence, parse_rees, parse_sslat, write_congruence};
use esli::io::{bundled_action, corpus, resolve_seed, write_corpus, CayleyFile, CorpusConfig, RunReport};
use esli::lsdp::{lambda_sdp, verify_lsdtul};
use esli::rewriting::{
    derivation_search, parse_term, parse_tilde_word, reduce, replay, theta_cs_equal, Alphabet, SearchBounds,
};
use esli::semigroupoid::{DaggerPolicy, ExtensionContext};
use esli::{Error, FiniteSemigroup};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "esli", version, about = "Finite E-solid locally inverse semigroups and their embedding invariant")]
struct Cli {
    /// Write the JSON run report to this path (`-` for stdout instead of the text summary).
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Worker threads for parallel checks.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structural flags of a semigroup given as a Cayley file.
    Classify { file: PathBuf },
    /// Green's R, L, H and D classes.
    Green { file: PathBuf },
    /// Every congruence of a semigroup.
    Congruences {
        file: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        bound: usize,
    },
    /// The least inverse congruence.
    LeastInv {
        file: PathBuf,
        /// Compare against the exhaustive search over all congruences.
        #[arg(long)]
        check: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build a Rees matrix semigroup from a `rees-matrix` file.
    Rees {
        spec: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build a strong semilattice from a `strong-semilattice` file.
    Sslat {
        spec: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build a λ-semidirect product from an `action` file.
    LsdpBuild {
        action: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also write the second-projection congruence.
        #[arg(long)]
        theta: Option<PathBuf>,
    },
    /// Check the structure theorem for a λ-semidirect product.
    LsdpVerify { action: PathBuf },
    /// Reduce a term to its normal form.
    TermReduce { term: String },
    /// Decide whether two terms are equal in the free object.
    TermEqual { u: String, v: String },
    /// Search for a derivation between two words over the ∧-alphabet.
    DeriveSearch {
        u: String,
        v: String,
        #[arg(long, default_value_t = 12)]
        max_steps: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 2_000_000)]
        budget: usize,
    },
    /// Build the derived semigroupoid of an extension.
    DerivedBuild {
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// Check the structural facts about stable arrows and the hat map.
    HatCheck {
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// Lift random derivations into bracketed words and check the invariant.
    EmbedVerify {
        #[command(flatten)]
        ctx: CtxArgs,
        /// Use the λ-semidirect product of this action with its second-projection congruence.
        #[arg(long, conflicts_with = "file")]
        action: Option<PathBuf>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 25)]
        max_steps: usize,
        #[arg(long, default_value_t = 7)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = PrimeArg::HatOfDagger)]
        prime_rule: PrimeArg,
        /// Include every transcript in the report.
        #[arg(long)]
        transcripts: bool,
    },
    /// Generate the corpus and write it as Cayley files.
    CorpusGen {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CtxArgs {
    /// Cayley file of the semigroup (the bundled λ-semidirect product if omitted).
    file: Option<PathBuf>,
    /// The congruence to use; defaults to the least inverse congruence, or the
    /// second-projection congruence for the bundled instance.
    #[arg(long, value_enum)]
    rho: Option<RhoArg>,
    /// Read the congruence from a `congruence` file instead.
    #[arg(long)]
    congruence: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = DaggerArg::Lowest)]
    dagger: DaggerArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum RhoArg {
    LeastInv,
    Identity,
    H,
}

#[derive(Clone, Copy, ValueEnum)]
enum DaggerArg {
    Lowest,
    Highest,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrimeArg {
    HatOfDagger,
    DaggerOfHat,
}

/// A failure that is the user's fault: bad input files, malformed terms, failed preconditions.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

type Run = Result<(), Usage>;

struct Ctx {
    report: RunReport,
    text: String,
}

impl Ctx {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn verdict(&mut self, check: &str, pass: bool, detail: Value) {
        let _ = writeln!(self.text, "{} {check}", if pass { "PASS" } else { "FAIL" });
        self.report.verdict(check, pass, detail);
    }
}

fn read(path: &Path) -> Result<String, Usage> {
    std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Run {
    std::fs::write(path, text).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<FiniteSemigroup, Usage> {
    Ok(CayleyFile::parse(&read(path)?)?.semigroup)
}

fn save(out: Option<&Path>, kind: &str, s: &FiniteSemigroup, cx: &mut Ctx) -> Run {
    let text = CayleyFile { kind: kind.into(), semigroup: s.clone() }.write();
    match out {
        Some(p) => write(p, &text),
        None => {
            cx.text.push_str(&text);
            Ok(())
        }
    }
}

fn classes(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut m = std::collections::BTreeMap::<usize, Vec<usize>>::new();
    for (a, &l) in labels.iter().enumerate() {
        m.entry(l).or_default().push(a);
    }
    let mut v: Vec<_> = m.into_values().collect();
    v.sort();
    v
}

fn fmt_classes(s: &FiniteSemigroup, cs: &[Vec<usize>]) -> String {
    cs.iter()
        .map(|c| format!("{{{}}}", c.iter().map(|&a| s.name(a)).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn build_context(a: &CtxArgs) -> Result<(String, ExtensionContext), Usage> {
    let policy = match a.dagger {
        DaggerArg::Lowest => DaggerPolicy::Lowest,
        DaggerArg::Highest => DaggerPolicy::Highest,
    };
    let (name, s, default_rho) = match &a.file {
        Some(p) => (p.display().to_string(), load(p)?, None),
        None => {
            let p = lambda_sdp(&bundled_action()?)?;
            ("bundled λ-semidirect product".to_string(), p.semigroup.clone(), Some(p.theta2()))
        }
    };
    let rho = if let Some(p) = &a.congruence {
        parse_congruence(&read(p)?, &s)?
    } else {
        match (a.rho, default_rho) {
            (Some(r), _) => named_rho(&s, r)?,
            (None, Some(t)) => t,
            (None, None) => named_rho(&s, RhoArg::LeastInv)?,
        }
    };
    Ok((name, ExtensionContext::build(s, rho, policy)?))
}

fn named_rho(s: &FiniteSemigroup, r: RhoArg) -> Result<Congruence, Usage> {
    Ok(match r {
        RhoArg::LeastInv => least_inverse_congruence(s)?,
        RhoArg::Identity => Congruence::identity(s.order()),
        RhoArg::H => Congruence::from_labels(s, &s.green().h_classes)?,
    })
}

fn run(cmd: Cmd, cx: &mut Ctx) -> Run {
    match cmd {
        Cmd::Classify { file } => {
            let s = load(&file)?;
            let flags = [
                ("regular", s.is_regular()),
                ("inverse", s.is_inverse()),
                ("orthodox", s.is_orthodox()),
                ("e-solid", s.is_e_solid()),
                ("locally-inverse", s.is_locally_inverse()),
                ("completely-regular", s.is_completely_regular()),
                ("completely-simple", s.is_completely_simple()),
                ("group", s.is_group()),
                ("band", s.is_band()),
                ("semilattice", s.is_semilattice()),
                ("commutative", s.is_commutative()),
            ];
            cx.line(format!("order {}", s.order()));
            cx.line(format!("idempotents {}", s.idempotents().len()));
            for (k, v) in flags {
                cx.line(format!("{k} {v}"));
            }
            let mut o: serde_json::Map<String, Value> = flags.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            o.insert("order".into(), json!(s.order()));
            o.insert("idempotents".into(), json!(s.idempotents().iter().collect::<Vec<_>>()));
            cx.report.output = Value::Object(o);
        }
        Cmd::Green { file } => {
            let s = load(&file)?;
            let g = s.green();
            let mut o = serde_json::Map::new();
            for (k, labels) in [("R", &g.r_classes), ("L", &g.l_classes), ("H", &g.h_classes), ("D", &g.d_classes)] {
                let cs = classes(labels);
                cx.line(format!("{k}: {}", fmt_classes(&s, &cs)));
                o.insert(k.into(), json!(cs));
            }
            cx.report.output = Value::Object(o);
        }
        Cmd::Congruences { file, bound } => {
            let s = load(&file)?;
            let all = all_congruences(&s, bound)?;
            cx.line(format!("{} congruences", all.len()));
            for c in &all {
                cx.line(fmt_classes(&s, &c.classes()));
            }
            cx.report.output = json!(all.iter().map(|c| c.labels()).collect::<Vec<_>>());
        }
        Cmd::LeastInv { file, check, out } => {
            let s = load(&file)?;
            let r = least_inverse_congruence(&s)?;
            cx.line(fmt_classes(&s, &r.classes()));
            cx.report.output = json!({ "labels": r.labels(), "classes": r.class_count() });
            if let Some(p) = out {
                write(&p, &write_congruence(&r))?;
            }
            if check {
                let o = least_inverse_congruence_oracle(&s, 1_000_000)?;
                let pass = o == r;
                cx.verdict("matches-exhaustive-search", pass, json!({ "oracle": o.labels() }));
            }
        }
        Cmd::Rees { spec, out } => {
            let s = rees_matrix(&parse_rees(&read(&spec)?)?)?;
            save(out.as_deref(), "rees", &s, cx)?;
        }
        Cmd::Sslat { spec, out } => {
            let s = strong_semilattice(&parse_sslat(&read(&spec)?)?)?;
            save(out.as_deref(), "sslat", &s, cx)?;
        }
        Cmd::LsdpBuild { action, out, theta } => {
            let p = lambda_sdp(&parse_action(&read(&action)?)?)?;
            save(out.as_deref(), "lsdp", &p.semigroup, cx)?;
            if let Some(t) = theta {
                write(&t, &write_congruence(&p.theta2()))?;
            }
            cx.report.output = json!({ "order": p.semigroup.order(), "carrier": p.carrier });
        }
        Cmd::LsdpVerify { action } => {
            let p = lambda_sdp(&parse_action(&read(&action)?)?)?;
            let r = verify_lsdtul(&p)?;
            let fail = json!(r.failures);
            cx.verdict("e-solid-locally-inverse", r.e_solid_locally_inverse, fail.clone());
            cx.verdict("idempotent-formula", r.idempotent_formula, fail.clone());
            cx.verdict("inverse-formula", r.inverse_formula, fail.clone());
            cx.verdict("projection-over-cs", r.projection_over_cs, fail.clone());
            cx.verdict("kernel-strong-semilattice", r.kernel_strong_semilattice, fail);
            cx.report.output = json!({ "order": p.semigroup.order() });
        }
        Cmd::TermReduce { term } => {
            let a = Alphabet::infer(&term);
            let t = parse_term(&term, &a)?;
            let r = reduce(&t).display(&a).to_string();
            cx.line(&r);
            cx.report.output = json!({ "input": term, "normal_form": r });
        }
        Cmd::TermEqual { u, v } => {
            let a = Alphabet::infer(&format!("{u} {v}"));
            let (tu, tv) = (parse_term(&u, &a)?, parse_term(&v, &a)?);
            let (ru, rv) = (reduce(&tu).display(&a).to_string(), reduce(&tv).display(&a).to_string());
            cx.line(format!("{ru}\n{rv}"));
            cx.verdict("equal", theta_cs_equal(&tu, &tv), json!({ "u": ru, "v": rv }));
        }
        Cmd::DeriveSearch { u, v, max_steps, max_len, budget } => {
            let a = Alphabet::infer(&format!("{u} {v}"));
            let (wu, wv) = (parse_tilde_word(&u, &a)?, parse_tilde_word(&v, &a)?);
            let bounds = SearchBounds { max_steps, max_len, budget };
            match derivation_search(&wu, &wv, &a.letters(), &bounds) {
                Ok(Some(steps)) => {
                    let mut w = wu.clone();
                    cx.line(w.display(&a));
                    for s in &steps {
                        w = esli::rewriting::apply_upsilon_step(&w, s)?;
                        cx.line(format!("  {:?} {:?} @{}  {}", s.rule, s.direction, s.position, w.display(&a)));
                    }
                    let ok = replay(&wu, &steps)? == wv;
                    cx.verdict("found", ok, json!({ "steps": steps }));
                }
                Ok(None) => cx.verdict("found", false, json!("no derivation within the bounds")),
                Err(Error::SearchBudgetExceeded) => cx.verdict("found", false, json!("search budget exceeded")),
                Err(e) => return Err(e.into()),
            }
        }
        Cmd::DerivedBuild { ctx } => {
            let (name, c) = build_context(&ctx)?;
            let stable = c.stable_arrows()?;
            cx.line(format!(
                "{name}: order {}, objects {}, arrows {}, stable {}",
                c.s.order(),
                c.objects().len(),
                c.arrows().len(),
                stable.len()
            ));
            cx.report.output = json!({
                "order": c.s.order(),
                "objects": c.objects().len(),
                "rho": c.rho.labels(),
                "dagger": c.dagger,
                "arrows": c.arrows(),
                "stable": stable,
            });
        }
        Cmd::HatCheck { ctx } => {
            let (name, c) = build_context(&ctx)?;
            cx.line(name);
            for l in c.check_lemmas() {
                cx.verdict(l.name, l.failures.is_empty(), json!({ "cases": l.cases, "failures": l.failures }));
            }
        }
        Cmd::EmbedVerify { ctx, action, seed, trials, max_steps, max_len, prime_rule, transcripts } => {
            let (name, c) = match action {
                Some(p) => {
                    let lp = lambda_sdp(&parse_action(&read(&p)?)?)?;
                    let theta = lp.theta2();
                    let policy = match ctx.dagger {
                        DaggerArg::Lowest => DaggerPolicy::Lowest,
                        DaggerArg::Highest => DaggerPolicy::Highest,
                    };
                    (p.display().to_string(), ExtensionContext::build(lp.semigroup, theta, policy)?)
                }
                None => build_context(&ctx)?,
            };
            let rule = match prime_rule {
                PrimeArg::HatOfDagger => PrimeRule::HatOfDagger,
                PrimeArg::DaggerOfHat => PrimeRule::DaggerOfHat,
            };
            let seed = resolve_seed(seed);
            cx.report.seed = Some(seed);
            let alg = ArrowAlgebra::new(&c, rule)?;
            let cfg = DerivationConfig { trials, steps_per_trial: max_steps, max_len };
            let mut rep = alg.verify_embedding(&cfg, seed)?;
            cx.line(format!("{name}: order {}, {} steps lifted", c.s.order(), rep.steps_lifted));
            for (k, n) in &rep.kind_counts {
                cx.line(format!("  {k} {n}"));
            }
            let failed: Vec<_> = rep.transcripts.iter().filter(|t| t.failure.is_some()).cloned().collect();
            cx.verdict("lifts-preserve-invariant", rep.lift_failures.is_empty(), json!(failed));
            cx.verdict(
                "separates-related-elements",
                rep.separation_failures.is_empty(),
                json!(rep.separation_failures),
            );
            cx.verdict("respects-products", rep.product_failures.is_empty(), json!(rep.product_failures));
            cx.verdict("stable-letters-fixed", alg.stable_letters_are_fixed(), Value::Null);
            if !transcripts {
                rep.transcripts.clear();
            }
            cx.report.output = serde_json::to_value(&rep).expect("reports serialize");
        }
        Cmd::CorpusGen { out } => {
            let entries = corpus(&CorpusConfig::default())?;
            let files = write_corpus(&entries, &out)?;
            cx.line(format!("{} files written to {}", files.len(), out.display()));
            let results: Vec<(String, bool)> = entries
                .par_iter()
                .zip(files.par_iter())
                .map(|(e, f)| {
                    let ok = std::fs::read_to_string(out.join(f))
                        .ok()
                        .and_then(|t| CayleyFile::parse(&t).ok())
                        .is_some_and(|c| c.semigroup == e.semigroup);
                    (e.name.clone(), ok)
                })
                .collect();
            for (name, ok) in results {
                cx.report.verdict(format!("round-trip {name}"), ok, Value::Null);
            }
            cx.report.sort_verdicts();
            let bad: Vec<_> = cx.report.verdicts.iter().filter(|v| !v.pass).map(|v| v.check.clone()).collect();
            cx.verdict("corpus-round-trip", bad.is_empty(), json!(bad));
            cx.report.output = json!(files);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let mut cx = Ctx { report: RunReport::new(std::env::args().collect(), None), text: String::new() };
    if let Err(Usage(msg)) = run(cli.cmd, &mut cx) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    cx.report.elapsed_ms = start.elapsed().as_millis();
    match cli.report.as_deref() {
        Some(p) if p == Path::new("-") => println!("{}", cx.report.to_json()),
        Some(p) => {
            print!("{}", cx.text);
            if let Err(Usage(msg)) = write(p, &cx.report.to_json()) {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
        }
        None => print!("{}", cx.text),
    }
    if cx.report.all_pass() {
        ExitCode::SUCCESS
    } else {
        for v in cx.report.verdicts.iter().filter(|v| !v.pass) {
            eprintln!("FAIL {}: {}", v.check, v.detail);
        }
        ExitCode::from(1)
    }
}
