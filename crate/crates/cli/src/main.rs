//! Command-line front end: parse, compose and render diagrams, evaluate
//! words, run the functors, and execute the verification suites. Output is
//! JSON throughout (`--pretty` for a human layout).
//!
//! Exit codes: 0 on success, 1 on verification failure, 2 on usage error.

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::process::ExitCode;

use brauer_core::checks;
use brauer_core::diagram::BrauerDiagram;
use brauer_core::enhanced;
use brauer_core::error::Error;
use brauer_core::functor::{self, functor_sum};
use brauer_core::invariants;
use brauer_core::oriented::{OrientedDiagram, SignedSequence};
use brauer_core::poly::{parse_rat, rat_string, Rat};
use brauer_core::render::render;
use brauer_core::space::Group;
use brauer_core::sum::DiagramSum;
use brauer_core::word::{self, Word};

#[derive(Parser)]
#[command(name = "brauer-kit", version, about = "Exact diagram-category toolkit")]
struct Cli {
    /// Pretty-print JSON output
    #[arg(long, global = true)]
    pretty: bool,

    /// Worker threads for matrix builds (results are thread-count
    /// independent)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Cap on matrix entries per operator (BRAUER_KIT_BUDGET overrides the
    /// default of 20000)
    #[arg(long, global = true)]
    max_entries: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compose two diagrams (first after second)
    Compose {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Juxtapose two diagrams
    Tensor {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Reflect a diagram in a horizontal line
    Star {
        #[arg(long = "in")]
        input: String,
    },
    /// Reflect a diagram in a vertical line
    Sharp {
        #[arg(long = "in")]
        input: String,
    },
    /// List all (k, l) diagrams
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Evaluate a slice word to a scaled diagram
    EvalWord {
        #[arg(long = "in")]
        input: String,
    },
    /// Decompose a diagram into a slice word
    FromDiagram {
        #[arg(long = "in")]
        input: String,
    },
    /// Decide whether two words denote the same scaled diagram
    Equiv {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Produce a step-by-step trace joining two equivalent words
    Trace {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Compose two oriented diagrams
    OrientedCompose {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Juxtapose two oriented diagrams
    OrientedTensor {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// List oriented diagrams with the given boundary strings
    OrientedEnumerate {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        count_only: bool,
    },
    /// Apply the tensor functor to a formal sum of diagrams
    Functor {
        #[arg(long)]
        group: String,
        #[arg(long = "in")]
        input: String,
    },
    /// The form-adjoint of a functor image
    Adjoint {
        #[arg(long)]
        group: String,
        #[arg(long = "in")]
        input: String,
    },
    /// Supertrace of a functor image of an endomorphism sum
    Supertrace {
        #[arg(long)]
        group: String,
        #[arg(long = "in")]
        input: String,
    },
    /// Run the enhanced-category checks for one dimension
    Enhanced {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "all")]
        check: String,
    },
    /// First-fundamental-theorem instance report
    Fft {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Second-fundamental-theorem instance report
    Sft {
        #[arg(long)]
        group: String,
        #[arg(long)]
        r: usize,
    },
    /// The symplectic kernel element in degree n+1
    Phi {
        #[arg(long)]
        n: usize,
    },
    /// The orthogonal kernel element E_p in degree m+1 (both routes)
    Ep {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
    },
    /// The rectangle quasi-idempotent e(m, l) with its constant
    Young {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: usize,
    },
    /// Two-sided ideal span of a generator inside a diagram algebra
    Ideal {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        generator: String,
        /// Target valency "K,L" for the windowed tensor-ideal closure
        #[arg(long)]
        tensor_target: Option<String>,
        #[arg(long, default_value_t = 8)]
        window: usize,
    },
    /// Render a diagram as ASCII art
    Render {
        #[arg(long = "in")]
        input: String,
    },
    /// Run a named verification suite (or `all`)
    Suite {
        #[arg(long)]
        name: String,
    },
}

fn read_arg(arg: &str) -> Result<String, Error> {
    if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_diagram(arg: &str) -> Result<BrauerDiagram, Error> {
    let text = read_arg(arg)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad diagram JSON: {e}")))
}

fn parse_sum(arg: &str) -> Result<DiagramSum, Error> {
    let text = read_arg(arg)?;
    if let Ok(sum) = serde_json::from_str::<DiagramSum>(&text) {
        return Ok(sum);
    }
    let diagram: BrauerDiagram = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("bad diagram or sum JSON: {e}")))?;
    Ok(DiagramSum::from_diagram(diagram))
}

fn parse_oriented(arg: &str) -> Result<OrientedDiagram, Error> {
    let text = read_arg(arg)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad oriented JSON: {e}")))
}

fn parse_word(arg: &str) -> Result<Word, Error> {
    let text = read_arg(arg)?;
    Word::parse(&text.replace(';', "\n"))
}

fn budget(cli_value: Option<usize>) -> usize {
    cli_value
        .or_else(|| std::env::var("BRAUER_KIT_BUDGET").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(20_000)
}

fn emit(pretty: bool, value: &Value) {
    if pretty {
        println!("{}", serde_json::to_string_pretty(value).unwrap());
    } else {
        println!("{value}");
    }
}

fn check_budget(entries: usize, cap: usize) -> Result<(), Error> {
    if entries > cap {
        Err(Error::Budget(format!("operator needs {entries} entries, cap is {cap}")))
    } else {
        Ok(())
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn run(command: Command, cap: usize, pretty: bool) -> Result<bool, Error> {
    match command {
        Command::Compose { a, b } => {
            let out = parse_diagram(&a)?.compose(&parse_diagram(&b)?)?;
            emit(pretty, &json!({"diagram": to_value(&out.diagram), "loops": out.loops}));
        }
        Command::Tensor { a, b } => {
            let out = parse_diagram(&a)?.tensor(&parse_diagram(&b)?);
            emit(pretty, &to_value(&out));
        }
        Command::Star { input } => {
            emit(pretty, &to_value(&parse_diagram(&input)?.star()));
        }
        Command::Sharp { input } => {
            emit(pretty, &to_value(&parse_diagram(&input)?.sharp()));
        }
        Command::Enumerate { k, l, count_only } => {
            let all = BrauerDiagram::enumerate(k, l);
            if count_only {
                emit(pretty, &json!({"count": all.len()}));
            } else {
                emit(pretty, &json!({"count": all.len(), "diagrams": to_value(&all)}));
            }
        }
        Command::EvalWord { input } => {
            let w = parse_word(&input)?;
            let v = w.evaluate();
            emit(pretty, &json!({"diagram": to_value(&v.diagram), "loops": v.loops}));
        }
        Command::FromDiagram { input } => {
            let d = parse_diagram(&input)?;
            let w = word::from_diagram(&d);
            emit(pretty, &json!({"word": w.display_text()}));
        }
        Command::Equiv { a, b } => {
            let wa = parse_word(&a)?;
            let wb = parse_word(&b)?;
            let eq = word::equivalent(&wa, &wb)?;
            emit(pretty, &json!({"equivalent": eq}));
            return Ok(eq);
        }
        Command::Trace { a, b } => {
            let wa = parse_word(&a)?;
            let wb = parse_word(&b)?;
            let steps = word::rewrite_trace(&wa, &wb)?;
            let end = word::replay(&wa, &steps)?;
            let ok = end.word.slices() == wb.slices();
            emit(
                pretty,
                &json!({
                    "steps": to_value(&steps),
                    "length": steps.len(),
                    "validated": ok,
                }),
            );
            return Ok(ok);
        }
        Command::OrientedCompose { a, b } => {
            let (out, loops) = parse_oriented(&a)?.compose(&parse_oriented(&b)?)?;
            emit(pretty, &json!({"diagram": to_value(&out), "loops": loops}));
        }
        Command::OrientedTensor { a, b } => {
            let out = parse_oriented(&a)?.tensor(&parse_oriented(&b)?);
            emit(pretty, &to_value(&out));
        }
        Command::OrientedEnumerate { source, target, count_only } => {
            let s = SignedSequence::parse(&source)?;
            let t = SignedSequence::parse(&target)?;
            let all = OrientedDiagram::enumerate(&s, &t);
            if count_only {
                emit(pretty, &json!({"count": all.len()}));
            } else {
                emit(pretty, &json!({"count": all.len(), "diagrams": to_value(&all)}));
            }
        }
        Command::Functor { group, input } => {
            let group = Group::parse(&group)?;
            let sum = parse_sum(&input)?;
            let v = sum.valency();
            let d = group.space().dim();
            check_budget(d.pow(v.k as u32) * d.pow(v.ell as u32), cap)?;
            let op = functor_sum(group.space(), &sum);
            emit(pretty, &json!({"group": group.name(), "matrix": to_value(&op.matrix)}));
        }
        Command::Adjoint { group, input } => {
            let group = Group::parse(&group)?;
            let sum = parse_sum(&input)?;
            let v = sum.valency();
            let d = group.space().dim();
            check_budget(d.pow(v.k as u32) * d.pow(v.ell as u32), cap)?;
            let op = functor::adjoint(&functor_sum(group.space(), &sum))?;
            emit(pretty, &json!({"group": group.name(), "matrix": to_value(&op.matrix)}));
        }
        Command::Supertrace { group, input } => {
            let group = Group::parse(&group)?;
            let sum = parse_sum(&input)?;
            let v = sum.valency();
            let d = group.space().dim();
            check_budget(d.pow(v.k as u32) * d.pow(v.ell as u32), cap)?;
            let op = functor_sum(group.space(), &sum);
            emit(pretty, &json!({"supertrace": rat_string(&op.supertrace()?)}));
        }
        Command::Enhanced { m, check } => {
            let mut results = Vec::new();
            if check == "all" || check == "relations" {
                for r in enhanced::check_relations(m)? {
                    results.push(json!({"name": r.name, "pass": r.pass}));
                }
            }
            if check == "all" || check == "parameters" {
                let (roots1, roots2, common) = enhanced::forced_parameters(m);
                let fmt = |v: &Vec<Rat>| v.iter().map(rat_string).collect::<Vec<_>>();
                results.push(json!({
                    "name": "forced parameter",
                    "pass": common == vec![Rat::from_integer((m as i64).into())],
                    "product_roots": fmt(&roots1),
                    "f_roots": fmt(&roots2),
                    "common": fmt(&common),
                }));
            }
            if (check == "all" || check == "vanishing") && m <= 3 {
                results.push(json!({
                    "name": "next antisymmetrizer vanishes",
                    "pass": enhanced::sigma_vanishing(m),
                }));
            }
            if check == "all" || check == "fullness" {
                for s in 0..=2usize {
                    for t in 0..=2usize {
                        let report = enhanced::fullness_check(m, s, t, cap)?;
                        results.push(json!({
                            "name": format!("fullness ({s}, {t})"),
                            "pass": report.pass,
                            "plain": report.plain_rank,
                            "one_generator": report.delta_rank,
                            "oracle": report.oracle_dim,
                        }));
                    }
                }
            }
            let all_pass = results.iter().all(|r| r["pass"].as_bool() == Some(true));
            emit(pretty, &json!({"m": m, "pass": all_pass, "checks": results}));
            return Ok(all_pass);
        }
        Command::Fft { group, k, l } => {
            let group = Group::parse(&group)?;
            let report = invariants::verify_fft(&group, k, l, cap)?;
            emit(
                pretty,
                &json!({
                    "claim": format!("functor rank equals the invariant dimension at ({k}, {l})"),
                    "lhs": report.functor_rank,
                    "rhs": report.oracle_dim,
                    "pass": report.pass,
                }),
            );
            return Ok(report.pass);
        }
        Command::Sft { group, r } => {
            let group = Group::parse(&group)?;
            let report = invariants::verify_sft(&group, r, cap)?;
            emit(
                pretty,
                &json!({
                    "claim": format!("functor kernel equals the generator ideal in degree {r}"),
                    "lhs": report.kernel_dim,
                    "rhs": report.ideal_dim,
                    "ideal_inside_kernel": report.ideal_inside_kernel,
                    "pass": report.pass,
                }),
            );
            return Ok(report.pass);
        }
        Command::Phi { n } => {
            let phi = invariants::phi_element(n)?;
            emit(pretty, &json!({"terms": phi.len(), "element": to_value(&phi)}));
        }
        Command::Ep { m, p } => {
            let diagrammatic = invariants::e_element_diagrammatic(m, p)?;
            let formula = invariants::e_element_formula(m, p)?;
            let agree = diagrammatic == formula;
            emit(
                pretty,
                &json!({
                    "routes_agree": agree,
                    "element": to_value(&diagrammatic),
                }),
            );
            return Ok(agree);
        }
        Command::Young { m, l } => {
            let y = invariants::young_idempotent(m, l)?;
            emit(
                pretty,
                &json!({
                    "terms": y.element.len(),
                    "kappa": rat_string(&y.kappa),
                    "element": to_value(&y.element),
                }),
            );
        }
        Command::Ideal { r, delta, generator, tensor_target, window } => {
            let at = parse_rat(&delta)?;
            let generator = parse_sum(&generator)?;
            match tensor_target {
                None => {
                    let (dim, _) = invariants::algebra_ideal_span(&[generator], r, &at)?;
                    emit(pretty, &json!({"dimension": dim}));
                }
                Some(t) => {
                    let parts: Vec<usize> = t
                        .split(',')
                        .map(|x| x.trim().parse::<usize>())
                        .collect::<Result<_, _>>()
                        .map_err(|e| Error::Parse(format!("bad target valency: {e}")))?;
                    if parts.len() != 2 {
                        return Err(Error::Parse("target valency is K,L".into()));
                    }
                    let (dim, _) = invariants::tensor_ideal_span(
                        &generator,
                        brauer_core::diagram::Valency::new(parts[0], parts[1]),
                        &at,
                        window,
                    )?;
                    emit(pretty, &json!({"dimension": dim}));
                }
            }
        }
        Command::Render { input } => {
            let d = parse_diagram(&input)?;
            println!("{}", render(&d));
        }
        Command::Suite { name } => {
            let names: Vec<String> = if name == "all" {
                checks::suite_names().iter().map(|s| s.to_string()).collect()
            } else {
                vec![name]
            };
            let mut all_ok = true;
            let mut suites = Vec::new();
            for suite in names {
                let results = checks::run_suite(&suite)?;
                let ok = checks::all_pass(&results);
                all_ok &= ok;
                suites.push(json!({
                    "suite": suite,
                    "pass": ok,
                    "total": results.len(),
                    "failures": results
                        .iter()
                        .filter(|c| !c.pass)
                        .map(|c| json!({"name": c.name, "detail": c.detail}))
                        .collect::<Vec<_>>(),
                }));
            }
            emit(pretty, &json!({"pass": all_ok, "suites": suites}));
            return Ok(all_ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialised");
        }
    }
    let cap = budget(cli.max_entries);
    match run(cli.command, cap, cli.pretty) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
