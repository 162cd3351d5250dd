//! Command-line front end. Every command prints one JSON [`CommandReport`] on
//! stdout; diagnostics go to stderr. Exit codes: 0 pass or value, 1 failed
//! verification, 2 usage or input error.

use std::collections::BTreeMap;
use std::io::Read;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::eisenstein::{self, EisSymbol};
use crate::error::{Error, Result};
use crate::levelstruct;
use crate::modgroup::{self, ResMat, UniMat};
use crate::qexpansion::QExpansion;
use crate::shimura::{self, corpus, FormExpr};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the size of the worker pool.
pub const THREADS_VAR: &str = "SHIMURA_KIT_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub status: Status,
    pub payload: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_range: Option<[i64; 2]>,
}

impl CommandReport {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Fail => EXIT_FAIL,
            _ => EXIT_PASS,
        }
    }
}

/// What a single invocation produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<CommandReport>,
}

#[derive(Parser, Debug)]
#[command(name = "shimura-kit", version, about = "Exact q-expansions and the slash/Galois actions on level-N modular forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct SymbolArgs {
    #[arg(long = "N")]
    level: u64,
    #[arg(long)]
    k: u32,
    #[arg(long, allow_negative_numbers = true)]
    c1: i64,
    #[arg(long, allow_negative_numbers = true)]
    c2: i64,
}

#[derive(Args, Debug, Clone)]
struct OptSymbolArgs {
    #[arg(long = "N")]
    level: Option<u64>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    c1: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    c2: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// q-expansion of one normalized Eisenstein series.
    Eisenstein {
        #[command(flatten)]
        sym: SymbolArgs,
        #[arg(long, default_value_t = shimura::DEFAULT_PREC)]
        prec: usize,
    },
    /// q-expansion of an Eisenstein series slashed by g.
    Slash {
        #[command(flatten)]
        sym: SymbolArgs,
        /// Integer matrix a,b,c,d of determinant 1.
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value_t = shimura::DEFAULT_PREC)]
        prec: usize,
    },
    /// Apply σ_λ to a series given as JSON (file or "-" for stdin) or to an Eisenstein series.
    Galois {
        #[arg(long, allow_negative_numbers = true)]
        lambda: i64,
        #[arg(long)]
        input: Option<String>,
        #[command(flatten)]
        sym: OptSymbolArgs,
        #[arg(long, default_value_t = shimura::DEFAULT_PREC)]
        prec: usize,
    },
    /// Lift a matrix mod N to SL₂(Z); with --lambda, lift (a, λb; λ⁻¹c, d) instead.
    Lift {
        #[arg(long = "N")]
        level: u64,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<i64>,
    },
    /// Check (f|g)^σ = f^σ | g_λ exactly for one Eisenstein series.
    VerifyTheorem {
        #[command(flatten)]
        sym: SymbolArgs,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_negative_numbers = true)]
        lambda: i64,
        #[arg(long, default_value_t = shimura::DEFAULT_PREC)]
        prec: usize,
    },
    /// Exhaustive check of the level-structure diagram for one level or a range 2..=max.
    VerifyDiagram {
        #[arg(long = "N")]
        level: Option<u64>,
        #[arg(long = "max-N")]
        max_level: Option<u64>,
    },
    /// Compare the exact expansion with the lattice sum at τ.
    Oracle {
        #[command(flatten)]
        sym: SymbolArgs,
        /// re,im
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, default_value_t = 400)]
        cutoff: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Theorem check over a corpus of single symbols and random product forms.
    Sweep {
        #[arg(long = "N", value_delimiter = ',', default_values_t = [3u64, 4, 5, 7])]
        levels: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_values_t = [3u32, 4])]
        k: Vec<u32>,
        #[arg(long, default_value_t = 20)]
        random_forms: usize,
        #[arg(long, default_value_t = 0x5eed_0002)]
        seed: u64,
        #[arg(long, default_value_t = shimura::DEFAULT_PREC)]
        prec: usize,
    },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { code, stdout, stderr, report: None };
        }
    };
    match dispatch(cli.command) {
        Ok(report) => {
            let mut stdout = serde_json::to_string(&report).expect("reports serialize");
            stdout.push('\n');
            let stderr = match report.status {
                Status::Fail => format!("{}: verification failed\n", report.command),
                _ => String::new(),
            };
            Outcome { code: report.exit_code(), stdout, stderr, report: Some(report) }
        }
        Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n"), report: None },
    }
}

/// Sizes the global worker pool from [`THREADS_VAR`] if it is set.
pub fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Malformed(format!("{THREADS_VAR}={v:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Malformed(e.to_string()))
}

fn report(command: &str, inputs: BTreeMap<String, Value>, status: Status, payload: impl Serialize) -> CommandReport {
    CommandReport {
        command: command.to_string(),
        inputs,
        status,
        payload: serde_json::to_value(payload).expect("payloads serialize"),
        certified_range: None,
    }
}

fn symbol_inputs(s: &SymbolArgs) -> BTreeMap<String, Value> {
    BTreeMap::from([
        ("N".to_string(), json!(s.level)),
        ("k".to_string(), json!(s.k)),
        ("c1".to_string(), json!(s.c1)),
        ("c2".to_string(), json!(s.c2)),
    ])
}

fn symbol(s: &SymbolArgs) -> Result<EisSymbol> {
    EisSymbol::new(s.level, s.k, s.c1, s.c2)
}

fn parse_tau(s: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [re, im] = parts[..] else {
        return Err(Error::Malformed(format!("expected re,im, got {s:?}")));
    };
    let num = |x: &str| x.parse::<f64>().map_err(|_| Error::Malformed(format!("bad number {x:?}")));
    Ok(Complex64::new(num(re)?, num(im)?))
}

fn parse_resmat(s: &str, n: u64) -> Result<ResMat> {
    if n == 0 {
        return Err(Error::ZeroLevel);
    }
    let [a, b, c, d] = modgroup::parse_four(s)?;
    let small = |x: num_bigint::BigInt| {
        i64::try_from(crate::arith::rem_big(&x, n)).map_err(|_| Error::Malformed("entry out of range".into()))
    };
    ResMat::new(n, small(a)?, small(b)?, small(c)?, small(d)?)
}

fn read_input(path: &str) -> Result<String> {
    let mut text = String::new();
    let io = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    io.map_err(|e| Error::Malformed(format!("{path}: {e}")))?;
    Ok(text)
}

fn dispatch(command: Command) -> Result<CommandReport> {
    match command {
        Command::Eisenstein { sym, prec } => {
            let mut inputs = symbol_inputs(&sym);
            inputs.insert("prec".into(), json!(prec));
            let series = eisenstein::eisenstein_qexp(&symbol(&sym)?, prec)?;
            Ok(report("eisenstein", inputs, Status::Value, series))
        }
        Command::Slash { sym, g, prec } => {
            let mut inputs = symbol_inputs(&sym);
            let g: UniMat = g.parse()?;
            inputs.insert("g".into(), json!(g.to_string()));
            inputs.insert("prec".into(), json!(prec));
            let f = shimura::form_slash(&FormExpr::symbol(symbol(&sym)?), &g);
            Ok(report("slash", inputs, Status::Value, shimura::expand(&f, prec)?))
        }
        Command::Galois { lambda, input, sym, prec } => {
            let mut inputs = BTreeMap::from([("lambda".to_string(), json!(lambda))]);
            let given = [sym.level.is_some(), sym.k.is_some(), sym.c1.is_some(), sym.c2.is_some()];
            let series = match (input, given) {
                (Some(path), [false, false, false, false]) => {
                    inputs.insert("input".into(), json!(path));
                    serde_json::from_str::<QExpansion>(&read_input(&path)?)
                        .map_err(|e| Error::Malformed(format!("{path}: {e}")))?
                }
                (None, [true, true, true, true]) => {
                    let s = SymbolArgs {
                        level: sym.level.unwrap(),
                        k: sym.k.unwrap(),
                        c1: sym.c1.unwrap(),
                        c2: sym.c2.unwrap(),
                    };
                    inputs.extend(symbol_inputs(&s));
                    inputs.insert("prec".into(), json!(prec));
                    eisenstein::eisenstein_qexp(&symbol(&s)?, prec)?
                }
                _ => return Err(Error::Malformed("give either --input or all of --N --k --c1 --c2".into())),
            };
            Ok(report("galois", inputs, Status::Value, series.galois(lambda)?))
        }
        Command::Lift { level, g, lambda } => {
            let m = parse_resmat(&g, level)?;
            let mut inputs = BTreeMap::from([("N".to_string(), json!(level)), ("g".to_string(), json!(m.to_string()))]);
            let target = match lambda {
                Some(l) => {
                    inputs.insert("lambda".into(), json!(l));
                    modgroup::theorem_target(&m, l)?
                }
                None => m,
            };
            let lift = modgroup::sl2_lift(&target);
            debug_assert_eq!(modgroup::reduce_mod(&lift, level), target);
            let payload = json!({ "lift": lift, "reduces_to": target.to_string() });
            Ok(report("lift", inputs, Status::Value, payload))
        }
        Command::VerifyTheorem { sym, g, lambda, prec } => {
            let mut inputs = symbol_inputs(&sym);
            let g: UniMat = g.parse()?;
            inputs.insert("g".into(), json!(g.to_string()));
            inputs.insert("lambda".into(), json!(lambda));
            inputs.insert("prec".into(), json!(prec));
            let r = shimura::verify_theorem(&FormExpr::symbol(symbol(&sym)?), &g, lambda, prec)?;
            let status = if r.equal { Status::Pass } else { Status::Fail };
            let range = r.certified_range;
            let mut out = report("verify-theorem", inputs, status, r);
            out.certified_range = Some(range);
            Ok(out)
        }
        Command::VerifyDiagram { level, max_level } => {
            let mut inputs = BTreeMap::new();
            let levels = match (level, max_level) {
                (Some(n), None) => n..=n,
                (None, Some(m)) => 2..=m,
                (Some(n), Some(m)) => n..=m,
                (None, None) => return Err(Error::Malformed("give --N or --max-N".into())),
            };
            if *levels.start() == 0 {
                return Err(Error::ZeroLevel);
            }
            if let Some(n) = level {
                inputs.insert("N".to_string(), json!(n));
            }
            if let Some(m) = max_level {
                inputs.insert("max-N".to_string(), json!(m));
            }
            let r = levelstruct::verify_diagram(levels)?;
            let status = if r.failures.is_empty() { Status::Pass } else { Status::Fail };
            Ok(report("verify-diagram", inputs, status, r))
        }
        Command::Oracle { sym, tau, cutoff, tol } => {
            let mut inputs = symbol_inputs(&sym);
            let t = parse_tau(&tau)?;
            inputs.insert("tau".into(), json!([t.re, t.im]));
            inputs.insert("cutoff".into(), json!(cutoff));
            inputs.insert("tol".into(), json!(tol));
            let r = eisenstein::oracle_check(&symbol(&sym)?, t, cutoff, tol)?;
            let status = if r.agrees { Status::Pass } else { Status::Fail };
            Ok(report("oracle", inputs, status, r))
        }
        Command::Sweep { levels, k, random_forms, seed, prec } => {
            let inputs = BTreeMap::from([
                ("N".to_string(), json!(levels)),
                ("k".to_string(), json!(k)),
                ("random_forms".to_string(), json!(random_forms)),
                ("seed".to_string(), json!(seed)),
                ("prec".to_string(), json!(prec)),
            ]);
            let matrices = corpus::test_matrices();
            let mut checked = 0;
            let mut failures = Vec::new();
            for &n in &levels {
                let forms = corpus::theorem_corpus(n, &k, random_forms, seed);
                let r = corpus::sweep(&forms, &matrices, prec)?;
                checked += r.checked;
                failures.extend(r.failures);
            }
            let status = if failures.is_empty() { Status::Pass } else { Status::Fail };
            let payload = corpus::SweepReport { checked, prec, failures };
            let mut out = report("sweep", inputs, status, payload);
            out.certified_range = Some([0, prec as i64]);
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("shimura-kit").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["lift", "--N", "5"]).code, EXIT_USAGE);
        let o = run_args(&["lift", "--N", "5", "--g", "1,1,1,1"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stdout.is_empty() && o.stderr.contains("determinant"), "{o:?}");
        assert_eq!(run_args(&["galois", "--lambda", "2", "--N", "5"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).code, EXIT_PASS);
    }

    #[test]
    fn lift_command() {
        let o = run_args(&["lift", "--N", "5", "--g", "0,3,3,0"]);
        assert_eq!(o.code, EXIT_PASS);
        let r = o.report.unwrap();
        assert_eq!(r.status, Status::Value);
        let lift: UniMat = serde_json::from_value(r.payload["lift"].clone()).unwrap();
        assert_eq!(modgroup::reduce_mod(&lift, 5).entries(), [0, 3, 3, 0]);
    }

    #[test]
    fn theorem_command() {
        let o = run_args(&[
            "verify-theorem", "--N", "5", "--k", "3", "--c1", "1", "--c2", "0", "--g", "0,-1,1,0", "--lambda", "2",
            "--prec", "40",
        ]);
        assert_eq!(o.code, EXIT_PASS, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["payload"]["equal"], json!(true));
        assert_eq!(v["certified_range"], json!([0, 40]));
    }
}
