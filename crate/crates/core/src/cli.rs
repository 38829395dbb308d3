//! Command-line front end. Exit codes: 0 when every check passes, 1 on a
//! verification failure, 2 on bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use crate::algebra::{Module, DEFAULT_RESOLUTION_CAP};
use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::report::{Check, Report};
use crate::semiorth::SodContext;
use crate::serial::{self, AlgebraDoc, ComplexDoc, FanDoc, ModuleDoc};
use crate::toric::{blowdown_verify, ModelBundle, ToricSurface, VerifyConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "blowdown",
    version,
    about = "Torsion pairs, tilted t-structures and blowing down an exceptional object"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// `q` or `fp:<p>`.
    #[arg(long, global = true, default_value = "fp:32003")]
    pub field: Field,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    pub corpus: usize,
    #[arg(long = "cap-resolution", global = true, default_value_t = DEFAULT_RESOLUTION_CAP, value_parser = positive)]
    pub cap_resolution: usize,
    /// `f1`, or a fan file `{"rays": [[1,0], ...]}`.
    #[arg(long, global = true, default_value = "f1")]
    pub model: String,
    /// Use `O_L` instead of `O_L(L)` as `N`.
    #[arg(long = "perturb-n", global = true)]
    pub perturb_n: bool,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print the JSON report instead of the summary.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The torsion decomposition `0 → t(A) → A → A/t(A) → 0`.
    Torsion(InputArgs),
    /// Perverse truncations `τ^p_{≤0} X → X → τ^p_{≥1} X`.
    Truncate(InputArgs),
    /// The projection triangle `S-part → X → N-part`.
    Project(InputArgs),
    /// The full blow-down verification on the toric model.
    BlowdownVerify,
}

#[derive(Clone, Debug, Args)]
pub struct InputArgs {
    /// Problem file with `algebra`, `n` and `module` or `complex`. Without
    /// it the object is `N` of the toric model.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
}

/// An input document; `"algebra": "model"` (or omitted) selects the toric
/// model, whose `N` is the default.
#[derive(Debug, Deserialize)]
pub struct Problem {
    #[serde(default)]
    pub algebra: Option<AlgebraSource>,
    #[serde(default)]
    pub n: Option<ModuleDoc>,
    #[serde(default)]
    pub module: Option<ModuleDoc>,
    #[serde(default)]
    pub complex: Option<ComplexDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSource {
    Named(String),
    Doc(AlgebraDoc),
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{e}");
            return EXIT_PASS;
        }
    };
    let cfg = &cli.config;
    let setup = match load(&cli) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "input error: {e}");
            return EXIT_INPUT;
        }
    };
    let report = match execute(&cli.command, cfg, setup) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_FAIL;
        }
    };
    if let Some(path) = &cfg.out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            let _ = writeln!(err, "cannot write {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    let _ = if cfg.json { writeln!(out, "{}", report.to_json()) } else { write!(out, "{}", report.summary()) };
    if !report.passed {
        for c in report.failures() {
            if let Some(w) = &c.witness {
                let _ = writeln!(err, "witness for {}: {w}", c.name);
            }
        }
        return EXIT_FAIL;
    }
    EXIT_PASS
}

/// Everything read from disk, before any computation.
struct Setup {
    model: Option<ModelBundle>,
    n: Module,
    object: Option<Object>,
}

enum Object {
    Module(Module),
    Complex(Complex),
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &PathBuf) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn load_model(cfg: &RunConfig) -> Result<ModelBundle> {
    let surface = match cfg.model.as_str() {
        "f1" => ToricSurface::f1(),
        path => serial::fan_from_doc(&read_json::<FanDoc>(&PathBuf::from(path))?)?,
    };
    ModelBundle::build(cfg.field, surface)
}

fn model_n(model: &ModelBundle, cfg: &RunConfig) -> Result<Module> {
    if cfg.perturb_n {
        model.structure_sheaf_l()
    } else {
        model.exceptional_n()
    }
}

fn load(cli: &Cli) -> Result<Setup> {
    let cfg = &cli.config;
    let input = match &cli.command {
        Command::Torsion(a) | Command::Truncate(a) | Command::Project(a) => a.input.clone(),
        Command::BlowdownVerify => None,
    };
    let Some(path) = input else {
        let model = load_model(cfg)?;
        let n = model_n(&model, cfg)?;
        return Ok(Setup { n, model: Some(model), object: None });
    };
    let problem: Problem = read_json(&path)?;
    let (model, algebra) = match &problem.algebra {
        None => {
            let m = load_model(cfg)?;
            let a = m.algebra().clone();
            (Some(m), a)
        }
        Some(AlgebraSource::Named(s)) if s == "model" => {
            let m = load_model(cfg)?;
            let a = m.algebra().clone();
            (Some(m), a)
        }
        Some(AlgebraSource::Named(s)) => return Err(Error::Parse(format!("unknown algebra {s:?}"))),
        Some(AlgebraSource::Doc(d)) => (None, Arc::new(serial::algebra_from_doc(cfg.field, d)?)),
    };
    let n = match (&problem.n, &model) {
        (Some(d), _) => serial::module_from_doc(&algebra, d)?,
        (None, Some(m)) => model_n(m, cfg)?,
        (None, None) => return Err(Error::Parse("a custom algebra needs an `n` module".into())),
    };
    if n.is_zero() {
        return Err(Error::Parse("N must be nonzero".into()));
    }
    let object = match (&problem.module, &problem.complex) {
        (Some(m), None) => Some(Object::Module(serial::module_from_doc(&algebra, m)?)),
        (None, Some(c)) => Some(Object::Complex(serial::complex_from_doc(&algebra, c)?)),
        (None, None) => None,
        (Some(_), Some(_)) => return Err(Error::Parse("give either `module` or `complex`, not both".into())),
    };
    Ok(Setup { model, n, object })
}

fn execute(cmd: &Command, cfg: &RunConfig, setup: Setup) -> Result<Report> {
    let name = match cmd {
        Command::Torsion(_) => "torsion",
        Command::Truncate(_) => "truncate",
        Command::Project(_) => "project",
        Command::BlowdownVerify => "blowdown-verify",
    };
    let mut report = match cmd {
        Command::BlowdownVerify => {
            let model = setup.model.as_ref().expect("verification always loads the model");
            let vc =
                VerifyConfig { corpus: cfg.corpus, seed: cfg.seed, cap: cfg.cap_resolution, perturb_n: cfg.perturb_n };
            return blowdown_verify(model, vc);
        }
        _ => Report::new(name, cfg.seed, cfg.field.describe()),
    };
    report.config.insert("cap_resolution".into(), json!(cfg.cap_resolution));
    report.config.insert("n_dims".into(), json!(setup.n.dims()));
    let ctx = SodContext::from_n(setup.n.clone(), cfg.cap_resolution)?;
    let as_complex = |o: &Option<Object>| match o {
        Some(Object::Complex(c)) => c.clone(),
        Some(Object::Module(m)) => Complex::from_module(m, 0),
        None => Complex::from_module(&setup.n, 0),
    };
    match cmd {
        Command::Torsion(_) => {
            let a = match &setup.object {
                Some(Object::Module(m)) => m.clone(),
                Some(Object::Complex(_)) => return Err(Error::Precondition("torsion needs a module".into())),
                None => setup.n.clone(),
            };
            let t = ctx.torsion();
            let d = t.torsion_subobject(&a)?;
            let ok = t.certify(&d)?;
            let class = t.classify(&a)?;
            report.outputs.insert("module_dims".into(), json!(a.dims()));
            report.outputs.insert("torsion_dims".into(), json!(d.torsion.dims()));
            report.outputs.insert("free_dims".into(), json!(d.free.dims()));
            report.outputs.insert("class".into(), json!(class));
            report.outputs.insert("chain".into(), json!(d.chain));
            report.outputs.insert("torsion".into(), json!(serial::module_to_doc(&d.torsion)));
            report.outputs.insert("free".into(), json!(serial::module_to_doc(&d.free)));
            report.push(Check::new(
                "torsion_certificate",
                ok,
                1,
                format!("t(A) dims {:?}, A/t(A) dims {:?}, class {class:?}", d.torsion.dims(), d.free.dims()),
            ));
        }
        Command::Truncate(_) => {
            let x = as_complex(&setup.object);
            let p = ctx.perverse();
            let t = p.p_truncate(&x)?;
            let ok = p.verify_truncation(&x, &t)?;
            report.outputs.insert("low_homology".into(), json!(format!("{:?}", t.low.homology_dims())));
            report.outputs.insert("high_homology".into(), json!(format!("{:?}", t.high.homology_dims())));
            report.outputs.insert("low".into(), json!(serial::complex_to_doc(&t.low)));
            report.outputs.insert("high".into(), json!(serial::complex_to_doc(&t.high)));
            report.push(Check::new(
                "truncation_certificate",
                ok,
                1,
                format!("τ≤0 homology {:?}, τ≥1 homology {:?}", t.low.homology_dims(), t.high.homology_dims()),
            ));
        }
        Command::Project(_) => {
            let x = as_complex(&setup.object);
            let d = ctx.decompose(&x)?;
            let s_ok = ctx.in_s(&d.s_part)?;
            let n_ok = ctx.decompose(&d.n_part)?.s_part.is_acyclic();
            let tri_ok = d.s_to_object.is_chain_map(&d.s_part, &d.object);
            report.outputs.insert("s_part_homology".into(), json!(format!("{:?}", d.s_part.homology_dims())));
            report.outputs.insert("n_part_homology".into(), json!(format!("{:?}", d.n_part.homology_dims())));
            report.outputs.insert("multiplicity".into(), json!(d.multiplicity.dims()));
            report.outputs.insert("s_part".into(), json!(serial::complex_to_doc(&d.s_part)));
            report.outputs.insert("n_part".into(), json!(serial::complex_to_doc(&d.n_part)));
            report.push(Check::new("s_part_in_s", s_ok, 1, format!("S-part homology {:?}", d.s_part.homology_dims())));
            report.push(Check::new(
                "n_part_in_n",
                n_ok && tri_ok,
                1,
                format!("N-part homology {:?}", d.n_part.homology_dims()),
            ));
        }
        Command::BlowdownVerify => unreachable!(),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["blowdown"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn write_tmp(name: &str, text: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("blowdown-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    const A2: &str =
        r#""algebra":{"vertices":["1","2"],"arrows":[{"name":"a","src":"1","dst":"2"}]},"n":{"dims":[0,1]}"#;

    #[test]
    fn torsion_on_model_n() {
        let (code, out, _) = call(&["torsion"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("torsion_certificate"));
    }

    #[test]
    fn torsion_zero_and_torsion_modules() {
        let p = write_tmp("zero.json", &format!(r#"{{{A2},"module":{{"dims":[0,0]}}}}"#));
        let (code, out, _) = call(&["torsion", "--json", "--input", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["outputs"]["torsion_dims"], json!([0, 0]));
        assert_eq!(v["outputs"]["free_dims"], json!([0, 0]));
        // S_1 has no maps to S_2 = N.
        let p = write_tmp("s1.json", &format!(r#"{{{A2},"module":{{"dims":[1,0]}}}}"#));
        let (code, out, _) = call(&["torsion", "--json", "-i", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["outputs"]["torsion_dims"], json!([1, 0]));
        assert_eq!(v["outputs"]["free_dims"], json!([0, 0]));
    }

    #[test]
    fn project_n_gives_zero_s_part() {
        let (code, out, _) = call(&["project", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["outputs"]["s_part_homology"], json!("{}"));
    }

    #[test]
    fn truncate_heart_object() {
        let p = write_tmp("p1.json", &format!(r#"{{{A2},"complex":{{"terms":{{"0":{{"dims":[1,0]}}}}}}}}"#));
        let (code, out, _) = call(&["truncate", "--json", "-i", p.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["outputs"]["high_homology"], json!("{}"));
    }

    #[test]
    fn input_errors_exit_2() {
        assert_eq!(call(&["torsion", "-i", "/nonexistent/file.json"]).0, EXIT_INPUT);
        let p = write_tmp("bad.json", "{ not json");
        assert_eq!(call(&["torsion", "-i", p.to_str().unwrap()]).0, EXIT_INPUT);
        assert_eq!(call(&["--field", "fp:4", "torsion"]).0, EXIT_INPUT);
        assert_eq!(call(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(call(&["blowdown-verify", "--cap-resolution", "0"]).0, EXIT_INPUT);
        let fan = write_tmp("fan.json", r#"{"rays":[[1,0],[0,1],[-1,-1]]}"#);
        assert_eq!(call(&["blowdown-verify", "--model", fan.to_str().unwrap()]).0, EXIT_INPUT);
    }

    #[test]
    fn verify_exit_codes_and_report_file() {
        let out_path = std::env::temp_dir().join(format!("blowdown-report-{}.json", std::process::id()));
        let (code, out, _) = call(&["blowdown-verify", "--corpus", "0", "--out", out_path.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
        assert_eq!(v["schema"], json!(crate::report::SCHEMA_VERSION));
        let (code, _, err) = call(&["blowdown-verify", "--corpus", "2", "--perturb-n"]);
        assert_eq!(code, EXIT_FAIL);
        assert!(err.contains("witness"));
    }

    #[test]
    fn same_seed_same_report() {
        let a = call(&["blowdown-verify", "--corpus", "4", "--seed", "11", "--json"]).1;
        let b = call(&["blowdown-verify", "--corpus", "4", "--seed", "11", "--json"]).1;
        let strip = |s: &str| {
            let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
            v.as_object_mut().unwrap().remove("timing");
            v
        };
        assert_eq!(strip(&a), strip(&b));
    }
}
