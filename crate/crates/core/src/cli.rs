//! Command-line driver. [`run`] does all the work and returns the rendered
//! output, so the binary only parses arguments and prints.

use std::fmt::Write as _;
use std::path::PathBuf;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::codes::{Code, Limits};
use crate::macwilliams::{dual_enumerator, s_value, v_table, verify_identity};
use crate::matrix_file::MatrixFile;
use crate::poly::EnumeratorPoly;
use crate::rings::FiniteRing;
use crate::weights::{big_number, distribution, enumerator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Ring order, character modulus, unit count and generating-character check.
    RingInfo,
    /// Weight distribution table and W(z) of the code in --input.
    Enumerate,
    /// Brute-force dual code: size, distribution and enumerator.
    Dual,
    /// W⊥(z) through the MacWilliams transform only.
    Transform,
    /// W⊥(z) by transform and by dual enumeration, compared exactly.
    Verify,
    /// The kernel polynomials V_0 … V_b.
    Vtable,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::RingInfo => "ring-info",
            Command::Enumerate => "enumerate",
            Command::Dual => "dual",
            Command::Transform => "transform",
            Command::Verify => "verify",
            Command::Vtable => "vtable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub ring: Option<String>,
    pub input: Option<PathBuf>,
    pub b: Option<usize>,
    pub t: Option<usize>,
    pub l: Option<u64>,
    pub j: Option<usize>,
    pub k: Option<usize>,
    pub format: OutputFormat,
    pub limits: Limits,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            ring: None,
            input: None,
            b: None,
            t: None,
            l: None,
            j: None,
            k: None,
            format: OutputFormat::Text,
            limits: Limits::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Usage-level failure: reported on one line with exit status 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

struct Rendered {
    params: Value,
    result: Value,
    text: String,
    passed: bool,
}

pub fn run(config: &RunConfig) -> RunOutput {
    match execute(config) {
        Ok(r) => {
            let stdout = match config.format {
                OutputFormat::Text => r.text,
                OutputFormat::Json => {
                    let doc = json!({
                        "command": config.command.name(),
                        "params": r.params,
                        "result": r.result,
                    });
                    serde_json::to_string_pretty(&doc).expect("output serializes") + "\n"
                }
            };
            RunOutput { exit_code: if r.passed { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(UsageError(msg)) => RunOutput {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("mspotty {}: {}\n", config.command.name(), msg.replace('\n', " ")),
        },
    }
}

fn poly_json(p: &EnumeratorPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::Number(big_number(c))).collect())
}

fn load_code(config: &RunConfig) -> Result<(MatrixFile, Code), UsageError> {
    let path = config
        .input
        .as_ref()
        .ok_or_else(|| UsageError("--input FILE is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    let mut file = MatrixFile::parse(&text)?;
    if let Some(t) = config.t {
        file.t = t;
    }
    let code = file.build_code(&config.limits)?;
    Ok((file, code))
}

fn code_params(file: &MatrixFile, code: &Code) -> Value {
    json!({
        "ring": code.ring().spec().to_string(),
        "l": code.ring().order(),
        "n": file.n,
        "b": file.b,
        "t": file.t,
        "rows": file.rows.len(),
    })
}

fn code_header(code: &Code) -> String {
    format!("ring={} {}\n", code.ring().spec(), code.layout())
}

fn execute(config: &RunConfig) -> Result<Rendered, UsageError> {
    match config.command {
        Command::RingInfo => ring_info(config),
        Command::Enumerate => {
            let (file, code) = load_code(config)?;
            let dist = distribution(&code);
            let w = enumerator(&dist);
            let mut text = code_header(&code);
            writeln!(text, "|C| = {}", code.len()).unwrap();
            text.push_str(&dist.render_text());
            writeln!(text, "W(z) = {w}").unwrap();
            Ok(Rendered {
                params: code_params(&file, &code),
                result: json!({
                    "size": code.len(),
                    "distribution": dist.to_json(),
                    "enumerator": poly_json(&w),
                }),
                text,
                passed: true,
            })
        }
        Command::Dual => {
            let (file, code) = load_code(config)?;
            let dual = code.dual(&config.limits)?;
            let dist = distribution(&dual);
            let w = enumerator(&dist);
            let mut text = code_header(&code);
            writeln!(text, "|C| = {}", code.len()).unwrap();
            writeln!(text, "|C⊥| = {}", dual.len()).unwrap();
            text.push_str(&dist.render_text());
            writeln!(text, "W⊥(z) = {w}").unwrap();
            Ok(Rendered {
                params: code_params(&file, &code),
                result: json!({
                    "size": code.len(),
                    "dual_size": dual.len(),
                    "distribution": dist.to_json(),
                    "enumerator": poly_json(&w),
                }),
                text,
                passed: true,
            })
        }
        Command::Transform => {
            let (file, code) = load_code(config)?;
            let w = dual_enumerator(&code)?;
            let mut text = code_header(&code);
            writeln!(text, "|C| = {}", code.len()).unwrap();
            writeln!(text, "W⊥(z) = {w}").unwrap();
            Ok(Rendered {
                params: code_params(&file, &code),
                result: json!({ "size": code.len(), "dual_enumerator": poly_json(&w) }),
                text,
                passed: true,
            })
        }
        Command::Verify => {
            let (file, code) = load_code(config)?;
            let report = verify_identity(&code, &config.limits)?;
            let verdict = if report.holds() { "PASS" } else { "FAIL" };
            let mut text = code_header(&code);
            writeln!(text, "|C| = {}", report.card).unwrap();
            writeln!(text, "|C⊥| = {}", report.dual_card).unwrap();
            writeln!(text, "W(z) = {}", report.weight_enumerator).unwrap();
            writeln!(text, "W⊥(z) via transform = {}", report.via_transform).unwrap();
            writeln!(text, "W⊥(z) via dual code = {}", report.via_dual).unwrap();
            writeln!(text, "{verdict}").unwrap();
            Ok(Rendered {
                params: code_params(&file, &code),
                result: json!({
                    "size": big_number(&report.card),
                    "dual_size": big_number(&report.dual_card),
                    "enumerator": poly_json(&report.weight_enumerator),
                    "via_transform": poly_json(&report.via_transform),
                    "via_dual": poly_json(&report.via_dual),
                    "verdict": verdict,
                }),
                text,
                passed: report.holds(),
            })
        }
        Command::Vtable => {
            let order = match (config.l, &config.ring) {
                (Some(l), _) => l,
                (None, Some(spec)) => FiniteRing::parse(spec)?.order() as u64,
                (None, None) => return Err(UsageError("--l L or --ring SPEC is required".into())),
            };
            let b = config.b.ok_or_else(|| UsageError("--b B is required".into()))?;
            let t = config.t.ok_or_else(|| UsageError("--t T is required".into()))?;
            let vt = v_table(order, b, t)?;
            let mut text = String::new();
            for (j, v) in vt.polys().iter().enumerate() {
                writeln!(text, "V_{j}(z) = {v}").unwrap();
            }
            let mut params = json!({ "l": order, "b": b, "t": t });
            let mut result = json!({ "polys": vt.polys().iter().map(poly_json).collect::<Vec<_>>() });
            match (config.k, config.j) {
                (Some(k), Some(j)) => {
                    let s = s_value(order, b, k, j)?;
                    writeln!(text, "S({k}, {j}) = {s}").unwrap();
                    params["k"] = json!(k);
                    params["j"] = json!(j);
                    result["s_value"] = Value::Number(big_number(&s));
                }
                (None, None) => {}
                _ => return Err(UsageError("--k and --j must be given together".into())),
            }
            Ok(Rendered {
                params,
                result,
                text,
                passed: true,
            })
        }
    }
}

fn ring_info(config: &RunConfig) -> Result<Rendered, UsageError> {
    let spec = config
        .ring
        .as_ref()
        .ok_or_else(|| UsageError("--ring SPEC is required".into()))?;
    let ring = FiniteRing::parse(spec)?;
    let units = ring.units().len();
    let generating = ring.verify_generating_character();
    let mut text = String::new();
    writeln!(text, "ring: {}", ring.spec()).unwrap();
    writeln!(text, "order: {}", ring.order()).unwrap();
    writeln!(text, "character modulus: {}", ring.char_modulus()).unwrap();
    writeln!(text, "units: {units}").unwrap();
    writeln!(text, "generating character: {}", if generating { "yes" } else { "no" }).unwrap();
    Ok(Rendered {
        params: json!({ "ring": ring.spec().to_string() }),
        result: json!({
            "order": ring.order(),
            "char_modulus": ring.char_modulus(),
            "char_exponents": ring.char_exponents(),
            "units": units,
            "generating_character": generating,
        }),
        text,
        passed: true,
    })
}

/// Sum of a JSON coefficient array at `z = 1`; used by tests comparing the
/// text and JSON renderings.
pub fn json_poly_at_one(v: &Value) -> Option<BigUint> {
    v.as_array()?
        .iter()
        .map(|c| c.to_string().parse::<num_bigint::BigInt>().ok())
        .sum::<Option<num_bigint::BigInt>>()?
        .to_biguint()
}
