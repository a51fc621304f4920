//! Command-line front end: argument parsing, dispatch and JSON reports.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cohomology::{h2_dim, pencil_cohomology, profile_in, InvariantComplex};
use crate::error::{OrbitError, Result};
use crate::levi::{betti_numbers, LeviDatum, Quasiroot};
use crate::moduli::{
    classify_good_pair, extract_parametrization, from_parametrization, good_bracket_family, solve_ff_standard,
    verify_ff, Parametrization,
};
use crate::multivec::{verify_cybe, BracketCoefficients};
use crate::rational::{format_rational, parse_rational, q, to_f64, Q};
use crate::rootsystem::RootSystem;

/// The catalog of test pairs shipped with the crate.
pub const CATALOG: &str = include_str!("../catalog.json");

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "orbitforge", version, about = "Invariant brackets and Poisson cohomology on coadjoint orbits")]
pub struct CommandRequest {
    #[command(subcommand)]
    #[serde(flatten)]
    pub command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OrbitArgs {
    /// Simple type, e.g. A2, B3, G2.
    #[arg(long = "type")]
    #[serde(rename = "type")]
    pub ty: String,
    /// Comma-separated 1-based indices of Γ; empty for the full flag.
    #[arg(long, default_value = "")]
    pub gamma: String,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Roots, Cartan matrix, structure constants and Killing pairings.
    RootSystem {
        #[arg(long = "type")]
        #[serde(rename = "type")]
        ty: String,
    },
    /// Quasiroots, positive system and Betti numbers of G/P.
    Orbit {
        #[command(flatten)]
        #[serde(flatten)]
        orbit: OrbitArgs,
    },
    /// Solve the φ-bracket equations from seeds on simple quasiroots.
    SolveFf {
        #[command(flatten)]
        #[serde(flatten)]
        orbit: OrbitArgs,
        #[arg(long = "K", default_value = "1")]
        #[serde(rename = "K")]
        k: String,
        /// JSON map like {"a1":"2","a2":"3"}.
        #[arg(long)]
        seeds: String,
    },
    /// Check coefficients against the φ-bracket equations.
    VerifyFf {
        #[command(flatten)]
        #[serde(flatten)]
        orbit: OrbitArgs,
        #[arg(long = "K", default_value = "1")]
        #[serde(rename = "K")]
        k: String,
        /// JSON map from quasiroot keys ("1,0") to rationals.
        #[arg(long)]
        c: String,
    },
    /// Coth parametrization: --lambda evaluates, --c extracts.
    Parametrize {
        #[command(flatten)]
        #[serde(flatten)]
        orbit: OrbitArgs,
        #[arg(long = "K", default_value = "1")]
        #[serde(rename = "K")]
        k: String,
        #[arg(long, conflicts_with = "lambda")]
        c: Option<String>,
        /// JSON map {"a1": "0.5", ...} of real values.
        #[arg(long)]
        lambda: Option<String>,
        /// Semicolon-separated quasiroot keys of Ψ (default: all).
        #[arg(long)]
        psi: Option<String>,
        /// Semicolon-separated quasiroot keys of B (default: none).
        #[arg(long)]
        b: Option<String>,
    },
    /// Good-pair verdict and, for good pairs, the family ±f₀ + t s.
    Good {
        #[command(flatten)]
        #[serde(flatten)]
        orbit: OrbitArgs,
        #[arg(long = "K", default_value = "1")]
        #[serde(rename = "K")]
        k: String,
        /// JSON map of rationals; defaults to 1 on every simple quasiroot.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Poisson cohomology of one bracket, or along the pencil with --samples.
    Cohomology {
        #[command(flatten)]
        #[serde(flatten)]
        orbit: OrbitArgs,
        #[arg(long = "K", default_value = "1")]
        #[serde(rename = "K")]
        k: String,
        #[arg(long)]
        seeds: Option<String>,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
        /// JSON list of [h, t] pairs.
        #[arg(long)]
        samples: Option<String>,
        /// Highest degree to compute.
        #[arg(long)]
        top: Option<usize>,
    },
    /// [[r, r]] for the standard r-matrix and its invariance.
    VerifyCybe {
        #[arg(long = "type")]
        #[serde(rename = "type")]
        ty: String,
    },
    /// Run every pair of a catalog.
    Sweep {
        /// Catalog file; the built-in catalog when omitted.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub request: Value,
    pub result: Value,
    pub verification: Vec<Check>,
    pub timing_ms: f64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verification.iter().all(|c| c.passed)
    }
}

fn check(name: &str, passed: bool) -> Check {
    Check { check: name.to_string(), passed }
}

fn usage(msg: impl Into<String>) -> OrbitError {
    OrbitError::Usage(msg.into())
}

pub fn parse_gamma(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| usage(format!("bad --gamma entry {t:?}"))))
        .collect()
}

fn build_levi(o: &OrbitArgs) -> Result<LeviDatum> {
    let rs = Arc::new(RootSystem::new(o.ty.parse()?)?);
    LeviDatum::new(rs, &parse_gamma(&o.gamma)?)
}

fn parse_json_map(s: &str, flag: &str) -> Result<BTreeMap<String, String>> {
    serde_json::from_str(s).map_err(|e| usage(format!("--{flag} is not a JSON map of strings: {e}")))
}

/// Values keyed `a<i>` for the simple roots outside Γ, in coordinate order.
fn simple_map<T>(levi: &LeviDatum, s: &str, flag: &str, parse: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    let mut map = parse_json_map(s, flag)?;
    let mut out = Vec::new();
    for i in levi.complement() {
        let key = format!("a{i}");
        let v = map.remove(&key).ok_or_else(|| usage(format!("--{flag} lacks {key}")))?;
        out.push(parse(&v)?);
    }
    if let Some(extra) = map.keys().next() {
        return Err(usage(format!("--{flag} has unexpected key {extra:?}")));
    }
    Ok(out)
}

fn parse_real(s: &str) -> Result<f64> {
    parse_rational(s)
        .map(|x| to_f64(&x))
        .or_else(|_| s.parse::<f64>().map_err(|_| usage(format!("malformed real {s:?}"))))
}

fn parse_keys(s: &str) -> Result<Vec<Quasiroot>> {
    s.split(';').filter(|t| !t.trim().is_empty()).map(|t| Quasiroot::from_key(t.trim())).collect()
}

fn coeffs_json(c: &BracketCoefficients) -> Value {
    json!(c.to_json())
}

fn ones(levi: &LeviDatum) -> Vec<Q> {
    vec![q(1); levi.complement().len()]
}

fn lambda_or_ones(levi: &LeviDatum, lambda: &Option<String>) -> Result<Vec<Q>> {
    match lambda {
        Some(s) => simple_map(levi, s, "lambda", parse_rational),
        None => Ok(ones(levi)),
    }
}

fn lambda_json(levi: &LeviDatum, lambda: &[Q]) -> Value {
    let m: BTreeMap<String, String> =
        levi.complement().iter().zip(lambda).map(|(i, l)| (format!("a{i}"), format_rational(l))).collect();
    json!(m)
}

/// Executes one request.
pub fn run(req: &CommandRequest) -> Result<Report> {
    let start = Instant::now();
    let request = serde_json::to_value(req).map_err(|e| OrbitError::Internal(e.to_string()))?;
    let command = request["command"].as_str().unwrap_or_default().to_string();
    let (result, verification) = dispatch(req)?;
    Ok(Report { command, request, result, verification, timing_ms: start.elapsed().as_secs_f64() * 1e3 })
}

fn dispatch(req: &CommandRequest) -> Result<(Value, Vec<Check>)> {
    match &req.command {
        Command::RootSystem { ty } => {
            let rs = RootSystem::new(ty.parse()?)?;
            let j = rs.to_json();
            let count = rs.roots().len() == rs.simple_type().root_count();
            Ok((json!(j), vec![check("root_count", count), check("jacobi", rs.jacobi_violation().is_none())]))
        }
        Command::Orbit { orbit } => {
            let levi = build_levi(orbit)?;
            let j = levi.to_json()?;
            let b2 = j.betti.get(1).copied().unwrap_or(0) == levi.complement().len();
            let semilinear = levi.subset_classify(levi.standard_positive().positives())?.kind
                == crate::levi::SubsetKind::Semilinear;
            Ok((json!(j), vec![check("b2_equals_simple_quasiroots", b2), check("positive_system_semilinear", semilinear)]))
        }
        Command::SolveFf { orbit, k, seeds } => {
            let levi = build_levi(orbit)?;
            let k = parse_rational(k)?;
            let seeds_v = simple_map(&levi, seeds, "seeds", parse_rational)?;
            let sol = solve_ff_standard(&levi, &seeds_v, &k)?;
            let v = verify_ff(&levi, &sol.c, &k)?;
            let result = json!({
                "c": coeffs_json(&sol.c),
                "positive": sol.positive.positives().iter().map(Quasiroot::key).collect::<Vec<_>>(),
                "K": format_rational(&k),
                "verified": v.holds,
            });
            Ok((result, vec![check("ff_all_pairs", v.violations.is_empty()), check("schouten_residual_zero", v.schouten_residual_zero)]))
        }
        Command::VerifyFf { orbit, k, c } => {
            let levi = build_levi(orbit)?;
            let k = parse_rational(k)?;
            let c = BracketCoefficients::from_json(&levi, &parse_json_map(c, "c")?)?;
            let v = verify_ff(&levi, &c, &k)?;
            let agree = v.violations.is_empty() == v.schouten_residual_zero;
            Ok((json!(v), vec![check("pairwise_and_schouten_agree", agree)]))
        }
        Command::Parametrize { orbit, k, c, lambda, psi, b } => {
            let levi = build_levi(orbit)?;
            let k = parse_rational(k)?;
            match (c, lambda) {
                (Some(c), _) => {
                    let c = BracketCoefficients::from_json(&levi, &parse_json_map(c, "c")?)?;
                    let p = extract_parametrization(&levi, &c, &k)?;
                    let back = from_parametrization(&levi, &p)?;
                    let dist = back.max_distance(&c);
                    let result = json!({ "parametrization": p.to_json(&levi), "round_trip_error_approx": dist });
                    Ok((result, vec![check("additivity_residual", p.residual < crate::moduli::TOLERANCE), check("round_trip", dist < crate::moduli::TOLERANCE)]))
                }
                (None, Some(l)) => {
                    let lambda = simple_map(&levi, l, "lambda", parse_real)?;
                    let psi = match psi {
                        Some(s) => parse_keys(s)?,
                        None => levi.quasiroots().cloned().collect(),
                    };
                    let b = match b {
                        Some(s) => parse_keys(s)?,
                        None => Vec::new(),
                    };
                    let p = Parametrization { psi, b, lambda, k: k.clone(), residual: 0.0 };
                    let c = from_parametrization(&levi, &p).map_err(|e| match e {
                        OrbitError::Parameter(m) => OrbitError::Usage(m),
                        e => e,
                    })?;
                    let defect = c.ff_defect(&levi, to_f64(&k));
                    let values: BTreeMap<String, f64> = c.values.iter().map(|(x, v)| (x.key(), *v)).collect();
                    let result = json!({ "c_approx": values, "ff_defect_approx": defect });
                    Ok((result, vec![check("ff_defect", defect < crate::moduli::TOLERANCE * (1.0 + to_f64(&k).powi(2)))]))
                }
                (None, None) => Err(usage("parametrize needs --c or --lambda")),
            }
        }
        Command::Good { orbit, k, lambda } => {
            let levi = build_levi(orbit)?;
            let k = parse_rational(k)?;
            let verdict = classify_good_pair(levi.root_system(), &levi.gamma())?;
            if !verdict.good {
                let result = json!({ "good": false, "certificate": verdict.certificate });
                return Ok((result, vec![check("certificate_search_exhausted", true)]));
            }
            let lambda = lambda_or_ones(&levi, lambda)?;
            let fam = good_bracket_family(&levi, &lambda, &k)?;
            let result = json!({
                "good": verdict.good,
                "certificate": verdict.certificate,
                "family": {
                    "f0": coeffs_json(&fam.f0),
                    "s": coeffs_json(&fam.s),
                    "K": format_rational(&k),
                    "lambda": lambda_json(&levi, &lambda),
                },
            });
            let f0_ok = fam.is_good(&levi, &fam.f0)?;
            Ok((result, vec![check("f0_phi_bracket_and_compatible", f0_ok), check("t_shift_closure", true)]))
        }
        Command::Cohomology { orbit, k, seeds, c, lambda, samples, top } => {
            let levi = build_levi(orbit)?;
            let k = parse_rational(k)?;
            let b2 = levi.complement().len();
            if let Some(samples) = samples {
                let raw: Vec<(String, String)> =
                    serde_json::from_str(samples).map_err(|e| usage(format!("--samples: {e}")))?;
                let samples: Vec<(Q, Q)> =
                    raw.iter().map(|(h, t)| Ok((parse_rational(h)?, parse_rational(t)?))).collect::<Result<_>>()?;
                let lambda = lambda_or_ones(&levi, lambda)?;
                let fam = good_bracket_family(&levi, &lambda, &k)?;
                let profiles = pencil_cohomology(&levi, &fam.f0, &lambda, &k, &samples)?;
                let h2 = profiles.iter().all(|p| p.h_dims.get(2).copied().unwrap_or(0) == b2);
                let entries: Vec<Value> = samples
                    .iter()
                    .zip(&profiles)
                    .map(|((h, t), p)| json!({ "h": format_rational(h), "t": format_rational(t), "profile": p.to_json() }))
                    .collect();
                return Ok((json!({ "pencil": entries }), vec![check("h2_equals_b2", h2)]));
            }
            let f = match (seeds, c) {
                (Some(s), None) => solve_ff_standard(&levi, &simple_map(&levi, s, "seeds", parse_rational)?, &k)?.c,
                (None, Some(c)) => BracketCoefficients::from_json(&levi, &parse_json_map(c, "c")?)?,
                _ => return Err(usage("cohomology needs exactly one of --seeds, --c, --samples")),
            };
            let cx = InvariantComplex::new(&levi, top.unwrap_or(levi.dim_m()))?;
            let p = profile_in(&cx, &levi, &f, &k)?;
            let mut checks = vec![check("delta_squared_zero", true)];
            if p.h_dims.len() == p.chain_dims.len() {
                let (a, b) = p.euler_characteristics();
                checks.push(check("euler_characteristic", a == b));
            }
            if !k.is_zero() && p.h_dims.len() > 2 {
                checks.push(check("h2_equals_b2", p.h_dims[2] == b2));
            }
            Ok((json!(p.to_json()), checks))
        }
        Command::VerifyCybe { ty } => {
            let rs = RootSystem::new(ty.parse()?)?;
            let (phi, invariant) = verify_cybe(&rs)?;
            Ok((json!({ "phi": phi.to_json(&rs), "invariant": invariant }), vec![check("phi_invariant", invariant)]))
        }
        Command::Sweep { catalog } => {
            let text = match catalog {
                Some(p) => std::fs::read_to_string(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?,
                None => CATALOG.to_string(),
            };
            let cat: Catalog = serde_json::from_str(&text).map_err(|e| usage(format!("bad catalog: {e}")))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(req.jobs.unwrap_or(0))
                .build()
                .map_err(|e| OrbitError::Internal(e.to_string()))?;
            let mut rows = pool.install(|| cat.pairs.par_iter().map(sweep_entry).collect::<Result<Vec<_>>>())?;
            rows.sort_by(|a, b| a.key.cmp(&b.key));
            let checks = rows
                .iter()
                .flat_map(|r| {
                    [
                        check(&format!("{} verdict", r.key), r.good == r.expected_good),
                        check(&format!("{} ff", r.key), r.ff_verified),
                        check(&format!("{} h2", r.key), r.h2 == r.betti.get(1).copied().unwrap_or(0)),
                    ]
                })
                .collect();
            Ok((json!({ "entries": rows }), checks))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogPair {
    #[serde(rename = "type")]
    pub ty: String,
    pub gamma: Vec<usize>,
    pub good: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub pairs: Vec<CatalogPair>,
}

impl CatalogPair {
    pub fn key(&self) -> String {
        let g: Vec<String> = self.gamma.iter().map(|i| i.to_string()).collect();
        format!("{}{{{}}}", self.ty, g.join(","))
    }

    pub fn levi(&self) -> Result<LeviDatum> {
        let rs = Arc::new(RootSystem::new(self.ty.parse()?)?);
        LeviDatum::new(rs, &self.gamma)
    }
}

pub fn builtin_catalog() -> Catalog {
    serde_json::from_str(CATALOG).expect("built-in catalog parses")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub key: String,
    pub dim_m: usize,
    pub betti: Vec<usize>,
    pub good: bool,
    pub expected_good: bool,
    pub ff_verified: bool,
    pub h2: usize,
    pub f0: Option<BTreeMap<String, String>>,
}

fn sweep_entry(p: &CatalogPair) -> Result<SweepRow> {
    let levi = p.levi()?;
    let k = q(1);
    let n = levi.complement().len();
    let primes = [2, 3, 5, 7, 11, 13, 17, 19];
    let seeds: Vec<Q> = (0..n).map(|i| q(primes[i % primes.len()])).collect();
    let sol = solve_ff_standard(&levi, &seeds, &k)?;
    let ff_verified = verify_ff(&levi, &sol.c, &k)?.holds;
    let h2 = h2_dim(&levi, &sol.c, &k)?;
    let verdict = classify_good_pair(levi.root_system(), &p.gamma)?;
    let f0 = if verdict.good { Some(good_bracket_family(&levi, &ones(&levi), &k)?.f0.to_json()) } else { None };
    log::info!("swept {}", p.key());
    Ok(SweepRow {
        key: p.key(),
        dim_m: levi.dim_m(),
        betti: betti_numbers(levi.root_system(), &p.gamma)?,
        good: verdict.good,
        expected_good: p.good,
        ff_verified,
        h2,
        f0,
    })
}

/// Parses arguments, runs, prints the report and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let req = match CommandRequest::try_parse_from(args) {
        Ok(r) => r,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&req) {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            match &req.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 1;
                    }
                }
                None => {
                    use std::io::Write;
                    let mut out = std::io::stdout().lock();
                    if writeln!(out, "{text}").is_err() {
                        return 1;
                    }
                }
            }
            if !report.passed() {
                eprintln!("warning: some verification checks failed");
            }
            if report.command == "good" && report.result["good"] == Value::Bool(false) {
                eprintln!("error: not a good pair");
                return 2;
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
