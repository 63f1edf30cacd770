//! Command-line front end: JSON job files in, a JSON report plus a short
//! human summary out, with a deterministic exit-code contract:
//!
//! * `0` — verified / affirmative
//! * `1` — verified negative (non-separated, not cohomologous, broken
//!   derivation, failed recheck)
//! * `2` — inconclusive (iteration or degree caps exhausted)
//! * `3` — input error
//!
//! Reports are byte-reproducible except for the `timestamp` field, and
//! always carry the convention block (sign conventions, weights, caps).

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cancel::{self, Caps, IsoOutcome};
use crate::cocycle::{
    affineness, pole_signature, second_fibration, sigma_cocycle, Affineness, BaseScheme,
};
use crate::error::{Error, Result};
use crate::json::{CocycleRecord, DerivationRecord, HypersurfaceRecord};
use crate::lnd::{action_axioms_check, canonical_derivation, certify_nilpotent, CertOutcome};
use crate::ml::{degree_inequality_check, graded_derivation, ml_upper_bound};
use crate::poly::Weights;
use crate::ring::Hypersurface;

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "danvar",
    about = "Exact toolkit for Danielewski varieties: cocycles, additive actions, cancellation certificates",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a cocycle defines an affine total space.
    CheckCocycle { file: PathBuf },
    /// Validate a hypersurface record and derive its bundle data.
    BuildVariety { file: PathBuf },
    /// Verify a derivation: ideal preservation, nilpotency, action axioms.
    LndVerify {
        file: PathBuf,
        #[arg(long, default_value_t = 64)]
        nilpotency_cap: u32,
    },
    /// Truncated upper bound for the invariant subring from a catalog.
    MlBound {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        degree_cap: i64,
        /// JSON list of derivation records added to the canonical one.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Build the graded derivation and check the degree inequality.
    GrCheck {
        file: PathBuf,
        /// Comma-separated positive weights: d_x1,..,d_xn,d_y.
        #[arg(long)]
        weights: String,
    },
    /// Emit a verified cylinder-isomorphism certificate.
    CancelCertificate {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        t_cap: Option<i64>,
        #[arg(long)]
        x_cap: Option<i64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-verify a certificate from its serialized form alone.
    Recheck { cert: PathBuf },
}

#[derive(Serialize)]
struct Report {
    command: String,
    verdict: String,
    details: Value,
    conventions: Value,
    timestamp: u64,
}

fn conventions_block(extra: Value) -> Value {
    let mut base = json!({
        "transition": "t_i = t_j + g_ij(x)",
        "coboundary": "(delta h)_ij = h_i - h_j",
        "sigma_cocycle": "g_ij = x^[-m] (sigma_j - sigma_i)",
        "chart_coordinate": "t_i = (y - sigma_i(x)) / x^[m]",
        "sheet_indexing": "1-based",
        "exit_codes": "0 verified, 1 verified-negative, 2 inconclusive, 3 input error",
    });
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        for (k, v) in e {
            b.insert(k, v);
        }
    }
    base
}

fn emit(report: &Report, summary: &str) {
    println!("danvar {}: {}", report.command, summary);
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("report serializes")
    );
}

fn now() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Deserialize)]
struct DerivationJob {
    hypersurface: HypersurfaceRecord,
    #[serde(default)]
    derivation: Option<DerivationRecord>,
}

/// Entry point used by the binary.
pub fn run_main() -> i32 {
    let cli = Cli::parse();
    run(cli)
}

pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            let report = Report {
                command: "error".into(),
                verdict: "input-error".into(),
                details: json!({ "error": err.to_string() }),
                conventions: conventions_block(json!({})),
                timestamp: now(),
            };
            emit(&report, &format!("input error: {err}"));
            EXIT_INPUT_ERROR
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::CheckCocycle { file } => check_cocycle(&file),
        Command::BuildVariety { file } => build_variety(&file),
        Command::LndVerify {
            file,
            nilpotency_cap,
        } => lnd_verify(&file, nilpotency_cap),
        Command::MlBound {
            file,
            degree_cap,
            catalog,
        } => ml_bound(&file, degree_cap, catalog.as_deref()),
        Command::GrCheck { file, weights } => gr_check(&file, &weights),
        Command::CancelCertificate {
            source,
            target,
            t_cap,
            x_cap,
            output,
        } => cancel_certificate(&source, &target, t_cap, x_cap, output.as_deref()),
        Command::Recheck { cert } => recheck_cmd(&cert),
    }
}

fn check_cocycle(file: &Path) -> Result<i32> {
    let record: CocycleRecord = read_json(file)?;
    let cocycle = record.to_cocycle()?;
    match affineness(&cocycle) {
        Affineness::Affine(data) => {
            let signature = pole_signature(&cocycle)?;
            let chain: Vec<Value> = data
                .chain
                .iter()
                .map(|(sheet, m)| json!({ "sheet": sheet + 1, "m_1i": m }))
                .collect();
            let report = Report {
                command: "check-cocycle".into(),
                verdict: "affine".into(),
                details: json!({
                    "pole_signature": signature.to_string(),
                    "first_row_chain": chain,
                    "chain_totally_ordered": true,
                }),
                conventions: conventions_block(json!({})),
                timestamp: now(),
            };
            emit(&report, "affine");
            Ok(EXIT_VERIFIED)
        }
        Affineness::NotSeparated(witness) => {
            let report = Report {
                command: "check-cocycle".into(),
                verdict: "not-separated".into(),
                details: json!({ "witness": witness.to_string() }),
                conventions: conventions_block(json!({})),
                timestamp: now(),
            };
            emit(&report, &format!("not separated ({witness})"));
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn build_variety(file: &Path) -> Result<i32> {
    let record: HypersurfaceRecord = read_json(file)?;
    let h = record.to_hypersurface()?;
    let fiber = h.special_fiber()?;
    let mut details = json!({
        "n": h.n(),
        "m": h.m(),
        "r": h.r(),
        "special_fiber": {
            "reduced_components": fiber.reduced_degree,
            "factors": fiber
                .factors
                .iter()
                .map(|(f, mult)| format!("({f})^{mult}"))
                .collect::<Vec<_>>(),
        },
        "canonical_derivation": DerivationRecord::from_derivation(&canonical_derivation(&h)),
    });
    if h.sigma().is_some() {
        let base = BaseScheme::new(h.n(), h.r() as usize)?;
        let cocycle = sigma_cocycle(base, h.sigma().unwrap(), h.m())?;
        let verdict = affineness(&cocycle);
        let obj = details.as_object_mut().unwrap();
        obj.insert(
            "cocycle".into(),
            serde_json::to_value(CocycleRecord::from_cocycle(&cocycle))?,
        );
        obj.insert("affine".into(), json!(verdict.is_affine()));
        if verdict.is_affine() {
            obj.insert(
                "pole_signature".into(),
                json!(pole_signature(&cocycle)?.to_string()),
            );
        }
        let fib = second_fibration(&h)?;
        obj.insert(
            "second_fibration".into(),
            match fib {
                Some(f) => json!({
                    "unit_exponent_index": f.dropped + 1,
                    "base_coordinates": f.base_coords,
                    "derivation": f.derivation.map(|d| DerivationRecord::from_derivation(&d)),
                }),
                None => Value::Null,
            },
        );
    }
    let report = Report {
        command: "build-variety".into(),
        verdict: "valid".into(),
        details,
        conventions: conventions_block(json!({})),
        timestamp: now(),
    };
    emit(&report, &format!("valid hypersurface with r = {}", h.r()));
    Ok(EXIT_VERIFIED)
}

fn job_derivation(
    job: &DerivationJob,
) -> Result<(
    Arc<Hypersurface>,
    std::result::Result<crate::lnd::Derivation, Error>,
)> {
    let h = job.hypersurface.to_hypersurface()?;
    let derivation = match &job.derivation {
        Some(rec) => rec.to_derivation(&h),
        None => Ok(canonical_derivation(&h)),
    };
    Ok((h, derivation))
}

fn lnd_verify(file: &Path, nilpotency_cap: u32) -> Result<i32> {
    let job: DerivationJob = read_json(file)?;
    let (_h, derivation) = job_derivation(&job)?;
    let d = match derivation {
        Ok(d) => d,
        Err(Error::IdealNotPreserved(msg)) => {
            let report = Report {
                command: "lnd-verify".into(),
                verdict: "ideal-not-preserved".into(),
                details: json!({ "witness": msg }),
                conventions: conventions_block(json!({ "nilpotency_cap": nilpotency_cap })),
                timestamp: now(),
            };
            emit(&report, "derivation does not preserve the defining ideal");
            return Ok(EXIT_NEGATIVE);
        }
        Err(e) => return Err(e),
    };
    let cert = match certify_nilpotent(&d, nilpotency_cap) {
        CertOutcome::Certified(c) => c,
        CertOutcome::Inconclusive { var, cap } => {
            let report = Report {
                command: "lnd-verify".into(),
                verdict: "inconclusive".into(),
                details: json!({
                    "reason": format!("iteration cap {cap} hit on generator {}", var.name()),
                }),
                conventions: conventions_block(json!({ "nilpotency_cap": nilpotency_cap })),
                timestamp: now(),
            };
            emit(&report, "nilpotency certification inconclusive");
            return Ok(EXIT_INCONCLUSIVE);
        }
    };
    let axioms = match action_axioms_check(&d, 6, 0, nilpotency_cap) {
        Ok(report) => report,
        Err(Error::AxiomFailure(msg)) => {
            let report = Report {
                command: "lnd-verify".into(),
                verdict: "axiom-failure".into(),
                details: json!({ "witness": msg }),
                conventions: conventions_block(json!({ "nilpotency_cap": nilpotency_cap })),
                timestamp: now(),
            };
            emit(&report, "action axiom failed");
            return Ok(EXIT_NEGATIVE);
        }
        Err(Error::IterationCap { cap, what }) => {
            let report = Report {
                command: "lnd-verify".into(),
                verdict: "inconclusive".into(),
                details: json!({ "reason": format!("iteration cap {cap} hit on {what}") }),
                conventions: conventions_block(json!({ "nilpotency_cap": nilpotency_cap })),
                timestamp: now(),
            };
            emit(&report, "inconclusive");
            return Ok(EXIT_INCONCLUSIVE);
        }
        Err(e) => return Err(e),
    };
    let chains: Vec<Value> = cert
        .per_generator
        .iter()
        .map(|(v, k)| json!({ "generator": v.name(), "chain_length": k }))
        .collect();
    let report = Report {
        command: "lnd-verify".into(),
        verdict: "verified".into(),
        details: json!({
            "nilpotency_bound": cert.bound,
            "generator_chains": chains,
            "action_axioms": axioms.checks,
        }),
        conventions: conventions_block(json!({ "nilpotency_cap": nilpotency_cap })),
        timestamp: now(),
    };
    emit(&report, "locally nilpotent, action axioms verified");
    Ok(EXIT_VERIFIED)
}

fn ml_bound(file: &Path, degree_cap: i64, catalog_path: Option<&Path>) -> Result<i32> {
    let record: HypersurfaceRecord = read_json(file)?;
    let h = record.to_hypersurface()?;
    let mut catalog = vec![canonical_derivation(&h)];
    if let Some(path) = catalog_path {
        let records: Vec<DerivationRecord> = read_json(path)?;
        for rec in &records {
            catalog.push(rec.to_derivation(&h)?);
        }
    }
    let basis = ml_upper_bound(&h, &catalog, degree_cap)?;
    let strings: Vec<String> = basis.iter().map(|e| e.to_string()).collect();
    let report = Report {
        command: "ml-bound".into(),
        verdict: "bound-computed".into(),
        details: json!({
            "degree_cap": degree_cap,
            "catalog_size": catalog.len(),
            "basis": strings,
            "note": "truncated upper bound for the invariant subring, not the invariant itself",
        }),
        conventions: conventions_block(json!({ "degree_cap": degree_cap })),
        timestamp: now(),
    };
    emit(&report, &format!("bound of dimension {}", basis.len()));
    Ok(EXIT_VERIFIED)
}

fn gr_check(file: &Path, weights: &str) -> Result<i32> {
    let job: DerivationJob = read_json(file)?;
    let (h, derivation) = job_derivation(&job)?;
    let d = derivation?;
    let parts: Vec<i64> = weights
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidJob(format!("cannot parse weights '{weights}'")))?;
    if parts.len() != h.n() + 1 {
        return Err(Error::InvalidJob(format!(
            "expected {} weights (d_x.., d_y), got {}",
            h.n() + 1,
            parts.len()
        )));
    }
    let seed = Weights::new(parts[..h.n()].to_vec(), parts[h.n()])?;
    let gd = graded_derivation(&d, &seed)?;
    let inequality = match degree_inequality_check(&d, &gd, 100, 4, 0, 64) {
        Ok(rep) => rep,
        Err(Error::IterationCap { cap, what }) => {
            let report = Report {
                command: "gr-check".into(),
                verdict: "inconclusive".into(),
                details: json!({ "reason": format!("iteration cap {cap} hit on {what}") }),
                conventions: conventions_block(json!({ "weights": weights })),
                timestamp: now(),
            };
            emit(&report, "inconclusive");
            return Ok(EXIT_INCONCLUSIVE);
        }
        Err(e) => return Err(e),
    };
    let w = gd.hr().weights();
    let report = Report {
        command: "gr-check".into(),
        verdict: "verified".into(),
        details: json!({
            "weights_used": { "d_x": w.d_x, "d_y": w.d_y, "d_z": w.d_z },
            "t0": gd.t0(),
            "graded_derivation": DerivationRecord::from_derivation(gd.derivation()),
            "relation_preserved": true,
            "degree_inequality_samples": inequality.checked,
            "sample_lines": inequality.lines,
        }),
        conventions: conventions_block(json!({ "weights": weights })),
        timestamp: now(),
    };
    emit(
        &report,
        &format!(
            "t0 = {}, inequality holds on {} samples",
            gd.t0(),
            inequality.checked
        ),
    );
    Ok(EXIT_VERIFIED)
}

fn cancel_certificate(
    source: &Path,
    target: &Path,
    t_cap: Option<i64>,
    x_cap: Option<i64>,
    output: Option<&Path>,
) -> Result<i32> {
    let src: HypersurfaceRecord = read_json(source)?;
    let tgt: HypersurfaceRecord = read_json(target)?;
    let x = src.to_hypersurface()?;
    let xp = tgt.to_hypersurface()?;
    let defaults = cancel::default_caps(&x, &xp);
    let caps = Caps {
        t_cap: t_cap.unwrap_or(defaults.t_cap),
        x_cap: x_cap.unwrap_or(defaults.x_cap),
    };
    match cancel::build_iso(&x, &xp, Some(caps))? {
        IsoOutcome::Certificate(cert) => {
            let cert_json = serde_json::to_string_pretty(&*cert)?;
            if let Some(path) = output {
                std::fs::write(path, &cert_json)?;
            }
            let report = Report {
                command: "cancel-certificate".into(),
                verdict: "certificate-verified".into(),
                details: json!({
                    "identities_verified": cert.transcript.len(),
                    "ambient_form": cert.ambient.is_some(),
                    "output": output.map(|p| p.display().to_string()),
                }),
                conventions: conventions_block(json!({
                    "caps": { "t_cap": caps.t_cap, "x_cap": caps.x_cap },
                })),
                timestamp: now(),
            };
            emit(&report, "certificate built and verified");
            if output.is_none() {
                println!("{cert_json}");
            }
            Ok(EXIT_VERIFIED)
        }
        IsoOutcome::Inconclusive { caps, detail } => {
            let report = Report {
                command: "cancel-certificate".into(),
                verdict: "inconclusive".into(),
                details: json!({ "detail": detail }),
                conventions: conventions_block(json!({
                    "caps": { "t_cap": caps.t_cap, "x_cap": caps.x_cap },
                })),
                timestamp: now(),
            };
            emit(&report, "caps exhausted");
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

fn recheck_cmd(cert_path: &Path) -> Result<i32> {
    let cert: cancel::IsoCertificate = read_json(cert_path)?;
    let outcome = cancel::recheck(&cert)?;
    if outcome.ok {
        let report = Report {
            command: "recheck".into(),
            verdict: "verified".into(),
            details: json!({ "identities": cert.transcript.len() }),
            conventions: conventions_block(json!({
                "caps": { "t_cap": cert.conventions.caps.t_cap, "x_cap": cert.conventions.caps.x_cap },
            })),
            timestamp: now(),
        };
        emit(&report, "certificate verified");
        Ok(EXIT_VERIFIED)
    } else {
        let report = Report {
            command: "recheck".into(),
            verdict: "failed".into(),
            details: json!({ "failures": outcome.failures }),
            conventions: conventions_block(json!({})),
            timestamp: now(),
        };
        emit(&report, "certificate FAILED verification");
        Ok(EXIT_NEGATIVE)
    }
}
