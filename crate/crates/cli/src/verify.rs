use qeulerian::identities::{verify_identity, IdentityError, IdentityId, VerificationReport};
use rayon::prelude::*;

use crate::{emit, CliError, Common, Format, PolicyArgs};

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    /// Identity ids, comma separated, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    id: Vec<String>,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(flatten)]
    common: Common,
    /// Record wall-clock time per report.
    #[arg(long)]
    timings: bool,
}

fn parse_ids(raw: &[String]) -> Result<Vec<IdentityId>, CliError> {
    let mut ids = Vec::new();
    for s in raw {
        if s == "all" {
            ids.extend(IdentityId::ALL);
        } else {
            ids.push(s.parse().map_err(|e: IdentityError| CliError::Usage(e.to_string()))?);
        }
    }
    ids.sort();
    ids.dedup();
    Ok(ids)
}

fn render(reports: &[VerificationReport], format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(reports.iter().map(|r| r.to_text() + "\n").collect()),
        Format::Json => Ok(reports.iter().map(|r| r.to_json() + "\n").collect()),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "n", "pass", "residual_degree", "elapsed_ms", "seed", "params"])
                .map_err(|e| CliError::Config(e.to_string()))?;
            for r in reports {
                let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
                let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
                w.write_record([
                    r.id.clone(),
                    r.n.to_string(),
                    r.pass.to_string(),
                    opt(r.residual_degree.map(|d| d as u64)),
                    opt(r.elapsed_ms),
                    r.seed.to_string(),
                    params.join(";"),
                ])
                .map_err(|e| CliError::Config(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Config(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

/// Returns whether every report passed.
pub fn run(args: &VerifyArgs) -> Result<bool, CliError> {
    let ids = parse_ids(&args.id)?;
    let policy = args.policy.policy();
    let jobs: Vec<(IdentityId, usize)> = ids
        .iter()
        .flat_map(|&id| (1..=args.policy.n_max).map(move |n| (id, n)))
        .collect();
    let results: Vec<Result<VerificationReport, IdentityError>> =
        jobs.par_iter().map(|&(id, n)| verify_identity(id, n, &policy)).collect();
    let mut reports = Vec::with_capacity(results.len());
    for ((id, n), result) in jobs.iter().zip(results) {
        match result {
            Ok(mut r) => {
                if !args.timings {
                    r.elapsed_ms = None;
                }
                reports.push(r);
            }
            Err(e) if e.is_configuration() => return Err(CliError::Config(e.to_string())),
            Err(e) => return Err(CliError::Config(format!("{} n={}: {}", id, n, e))),
        }
    }
    emit(&args.common, &render(&reports, args.common.format)?)?;
    let failures: Vec<&VerificationReport> = reports.iter().filter(|r| !r.pass).collect();
    for r in &failures {
        eprintln!("failed: {}", r.to_text());
    }
    Ok(failures.is_empty())
}
