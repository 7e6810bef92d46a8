use qeulerian::identities::{euler_numbers, gamma_extract, lhs_family, Family, IdentityError};
use qeulerian::kernel::{ratio, MultiPoly, Var};
use serde_json::json;

use crate::{emit, CliError, Common, Format};

#[derive(Debug, clap::Args)]
pub struct TableArgs {
    /// A family name, `euler-numbers`, or `gamma`.
    #[arg(long)]
    family: String,
    #[arg(long = "n-max", alias = "n", default_value_t = 6)]
    n_max: usize,
    #[command(flatten)]
    common: Common,
}

enum Source {
    Family(Family),
    EulerNumbers,
    /// `sum_k gamma_{n,k}(alpha, beta) u2^k` for the Stirling-Eulerian polynomial at
    /// `alpha = beta = (alpha + beta) / 2`.
    Gamma,
}

impl Source {
    fn parse(s: &str) -> Result<Source, CliError> {
        match s {
            "euler-numbers" => Ok(Source::EulerNumbers),
            "gamma" => Ok(Source::Gamma),
            _ => s
                .parse()
                .map(Source::Family)
                .map_err(|e: IdentityError| CliError::Usage(e.to_string())),
        }
    }
}

fn config(e: IdentityError) -> CliError {
    CliError::Config(e.to_string())
}

fn rows(source: &Source, n_max: usize) -> Result<Vec<(usize, MultiPoly)>, CliError> {
    match source {
        Source::Family(f) => (1..=n_max)
            .map(|n| lhs_family(*f, n).map(|p| (n, (*p).clone())).map_err(config))
            .collect(),
        Source::EulerNumbers => Ok(euler_numbers(n_max)
            .map_err(config)?
            .into_iter()
            .enumerate()
            .map(|(n, e)| (n, MultiPoly::constant(e.into())))
            .collect()),
        Source::Gamma => (1..=n_max)
            .map(|n| {
                let a = lhs_family(Family::StirlingEulerian, n).map_err(config)?;
                let mean = (&MultiPoly::var(Var::Alpha) + &MultiPoly::var(Var::Beta)).scale(&ratio(1, 2));
                let h = a.substitute_many(&[(Var::Alpha, mean.clone()), (Var::Beta, mean)]);
                let gamma = gamma_extract(&h).map_err(config)?;
                Ok((n, MultiPoly::from_var_coeffs(Var::U2, &gamma)))
            })
            .collect(),
    }
}

fn render(name: &str, source: &Source, rows: &[(usize, MultiPoly)], format: Format) -> Result<String, CliError> {
    match (format, source) {
        (Format::Text, Source::EulerNumbers) => {
            let values: Vec<String> = rows.iter().map(|(_, p)| p.to_string()).collect();
            Ok(values.join(",") + "\n")
        }
        (Format::Text, _) => Ok(rows.iter().map(|(n, p)| format!("{}: {}\n", n, p)).collect()),
        (Format::Json, _) => Ok(rows
            .iter()
            .map(|(n, p)| {
                let terms: Vec<_> = p
                    .terms()
                    .iter()
                    .map(|(m, c)| json!({"exponents": m.exponents(), "coefficient": c.to_string()}))
                    .collect();
                json!({"family": name, "n": n, "polynomial": p.to_string(), "terms": terms}).to_string() + "\n"
            })
            .collect()),
        (Format::Csv, _) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["family".to_string(), "n".to_string()];
            header.extend(Var::ALL.iter().map(|v| v.name().to_string()));
            header.extend(["numerator".to_string(), "denominator".to_string()]);
            w.write_record(&header).map_err(|e| CliError::Config(e.to_string()))?;
            for (n, p) in rows {
                for (m, c) in p.terms() {
                    let mut record = vec![name.to_string(), n.to_string()];
                    record.extend(m.exponents().iter().map(|e| e.to_string()));
                    record.extend([c.numer().to_string(), c.denom().to_string()]);
                    w.write_record(&record).map_err(|e| CliError::Config(e.to_string()))?;
                }
            }
            let bytes = w.into_inner().map_err(|e| CliError::Config(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

pub fn run(args: &TableArgs) -> Result<(), CliError> {
    let source = Source::parse(&args.family)?;
    let rows = rows(&source, args.n_max)?;
    emit(&args.common, &render(&args.family, &source, &rows, args.common.format)?)
}
