use qeulerian::decomp::{basic_decomposition, bi_basic_decomposition, orbit_canonicalize, psi_x};
use qeulerian::permstats::{classic_stats, quadruple_stats, Boundary, Permutation, Sentinel};
use serde_json::json;

use crate::{emit, CliError, Common, Format};

#[derive(Debug, clap::Args)]
pub struct InspectArgs {
    /// One-line word such as `2164573`, or letters separated by spaces or commas.
    word: String,
    /// Also show the image under `ψ_x` for this letter.
    #[arg(long)]
    psi: Option<usize>,
    #[command(flatten)]
    common: Common,
}

fn boundary_label(b: Boundary) -> String {
    let s = |v: Sentinel| match v {
        Sentinel::Zero => "0",
        Sentinel::Infinity => "inf",
    };
    format!("({},{})", s(b.left), s(b.right))
}

pub fn run(args: &InspectArgs) -> Result<(), CliError> {
    let p: Permutation = args.word.parse().map_err(|e| CliError::Usage(format!("{}", e)))?;
    let psi = args
        .psi
        .map(|x| psi_x(&p, x).map_err(|e| CliError::Usage(e.to_string())))
        .transpose()?;
    let profile = classic_stats(&p);
    let basic = basic_decomposition(&p).to_string();
    let bi_basic = bi_basic_decomposition(&p).to_string();
    let canonical = orbit_canonicalize(&p);
    let body = match args.common.format {
        Format::Json => {
            let quadruples: Vec<_> = Boundary::ALL
                .iter()
                .map(|&b| json!({"boundary": boundary_label(b), "stats": quadruple_stats(&p, b)}))
                .collect();
            let mut v = json!({
                "permutation": p.to_string(),
                "profile": profile,
                "quadruples": quadruples,
                "basic": basic,
                "bi_basic": bi_basic,
                "orbit_representative": canonical.to_string(),
            });
            if let (Some(x), Some(img)) = (args.psi, &psi) {
                v["psi"] = json!({"letter": x, "image": img.to_string()});
            }
            v.to_string() + "\n"
        }
        Format::Text | Format::Csv => {
            let mut out = format!("permutation: {}\n", p);
            out += &format!(
                "n={} inv={} maj={} des={} asc={} exc={} cyc={} lma={} lmi={} rma={} rmi={}\n",
                profile.n,
                profile.inv,
                profile.maj,
                profile.des,
                profile.asc,
                profile.exc,
                profile.cyc,
                profile.lma,
                profile.lmi,
                profile.rma,
                profile.rmi
            );
            for b in Boundary::ALL {
                let q = quadruple_stats(&p, b);
                out += &format!(
                    "boundary {}: valleys={} peaks={} da={} dd={}\n",
                    boundary_label(b),
                    q.valleys,
                    q.peaks,
                    q.double_ascents,
                    q.double_descents
                );
            }
            out += &format!("basic: {}\n", basic);
            out += &format!("bi-basic: {}\n", bi_basic);
            out += &format!("orbit representative: {}\n", canonical);
            if let (Some(x), Some(img)) = (args.psi, &psi) {
                out += &format!("psi_{}: {} = {}\n", x, img, bi_basic_decomposition(img));
            }
            out
        }
    };
    emit(&args.common, &body)
}
