use clap::{Parser, Subcommand, ValueEnum};
use deligne_cone::ExtClass;
use eichler_numerics::{brown_class, derive_e0, verify_brown_cusp};
use eisenstein_calculus::{class_json, compare_theorem, cup_g, cup_infinity, dim_s, external_cup};
use exact_core::{format_rational, Complex, Float};
use group_cochains::cocycle_space;
use serde_json::{json, Value};
use sl2_modules::{mod_im_n, nilpotent_matrix, weight_filtration, Basis, ModuleSpec};

use crate::{checks, CliError};

#[derive(Parser, Debug)]
#[command(name = "eis-cone", about = "Eisenstein cup products in the Deligne cone of SL2(Z)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Betti,
    DeRham,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Monodromy weight filtration of N on S^m H.
    WeightFiltration {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        center: i32,
        #[arg(long, value_enum, default_value_t = BasisArg::Betti)]
        basis: BasisArg,
    },
    /// Dimensions of Z^1, B^1, H^1 of SL2(Z) with coefficients in S^weight H.
    H1 {
        #[arg(long)]
        weight: u32,
    },
    /// Numeric derivation and exact certification of e0 for G_weight.
    E0 {
        #[arg(long)]
        weight: u32,
        #[arg(long, env = "EIS_CONE_PRECISION", default_value_t = checks::PRECISION)]
        precision: u32,
    },
    /// The corrected cup product G_{2j+2} ∪ G_{2k+2}.
    Cup {
        #[arg(long)]
        j: u32,
        #[arg(long)]
        k: u32,
        /// Clebsch-Gordan component; requires --numeric.
        #[arg(long)]
        r: Option<u32>,
        /// Evaluate the double integral and report H^1 coordinates.
        #[arg(long)]
        numeric: bool,
        #[arg(long, env = "EIS_CONE_PRECISION", default_value_t = checks::PRECISION)]
        precision: u32,
    },
    /// The cup product of the restrictions to the cusp.
    CupInfinity {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// The comparison of the cusp cup product with the partial projection.
    CompareTheorem {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// ζ(2m-1) times the Eisenstein cocycle of weight 2n+2.
    ExternalCup {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, env = "EIS_CONE_PRECISION", default_value_t = checks::PRECISION)]
        precision: u32,
    },
    /// Numeric check of the cuspidal projection against Λ(f, s).
    VerifyBrown {
        #[arg(long)]
        j: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, env = "EIS_CONE_PRECISION", default_value_t = checks::PRECISION)]
        precision: u32,
    },
    /// The exact invariant suite.
    Identities,
}

/// A report plus its verdict; `rows` is the tabular form, when there is one.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub value: Value,
    pub pass: bool,
    pub rows: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl Outcome {
    fn new(value: Value, pass: bool) -> Self {
        Outcome { value, pass, rows: None }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(self.value.to_string()),
            Format::Pretty => Ok(serde_json::to_string_pretty(&self.value).expect("serializable")),
            Format::Csv => {
                let (head, rows) = self.rows.as_ref().ok_or_else(|| CliError::Usage("--format csv: this command has no tabular output".into()))?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(head).map_err(|e| CliError::Failed(e.to_string()))?;
                for r in rows {
                    w.write_record(r).map_err(|e| CliError::Failed(e.to_string()))?;
                }
                Ok(String::from_utf8(w.into_inner().map_err(|e| CliError::Failed(e.to_string()))?).expect("utf8"))
            }
        }
    }
}

fn ext_json(e: &ExtClass) -> Value {
    json!({"twist": e.twist, "coords": e.coords})
}

fn float(f: &Float) -> String {
    f.to_string_radix(10, Some(25))
}

fn complex(c: &Complex) -> Value {
    json!({"re": float(&c.re), "im": float(&c.im)})
}

fn check_precision(p: u32) -> Result<(), CliError> {
    if p < 128 {
        return Err(CliError::Usage(format!("--precision {p}: need at least 128 bits")));
    }
    Ok(())
}

fn need(cond: bool, msg: &str) -> Result<(), CliError> {
    if cond { Ok(()) } else { Err(CliError::Usage(msg.into())) }
}

pub fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    match *cmd {
        Command::WeightFiltration { m, center, basis } => {
            let b = if basis == BasisArg::Betti { Basis::Betti } else { Basis::DeRham };
            let f = weight_filtration(&nilpotent_matrix(&ModuleSpec::sym(m), b), center).map_err(|e| CliError::Failed(e.to_string()))?;
            let jumps: Vec<Value> = f
                .jumps
                .iter()
                .map(|(k, basis)| {
                    let rows: Vec<Vec<String>> = basis.iter().map(|v| v.iter().map(format_rational).collect()).collect();
                    json!({"index": k, "dim": basis.len(), "basis": rows})
                })
                .collect();
            let rows = f.jumps.iter().map(|(k, b)| vec![k.to_string(), b.len().to_string()]).collect();
            Ok(Outcome {
                value: json!({"m": m, "center": center, "dim": f.dim, "jumps": jumps}),
                pass: true,
                rows: Some((vec!["index".into(), "dim".into()], rows)),
            })
        }
        Command::H1 { weight } => {
            let space = cocycle_space(&ModuleSpec::sym(weight));
            let predicted = if weight % 2 == 0 && weight > 0 { 2 * dim_s(weight + 2)? + 1 } else { 0 };
            let h1 = space.h1.len();
            let value = json!({
                "module": format!("S^{weight} H"),
                "dims": {"Z1": space.z1.len(), "B1": space.b1.len(), "H1": h1},
                "eichler_shimura": predicted,
            });
            Ok(Outcome::new(value, h1 == predicted))
        }
        Command::E0 { weight, precision } => {
            check_precision(precision)?;
            let d = derive_e0(weight, precision)?;
            let e0_t: Vec<String> = d.cocycle.e0_t.coords.iter().map(|c| c.as_rational().map(|r| format_rational(&r)).unwrap_or_default()).collect();
            let value = json!({
                "weight": weight,
                "e0_S": d.e0_s.iter().map(format_rational).collect::<Vec<_>>(),
                "e0_T": e0_t,
                "certificate": d.certificate.to_json(),
            });
            Ok(Outcome::new(value, d.certificate.passes()))
        }
        Command::Cup { j, k, r, numeric, precision } => {
            check_precision(precision)?;
            need(k > 0 && j >= k, "--j, --k: need j ≥ k > 0")?;
            need(r.is_none() || numeric, "--r needs --numeric")?;
            let z1 = derive_e0(2 * j + 2, precision)?.cocycle;
            let z2 = derive_e0(2 * k + 2, precision)?.cocycle;
            let g = cup_g(&z1, &z2)?;
            let (zv, real, exp) = (g.z_slot_vanishes(), g.c_is_real(), g.check_expansion(&z1, &z2));
            let mut value = json!({
                "j": j, "k": k,
                "E": g.e.describe(),
                "real_representative": g.real_representative.describe(),
                "z_slot_vanishes": zv, "c_is_real": real, "expansion": exp,
            });
            if numeric {
                let r = r.unwrap_or(0);
                need(r <= 2 * k, "--r: need r ≤ 2k")?;
                let weight = 2 * (j + k) - 2 * r + 2;
                let target = derive_e0(weight, precision)?.cocycle;
                let i = Complex::i(precision + exact_core::GUARD_BITS);
                let c = brown_class(&z1, &z2, &target, r, precision, &i)?;
                let cusp: Vec<Value> = c.coordinates.cusp.iter().map(|(p, m)| json!({"plus": complex(p), "minus": complex(m)})).collect();
                value["numeric"] = json!({"r": r, "weight": weight, "eisenstein": complex(&c.coordinates.eis), "cusp": cusp});
            }
            Ok(Outcome::new(value, zv && real && exp))
        }
        Command::CupInfinity { n, m } => {
            let c = cup_infinity(n, m)?;
            let display = c.c == c.c_display;
            let mut vanishing = true;
            let comps: Vec<Value> = c
                .components
                .iter()
                .map(|(r, cls)| {
                    vanishing &= cls.is_zero() == (*r < 2 * m - 2);
                    json!({"r": r, "class": ext_json(cls)})
                })
                .collect();
            let value = json!({
                "n": n, "m": m,
                "C": class_json(&mod_im_n(&c.c)),
                "C_prime": class_json(&mod_im_n(&c.c_prime)),
                "matches_display": display,
                "components": comps,
            });
            Ok(Outcome::new(value, display && vanishing))
        }
        Command::CompareTheorem { n, m } => {
            let r = compare_theorem(n, m).map_err(|e| match e {
                eisenstein_calculus::EisError::Mismatch { .. } => CliError::Failed(e.to_string()),
                other => other.into(),
            })?;
            Ok(Outcome::new(r.to_json(), r.equal))
        }
        Command::ExternalCup { m, n, precision } => {
            check_precision(precision)?;
            need(n > 0, "--n: need n > 0")?;
            let z = derive_e0(2 * n + 2, precision)?.cocycle;
            let e = external_cup(m, &z)?;
            let eis_ok = e.eisenstein.coords == vec![exact_core::PeriodScalar::zeta(2 * m - 1)];
            let cusp_ok = e.cusp.as_ref().is_some_and(|c| c.is_zero());
            let value = json!({
                "m": m, "n": n,
                "lambda": e.lambda,
                "eisenstein": ext_json(&e.eisenstein),
                "cusp": e.cusp.as_ref().map(ext_json),
            });
            Ok(Outcome::new(value, eis_ok && cusp_ok))
        }
        Command::VerifyBrown { j, k, r, precision } => {
            check_precision(precision)?;
            let rep = verify_brown_cusp(j, k, r, precision)?;
            Ok(Outcome::new(rep.to_json(), rep.pass))
        }
        Command::Identities => {
            let list = checks::exact_suite();
            let pass = list.iter().all(|c| c.pass);
            let rows = list.iter().map(|c| vec![c.id.to_string(), c.name.into(), c.pass.to_string(), c.detail.clone()]).collect();
            Ok(Outcome {
                value: json!({"pass": pass, "checks": list.iter().map(checks::Check::to_json).collect::<Vec<_>>()}),
                pass,
                rows: Some((vec!["criterion".into(), "name".into(), "pass".into(), "detail".into()], rows)),
            })
        }
    }
}
