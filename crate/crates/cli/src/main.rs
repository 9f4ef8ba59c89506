use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use heptalift::census::{beta_from_census, census_f2, expected_rank1_count, sample_f3, spot_check_f2};
use heptalift::density::{alpha_p, beta_p, c_zeta_product, igusa_verify, mass, DensityConstants};
use heptalift::exactnum::Symbol;
use heptalift::exactnum::{rational_from_string, rational_to_string};
use heptalift::genfun::{euler_shape_check, gamma_k, gamma_k_derived, hp_verify};
use heptalift::jordan::JordanJson;
use heptalift::lift::{fourier_coeff, lift_table, local_l_factors, EigenData};
use heptalift::lvalue::{period, rationality_probe_perturbed, MAX_DIGITS};
use heptalift::padic::{elementary_divisors, genus_invariants};
use heptalift::siegel::{f_poly, f_poly_oracle, symmetric_coefficients, tilde_f};
use heptalift::util::{factorize, is_prime, with_threads};
use heptalift::{Error, JordanElement, SpecialValue};

#[derive(Parser)]
#[command(
    name = "heptalift",
    version,
    about = "Exact arithmetic on the exceptional Jordan algebra and its Ikeda-type lift"
)]
struct Cli {
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, env = "HEPTALIFT_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct InputArg {
    /// Jordan element as JSON (`-` for stdin).
    #[arg(long)]
    input: String,
}

#[derive(Args)]
struct EigenArg {
    /// `builtin`, `tau`, or a CSV file with header `p,a_p`.
    #[arg(long, default_value = "builtin")]
    eigen: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Elementary divisors at one prime, or the full genus.
    Reduce {
        #[arg(long)]
        prime: Option<u64>,
        /// Work modulo p^N (default: just above ord_p det).
        #[arg(long)]
        precision: Option<u32>,
        #[command(flatten)]
        input: InputArg,
    },
    /// Local Siegel series polynomial f(X).
    Siegel {
        #[arg(long)]
        prime: u64,
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u32))]
        m: Vec<u32>,
        /// Evaluate at `X=r` with r rational.
        #[arg(long)]
        eval: Option<String>,
        /// Also print the palindromic normalization.
        #[arg(long)]
        tilde: bool,
    },
    /// Local densities β_p and α_p for given exponents.
    Density {
        #[arg(long)]
        prime: u64,
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u32))]
        divisors: Vec<u32>,
    },
    /// Mass of the genus of a positive element.
    Mass {
        #[command(flatten)]
        input: InputArg,
    },
    /// Check the local Igusa zeta identity through u^order.
    IgusaVerify {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Check the closed form of H_p through t^tmax.
    HpVerify {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 10)]
        tmax: usize,
        /// Also run the 64-term symmetrized route.
        #[arg(long)]
        sixty_four: bool,
    },
    /// The rational constant of the period formula.
    GammaK {
        #[arg(long)]
        k: u32,
        /// Also rederive it from the residue identity.
        #[arg(long)]
        derived: bool,
    },
    /// One Fourier coefficient of the lift.
    LiftCoeff {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        eigen: EigenArg,
        #[command(flatten)]
        input: InputArg,
    },
    /// Coefficients for every local type with det ≤ max-det.
    LiftTable {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        max_det: u64,
        #[command(flatten)]
        eigen: EigenArg,
    },
    /// Euler-factor shape of H_p and the local L-factors at p.
    RsEuler {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 10)]
        k: u32,
        #[command(flatten)]
        eigen: EigenArg,
    },
    /// Numerical value of ⟨F, F⟩ with an error bound.
    Period {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 20)]
        digits: u32,
        #[command(flatten)]
        eigen: EigenArg,
    },
    /// Rational reconstruction of L(5)/L(1) and L(9)/L(1) against π powers.
    Probe {
        #[arg(long)]
        k: u32,
        #[arg(long, value_delimiter = ',', default_value = "20,30")]
        digits: Vec<u32>,
        /// Multiply L(1) by e^perturb (negative control).
        #[arg(long, default_value_t = 0.0)]
        perturb: f64,
        #[command(flatten)]
        eigen: EigenArg,
    },
    /// Rank census of J(F_2), or a sampled nonsingular density for J(F_3).
    Census {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run the acceptance checks.
    Selftest {
        #[arg(long)]
        only: Option<u32>,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
    Assertion(String, Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Domain(_) | Error::NonPositive => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Out = Result<Value, Failure>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn need_prime(p: u64) -> Result<(), Failure> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(usage(format!("{p} is not prime")))
    }
}

fn read_element(path: &str) -> Result<JordanElement<BigInt>, Failure> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
    }
    let j: JordanJson = serde_json::from_str(&s).map_err(|e| usage(format!("malformed element: {e}")))?;
    Ok(JordanElement::from(&j))
}

fn load_eigen(k: u32, src: &str, pmax: u64) -> Result<EigenData, Failure> {
    match src {
        "builtin" => Ok(EigenData::builtin(k, pmax)?),
        "tau" if k == 10 => Ok(EigenData::builtin(10, pmax)?),
        "tau" => Err(usage(format!("`tau` is the weight-12 form; it needs k = 10, got {k}"))),
        path => Ok(EigenData::from_csv(k, std::path::Path::new(path))?),
    }
}

fn genus_json(t: &JordanElement<BigInt>) -> Result<Value, Failure> {
    let g = genus_invariants(t)?;
    Ok(to_value(&g.iter().map(|(p, d)| (p.to_string(), d.a)).collect::<BTreeMap<_, _>>()))
}

fn triple(v: &[u32], name: &str) -> Result<[u32; 3], Failure> {
    <[u32; 3]>::try_from(v).map_err(|_| usage(format!("{name} expects three comma-separated integers")))
}

fn largest_prime(n: &BigInt) -> Result<u64, Failure> {
    Ok(factorize(n)?.keys().next_back().copied().unwrap_or(2).max(2))
}

fn run(cmd: Cmd, threads: usize) -> Out {
    match cmd {
        Cmd::Reduce { prime, precision, input } => {
            let t = read_element(&input.input)?;
            match prime {
                Some(p) => {
                    need_prime(p)?;
                    let d = elementary_divisors(&t, p, precision)?;
                    Ok(json!({ "p": p, "divisors": d.a }))
                }
                None => Ok(json!({ "det": t.det().to_string(), "genus": genus_json(&t)? })),
            }
        }
        Cmd::Siegel { prime, m, eval, tilde } => {
            need_prime(prime)?;
            let m = triple(&m, "--m")?;
            let s = f_poly(prime, m)?;
            if f_poly_oracle(prime, m)? != s {
                return Err(Failure::Assertion("eight-term form disagrees with the recursion".into(), to_value(&s)));
            }
            let mut v = to_value(&s);
            if let Some(e) = eval {
                let r = e
                    .strip_prefix("X=")
                    .and_then(rational_from_string)
                    .ok_or_else(|| usage(format!("--eval expects X=r, got `{e}`")))?;
                let y = s.poly.eval_rational(&r).ok_or_else(|| usage("cannot evaluate at X = 0"))?;
                v["eval"] = json!({ "x": rational_to_string(&r), "value": rational_to_string(&y) });
            }
            if tilde {
                let t = tilde_f(&s);
                let cs = symmetric_coefficients(&t, s.ord())?;
                v["tilde"] = cs.iter().map(|(e, c)| json!({ "power": e, "coeff": c.to_string() })).collect();
            }
            Ok(v)
        }
        Cmd::Density { prime, divisors } => {
            need_prime(prime)?;
            let d = heptalift::ElemDivisors::new(prime, triple(&divisors, "--divisors")?);
            Ok(json!({
                "p": prime,
                "divisors": d.a,
                "beta": rational_to_string(&beta_p(&d)),
                "alpha": rational_to_string(&alpha_p(&d)),
            }))
        }
        Cmd::Mass { input } => {
            let t = read_element(&input.input)?;
            let m = mass(&t)?;
            let g = genus_invariants(&t)?;
            let local: BTreeMap<String, String> = g
                .iter()
                .map(|(p, d)| (p.to_string(), rational_to_string(&(DensityConstants::new(*p).c1 / beta_p(d)))))
                .collect();
            Ok(json!({
                "det": t.det().to_string(),
                "genus": genus_json(&t)?,
                "unramified_constant": rational_to_string(&c_zeta_product()),
                "local_ratios": local,
                "mass": rational_to_string(&m),
            }))
        }
        Cmd::IgusaVerify { prime, order } => {
            need_prime(prime)?;
            let r = igusa_verify(prime, order)?;
            if r.ok {
                Ok(to_value(&r))
            } else {
                Err(Failure::Assertion("Igusa series mismatch".into(), to_value(&r)))
            }
        }
        Cmd::HpVerify { prime, tmax, sixty_four } => {
            need_prime(prime)?;
            let r = with_threads(threads, || hp_verify(prime, tmax, sixty_four))?;
            if r.ok {
                Ok(to_value(&r))
            } else {
                Err(Failure::Assertion("H_p closed form mismatch".into(), to_value(&r)))
            }
        }
        Cmd::GammaK { k, derived } => {
            if k < 10 {
                return Err(usage(format!("k must be at least 10, got {k}")));
            }
            let g = gamma_k(k);
            let sv = SpecialValue::rational(g.clone())
                .mul(&SpecialValue::pi_half(-2 * (6 * i64::from(k) + 3)))
                .mul(&SpecialValue::symbol(Symbol::SymSq(1), 1))
                .mul(&SpecialValue::symbol(Symbol::SymSq(5), 1))
                .mul(&SpecialValue::symbol(Symbol::SymSq(9), 1));
            let mut v = json!({
                "k": k,
                "gamma_k": rational_to_string(&g),
                "pi_power": -(6 * i64::from(k) + 3),
                "period": sv,
                "period_text": sv.to_string(),
            });
            if derived {
                let d = gamma_k_derived(k)?;
                v["derived"] = json!(rational_to_string(&d));
                v["agrees"] = json!(d == g);
                if d != g {
                    return Err(Failure::Assertion("residue algebra gives a different γ_k".into(), v));
                }
            }
            Ok(v)
        }
        Cmd::LiftCoeff { k, eigen, input } => {
            let t = read_element(&input.input)?;
            if !t.is_positive() {
                return Err(usage("element is not positive definite"));
            }
            let det = t.det();
            let e = load_eigen(k, &eigen.eigen, largest_prime(&det)?)?;
            let a = with_threads(threads, || fourier_coeff(&t, &e))?;
            Ok(json!({ "k": k, "det": det.to_string(), "divisors": genus_json(&t)?, "coefficient": a.to_string() }))
        }
        Cmd::LiftTable { k, max_det, eigen } => {
            if max_det == 0 {
                return Err(usage("--max-det must be positive"));
            }
            let e = load_eigen(k, &eigen.eigen, max_det.max(2))?;
            let rows = with_threads(threads, || lift_table(&e, max_det))?;
            Ok(json!({ "k": k, "max_det": max_det, "rows": rows }))
        }
        Cmd::RsEuler { prime, k, eigen } => {
            need_prime(prime)?;
            let e = load_eigen(k, &eigen.eigen, prime.max(2))?;
            let lf = local_l_factors(prime, e.a_p(prime)?, k);
            let shape = euler_shape_check(prime);
            let v = json!({
                "p": prime,
                "k": k,
                "a_p": e.a_p(prime)?.to_string(),
                "euler_shape_check": shape,
                "std56_degree": lf.std56_degree(),
                "local_factors": lf,
            });
            if shape {
                Ok(v)
            } else {
                Err(Failure::Assertion("H_p is not of Euler-factor shape".into(), v))
            }
        }
        Cmd::Period { k, digits, eigen } => {
            check_digits(&[digits])?;
            let e = load_eigen(k, &eigen.eigen, 4000)?;
            let r = with_threads(threads, || period(k, &e, digits))?;
            Ok(to_value(&r.to_json()))
        }
        Cmd::Probe { k, digits, perturb, eigen } => {
            check_digits(&digits)?;
            let e = load_eigen(k, &eigen.eigen, 4000)?;
            let r = with_threads(threads, || rationality_probe_perturbed(&e, &digits, perturb))?;
            Ok(to_value(&r))
        }
        Cmd::Census { prime, samples, seed } => census(prime, samples, seed, threads),
        Cmd::Selftest { only } => {
            let results = match only {
                Some(id) => vec![heptalift::selftest::run_one(id, threads)
                    .ok_or_else(|| usage(format!("no acceptance criterion {id}")))?],
                None => heptalift::selftest::run_all(threads),
            };
            for r in &results {
                eprintln!("{}", r.line());
            }
            let passed = results.iter().filter(|r| r.pass).count();
            let v = json!({ "passed": passed, "total": results.len(), "results": results });
            if passed == results.len() {
                Ok(v)
            } else {
                Err(Failure::Assertion(format!("{} of {} criteria failed", results.len() - passed, results.len()), v))
            }
        }
    }
}

fn check_digits(ds: &[u32]) -> Result<(), Failure> {
    match ds.iter().find(|&&d| d == 0 || d > MAX_DIGITS) {
        Some(d) => Err(usage(format!("digits must be in 1..={MAX_DIGITS}, got {d}"))),
        None if ds.is_empty() => Err(usage("no precision given")),
        None => Ok(()),
    }
}

fn census(prime: u64, samples: u64, seed: u64, threads: usize) -> Out {
    let start = Instant::now();
    match prime {
        2 => {
            let c = census_f2(threads);
            let elapsed = start.elapsed().as_secs_f64();
            let beta = beta_from_census(&c);
            let expected = DensityConstants::new(2).c1;
            let spot = spot_check_f2(1000, seed);
            let v = json!({
                "p": 2,
                "threads": threads,
                "counts": c,
                "elapsed_seconds": (elapsed * 1000.0).round() / 1000.0,
                "rank1_expected": expected_rank1_count(2),
                "beta": rational_to_string(&beta),
                "beta_expected": rational_to_string(&expected),
                "beta_matches": beta == expected,
                "spot_check_mismatch": spot,
            });
            if beta == expected && c.rank1 == expected_rank1_count(2) && spot.is_none() {
                Ok(v)
            } else {
                Err(Failure::Assertion("census disagrees with the closed forms".into(), v))
            }
        }
        3 => {
            let r = sample_f3(samples, seed, threads);
            let mut v = to_value(&r);
            v["elapsed_seconds"] = json!((start.elapsed().as_secs_f64() * 1000.0).round() / 1000.0);
            if r.within {
                Ok(v)
            } else {
                Err(Failure::Assertion("sampled density outside the confidence interval".into(), v))
            }
        }
        _ => Err(usage("census supports --prime 2 (exhaustive) or 3 (sampled)")),
    }
}

fn emit(out: &Option<PathBuf>, v: &Value) -> Result<(), String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| e.to_string())?;
    s.push('\n');
    match out {
        Some(p) => std::fs::write(p, s).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(s.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn report(kind: &str, message: &str) {
    eprintln!("{}", json!({ "error": kind, "message": message }));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            report("usage", e.render().to_string().trim());
            return ExitCode::from(2);
        }
    };
    let threads = cli.threads.filter(|&n| n > 0).unwrap_or_else(heptalift::util::default_threads);
    match run(cli.cmd, threads) {
        Ok(v) => match emit(&cli.out, &v) {
            Ok(()) => ExitCode::SUCCESS,
            Err(m) => {
                report("io", &m);
                ExitCode::from(1)
            }
        },
        Err(Failure::Usage(m)) => {
            report("usage", &m);
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            report("computation", &m);
            ExitCode::from(1)
        }
        Err(Failure::Assertion(m, v)) => {
            let _ = emit(&cli.out, &v);
            report("assertion", &m);
            ExitCode::from(1)
        }
    }
}
