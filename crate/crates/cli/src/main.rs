//! Command-line front end: apply an operator to a parsed chain, run the
//! check registry, or walk through the constructive cobounding pipeline.
//!
//! Exit codes are the contract consumed by scripts: 0 on success, 1 when a
//! verification finds a counterexample, 2 for usage or parse errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cuntz_core::algebra::{pi_multiply, scalar_int};
use cuntz_core::chains::{boundary, cyclic_norm, cyclic_shift, face_map};
use cuntz_core::cochains::{cobound_normalized, one_normalize};
use cuntz_core::homotopy::{
    p_apply, phi_apply, rho_long_cuntz, rho_long_free, rho_simple, s_apply, SplitSpec,
};
use cuntz_core::parse::{parse_chain, Parsed};
use cuntz_core::testkit::{
    rand_chain, rand_cocycle, run_all, run_check, trial_rng, CheckReport, GenParams, Mutation,
};
use cuntz_core::{Basis, Chain, Scalar};

#[derive(Parser)]
#[command(name = "cuntz", about = "Exact chain operators over the Cuntz semigroup algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator to a chain expression and print the canonical form
    Apply(ApplyArgs),
    /// Run one named identity check, or "all" for the whole registry
    Verify(VerifyArgs),
    /// Narrated demonstrations (currently: cobound)
    Demo(DemoArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MutateArg {
    FlipFaceSign,
}

#[derive(Args)]
struct ApplyArgs {
    /// One of: d, d_i, t, N, s, r, P, phi, pi, rho-simple, rho-long, rho-free
    operator: String,
    /// Chain expression, e.g. "p[1] (x) q[1]" or "3/2 * (w[1] (x) w[2])"
    expression: String,
    /// Degree of the input chain (inferred from the expression if omitted)
    #[arg(long = "n")]
    n: Option<usize>,
    /// Face index, required by d_i
    #[arg(long)]
    i: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Registered check name, or "all"
    check: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fix one degree instead of the check's default sweep
    #[arg(long = "n")]
    n: Option<usize>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long = "max-len", default_value_t = 3)]
    max_len: usize,
    #[arg(long = "index-bound", default_value_t = 3)]
    index_bound: u32,
    /// Constrain sampled tensors to have no transitions
    #[arg(long = "no-transition")]
    no_transition: bool,
    /// Constrain sampled factors to be non-units
    #[arg(long = "unit-free")]
    unit_free: bool,
    /// Inject a deliberate fault to confirm the check can fail
    #[arg(long, value_enum)]
    mutate: Option<MutateArg>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct DemoArgs {
    /// Demo name (cobound)
    name: String,
    /// Cocycle degree
    #[arg(long = "n", default_value_t = 2)]
    n: usize,
    /// Trace coefficient in the constructed cocycle (even degrees only)
    #[arg(long, default_value_t = 0)]
    c: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fresh residual samples to test the primitive against
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Apply(a) => cmd_apply(&a),
        Command::Verify(v) => cmd_verify(&v),
        Command::Demo(d) => cmd_demo(&d),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

// ---- apply -----------------------------------------------------------------

fn cmd_apply(a: &ApplyArgs) -> Result<ExitCode, String> {
    let parsed = parse_chain(&a.expression, a.n).map_err(|e| e.to_string())?;
    let (degree, output) = match &parsed {
        Parsed::Cuntz(x) => (x.degree(), apply_cuntz(&a.operator, a.i, x)?),
        Parsed::Free(x) => (x.degree(), apply_free(&a.operator, a.i, x)?),
    };
    match a.format {
        Format::Text => println!("{output}"),
        Format::Json => println!(
            "{}",
            json!({
                "operator": a.operator,
                "degree": degree,
                "input": a.expression,
                "output": output,
            })
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn rho_of<B: Basis>(x: &Chain<B>, rho: impl Fn(&B) -> Chain<B>) -> Result<String, String> {
    if x.degree() != 0 {
        return Err("splitting operators expect a degree-0 chain".into());
    }
    let mut out = Chain::zero(1);
    for (t, c) in x.terms().iter() {
        out = &out + &rho(&t.factors()[0]).scaled(c);
    }
    Ok(out.to_string())
}

fn apply_cuntz(
    op: &str,
    i: Option<usize>,
    x: &Chain<cuntz_core::CuntzMonomial>,
) -> Result<String, String> {
    let out = match op {
        "d" => boundary(x).map_err(|e| e.to_string())?.to_string(),
        "d_i" => {
            let i = i.ok_or("operator d_i needs --i")?;
            face_map(i, x).map_err(|e| e.to_string())?.to_string()
        }
        "t" => cyclic_shift(x).to_string(),
        "N" => cyclic_norm(x).to_string(),
        "s" => s_apply(&SplitSpec::simple_cuntz(), x).to_string(),
        "r" => s_apply(&SplitSpec::long_cuntz(), x).to_string(),
        "P" => p_apply(&SplitSpec::simple_cuntz(), x)
            .map_err(|e| e.to_string())?
            .to_string(),
        "phi" => phi_apply(x).map_err(|e| e.to_string())?.to_string(),
        "pi" => pi_multiply(x).map_err(|e| e.to_string())?.to_string(),
        "rho-simple" => rho_of(x, rho_simple)?,
        "rho-long" => rho_of(x, rho_long_cuntz)?,
        "rho-free" => return Err("rho-free expects free-word input such as w[1,2]".into()),
        _ => return Err(format!("unknown operator '{op}'")),
    };
    Ok(out)
}

fn apply_free(
    op: &str,
    i: Option<usize>,
    x: &Chain<cuntz_core::FreeWord>,
) -> Result<String, String> {
    let out = match op {
        "d" => boundary(x).map_err(|e| e.to_string())?.to_string(),
        "d_i" => {
            let i = i.ok_or("operator d_i needs --i")?;
            face_map(i, x).map_err(|e| e.to_string())?.to_string()
        }
        "t" => cyclic_shift(x).to_string(),
        "N" => cyclic_norm(x).to_string(),
        "r" => s_apply(&SplitSpec::long_free(), x).to_string(),
        "pi" => pi_multiply(x).map_err(|e| e.to_string())?.to_string(),
        "rho-free" => rho_of(x, rho_long_free)?,
        "s" | "P" | "phi" => {
            return Err(format!(
                "operator {op} is defined on semigroup chains; the free homotopy is r"
            ))
        }
        "rho-simple" | "rho-long" => {
            return Err(format!("operator {op} expects semigroup input such as p[1]q[2]"))
        }
        _ => return Err(format!("unknown operator '{op}'")),
    };
    Ok(out)
}

// ---- verify ----------------------------------------------------------------

fn render_report(report: &CheckReport) -> String {
    let verdict = if report.passed() { "pass" } else { "FAIL" };
    let mut out = format!("{}: {verdict} ({} trials", report.check, report.trials);
    if !report.failures.is_empty() {
        out.push_str(&format!(", {} counterexamples", report.failures.len()));
    }
    out.push(')');
    for f in report.failures.iter().take(3) {
        out.push_str(&format!(
            "\n  trial {}: {}\n    expected: {}\n    actual:   {}",
            f.trial, f.input, f.expected, f.actual
        ));
    }
    if report.failures.len() > 3 {
        out.push_str(&format!(
            "\n  ... {} further counterexamples",
            report.failures.len() - 3
        ));
    }
    out
}

fn cmd_verify(v: &VerifyArgs) -> Result<ExitCode, String> {
    let params = GenParams {
        seed: v.seed,
        degree: v.n,
        max_len: v.max_len,
        index_bound: v.index_bound,
        trials: v.trials,
        no_transition: v.no_transition,
        unit_free: v.unit_free,
        mutation: match v.mutate {
            Some(MutateArg::FlipFaceSign) => Mutation::FlipFaceSign,
            None => Mutation::None,
        },
    };
    let reports = if v.check == "all" {
        run_all(&params)
    } else {
        vec![run_check(&v.check, &params).map_err(|e| e.to_string())?]
    };
    match v.format {
        Format::Text => {
            for report in &reports {
                println!("{}", render_report(report));
            }
        }
        Format::Json => {
            if reports.len() == 1 {
                println!("{}", serde_json::to_string(&reports[0]).expect("serializable"));
            } else {
                println!("{}", serde_json::to_string(&reports).expect("serializable"));
            }
        }
    }
    if reports.iter().all(CheckReport::passed) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

// ---- demo ------------------------------------------------------------------

fn cmd_demo(d: &DemoArgs) -> Result<ExitCode, String> {
    if d.name != "cobound" {
        return Err(format!("unknown demo '{}'", d.name));
    }
    if d.n == 0 {
        return Err("the demo needs degree at least 1".into());
    }
    let n = d.n;
    let c = scalar_int(d.c);
    let params = GenParams {
        seed: d.seed,
        trials: d.trials,
        ..GenParams::default()
    };
    let mut rng = trial_rng(params.seed, 0);
    let phi = rand_cocycle(&mut rng, &params, n, &c).map_err(|e| e.to_string())?;
    println!(
        "built a degree-{n} cyclic cocycle: a random symmetrized coboundary plus {c} times the diagonal trace power (seed {})",
        params.seed
    );
    let (lambda, phi0) = if n % 2 == 0 {
        let (lambda, phi0) = one_normalize(&phi).map_err(|e| e.to_string())?;
        println!("one_normalize split off the trace power with coefficient λ = {lambda}");
        (lambda, phi0)
    } else {
        println!("odd degree: cyclic cocycles vanish on the unit tensor, nothing to remove; λ = 0");
        (Scalar::from_integer(0.into()), phi)
    };
    let samples_at: Vec<_> = (0..4).map(|_| rand_chain(&mut rng, n, &params)).collect();
    let samples_above: Vec<_> = (0..4)
        .map(|_| rand_chain(&mut rng, n + 1, &params))
        .collect();
    let psi = cobound_normalized(&phi0, &samples_at, &samples_above).map_err(|e| e.to_string())?;
    println!(
        "cobound_normalized produced a degree-{} primitive from the weighted splitting and the Φ homotopy",
        n - 1
    );
    let mut first_bad: Option<(Chain<cuntz_core::CuntzMonomial>, Scalar)> = None;
    for trial in 1..=params.trials {
        let mut rng = trial_rng(params.seed, trial as u64);
        let x = rand_chain(&mut rng, n, &params);
        let lhs = phi0.eval(&x).map_err(|e| e.to_string())?;
        let dx = boundary(&x).map_err(|e| e.to_string())?;
        let rhs = psi.eval(&dx).map_err(|e| e.to_string())?;
        let residual = lhs - rhs;
        if !residual.eq(&Scalar::from_integer(0.into())) && first_bad.is_none() {
            first_bad = Some((x, residual));
        }
    }
    match first_bad {
        None => {
            println!(
                "checked {} fresh chains: recovered λ = {lambda}, residual 0",
                params.trials
            );
            Ok(ExitCode::SUCCESS)
        }
        Some((x, residual)) => {
            println!("residual {residual} on x = {x}");
            Ok(ExitCode::from(1))
        }
    }
}
