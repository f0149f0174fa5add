//! The `totfree` command-line interface.
//!
//! Every analysis command produces a [`Report`], printed either as JSON
//! (`--json`) or as aligned text. Exit codes: 0 on success, 1 on input or
//! usage errors, 3 when `--strict` is given and the arrangement is not
//! totally free.

pub mod basis;
pub mod generate;
pub mod render;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::poly::default_var_names;
use crate::algebra::{HomPoly, Rational};
use crate::arrangement::{
    format_arrangement, parse_arrangement, rank2_flats, Arrangement, Derivation, MultiArrangement,
    Multiplicity, ParseError,
};
use crate::certificate::{
    circuit_is_nonfree_check, decide_totally_free, find_generic_circuit,
    find_generic_circuit_brute_force, gmp2_max, gmp2_real_bound, lmp2_breakdown,
    nonfree_by_lmp_gmp, witness_for_factor, NonFreeWitness, NonFreenessCertificate, Verdict,
};
use crate::matroid::{decompose, is_irreducible, Decomposition};
use crate::rank2::{factor_exponents, rank2_basis, saito_check, SaitoReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_TOTALLY_FREE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error(transparent)]
    Library(#[from] crate::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "totfree",
    version,
    about = "Decide total freeness of hyperplane arrangements, with exact certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Arrangement file ("-" for standard input).
    #[arg(value_name = "FILE")]
    pub file: Option<PathBuf>,

    /// Arrangement file, alternative to the positional argument.
    #[arg(short, long, value_name = "FILE", conflicts_with = "file")]
    pub input: Option<PathBuf>,

    /// Comma-separated multiplicities overriding the file's `mult` values.
    #[arg(long, value_name = "M1,M2,...")]
    pub mult: Option<String>,

    /// Emit the JSON report.
    #[arg(long)]
    pub json: bool,

    /// Exit with status 3 when the arrangement is not totally free.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factors, rank-2 flat census and the total-freeness verdict.
    Analyze(InputArgs),
    /// Total-freeness verdict with its decomposition or certificate.
    TotallyFree(InputArgs),
    /// Exponents and per-factor bases of a totally free multiarrangement.
    Exponents(InputArgs),
    /// Second local mixed product and the LMP2 > GMP2max test.
    Lmp2(InputArgs),
    /// Largest GMP2 for a rank and total multiplicity.
    Gmp2max {
        #[command(flatten)]
        input: InputArgs,
        /// Rank, instead of reading an arrangement.
        #[arg(long, requires = "total")]
        rank: Option<usize>,
        /// Total multiplicity, instead of reading an arrangement.
        #[arg(long, requires = "rank")]
        total: Option<u64>,
    },
    /// Generic circuit, threshold k0 and a non-free multiplicity.
    Witness(InputArgs),
    /// Print a named arrangement family in the text format.
    Generate {
        /// boolean L | braid L | generic N L | product (FAMILY) (FAMILY)...
        #[arg(required = true, num_args = 1..)]
        family: Vec<String>,
        /// Seed for randomized families.
        #[arg(long)]
        seed: Option<u64>,
        /// Emit a JSON report wrapping the text.
        #[arg(long)]
        json: bool,
    },
    /// Check a candidate basis of D(A, m) with Saito's criterion.
    SaitoVerify {
        #[command(flatten)]
        input: InputArgs,
        /// Basis file: one derivation per blank-line separated block of
        /// `component i: <polynomial>` lines.
        #[arg(long, value_name = "FILE")]
        basis: PathBuf,
    },
}

#[derive(Debug, Serialize)]
pub struct InputSummary {
    pub dim: usize,
    pub n: usize,
    pub rank: usize,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input_summary: Option<InputSummary>,
    pub result: Value,
    pub version: String,
}

impl Report {
    fn new(command: &str, input: Option<&Arrangement>, result: Value) -> Report {
        Report {
            command: command.to_string(),
            input_summary: input.map(|a| InputSummary {
                dim: a.dim(),
                n: a.len(),
                rank: a.rank(),
            }),
            result,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values serialize")
    }

    pub fn to_text(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report values serialize");
        if let Value::Object(map) = &mut v {
            map.shift_remove("version");
        }
        render::render(&v)
    }
}

/// Exact rational as `"p/q"`.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

struct Input {
    arrangement: Arrangement,
    multiplicity: Multiplicity,
}

fn read_source(path: &PathBuf) -> Result<String, CliError> {
    let name = path.display().to_string();
    if name == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| CliError::Io { path: name, source })?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: name, source })
}

fn parse_mult(text: &str, n: usize) -> Result<Multiplicity, CliError> {
    let values = text
        .split(',')
        .map(|s| {
            s.trim().parse::<u32>().map_err(|_| {
                CliError::Input(format!("--mult: invalid multiplicity '{}'", s.trim()))
            })
        })
        .collect::<Result<Vec<u32>, _>>()?;
    if values.len() != n {
        return Err(CliError::Input(format!(
            "--mult has {} values, arrangement has {n} hyperplanes",
            values.len()
        )));
    }
    Multiplicity::new(values).map_err(|e| CliError::Input(format!("--mult: {e}")))
}

fn load(args: &InputArgs) -> Result<Input, CliError> {
    let path = args
        .input
        .as_ref()
        .or(args.file.as_ref())
        .ok_or_else(|| CliError::Input("no input file given (use FILE or --input)".into()))?;
    let text = read_source(path)?;
    let parsed = parse_arrangement(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    let multiplicity = match &args.mult {
        Some(m) => parse_mult(m, parsed.arrangement.len())?,
        None => parsed.multiplicity,
    };
    Ok(Input {
        arrangement: parsed.arrangement,
        multiplicity,
    })
}

fn certificate_json(c: &NonFreenessCertificate) -> Value {
    json!({
        "theorem": c.theorem,
        "lmp2": c.lmp2_lower,
        "lmp2_exact": c.lmp2_exact,
        "gmp2_max": c.gmp2_upper,
        "gmp2_real_bound": rational_string(&c.gmp2_real_bound),
        "total_multiplicity": c.total_multiplicity,
        "rank": c.rank,
        "circuit_indices": c.circuit_indices.as_deref().map(one_based),
        "k0": c.k0,
        "multiplicity_vector": c.multiplicity.values(),
        "explanation": c.explanation(),
    })
}

fn factors_json(d: &Decomposition) -> Value {
    Value::Array(
        d.factors
            .iter()
            .map(|f| json!({"indices": one_based(&f.indices), "rank": f.rank()}))
            .collect(),
    )
}

fn witness_json(w: &NonFreeWitness) -> Value {
    let factor = w.factor();
    json!({
        "factor": w.factor_position + 1,
        "factor_indices": one_based(&factor.indices),
        "factor_rank": factor.rank(),
        "circuit": one_based(&w.circuit.indices),
        "k0": w.k0,
        "multiplicity": w.multiplicity.values(),
        "certificate_verified": w.certificate.verify(&factor.arrangement),
        "certificate_scope": "factor (indices relative to factor_indices)",
        "certificate": certificate_json(&w.certificate),
    })
}

fn verdict_json(v: &Verdict) -> Value {
    let d = v.decomposition();
    let mut out = json!({
        "verdict": v.tag(),
        "criterion": v.criterion(),
        "factor_ranks": d.factor_ranks(),
        "trivial_directions": d.trivial_directions,
    });
    if let Verdict::NotTotallyFree(w) = v {
        out["witness"] = witness_json(w);
    }
    out
}

fn strict_code(strict: bool, v: &Verdict) -> i32 {
    if strict && !v.is_totally_free() {
        EXIT_NOT_TOTALLY_FREE
    } else {
        EXIT_OK
    }
}

fn cmd_analyze(args: &InputArgs) -> Result<(Report, i32), CliError> {
    let input = load(args)?;
    let a = &input.arrangement;
    let verdict = decide_totally_free(a)?;
    let flats = rank2_flats(a);
    let sizes: Vec<usize> = flats.iter().map(|f| f.members.len()).collect();
    let result = json!({
        "factors": factors_json(verdict.decomposition()),
        "rank2_flats": {
            "count": flats.len(),
            "sizes": sizes,
            "members": flats.iter().map(|f| one_based(&f.members)).collect::<Vec<_>>(),
        },
        "verdict": verdict_json(&verdict),
    });
    let code = strict_code(args.strict, &verdict);
    Ok((Report::new("analyze", Some(a), result), code))
}

fn cmd_totally_free(args: &InputArgs) -> Result<(Report, i32), CliError> {
    let input = load(args)?;
    let verdict = decide_totally_free(&input.arrangement)?;
    let code = strict_code(args.strict, &verdict);
    Ok((
        Report::new(
            "totally-free",
            Some(&input.arrangement),
            verdict_json(&verdict),
        ),
        code,
    ))
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn derivation_string(theta: &Derivation, vars: &[String]) -> String {
    let parts: Vec<String> = theta
        .components()
        .iter()
        .zip(vars)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, v)| format!("({})*d/d{v}", c.display_with(vars)))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn saito_json(report: &SaitoReport, vars: &[String]) -> Value {
    json!({
        "verified": report.verified(),
        "membership": report.membership,
        "determinant": report.determinant.display_with(vars),
        "defining_product": report.defining_product.display_with(vars),
        "constant": report.constant.as_ref().map(rational_string),
    })
}

fn cmd_exponents(args: &InputArgs) -> Result<(Report, i32), CliError> {
    let input = load(args)?;
    let (a, m) = (&input.arrangement, &input.multiplicity);
    let verdict = decide_totally_free(a)?;
    if let Verdict::NotTotallyFree(_) = &verdict {
        let code = strict_code(args.strict, &verdict);
        return Ok((
            Report::new("exponents", Some(a), verdict_json(&verdict)),
            code,
        ));
    }
    let d = verdict.decomposition();
    let (per_factor, trivial) = factor_exponents(a, m)?;
    let xs = default_var_names(a.dim());
    let mut exponents: Vec<u32> = Vec::new();
    let mut factors = Vec::new();
    let mut row = 0;
    for (f, fe) in d.factors.iter().zip(&per_factor) {
        let ys = names("y", f.rank());
        let coordinates: Vec<String> = ys
            .iter()
            .enumerate()
            .map(|(k, y)| {
                let form = HomPoly::linear(d.change_of_basis.row(row + k));
                format!("{y} = {}", form.display_with(&xs))
            })
            .collect();
        row += f.rank();
        let fm = m.restrict(&f.indices);
        let basis: Vec<Derivation> = if f.rank() == 1 {
            let k = fm.values()[0];
            vec![Derivation::new(vec![HomPoly::var(1, 0).pow(k)])?]
        } else {
            let ma = MultiArrangement::new(f.arrangement.clone(), fm.clone())?;
            let (t1, t2) = rank2_basis(&ma)?;
            vec![t1, t2]
        };
        let saito = saito_check(&f.arrangement, &fm, &basis)?;
        exponents.extend(&fe.exponents);
        factors.push(json!({
            "indices": one_based(&fe.indices),
            "rank": fe.rank,
            "exponents": fe.exponents,
            "coordinates": coordinates,
            "basis": basis.iter().map(|t| derivation_string(t, &ys)).collect::<Vec<_>>(),
            "saito": saito_json(&saito, &ys),
        }));
    }
    exponents.extend(std::iter::repeat_n(0, trivial));
    exponents.sort_unstable();
    let result = json!({
        "verdict": verdict.tag(),
        "criterion": verdict.criterion(),
        "multiplicity": m.values(),
        "exponents": exponents,
        "factors": factors,
        "trivial_directions": trivial,
    });
    Ok((Report::new("exponents", Some(a), result), EXIT_OK))
}

fn cmd_lmp2(args: &InputArgs) -> Result<(Report, i32), CliError> {
    let input = load(args)?;
    let (a, m) = (&input.arrangement, &input.multiplicity);
    let breakdown = lmp2_breakdown(a, m)?;
    let lmp2: u64 = breakdown.iter().map(|c| c.exponents.product()).sum();
    let flats: Vec<Value> = breakdown
        .iter()
        .map(|c| {
            json!({
                "members": one_based(&c.members),
                "exponents": [c.exponents.d1, c.exponents.d2],
                "product": c.exponents.product(),
            })
        })
        .collect();
    let cert = nonfree_by_lmp_gmp(a, m)?;
    let result = json!({
        "multiplicity": m.values(),
        "total_multiplicity": m.total(),
        "lmp2": lmp2,
        "flats": flats,
        "gmp2_max": gmp2_max(a.rank(), m.total()),
        "gmp2_real_bound": rational_string(&gmp2_real_bound(a.rank(), m.total())),
        "outcome": if cert.is_some() { "not free (certificate)" } else { "inconclusive" },
        "certificate": cert.as_ref().map(certificate_json),
    });
    Ok((Report::new("lmp2", Some(a), result), EXIT_OK))
}

fn cmd_gmp2max(
    args: &InputArgs,
    rank: Option<usize>,
    total: Option<u64>,
) -> Result<(Report, i32), CliError> {
    let (rank, total, summary) = match (rank, total) {
        (Some(r), Some(t)) => (r, t, None),
        _ => {
            let input = load(args)?;
            let r = input.arrangement.rank();
            let t = input.multiplicity.total();
            (r, t, Some(input.arrangement))
        }
    };
    let result = json!({
        "rank": rank,
        "total_multiplicity": total,
        "gmp2_max": gmp2_max(rank, total),
        "gmp2_real_bound": rational_string(&gmp2_real_bound(rank, total)),
    });
    Ok((Report::new("gmp2max", summary.as_ref(), result), EXIT_OK))
}

fn cmd_witness(args: &InputArgs) -> Result<(Report, i32), CliError> {
    let input = load(args)?;
    let a = &input.arrangement;
    let d = decompose(a);
    let position = d
        .factors
        .iter()
        .position(|f| f.rank() >= 3)
        .ok_or_else(|| crate::Error::ReducibleInput("no irreducible factor of rank >= 3".into()))?;
    let factor = d.factors[position].clone();
    let to_original =
        |c: &[usize]| -> Vec<usize> { c.iter().map(|&i| factor.indices[i] + 1).collect() };
    let by_induction = find_generic_circuit(&factor.arrangement)?;
    let by_search = find_generic_circuit_brute_force(&factor.arrangement)?;
    let (lmp, bound, gap) = circuit_is_nonfree_check(factor.rank());
    let w = witness_for_factor(d, position)?;
    let result = json!({
        "input_irreducible": is_irreducible(a),
        "factor": position + 1,
        "factor_indices": one_based(&factor.indices),
        "factor_rank": factor.rank(),
        "circuit_by_induction": to_original(&by_induction.indices),
        "circuit_by_search": to_original(&by_search.indices),
        "circuit_check": {
            "lmp2": lmp,
            "gmp2_real_bound": rational_string(&bound),
            "gap": rational_string(&gap),
        },
        "k0": w.k0,
        "multiplicity": w.multiplicity.values(),
        "certificate_verified": w.certificate.verify(&factor.arrangement),
        "certificate": certificate_json(&w.certificate),
    });
    Ok((Report::new("witness", Some(a), result), EXIT_OK))
}

fn cmd_saito_verify(args: &InputArgs, basis_path: &PathBuf) -> Result<(Report, i32), CliError> {
    let input = load(args)?;
    let (a, m) = (&input.arrangement, &input.multiplicity);
    let text = read_source(basis_path)?;
    let thetas = basis::parse_basis(&text, a.dim())?;
    if thetas.len() != a.dim() {
        return Err(CliError::Input(format!(
            "basis file has {} derivations, dimension is {}",
            thetas.len(),
            a.dim()
        )));
    }
    let report = saito_check(a, m, &thetas)?;
    let xs = default_var_names(a.dim());
    let mut result = json!({
        "multiplicity": m.values(),
        "basis": thetas.iter().map(|t| derivation_string(t, &xs)).collect::<Vec<_>>(),
    });
    if let (Value::Object(out), Value::Object(extra)) = (&mut result, saito_json(&report, &xs)) {
        out.extend(extra);
    }
    Ok((Report::new("saito-verify", Some(a), result), EXIT_OK))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let (report, json, code) = match &cli.command {
        Command::Generate { family, seed, json } => {
            let a = generate::generate(family, *seed)?;
            let text = format_arrangement(&a, None);
            if *json {
                let report = Report::new(
                    "generate",
                    Some(&a),
                    json!({"family": family.join(" "), "seed": seed, "text": text}),
                );
                (report, true, EXIT_OK)
            } else {
                write_out(out, &text)?;
                return Ok(EXIT_OK);
            }
        }
        Command::Analyze(args) => with_flag(args, cmd_analyze(args)?),
        Command::TotallyFree(args) => with_flag(args, cmd_totally_free(args)?),
        Command::Exponents(args) => with_flag(args, cmd_exponents(args)?),
        Command::Lmp2(args) => with_flag(args, cmd_lmp2(args)?),
        Command::Gmp2max { input, rank, total } => {
            with_flag(input, cmd_gmp2max(input, *rank, *total)?)
        }
        Command::Witness(args) => with_flag(args, cmd_witness(args)?),
        Command::SaitoVerify { input, basis } => with_flag(input, cmd_saito_verify(input, basis)?),
    };
    let text = if json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    };
    write_out(out, &text)?;
    Ok(code)
}

fn with_flag(args: &InputArgs, (report, code): (Report, i32)) -> (Report, bool, i32) {
    (report, args.json, code)
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|source| CliError::Io {
            path: "<output>".into(),
            source,
        })
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
