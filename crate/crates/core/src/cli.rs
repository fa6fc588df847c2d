//! The `pentagf` command line.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! invalid arguments, input or I/O errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::{enumerate, PentaShape};
use crate::field::FieldCtx;
use crate::gatecount::{
    cost_report, karatsuba_constant_series, CostReport, CONSTANT_SERIES_HEADER, COST_REPORT_HEADER,
};
use crate::gf2x::BitPoly;
use crate::reduce::{reduction_xor_formula, Reducer};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

pub const NIST_DEGREES: [usize; 3] = [163, 283, 571];

#[derive(Debug, Parser)]
#[command(
    name = "pentagf",
    version,
    about = "Binary field arithmetic over the pentanomials x^(2b+c) + x^(b+c) + x^b + x^c + 1"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every irreducible family member up to a degree.
    Enumerate {
        #[arg(long, value_name = "N")]
        max_degree: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Check the fast reducer and field product against long division.
    Verify {
        #[arg(long, value_name = "B,C")]
        shape: PentaShape,
        #[arg(long, value_name = "N", default_value_t = 1000,
              value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Seed for the ChaCha8 generator that draws the inputs.
        #[arg(long, value_name = "U64", default_value_t = 0)]
        seed: u64,
    },
    /// Gate costs of multiplication and reduction.
    Cost(CostArgs),
    /// Reduce a polynomial of degree at most 2m - 2.
    Reduce {
        #[arg(long, value_name = "B,C")]
        shape: PentaShape,
        /// Polynomial in hex, most significant digit first.
        poly: String,
    },
    /// Multiply two field elements.
    Mul {
        #[arg(long, value_name = "B,C")]
        shape: PentaShape,
        a: String,
        b: String,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CostArgs {
    /// Costs at degrees 163, 283 and 571.
    #[arg(long)]
    nist: bool,
    #[arg(long, value_name = "B,C")]
    shape: Option<PentaShape>,
    /// The Karatsuba constant for 2 <= m <= N.
    #[arg(long, value_name = "N")]
    constant_series: Option<usize>,
    #[arg(long, value_name = "PATH", requires = "constant_series")]
    csv: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

type CmdResult = std::result::Result<u8, String>;

fn io_err(e: io::Error) -> String {
    e.to_string()
}

fn execute(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Enumerate { max_degree, csv } => cmd_enumerate(max_degree, csv, out),
        Command::Verify {
            shape,
            trials,
            seed,
        } => cmd_verify(shape, trials, seed, out),
        Command::Cost(args) => cmd_cost(args, out),
        Command::Reduce { shape, poly } => cmd_reduce(shape, &poly, out),
        Command::Mul { shape, a, b } => cmd_mul(shape, &a, &b, out),
    }
}

fn open_csv(path: &PathBuf) -> std::result::Result<BufWriter<File>, String> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn cmd_enumerate(max_degree: usize, csv: Option<PathBuf>, out: &mut dyn Write) -> CmdResult {
    let shapes = enumerate(max_degree);
    let mut body = Vec::new();
    writeln!(body, "m,b,c,subfamily,red_xor").map_err(io_err)?;
    for s in &shapes {
        writeln!(
            body,
            "{},{},{},{},{}",
            s.m(),
            s.b(),
            s.c(),
            s.subfamily(),
            reduction_xor_formula(s)
        )
        .map_err(io_err)?;
    }
    match csv {
        Some(path) => {
            let mut file = open_csv(&path)?;
            file.write_all(&body)
                .and_then(|()| file.flush())
                .map_err(io_err)?;
        }
        None => out.write_all(&body).map_err(io_err)?,
    }
    let twice = shapes.iter().filter(|s| s.is_b_twice_c()).count();
    writeln!(
        out,
        "b≠2c: {}, b=2c: {}, total: {}",
        shapes.len() - twice,
        twice,
        shapes.len()
    )
    .map_err(io_err)?;
    Ok(EXIT_OK)
}

fn random_poly(rng: &mut ChaCha8Rng, bits: usize) -> BitPoly {
    let mut words: Vec<u64> = (0..bits.div_ceil(64)).map(|_| rng.next_u64()).collect();
    if !bits.is_multiple_of(64) {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << (bits % 64)) - 1;
        }
    }
    BitPoly::from_words(words)
}

fn cmd_verify(shape: PentaShape, trials: u64, seed: u64, out: &mut dyn Write) -> CmdResult {
    let m = shape.m();
    let input_bits = 2 * m - 1;
    let f = shape.to_poly();
    let exhaustive = input_bits < 64 && (1u64 << input_bits) <= trials;
    let runs = if exhaustive {
        1u64 << input_bits
    } else {
        trials
    };
    writeln!(
        out,
        "shape {shape} (m = {m}, {}), kind {:?}",
        shape.subfamily(),
        Reducer::new(shape).kind()
    )
    .map_err(io_err)?;
    if exhaustive {
        writeln!(
            out,
            "exhaustive: all {runs} inputs of degree <= {}",
            2 * m - 2
        )
        .map_err(io_err)?;
    } else {
        writeln!(out, "seed {seed} (ChaCha8), {runs} random inputs").map_err(io_err)?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reducer = Reducer::new(shape);
    let mut counted = 0u64;
    for i in 0..runs {
        let d = if exhaustive {
            BitPoly::from_words(vec![i])
        } else {
            random_poly(&mut rng, input_bits)
        };
        let (fast, xors) = reducer.reduce_counting(&d).map_err(|e| e.to_string())?;
        counted += xors;
        let expected = d.rem(&f).map_err(|e| e.to_string())?;
        if fast != expected {
            writeln!(
                out,
                "FAIL reduce input {} gives {}, expected {}",
                d.to_hex(),
                fast.to_hex(),
                expected.to_hex()
            )
            .map_err(io_err)?;
            return Ok(EXIT_CHECK_FAILED);
        }
    }
    let formula = reduction_xor_formula(&shape) as u64;
    writeln!(
        out,
        "reduce: {runs} agree; XORs counted {counted}, formula {formula} x {runs} = {}",
        formula * runs
    )
    .map_err(io_err)?;
    if counted != formula * runs {
        writeln!(out, "FAIL XOR count differs from the formula").map_err(io_err)?;
        return Ok(EXIT_CHECK_FAILED);
    }

    match FieldCtx::new(shape) {
        Ok(ctx) => {
            for _ in 0..runs.min(trials) {
                let a = ctx.random(&mut rng);
                let b = ctx.random(&mut rng);
                let got = a.mul(&b).map_err(|e| e.to_string())?;
                let expected = a
                    .value()
                    .mul_schoolbook(b.value())
                    .rem(&f)
                    .map_err(|e| e.to_string())?;
                if got.value() != &expected {
                    writeln!(
                        out,
                        "FAIL mul {} * {} gives {}, expected {}",
                        a.to_hex(),
                        b.to_hex(),
                        got.to_hex(),
                        expected.to_hex()
                    )
                    .map_err(io_err)?;
                    return Ok(EXIT_CHECK_FAILED);
                }
            }
            writeln!(out, "mul: {} agree", runs.min(trials)).map_err(io_err)?;
        }
        Err(_) => writeln!(out, "mul: skipped, f is reducible").map_err(io_err)?,
    }
    writeln!(out, "PASS").map_err(io_err)?;
    Ok(EXIT_OK)
}

fn write_report(out: &mut dyn Write, r: &CostReport) -> io::Result<()> {
    writeln!(out, "{}", r.csv_row())
}

fn cmd_cost(args: CostArgs, out: &mut dyn Write) -> CmdResult {
    if let Some(shape) = args.shape {
        let r = cost_report(&shape);
        writeln!(out, "{COST_REPORT_HEADER}").map_err(io_err)?;
        write_report(out, &r).map_err(io_err)?;
        writeln!(
            out,
            "C = {:.4}; multiplier XORs with recombination {}; depth T_A + {} T_X",
            r.karatsuba_constant,
            r.mul_xor_circuit,
            r.depth_x()
        )
        .map_err(io_err)?;
        return Ok(EXIT_OK);
    }
    if let Some(max_m) = args.constant_series {
        let series = karatsuba_constant_series(max_m);
        let mut body = Vec::new();
        writeln!(body, "{CONSTANT_SERIES_HEADER}").map_err(io_err)?;
        for (m, c) in &series {
            writeln!(body, "{m},{c:.6}").map_err(io_err)?;
        }
        match &args.csv {
            Some(path) => {
                let mut file = open_csv(path)?;
                file.write_all(&body)
                    .and_then(|()| file.flush())
                    .map_err(io_err)?;
            }
            None => out.write_all(&body).map_err(io_err)?,
        }
        let max = series
            .iter()
            .map(|&(_, c)| c)
            .fold(f64::NEG_INFINITY, f64::max);
        if series.iter().all(|&(_, c)| c < 6.0) {
            if !series.is_empty() {
                writeln!(out, "max C = {max:.4} < 6").map_err(io_err)?;
            }
            return Ok(EXIT_OK);
        }
        writeln!(out, "FAIL max C = {max:.4} >= 6").map_err(io_err)?;
        return Ok(EXIT_CHECK_FAILED);
    }
    cmd_cost_nist(out)
}

fn cmd_cost_nist(out: &mut dyn Write) -> CmdResult {
    let max = *NIST_DEGREES.iter().max().expect("nonempty");
    let shapes = enumerate(max);
    writeln!(out, "{COST_REPORT_HEADER}").map_err(io_err)?;
    for m in NIST_DEGREES {
        let mut of_degree = shapes.iter().filter(|s| s.m() == m);
        let Some(chosen) = of_degree.next() else {
            return Err(format!("no family member of degree {m}"));
        };
        let report = cost_report(chosen);
        for other in of_degree {
            let r = cost_report(other);
            let same = (r.mul_xor, r.mul_and, r.red_xor, r.depth_x())
                == (
                    report.mul_xor,
                    report.mul_and,
                    report.red_xor,
                    report.depth_x(),
                );
            if !same {
                writeln!(out, "FAIL shapes {chosen} and {other} differ in cost").map_err(io_err)?;
                return Ok(EXIT_CHECK_FAILED);
            }
        }
        write_report(out, &report).map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn cmd_reduce(shape: PentaShape, poly: &str, out: &mut dyn Write) -> CmdResult {
    let d: BitPoly = poly.parse().map_err(|e: crate::Error| e.to_string())?;
    let r = Reducer::new(shape).reduce(&d).map_err(|e| e.to_string())?;
    writeln!(out, "{}", r.to_hex()).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn cmd_mul(shape: PentaShape, a: &str, b: &str, out: &mut dyn Write) -> CmdResult {
    let ctx = FieldCtx::new(shape).map_err(|e| e.to_string())?;
    let parse = |s: &str| -> std::result::Result<BitPoly, String> {
        let p: BitPoly = s.parse().map_err(|e: crate::Error| e.to_string())?;
        match p.degree().finite() {
            Some(d) if d >= shape.m() => Err(format!(
                "operand {s} has degree {d}, field elements have degree < {}",
                shape.m()
            )),
            _ => Ok(p),
        }
    };
    let x = ctx.element(&parse(a)?);
    let y = ctx.element(&parse(b)?);
    let p = x.mul(&y).map_err(|e| e.to_string())?;
    writeln!(out, "{}", p.to_hex()).map_err(io_err)?;
    Ok(EXIT_OK)
}
