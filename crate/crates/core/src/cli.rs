//! The `rootmean` command line.
//!
//! Every query produces one record on stdout, either as `key=value` pairs
//! (`--format text`) or as a JSON object (`--format json`). Diagnostics go
//! to stderr. Exit codes: 0 success, 1 verification counterexample,
//! 2 usage or domain error.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_traits::{Float, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::asymptotic::{self, RootOrder, MAX_FLOAT_INDEX};
use crate::dd::Dd;
use crate::error::Error;
use crate::evaluator::{CertifiedMean, EvalConfig, Evaluator, DEFAULT_ORACLE_CAP};
use crate::exactfloor;
use crate::verify::{self, SweepReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "rootmean",
    version,
    about = "Certified means of square roots of the first n integers"
)]
pub struct Cli {
    /// Output record format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Longest range the summation oracle may add term by term.
    #[arg(long, env = "ROOTMEAN_ORACLE_CAP", default_value_t = DEFAULT_ORACLE_CAP, global = true)]
    pub oracle_cap: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Theorem1,
    Delta,
    Lemma2,
    Lemma3,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact integer part of the mean, for any n >= 1.
    Floor {
        /// Decimal integer of any length.
        n: String,
    },
    /// Certified mean value.
    Mean {
        n: String,
        /// Absolute tolerance on the mean.
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
        /// Fixed split point (1 <= nu <= n - 2) instead of the planner's.
        #[arg(long)]
        nu: Option<u64>,
    },
    /// Enclosure of sum_{k=from}^{to} k^(1/root).
    Sum {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value_t = 2.0)]
        root: f64,
    },
    /// Run a property sweep; exit status 1 on any counterexample.
    Verify {
        /// Largest n (or m for lemma3, or x for lemma2).
        #[arg(long)]
        max_n: u64,
        #[arg(long, value_enum)]
        mode: VerifyMode,
        /// Pairs for `delta`, grid points for `lemma2`.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time direct summation against the split evaluator.
    Bench {
        #[arg(default_values_t = [1_000u64, 100_000, 10_000_000])]
        n: Vec<u64>,
        #[arg(long, default_value_t = 1e-10)]
        eps: f64,
    },
}

/// One output record.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QueryResult {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub value: String,
    pub error_bound: String,
    pub method: String,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub details: Map<String, Value>,
}

impl QueryResult {
    fn new(command: &str) -> Self {
        QueryResult {
            command: command.to_string(),
            inputs: Map::new(),
            value: String::new(),
            error_bound: "0".to_string(),
            method: String::new(),
            elapsed_ms: 0.0,
            details: Map::new(),
        }
    }

    fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    fn detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string(self).expect("records serialize"),
            Format::Text => {
                let mut parts = vec![format!("command={}", self.command)];
                parts.extend(self.inputs.iter().map(|(k, v)| format!("{k}={}", plain(v))));
                parts.push(format!("value={}", self.value));
                parts.push(format!("error_bound={}", self.error_bound));
                parts.push(format!("method={}", self.method));
                parts.extend(
                    self.details
                        .iter()
                        .map(|(k, v)| format!("{k}={}", plain(v))),
                );
                parts.push(format!("elapsed_ms={:.3}", self.elapsed_ms));
                parts.join(" ")
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) if s.contains(' ') => format!("{s:?}"),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Shortest decimal that parses back to `x`.
pub fn format_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        "0".to_string()
    } else if (1e-4..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// `hi + lo` (a double-double) rounded to `digits` significant decimal
/// digits, computed exactly with big integers.
pub fn format_significant(hi: f64, lo: f64, digits: u32) -> String {
    let (num, den) = exact_ratio(hi, lo);
    if num.is_zero() {
        return "0".to_string();
    }
    let negative = num.is_negative();
    let num = num.abs();
    let ten = BigInt::from(10u32);

    let mut exp10 = hi.abs().log10().floor() as i32;
    while pow10_le(&num, &den, exp10 + 1) {
        exp10 += 1;
    }
    while !pow10_le(&num, &den, exp10) {
        exp10 -= 1;
    }

    let shift = digits as i32 - 1 - exp10;
    let (scaled_num, scaled_den) = if shift >= 0 {
        (num * ten.pow(shift as u32), den)
    } else {
        (num, den * ten.pow((-shift) as u32))
    };
    let mut q = &scaled_num / &scaled_den;
    let twice_rem = (&scaled_num - &q * &scaled_den) * 2u32;
    if twice_rem > scaled_den || (twice_rem == scaled_den && q.bit(0)) {
        q += 1u32;
    }
    if q == ten.pow(digits) {
        q /= 10u32;
        exp10 += 1;
    }

    let body = place_point(&q.to_string(), exp10);
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// `10^e <= num / den`.
fn pow10_le(num: &BigInt, den: &BigInt, e: i32) -> bool {
    let ten = BigInt::from(10u32);
    if e >= 0 {
        den * ten.pow(e as u32) <= *num
    } else {
        den <= &(num * ten.pow((-e) as u32))
    }
}

fn exact_ratio(hi: f64, lo: f64) -> (BigInt, BigInt) {
    let parts: Vec<(BigInt, i32)> = [hi, lo]
        .into_iter()
        .filter(|x| *x != 0.0)
        .map(|x| {
            let (mantissa, exp, sign) = x.integer_decode();
            (BigInt::from(sign) * BigInt::from(mantissa), i32::from(exp))
        })
        .collect();
    let Some(min_exp) = parts.iter().map(|p| p.1).min() else {
        return (BigInt::zero(), BigInt::from(1u32));
    };
    let num: BigInt = parts.iter().map(|(m, e)| m << (e - min_exp) as usize).sum();
    if min_exp >= 0 {
        (num << min_exp as usize, BigInt::from(1u32))
    } else {
        (num, BigInt::from(1u32) << (-min_exp) as usize)
    }
}

/// Places the decimal point in a digit string whose leading digit has
/// weight `10^exp10`.
fn place_point(digits: &str, exp10: i32) -> String {
    let n = digits.len() as i32;
    let out = if (0..n).contains(&exp10) {
        let (int, frac) = digits.split_at(exp10 as usize + 1);
        format!("{int}.{frac}")
    } else if exp10 >= n && exp10 < 21 {
        format!("{digits}{}", "0".repeat((exp10 - n + 1) as usize))
    } else if (-5..0).contains(&exp10) {
        format!("0.{}{digits}", "0".repeat((-exp10 - 1) as usize))
    } else {
        let (lead, rest) = digits.split_at(1);
        let rest = rest.trim_end_matches('0');
        return if rest.is_empty() {
            format!("{lead}e{exp10}")
        } else {
            format!("{lead}.{rest}e{exp10}")
        };
    };
    if out.contains('.') {
        out.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        out
    }
}

/// Mean value as 17 significant digits of the double-double estimate,
/// provided that string still parses to the binary64 payload.
fn format_mean(mean: &CertifiedMean) -> String {
    let s = format_significant(mean.value, mean.value_tail, 17);
    if s.parse::<f64>() == Ok(mean.value) {
        s
    } else {
        format_f64(mean.value)
    }
}

fn parse_index(text: &str) -> Result<BigUint, Error> {
    let n: BigUint = text.trim().parse().map_err(|_| Error::Domain {
        what: "a positive integer index",
        x: f64::NAN,
        min: 1.0,
    })?;
    if n.is_zero() {
        return Err(Error::ZeroIndex);
    }
    Ok(n)
}

fn parse_float_index(text: &str) -> Result<u64, Error> {
    let n = parse_index(text)?;
    match n.to_u64() {
        Some(v) if v <= MAX_FLOAT_INDEX => Ok(v),
        Some(v) => Err(Error::BeyondFloat(v)),
        None => Err(Error::BeyondFloat(u64::MAX)),
    }
}

pub fn cmd_floor(n: &str) -> Result<QueryResult, Error> {
    let start = Instant::now();
    let n = parse_index(n)?;
    let m = exactfloor::floor_a_exact(n.clone())?;
    let mut r = QueryResult::new("floor").input("n", n.to_string());
    r.value = m.to_string();
    r.method = "exact".to_string();
    r.elapsed_ms = elapsed_ms(start);
    Ok(r)
}

pub fn cmd_mean(
    evaluator: &Evaluator,
    n: &str,
    eps: f64,
    nu: Option<u64>,
) -> Result<QueryResult, Error> {
    let start = Instant::now();
    let n = parse_float_index(n)?;
    let mean = match nu {
        Some(nu) => evaluator.fast_mean_at(n, nu)?,
        None => evaluator.fast_mean(n, eps)?,
    };
    let mut r = QueryResult::new("mean").input("n", n);
    r = match nu {
        Some(nu) => r.input("nu", nu),
        None => r.input("eps", eps),
    };
    r.value = format_mean(&mean);
    r.error_bound = format_f64(mean.error_bound);
    r.method = mean.method.to_string();
    r = r.detail("split_nu", mean.plan.nu);
    r.elapsed_ms = elapsed_ms(start);
    Ok(r)
}

pub fn cmd_sum(from: u64, to: u64, root: f64) -> Result<QueryResult, Error> {
    let start = Instant::now();
    let order = RootOrder::new(root)?;
    let enclosure = asymptotic::partial_sum_root_enclosure(from, to, order)?;
    let mut r = QueryResult::new("sum")
        .input("from", from)
        .input("to", to)
        .input("root", root);
    if enclosure.is_degenerate() {
        r.value = format_f64(enclosure.lo);
        r.error_bound = "0".to_string();
        r.method = "exact".to_string();
    } else {
        r.value = format_f64(enclosure.midpoint());
        r.error_bound = format_f64(enclosure.half_width());
        r.method = "closed-form".to_string();
    }
    r = r
        .detail("lo", format_f64(enclosure.lo))
        .detail("hi", format_f64(enclosure.hi));
    r.elapsed_ms = elapsed_ms(start);
    Ok(r)
}

pub fn cmd_verify(
    mode: VerifyMode,
    max_n: u64,
    samples: u64,
    seed: u64,
    oracle_cap: u64,
) -> Result<(QueryResult, SweepReport), Error> {
    let start = Instant::now();
    let (name, report) = match mode {
        VerifyMode::Theorem1 => ("theorem1", verify::theorem1_sweep(max_n, oracle_cap)?),
        VerifyMode::Delta => (
            "delta",
            verify::delta_sweep(max_n, samples, seed, oracle_cap)?,
        ),
        VerifyMode::Lemma2 => ("lemma2", verify::lemma2_sweep(max_n as f64, samples)?),
        VerifyMode::Lemma3 => ("lemma3", verify::lemma3_sweep(max_n)?),
    };
    let mut r = QueryResult::new("verify")
        .input("mode", name)
        .input("max_n", max_n);
    if matches!(mode, VerifyMode::Delta | VerifyMode::Lemma2) {
        r = r.input("samples", samples);
    }
    if mode == VerifyMode::Delta {
        r = r.input("seed", seed);
    }
    r.value = if report.is_clean() { "pass" } else { "fail" }.to_string();
    r.method = "sweep".to_string();
    r = r
        .detail("passed", report.passed())
        .detail("checked", report.checked);
    if let Some(ce) = &report.first_failure {
        r = r
            .detail("counterexample", ce.at.clone())
            .detail("expected", ce.expected.clone())
            .detail("got", ce.got.clone());
    }
    r.elapsed_ms = elapsed_ms(start);
    Ok((r, report))
}

pub fn cmd_bench(evaluator: &Evaluator, n: u64, eps: f64) -> Result<QueryResult, Error> {
    let start = Instant::now();
    let fast = evaluator.fast_mean(n, eps)?;
    let fast_ms = elapsed_ms(start);

    let mut r = QueryResult::new("bench").input("n", n).input("eps", eps);
    r.value = format_mean(&fast);
    r.error_bound = format_f64(fast.error_bound);
    r.method = fast.method.to_string();
    r = r.detail("fast_ms", fast_ms);

    // direct summation is skipped beyond the oracle cap
    let oracle_start = Instant::now();
    match evaluator.oracle_mean_dd(n) {
        Ok(oracle) => {
            let oracle_ms = elapsed_ms(oracle_start);
            let difference = (Dd::from(fast.value) - oracle.value).to_f64().abs();
            r = r
                .detail("oracle_ms", oracle_ms)
                .detail("oracle_value", format_f64(oracle.value.to_f64()))
                .detail("difference", format_f64(difference));
        }
        Err(Error::OracleCap { .. }) => {}
        Err(e) => return Err(e),
    }
    r.elapsed_ms = elapsed_ms(start);
    Ok(r)
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    execute(&cli, out, err)
}

pub fn execute(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let evaluator = Evaluator::new(EvalConfig {
        oracle_cap: cli.oracle_cap,
        ..EvalConfig::default()
    });
    let outcome = match &cli.command {
        Command::Floor { n } => cmd_floor(n).map(|r| (vec![r], EXIT_OK)),
        Command::Mean { n, eps, nu } => {
            cmd_mean(&evaluator, n, *eps, *nu).map(|r| (vec![r], EXIT_OK))
        }
        Command::Sum { from, to, root } => cmd_sum(*from, *to, *root).map(|r| (vec![r], EXIT_OK)),
        Command::Verify {
            max_n,
            mode,
            samples,
            seed,
        } => cmd_verify(*mode, *max_n, *samples, *seed, cli.oracle_cap).map(|(r, report)| {
            let code = if report.is_clean() {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            };
            (vec![r], code)
        }),
        Command::Bench { n, eps } => n
            .iter()
            .map(|&n| cmd_bench(&evaluator, n, *eps))
            .collect::<Result<Vec<_>, _>>()
            .map(|rs| (rs, EXIT_OK)),
    };
    match outcome {
        Ok((records, code)) => {
            if cli.format == Format::Text && matches!(cli.command, Command::Bench { .. }) {
                let _ = writeln!(out, "{}", bench_table(&records));
            } else {
                for r in &records {
                    let _ = writeln!(out, "{}", r.render(cli.format));
                }
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "rootmean: {e}");
            if let Error::BeyondFloat(_) = e {
                let _ = writeln!(err, "rootmean: the `floor` command has no size limit");
            }
            EXIT_USAGE
        }
    }
}

pub fn bench_table(records: &[QueryResult]) -> String {
    let mut lines = vec![format!(
        "{:>14} {:>12} {:>12} {:>22} {:>12} {:>12} {:>8}",
        "n", "oracle_ms", "fast_ms", "fast_value", "difference", "bound", "method"
    )];
    for r in records {
        let get = |k: &str| {
            r.details
                .get(k)
                .map(plain)
                .unwrap_or_else(|| "-".to_string())
        };
        let ms = |k: &str| {
            r.details
                .get(k)
                .and_then(Value::as_f64)
                .map(|v| format!("{v:.3}"))
                .unwrap_or_else(|| "-".to_string())
        };
        lines.push(format!(
            "{:>14} {:>12} {:>12} {:>22} {:>12} {:>12} {:>8}",
            plain(&r.inputs["n"]),
            ms("oracle_ms"),
            ms("fast_ms"),
            r.value,
            get("difference"),
            r.error_bound,
            r.method
        ));
    }
    lines.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(2.0, 0.0, 17), "2");
        assert_eq!(format_significant(0.1, 0.0, 17), "0.10000000000000001");
        assert_eq!(format_significant(1234.5, 0.0, 3), "1230");
        assert_eq!(format_significant(1235.5, 0.0, 3), "1240");
        assert_eq!(format_significant(9.9996, 0.0, 4), "10");
        assert_eq!(format_significant(-0.5, 0.0, 5), "-0.5");
        assert_eq!(format_significant(4.1535e-10, 0.0, 5), "4.1535e-10");
        assert_eq!(format_significant(1.0, 1e-20, 25), "1.00000000000000000001");
    }

    #[test]
    fn shortest_round_trip() {
        for x in [
            0.1,
            2108.1852648724284,
            4.153490510e-10,
            1e20,
            3.0,
            1.0 / 3.0,
        ] {
            assert_eq!(format_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_f64(0.0), "0");
    }

    #[test]
    fn floor_command() {
        assert_eq!(cmd_floor("8").unwrap().value, "2");
        assert_eq!(cmd_floor("1").unwrap().value, "1");
        assert_eq!(cmd_floor("10000000").unwrap().value, "2108");
        assert_eq!(cmd_floor("0"), Err(Error::ZeroIndex));
        assert!(cmd_floor("12x").is_err());
        let big = cmd_floor(&format!("1{}", "0".repeat(40))).unwrap();
        assert_eq!(big.value, "66666666666666666666");
        assert_eq!(big.error_bound, "0");
    }

    #[test]
    fn mean_rejects_huge_n() {
        let ev = Evaluator::default();
        assert!(matches!(
            cmd_mean(&ev, "9007199254740993", 1e-9, None),
            Err(Error::BeyondFloat(_))
        ));
    }

    #[test]
    fn text_record_shape() {
        let r = cmd_sum(3, 10, 1.0).unwrap();
        let line = r.render(Format::Text);
        assert!(line
            .starts_with("command=sum from=3 to=10 root=1.0 value=52 error_bound=0 method=exact"));
        let json: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(json["value"], "52");
        assert_eq!(json["inputs"]["from"], 3);
    }
}
