//! `ballratio` command-line front end.
//!
//! Exit codes: 0 ok, 1 verification violation, 2 usage error, 3 domain error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::analysis::{
    crossover_in, klein_rota_violations, log_concavity_violations, make_table, summarize,
    verify_bounds_in, SweepContext,
};
use crate::ballvol::{omega_exact, v_exact, w_exact};
use crate::bounds::{catalog_ids, catalog_with_orders, BoundId, Target, FAMILY_COUNT};
use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    V,
    W,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::V => Target::V,
            TargetArg::W => Target::W,
        }
    }
}

/// Unit-ball volume ratios and their bounds.
#[derive(Debug, Parser)]
#[command(name = "ballratio", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact Ω_n with decimal Ω_n, v_n and w_n.
    Volume {
        /// Dimensions, e.g. `0,2,5..8`.
        #[arg(long = "n", value_parser = parse_n_list, default_value = "0..10")]
        n: NList,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Bound values and gaps against the exact ratio.
    Bounds {
        #[arg(long, value_enum, default_value_t = TargetArg::V)]
        target: TargetArg,
        #[arg(long = "n", value_parser = parse_n_list, default_value = "1..10")]
        n: NList,
        /// Comma-separated bound keys, e.g. `lower-d:1,upper-h:2`; defaults
        /// to every bound for the target.
        #[arg(long)]
        ids: Option<String>,
        /// Leave cells empty where n is below a bound's domain.
        #[arg(long)]
        partial: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Checks every bound against the exact ratios for n ≤ n-max.
    Verify {
        #[arg(long = "n-max", default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        /// Truncation orders for the parameterized families.
        #[arg(long = "m", value_parser = parse_n_list, default_value = "1,2,3")]
        m: NList,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Where bound A is sharper than bound B.
    Crossover {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = TargetArg::V)]
        target: TargetArg,
        #[arg(long = "n-max", default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

/// A list of non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NList(pub Vec<u64>);

/// Parses `1,2,5..8` (ranges inclusive).
pub fn parse_n_list(s: &str) -> Result<NList, String> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return Err(format!("empty entry in `{s}`"));
        }
        if let Some((lo, hi)) = item.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let lo: u64 = lo.trim().parse().map_err(|_| format!("bad range `{item}`"))?;
            let hi: u64 = hi.trim().parse().map_err(|_| format!("bad range `{item}`"))?;
            if hi < lo {
                return Err(format!("empty range `{item}`"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(item.parse().map_err(|_| format!("bad integer `{item}`"))?);
        }
    }
    Ok(NList(out))
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Int(u64),
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => format_text(*x),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_full(*x),
            other => other.text(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Num(x) => json!(x),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

/// Seven decimals for moderate magnitudes, seven significant digits in
/// scientific notation otherwise.
pub fn format_text(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        "0".into()
    } else if (1e-4..1e7).contains(&a) {
        format!("{x:.7}")
    } else {
        format!("{x:.6e}")
    }
}

/// 17 significant digits.
pub fn format_full(x: f64) -> String {
    format!("{x:.16e}")
}

struct Report {
    query: Value,
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
    summary: Vec<(String, Value)>,
    rows_in_text: bool,
}

impl Report {
    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.render_text(),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        if self.rows_in_text {
            let cells: Vec<Vec<String>> = self
                .rows
                .iter()
                .map(|r| r.iter().map(Cell::text).collect())
                .collect();
            let widths: Vec<usize> = self
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    cells
                        .iter()
                        .map(|r| r[i].chars().count())
                        .chain([c.chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |vals: &[String]| -> String {
                vals.iter()
                    .zip(&widths)
                    .map(|(v, w)| format!("{v:>w$}", w = *w))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            out.push_str(&line(&self.columns));
            out.push('\n');
            for r in &cells {
                out.push_str(&line(r));
                out.push('\n');
            }
        }
        for (k, v) in &self.summary {
            let v = match v {
                Value::String(s) => s.clone(),
                Value::Number(x) => match x.as_f64() {
                    Some(f) if x.is_f64() => format_text(f),
                    _ => x.to_string(),
                },
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {v}\n"));
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::csv)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    fn render_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(r.iter().map(Cell::json))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let summary: Map<String, Value> = self.summary.iter().cloned().collect();
        let doc = json!({"query": self.query, "rows": rows, "summary": summary});
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BelowMinimum { .. } | Error::NonConvergence { .. } => EXIT_DOMAIN,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn valid_keys(target: Target) -> String {
    let mut keys: Vec<String> = catalog_ids(target)
        .into_iter()
        .map(|id| match id.order() {
            Some(_) => format!("{}:<m>", id.key().split(':').next().unwrap_or_default()),
            None => id.key(),
        })
        .collect();
    keys.dedup();
    keys.join(", ")
}

fn parse_id(target: Target, s: &str) -> Result<BoundId, Failure> {
    BoundId::parse(target, s).map_err(|_| {
        Failure::usage(format!(
            "unknown bound id `{s}` for target {target}; valid ids: {}",
            valid_keys(target)
        ))
    })
}

fn cmd_volume(ns: &[u64]) -> Result<Report, Failure> {
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let om = omega_exact(n);
        let (v, w) = if n == 0 {
            (Cell::Empty, Cell::Empty)
        } else {
            (
                Cell::Num(v_exact(n)?.to_real()),
                Cell::Num(w_exact(n)?.to_real()),
            )
        };
        rows.push(vec![
            Cell::Int(n),
            Cell::Text(om.symbolic()),
            Cell::Num(om.to_real()),
            v,
            w,
        ]);
    }
    Ok(Report {
        query: json!({"command": "volume", "n": ns}),
        columns: ["n", "omega_exact", "omega", "v", "w"].map(String::from).to_vec(),
        rows,
        summary: vec![("count".into(), json!(ns.len()))],
        rows_in_text: true,
    })
}

fn cmd_bounds(target: Target, ns: &[u64], ids: Option<&str>, partial: bool) -> Result<Report, Failure> {
    let ids: Vec<BoundId> = match ids {
        Some(list) => list
            .split(',')
            .map(|s| parse_id(target, s.trim()))
            .collect::<Result<_, _>>()?,
        None => catalog_ids(target),
    };
    let table = make_table::<f64>(target, &ids, ns, partial)?;
    let mut columns = vec!["n".to_string(), format!("{target}_exact")];
    for id in &ids {
        columns.push(id.key());
        columns.push(format!("{} gap", id.key()));
    }
    let rows = table
        .rows
        .iter()
        .map(|row| {
            let mut r = vec![Cell::Int(row.n), Cell::Num(row.exact)];
            for cell in &row.cells {
                match cell {
                    Some(c) => r.extend([Cell::Num(c.value), Cell::Num(c.gap)]),
                    None => r.extend([Cell::Empty, Cell::Empty]),
                }
            }
            r
        })
        .collect();
    Ok(Report {
        query: json!({
            "command": "bounds",
            "target": target.to_string(),
            "n": ns,
            "ids": ids.iter().map(|id| id.key()).collect::<Vec<_>>(),
            "partial": partial,
        }),
        columns,
        rows,
        summary: vec![("rows".into(), json!(table.rows.len()))],
        rows_in_text: true,
    })
}

fn cmd_verify(n_max: u64, orders: &[u64], inject_fault: bool) -> Result<(Report, bool), Failure> {
    let orders: Vec<u32> = orders
        .iter()
        .map(|&m| {
            u32::try_from(m)
                .ok()
                .filter(|&m| m >= 1)
                .ok_or_else(|| Failure::usage(format!("truncation order {m} out of range")))
        })
        .collect::<Result<_, _>>()?;
    let ids: Vec<BoundId> = catalog_with_orders(&orders).into_iter().map(|s| s.id).collect();
    let ctx = SweepContext::<f64>::new(n_max);
    let mut records = verify_bounds_in(&ctx, &ids, n_max);
    if inject_fault {
        if let Some(r) = records.first_mut() {
            r.inject_fault();
        }
    }
    let summaries = summarize(&records);
    let kr = klein_rota_violations(n_max);
    let lc = log_concavity_violations(n_max);
    let violations: usize = summaries.iter().map(|s| s.violations).sum();
    let families = {
        let mut f: Vec<&str> = ids.iter().map(|id| id.family()).collect();
        f.sort_unstable();
        f.dedup();
        f.len()
    };
    let clean = violations == 0 && kr.is_empty() && lc.is_empty();
    let rows = summaries
        .iter()
        .map(|s| {
            vec![
                Cell::Text(s.bound.to_string()),
                Cell::Text(s.bound.target().to_string()),
                Cell::Text(s.bound.key()),
                Cell::Int(s.checked as u64),
                Cell::Int(s.ok as u64),
                Cell::Int(s.violations as u64),
            ]
        })
        .collect();
    let report = Report {
        query: json!({"command": "verify", "n_max": n_max, "m": orders}),
        columns: ["bound", "target", "key", "checked", "ok", "violations"]
            .map(String::from)
            .to_vec(),
        rows,
        summary: vec![
            ("families".into(), json!(families)),
            ("catalog_families".into(), json!(FAMILY_COUNT)),
            ("records".into(), json!(records.len())),
            ("violations".into(), json!(violations)),
            ("klein_rota_violations".into(), json!(kr)),
            ("log_concavity_violations".into(), json!(lc)),
            ("status".into(), json!(if clean { "ok" } else { "FAIL" })),
        ],
        rows_in_text: true,
    };
    Ok((report, clean))
}

fn format_set(ns: &[u64]) -> String {
    if ns.is_empty() {
        return "{}".into();
    }
    let mut parts = Vec::new();
    let mut start = ns[0];
    let mut prev = ns[0];
    for &n in &ns[1..] {
        if n != prev + 1 {
            parts.push((start, prev));
            start = n;
        }
        prev = n;
    }
    parts.push((start, prev));
    let body: Vec<String> = parts
        .into_iter()
        .map(|(a, b)| if a == b { a.to_string() } else { format!("{a}..{b}") })
        .collect();
    format!("{{{}}}", body.join(", "))
}

fn cmd_crossover(target: Target, a: &str, b: &str, n_max: u64) -> Result<Report, Failure> {
    let a = parse_id(target, a)?;
    let b = parse_id(target, b)?;
    let ctx = SweepContext::<f64>::psi_only(n_max);
    let res = crossover_in(&ctx, a, b, n_max).map_err(|e| match e {
        Error::IncompatibleBounds { .. } => Failure::usage(e.to_string()),
        other => other.into(),
    })?;
    let mut rows = Vec::new();
    for n in res.first_n..=n_max {
        let va = ctx.eval(a, n)?;
        let vb = ctx.eval(b, n)?;
        let who = if res.ties.contains(&n) {
            "tie"
        } else if res.sharper_set.contains(&n) {
            "a"
        } else {
            "b"
        };
        rows.push(vec![Cell::Int(n), Cell::Num(va), Cell::Num(vb), Cell::Text(who.into())]);
    }
    let threshold = res.threshold.map_or(Value::Null, |t| json!(t));
    Ok(Report {
        query: json!({
            "command": "crossover",
            "target": target.to_string(),
            "a": a.key(),
            "b": b.key(),
            "n_max": n_max,
        }),
        columns: vec!["n".into(), a.key(), b.key(), "sharper".into()],
        rows,
        summary: vec![
            ("a".into(), json!(a.to_string())),
            ("b".into(), json!(b.to_string())),
            ("range".into(), json!(format!("{}..{}", res.first_n, n_max))),
            ("sharper_set".into(), json!(format_set(&res.sharper_set))),
            ("sharper_count".into(), json!(res.sharper_set.len())),
            ("ties".into(), json!(res.ties)),
            ("threshold".into(), threshold),
            ("interval_start".into(), res.interval_start().map_or(Value::Null, |s| json!(s))),
            ("open_ended".into(), json!(res.open_ended())),
        ],
        rows_in_text: false,
    })
}

/// Runs the tool with `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let (result, format) = match &cli.command {
        Command::Volume { n, format } => (cmd_volume(&n.0).map(|r| (r, true)), *format),
        Command::Bounds {
            target,
            n,
            ids,
            partial,
            format,
        } => (
            cmd_bounds((*target).into(), &n.0, ids.as_deref(), *partial).map(|r| (r, true)),
            *format,
        ),
        Command::Verify {
            n_max,
            m,
            format,
            inject_fault,
        } => (cmd_verify(*n_max, &m.0, *inject_fault), *format),
        Command::Crossover {
            a,
            b,
            target,
            n_max,
            format,
        } => (
            cmd_crossover((*target).into(), a, b, *n_max).map(|r| (r, true)),
            *format,
        ),
    };
    match result {
        Ok((report, clean)) => {
            let _ = out.write_all(report.render(format).as_bytes());
            if clean {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_lists() {
        assert_eq!(parse_n_list("1,2,5..7").unwrap().0, vec![1, 2, 5, 6, 7]);
        assert_eq!(parse_n_list("3..=4").unwrap().0, vec![3, 4]);
        assert!(parse_n_list("1,,2").is_err());
        assert!(parse_n_list("a").is_err());
        assert!(parse_n_list("5..2").is_err());
        assert!(parse_n_list("-1").is_err());
    }

    #[test]
    fn number_formats() {
        assert_eq!(format_text(0.636_619_772_367_581_4), "0.6366198");
        assert_eq!(format_text(4.188_790_204_786_391), "4.1887902");
        assert_eq!(format_text(1.5e-10), "1.500000e-10");
        assert_eq!(format_full(0.5), "5.0000000000000000e-1");
        let x = 2.0 / std::f64::consts::PI;
        assert_eq!(format_full(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn set_rendering() {
        assert_eq!(format_set(&[]), "{}");
        assert_eq!(format_set(&[2, 3, 4, 7]), "{2..4, 7}");
    }
}
