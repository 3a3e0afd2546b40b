use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use curvecount::caporaso_harris::{CHKey, ChOracle};
use curvecount::cusp::class_a2f;
use curvecount::expr::{evaluate, parse, Atom, ClassExpr, Factor, Var};
use curvecount::multisingular::{closed_form_a1fa1f, closed_form_a3f, coeff_table_a1fa1f, coeff_table_a3f, CoeffTable};
use curvecount::nodal::{class_a1f, derive_a1f_coeffs};
use curvecount::verify::{parse_tables, verify};
use curvecount::wdvv::GWTable;
use curvecount::{report, Error, RingElem, Session};

#[derive(Parser)]
#[command(name = "curvecount", version, about = "Exact counts of plane curves tangent to a line")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Print only the answer (or only failing rows for verify).
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Singularity {
    None,
    Node,
    Cusp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "verbatim")]
enum ClassName {
    A1F,
    A2F,
    A1A1,
    A3F,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count curves with a tangency profile and point/line conditions.
    Count {
        #[arg(long)]
        d: u32,
        /// Tangency orders, e.g. 1,1,2.
        #[arg(long, value_delimiter = ',', required = true)]
        tangency: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Singularity::None)]
        singularity: Singularity,
        /// Exponent of y1 (conditions on the line).
        #[arg(long, default_value_t = 0)]
        r: u32,
        /// Exponent of yd (points the curve passes through).
        #[arg(long, default_value_t = 0)]
        s: u32,
        /// Per tangency point: 1 fixes it on the line, 0 leaves it free.
        #[arg(long, value_delimiter = ',')]
        eps: Vec<u32>,
        /// Exponent of b1 (conditions on the singular point).
        #[arg(long, default_value_t = 0)]
        nu: u32,
        /// Report the count with labels of interchangeable points forgotten.
        #[arg(long)]
        unordered: bool,
    },
    /// Evaluate an expression such as "[T1 T1 T2] * y1^2 * yd^31".
    Eval {
        expr: String,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        unordered: bool,
    },
    /// Caporaso-Harris invariant N^{d,delta}(alpha, beta).
    Ch {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        delta: u32,
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        beta: Vec<u32>,
    },
    /// Rational curves: n_d and the tangent counts up to a degree.
    Wdvv {
        #[arg(long)]
        max_d: u32,
    },
    /// Coefficient table of a singularity class.
    Class {
        #[arg(value_enum)]
        name: ClassName,
        #[arg(long)]
        d: u32,
    },
    /// Recompute the reference tables.
    Verify {
        /// Comma-separated: table1,fixed,nodal,cusp,ch,wdvv,classes,classical,oracle or all.
        #[arg(long, default_value = "all")]
        tables: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Parse { pos, .. } = &e {
                if let Cmd::Eval { expr, .. } = &cli.cmd {
                    eprintln!("  {expr}\n  {}^", " ".repeat(*pos));
                }
            }
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> curvecount::Result<ExitCode> {
    match &cli.cmd {
        Cmd::Count { d, tangency, singularity, r, s, eps, nu, unordered } => {
            let expr = count_expr(tangency, *singularity, *r, *s, eps, *nu)?;
            eval_and_print(cli, &expr, *d, *unordered)
        }
        Cmd::Eval { expr, d, unordered } => eval_and_print(cli, &parse(expr)?, *d, *unordered),
        Cmd::Ch { d, delta, alpha, beta } => {
            if *d == 0 {
                return Err(Error::Input("degree must be positive".into()));
            }
            let key = CHKey::new(*d, *delta, alpha.clone(), beta.clone());
            let v = ChOracle::new().invariant(&key);
            let warnings = key.warnings();
            match cli.format {
                Format::Json => println!(
                    "{}",
                    json!({"query": key.to_string(), "d": d, "value": v.to_string(), "warnings": warnings})
                ),
                Format::Csv => println!("query,value\n\"{key}\",{v}"),
                Format::Text if cli.quiet => println!("{v}"),
                Format::Text => {
                    println!("{key} = {v}");
                    for w in warnings {
                        println!("  warning: {w}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Wdvv { max_d } => {
            if *max_d == 0 {
                return Err(Error::Input("--max-d must be positive".into()));
            }
            let mut gw = GWTable::new();
            let rows: Vec<(u32, BigInt, BigInt)> =
                (1..=*max_d).map(|d| Ok((d, gw.kontsevich_nd(d)?, gw.nd_t1(d)?))).collect::<curvecount::Result<_>>()?;
            match cli.format {
                Format::Json => {
                    let v: Vec<_> = rows
                        .iter()
                        .map(|(d, n, t)| json!({"d": d, "nd": n.to_string(), "nd_t1": t.to_string()}))
                        .collect();
                    println!("{}", serde_json::Value::Array(v));
                }
                Format::Csv => {
                    println!("d,nd,nd_t1");
                    for (d, n, t) in &rows {
                        println!("{d},{n},{t}");
                    }
                }
                Format::Text => {
                    if !cli.quiet {
                        println!("{:>3} {:>22} {:>22}", "d", "n_d", "tangent");
                    }
                    for (d, n, t) in &rows {
                        println!("{d:>3} {n:>22} {t:>22}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Class { name, d } => {
            let mut session = Session::new(*d)?;
            let (computed, reference) = match name {
                ClassName::A1F => {
                    let (c12, c21, c30) = derive_a1f_coeffs(&mut session)?;
                    let mut t = CoeffTable::default();
                    t.entries.insert(vec![1, 2], c12);
                    t.entries.insert(vec![2, 1], c21);
                    t.entries.insert(vec![3, 0], c30);
                    (t, Some(table_of(&class_a1f(*d))))
                }
                ClassName::A2F => (table_of(&class_a2f(*d)), None),
                ClassName::A1A1 => (coeff_table_a1fa1f(&mut session)?, Some(closed_form_a1fa1f(*d))),
                ClassName::A3F => (coeff_table_a3f(&mut session)?, Some(closed_form_a3f(*d))),
            };
            print_class(cli, *d, &computed, reference.as_ref());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { tables } => {
            let rep = verify(&parse_tables(tables)?);
            match cli.format {
                Format::Json => println!("{}", report::verify_json(&rep)),
                Format::Csv => print!("{}", report::verify_csv(&rep)),
                Format::Text => print!("{}", report::verify_text(&rep, cli.quiet)),
            }
            Ok(if rep.pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn count_expr(ks: &[u32], sing: Singularity, r: u32, s: u32, eps: &[u32], nu: u32) -> curvecount::Result<ClassExpr> {
    if !eps.is_empty() && eps.len() != ks.len() {
        return Err(Error::Input(format!("--eps has {} entries for {} tangency points", eps.len(), ks.len())));
    }
    if let Some(e) = eps.iter().find(|&&e| e > 1) {
        return Err(Error::Input(format!("--eps entries must be 0 or 1, got {e}")));
    }
    let mut atoms = match sing {
        Singularity::None => vec![],
        Singularity::Node => vec![Atom::A1F],
        Singularity::Cusp => vec![Atom::A2F],
    };
    if sing == Singularity::None && nu > 0 {
        return Err(Error::Input("--nu needs a singular point".into()));
    }
    atoms.extend(ks.iter().map(|&k| Atom::T(k)));
    let mut factors = Vec::new();
    let mut push = |var, exp| {
        if exp > 0 {
            factors.push(Factor { var, exp });
        }
    };
    push(Var::Y1, r);
    push(Var::Yd, s);
    push(Var::B(1), nu);
    for (i, &e) in eps.iter().enumerate() {
        push(Var::A(i + 1), e);
    }
    Ok(ClassExpr { atoms, factors })
}

fn eval_and_print(cli: &Cli, expr: &ClassExpr, d: u32, unordered: bool) -> curvecount::Result<ExitCode> {
    let mut session = Session::new(d)?;
    let ev = evaluate(expr, &mut session)?;
    let query = expr.to_string();
    match cli.format {
        Format::Json => println!("{}", report::json(&query, &ev)),
        Format::Csv => println!("{}\n{}", report::CSV_HEADER, report::csv_row(&query, &ev)),
        Format::Text => {
            let text = report::text(&query, &ev, unordered);
            if cli.quiet {
                println!("{}", text.lines().next().unwrap_or_default());
            } else {
                print!("{text}");
            }
        }
    }
    if unordered && ev.result.unordered_value.is_none() {
        eprintln!("warning: ordered value is not divisible by the symmetry factor");
    }
    Ok(ExitCode::SUCCESS)
}

fn table_of(e: &RingElem) -> CoeffTable {
    let mut t = CoeffTable::default();
    for (m, c) in e.terms() {
        let mut key = vec![m.yd];
        key.extend(&m.b);
        t.entries.insert(key, c.clone());
    }
    t
}

fn print_class(cli: &Cli, d: u32, computed: &CoeffTable, reference: Option<&CoeffTable>) {
    let name = |k: &[u32]| format!("C{}", k.iter().map(u32::to_string).collect::<String>());
    let rows: Vec<(String, BigInt, Option<BigInt>)> =
        computed.entries.iter().map(|(k, v)| (name(k), v.clone(), reference.map(|r| r.get(k)))).collect();
    match cli.format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(k, v, r)| {
                    json!({"coefficient": k, "value": v.to_string(), "closed_form": r.as_ref().map(|r| r.to_string())})
                })
                .collect();
            println!("{}", json!({"d": d, "coefficients": v}));
        }
        Format::Csv => {
            println!("coefficient,value,closed_form");
            for (k, v, r) in &rows {
                println!("{k},{v},{}", r.as_ref().map(|r| r.to_string()).unwrap_or_default());
            }
        }
        Format::Text => {
            for (k, v, r) in &rows {
                match r {
                    Some(r) if !cli.quiet => {
                        let mark = if r == v { "" } else { "  (closed form differs)" };
                        println!("{k:<6} {v:>14}  closed form {r:>14}{mark}");
                    }
                    _ => println!("{k:<6} {v:>14}"),
                }
            }
        }
    }
}
