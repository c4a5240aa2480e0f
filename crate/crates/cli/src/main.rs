mod expr;

use clap::{Parser, Subcommand, ValueEnum};
use latjac::arith::{fmt_q, parse_q, Q};
use latjac::dimension::{critical_components, dim_formula_result, dim_jacobi, hp_polynomial, module_ranks, Parity};
use latjac::lattice::Lattice;
use latjac::qseries::catalog;
use latjac::qseries::{theta_series, JacobiQExp};
use latjac::theta_rep::{singular_basis, singular_dimension};
use latjac::verify::{format_line, run_suite, Golden, Suite};
use num_traits::One;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "latjac", version, about = "Jacobi forms of lattice index")]
struct Cli {
    /// machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Tables,
    Identities,
    Representation,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariants of the lattice and the beta-values of its shadow
    Info { lattice: String },
    /// Dimension of J_{k,L}(eps^h)
    Dim {
        lattice: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        /// report the raw formula value instead of the solver's answer
        #[arg(long)]
        formula: bool,
    },
    /// Hilbert-Poincare numerator over (1-t^4)(1-t^6)
    Hp {
        lattice: String,
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        #[arg(long, value_enum)]
        parity: ParityArg,
        /// known dimensions, e.g. 5/2=1,9/2=0
        #[arg(long = "override", value_delimiter = ',')]
        overrides: Vec<String>,
    },
    /// Dimensions of the singular-weight spaces
    Singular {
        lattice: String,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "all")]
        h: Option<i64>,
        #[arg(long)]
        all: bool,
        /// also print a basis of the invariant vectors
        #[arg(long)]
        basis: bool,
    },
    /// q-expansion of a catalog form, or theta:<lattice> for a unimodular lattice
    Qexp {
        name: String,
        #[arg(long, env = "LATJAC_PREC", default_value_t = 10)]
        prec: i64,
    },
    /// Acceptance suites; exits with 3 if any criterion fails
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// directory holding table1.json and a2_even_dims.json
        #[arg(long, env = "LATJAC_GOLDEN_DIR")]
        golden_dir: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Math(String),
    Verification(Value, String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Math(_) => 2,
            Failure::Verification(..) => 3,
        }
    }
}

impl From<latjac::Error> for Failure {
    fn from(e: latjac::Error) -> Self {
        Failure::Math(e.to_string())
    }
}

struct Output {
    json: Value,
    text: String,
}

fn lattice(text: &str) -> Result<Lattice, Failure> {
    let e = expr::parse(text).map_err(|e| Failure::Usage(e.to_string()))?;
    e.eval().map_err(|e| match e {
        expr::ExprError::Lattice(m) => Failure::Math(m),
        other => Failure::Usage(other.to_string()),
    })
}

/// Weights are rationals or decimals with 2k integral.
fn weight(s: &str) -> Result<Q, Failure> {
    let k = parse_q(s).ok_or_else(|| Failure::Usage(format!("cannot read weight {s:?}")))?;
    if !(&k * Q::from_integer(2.into())).denom().is_one() {
        return Err(Failure::Usage(format!("weight {s} is not a half-integer")));
    }
    Ok(k)
}

fn info(text: &str) -> Result<Output, Failure> {
    let l = lattice(text)?;
    let i = l.info();
    let (even, odd) = module_ranks(&l);
    let mut t = format!(
        "lattice {}\ngram {:?}\nrank {}  det {}  {}  level {}  n2 {}\nelementary divisors {:?}\nmodule ranks even {} odd {}\nshadow ({} cosets):\n",
        l.name().unwrap_or(""),
        l.gram(),
        i.rank,
        i.det,
        if i.even { "even" } else { "odd" },
        i.level,
        i.n2,
        i.elementary_divisors,
        even,
        odd,
        i.shadow.len()
    );
    for c in &i.shadow {
        let rep: Vec<String> = c.rep.iter().map(fmt_q).collect();
        t.push_str(&format!("  ({})  beta {}\n", rep.join(", "), fmt_q(&c.beta)));
    }
    let mut j = serde_json::to_value(i).unwrap();
    j["lattice"] = json!(l.name());
    j["gram"] = json!(l.gram());
    j["module_ranks"] = json!({"even": even, "odd": odd});
    Ok(Output { json: j, text: t.trim_end().to_string() })
}

fn dim(text: &str, k: &str, h: i64, formula: bool) -> Result<Output, Failure> {
    let l = lattice(text)?;
    let k = weight(k)?;
    let h = h.rem_euclid(24);
    let r = if formula { dim_formula_result(&l, &k, h)? } else { dim_jacobi(&l, &k, h)? };
    let mut t = format!("dim J_{{{}, {}}}(eps^{h}) = {}  [{:?}, {:?}]", fmt_q(&k), l.name().unwrap_or(""), fmt_q(&r.value), r.exactness, r.method);
    if let (Some(lo), hi) = (r.lower, r.upper) {
        t.push_str(&format!("  bounds {lo}..{}", hi.map_or("?".to_string(), |x| x.to_string())));
    }
    let mut j = serde_json::to_value(&r).unwrap();
    j["lattice"] = json!(l.name());
    j["k"] = json!(fmt_q(&k));
    j["h"] = json!(h);
    Ok(Output { json: j, text: t })
}

fn hp(text: &str, h: i64, parity: ParityArg, overrides: &[String]) -> Result<Output, Failure> {
    let l = lattice(text)?;
    let mut ov = BTreeMap::new();
    for o in overrides {
        let (k, v) = o.split_once('=').ok_or_else(|| Failure::Usage(format!("override {o:?} is not k=v")))?;
        let v: i64 = v.trim().parse().map_err(|_| Failure::Usage(format!("override value {v:?}")))?;
        ov.insert(weight(k)?, v);
    }
    let par = match parity {
        ParityArg::Even => Parity::Even,
        ParityArg::Odd => Parity::Odd,
    };
    let r = hp_polynomial(&l, h.rem_euclid(24), par, &ov);
    let mut t = r.to_string();
    if !r.unknown.is_empty() {
        let u: Vec<String> = r.unknown.iter().map(fmt_q).collect();
        t.push_str(&format!("\nundetermined weights: {} (supply them with --override)", u.join(", ")));
    }
    let mut j = serde_json::to_value(&r).unwrap();
    j["lattice"] = json!(l.name());
    Ok(Output { json: j, text: t })
}

fn singular(text: &str, h: Option<i64>, all: bool, basis: bool) -> Result<Output, Failure> {
    let l = lattice(text)?;
    let single = h.is_some();
    let hs: Vec<i64> = match h {
        Some(h) => vec![h.rem_euclid(24)],
        None => (0..24).collect(),
    };
    let mut t = format!("singular weight {} for {}\n", fmt_q(&Q::new(l.rank().into(), 2.into())), l.name().unwrap_or(""));
    let mut rows = vec![];
    for h in hs {
        let d = singular_dimension(&l, h);
        // without --h or --all only the nonzero spaces are listed
        if all || single || d > 0 {
            t.push_str(&format!("  h = {h:>2}: {d}\n"));
        }
        let mut row = json!({"h": h, "dim": d});
        if basis && d > 0 {
            let b: Vec<Vec<String>> = singular_basis(&l, h).iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
            for v in &b {
                t.push_str(&format!("    [{}]\n", v.join(", ")));
            }
            row["basis"] = json!(b);
        }
        if d > 0 {
            let comps = critical_components(&l, h);
            row["critical_components"] = serde_json::to_value(comps).unwrap();
        }
        rows.push(row);
    }
    let shadow: Vec<Vec<String>> = l.shadow().iter().map(|c| c.rep.iter().map(fmt_q).collect()).collect();
    Ok(Output { json: json!({"lattice": l.name(), "shadow": shadow, "spaces": rows}), text: t.trim_end().to_string() })
}

fn qexp(name: &str, prec: i64) -> Result<Output, Failure> {
    if prec < 0 {
        return Err(Failure::Usage("precision must be nonnegative".into()));
    }
    let phi: JacobiQExp = if let Some(e) = name.strip_prefix("theta:") {
        let l = lattice(e)?;
        if l.shadow().len() != 1 {
            return Err(Failure::Math(format!("{} is not unimodular; theta:<lattice> needs a single shadow coset", l.name().unwrap_or(e))));
        }
        theta_series(&l, &[Q::one()], &Q::from_integer(prec.into()))?
    } else if catalog::NAMES.contains(&name) || name.starts_with("distjac_Z") {
        catalog::named_form(name, prec)?
    } else {
        return Err(Failure::Usage(format!("unknown form {name}; known: {}, theta:<lattice>", catalog::NAMES.join(", "))));
    };
    Ok(Output { json: phi.to_json(), text: phi.to_text() })
}

fn verify(suite: SuiteArg, dir: Option<PathBuf>) -> Result<Output, Failure> {
    let golden = match dir {
        Some(d) => Golden::from_dir(&d).map_err(Failure::Usage)?,
        None => Golden::embedded(),
    };
    let suite = match suite {
        SuiteArg::Tables => Suite::Tables,
        SuiteArg::Identities => Suite::Identities,
        SuiteArg::Representation => Suite::Representation,
        SuiteArg::All => Suite::All,
    };
    let reports = run_suite(suite, &golden);
    let text: Vec<String> = reports.iter().map(format_line).collect();
    let passed = reports.iter().all(|r| r.passed);
    let j = json!({"passed": passed, "criteria": reports});
    if passed {
        Ok(Output { json: j, text: text.join("\n") })
    } else {
        Err(Failure::Verification(j, text.join("\n")))
    }
}

// a closed pipe (e.g. `| head`) is not an error
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let r = match cli.cmd {
        Cmd::Info { lattice } => info(&lattice),
        Cmd::Dim { lattice, k, h, formula } => dim(&lattice, &k, h, formula),
        Cmd::Hp { lattice, h, parity, overrides } => hp(&lattice, h, parity, &overrides),
        Cmd::Singular { lattice, h, all, basis } => singular(&lattice, h, all, basis),
        Cmd::Qexp { name, prec } => qexp(&name, prec),
        Cmd::Verify { suite, golden_dir } => verify(suite, golden_dir),
    };
    match r {
        Ok(o) => {
            if cli.json {
                emit(&serde_json::to_string_pretty(&o.json).unwrap());
            } else {
                emit(&o.text);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let code = f.code();
            match f {
                Failure::Verification(j, text) => {
                    if cli.json {
                        emit(&serde_json::to_string_pretty(&j).unwrap());
                    } else {
                        emit(&text);
                    }
                }
                Failure::Usage(m) | Failure::Math(m) => {
                    if cli.json {
                        let kind = if code == 1 { "usage" } else { "math" };
                        emit(&serde_json::to_string_pretty(&json!({"error": kind, "message": m})).unwrap());
                    } else {
                        eprintln!("error: {m}");
                    }
                }
            }
            ExitCode::from(code)
        }
    }
}
