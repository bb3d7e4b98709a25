use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use hmlab::error::Error;
use hmlab::monodromy::{
    analyze, chain_rep_check, coset_representation, cube_closure_check,
    omega_transvection_crosscheck, predict, HurwitzContext, TheoremTag,
};
use hmlab::nielsen::{build_group, enumerate_classes, ClassSet, EnumMethod, GroupKind};
use hmlab::permtools::FactoredInteger;
use hmlab::verify::run_desk_suite;
use serde_json::{json, Map, Value};
use std::path::PathBuf;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(name = "hmlab", version, about = "Exact monodromy computations for Hurwitz-type covering problems", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Abort long computations after this many seconds (exit code 2).
    #[arg(long, global = true, value_name = "SECS")]
    time_budget: Option<u64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    OrbitBfs,
    Exhaustive,
}

#[derive(Args)]
struct GroupArgs {
    /// Group kind: sym3, sym4 or xn(N).
    #[arg(long)]
    group: String,
    /// Number of branch points (even, >= 4).
    #[arg(long)]
    b: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate Nielsen classes for a group and branch count.
    Enumerate {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Method::OrbitBfs)]
        method: Method,
        /// Reuse (or create) a class-set cache file.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Exact braid-image structure on the classes and their sym3 shadows.
    Analyze {
        #[command(flatten)]
        group: GroupArgs,
        /// Allow the oversized stretch computations (sym4 with b > 6).
        #[arg(long)]
        stretch: bool,
    },
    /// Compare the Nielsen-class omega action with the mod-3 chain
    /// transvections on projective points.
    OmegaCrosscheck {
        #[arg(long)]
        g: usize,
    },
    /// Coset construction of the quotient by the even-stabilizer subgroup.
    CosetRep {
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_cosets: usize,
    },
    /// Verify the chain transvections generate the full symplectic group.
    ChainCheck {
        #[arg(long)]
        g: usize,
        #[arg(long = "N")]
        n: u64,
    },
    /// Normal closure of a cubed transvection inside the chain group.
    CubeCheck {
        #[arg(long)]
        g: usize,
        #[arg(long = "N")]
        n: u64,
    },
    /// Predicted exact orders from the structure theorems.
    Predict {
        /// thm1, thm1-exceptional-g0, thm1-exceptional-g1, thm2 or thm3.
        tag: String,
        #[arg(long)]
        g: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long = "N")]
        n: Option<u64>,
    },
    /// Run an acceptance suite and print PASS/FAIL per criterion.
    Verify {
        #[arg(long, default_value = "desk")]
        suite: String,
    },
}

struct Report {
    computation: &'static str,
    params: Vec<(&'static str, Value)>,
    results: Vec<(String, Value)>,
}

impl Report {
    fn new(computation: &'static str) -> Self {
        Report { computation, params: Vec::new(), results: Vec::new() }
    }

    fn param(&mut self, key: &'static str, value: impl Into<Value>) -> &mut Self {
        self.params.push((key, value.into()));
        self
    }

    fn result(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.results.push((key.into(), value.into()));
        self
    }

    fn order(&mut self, key: &str, value: &FactoredInteger) -> &mut Self {
        let pairs: Vec<Value> = value
            .pairs()
            .iter()
            .map(|&(p, e)| json!([p, e]))
            .collect();
        self.results.push((format!("{key}_factored"), Value::Array(pairs)));
        self.results
            .push((format!("{key}_decimal"), Value::String(value.to_biguint().to_string())));
        self
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut params = Map::new();
                for (k, v) in &self.params {
                    params.insert((*k).into(), v.clone());
                }
                let mut results = Map::new();
                for (k, v) in &self.results {
                    results.insert(k.clone(), v.clone());
                }
                let root = json!({
                    "computation": self.computation,
                    "params": Value::Object(params),
                    "results": Value::Object(results),
                });
                let mut s = serde_json::to_string_pretty(&root).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = format!("computation: {}\n", self.computation);
                for (k, v) in &self.params {
                    out.push_str(&format!("  {k}: {}\n", plain(v)));
                }
                for (k, v) in &self.results {
                    out.push_str(&format!("{k} = {}\n", plain(v)));
                }
                out
            }
            Format::Tsv => {
                let mut out = format!("computation\t{}\n", self.computation);
                for (k, v) in &self.params {
                    out.push_str(&format!("param.{k}\t{}\n", plain(v)));
                }
                for (k, v) in &self.results {
                    out.push_str(&format!("{k}\t{}\n", plain(v)));
                }
                out
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(64);
        }
    };
    let deadline = cli.time_budget.map(|s| Instant::now() + Duration::from_secs(s));
    match run(cli, deadline) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Hypothesis(_) => 1,
                Error::Budget(_) => 2,
                _ => 1,
            };
            std::process::exit(code);
        }
    }
}

fn run(cli: Cli, deadline: Option<Instant>) -> Result<i32, Error> {
    let format = cli.format;
    match cli.command {
        Command::Enumerate { group, method, cache } => {
            let kind: GroupKind = group.group.parse()?;
            let method_name = match method {
                Method::OrbitBfs => "orbit-bfs",
                Method::Exhaustive => "exhaustive",
            };
            let cs = match &cache {
                Some(path) if path.exists() => {
                    let cs = ClassSet::load(path)?;
                    if cs.kind() != kind || cs.b() != group.b {
                        return Err(Error::CacheFormat(format!(
                            "cache holds ({}, b={}), requested ({kind}, b={})",
                            cs.kind(),
                            cs.b(),
                            group.b
                        )));
                    }
                    cs
                }
                _ => {
                    let table = build_group(kind)?;
                    let cs = enumerate_classes(
                        &table,
                        group.b,
                        match method {
                            Method::OrbitBfs => EnumMethod::OrbitBfs,
                            Method::Exhaustive => EnumMethod::Exhaustive,
                        },
                    )?;
                    if let Some(path) = &cache {
                        cs.save(path)?;
                    }
                    cs
                }
            };
            let mut report = Report::new("enumerate");
            report
                .param("group", kind.to_string())
                .param("b", group.b as u64)
                .param("method", method_name);
            report.result("classes", cs.len() as u64);
            print!("{}", report.render(format));
            Ok(0)
        }
        Command::Analyze { group, stretch } => {
            let kind: GroupKind = group.group.parse()?;
            if kind == GroupKind::Sym4 && group.b > 6 && !stretch {
                return Err(Error::Hypothesis(format!(
                    "the full braid image for sym4 with b={} is a stretch computation; \
                     pass --stretch (and consider --time-budget)",
                    group.b
                )));
            }
            let ctx = HurwitzContext::build(kind, group.b)?;
            let r = analyze(&ctx, deadline)?;
            let mut report = Report::new("analyze");
            report
                .param("group", kind.to_string())
                .param("b", group.b as u64);
            report
                .result("degree", r.degree as u64)
                .result("omega_degree", r.omega_degree as u64)
                .result("transitive", r.transitive)
                .result("omega_transitive", r.omega_transitive)
                .order("order", &r.group_order)
                .order("omega_order", &r.omega_order)
                .order("kernel_order", &r.kernel_order);
            print!("{}", report.render(format));
            Ok(0)
        }
        Command::OmegaCrosscheck { g } => {
            let r = omega_transvection_crosscheck(g)?;
            let mut report = Report::new("omega-crosscheck");
            report.param("g", g as u64);
            let types: Vec<Value> = r
                .cycle_types
                .iter()
                .map(|(p, _)| Value::Array(p.iter().map(|&l| json!(l)).collect()))
                .collect();
            report
                .result("ok", r.ok)
                .result("degree", r.degree as u64)
                .order("projective_order", &r.projective_order)
                .order("omega_order", &r.omega_order)
                .order("expected_order", &r.expected_order)
                .result("cycle_types", Value::Array(types));
            print!("{}", report.render(format));
            Ok(if r.ok { 0 } else { 1 })
        }
        Command::CosetRep { g, max_cosets } => {
            if g > 1 {
                return Err(Error::Hypothesis(format!(
                    "the coset construction needs g in {{0,1}} (got g={g}): \
                     the fiber group is simple for g>1"
                )));
            }
            let ctx = HurwitzContext::build(GroupKind::Sym4, 2 * g + 6)?;
            let r = coset_representation(&ctx, max_cosets, deadline)?;
            let mut report = Report::new("coset-rep");
            report.param("g", g as u64);
            report
                .result("cosets", r.degree as u64)
                .order("image_order", r.image.order_factored());
            print!("{}", report.render(format));
            Ok(0)
        }
        Command::ChainCheck { g, n } => {
            let r = chain_rep_check(g, n)?;
            let mut report = Report::new("chain-check");
            report.param("g", g as u64).param("N", n);
            report
                .result("ok", r.ok)
                .result("dimension", r.dimension as u64)
                .order("order", &r.order)
                .order("expected", &r.expected);
            print!("{}", report.render(format));
            Ok(if r.ok { 0 } else { 1 })
        }
        Command::CubeCheck { g, n } => {
            let r = cube_closure_check(g, n)?;
            let mut report = Report::new("cube-check");
            report.param("g", g as u64).param("N", n);
            report
                .result("ok", r.ok)
                .result("full", r.full)
                .result("expected_full", r.expected_full)
                .order("closure_order", &r.closure_order)
                .order("full_order", &r.full_order);
            print!("{}", report.render(format));
            Ok(if r.ok { 0 } else { 1 })
        }
        Command::Predict { tag, g, b, n } => {
            let tag: TheoremTag = tag.parse()?;
            let p = predict(tag, g, b, n)?;
            let mut report = Report::new("predict");
            report.param("tag", tag.to_string());
            if let Some(g) = p.g {
                report.param("g", g);
            }
            if let Some(b) = p.b {
                report.param("b", b);
            }
            if let Some(n) = p.n {
                report.param("N", n);
            }
            report.result("omega_size", p.omega_size);
            if let Some(f) = p.fiber_size {
                report.result("fiber_size", f);
            }
            report
                .order("left_order", &p.left_order)
                .result("left_exponent", p.left_exponent)
                .order("right_order", &p.right_order)
                .order("total", &p.total);
            print!("{}", report.render(format));
            Ok(0)
        }
        Command::Verify { suite } => {
            if suite != "desk" {
                return Err(Error::InvalidParameter(format!("unknown suite {suite:?}")));
            }
            let outcomes = run_desk_suite();
            let mut all_pass = true;
            for o in &outcomes {
                all_pass &= o.pass;
                println!(
                    "criterion {}: {} - {} ({})",
                    o.id,
                    if o.pass { "PASS" } else { "FAIL" },
                    o.name,
                    o.detail
                );
            }
            println!(
                "{}/{} criteria passed",
                outcomes.iter().filter(|o| o.pass).count(),
                outcomes.len()
            );
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}
