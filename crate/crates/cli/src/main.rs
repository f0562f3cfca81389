use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use octalg::field::{parse_scalar, Field, Gaussian, Rational, F11, F13, F3, F5, F7};
use octalg::parse::parse_poly;
use octalg::quiver::{count_moduli_points_dyn, moduli_membership, QuiverRep111};
use octalg::report::{Report, Status};
use octalg::reps::{equivalence_check, is_module, search_small_modules, trace_identity_check, RepAssignment};
use octalg::rewrite::{quotient_hilbert, Presentation, RewriteSystem};
use octalg::series::{hilbert_a, hilbert_b};
use octalg::suites::{normal_form_text, run_suite, SuiteOptions};
use octalg::tables::{table_json, tables_check};
use octalg::Error;

#[derive(Parser)]
#[command(name = "octalg", version, about = "Exact computations in the octonion quadratic algebra")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// File of `key = value` lines (seed, max_degree, series_order, brute_degree, samples,
    /// prime, budget, shards).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Octonion multiplication tables.
    Oct {
        #[command(subcommand)]
        cmd: OctCmd,
    },
    /// Normal forms and the rewriting system of A.
    Rewrite {
        #[command(subcommand)]
        cmd: RewriteCmd,
    },
    /// Hilbert series.
    Series {
        #[command(subcommand)]
        cmd: SeriesCmd,
    },
    /// Koszul duality checks.
    Koszul {
        #[command(subcommand)]
        cmd: KoszulCmd,
    },
    /// Derivations and the Ore extension.
    Structure {
        #[command(subcommand)]
        cmd: StructureCmd,
    },
    /// Finite-dimensional modules.
    Reps {
        #[command(subcommand)]
        cmd: RepsCmd,
    },
    /// The quiver and its (1,1,1) moduli space.
    Quiver {
        #[command(subcommand)]
        cmd: QuiverCmd,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = ["octonion", "relations", "rewrite", "series", "koszul", "structure", "reps", "quiver", "all"])]
        suite: String,
    },
}

#[derive(Subcommand)]
enum OctCmd {
    /// Print a multiplication table.
    Table {
        #[arg(long, value_enum, default_value_t = Basis::Standard)]
        basis: Basis,
    },
    /// Compare the printed tables with the computed products.
    Compare,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Standard,
    Split,
}

#[derive(Subcommand)]
enum RewriteCmd {
    /// Normal form of an expression.
    Nf {
        #[arg(long)]
        expr: String,
    },
    /// Overlap ambiguities of the rules.
    Ambiguities,
    /// Number of normal words in each degree up to `degree`.
    Count {
        #[arg(long)]
        degree: usize,
        /// Also count by brute force (slow above degree 7).
        #[arg(long)]
        brute: bool,
    },
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Coefficients of a Hilbert series.
    Hilbert {
        /// `A`, `B`, or `Aquot:<forms>` with comma-separated linear forms, e.g. `Aquot:x1,x2+x3`.
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum KoszulCmd {
    Verify {
        #[arg(long)]
        max_degree: Option<usize>,
    },
}

#[derive(Subcommand)]
enum StructureCmd {
    VerifyDerivations,
    VerifyOre,
}

#[derive(Subcommand)]
enum RepsCmd {
    /// Check a module given as JSON `{"n": n, "X": [7 matrices of strings]}`.
    Check {
        #[arg(long)]
        file: PathBuf,
        /// Coefficient field: `Q`, `Q(i)`, or a prime 3, 5, 7, 11, 13.
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Search for small modules over a prime field.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Number of assignments to try; accepts forms like `1e6`.
        #[arg(long)]
        budget: Option<String>,
        /// Restrict to diagonal matrices.
        #[arg(long)]
        diagonal: bool,
    },
}

#[derive(Subcommand)]
enum QuiverCmd {
    /// Count points of the moduli space over F_p.
    Count {
        #[arg(long)]
        p: Option<u64>,
    },
    /// Membership of a representation; scalars are rationals or Gaussian rationals.
    Check {
        #[arg(long, num_args = 7, allow_hyphen_values = true)]
        u: Vec<String>,
        #[arg(long, num_args = 7, allow_hyphen_values = true)]
        v: Vec<String>,
    },
}

/// A usage problem: exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

enum Outcome {
    Report(Report),
    Data { value: Value, text: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Report(r)) => {
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
            } else {
                print!("{}", render(&r));
            }
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Outcome::Data { value, text }) => {
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&value).expect("value serializes"));
            } else {
                println!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<Usage>().is_some()
                || matches!(
                    e.downcast_ref::<Error>(),
                    Some(Error::Parse(_) | Error::SizeMismatch(_) | Error::UnsupportedPrime(_) | Error::IndexOutOfRange(_))
                );
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

fn render(r: &Report) -> String {
    let mut out = String::new();
    let width = r.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
    for c in &r.checks {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Sampled => "sampled",
        };
        out.push_str(&format!("{status:<8} {:<width$}  {}", c.id, c.claim));
        if !c.details.is_empty() {
            out.push_str(&format!("  [{}]", c.details));
        }
        out.push('\n');
    }
    let failed = r.failures().len();
    out.push_str(&format!("{}: {} checks, {} failed\n", r.suite, r.checks.len(), failed));
    out
}

fn options(g: &Global) -> anyhow::Result<SuiteOptions> {
    let mut o = SuiteOptions::default();
    if let Some(path) = &g.config {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        apply_config(&mut o, &text)?;
    }
    if let Some(s) = g.seed {
        o.seed = s;
    }
    Ok(o)
}

fn apply_config(o: &mut SuiteOptions, text: &str) -> anyhow::Result<()> {
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Usage(format!("config line {}: expected key = value", lineno + 1)))?;
        let v = v.trim().trim_matches('"');
        let num = || parse_count(v).map_err(|_| Usage(format!("config line {}: bad number '{v}'", lineno + 1)));
        match k.trim() {
            "seed" => o.seed = num()?,
            "max_degree" => o.max_degree = num()? as usize,
            "series_order" => o.series_order = num()? as usize,
            "brute_degree" => o.brute_degree = num()? as usize,
            "samples" => o.samples = num()? as usize,
            "prime" => o.prime = num()?,
            "budget" => o.budget = num()?,
            "shards" => o.shards = num()?,
            other => bail!(Usage(format!("config line {}: unknown key '{other}'", lineno + 1))),
        }
    }
    Ok(())
}

/// Parses `1000`, `1e6` or `2.5e3` as a count.
fn parse_count(s: &str) -> anyhow::Result<u64> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let f: f64 = s.parse().map_err(|_| Usage(format!("bad number '{s}'")))?;
    if !(f >= 0.0 && f.fract() == 0.0 && f < 1e18) {
        bail!(Usage(format!("'{s}' is not a whole number")));
    }
    Ok(f as u64)
}

fn strings(v: &[impl ToString]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let opts = options(&cli.global)?;
    match &cli.command {
        Command::Oct { cmd } => match cmd {
            OctCmd::Table { basis } => {
                let value = table_json(matches!(basis, Basis::Split))?;
                let text = serde_json::to_string_pretty(&value)?;
                Ok(Outcome::Data { value, text })
            }
            OctCmd::Compare => Ok(Outcome::Report(tables_check()?)),
        },
        Command::Rewrite { cmd } => rewrite(cmd),
        Command::Series { cmd: SeriesCmd::Hilbert { algebra, n } } => series(algebra, *n),
        Command::Koszul { cmd: KoszulCmd::Verify { max_degree } } => {
            let o = SuiteOptions {
                max_degree: max_degree.unwrap_or(opts.max_degree),
                ..opts
            };
            Ok(Outcome::Report(run_suite("koszul", &o)?))
        }
        Command::Structure { cmd } => {
            let r = match cmd {
                StructureCmd::VerifyDerivations => {
                    let mut r = Report::new("derivations");
                    r.extend(octalg::structure::derivations_check()?);
                    r.extend(octalg::structure::derivation_brackets(opts.seed)?);
                    r.extend(octalg::structure::invariants_check()?.0);
                    r
                }
                StructureCmd::VerifyOre => {
                    let mut r = Report::new("ore");
                    r.extend(octalg::structure::build_b(8)?.1);
                    r.extend(octalg::structure::ore_delta_check(opts.seed)?);
                    r
                }
            };
            Ok(Outcome::Report(r))
        }
        Command::Reps { cmd } => reps(cmd, &opts),
        Command::Quiver { cmd } => quiver(cmd, &opts),
        Command::Verify { suite } => Ok(Outcome::Report(run_suite(suite, &opts)?)),
    }
}

fn rewrite(cmd: &RewriteCmd) -> anyhow::Result<Outcome> {
    let sys = RewriteSystem::from_presentation(&Presentation::<Rational>::algebra_a())?;
    match cmd {
        RewriteCmd::Nf { expr } => {
            let nf = normal_form_text(expr)?;
            Ok(Outcome::Data {
                value: json!({ "input": expr, "normal_form": nf.to_string(), "terms": nf.to_json() }),
                text: nf.to_string(),
            })
        }
        RewriteCmd::Ambiguities => {
            let amb = sys.ambiguities();
            let overlaps: Vec<Value> = amb
                .iter()
                .map(|a| json!({ "word": a.word.to_string(), "resolvable": a.resolvable }))
                .collect();
            let text = amb
                .iter()
                .map(|a| format!("{}  {}", a.word, if a.resolvable { "resolvable" } else { "NOT resolvable" }))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::Data {
                value: json!({ "overlaps": overlaps }),
                text,
            })
        }
        RewriteCmd::Count { degree, brute } => {
            let counts = strings(&sys.count_normal_words_upto(*degree));
            let mut value = json!({ "counts": counts });
            let mut text = counts.join(" ");
            if *brute {
                let b: Vec<u64> = (0..=*degree).map(|n| sys.count_normal_words_brute(n)).collect();
                value["brute"] = json!(strings(&b));
                text = format!("{text}\nbrute: {}", strings(&b).join(" "));
            }
            Ok(Outcome::Data { value, text })
        }
    }
}

fn series(algebra: &str, n: usize) -> anyhow::Result<Outcome> {
    let coeffs: Vec<String> = match algebra {
        "A" => hilbert_a(n).to_strings(),
        "B" => hilbert_b(n).to_strings(),
        other => {
            let spec = other
                .strip_prefix("Aquot:")
                .ok_or_else(|| Usage(format!("unknown algebra '{other}'; use A, B or Aquot:<forms>")))?;
            let forms = spec
                .split(',')
                .map(|f| {
                    let p = parse_poly::<Rational>(f)?;
                    if p.degree() != Some(1) || !p.is_homogeneous() {
                        return Err(Error::Parse(format!("'{f}' is not a linear form")));
                    }
                    Ok(p.coefficient_vector(1, 7))
                })
                .collect::<octalg::Result<Vec<_>>>()?;
            strings(&quotient_hilbert(&forms, n)?.coeffs)
        }
    };
    Ok(Outcome::Data {
        text: coeffs.join(" "),
        value: json!({ "algebra": algebra, "coeffs": coeffs }),
    })
}

fn check_module<F: Field>(v: &Value) -> anyhow::Result<Report> {
    let rep = RepAssignment::<F>::from_json(v)?;
    let mut r = Report::new("module");
    let m = is_module(&rep);
    let witness = m
        .witness
        .as_ref()
        .map(|(i, _)| format!("r{i} does not vanish"))
        .unwrap_or_default();
    r.push("relations", m.is_module, "r_1(X) = ... = r_7(X) = 0", witness);
    r.extend(equivalence_check(&rep));
    if m.is_module {
        r.extend(trace_identity_check(&rep)?);
    }
    Ok(r)
}

fn reps(cmd: &RepsCmd, opts: &SuiteOptions) -> anyhow::Result<Outcome> {
    match cmd {
        RepsCmd::Check { file, field } => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Usage(format!("{}: {e}", file.display())))?;
            let r = match field.as_str() {
                "Q" => check_module::<Rational>(&v)?,
                "Q(i)" => check_module::<Gaussian>(&v)?,
                "3" => check_module::<F3>(&v)?,
                "5" => check_module::<F5>(&v)?,
                "7" => check_module::<F7>(&v)?,
                "11" => check_module::<F11>(&v)?,
                "13" => check_module::<F13>(&v)?,
                other => bail!(Usage(format!("unsupported field '{other}'"))),
            };
            Ok(Outcome::Report(r))
        }
        RepsCmd::Search { n, p, budget, diagonal } => {
            let budget = match budget {
                Some(b) => parse_count(b)?,
                None => opts.budget,
            };
            let value = match p {
                3 => search_small_modules::<3>(*n, budget, *diagonal, opts.seed, opts.shards)?.to_json(),
                5 => search_small_modules::<5>(*n, budget, *diagonal, opts.seed, opts.shards)?.to_json(),
                7 => search_small_modules::<7>(*n, budget, *diagonal, opts.seed, opts.shards)?.to_json(),
                _ => bail!(Usage(format!("search supports p in 3, 5, 7, got {p}"))),
            };
            let text = format!(
                "tried {} assignments ({}), {} modules up to permutation and diagonal conjugation, {} with commuting matrices",
                value["tried"],
                if value["exhaustive"] == json!(true) { "exhaustive" } else { "sampled" },
                value["found"],
                value["commuting"]
            );
            Ok(Outcome::Data { value, text })
        }
    }
}

fn scalars<F: Field>(v: &[String]) -> anyhow::Result<Vec<F>> {
    Ok(v.iter().map(|s| parse_scalar::<F>(s)).collect::<octalg::Result<Vec<_>>>()?)
}

fn quiver(cmd: &QuiverCmd, opts: &SuiteOptions) -> anyhow::Result<Outcome> {
    match cmd {
        QuiverCmd::Count { p } => {
            let c = count_moduli_points_dyn(p.unwrap_or(opts.prime), opts.shards)?;
            let text = format!(
                "p = {}: {} points ({} quadric points, fibers {:?})",
                c.p, c.total, c.quadric_points, c.fiber_dims
            );
            Ok(Outcome::Data {
                value: serde_json::to_value(&c)?,
                text,
            })
        }
        QuiverCmd::Check { u, v } => {
            let gaussian = u.iter().chain(v).any(|s| s.contains('i'));
            let member = if gaussian {
                moduli_membership(&QuiverRep111::new(scalars::<Gaussian>(v)?, scalars::<Gaussian>(u)?)?)?
            } else {
                moduli_membership(&QuiverRep111::new(scalars::<Rational>(v)?, scalars::<Rational>(u)?)?)?
            };
            Ok(Outcome::Data {
                value: json!({ "u": u, "v": v, "member": member }),
                text: if member { "member" } else { "not a member" }.to_string(),
            })
        }
    }
}
