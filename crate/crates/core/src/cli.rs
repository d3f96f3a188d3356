//! Command line front end. Every subcommand prints a human-readable report,
//! or JSON with `--json`; the exit code is 0 when all checks pass, 1 on a
//! failed check or invalid input, and 2 on a usage error.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::json;

use crate::curvewt::{complete_square, git_weight_test, stable_pair_local_test, CurveGerm, Verdict};
use crate::exactmath::hj_expand;
use crate::markov::{enumerate, manetti_wps, MarkovTriple};
use crate::quotsing::{
    class_t_decompositions, cycle_krel_squared, is_p2_admissible, k2rho_change, mu_minus, resolve,
    zk_squared, CyclicQuotient, ResolutionCycle,
};
use crate::report::Report;
use crate::surfcat::{check_surface, parse_surface, verify_catalog};

#[derive(Parser, Debug)]
#[command(name = "p2degen", version, about = "Exact invariants of degenerations of the projective plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Markov triples and the weighted projective planes they define.
    #[command(subcommand)]
    Markov(MarkovCmd),
    /// Cyclic quotient singularities and resolution cycles.
    #[command(subcommand)]
    Sing(SingCmd),
    /// Weighted stability tests for plane curve germs.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Checks on a surface descriptor.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// The built-in degree 4 and 5 catalogs.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Args, Debug)]
struct JsonFlag {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct TripleArgs {
    a: BigUint,
    b: BigUint,
    c: BigUint,
}

impl TripleArgs {
    fn triple(&self) -> crate::Result<MarkovTriple> {
        MarkovTriple::new(self.a.clone(), self.b.clone(), self.c.clone())
    }
}

#[derive(Subcommand, Debug)]
enum MarkovCmd {
    /// All triples reachable from (1,1,1) with entries at most MAX.
    Enumerate {
        #[arg(long)]
        max: BigUint,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Whether a^2 + b^2 + c^2 = 3abc.
    Check {
        #[command(flatten)]
        t: TripleArgs,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Replace the entry at POSITION (1..=3, ascending order) by 3xy - z.
    Mutate {
        #[command(flatten)]
        t: TripleArgs,
        #[arg(long)]
        position: usize,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// K^2 and singularities of P(a^2, b^2, c^2).
    Manetti {
        #[command(flatten)]
        t: TripleArgs,
        #[command(flatten)]
        out: JsonFlag,
    },
}

#[derive(Subcommand, Debug)]
enum SingCmd {
    /// Hirzebruch-Jung expansion of r/a.
    Hj {
        r: u64,
        a: u64,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Resolution chain of 1/r(1,a).
    Resolve {
        r: u64,
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Canonical form, index, Z_K^2 and class T data of 1/r(1,a).
    Invariants {
        r: u64,
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// K^2 of a cycle of rational curves, e.g. `-2,-2,-2,-11,-2,-2,-2,-11`.
    Cycle {
        /// Comma-separated self-intersections, e.g. -3,-3,-4.
        #[arg(allow_hyphen_values = true, value_parser = parse_cycle)]
        self_intersections: Cycle,
        /// First Betti number of the link, for the mu_- count.
        #[arg(long, default_value_t = 1)]
        h1: u64,
        #[command(flatten)]
        out: JsonFlag,
    },
}

#[derive(Clone, Debug)]
struct Cycle(Vec<i64>);

fn parse_cycle(s: &str) -> Result<Cycle, String> {
    s.split(',')
        .map(|e| e.trim().parse::<i64>().map_err(|err| format!("{e:?}: {err}")))
        .collect::<Result<_, _>>()
        .map(Cycle)
}

#[derive(Subcommand, Debug)]
enum CurveCmd {
    /// wt(D) < d/3 (m + n) for every positive weight.
    Test {
        #[arg(long)]
        degree: u64,
        /// JSON germ file, or `-` for standard input.
        #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
        germ: Option<PathBuf>,
        /// Germ as a polynomial, e.g. "y^2 + x^13".
        #[arg(long)]
        expr: Option<String>,
        /// First remove y x^k terms by y -> y + p(x).
        #[arg(long)]
        complete_square: bool,
        #[arg(long, default_value_t = 64)]
        order: u32,
        /// Require a global form of degree at most d.
        #[arg(long)]
        git: bool,
        #[command(flatten)]
        out: JsonFlag,
    },
}

#[derive(Subcommand, Debug)]
enum SurfaceCmd {
    /// Coarse type, K^2, index bound and smoothability conditions.
    Check {
        /// JSON surface file, or `-` for standard input.
        file: PathBuf,
        #[arg(long)]
        degree: u64,
        #[command(flatten)]
        out: JsonFlag,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    Verify {
        #[arg(long)]
        degree: u64,
        #[command(flatten)]
        out: JsonFlag,
    },
}

/// Result of one invocation: text and JSON renderings plus success.
struct Outcome {
    ok: bool,
    text: String,
    json: serde_json::Value,
}

impl Outcome {
    fn from_report(r: Report) -> Self {
        Outcome {
            ok: r.all_passed(),
            text: r.to_text(),
            json: serde_json::to_value(&r).expect("report serializes"),
        }
    }

    fn info(text: String, json: serde_json::Value) -> Self {
        Outcome { ok: true, text, json }
    }
}

fn read_input(path: &PathBuf) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn markov(cmd: MarkovCmd) -> anyhow::Result<(Outcome, bool)> {
    Ok(match cmd {
        MarkovCmd::Enumerate { max, out } => {
            let tree = enumerate(&max);
            let mut text = String::new();
            for t in &tree.triples {
                text.push_str(&format!("{t}\n"));
            }
            text.push_str(&format!(
                "{} triples, {} edges, tree: {}\n",
                tree.triples.len(),
                tree.edges.len(),
                tree.is_tree()
            ));
            let j = json!({
                "max": max.to_string(),
                "triples": tree.triples,
                "edges": tree.edges,
                "is_tree": tree.is_tree(),
            });
            (Outcome { ok: tree.is_tree(), text, json: j }, out.json)
        }
        MarkovCmd::Check { t, out } => {
            let ok = crate::markov::is_markov(&t.a, &t.b, &t.c);
            let mut r = Report::new("");
            r.check(
                format!("({}, {}, {}) is a Markov triple", t.a, t.b, t.c),
                ok,
                "a^2 + b^2 + c^2 = 3abc",
            );
            (Outcome::from_report(r), out.json)
        }
        MarkovCmd::Mutate { t, position, out } => {
            let m = t.triple()?.mutate(position)?;
            (Outcome::info(format!("{m}\n"), json!({ "triple": m })), out.json)
        }
        MarkovCmd::Manetti { t, out } => {
            let s = manetti_wps(&t.triple()?)?;
            let sings = s.singularities();
            let admissible = sings.iter().all(is_p2_admissible);
            let mut r = Report::new(format!("{s}"));
            let k2 = s.k_squared();
            r.check("K^2 = 9", k2 == crate::Rational::integer(9), format!("K^2 = {k2}"));
            let shown: Vec<String> = sings.iter().map(ToString::to_string).collect();
            r.check(
                "singularities are 1/n^2(1,na-1) with 3 not dividing n",
                admissible,
                shown.join(", "),
            );
            (Outcome::from_report(r), out.json)
        }
    })
}

fn sing(cmd: SingCmd) -> anyhow::Result<(Outcome, bool)> {
    Ok(match cmd {
        SingCmd::Hj { r, a, out } => {
            let e = hj_expand(r, a)?;
            let text = format!("{r}/{a} = {:?}\n", e.coefficients());
            (Outcome::info(text, json!({ "r": r, "a": a, "expansion": e.coefficients() })), out.json)
        }
        SingCmd::Resolve { r, a, out } => {
            let s = CyclicQuotient::new(r, a)?;
            let chain = resolve(&s);
            let text = format!("{s}: {:?}\n", chain.self_intersections);
            (Outcome::info(text, json!({ "singularity": s, "chain": chain })), out.json)
        }
        SingCmd::Invariants { r, a, out } => {
            let s = CyclicQuotient::new(r, a)?;
            let chain = resolve(&s);
            let t = class_t_decompositions(&s);
            let j = json!({
                "singularity": s,
                "dual": s.dual(),
                "index": s.index(),
                "chain": chain.self_intersections,
                "zk_squared": zk_squared(&s),
                "k2rho_change": k2rho_change(&s),
                "class_t": t,
                "p2_admissible": is_p2_admissible(&s),
            });
            let text = format!(
                "{s}\n  dual {}\n  index {}\n  chain {:?}\n  Z_K^2 {}\n  change in K^2 + rho {}\n  class T (d,n,a) {:?}\n  P^2 admissible {}\n",
                s.dual(),
                s.index(),
                chain.self_intersections,
                zk_squared(&s),
                k2rho_change(&s),
                t,
                is_p2_admissible(&s)
            );
            (Outcome::info(text, j), out.json)
        }
        SingCmd::Cycle { self_intersections, h1, out } => {
            let c = ResolutionCycle::new(self_intersections.0)?;
            let k2 = cycle_krel_squared(&c)?;
            let mu = mu_minus(&c, h1)?;
            let mut r = Report::new(format!("cycle {:?}", c.self_intersections()));
            r.check("K^2", true, k2.to_string());
            r.check("mu_- >= 0", !mu.is_negative(), format!("mu_- = {mu} (h1 = {h1})"));
            (Outcome::from_report(r), out.json)
        }
    })
}

fn curve(cmd: CurveCmd) -> anyhow::Result<(Outcome, bool)> {
    let CurveCmd::Test { degree, germ, expr, complete_square: square, order, git, out } = cmd;
    let mut g: CurveGerm = match (germ, expr) {
        (Some(path), _) => serde_json::from_str(&read_input(&path)?).context("parsing germ JSON")?,
        (None, Some(e)) => e.parse()?,
        (None, None) => bail!("either --germ or --expr is required"),
    };
    let mut r = Report::new(format!("{g}, degree {degree}"));
    if square {
        let (h, sub) = complete_square(&g, order)?;
        r.title = format!("{h} (after y -> y{}), degree {degree}", shift_text(&sub));
        g = h;
    }
    let v = if git { git_weight_test(&g, degree)? } else { stable_pair_local_test(&g, degree)? };
    let name = if git { "GIT weight test" } else { "stable pair local test" };
    let check = r.check(name, v.passed(), verdict_details(&v));
    if let Verdict::Fail { witness, weight, bound } = &v {
        check.witness = Some(json!({ "m": witness.m(), "n": witness.n(), "weight": weight, "bound": bound }));
    }
    Ok((Outcome::from_report(r), out.json))
}

fn shift_text(sub: &crate::curvewt::Substitution) -> String {
    let g = sub.shift_polynomial();
    if g.is_zero() {
        String::new()
    } else {
        format!(" + ({g})")
    }
}

fn verdict_details(v: &Verdict) -> String {
    match v {
        Verdict::Pass => "wt < d/3 (m + n) for all weights".into(),
        Verdict::Fail { witness, weight, bound } => {
            format!("weights {witness}: wt = {weight} >= {bound}")
        }
    }
}

fn surface(cmd: SurfaceCmd) -> anyhow::Result<(Outcome, bool)> {
    let SurfaceCmd::Check { file, degree, out } = cmd;
    if degree < 4 {
        bail!("degree {degree} is below 4");
    }
    let g = parse_surface(&read_input(&file)?)?;
    let label = file.display().to_string();
    Ok((Outcome::from_report(check_surface(&label, &g, degree)), out.json))
}

fn catalog(cmd: CatalogCmd) -> anyhow::Result<(Outcome, bool)> {
    let CatalogCmd::Verify { degree, out } = cmd;
    Ok((Outcome::from_report(verify_catalog(degree)?), out.json))
}

fn dispatch(cli: Cli) -> anyhow::Result<(Outcome, bool)> {
    match cli.command {
        Command::Markov(c) => markov(c),
        Command::Sing(c) => sing(c),
        Command::Curve(c) => curve(c),
        Command::Surface(c) => surface(c),
        Command::Catalog(c) => catalog(c),
    }
}

/// Runs with explicit output streams; returns the exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli) {
        Ok((outcome, as_json)) => {
            if as_json {
                let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&outcome.json).expect("json"));
            } else {
                let _ = write!(stdout, "{}", outcome.text);
            }
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            1
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut io::stdout().lock(), &mut io::stderr().lock())
}
