use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use opsusp_core::acceptance::{run_acceptance, Profile};
use opsusp_core::barres::{basis_cap, build_bar, group_cohomology, group_homology, simplex_label, Coefficients};
use opsusp_core::chaincore::json::{complex_from_json, homology_to_json, ComplexJson};
use opsusp_core::chaincore::{homology, AbelianGroup, ChainComplex};
use opsusp_core::coalg::json::{coalgebra_from_json, coalgebra_to_json};
use opsusp_core::coalg::{
    check_coalgebra, circle, make_interval, suspend_m, trivial_coalgebra, IntervalLift, PointedCoalgebra,
};
use opsusp_core::operad::json::operad_from_json;
use opsusp_core::operad::{check_axioms, check_morphism, AxiomReport, BarOperad, CoassocOperad, S0Operad, SuspOperad};
use opsusp_core::stable::{
    align_zigzag, certificate, verify_zigzag, zigzag_from_json, zigzag_to_json, zigzag_window, Certificate, Direction,
};
use opsusp_core::suspops::{check_suspension_theorem, make_v};
use opsusp_core::{tmap, CompositionShape, Error, Permutation};

#[derive(Parser)]
#[command(name = "opsusp", version, about = "Exact checks for operads, m-coalgebras and their suspensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Window {
    #[arg(long, default_value_t = 3)]
    max_rank: usize,
    #[arg(long, default_value_t = 3)]
    max_degree: i64,
}

impl Window {
    fn bar(self) -> opsusp_core::Result<BarOperad> {
        BarOperad::new(self.max_rank, self.max_degree)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OperadName {
    S0,
    Coassoc,
    Susp,
    Desusp,
    Bar,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeffs {
    Trivial,
    Sign,
}

impl From<Coeffs> for Coefficients {
    fn from(c: Coeffs) -> Self {
        match c {
            Coeffs::Trivial => Coefficients::Trivial,
            Coeffs::Sign => Coefficients::Sign,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Lift {
    P0,
    P1,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Interval,
    Circle,
    Point,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cert {
    Identity,
    Cone,
    Retraction,
    Levels,
}

/// `a..b`, both ends included.
fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

#[derive(Subcommand)]
enum Command {
    /// Run the operad axiom suite on a built-in operad or an operad JSON table.
    CheckAxioms {
        #[arg(long, required_unless_present = "input", conflicts_with = "input")]
        name: Option<OperadName>,
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Homology of a complex, or of the carrier of a coalgebra.
    Homology {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_parser = parse_range)]
        range: (i64, i64),
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// (Co)homology of S_n from its bar resolution.
    GroupHomology {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        min_degree: i64,
        #[arg(long)]
        max_degree: i64,
        #[arg(long, value_enum, default_value = "trivial")]
        coefficients: Coeffs,
        #[arg(long)]
        cohomology: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// T-map of a composition shape: one-line images, 1-based.
    Tmap {
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        sigma: Vec<usize>,
    },
    /// m-coalgebras over windows of the bar operad.
    #[command(subcommand)]
    Coalgebra(CoalgebraCommand),
    /// The morphism 𝔙 and the suspension theorem.
    #[command(subcommand)]
    Susp(SuspCommand),
    /// Levelled objects and zigzag certificates.
    #[command(subcommand)]
    Stable(StableCommand),
    /// Run the acceptance criteria.
    Acceptance {
        #[arg(long, default_value = "fast")]
        profile: Profile,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CoalgebraCommand {
    /// Write a built-in pointed coalgebra, optionally suspended `--suspend` times.
    Build {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        window: Window,
        #[arg(long, value_enum, default_value = "p0")]
        lift: Lift,
        #[arg(long, default_value_t = 0)]
        suspend: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the coalgebra laws on every window element.
    Check {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum SuspCommand {
    /// Tabulate 𝔙: 𝔖 → Σ𝔖 and check it is an operad morphism.
    Vmap {
        #[command(flatten)]
        window: Window,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify (SC)⁺ = ΣC⁺ and the structure squares for a pointed coalgebra.
    CheckTheorem {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The class α_n ∈ H^{n−1}(S_n; M) induced by 𝔙.
    Alpha {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        window: Window,
        #[arg(long, value_enum, default_value = "sign")]
        coefficients: Coeffs,
    },
}

#[derive(Subcommand)]
enum StableCommand {
    /// Write a built-in zigzag certificate.
    Certificate {
        #[arg(long, value_enum)]
        kind: Cert,
        #[command(flatten)]
        window: Window,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify every arrow of a zigzag; left arrows as quasi-isos on the range.
    Verify {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_parser = parse_range)]
        range: Option<(i64, i64)>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pull every object to the level of the zigzag.
    Align {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, body: &str) -> anyhow::Result<()> {
    let mut body = body.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> anyhow::Result<()> {
    if let Some(p) = path {
        write(p, &serde_json::to_string_pretty(value)?)?;
    }
    Ok(())
}

fn print_groups(prefix: &str, h: &std::collections::BTreeMap<i64, AbelianGroup>) {
    for (d, g) in h {
        println!("{prefix}{d} = {g}");
    }
}

fn axioms_verdict(rep: &AxiomReport, out: &Option<PathBuf>) -> anyhow::Result<bool> {
    println!("{rep}");
    write_json(out, rep)?;
    Ok(rep.passed())
}

/// A complex JSON file, or the carrier of a coalgebra JSON file.
fn load_complex(text: &str) -> anyhow::Result<ChainComplex> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    match v.get("carrier") {
        Some(c) => {
            let j: ComplexJson = serde_json::from_value(c.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(ChainComplex::try_from(&j)?)
        }
        None => Ok(complex_from_json(text)?),
    }
}

#[derive(Serialize)]
struct VEntry {
    element: String,
    value: Vec<(i64, String)>,
}

#[derive(Serialize)]
struct VTable {
    max_rank: usize,
    max_degree: i64,
    morphism: bool,
    entries: Vec<VEntry>,
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::CheckAxioms { name, input, max_rank, max_degree, out } => {
            let rep = match (name, input) {
                (_, Some(p)) => check_axioms(&operad_from_json(&read(&p)?)?)?,
                (Some(OperadName::S0), _) => check_axioms(&S0Operad::new(max_rank))?,
                (Some(OperadName::Coassoc), _) => check_axioms(&CoassocOperad::new(max_rank))?,
                (Some(OperadName::Susp), _) => check_axioms(&SuspOperad::susp(max_rank))?,
                (Some(OperadName::Desusp), _) => check_axioms(&SuspOperad::desusp(max_rank))?,
                (Some(OperadName::Bar), _) => check_axioms(&BarOperad::new(max_rank, max_degree)?)?,
                (None, None) => bail!("give --name or --in"),
            };
            axioms_verdict(&rep, &out)
        }
        Command::Homology { input, range: (a, b), out } => {
            let c = load_complex(&read(&input)?)?;
            let h = homology(&c, a, b)?;
            print_groups("H_", &h);
            write_json(&out, &homology_to_json(&h))?;
            Ok(true)
        }
        Command::GroupHomology { n, min_degree, max_degree, coefficients, cohomology, out } => {
            let res = build_bar(n, max_degree + 1, basis_cap())?;
            let h = if cohomology {
                group_cohomology(&res, coefficients.into(), min_degree, max_degree)?
            } else {
                group_homology(&res, coefficients.into(), min_degree, max_degree)?
            };
            print_groups(if cohomology { "H^" } else { "H_" }, &h);
            write_json(&out, &homology_to_json(&h))?;
            Ok(true)
        }
        Command::Tmap { alpha, sigma } => {
            let sigma = Permutation::new(sigma)?;
            let t = tmap(&CompositionShape::new(alpha), &sigma)?;
            let images: Vec<String> = t.images().iter().map(|i| i.to_string()).collect();
            println!("{}", images.join(","));
            Ok(true)
        }
        Command::Coalgebra(c) => run_coalgebra(c),
        Command::Susp(c) => run_susp(c),
        Command::Stable(c) => run_stable(c),
        Command::Acceptance { profile, out } => {
            let report = run_acceptance(profile);
            println!("{report}");
            eprintln!("elapsed {:.1}s", report.elapsed.as_secs_f64());
            write_json(&out, &report)?;
            Ok(report.passed)
        }
    }
}

fn build_coalgebra(kind: Kind, bar: BarOperad, lift: IntervalLift) -> opsusp_core::Result<PointedCoalgebra> {
    match kind {
        Kind::Interval => make_interval(bar, lift),
        Kind::Circle => circle(&make_interval(bar, lift)?),
        Kind::Point => trivial_coalgebra(bar),
    }
}

fn run_coalgebra(c: CoalgebraCommand) -> anyhow::Result<bool> {
    match c {
        CoalgebraCommand::Build { kind, window, lift, suspend, out } => {
            let lift = match lift {
                Lift::P0 => IntervalLift::ToP0,
                Lift::P1 => IntervalLift::ToP1,
            };
            let interval = make_interval(window.bar()?, lift)?;
            let mut k = build_coalgebra(kind, window.bar()?, lift)?;
            for _ in 0..suspend {
                k = suspend_m(&k, &interval)?;
            }
            write(&out, &coalgebra_to_json(&k))?;
            println!("{}: {} cells", k.base.name, k.base.cells().len());
            Ok(true)
        }
        CoalgebraCommand::Check { input } => {
            let k = coalgebra_from_json(&read(&input)?)?;
            let rep = check_coalgebra(&k.base)?;
            println!("{rep}");
            println!("reduced: {}", k.is_reduced()?);
            Ok(rep.passed())
        }
    }
}

fn run_susp(c: SuspCommand) -> anyhow::Result<bool> {
    match c {
        SuspCommand::Vmap { window, out } => {
            let v = make_v(window.bar()?, IntervalLift::ToP0)?;
            let rep = check_morphism(&v)?;
            let mut entries = Vec::new();
            for (x, val) in v.entries() {
                if val.is_empty() {
                    continue;
                }
                let value: Vec<(i64, String)> =
                    val.iter().map(|((n, y), &c)| (c, format!("s{n}⊗{}", simplex_label(y)))).collect();
                let terms: Vec<String> = value.iter().map(|(c, l)| format!("{c:+}·{l}")).collect();
                println!("𝔙({}) = {}", simplex_label(x), terms.join(" "));
                entries.push(VEntry { element: simplex_label(x), value });
            }
            println!("{rep}");
            let table =
                VTable { max_rank: window.max_rank, max_degree: window.max_degree, morphism: rep.passed(), entries };
            write_json(&out, &table)?;
            Ok(rep.passed())
        }
        SuspCommand::CheckTheorem { input, out } => {
            let k = coalgebra_from_json(&read(&input)?)?;
            let bar = k.base.operad.clone();
            let interval = make_interval(bar.clone(), IntervalLift::ToP0)?;
            let v = make_v(bar, IntervalLift::ToP0)?;
            let rep = check_suspension_theorem(&k, &interval, &v)?;
            println!("{rep}");
            write_json(&out, &rep)?;
            Ok(rep.passed())
        }
        SuspCommand::Alpha { n, window, coefficients } => {
            if n < 2 || n > window.max_rank {
                bail!(Error::Precondition(format!("n = {n} must lie in 2..={}", window.max_rank)));
            }
            let v = make_v(window.bar()?, IntervalLift::ToP0)?;
            let a = v.alpha(n, coefficients.into())?;
            match (&a.cocycle, &a.order) {
                (false, _) => println!("α_{n} is not a cocycle"),
                (true, Some(o)) => println!("α_{n} has order {o} in H^{}(S_{n})", n - 1),
                (true, None) => println!("α_{n} has infinite order in H^{}(S_{n})", n - 1),
            }
            Ok(a.cocycle)
        }
    }
}

fn run_stable(c: StableCommand) -> anyhow::Result<bool> {
    match c {
        StableCommand::Certificate { kind, window, out } => {
            let kind = match kind {
                Cert::Identity => Certificate::Identity,
                Cert::Cone => Certificate::Cone,
                Cert::Retraction => Certificate::Retraction,
                Cert::Levels => Certificate::Levels,
            };
            let z = certificate(kind, &window.bar()?)?;
            write(&out, &zigzag_to_json(&z))?;
            println!("{} objects, {} arrows", z.objects.len(), z.arrows.len());
            Ok(true)
        }
        StableCommand::Verify { input, range, out } => {
            let z = zigzag_from_json(&read(&input)?)?;
            let v = make_v(zigzag_window(&z)?, IntervalLift::ToP0)?;
            let rep = verify_zigzag(&z, &v, range);
            for a in &rep.arrows {
                let dir = if a.direction == Direction::Left { "←" } else { "→" };
                let verdict = if a.passed() { "ok".to_string() } else { failure_text(a) };
                println!("arrow {} {dir}: {verdict}", a.index);
            }
            let verdict = if rep.accepted { "accepted" } else { "rejected" };
            println!("{verdict} at level {}", rep.level);
            write_json(&out, &rep)?;
            Ok(rep.accepted)
        }
        StableCommand::Align { input, out } => {
            let z = zigzag_from_json(&read(&input)?)?;
            let v = make_v(zigzag_window(&z)?, IntervalLift::ToP0)?;
            match align_zigzag(&z, &v) {
                Ok(a) => {
                    write(&out, &zigzag_to_json(&a))?;
                    println!("aligned at level {}", opsusp_core::stable::level_of(&a));
                    Ok(true)
                }
                Err(Error::Precondition(m)) => {
                    println!("not aligned: {m}");
                    Ok(false)
                }
                Err(e) => Err(anyhow!(e)),
            }
        }
    }
}

fn failure_text(a: &opsusp_core::stable::ArrowCheck) -> String {
    if let Some(e) = &a.error {
        return format!("error: {e}");
    }
    if let Some((x, c)) = &a.coalgebra_witness {
        return format!("structure square fails at {x} on {c}");
    }
    match &a.homology_witness {
        Some((d, g)) => format!("not a quasi-iso: cone has H_{d} = {g}"),
        None => "not a quasi-iso".into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
