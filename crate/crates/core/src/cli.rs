//! The `simres` command line.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::complex::SimplicialComplex;
use crate::corpus::{self, CorpusEntry};
use crate::error::{Error, Result};
use crate::families::{color_shifted, shifted};
use crate::linalg::Rational;
use crate::network::{self, Network};
use crate::trees::{self, simplex_arg, WeightAssignment, DEFAULT_FACET_BOUND};
use crate::verify::{self, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "simres", version, about = "Exact simplicial spanning trees and effective resistance")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weighted top-dimensional tree number, by brute force or closed form.
    TreeCount {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        formula: Option<Formula>,
        /// Print brute force and closed form with a verdict.
        #[arg(long, requires = "formula")]
        both: bool,
    },
    /// Effective resistance of a generator attached across `--sigma`.
    Resistance {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        sigma: String,
        /// Cross-check against the tree-count ratio.
        #[arg(long)]
        verify: bool,
    },
    /// The facet-addition ratio `k(Δ)/k(Δ minus σ)` for a facet `σ`.
    Ratio {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        sigma: String,
        #[arg(long, value_enum)]
        formula: Option<Formula>,
        /// Also compute the ratio by brute force, with a verdict.
        #[arg(long)]
        both: bool,
    },
    /// Reduced Betti numbers and torsion orders.
    Homology {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the identity checks on the built-in corpus and any given files.
    Verify {
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random weight points in addition to the prime point.
        #[arg(long, default_value_t = 2)]
        points: usize,
        #[arg(long, default_value_t = DEFAULT_FACET_BOUND, value_parser = clap::value_parser!(usize))]
        bound: usize,
        #[arg(long)]
        only: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Records)]
        format: Format,
        /// Skip the built-in corpus.
        #[arg(long)]
        no_builtin: bool,
        #[arg(long, hide = true)]
        corrupt_currents: bool,
    },
}

#[derive(Debug, Args)]
pub struct Input {
    /// Facet file, or a generator file whose first line is `generators`.
    pub file: PathBuf,
    /// `unit`, `random:K`, or a file of `vertex p/q` lines.
    #[arg(long, default_value = "unit")]
    pub weights: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_FACET_BOUND)]
    pub bound: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    Shifted,
    ColorShifted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

/// Command output and exit status.
pub struct Outcome {
    pub stdout: String,
    pub success: bool,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })
}

/// Parses a facet file, or closes a `generators` file under the shifted or
/// color-shifted order according to its vertex kind.
pub fn parse_input(text: &str) -> Result<SimplicialComplex> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let Some((first, header)) = lines.next() else {
        return Err(Error::Empty);
    };
    if header.trim() != "generators" {
        return SimplicialComplex::parse(text);
    }
    let rest: Vec<&str> = text.lines().skip(first + 1).collect();
    let generators = crate::complex::parse_facet_lines(&rest.join("\n"))?;
    if generators.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(tuples) = generators.iter().map(|g| g.color_tuple()).collect::<Option<Vec<_>>>() {
        color_shifted::generate(&tuples)
    } else if let Some(ids) = generators.iter().map(|g| g.plain_ids()).collect::<Option<Vec<_>>>() {
        shifted::generate(
            &ids.into_iter()
                .map(|s| s.into_iter().map(|v| v as usize).collect())
                .collect::<Vec<Vec<usize>>>(),
        )
    } else {
        Err(Error::MixedVertices)
    }
}

/// Weight points named by a weight spec.
pub fn weight_points(spec: &str, k: &SimplicialComplex, seed: u64) -> Result<Vec<(String, WeightAssignment)>> {
    let vertices = k.vertices();
    if spec == "unit" {
        return Ok(vec![("unit".into(), WeightAssignment::unit(&vertices))]);
    }
    if let Some(count) = spec.strip_prefix("random:") {
        let count: usize = count.parse().map_err(|_| Error::Parse {
            line: 0,
            message: format!("bad point count in {spec:?}"),
        })?;
        let mut points = verify::weight_points(&vertices, seed, count);
        points.remove(0);
        return Ok(points);
    }
    Ok(vec![(spec.to_string(), WeightAssignment::parse(&read(Path::new(spec))?)?)])
}

fn closed_form(k: &SimplicialComplex, formula: Formula, w: &WeightAssignment) -> Result<(Rational, String)> {
    match formula {
        Formula::Shifted => {
            let n = shifted::check(k)?;
            let c = shifted::tree_number(k, &shifted::GaleWeights::from_assignment(n, w)?)?;
            Ok((c.value, c.formula))
        }
        Formula::ColorShifted => {
            let n = color_shifted::check(k)?;
            let c = color_shifted::tree_number(k, &color_shifted::ColorScheme::from_assignment(&n, w)?)?;
            Ok((c.value, c.formula))
        }
    }
}

fn closed_ratio(k: &SimplicialComplex, formula: Formula, w: &WeightAssignment, sigma: &crate::complex::Simplex) -> Result<Rational> {
    match formula {
        Formula::Shifted => {
            let n = shifted::check(k)?;
            let ids: Vec<usize> = sigma
                .plain_ids()
                .ok_or(Error::MixedVertices)?
                .into_iter()
                .map(|v| v as usize)
                .collect();
            shifted::explicit_current(k, &shifted::GaleWeights::from_assignment(n, w)?, &ids).map(|c| c.ratio())
        }
        Formula::ColorShifted => {
            let n = color_shifted::check(k)?;
            let t = sigma.color_tuple().ok_or(Error::MixedVertices)?;
            let scheme = color_shifted::ColorScheme::from_assignment(&n, w)?;
            color_shifted::explicit_current(k, &scheme, &t).map(|c| c.ratio())
        }
    }
}

fn verdict(equal: bool) -> &'static str {
    if equal {
        "EQUAL"
    } else {
        "DIFFER"
    }
}

/// Text lines are `label value...`, with the label dropped for a single
/// point.
struct Report {
    format: Format,
    single: bool,
    out: String,
    success: bool,
}

impl Report {
    fn new(format: Format, points: usize) -> Self {
        Report {
            format,
            single: points == 1,
            out: String::new(),
            success: true,
        }
    }

    fn line(&mut self, point: &str, text: &str, record: serde_json::Value) {
        match self.format {
            Format::Text if self.single => writeln!(self.out, "{text}"),
            Format::Text => writeln!(self.out, "{point} {text}"),
            Format::Records => {
                let mut record = record;
                record["point"] = json!(point);
                writeln!(self.out, "{record}")
            }
        }
        .expect("write to string");
    }

    fn finish(self) -> Outcome {
        Outcome {
            stdout: self.out,
            success: self.success,
        }
    }
}

fn tree_count(input: &Input, formula: Option<Formula>, both: bool) -> Result<Outcome> {
    let k = parse_input(&read(&input.file)?)?;
    let points = weight_points(&input.weights, &k, input.seed)?;
    let brute = if formula.is_none() || both {
        Some(trees::enumerate_trees(&k, input.bound)?)
    } else {
        None
    };
    let mut report = Report::new(input.format, points.len());
    for (label, w) in &points {
        let b = brute.as_ref().map(|t| w.facet_weights(&k).map(|fw| t.weighted_sum(&fw).value)).transpose()?;
        let c = formula.map(|f| closed_form(&k, f, w)).transpose()?;
        match (b, c) {
            (Some(b), None) => report.line(label, &b.to_string(), json!({"brute": b.to_string()})),
            (None, Some((c, formula))) => {
                report.line(label, &c.to_string(), json!({"closed": c.to_string(), "formula": formula}))
            }
            (Some(b), Some((c, formula))) => {
                let equal = b == c;
                report.success &= equal;
                report.line(
                    label,
                    &format!("brute {b} closed {c} {}", verdict(equal)),
                    json!({"brute": b.to_string(), "closed": c.to_string(), "formula": formula, "verdict": verdict(equal)}),
                );
            }
            (None, None) => unreachable!("brute force runs when no formula is given"),
        }
    }
    Ok(report.finish())
}

fn resistance(input: &Input, sigma: &str, check: bool) -> Result<Outcome> {
    let k = parse_input(&read(&input.file)?)?;
    let sigma = simplex_arg(sigma)?;
    let points = weight_points(&input.weights, &k, input.seed)?;
    let net = Network::new(network::attach_generator(&k, &sigma)?)?;
    let forced = if check {
        let a = net.attached();
        Some((
            trees::enumerate_trees(&k, input.bound)?,
            trees::enumerate_trees_containing(a.complex(), &[a.generator()], input.bound)?,
        ))
    } else {
        None
    };
    let mut report = Report::new(input.format, points.len());
    for (label, w) in &points {
        let s = net.solve_weighted(w)?;
        let (r, i_gen) = (&s.effective_resistance, s.generator_current());
        let i_sigma = net.attached().parallel_to().map(|j| s.current.get(j).clone());
        let i_sigma_text = i_sigma.as_ref().map_or("-".to_string(), ToString::to_string);
        let mut text = format!("R_sigma {r}\ni_generator {i_gen}\ni_sigma {i_sigma_text}");
        let mut record = json!({
            "resistance": r.to_string(),
            "generator_current": i_gen.to_string(),
            "sigma_current": i_sigma.map(|x| x.to_string()),
        });
        if let Some((all, with_gen)) = &forced {
            let total = all.weighted_sum(&w.facet_weights(&k)?).value;
            let mut gw = w.facet_weights(net.attached().complex())?;
            *gw.last_mut().expect("generator column") = Rational::from_integer(1.into());
            let ratio = with_gen.weighted_sum(&gw).value / total;
            let equal = &ratio == r;
            report.success &= equal;
            write!(text, "\ntree-ratio {ratio} {}", verdict(equal)).expect("write to string");
            record["tree_ratio"] = json!(ratio.to_string());
            record["verdict"] = json!(verdict(equal));
        }
        if !report.single && input.format == Format::Text {
            text = text.replace('\n', &format!("\n{label} "));
        }
        report.line(label, &text, record);
    }
    Ok(report.finish())
}

fn ratio(input: &Input, sigma: &str, formula: Option<Formula>, both: bool) -> Result<Outcome> {
    let k = parse_input(&read(&input.file)?)?;
    let sigma = simplex_arg(sigma)?;
    let points = weight_points(&input.weights, &k, input.seed)?;
    let column = k.facet_position(&sigma).ok_or_else(|| Error::NotAFacet(sigma.to_string()))?;
    let brute = if both {
        Some(trees::enumerate_trees(&k, input.bound)?)
    } else {
        None
    };
    let mut report = Report::new(input.format, points.len());
    for (label, w) in &points {
        let value = match formula {
            Some(f) => closed_ratio(&k, f, w, &sigma)?,
            None => network::tree_ratio_via_resistance(&k, w, &sigma)?.ratio,
        };
        let mut text = value.to_string();
        let mut record = json!({"ratio": value.to_string()});
        if let Some(t) = &brute {
            let fw = w.facet_weights(&k)?;
            let avoid = t.weighted_sum_where(&fw, |x| !x.contains(column)).value;
            if num_traits::Zero::is_zero(&avoid) {
                return Err(Error::BridgeFacet(sigma.to_string()));
            }
            let b = t.weighted_sum(&fw).value / avoid;
            let equal = b == value;
            report.success &= equal;
            text = format!("{value} brute {b} {}", verdict(equal));
            record["brute"] = json!(b.to_string());
            record["verdict"] = json!(verdict(equal));
        }
        report.line(label, &text, record);
    }
    Ok(report.finish())
}

fn homology(file: &Path, format: Format) -> Result<Outcome> {
    let k = parse_input(&read(file)?)?;
    let mut out = String::new();
    for i in 0..=k.dim() {
        let (b, t) = (k.betti(i)?, k.torsion_order(i)?);
        match format {
            Format::Text => writeln!(out, "H_{i} rank {b} torsion {t}"),
            Format::Records => writeln!(out, "{}", json!({"dimension": i, "betti": b, "torsion": t.to_string()})),
        }
        .expect("write to string");
    }
    Ok(Outcome {
        stdout: out,
        success: true,
    })
}

fn verify_cmd(files: &[PathBuf], config: &VerifyConfig, builtin: bool, format: Format) -> Result<Outcome> {
    let mut entries = if builtin { corpus::builtin() } else { Vec::new() };
    for f in files {
        let name = f
            .file_stem()
            .map_or_else(|| f.display().to_string(), |s| s.to_string_lossy().into_owned());
        entries.push(CorpusEntry::new(format!("file:{name}"), parse_input(&read(f)?)?));
    }
    let records = verify::run(&entries, config);
    Ok(Outcome {
        stdout: match format {
            Format::Text => verify::render_text(&records),
            Format::Records => verify::render_records(&records),
        },
        success: verify::all_ok(&records),
    })
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::TreeCount { input, formula, both } => tree_count(input, *formula, *both),
        Command::Resistance { input, sigma, verify } => resistance(input, sigma, *verify),
        Command::Ratio {
            input,
            sigma,
            formula,
            both,
        } => ratio(input, sigma, *formula, *both),
        Command::Homology { file, format } => homology(file, *format),
        Command::Verify {
            files,
            seed,
            points,
            bound,
            only,
            format,
            no_builtin,
            corrupt_currents,
        } => verify_cmd(
            files,
            &VerifyConfig {
                seed: *seed,
                random_points: *points,
                bound: *bound,
                only: only.clone(),
                corrupt_currents: *corrupt_currents,
            },
            !no_builtin,
            *format,
        ),
    }
}

/// Exit status 0 on success, 1 on any DIFFER or FAIL, 2 on error.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
