//! `knead`: symbolic-dynamics invariants of interval and triangular maps.
//!
//! Exit codes: 0 success; 2 numeric or pipeline failure; 3 family not
//! kneading-eligible; 4 exact-identity or golden-file failure.

mod families;
mod report;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use families::{
    parse_domain, parse_param, parse_pieces, parse_reals, Family, MapSpec, ResolvedMap, SweepRange,
};
use knead_core::homology::{build_diagram, verify_diagram, verify_tensor_lift};
use knead_core::interval_map::{IntervalMap, TriangularMap};
use knead_core::pipeline::{
    analyze_interval_map, analyze_triangular, entropy_report, triangular_invariants,
    DetectionConfig, TriangularAnalysis, TriangularInvariants,
};
use knead_core::symbols::{validate_kneading_data, KneadingData, Strictness};
use knead_core::KneadError;
use rayon::prelude::*;
use report::{fmt_sig, round_sig, SCHEMA_VERSION};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "knead",
    version,
    about = "Kneading invariants, Markov partitions and topological entropy for interval and triangular maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Critical orbits, periods and symbol blocks (trajectories for
    /// iterate-only families)
    Itinerary(CommonArgs),
    /// Kneading matrices, determinants, d-polynomials and the tensor lift
    Kneading(CommonArgs),
    /// Markov partitions and transition matrices, one-dimensional and lifted
    Markov(CommonArgs),
    /// Chain-complex matrices with exact commutation certificates
    Homology(CommonArgs),
    /// Topological entropy by the kneading-root and spectral-radius routes
    Entropy(CommonArgs),
    /// The full certificate bundle; exits 4 if any exact identity fails
    Verify(VerifyArgs),
    /// Parameter sweep emitting one CSV row per value
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Built-in map family
    #[arg(long, value_enum)]
    family: Option<Family>,

    /// Family parameter, as name=value (repeatable)
    #[arg(long = "param", value_parser = parse_param_arg)]
    params: Vec<(String, f64)>,

    /// Basis kneading data as comma-separated symbol blocks (bypasses
    /// numerics), e.g. "RLC"
    #[arg(long)]
    kneading_data: Option<String>,

    /// Fiber kneading data as comma-separated symbol blocks, e.g. "RLRRC"
    #[arg(long)]
    fiber_kneading_data: Option<String>,

    /// Maximum period searched for critical orbits
    #[arg(long, default_value_t = 64)]
    max_period: usize,

    /// Orbit closure tolerance
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,

    /// Root-finding and spectral precision (floored at 1e-12)
    #[arg(long, default_value_t = 1e-12)]
    precision: f64,

    /// Distance within which a detected cycle counts as the critical orbit
    #[arg(long, default_value_t = 0.05)]
    snap: f64,

    /// Relax the admissibility comparisons from strict to non-strict
    #[arg(long)]
    non_strict: bool,

    /// Require kneading analysis even for iterate-only families (exit 3)
    #[arg(long)]
    kneading: bool,

    /// Trajectory length for iterate-only families
    #[arg(long, default_value_t = 50)]
    steps: usize,

    /// Trajectory start "x,y" for iterate-only families
    #[arg(long, default_value = "0.1,0.1")]
    start: String,

    /// Domain lo:hi for custom_piecewise
    #[arg(long, value_parser = parse_domain_arg)]
    domain: Option<(f64, f64)>,

    /// Interior breakpoints for custom_piecewise, comma-separated
    #[arg(long)]
    breakpoints: Option<String>,

    /// Per-piece ascending coefficients for custom_piecewise,
    /// pipe-separated: "0,2|2,-2"
    #[arg(long)]
    pieces: Option<String>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Compare the bundle against a golden JSON file; mismatch exits 4
    #[arg(long)]
    golden: Option<PathBuf>,

    /// Flip one gamma sign before verification, to demonstrate that the
    /// certificates catch convention corruption
    #[arg(long, hide = true)]
    corrupt_gamma: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Swept parameter and range, as name=lo:hi:steps
    #[arg(long, value_parser = SweepRange::parse_arg)]
    sweep: SweepRange,
}

impl SweepRange {
    fn parse_arg(s: &str) -> Result<SweepRange, String> {
        SweepRange::parse(s).map_err(|e| e.to_string())
    }
}

fn parse_param_arg(s: &str) -> Result<(String, f64), String> {
    parse_param(s).map_err(|e| e.to_string())
}

fn parse_domain_arg(s: &str) -> Result<(f64, f64), String> {
    parse_domain(s).map_err(|e| e.to_string())
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(classify_error(&err));
        }
    }
}

fn classify_error(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(KneadError::NotKneadingEligible(_)) = cause.downcast_ref::<KneadError>() {
            return 3;
        }
    }
    2
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Itinerary(args) => cmd_itinerary(&args),
        Command::Kneading(args) => cmd_kneading(&args),
        Command::Markov(args) => cmd_markov(&args),
        Command::Homology(args) => cmd_homology(&args),
        Command::Entropy(args) => cmd_entropy(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Sweep(args) => cmd_sweep(&args),
    }
}

impl CommonArgs {
    fn detection(&self) -> DetectionConfig {
        DetectionConfig {
            max_period: self.max_period,
            tol: self.tol,
            snap: self.snap,
        }
    }

    fn precision(&self) -> f64 {
        self.precision.max(1e-12)
    }

    fn strictness(&self) -> Strictness {
        if self.non_strict {
            Strictness::AllowEquality
        } else {
            Strictness::Strict
        }
    }

    fn fiber_data(&self, strictness: Strictness) -> Result<Option<KneadingData>> {
        let Some(raw) = self.fiber_kneading_data.as_deref() else {
            return Ok(None);
        };
        let data = parse_data(raw)?;
        let rep = validate_kneading_data(&data, strictness)?;
        if let Some(v) = rep.violation {
            bail!(KneadError::Inadmissible {
                rule: v.rule,
                block: v.block,
                shift: v.shift
            });
        }
        Ok(Some(data))
    }

    fn map_spec(&self) -> Result<MapSpec> {
        let family = self
            .family
            .ok_or_else(|| anyhow!("either --family or --kneading-data must be given"))?;
        Ok(MapSpec {
            family,
            parameters: self.params.iter().cloned().collect::<BTreeMap<_, _>>(),
            domain: self.domain,
            breakpoints: self
                .breakpoints
                .as_deref()
                .map(parse_reals)
                .transpose()?
                .unwrap_or_default(),
            pieces: self
                .pieces
                .as_deref()
                .map(parse_pieces)
                .transpose()?
                .unwrap_or_default(),
        })
    }

    fn emit(&self, content: String) -> Result<()> {
        match &self.out {
            Some(path) => {
                std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(content.as_bytes())?;
                Ok(())
            }
        }
    }
}

fn parse_data(s: &str) -> Result<KneadingData> {
    let blocks: Vec<&str> = s
        .split(',')
        .map(str::trim)
        .filter(|b| !b.is_empty())
        .collect();
    Ok(KneadingData::from_block_strings(&blocks)?)
}

/// Where the kneading data comes from: user-supplied symbols or a numeric
/// analysis of a built-in family.
enum KneadingInput {
    Symbolic {
        basis: KneadingData,
        fiber: Option<KneadingData>,
    },
    Interval(IntervalMap),
    Triangular(TriangularMap),
}

fn resolve_input(args: &CommonArgs) -> Result<KneadingInput> {
    if let Some(s) = &args.kneading_data {
        let basis = parse_data(s)?;
        let fiber = args
            .fiber_kneading_data
            .as_deref()
            .map(parse_data)
            .transpose()?;
        return Ok(KneadingInput::Symbolic { basis, fiber });
    }
    let spec = args.map_spec()?;
    if !spec.family.kneading_eligible() {
        return Err(KneadError::NotKneadingEligible(spec.family.name().into()).into());
    }
    match spec.resolve()? {
        ResolvedMap::Interval(map) => Ok(KneadingInput::Interval(map)),
        ResolvedMap::Triangular(map) => Ok(KneadingInput::Triangular(map)),
        ResolvedMap::Planar(_) => unreachable!("planar families are not kneading-eligible"),
    }
}

/// Runs whatever numerics the input needs and lands on kneading data.
fn resolve_data(
    args: &CommonArgs,
) -> Result<(
    KneadingData,
    Option<KneadingData>,
    Option<TriangularAnalysis>,
)> {
    match resolve_input(args)? {
        KneadingInput::Symbolic { basis, fiber } => {
            for data in std::iter::once(&basis).chain(fiber.as_ref()) {
                let rep = validate_kneading_data(data, args.strictness())?;
                if let Some(v) = rep.violation {
                    bail!(KneadError::Inadmissible {
                        rule: v.rule,
                        block: v.block,
                        shift: v.shift
                    });
                }
            }
            Ok((basis, fiber, None))
        }
        KneadingInput::Interval(map) => {
            let analysis = analyze_interval_map(&map, &args.detection())?;
            // an explicit fiber may ride on a numerically analyzed basis
            let fiber = args.fiber_data(args.strictness())?;
            Ok((analysis.data.clone(), fiber, None))
        }
        KneadingInput::Triangular(map) => {
            let analysis = analyze_triangular(&map, &args.detection())?;
            if let Some(fiber) = args.fiber_data(args.strictness())? {
                // explicit fiber data overrides the detected fiber
                return Ok((analysis.basis.data.clone(), Some(fiber), Some(analysis)));
            }
            Ok((
                analysis.basis.data.clone(),
                analysis.fiber.as_ref().map(|f| f.data.clone()),
                Some(analysis),
            ))
        }
    }
}

fn resolve_invariants(
    args: &CommonArgs,
) -> Result<(TriangularInvariants, Option<TriangularAnalysis>)> {
    let (basis, fiber, analysis) = resolve_data(args)?;
    let inv = triangular_invariants(&basis, fiber.as_ref())?;
    Ok((inv, analysis))
}

fn cmd_itinerary(args: &CommonArgs) -> Result<i32> {
    // iterate-only families print a trajectory unless kneading is demanded
    if args.kneading_data.is_none() {
        if let Some(family) = args.family {
            if !family.kneading_eligible() {
                if args.kneading {
                    return Err(KneadError::NotKneadingEligible(family.name().into()).into());
                }
                return planar_trajectory(args);
            }
        }
    }

    match resolve_input(args)? {
        KneadingInput::Symbolic { basis, fiber } => {
            let p: usize = basis.periods().iter().sum();
            let q: usize = fiber
                .as_ref()
                .map(|f| f.periods().iter().sum())
                .unwrap_or(1);
            let mut text = format!(
                "basis {} (period {p})\n",
                basis
                    .blocks()
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            );
            if let Some(f) = &fiber {
                text += &format!(
                    "fiber {} (period {q})\nproduct period {}\n",
                    f.blocks()
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(","),
                    p * q
                );
            }
            match args.format {
                Format::Json => {
                    let value = serde_json::json!({
                        "schema": SCHEMA_VERSION,
                        "command": "itinerary",
                        "basis_blocks": basis.blocks().iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "fiber_blocks": fiber.as_ref().map(|f| f.blocks().iter().map(ToString::to_string).collect::<Vec<_>>()),
                        "product_period": p * q,
                    });
                    args.emit(serde_json::to_string_pretty(&value)? + "\n")
                }
                _ => args.emit(text),
            }?;
            Ok(0)
        }
        KneadingInput::Interval(map) => {
            let analysis = analyze_interval_map(&map, &args.detection())?;
            let orbit = &analysis.orbits[0];
            let block = analysis.data.blocks()[0].to_string();
            match args.format {
                Format::Json => {
                    let j = serde_json::json!({
                        "schema": SCHEMA_VERSION,
                        "command": "itinerary",
                        "basis": {
                            "period": orbit.period,
                            "block": block,
                            "points": orbit.points.iter().map(|&p| round_sig(p)).collect::<Vec<_>>(),
                        },
                        "product_period": orbit.period,
                    });
                    args.emit(serde_json::to_string_pretty(&j)? + "\n")?;
                }
                _ => args.emit(format!("period {}, {}\n", orbit.period, block))?,
            }
            Ok(0)
        }
        KneadingInput::Triangular(map) => {
            let analysis = analyze_triangular(&map, &args.detection())?;
            match args.format {
                Format::Json => {
                    let j = report::itinerary_json(&analysis);
                    args.emit(serde_json::to_string_pretty(&j)? + "\n")?;
                }
                _ => {
                    let basis_block = analysis.basis.data.blocks()[0].to_string();
                    let p = analysis.basis.orbits[0].period;
                    match &analysis.fiber {
                        Some(f) => {
                            let fiber_block = f
                                .data
                                .blocks()
                                .iter()
                                .map(ToString::to_string)
                                .collect::<Vec<_>>()
                                .join(",");
                            let q: usize = f.data.periods().iter().sum();
                            args.emit(format!(
                                "basis {basis_block} ({p}), fiber {fiber_block} ({q}), product period {}\n",
                                analysis.product_period
                            ))?;
                        }
                        None => args.emit(format!(
                            "basis {basis_block} ({p}), fiber monotone, product period {p}\n"
                        ))?,
                    }
                }
            }
            Ok(0)
        }
    }
}

fn planar_trajectory(args: &CommonArgs) -> Result<i32> {
    let spec = args.map_spec()?;
    let ResolvedMap::Planar(map) = spec.resolve()? else {
        bail!(
            "family {} is kneading-eligible; drop the trajectory mode",
            spec.family.name()
        );
    };
    let start = parse_reals(&args.start)?;
    if start.len() != 2 {
        bail!("--start must be x,y");
    }
    let traj = map.trajectory((start[0], start[1]), args.steps);
    let mut text = String::from("step,x,y\n");
    for (k, (x, y)) in traj.iter().enumerate() {
        text += &format!("{k},{},{}\n", fmt_sig(*x), fmt_sig(*y));
    }
    args.emit(text)?;
    Ok(0)
}

fn build_kneading_json(inv: &TriangularInvariants) -> Result<report::KneadingJson> {
    Ok(report::KneadingJson {
        schema: SCHEMA_VERSION,
        command: "kneading",
        basis: report::system_json(&inv.basis)?,
        fiber: inv.fiber.as_ref().map(report::system_json).transpose()?,
        lift: report::lift_json(&inv.lift)?,
    })
}

fn render_kneading_text(inv: &TriangularInvariants) -> String {
    use knead_core::algebra::{cyclotomic_product, RationalFunction};
    let mut out = String::new();
    // display entries over the natural denominator 1 - t^{p_i}; the stored
    // canonical forms are gcd-reduced
    let unreduced = |entry: &RationalFunction, period: usize| -> String {
        let cyc = cyclotomic_product(&[period]);
        match (entry * &RationalFunction::from_poly(cyc.clone())).as_polynomial() {
            Some(num) => format!("({num})/({cyc})"),
            None => entry.to_string(),
        }
    };
    let show = |out: &mut String, label: &str, sys: &knead_core::pipeline::SystemInvariants| {
        out.push_str(&format!(
            "{label}: blocks {} periods {:?}\n",
            sys.data
                .blocks()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(","),
            sys.data.periods()
        ));
        for i in 0..sys.matrix.modality() {
            let p = sys.data.periods()[i];
            let row: Vec<String> = (0..=sys.matrix.modality())
                .map(|j| unreduced(sys.matrix.entry(i, j), p))
                .collect();
            out.push_str(&format!("  N[{}] = [{}]\n", i + 1, row.join(", ")));
        }
        out.push_str(&format!("  D = {}\n", sys.determinant.value));
        out.push_str(&format!("  d = {}\n", sys.d_polynomial));
    };
    show(&mut out, "basis", &inv.basis);
    if let Some(f) = &inv.fiber {
        show(&mut out, "fiber", f);
    }
    out.push_str("lift:\n");
    for (i, row) in inv.lift.matrix.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|(g, f)| format!("({g}) (x) ({f})"))
            .collect();
        out.push_str(&format!("  N_T[{}] = [{}]\n", i + 1, cells.join(", ")));
    }
    out.push_str(&format!("  D_T = {}\n", inv.lift.determinant));
    out.push_str(&format!("  d_T = {}\n", inv.lift.d_polynomial));
    out
}

fn reject_csv(args: &CommonArgs) -> Result<()> {
    if args.format == Format::Csv {
        bail!("csv output applies to sweep and trajectory listings only");
    }
    Ok(())
}

fn cmd_kneading(args: &CommonArgs) -> Result<i32> {
    reject_csv(args)?;
    let (inv, _) = resolve_invariants(args)?;
    match args.format {
        Format::Json => {
            let j = build_kneading_json(&inv)?;
            args.emit(serde_json::to_string_pretty(&j)? + "\n")?;
        }
        _ => args.emit(render_kneading_text(&inv))?,
    }
    Ok(0)
}

fn build_markov_json(
    inv: &TriangularInvariants,
    analysis: Option<&TriangularAnalysis>,
) -> Result<report::MarkovJson> {
    let mut basis_partition = None;
    let mut fiber_partition = None;
    let mut rectangles = None;
    // numeric partitions come straight from the orbits
    if let Some(a) = analysis {
        let x_points: Vec<f64> = {
            let mut pts: Vec<f64> = a
                .basis
                .orbits
                .iter()
                .flat_map(|o| o.points.iter().copied())
                .collect();
            pts.sort_by(f64::total_cmp);
            pts
        };
        basis_partition = Some(report::PartitionJson {
            breakpoints: x_points.iter().map(|&p| round_sig(p)).collect(),
            labels: (1..x_points.len()).map(|i| format!("X{i}")).collect(),
        });
        if let Some(f) = &a.fiber {
            let y_points: Vec<f64> = {
                let mut pts: Vec<f64> = f
                    .orbits
                    .iter()
                    .flat_map(|o| o.points.iter().copied())
                    .collect();
                pts.sort_by(f64::total_cmp);
                pts
            };
            let nx = x_points.len().saturating_sub(1);
            let ny = y_points.len().saturating_sub(1);
            let mut rects = Vec::with_capacity(nx * ny);
            for j in 0..ny {
                for i in 0..nx {
                    rects.push(report::RectangleJson {
                        label: format!("R{}", j * nx + i + 1),
                        x: (round_sig(x_points[i]), round_sig(x_points[i + 1])),
                        y: (round_sig(y_points[j]), round_sig(y_points[j + 1])),
                    });
                }
            }
            fiber_partition = Some(report::PartitionJson {
                breakpoints: y_points.iter().map(|&p| round_sig(p)).collect(),
                labels: (1..y_points.len()).map(|i| format!("Y{i}")).collect(),
            });
            rectangles = Some(rects);
        }
    }
    Ok(report::MarkovJson {
        schema: SCHEMA_VERSION,
        command: "markov",
        basis: report::transition_json(&inv.basis.transition)?,
        fiber: inv
            .fiber
            .as_ref()
            .map(|f| report::transition_json(&f.transition))
            .transpose()?,
        product: report::transition_json(&inv.product_transition)?,
        basis_partition,
        fiber_partition,
        rectangles,
    })
}

fn render_markov_text(j: &report::MarkovJson) -> String {
    let mut out = String::new();
    let show = |out: &mut String, label: &str, t: &report::TransitionJson| {
        out.push_str(&format!("{label} ({} states):\n", t.labels.len()));
        for row in &t.matrix {
            out.push_str(&format!(
                "  [{}]\n",
                row.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
        out.push_str(&format!(
            "  char = {}\n",
            knead_core::algebra::IntPolynomial::from_i64(&t.char_polynomial)
        ));
    };
    show(&mut out, "basis A_x", &j.basis);
    if let Some(f) = &j.fiber {
        show(&mut out, "fiber A_y", f);
    }
    show(&mut out, "product A = A_y (x) A_x", &j.product);
    out
}

fn cmd_markov(args: &CommonArgs) -> Result<i32> {
    reject_csv(args)?;
    let (inv, analysis) = resolve_invariants(args)?;
    let j = build_markov_json(&inv, analysis.as_ref())?;
    match args.format {
        Format::Json => args.emit(serde_json::to_string_pretty(&j)? + "\n")?,
        _ => args.emit(render_markov_text(&j))?,
    }
    Ok(0)
}

struct HomologyBundle {
    json: report::HomologyJson,
    all_pass: bool,
}

fn build_homology(args: &CommonArgs, corrupt: bool) -> Result<HomologyBundle> {
    let (basis, fiber, _) = resolve_data(args)?;
    let mut dx = build_diagram(&basis)?;
    if corrupt {
        dx = dx.corrupt_gamma_sign();
    }
    let cert_x = verify_diagram(&dx);
    let mut all_pass = cert_x.all_pass();
    let (mut fiber_json, mut fiber_cert, mut tensor, mut tensor_identity) =
        (None, None, None, None);
    if let Some(fd) = &fiber {
        let dy = build_diagram(fd)?;
        let cert_y = verify_diagram(&dy);
        all_pass &= cert_y.all_pass();
        let thm = verify_tensor_lift(&basis, fd)?;
        all_pass &= thm.holds();
        tensor = Some(report::tensor_diagram_json(&dy, &dx)?);
        tensor_identity = Some(report::tensor_lift_json(&thm)?);
        fiber_cert = Some(report::certificate_json(&cert_y)?);
        fiber_json = Some(report::diagram_json(&dy)?);
    }
    Ok(HomologyBundle {
        json: report::HomologyJson {
            schema: SCHEMA_VERSION,
            command: "homology",
            basis: report::diagram_json(&dx)?,
            basis_certificate: report::certificate_json(&cert_x)?,
            fiber: fiber_json,
            fiber_certificate: fiber_cert,
            tensor,
            tensor_identity,
        },
        all_pass,
    })
}

fn render_homology_text(j: &report::HomologyJson) -> String {
    let mut out = String::new();
    let cert_line = |label: &str, c: &report::CertificateJson| {
        format!(
            "{label}: commutes_0 {} commutes_1 {} charpoly_equal {} (P = {})\n",
            pass(c.commutes_0),
            pass(c.commutes_1),
            pass(c.charpoly_equal),
            knead_core::algebra::IntPolynomial::from_i64(&c.p_a)
        )
    };
    out.push_str(&cert_line("basis certificate", &j.basis_certificate));
    if let Some(c) = &j.fiber_certificate {
        out.push_str(&cert_line("fiber certificate", c));
    }
    if let Some(t) = &j.tensor_identity {
        out.push_str(&format!(
            "tensor identity: commutes {} {} P_A == P_Theta == d_T {}\n",
            pass(t.commutes_alpha),
            pass(t.commutes_theta),
            pass(t.holds),
        ));
        out.push_str(&format!(
            "  P = {}\n",
            knead_core::algebra::IntPolynomial::from_i64(&t.p_a)
        ));
    }
    out
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_homology(args: &CommonArgs) -> Result<i32> {
    reject_csv(args)?;
    let bundle = build_homology(args, false)?;
    match args.format {
        Format::Json => args.emit(serde_json::to_string_pretty(&bundle.json)? + "\n")?,
        _ => args.emit(render_homology_text(&bundle.json))?,
    }
    Ok(if bundle.all_pass { 0 } else { 4 })
}

fn cmd_entropy(args: &CommonArgs) -> Result<i32> {
    reject_csv(args)?;
    let (inv, _) = resolve_invariants(args)?;
    let rep = entropy_report(&inv, args.precision());
    let j = report::entropy_json(&rep);
    match args.format {
        Format::Json => args.emit(serde_json::to_string_pretty(&j)? + "\n")?,
        _ => {
            let t_star = j.t_star.map_or_else(|| "none".to_string(), fmt_sig);
            args.emit(format!(
                "t* = {t_star}\nlambda = {}\nh(kneading) = {}\nh(spectral) = {}\nh(basis) = {}\nh(fiber) = {}\nbowen: {}\n",
                fmt_sig(j.lambda),
                fmt_sig(j.h_kneading),
                fmt_sig(j.h_spectral),
                fmt_sig(j.h_basis),
                fmt_sig(j.h_fiber),
                pass(j.bowen_ok),
            ))?;
        }
    }
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    reject_csv(&args.common)?;
    let common = &args.common;
    let (inv, analysis) = resolve_invariants(common)?;
    let homology = build_homology(common, args.corrupt_gamma)?;
    let entropy = entropy_report(&inv, common.precision());

    let mut checks = Vec::new();
    let mut push = |name: &str, ok: bool| {
        checks.push(report::CheckJson {
            name: name.to_string(),
            pass: ok,
        });
    };
    push(
        "d_equals_subshift_char_poly_basis",
        inv.basis.d_polynomial == inv.basis.char_polynomial,
    );
    if let Some(f) = &inv.fiber {
        push(
            "d_equals_subshift_char_poly_fiber",
            f.d_polynomial == f.char_polynomial,
        );
    }
    push(
        "lift_d_equals_product_char_poly",
        inv.lift.d_polynomial == inv.product_char,
    );
    push("diagram_certificates", homology.all_pass);
    push(
        "entropy_route_agreement",
        (entropy.h_kneading - entropy.h_spectral).abs() < 1e-8,
    );
    if let Some(t) = entropy.t_star {
        push(
            "lambda_times_t_star_is_one",
            (entropy.lambda * t - 1.0).abs() < 1e-8,
        );
    }
    push("bowen_bounds", entropy.bowen_ok);
    push(
        "entropy_additivity",
        (entropy.h_kneading - entropy.h_basis - entropy.h_fiber).abs() < 1e-8,
    );
    let all_pass = checks.iter().all(|c| c.pass);

    let bundle = report::VerifyJson {
        schema: SCHEMA_VERSION,
        command: "verify",
        kneading: build_kneading_json(&inv)?,
        markov: build_markov_json(&inv, analysis.as_ref())?,
        homology: homology.json,
        entropy: report::entropy_json(&entropy),
        checks,
        all_pass,
    };

    let mut golden_ok = true;
    if let Some(path) = &args.golden {
        let golden: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(path)
                .with_context(|| format!("reading golden file {}", path.display()))?,
        )?;
        let ours = serde_json::to_value(&bundle)?;
        golden_ok = golden == ours;
    }

    match common.format {
        Format::Json => common.emit(serde_json::to_string_pretty(&bundle)? + "\n")?,
        _ => {
            let mut out = String::new();
            for c in &bundle.checks {
                out.push_str(&format!("{} {}\n", pass(c.pass), c.name));
            }
            if args.golden.is_some() {
                out.push_str(&format!("{} golden_file_match\n", pass(golden_ok)));
            }
            out.push_str(&format!(
                "d_T = {}\n",
                knead_core::algebra::IntPolynomial::from_i64(&bundle.kneading.lift.d_polynomial)
            ));
            common.emit(out)?;
        }
    }
    Ok(if all_pass && golden_ok { 0 } else { 4 })
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32> {
    let common = &args.common;
    let spec = common.map_spec()?;
    if !spec.family.kneading_eligible() {
        return Err(KneadError::NotKneadingEligible(spec.family.name().into()).into());
    }
    let known = spec.family.parameter_names();
    if !known.contains(&args.sweep.name.as_str())
        && !(spec.family == Family::CustomPiecewise
            && spec.parameters.contains_key(&args.sweep.name))
    {
        bail!(
            "family {} has no parameter {}",
            spec.family.name(),
            args.sweep.name
        );
    }
    let cfg = common.detection();
    let precision = common.precision();
    let values = args.sweep.values();

    struct Row {
        value: f64,
        period: Option<usize>,
        h_kneading: Option<f64>,
        h_spectral: Option<f64>,
    }

    let rows: Vec<Row> = values
        .par_iter()
        .map(|&v| {
            let spec = spec.with_param(&args.sweep.name, v);
            let outcome = (|| -> Result<(usize, f64, f64)> {
                match spec.resolve()? {
                    ResolvedMap::Interval(map) => {
                        let analysis = analyze_interval_map(&map, &cfg)?;
                        let inv = triangular_invariants(&analysis.data, None)?;
                        let rep = entropy_report(&inv, precision);
                        Ok((analysis.orbits[0].period, rep.h_kneading, rep.h_spectral))
                    }
                    ResolvedMap::Triangular(map) => {
                        let analysis = analyze_triangular(&map, &cfg)?;
                        let inv = triangular_invariants(
                            &analysis.basis.data,
                            analysis.fiber.as_ref().map(|f| &f.data),
                        )?;
                        let rep = entropy_report(&inv, precision);
                        let period = analysis
                            .fiber
                            .as_ref()
                            .map(|f| f.data.periods().iter().sum())
                            .unwrap_or(1);
                        Ok((period, rep.h_kneading, rep.h_spectral))
                    }
                    ResolvedMap::Planar(_) => unreachable!(),
                }
            })();
            match outcome {
                Ok((period, hk, hs)) => Row {
                    value: v,
                    period: Some(period),
                    h_kneading: Some(hk),
                    h_spectral: Some(hs),
                },
                Err(_) => Row {
                    value: v,
                    period: None,
                    h_kneading: None,
                    h_spectral: None,
                },
            }
        })
        .collect();

    let mut csv = format!("{},period,h_kneading,h_spectral\n", args.sweep.name);
    for row in rows {
        let period = row.period.map_or(String::new(), |p| p.to_string());
        let hk = row.h_kneading.map_or(String::new(), fmt_sig);
        let hs = row.h_spectral.map_or(String::new(), fmt_sig);
        csv += &format!("{},{period},{hk},{hs}\n", fmt_sig(row.value));
    }
    common.emit(csv)?;
    Ok(0)
}
