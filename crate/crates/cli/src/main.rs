//! `holofill` — command-line access to the cusp-shape, filling-estimate,
//! cone-envelope, and Maskit-slice machinery.
//!
//! Exit codes: 0 success, 2 input/parse error, 3 domain precondition
//! failure, 4 oracle left a query unresolved.

mod svg;
mod util;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use holofill::slice::PlumbingOutcome;
use holofill::*;
// The glob brings in the library's one-parameter Result alias; commands
// use the std form.
use std::result::Result;
use util::{complex_arg, fmt_complex, sig17, sig6, CliError};

#[derive(Parser)]
#[command(
    name = "holofill",
    version,
    about = "Cusp shape invariants, Dehn-filling length estimates, cone-deformation envelopes, and Maskit-slice scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Torus,
    Sphere,
}

impl From<KindArg> for SurfaceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Torus => SurfaceKind::PuncturedTorus,
            KindArg::Sphere => SurfaceKind::FourPuncturedSphere,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Shape invariants of a normalized rank-2 cusp from its parameter w.
    CuspShape {
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        w: Complex64,
        /// Relative tie tolerance for the shortest-longitude search.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Filling-theorem enclosures from w or from (L², A²) directly.
    FillEstimate {
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true, conflicts_with = "lsq")]
        w: Option<Complex64>,
        #[arg(long = "Lsq")]
        lsq: Option<f64>,
        #[arg(long = "Asq", requires = "lsq")]
        asq: Option<f64>,
        /// Write the estimate as a one-row CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Feasibility schedule for filling several cusps in order.
    MultiFill {
        /// Normalized length squared per cusp, in filling order.
        #[arg(long = "Lsq")]
        lsq: Vec<f64>,
        /// Cusp parameters w (converted to L²), appended after --Lsq cusps.
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        w: Vec<Complex64>,
        /// Per-fill normalized-length threshold K'.
        #[arg(long)]
        kprime: f64,
        /// Total core-length budget.
        #[arg(long)]
        budget: f64,
    },
    /// Guaranteed cone-deformation envelopes over t in [0, (2pi)^2], as CSV.
    ConeTrace {
        #[arg(long = "Lsq")]
        lsq: f64,
        #[arg(long, default_value_t = 1024)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also write a static SVG plot of the length envelope.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Grid scan of slice membership over a rectangle, written as CSV.
    MaskitScan {
        #[arg(long, allow_negative_numbers = true)]
        re_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        re_max: f64,
        #[arg(long, allow_negative_numbers = true)]
        im_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        im_max: f64,
        /// Number of sample points along the real axis.
        #[arg(long, default_value_t = 21)]
        re_steps: usize,
        /// Number of sample points along the imaginary axis.
        #[arg(long, default_value_t = 26)]
        im_steps: usize,
        #[arg(long)]
        out: PathBuf,
        /// Certified-region file path, or `mock-strip:<c>`.
        #[arg(long, env = "HOLOFILL_ORACLE")]
        oracle: Option<String>,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        /// Reduced-word length budget of the Jorgensen scan.
        #[arg(long, default_value_t = 8)]
        word_budget: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Torus)]
        kind: KindArg,
    },
    /// Plumbing test: find n with z - nw in the positive slice and
    /// z - (n+1)w in the negative one.
    Plumb {
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        w: Complex64,
        #[arg(long, value_enum, default_value_t = KindArg::Torus)]
        kind: KindArg,
        #[arg(long, default_value_t = 64)]
        n_range: i64,
        #[arg(long, env = "HOLOFILL_ORACLE")]
        oracle: Option<String>,
        #[arg(long, default_value_t = 8)]
        word_budget: usize,
    },
    /// Sampled separation check between box translates and outside points.
    BoxCheck {
        /// Base rectangle as re_min:re_max:im_min:im_max.
        #[arg(long)]
        rect: String,
        #[arg(long)]
        delta: f64,
        /// Inside samples, one `<n> <complex>` per line.
        #[arg(long)]
        samples_in: PathBuf,
        /// Outside samples, one `<complex>` per line.
        #[arg(long)]
        samples_out: PathBuf,
    },
    /// Shape-proximity implication on (z1, z2), or the q1/r1 dichotomy.
    ProximityCheck {
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true, requires = "z2")]
        z1: Option<Complex64>,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        z2: Option<Complex64>,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true, requires_all = ["r1", "delta", "kappa"], conflicts_with = "z1")]
        q1: Option<Complex64>,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        r1: Option<Complex64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        kappa: Option<f64>,
    },
    /// Component-separation threshold in n for given delta and kappa.
    Threshold {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        kappa: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::CuspShape { w, tol } => cusp_shape(w, tol),
        Cmd::FillEstimate { w, lsq, asq, csv } => fill_estimate(w, lsq, asq, csv.as_deref()),
        Cmd::MultiFill {
            lsq,
            w,
            kprime,
            budget,
        } => multi_fill(&lsq, &w, kprime, budget),
        Cmd::ConeTrace {
            lsq,
            steps,
            out,
            svg,
        } => cone_trace(lsq, steps, &out, svg.as_deref()),
        Cmd::MaskitScan {
            re_min,
            re_max,
            im_min,
            im_max,
            re_steps,
            im_steps,
            out,
            oracle,
            parallel,
            word_budget,
            kind,
        } => maskit_scan(
            [re_min, re_max, im_min, im_max],
            [re_steps, im_steps],
            &out,
            oracle.as_deref(),
            parallel,
            word_budget,
            kind.into(),
        ),
        Cmd::Plumb {
            z,
            w,
            kind,
            n_range,
            oracle,
            word_budget,
        } => plumb(z, w, kind.into(), n_range, oracle.as_deref(), word_budget),
        Cmd::BoxCheck {
            rect,
            delta,
            samples_in,
            samples_out,
        } => box_check(&rect, delta, &samples_in, &samples_out),
        Cmd::ProximityCheck {
            z1,
            z2,
            q1,
            r1,
            delta,
            kappa,
        } => proximity_check(z1, z2, q1, r1, delta, kappa),
        Cmd::Threshold { delta, kappa } => {
            let t = component_separation_threshold(delta, kappa)?;
            println!("n threshold = {}", sig6(t));
            Ok(())
        }
    }
}

fn resolve_oracle(spec: Option<&str>, word_budget: usize) -> Result<SliceOracle64, CliError> {
    let mut cfg = match spec {
        None => OracleConfig64::default(),
        Some(s) => {
            if let Some(c) = s.strip_prefix("mock-strip:") {
                let c: f64 = c
                    .parse()
                    .map_err(|_| CliError::input(format!("bad mock-strip level `{c}`")))?;
                return Ok(SliceOracle::MockStrip(c));
            }
            OracleConfig::from_region_file(Path::new(s))?
        }
    };
    cfg.word_budget = word_budget;
    Ok(SliceOracle::Standard(cfg))
}

fn cusp_shape(w: Complex64, tol: f64) -> Result<(), CliError> {
    let shape = shape_from_w(w).map_err(|e| match e {
        Error::LowerHalfPlane => CliError::input("w must lie in the upper half-plane"),
        other => other.into(),
    })?;
    let (n, unique) = cusp::shortest_longitude_with_tol(w, tol)?;
    let est = estimate_filling(&shape);
    println!("w = {}", fmt_complex(w));
    println!("L^2 = {}", sig6(shape.l_sq()));
    println!("A^2 = {}", sig6(shape.a_sq().to_float()));
    println!("twist = {}", sig6(shape.twist()));
    println!(
        "shortest longitude: n = {n} ({})",
        if unique { "unique" } else { "tie" }
    );
    println!("valid_fill = {}", est.valid_fill);
    println!("valid_theta = {}", est.valid_theta);
    Ok(())
}

fn estimate_from_args(
    w: Option<Complex64>,
    lsq: Option<f64>,
    asq: Option<f64>,
) -> Result<FillingEstimate64, CliError> {
    match (w, lsq) {
        (Some(w), None) => Ok(estimate_filling(&shape_from_w(w).map_err(|e| match e {
            Error::LowerHalfPlane => CliError::input("w must lie in the upper half-plane"),
            other => other.into(),
        })?)),
        (None, Some(l_sq)) => {
            let a_sq = match asq {
                Some(a) => ExtendedReal::Finite(a),
                None => ExtendedReal::Infinite,
            };
            let valid_fill = l_sq >= l_sq_floor::<f64>();
            let valid_theta = valid_fill && asq.map(|a| a.abs() >= 3.0).unwrap_or(false);
            Ok(FillingEstimate {
                l_sq,
                a_sq,
                valid_fill,
                valid_theta,
                l_interval: valid_fill.then(|| fill_length_interval(l_sq).expect("validated")),
                l_center_error: valid_fill
                    .then(|| fill_length_center_error(l_sq).expect("validated")),
                theta_interval: valid_theta
                    .then(|| fill_theta_interval(l_sq, a_sq).expect("validated")),
            })
        }
        _ => Err(CliError::input("provide exactly one of --w or --Lsq")),
    }
}

fn fill_estimate(
    w: Option<Complex64>,
    lsq: Option<f64>,
    asq: Option<f64>,
    csv: Option<&Path>,
) -> Result<(), CliError> {
    let asq_supplied = w.is_some() || asq.is_some();
    let est = estimate_from_args(w, lsq, asq)?;
    println!("L^2 = {}", sig6(est.l_sq));
    if asq_supplied {
        println!("A^2 = {}", sig6(est.a_sq.to_float()));
    } else {
        println!("A^2 = (not supplied)");
    }
    println!("valid_fill = {}", est.valid_fill);
    println!("valid_theta = {}", est.valid_theta);
    if let Some(iv) = est.l_interval {
        println!("l in [{}, {}]", sig6(iv.lo()), sig6(iv.hi()));
    }
    if let Some((center, radius)) = est.l_center_error {
        println!("l center-error: {} +- {}", sig6(center), sig6(radius));
    }
    if let Some(iv) = est.theta_interval {
        println!("theta in [{}, {}]", sig6(iv.lo()), sig6(iv.hi()));
    }

    if let (Some(path), true) = (csv, est.valid_fill) {
        let mut row = String::from("L_sq,A_sq,l_lo,l_hi,l_center,l_radius,theta_lo,theta_hi\n");
        let a_field = match (asq_supplied, est.a_sq) {
            (false, _) => String::new(),
            (true, ExtendedReal::Infinite) => "inf".to_string(),
            (true, ExtendedReal::Finite(a)) => sig17(a),
        };
        let l = est.l_interval.expect("valid when writing");
        let (c, r) = est.l_center_error.expect("valid when writing");
        let (tlo, thi) = est
            .theta_interval
            .map(|iv| (sig17(iv.lo()), sig17(iv.hi())))
            .unwrap_or_default();
        row.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            sig17(est.l_sq),
            a_field,
            sig17(l.lo()),
            sig17(l.hi()),
            sig17(c),
            sig17(r),
            tlo,
            thi
        ));
        fs::write(path, row)?;
        println!("wrote {}", path.display());
    }

    if !est.valid_fill {
        return Err(CliError::domain(
            "normalized length squared is below 8(2pi)^2; no filling estimate applies",
        ));
    }
    Ok(())
}

fn multi_fill(lsq: &[f64], ws: &[Complex64], kprime: f64, budget: f64) -> Result<(), CliError> {
    let mut all = lsq.to_vec();
    for &w in ws {
        all.push(shape_from_w(w)?.l_sq());
    }
    let plan = MultiFillPlan::from_l_sq(&all, kprime, budget)?;
    for c in &plan.cusps {
        println!(
            "cusp {}: L^2 = {}, guaranteed floor = {}, final length bound = {}",
            c.index,
            sig6(c.l_sq_initial),
            sig6(c.l_sq_guaranteed_floor),
            sig6(c.l_bound_final)
        );
    }
    println!("total length bound = {}", sig6(plan.total_length_bound));
    println!("feasible = {}", plan.feasible);
    if !plan.feasible {
        return Err(CliError::domain(format!(
            "infeasible: some normalized length is below 4^n * K' = {}",
            sig6(4f64.powi(all.len() as i32) * kprime)
        )));
    }
    Ok(())
}

fn cone_trace(lsq: f64, steps: usize, out: &Path, svg_path: Option<&Path>) -> Result<(), CliError> {
    let env = envelope_trace(lsq, steps)?;
    fs::write(out, env.to_csv())?;
    let last = env.final_row();
    println!(
        "wrote {} rows to {}; final l in [{}, {}]",
        env.rows.len(),
        out.display(),
        sig6(last.l.lo()),
        sig6(last.l.hi())
    );
    if let Some(p) = svg_path {
        fs::write(p, svg::envelope_plot(&env))?;
        println!("wrote plot to {}", p.display());
    }
    Ok(())
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn maskit_scan(
    rect: [f64; 4],
    steps: [usize; 2],
    out: &Path,
    oracle: Option<&str>,
    parallel: usize,
    word_budget: usize,
    kind: SurfaceKind,
) -> Result<(), CliError> {
    let [re_min, re_max, im_min, im_max] = rect;
    let [re_steps, im_steps] = steps;
    if re_steps < 1 || im_steps < 1 {
        return Err(CliError::input("step counts must be at least 1"));
    }
    if !(rect.iter().all(|v| v.is_finite()) && re_min <= re_max && im_min <= im_max) {
        return Err(CliError::input("scan rectangle must be finite and ordered"));
    }
    if parallel < 1 {
        return Err(CliError::input("parallelism degree must be at least 1"));
    }
    let oracle = resolve_oracle(oracle, word_budget)?;

    let res = linspace(re_min, re_max, re_steps);
    let ims = linspace(im_min, im_max, im_steps);
    let cells: Vec<(f64, f64)> = ims
        .iter()
        .flat_map(|&im| res.iter().map(move |&re| (re, im)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallel)
        .build()
        .map_err(|e| CliError::input(format!("cannot build thread pool: {e}")))?;
    // Cells are independent and collected in index order, so the output is
    // byte-identical at any parallelism degree.
    let rows: Vec<String> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(re, im)| {
                let v = slice_membership(Complex64::new(re, im), kind, &oracle);
                format!("{},{},{},{}\n", sig17(re), sig17(im), v.verdict, v.evidence)
            })
            .collect()
    });

    let mut csv = String::from("re,im,verdict,evidence\n");
    for row in rows {
        csv.push_str(&row);
    }
    fs::write(out, csv)?;
    println!(
        "wrote {} verdicts to {}",
        re_steps * im_steps,
        out.display()
    );
    Ok(())
}

fn plumb(
    z: Complex64,
    w: Complex64,
    kind: SurfaceKind,
    n_range: i64,
    oracle: Option<&str>,
    word_budget: usize,
) -> Result<(), CliError> {
    let oracle = resolve_oracle(oracle, word_budget)?;
    match plumbing_test(z, w, kind, n_range, &oracle)? {
        PlumbingOutcome::Found { n } => {
            println!("n = {n}");
            Ok(())
        }
        PlumbingOutcome::Refuted => {
            println!("refuted: no admissible n in [-{n_range}, {n_range}]");
            Ok(())
        }
        PlumbingOutcome::Unknown => Err(CliError::unresolved(
            "Unknown: membership probes were unresolved",
        )),
    }
}

fn parse_rect(s: &str) -> Result<Rect<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 {
        return Err(CliError::input("rect must be re_min:re_max:im_min:im_max"));
    }
    let mut vals = [0.0; 4];
    for (i, p) in parts.iter().enumerate() {
        vals[i] = p
            .parse()
            .map_err(|_| CliError::input(format!("cannot parse rect field `{p}`")))?;
    }
    Ok(Rect {
        re_min: vals[0],
        re_max: vals[1],
        im_min: vals[2],
        im_max: vals[3],
    })
}

fn box_check(
    rect: &str,
    delta: f64,
    samples_in: &Path,
    samples_out: &Path,
) -> Result<(), CliError> {
    let rect = parse_rect(rect)?;

    let mut grouped: BTreeMap<i64, Vec<Complex64>> = BTreeMap::new();
    for (lineno, raw) in fs::read_to_string(samples_in)?.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (n_str, z_str) = line.split_once(char::is_whitespace).ok_or_else(|| {
            CliError::input(format!(
                "{}:{}: expected `<n> <complex>`",
                samples_in.display(),
                lineno + 1
            ))
        })?;
        let n: i64 = n_str.trim().parse().map_err(|_| {
            CliError::input(format!(
                "bad translate index `{n_str}` on line {}",
                lineno + 1
            ))
        })?;
        let z = util::parse_complex(z_str.trim()).map_err(CliError::input)?;
        grouped.entry(n).or_default().push(z);
    }

    let mut outside = Vec::new();
    for (lineno, raw) in fs::read_to_string(samples_out)?.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let z = util::parse_complex(line).map_err(|e| {
            CliError::input(format!("{}:{}: {e}", samples_out.display(), lineno + 1))
        })?;
        outside.push(z);
    }

    let translates: Vec<i64> = grouped.keys().copied().collect();
    let samples: Vec<Vec<Complex64>> = grouped.into_values().collect();
    let boxes = BoxDecomposition::new(rect, delta, translates)?;
    match box_separation_check(&boxes, &samples, &outside)? {
        BoxSeparation::Separated { min_distance } => {
            println!("separated: min distance = {}", sig6(min_distance));
        }
        BoxSeparation::Violated {
            translate,
            inside,
            outside,
            distance,
        } => {
            println!(
                "violated: translate {} pair {} / {} at distance {}",
                translate,
                fmt_complex(inside),
                fmt_complex(outside),
                sig6(distance)
            );
        }
    }
    Ok(())
}

fn proximity_check(
    z1: Option<Complex64>,
    z2: Option<Complex64>,
    q1: Option<Complex64>,
    r1: Option<Complex64>,
    delta: Option<f64>,
    kappa: Option<f64>,
) -> Result<(), CliError> {
    match (z1, z2, q1, r1, delta, kappa) {
        (Some(z1), Some(z2), None, None, None, None) => {
            let outcome = shape_proximity_check(z1, z2);
            let label = match outcome {
                ProximityOutcome::HypothesesFail => "hypotheses fail",
                ProximityOutcome::ConclusionHolds => "conclusion holds",
                ProximityOutcome::ConclusionFails => "conclusion fails",
            };
            println!("{label}");
            Ok(())
        }
        (None, None, Some(q1), Some(r1), Some(delta), Some(kappa)) => {
            if delta <= 0.0 || kappa <= 0.0 {
                return Err(CliError::domain("delta and kappa must be positive"));
            }
            let ok = q1_r1_proximity_predicate(q1, r1, delta, kappa);
            println!("dichotomy holds = {ok}");
            Ok(())
        }
        _ => Err(CliError::input(
            "provide either --z1/--z2 or --q1/--r1/--delta/--kappa",
        )),
    }
}
