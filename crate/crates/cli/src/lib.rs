//! Library side of the `projflow` command: argument types, command dispatch
//! and scene construction. `main.rs` only parses and sets the exit code.

pub mod render;

use clap::{Parser, Subcommand};
use flagconfig::io::{parse_coords, parse_tuple, tuple_to_json};
use flagconfig::{
    fg_coords, in_arc, nested_polygons, nesting_parameters, reconstruct, FGCoords, FlagTuple,
    Triangulation,
};
use flows::{FlowKind, FlowSpec};
use invariants::{positive_chart, triangle_frame, triple_ratio};
use projcore::{map_from_flag_data, Flag, ProjPoint};
use render::{render_svg, Chart, RenderError, RenderScene, Style};
use std::io::Write;
use std::path::{Path, PathBuf};
use surface::{Enumeration, PantsFlow, SurfaceFlow};

#[derive(Parser, Debug)]
#[command(
    name = "projflow",
    version,
    about = "Projective invariants, flag configurations and their flows"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Triple ratios and nesting data of a flag tuple.
    Invariants { file: PathBuf },
    /// Apply flows to a flag tuple.
    Flow {
        file: PathBuf,
        /// Flow such as `eruption:1,4,7@0.5` or `shear:1,3@-2`; repeatable, applied in order.
        #[arg(long = "apply", required = true)]
        apply: Vec<String>,
        /// Print coordinates before and after.
        #[arg(long)]
        coords: bool,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Flag tuple from a coordinate file.
    Reconstruct {
        file: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Closed-surface coordinates and flows.
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// SVG figure of a flag tuple.
    Render {
        file: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        /// Triangle frame of a flag triple.
        #[arg(long)]
        frame: bool,
        /// Nested polygon pair.
        #[arg(long)]
        nested: bool,
        #[arg(long, default_value_t = 600)]
        size: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum SurfaceCommand {
    /// Closed leaf residuals and margins.
    Validate { file: PathBuf },
    /// Flow the coordinates (`shear:C1`, `bulge:C2`, `eruption:P1`, `internal_bulge:P2`).
    Flow {
        file: PathBuf,
        #[arg(long)]
        flow: String,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Stage table of a truncated pants flow against its closed form.
    Converge {
        file: PathBuf,
        /// `eruption:P1`, `internal_bulge:P1` or `internal_shear:P1`.
        #[arg(long)]
        flow: String,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Shuffle each ring with this seed.
        #[arg(long)]
        shuffle: Option<u64>,
    },
}

/// Failures, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Exit code 2.
    #[error("invalid input: {0}")]
    Input(String),
    /// Exit code 3.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

fn core_err(e: projcore::Error) -> CliError {
    use projcore::Error as E;
    match e {
        E::NotLoxodromic(_) | E::SpectralGapTooSmall(_) | E::Singular(_) => {
            CliError::Numerical(e.to_string())
        }
        _ => CliError::Input(e.to_string()),
    }
}

fn inv_err(e: invariants::Error) -> CliError {
    match e {
        invariants::Error::Core(c) => core_err(c),
        invariants::Error::ChartFailure => CliError::Numerical(e.to_string()),
        e => CliError::Input(e.to_string()),
    }
}

fn config_err(e: flagconfig::Error) -> CliError {
    match e {
        flagconfig::Error::Core(c) => core_err(c),
        flagconfig::Error::Invariants(i) => inv_err(i),
        e => CliError::Input(e.to_string()),
    }
}

fn flow_err(e: flows::Error) -> CliError {
    match e {
        flows::Error::Core(c) => core_err(c),
        flows::Error::Config(c) => config_err(c),
        e => CliError::Input(e.to_string()),
    }
}

fn surface_err(e: surface::Error) -> CliError {
    use surface::Error as E;
    match e {
        E::Core(c) => core_err(c),
        E::ConvergenceFailure(_)
        | E::SpectralGapTooSmall(_)
        | E::NotUnipotent(_)
        | E::Degenerate(_) => CliError::Numerical(e.to_string()),
        e => CliError::Input(e.to_string()),
    }
}

impl From<RenderError> for CliError {
    fn from(e: RenderError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| io_err(p, e)),
        None => {
            out.write_all(text.as_bytes())
                .map_err(|e| CliError::Input(e.to_string()))?;
            if !text.ends_with('\n') {
                writeln!(out).unwrap();
            }
            Ok(())
        }
    }
}

/// A tuple file, or a coordinate file reconstructed into one.
fn load_tuple(text: &str) -> Result<FlagTuple, CliError> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    if v.get("flags").is_some() {
        parse_tuple(text).map_err(config_err)
    } else {
        let (c, tri) = parse_coords(text).map_err(config_err)?;
        reconstruct(&c, &tri).map_err(config_err)
    }
}

macro_rules! out {
    ($o:expr, $($arg:tt)*) => { writeln!($o, $($arg)*).map_err(|e| CliError::Input(e.to_string()))? };
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Invariants { file } => invariants_cmd(&load_tuple(&read(&file)?)?, out),
        Command::Flow {
            file,
            apply,
            coords,
            output,
        } => flow_cmd(&read(&file)?, &apply, coords, output.as_deref(), out),
        Command::Reconstruct { file, output } => {
            let (c, tri) = parse_coords(&read(&file)?).map_err(config_err)?;
            let t = reconstruct(&c, &tri).map_err(config_err)?;
            emit(out, output.as_deref(), &tuple_to_json(&t))
        }
        Command::Surface(sc) => surface_cmd(sc, out),
        Command::Render {
            file,
            output,
            frame,
            nested,
            size,
        } => {
            let t = load_tuple(&read(&file)?)?;
            let scene = tuple_scene(&t, frame, nested)?;
            emit(out, output.as_deref(), &render_svg(&scene, size)?)
        }
    }
}

fn invariants_cmd(t: &FlagTuple, out: &mut dyn Write) -> Result<(), CliError> {
    let f = t.flags();
    let n = f.len();
    out!(out, "flags: {n}");
    out!(out, "triple ratios");
    out!(
        out,
        "{:>3} {:>3} {:>3} {:>20} {:>20}",
        "i",
        "j",
        "k",
        "T",
        "tau = log T"
    );
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let tr = triple_ratio(&f[i], &f[j], &f[k]).map_err(inv_err)?;
                out!(
                    out,
                    "{:>3} {:>3} {:>3} {:>20.12} {:>20.12}",
                    i + 1,
                    j + 1,
                    k + 1,
                    tr,
                    tr.ln()
                );
            }
        }
    }
    let nest = nesting_parameters(t).map_err(config_err)?;
    let nest: Vec<String> = nest.iter().map(|x| format!("{x:.9}")).collect();
    out!(out, "nesting parameters: {}", nest.join(" "));
    if n == 3 {
        let tri = [f[0], f[1], f[2]];
        let fr = triangle_frame(&tri).map_err(inv_err)?;
        let c = fr.cevian_cross_ratios(&tri).map_err(inv_err)?;
        out!(
            out,
            "frame cross ratios: {:.12} {:.12} {:.12}",
            c[0],
            c[1],
            c[2]
        );
    }
    Ok(())
}

fn chords_cross(a: (usize, usize), b: (usize, usize), n: usize) -> bool {
    if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
        return false;
    }
    in_arc(a.0, b.0, a.1, n) != in_arc(a.0, b.1, a.1, n)
}

/// A triangulation containing as many of the flows' anchor edges as fit
/// together, completed by fans.
pub fn adapted_triangulation(n: usize, specs: &[FlowSpec]) -> Result<Triangulation, CliError> {
    let mut want = Vec::new();
    for s in specs {
        match s.kind {
            FlowKind::Eruption(a, b, c) => want.extend([(a, b), (b, c), (c, a)]),
            FlowKind::Shear(i, j) | FlowKind::Bulge(i, j) => want.push((i, j)),
        }
    }
    let mut diags: Vec<(usize, usize)> = Vec::new();
    for (i, j) in want {
        let e = (i.min(j), i.max(j));
        let adjacent = e.1 - e.0 == 1 || (e.0 == 0 && e.1 == n - 1);
        if e.1 >= n
            || adjacent
            || diags.contains(&e)
            || diags.iter().any(|d| chords_cross(*d, e, n))
        {
            continue;
        }
        diags.push(e);
    }
    fn split(poly: Vec<usize>, diags: &[(usize, usize)], out: &mut Vec<[usize; 3]>) {
        let m = poly.len();
        if m == 3 {
            out.push([poly[0], poly[1], poly[2]]);
            return;
        }
        for a in 0..m {
            for b in a + 2..m {
                if a == 0 && b == m - 1 {
                    continue;
                }
                let e = (poly[a].min(poly[b]), poly[a].max(poly[b]));
                if diags.contains(&e) {
                    split(poly[a..=b].to_vec(), diags, out);
                    let mut rest = poly[b..].to_vec();
                    rest.extend_from_slice(&poly[..=a]);
                    split(rest, diags, out);
                    return;
                }
            }
        }
        for k in 1..m - 1 {
            out.push([poly[0], poly[k], poly[k + 1]]);
        }
    }
    let mut tris = Vec::new();
    split((0..n).collect(), &diags, &mut tris);
    for t in tris.iter_mut() {
        t.sort_unstable();
    }
    Triangulation::new(n, tris).map_err(config_err)
}

/// Rounding noise prints as zero rather than `-0.000…`.
fn clean(x: f64) -> f64 {
    if x.abs() < 5e-13 {
        0.0
    } else {
        x
    }
}

fn coords_table(before: &FGCoords, after: &FGCoords, out: &mut dyn Write) -> Result<(), CliError> {
    out!(
        out,
        "{:<14} {:>18} {:>18} {:>18}",
        "coordinate",
        "before",
        "after",
        "delta"
    );
    for (&(i, j), &b) in &before.sigma {
        let a = after.sigma[&(i, j)];
        out!(
            out,
            "{:<14} {:>18.12} {:>18.12} {:>18.12}",
            format!("sigma {},{}", i + 1, j + 1),
            clean(b),
            clean(a),
            clean(a - b)
        );
    }
    for (t, &b) in &before.tau {
        let a = after.tau[t];
        let name = format!("tau {},{},{}", t[0] + 1, t[1] + 1, t[2] + 1);
        out!(
            out,
            "{:<14} {:>18.12} {:>18.12} {:>18.12}",
            name,
            clean(b),
            clean(a),
            clean(a - b)
        );
    }
    Ok(())
}

fn flow_cmd(
    text: &str,
    apply: &[String],
    coords: bool,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let t = load_tuple(text)?;
    let specs: Vec<FlowSpec> = apply
        .iter()
        .map(|s| s.parse().map_err(flow_err))
        .collect::<Result<_, _>>()?;
    let moved = flows::apply_all(&t, &specs).map_err(flow_err)?;
    if coords {
        let tri = adapted_triangulation(t.len(), &specs)?;
        let before = fg_coords(&t, &tri).map_err(config_err)?;
        let after = fg_coords(&moved, &tri).map_err(config_err)?;
        let names: Vec<String> = specs.iter().map(|s| s.to_string()).collect();
        out!(out, "flows: {}", names.join(" then "));
        coords_table(&before, &after, out)?;
        if let Some(p) = output {
            emit(out, Some(p), &tuple_to_json(&moved))?;
        }
        Ok(())
    } else {
        emit(out, output, &tuple_to_json(&moved))
    }
}

/// Pants flow named on the command line; `internal_shear` is the
/// deliberately ill-defined variant.
fn pants_flow(spec: &str) -> Result<PantsFlow, CliError> {
    if let Some(rest) = spec.trim().strip_prefix("internal_shear:") {
        let k: usize = rest
            .trim_start_matches(['P', 'p'])
            .parse()
            .map_err(|_| CliError::Input(format!("bad pants flow '{spec}'")))?;
        if k == 0 {
            return Err(CliError::Input(format!("bad pants flow '{spec}'")));
        }
        return Ok(PantsFlow::InternalShear(k - 1));
    }
    match spec.parse::<SurfaceFlow>().map_err(surface_err)? {
        SurfaceFlow::Eruption(p) => Ok(PantsFlow::Eruption(p)),
        SurfaceFlow::InternalBulge(p) => Ok(PantsFlow::InternalBulge(p)),
        f => Err(CliError::Input(format!(
            "{f} acts on one curve; converge needs a pants flow"
        ))),
    }
}

fn surface_cmd(sc: SurfaceCommand, out: &mut dyn Write) -> Result<(), CliError> {
    match sc {
        SurfaceCommand::Validate { file } => {
            let (s, c) = surface::parse_bd(&read(&file)?).map_err(surface_err)?;
            let r = surface::validate_bd(&s, &c).map_err(surface_err)?;
            out!(out, "genus {}, {} coordinates", s.genus(), c.len());
            out!(
                out,
                "{:<6} {:>14} {:>14} {:>14} {:>14}",
                "curve",
                "residual 1",
                "residual 2",
                "margin 1",
                "margin 2"
            );
            for cr in &r.curves {
                out!(
                    out,
                    "{:<6} {:>14.3e} {:>14.3e} {:>14.9} {:>14.9}",
                    format!("C{}", cr.curve + 1),
                    cr.residuals[0],
                    cr.residuals[1],
                    cr.margins[0],
                    cr.margins[1]
                );
            }
            if r.accepted {
                out!(out, "accepted");
                Ok(())
            } else {
                out!(out, "rejected");
                Err(CliError::Input(format!(
                    "closed leaf relations fail (max residual {:e}, min margin {:e})",
                    r.max_residual(),
                    r.min_margin()
                )))
            }
        }
        SurfaceCommand::Flow {
            file,
            flow,
            t,
            output,
        } => {
            let (s, c) = surface::parse_bd(&read(&file)?).map_err(surface_err)?;
            let f: SurfaceFlow = flow.parse().map_err(surface_err)?;
            let moved = surface::flow_coords(&s, &c, f, t).map_err(surface_err)?;
            emit(out, output.as_deref(), &surface::bd_to_json(&s, &moved))
        }
        SurfaceCommand::Converge {
            file,
            flow,
            t,
            depth,
            shuffle,
        } => {
            let (s, c) = surface::parse_bd(&read(&file)?).map_err(surface_err)?;
            let pf = pants_flow(&flow)?;
            let en = shuffle.map_or(Enumeration::Standard, Enumeration::Shuffled);
            let rep = surface::converge(&s, &c, pf, t, depth, en).map_err(surface_err)?;
            converge_report(&flow, t, depth, &rep, out)
        }
    }
}

fn converge_report(
    flow: &str,
    t: f64,
    depth: usize,
    rep: &[surface::SiteConvergence],
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let conv = projcore::tol().conv;
    out!(out, "flow {flow}, t = {t}, depth {depth}");
    let (mut cauchy, mut agree_all) = (true, true);
    for r in rep {
        out!(out, "");
        out!(out, "curve C{}", r.curve + 1);
        out!(out, "{:>5} {:>20} {:>20}", "ring", "sigma_x", "sigma_y");
        for (k, v) in r.rings.iter().enumerate() {
            out!(out, "{:>5} {:>20.12} {:>20.12}", k + 1, v.0, v.1);
        }
        out!(out, "limit      {:>20.12} {:>20.12}", r.limit.0, r.limit.1);
        let diffs: Vec<String> = r.period_diffs.iter().map(|d| format!("{d:.3e}")).collect();
        out!(out, "period differences: {}", diffs.join(" "));
        out!(out, "cauchy: {}", if r.cauchy { "yes" } else { "no" });
        cauchy &= r.cauchy;
        match r.prediction {
            Some(p) => {
                out!(out, "prediction {:>20.12} {:>20.12}", p.0, p.1);
                let d = (p.0 - r.limit.0).abs().max((p.1 - r.limit.1).abs());
                let agree = d < conv;
                out!(
                    out,
                    "agreement: {} (difference {d:.3e})",
                    if agree { "yes" } else { "no" }
                );
                agree_all &= agree;
            }
            None if r.oracle_free => out!(
                out,
                "prediction: none (curve glued to the same pants; oracle-free)"
            ),
            None => out!(out, "prediction: none"),
        }
    }
    if !cauchy {
        Err(CliError::Numerical(format!(
            "stage sequence is not Cauchy at depth {depth}"
        )))
    } else if !agree_all {
        Err(CliError::Numerical(
            "stage limit disagrees with the closed form".into(),
        ))
    } else {
        Ok(())
    }
}

const CONIC_SEGMENTS: usize = 256;

/// Samples of the conic tangent to every flag, if there is one.
fn tangent_conic(f: &[Flag]) -> Option<Vec<ProjPoint>> {
    let n = f.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t = triple_ratio(&f[i], &f[j], &f[k]).ok()?;
                if (t - 1.0).abs() > 1e-9 {
                    return None;
                }
            }
        }
    }
    let std = |th: f64| {
        let (c, s) = (th.cos(), th.sin());
        Flag::from_coords([c, s, 1.0], [c, s, -1.0]).unwrap()
    };
    let third = std::f64::consts::TAU / 3.0;
    let (a, b, c) = (std(0.0), std(third), std(2.0 * third));
    let g = map_from_flag_data((&a, &b, &c.p), (&f[0], &f[1], &f[2].p)).ok()?;
    Some(
        (0..CONIC_SEGMENTS)
            .map(|k| {
                g.apply_point(&std(std::f64::consts::TAU * k as f64 / CONIC_SEGMENTS as f64).p)
            })
            .collect(),
    )
}

/// Flags as points and lines, with the optional frame and nested polygons.
pub fn tuple_scene(t: &FlagTuple, frame: bool, nested: bool) -> Result<RenderScene, CliError> {
    let f = t.flags();
    let n = f.len();
    let chart = positive_chart(f).map(Chart::Avoiding).unwrap_or_default();
    let mut scene = RenderScene {
        chart,
        ..Default::default()
    };
    if let Some(c) = tangent_conic(f) {
        scene.polygons.push((c, Style::stroke("#888888", 1.0)));
    }
    if nested || frame {
        let pp = nested_polygons(t).map_err(config_err)?;
        scene
            .polygons
            .push((pp.outer, Style::filled("#1f4e9c", "#dbe6f7", 1.5)));
        scene
            .polygons
            .push((pp.inner, Style::filled("#9c1f1f", "#f7dbdb", 1.5)));
    }
    if frame {
        if n != 3 {
            return Err(CliError::Input(format!(
                "--frame needs a flag triple, got {n} flags"
            )));
        }
        let tri = [f[0], f[1], f[2]];
        let fr = triangle_frame(&tri).map_err(inv_err)?;
        for i in 0..3 {
            let q = vec![fr.q[i], f[(i + 2) % 3].p, fr.u[i], f[(i + 1) % 3].p];
            scene
                .polygons
                .push((q, Style::stroke("#2f7d32", 1.0).dashed()));
        }
        scene
            .polygons
            .push((fr.u.to_vec(), Style::filled("#6a1b9a", "#e6d5f0", 1.0)));
        for (i, u) in fr.u.iter().enumerate() {
            scene.points.push((*u, format!("u{}", i + 1)));
        }
        for (i, q) in fr.q.iter().enumerate() {
            scene.points.push((*q, format!("q{}", i + 1)));
        }
    }
    if !nested && !frame {
        for fl in f {
            scene.lines.push((fl.l, Style::stroke("#1f4e9c", 1.0)));
        }
    }
    for (i, fl) in f.iter().enumerate() {
        scene.points.push((fl.p, format!("p{}", i + 1)));
    }
    Ok(scene)
}

/// Parse and run; returns the exit code. Output goes to `out`, errors to `err`.
pub fn main_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match projcore::Tolerances::from_env() {
        Ok(t) => projcore::set_tolerances(t),
        Err(e) => {
            let _ = writeln!(err, "invalid input: PROJFLOW_TOL: {e}");
            return 2;
        }
    }
    match run(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}
