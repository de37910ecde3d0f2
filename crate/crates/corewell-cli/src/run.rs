//! Command dispatch: config in, CSV/SVG/report files out, exit status back.
//!
//! Exit 0 means the command completed clean. Exit 1 is a validation problem
//! (bad flags, bad config, bad geometry, refusal to overwrite). Exit 2 means
//! the computation ran but raised a numerical diagnostic; whatever was
//! computed is still written, with the diagnostics appended as '#' comments.

use std::fs;
use std::path::{Path, PathBuf};

use corewell::{
    admissible_branches, classify_level_curve, degeneracy_report, find_levels_scan,
    shoot_eigenvalues, sweep_well_width, Error, ShootingGrid, SweepSettings,
};

use crate::config::{Config, RadiusSpec};
use crate::emit::{self, LevelRow, OracleRow};
use crate::svg::{levels_plot, PlotCurve};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Solve,
    Sweep,
    Degeneracy,
    OracleCheck,
}

pub struct RunManifest {
    pub config_path: PathBuf,
    pub command: Command,
    /// Overrides the config's [output] dir when set.
    pub output_dir: Option<PathBuf>,
    pub force: bool,
    pub quiet: bool,
}

/// Agreement gate between the closed-form solver and the shooting
/// integration; the test suite pins the same bound.
const ORACLE_TOL: f64 = 1e-6;

pub fn run(manifest: &RunManifest) -> i32 {
    match execute(manifest) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn execute(manifest: &RunManifest) -> Result<i32, String> {
    let cfg = Config::load(&manifest.config_path)
        .map_err(|e| format!("{}: {e}", manifest.config_path.display()))?;
    let out_dir = manifest
        .output_dir
        .clone()
        .or_else(|| cfg.output.dir.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&out_dir)
        .map_err(|e| format!("cannot create output dir {}: {e}", out_dir.display()))?;
    let ctx = Ctx { cfg: &cfg, out: &out_dir, force: manifest.force, quiet: manifest.quiet };
    match manifest.command {
        Command::Solve => cmd_solve(&ctx),
        Command::Sweep => cmd_sweep(&ctx),
        Command::Degeneracy => cmd_degeneracy(&ctx),
        Command::OracleCheck => cmd_oracle_check(&ctx),
    }
}

struct Ctx<'a> {
    cfg: &'a Config,
    out: &'a Path,
    force: bool,
    quiet: bool,
}

impl Ctx<'_> {
    fn single_radius(&self, command: &str) -> Result<f64, String> {
        match self.cfg.well.radius {
            RadiusSpec::Single(r) => Ok(r),
            RadiusSpec::Range { .. } => Err(format!(
                "{command} needs a single r0; the r0_start/r0_stop/r0_step triple is for sweep"
            )),
        }
    }

    fn write(&self, name: &str, content: &str) -> Result<PathBuf, String> {
        let path = self.out.join(name);
        if path.exists() && !self.force {
            return Err(format!("refusing to overwrite {} without --force", path.display()));
        }
        fs::write(&path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        Ok(path)
    }

    fn note(&self, msg: &str) {
        if !self.quiet {
            println!("{msg}");
        }
    }
}

/// Numerical diagnostics demote the run to exit 2 but keep its outputs;
/// anything else is a validation error and aborts with exit 1.
fn is_diagnostic(e: &Error) -> bool {
    matches!(
        e,
        Error::UnrefinedBracket { .. }
            | Error::NonConvergence(_)
            | Error::ContinuationSplit { .. }
            | Error::IntegrationFailure { .. }
    )
}

fn exit_code(diags: &[String]) -> i32 {
    if diags.is_empty() {
        0
    } else {
        2
    }
}

fn cmd_solve(ctx: &Ctx) -> Result<i32, String> {
    let r0 = ctx.single_radius("solve")?;
    let well = ctx.cfg.well_config_at(r0);
    well.validate().map_err(|e| e.to_string())?;
    let s = &ctx.cfg.solver;
    let mut rows = Vec::new();
    let mut diags = Vec::new();
    for branch in admissible_branches(well.kappa, well.u0) {
        match find_levels_scan(&well, branch, s.n_max, s.scan_points) {
            Ok(levels) => rows.extend(levels),
            Err(ref e) if is_diagnostic(e) => {
                diags.push(format!("branch {}: {e}", branch.branch));
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    rows.sort_by(|a, b| a.e.total_cmp(&b.e));
    for r in &rows {
        let width = r.bracket.1 - r.bracket.0;
        if width > s.tol_e {
            diags.push(format!(
                "level n = {} bracket width {width:e} exceeds tol_E {:e}",
                r.n, s.tol_e
            ));
        }
    }
    let path = ctx.write("eigenvalues.csv", &emit::eigenvalues_csv(well.kappa, &rows, &diags))?;
    ctx.note(&format!("wrote {} ({} levels)", path.display(), rows.len()));
    Ok(exit_code(&diags))
}

fn cmd_sweep(ctx: &Ctx) -> Result<i32, String> {
    let grid = match ctx.cfg.well.radius {
        RadiusSpec::Range { .. } => ctx.cfg.well.radius.grid(),
        RadiusSpec::Single(_) => {
            return Err(
                "sweep needs the r0_start/r0_stop/r0_step triple; a single r0 is for the other commands"
                    .to_string(),
            )
        }
    };
    let proto = ctx.cfg.well_config_at(grid[0]);
    proto.validate().map_err(|e| e.to_string())?;
    let s = &ctx.cfg.solver;
    let settings = SweepSettings {
        n_max: s.n_max,
        scan_points: s.scan_points,
        ..SweepSettings::default()
    };
    let mut rows = Vec::new();
    let mut plot_curves = Vec::new();
    let mut diags = Vec::new();
    for branch in admissible_branches(proto.kappa, proto.u0) {
        let curves = match sweep_well_width(&proto, branch, &grid, &settings) {
            Ok(c) => c,
            Err(ref e) if is_diagnostic(e) => {
                diags.push(format!("branch {}: {e}", branch.branch));
                continue;
            }
            Err(e) => return Err(e.to_string()),
        };
        for curve in &curves {
            let class = if curve.flagged {
                diags.push(format!(
                    "curve branch {} n = {} flagged: continuation between grid points could not be verified",
                    curve.branch.branch, curve.n
                ));
                "flagged".to_string()
            } else if curve.points.len() >= 3 {
                classify_level_curve(curve).map_err(|e| e.to_string())?.tag.to_string()
            } else {
                "unclassified".to_string()
            };
            for &(r0, e) in &curve.points {
                rows.push(LevelRow {
                    r0,
                    kappa: curve.kappa,
                    branch: curve.branch.branch,
                    n: curve.n,
                    e,
                    class: class.clone(),
                });
            }
            plot_curves.push(PlotCurve {
                label: format!("n={} {}", curve.n, curve.branch.branch),
                points: curve.points.clone(),
            });
        }
    }
    let path = ctx.write("levels.csv", &emit::levels_csv(&rows, &diags))?;
    ctx.note(&format!(
        "wrote {} ({} rows, {} curves)",
        path.display(),
        rows.len(),
        plot_curves.len()
    ));
    if ctx.cfg.output.plots {
        let path = ctx.write("levels.svg", &levels_plot(&plot_curves))?;
        ctx.note(&format!("wrote {}", path.display()));
    }
    Ok(exit_code(&diags))
}

fn cmd_degeneracy(ctx: &Ctx) -> Result<i32, String> {
    let r0 = ctx.single_radius("degeneracy")?;
    let a = ctx.cfg.well_config_at(r0);
    let b = ctx.cfg.degeneracy_partner_at(r0).ok_or_else(|| {
        "degeneracy needs a [degeneracy] section giving the partner's U0 and/or kappa".to_string()
    })?;
    a.validate().map_err(|e| e.to_string())?;
    b.validate().map_err(|e| e.to_string())?;
    match degeneracy_report(&a, &b, ctx.cfg.solver.n_max) {
        Ok(rep) => {
            let path = ctx.write("degeneracy.txt", &emit::degeneracy_text(&a, &b, &rep))?;
            ctx.note(&format!(
                "wrote {} (max splitting {:e})",
                path.display(),
                rep.max_splitting
            ));
            Ok(0)
        }
        Err(ref e) if is_diagnostic(e) => {
            let text =
                format!("# spectral degeneracy report; energies in fm^-1\n# diagnostic: {e}\n");
            let path = ctx.write("degeneracy.txt", &text)?;
            ctx.note(&format!("wrote {} (diagnostic)", path.display()));
            Ok(2)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_oracle_check(ctx: &Ctx) -> Result<i32, String> {
    let r0 = ctx.single_radius("oracle-check")?;
    let well = ctx.cfg.well_config_at(r0);
    well.validate().map_err(|e| e.to_string())?;
    let s = &ctx.cfg.solver;
    let grid = ShootingGrid::for_config(&well);
    let mut rows = Vec::new();
    let mut diags = Vec::new();
    for branch in admissible_branches(well.kappa, well.u0) {
        let analytic = match find_levels_scan(&well, branch, s.n_max, s.scan_points) {
            Ok(v) => v,
            Err(ref e) if is_diagnostic(e) => {
                diags.push(format!("analytic branch {}: {e}", branch.branch));
                continue;
            }
            Err(e) => return Err(e.to_string()),
        };
        let shot = match shoot_eigenvalues(&well, branch, &grid, s.n_max) {
            Ok(v) => v,
            Err(ref e) if is_diagnostic(e) => {
                diags.push(format!("oracle branch {}: {e}", branch.branch));
                continue;
            }
            Err(e) => return Err(e.to_string()),
        };
        if analytic.len() != shot.len() {
            diags.push(format!(
                "branch {}: analytic found {} levels, oracle found {}",
                branch.branch,
                analytic.len(),
                shot.len()
            ));
        }
        for (a, o) in analytic.iter().zip(&shot) {
            let diff = (a.e - o.e).abs();
            if diff > ORACLE_TOL {
                diags.push(format!(
                    "branch {} n = {}: |dE| = {diff:e} exceeds {ORACLE_TOL:e}",
                    branch.branch, a.n
                ));
            }
            if a.n != o.n {
                diags.push(format!(
                    "branch {}: node counts differ at E = {}: {} vs {}",
                    branch.branch, a.e, a.n, o.n
                ));
            }
            rows.push(OracleRow {
                branch: branch.branch,
                n_analytic: a.n,
                e_analytic: a.e,
                e_oracle: o.e,
                n_oracle: o.n,
            });
        }
    }
    let path = ctx.write("oracle_check.csv", &emit::oracle_check_csv(well.kappa, &rows, &diags))?;
    ctx.note(&format!("wrote {} ({} compared levels)", path.display(), rows.len()));
    Ok(exit_code(&diags))
}
