//! Finite-difference shooting solver used as an independent check on the
//! closed-form solver.
//!
//! The reduced equation is integrated as a first-order system with the
//! classical fixed-step fourth-order Runge-Kutta scheme: outward from r_min
//! in the log variable x = ln r, where the centrifugal term is constant and
//! the small-r power behavior is linear growth, and inward from r_max in r,
//! which keeps the decaying shell solution numerically dominant. The
//! mismatch of the two sides under the configured matching convention is
//! scanned and bisected in E, each root is recomputed at half the step, and
//! the pair is Richardson-extrapolated. Nothing here touches the
//! hypergeometric code; the only shared pieces are the well algebra
//! (exponents, region energies, window).

use crate::error::{Error, Result};
use crate::spectrum::EigenResult;
use crate::well::{bound_window, region_energy, BranchExponent, Matching, Region, WellConfig};

/// Radial integration domain for the shooting solver.
#[derive(Clone, Copy, Debug)]
pub struct ShootingGrid {
    pub r_min: f64,
    pub r_max: f64,
    /// RK4 steps per region at the base step size.
    pub steps: usize,
}

impl ShootingGrid {
    /// Grid with enough shell room for every well this crate targets.
    pub fn for_config(cfg: &WellConfig) -> ShootingGrid {
        ShootingGrid {
            r_min: 1e-4 * cfg.r0,
            r_max: cfg.r0 + 60.0,
            steps: 30_000,
        }
    }

    pub fn validate(&self, cfg: &WellConfig) -> Result<()> {
        if !(self.r_min > 0.0) || !(self.r_min < cfg.r0) {
            return Err(Error::InvalidInput(format!(
                "shooting grid needs 0 < r_min < r0, got r_min = {}",
                self.r_min
            )));
        }
        if !(self.r_max > cfg.r0) {
            return Err(Error::InvalidInput(format!(
                "shooting grid needs r_max > r0, got r_max = {}",
                self.r_max
            )));
        }
        if self.steps < 10_000 {
            return Err(Error::InvalidInput(format!(
                "shooting grid needs at least 10000 steps, got {}",
                self.steps
            )));
        }
        Ok(())
    }
}

/// e^{2x} cached at every RK4 stage abscissa of the outward (log-variable)
/// integration; rebuilding these per trial energy would dominate the cost.
struct CoreTable {
    x0: f64,
    h: f64,
    steps: usize,
    e2x: Vec<f64>,
}

impl CoreTable {
    fn build(r_min: f64, r0: f64, steps: usize) -> CoreTable {
        let x0 = r_min.ln();
        let h = (r0.ln() - x0) / steps as f64;
        let mut e2x = Vec::with_capacity(2 * steps + 1);
        for k in 0..=2 * steps {
            e2x.push((2.0 * (x0 + 0.5 * h * k as f64)).exp());
        }
        CoreTable { x0, h, steps, e2x }
    }
}

/// 1/r^2 cached at the stage abscissas of the inward shell integration.
struct ShellTable {
    r_max: f64,
    h: f64,
    steps: usize,
    inv_r2: Vec<f64>,
}

impl ShellTable {
    fn build(r0: f64, r_max: f64, steps: usize) -> ShellTable {
        let h = (r0 - r_max) / steps as f64;
        let mut inv_r2 = Vec::with_capacity(2 * steps + 1);
        for k in 0..=2 * steps {
            let r = r_max + 0.5 * h * k as f64;
            inv_r2.push(1.0 / (r * r));
        }
        ShellTable {
            r_max,
            h,
            steps,
            inv_r2,
        }
    }
}

/// Outward pass. In x = ln r the system is G_x = P, P_x = P + (lam +
/// eps e^{2x}) G; the series tail (1 + c2 r^2) seeds the regular solution
/// one order beyond the bare power so the start-up error is O(r^4).
fn integrate_core(
    lam: f64,
    eps: f64,
    a: f64,
    table: &CoreTable,
    mut record: Option<&mut Vec<(f64, f64)>>,
) -> (f64, f64) {
    let r_min = table.x0.exp();
    let c2 = eps / (4.0 * a + 2.0);
    let mut g = r_min.powf(a) * (1.0 + c2 * r_min * r_min);
    let mut p = r_min.powf(a) * (a + (a + 2.0) * c2 * r_min * r_min);
    if let Some(rec) = record.as_deref_mut() {
        rec.push((r_min, g));
    }
    let h = table.h;
    let f = |g: f64, p: f64, e2x: f64| (p, p + (lam + eps * e2x) * g);
    for i in 0..table.steps {
        let (k1g, k1p) = f(g, p, table.e2x[2 * i]);
        let (k2g, k2p) = f(g + 0.5 * h * k1g, p + 0.5 * h * k1p, table.e2x[2 * i + 1]);
        let (k3g, k3p) = f(g + 0.5 * h * k2g, p + 0.5 * h * k2p, table.e2x[2 * i + 1]);
        let (k4g, k4p) = f(g + h * k3g, p + h * k3p, table.e2x[2 * i + 2]);
        g += h / 6.0 * (k1g + 2.0 * (k2g + k3g) + k4g);
        p += h / 6.0 * (k1p + 2.0 * (k2p + k3p) + k4p);
        if let Some(rec) = record.as_deref_mut() {
            rec.push(((table.x0 + h * (i + 1) as f64).exp(), g));
        }
    }
    let r0 = (table.x0 + h * table.steps as f64).exp();
    (g, p / r0)
}

/// Inward pass in r from the decaying initial data (1, -b2); any admixture
/// of the growing solution decays as the integration proceeds inward.
fn integrate_shell(
    lam: f64,
    eps: f64,
    b2: f64,
    table: &ShellTable,
    mut record: Option<&mut Vec<(f64, f64)>>,
) -> (f64, f64) {
    let mut g = 1.0f64;
    let mut w = -b2;
    if let Some(rec) = record.as_deref_mut() {
        rec.push((table.r_max, g));
    }
    let h = table.h;
    let f = |g: f64, w: f64, inv_r2: f64| (w, (lam * inv_r2 + eps) * g);
    for i in 0..table.steps {
        let (k1g, k1w) = f(g, w, table.inv_r2[2 * i]);
        let (k2g, k2w) = f(g + 0.5 * h * k1g, w + 0.5 * h * k1w, table.inv_r2[2 * i + 1]);
        let (k3g, k3w) = f(g + 0.5 * h * k2g, w + 0.5 * h * k2w, table.inv_r2[2 * i + 1]);
        let (k4g, k4w) = f(g + h * k3g, w + h * k3w, table.inv_r2[2 * i + 2]);
        g += h / 6.0 * (k1g + 2.0 * (k2g + k3g) + k4g);
        w += h / 6.0 * (k1w + 2.0 * (k2w + k3w) + k4w);
        if let Some(rec) = record.as_deref_mut() {
            rec.push((table.r_max + h * (i + 1) as f64, g));
        }
    }
    (g, w)
}

struct Shooter<'a> {
    cfg: &'a WellConfig,
    lam: f64,
    a: f64,
    core: CoreTable,
    shell: ShellTable,
}

impl Shooter<'_> {
    fn sides(&self, e: f64) -> Result<((f64, f64), (f64, f64))> {
        let eps1 = region_energy(e, self.cfg, Region::Core).eps;
        let eps2 = region_energy(e, self.cfg, Region::Shell);
        let one = integrate_core(self.lam, eps1, self.a, &self.core, None);
        let two = integrate_shell(self.lam, eps2.eps, eps2.wave.re, &self.shell, None);
        if !(one.0.is_finite() && one.1.is_finite() && two.0.is_finite() && two.1.is_finite()) {
            return Err(Error::IntegrationFailure {
                e,
                detail: "non-finite shooting trajectory".into(),
            });
        }
        Ok((one, two))
    }

    /// Matching mismatch, both sides normalized at r0 so the scan never
    /// overflows.
    fn mismatch(&self, e: f64) -> Result<f64> {
        let ((g1, d1), (g2, d2)) = self.sides(e)?;
        let n1 = g1.hypot(d1).max(f64::MIN_POSITIVE);
        let n2 = g2.hypot(d2).max(f64::MIN_POSITIVE);
        let (g1, d1, g2, d2) = (g1 / n1, d1 / n1, g2 / n2, d2 / n2);
        Ok(match self.cfg.matching {
            Matching::Weighted => d1 * g2 / self.cfg.m1 - d2 * g1 / self.cfg.m2,
            Matching::Plain => d1 * g2 - d2 * g1,
        })
    }

    fn bisect(&self, mut lo: f64, mut hi: f64, mut w_lo: f64) -> Result<(f64, (f64, f64))> {
        for _ in 0..200 {
            if hi - lo <= 1e-12 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let w = self.mismatch(mid)?;
            if w == 0.0 {
                return Ok((mid, (mid, mid)));
            }
            if (w < 0.0) == (w_lo < 0.0) {
                lo = mid;
                w_lo = w;
            } else {
                hi = mid;
            }
        }
        Ok((0.5 * (lo + hi), (lo, hi)))
    }

    /// Re-locate a root near `seed` by widening a bracket around it.
    fn refine_near(&self, seed: f64, lo: f64, hi: f64) -> Result<(f64, (f64, f64))> {
        let mut w = 1e-6;
        while w <= 2e-2 {
            let a = (seed - w).max(lo);
            let b = (seed + w).min(hi);
            let wa = self.mismatch(a)?;
            let wb = self.mismatch(b)?;
            if wa != 0.0 && wb != 0.0 && ((wa < 0.0) != (wb < 0.0)) {
                return self.bisect(a, b, wa);
            }
            w *= 4.0;
        }
        Err(Error::NonConvergence(format!(
            "half-step shooting lost the root near E = {seed}"
        )))
    }

    /// Node count of the matched solution at `e`, from the trajectories
    /// themselves: core crossings, the sign handoff at r0, and crossings in
    /// the shell out to r0 + 8/b2.
    fn count_nodes(&self, e: f64) -> Result<usize> {
        let eps1 = region_energy(e, self.cfg, Region::Core).eps;
        let eps2 = region_energy(e, self.cfg, Region::Shell);
        let b2 = eps2.wave.re;
        let mut core_track = Vec::with_capacity(self.core.steps + 1);
        let (g1, d1) = integrate_core(self.lam, eps1, self.a, &self.core, Some(&mut core_track));
        let mut shell_track = Vec::with_capacity(self.shell.steps + 1);
        let (g2, d2) =
            integrate_shell(self.lam, eps2.eps, b2, &self.shell, Some(&mut shell_track));
        let r0 = self.cfg.r0;
        let scale = g2.abs() + r0 * d2.abs();
        let s = if g2.abs() > 1e-12 * scale {
            g1 / g2
        } else {
            match self.cfg.matching {
                Matching::Weighted => self.cfg.m2 / self.cfg.m1 * d1 / d2,
                Matching::Plain => d1 / d2,
            }
        };
        let r_cut = r0 + 8.0 / b2;
        // shell samples run from r_max inward; keep the window, flip to
        // ascending, apply the handoff scale
        let mut shell_vals: Vec<f64> = shell_track
            .iter()
            .rev()
            .filter(|&&(r, _)| r <= r_cut)
            .map(|&(_, g)| s * g)
            .collect();
        if shell_vals.is_empty() {
            shell_vals.push(s * g2);
        }
        let core_vals: Vec<f64> = core_track.iter().map(|&(_, g)| g).collect();
        let (core_count, core_last) = strict_crossings(&core_vals);
        let (shell_count, _) = strict_crossings(&shell_vals);
        let shell_first = shell_vals.iter().copied().find(|&v| v != 0.0);
        let bridge = match (core_last, shell_first) {
            (Some(x), Some(y)) if (x < 0.0) != (y < 0.0) => 1,
            _ => 0,
        };
        Ok(core_count + bridge + shell_count)
    }
}

/// Richardson-extrapolate a step-halving pair into one eigenvalue, or
/// reject the pair when the halves disagree beyond the claimed bound.
fn finalize(
    counter: &Shooter<'_>,
    branch: BranchExponent,
    e_h: f64,
    e_h2: f64,
    bracket: (f64, f64),
) -> Result<EigenResult> {
    let halving_gap = (e_h - e_h2).abs();
    if halving_gap >= 4e-7 {
        return Err(Error::NonConvergence(format!(
            "step-halving disagreement {halving_gap:.3e} at E = {e_h2}"
        )));
    }
    let e_star = (16.0 * e_h2 - e_h) / 15.0;
    Ok(EigenResult {
        e: e_star,
        n: counter.count_nodes(e_star)?,
        branch,
        residual: halving_gap / 15.0,
        bracket,
    })
}

fn strict_crossings(vals: &[f64]) -> (usize, Option<f64>) {
    let mut count = 0usize;
    let mut prev: Option<f64> = None;
    for &v in vals {
        if v == 0.0 {
            continue;
        }
        if let Some(p) = prev {
            if (p < 0.0) != (v < 0.0) {
                count += 1;
            }
        }
        prev = Some(v);
    }
    (count, prev)
}

/// Every bound state of one branch by shooting, ascending in energy. Each
/// eigenvalue carries a step-halving error estimate in `residual`; the
/// halving pair must agree within 4e-7 or the solve is rejected rather
/// than silently returned.
pub fn shoot_eigenvalues(
    cfg: &WellConfig,
    branch: BranchExponent,
    grid: &ShootingGrid,
    n_max: usize,
) -> Result<Vec<EigenResult>> {
    cfg.validate()?;
    grid.validate(cfg)?;
    if !(branch.a > 0.0) {
        return Err(Error::Domain(format!(
            "inadmissible exponent a = {} passed to the oracle",
            branch.a
        )));
    }
    let a = branch.a;
    let lam = a * (a - 1.0);
    let (lo, hi) = bound_window(cfg);
    let lo = lo + 1e-6;
    let hi = hi - 1e-6;
    if !(hi > lo) {
        return Ok(Vec::new());
    }
    let base = Shooter {
        cfg,
        lam,
        a,
        core: CoreTable::build(grid.r_min, cfg.r0, grid.steps),
        shell: ShellTable::build(cfg.r0, grid.r_max, grid.steps),
    };
    let fine = Shooter {
        cfg,
        lam,
        a,
        core: CoreTable::build(grid.r_min, cfg.r0, 2 * grid.steps),
        shell: ShellTable::build(cfg.r0, grid.r_max, 2 * grid.steps),
    };

    let scan = 1000usize;
    let step = (hi - lo) / (scan - 1) as f64;
    let mut out = Vec::new();
    let mut e_prev = lo;
    let mut w_prev = base.mismatch(lo)?;
    for i in 1..scan {
        let e = if i == scan - 1 { hi } else { lo + step * i as f64 };
        let w = base.mismatch(e)?;
        if w_prev != 0.0 && w != 0.0 && ((w_prev < 0.0) != (w < 0.0)) {
            let (e_h, _) = base.bisect(e_prev, e, w_prev)?;
            let (e_h2, bracket) = fine.refine_near(e_h, lo, hi)?;

            // the shell must actually reach the decay regime of this state;
            // stretch it and redo both refinements if the default r_max is
            // too short
            let b2 = region_energy(e_h2, cfg, Region::Shell).wave.re;
            let needed = cfg.r0 + 8.0 / b2;
            let lv = if grid.r_max < needed {
                let r_ext = cfg.r0 + (10.0 / b2).min(1e4);
                let stretch = (r_ext - cfg.r0) / (grid.r_max - cfg.r0);
                let steps_ext = ((grid.steps as f64) * stretch).ceil() as usize;
                let base_ext = Shooter {
                    cfg,
                    lam,
                    a,
                    core: CoreTable::build(grid.r_min, cfg.r0, grid.steps),
                    shell: ShellTable::build(cfg.r0, r_ext, steps_ext),
                };
                let fine_ext = Shooter {
                    cfg,
                    lam,
                    a,
                    core: CoreTable::build(grid.r_min, cfg.r0, 2 * grid.steps),
                    shell: ShellTable::build(cfg.r0, r_ext, 2 * steps_ext),
                };
                let (e_h, _) = base_ext.refine_near(e_h, lo, hi)?;
                let (e_h2, bracket) = fine_ext.refine_near(e_h, lo, hi)?;
                finalize(&fine_ext, branch, e_h, e_h2, bracket)?
            } else {
                finalize(&fine, branch, e_h, e_h2, bracket)?
            };
            out.push(lv);
        }
        e_prev = e;
        w_prev = w;
    }
    out.retain(|lv| lv.n <= n_max);
    out.sort_by(|x, y| x.e.total_cmp(&y.e));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::well::admissible_branches;

    fn unit_branch() -> BranchExponent {
        admissible_branches(0, 0.0)[0]
    }

    #[test]
    fn no_well_shoots_nothing() {
        let cfg = WellConfig::new(1.5, 1.5, 0.0, 3.0);
        let grid = ShootingGrid::for_config(&cfg);
        let lv = shoot_eigenvalues(&cfg, unit_branch(), &grid, 8).unwrap();
        assert!(lv.is_empty());
    }

    #[test]
    fn shooting_matches_the_unit_exponent_transcendental() {
        // same closed-form reference as the spectrum tests, fully
        // independent of both solvers
        let cfg = WellConfig::new(1.5, 1.75, 1.0, 4.0);
        let t = |e: f64| {
            let q = ((e + 1.0) * (e + 1.0) - 2.25).sqrt();
            let b2 = (3.0625 - (e - 1.0) * (e - 1.0)).sqrt();
            1.75 * q * (q * 4.0).cos() + 1.5 * b2 * (q * 4.0).sin()
        };
        let mut refs = Vec::new();
        let (lo, hi) = (0.5 + 1e-9, 2.75 - 1e-6);
        let n = 4000;
        let mut e_prev = lo;
        let mut t_prev = t(lo);
        for i in 1..=n {
            let e = lo + (hi - lo) * i as f64 / n as f64;
            let cur = t(e);
            if t_prev != 0.0 && cur != 0.0 && ((t_prev < 0.0) != (cur < 0.0)) {
                let (mut a, mut b, mut ta) = (e_prev, e, t_prev);
                for _ in 0..100 {
                    let m = 0.5 * (a + b);
                    let tm = t(m);
                    if (tm < 0.0) == (ta < 0.0) {
                        a = m;
                        ta = tm;
                    } else {
                        b = m;
                    }
                }
                refs.push(0.5 * (a + b));
            }
            e_prev = e;
            t_prev = cur;
        }
        let grid = ShootingGrid::for_config(&cfg);
        let found = shoot_eigenvalues(&cfg, unit_branch(), &grid, 8).unwrap();
        assert_eq!(found.len(), refs.len());
        assert_eq!(found.len(), 4);
        for (i, (f, r)) in found.iter().zip(&refs).enumerate() {
            assert!(
                (f.e - r).abs() < 1e-6,
                "oracle level {i}: {} vs transcendental {r}",
                f.e
            );
            assert_eq!(f.n, i);
            assert!(f.residual < 4e-7 / 15.0 * 16.0);
        }
    }

    #[test]
    fn deep_well_spacings_saturate_at_the_box_value() {
        // with V0 far above both masses every state in the window is
        // ultra-relativistic, so the spectrum is the linear box pattern:
        // consecutive gaps all within a percent of pi/r0, node counts in an
        // unbroken chain
        let cfg = WellConfig::new(1.0, 1.5, 12.0, 6.0);
        let grid = ShootingGrid::for_config(&cfg);
        let lv = shoot_eigenvalues(&cfg, unit_branch(), &grid, 200).unwrap();
        assert!(lv.len() >= 4, "deep well should hold several states, got {}", lv.len());
        let box_gap = std::f64::consts::PI / 6.0;
        for w in lv.windows(2) {
            let gap = w[1].e - w[0].e;
            assert!(
                (gap - box_gap).abs() < 0.015 * box_gap,
                "gap {gap} strays from the box spacing {box_gap}"
            );
            assert_eq!(w[1].n, w[0].n + 1, "node chain broken");
        }
    }

    #[test]
    fn matching_convention_changes_the_spectrum() {
        let mut cfg = WellConfig::new(1.5, 1.75, 1.0, 2.0);
        let grid = ShootingGrid::for_config(&cfg);
        let weighted = shoot_eigenvalues(&cfg, unit_branch(), &grid, 8).unwrap();
        cfg.matching = Matching::Plain;
        let plain = shoot_eigenvalues(&cfg, unit_branch(), &grid, 8).unwrap();
        assert_eq!(weighted.len(), 2);
        assert_eq!(plain.len(), 2);
        assert!((weighted[0].e - plain[0].e).abs() > 1e-4);
    }

    #[test]
    fn grid_validation() {
        let cfg = WellConfig::new(1.5, 1.75, 1.0, 4.0);
        let mut g = ShootingGrid::for_config(&cfg);
        g.steps = 100;
        assert!(g.validate(&cfg).is_err());
        let mut g = ShootingGrid::for_config(&cfg);
        g.r_min = 0.0;
        assert!(g.validate(&cfg).is_err());
        let mut g = ShootingGrid::for_config(&cfg);
        g.r_max = 3.0;
        assert!(g.validate(&cfg).is_err());
    }
}
