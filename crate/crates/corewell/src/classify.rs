//! Tags level curves by the sign of dE/dr0 and differences pairs of curves.
//!
//! A curve whose energy falls strictly as the well widens behaves like a
//! particle state (N-EL); one that rises strictly behaves like an
//! antiparticle state (A-EL). Mixed or zero slopes stay untagged rather
//! than being forced into either bin, so the tags are falsifiable.

use crate::error::{Error, Result};
use crate::spectrum::LevelCurve;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelTag {
    Normal,
    Anomalous,
    NonMonotonic,
}

impl std::fmt::Display for LevelTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LevelTag::Normal => write!(f, "N-EL"),
            LevelTag::Anomalous => write!(f, "A-EL"),
            LevelTag::NonMonotonic => write!(f, "non-monotonic"),
        }
    }
}

/// Tag plus the finite-difference slope statistics it was decided on.
#[derive(Clone, Copy, Debug)]
pub struct LevelClass {
    pub tag: LevelTag,
    pub slope_min: f64,
    pub slope_max: f64,
    pub slope_mean: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trend {
    Decreasing,
    Increasing,
    Constant,
    Mixed,
}

impl std::fmt::Display for Trend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Trend::Decreasing => write!(f, "decreasing"),
            Trend::Increasing => write!(f, "increasing"),
            Trend::Constant => write!(f, "constant"),
            Trend::Mixed => write!(f, "mixed"),
        }
    }
}

/// Energy gap between two curves on their shared r0 samples.
#[derive(Clone, Debug)]
pub struct TransitionTable {
    /// (r0, E_B - E_A), ascending r0.
    pub points: Vec<(f64, f64)>,
    pub trend: Trend,
}

/// Central slopes at interior points, one-sided at the ends; strict sign
/// uniformity decides the tag.
pub fn classify_level_curve(curve: &LevelCurve) -> Result<LevelClass> {
    let pts = &curve.points;
    if pts.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "classification needs at least 3 sweep points, got {}",
            pts.len()
        )));
    }
    let k = pts.len();
    let mut slopes = Vec::with_capacity(k);
    slopes.push((pts[1].1 - pts[0].1) / (pts[1].0 - pts[0].0));
    for i in 1..k - 1 {
        slopes.push((pts[i + 1].1 - pts[i - 1].1) / (pts[i + 1].0 - pts[i - 1].0));
    }
    slopes.push((pts[k - 1].1 - pts[k - 2].1) / (pts[k - 1].0 - pts[k - 2].0));
    let slope_min = slopes.iter().fold(f64::INFINITY, |m, &s| m.min(s));
    let slope_max = slopes.iter().fold(f64::NEG_INFINITY, |m, &s| m.max(s));
    let slope_mean = slopes.iter().sum::<f64>() / slopes.len() as f64;
    let tag = if slope_max < 0.0 {
        LevelTag::Normal
    } else if slope_min > 0.0 {
        LevelTag::Anomalous
    } else {
        LevelTag::NonMonotonic
    };
    Ok(LevelClass {
        tag,
        slope_min,
        slope_max,
        slope_mean,
    })
}

/// Gap E_B - E_A over the common r0 grid (matched to 1e-9), with its
/// monotonicity. The reported r0 is the smaller of each matched pair so the
/// table is exactly antisymmetric under swapping the curves.
pub fn transition_energies(curve_a: &LevelCurve, curve_b: &LevelCurve) -> Result<TransitionTable> {
    let mut points = Vec::new();
    let mut ib = 0usize;
    for &(ra, ea) in &curve_a.points {
        while ib < curve_b.points.len() && curve_b.points[ib].0 < ra - 1e-9 {
            ib += 1;
        }
        if ib < curve_b.points.len() {
            let (rb, eb) = curve_b.points[ib];
            if (rb - ra).abs() <= 1e-9 {
                points.push((ra.min(rb), eb - ea));
                ib += 1;
            }
        }
    }
    if points.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "transition table needs at least 3 shared r0 samples, found {}",
            points.len()
        )));
    }
    let mut dec = true;
    let mut inc = true;
    let mut all_zero = true;
    for w in points.windows(2) {
        let d = w[1].1 - w[0].1;
        dec &= d < 0.0;
        inc &= d > 0.0;
        all_zero &= w[0].1 == w[1].1;
    }
    let trend = if all_zero {
        Trend::Constant
    } else if dec {
        Trend::Decreasing
    } else if inc {
        Trend::Increasing
    } else {
        Trend::Mixed
    };
    Ok(TransitionTable { points, trend })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{sweep_well_width, SweepSettings};
    use crate::well::{admissible_branches, BranchExponent, Sector, WellConfig};

    fn synthetic(points: Vec<(f64, f64)>) -> LevelCurve {
        LevelCurve {
            kappa: 0,
            branch: BranchExponent {
                a: 1.0,
                branch: crate::well::Branch::Plus,
            },
            n: 0,
            points,
            flagged: false,
        }
    }

    #[test]
    fn strictly_falling_curve_is_normal() {
        let c = synthetic(vec![(1.0, 2.0), (2.0, 1.5), (3.0, 1.2), (4.0, 1.1)]);
        let cls = classify_level_curve(&c).unwrap();
        assert_eq!(cls.tag, LevelTag::Normal);
        assert!(cls.slope_max < 0.0);
        assert!(cls.slope_min <= cls.slope_mean && cls.slope_mean <= cls.slope_max);
    }

    #[test]
    fn strictly_rising_curve_is_anomalous() {
        let c = synthetic(vec![(1.0, -2.0), (2.0, -1.5), (3.0, -1.2)]);
        assert_eq!(classify_level_curve(&c).unwrap().tag, LevelTag::Anomalous);
    }

    #[test]
    fn constant_curve_fails_both_strict_tests() {
        let c = synthetic(vec![(1.0, 0.5), (2.0, 0.5), (3.0, 0.5)]);
        let cls = classify_level_curve(&c).unwrap();
        assert_eq!(cls.tag, LevelTag::NonMonotonic);
        assert_eq!(cls.slope_min, 0.0);
        assert_eq!(cls.slope_max, 0.0);
    }

    #[test]
    fn single_dip_is_non_monotonic() {
        let c = synthetic(vec![(1.0, 1.0), (2.0, 0.8), (3.0, 0.9), (4.0, 1.1)]);
        assert_eq!(classify_level_curve(&c).unwrap().tag, LevelTag::NonMonotonic);
    }

    #[test]
    fn short_curves_are_rejected() {
        let c = synthetic(vec![(1.0, 1.0), (2.0, 0.8)]);
        assert!(classify_level_curve(&c).is_err());
    }

    #[test]
    fn swept_light_core_levels_fall() {
        let cfg = WellConfig::new(1.5, 1.75, 1.0, 1.0);
        let branch = admissible_branches(0, 0.0)[0];
        let grid = [3.8, 3.9, 4.0, 4.1, 4.2];
        let curves = sweep_well_width(&cfg, branch, &grid, &SweepSettings::default()).unwrap();
        for c in curves.iter().filter(|c| c.points.len() >= 3) {
            assert_eq!(classify_level_curve(c).unwrap().tag, LevelTag::Normal);
        }
    }

    #[test]
    fn swept_heavy_core_antiparticle_levels_rise() {
        let mut cfg = WellConfig::new(1.75, 1.5, 1.0, 1.0);
        cfg.sector = Sector::Antiparticle;
        let branch = admissible_branches(0, 0.0)[0];
        let grid = [3.8, 3.9, 4.0, 4.1, 4.2];
        let curves = sweep_well_width(&cfg, branch, &grid, &SweepSettings::default()).unwrap();
        assert!(!curves.is_empty());
        for c in curves.iter().filter(|c| c.points.len() >= 3) {
            let cls = classify_level_curve(c).unwrap();
            assert_eq!(cls.tag, LevelTag::Anomalous);
            assert!(c.points.iter().all(|&(_, e)| e < 0.0));
        }
    }

    #[test]
    fn tag_is_stable_under_grid_refinement() {
        let cfg = WellConfig::new(1.5, 1.75, 1.0, 1.0);
        let branch = admissible_branches(0, 0.0)[0];
        let coarse: Vec<f64> = (0..5).map(|i| 3.8 + 0.1 * i as f64).collect();
        let fine: Vec<f64> = (0..9).map(|i| 3.8 + 0.05 * i as f64).collect();
        let st = SweepSettings::default();
        let cc = sweep_well_width(&cfg, branch, &coarse, &st).unwrap();
        let cf = sweep_well_width(&cfg, branch, &fine, &st).unwrap();
        for c in cc.iter().filter(|c| c.points.len() >= 3) {
            let twin = cf
                .iter()
                .find(|d| d.n == c.n && d.points.len() >= 3)
                .expect("refined sweep lost a curve");
            assert_eq!(
                classify_level_curve(c).unwrap().tag,
                classify_level_curve(twin).unwrap().tag
            );
        }
    }

    #[test]
    fn transition_table_is_antisymmetric_exactly() {
        let a = synthetic(vec![(1.0, 0.3), (2.0, 0.4), (3.0, 0.45), (4.0, 0.5)]);
        let b = synthetic(vec![(1.0, 1.3), (2.0, 1.2), (3.0, 1.1), (4.0, 1.05)]);
        let ab = transition_energies(&a, &b).unwrap();
        let ba = transition_energies(&b, &a).unwrap();
        assert_eq!(ab.points.len(), ba.points.len());
        for (x, y) in ab.points.iter().zip(&ba.points) {
            assert_eq!(x.0, y.0);
            assert_eq!(x.1, -y.1);
        }
        assert_eq!(ab.trend, Trend::Decreasing);
        assert_eq!(ba.trend, Trend::Increasing);
    }

    #[test]
    fn identical_curves_difference_to_zero() {
        let a = synthetic(vec![(1.0, 0.3), (2.0, 0.4), (3.0, 0.45)]);
        let t = transition_energies(&a, &a).unwrap();
        assert!(t.points.iter().all(|&(_, d)| d == 0.0));
        assert_eq!(t.trend, Trend::Constant);
    }

    #[test]
    fn partial_overlap_keeps_only_shared_samples() {
        let a = synthetic(vec![(1.0, 0.1), (2.0, 0.2), (3.0, 0.3), (4.0, 0.4)]);
        let b = synthetic(vec![(2.0, 1.0), (3.0, 0.9), (4.0, 0.85), (5.0, 0.8)]);
        let t = transition_energies(&a, &b).unwrap();
        assert_eq!(t.points.len(), 3);
        assert_eq!(t.points[0].0, 2.0);
        assert_eq!(t.trend, Trend::Decreasing);
    }

    #[test]
    fn disjoint_grids_are_rejected() {
        let a = synthetic(vec![(1.0, 0.1), (2.0, 0.2), (3.0, 0.3)]);
        let b = synthetic(vec![(5.0, 1.0), (6.0, 0.9), (7.0, 0.85)]);
        assert!(transition_energies(&a, &b).is_err());
    }
}
