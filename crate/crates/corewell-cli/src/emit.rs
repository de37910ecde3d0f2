//! Text emission. Every number is printed with 17 significant digits so the
//! written value re-parses to the identical double, and nothing
//! time-dependent is ever written: rerunning a command byte-reproduces its
//! files.

use corewell::{Branch, DegeneracyReport, EigenResult, WellConfig};

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn push_diagnostics(out: &mut String, diagnostics: &[String]) {
    for d in diagnostics {
        out.push_str("# diagnostic: ");
        out.push_str(d);
        out.push('\n');
    }
}

/// Table for a single-radius solve: one row per bound state.
pub fn eigenvalues_csv(kappa: i32, rows: &[EigenResult], diagnostics: &[String]) -> String {
    let mut out = String::from(
        "# bound states at one radius; E in fm^-1, residual dimensionless, nodes of the lower component\n",
    );
    out.push_str("kappa,branch,n,E,residual,nodes\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            kappa,
            r.branch.branch,
            r.n,
            fmt_float(r.e),
            fmt_float(r.residual),
            r.n
        ));
    }
    push_diagnostics(&mut out, diagnostics);
    out
}

/// One row of the sweep table: a level-curve sample with its curve's tag.
pub struct LevelRow {
    pub r0: f64,
    pub kappa: i32,
    pub branch: Branch,
    pub n: usize,
    pub e: f64,
    pub class: String,
}

pub fn levels_csv(rows: &[LevelRow], diagnostics: &[String]) -> String {
    let mut out =
        String::from("# level curves over the radius sweep; r0 in fm, E in fm^-1\n");
    out.push_str("r0,kappa,branch,n,E,class\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_float(r.r0),
            r.kappa,
            r.branch,
            r.n,
            fmt_float(r.e),
            r.class
        ));
    }
    push_diagnostics(&mut out, diagnostics);
    out
}

/// Splitting gate below which two spectra count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;

pub fn degeneracy_text(a: &WellConfig, b: &WellConfig, rep: &DegeneracyReport) -> String {
    let mut out = String::from("# spectral degeneracy report; energies in fm^-1\n");
    out.push_str(&format!("kappa A: {}\nU0 A: {}\n", a.kappa, fmt_float(a.u0)));
    out.push_str(&format!("kappa B: {}\nU0 B: {}\n", b.kappa, fmt_float(b.u0)));
    out.push_str(&format!(
        "exponents predict degeneracy: {}\n",
        rep.predicted_degenerate
    ));
    out.push_str(&format!(
        "levels A: {}\nlevels B: {}\n",
        rep.levels_a.len(),
        rep.levels_b.len()
    ));
    for (i, s) in rep.splittings.iter().enumerate() {
        out.push_str(&format!(
            "pair {i}: E_A = {}, E_B = {}, split = {}\n",
            fmt_float(rep.levels_a[i].e),
            fmt_float(rep.levels_b[i].e),
            fmt_float(*s)
        ));
    }
    out.push_str(&format!("max splitting: {}\n", fmt_float(rep.max_splitting)));
    let degenerate =
        rep.levels_a.len() == rep.levels_b.len() && rep.max_splitting <= DEGENERACY_TOL;
    out.push_str(&format!("degenerate: {degenerate}\n"));
    out
}

/// One matched pair in the analytic-vs-shooting comparison.
pub struct OracleRow {
    pub branch: Branch,
    pub n_analytic: usize,
    pub e_analytic: f64,
    pub e_oracle: f64,
    pub n_oracle: usize,
}

pub fn oracle_check_csv(kappa: i32, rows: &[OracleRow], diagnostics: &[String]) -> String {
    let mut out = String::from(
        "# closed-form eigenvalues against the independent shooting integration; E in fm^-1\n",
    );
    out.push_str("kappa,branch,n,E_analytic,E_oracle,abs_diff,nodes_analytic,nodes_oracle\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            kappa,
            r.branch,
            r.n_analytic,
            fmt_float(r.e_analytic),
            fmt_float(r.e_oracle),
            fmt_float((r.e_analytic - r.e_oracle).abs()),
            r.n_analytic,
            r.n_oracle
        ));
    }
    push_diagnostics(&mut out, diagnostics);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_through_the_printed_form() {
        for &x in &[1.0, -0.75, 1.0 / 3.0, 2.4492935982947064e-16, 6.02e23] {
            let printed = fmt_float(x);
            assert_eq!(printed.parse::<f64>().unwrap(), x, "{printed}");
        }
    }

    #[test]
    fn csv_headers_carry_units_and_columns() {
        let s = eigenvalues_csv(0, &[], &[]);
        let mut lines = s.lines();
        assert!(lines.next().unwrap().starts_with('#'));
        assert_eq!(lines.next().unwrap(), "kappa,branch,n,E,residual,nodes");
        assert!(lines.next().is_none());
    }
}
