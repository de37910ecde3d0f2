//! Bessel J of real order and non-negative real argument.
//!
//! Three regimes:
//!   x < 8            ascending series in f64
//!   8 <= x <= ~30    ascending series carried in double-double, because the
//!                    alternating terms reach ~e^x/(pi x) and would cost up
//!                    to ten digits of cancellation in plain f64
//!   x > 30           Hankel asymptotic expansion (DLMF 10.17), truncated at
//!                    the smallest term
//!
//! Orders at a negative integer reduce through J_{-n} = (-1)^n J_n first;
//! the series recurrence cannot start there because 1/Gamma kills its
//! leading term.

use super::dd::Dd;
use super::gamma::recip_gamma;

fn series_f64(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = recip_gamma(nu + 1.0);
    let mut sum = term;
    for k in 0..500 {
        let kf = k as f64;
        term *= -q / ((kf + 1.0) * (nu + kf + 1.0));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() + 1e-305 {
            break;
        }
    }
    (0.5 * x).powf(nu) * sum
}

fn series_dd(nu: f64, x: f64) -> f64 {
    let q = Dd::from_f64(0.25).mul(Dd::exact_sum(x * x, (x).mul_add(x, -x * x)));
    let mut term = Dd::from_f64(recip_gamma(nu + 1.0));
    let mut sum = term;
    for k in 0..700 {
        let kf = (k + 1) as f64;
        let denom = Dd::from_f64(kf).mul(Dd::exact_sum(nu, kf));
        term = term.mul(q).div(denom).neg();
        sum = sum.add(term);
        if term.abs_hi() <= 1e-33 * sum.value().abs() + 1e-305 {
            break;
        }
    }
    (0.5 * x).powf(nu) * sum.value()
}

fn hankel(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let omega = x - (0.5 * nu + 0.25) * std::f64::consts::PI;
    let mut c = 1.0f64; // a_k(nu) / x^k
    let mut p = 1.0f64;
    let mut q = 0.0f64;
    for k in 0..60u32 {
        let kf = k as f64;
        let next = c * (mu - (2.0 * kf + 1.0).powi(2)) / (8.0 * (kf + 1.0) * x);
        if next.abs() >= c.abs() || next.abs() < 1e-19 {
            if next.abs() < 1e-19 {
                // converged; fold the last tiny term in
                apply(k + 1, next, &mut p, &mut q);
            }
            break;
        }
        c = next;
        apply(k + 1, c, &mut p, &mut q);
    }
    return (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * omega.cos() - q * omega.sin());

    fn apply(k: u32, c: f64, p: &mut f64, q: &mut f64) {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            *p += sign * c;
        } else {
            *q += sign * c;
        }
    }
}

pub(crate) fn bessel_j(nu: f64, x: f64) -> f64 {
    debug_assert!(x >= 0.0, "bessel_j wants x >= 0, got {x}");
    if nu < -0.5 {
        let n = nu.round();
        if (nu - n).abs() < 1e-12 && n < 0.0 {
            let flip = if (n as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            return flip * bessel_j(-n, x);
        }
    }
    if x < 8.0 {
        series_f64(nu, x)
    } else if x <= 30.0 || 4.0 * nu * nu > 4.0 * x {
        series_dd(nu, x)
    } else {
        hankel(nu, x)
    }
}

/// (J_nu(x), d/dx J_nu(x)).
pub(crate) fn bessel_j_pair(nu: f64, x: f64) -> (f64, f64) {
    let j = bessel_j(nu, x);
    let jm = bessel_j(nu - 1.0, x);
    (j, jm - (nu / x) * j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j_half(x: f64) -> f64 {
        (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin()
    }

    fn j_minus_half(x: f64) -> f64 {
        (2.0 / (std::f64::consts::PI * x)).sqrt() * x.cos()
    }

    #[test]
    fn half_integer_orders_reduce_to_trig() {
        for &x in &[0.3, 1.0, 5.0, 11.9, 12.1, 19.0, 29.9, 30.1, 35.0, 50.0] {
            let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
            assert!(
                (bessel_j(0.5, x) - j_half(x)).abs() <= 5e-13 * amp,
                "J_1/2 off at x = {x}: {} vs {}",
                bessel_j(0.5, x),
                j_half(x)
            );
            assert!(
                (bessel_j(-0.5, x) - j_minus_half(x)).abs() <= 5e-13 * amp,
                "J_-1/2 off at x = {x}"
            );
        }
    }

    #[test]
    fn three_term_recurrence() {
        for &nu in &[0.0, 0.1, 0.7, 1.3, 2.5] {
            for &x in &[0.5, 3.0, 11.5, 12.5, 22.0, 29.5, 31.0, 40.0] {
                let jm = bessel_j(nu - 1.0, x);
                let jp = bessel_j(nu + 1.0, x);
                let j = bessel_j(nu, x);
                let amp = (2.0 / (std::f64::consts::PI * x)).sqrt().max(j.abs());
                assert!(
                    (jm + jp - 2.0 * nu / x * j).abs() <= 2e-11 * amp.max(1.0),
                    "recurrence off at nu = {nu}, x = {x}"
                );
            }
        }
    }

    #[test]
    fn regime_seams_are_continuous() {
        for &nu in &[0.0, 0.4, 1.1] {
            let lo = series_f64(nu, 8.0 - 1e-9);
            let hi = series_dd(nu, 8.0 - 1e-9);
            assert!((lo - hi).abs() < 1e-11, "f64/dd seam at nu = {nu}");
            let lo = series_dd(nu, 30.0 + 1e-9);
            let hi = hankel(nu, 30.0 + 1e-9);
            assert!((lo - hi).abs() < 1e-11, "dd/asymptotic seam at nu = {nu}");
        }
    }

    #[test]
    fn small_argument_leading_term() {
        for &nu in &[0.1, 0.5, 1.7] {
            let x = 1e-4f64;
            let lead = (0.5 * x).powf(nu) * recip_gamma(nu + 1.0);
            let j = bessel_j(nu, x);
            assert!(((j - lead) / lead).abs() < 1e-7, "leading term off at nu = {nu}");
        }
    }

    #[test]
    fn negative_integer_order_reflects() {
        for &x in &[0.7, 4.0, 15.0] {
            assert!((bessel_j(-1.0, x) + bessel_j(1.0, x)).abs() < 1e-12);
            assert!((bessel_j(-2.0, x) - bessel_j(2.0, x)).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        for &(nu, x) in &[(0.5f64, 2.0f64), (0.0, 7.0), (1.3, 18.0), (0.2, 33.0)] {
            let h = 1e-6 * x.max(1.0);
            let fd = (bessel_j(nu, x + h) - bessel_j(nu, x - h)) / (2.0 * h);
            let (_, jp) = bessel_j_pair(nu, x);
            assert!(
                (jp - fd).abs() < 1e-8,
                "J' off at nu = {nu}, x = {x}: {jp} vs {fd}"
            );
        }
    }
}
