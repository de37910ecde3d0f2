//! Minimal double-double arithmetic.
//!
//! Alternating series with large terms (Bessel series past x ~ 12) cancel
//! more digits than f64 carries. Carrying the partial sums in a hi/lo pair
//! keeps ~31 significant digits, which is enough margin for every argument
//! this crate evaluates.

#[derive(Clone, Copy, Debug)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Requires |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact sum of two f64 values, kept to full width.
    #[inline]
    pub fn exact_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add(self, rhs: Dd) -> Self {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let s2 = s2 + self.lo + rhs.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul(self, rhs: Dd) -> Self {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn neg(self) -> Self {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn div(self, rhs: Dd) -> Self {
        // Three quotient corrections; relative error stays near 2^-104.
        let q1 = self.hi / rhs.hi;
        let r1 = self.add(rhs.mul(Dd::from_f64(q1)).neg());
        let q2 = r1.hi / rhs.hi;
        let r2 = r1.add(rhs.mul(Dd::from_f64(q2)).neg());
        let q3 = r2.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e + q3 }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs_hi(self) -> f64 {
        self.hi.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_sum_keeps_the_low_part() {
        let s = Dd::exact_sum(1.0, 1e-20);
        assert_eq!(s.hi, 1.0);
        assert_eq!(s.lo, 1e-20);
    }

    #[test]
    fn mul_tracks_rounding_error() {
        let a = Dd::from_f64(1.0 + 2f64.powi(-30));
        let p = a.mul(a);
        let exact = 1.0 + 2f64.powi(-29) + 2f64.powi(-60);
        assert!((p.value() - exact).abs() < 1e-25);
    }

    #[test]
    fn div_inverts_mul() {
        let a = Dd::exact_sum(std::f64::consts::PI, 1.2e-17);
        let b = Dd::from_f64(7.5);
        let q = a.div(b);
        let back = q.mul(b);
        assert!((back.value() - a.value()).abs() < 1e-28);
    }

    #[test]
    fn alternating_sum_cancellation() {
        // sum_k (-1)^k 10^5 / k! has huge terms relative to its limit
        let mut term = Dd::from_f64(1e5);
        let mut sum = term;
        for k in 1..60 {
            term = term.mul(Dd::from_f64(-1.0)).div(Dd::from_f64(k as f64));
            sum = sum.add(term);
        }
        let expect = 1e5 * (-1.0f64).exp();
        assert!((sum.value() - expect).abs() / expect < 1e-25);
    }
}
