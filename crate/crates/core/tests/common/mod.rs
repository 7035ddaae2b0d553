//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use kelvin_core::Complex64;

/// Minimal double-double arithmetic, enough for a power series.
#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    fn from(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = Self::two_sum(self.hi, o.hi);
        let (t, f) = Self::two_sum(self.lo, o.lo);
        let (s, e) = Self::quick(s, e + t);
        let (s, e) = Self::quick(s, e + f);
        Dd::new(s, e)
    }

    fn quick(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        (s, b - (s - a))
    }

    fn neg(self) -> Dd {
        Dd::new(-self.hi, -self.lo)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (s, e) = Self::quick(p, e);
        Dd::new(s, e)
    }

    fn div_f64(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        let r = self.add(Dd::from(d).mul(Dd::from(q1)).neg());
        let q2 = r.hi / d;
        let (s, e) = Self::quick(q1, q2);
        Dd::new(s, e)
    }
}

#[derive(Clone, Copy)]
struct DdC {
    re: Dd,
    im: Dd,
}

impl DdC {
    fn mul(self, o: DdC) -> DdC {
        DdC {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }
    fn add(self, o: DdC) -> DdC {
        DdC {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }
    fn div_f64(self, d: f64) -> DdC {
        DdC {
            re: self.re.div_f64(d),
            im: self.im.div_f64(d),
        }
    }
}

/// `w(z) = Σ (iz)ⁿ / Γ(n/2 + 1)`, 200 terms in double-double.
pub fn maclaurin_w(z: Complex64) -> Complex64 {
    // 2/√π split into two doubles
    let two_over_sqrt_pi = Dd::new(std::f64::consts::FRAC_2_SQRT_PI, 1.533_545_961_316_588e-17);
    let iz = DdC {
        re: Dd::from(-z.im),
        im: Dd::from(z.re),
    };
    let iz2 = iz.mul(iz);
    // even chain: (iz)^{2k}/k!, odd chain: (iz)^{2k+1}/Γ(k + 3/2)
    let mut even = DdC {
        re: Dd::from(1.0),
        im: Dd::from(0.0),
    };
    let mut odd = DdC {
        re: iz.re.mul(two_over_sqrt_pi),
        im: iz.im.mul(two_over_sqrt_pi),
    };
    let mut sum = even.add(odd);
    for k in 1..100 {
        even = even.mul(iz2).div_f64(k as f64);
        odd = odd.mul(iz2).div_f64(k as f64 + 0.5);
        sum = sum.add(even).add(odd);
    }
    Complex64::new(sum.re.hi + sum.re.lo, sum.im.hi + sum.im.lo)
}

/// Direct `O(n²)` Clenshaw–Curtis weights,
/// `w_k = (c_k/n)[1 − Σ_{j=1}^{n/2} b_j cos(2jkπ/n)/(4j² − 1)]`, with the
/// cosine argument reduced modulo `2n` in integers.
pub fn cc_weights_direct(n: usize) -> Vec<f64> {
    let cos_table: Vec<f64> = (0..2 * n).map(|r| (r as f64 * PI / n as f64).cos()).collect();
    (0..=n)
        .map(|k| {
            let mut s = 0.0;
            for j in 1..=n / 2 {
                let b = if 2 * j == n { 1.0 } else { 2.0 };
                s += b * cos_table[(2 * j * k) % (2 * n)] / (4.0 * (j * j) as f64 - 1.0);
            }
            let c = if k == 0 || k == n { 1.0 } else { 2.0 };
            c / n as f64 * (1.0 - s)
        })
        .collect()
}

/// `n` equally spaced values from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// Published benchmark values of I∞(−1, y, z): `(y, z, value)`.
pub const TABLE1: [(f64, f64, f64); 12] = [
    (-0.5, 0.5, -0.3132089735),
    (-0.1, 0.5, -0.4347821474),
    (-0.01, 0.5, -0.4093149760),
    (0.0, 0.5, -0.4039184710),
    (-0.5, 0.1, -0.4288349681),
    (-0.1, 0.1, -1.0716691716),
    (-0.01, 0.1, -2.1157417380),
    (0.0, 0.1, -2.5160949098),
    (-0.5, 0.01, -0.4349760923),
    (-0.1, 0.01, -0.9188289512),
    (-0.01, 0.01, -0.7896492217),
    (0.0, 0.01, 3.6856412628),
];

/// `(√π/2) e^y / √(−y)`.
pub fn axis_value(y: f64) -> f64 {
    PI.sqrt() / 2.0 * y.exp() / (-y).sqrt()
}
