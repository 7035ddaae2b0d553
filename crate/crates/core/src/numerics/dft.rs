use std::f64::consts::PI;

use num_complex::Complex64;

/// Forward DFT `U_k = Σ_n u_n exp(−2πikn/N)` without normalisation.
///
/// Power-of-two lengths use an in-place iterative radix-2 transform; other
/// lengths fall back to direct summation.
pub fn dft(u: &[Complex64]) -> Vec<Complex64> {
    transform(u, -1.0)
}

/// Inverse of [`dft`], including the `1/N` factor.
pub fn idft(u: &[Complex64]) -> Vec<Complex64> {
    let n = u.len() as f64;
    let mut out = transform(u, 1.0);
    for v in &mut out {
        *v /= n;
    }
    out
}

fn transform(u: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = u.len();
    if n <= 1 {
        return u.to_vec();
    }
    if n.is_power_of_two() {
        let mut data = u.to_vec();
        radix2_in_place(&mut data, sign);
        data
    } else {
        direct(u, sign)
    }
}

fn direct(u: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = u.len();
    (0..n)
        .map(|k| {
            u.iter()
                .enumerate()
                .map(|(j, v)| {
                    let phase = sign * 2.0 * PI * ((k * j) % n) as f64 / n as f64;
                    v * Complex64::from_polar(1.0, phase)
                })
                .sum()
        })
        .collect()
}

fn radix2_in_place(data: &mut [Complex64], sign: f64) {
    let n = data.len();
    let bits = n.trailing_zeros();

    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }

    // twiddles for the largest stage; smaller stages stride through it
    let half = n / 2;
    let twiddles: Vec<Complex64> = (0..half)
        .map(|k| Complex64::from_polar(1.0, sign * 2.0 * PI * k as f64 / n as f64))
        .collect();

    let mut len = 2;
    while len <= n {
        let stride = n / len;
        let half_len = len / 2;
        for block in data.chunks_exact_mut(len) {
            let (lo, hi) = block.split_at_mut(half_len);
            for (k, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                let t = twiddles[k * stride] * *b;
                *b = *a - t;
                *a += t;
            }
        }
        len <<= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn two_point() {
        assert!(close(&dft(&[c(1.0, 0.0), c(1.0, 0.0)]), &[c(2.0, 0.0), c(0.0, 0.0)], 1e-15));
    }

    #[test]
    fn impulse() {
        let u = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert!(close(&dft(&u), &[c(1.0, 0.0); 4], 1e-15));
    }

    #[test]
    fn shifted_impulse() {
        let u = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let expected = [c(1.0, 0.0), c(0.0, -1.0), c(-1.0, 0.0), c(0.0, 1.0)];
        assert!(close(&dft(&u), &expected, 1e-15));
    }

    #[test]
    fn non_power_of_two_uses_direct_sum() {
        let u = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        let v = dft(&u);
        assert!((v[0] - 6.0).norm() < 1e-14);
        assert!(close(&idft(&v), &u, 1e-14));
    }
}
