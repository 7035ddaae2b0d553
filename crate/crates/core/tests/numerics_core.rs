//! Dense complex LU and the DFT against direct computations.

use std::f64::consts::PI;

use kelvin_core::numerics::{dft, idft, lu_solve, ComplexMatrix};
use kelvin_core::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_vec(rng: &mut StdRng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

#[test]
fn small_systems() {
    let x = lu_solve(ComplexMatrix::identity(2), &[c(1.0, 1.0), c(2.0, 0.0)]).unwrap();
    assert_eq!(x, vec![c(1.0, 1.0), c(2.0, 0.0)]);
    let diag = ComplexMatrix::from_row_major(2, 2, vec![c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)]).unwrap();
    let x = lu_solve(diag, &[c(2.0, 0.0), c(0.0, 1.0)]).unwrap();
    assert!((x[0] - 1.0).norm() < 1e-15 && (x[1] - 1.0).norm() < 1e-15);
    let a = ComplexMatrix::from_row_major(2, 2, vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
    let x = lu_solve(a, &[c(3.0, 0.0), c(-1.0, 0.0)]).unwrap();
    assert!((x[0] - 1.0).norm() < 1e-15 && (x[1] - 2.0).norm() < 1e-15);
}

#[test]
fn random_well_conditioned_systems_round_trip() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..10 {
        let n = 50;
        // diagonally weighted so the condition number stays moderate
        let a = ComplexMatrix::from_fn(n, n, |i, j| {
            let v = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if i == j {
                v + 10.0
            } else {
                v
            }
        });
        let b = random_vec(&mut rng, n);
        let x = lu_solve(a.clone(), &b).unwrap();
        let back = a.mul_vec(&x);
        let bnorm = b.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let err = back.iter().zip(&b).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
        assert!(err <= 1e-12 * bnorm, "{err:e}");
    }
}

#[test]
fn dft_examples() {
    let u = dft(&[c(1.0, 0.0), c(1.0, 0.0)]);
    assert!((u[0] - 2.0).norm() < 1e-15 && u[1].norm() < 1e-15);
    let u = dft(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    assert!(u.iter().all(|v| (v - 1.0).norm() < 1e-15));
    let u = dft(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let expect = [c(1.0, 0.0), c(0.0, -1.0), c(-1.0, 0.0), c(0.0, 1.0)];
    for (a, b) in u.iter().zip(expect) {
        assert!((a - b).norm() < 1e-15);
    }
}

#[test]
fn dft_matches_direct_sum() {
    let mut rng = StdRng::seed_from_u64(11);
    for n in 1..=64 {
        let u = random_vec(&mut rng, n);
        let fast = dft(&u);
        let scale = u.iter().map(|v| v.norm()).sum::<f64>();
        for (k, f) in fast.iter().enumerate() {
            let direct: Complex64 = u
                .iter()
                .enumerate()
                .map(|(j, v)| v * Complex64::from_polar(1.0, -2.0 * PI * ((j * k) % n) as f64 / n as f64))
                .sum();
            assert!((f - direct).norm() <= 1e-12 * scale, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn dft_round_trip_up_to_two_to_the_sixteen() {
    let mut rng = StdRng::seed_from_u64(13);
    for p in [1, 4, 9, 12, 16] {
        let n = 1usize << p;
        let u = random_vec(&mut rng, n);
        let back = idft(&dft(&u));
        let err = back.iter().zip(&u).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err <= 1e-13, "n = {n}: {err:e}");
    }
}
