//! Deterministic low-discrepancy directions on the unit sphere of `ℂ^{d}`.

use std::f64::consts::PI;

use num_complex::Complex64;

const PRIMES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as u64;
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % b) as f64;
        i /= b;
        f *= inv;
    }
    r
}

/// Halton point `i` (1-based) in `[0, 1)^dim`.
pub fn halton(i: u64, dim: usize) -> Vec<f64> {
    assert!(dim <= PRIMES.len(), "Halton dimension above {}", PRIMES.len());
    (0..dim).map(|k| radical_inverse(i, PRIMES[k])).collect()
}

/// Unit vector in `ℂ^d` from Halton point `i` via Box–Muller.
fn base_direction(i: u64, d: usize) -> Vec<Complex64> {
    let u = halton(i, 2 * d);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            // keep the radius argument away from 0
            let r = (-2.0 * (1.0 - u[2 * k]).max(1e-300).ln()).sqrt();
            Complex64::from_polar(r, 2.0 * PI * u[2 * k + 1])
        })
        .collect();
    let norm = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in &mut z {
        *c /= norm;
    }
    z
}

/// `count` unit directions in `ℂ^d`, closed under multiplication by
/// `i^k`; the first `m` directions for any multiple `m` of 4 form the
/// set requested with `count = m`, so estimates refine monotonically.
pub fn directions(d: usize, count: usize) -> Vec<Vec<Complex64>> {
    let base = count.div_ceil(4);
    let rot = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0)];
    let mut out = Vec::with_capacity(base * 4);
    for i in 0..base {
        let v = base_direction(i as u64 + 1, d);
        for r in rot {
            out.push(v.iter().map(|c| c * r).collect());
        }
    }
    out
}

/// Points in the unit ball of `ℂ^d`: directions scaled by `t^{1/(2d)}`
/// for a further Halton coordinate `t`, giving a uniform-in-volume sample.
pub fn ball_points(d: usize, count: usize) -> Vec<Vec<Complex64>> {
    (0..count)
        .map(|i| {
            let v = base_direction(i as u64 + 1, d);
            let t = radical_inverse(i as u64 + 1, PRIMES[2 * d]);
            let r = t.powf(1.0 / (2 * d) as f64);
            v.into_iter().map(|c| c * r).collect()
        })
        .collect()
}
