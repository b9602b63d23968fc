//! Arithmetic over the ring Z(d) and the roots of unity used for phases.
//!
//! Phases are built from reduced integer exponents so that `omega_pow(d, k)`
//! and `omega_pow(d, k + d)` are bit-identical.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Reduce an integer into `0..m`.
#[inline]
pub fn reduce(value: i64, modulus: usize) -> usize {
    value.rem_euclid(modulus as i64) as usize
}

/// `-value mod m`.
#[inline]
pub fn neg(value: usize, modulus: usize) -> usize {
    reduce(-(value as i64), modulus)
}

/// `ω^k` with `ω = e^{2πi/d}`.
pub fn omega_pow(d: usize, k: i64) -> Complex64 {
    let k = reduce(k, d);
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64)
}

/// `τ^k` with `τ = e^{iπ/d}`, a 2d-th root of unity, so `ω^{ξ/2} = τ^ξ`.
pub fn tau_pow(d: usize, k: i64) -> Complex64 {
    let k = reduce(k, 2 * d);
    Complex64::from_polar(1.0, PI * k as f64 / d as f64)
}

/// The offset ϱ_d in the phase gate: 1 for odd d, 0 for even d.
#[inline]
pub fn rho(d: usize) -> usize {
    d % 2
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Distance of an angle from the nearest multiple of 2π.
pub fn angle_mod_2pi_distance(theta: f64) -> f64 {
    let r = theta.rem_euclid(2.0 * PI);
    r.min(2.0 * PI - r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_handles_negatives() {
        assert_eq!(reduce(-1, 3), 2);
        assert_eq!(reduce(7, 3), 1);
        assert_eq!(neg(0, 5), 0);
        assert_eq!(neg(2, 5), 3);
    }

    #[test]
    fn tau_squared_is_omega() {
        for d in 2..8 {
            for k in -10..10 {
                let a = tau_pow(d, 2 * k);
                let b = omega_pow(d, k);
                assert!((a - b).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn primes() {
        let p: Vec<_> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(p, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
