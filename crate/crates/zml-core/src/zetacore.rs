//! Zeta evaluation on and off the critical line, and the cached quantity
//! |zeta(1/2+ix)|^4 that every integral downstream consumes.
//!
//! Two evaluation paths cross-check each other:
//!
//! * `zeta_em` — Euler-Maclaurin summation, tolerance-driven, valid for
//!   Re s >= -1 away from s = 1.  This is the slow, trusted oracle.
//! * `zeta_rs` — Riemann-Siegel main sum plus up to five correction terms
//!   C_0..C_4 (Chebyshev tables in `rs_coeffs`, fitted against a 60-digit
//!   reference; see tools/gen_rs_coeffs.py).  The measured error model is
//!   |err| <= RS_ERR_MODEL[m] * t^{-(2m+3)/4}.  Where that model cannot
//!   certify `RS_FLOOR` absolute accuracy the call transparently delegates
//!   to Euler-Maclaurin, so the returned value is never worse than the
//!   documented floor.

use crate::error::{Result, ZmlError};
use crate::quadrature::Neumaier;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::io::{BufRead, BufWriter, Write};
use std::path::Path;
use std::sync::RwLock;

#[path = "rs_coeffs.rs"]
mod rs_coeffs;
use rs_coeffs::{RS_CHEB, RS_CHEB_LEN};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

// B_{2k} for k = 1..=15
const BERNOULLI_2K: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// Euler-Maclaurin evaluation of zeta(s), absolute error <= tol.
pub fn zeta_em(s: Complex64, tol: f64) -> Result<Complex64> {
    assert!(tol > 0.0);
    if (s - 1.0).norm() < 1e-12 {
        return Err(ZmlError::Domain {
            what: "zeta_em",
            detail: "pole at s = 1".into(),
        });
    }
    if s.re < -1.0 {
        return Err(ZmlError::Domain {
            what: "zeta_em",
            detail: format!("Re s = {} < -1 outside the supported strip", s.re),
        });
    }
    let mut n = ((0.55 * s.im.abs() + 12.0).ceil() as usize).max(24);
    for _ in 0..8 {
        if let Some(v) = zeta_em_attempt(s, n, tol) {
            return Ok(v);
        }
        n *= 2;
        if n > (1 << 22) {
            break;
        }
    }
    Err(ZmlError::Precision {
        what: "zeta_em",
        reached: f64::NAN,
        wanted: tol,
    })
}

fn zeta_em_attempt(s: Complex64, n: usize, tol: f64) -> Option<Complex64> {
    let nf = n as f64;
    let mut re = Neumaier::new();
    let mut im = Neumaier::new();
    for k in 1..n {
        let term = (-s * (k as f64).ln()).exp();
        re.add(term.re);
        im.add(term.im);
    }
    let n_pow_ms = (-s * nf.ln()).exp(); // N^{-s}
    let mut sum = Complex64::new(re.value(), im.value());
    sum += n_pow_ms * nf / (s - 1.0); // N^{1-s}/(s-1)
    sum += 0.5 * n_pow_ms;

    // correction terms B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1}
    let mut poch = s; // (s)_1
    let mut fact = 2.0f64; // (2k)!
    let mut npow = n_pow_ms / nf; // N^{-s-1}
    let mut prev_mag = f64::INFINITY;
    for (k, &b2k) in BERNOULLI_2K.iter().enumerate() {
        let k1 = k + 1;
        let term = b2k / fact * poch * npow;
        let mag = term.norm();
        if mag > prev_mag {
            // series turned asymptotic-divergent before reaching tol
            return None;
        }
        sum += term;
        // remainder bound in the classical |s+2k+1|/(sigma+2k+1) form
        let fac = (s + (2 * k1 + 1) as f64).norm() / (s.re + (2 * k1 + 1) as f64);
        if mag * fac.max(1.0) <= 0.5 * tol {
            return Some(sum);
        }
        prev_mag = mag;
        poch *= (s + (2 * k1 - 1) as f64) * (s + (2 * k1) as f64);
        fact *= ((2 * k1 + 1) * (2 * k1 + 2)) as f64;
        npow /= nf * nf;
    }
    None
}

// test hook: fixed-N evaluation (full correction ladder, stop at the smallest
// term) so an independent doubled-N oracle can be built
#[doc(hidden)]
pub fn zeta_em_fixed_n(s: Complex64, n: usize) -> Complex64 {
    let nf = n as f64;
    let mut re = Neumaier::new();
    let mut im = Neumaier::new();
    for k in 1..n {
        let term = (-s * (k as f64).ln()).exp();
        re.add(term.re);
        im.add(term.im);
    }
    let n_pow_ms = (-s * nf.ln()).exp();
    let mut sum = Complex64::new(re.value(), im.value());
    sum += n_pow_ms * nf / (s - 1.0);
    sum += 0.5 * n_pow_ms;
    let mut poch = s;
    let mut fact = 2.0f64;
    let mut npow = n_pow_ms / nf;
    let mut prev_mag = f64::INFINITY;
    for (k, &b2k) in BERNOULLI_2K.iter().enumerate() {
        let k1 = k + 1;
        let term = b2k / fact * poch * npow;
        if term.norm() > prev_mag {
            break;
        }
        sum += term;
        prev_mag = term.norm();
        poch *= (s + (2 * k1 - 1) as f64) * (s + (2 * k1) as f64);
        fact *= ((2 * k1 + 1) * (2 * k1 + 2)) as f64;
        npow /= nf * nf;
    }
    sum
}

/// Riemann-Siegel theta, by the standard asymptotic series (5 corrections).
pub fn rs_theta(t: f64) -> f64 {
    let u = t / TWO_PI;
    let t2 = t * t;
    0.5 * t * u.ln() - 0.5 * t - std::f64::consts::FRAC_PI_8
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t * t2)
        + 31.0 / (80640.0 * t * t2 * t2)
        + 127.0 / (430080.0 * t * t2 * t2 * t2)
        + 511.0 / (1216512.0 * t * t2 * t2 * t2 * t2)
}

/// Measured constants of the error model |err| <= RS_ERR_MODEL[m] t^{-(2m+3)/4}
/// (max over a random height grid against the Euler-Maclaurin oracle, x1.5).
pub const RS_ERR_MODEL: [f64; 5] = [0.179, 0.084, 0.022, 0.046, 0.020];

/// Absolute accuracy the hybrid `zeta_rs` always certifies.
pub const RS_FLOOR: f64 = 1e-8;

/// Certified absolute error of the pure RS expansion at height t with
/// correction terms C_0..C_m.
pub fn rs_certified_err(t: f64, terms: usize) -> f64 {
    RS_ERR_MODEL[terms] * t.powf(-((2 * terms + 3) as f64) / 4.0)
}

/// Height above which the pure RS expansion with C_0..C_m is certified to
/// RS_FLOOR; below it `zeta_rs` delegates to Euler-Maclaurin.
pub fn rs_switch_height(terms: usize) -> f64 {
    (RS_ERR_MODEL[terms] / RS_FLOOR).powf(4.0 / (2 * terms + 3) as f64)
}

/// Number of main-sum terms the RS formula uses at height t.
pub fn rs_main_terms(t: f64) -> usize {
    (t / TWO_PI).sqrt().floor() as usize
}

fn cheb_eval(coeffs: &[f64; RS_CHEB_LEN], p: f64) -> f64 {
    let x = 2.0 * p - 1.0;
    let (mut b0, mut b1) = (0.0, 0.0);
    for &c in coeffs.iter().rev() {
        let t = 2.0 * x * b0 - b1 + c;
        b1 = b0;
        b0 = t;
    }
    b0 - x * b1
}

/// Pure Riemann-Siegel evaluation (no delegation); terms = m includes C_0..C_m.
pub fn zeta_rs_raw(t: f64, terms: usize) -> Complex64 {
    let a = (t / TWO_PI).sqrt();
    let n = a.floor() as usize;
    let p = a - n as f64;
    let theta = rs_theta(t);
    let mut main = Neumaier::new();
    for k in 1..=n {
        let kf = k as f64;
        main.add((theta - t * kf.ln()).cos() / kf.sqrt());
    }
    let mut corr = 0.0;
    let mut apow = 1.0;
    for coeffs in RS_CHEB.iter().take(terms + 1) {
        corr += cheb_eval(coeffs, p) * apow;
        apow /= a;
    }
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^{N+1}
    let z = 2.0 * main.value() + sign * corr / a.sqrt();
    // zeta(1/2 + it) = Z(t) e^{-i theta(t)}
    z * Complex64::new(0.0, -theta).exp()
}

/// zeta(1/2 + it) by the Riemann-Siegel formula, certified to RS_FLOOR.
pub fn zeta_rs(t: f64, terms: usize) -> Result<Complex64> {
    if t < 10.0 {
        return Err(ZmlError::Domain {
            what: "zeta_rs",
            detail: format!("t = {t} < 10; use zeta_em there"),
        });
    }
    if terms > 4 {
        return Err(ZmlError::Domain {
            what: "zeta_rs",
            detail: format!("terms = {terms} > 4"),
        });
    }
    if rs_certified_err(t, terms) > RS_FLOOR {
        return zeta_em(Complex64::new(0.5, t), RS_FLOOR);
    }
    Ok(zeta_rs_raw(t, terms))
}

/// Best-effort zeta(1/2 + it) with its absolute error bound; the workhorse
/// for integrands.  Negative t uses conjugate symmetry.
pub fn zeta_half(t: f64) -> Result<(Complex64, f64)> {
    let ta = t.abs();
    let (z, err) = if ta >= rs_switch_height(4) {
        (zeta_rs_raw(ta, 4), rs_certified_err(ta, 4))
    } else {
        (zeta_em(Complex64::new(0.5, ta), 1e-9)?, 1e-9)
    };
    Ok((if t < 0.0 { z.conj() } else { z }, err))
}

/// One cached point (x, |zeta(1/2+ix)|^4).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalSample {
    pub x: f64,
    pub z4: f64,
    pub err: f64,
}

impl CriticalSample {
    pub fn validate(&self) -> Result<()> {
        if !(self.x >= 0.0 && self.x.is_finite()) {
            return Err(ZmlError::Domain {
                what: "CriticalSample",
                detail: format!("x = {} invalid", self.x),
            });
        }
        if !(self.z4 >= 0.0) {
            return Err(ZmlError::Domain {
                what: "CriticalSample",
                detail: format!("z4 = {} negative", self.z4),
            });
        }
        if !(self.err >= 0.0 && self.err <= 1e-6 * self.z4.max(1.0)) {
            return Err(ZmlError::Domain {
                what: "CriticalSample",
                detail: format!("err = {} outside [0, 1e-6 max(1, z4)]", self.err),
            });
        }
        Ok(())
    }
}

/// Ordered store of critical-line samples keyed by x.  Reads are concurrent;
/// writes go through a single lock, and a reader never sees a half-written
/// sample (whole-value insertion under the lock).
#[derive(Debug, Default)]
pub struct EvalCache {
    map: RwLock<BTreeMap<u64, CriticalSample>>,
    /// Declared grid step of a structured scan; 0 for unstructured stores.
    pub resolution: f64,
}

impl EvalCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_resolution(resolution: f64) -> Self {
        Self {
            map: RwLock::new(BTreeMap::new()),
            resolution,
        }
    }

    pub fn get(&self, x: f64) -> Option<CriticalSample> {
        self.map.read().unwrap().get(&x.to_bits()).copied()
    }

    pub fn insert(&self, s: CriticalSample) -> Result<()> {
        s.validate()?;
        self.map.write().unwrap().insert(s.x.to_bits(), s);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Covered range [x_lo, x_hi], if any samples are stored.
    pub fn range(&self) -> Option<(f64, f64)> {
        let m = self.map.read().unwrap();
        let lo = m.keys().next()?;
        let hi = m.keys().next_back()?;
        Some((f64::from_bits(*lo), f64::from_bits(*hi)))
    }

    /// Write `x,z4,err` rows sorted by x with 17 significant digits.
    pub fn save_csv(&self, path: &Path) -> Result<()> {
        let io_err = |e: std::io::Error| ZmlError::Io {
            path: path.display().to_string(),
            detail: e.to_string(),
        };
        let f = std::fs::File::create(path).map_err(io_err)?;
        let mut w = BufWriter::new(f);
        writeln!(w, "x,z4,err").map_err(io_err)?;
        for s in self.map.read().unwrap().values() {
            writeln!(w, "{:.16e},{:.16e},{:.16e}", s.x, s.z4, s.err).map_err(io_err)?;
        }
        w.flush().map_err(io_err)
    }

    pub fn load_csv(path: &Path) -> Result<Self> {
        let io_err = |e: std::io::Error| ZmlError::Io {
            path: path.display().to_string(),
            detail: e.to_string(),
        };
        let f = std::fs::File::open(path).map_err(io_err)?;
        let cache = Self::new();
        let mut last_x = f64::NEG_INFINITY;
        for (i, line) in std::io::BufReader::new(f).lines().enumerate() {
            let line = line.map_err(io_err)?;
            if i == 0 {
                if line.trim() != "x,z4,err" {
                    return Err(ZmlError::Io {
                        path: path.display().to_string(),
                        detail: format!("bad header {line:?}"),
                    });
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split(',');
            let parse = |p: Option<&str>| -> Result<f64> {
                p.and_then(|v| v.trim().parse::<f64>().ok())
                    .ok_or_else(|| ZmlError::Io {
                        path: path.display().to_string(),
                        detail: format!("bad row {line:?}"),
                    })
            };
            let x = parse(parts.next())?;
            let z4 = parse(parts.next())?;
            let err = parse(parts.next())?;
            if x <= last_x {
                return Err(ZmlError::Io {
                    path: path.display().to_string(),
                    detail: format!("rows not strictly increasing at x = {x}"),
                });
            }
            last_x = x;
            cache.insert(CriticalSample { x, z4, err })?;
        }
        Ok(cache)
    }
}

/// |zeta(1/2+ix)|^4 with its absolute error bound, no cache involved.
pub fn zeta4_point(x: f64) -> Result<(f64, f64)> {
    let (z, zerr) = zeta_half(x)?;
    let m = z.norm();
    Ok((m.powi(4), 4.0 * m.powi(3).max(1e-12) * zerr))
}

/// Cached |zeta(1/2+ix)|^4 for x >= 1: served from the cache when a valid
/// sample is present, otherwise computed and inserted.
pub fn zeta4(x: f64, cache: &EvalCache) -> Result<f64> {
    if x < 1.0 {
        return Err(ZmlError::Domain {
            what: "zeta4",
            detail: format!("x = {x} < 1"),
        });
    }
    if let Some(s) = cache.get(x) {
        if s.err <= 1e-6 * s.z4.max(1.0) {
            return Ok(s.z4);
        }
    }
    let (z4, err) = zeta4_point(x)?;
    cache.insert(CriticalSample { x, z4, err })?;
    Ok(z4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::lgamma_complex;

    #[test]
    fn zeta_two_classical() {
        let v = zeta_em(Complex64::new(2.0, 0.0), 1e-13).unwrap();
        let exact = std::f64::consts::PI.powi(2) / 6.0;
        assert!((v.re - exact).abs() < 1e-13 && v.im.abs() < 1e-15);
        assert!((v.re - 1.644_934_066_8).abs() < 1e-9);
    }

    #[test]
    fn zeta_half_against_doubled_oracle() {
        // independent oracle: fixed-N Euler-Maclaurin with doubled term count
        let s = Complex64::new(0.5, 0.0);
        let v = zeta_em(s, 1e-12).unwrap();
        let oracle = zeta_em_fixed_n(s, 400);
        let oracle2 = zeta_em_fixed_n(s, 800);
        assert!((oracle - oracle2).norm() < 1e-13);
        assert!((v - oracle).norm() < 1e-12);
        assert!((v.re - (-1.460_354_508_809_586_8)).abs() < 1e-12);
    }

    #[test]
    fn zeta_conjugate_reflection() {
        let s = Complex64::new(0.75, 10.0);
        let v = zeta_em(s, 1e-12).unwrap();
        let vc = zeta_em(s.conj(), 1e-12).unwrap();
        assert!((vc - v.conj()).norm() < 2e-12);
    }

    #[test]
    fn theta_matches_lgamma_identity() {
        // theta(t) = Im ln Gamma(1/4 + it/2) - (t/2) ln pi
        for &t in &[10.0, 14.1347, 100.0, 1234.5, 9876.0] {
            let lg = lgamma_complex(Complex64::new(0.25, t / 2.0)).unwrap();
            let exact = lg.im - 0.5 * t * std::f64::consts::PI.ln();
            assert!(
                (rs_theta(t) - exact).abs() < 1e-10 * (1.0 + exact.abs()),
                "theta mismatch at t = {t}: {} vs {exact}",
                rs_theta(t)
            );
        }
    }

    #[test]
    fn rs_vs_em_spot_checks() {
        // delegation region: certified floor applies trivially
        let t = 100.0;
        let rs = zeta_rs(t, 3).unwrap();
        let em = zeta_em(Complex64::new(0.5, t), 1e-10).unwrap();
        assert!((rs - em).norm() <= 1e-8, "err {}", (rs - em).norm());
        // pure RS region
        for &t in &[1500.0, 3000.0, 4900.0] {
            let raw = zeta_rs_raw(t, 3);
            let em = zeta_em(Complex64::new(0.5, t), 1e-11).unwrap();
            assert!(
                (raw - em).norm() <= rs_certified_err(t, 3),
                "raw RS outside model at t = {t}: {} vs {}",
                (raw - em).norm(),
                rs_certified_err(t, 3)
            );
        }
    }

    #[test]
    fn rs_oracle_agreement_sample() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_25);
        for _ in 0..60 {
            let t: f64 = rng.gen_range(10.0..5000.0);
            let rs = zeta_rs(t, 3).unwrap();
            let em = zeta_em(Complex64::new(0.5, t), 1e-10).unwrap();
            assert!((rs - em).norm() <= 1e-6, "t = {t}: {}", (rs - em).norm());
        }
    }

    #[test]
    fn first_zero_sign_change() {
        // rotated real value Z(t) flips sign across the first zero
        let z = |t: f64| {
            let v = zeta_em(Complex64::new(0.5, t), 1e-12).unwrap();
            (v * Complex64::new(0.0, rs_theta(t)).exp()).re
        };
        let (mut lo, mut hi) = (14.0, 14.2);
        assert!(z(lo) * z(hi) < 0.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if z(lo) * z(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        assert!((root - 14.134_725).abs() < 1e-4);
        // |zeta|^4 at the bisected root is numerically zero
        let (z4, _) = zeta4_point(root).unwrap();
        assert!(z4 <= 1e-10, "z4 at root = {z4}");
    }

    #[test]
    fn conjugate_modulus_symmetry() {
        let (zp, _) = zeta_half(50.0).unwrap();
        let (zm, _) = zeta_half(-50.0).unwrap();
        assert_eq!(zp.norm(), zm.norm());
    }

    #[test]
    fn zeta4_matches_em_oracle() {
        let cache = EvalCache::new();
        let v = zeta4(30.0, &cache).unwrap();
        let em = zeta_em(Complex64::new(0.5, 30.0), 1e-12).unwrap();
        let oracle = em.norm().powi(4);
        assert!((v - oracle).abs() <= 1e-8 * oracle.max(1.0));
    }

    #[test]
    fn zeta4_nonnegative_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_44);
        let cache = EvalCache::new();
        for _ in 0..1000 {
            let x: f64 = rng.gen_range(1.0..1e4);
            assert!(zeta4(x, &cache).unwrap() >= 0.0);
        }
    }

    #[test]
    fn cache_transparency() {
        let warm = EvalCache::new();
        let x = 123.456;
        let a = zeta4(x, &warm).unwrap();
        let b = zeta4(x, &warm).unwrap(); // second call served from cache
        let err = warm.get(x).unwrap().err;
        assert!((a - b).abs() <= err);
        assert_eq!(warm.len(), 1);
    }

    #[test]
    fn cache_csv_round_trip() {
        let cache = EvalCache::new();
        for &x in &[1.5, 20.0, 300.75] {
            let (z4, err) = zeta4_point(x).unwrap();
            cache.insert(CriticalSample { x, z4, err }).unwrap();
        }
        let dir = std::env::temp_dir().join(format!("zml-cache-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("roundtrip.csv");
        cache.save_csv(&path).unwrap();
        let loaded = EvalCache::load_csv(&path).unwrap();
        assert_eq!(loaded.len(), 3);
        for &x in &[1.5, 20.0, 300.75] {
            assert_eq!(loaded.get(x).unwrap().z4, cache.get(x).unwrap().z4);
        }
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn cache_rejects_bad_samples() {
        let cache = EvalCache::new();
        assert!(cache
            .insert(CriticalSample {
                x: 2.0,
                z4: -1.0,
                err: 0.0
            })
            .is_err());
        assert!(cache
            .insert(CriticalSample {
                x: 2.0,
                z4: 1.0,
                err: 0.1
            })
            .is_err());
    }

    #[test]
    fn main_sum_cost_grows_like_sqrt_t() {
        let c2 = rs_main_terms(1e2) as f64;
        let c4 = rs_main_terms(1e4) as f64;
        let c6 = rs_main_terms(1e6) as f64;
        // sqrt cost means ~x10 per two decades; wide band, floor effects at small t
        assert!(c4 / c2 > 6.0 && c4 / c2 < 14.0);
        assert!(c6 / c4 > 8.0 && c6 / c4 < 12.0);
    }

    #[test]
    fn em_error_paths() {
        assert!(zeta_em(Complex64::new(1.0, 0.0), 1e-10).is_err());
        assert!(zeta_em(Complex64::new(-2.0, 3.0), 1e-10).is_err());
        assert!(zeta_rs(5.0, 3).is_err());
        assert!(zeta_rs(100.0, 7).is_err());
    }
}
