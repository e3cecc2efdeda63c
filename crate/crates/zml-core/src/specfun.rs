//! Complex special functions: log-Gamma/Gamma and the Gauss hypergeometric
//! function, including its quadratic transformation.
//!
//! Gamma is computed by the Stirling series after shifting the argument to
//! |z| >= 12 (reflection below Re z = 1/2), which stays uniformly accurate
//! for large imaginary parts.  The log is returned modulo 2*pi*i; every use
//! in this crate either exponentiates or combines logs before exponentiating,
//! so the branch is immaterial.

use crate::error::{Result, ZmlError};
use num_complex::Complex64;

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_74; // ln(2*pi)/2

// B_{2n} / (2n (2n-1)) for the Stirling series
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

fn is_nonpositive_integer(z: Complex64, tol: f64) -> bool {
    z.im.abs() <= tol && z.re <= 0.5 && (z.re - z.re.round()).abs() <= tol && z.re.round() <= 0.0
}

fn stirling_lgamma(z: Complex64) -> Complex64 {
    let lnz = z.ln();
    let mut s = (z - 0.5) * lnz - z + LN_2PI_HALF;
    let z2 = z * z;
    let mut zp = z;
    for &c in STIRLING.iter() {
        s += c / zp;
        zp *= z2;
    }
    s
}

/// log sin(pi z), stable for large |Im z|; branch is modulo 2*pi*i.
fn log_sin_pi(z: Complex64) -> Complex64 {
    if z.im >= 0.0 {
        // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}), |e^{2 i pi z}| <= 1
        let e = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * z).exp();
        Complex64::new(0.0, 1.0).ln() - std::f64::consts::LN_2
            + Complex64::new(0.0, -std::f64::consts::PI) * z
            + (Complex64::new(1.0, 0.0) - e).ln()
    } else {
        log_sin_pi(z.conj()).conj()
    }
}

/// log Gamma(z) modulo 2*pi*i.
pub fn lgamma_complex(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z, 1e-12) {
        return Err(ZmlError::PoleOfGamma { re: z.re, im: z.im });
    }
    if z.re < 0.5 {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let rest = lgamma_complex(Complex64::new(1.0, 0.0) - z)?;
        return Ok(std::f64::consts::PI.ln() - log_sin_pi(z) - rest);
    }
    if z.norm() >= 12.0 {
        return Ok(stirling_lgamma(z));
    }
    // shift up until Stirling applies
    let shift = (13.0 - z.re).ceil().max(1.0) as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..shift {
        acc += (z + j as f64).ln();
    }
    Ok(stirling_lgamma(z + shift as f64) - acc)
}

/// Gamma(z); errors at the poles.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    Ok(lgamma_complex(z)?.exp())
}

/// Parameters of a Gauss hypergeometric evaluation.
#[derive(Debug, Clone, Copy)]
pub struct HypArgs {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub z: Complex64,
}

impl HypArgs {
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64, z: Complex64) -> Result<Self> {
        if is_nonpositive_integer(gamma, 1e-12) {
            return Err(ZmlError::Domain {
                what: "hyp2f1",
                detail: format!("gamma = {gamma} is zero or a negative integer"),
            });
        }
        if z.norm() >= 1.0 {
            return Err(ZmlError::Domain {
                what: "hyp2f1",
                detail: format!("|z| = {} >= 1 outside the series disc", z.norm()),
            });
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            z,
        })
    }
}

/// Series cap; past this the evaluation is considered misused, not slow.
pub const HYP_SERIES_CAP: usize = 100_000;

/// F(alpha, beta; gamma; z) for |z| < 1.
///
/// For z well left of the origin the raw series alternates with a large
/// intermediate hump (catastrophic cancellation for big |alpha|), so the
/// Pfaff map w = z/(z-1) is applied first:
/// F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; w), with w in the right half-disc.
pub fn hyp2f1(args: HypArgs, tol: f64) -> Result<Complex64> {
    assert!(tol > 0.0);
    let HypArgs {
        alpha,
        beta,
        gamma,
        z,
    } = args;
    if z.re < -0.25 {
        let w = z / (z - 1.0);
        let pulled = HypArgs {
            alpha,
            beta: gamma - beta,
            gamma,
            z: w,
        };
        let prefactor = (-alpha * (Complex64::new(1.0, 0.0) - z).ln()).exp();
        return Ok(prefactor * gauss_series(pulled, tol)?);
    }
    gauss_series(args, tol)
}

fn gauss_series(args: HypArgs, tol: f64) -> Result<Complex64> {
    let HypArgs {
        alpha,
        beta,
        gamma,
        z,
    } = args;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut below = 0u32;
    for k in 0..HYP_SERIES_CAP {
        let kf = k as f64;
        term *= (alpha + kf) * (beta + kf) / ((gamma + kf) * (kf + 1.0)) * z;
        sum += term;
        // require two consecutive sub-tolerance terms: adjacent terms can dip
        // near zero while the series is still live
        if term.norm() <= 0.25 * tol * sum.norm().max(1.0) {
            below += 1;
            if below >= 2 {
                return Ok(sum);
            }
        } else {
            below = 0;
        }
    }
    Err(ZmlError::NonConvergence {
        what: "hyp2f1 series",
        cap: HYP_SERIES_CAP,
    })
}

/// Right-hand side of the quadratic transformation for F(a, a; 2a; z):
/// ((1+sqrt(1-z))/2)^(-2a) * F(a, 1/2; a+1/2; ((1-sqrt(1-z))/(1+sqrt(1-z)))^2).
///
/// `z` must satisfy z < 1; the intended regime is z <= 0, where sqrt(1-z) is
/// real and >= 1 so the inner argument lies in [0, 1) and no branch question
/// arises.
pub fn hyp2f1_quadratic(alpha: Complex64, z: f64, tol: f64) -> Result<Complex64> {
    if z >= 1.0 {
        return Err(ZmlError::Domain {
            what: "hyp2f1_quadratic",
            detail: format!("z = {z} >= 1"),
        });
    }
    let u = (1.0 - z).sqrt();
    debug_assert!(u >= 1.0 || z > 0.0);
    let m = ((1.0 - u) / (1.0 + u)).powi(2);
    let prefactor = (-2.0 * alpha * ((1.0 + u) / 2.0).ln()).exp();
    let inner = hyp2f1_inner(alpha, m, tol)?;
    Ok(prefactor * inner)
}

// F(a, 1/2; a + 1/2; m) for real m in [0, 1)
fn hyp2f1_inner(alpha: Complex64, m: f64, tol: f64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut below = 0u32;
    for k in 0..HYP_SERIES_CAP {
        let kf = k as f64;
        term *= (alpha + kf) * (0.5 + kf) / ((alpha + 0.5 + kf) * (kf + 1.0)) * m;
        sum += term;
        if term.norm() <= 0.25 * tol * sum.norm().max(1.0) {
            below += 1;
            if below >= 2 {
                return Ok(sum);
            }
        } else {
            below = 0;
        }
    }
    Err(ZmlError::NonConvergence {
        what: "hyp2f1_quadratic inner series",
        cap: HYP_SERIES_CAP,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_classical_values() {
        let g1 = gamma_complex(c(1.0, 0.0)).unwrap();
        assert!((g1 - 1.0).norm() < 1e-14);
        let gh = gamma_complex(c(0.5, 0.0)).unwrap();
        assert!((gh.re - std::f64::consts::PI.sqrt()).abs() < 1e-14);
        assert!(gh.im.abs() < 1e-14);
    }

    #[test]
    fn gamma_half_plus_i_squared_modulus() {
        // |Gamma(1/2 + i)|^2 = pi / cosh(pi), via the reflection formula
        let g = gamma_complex(c(0.5, 1.0)).unwrap();
        let expect = std::f64::consts::PI / std::f64::consts::PI.cosh();
        assert!(((g.norm_sqr()) - expect).abs() < 1e-12 * expect);
        // coarse spot value ~ 0.27101
        assert!((g.norm_sqr() - 0.271_01).abs() < 1e-5);
    }

    #[test]
    fn gamma_recurrence_grid() {
        // Gamma(z+1) = z Gamma(z) across a grid avoiding poles
        for &re in &[-3.3, -0.7, 0.3, 1.9, 7.4, 11.2] {
            for &im in &[-40.0, -2.0, 0.5, 13.0, 900.0, 9900.0] {
                let z = c(re, im);
                let lhs = gamma_complex(z + 1.0).unwrap();
                let rhs = z * gamma_complex(z).unwrap();
                assert!(
                    (lhs - rhs).norm() <= 1e-12 * rhs.norm(),
                    "recurrence fails at {z}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn gamma_pole_detection() {
        assert!(gamma_complex(c(0.0, 0.0)).is_err());
        assert!(gamma_complex(c(-3.0, 0.0)).is_err());
        assert!(gamma_complex(c(-3.0, 0.1)).is_ok());
    }

    #[test]
    fn hyp_at_zero_is_one() {
        for &(a, b, g) in &[(0.5, -3.0, 1.0), (2.0, 2.0, 4.0), (-1.5, 0.25, 0.75)] {
            let args = HypArgs::new(c(a, 0.3), c(b, -0.2), c(g, 0.0), c(0.0, 0.0)).unwrap();
            let f = hyp2f1(args, 1e-14).unwrap();
            assert_eq!(f, c(1.0, 0.0));
        }
    }

    #[test]
    fn hyp_log_value() {
        // F(1,1;2;z) = -ln(1-z)/z; at z = 0.5 this is 2 ln 2
        // oracle: brute-force partial sum, 1e4 terms, compensated
        let mut acc = crate::quadrature::Neumaier::new();
        let mut term = 1.0f64;
        for k in 0..10_000 {
            acc.add(term);
            let kf = k as f64;
            term *= (1.0 + kf) * (1.0 + kf) / ((2.0 + kf) * (1.0 + kf)) * 0.5;
        }
        let oracle = acc.value();
        assert!((oracle - 1.386_294_361_119_890_6).abs() < 1e-13);
        let args = HypArgs::new(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.5, 0.0)).unwrap();
        let f = hyp2f1(args, 1e-14).unwrap();
        assert!((f.re - oracle).abs() < 1e-12 && f.im.abs() < 1e-14);
    }

    #[test]
    fn quadratic_transform_trivial_and_series_match() {
        // z = 0: prefactor 1, inner F of 0
        let v = hyp2f1_quadratic(c(0.5, -2.0), 0.0, 1e-14).unwrap();
        assert!((v - 1.0).norm() < 1e-14);

        // alpha = 1/2, z = -0.5: matches the direct series
        let alpha = c(0.5, 0.0);
        let direct = hyp2f1(
            HypArgs::new(alpha, alpha, 2.0 * alpha, c(-0.5, 0.0)).unwrap(),
            1e-14,
        )
        .unwrap();
        let trans = hyp2f1_quadratic(alpha, -0.5, 1e-14).unwrap();
        assert!((direct - trans).norm() < 1e-12);
    }

    #[test]
    fn quadratic_transform_paper_regime_point() {
        // alpha = 1/2 - 3i, z = -0.1
        let alpha = c(0.5, -3.0);
        let direct = hyp2f1(
            HypArgs::new(alpha, alpha, 2.0 * alpha, c(-0.1, 0.0)).unwrap(),
            1e-14,
        )
        .unwrap();
        let trans = hyp2f1_quadratic(alpha, -0.1, 1e-14).unwrap();
        assert!((direct - trans).norm() <= 1e-10, "{direct} vs {trans}");
    }

    #[test]
    fn quadratic_transform_random_sweep() {
        // 200 random (r, z), r in [0.5, 50], z in (-0.9, 0]
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_2f1);
        for _ in 0..200 {
            let r: f64 = rng.gen_range(0.5..50.0);
            let z: f64 = -rng.gen_range(0.0..0.9);
            let alpha = c(0.5, -r);
            let direct = hyp2f1(
                HypArgs::new(alpha, alpha, 2.0 * alpha, c(z, 0.0)).unwrap(),
                1e-13,
            )
            .unwrap();
            let trans = hyp2f1_quadratic(alpha, z, 1e-13).unwrap();
            assert!(
                (direct - trans).norm() <= 1e-9,
                "r={r} z={z}: {direct} vs {trans}"
            );
        }
    }

    #[test]
    fn conjugation_symmetry() {
        let args = HypArgs::new(c(0.5, -4.0), c(0.5, -4.0), c(1.0, -8.0), c(-0.4, 0.2)).unwrap();
        let f = hyp2f1(args, 1e-14).unwrap();
        let conj_args = HypArgs::new(
            args.alpha.conj(),
            args.beta.conj(),
            args.gamma.conj(),
            args.z.conj(),
        )
        .unwrap();
        let fc = hyp2f1(conj_args, 1e-14).unwrap();
        assert!((fc - f.conj()).norm() < 1e-12 * f.norm().max(1.0));
    }

    #[test]
    fn domain_errors() {
        assert!(HypArgs::new(c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0), c(0.1, 0.0)).is_err());
        assert!(HypArgs::new(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(1.1, 0.0)).is_err());
        assert!(hyp2f1_quadratic(c(0.5, 0.0), 1.5, 1e-12).is_err());
    }
}
