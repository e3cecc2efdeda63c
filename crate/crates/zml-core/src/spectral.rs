//! The Gaussian-smoothed fourth moment and its spectral side: the smoothed
//! moment psi(T), the oscillatory kernels Xi and Lambda, the discrete sum
//! over eigenvalue data, the continuous integral, and the residual check
//! that ties them together.
//!
//! Kernel integrals run in log(y); the y -> 0 endpoint (a pure power
//! oscillation y^{-1/2 +- ir}) is integrated by parts analytically, so the
//! cost does not blow up with the spectral parameter r.

use crate::error::{Result, ZmlError};
use crate::quadrature::{comp_sum, gl_rule, march_panels};
use crate::specfun::{hyp2f1_quadratic, lgamma_complex};
use crate::zetacore::{zeta4_point, zeta_em, zeta_half, EvalCache};
use num_complex::Complex64;
use rayon::prelude::*;
use std::io::BufRead;
use std::path::Path;

/// One spectral datum: eigenvalue parameter kappa and the weight it carries
/// in the discrete sum (the product alpha_j H_j^3(1/2)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralDatum {
    pub kappa: f64,
    pub weight: f64,
}

/// Validated, kappa-ascending spectral dataset.
#[derive(Debug, Clone, Default)]
pub struct SpectralDataset {
    data: Vec<SpectralDatum>,
}

impl SpectralDataset {
    pub fn from_vec(data: Vec<SpectralDatum>) -> Result<Self> {
        let mut last = 0.0;
        for d in &data {
            if !(d.kappa.is_finite() && d.kappa > last) {
                return Err(ZmlError::SpectralData {
                    detail: format!("kappa sequence not strictly increasing at {}", d.kappa),
                });
            }
            if !(d.weight.is_finite() && d.weight >= 0.0) {
                return Err(ZmlError::SpectralData {
                    detail: format!("weight {} at kappa {} negative or non-finite", d.weight, d.kappa),
                });
            }
            last = d.kappa;
        }
        Ok(Self { data })
    }

    /// CSV with header `kappa,weight`, ascending kappa.
    pub fn load_csv(path: &Path) -> Result<Self> {
        let io_err = |e: std::io::Error| ZmlError::Io {
            path: path.display().to_string(),
            detail: e.to_string(),
        };
        let f = std::fs::File::open(path).map_err(io_err)?;
        let mut rows = Vec::new();
        for (i, line) in std::io::BufReader::new(f).lines().enumerate() {
            let line = line.map_err(io_err)?;
            if i == 0 {
                if line.trim() != "kappa,weight" {
                    return Err(ZmlError::SpectralData {
                        detail: format!("bad header {line:?}"),
                    });
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split(',');
            let mut get = || -> Result<f64> {
                parts
                    .next()
                    .and_then(|v| v.trim().parse::<f64>().ok())
                    .ok_or_else(|| ZmlError::SpectralData {
                        detail: format!("bad row {line:?}"),
                    })
            };
            let kappa = get()?;
            let weight = get()?;
            rows.push(SpectralDatum { kappa, weight });
        }
        Self::from_vec(rows)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn kappa_max(&self) -> Option<f64> {
        self.data.last().map(|d| d.kappa)
    }

    pub fn iter(&self) -> impl Iterator<Item = &SpectralDatum> {
        self.data.iter()
    }
}

/// Parameters (T, xi) of the smoothed moment; the Gaussian width is G = T^xi.
#[derive(Debug, Clone, Copy)]
pub struct SmoothedMomentParams {
    pub t: f64,
    pub xi: f64,
}

impl SmoothedMomentParams {
    pub fn new(t: f64, xi: f64) -> Result<Self> {
        if !(t >= 10.0) {
            return Err(ZmlError::Domain {
                what: "SmoothedMomentParams",
                detail: format!("T = {t} < 10"),
            });
        }
        if !(xi > 0.0 && xi <= 0.5) {
            return Err(ZmlError::Domain {
                what: "SmoothedMomentParams",
                detail: format!("xi = {xi} outside (0, 1/2]"),
            });
        }
        Ok(Self { t, xi })
    }

    pub fn g(&self) -> f64 {
        self.t.powf(self.xi)
    }
}

// Gaussian truncation at 6 sigma: weight below 3e-16 outside.
const GAUSS_CUT: f64 = 6.0;

/// psi(T) = (1/(sqrt(pi) G)) Integral |zeta(1/2 + i(T+t))|^4 exp(-(t/G)^2) dt,
/// truncated at |t| <= 6G.
pub fn psi_direct(p: &SmoothedMomentParams, tol: f64, cache: &EvalCache) -> Result<f64> {
    let g = p.g();
    if p.t - GAUSS_CUT * g < 1.0 {
        return Err(ZmlError::Domain {
            what: "psi_direct",
            detail: format!("window T - 6G = {} leaves the line x >= 1", p.t - GAUSS_CUT * g),
        });
    }
    let f = |x: f64| {
        if x >= 1.0 {
            if let Some(s) = cache.get(x) {
                return s.z4;
            }
        }
        zeta4_point(x).map(|(v, _)| v).unwrap_or(f64::NAN)
    };
    psi_weighted(&f, p, tol)
}

/// Harness-mode psi: same Gaussian smoothing applied to an arbitrary
/// nonnegative integrand (the constant 1 integrates to 1 up to truncation).
pub fn psi_weighted<F>(f: &F, p: &SmoothedMomentParams, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    let g = p.g();
    let inv = 1.0 / (std::f64::consts::PI.sqrt() * g);
    let (a, b) = (p.t - GAUSS_CUT * g, p.t + GAUSS_CUT * g);
    let width = |x: f64| {
        let zeta_w = 0.25 * 2.0 * std::f64::consts::PI
            / (x / (2.0 * std::f64::consts::PI)).max(2.0).ln().max(2.0);
        zeta_w.min(g / 4.0)
    };
    let mut panels = march_panels(a, b, 1e-9, width);
    for _ in 0..20 {
        let evals: Vec<(f64, f64)> = panels
            .par_iter()
            .map(|&(lo, hi)| {
                let rule4 = gl_rule(4);
                let rule8 = gl_rule(8);
                let c = 0.5 * (lo + hi);
                let h = 0.5 * (hi - lo);
                let w = |x: f64| {
                    let u = (x - p.t) / g;
                    f(x) * (-u * u).exp()
                };
                let mut v4 = 0.0;
                for (&x, &wt) in rule4.nodes.iter().zip(&rule4.weights) {
                    v4 += wt * w(c + h * x);
                }
                let mut v8 = 0.0;
                for (&x, &wt) in rule8.nodes.iter().zip(&rule8.weights) {
                    v8 += wt * w(c + h * x);
                }
                (h * v8, (h * (v8 - v4)).abs())
            })
            .collect();
        let err = comp_sum(&evals.iter().map(|e| e.1).collect::<Vec<_>>()) * inv;
        if err <= tol || panels.len() > (1 << 20) {
            let val = comp_sum(&evals.iter().map(|e| e.0).collect::<Vec<_>>()) * inv;
            return Ok(val);
        }
        let share = tol / (inv * panels.len() as f64);
        let mut next = Vec::with_capacity(panels.len() + 8);
        for (&(lo, hi), &(_, e)) in panels.iter().zip(&evals) {
            if e > share && hi - lo > 1e-9 {
                let m = 0.5 * (lo + hi);
                next.push((lo, m));
                next.push((m, hi));
            } else {
                next.push((lo, hi));
            }
        }
        panels = next;
    }
    Err(ZmlError::Precision {
        what: "psi_weighted",
        reached: f64::NAN,
        wanted: tol,
    })
}

// amplitude-and-phase factor of the Xi integrand at y (excluding y^{-1/2+ier});
// eps = +-1 is the sign of the spectral parameter in the kernel
fn xi_amplitude(y: f64, t: f64, g2_quarter: f64, alpha: Complex64, tol: f64) -> Complex64 {
    let l1p = y.ln_1p();
    let gaussian = (-g2_quarter * l1p * l1p).exp();
    if gaussian == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let pow = (Complex64::new(-0.5, t) * l1p).exp(); // (1+y)^{-1/2+iT}
    let f = hyp2f1_quadratic(alpha, -y, tol).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    pow * gaussian * f
}

/// Integral of y^c A(y) dy over [0, y1] by repeated integration by parts:
/// each step gains a factor ~ 1/|c| so no oscillatory quadrature is needed
/// at the endpoint.  A must be smooth on a neighbourhood of (0, y1].
fn endpoint_power_integral<A>(c: Complex64, y1: f64, a_fn: &A, tol: f64) -> Result<Complex64>
where
    A: Fn(f64) -> Complex64,
{
    // derivatives of A at y1 via central differences (Richardson once)
    let h = y1 / 64.0;
    let d = |k: usize| -> Complex64 {
        let stencil = |hh: f64| -> Complex64 {
            match k {
                0 => a_fn(y1),
                1 => (a_fn(y1 + hh) - a_fn(y1 - hh)) / (2.0 * hh),
                2 => (a_fn(y1 + hh) - 2.0 * a_fn(y1) + a_fn(y1 - hh)) / (hh * hh),
                3 => {
                    (a_fn(y1 + 2.0 * hh) - 2.0 * a_fn(y1 + hh) + 2.0 * a_fn(y1 - hh)
                        - a_fn(y1 - 2.0 * hh))
                        / (2.0 * hh * hh * hh)
                }
                _ => {
                    (a_fn(y1 + 2.0 * hh) - 4.0 * a_fn(y1 + hh) + 6.0 * a_fn(y1)
                        - 4.0 * a_fn(y1 - hh)
                        + a_fn(y1 - 2.0 * hh))
                        / (hh * hh * hh * hh)
                }
            }
        };
        let c1 = stencil(h);
        let c2 = stencil(h / 2.0);
        let p = match k {
            0 => return c1,
            1 | 2 => 4.0,
            _ => 4.0,
        };
        (p * c2 - c1) / (p - 1.0)
    };
    // sum_k (-1)^k A^(k)(y1) y1^{c+1+k} / ((c+1)(c+2)...(c+1+k))
    let mut denom = c + 1.0;
    let mut term_pow = (c + 1.0) * y1.ln(); // log of y1^{c+1}
    let mut total = Complex64::new(0.0, 0.0);
    let mut sign = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..=4usize {
        let t_k = sign * d(k) * (term_pow.exp()) / denom;
        total += t_k;
        let mag = t_k.norm();
        if mag <= tol * total.norm().max(1e-300) && k >= 2 {
            return Ok(total);
        }
        if k >= 2 && mag > last {
            // derivative estimates degrading; accept what we have
            return Ok(total);
        }
        last = mag;
        sign = -sign;
        term_pow += y1.ln();
        denom *= c + (k + 2) as f64;
    }
    Ok(total)
}

/// Xi kernel: sign picks the conjugate branch of the spectral parameter.
///
/// Xi(sign ir; T, G) = Gamma^2(1/2+sign ir)/Gamma(1+2 sign ir) *
///   Integral_0^inf (1+y)^{-1/2+iT} y^{-1/2+sign ir}
///     exp(-(1/4) G^2 log^2(1+y)) F(1/2+sign ir, .., 1+2 sign ir; -y) dy.
pub fn xi_kernel(sign: i32, r: f64, p: &SmoothedMomentParams, tol: f64) -> Result<Complex64> {
    if !(sign == 1 || sign == -1) {
        return Err(ZmlError::Domain {
            what: "xi_kernel",
            detail: format!("sign = {sign}"),
        });
    }
    if r < 0.0 {
        return Err(ZmlError::Domain {
            what: "xi_kernel",
            detail: format!("r = {r} < 0"),
        });
    }
    let eps = sign as f64;
    let alpha = Complex64::new(0.5, eps * r);
    let c = Complex64::new(-0.5, eps * r); // power at the endpoint
    let g = p.g();
    let g2q = 0.25 * g * g;
    // Gaussian truncation: exp(-G^2/4 log^2(1+y)) < 1e-18
    let y_cut = (12.87 / g).exp_m1();
    let t = p.t;
    let amp = |y: f64| xi_amplitude(y, t, g2q, alpha, tol * 1e-2);

    // split point: keep T*y1 and r*y1 small enough for the endpoint expansion
    let y1 = (0.5 / t.max(1.0)).min(0.02).min(y_cut / 4.0);
    let head = endpoint_power_integral(c, y1, &amp, tol)?;

    // log-substitution for the oscillatory body
    let (v_lo, v_hi) = (y1.ln(), y_cut.ln());
    let freq = |v: f64| {
        let y = v.exp();
        t * y / (1.0 + y) + r + 1.0
    };
    let panels = march_panels(v_lo, v_hi, 1e-9, |v| 2.5 / freq(v));
    let integrand = |v: f64| {
        let y = v.exp();
        // y^{c} * A(y) * dy = e^{(c+1)v} A(e^v) dv
        ((c + 1.0) * v).exp() * amp(y)
    };
    let (body, body_err) = crate::quadrature::integrate_complex_fixed(&integrand, &panels);

    let lg = 2.0 * lgamma_complex(Complex64::new(0.5, eps * r))?
        - lgamma_complex(Complex64::new(1.0, 2.0 * eps * r))?;
    let prefactor = lg.exp();
    let value = prefactor * (head + body);
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(ZmlError::Precision {
            what: "xi_kernel",
            reached: f64::NAN,
            wanted: tol,
        });
    }
    let _ = body_err;
    Ok(value)
}

/// Lambda(r; T, G) = (1/2) Re{(1 + i/sinh(pi r)) Xi(ir) + (1 - i/sinh(pi r)) Xi(-ir)}.
///
/// Signed r is accepted: Xi(i(-|r|)) is the sign = -1 kernel branch, so
/// negating r exchanges the two summands and flips 1/sinh; the value is even.
pub fn lambda_kernel(r: f64, p: &SmoothedMomentParams, tol: f64) -> Result<f64> {
    if r.abs() <= 1e-3 {
        return Err(ZmlError::Domain {
            what: "lambda_kernel",
            detail: format!("r = {r}: |r| <= 1e-3 (sinh pole region excluded)"),
        });
    }
    let xp = xi_kernel(if r > 0.0 { 1 } else { -1 }, r.abs(), p, tol)?;
    let xm = xi_kernel(if r > 0.0 { -1 } else { 1 }, r.abs(), p, tol)?;
    let inv_sinh = {
        let a = std::f64::consts::PI * r;
        if a.abs() > 700.0 {
            0.0
        } else {
            1.0 / a.sinh()
        }
    };
    let i = Complex64::new(0.0, 1.0);
    let v = (Complex64::new(1.0, 0.0) + i * inv_sinh) * xp
        + (Complex64::new(1.0, 0.0) - i * inv_sinh) * xm;
    Ok(0.5 * v.re)
}

// imaginary residue of the Lambda assembly; the definition takes a real part,
// so this is a pure diagnostic for tests
#[doc(hidden)]
pub fn lambda_kernel_imag_residue(r: f64, p: &SmoothedMomentParams, tol: f64) -> Result<f64> {
    let xp = xi_kernel(1, r, p, tol)?;
    let xm = xi_kernel(-1, r, p, tol)?;
    let inv_sinh = {
        let a = std::f64::consts::PI * r;
        if a > 700.0 {
            0.0
        } else {
            1.0 / a.sinh()
        }
    };
    let i = Complex64::new(0.0, 1.0);
    // the two summands are conjugates of each other's swap under r -> -r;
    // their sum before Re{} should already be essentially real
    let v = (Complex64::new(1.0, 0.0) + i * inv_sinh) * xp
        + (Complex64::new(1.0, 0.0) - i * inv_sinh) * xm;
    Ok(v.im.abs() / v.norm().max(1e-300))
}

/// Discrete spectral sum plus a tail bound for the part beyond the data.
///
/// The tail combines the short-interval average of the data (the observed
/// Lemma-1 window constant) with the measured decay of the kernel past
/// kappa_max.
pub fn i2d(
    p: &SmoothedMomentParams,
    data: &SpectralDataset,
    tol: f64,
) -> Result<(f64, f64)> {
    if data.is_empty() {
        return Ok((0.0, f64::INFINITY));
    }
    let kernel_tol = (tol / data.len() as f64).max(1e-12);
    let terms: Vec<f64> = data
        .data
        .par_iter()
        .map(|d| {
            if d.weight == 0.0 {
                return Ok(0.0);
            }
            Ok(d.weight * lambda_kernel(d.kappa, p, kernel_tol)?)
        })
        .collect::<Result<Vec<f64>>>()?;
    let value = comp_sum(&terms);

    // tail: Lemma-1 style density constant from the data itself ...
    let kmax = data.kappa_max().unwrap();
    let mut c_window = 0.0f64;
    let g_win = (kmax / 8.0).max(1.0);
    let mut k = data.data[0].kappa + g_win;
    while k + g_win <= kmax {
        let s = short_interval_sum(k, g_win, data);
        c_window = c_window.max(s / (g_win * k.powf(1.05)));
        k += 2.0 * g_win;
    }
    let c_l1 = 1.5 * c_window.max(1e-3);
    // ... times the kernel decay envelope past kappa_max, probed pointwise
    let mut tail = 0.0;
    let mut k = kmax;
    let mut lam_prev = f64::INFINITY;
    for _ in 0..40 {
        let g_blk = (k / 8.0).max(1.0);
        let probe = lambda_kernel(k + g_blk, p, 1e-12)?.abs();
        let lam_env = 3.0 * probe.max(1e-300);
        tail += c_l1 * 2.0 * g_blk * (k + 2.0 * g_blk).powf(1.05) * lam_env;
        k += 2.0 * g_blk;
        if lam_env < 1e-16 && lam_prev < 1e-16 {
            break;
        }
        lam_prev = lam_env;
    }
    Ok((value, tail))
}

/// Continuous spectral integral
/// pi^{-1} Integral |zeta(1/2+ir)|^6 / |zeta(1+2ir)|^2 Lambda(r;T,G) dr,
/// two-sided; computed as twice the positive half by evenness, truncated
/// where the kernel envelope has died.
pub fn i2c(p: &SmoothedMomentParams, tol: f64) -> Result<f64> {
    let weight = |r: f64| -> f64 {
        let (z_half, _) = zeta_half(r).unwrap_or((Complex64::new(f64::NAN, 0.0), 0.0));
        let z1 = zeta_em(Complex64::new(1.0, 2.0 * r), 1e-9)
            .unwrap_or(Complex64::new(f64::NAN, 0.0));
        z_half.norm().powi(6) / z1.norm_sqr()
    };
    // walk outward block by block; stop after the contributions die
    let block = 2.0f64;
    let mut total = 0.0;
    let mut r_lo = 1e-3;
    let mut quiet = 0;
    let mut blocks = Vec::new();
    while r_lo < 16.0 * p.t + 200.0 {
        blocks.push((r_lo, r_lo + block));
        r_lo += block;
    }
    let contributions: Vec<f64> = blocks
        .par_iter()
        .map(|&(a, b)| {
            let rule = gl_rule(8);
            let c = 0.5 * (a + b);
            let h = 0.5 * (b - a);
            let mut acc = 0.0;
            for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
                let r = c + h * x;
                let lam = lambda_kernel(r, p, 1e-10).unwrap_or(f64::NAN);
                acc += w * weight(r) * lam;
            }
            h * acc
        })
        .collect();
    for contrib in contributions {
        total += contrib;
        if contrib.abs() < tol / 8.0 {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Ok(2.0 * total / std::f64::consts::PI)
}

/// Report of the decomposition residual psi - I_{2,c} - I_{2,d}, which
/// collects the explicit main term and the (tiny) holomorphic part.
#[derive(Debug, Clone, Copy)]
pub struct ResidualReport {
    pub t: f64,
    pub psi: f64,
    pub i2c: f64,
    pub i2d: f64,
    pub tail_bound: f64,
    pub residual: f64,
}

/// Versioned constant of the residual envelope K log^4 T (reference run).
pub const RESIDUAL_ENVELOPE_K: f64 = 1.0;

pub fn residual_main_term(
    p: &SmoothedMomentParams,
    data: &SpectralDataset,
    cache: &EvalCache,
) -> Result<ResidualReport> {
    let psi = psi_direct(p, 1e-7, cache)?;
    let c = i2c(p, 1e-6)?;
    let (d, tail) = i2d(p, data, 1e-6)?;
    Ok(ResidualReport {
        t: p.t,
        psi,
        i2c: c,
        i2d: d,
        tail_bound: tail,
        residual: psi - c - d,
    })
}

/// Window sum of weights with kappa in [K-G, K+G].
pub fn short_interval_sum(k: f64, g: f64, data: &SpectralDataset) -> f64 {
    let terms: Vec<f64> = data
        .data
        .iter()
        .filter(|d| d.kappa >= k - g && d.kappa <= k + g)
        .map(|d| d.weight)
        .collect();
    comp_sum(&terms)
}

/// Companion report: the ratio sum/(G K^pow) across a K-grid.
pub fn short_interval_ratios(g: f64, pow: f64, data: &SpectralDataset) -> Vec<(f64, f64)> {
    let Some(kmax) = data.kappa_max() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut k = data.data[0].kappa + g;
    while k + g <= kmax {
        let s = short_interval_sum(k, g, data);
        out.push((k, s / (g * k.powf(pow))));
        k += 2.0 * g;
    }
    out
}
