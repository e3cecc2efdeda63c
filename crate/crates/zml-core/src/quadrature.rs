//! Panel-based Gauss-Legendre quadrature with deterministic parallel reduction.
//!
//! All integrators here follow the same recipe: a panel list is laid out
//! sequentially (so the geometry never depends on thread count), panels are
//! evaluated in parallel, and the reduction is a sequential compensated sum
//! over the panel results in panel order.  Identical inputs therefore give
//! bit-identical results for any worker count.

use rayon::prelude::*;
use std::sync::OnceLock;

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of a slice in slice order.
pub fn comp_sum(values: &[f64]) -> f64 {
    let mut acc = Neumaier::new();
    for &v in values {
        acc.add(v);
    }
    acc.value()
}

/// Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GlRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn legendre_newton(n: usize) -> GlRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Tricomi-style initial guess, then Newton on P_n
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    GlRule { nodes, weights }
}

static GL4: OnceLock<GlRule> = OnceLock::new();
static GL8: OnceLock<GlRule> = OnceLock::new();
static GL16: OnceLock<GlRule> = OnceLock::new();
static GL32: OnceLock<GlRule> = OnceLock::new();

/// Shared rule for a supported node count (4, 8, 16, 32).
pub fn gl_rule(n: usize) -> &'static GlRule {
    match n {
        4 => GL4.get_or_init(|| legendre_newton(4)),
        8 => GL8.get_or_init(|| legendre_newton(8)),
        16 => GL16.get_or_init(|| legendre_newton(16)),
        32 => GL32.get_or_init(|| legendre_newton(32)),
        _ => panic!("unsupported Gauss-Legendre order {n}"),
    }
}

/// Integrate `f` over one panel [a, b] with an n-point rule.
pub fn gl_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let rule = gl_rule(n);
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = Neumaier::new();
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        acc.add(w * f(c + h * x));
    }
    h * acc.value()
}

/// March panel boundaries from `a` to `b` with local width `w(x)` (clamped).
pub fn march_panels(a: f64, b: f64, min_w: f64, w: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
    assert!(b >= a);
    let mut edges = Vec::new();
    let mut x = a;
    let span = b - a;
    while x < b {
        let step = w(x).max(min_w).min(span.max(min_w));
        let next = (x + step).min(b);
        edges.push((x, next));
        // guard against zero-width stall at the right edge
        if next <= x {
            break;
        }
        x = next;
    }
    edges
}

/// Result of an adaptive panel integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub err_est: f64,
    pub panels: usize,
}

/// Adaptive real-valued integration over a fixed initial panel layout.
///
/// Each panel is judged by the difference between its 8- and 16-point values;
/// the worst offenders split until the summed estimate meets `tol` or the
/// panel budget runs out.
pub fn integrate_adaptive<F>(f: &F, panels: Vec<(f64, f64)>, tol: f64, max_panels: usize) -> QuadResult
where
    F: Fn(f64) -> f64 + Sync,
{
    let mut work = panels;
    let mut passes = 0usize;
    loop {
        let evals: Vec<(f64, f64)> = work
            .par_iter()
            .map(|&(a, b)| {
                let lo = gl_panel(f, a, b, 8);
                let hi = gl_panel(f, a, b, 16);
                (hi, (hi - lo).abs())
            })
            .collect();
        let total_err = comp_sum(&evals.iter().map(|e| e.1).collect::<Vec<_>>());
        passes += 1;
        if total_err <= tol || work.len() >= max_panels || passes > 24 {
            let value = comp_sum(&evals.iter().map(|e| e.0).collect::<Vec<_>>());
            return QuadResult {
                value,
                err_est: total_err,
                panels: work.len(),
            };
        }
        // split every panel whose error exceeds its fair share
        let share = tol / work.len() as f64;
        let mut next = Vec::with_capacity(work.len() * 2);
        for (&(a, b), &(_, e)) in work.iter().zip(&evals) {
            if e > share && b - a > 1e-12 * (1.0 + a.abs()) {
                let m = 0.5 * (a + b);
                next.push((a, m));
                next.push((m, b));
            } else {
                next.push((a, b));
            }
        }
        work = next;
    }
}

/// Complex panel integration over a fixed layout (no refinement), with the
/// 8-vs-16 point difference reported as the error estimate.
pub fn integrate_complex_fixed<F>(f: &F, panels: &[(f64, f64)]) -> (num_complex::Complex64, f64)
where
    F: Fn(f64) -> num_complex::Complex64 + Sync,
{
    use num_complex::Complex64;
    let evals: Vec<(Complex64, f64)> = panels
        .par_iter()
        .map(|&(a, b)| {
            let rule8 = gl_rule(8);
            let rule16 = gl_rule(16);
            let c = 0.5 * (a + b);
            let h = 0.5 * (b - a);
            let mut lo = Complex64::new(0.0, 0.0);
            for (&x, &w) in rule8.nodes.iter().zip(&rule8.weights) {
                lo += w * f(c + h * x);
            }
            let mut hi = Complex64::new(0.0, 0.0);
            for (&x, &w) in rule16.nodes.iter().zip(&rule16.weights) {
                hi += w * f(c + h * x);
            }
            (h * hi, (h * (hi - lo)).norm())
        })
        .collect();
    let re = comp_sum(&evals.iter().map(|e| e.0.re).collect::<Vec<_>>());
    let im = comp_sum(&evals.iter().map(|e| e.0.im).collect::<Vec<_>>());
    let err = comp_sum(&evals.iter().map(|e| e.1).collect::<Vec<_>>());
    (Complex64::new(re, im), err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_exactness() {
        // GL-8 is exact for polynomials up to degree 15
        let f = |x: f64| 3.0 * x.powi(7) - x.powi(4) + 2.0 * x - 5.0;
        let got = gl_panel(&f, -1.0, 3.0, 8);
        // antiderivative: 3/8 x^8 - x^5/5 + x^2 - 5x
        let fexact = |x: f64| 3.0 / 8.0 * x.powi(8) - x.powi(5) / 5.0 + x * x - 5.0 * x;
        assert!((got - (fexact(3.0) - fexact(-1.0))).abs() < 1e-10);
    }

    #[test]
    fn adaptive_hits_tolerance() {
        let f = |x: f64| (10.0 * x).sin() * (-x).exp();
        let panels = march_panels(0.0, 10.0, 1e-6, |_| 1.0);
        let r = integrate_adaptive(&f, panels, 1e-12, 1 << 16);
        // exact: Integral of sin(10x)e^{-x} = 10/101 - e^{-10}(sin(100)+10cos(100))/101
        let exact = (10.0 - (-10.0f64).exp() * ((100.0f64).sin() + 10.0 * (100.0f64).cos())) / 101.0;
        assert!((r.value - exact).abs() < 1e-10, "{} vs {}", r.value, exact);
    }

    #[test]
    fn neumaier_beats_naive() {
        let vals = vec![1e16, 1.0, -1e16, 1.0];
        assert_eq!(comp_sum(&vals), 2.0);
    }

    #[test]
    fn deterministic_across_pools() {
        let f = |x: f64| (37.0 * x).cos() / (1.0 + x * x);
        let panels = march_panels(0.0, 50.0, 1e-9, |_| 0.11);
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| integrate_adaptive(&f, panels.clone(), 1e-10, 1 << 15).value)
        };
        let a = run(1);
        let b = run(4);
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
