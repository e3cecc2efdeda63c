//! Reference calibration run: fits a_0..a_3 over [1e3, 1e5], reports the
//! free-fit a_4 check and the E2 scan statistics the defaults ship with.

use zml_core::moments::{
    calibrate_p4, calibrate_p4_free, e2_scan, exponent_fit, MomentPolynomial, A4,
};
use zml_core::zetacore::EvalCache;

fn main() {
    let t0 = std::time::Instant::now();
    let cache = EvalCache::new();
    let heights: Vec<f64> = (0..4096)
        .map(|i| 1e3 * (100.0f64).powf(i as f64 / 4095.0))
        .collect();
    let poly = calibrate_p4(&heights, &cache).unwrap();
    println!("pinned-fit coefficients (a4 = {A4:.12}):");
    for (j, a) in poly.coeffs().iter().enumerate() {
        println!("  a{j} = {a:.12e}");
    }
    let free = calibrate_p4_free(&heights, &cache).unwrap();
    println!("free-fit a4 = {:.12e} (target {:.12e}, ratio {:.4})", free[4], A4, free[4] / A4);

    // scan for sign changes and the envelope constant on [10, 1e4]
    let scan_heights: Vec<f64> = (0..160)
        .map(|i| 10.0 * (1000.0f64).powf(i as f64 / 159.0))
        .collect();
    let recs = e2_scan(&scan_heights, &poly).unwrap();
    let signs = recs.windows(2).filter(|w| w[0].e2 * w[1].e2 < 0.0).count();
    let env = recs
        .iter()
        .map(|r| r.e2.abs() / (r.t.sqrt() * r.t.ln().powi(4)))
        .fold(0.0f64, f64::max);
    println!("sign changes on [10, 1e4]: {signs}");
    println!("max |E2| / (sqrt(T) log^4 T) = {env:.4}");
    let running: Vec<(f64, f64)> = {
        let mut mx = 0.0f64;
        recs.iter()
            .map(|r| {
                mx = mx.max(r.e2.abs());
                (r.t, mx.max(1e-12))
            })
            .collect()
    };
    println!("running-max |E2| slope: {:.4}", exponent_fit(&running).unwrap());
    let check = MomentPolynomial::calibrated_default();
    let _ = check;
    println!("elapsed: {:.1?}", t0.elapsed());
}
