//! Dimensions of the truncated two-point Čech model for the deformation
//! complex, and their stabilization in the truncation order.

use std::time::Instant;

use projsymp::cech::{CechModel, Geometry};
use projsymp::projconn::build_connection;
use projsymp::riemann::Curve;

fn main() {
    let n: i64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);
    let geometry = Geometry::standard(build_connection(&Curve::default_curve()).unwrap()).unwrap();
    for n in [n, n + 2] {
        let start = Instant::now();
        let m = CechModel::new(geometry.clone(), n).unwrap();
        println!(
            "N = {n:>2}: cocycles {:>3}, coboundaries {:>3}, H1 {}, H1(TX) {}, H0(K^2) {}  [{:.1} s]",
            m.cocycle_dim(),
            m.coboundary_rank(),
            m.h1_dim(),
            m.tangent_h1_dim(),
            m.global_quadratic().dim(),
            start.elapsed().as_secs_f64()
        );
    }
}
