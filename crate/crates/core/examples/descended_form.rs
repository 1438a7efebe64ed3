//! The residue pairing on a basis of H1: an exact antisymmetric 6x6 matrix,
//! invariant under shifting representatives by coboundaries.

use projsymp::cech::{compute_h1_basis, descended_form, Geometry};
use projsymp::projconn::build_connection;
use projsymp::riemann::Curve;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let geometry = Geometry::standard(build_connection(&Curve::default_curve()).unwrap()).unwrap();
    let basis = compute_h1_basis(geometry, 10).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let m = descended_form(&basis, &mut rng).unwrap();

    let cells: Vec<Vec<String>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in &cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        println!("[ {} ]", line.join("  "));
    }
    println!(
        "antisymmetric: {}, rank: {}",
        m.is_antisymmetric(),
        m.rank()
    );
}
