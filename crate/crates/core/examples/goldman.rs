//! Cohomology of a surface group with adjoint coefficients and the Goldman
//! pairing at a random irreducible SL(2, C) representation.

use projsymp::charvar::{convention_gate, goldman_matrix, sample_representation, CohomologyDims};

fn main() {
    let genus: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2);
    let rep = sample_representation(genus, 7).unwrap();
    let cert = rep.irreducibility_certificate().unwrap();
    println!(
        "genus {genus}: relator defect {:.1e}, line escape {:.3}",
        rep.relator_defect(),
        cert.min_line_escape
    );

    let dims = CohomologyDims::of(&rep).unwrap();
    println!("Z1 = {}, B1 = {}, H1 = {}", dims.z1, dims.b1, dims.h1);

    let (gate, chosen) = convention_gate(&rep, 1e-8).unwrap();
    for g in &gate {
        println!(
            "  {:<10} coboundary pairing {:.2e}",
            format!("{:?}", g.convention),
            g.worst_relative
        );
    }
    let m = goldman_matrix(&rep, chosen).unwrap();
    let sv = m.singular_values();
    println!(
        "{:?}: antisymmetry {:.1e}, singular values {:.3e} .. {:.3e}",
        chosen,
        m.antisymmetry_defect(),
        sv[sv.len() - 1],
        sv[0]
    );
}
